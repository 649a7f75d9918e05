//! Drives the command layer from code, the way the `plhomeo` binary does.

use std::path::Path;

use plhomeo::cli::{run, Command, Format, RunConfig};

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let jobs = [
        (Command::Classify, "maps.pl"),
        (Command::Check, "thompson.grp"),
        (Command::Witness, "witness/case_1b.grp"),
        (Command::Transnum, "translations.grp"),
        (Command::TheoremA, "g1.grp"),
    ];
    for (command, file) in jobs {
        let out = run(&RunConfig::new(command, dir.join(file)));
        println!("$ plhomeo {:?} {file}    -> exit {}", command, out.code);
        print!(
            "{}",
            out.stdout
                .lines()
                .take(4)
                .map(|l| format!("  {l}\n"))
                .collect::<String>()
        );
    }
    let mut c = RunConfig::new(Command::Check, dir.join("affine.grp"));
    c.format = Format::Json;
    c.max_fixed = Some(0);
    c.radius = Some(1);
    println!("{}", run(&c).stdout);
}
