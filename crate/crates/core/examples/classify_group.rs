//! Runs the classification pipeline on the bundled group files.

use std::path::Path;

use plhomeo::group::GroupFile;
use plhomeo::semiconj::{theorem_a_for_file, TheoremAConfig};

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for name in [
        "affine.grp",
        "conjugated_affine.grp",
        "g1.grp",
        "thompson.grp",
        "translations.grp",
    ] {
        let file: GroupFile = std::fs::read_to_string(dir.join(name))
            .unwrap()
            .parse()
            .unwrap();
        let report = theorem_a_for_file(&file, &TheoremAConfig::default());
        println!("== {name}");
        print!("{report}");
        println!();
    }
}
