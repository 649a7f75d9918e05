use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use plhomeo::cli::{self, Command, Format, RunConfig};
use plhomeo::Rat;

#[derive(Parser)]
#[command(
    name = "plhomeo",
    version,
    about = "Exact PL homeomorphisms of the line"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Orientation, fixed set and type of every map in a file
    Classify(Common),
    /// Test the at-most-N-fixed-points property on a Cayley ball
    Check(Common),
    /// Build an element with three or more fixed points from a request file
    Witness(Common),
    /// Translation-number chart relative to the first generator
    Transnum(Common),
    /// Classify a finitely generated group by its action
    #[command(name = "theorem-a")]
    TheoremA(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    input: PathBuf,
    #[arg(long)]
    radius: Option<usize>,
    #[arg(long = "max-fixed", short = 'N')]
    max_fixed: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    #[arg(long)]
    iterations: Option<usize>,
    #[arg(long = "cap-elements")]
    cap_elements: Option<usize>,
    #[arg(long = "cap-exponent")]
    cap_exponent: Option<u64>,
    /// Window for orbit sampling, as lo,hi
    #[arg(long, value_parser = cli::parse_window, allow_hyphen_values = true)]
    window: Option<(Rat, Rat)>,
    #[arg(long)]
    resolution: Option<Rat>,
}

fn main() -> ExitCode {
    let args = Cli::parse();
    let (command, c) = match args.command {
        Cmd::Classify(c) => (Command::Classify, c),
        Cmd::Check(c) => (Command::Check, c),
        Cmd::Witness(c) => (Command::Witness, c),
        Cmd::Transnum(c) => (Command::Transnum, c),
        Cmd::TheoremA(c) => (Command::TheoremA, c),
    };
    let mut config = RunConfig::new(command, c.input);
    config.radius = c.radius;
    config.max_fixed = c.max_fixed;
    config.format = match c.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    if let Some(n) = c.iterations {
        config.iterations = n;
    }
    if let Some(n) = c.cap_elements {
        config.element_cap = n;
    }
    if let Some(n) = c.cap_exponent {
        config.exponent_cap = n;
    }
    if let Some(w) = c.window {
        config.window = w;
    }
    if let Some(r) = c.resolution {
        config.resolution = r;
    }
    let out = cli::run(&config);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
