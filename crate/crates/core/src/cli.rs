//! The command layer behind the `plhomeo` binary. Commands take the text of
//! an input file and return what to print together with an exit status.
//!
//! Exit statuses:
//!
//! | command     | 0                          | 1                     | 2           | 3                          |
//! |-------------|----------------------------|-----------------------|-------------|----------------------------|
//! | `classify`  | parsed                     |                       | input error |                            |
//! | `check`     | holds on the ball          | violated              | input error | resource cap exceeded      |
//! | `witness`   |                            | witness built         | input error or degenerate input | missing auxiliary or exponent cap |
//! | `transnum`  | chart consistent           | not free or out of order | input error | resource cap exceeded   |
//! | `theorem-a` | abelian or semi-conjugate  | violation             | input error | inconclusive               |

use std::fs;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::group::{
    check_max_fixed, GroupBall, GroupError, GroupFile, PropertyVerdict, DEFAULT_ELEMENT_CAP,
};
use crate::pl::{parse_map_file, FixedSet, Orientation, PLMap, TypeSignature};
use crate::rat::Rat;
use crate::semiconj::{
    chart_monotonicity, theorem_a_report, translation_chart, Classification, OrderViolation,
    SemiconjError, TauEstimate, TheoremAConfig, DEFAULT_ITERATIONS,
};
use crate::witness::{WitnessError, WitnessRequest, DEFAULT_EXPONENT_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

const DEFAULT_RADIUS: usize = 4;
const DEFAULT_MAX_FIXED: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Classify,
    Check,
    Witness,
    Transnum,
    TheoremA,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub input: PathBuf,
    /// Overrides the radius given in the input file.
    pub radius: Option<usize>,
    pub max_fixed: Option<usize>,
    pub format: Format,
    pub element_cap: usize,
    pub exponent_cap: u64,
    pub iterations: usize,
    pub window: (Rat, Rat),
    pub resolution: Rat,
}

impl RunConfig {
    pub fn new(command: Command, input: impl Into<PathBuf>) -> RunConfig {
        let defaults = TheoremAConfig::default();
        RunConfig {
            command,
            input: input.into(),
            radius: None,
            max_fixed: None,
            format: Format::Text,
            element_cap: DEFAULT_ELEMENT_CAP,
            exponent_cap: DEFAULT_EXPONENT_CAP,
            iterations: DEFAULT_ITERATIONS,
            window: defaults.window,
            resolution: defaults.resolution,
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.element_cap == 0 || self.exponent_cap == 0 || self.iterations == 0 {
            return Err("caps and iteration counts must be positive".into());
        }
        if self.window.0 >= self.window.1 {
            return Err(format!(
                "empty window ({}, {})",
                self.window.0, self.window.1
            ));
        }
        if !self.resolution.is_positive() {
            return Err("resolution must be positive".into());
        }
        Ok(())
    }
}

/// Parses `lo,hi`.
pub fn parse_window(s: &str) -> Result<(Rat, Rat), String> {
    let (lo, hi) = s
        .split_once(',')
        .ok_or_else(|| format!("expected lo,hi, got `{s}`"))?;
    let lo: Rat = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: Rat = hi.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((lo, hi))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String, code: i32) -> Output {
        Output {
            stdout,
            stderr: String::new(),
            code,
        }
    }

    fn error(message: impl Into<String>, code: i32) -> Output {
        Output {
            stdout: String::new(),
            stderr: format!("error: {}\n", message.into()),
            code,
        }
    }
}

/// Reads the input file and runs the command.
pub fn run(config: &RunConfig) -> Output {
    match fs::read_to_string(&config.input) {
        Ok(text) => run_on(config, &text),
        Err(e) => Output::error(format!("{}: {e}", config.input.display()), EXIT_INPUT),
    }
}

/// Runs the command on the given file contents.
pub fn run_on(config: &RunConfig, text: &str) -> Output {
    if let Err(e) = config.validate() {
        return Output::error(e, EXIT_INPUT);
    }
    match config.command {
        Command::Classify => classify(config, text),
        Command::Check => check(config, text),
        Command::Witness => witness(config, text),
        Command::Transnum => transnum(config, text),
        Command::TheoremA => theorem_a(config, text),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn parse_group(text: &str) -> Result<GroupFile, Output> {
    let file: GroupFile = text
        .parse()
        .map_err(|e| Output::error(format!("{e}"), EXIT_INPUT))?;
    if file.generators.is_empty() {
        return Err(Output::error(
            "the group file declares no generators",
            EXIT_INPUT,
        ));
    }
    Ok(file)
}

fn build_ball(config: &RunConfig, file: &GroupFile) -> Result<GroupBall, Output> {
    let radius = config.radius.or(file.radius).unwrap_or(DEFAULT_RADIUS);
    GroupBall::build(file.maps(), file.names(), radius, config.element_cap).map_err(|e| match e {
        GroupError::ResourceExceeded { .. } => Output::error(e.to_string(), EXIT_RESOURCE),
        _ => Output::error(e.to_string(), EXIT_INPUT),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyEntry {
    pub name: Option<String>,
    pub map: PLMap,
    pub orientation: Orientation,
    pub fixed_set: FixedSet,
    pub type_signature: Option<TypeSignature>,
    /// Why the type is undefined, when it is.
    pub note: Option<String>,
}

impl ClassifyEntry {
    pub fn of(name: Option<String>, map: PLMap) -> ClassifyEntry {
        let (type_signature, note) = match map.type_signature() {
            Ok(t) => (Some(t), None),
            Err(e) => (None, Some(e.to_string())),
        };
        ClassifyEntry {
            name,
            orientation: map.orientation(),
            fixed_set: map.fixed_set(),
            map,
            type_signature,
            note,
        }
    }
}

fn classify(config: &RunConfig, text: &str) -> Output {
    let maps = match parse_map_file(text) {
        Ok(m) => m,
        Err(e) => return Output::error(e.to_string(), EXIT_INPUT),
    };
    let entries: Vec<ClassifyEntry> = maps
        .into_iter()
        .map(|(n, m)| ClassifyEntry::of(n, m))
        .collect();
    if config.format == Format::Json {
        return Output::ok(to_json(&entries), EXIT_OK);
    }
    let mut out = String::new();
    for (i, e) in entries.iter().enumerate() {
        let name = e.name.clone().unwrap_or_else(|| format!("#{}", i + 1));
        let kind = match (&e.type_signature, &e.note) {
            (Some(t), _) => format!("type {t}"),
            (None, Some(n)) => format!("no type: {n}"),
            (None, None) => "no type".into(),
        };
        out.push_str(&format!(
            "{name}: {}, Fix={}, {kind}\n",
            e.orientation, e.fixed_set
        ));
    }
    Output::ok(out, EXIT_OK)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutput {
    pub max_fixed: usize,
    pub elements: usize,
    pub verdict: PropertyVerdict,
    pub word: Option<String>,
}

fn check(config: &RunConfig, text: &str) -> Output {
    let file = match parse_group(text) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let ball = match build_ball(config, &file) {
        Ok(b) => b,
        Err(o) => return o,
    };
    let n = config
        .max_fixed
        .or(file.max_fixed)
        .unwrap_or(DEFAULT_MAX_FIXED);
    let verdict = check_max_fixed(&ball, n);
    let code = if verdict.is_violated() {
        EXIT_VIOLATED
    } else {
        EXIT_OK
    };
    let word = verdict.witness.as_ref().map(|w| ball.render(&w.word));
    let out = CheckOutput {
        max_fixed: n,
        elements: ball.len(),
        verdict,
        word,
    };
    if config.format == Format::Json {
        return Output::ok(to_json(&out), code);
    }
    let text = match (&out.verdict.witness, &out.word) {
        (Some(v), Some(word)) => format!(
            "violated at radius {}: {word} has fixed set {} (more than {n} fixed points)\n  {}\n",
            out.verdict.radius, v.fixed_set, v.element
        ),
        _ => format!(
            "holds_on_ball: every non-trivial element of the radius-{} ball ({} elements) has at most {n} fixed points\n{}\n",
            out.verdict.radius,
            out.elements,
            crate::semiconj::DISCLAIMER
        ),
    };
    Output::ok(text, code)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorOutput {
    pub error: String,
    pub message: String,
}

fn witness(config: &RunConfig, text: &str) -> Output {
    let file = match parse_group(text) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let result =
        WitnessRequest::from_file(file).and_then(|req| req.run(config.radius, config.exponent_cap));
    match result {
        Ok(report) => {
            let body = if config.format == Format::Json {
                to_json(&report)
            } else {
                report.to_string()
            };
            Output::ok(body, EXIT_VIOLATED)
        }
        Err(e) => {
            let (kind, code) = match &e {
                WitnessError::Precondition(_) => ("precondition", EXIT_INPUT),
                WitnessError::Degenerate(_) => ("degenerate_configuration", EXIT_INPUT),
                WitnessError::MissingAuxiliary(_) => ("missing_auxiliary", EXIT_RESOURCE),
                WitnessError::ExponentCap { .. } => ("exponent_cap", EXIT_RESOURCE),
                WitnessError::ReductionFailed { .. } => ("reduction_failed", EXIT_INPUT),
                WitnessError::CheckFailed { .. } => ("check_failed", EXIT_INPUT),
                WitnessError::Eval(_) => ("evaluation", EXIT_INPUT),
            };
            let mut out = Output::error(e.to_string(), code);
            if config.format == Format::Json {
                out.stdout = to_json(&ErrorOutput {
                    error: kind.into(),
                    message: e.to_string(),
                });
            }
            out
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartRow {
    pub word: String,
    pub element: PLMap,
    pub image: Rat,
    pub estimate: TauEstimate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransnumOutput {
    pub reference: String,
    pub base_point: Rat,
    pub iterations: usize,
    pub rows: Vec<ChartRow>,
    pub order_violation: Option<OrderViolation>,
}

/// The reference element is the first generator, inverted if it moves `0` down.
fn transnum(config: &RunConfig, text: &str) -> Output {
    let file = match parse_group(text) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let ball = match build_ball(config, &file) {
        Ok(b) => b,
        Err(o) => return o,
    };
    let x0 = Rat::zero();
    let first = &file.generators[0];
    let (g0, reference) = if first.1.eval(&x0) < x0 {
        (first.1.inverse(), format!("{}^-1", first.0))
    } else {
        (first.1.clone(), first.0.clone())
    };
    let chart = match translation_chart(&ball, &g0, &x0, config.iterations) {
        Ok(c) => c,
        Err(e @ SemiconjError::NotFree { .. }) => {
            return Output::error(e.to_string(), EXIT_VIOLATED)
        }
        Err(e) => return Output::error(e.to_string(), EXIT_INPUT),
    };
    let order_violation = chart_monotonicity(&chart);
    let code = if order_violation.is_some() {
        EXIT_VIOLATED
    } else {
        EXIT_OK
    };
    let rows: Vec<ChartRow> = chart
        .into_iter()
        .map(|e| ChartRow {
            word: ball.render(&e.word),
            element: e.element,
            image: e.image,
            estimate: e.estimate,
        })
        .collect();
    let out = TransnumOutput {
        reference,
        base_point: x0,
        iterations: config.iterations,
        rows,
        order_violation,
    };
    if config.format == Format::Json {
        return Output::ok(to_json(&out), code);
    }
    let mut s = format!(
        "translation numbers relative to {} from x0 = {} after {} iterations\n",
        out.reference, out.base_point, out.iterations
    );
    for r in &out.rows {
        s.push_str(&format!(
            "  {:<20} [{}, {}]\n",
            r.word, r.estimate.lo, r.estimate.hi
        ));
    }
    match &out.order_violation {
        None => s.push_str("chart is order-compatible\n"),
        Some(v) => s.push_str(&format!(
            "order violation between {} and {}\n",
            out.rows[v.lower].word, out.rows[v.upper].word
        )),
    }
    Output::ok(s, code)
}

fn theorem_a(config: &RunConfig, text: &str) -> Output {
    let file = match parse_group(text) {
        Ok(f) => f,
        Err(o) => return o,
    };
    let mut cfg = TheoremAConfig {
        element_cap: config.element_cap,
        exponent_cap: config.exponent_cap,
        window: config.window.clone(),
        resolution: config.resolution.clone(),
        ..TheoremAConfig::default()
    }
    .with_file(&file);
    if let Some(r) = config.radius {
        cfg.radius = r;
    }
    let report = theorem_a_report(&file.maps(), Some(file.names()), &cfg);
    let code = match report.verdict {
        Classification::Violation => EXIT_VIOLATED,
        Classification::Inconclusive => EXIT_RESOURCE,
        _ => EXIT_OK,
    };
    let body = if config.format == Format::Json {
        to_json(&report)
    } else {
        report.to_string()
    };
    Output::ok(body, code)
}
