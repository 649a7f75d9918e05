use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::expr::{Check, Env, Evaluator, Expr, Term};
use crate::pl::{FixedSet, PLMap};
use crate::rat::Rat;

/// The eight configurations of the case analysis: the type of `g` (after
/// possibly inverting it) crossed with the side of `y` that `f(y)` lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseTag {
    #[serde(rename = "1a")]
    C1a,
    #[serde(rename = "1b")]
    C1b,
    #[serde(rename = "2a")]
    C2a,
    #[serde(rename = "2b")]
    C2b,
    #[serde(rename = "3a")]
    C3a,
    #[serde(rename = "3b")]
    C3b,
    #[serde(rename = "4a")]
    C4a,
    #[serde(rename = "4b")]
    C4b,
}

impl CaseTag {
    pub const ALL: [CaseTag; 8] = [
        CaseTag::C1a,
        CaseTag::C1b,
        CaseTag::C2a,
        CaseTag::C2b,
        CaseTag::C3a,
        CaseTag::C3b,
        CaseTag::C4a,
        CaseTag::C4b,
    ];

    pub fn label(self) -> &'static str {
        match self {
            CaseTag::C1a => "1a",
            CaseTag::C1b => "1b",
            CaseTag::C2a => "2a",
            CaseTag::C2b => "2b",
            CaseTag::C3a => "3a",
            CaseTag::C3b => "3b",
            CaseTag::C4a => "4a",
            CaseTag::C4b => "4b",
        }
    }

    /// The case this one reduces to, if it is a reduction case.
    pub fn reduces_to(self) -> Option<CaseTag> {
        match self {
            CaseTag::C1a => Some(CaseTag::C1b),
            CaseTag::C2b => Some(CaseTag::C2a),
            CaseTag::C3b => Some(CaseTag::C3a),
            CaseTag::C4b => Some(CaseTag::C4a),
            _ => None,
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for CaseTag {
    type Err = String;

    fn from_str(s: &str) -> Result<CaseTag, String> {
        CaseTag::ALL
            .into_iter()
            .find(|t| t.label() == s)
            .ok_or_else(|| format!("unknown case `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Definition {
    pub name: String,
    pub expr: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointDef {
    pub name: String,
    pub term: Term,
    pub value: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exponent {
    pub name: String,
    pub value: i64,
}

/// An open interval on which the witness is shown to have a fixed point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatingInterval {
    pub lo: Term,
    pub hi: Term,
    pub lo_value: Rat,
    pub hi_value: Rat,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub case: CaseTag,
    /// Cases visited in order; a reduction case is followed by its target.
    pub path: Vec<CaseTag>,
    /// Whether `g` was replaced by `g⁻¹` to reach one of the four base types.
    pub inverted: bool,
    pub inputs: Env,
    pub definitions: Vec<Definition>,
    pub points: Vec<PointDef>,
    pub exponents: Vec<Exponent>,
    pub witness_expr: Expr,
    pub witness: PLMap,
    pub fixed_points: FixedSet,
    pub separating_intervals: Vec<SeparatingInterval>,
    pub trace: Vec<Check>,
}

impl WitnessReport {
    pub fn exponent(&self, name: &str) -> Option<i64> {
        self.exponents
            .iter()
            .find(|e| e.name == name)
            .map(|e| e.value)
    }

    pub fn point(&self, name: &str) -> Option<&Rat> {
        self.points
            .iter()
            .find(|p| p.name == name)
            .map(|p| &p.value)
    }

    /// Recomputes everything the report claims from its inputs alone.
    pub fn verify(&self) -> Result<(), String> {
        let expanded = self.witness_expr.expanded();
        let witness = expanded.eval(&self.inputs)?;
        if witness != self.witness {
            return Err(format!(
                "`{expanded}` does not evaluate to the reported witness"
            ));
        }
        if witness.is_identity() {
            return Err("witness is the identity".into());
        }
        let fix = witness.fixed_set();
        if fix != self.fixed_points {
            return Err(format!(
                "fixed set is {fix}, report says {}",
                self.fixed_points
            ));
        }
        if !fix.exceeds(2) {
            return Err(format!("witness has only the fixed set {fix}"));
        }
        let mut ev = Evaluator::new(&self.inputs);
        for iv in &self.separating_intervals {
            let lo = ev.eval_term(&iv.lo)?;
            let hi = ev.eval_term(&iv.hi)?;
            if lo != iv.lo_value || hi != iv.hi_value {
                return Err(format!(
                    "interval ({}, {}) re-evaluates differently",
                    iv.lo, iv.hi
                ));
            }
            if !fix.components().iter().any(|c| c.meets_open(&lo, &hi)) {
                return Err(format!("no fixed point in ({lo}, {hi})"));
            }
        }
        for p in &self.points {
            if ev.eval_term(&p.term)? != p.value {
                return Err(format!("point {} re-evaluates differently", p.name));
            }
        }
        for c in &self.trace {
            if !c.replay(&self.inputs)? {
                return Err(format!("trace check fails on replay: {c}"));
            }
        }
        Ok(())
    }
}

impl fmt::Display for WitnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path: Vec<&str> = self.path.iter().map(|t| t.label()).collect();
        writeln!(f, "case {} (path {})", self.case, path.join(" -> "))?;
        if self.inverted {
            writeln!(f, "g replaced by g^-1")?;
        }
        writeln!(f, "inputs:")?;
        for (name, g) in &self.inputs {
            writeln!(f, "  {name} = {g}")?;
        }
        writeln!(f, "construction:")?;
        for d in &self.definitions {
            writeln!(f, "  {} = {}", d.name, d.expr)?;
        }
        if !self.exponents.is_empty() {
            let e: Vec<String> = self
                .exponents
                .iter()
                .map(|e| format!("{}={}", e.name, e.value))
                .collect();
            writeln!(f, "exponents: {}", e.join(" "))?;
        }
        if !self.points.is_empty() {
            writeln!(f, "points:")?;
            for p in &self.points {
                writeln!(f, "  {} = {} = {}", p.name, p.term, p.value)?;
            }
        }
        writeln!(
            f,
            "witness: {} = {}",
            self.witness_expr,
            self.witness_expr.expanded()
        )?;
        writeln!(f, "  {}", self.witness)?;
        writeln!(f, "fixed points: {}", self.fixed_points)?;
        writeln!(f, "separating intervals:")?;
        for iv in &self.separating_intervals {
            writeln!(
                f,
                "  ({}, {}) = ({}, {})",
                iv.lo, iv.hi, iv.lo_value, iv.hi_value
            )?;
        }
        writeln!(f, "trace:")?;
        for c in &self.trace {
            writeln!(f, "  [{}] {c}", c.stage)?;
        }
        Ok(())
    }
}
