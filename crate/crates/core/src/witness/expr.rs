//! Symbolic construction trees over named input maps, and exact comparisons
//! between points built from them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::pl::PLMap;
use crate::rat::Rat;

pub type Env = BTreeMap<String, PLMap>;

/// A group element written in terms of named inputs.
///
/// `Compose([a, b, c])` is `a ∘ b ∘ c`, so `c` is applied first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expr {
    Input(String),
    Named { name: String, def: Box<Expr> },
    Compose(Vec<Expr>),
    Inverse(Box<Expr>),
    Power(Box<Expr>, i64),
}

impl Expr {
    pub fn input(name: &str) -> Expr {
        Expr::Input(name.to_string())
    }

    pub fn inv(&self) -> Expr {
        match self {
            Expr::Inverse(e) => (**e).clone(),
            e => Expr::Inverse(Box::new(e.clone())),
        }
    }

    pub fn pow(&self, n: i64) -> Expr {
        Expr::Power(Box::new(self.clone()), n)
    }

    /// `self ∘ inner ∘ self⁻¹`.
    pub fn conjugating(&self, inner: &Expr) -> Expr {
        Expr::Compose(vec![self.clone(), inner.clone(), self.inv()])
    }

    pub fn eval(&self, env: &Env) -> Result<PLMap, String> {
        Evaluator::new(env).eval(self)
    }

    /// The same element with every named definition inlined.
    pub fn expanded(&self) -> Expr {
        match self {
            Expr::Input(_) => self.clone(),
            Expr::Named { def, .. } => def.expanded(),
            Expr::Compose(items) => Expr::Compose(items.iter().map(Expr::expanded).collect()),
            Expr::Inverse(e) => e.expanded().inv(),
            Expr::Power(e, n) => Expr::Power(Box::new(e.expanded()), *n),
        }
    }

    fn is_atom(&self) -> bool {
        matches!(self, Expr::Input(_) | Expr::Named { .. })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let atom = |e: &Expr| {
            if e.is_atom() {
                e.to_string()
            } else {
                format!("({e})")
            }
        };
        match self {
            Expr::Input(name) | Expr::Named { name, .. } => write!(f, "{name}"),
            Expr::Compose(items) if items.is_empty() => write!(f, "id"),
            Expr::Compose(items) => {
                let parts: Vec<String> = items
                    .iter()
                    .map(|e| {
                        if matches!(e, Expr::Compose(_)) {
                            atom(e)
                        } else {
                            e.to_string()
                        }
                    })
                    .collect();
                write!(f, "{}", parts.join(" "))
            }
            Expr::Inverse(e) => write!(f, "{}^-1", atom(e)),
            Expr::Power(e, n) => write!(f, "{}^{n}", atom(e)),
        }
    }
}

/// Evaluates expressions, caching named definitions.
pub struct Evaluator {
    env: Env,
    memo: HashMap<String, PLMap>,
}

impl Evaluator {
    pub fn new(env: &Env) -> Evaluator {
        Evaluator {
            env: env.clone(),
            memo: HashMap::new(),
        }
    }

    pub fn env(&self) -> &Env {
        &self.env
    }

    pub fn eval(&mut self, e: &Expr) -> Result<PLMap, String> {
        Ok(match e {
            Expr::Input(name) => self
                .env
                .get(name)
                .cloned()
                .ok_or_else(|| format!("unknown input `{name}`"))?,
            Expr::Named { name, def } => {
                if let Some(m) = self.memo.get(name) {
                    return Ok(m.clone());
                }
                let m = self.eval(def)?;
                self.memo.insert(name.clone(), m.clone());
                m
            }
            Expr::Compose(items) => {
                let mut acc = PLMap::identity();
                for item in items {
                    acc = acc.compose(&self.eval(item)?);
                }
                acc
            }
            Expr::Inverse(e) => self.eval(e)?.inverse(),
            Expr::Power(e, n) => self.eval(e)?.pow(*n),
        })
    }

    pub fn eval_term(&mut self, t: &Term) -> Result<Rat, String> {
        Ok(match t {
            Term::Value(v) => v.clone(),
            Term::Named { def, .. } => self.eval_term(def)?,
            Term::Shift(t, d) => self.eval_term(t)? + d,
            Term::Apply(e, t) => {
                let x = self.eval_term(t)?;
                self.eval(e)?.eval(&x)
            }
        })
    }
}

/// A point of the line built from named points by applying group elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Term {
    Value(Rat),
    Named { name: String, def: Box<Term> },
    Shift(Box<Term>, Rat),
    Apply(Expr, Box<Term>),
}

impl Term {
    pub fn named(name: &str, def: Term) -> Term {
        Term::Named {
            name: name.to_string(),
            def: Box::new(def),
        }
    }

    pub fn shift(&self, d: Rat) -> Term {
        Term::Shift(Box::new(self.clone()), d)
    }

    pub fn under(&self, e: &Expr) -> Term {
        Term::Apply(e.clone(), Box::new(self.clone()))
    }

    pub fn eval(&self, env: &Env) -> Result<Rat, String> {
        Evaluator::new(env).eval_term(self)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Value(v) => write!(f, "{v}"),
            Term::Named { name, .. } => write!(f, "{name}"),
            Term::Shift(t, d) if d.is_negative() => write!(f, "{t}-{}", d.abs()),
            Term::Shift(t, d) => write!(f, "{t}+{d}"),
            Term::Apply(e, t) if e.is_atom() || matches!(e, Expr::Inverse(_) | Expr::Power(..)) => {
                write!(f, "{e}({t})")
            }
            Term::Apply(e, t) => write!(f, "({e})({t})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "!=")]
    Ne,
}

impl Relation {
    pub fn holds(self, a: &Rat, b: &Rat) -> bool {
        match self {
            Relation::Lt => a < b,
            Relation::Gt => a > b,
            Relation::Eq => a == b,
            Relation::Ne => a != b,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Lt => "<",
            Relation::Gt => ">",
            Relation::Eq => "=",
            Relation::Ne => "!=",
        })
    }
}

/// One exact comparison performed during a construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub stage: String,
    pub lhs: Term,
    pub relation: Relation,
    pub rhs: Term,
    pub lhs_value: Rat,
    pub rhs_value: Rat,
}

impl Check {
    pub fn holds(&self) -> bool {
        self.relation.holds(&self.lhs_value, &self.rhs_value)
    }

    /// Re-evaluates both sides from the inputs and tests the relation.
    pub fn replay(&self, env: &Env) -> Result<bool, String> {
        let mut ev = Evaluator::new(env);
        let a = ev.eval_term(&self.lhs)?;
        let b = ev.eval_term(&self.rhs)?;
        Ok(a == self.lhs_value && b == self.rhs_value && self.relation.holds(&a, &b))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}    [{} {} {}]",
            self.lhs, self.relation, self.rhs, self.lhs_value, self.relation, self.rhs_value
        )
    }
}
