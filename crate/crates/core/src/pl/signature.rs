use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// The type `(ε₀, …, εₙ)` of an orientation-preserving map with `n` fixed
/// points: `εₖ` is the sign of `g - id` between the `k`-th and `k+1`-th fixed
/// points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TypeSignature(Vec<Sign>);

impl TypeSignature {
    pub fn new(signs: Vec<Sign>) -> TypeSignature {
        TypeSignature(signs)
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    /// Number of fixed points the signature describes.
    pub fn fixed_points(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    /// The type of the inverse map.
    pub fn flipped(&self) -> TypeSignature {
        TypeSignature(self.0.iter().map(|s| s.flip()).collect())
    }
}

impl fmt::Display for TypeSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for TypeSignature {
    type Err = String;

    /// Parses `(+,-,+)`; the Unicode minus is accepted too.
    fn from_str(s: &str) -> Result<TypeSignature, String> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| format!("expected parenthesised signs, got `{s}`"))?;
        inner
            .split(',')
            .map(|t| match t.trim() {
                "+" => Ok(Sign::Plus),
                "-" | "−" => Ok(Sign::Minus),
                other => Err(format!("bad sign `{other}`")),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(TypeSignature)
    }
}
