use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::pl::PLMap;

/// A generator or its inverse. Letters order as `s0 < s0⁻¹ < s1 < s1⁻¹ < …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Letter {
        Letter { generator, inverse }
    }

    pub fn inverted(self) -> Letter {
        Letter {
            inverse: !self.inverse,
            ..self
        }
    }

    /// All `2k` letters over `k` generators, in word order.
    pub fn alphabet(generators: usize) -> Vec<Letter> {
        (0..generators)
            .flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
            .collect()
    }
}

/// A freely reduced word. The word `l₁ l₂ … lₖ` names the map `l₁ ∘ l₂ ∘ … ∘ lₖ`
/// (rightmost letter applied first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Word {
        Word::default()
    }

    /// Freely reduces `letters`.
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverted()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    /// `self · letter`, or `None` when the letter would cancel.
    pub fn extended(&self, letter: Letter) -> Option<Word> {
        if self.letters.last() == Some(&letter.inverted()) {
            return None;
        }
        let mut letters = self.letters.clone();
        letters.push(letter);
        Some(Word { letters })
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::new(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn evaluate(&self, generators: &[PLMap]) -> PLMap {
        self.letters.iter().fold(PLMap::identity(), |acc, l| {
            let g = &generators[l.generator];
            acc.compose(&if l.inverse { g.inverse() } else { g.clone() })
        })
    }

    /// Renders with generator names, e.g. `a b^-1`; the empty word is `e`.
    pub fn render<S: AsRef<str>>(&self, names: &[S]) -> String {
        if self.letters.is_empty() {
            return "e".to_string();
        }
        self.letters
            .iter()
            .map(|l| {
                let name = names.get(l.generator).map(|s| s.as_ref().to_string());
                let name = name.unwrap_or_else(|| format!("s{}", l.generator));
                if l.inverse {
                    format!("{name}^-1")
                } else {
                    name
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render::<&str>(&[]))
    }
}

// Serialized as signed 1-based generator indices: `[1, -2]` is `s0 s1⁻¹`.
impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let signed: Vec<i64> = self
            .letters
            .iter()
            .map(|l| {
                let i = l.generator as i64 + 1;
                if l.inverse {
                    -i
                } else {
                    i
                }
            })
            .collect();
        signed.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Word, D::Error> {
        let signed = Vec::<i64>::deserialize(deserializer)?;
        let letters = signed
            .into_iter()
            .map(|i| match i {
                0 => Err(serde::de::Error::custom("letter index 0 is not allowed")),
                i => Ok(Letter::new((i.unsigned_abs() - 1) as usize, i < 0)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Word::new(letters))
    }
}
