//! The funnel map `F(x) = max g(x)` over a few generators and their inverses.
//!
//! When the chosen generators share no fixed point, `F` is an increasing
//! homeomorphism with `F(x) > x` everywhere, so every orbit of `F` crosses
//! `[0, F(0))` exactly once. Every group orbit therefore meets any bounded open
//! interval containing `[0, F(0)]`.

use serde::{Deserialize, Serialize};

use super::checks::common_fixed_points;
use super::GroupError;
use crate::pl::PLMap;
use crate::rat::Rat;

/// Margin added on both sides of `[0, F(0)]`.
pub const DEFAULT_MARGIN: i64 = 1;

#[derive(Clone, Debug)]
pub struct Funnel {
    /// The chosen generators followed by their inverses.
    maps: Vec<PLMap>,
    pub f_at_zero: Rat,
    pub margin: Rat,
    /// The open interval `(-margin, F(0) + margin)`.
    pub interval: (Rat, Rat),
}

/// How a point reaches `[0, F(0))` under iteration of `F` or `F⁻¹`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunnelLanding {
    pub start: Rat,
    /// `k` with `F^k(start)` in `[0, F(0))`; negative when `F⁻¹` was iterated.
    pub exponent: i64,
    pub landing: Rat,
    /// The orbit segment between `start` and `landing`, in increasing order,
    /// so that `chain[i + 1] = F(chain[i])`.
    pub chain: Vec<Rat>,
}

/// Builds the funnel from the first `n + 1` orientation-preserving
/// generators (all of them if there are fewer).
pub fn funnel_interval(generators: &[PLMap], n: usize) -> Result<Funnel, GroupError> {
    let chosen: Vec<PLMap> = generators
        .iter()
        .filter(|g| g.is_orientation_preserving())
        .take(n + 1)
        .cloned()
        .collect();
    if chosen.is_empty() {
        return Err(GroupError::Precondition(
            "no orientation-preserving generator".into(),
        ));
    }
    let shared = common_fixed_points(&chosen);
    if let Some(c) = shared.components().first() {
        return Err(GroupError::SharedFixedPoint(c.to_string()));
    }
    let inverses: Vec<PLMap> = chosen.iter().map(PLMap::inverse).collect();
    let maps: Vec<PLMap> = chosen.into_iter().chain(inverses).collect();
    let mut funnel = Funnel {
        maps,
        f_at_zero: Rat::zero(),
        margin: Rat::int(DEFAULT_MARGIN),
        interval: (Rat::zero(), Rat::zero()),
    };
    funnel.f_at_zero = funnel.apply(&Rat::zero());
    funnel.interval = (-&funnel.margin, &funnel.f_at_zero + &funnel.margin);
    Ok(funnel)
}

impl Funnel {
    pub fn maps(&self) -> &[PLMap] {
        &self.maps
    }

    pub fn apply(&self, x: &Rat) -> Rat {
        self.maps
            .iter()
            .map(|g| g.eval(x))
            .max()
            .expect("non-empty")
    }

    /// `F⁻¹ = min g⁻¹`, and the map set is closed under inversion.
    pub fn apply_inverse(&self, y: &Rat) -> Rat {
        self.maps
            .iter()
            .map(|g| g.eval(y))
            .min()
            .expect("non-empty")
    }

    pub fn in_window(&self, x: &Rat) -> bool {
        !x.is_negative() && x < &self.f_at_zero
    }

    /// Iterates `F` (or `F⁻¹`) from `start` until the orbit enters `[0, F(0))`.
    pub fn land(&self, start: &Rat, max_steps: usize) -> Result<FunnelLanding, GroupError> {
        let mut chain = vec![start.clone()];
        let mut x = start.clone();
        let forward = x.is_negative();
        while !self.in_window(&x) {
            if chain.len() > max_steps {
                return Err(GroupError::ResourceExceeded {
                    cap: max_steps,
                    radius: 0,
                });
            }
            x = if forward {
                self.apply(&x)
            } else {
                self.apply_inverse(&x)
            };
            chain.push(x.clone());
        }
        let steps = chain.len() as i64 - 1;
        if !forward {
            chain.reverse();
        }
        Ok(FunnelLanding {
            start: start.clone(),
            exponent: if forward { steps } else { -steps },
            landing: x,
            chain,
        })
    }
}
