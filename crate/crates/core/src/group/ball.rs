use std::collections::HashMap;

use rayon::prelude::*;

use super::word::{Letter, Word};
use super::GroupError;
use crate::pl::PLMap;

/// Default cap on the number of distinct elements in a ball.
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct BallElement {
    pub map: PLMap,
    /// Shortest word for `map`, lexicographically least among those.
    pub word: Word,
}

/// The distinct elements realised by reduced words of length at most
/// `radius`, in shortest-then-lexicographic word order. The identity comes
/// first. The ball at radius `r` is a prefix of the ball at radius `r + 1`.
#[derive(Clone, Debug)]
pub struct GroupBall {
    generators: Vec<PLMap>,
    names: Vec<String>,
    radius: usize,
    elements: Vec<BallElement>,
    index: HashMap<PLMap, usize>,
}

/// Ball of `generators` with default names `s0, s1, …` and the default cap.
pub fn build_ball(generators: &[PLMap], radius: usize) -> Result<GroupBall, GroupError> {
    GroupBall::build(
        generators.to_vec(),
        default_names(generators.len()),
        radius,
        DEFAULT_ELEMENT_CAP,
    )
}

pub fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("s{i}")).collect()
}

impl GroupBall {
    pub fn build(
        generators: Vec<PLMap>,
        names: Vec<String>,
        radius: usize,
        element_cap: usize,
    ) -> Result<GroupBall, GroupError> {
        if names.len() != generators.len() {
            return Err(GroupError::Precondition(format!(
                "{} names for {} generators",
                names.len(),
                generators.len()
            )));
        }
        let mut ball = GroupBall {
            generators,
            names,
            radius,
            elements: vec![BallElement {
                map: PLMap::identity(),
                word: Word::identity(),
            }],
            index: HashMap::new(),
        };
        ball.index.insert(PLMap::identity(), 0);
        let alphabet = Letter::alphabet(ball.generators.len());
        let letter_maps: Vec<PLMap> = alphabet
            .iter()
            .map(|l| {
                let g = &ball.generators[l.generator];
                if l.inverse {
                    g.inverse()
                } else {
                    g.clone()
                }
            })
            .collect();

        let mut frontier: Vec<usize> = vec![0];
        for length in 1..=radius {
            let children: Vec<Vec<(PLMap, Word)>> = frontier
                .par_iter()
                .map(|&i| {
                    let parent = &ball.elements[i];
                    alphabet
                        .iter()
                        .zip(&letter_maps)
                        .filter_map(|(l, m)| {
                            parent.word.extended(*l).map(|w| (parent.map.compose(m), w))
                        })
                        .collect()
                })
                .collect();
            let mut next = Vec::new();
            for (map, word) in children.into_iter().flatten() {
                if ball.index.contains_key(&map) {
                    continue;
                }
                if ball.elements.len() >= element_cap {
                    return Err(GroupError::ResourceExceeded {
                        cap: element_cap,
                        radius: length,
                    });
                }
                ball.index.insert(map.clone(), ball.elements.len());
                next.push(ball.elements.len());
                ball.elements.push(BallElement { map, word });
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        Ok(ball)
    }

    /// The same ball with different generator names.
    pub fn renamed(&self, names: Vec<String>) -> Result<GroupBall, GroupError> {
        if names.len() != self.generators.len() {
            return Err(GroupError::Precondition(format!(
                "{} names for {} generators",
                names.len(),
                self.generators.len()
            )));
        }
        Ok(GroupBall {
            names,
            ..self.clone()
        })
    }

    pub fn generators(&self) -> &[PLMap] {
        &self.generators
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn elements(&self) -> &[BallElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &BallElement> {
        self.elements.iter()
    }

    /// Non-identity elements, in ball order.
    pub fn non_trivial(&self) -> impl Iterator<Item = &BallElement> {
        self.elements.iter().skip(1)
    }

    pub fn contains(&self, map: &PLMap) -> bool {
        self.index.contains_key(map)
    }

    pub fn find(&self, map: &PLMap) -> Option<&BallElement> {
        self.index.get(map).map(|&i| &self.elements[i])
    }

    pub fn render(&self, word: &Word) -> String {
        word.render(&self.names)
    }
}
