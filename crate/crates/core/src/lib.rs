//! Exact piecewise-linear homeomorphisms of the real line, and tools for
//! studying groups of them that have few fixed points.
//!
//! * [`pl`]: the element type [`PLMap`], fixed-point sets and type signatures.
//! * [`group`]: Cayley balls, hypothesis checks over balls, the funnel map.
//! * [`witness`]: given `g` with two fixed points `x < y` and an element moving
//!   `x` into `(x, y)`, builds an element with at least three fixed points.
//! * [`semiconj`]: translation charts, equivariance checks, collapse maps,
//!   minimal-set heuristics and the end-to-end classification pipeline.
//! * [`cli`]: the command layer behind the `plhomeo` binary.
//!
//! Everything is computed over exact rationals. Group-level statements are
//! checked on finite balls: a violation is a certificate, while a property
//! holding on a ball is only evidence.

pub mod cli;
pub mod group;
pub mod pl;
pub mod rat;
pub mod semiconj;
pub mod witness;

pub use group::{build_ball, GroupBall, Word};
pub use pl::{FixedSet, PLMap, TypeSignature};
pub use rat::{rat, Rat};
