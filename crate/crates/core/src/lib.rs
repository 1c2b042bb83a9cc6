//! Exact computations on Pythagorean hyperplane arrangements.
//!
//! Every edge `e` from `u` to `v` of a gain graph with gain `g(e)` and
//! reference points `q_u`, `q_v` defines the hyperplane of points `x` with
//! `|x - q_u|² - |x - q_v|² = g(e)`. The crate builds these arrangements,
//! decides centrality, and works out how the combinatorial type of the
//! arrangement depends on the gains.
//!
//! All arithmetic is over arbitrary-precision rationals.

pub mod arrangement;
pub mod bitset;
pub mod cli;
pub mod error;
pub mod exactla;
pub mod gaingraph;
pub mod genericity;
pub mod instance;
pub mod matroid;
pub mod pointconfig;
pub mod report;
pub mod transport;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use exactla::{AffineSubspace, Matrix, Rational, Vector};
pub use gaingraph::{Circle, Edge, GainGraph};
pub use matroid::VectorMatroid;
pub use pointconfig::Configuration;
