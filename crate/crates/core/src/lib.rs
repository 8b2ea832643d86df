//! Exact computation of stationary distributions of finite exclusion
//! processes by three independent routes — a rational linear solve of the
//! chain generator, the matrix-ansatz word recursion, and weighted sums
//! over (colored) permutations transported through alternative-tree
//! bijections — together with stability and negative-dependence checks on
//! the resulting partition polynomials.
//!
//! Everything is exact: scalars are arbitrary-precision rationals, complex
//! evaluation points have rational real and imaginary parts, and no
//! floating point enters any verdict (the only floats live in the
//! stochastic simulator's clock).

pub mod analysis;
pub mod ansatz;
pub mod checks;
pub mod eulerian;
pub mod json;
pub mod markov;
pub mod params;
pub mod perm;
pub mod rational;
pub mod sitepoly;
pub mod tree;
pub mod word;

pub use params::{ParamPoly, ParamSet, PolyError};
pub use rational::{CRat, Rat};
pub use sitepoly::{DiagonalPoly, SitePoly, SiteVar};
pub use word::OccupancyWord;
