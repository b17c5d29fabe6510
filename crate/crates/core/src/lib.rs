//! Exact mod-2 computer algebra for the cohomology of generalized Dold
//! spaces `P(S, X)`: sphere-, Grassmann-, flag- and torus-manifold fibres
//! over real projective bases, presented as graded quotient rings over the
//! two-element field and cross-checked against an independent CW
//! chain-complex engine.

pub mod cw;
pub mod error;
pub mod flag;
pub mod gf2;
pub mod groebner;
pub mod intpoly;
mod par;
pub mod report;
pub mod sw;
pub mod torus;

pub use error::{Error, Result};
