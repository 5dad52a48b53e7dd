//! Computations with SL2/PSL2 character varieties of two-generator knot
//! groups: Fricke trace polynomials, two-bridge character curves, dihedral
//! censuses, Culler–Shalen degrees, triangle-group epimorphism searches,
//! bending deformations and the domination bounds for two-bridge exteriors.

pub mod arith;
pub mod bending;
mod error;
pub mod mat2core;
pub mod polyring;
pub mod tracecalc;
pub mod trianglegrp;
pub mod twobridge;
pub mod word;

pub use error::{Error, Result};
