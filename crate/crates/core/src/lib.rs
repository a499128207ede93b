//! Exact combinatorics of metaplectic Hecke algebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`laurent`] and [`coeff`]: the coefficient rings `Z[tau^±1]` and the
//!   generic ring with formal Gauss-sum parameters `g_k`, plus [`gauss`] for
//!   the numerical p-adic specialization.
//! * [`poly`]: sparse polynomials on the coweight lattice.
//! * [`root`]: Cartan data, root data, `(Q, n)`-twists and boxes.
//! * [`weyl`]: finite and affine Weyl groups, dot actions, alcoves.
//! * [`hecke`]: Hecke algebras, (parabolic) Kazhdan-Lusztig theory, the
//!   Bernstein presentation, characters and Hall-Littlewood polynomials.
//! * [`metaplectic`]: Demazure-Lusztig operators with Gauss sums, the spherical
//!   module and its straightening rules, canonical bases and twisted
//!   Littlewood-Richardson polynomials.

pub mod coeff;
pub mod error;
pub mod gauss;
pub mod hecke;
pub mod laurent;
pub mod metaplectic;
pub mod poly;
pub mod root;
pub mod weyl;

pub use coeff::{Coeff, Side};
pub use error::{Error, Result};
pub use laurent::Laurent;
pub use poly::{LPoly, Ring, Weight};
pub use root::{CartanDatum, RootContext, Twist};
pub use weyl::AffElem;
