//! Exact arithmetic in the Lipschitz and Hurwitz quaternion orders, polynomials
//! under right evaluation, and a decision procedure for *ringsets*: finite sets
//! `S` for which the integer-valued polynomials `Int(S, R)` form a ring.
//!
//! The crate offers two independent routes to the same answer:
//!
//! * [`classify::decide_ringset`] partitions `S` by minimal polynomial,
//!   reduces every class to a normal form `a + nT` and reads the verdict off
//!   `Γ(T)`, the gcd of the norms of pairwise differences.
//! * [`oracle::brute_force_ringset`] enumerates every admissible leading
//!   coefficient of a linear integer-valued polynomial modulo the order and
//!   checks closure under right multiplication by unit generators.
//!
//! Negative answers carry a [`oracle::Witness`]: two integer-valued
//! polynomials whose product leaves the order at an explicit point. Witnesses
//! are re-checked in `R/nR` by [`oracle::verify_witness`].

pub mod classify;
pub mod error;
pub mod oracle;
pub mod qpoly;
pub mod quat;
pub mod report;
pub mod residue;

pub use classify::{decide_ringset, QuatSet, Verdict};
pub use error::{Error, Result};
pub use oracle::{verify_witness, Witness};
pub use qpoly::QPoly;
pub use quat::{MinPoly, Quat, RingTag};
