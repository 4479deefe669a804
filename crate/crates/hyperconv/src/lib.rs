//! Polarized hyperplane arrangements, their convolution algebras, and the
//! bordered-Floer algebras they are isomorphic to, all over exact rationals.
//!
//! The crate is organized bottom-up:
//!
//! * [`qlinalg`] — exact rational matrices, kernels, Plücker coordinates;
//! * [`lp`] — Fourier–Motzkin feasibility, boundedness and argmax extraction;
//! * [`arrangement`] — arrangements, sign-sequence combinatorics, cyclicity,
//!   Vandermonde fixtures, dots-in-regions bijections and partial orders;
//! * [`dualities`] — Gale duality, alt, polarization reversal, deletion,
//!   restriction and signed restriction;
//! * [`convalg`] — the convolution algebras `B~(V)` and `A~(V)`, quiver
//!   presentations, graded ranks, centers, finite quotients and the
//!   deletion/restriction homomorphisms;
//! * [`osz`] — the algebras `B(n,k)` and variants, the isomorphisms with
//!   `B~(V)`, and the `gl(1|1)` bimodules.

pub mod error;
pub mod qlinalg;
pub mod lp;
pub mod arrangement;
pub mod dualities;
pub mod convalg;
pub mod osz;
pub mod io;

pub use error::{Error, Result};
pub use qlinalg::{Mat, Rat};
