//! Eigenvalues of the one-dimensional Schrodinger operator
//! `eps^2 x'' = (V(t) - E) x` for smooth single-well potentials, in the regime
//! where the dispersion parameter `eps` is small.
//!
//! The crate computes the same spectrum along four independent routes and
//! cross-validates them:
//!
//! * [`quantize::bohr_sommerfeld_spectrum`] solves the phase-area rule
//!   `J(E_n) = (n + 1/2) eps` with `J` the normalized action integral.
//! * [`quantize::low_lying_spectrum`] uses the harmonic/Weber approximation
//!   `E_n ~ (2n + 1) eps sqrt(c2/2)` valid for the lowest states.
//! * [`evans::evans_spectrum`] shoots Prufer angles from both tails and
//!   matches the unstable and stable directions at an interior midpoint.
//! * [`refsolver::reference_spectrum`] is a brute-force finite-difference
//!   eigensolver (Sturm bisection plus Richardson extrapolation) used as the
//!   ground truth everywhere else.
//!
//! On top of that, [`wkbfun`] assembles approximate eigenfunctions from WKB
//! pieces glued through Airy patches at the turning points, and [`harness`]
//! measures how fast each approximation converges as `eps` shrinks.
//!
//! Potentials are either built in (`harmonic`, `quartic(a)`, `asym(b)`,
//! `coshwell`) or given as expression strings (`expr:t^2 + 0.1*t^4`) parsed by
//! [`expr`] and differentiated symbolically.
//!
//! The `semiwell` binary wraps all of this behind `spectrum`, `compare`,
//! `study`, `eigenfunction`, and `validate` subcommands; the `examples/`
//! directory shows one focused, runnable program per capability.

// `!(x > 0.0)`-style guards are deliberate: they also reject NaN inputs.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod action;
pub mod cli;
pub mod evans;
pub mod expr;
pub mod harness;
mod num;
pub mod potential;
pub mod quantize;
pub mod refsolver;
pub mod report;
pub mod specfun;
pub mod turning;
pub mod wkbfun;

mod error;

pub use error::{Error, Result};
