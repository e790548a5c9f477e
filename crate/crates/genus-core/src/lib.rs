//! Exact symbolic verification of twisted elliptic-genus anomaly cancellation
//! identities.
//!
//! The crate reconstructs the q-series of Witten-type genera twisted by E8 and
//! E8×E8 bundles on odd-dimensional spin and spin^c manifolds, decomposes them
//! in the Eisenstein monomial basis of SL(2,Z) modular forms of the expected
//! weight, and machine-checks the resulting coefficient identities with exact
//! rational arithmetic.  Jacobi theta transformation laws are also checked
//! numerically at sample points in the upper half plane.
//!
//! Module layout mirrors the pipeline:
//!
//! * [`kernel`] — exact rationals, the truncated graded polynomial ring and
//!   Puiseux q-series (exponents in eighths).
//! * [`theta`] — Jacobi theta q-expansions and the per-root quotient factors.
//! * [`numeric`] — floating-point checks of the theta/E2 transformation laws.
//! * [`modforms`] — Eisenstein series, weight bases, solve-then-check
//!   decomposition.
//! * [`bundles`] — Chern-root calculus: characteristic forms, Λ/S power
//!   series, the twisted Witten bundles.
//! * [`e8`] — the E8 root system, adjoint character and affine theta
//!   character.
//! * [`verifier`] — case assembly, spin^c reduction, theorem verification and
//!   the suite runner.

pub mod bundles;
pub mod e8;
pub mod kernel;
pub mod modforms;
pub mod numeric;
pub mod theta;
pub mod verifier;

pub use kernel::{GradedElement, Parity, PuiseuxQSeries, Scalar, VariableTable};
