//! Solver library for the four exactly solvable quantum models on
//! non-sinusoidal coordinates: Coulomb, Eckart, Rosen-Morse II and
//! Rosen-Morse I.
//!
//! All four potentials can be written as `A(A∓1) z² ± 2B z` in a coordinate
//! `z(x)` obeying `z' = λ − z²`, and their bound states come with closed-form
//! energies and product-form wavefunctions whose polynomial factor has roots
//! fixed by a small algebraic system (the Bethe ansatz equations).  The crate
//! provides:
//!
//! * [`models`] — model definitions, coordinate maps, potentials, closed-form
//!   eigenvalues, parameter validation and the SUSY zero-point convention;
//! * [`bae`] — damped-Newton solver for the Bethe ansatz root systems;
//! * [`orthopoly`] — Laguerre/Jacobi evaluation and companion-matrix roots,
//!   used as an independent oracle for the Newton-solved roots;
//! * [`wavefunction`] — sampling, normalization, node counting and a
//!   finite-difference Schrödinger residual for the bound states;
//! * [`oracle`] — a prepotential-blind finite-difference eigensolver
//!   (Sturm-sequence bisection on the discretized Hamiltonian);
//! * [`verify`] — the cross-checking property suites wired into the CLI.
//!
//! Units are `ħ = 2m = 1` and the coordinate scale factor is fixed to 1.

pub mod bae;
pub mod error;
pub mod grid;
pub mod models;
pub mod oracle;
pub mod orthopoly;
// pub mod verify;
pub mod wavefunction;

pub use error::{Error, Result};
pub use grid::Grid;
pub use models::{Model, ModelKind, ModelParams};
