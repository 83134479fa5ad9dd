//! Exact symbolic engine for the boundary term of the noncommutative residue
//! of `pi^+ D^{-p1} o pi^+ D^{-p2}` on spin manifolds with boundary, with the
//! collar metric `g = h(x_n)^{-1} g_boundary + dx_n^2`.
//!
//! Everything here is exact arithmetic over Gaussian rationals:
//!
//! - [`scalars`]: coefficient ring in `kappa = h'(0)`, `u = |xi'|^2`, `f0`, `f1`.
//! - [`clifford`]: the eight-monomial algebra generated by `A = c(xi')`,
//!   `B = c(dx_n)`, `P = d/dx_n c(xi')` and its trace.
//! - [`rational`]: rational functions of `xi_n` with poles only at `+-i`,
//!   partial fractions, the `pi^+`/`pi^-` projections and real-line integrals.
//! - [`symbols`]: boundary-point symbol jets and the composition-recursion checks.
//! - [`engine`]: case enumeration, per-case integrands and the total `Phi`.
//! - [`gravity`]: rewriting `Phi` against the extrinsic curvature.
#![no_std]

extern crate alloc;

pub mod clifford;
pub mod engine;
mod error;
pub mod gravity;
pub mod rational;
pub mod scalars;
pub mod symbols;

pub use clifford::{CliffordElement, Generator, Monomial};
pub use engine::{CaseResult, CaseSpec, Multiplier, Perturbation, PhiReport};
pub use error::{Error, Result};
pub use rational::{Pole, PoleRational};
pub use scalars::{Assignment, Exponents, GaussianRational, ScalarPoly, Var};
pub use symbols::{Operator, SymbolJet};
