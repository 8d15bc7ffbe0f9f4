//! Randomized cubature on the unit cube for vector-valued integrands.
//!
//! The crate integrates functions f: \[0,1\]^d -> X, where X is the real line
//! or a finite-dimensional l_q space, and measures how fast the randomized
//! error decays with the sample budget:
//!
//! * [`montecarlo`] — plain Monte Carlo, Monte Carlo with the main part
//!   separated by a composite tensor-product Lagrange interpolant, the
//!   explicit node/weight (quadrature) form of both, and error-moment /
//!   convergence-rate estimation.
//! * [`interp`] — the composite tensor-product Lagrange operator itself,
//!   with exact per-node integral weights.
//! * [`functions`] — a registry of smooth test problems with closed-form
//!   integrals, plus bump-based "fooling" families whose integrals encode an
//!   arbitrary vector family.
//! * [`rademacher`] — exact and sampled Rademacher averages, lower bounds
//!   for equal-norm type constants, and the greedy subset partition they
//!   control.
//! * [`spaces`] — the concrete normed spaces everything maps into.
//!
//! All randomness flows from a single 64-bit master seed through the
//! counter-based derivation in [`seeding`], so every experiment is
//! reproducible bit for bit, including under parallel execution.

pub mod error;
pub mod functions;
pub mod interp;
pub mod montecarlo;
pub mod rademacher;
pub mod seeding;
pub mod spaces;
pub mod stats;

pub use error::{CoreError, Result};
pub use spaces::{Element, Exponent, SpaceDescriptor};
