//! Solver library for singular two-point boundary value problems
//!
//!   -(p(x) y'(x))' = q(x) f(x, y, p y'),   0 < x <= b,
//!   y'(0) = 0,      alpha1 y(b) + beta1 p(b) y'(b) = gamma1,
//!
//! where p may vanish at x = 0 (p(0) = 0) and q is positive and integrable.
//! The solver runs a monotone iteration between an upper and a lower
//! solution, verifies every hypothesis of the underlying existence theory
//! numerically, and cross-checks its results against an independent dense
//! collocation oracle.
//!
//! The natural derivative variable near the singular endpoint is the flux
//! w = p(x) y'(x); all boundary handling is written in terms of w so that
//! 1/p(0) is never evaluated.
//!
//! Modules map onto the stages of a run:
//!
//! - [`expr`]: arithmetic expression parser so problem files can declare
//!   p(x), q(x), f(x, y, w) and the flux majorant phi(s) as strings.
//! - [`problem_model`]: problem data, coefficient validation, and the
//!   singular integrals Q(x) and W(x) everything else is built from.
//! - [`linear_solver`]: the linear solve L y = q r with L = -(p y')' - lambda q,
//!   via a Volterra integral reformulation plus shooting on y(0).
//! - [`spectral`]: first eigenvalue of -(p y')' = lambda q y by scanning the
//!   Robin functional of the regular homogeneous solution.
//! - [`conditions`]: hypothesis checks (Lipschitz constants, feasibility
//!   inequalities, Nagumo flux bound, lambda selection).
//! - [`monotone`]: the monotone iteration itself, with per-step invariant
//!   enforcement and bracket reporting.
//! - [`oracle`]: independent dense Newton collocation solver and a discrete
//!   eigenvalue pencil, used as ground truth.
//! - [`corpus`]: built-in benchmark problems.

pub mod conditions;
pub mod corpus;
pub mod error;
pub mod expr;
pub mod linear_solver;
pub mod mesh;
pub mod monotone;
pub mod oracle;
pub mod problem_model;
pub mod quad;
pub mod spectral;

pub use error::SolverError;
pub use expr::Expression;
pub use linear_solver::{Discretization, LinearProblem, RightHandSide};
pub use mesh::MeshFunction;
pub use problem_model::{
    CoefficientForm, CoefficientModel, NonlinearSource, ProblemSpec, RobinBoundary,
    ValidationReport,
};

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, SolverError>;
