//! Error type shared by all solver stages.

use thiserror::Error;

/// Everything that can go wrong between reading a problem and emitting a
/// certified solution. Variants carry enough context to be actionable from
/// the command line.
#[derive(Debug, Clone, Error)]
pub enum SolverError {
    /// A structural problem with the input (bad mesh size, non-finite
    /// constant, malformed coefficient model).
    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    /// Expression parse or evaluation failure.
    #[error("expression error: {0}")]
    Expr(#[from] crate::expr::ExprError),

    /// Expression evaluation failed while sampling a mesh node.
    #[error("expression error at node {node} (x = {x}): {source}")]
    ExprAtNode {
        node: usize,
        x: f64,
        source: crate::expr::ExprError,
    },

    /// A coefficient hypothesis failed hard: p or q non-positive at a
    /// sample point, or the nested integral W(b) diverges under refinement.
    #[error("validation failure: {0}")]
    ValidationFailure(String),

    /// A quadrature value kept changing under refinement.
    #[error("quadrature did not converge: {0}")]
    QuadratureDivergence(String),

    /// The Picard sweep for the Volterra fixed point diverged and the
    /// direct solve was unavailable or singular.
    #[error("fixed-point solve diverged (contraction estimate {contraction:.3})")]
    FixedPointDiverged { contraction: f64 },

    /// lambda sits numerically on an eigenvalue of the homogeneous problem:
    /// the Robin functional of u(., lambda) is below the gating threshold.
    #[error("lambda_at_eigenvalue: |robin functional| = {robin_abs:.3e} at lambda = {lambda}")]
    LambdaAtEigenvalue { lambda: f64, robin_abs: f64 },

    /// The eigenvalue scan reached its cap without a sign change.
    #[error("eigenvalue_not_found: no sign change of the Robin functional below lambda = {cap:.6e}")]
    EigenvalueNotFound { cap: f64 },

    /// The Nagumo integral test failed: the integral of 1/phi does not
    /// exceed the total mass of q, so no a-priori flux bound exists.
    #[error(
        "nagumo_violated: integral of 1/phi up to s = {truncation:.3e} is {phi_integral:.6e} \
         which does not exceed Q(b) = {q_total:.6e}"
    )]
    NagumoViolated {
        phi_integral: f64,
        q_total: f64,
        truncation: f64,
    },

    /// Neither the positive nor the negative lambda regime is feasible.
    #[error(
        "no_feasible_lambda: best positive-regime slack {best_positive_slack:.6e}, \
         best negative-regime slack {best_negative_slack:.6e}"
    )]
    NoFeasibleLambda {
        best_positive_slack: f64,
        best_negative_slack: f64,
    },

    /// A monotone-iteration invariant failed at a mesh node.
    #[error("invariant_violation({property}, node {node}, step {step}): {detail}")]
    InvariantViolation {
        property: String,
        node: usize,
        step: usize,
        detail: String,
    },

    /// The monotone iteration hit its step cap before converging.
    #[error("max_iterations: no convergence after {iterations} steps (last step size {last_step:.3e})")]
    MaxIterations { iterations: usize, last_step: f64 },

    /// Damped Newton in the oracle stopped making progress.
    #[error("newton stagnation after {iterations} iterations (residual {residual:.3e})")]
    NewtonStagnation { iterations: usize, residual: f64 },

    /// Explicit integration of the reduced flux IVP blew up before x = b.
    #[error("ivp blow-up at x = {x:.6}")]
    IvpBlowUp { x: f64 },

    /// The reduced IVP path was requested but f depends on y.
    #[error("reduction requires f independent of y: {0}")]
    NotYIndependent(String),
}
