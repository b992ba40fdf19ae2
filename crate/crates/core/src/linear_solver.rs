//! Linear solves for L y = -(p y')' - lambda q y = q r(x) with y'(0) = 0 and
//! a Robin condition at b.
//!
//! The equation is never differentiated. Integrating twice from 0 and using
//! w(0) = 0 gives the Volterra form
//!
//!   w(x)  = -int_0^x q (r + lambda y) dt,
//!   y(x)  = y(0) - int_0^x (1/p(s)) int_0^s q (r + lambda y) dt ds,
//!
//! which keeps 1/p away from the origin inside an integrable kernel. The
//! right-hand side is always carried as the smooth factor r multiplying q;
//! products q * r are integrated with exact-q panel moments so the kernel's
//! endpoint behaviour never leaks into the discretization error.
//!
//! For a fixed trial y(0) the fixed point is solved by damped Picard
//! (contraction ~ |lambda| W(b)) with a direct forward-substitution solve as
//! fallback; y(0) itself is the single shooting unknown, matched to the
//! Robin condition through the homogeneous solution, so the match is exact.

use crate::error::SolverError;
use crate::expr::Expression;
use crate::mesh::{uniform_nodes, MeshFunction};
use crate::problem_model::{CoefficientModel, RobinBoundary};
use crate::quad::GaussRule;
use crate::Result;

/// Threshold below which |robin functional of u| means lambda sits on an
/// eigenvalue and the shooting match is ill-posed.
pub const EIGENVALUE_GATE: f64 = 1e-10;

/// Picard stopping rule: ||dy||_inf < PICARD_TOL * (1 + ||y||_inf).
const PICARD_TOL: f64 = 1e-12;
const PICARD_MAX_SWEEPS: usize = 200;
/// Estimated contraction above which Picard is abandoned for the direct solve.
const PICARD_CONTRACTION_CAP: f64 = 0.9;

/// Right-hand side of a linear problem, given as the factor r in q(x) r(x).
#[derive(Debug, Clone)]
pub enum RightHandSide {
    Zero,
    /// Formula in x.
    Factor(Expression),
    /// Factor sampled at the mesh nodes.
    FactorNodes(Vec<f64>),
}

impl RightHandSide {
    pub fn factor(src: &str) -> Result<Self> {
        Ok(RightHandSide::Factor(Expression::parse(src, &["x"])?))
    }

    fn nodes(&self, disc: &Discretization) -> Result<Vec<f64>> {
        match self {
            RightHandSide::Zero => Ok(vec![0.0; disc.len()]),
            RightHandSide::FactorNodes(v) => {
                if v.len() != disc.len() {
                    return Err(SolverError::InvalidProblem(format!(
                        "right-hand side has {} samples, mesh has {}",
                        v.len(),
                        disc.len()
                    )));
                }
                Ok(v.clone())
            }
            RightHandSide::Factor(e) => disc
                .nodes
                .iter()
                .enumerate()
                .map(|(k, &x)| {
                    e.eval(&[x]).map_err(|source| SolverError::ExprAtNode {
                        node: k,
                        x,
                        source,
                    })
                })
                .collect(),
        }
    }
}

/// A linear problem instance: L y = q r with the Robin data of the caller.
#[derive(Debug, Clone)]
pub struct LinearProblem {
    pub lambda: f64,
    pub rhs: RightHandSide,
}

/// Mesh-level operators for one coefficient model: the exact-q panel moments
/// and the dense lower-triangular Volterra matrix V with
/// (V c)_k = int_0^{x_k} (1/p) int_0^s q c~ dt ds, where c~ is the piecewise
/// linear interpolant of the node samples c.
///
/// V depends only on p, q and the mesh; lambda enters every solve as a
/// scalar, so one Discretization serves all linear solves, the eigenvalue
/// scan, and the monotone iteration.
#[derive(Debug, Clone)]
pub struct Discretization {
    pub nodes: Vec<f64>,
    pub p_nodes: Vec<f64>,
    pub q_nodes: Vec<f64>,
    /// Full panel moments: m0[j] = int_panel q l0, m1[j] = int_panel q l1
    /// with l0, l1 the linear hats of the panel.
    m0: Vec<f64>,
    m1: Vec<f64>,
    /// Row-major dense (n+1)^2 Volterra matrix, lower triangular.
    v: Vec<f64>,
    /// Q at the nodes (prefix sums of the panel moments).
    pub q_cum: Vec<f64>,
    /// W at the nodes (V applied to the constant 1).
    pub w_cum: Vec<f64>,
}

impl Discretization {
    pub fn new(coeffs: &CoefficientModel, n_panels: usize) -> Result<Self> {
        let nodes = uniform_nodes(coeffs.b, n_panels);
        let n = nodes.len();
        let h = coeffs.b / n_panels as f64;

        let p_nodes: Vec<f64> = nodes.iter().map(|&x| coeffs.p(x).unwrap_or(f64::NAN)).collect();
        let q_nodes: Vec<f64> = nodes.iter().map(|&x| coeffs.q(x).unwrap_or(f64::NAN)).collect();
        for k in 1..n {
            if !(p_nodes[k].is_finite() && p_nodes[k] > 0.0) {
                return Err(SolverError::ValidationFailure(format!(
                    "p({}) = {} is not positive",
                    nodes[k], p_nodes[k]
                )));
            }
        }

        let gl12 = GaussRule::new(12);
        let gl8 = GaussRule::new(8);
        let gl6 = GaussRule::new(6);

        let mut m0 = vec![0.0; n_panels];
        let mut m1 = vec![0.0; n_panels];
        // panel 0 moments need grading toward the origin
        {
            let x1 = nodes[1];
            let (a, b) = graded_q_moments(coeffs, x1, h, &gl6)?;
            m0[0] = a;
            m1[0] = b;
        }
        for j in 1..n_panels {
            let (xa, xb) = (nodes[j], nodes[j + 1]);
            let (a, b) = plain_q_moments(coeffs, xa, xb, h, &gl12)?;
            m0[j] = a;
            m1[j] = b;
        }

        // outer coefficients: panel contribution = A_j H_j + B_j c_j + C_j c_{j+1}
        let mut wa = vec![0.0; n_panels];
        let mut wb = vec![0.0; n_panels];
        let mut wc = vec![0.0; n_panels];
        {
            // panel 0: H_0 = 0 identically, so only B_0, C_0 exist; computing
            // A_0 = int 1/p would divide by p(0+) for nothing.
            let x1 = nodes[1];
            let (b0, c0) = graded_outer_first_panel(coeffs, x1, h, &gl6)?;
            wb[0] = b0;
            wc[0] = c0;
        }
        for j in 1..n_panels {
            let (xa, xb) = (nodes[j], nodes[j + 1]);
            let (a, b, c) = outer_panel_coeffs(coeffs, xa, xb, h, &gl8, &gl6)?;
            wa[j] = a;
            wb[j] = b;
            wc[j] = c;
        }

        // assemble V row by row; hrow carries the coefficients of H_j
        let mut v = vec![0.0; n * n];
        let mut hrow = vec![0.0; n];
        for k in 1..n {
            let j = k - 1;
            let (row, prev) = {
                let (head, tail) = v.split_at_mut(k * n);
                (&mut tail[..n], &head[j * n..j * n + n])
            };
            row.copy_from_slice(prev);
            if j >= 1 && wa[j] != 0.0 {
                for i in 0..=j {
                    row[i] += wa[j] * hrow[i];
                }
            }
            row[j] += wb[j];
            row[j + 1] += wc[j];
            // advance H_j -> H_{j+1}
            hrow[j] += m0[j];
            hrow[j + 1] += m1[j];
        }

        let mut q_cum = vec![0.0; n];
        for j in 0..n_panels {
            q_cum[j + 1] = q_cum[j] + m0[j] + m1[j];
        }
        let mut disc = Discretization {
            nodes,
            p_nodes,
            q_nodes,
            m0,
            m1,
            v,
            q_cum,
            w_cum: Vec::new(),
        };
        disc.w_cum = disc.volterra_apply(&vec![1.0; n]);
        Ok(disc)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn b(&self) -> f64 {
        *self.nodes.last().unwrap()
    }

    pub fn q_total(&self) -> f64 {
        *self.q_cum.last().unwrap()
    }

    pub fn w_total(&self) -> f64 {
        *self.w_cum.last().unwrap()
    }

    /// V c (dense triangular matvec).
    pub fn volterra_apply(&self, c: &[f64]) -> Vec<f64> {
        let n = self.len();
        let mut out = vec![0.0; n];
        for k in 1..n {
            let row = &self.v[k * n..k * n + n];
            let mut acc = 0.0;
            for i in 0..=k {
                acc += row[i] * c[i];
            }
            out[k] = acc;
        }
        out
    }

    /// H_k = int_0^{x_k} q c~ dt; the flux of the associated solution is -H.
    pub fn inner_cumulative(&self, c: &[f64]) -> Vec<f64> {
        let n = self.len();
        let mut out = vec![0.0; n];
        for j in 0..n - 1 {
            out[j + 1] = out[j] + self.m0[j] * c[j] + self.m1[j] * c[j + 1];
        }
        out
    }

    /// Solve y = y0 - V (r + lambda y) for a fixed trial y(0) = y0.
    /// Returns the node values; flux is derived by the caller from c.
    fn solve_fixed_y0(&self, lambda: f64, r: &[f64], y0: f64) -> Result<Vec<f64>> {
        let n = self.len();
        let vr = self.volterra_apply(r);
        let mut rhs = vec![0.0; n];
        for k in 0..n {
            rhs[k] = y0 - vr[k];
        }
        if lambda == 0.0 {
            return Ok(rhs);
        }
        // Picard is a contraction when |lambda| W(b) < 1; don't even start
        // when the predicted contraction is past the cap.
        let predicted = lambda.abs() * self.w_total();
        if predicted < PICARD_CONTRACTION_CAP {
            let mut y = rhs.clone();
            let mut prev_step = f64::INFINITY;
            for _ in 0..PICARD_MAX_SWEEPS {
                let vy = self.volterra_apply(&y);
                let mut step = 0.0f64;
                let mut norm = 0.0f64;
                for k in 0..n {
                    let next = rhs[k] - lambda * vy[k];
                    step = step.max((next - y[k]).abs());
                    norm = norm.max(next.abs());
                    y[k] = next;
                }
                if step < PICARD_TOL * (1.0 + norm) {
                    return Ok(y);
                }
                let contraction = step / prev_step;
                if contraction > PICARD_CONTRACTION_CAP && prev_step.is_finite() {
                    break; // fall through to the direct solve
                }
                prev_step = step;
            }
        }
        self.solve_direct(lambda, &rhs)
    }

    /// Forward substitution on (I + lambda V) y = rhs; V is lower triangular
    /// with O(h^2 / p)-sized diagonal, so the system solves exactly in one
    /// causal sweep.
    fn solve_direct(&self, lambda: f64, rhs: &[f64]) -> Result<Vec<f64>> {
        let n = self.len();
        let mut y = vec![0.0; n];
        y[0] = rhs[0];
        for k in 1..n {
            let row = &self.v[k * n..k * n + n];
            let mut acc = rhs[k];
            for i in 0..k {
                acc -= lambda * row[i] * y[i];
            }
            let diag = 1.0 + lambda * row[k];
            if diag.abs() < 1e-14 {
                return Err(SolverError::FixedPointDiverged {
                    contraction: f64::INFINITY,
                });
            }
            y[k] = acc / diag;
        }
        Ok(y)
    }

    /// Defect of the integral equation for given (lambda, r, y): the max-norm
    /// of y - (y_0 - V (r + lambda y)). Machine-small after a direct solve.
    pub fn integral_defect(&self, lambda: f64, r: &[f64], y: &MeshFunction) -> f64 {
        let n = self.len();
        let c: Vec<f64> = (0..n).map(|k| r[k] + lambda * y.values[k]).collect();
        let vc = self.volterra_apply(&c);
        let mut defect = 0.0f64;
        for k in 0..n {
            defect = defect.max((y.values[k] - (y.values[0] - vc[k])).abs());
        }
        defect
    }

    fn assemble(&self, lambda: f64, r: &[f64], values: Vec<f64>) -> MeshFunction {
        let n = self.len();
        let c: Vec<f64> = (0..n).map(|k| r[k] + lambda * values[k]).collect();
        let h = self.inner_cumulative(&c);
        let flux: Vec<f64> = h.iter().map(|v| -v).collect();
        MeshFunction::new(self.nodes.clone(), values, flux)
    }
}

fn plain_q_moments(
    coeffs: &CoefficientModel,
    xa: f64,
    xb: f64,
    h: f64,
    rule: &GaussRule,
) -> Result<(f64, f64)> {
    let mut a0 = 0.0;
    let mut a1 = 0.0;
    for (t, w) in rule.panel(xa, xb) {
        let q = coeffs.q(t)?;
        a0 += w * q * (xb - t) / h;
        a1 += w * q * (t - xa) / h;
    }
    Ok((a0, a1))
}

/// Moments of the first panel, graded toward 0 so integrable endpoint
/// behaviour of q costs no accuracy.
fn graded_q_moments(
    coeffs: &CoefficientModel,
    x1: f64,
    h: f64,
    rule: &GaussRule,
) -> Result<(f64, f64)> {
    let mut a0 = 0.0;
    let mut a1 = 0.0;
    let mut hi = x1;
    for _ in 0..48 {
        let lo = hi * 0.5;
        for (t, w) in rule.panel(lo, hi) {
            let q = coeffs.q(t)?;
            a0 += w * q * (x1 - t) / h;
            a1 += w * q * t / h;
        }
        hi = lo;
    }
    for (t, w) in rule.panel(0.0, hi) {
        let q = coeffs.q(t)?;
        a0 += w * q * (x1 - t) / h;
        a1 += w * q * t / h;
    }
    Ok((a0, a1))
}

/// Outer quadrature of int_panel H(s)/p(s) ds for an interior panel,
/// decomposed as A * H_j + B * c_j + C * c_{j+1} through the partial
/// moments of the linear reconstruction of c.
fn outer_panel_coeffs(
    coeffs: &CoefficientModel,
    xa: f64,
    xb: f64,
    h: f64,
    outer: &GaussRule,
    inner: &GaussRule,
) -> Result<(f64, f64, f64)> {
    let mut a = 0.0;
    let mut b = 0.0;
    let mut c = 0.0;
    let mut mu0 = 0.0; // int_{xa}^{s} q l0
    let mut mu1 = 0.0;
    let mut prev = xa;
    for (s, w) in outer.panel(xa, xb) {
        for (t, wi) in inner.panel(prev, s) {
            let q = coeffs.q(t)?;
            mu0 += wi * q * (xb - t) / h;
            mu1 += wi * q * (t - xa) / h;
        }
        prev = s;
        let p = coeffs.p(s)?;
        if !(p > 0.0) {
            return Err(SolverError::ValidationFailure(format!(
                "p({s}) = {p} is not positive"
            )));
        }
        a += w / p;
        b += w * mu0 / p;
        c += w * mu1 / p;
    }
    Ok((a, b, c))
}

/// First-panel outer quadrature: H(s) = c_0 Q(s) + (c_1 - c_0) R(s)/h with
/// Q(s) = int_0^s q and R(s) = int_0^s t q(t) dt, both walked cumulatively
/// along graded abscissae, so H(s)/p(s) is evaluated with the true kernel
/// instead of a polynomial reconstruction that 1/p would tear apart.
fn graded_outer_first_panel(
    coeffs: &CoefficientModel,
    x1: f64,
    h: f64,
    rule: &GaussRule,
) -> Result<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = Vec::new();
    let mut hi = x1;
    for _ in 0..48 {
        let lo = hi * 0.5;
        pts.extend(rule.panel(lo, hi));
        hi = lo;
    }
    pts.extend(rule.panel(0.0, hi));
    pts.sort_by(|l, r| l.0.total_cmp(&r.0));

    // prime the cumulative integrals on [0, s_min]
    let s_min = pts[0].0;
    let mut q_cum = 0.0;
    let mut rq_cum = 0.0;
    {
        let mut hi = s_min;
        for _ in 0..48 {
            let lo = hi * 0.5;
            for (t, w) in rule.panel(lo, hi) {
                let q = coeffs.q(t)?;
                q_cum += w * q;
                rq_cum += w * q * t;
            }
            hi = lo;
        }
        for (t, w) in rule.panel(0.0, hi) {
            let q = coeffs.q(t)?;
            q_cum += w * q;
            rq_cum += w * q * t;
        }
    }

    let mut b = 0.0;
    let mut c = 0.0;
    let mut prev = s_min;
    for &(s, w) in &pts {
        if s > prev {
            for (t, wi) in rule.panel(prev, s) {
                let q = coeffs.q(t)?;
                q_cum += wi * q;
                rq_cum += wi * q * t;
            }
            prev = s;
        }
        let p = coeffs.p(s)?;
        if !(p > 0.0) {
            return Err(SolverError::ValidationFailure(format!(
                "p({s}) = {p} is not positive"
            )));
        }
        // H(s) = c_0 (Q(s) - R(s)/h) + c_1 R(s)/h  on the first panel
        b += w * (q_cum - rq_cum / h) / p;
        c += w * (rq_cum / h) / p;
    }
    Ok((b, c))
}

/// Solve L y = q r with y'(0) = 0 and the Robin condition of `bc`.
///
/// Two causal solves determine the answer: the particular solution with
/// y(0) = 0 and the homogeneous solution u with u(0) = 1. The Robin residual
/// is affine in the shooting value y(0), so the match is algebraic.
pub fn solve_linear(
    disc: &Discretization,
    bc: &RobinBoundary,
    lp: &LinearProblem,
) -> Result<MeshFunction> {
    let r = lp.rhs.nodes(disc)?;
    let u = homogeneous_u(disc, lp.lambda)?;
    let robin_u = robin_functional(bc, &u);
    if robin_u.abs() <= EIGENVALUE_GATE {
        return Err(SolverError::LambdaAtEigenvalue {
            lambda: lp.lambda,
            robin_abs: robin_u.abs(),
        });
    }
    let yp_values = disc.solve_fixed_y0(lp.lambda, &r, 0.0)?;
    let yp = disc.assemble(lp.lambda, &r, yp_values);
    let robin_p = robin_functional(bc, &yp) - bc.gamma1;
    let y0 = -robin_p / robin_u;

    let n = disc.len();
    let mut values = yp.values;
    let mut flux = yp.flux;
    for k in 0..n {
        values[k] += y0 * u.values[k];
        flux[k] += y0 * u.flux[k];
    }
    let out = MeshFunction::new(disc.nodes.clone(), values, flux);
    if !out.is_finite() {
        return Err(SolverError::FixedPointDiverged {
            contraction: f64::NAN,
        });
    }
    Ok(out)
}

/// The regular solution of L u = 0 with u(0) = 1, u'(0) = 0, with its flux.
pub fn homogeneous_u(disc: &Discretization, lambda: f64) -> Result<MeshFunction> {
    let r = vec![0.0; disc.len()];
    let values = disc.solve_fixed_y0(lambda, &r, 1.0)?;
    Ok(disc.assemble(lambda, &r, values))
}

/// alpha1 u(b) + beta1 p(b) u'(b), read off the stored flux.
pub fn robin_functional(bc: &RobinBoundary, u: &MeshFunction) -> f64 {
    bc.alpha1 * u.value_at_end() + bc.beta1 * u.flux_at_end()
}

/// min over nodes of y >= -tol.
pub fn nonnegativity_check(y: &MeshFunction, tol: f64) -> bool {
    y.min_value() >= -tol
}

/// Raw fixed-point solve for a trial y(0); exposed for the shooting
/// affinity property and diagnostics.
pub fn solve_with_trial_y0(
    disc: &Discretization,
    lambda: f64,
    rhs: &RightHandSide,
    y0: f64,
) -> Result<MeshFunction> {
    let r = rhs.nodes(disc)?;
    let values = disc.solve_fixed_y0(lambda, &r, y0)?;
    Ok(disc.assemble(lambda, &r, values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn spherical() -> Discretization {
        Discretization::new(&CoefficientModel::power_law(2.0, 1.0), 512).unwrap()
    }

    fn flat() -> Discretization {
        Discretization::new(&CoefficientModel::from_expressions("1", "1", 1.0).unwrap(), 512).unwrap()
    }

    #[test]
    fn w_and_q_prefixes_match_closed_forms() {
        let d = spherical();
        assert_relative_eq!(d.q_total(), 1.0 / 3.0, max_relative = 1e-12);
        assert_relative_eq!(d.w_total(), 1.0 / 6.0, max_relative = 1e-12);
        // interior nodes too: W(x) = x^2/6
        let k = 256;
        let x = d.nodes[k];
        assert_relative_eq!(d.w_cum[k], x * x / 6.0, max_relative = 1e-11);
        assert_relative_eq!(d.q_cum[k], x * x * x / 3.0, max_relative = 1e-11);
    }

    #[test]
    fn spherical_dirichlet_unit_source_is_exact() {
        // -(x^2 y')' = x^2, y'(0)=0, y(1)=0  =>  y = (1 - x^2)/6, w = -x^3/3
        let d = spherical();
        let bc = RobinBoundary { alpha1: 1.0, beta1: 0.0, gamma1: 0.0 };
        let y = solve_linear(
            &d,
            &bc,
            &LinearProblem { lambda: 0.0, rhs: RightHandSide::factor("1").unwrap() },
        )
        .unwrap();
        for (k, &x) in d.nodes.iter().enumerate() {
            assert_relative_eq!(y.values[k], (1.0 - x * x) / 6.0, epsilon = 1e-13);
            assert_relative_eq!(y.flux[k], -x * x * x / 3.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn spherical_robin_unit_source_is_exact() {
        // alpha1 = beta1 = 1, gamma1 = 0: y = 1/2 - x^2/6
        let d = spherical();
        let bc = RobinBoundary { alpha1: 1.0, beta1: 1.0, gamma1: 0.0 };
        let y = solve_linear(
            &d,
            &bc,
            &LinearProblem { lambda: 0.0, rhs: RightHandSide::factor("1").unwrap() },
        )
        .unwrap();
        assert_relative_eq!(y.values[0], 0.5, epsilon = 1e-13);
        assert_relative_eq!(y.value_at_end(), 1.0 / 3.0, epsilon = 1e-13);
        assert_relative_eq!(y.flux_at_end(), -1.0 / 3.0, epsilon = 1e-13);
    }

    #[test]
    fn zero_source_zero_gamma_gives_zero() {
        let d = spherical();
        let bc = RobinBoundary { alpha1: 1.0, beta1: 0.0, gamma1: 0.0 };
        let y = solve_linear(
            &d,
            &bc,
            &LinearProblem { lambda: 2.0, rhs: RightHandSide::Zero },
        )
        .unwrap();
        assert!(y.max_norm() < 1e-13);
        assert!(y.flux_max_norm() < 1e-13);
    }

    #[test]
    fn homogeneous_flat_is_cosine() {
        // p = q = 1, lambda = 4: u = cos(2x)
        let d = flat();
        let u = homogeneous_u(&d, 4.0).unwrap();
        let mut worst = 0.0f64;
        for (k, &x) in d.nodes.iter().enumerate() {
            worst = worst.max((u.values[k] - (2.0 * x).cos()).abs());
        }
        assert!(worst < 5e-6, "max error {worst:.3e}");
        assert_relative_eq!(u.values[0], 1.0, epsilon = 1e-14);
        assert_eq!(u.flux[0], 0.0);
    }

    #[test]
    fn homogeneous_lambda_zero_is_one() {
        let d = spherical();
        let u = homogeneous_u(&d, 0.0).unwrap();
        assert!(u.values.iter().all(|&v| (v - 1.0).abs() < 1e-15));
        assert!(u.flux_max_norm() < 1e-15);
    }

    #[test]
    fn homogeneous_spherical_is_sinc() {
        // regular solution of -(x^2 u')' = pi^2 x^2 u is sin(pi x)/(pi x);
        // expected values frozen from the closed form (u(1/2) = 2/pi, u(1) = 0)
        let d = spherical();
        let pi = std::f64::consts::PI;
        let u = homogeneous_u(&d, pi * pi).unwrap();
        let mid = 256;
        assert_relative_eq!(u.values[mid], 2.0 / pi, max_relative = 3e-6);
        assert!(u.value_at_end().abs() < 3e-6);
        // pointwise against sin(pi x)/(pi x)
        let mut worst = 0.0f64;
        for (k, &x) in d.nodes.iter().enumerate().skip(1) {
            worst = worst.max((u.values[k] - (pi * x).sin() / (pi * x)).abs());
        }
        assert!(worst < 5e-6, "max error {worst:.3e}");
    }

    #[test]
    fn robin_functional_is_the_affine_combination() {
        let mk = |vals: (f64, f64)| {
            MeshFunction::new(vec![0.0, 1.0], vec![0.0, vals.0], vec![0.0, vals.1])
        };
        let bc = RobinBoundary { alpha1: 1.0, beta1: 0.0, gamma1: 0.0 };
        assert_eq!(robin_functional(&bc, &mk((0.5, 7.0))), 0.5);
        let bc = RobinBoundary { alpha1: 1.0, beta1: 1.0, gamma1: 0.0 };
        assert_relative_eq!(robin_functional(&bc, &mk((1.0 / 3.0, -1.0 / 3.0))), 0.0);
        let bc = RobinBoundary { alpha1: 2.0, beta1: 0.0, gamma1: 0.0 };
        assert_eq!(robin_functional(&bc, &mk((-1.0, 0.0))), -2.0);
    }

    #[test]
    fn nonnegativity_check_examples() {
        let nodes = uniform_nodes(1.0, 32);
        let y1 = MeshFunction::new(
            nodes.clone(),
            nodes.iter().map(|x| (1.0 - x * x) / 6.0).collect(),
            vec![0.0; 33],
        );
        assert!(nonnegativity_check(&y1, 1e-12));
        let y2 = MeshFunction::new(
            nodes.clone(),
            nodes.iter().map(|x| x - 0.5).collect(),
            vec![0.0; 33],
        );
        assert!(!nonnegativity_check(&y2, 1e-12));
        let y3 = MeshFunction::constant(&nodes, 0.0);
        assert!(nonnegativity_check(&y3, 0.0));
    }

    #[test]
    fn shooting_residual_is_affine_in_y0() {
        let d = spherical();
        let bc = RobinBoundary { alpha1: 1.0, beta1: 0.5, gamma1: 0.3 };
        let rhs = RightHandSide::factor("1 - x/2").unwrap();
        let lambda = 3.0;
        let trials = [-1.0, 0.4, 2.0];
        let res: Vec<f64> = trials
            .iter()
            .map(|&t| {
                let y = solve_with_trial_y0(&d, lambda, &rhs, t).unwrap();
                robin_functional(&bc, &y) - bc.gamma1
            })
            .collect();
        let slope1 = (res[1] - res[0]) / (trials[1] - trials[0]);
        let slope2 = (res[2] - res[1]) / (trials[2] - trials[1]);
        assert!(
            (slope1 - slope2).abs() <= 1e-12 * (1.0 + slope1.abs()),
            "slopes {slope1} vs {slope2}"
        );
    }

    #[test]
    fn integral_defect_is_small_after_solve() {
        let d = flat();
        let bc = RobinBoundary { alpha1: 1.0, beta1: 0.0, gamma1: 1.0 };
        let rhs = RightHandSide::factor("x*x - 0.25").unwrap();
        let lam = -1.5;
        let y = solve_linear(&d, &bc, &LinearProblem { lambda: lam, rhs: rhs.clone() }).unwrap();
        let r: Vec<f64> = d.nodes.iter().map(|&x| x * x - 0.25).collect();
        assert!(d.integral_defect(lam, &r, &y) < 1e-12);
    }

    #[test]
    fn flux_matches_finite_difference_slope_away_from_origin() {
        let d = flat();
        let bc = RobinBoundary { alpha1: 1.0, beta1: 0.0, gamma1: 1.0 };
        // -y'' + y = 0, y'(0)=0, y(1)=1  =>  y = cosh x / cosh 1
        let y = solve_linear(
            &d,
            &bc,
            &LinearProblem { lambda: -1.0, rhs: RightHandSide::Zero },
        )
        .unwrap();
        let h = d.nodes[1] - d.nodes[0];
        let mut worst = 0.0f64;
        for k in 64..(d.len() - 1) {
            let slope = (y.values[k + 1] - y.values[k - 1]) / (2.0 * h);
            worst = worst.max((slope * d.p_nodes[k] - y.flux[k]).abs());
        }
        // central differences are O(h^2); allow a small constant
        assert!(worst < 10.0 * h * h, "flux vs FD slope: {worst:.3e}");
    }

    #[test]
    fn cosh_solution_matches_closed_form() {
        let d = flat();
        let bc = RobinBoundary { alpha1: 1.0, beta1: 0.0, gamma1: 1.0 };
        let y = solve_linear(
            &d,
            &bc,
            &LinearProblem { lambda: -1.0, rhs: RightHandSide::Zero },
        )
        .unwrap();
        let mut worst = 0.0f64;
        for (k, &x) in d.nodes.iter().enumerate() {
            worst = worst.max((y.values[k] - x.cosh() / 1.0f64.cosh()).abs());
        }
        assert!(worst < 1e-7, "max error {worst:.3e}");
    }
}
