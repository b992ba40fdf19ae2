//! Independent ground truth: a dense collocation + damped-Newton solver for
//! the full nonlinear problem, and a finite-difference eigenvalue pencil for
//! lambda1.
//!
//! Nothing here shares a discretization family with the primary path. The
//! primary solver is Volterra + Picard/forward substitution + shooting on
//! y(0); the oracle solves the first-order flux system simultaneously by
//! Newton on a banded collocation system and gets lambda1 from inverse power
//! iteration on a matrix pencil. Panel integrals here use composite Simpson,
//! not the Gauss rules of the primary path, so a quadrature bug cannot hide
//! by affecting both sides equally.

use crate::error::SolverError;
use crate::mesh::{uniform_nodes, MeshFunction};
use crate::problem_model::{CoefficientModel, ProblemSpec, RobinBoundary};
use crate::Result;

/// Dense-mesh oracle output.
#[derive(Debug, Clone)]
pub struct OracleSolution {
    pub solution: MeshFunction,
    pub newton_iterations: usize,
    /// Final max-norm Newton residual of the discrete system.
    pub residual: f64,
}

/// Number of panels of the oracle's dense mesh.
pub const ORACLE_PANELS: usize = 4096;

// ---------------------------------------------------------------------------
// Simpson-based panel integrals

/// Composite Simpson of `f` over [a, b] with `n` subpanels (n even).
fn simpson<F: FnMut(f64) -> f64>(a: f64, b: f64, n: usize, mut f: F) -> f64 {
    debug_assert!(n >= 2 && n % 2 == 0);
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + k as f64 * h);
    }
    acc * h / 3.0
}

/// int_0^{x1} q(t) dt and int_0^{x1} t q(t) dt walked on geometric panels
/// (endpoint t = 0 is never evaluated: the final sliver uses a midpoint).
fn graded_simpson_q(coeffs: &CoefficientModel, x1: f64) -> Result<(f64, f64)> {
    let mut q0 = 0.0;
    let mut q1 = 0.0;
    let mut hi = x1;
    let mut err = None;
    for _ in 0..52 {
        let lo = hi * 0.5;
        q0 += simpson(lo, hi, 8, |t| match coeffs.q(t) {
            Ok(v) => v,
            Err(e) => {
                err = Some(e);
                f64::NAN
            }
        });
        q1 += simpson(lo, hi, 8, |t| coeffs.q(t).map(|v| v * t).unwrap_or(f64::NAN));
        hi = lo;
    }
    let mid = 0.5 * hi;
    let q_mid = coeffs.q(mid)?;
    q0 += hi * q_mid;
    q1 += hi * q_mid * mid;
    if let Some(e) = err {
        return Err(e);
    }
    Ok((q0, q1))
}

/// int_0^{x1} Q(s)/p(s) ds by composite Simpson in log coordinates; the
/// integrand vanishes at 0, so 50 decades of depth put the tail below
/// roundoff relative to the panel size.
fn first_panel_wq(coeffs: &CoefficientModel, x1: f64) -> Result<f64> {
    let t_hi = x1.ln();
    let t_lo = t_hi - 50.0;
    let half_steps = 4000; // composite Simpson over 2000 panels
    let h = (t_hi - t_lo) / half_steps as f64;
    let mut prev_s = t_lo.exp();
    let mut q_cum = prev_s * coeffs.q(0.5 * prev_s)?; // sliver estimate
    let mut acc = 0.0;
    for k in 0..=half_steps {
        let s = (t_lo + k as f64 * h).exp();
        if k > 0 {
            q_cum += simpson(prev_s, s, 2, |t| coeffs.q(t).unwrap_or(f64::NAN));
            prev_s = s;
        }
        let p = coeffs.p(s)?;
        if !(p > 0.0) {
            return Err(SolverError::ValidationFailure(format!(
                "p({s}) = {p} is not positive"
            )));
        }
        let g = s * q_cum / p; // d/dt substitution factor e^t
        let weight = if k == 0 || k == half_steps {
            1.0
        } else if k % 2 == 1 {
            4.0
        } else {
            2.0
        };
        acc += weight * g;
    }
    let acc = acc * h / 3.0;
    if !acc.is_finite() {
        return Err(SolverError::QuadratureDivergence(
            "oracle first-panel kernel integral is not finite".into(),
        ));
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// banded LU (partial pivoting), LAPACK-style band storage

struct Banded {
    n: usize,
    kl: usize,
    ku: usize,
    /// (2 kl + ku + 1) x n, entry (i, j) lives at band row kl + ku + i - j.
    ab: Vec<f64>,
    piv: Vec<usize>,
}

impl Banded {
    fn new(n: usize, kl: usize, ku: usize) -> Self {
        Banded {
            n,
            kl,
            ku,
            ab: vec![0.0; (2 * kl + ku + 1) * n],
            piv: vec![0; n],
        }
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        (self.kl + self.ku + i - j) * self.n + j
    }

    fn set(&mut self, i: usize, j: usize, v: f64) {
        debug_assert!(j <= i + self.ku && i <= j + self.kl);
        let k = self.idx(i, j);
        self.ab[k] = v;
    }

    /// In-place LU with partial pivoting within the band; fill widens the
    /// upper band by kl, which the storage layout already reserves.
    fn factor(&mut self) -> Result<()> {
        let n = self.n;
        let kl = self.kl;
        let ku = self.ku;
        for k in 0..n {
            let i_max = (k + kl).min(n - 1);
            let mut piv_row = k;
            let mut piv_val = self.ab[self.idx(k, k)].abs();
            for i in (k + 1)..=i_max {
                let v = self.ab[self.idx(i, k)].abs();
                if v > piv_val {
                    piv_val = v;
                    piv_row = i;
                }
            }
            if piv_val == 0.0 {
                return Err(SolverError::NewtonStagnation {
                    iterations: 0,
                    residual: f64::NAN,
                });
            }
            self.piv[k] = piv_row;
            let j_max = (k + ku + kl).min(n - 1);
            if piv_row != k {
                for j in k..=j_max {
                    let a = self.idx(k, j);
                    let b = self.idx(piv_row, j);
                    self.ab.swap(a, b);
                }
            }
            let pivot = self.ab[self.idx(k, k)];
            for i in (k + 1)..=i_max {
                let li = self.idx(i, k);
                let l = self.ab[li] / pivot;
                self.ab[li] = l;
                if l != 0.0 {
                    for j in (k + 1)..=j_max {
                        let a = self.ab[self.idx(k, j)];
                        let bi = self.idx(i, j);
                        self.ab[bi] -= l * a;
                    }
                }
            }
        }
        Ok(())
    }

    fn solve(&self, rhs: &mut [f64]) {
        let n = self.n;
        let kl = self.kl;
        let ku = self.ku;
        for k in 0..n {
            let p = self.piv[k];
            if p != k {
                rhs.swap(k, p);
            }
            let i_max = (k + kl).min(n - 1);
            for i in (k + 1)..=i_max {
                rhs[i] -= self.ab[self.idx(i, k)] * rhs[k];
            }
        }
        for k in (0..n).rev() {
            let j_max = (k + ku + kl).min(n - 1);
            let mut acc = rhs[k];
            for j in (k + 1)..=j_max {
                acc -= self.ab[self.idx(k, j)] * rhs[j];
            }
            rhs[k] = acc / self.ab[self.idx(k, k)];
        }
    }
}

// ---------------------------------------------------------------------------
// collocation system

/// Unknown layout: z = [y_0, y_1, w_1, y_2, w_2, ..., y_M, w_M]; w_0 = 0 is
/// built in. Equation order [val_0, flux_0, val_1, flux_1, ..., robin]
/// matches the unknown interleaving, so the Jacobian is banded with
/// kl = ku = 2.
///
/// The value equations integrate w/p with a cubic Hermite reconstruction of
/// w (its slope w' = -q f is known at the panel ends), which keeps the
/// 1/p weighting from degrading the order near the singular endpoint; the
/// first panel instead freezes f over [0, x1] and uses the exact kernel
/// integral int_0^{x1} Q/p.
struct Collocation<'a> {
    spec: &'a ProblemSpec,
    nodes: Vec<f64>,
    q_nodes: Vec<f64>,
    /// Simpson panel moments of q against the panel hats.
    sm0: Vec<f64>,
    sm1: Vec<f64>,
    /// Hermite basis integrals against 1/p per panel (j >= 1).
    ph: Vec<[f64; 4]>,
    /// First-panel kernel integral int_0^{x1} Q/p.
    wq1: f64,
    delta: f64,
}

impl<'a> Collocation<'a> {
    fn new(spec: &'a ProblemSpec, panels: usize) -> Result<Self> {
        let b = spec.b();
        let nodes = uniform_nodes(b, panels);
        let delta = b / panels as f64;
        let q_nodes: Vec<f64> = nodes
            .iter()
            .map(|&x| spec.coeffs.q(x).unwrap_or(f64::NAN))
            .collect();

        let mut sm0 = vec![0.0; panels];
        let mut sm1 = vec![0.0; panels];
        {
            let x1 = nodes[1];
            let (q0, q1) = graded_simpson_q(&spec.coeffs, x1)?;
            // hats: l0 = (x1 - t)/delta, l1 = t/delta
            sm0[0] = (q0 * x1 - q1) / delta;
            sm1[0] = q1 / delta;
        }
        for j in 1..panels {
            let (xa, xb) = (nodes[j], nodes[j + 1]);
            let mut err = None;
            sm0[j] = simpson(xa, xb, 16, |t| match spec.coeffs.q(t) {
                Ok(v) => v * (xb - t) / delta,
                Err(e) => {
                    err = Some(e);
                    f64::NAN
                }
            });
            sm1[j] = simpson(xa, xb, 16, |t| {
                spec.coeffs
                    .q(t)
                    .map(|v| v * (t - xa) / delta)
                    .unwrap_or(f64::NAN)
            });
            if let Some(e) = err {
                return Err(e);
            }
        }

        let mut ph = vec![[0.0; 4]; panels];
        for j in 1..panels {
            let (xa, xb) = (nodes[j], nodes[j + 1]);
            let mut vals = [0.0; 4];
            let mut err: Option<SolverError> = None;
            for (idx, basis) in HERMITE_BASES.iter().enumerate() {
                vals[idx] = simpson(xa, xb, 16, |s| {
                    let tau = (s - xa) / delta;
                    match spec.coeffs.p(s) {
                        Ok(p) if p > 0.0 => basis(tau) / p,
                        Ok(p) => {
                            err = Some(SolverError::ValidationFailure(format!(
                                "p({s}) = {p} is not positive"
                            )));
                            f64::NAN
                        }
                        Err(e) => {
                            err = Some(e);
                            f64::NAN
                        }
                    }
                });
            }
            if let Some(e) = err {
                return Err(e);
            }
            ph[j] = vals;
        }

        let wq1 = first_panel_wq(&spec.coeffs, nodes[1])?;

        Ok(Collocation {
            spec,
            nodes,
            q_nodes,
            sm0,
            sm1,
            ph,
            wq1,
            delta,
        })
    }

    fn panels(&self) -> usize {
        self.nodes.len() - 1
    }

    fn n_unknowns(&self) -> usize {
        2 * self.panels() + 1
    }

    #[inline]
    fn y_index(&self, k: usize) -> usize {
        if k == 0 {
            0
        } else {
            2 * k - 1
        }
    }

    #[inline]
    fn w_index(&self, k: usize) -> usize {
        debug_assert!(k >= 1);
        2 * k
    }

    fn y_of(&self, z: &[f64], k: usize) -> f64 {
        z[self.y_index(k)]
    }

    fn w_of(&self, z: &[f64], k: usize) -> f64 {
        if k == 0 {
            0.0
        } else {
            z[self.w_index(k)]
        }
    }

    fn f_at(&self, k: usize, y: f64, w: f64) -> Result<f64> {
        self.spec
            .source
            .eval_f(self.nodes[k], y, w)
            .map_err(|e| match e {
                SolverError::Expr(source) => SolverError::ExprAtNode {
                    node: k,
                    x: self.nodes[k],
                    source,
                },
                other => other,
            })
    }

    fn residual(&self, z: &[f64]) -> Result<Vec<f64>> {
        let m = self.panels();
        let mut r = vec![0.0; self.n_unknowns()];
        let mut c = vec![0.0; m + 1];
        for k in 0..=m {
            c[k] = self.f_at(k, self.y_of(z, k), self.w_of(z, k))?;
        }
        // val_0: y_1 - y_0 + cbar WQ1, with w(s) ~ -cbar Q(s) on [0, x1]
        r[0] = self.y_of(z, 1) - self.y_of(z, 0) + 0.5 * (c[0] + c[1]) * self.wq1;
        for j in 0..m {
            r[2 * j + 1] = self.w_of(z, j + 1) - self.w_of(z, j)
                + self.sm0[j] * c[j]
                + self.sm1[j] * c[j + 1];
            if j >= 1 {
                let (wj, wj1) = (self.w_of(z, j), self.w_of(z, j + 1));
                let (gj, gj1) = (-self.q_nodes[j] * c[j], -self.q_nodes[j + 1] * c[j + 1]);
                let ph = &self.ph[j];
                let integral =
                    wj * ph[0] + gj * self.delta * ph[1] + wj1 * ph[2] + gj1 * self.delta * ph[3];
                r[2 * j] = self.y_of(z, j + 1) - self.y_of(z, j) - integral;
            }
        }
        let bc = &self.spec.bc;
        r[2 * m] = bc.alpha1 * self.y_of(z, m) + bc.beta1 * self.w_of(z, m) - bc.gamma1;
        Ok(r)
    }

    fn jacobian(&self, z: &[f64]) -> Result<Banded> {
        let m = self.panels();
        let n = self.n_unknowns();
        let mut jac = Banded::new(n, 2, 2);
        let mut dfdy = vec![0.0; m + 1];
        let mut dfdw = vec![0.0; m + 1];
        for k in 0..=m {
            let y = self.y_of(z, k);
            let w = self.w_of(z, k);
            let hy = 1e-7 * (1.0 + y.abs());
            let hw = 1e-7 * (1.0 + w.abs());
            dfdy[k] = (self.f_at(k, y + hy, w)? - self.f_at(k, y - hy, w)?) / (2.0 * hy);
            dfdw[k] = (self.f_at(k, y, w + hw)? - self.f_at(k, y, w - hw)?) / (2.0 * hw);
        }

        jac.set(0, 0, -1.0 + 0.5 * dfdy[0] * self.wq1);
        jac.set(0, 1, 1.0 + 0.5 * dfdy[1] * self.wq1);
        jac.set(0, 2, 0.5 * dfdw[1] * self.wq1);

        for j in 0..m {
            let row = 2 * j + 1;
            jac.set(row, self.y_index(j), self.sm0[j] * dfdy[j]);
            if j >= 1 {
                jac.set(row, self.w_index(j), -1.0 + self.sm0[j] * dfdw[j]);
            }
            jac.set(row, self.y_index(j + 1), self.sm1[j] * dfdy[j + 1]);
            jac.set(row, self.w_index(j + 1), 1.0 + self.sm1[j] * dfdw[j + 1]);

            if j >= 1 {
                let row = 2 * j;
                let ph = &self.ph[j];
                let d_gj = -self.q_nodes[j];
                let d_gj1 = -self.q_nodes[j + 1];
                jac.set(
                    row,
                    self.y_index(j),
                    -1.0 - d_gj * dfdy[j] * self.delta * ph[1],
                );
                jac.set(
                    row,
                    self.w_index(j),
                    -(ph[0] + d_gj * dfdw[j] * self.delta * ph[1]),
                );
                jac.set(
                    row,
                    self.y_index(j + 1),
                    1.0 - d_gj1 * dfdy[j + 1] * self.delta * ph[3],
                );
                jac.set(
                    row,
                    self.w_index(j + 1),
                    -(ph[2] + d_gj1 * dfdw[j + 1] * self.delta * ph[3]),
                );
            }
        }
        let bc = &self.spec.bc;
        jac.set(2 * m, self.y_index(m), bc.alpha1);
        jac.set(2 * m, self.w_index(m), bc.beta1);
        Ok(jac)
    }
}

type HermiteBasis = fn(f64) -> f64;
/// Cubic Hermite basis on [0, 1]: value-left, slope-left, value-right,
/// slope-right.
static HERMITE_BASES: [HermiteBasis; 4] = [
    |t| (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t),
    |t| t * (1.0 - t) * (1.0 - t),
    |t| t * t * (3.0 - 2.0 * t),
    |t| t * t * (t - 1.0),
];

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Solve the full nonlinear problem on the dense oracle mesh by damped
/// Newton with a backtracking line search.
pub fn oracle_solve(spec: &ProblemSpec, initial_guess: &MeshFunction) -> Result<OracleSolution> {
    oracle_solve_on(spec, initial_guess, ORACLE_PANELS)
}

/// Same with an explicit panel count (used for self-convergence checks).
pub fn oracle_solve_on(
    spec: &ProblemSpec,
    initial_guess: &MeshFunction,
    panels: usize,
) -> Result<OracleSolution> {
    let sys = Collocation::new(spec, panels)?;
    let m = sys.panels();
    let n = sys.n_unknowns();
    let mut z = vec![0.0; n];
    for k in 0..=m {
        z[sys.y_index(k)] = initial_guess.interp(sys.nodes[k]);
    }
    // flux starts at 0; the first Newton step reconstructs it

    let scale = 1.0 + spec.bc.gamma1.abs() + max_abs(&z);
    let tol = 1e-12 * scale;
    let mut r = sys.residual(&z)?;
    let mut rn = max_abs(&r);
    let mut iterations = 0;
    while rn > tol && iterations < 100 {
        iterations += 1;
        let mut jac = sys.jacobian(&z)?;
        jac.factor()?;
        let mut step: Vec<f64> = r.iter().map(|v| -v).collect();
        jac.solve(&mut step);
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..12 {
            let trial: Vec<f64> = z.iter().zip(&step).map(|(a, d)| a + t * d).collect();
            if let Ok(tr) = sys.residual(&trial) {
                let trn = max_abs(&tr);
                if trn < (1.0 - 0.25 * t) * rn || trn < tol {
                    z = trial;
                    r = tr;
                    rn = trn;
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !accepted {
            return Err(SolverError::NewtonStagnation {
                iterations,
                residual: rn,
            });
        }
    }
    if rn > 1e-10 * scale {
        return Err(SolverError::NewtonStagnation {
            iterations,
            residual: rn,
        });
    }

    let values: Vec<f64> = (0..=m).map(|k| sys.y_of(&z, k)).collect();
    let flux: Vec<f64> = (0..=m).map(|k| sys.w_of(&z, k)).collect();
    Ok(OracleSolution {
        solution: MeshFunction::new(sys.nodes.clone(), values, flux),
        newton_iterations: iterations,
        residual: rn,
    })
}

/// Default initial guess: the constant gamma1/alpha1 on the master mesh.
pub fn default_guess(spec: &ProblemSpec) -> MeshFunction {
    let nodes = uniform_nodes(spec.b(), spec.mesh_size);
    MeshFunction::constant(&nodes, spec.bc.gamma1 / spec.bc.alpha1)
}

// ---------------------------------------------------------------------------
// eigenvalue pencil

/// Smallest eigenvalue of -(p y')' = lambda q y with zero flux at 0 and the
/// homogeneous Robin condition at b, via a finite-difference generalized
/// pencil on a shifted mesh (first node at b/M, so 1/p(0) never appears)
/// and inverse power iteration. Two mesh levels must agree to 1e-4 relative.
pub fn oracle_lambda1(coeffs: &CoefficientModel, bc: &RobinBoundary) -> Result<f64> {
    let coarse = pencil_lambda1(coeffs, bc, 4096)?;
    let fine = pencil_lambda1(coeffs, bc, 8192)?;
    let rel = (coarse - fine).abs() / fine.abs().max(1e-300);
    if rel > 1e-4 {
        return Err(SolverError::QuadratureDivergence(format!(
            "eigenvalue pencil mesh levels disagree: {coarse:.9e} vs {fine:.9e} (rel {rel:.3e})"
        )));
    }
    Ok(fine)
}

fn pencil_lambda1(coeffs: &CoefficientModel, bc: &RobinBoundary, m: usize) -> Result<f64> {
    let b = coeffs.b;
    let delta = b / m as f64;
    // Finite volumes on the half-shifted mesh x_j = (j - 1/2) delta,
    // j = 1..m, with cell edges at integer multiples of delta. The zero-flux
    // condition sits exactly on the left edge of cell 1, so it costs no
    // approximation, and 1/p(0) never appears.
    let n = m;

    let p_edge = |j: usize| -> Result<f64> {
        let x = j as f64 * delta;
        let v = coeffs.p(x)?;
        if !(v > 0.0) {
            return Err(SolverError::ValidationFailure(format!(
                "p({x}) = {v} is not positive"
            )));
        }
        Ok(v)
    };

    let mut lower = vec![0.0; n];
    let mut diag = vec![0.0; n];
    let mut upper = vec![0.0; n];
    let mut bdiag = vec![0.0; n];
    let d2 = delta * delta;
    for i in 0..n {
        let j = i + 1;
        let x_node = (j as f64 - 0.5) * delta;
        let q = coeffs.q(x_node)?;
        if !(q > 0.0) {
            return Err(SolverError::ValidationFailure(format!(
                "q({x_node}) = {q} is not positive"
            )));
        }
        bdiag[i] = q;
        let pp = p_edge(j)?;
        if j == 1 {
            diag[i] = pp / d2;
            upper[i] = -pp / d2;
        } else {
            let pm = p_edge(j - 1)?;
            lower[i] = -pm / d2;
            diag[i] = (pm + pp) / d2;
            if j < m {
                upper[i] = -pp / d2;
            } else {
                // ghost node at (m + 1/2) delta eliminated through the Robin
                // condition at the edge b: y(b) ~ (y_m + y_ghost)/2 and
                // p(b) y'(b) ~ p(b)(y_ghost - y_m)/delta give
                // y_ghost = c y_m with the ratio below.
                let pb = pp; // p at the edge b
                let denom = 0.5 * bc.alpha1 + bc.beta1 * pb / delta;
                let c = (bc.beta1 * pb / delta - 0.5 * bc.alpha1) / denom;
                diag[i] = (pm + pb * (1.0 - c)) / d2;
            }
        }
    }

    // inverse power iteration: v <- A^{-1} B v
    let mut v = vec![1.0; n];
    let mut lambda_prev = f64::INFINITY;
    for _ in 0..20_000 {
        let rhs: Vec<f64> = (0..n).map(|i| bdiag[i] * v[i]).collect();
        let w = thomas(&lower, &diag, &upper, &rhs)?;
        // Rayleigh quotient (w' A w)/(w' B w); A w equals B v exactly
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 0..n {
            num += w[i] * rhs[i];
            den += w[i] * bdiag[i] * w[i];
        }
        let lambda = num / den;
        let norm = max_abs(&w);
        if norm == 0.0 || !lambda.is_finite() {
            return Err(SolverError::QuadratureDivergence(
                "eigenvalue pencil breakdown: zero iterate".into(),
            ));
        }
        for x in &mut v {
            *x = 0.0;
        }
        for (dst, src) in v.iter_mut().zip(&w) {
            *dst = src / norm;
        }
        if (lambda - lambda_prev).abs() <= 1e-13 * lambda.abs() {
            return Ok(lambda);
        }
        lambda_prev = lambda;
    }
    Err(SolverError::QuadratureDivergence(
        "inverse power iteration did not converge".into(),
    ))
}

/// Tridiagonal solve (Thomas algorithm; rows are diagonally dominant by
/// construction, so no pivoting).
fn thomas(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut denom = diag[0];
    if denom == 0.0 {
        return Err(SolverError::QuadratureDivergence("singular pencil".into()));
    }
    c[0] = upper[0] / denom;
    d[0] = rhs[0] / denom;
    for i in 1..n {
        denom = diag[i] - lower[i] * c[i - 1];
        if denom == 0.0 {
            return Err(SolverError::QuadratureDivergence("singular pencil".into()));
        }
        if i < n - 1 {
            c[i] = upper[i] / denom;
        }
        d[i] = (rhs[i] - lower[i] * d[i - 1]) / denom;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem_model::NonlinearSource;
    use approx::assert_relative_eq;

    fn spec(p: &str, q: &str, b: f64, bc: RobinBoundary, f: &str, phi: &str) -> ProblemSpec {
        ProblemSpec::new(
            CoefficientModel::from_expressions(p, q, b).unwrap(),
            bc,
            NonlinearSource::new(f, phi, 0.0, 0.0, Some(1.0)).unwrap(),
            64,
        )
        .unwrap()
    }

    #[test]
    fn unit_source_spherical_matches_closed_form() {
        let s = spec(
            "x^2",
            "x^2",
            1.0,
            RobinBoundary { alpha1: 1.0, beta1: 0.0, gamma1: 0.0 },
            "1",
            "2",
        );
        let sol = oracle_solve_on(&s, &default_guess(&s), 512).unwrap();
        assert!(sol.residual < 1e-10);
        let mut worst = 0.0f64;
        for (k, &x) in sol.solution.nodes.iter().enumerate() {
            worst = worst.max((sol.solution.values[k] - (1.0 - x * x) / 6.0).abs());
        }
        assert!(worst < 1e-10, "max error {worst:.3e}");
    }

    #[test]
    fn linear_decay_flat_matches_cosh() {
        // -y'' = -y, y'(0)=0, y(1)=1  =>  y = cosh(x)/cosh(1)
        let s = spec(
            "1",
            "1",
            1.0,
            RobinBoundary { alpha1: 1.0, beta1: 0.0, gamma1: 1.0 },
            "-y",
            "2",
        );
        let sol = oracle_solve_on(&s, &default_guess(&s), 1024).unwrap();
        let mut worst = 0.0f64;
        for (k, &x) in sol.solution.nodes.iter().enumerate() {
            worst = worst.max((sol.solution.values[k] - x.cosh() / 1.0f64.cosh()).abs());
        }
        assert!(worst < 5e-8, "max error {worst:.3e}");
        assert!(sol.newton_iterations <= 10);
    }

    #[test]
    fn michaelis_menten_converges_and_flux_is_consistent() {
        let s = spec(
            "x^2",
            "x^2",
            1.0,
            RobinBoundary { alpha1: 1.0, beta1: 0.0, gamma1: 1.0 },
            "-0.76*y/(y+0.03)",
            "0.8",
        );
        let sol = oracle_solve_on(&s, &default_guess(&s), 1024).unwrap();
        assert!(sol.residual < 1e-10);
        let nodes = &sol.solution.nodes;
        let h = nodes[1] - nodes[0];
        let mut worst = 0.0f64;
        for k in 200..(nodes.len() - 1) {
            let slope = (sol.solution.values[k + 1] - sol.solution.values[k - 1]) / (2.0 * h);
            let p = s.coeffs.p(nodes[k]).unwrap();
            worst = worst.max((slope * p - sol.solution.flux[k]).abs());
        }
        assert!(worst < 100.0 * h * h, "flux consistency {worst:.3e}");
    }

    #[test]
    fn pencil_flat_dirichlet() {
        let coeffs = CoefficientModel::from_expressions("1", "1", 1.0).unwrap();
        let bc = RobinBoundary { alpha1: 1.0, beta1: 0.0, gamma1: 0.0 };
        let lam = oracle_lambda1(&coeffs, &bc).unwrap();
        let expect = (std::f64::consts::PI / 2.0).powi(2);
        assert_relative_eq!(lam, expect, max_relative = 1e-6);
    }

    #[test]
    fn pencil_spherical_dirichlet() {
        let coeffs = CoefficientModel::power_law(2.0, 1.0);
        let bc = RobinBoundary { alpha1: 1.0, beta1: 0.0, gamma1: 0.0 };
        let lam = oracle_lambda1(&coeffs, &bc).unwrap();
        assert_relative_eq!(lam, std::f64::consts::PI.powi(2), max_relative = 1e-5);
    }

    #[test]
    fn pencil_flat_robin() {
        // alpha1 = beta1 = 1: lambda1 = t^2 with t the smallest positive
        // root of tan t = 1/t; the root is found here by bisection.
        let g = |t: f64| t.tan() - 1.0 / t;
        let mut lo = 0.1f64;
        let mut hi = 1.5f64;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(lo) * g(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let expect = (0.5 * (lo + hi)).powi(2);
        assert_relative_eq!(expect, 0.7401738844, max_relative = 1e-8);

        let coeffs = CoefficientModel::from_expressions("1", "1", 1.0).unwrap();
        let bc = RobinBoundary { alpha1: 1.0, beta1: 1.0, gamma1: 0.0 };
        let lam = oracle_lambda1(&coeffs, &bc).unwrap();
        assert_relative_eq!(lam, expect, max_relative = 1e-5);
    }
}
