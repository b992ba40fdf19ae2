//! Problem data model, coefficient validation, and the singular integrals
//! Q(x) = int_0^x q and W(x) = int_0^x (1/p) int_0^s q.
//!
//! W(b) finite is the integrability condition the whole method rests on; it
//! admits p = q = x^alpha for every alpha >= 0, whereas the classical
//! limit-circle integral int (1/p) (int q)^(1/2) only covers alpha < 3. The
//! validator computes both and flags the limit-circle integral as finite or
//! apparently divergent, so the extended coverage is visible per problem.

use serde::{Deserialize, Serialize};

use crate::error::SolverError;
use crate::expr::Expression;
use crate::quad::{integrate_composite, refine_until, GaussRule};
use crate::Result;

/// Coefficient pair p, q on (0, b].
#[derive(Debug, Clone)]
pub enum CoefficientForm {
    /// p = x^alpha_p, q = x^alpha_q with alpha >= 0.
    PowerLaw { alpha_p: f64, alpha_q: f64 },
    /// Arbitrary formulas in x.
    Expressions { p: Expression, q: Expression },
}

/// p, q, the domain endpoint, and declared analyticity data.
///
/// Analyticity of x p'/p and x^2 q/p cannot be checked from black-box
/// formulas; only the decidable consequences are verified (positivity, the
/// sign of the leading Taylor coefficient b0 when declared, finiteness of
/// the integrals). Declared Taylor data beyond b0 is recorded untested.
#[derive(Debug, Clone)]
pub struct CoefficientModel {
    pub form: CoefficientForm,
    /// Domain endpoint, b > 0.
    pub b: f64,
    /// Leading Taylor coefficients of x p'(x)/p(x); first entry is b0.
    pub taylor_b: Option<Vec<f64>>,
    /// Leading Taylor coefficients of x^2 q(x)/p(x).
    pub taylor_c: Option<Vec<f64>>,
    /// Declared radius of analyticity r > b.
    pub analyticity_radius: Option<f64>,
}

impl CoefficientModel {
    /// p = q = x^alpha on (0, b]. Records taylor_b = [alpha] since
    /// x p'/p = alpha exactly.
    pub fn power_law(alpha: f64, b: f64) -> Self {
        CoefficientModel {
            form: CoefficientForm::PowerLaw {
                alpha_p: alpha,
                alpha_q: alpha,
            },
            b,
            taylor_b: Some(vec![alpha]),
            taylor_c: Some(vec![1.0]),
            analyticity_radius: None,
        }
    }

    pub fn from_expressions(p_src: &str, q_src: &str, b: f64) -> Result<Self> {
        let p = Expression::parse(p_src, &["x"])?;
        let q = Expression::parse(q_src, &["x"])?;
        Ok(CoefficientModel {
            form: CoefficientForm::Expressions { p, q },
            b,
            taylor_b: None,
            taylor_c: None,
            analyticity_radius: None,
        })
    }

    pub fn p(&self, x: f64) -> Result<f64> {
        match &self.form {
            CoefficientForm::PowerLaw { alpha_p, .. } => Ok(x.powf(*alpha_p)),
            CoefficientForm::Expressions { p, .. } => Ok(p.eval(&[x])?),
        }
    }

    pub fn q(&self, x: f64) -> Result<f64> {
        match &self.form {
            CoefficientForm::PowerLaw { alpha_q, .. } => Ok(x.powf(*alpha_q)),
            CoefficientForm::Expressions { q, .. } => Ok(q.eval(&[x])?),
        }
    }

    /// Q(x) = int_0^x q(t) dt with a refinement convergence check.
    pub fn cumulative_q(&self, x: f64) -> Result<f64> {
        self.check_range(x)?;
        if x == 0.0 {
            return Ok(0.0);
        }
        let r = refine_until(|level| self.q_integral_level(x, level), 0, 3, 1e-11);
        if !r.value.is_finite() || r.relative_change > 1e-8 {
            return Err(SolverError::QuadratureDivergence(format!(
                "int_0^{x} q: level values {:.12e} -> {:.12e} (relative change {:.3e})",
                r.previous, r.value, r.relative_change
            )));
        }
        Ok(r.value)
    }

    /// W(x) = int_0^x (1/p(s)) int_0^s q(t) dt ds, graded toward the
    /// singular endpoint, with a refinement convergence check.
    pub fn nested_integral(&self, x: f64) -> Result<f64> {
        self.check_range(x)?;
        if x == 0.0 {
            return Ok(0.0);
        }
        let mut failure: Option<SolverError> = None;
        let r = refine_until(
            |level| match self.nested_integral_level(x, level) {
                Ok(v) => v,
                Err(e) => {
                    failure = Some(e);
                    f64::NAN
                }
            },
            0,
            3,
            1e-11,
        );
        if let Some(e) = failure {
            return Err(e);
        }
        if !r.value.is_finite() || r.relative_change > 1e-7 {
            return Err(SolverError::QuadratureDivergence(format!(
                "W({x}) under refinement: {:.12e} -> {:.12e} (relative change {:.3e})",
                r.previous, r.value, r.relative_change
            )));
        }
        Ok(r.value)
    }

    fn check_range(&self, x: f64) -> Result<()> {
        if !(0.0..=self.b).contains(&x) {
            return Err(SolverError::InvalidProblem(format!(
                "x = {x} outside [0, {}]",
                self.b
            )));
        }
        Ok(())
    }

    /// One refinement level of int_0^x q: geometric panels toward 0, each
    /// split into 2^level subpanels of 8-point Gauss.
    fn q_integral_level(&self, x: f64, level: usize) -> f64 {
        let rule = GaussRule::new(8);
        let split = 1usize << level;
        let mut acc = 0.0;
        let mut hi = x;
        for _ in 0..GRADE_LEVELS {
            let lo = hi * 0.5;
            acc += integrate_composite(lo, hi, &rule, split, |t| self.q(t).unwrap_or(f64::NAN));
            hi = lo;
        }
        acc + rule.integrate(0.0, hi, |t| self.q(t).unwrap_or(f64::NAN))
    }

    fn nested_integral_level(&self, x: f64, level: usize) -> Result<f64> {
        let rule = GaussRule::new(8);
        let split = 1usize << level;
        // ascending abscissae of the graded outer rule
        let mut pts: Vec<(f64, f64)> = Vec::new();
        let mut hi = x;
        for _ in 0..GRADE_LEVELS {
            let lo = hi * 0.5;
            let h = (hi - lo) / split as f64;
            for j in 0..split {
                pts.extend(rule.panel(lo + j as f64 * h, lo + (j + 1) as f64 * h));
            }
            hi = lo;
        }
        pts.extend(rule.panel(0.0, hi));
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));

        // cumulative inner integral Q(s) walked alongside the outer points
        let mut acc = 0.0;
        let mut q_cum = self.q_integral_at(pts[0].0, &rule)?;
        let mut prev_s = pts[0].0;
        for &(s, w) in &pts {
            if s > prev_s {
                q_cum += self.q_panel(prev_s, s, &rule)?;
                prev_s = s;
            }
            let p = self.p(s)?;
            if p <= 0.0 {
                return Err(SolverError::ValidationFailure(format!(
                    "p({s}) = {p} is not positive"
                )));
            }
            acc += w * q_cum / p;
        }
        Ok(acc)
    }

    /// int_0^s q with grading (used for the first outer abscissa).
    fn q_integral_at(&self, s: f64, rule: &GaussRule) -> Result<f64> {
        let mut acc = 0.0;
        let mut hi = s;
        for _ in 0..GRADE_LEVELS {
            let lo = hi * 0.5;
            acc += self.q_panel(lo, hi, rule)?;
            hi = lo;
        }
        acc += self.q_panel(0.0, hi, rule)?;
        Ok(acc)
    }

    fn q_panel(&self, a: f64, b: f64, rule: &GaussRule) -> Result<f64> {
        let mut err = None;
        let v = rule.integrate(a, b, |t| match self.q(t) {
            Ok(v) => v,
            Err(e) => {
                err = Some(e);
                f64::NAN
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(v),
        }
    }

    /// Classical limit-circle integral int_eps^b sqrt(Q(s))/p(s) ds.
    pub fn limit_circle_integral_from(&self, eps: f64) -> Result<f64> {
        // integrate in log coordinates: s = e^t spreads the decades evenly
        let rule = GaussRule::new(8);
        let t_lo = eps.ln();
        let t_hi = self.b.ln();
        let panels = ((t_hi - t_lo) / 0.2).ceil().max(8.0) as usize;
        let h = (t_hi - t_lo) / panels as f64;
        let mut acc = 0.0;
        let mut q_cum = self.q_integral_at(eps, &rule)?;
        let mut prev_s = eps;
        for j in 0..panels {
            let a = t_lo + j as f64 * h;
            let b = t_lo + (j + 1) as f64 * h;
            for (t, w) in rule.panel(a, b) {
                let s = t.exp();
                if s > prev_s {
                    q_cum += self.q_panel(prev_s, s, &rule)?;
                    prev_s = s;
                }
                let p = self.p(s)?;
                if p <= 0.0 {
                    return Err(SolverError::ValidationFailure(format!(
                        "p({s}) = {p} is not positive"
                    )));
                }
                acc += w * s * q_cum.max(0.0).sqrt() / p;
            }
        }
        Ok(acc)
    }
}

const GRADE_LEVELS: usize = 50;

/// Robin data: alpha1 y(b) + beta1 p(b) y'(b) = gamma1.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RobinBoundary {
    pub alpha1: f64,
    pub beta1: f64,
    pub gamma1: f64,
}

impl RobinBoundary {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha1 > 0.0) {
            return Err(SolverError::InvalidProblem(format!(
                "alpha1 must be positive, got {}",
                self.alpha1
            )));
        }
        if !(self.beta1 >= 0.0) {
            return Err(SolverError::InvalidProblem(format!(
                "beta1 must be nonnegative, got {}",
                self.beta1
            )));
        }
        if !self.gamma1.is_finite() {
            return Err(SolverError::InvalidProblem("gamma1 must be finite".into()));
        }
        Ok(())
    }
}

/// The source term f(x, y, w) with its declared constants.
///
/// `k1` is a one-sided Lipschitz lower bound in y (may be negative), `l1`
/// a Lipschitz constant in the flux, `n0` a uniform bound on |f| over the
/// iterate region, and `phi` the flux majorant: |f(x,y,w)| <= phi(|w|).
#[derive(Debug, Clone)]
pub struct NonlinearSource {
    pub f: Expression,
    pub k1: f64,
    pub l1: f64,
    pub n0: Option<f64>,
    pub phi: Expression,
}

impl NonlinearSource {
    pub fn new(f_src: &str, phi_src: &str, k1: f64, l1: f64, n0: Option<f64>) -> Result<Self> {
        Ok(NonlinearSource {
            f: Expression::parse(f_src, &["x", "y", "w"])?,
            phi: Expression::parse(phi_src, &["s"])?,
            k1,
            l1,
            n0,
        })
    }

    pub fn eval_f(&self, x: f64, y: f64, w: f64) -> Result<f64> {
        Ok(self.f.eval(&[x, y, w])?)
    }

    pub fn eval_phi(&self, s: f64) -> Result<f64> {
        Ok(self.phi.eval(&[s])?)
    }

    /// True if f never mentions y (checked structurally, then confirmed by
    /// difference quotients at the call sites that rely on it).
    pub fn mentions_y(&self) -> bool {
        self.f.uses_var(1)
    }

    pub fn mentions_w(&self) -> bool {
        self.f.uses_var(2)
    }
}

/// A full problem instance.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub coeffs: CoefficientModel,
    pub bc: RobinBoundary,
    pub source: NonlinearSource,
    pub mesh_size: usize,
}

impl ProblemSpec {
    pub fn new(
        coeffs: CoefficientModel,
        bc: RobinBoundary,
        source: NonlinearSource,
        mesh_size: usize,
    ) -> Result<Self> {
        if !(coeffs.b > 0.0) || !coeffs.b.is_finite() {
            return Err(SolverError::InvalidProblem(format!(
                "domain endpoint b must be positive and finite, got {}",
                coeffs.b
            )));
        }
        if mesh_size < 16 {
            return Err(SolverError::InvalidProblem(format!(
                "mesh_size must be at least 16, got {mesh_size}"
            )));
        }
        bc.validate()?;
        if !(source.l1 >= 0.0) {
            return Err(SolverError::InvalidProblem(format!(
                "L1 must be nonnegative, got {}",
                source.l1
            )));
        }
        if let Some(n0) = source.n0 {
            if !(n0 >= 0.0) {
                return Err(SolverError::InvalidProblem(format!(
                    "N0 must be nonnegative, got {n0}"
                )));
            }
        }
        Ok(ProblemSpec {
            coeffs,
            bc,
            source,
            mesh_size,
        })
    }

    pub fn b(&self) -> f64 {
        self.coeffs.b
    }
}

// ---------------------------------------------------------------------------
// problem files

/// On-disk problem document. Formulas are strings in the grammar of
/// [`crate::expr`]; unknown keys are rejected.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub p: String,
    pub q: String,
    pub b: f64,
    pub alpha1: f64,
    pub beta1: f64,
    pub gamma1: f64,
    pub f: String,
    pub phi: String,
    #[serde(rename = "K1")]
    pub k1: f64,
    #[serde(rename = "L1")]
    pub l1: f64,
    #[serde(rename = "N0", skip_serializing_if = "Option::is_none")]
    pub n0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mesh_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub taylor_b0: Option<f64>,
}

impl TryFrom<&ProblemFile> for ProblemSpec {
    type Error = SolverError;

    fn try_from(file: &ProblemFile) -> Result<ProblemSpec> {
        let mut coeffs = CoefficientModel::from_expressions(&file.p, &file.q, file.b)?;
        if let Some(b0) = file.taylor_b0 {
            coeffs.taylor_b = Some(vec![b0]);
        }
        let bc = RobinBoundary {
            alpha1: file.alpha1,
            beta1: file.beta1,
            gamma1: file.gamma1,
        };
        let source = NonlinearSource::new(&file.f, &file.phi, file.k1, file.l1, file.n0)?;
        ProblemSpec::new(coeffs, bc, source, file.mesh_size.unwrap_or(512))
    }
}

// ---------------------------------------------------------------------------
// validation

/// Outcome of one hypothesis check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FindingStatus {
    Pass,
    Fail,
    /// Informational flag (e.g. the limit-circle diagnostic), never a failure.
    Flag,
}

#[derive(Debug, Clone, Serialize)]
pub struct Finding {
    pub name: String,
    pub status: FindingStatus,
    /// Hard failures abort the pipeline; soft failures surface as warnings.
    pub hard: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
}

impl Finding {
    fn pass(name: &str, detail: String, value: Option<f64>) -> Self {
        Finding {
            name: name.into(),
            status: FindingStatus::Pass,
            hard: false,
            detail,
            value,
        }
    }

    fn fail(name: &str, hard: bool, detail: String, value: Option<f64>) -> Self {
        Finding {
            name: name.into(),
            status: FindingStatus::Fail,
            hard,
            detail,
            value,
        }
    }

    fn flag(name: &str, detail: String, value: Option<f64>) -> Self {
        Finding {
            name: name.into(),
            status: FindingStatus::Flag,
            hard: false,
            detail,
            value,
        }
    }
}

/// One finding per hypothesis.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    /// No failed findings at all.
    pub fn passed(&self) -> bool {
        self.findings
            .iter()
            .all(|f| f.status != FindingStatus::Fail)
    }

    pub fn hard_failure(&self) -> Option<&Finding> {
        self.findings
            .iter()
            .find(|f| f.status == FindingStatus::Fail && f.hard)
    }

    pub fn soft_failures(&self) -> Vec<&Finding> {
        self.findings
            .iter()
            .filter(|f| f.status == FindingStatus::Fail && !f.hard)
            .collect()
    }

    pub fn find(&self, name: &str) -> Option<&Finding> {
        self.findings.iter().find(|f| f.name == name)
    }

    /// The limit-circle diagnostic: Some(true) if flagged divergent.
    pub fn limit_circle_divergent(&self) -> Option<bool> {
        self.find("limit_circle_integral")
            .map(|f| f.detail.contains("appears divergent"))
    }

    /// Turn a hard failure into an error.
    pub fn ensure_solvable(&self) -> Result<()> {
        if let Some(f) = self.hard_failure() {
            return Err(SolverError::ValidationFailure(format!(
                "{}: {}",
                f.name, f.detail
            )));
        }
        Ok(())
    }
}

/// Check every coefficient hypothesis and report one finding each:
/// positivity of p and q, the declared b0 sign, integrability of q,
/// finiteness of W(b), the limit-circle diagnostic, and (when declared)
/// the uniform bound N0 on the region the initial iterates occupy.
pub fn validate(spec: &ProblemSpec) -> ValidationReport {
    let mut findings = Vec::new();
    let b = spec.b();

    // positivity on interior samples: mesh nodes plus graded points near 0
    findings.push(positivity_finding(spec, true));
    findings.push(positivity_finding(spec, false));

    if let Some(tb) = &spec.coeffs.taylor_b {
        let b0 = tb.first().copied().unwrap_or(0.0);
        if b0 >= 0.0 {
            findings.push(Finding::pass(
                "taylor_b0_nonneg",
                format!("declared b0 = {b0} is nonnegative (higher coefficients recorded untested)"),
                Some(b0),
            ));
        } else {
            findings.push(Finding::fail(
                "taylor_b0_nonneg",
                false,
                format!("declared b0 = {b0} is negative"),
                Some(b0),
            ));
        }
    }

    // integrability of q
    match spec.coeffs.cumulative_q(b) {
        Ok(v) => findings.push(Finding::pass(
            "q_integrable",
            format!("int_0^b q = {v:.12e} converged under refinement"),
            Some(v),
        )),
        Err(e) => findings.push(Finding::fail("q_integrable", true, e.to_string(), None)),
    }

    // finiteness of W(b) -- the method's own integrability condition
    match spec.coeffs.nested_integral(b) {
        Ok(v) => findings.push(Finding::pass(
            "nested_integral_finite",
            format!("W(b) = {v:.12e} converged under refinement"),
            Some(v),
        )),
        Err(e) => findings.push(Finding::fail(
            "nested_integral_finite",
            true,
            e.to_string(),
            None,
        )),
    }

    findings.push(limit_circle_finding(spec));

    if let Some(n0) = spec.source.n0 {
        findings.push(n0_finding(spec, n0));
    }

    ValidationReport { findings }
}

fn positivity_finding(spec: &ProblemSpec, is_p: bool) -> Finding {
    let name = if is_p { "p_positive" } else { "q_positive" };
    let b = spec.b();
    let mut samples: Vec<f64> = (1..=spec.mesh_size)
        .map(|k| b * k as f64 / spec.mesh_size as f64)
        .collect();
    let mut s = b / spec.mesh_size as f64;
    for _ in 0..30 {
        s *= 0.5;
        samples.push(s);
    }
    for &x in &samples {
        let v = if is_p {
            spec.coeffs.p(x)
        } else {
            spec.coeffs.q(x)
        };
        match v {
            Ok(v) if v > 0.0 => {}
            Ok(v) => {
                return Finding::fail(
                    name,
                    true,
                    format!(
                        "{}({x}) = {v} is not positive",
                        if is_p { "p" } else { "q" }
                    ),
                    Some(v),
                )
            }
            Err(e) => {
                return Finding::fail(
                    name,
                    true,
                    format!("{}({x}) failed to evaluate: {e}", if is_p { "p" } else { "q" }),
                    None,
                )
            }
        }
    }
    Finding::pass(
        name,
        format!(
            "{} positive at all {} interior samples",
            if is_p { "p" } else { "q" },
            samples.len()
        ),
        None,
    )
}

fn limit_circle_finding(spec: &ProblemSpec) -> Finding {
    // Lower the cutoff through 1e-4, 1e-6, 1e-8 and watch the increments.
    // A convergent integral has shrinking increments; a logarithmically or
    // algebraically divergent one keeps adding at least ~90% of the previous
    // increment per two decades. The ratio for a pure power tail s^(k-1) is
    // exactly 10^(-2k), so the 0.9 threshold separates slow convergence
    // (ratio < 0.9) from log divergence (ratio 1) with margin on both sides.
    let cutoffs = [1e-4, 1e-6, 1e-8];
    let mut values =Vec::new();
    for &eps in &cutoffs {
        match spec.coeffs.limit_circle_integral_from(eps) {
            Ok(v) => values.push(v),
            Err(e) => {
                return Finding::flag(
                    "limit_circle_integral",
                    format!("could not be evaluated: {e}"),
                    None,
                )
            }
        }
    }
    let d1 = values[1] - values[0];
    let d2 = values[2] - values[1];
    let floor = 1e-9 * (values[2].abs() + 1.0);
    let divergent = d2 > floor && d1 > floor && d2 >= 0.9 * d1;
    let verdict = if divergent { "appears divergent" } else { "finite" };
    Finding::flag(
        "limit_circle_integral",
        format!(
            "{verdict}: cutoff values {:.6e}, {:.6e}, {:.6e} (increments {:.3e}, {:.3e})",
            values[0], values[1], values[2], d1, d2
        ),
        Some(values[2]),
    )
}

fn n0_finding(spec: &ProblemSpec, n0: f64) -> Finding {
    // Sample |f| <= N0 over the region the initial iterates occupy: their
    // y-range is gamma1/alpha1 +- N0 (W(b) + beta1 Q(b)/alpha1) and their
    // flux range is +- N0 Q(b). Checking |f| on all of w in R would be
    // vacuous for flux-dependent f; the iteration is confined to this box.
    let b = spec.b();
    let (q_total, w_total) = match (spec.coeffs.cumulative_q(b), spec.coeffs.nested_integral(b)) {
        (Ok(q), Ok(w)) => (q, w),
        _ => {
            return Finding::fail(
                "nonlinearity_bound_n0",
                false,
                "could not evaluate Q(b), W(b) for the sampling box".into(),
                None,
            )
        }
    };
    let y_ref = spec.bc.gamma1 / spec.bc.alpha1;
    let amp = n0 * (w_total + spec.bc.beta1 * q_total / spec.bc.alpha1) * 1.05 + 1e-12;
    let w_cap = 1.05 * n0 * q_total + 1e-12;
    let (nx, ny, nw) = (33, 17, 9);
    let mut worst = 0.0f64;
    let mut worst_at = (0.0, 0.0, 0.0);
    for i in 0..=nx {
        let x = b * i as f64 / nx as f64;
        for j in 0..=ny {
            let y = y_ref - amp + 2.0 * amp * j as f64 / ny as f64;
            for k in 0..=nw {
                let w = -w_cap + 2.0 * w_cap * k as f64 / nw as f64;
                match spec.source.eval_f(x, y, w) {
                    Ok(v) => {
                        if v.abs() > worst {
                            worst = v.abs();
                            worst_at = (x, y, w);
                        }
                    }
                    Err(e) => {
                        return Finding::fail(
                            "nonlinearity_bound_n0",
                            false,
                            format!("f({x}, {y}, {w}) failed to evaluate: {e}"),
                            None,
                        )
                    }
                }
            }
        }
    }
    if worst <= n0 + 1e-9 {
        Finding::pass(
            "nonlinearity_bound_n0",
            format!(
                "max |f| = {worst:.6e} <= N0 = {n0} on the initial-iterate box \
                 (|y - {y_ref:.3}| <= {amp:.3e}, |w| <= {w_cap:.3e})"
            ),
            Some(worst),
        )
    } else {
        Finding::fail(
            "nonlinearity_bound_n0",
            false,
            format!(
                "max |f| = {worst:.6e} exceeds declared N0 = {n0} at (x, y, w) = \
                 ({:.4}, {:.4}, {:.4})",
                worst_at.0, worst_at.1, worst_at.2
            ),
            Some(worst),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn power_spec(alpha: f64) -> ProblemSpec {
        ProblemSpec::new(
            CoefficientModel::power_law(alpha, 1.0),
            RobinBoundary {
                alpha1: 1.0,
                beta1: 0.0,
                gamma1: 0.0,
            },
            NonlinearSource::new("-y", "2", -1.0, 0.0, Some(1.0)).unwrap(),
            64,
        )
        .unwrap()
    }

    #[test]
    fn cumulative_q_closed_forms() {
        let spec = power_spec(2.0);
        assert_relative_eq!(spec.coeffs.cumulative_q(1.0).unwrap(), 1.0 / 3.0, max_relative = 1e-12);
        assert_eq!(spec.coeffs.cumulative_q(0.0).unwrap(), 0.0);
        let flat = ProblemSpec::new(
            CoefficientModel::from_expressions("1", "1", 1.0).unwrap(),
            RobinBoundary { alpha1: 1.0, beta1: 0.0, gamma1: 0.0 },
            NonlinearSource::new("-y", "2", -1.0, 0.0, None).unwrap(),
            64,
        )
        .unwrap();
        assert_relative_eq!(flat.coeffs.cumulative_q(0.5).unwrap(), 0.5, max_relative = 1e-13);
    }

    #[test]
    fn nested_integral_closed_forms() {
        // W(b) = b^2 / (2 (alpha + 1)) for p = q = x^alpha
        for &alpha in &[0.0, 1.0, 2.0, 3.0] {
            let spec = power_spec(alpha);
            let expect = 1.0 / (2.0 * (alpha + 1.0));
            assert_relative_eq!(spec.coeffs.nested_integral(1.0).unwrap(), expect, max_relative = 1e-10);
        }
        let spec = power_spec(2.0);
        assert_relative_eq!(spec.coeffs.nested_integral(1.0).unwrap(), 1.0 / 6.0, max_relative = 1e-10);
        assert_eq!(spec.coeffs.nested_integral(0.0).unwrap(), 0.0);
        // p = q = 1: W(1) = int_0^1 s ds = 1/2
        let flat = CoefficientModel::from_expressions("1", "1", 1.0).unwrap();
        assert_relative_eq!(flat.nested_integral(1.0).unwrap(), 0.5, max_relative = 1e-12);
    }

    #[test]
    fn q_and_w_are_nondecreasing() {
        let spec = power_spec(2.0);
        let xs: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
        let mut prev_q = -1.0;
        let mut prev_w = -1.0;
        for &x in &xs {
            let q = spec.coeffs.cumulative_q(x).unwrap();
            let w = spec.coeffs.nested_integral(x).unwrap();
            assert!(q >= prev_q - 1e-14);
            assert!(w >= prev_w - 1e-14);
            prev_q = q;
            prev_w = w;
        }
    }

    #[test]
    fn validate_alpha2_is_clean_and_limit_circle_finite() {
        let report = validate(&power_spec(2.0));
        assert!(report.passed(), "{report:#?}");
        assert_eq!(report.limit_circle_divergent(), Some(false));
        let w = report.find("nested_integral_finite").unwrap().value.unwrap();
        assert_relative_eq!(w, 1.0 / 6.0, max_relative = 1e-9);
    }

    #[test]
    fn validate_alpha3_flags_limit_circle_divergent_but_w_finite() {
        let report = validate(&power_spec(3.0));
        assert!(report.passed(), "{report:#?}");
        assert_eq!(report.limit_circle_divergent(), Some(true));
        let w = report.find("nested_integral_finite").unwrap().value.unwrap();
        assert_relative_eq!(w, 1.0 / 8.0, max_relative = 1e-9);
    }

    #[test]
    fn validate_rejects_negative_q() {
        let coeffs = CoefficientModel::from_expressions("x^2", "-1", 1.0).unwrap();
        let spec = ProblemSpec::new(
            coeffs,
            RobinBoundary { alpha1: 1.0, beta1: 0.0, gamma1: 0.0 },
            NonlinearSource::new("-y", "2", -1.0, 0.0, None).unwrap(),
            64,
        )
        .unwrap();
        let report = validate(&spec);
        let f = report.hard_failure().expect("expected a hard failure");
        assert_eq!(f.name, "q_positive");
        assert!(report.ensure_solvable().is_err());
    }

    #[test]
    fn mesh_size_floor_is_enforced() {
        let err = ProblemSpec::new(
            CoefficientModel::power_law(2.0, 1.0),
            RobinBoundary { alpha1: 1.0, beta1: 0.0, gamma1: 0.0 },
            NonlinearSource::new("-y", "2", -1.0, 0.0, None).unwrap(),
            8,
        )
        .unwrap_err();
        assert!(matches!(err, SolverError::InvalidProblem(_)));
    }

    #[test]
    fn problem_file_round_trip() {
        let file = ProblemFile {
            p: "x^2".into(),
            q: "x^2".into(),
            b: 1.0,
            alpha1: 1.0,
            beta1: 0.0,
            gamma1: 1.0,
            f: "-0.76*y/(y+0.03)".into(),
            phi: "0.8".into(),
            k1: -0.03,
            l1: 0.0,
            n0: Some(0.76),
            mesh_size: Some(512),
            taylor_b0: Some(2.0),
        };
        let spec = ProblemSpec::try_from(&file).unwrap();
        assert_eq!(spec.mesh_size, 512);
        assert_eq!(spec.coeffs.taylor_b.as_deref(), Some(&[2.0][..]));
        assert_relative_eq!(spec.source.eval_f(0.0, 1.0, 0.0).unwrap(), -0.76 / 1.03);
    }
}
