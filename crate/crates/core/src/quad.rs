//! Quadrature building blocks.
//!
//! Everything here is plain Gauss-Legendre plus one idea: integrands with an
//! integrable algebraic singularity at the *left* endpoint are integrated on
//! geometrically graded panels shrinking toward that endpoint. Uniform panels
//! lose orders of accuracy on x^s-type behaviour; geometric grading restores
//! spectral-grade convergence without knowing the exponent.

/// Gauss-Legendre nodes and weights on [-1, 1].
///
/// Nodes are computed by Newton iteration on the Legendre polynomial from
/// the Chebyshev initial guess; for the small orders used here this is exact
/// to machine precision.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev guess for the i-th positive root.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        let (_, d) = legendre_and_derivative(n, 0.0);
        nodes[n / 2] = 0.0;
        weights[n / 2] = 2.0 / (d * d);
    }
    (nodes, weights)
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// A reusable Gauss-Legendre rule mapped onto arbitrary intervals.
#[derive(Debug, Clone)]
pub struct GaussRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussRule {
    pub fn new(order: usize) -> Self {
        let (nodes, weights) = gauss_legendre(order);
        Self { nodes, weights }
    }

    /// Integrate `f` over [a, b] with a single panel.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut acc = 0.0;
        for (t, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(c + h * t);
        }
        acc * h
    }

    /// Abscissae and weights of a single panel on [a, b].
    pub fn panel(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(t, w)| (c + h * t, w * h))
    }
}

/// Abscissa/weight pairs of a geometrically graded composite rule on [0, x].
///
/// Panels are [x r^(l+1), x r^l] for l = 0..levels, with `rule` applied on
/// each, plus one closing panel on the leftover [0, x r^levels] sliver whose
/// Gauss points stay interior. Suitable for integrands that are integrable
/// at 0; the closing panel keeps even strong algebraic singularities at the
/// ~1e-10 level for `levels` around 60.
pub fn graded_panel_points(x: f64, rule: &GaussRule, levels: usize, ratio: f64) -> Vec<(f64, f64)> {
    assert!(x > 0.0 && ratio > 0.0 && ratio < 1.0);
    let mut pts = Vec::with_capacity((levels + 1) * rule.nodes.len());
    let mut hi = x;
    for _ in 0..levels {
        let lo = hi * ratio;
        pts.extend(rule.panel(lo, hi));
        hi = lo;
    }
    pts.extend(rule.panel(0.0, hi));
    pts.reverse(); // ascending in x
    pts
}

/// Integrate `f` on [0, x] with grading toward 0.
pub fn integrate_graded<F: FnMut(f64) -> f64>(x: f64, rule: &GaussRule, levels: usize, mut f: F) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    graded_panel_points(x, rule, levels, 0.5)
        .iter()
        .map(|&(s, w)| w * f(s))
        .sum()
}

/// Integrate `f` on [a, b] (0 < a) with uniform composite panels.
pub fn integrate_composite<F: FnMut(f64) -> f64>(
    a: f64,
    b: f64,
    rule: &GaussRule,
    panels: usize,
    mut f: F,
) -> f64 {
    let h = (b - a) / panels as f64;
    let mut acc = 0.0;
    for j in 0..panels {
        acc += rule.integrate(a + j as f64 * h, a + (j + 1) as f64 * h, &mut f);
    }
    acc
}

/// Outcome of a refinement study of a single integral value.
#[derive(Debug, Clone, Copy)]
pub struct Refinement {
    pub value: f64,
    pub previous: f64,
    /// |value - previous| / (|value| + 1e-300)
    pub relative_change: f64,
}

/// Evaluate `eval(level)` at increasing refinement levels until the relative
/// change drops below `tol` or `max_level` is reached. Returns the last two
/// values; the caller decides whether non-convergence is fatal.
pub fn refine_until<F: FnMut(usize) -> f64>(
    mut eval: F,
    start_level: usize,
    max_level: usize,
    tol: f64,
) -> Refinement {
    let mut prev = eval(start_level);
    let mut out = Refinement {
        value: prev,
        previous: prev,
        relative_change: f64::INFINITY,
    };
    for level in (start_level + 1)..=max_level {
        let v = eval(level);
        let rel = (v - prev).abs() / (v.abs() + 1e-300);
        out = Refinement {
            value: v,
            previous: prev,
            relative_change: rel,
        };
        if rel < tol {
            return out;
        }
        prev = v;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn nodes_integrate_polynomials_exactly() {
        let rule = GaussRule::new(8);
        // degree 15 is exact for 8-point Gauss
        let v = rule.integrate(0.0, 1.0, |x| x.powi(15));
        assert_relative_eq!(v, 1.0 / 16.0, max_relative = 1e-14);
        let v = rule.integrate(-1.0, 2.0, |x| 3.0 * x * x - x + 0.5);
        assert_relative_eq!(v, 9.0 - 1.5 + 1.5, max_relative = 1e-14);
    }

    #[test]
    fn gauss_16_matches_transcendental() {
        let rule = GaussRule::new(16);
        let v = rule.integrate(0.0, std::f64::consts::PI, |x| x.sin());
        assert_relative_eq!(v, 2.0, max_relative = 1e-14);
    }

    #[test]
    fn graded_handles_algebraic_singularity() {
        // integral of x^(-1/2) over [0,1] = 2, singular at the left end
        let rule = GaussRule::new(8);
        let v = integrate_graded(1.0, &rule, 60, |x| x.powf(-0.5));
        assert_relative_eq!(v, 2.0, max_relative = 1e-9);
        // x^0.3 log-free case as well
        let v = integrate_graded(1.0, &rule, 60, |x| x.powf(0.3));
        assert_relative_eq!(v, 1.0 / 1.3, max_relative = 1e-12);
    }

    #[test]
    fn refine_until_reports_convergence() {
        let r = refine_until(|l| integrate_composite(0.0f64.max(0.1), 1.0, &GaussRule::new(4), 1 << l, |x| x.ln()), 0, 8, 1e-12);
        assert!(r.relative_change < 1e-12);
        assert_relative_eq!(r.value, (1.0f64.ln() * 1.0 - 1.0) - (0.1f64.ln() * 0.1 - 0.1), max_relative = 1e-10);
    }
}
