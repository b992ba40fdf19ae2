//! Grid-sampled functions with their flux.
//!
//! A `MeshFunction` stores y and its flux w = p y' on the master mesh.
//! Near the singular endpoint the flux is the only well-behaved derivative
//! quantity, so it is carried everywhere instead of y'. The boundary
//! condition y'(0) = 0 appears as `flux[0] == 0`.

use serde::Serialize;

/// A function sampled on a fixed grid over [0, b] together with its flux.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeshFunction {
    /// Grid nodes, x[0] = 0 < ... < x[n] = b.
    pub nodes: Vec<f64>,
    /// y at the nodes.
    pub values: Vec<f64>,
    /// w = p y' at the nodes; `flux[0]` is identically 0.
    pub flux: Vec<f64>,
}

impl MeshFunction {
    pub fn new(nodes: Vec<f64>, values: Vec<f64>, flux: Vec<f64>) -> Self {
        debug_assert_eq!(nodes.len(), values.len());
        debug_assert_eq!(nodes.len(), flux.len());
        MeshFunction { nodes, values, flux }
    }

    /// Constant function c with zero flux.
    pub fn constant(nodes: &[f64], c: f64) -> Self {
        MeshFunction {
            nodes: nodes.to_vec(),
            values: vec![c; nodes.len()],
            flux: vec![0.0; nodes.len()],
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn value_at_end(&self) -> f64 {
        *self.values.last().unwrap()
    }

    pub fn flux_at_end(&self) -> f64 {
        *self.flux.last().unwrap()
    }

    /// max |y|
    pub fn max_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// max |w|
    pub fn flux_max_norm(&self) -> f64 {
        self.flux.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().fold(f64::INFINITY, |m, v| m.min(*v))
    }

    /// max over nodes of |self - other| (values only).
    pub fn max_diff(&self, other: &MeshFunction) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// True if self <= other + tol at every node.
    pub fn le(&self, other: &MeshFunction, tol: f64) -> bool {
        self.values
            .iter()
            .zip(&other.values)
            .all(|(a, b)| *a <= *b + tol)
    }

    /// First node where self > other + tol, with the exceedance, if any.
    pub fn first_violation_above(&self, other: &MeshFunction, tol: f64) -> Option<(usize, f64)> {
        self.values
            .iter()
            .zip(&other.values)
            .enumerate()
            .find(|(_, (a, b))| **a > **b + tol)
            .map(|(i, (a, b))| (i, a - b))
    }

    /// All values and fluxes finite.
    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite()) && self.flux.iter().all(|v| v.is_finite())
    }

    /// Linear interpolation of the values at x (clamped to the grid range).
    pub fn interp(&self, x: f64) -> f64 {
        let n = self.nodes.len();
        if x <= self.nodes[0] {
            return self.values[0];
        }
        if x >= self.nodes[n - 1] {
            return self.values[n - 1];
        }
        // uniform grid: direct index
        let h = self.nodes[1] - self.nodes[0];
        let k = ((x - self.nodes[0]) / h).floor() as usize;
        let k = k.min(n - 2);
        let t = (x - self.nodes[k]) / (self.nodes[k + 1] - self.nodes[k]);
        self.values[k] * (1.0 - t) + self.values[k + 1] * t
    }

    /// Serialize as CSV with header `x,y,w`, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.nodes.len() * 64 + 8);
        out.push_str("x,y,w\n");
        for i in 0..self.nodes.len() {
            out.push_str(&format!(
                "{:.16e},{:.16e},{:.16e}\n",
                self.nodes[i], self.values[i], self.flux[i]
            ));
        }
        out
    }
}

/// Uniform master mesh over [0, b] with n panels (n + 1 nodes).
pub fn uniform_nodes(b: f64, n: usize) -> Vec<f64> {
    let mut nodes: Vec<f64> = (0..=n).map(|k| b * k as f64 / n as f64).collect();
    nodes[0] = 0.0;
    nodes[n] = b;
    nodes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_nodes_hit_endpoints() {
        let nodes = uniform_nodes(2.5, 16);
        assert_eq!(nodes[0], 0.0);
        assert_eq!(nodes[16], 2.5);
        assert_eq!(nodes.len(), 17);
    }

    #[test]
    fn interp_is_exact_at_nodes_and_linear_between() {
        let nodes = uniform_nodes(1.0, 4);
        let vals: Vec<f64> = nodes.iter().map(|x| 2.0 * x).collect();
        let f = MeshFunction::new(nodes.clone(), vals, vec![0.0; 5]);
        assert_eq!(f.interp(0.5), 1.0);
        assert_eq!(f.interp(0.3), 0.6);
        assert_eq!(f.interp(2.0), 2.0); // clamped
    }

    #[test]
    fn csv_has_header_and_rows() {
        let f = MeshFunction::new(vec![0.0, 1.0], vec![1.0, 2.0], vec![0.0, -1.0]);
        let csv = f.to_csv();
        assert!(csv.starts_with("x,y,w\n"));
        assert_eq!(csv.lines().count(), 3);
    }
}
