//! Hypergraph Lagrangians: evaluation, gradient, KKT residual, and a
//! multi-start maximizer that reports attained values only.

pub mod ascent;
mod brute;
mod optimizer;

pub use brute::brute_force_lagrangian;
pub use optimizer::{maximize, OptResult, OptimizerConfig};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::hypergraph::Hypergraph;
use ascent::Objective;

/// Tolerance on `Σ x_i = 1` accepted by [`WeightVector::new`].
pub const SIMPLEX_TOLERANCE: f64 = 1e-12;

/// A point of the standard simplex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return invalid("weight vector is empty");
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return invalid(format!("weight {w} is not a nonnegative number"));
        }
        let s: f64 = weights.iter().sum();
        if (s - 1.0).abs() > SIMPLEX_TOLERANCE {
            return invalid(format!("weights sum to {s}, not 1"));
        }
        Ok(WeightVector(weights))
    }

    pub fn uniform(m: usize) -> Result<Self> {
        if m == 0 {
            return invalid("weight vector is empty");
        }
        Ok(WeightVector(vec![1.0 / m as f64; m]))
    }

    /// Rescales nonnegative weights with a positive sum onto the simplex.
    pub fn normalized(mut weights: Vec<f64>) -> Result<Self> {
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return invalid("weights must be finite and nonnegative");
        }
        let s: f64 = weights.iter().sum();
        if !(s > 0.0) {
            return invalid("weights sum to zero");
        }
        weights.iter_mut().for_each(|w| *w /= s);
        Ok(WeightVector(weights))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

fn check_dim(g: &Hypergraph, x: &[f64]) -> Result<()> {
    if x.len() != g.n() {
        return invalid(format!(
            "weight vector has {} entries but the graph has {} vertices",
            x.len(),
            g.n()
        ));
    }
    Ok(())
}

/// `λ(G, x) = Σ_{e ∈ E} Π_{i ∈ e} x_i`.
pub fn evaluate(g: &Hypergraph, x: &WeightVector) -> Result<f64> {
    check_dim(g, x.as_slice())?;
    Ok(edge_sum(g, x.as_slice()))
}

/// Partial derivatives of `λ(G, ·)`; entry `i` is the Lagrangian of the link of `i`.
pub fn gradient(g: &Hypergraph, x: &WeightVector) -> Result<Vec<f64>> {
    check_dim(g, x.as_slice())?;
    let mut out = vec![0.0; g.n()];
    edge_gradient(g, x.as_slice(), &mut out);
    Ok(out)
}

/// `max_{i : x_i > 0} |∂_i λ(G, x) − r λ(G, x)|`.
pub fn kkt_residual(g: &Hypergraph, x: &WeightVector) -> Result<f64> {
    check_dim(g, x.as_slice())?;
    Ok(residual(g, x.as_slice()))
}

pub(crate) fn residual(g: &Hypergraph, x: &[f64]) -> f64 {
    let mut grad = vec![0.0; g.n()];
    edge_gradient(g, x, &mut grad);
    let target = g.r() as f64 * edge_sum(g, x);
    x.iter()
        .zip(&grad)
        .filter(|(w, _)| **w > 0.0)
        .map(|(_, gi)| (gi - target).abs())
        .fold(0.0, f64::max)
}

fn edge_sum(g: &Hypergraph, x: &[f64]) -> f64 {
    g.edges()
        .map(|e| e.iter().map(|&v| x[v as usize]).product::<f64>())
        .sum()
}

fn edge_gradient(g: &Hypergraph, x: &[f64], out: &mut [f64]) {
    out.iter_mut().for_each(|v| *v = 0.0);
    let r = g.r();
    let mut prefix = vec![1.0; r + 1];
    for e in g.edges() {
        for (k, &v) in e.iter().enumerate() {
            prefix[k + 1] = prefix[k] * x[v as usize];
        }
        let mut suffix = 1.0;
        for k in (0..r).rev() {
            let v = e[k] as usize;
            out[v] += prefix[k] * suffix;
            suffix *= x[v];
        }
    }
}

/// Adapter exposing `λ(G, ·)` to the ascent routines.
pub(crate) struct EdgeObjective<'a>(pub &'a Hypergraph);

impl Objective for EdgeObjective<'_> {
    fn dim(&self) -> usize {
        self.0.n()
    }

    fn value(&self, x: &[f64]) -> f64 {
        edge_sum(self.0, x)
    }

    fn gradient(&self, x: &[f64], grad: &mut [f64]) {
        edge_gradient(self.0, x, grad);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Hypergraph {
        Hypergraph::complete(2, 3).unwrap()
    }

    fn single_edge(r: usize) -> Hypergraph {
        Hypergraph::new(r, r, [(0..r).collect::<Vec<_>>()]).unwrap()
    }

    #[test]
    fn weight_vector_validation() {
        assert!(WeightVector::new(vec![0.5, 0.5]).is_ok());
        assert!(WeightVector::new(vec![0.5, 0.6]).is_err());
        assert!(WeightVector::new(vec![1.5, -0.5]).is_err());
        assert!(WeightVector::new(vec![]).is_err());
        let w = WeightVector::normalized(vec![1.0, 3.0]).unwrap();
        assert_eq!(w.as_slice(), &[0.25, 0.75]);
        assert!(WeightVector::normalized(vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn evaluate_examples() {
        let e5 = single_edge(5);
        let u = WeightVector::uniform(5).unwrap();
        assert!((evaluate(&e5, &u).unwrap() - 3.2e-4).abs() < 1e-18);
        let u3 = WeightVector::uniform(3).unwrap();
        assert!((evaluate(&k3(), &u3).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        // support on the independent set {3, 4}
        let g = Hypergraph::new(2, 5, [[0usize, 1], [1, 2], [0, 3]]).unwrap();
        let x = WeightVector::new(vec![0.0, 0.0, 0.0, 0.5, 0.5]).unwrap();
        assert_eq!(evaluate(&g, &x).unwrap(), 0.0);
        assert!(evaluate(&g, &u3).is_err());
    }

    #[test]
    fn gradient_examples() {
        let g = Hypergraph::new(5, 6, [[0usize, 1, 2, 3, 4]]).unwrap();
        let x = WeightVector::new(vec![0.2, 0.2, 0.2, 0.2, 0.2, 0.0]).unwrap();
        let gr = gradient(&g, &x).unwrap();
        for v in &gr[..5] {
            assert!((v - 1.0 / 625.0).abs() < 1e-17);
        }
        assert_eq!(gr[5], 0.0);
        assert!(gradient(&g, &WeightVector::uniform(5).unwrap()).is_err());
    }

    #[test]
    fn kkt_examples() {
        let e5 = single_edge(5);
        let u = WeightVector::uniform(5).unwrap();
        assert!(kkt_residual(&e5, &u).unwrap() < 1e-17);
        let u3 = WeightVector::uniform(3).unwrap();
        assert!(kkt_residual(&k3(), &u3).unwrap() < 1e-15);
        let x = WeightVector::new(vec![0.5, 0.3, 0.2]).unwrap();
        // grad = (0.5, 0.7, 0.8), 2λ = 2 * 0.31 = 0.62
        assert!((kkt_residual(&k3(), &x).unwrap() - 0.18).abs() < 1e-12);
    }
}
