use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rational::binom;

use super::edge_sum;

/// Largest vertex count accepted by [`brute_force_lagrangian`].
pub const BRUTE_FORCE_MAX_VERTICES: usize = 7;
/// Largest number of grid points the oracle will visit.
pub const BRUTE_FORCE_MAX_POINTS: u64 = 50_000_000;

/// Maximum of `λ(G, x)` over simplex points whose coordinates are multiples of
/// `1 / resolution`. Always an attained value, so a lower bound on `λ(G)`.
pub fn brute_force_lagrangian(g: &Hypergraph, resolution: usize) -> Result<f64> {
    let n = g.n();
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(Error::TooLarge(format!(
            "brute force is limited to {BRUTE_FORCE_MAX_VERTICES} vertices, got {n}"
        )));
    }
    if n == 0 || resolution == 0 {
        return Err(Error::InvalidInput(
            "need at least one vertex and a positive resolution".into(),
        ));
    }
    let points = binom((resolution + n - 1) as u64, (n - 1) as u64);
    if points > BRUTE_FORCE_MAX_POINTS.into() {
        return Err(Error::TooLarge(format!(
            "{points} grid points exceed the limit of {BRUTE_FORCE_MAX_POINTS}"
        )));
    }
    let step = 1.0 / resolution as f64;
    let mut counts = vec![0usize; n];
    let mut x = vec![0.0; n];
    let mut best = 0.0f64;
    // Walk all compositions of `resolution` into `n` parts.
    fn walk(
        g: &Hypergraph,
        pos: usize,
        left: usize,
        step: f64,
        counts: &mut [usize],
        x: &mut [f64],
        best: &mut f64,
    ) {
        let n = counts.len();
        if pos == n - 1 {
            counts[pos] = left;
            for (xi, &c) in x.iter_mut().zip(counts.iter()) {
                *xi = c as f64 * step;
            }
            *best = best.max(edge_sum(g, x));
            return;
        }
        for c in 0..=left {
            counts[pos] = c;
            walk(g, pos + 1, left - c, step, counts, x, best);
        }
    }
    walk(g, 0, resolution, step, &mut counts, &mut x, &mut best);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let e2 = Hypergraph::new(2, 2, [[0usize, 1]]).unwrap();
        assert!((brute_force_lagrangian(&e2, 10).unwrap() - 0.25).abs() < 1e-15);
        let e5 = Hypergraph::new(5, 5, [[0usize, 1, 2, 3, 4]]).unwrap();
        assert!((brute_force_lagrangian(&e5, 10).unwrap() - 3.2e-4).abs() < 1e-18);
        let k3 = Hypergraph::complete(2, 3).unwrap();
        assert!(brute_force_lagrangian(&k3, 30).unwrap() >= 0.3333 - 1e-3);
    }

    #[test]
    fn refuses_large_inputs() {
        let g = Hypergraph::empty(2, 8).unwrap();
        assert!(matches!(
            brute_force_lagrangian(&g, 4),
            Err(Error::TooLarge(_))
        ));
        let g = Hypergraph::empty(2, 7).unwrap();
        assert!(matches!(
            brute_force_lagrangian(&g, 1000),
            Err(Error::TooLarge(_))
        ));
    }
}
