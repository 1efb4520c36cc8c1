use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::hypergraph::Hypergraph;

use super::ascent::{replicator_ascent, AscentSettings, LocalResult};
use super::{edge_sum, residual, EdgeObjective, WeightVector};

/// Class-uniform starts are skipped when there are more classes than this.
const MAX_CLASS_STARTS: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    /// Number of random Dirichlet(1) starts, on top of the structured ones.
    pub restarts: usize,
    pub max_iterations: usize,
    pub step_tolerance: f64,
    pub value_tolerance: f64,
    pub seed: u64,
    pub symmetrize: bool,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            restarts: 32,
            max_iterations: 100_000,
            step_tolerance: 1e-10,
            value_tolerance: 1e-12,
            seed: 0,
            symmetrize: true,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return invalid("restarts must be at least 1");
        }
        if self.max_iterations == 0 {
            return invalid("max_iterations must be at least 1");
        }
        if !(self.step_tolerance > 0.0) || !(self.value_tolerance > 0.0) {
            return invalid("tolerances must be positive");
        }
        Ok(())
    }

    fn settings(&self) -> AscentSettings {
        AscentSettings {
            max_iterations: self.max_iterations,
            step_tolerance: self.step_tolerance,
            value_tolerance: self.value_tolerance,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptResult {
    /// Best attained value; equals `evaluate(G, argmax)`.
    pub lambda_lower: f64,
    pub argmax: WeightVector,
    pub kkt_residual: f64,
    /// Number of starting points run.
    pub restarts: usize,
    /// Ascent iterations summed over all starts.
    pub iterations: usize,
    pub seed: u64,
    /// Whether the start that produced `argmax` met a stopping tolerance.
    pub converged: bool,
}

/// Multi-start ascent for `λ(G)`. The result is an attained value and hence
/// a lower bound; no upper bound is claimed.
pub fn maximize(g: &Hypergraph, cfg: &OptimizerConfig) -> Result<OptResult> {
    cfg.validate()?;
    let n = g.n();
    if n == 0 {
        return invalid("graph has no vertices");
    }
    if g.is_empty() {
        return Ok(OptResult {
            lambda_lower: 0.0,
            argmax: WeightVector::uniform(n)?,
            kkt_residual: 0.0,
            restarts: 0,
            iterations: 0,
            seed: cfg.seed,
            converged: true,
        });
    }

    let classes = if cfg.symmetrize {
        g.symmetry_classes()
    } else {
        (0..n).map(|v| vec![v]).collect()
    };
    let starts = starting_points(n, &classes, cfg);
    let objective = EdgeObjective(g);
    let settings = cfg.settings();

    let mut best: Option<LocalResult> = None;
    let mut iterations = 0;
    for mut start in starts.iter().cloned() {
        if cfg.symmetrize {
            pool(&mut start, &classes);
        }
        let local = replicator_ascent(&objective, start, &settings);
        iterations += local.iterations;
        // strict improvement only, so the lowest start index wins ties
        if best.as_ref().map_or(true, |b| local.value > b.value) {
            best = Some(local);
        }
    }
    let best = best.expect("at least one start");
    let argmax = WeightVector::normalized(best.x)?;
    let lambda_lower = edge_sum(g, argmax.as_slice());
    Ok(OptResult {
        lambda_lower,
        kkt_residual: residual(g, argmax.as_slice()),
        argmax,
        restarts: starts.len(),
        iterations,
        seed: cfg.seed,
        converged: best.converged,
    })
}

/// Uniform, class-balanced, class-uniform, then `cfg.restarts` Dirichlet(1) draws.
fn starting_points(n: usize, classes: &[Vec<usize>], cfg: &OptimizerConfig) -> Vec<Vec<f64>> {
    let mut starts = vec![vec![1.0 / n as f64; n]];
    if classes.len() > 1 && classes.len() < n {
        let mut x = vec![0.0; n];
        let share = 1.0 / classes.len() as f64;
        for c in classes {
            for &v in c {
                x[v] = share / c.len() as f64;
            }
        }
        starts.push(x);
    }
    if classes.len() > 1 && classes.len() <= MAX_CLASS_STARTS {
        for c in classes {
            let mut x = vec![0.0; n];
            for &v in c {
                x[v] = 1.0 / c.len() as f64;
            }
            starts.push(x);
        }
    }
    for k in 0..cfg.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(k as u64);
        let mut x: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
        let s: f64 = x.iter().sum();
        x.iter_mut().for_each(|w| *w /= s);
        starts.push(x);
    }
    starts
}

/// Replaces each weight by the mean over its class.
fn pool(x: &mut [f64], classes: &[Vec<usize>]) {
    for c in classes {
        let mean = c.iter().map(|&v| x[v]).sum::<f64>() / c.len() as f64;
        for &v in c {
            x[v] = mean;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::BlowupVector;
    use crate::lagrangian::brute_force_lagrangian;

    #[test]
    fn single_edge_value() {
        let g = Hypergraph::new(5, 5, [[0usize, 1, 2, 3, 4]]).unwrap();
        let res = maximize(&g, &OptimizerConfig::default()).unwrap();
        assert!((res.lambda_lower - 1.0 / 3125.0).abs() < 1e-9);
        assert!(res.kkt_residual < 1e-9);
    }

    #[test]
    fn triangle_matches_grid_oracle() {
        let g = Hypergraph::complete(2, 3).unwrap();
        let res = maximize(&g, &OptimizerConfig::default()).unwrap();
        let grid = brute_force_lagrangian(&g, 999).unwrap();
        assert!((res.lambda_lower - grid).abs() < 1e-6);
        assert!((res.lambda_lower - 1.0 / 3.0).abs() < 1e-8);
    }

    #[test]
    fn empty_edge_set() {
        let g = Hypergraph::empty(3, 4).unwrap();
        let res = maximize(&g, &OptimizerConfig::default()).unwrap();
        assert_eq!(res.lambda_lower, 0.0);
        assert_eq!(res.argmax, WeightVector::uniform(4).unwrap());
    }

    #[test]
    fn blow_up_keeps_value() {
        let g = Hypergraph::new(3, 4, [[0usize, 1, 2], [0, 1, 3]]).unwrap();
        let cfg = OptimizerConfig::default();
        let a = maximize(&g, &cfg).unwrap().lambda_lower;
        let b = maximize(
            &g.blow_up(&BlowupVector::uniform(4, 2).unwrap()).unwrap(),
            &cfg,
        )
        .unwrap()
        .lambda_lower;
        assert!((a - b).abs() < 1e-6, "{a} vs {b}");
    }

    #[test]
    fn deterministic_for_seed() {
        let g = Hypergraph::new(3, 5, [[0usize, 1, 2], [1, 2, 3], [2, 3, 4], [0, 3, 4]]).unwrap();
        let cfg = OptimizerConfig {
            seed: 17,
            ..Default::default()
        };
        assert_eq!(maximize(&g, &cfg).unwrap(), maximize(&g, &cfg).unwrap());
    }

    #[test]
    fn rejects_bad_config() {
        let g = Hypergraph::complete(2, 3).unwrap();
        let cfg = OptimizerConfig {
            restarts: 0,
            ..Default::default()
        };
        assert!(maximize(&g, &cfg).is_err());
    }
}
