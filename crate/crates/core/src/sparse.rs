//! Random `r`-graphs that are dense globally but sparse on every small vertex
//! set: at least `σ t^{r−1}` edges, and every `V₀` with `r ≤ |V₀| ≤ k` spans at
//! most `|V₀| − r + 1` edges.
//!
//! The builder includes each `r`-set independently with probability
//! `p = min(1, 4σ r!/t)`, then scans subsets of size `r+1..=k` in lexicographic
//! order and deletes the lexicographically last edge of each violator until
//! it is clean. Deleting edges never creates a violation, so one pass leaves
//! the graph clean.

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::hypergraph::{for_each_subset, Hypergraph};
use crate::rational::binom;

/// Verification refuses when it would visit more subsets than this.
pub const DEFAULT_SUBSET_BUDGET: u64 = 10_000_000;
/// Multiplier `c` in the inclusion probability `c σ r!/t`.
pub const INCLUSION_FACTOR: f64 = 4.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparseParams {
    pub r: usize,
    pub t: usize,
    pub k: usize,
    pub sigma: f64,
    pub seed: u64,
    pub max_attempts: usize,
}

impl SparseParams {
    pub fn new(r: usize, t: usize, k: usize, sigma: f64, seed: u64) -> Self {
        SparseParams {
            r,
            t,
            k,
            sigma,
            seed,
            max_attempts: 16,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.r == 0 {
            return invalid("r must be at least 1");
        }
        if self.k < self.r || self.t < self.r {
            return invalid(format!(
                "need r ≤ k and r ≤ t, got r = {}, k = {}, t = {}",
                self.r, self.k, self.t
            ));
        }
        if !(self.sigma >= 0.0) || !self.sigma.is_finite() {
            return invalid(format!(
                "σ must be a finite nonnegative number, got {}",
                self.sigma
            ));
        }
        if self.max_attempts == 0 {
            return invalid("max_attempts must be at least 1");
        }
        if self.t > 128 {
            return Err(Error::TooLarge(format!(
                "t = {} exceeds the 128-vertex limit",
                self.t
            )));
        }
        Ok(())
    }

    /// `⌈σ t^{r−1}⌉`, the least admissible edge count.
    pub fn required_edges(&self) -> usize {
        required_edges(self.r, self.t, self.sigma)
    }

    /// `min(1, 4σ r!/t)`.
    pub fn inclusion_probability(&self) -> f64 {
        let r_fact: f64 = (1..=self.r).map(|i| i as f64).product();
        (INCLUSION_FACTOR * self.sigma * r_fact / self.t as f64).min(1.0)
    }
}

fn required_edges(r: usize, t: usize, sigma: f64) -> usize {
    let target = sigma * (t as f64).powi(r as i32 - 1);
    // tolerate representation error in σ, e.g. 0.001 * 10^4
    let rounded = target.round();
    if (target - rounded).abs() <= 1e-9 * target.max(1.0) {
        rounded as usize
    } else {
        target.ceil() as usize
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SparseBuild {
    #[serde(skip)]
    pub graph: Hypergraph,
    pub edges: usize,
    pub required_edges: usize,
    /// 1-based index of the successful attempt.
    pub attempt: usize,
    pub inclusion_probability: f64,
    pub drawn_edges: usize,
    pub deleted_edges: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparsityReport {
    pub ok: bool,
    /// A smallest violating vertex set, lexicographically first among those.
    pub witness: Option<Vec<usize>>,
    pub witness_edges: usize,
    pub subsets_checked: u64,
}

/// Draws candidates until one satisfies both requirements.
pub fn build_sparse(p: &SparseParams) -> Result<SparseBuild> {
    p.validate()?;
    // sets larger than the vertex set do not exist
    let k = p.k.min(p.t);
    let budget = subset_count(p.t, p.r, k);
    if budget > DEFAULT_SUBSET_BUDGET {
        return Err(Error::TooLarge(format!(
            "{budget} subsets to scan exceed the budget of {DEFAULT_SUBSET_BUDGET}"
        )));
    }
    let required = p.required_edges();
    let prob = p.inclusion_probability();
    let mut best = 0usize;
    for attempt in 0..p.max_attempts {
        let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
        rng.set_stream(attempt as u64);
        let mut masks: Vec<u128> = Vec::new();
        if prob > 0.0 {
            for_each_subset(p.t, p.r, |s| {
                if rng.gen::<f64>() < prob {
                    masks.push(mask_of(s));
                }
            });
        }
        let drawn = masks.len();
        let mut alive = vec![true; drawn];
        for s in p.r + 1..=k {
            let limit = s - p.r + 1;
            for_each_subset(p.t, s, |sub| {
                let m = mask_of(sub);
                let mut inside: Vec<usize> = (0..drawn)
                    .filter(|&i| alive[i] && masks[i] & !m == 0)
                    .collect();
                while inside.len() > limit {
                    let last = inside.pop().expect("nonempty");
                    alive[last] = false;
                }
            });
        }
        let kept: Vec<u128> = masks
            .iter()
            .zip(&alive)
            .filter(|(_, &a)| a)
            .map(|(&m, _)| m)
            .collect();
        best = best.max(kept.len());
        if kept.len() < required {
            continue;
        }
        let graph =
            Hypergraph::from_flat(p.r, p.t, kept.iter().flat_map(|&m| unmask(m)).collect())?;
        let report = verify_local_sparsity(&graph, k)?;
        if !report.ok {
            return Err(Error::InvalidInput(format!(
                "deletion pass left a violation at {:?}",
                report.witness
            )));
        }
        return Ok(SparseBuild {
            edges: graph.edge_count(),
            graph,
            required_edges: required,
            attempt: attempt + 1,
            inclusion_probability: prob,
            drawn_edges: drawn,
            deleted_edges: drawn - kept.len(),
        });
    }
    Err(Error::Retryable {
        attempts: p.max_attempts,
        best_edges: best,
        required,
    })
}

/// Checks every `V₀` with `r ≤ |V₀| ≤ min(k, n)` in order of size, then
/// lexicographically.
pub fn verify_local_sparsity(a: &Hypergraph, k: usize) -> Result<SparsityReport> {
    verify_local_sparsity_with_budget(a, k, DEFAULT_SUBSET_BUDGET)
}

pub fn verify_local_sparsity_with_budget(
    a: &Hypergraph,
    k: usize,
    budget: u64,
) -> Result<SparsityReport> {
    let (r, n) = (a.r(), a.n());
    if k < r {
        return invalid(format!("need r ≤ k, got r = {r}, k = {k}"));
    }
    let k = k.min(n);
    let total = subset_count(n, r, k);
    if total > budget {
        return Err(Error::TooLarge(format!(
            "{total} subsets exceed the verification budget of {budget}"
        )));
    }
    if n > 128 {
        return Err(Error::TooLarge(format!(
            "{n} vertices exceed the 128-vertex limit"
        )));
    }
    let masks: Vec<u128> = a.edges().map(mask_of_u32).collect();
    let mut checked = 0u64;
    for s in r..=k {
        let limit = s - r + 1;
        let mut witness: Option<(Vec<usize>, usize)> = None;
        for_each_subset(n, s, |sub| {
            if witness.is_some() {
                return;
            }
            checked += 1;
            let m = mask_of(sub);
            let count = masks.iter().filter(|&&e| e & !m == 0).count();
            if count > limit {
                witness = Some((sub.to_vec(), count));
            }
        });
        if let Some((w, c)) = witness {
            return Ok(SparsityReport {
                ok: false,
                witness: Some(w),
                witness_edges: c,
                subsets_checked: checked,
            });
        }
    }
    Ok(SparsityReport {
        ok: true,
        witness: None,
        witness_edges: 0,
        subsets_checked: checked,
    })
}

/// `|E(A)| ≥ σ t^{r−1}` with `t = |V(A)|`.
pub fn verify_edge_count(a: &Hypergraph, sigma: f64) -> bool {
    a.edge_count() >= required_edges(a.r(), a.n(), sigma)
}

/// `Σ_{s=r}^{k} C(n, s)`, saturating.
fn subset_count(n: usize, r: usize, k: usize) -> u64 {
    (r..=k.min(n))
        .map(|s| binom(n as u64, s as u64).to_u64().unwrap_or(u64::MAX))
        .fold(0u64, |a, b| a.saturating_add(b))
}

fn mask_of(s: &[usize]) -> u128 {
    s.iter().fold(0u128, |m, &v| m | (1u128 << v))
}

fn mask_of_u32(s: &[u32]) -> u128 {
    s.iter().fold(0u128, |m, &v| m | (1u128 << v))
}

fn unmask(mut m: u128) -> impl Iterator<Item = u32> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let v = m.trailing_zeros();
        m &= m - 1;
        Some(v)
    })
}
