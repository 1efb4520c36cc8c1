use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::hypergraph::Hypergraph;
use crate::lagrangian::{maximize, OptimizerConfig};
use crate::rational::{display, Rational};
use crate::sparse::verify_local_sparsity;

use super::search::dirichlet;
use super::{ClaimReport, SUBGRAPH_TOLERANCE};

/// Picks `s` distinct vertices, `from_focus` of them (at most) from `focus`.
fn pick(
    rng: &mut ChaCha8Rng,
    n: usize,
    focus: &[usize],
    s: usize,
    from_focus: usize,
) -> Vec<usize> {
    let mut chosen: Vec<usize> = sample(rng, focus.len(), from_focus.min(focus.len()))
        .into_iter()
        .map(|i| focus[i])
        .collect();
    let mut taken = vec![false; n];
    chosen.iter().for_each(|&v| taken[v] = true);
    let rest: Vec<usize> = (0..n).filter(|&v| !taken[v]).collect();
    let need = (s - chosen.len()).min(rest.len());
    chosen.extend(sample(rng, rest.len(), need).into_iter().map(|i| rest[i]));
    chosen.sort_unstable();
    chosen
}

/// Samples induced subgraphs `M` with at most `k` vertices and checks the
/// optimizer's `λ(M)` against `bound`. A third of the samples are drawn
/// entirely from `focus` (where the sparse edges live), a third with half their vertices from
/// `focus`, and a third uniformly. Sampling-based, hence marked empirical.
pub fn verify_subgraph_bound(
    h: &Hypergraph,
    bound: &Rational,
    k: usize,
    samples: usize,
    seed: u64,
    focus: &[usize],
) -> Result<ClaimReport> {
    let (r, n) = (h.r(), h.n());
    if k == 0 || k > n {
        return invalid(format!("need 1 ≤ k ≤ |V(H)| = {n}, got k = {k}"));
    }
    if let Some(&v) = focus.iter().find(|&&v| v >= n) {
        return invalid(format!("focus vertex {v} out of range"));
    }
    let mut rep = ClaimReport::new(
        "subgraph_bound",
        format!("r={r}, n={n}, k={k}, bound={}", display(bound)),
        bound,
        SUBGRAPH_TOLERANCE,
    );
    rep.empirical = true;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = r.min(k);
    let mut best = 0.0f64;
    let mut over = 0usize;
    let mut with_edges = 0usize;
    for i in 0..samples {
        let s = rng.gen_range(lo..=k);
        let from_focus = match i % 3 {
            0 => s,
            1 => s.div_ceil(2),
            _ => 0,
        };
        let verts = pick(&mut rng, n, focus, s, from_focus);
        let m = h.induced_subgraph(&verts)?;
        if m.is_empty() {
            continue;
        }
        with_edges += 1;
        let cfg = OptimizerConfig {
            restarts: 8,
            seed: seed.wrapping_add(i as u64),
            ..OptimizerConfig::default()
        };
        let res = maximize(&m, &cfg)?;
        if res.lambda_lower > rep.target_value + rep.tolerance {
            over += 1;
        }
        if res.lambda_lower > best {
            best = res.lambda_lower;
            rep.argmax = Some(res.argmax.as_slice().to_vec());
            rep.notes.retain(|s| !s.starts_with("worst subgraph"));
            rep.notes
                .push(format!("worst subgraph on vertices {verts:?}"));
        }
    }
    rep.samples = samples;
    rep.bound(best);
    rep.require(
        over == 0,
        format!("{over} of {with_edges} nonempty samples above the bound"),
    );
    Ok(rep)
}

/// At random weights sorted in decreasing order along the vertex labels,
/// `Σ_{e∈M₁} Π_{v∈e} x_v ≤ x₁x₂x₃x₄ Σ_{i≥5} x_i`. `M₁` must be 5-uniform with
/// every vertex set `V₀` spanning at most `|V₀| − 4` edges; otherwise the check
/// is refused. `achieved_max` is the largest `LHS − RHS` seen.
pub fn verify_claim1(m1: &Hypergraph, trials: usize, seed: u64) -> Result<ClaimReport> {
    if m1.r() != 5 {
        return invalid(format!("expected a 5-uniform graph, got r = {}", m1.r()));
    }
    let n = m1.n();
    if n < 5 {
        return invalid(format!("need at least 5 vertices, got {n}"));
    }
    let sparse = verify_local_sparsity(m1, n)?;
    if !sparse.ok {
        return Err(Error::Refused(format!(
            "local sparsity fails on {:?} ({} edges)",
            sparse.witness, sparse.witness_edges
        )));
    }
    let zero = Rational::from_integer(0.into());
    let mut rep = ClaimReport::new(
        "claim1",
        format!("n={n}, edges={}", m1.edge_count()),
        &zero,
        1e-12,
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = f64::NEG_INFINITY;
    let mut bad = 0usize;
    for _ in 0..trials {
        let mut x = dirichlet(&mut rng, n, 1.0);
        x.sort_unstable_by(|a, b| b.total_cmp(a));
        let lhs: f64 = m1
            .edges()
            .map(|e| e.iter().map(|&v| x[v as usize]).product::<f64>())
            .sum();
        let head = x[0] * x[1] * x[2] * x[3];
        let rhs: f64 = x[4..].iter().map(|&v| head * v).sum();
        let gap = lhs - rhs;
        if gap > rep.tolerance {
            bad += 1;
        }
        if gap > worst {
            worst = gap;
            rep.argmax = Some(x);
        }
    }
    rep.samples = trials;
    rep.achieved_max = worst;
    rep.slack = -worst;
    rep.require(bad == 0, format!("{bad} of {trials} trials with LHS > RHS"));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn single_edge_claim1() {
        let e = Hypergraph::complete(5, 5).unwrap();
        let r = verify_claim1(&e, 200, 1).unwrap();
        assert!(r.pass);
        assert!(r.achieved_max.abs() < 1e-15);
    }

    #[test]
    fn star_is_equality() {
        let edges: Vec<Vec<usize>> = (4..8).map(|i| vec![0, 1, 2, 3, i]).collect();
        let m = Hypergraph::new(5, 8, edges).unwrap();
        let r = verify_claim1(&m, 100, 2).unwrap();
        assert!(r.pass && r.achieved_max.abs() < 1e-15);
    }

    #[test]
    fn dense_m1_is_refused() {
        let k6 = Hypergraph::complete(5, 6).unwrap();
        assert!(matches!(verify_claim1(&k6, 10, 0), Err(Error::Refused(_))));
    }

    #[test]
    fn one_part_subgraphs_are_edgeless() {
        let h = Hypergraph::complete(5, 5).unwrap();
        let r = verify_subgraph_bound(&h, &ratio(1, 3125), 5, 30, 0, &[]).unwrap();
        assert!(r.pass, "{:?}", r.notes);
        assert!(r.empirical);
    }
}
