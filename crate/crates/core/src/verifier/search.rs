//! Multi-start ascent front-ends for polynomial objectives.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};

use crate::lagrangian::ascent::{
    project_simplex, projected_ascent, replicator_ascent, AscentSettings, LocalResult, Objective,
};
use crate::poly::Polynomial;

use super::Budget;

pub(crate) struct Search {
    pub best: LocalResult,
    pub locals: Vec<LocalResult>,
}

fn settings(budget: &Budget) -> AscentSettings {
    AscentSettings {
        max_iterations: budget.max_iterations,
        step_tolerance: 1e-13,
        value_tolerance: 1e-18,
    }
}

pub(crate) fn dirichlet(rng: &mut ChaCha8Rng, n: usize, total: f64) -> Vec<f64> {
    let mut x: Vec<f64> = (0..n).map(|_| Exp1.sample(rng)).collect();
    let s: f64 = x.iter().sum();
    x.iter_mut().for_each(|v| *v *= total / s);
    x
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn keep_best(best: &mut Option<LocalResult>, r: &LocalResult) {
    if best.as_ref().map_or(true, |b| r.value > b.value) {
        *best = Some(r.clone());
    }
}

/// Replicator ascent on `{x ≥ 0, Σx = total}` from the uniform point, the
/// given starts, then Dirichlet draws until `budget.restarts` runs are done.
/// The objective must be homogeneous with nonnegative coefficients.
pub(crate) fn simplex_search<O: Objective + ?Sized>(
    obj: &O,
    total: f64,
    extra: Vec<Vec<f64>>,
    budget: &Budget,
) -> Search {
    let n = obj.dim();
    let st = settings(budget);
    let mut starts = vec![vec![total / n as f64; n]];
    starts.extend(extra);
    let mut k = 0u64;
    while starts.len() < budget.restarts.max(1) {
        starts.push(dirichlet(&mut rng_for(budget.seed, k), n, total));
        k += 1;
    }
    let mut best = None;
    let mut locals = Vec::with_capacity(starts.len());
    for s in starts {
        let r = replicator_ascent(obj, s, &st);
        keep_best(&mut best, &r);
        locals.push(r);
    }
    Search {
        best: best.expect("at least one start"),
        locals,
    }
}

/// Projects the first `parts` coordinates onto the simplex and clamps the
/// last one (`ρ`) to `[0, x₀/4]`.
pub(crate) fn project_with_rho(x: &mut [f64], parts: usize) {
    project_simplex(&mut x[..parts], 1.0);
    let cap = x[0] / 4.0;
    x[parts] = x[parts].clamp(0.0, cap);
}

/// Projected ascent over `{a ∈ simplex, 0 ≤ ρ ≤ a₁/4}` where `ρ` is the last
/// coordinate of `obj`. Starts: uniform with `ρ = 0`, the given ones, a few
/// points with heavy `a₁` (where the `ρ` term can be positive), then
/// Dirichlet draws with `ρ` uniform in its range.
pub(crate) fn rho_search<O: Objective + ?Sized>(
    obj: &O,
    extra: Vec<Vec<f64>>,
    budget: &Budget,
) -> Search {
    let parts = obj.dim() - 1;
    let st = settings(budget);
    let mut uniform = vec![1.0 / parts as f64; parts];
    uniform.push(0.0);
    let mut starts = vec![uniform];
    starts.extend(extra);
    for a1 in [0.75, 0.85, 0.95, 1.0] {
        let mut x = vec![(1.0 - a1) / (parts - 1).max(1) as f64; parts];
        x[0] = a1;
        x.push(a1 / 8.0);
        starts.push(x);
    }
    let mut k = 0u64;
    while starts.len() < budget.restarts.max(1) {
        let mut rng = rng_for(budget.seed, k);
        let mut x = dirichlet(&mut rng, parts, 1.0);
        let u: f64 = rand::Rng::gen(&mut rng);
        x.push(u * x[0] / 4.0);
        starts.push(x);
        k += 1;
    }
    let mut best = None;
    let mut locals = Vec::with_capacity(starts.len());
    for s in starts {
        let r = projected_ascent(obj, s, |x| project_with_rho(x, parts), &st);
        keep_best(&mut best, &r);
        locals.push(r);
    }
    Search {
        best: best.expect("at least one start"),
        locals,
    }
}

/// `p` with its last variable set to zero and removed.
pub(crate) fn drop_last_variable(p: &Polynomial) -> Polynomial {
    let n = p.nvars() - 1;
    let mut out = Polynomial::zero(n);
    for (exps, c) in p.terms() {
        if exps[n] == 0 {
            out.add_term(exps[..n].to_vec(), c.clone());
        }
    }
    out
}
