use num_bigint::BigInt;

use crate::error::{invalid, Error, Result};
use crate::hypergraph::{for_each_subset, BlowupVector, Hypergraph, MAX_EDGES};
use crate::lagrangian::WeightVector;

use super::closed_form::{base_edge_count, layered_edge_count};
use super::ConstructionParams;

/// Index of the part containing vertex `v` when parts have size `t`.
pub fn part_of(v: usize, t: usize) -> usize {
    v / t
}

fn check_size(count: &BigInt, n: usize) -> Result<usize> {
    if *count > BigInt::from(MAX_EDGES) {
        return Err(Error::TooLarge(format!(
            "{count} edges exceed the limit of {MAX_EDGES}"
        )));
    }
    if n > u32::MAX as usize {
        return Err(Error::TooLarge(format!("{n} vertices")));
    }
    Ok(usize::try_from(count).expect("bounded above"))
}

/// Pushes every edge of type `m` whose part `i` is `V_{first_part + i}`.
fn push_type(m: &[u32], first_part: usize, t: usize, flat: &mut Vec<u32>) {
    // For each part with m_i > 0, the list of its m_i-subsets (as vertex ids).
    let mut choices: Vec<Vec<Vec<u32>>> = Vec::new();
    for (i, &mi) in m.iter().enumerate() {
        if mi == 0 {
            continue;
        }
        let base = (first_part + i) * t;
        let mut subsets = Vec::new();
        for_each_subset(t, mi as usize, |s| {
            subsets.push(s.iter().map(|&x| (base + x) as u32).collect());
        });
        if subsets.is_empty() {
            return;
        }
        choices.push(subsets);
    }
    let mut idx = vec![0usize; choices.len()];
    loop {
        for (c, &k) in choices.iter().zip(&idx) {
            flat.extend_from_slice(&c[k]);
        }
        // odometer over the cartesian product
        let mut pos = choices.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// `G(ℓ,t)`: 5-uniform on `ℓt` vertices. `q` and `r` are ignored.
pub fn build_base(params: &ConstructionParams) -> Result<Hypergraph> {
    params.validate()?;
    let ConstructionParams { choice, ell, t, .. } = *params;
    let n = ell * t;
    let count = check_size(&base_edge_count(choice, ell, t)?, n)?;
    let mut flat = Vec::with_capacity(count * 5);
    for m in choice.edge_types(ell)? {
        push_type(&m, 0, t, &mut flat);
    }
    Hypergraph::from_flat(5, n, flat)
}

/// `G(ℓ,q,t)`: `q` copies of `G(ℓ,t)` on consecutive blocks of `ℓ` parts, plus
/// every transversal 5-set of five distinct parts not all in one block.
pub fn build_layered(params: &ConstructionParams) -> Result<Hypergraph> {
    params.validate()?;
    let ConstructionParams {
        choice, ell, q, t, ..
    } = *params;
    let parts = ell * q;
    let n = parts * t;
    let count = check_size(&layered_edge_count(choice, ell, q, t)?, n)?;
    let mut flat = Vec::with_capacity(count * 5);
    let types = choice.edge_types(ell)?;
    for p in 0..q {
        for m in &types {
            push_type(m, p * ell, t, &mut flat);
        }
    }
    let mut m = vec![0u32; parts];
    for_each_subset(parts, 5, |ps| {
        if ps[0] / ell == ps[4] / ell {
            return;
        }
        for &p in ps {
            m[p] = 1;
        }
        push_type(&m[ps[0]..=ps[4]], ps[0], t, &mut flat);
        for &p in ps {
            m[p] = 0;
        }
    });
    Hypergraph::from_flat(5, n, flat)
}

/// Adds the edges of `a`, relabelled by `vertex i ↦ part1[i]`, to `g`.
/// Fails if any added edge is already present.
pub fn attach_sparse(g: &Hypergraph, a: &Hypergraph, part1: &[usize]) -> Result<Hypergraph> {
    if a.r() != g.r() {
        return invalid(format!("uniformity mismatch: {} versus {}", a.r(), g.r()));
    }
    if a.n() != part1.len() {
        return invalid(format!(
            "sparse graph has {} vertices but the target set has {}",
            a.n(),
            part1.len()
        ));
    }
    if let Some(&v) = part1.iter().find(|&&v| v >= g.n()) {
        return invalid(format!("vertex {v} out of range"));
    }
    let mut seen = part1.to_vec();
    seen.sort_unstable();
    if seen.windows(2).any(|w| w[0] == w[1]) {
        return invalid("target vertex set has repeated vertices");
    }
    let mut flat = g.flat_edges().to_vec();
    let mut mapped = Vec::with_capacity(a.r());
    for e in a.edges() {
        mapped.clear();
        mapped.extend(e.iter().map(|&v| part1[v as usize] as u32));
        mapped.sort_unstable();
        if g.contains(&mapped) {
            return invalid(format!("edge {mapped:?} is already present"));
        }
        flat.extend_from_slice(&mapped);
    }
    Hypergraph::from_flat(g.r(), g.n(), flat)
}

/// `H⁽ʳ⁾(t)`: each edge of the 5-uniform `h5` (on `5t` vertices) is extended by
/// one vertex from each of the `r − 5` new parts `V_6, …, V_r` of size `t`.
pub fn lift_to_r(h5: &Hypergraph, r: usize, t: usize) -> Result<Hypergraph> {
    if r < 6 {
        return invalid(format!("lift needs r ≥ 6, got {r}"));
    }
    if h5.r() != 5 {
        return invalid(format!("lift needs a 5-uniform graph, got r = {}", h5.r()));
    }
    if t == 0 || h5.n() != 5 * t {
        return invalid(format!(
            "lift needs 5t = {} vertices, got {}",
            5 * t,
            h5.n()
        ));
    }
    let extra = r - 5;
    let count = BigInt::from(h5.edge_count()) * BigInt::from(t).pow(extra as u32);
    check_size(&(count.clone() * BigInt::from(r) / BigInt::from(5)), r * t)?;
    let count = check_size(&count, r * t)?;
    let mut flat = Vec::with_capacity(count * r);
    let mut tail = vec![0usize; extra];
    for e in h5.edges() {
        tail.iter_mut().for_each(|x| *x = 0);
        loop {
            flat.extend_from_slice(e);
            for (j, &x) in tail.iter().enumerate() {
                flat.push(((5 + j) * t + x) as u32);
            }
            let mut pos = extra;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                tail[pos] += 1;
                if tail[pos] < t {
                    break;
                }
                tail[pos] = 0;
            }
            if tail.iter().all(|&x| x == 0) {
                break;
            }
        }
    }
    Hypergraph::from_flat(r, r * t, flat)
}

/// Blow-up with class sizes `⌊n y_i⌋`; vertices whose class is empty are
/// dropped. A relative slack of `1e-9` absorbs rounding in `n y_i`.
pub fn weighted_blowup(g: &Hypergraph, y: &WeightVector, n: usize) -> Result<Hypergraph> {
    if y.len() != g.n() {
        return invalid(format!(
            "weight vector has {} entries but the graph has {} vertices",
            y.len(),
            g.n()
        ));
    }
    let sizes: Vec<usize> = y
        .as_slice()
        .iter()
        .map(|&w| (n as f64 * w * (1.0 + 1e-9)).floor() as usize)
        .collect();
    let keep: Vec<usize> = (0..g.n()).filter(|&i| sizes[i] > 0).collect();
    if keep.is_empty() {
        return invalid("every blow-up class is empty");
    }
    let sub = g.induced_subgraph(&keep)?;
    let kept_sizes = keep.iter().map(|&i| sizes[i]).collect();
    sub.blow_up(&BlowupVector::new(kept_sizes)?)
}
