//! Immutable r-uniform hypergraphs and the combinatorial operations on them.
//!
//! Edges are kept as one flat `Vec<u32>` of length `r * |E|`. Every chunk is a
//! strictly increasing vertex list and chunks are sorted lexicographically, so
//! two equal edge sets always have identical storage and serialize identically.

use std::cmp::Ordering;

use crate::error::{invalid, Error, Result};
use crate::rational::{binom, from_big, Rational};

/// Upper bound on materialized edges; protects blow-ups from exhausting memory.
pub const MAX_EDGES: usize = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    r: usize,
    n: usize,
    edges: Vec<u32>,
}

/// Class sizes for a blow-up, one positive entry per base vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupVector(Vec<usize>);

impl BlowupVector {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if let Some(pos) = sizes.iter().position(|&s| s == 0) {
            return invalid(format!("blow-up class {pos} has size 0"));
        }
        Ok(BlowupVector(sizes))
    }

    pub fn uniform(m: usize, k: usize) -> Result<Self> {
        Self::new(vec![k; m])
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0
    }
}

impl Hypergraph {
    /// Builds a hypergraph from arbitrary-order edges. Each edge is sorted;
    /// repeated vertices, out-of-range ids and duplicate edges are rejected.
    pub fn new<I, E>(r: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        check_dims(r, n)?;
        let mut flat = Vec::new();
        let mut buf = Vec::with_capacity(r);
        for e in edges {
            let e = e.as_ref();
            if e.len() != r {
                return invalid(format!("edge {e:?} has {} vertices, expected {r}", e.len()));
            }
            buf.clear();
            buf.extend(e.iter().map(|&v| v as u32));
            buf.sort_unstable();
            push_checked_edge(&mut flat, &buf, n)?;
        }
        Self::from_flat(r, n, flat)
    }

    pub fn empty(r: usize, n: usize) -> Result<Self> {
        check_dims(r, n)?;
        Ok(Hypergraph {
            r,
            n,
            edges: Vec::new(),
        })
    }

    /// All r-subsets of `n` vertices.
    pub fn complete(r: usize, n: usize) -> Result<Self> {
        check_dims(r, n)?;
        let mut flat = Vec::new();
        for_each_subset(n, r, |s| flat.extend(s.iter().map(|&v| v as u32)));
        Ok(Hypergraph { r, n, edges: flat })
    }

    /// Takes a flat list of already-sorted edges (each chunk increasing and
    /// in range) in any chunk order; sorts chunks and rejects duplicates.
    pub(crate) fn from_flat(r: usize, n: usize, flat: Vec<u32>) -> Result<Self> {
        check_dims(r, n)?;
        debug_assert_eq!(flat.len() % r, 0);
        let m = flat.len() / r;
        let chunk = |i: usize| &flat[i * r..(i + 1) * r];
        let already_sorted = (1..m).all(|i| chunk(i - 1) < chunk(i));
        if already_sorted {
            return Ok(Hypergraph { r, n, edges: flat });
        }
        let mut order: Vec<u32> = (0..m as u32).collect();
        order.sort_unstable_by(|&a, &b| chunk(a as usize).cmp(chunk(b as usize)));
        let mut sorted = Vec::with_capacity(flat.len());
        for (k, &idx) in order.iter().enumerate() {
            let e = chunk(idx as usize);
            if k > 0 && chunk(order[k - 1] as usize) == e {
                return invalid(format!("duplicate edge {e:?}"));
            }
            sorted.extend_from_slice(e);
        }
        Ok(Hypergraph {
            r,
            n,
            edges: sorted,
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len() / self.r
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edges in canonical (lexicographic) order.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[u32]> + '_ {
        self.edges.chunks_exact(self.r)
    }

    pub(crate) fn flat_edges(&self) -> &[u32] {
        &self.edges
    }

    pub fn contains(&self, edge: &[u32]) -> bool {
        if edge.len() != self.r {
            return false;
        }
        let m = self.edge_count();
        let (mut lo, mut hi) = (0usize, m);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.edges[mid * self.r..(mid + 1) * self.r].cmp(edge) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges().filter(|e| e.contains(&(v as u32))).count()
    }

    /// `|E| / C(n, r)` as an exact rational.
    pub fn density(&self) -> Result<Rational> {
        if self.n < self.r {
            return invalid(format!(
                "density needs n >= r (n = {}, r = {})",
                self.n, self.r
            ));
        }
        let total = binom(self.n as u64, self.r as u64);
        Ok(Rational::new(self.edge_count().into(), total))
    }

    /// Subgraph induced on `subset`, relabeled `0..|S|` in increasing order
    /// of the original ids.
    pub fn induced_subgraph(&self, subset: &[usize]) -> Result<Hypergraph> {
        let mut verts = subset.to_vec();
        verts.sort_unstable();
        if verts.windows(2).any(|w| w[0] == w[1]) {
            return invalid("vertex subset contains duplicates");
        }
        if let Some(&v) = verts.iter().find(|&&v| v >= self.n) {
            return invalid(format!("vertex {v} out of range (n = {})", self.n));
        }
        let mut relabel = vec![u32::MAX; self.n];
        for (new, &old) in verts.iter().enumerate() {
            relabel[old] = new as u32;
        }
        let mut flat = Vec::new();
        for e in self.edges() {
            if e.iter().all(|&v| relabel[v as usize] != u32::MAX) {
                flat.extend(e.iter().map(|&v| relabel[v as usize]));
            }
        }
        // Order-preserving relabel keeps chunks sorted and their order intact.
        Ok(Hypergraph {
            r: self.r,
            n: verts.len(),
            edges: flat,
        })
    }

    /// The (r-1)-uniform link of `vertex` on the remaining vertices, relabeled
    /// in order.
    pub fn link(&self, vertex: usize) -> Result<Hypergraph> {
        if self.r < 2 {
            return invalid("link needs r >= 2");
        }
        self.check_vertex(vertex)?;
        let v = vertex as u32;
        let mut flat = Vec::new();
        for e in self.edges().filter(|e| e.contains(&v)) {
            flat.extend(
                e.iter()
                    .filter(|&&u| u != v)
                    .map(|&u| if u > v { u - 1 } else { u }),
            );
        }
        Ok(Hypergraph {
            r: self.r - 1,
            n: self.n - 1,
            edges: flat,
        })
    }

    /// Whether `i` and `j` have the same link off `{i, j}`.
    pub fn equivalent(&self, i: usize, j: usize) -> Result<bool> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if i == j {
            return invalid("equivalence needs two distinct vertices");
        }
        let inc = self.incidence();
        Ok(self.equivalent_with(&inc, i as u32, j as u32))
    }

    /// Greedy partition into classes of pairwise-equivalent vertices. Each
    /// vertex joins the first class all of whose members it is equivalent to,
    /// so no two classes can be merged without breaking pairwise equivalence.
    pub fn symmetry_classes(&self) -> Vec<Vec<usize>> {
        let inc = self.incidence();
        let degrees: Vec<usize> = inc.iter().map(Vec::len).collect();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for v in 0..self.n {
            let home = classes.iter().position(|class| {
                degrees[class[0]] == degrees[v]
                    && class
                        .iter()
                        .all(|&u| self.equivalent_with(&inc, u as u32, v as u32))
            });
            match home {
                Some(idx) => classes[idx].push(v),
                None => classes.push(vec![v]),
            }
        }
        classes
    }

    /// `nv ⊗ G`: vertex `i` becomes a contiguous class of `nv[i]` clones and
    /// every edge becomes all transversals of its classes.
    pub fn blow_up(&self, nv: &BlowupVector) -> Result<Hypergraph> {
        let sizes = nv.sizes();
        if sizes.len() != self.n {
            return invalid(format!(
                "blow-up vector has length {}, graph has {} vertices",
                sizes.len(),
                self.n
            ));
        }
        let mut offsets = Vec::with_capacity(self.n + 1);
        let mut total = 0usize;
        for &s in sizes {
            offsets.push(total);
            total += s;
        }
        if total > u32::MAX as usize {
            return Err(Error::TooLarge(format!("{total} blow-up vertices")));
        }
        let mut count = 0u128;
        for e in self.edges() {
            count += e
                .iter()
                .map(|&v| sizes[v as usize] as u128)
                .product::<u128>();
        }
        if count > MAX_EDGES as u128 {
            return Err(Error::TooLarge(format!("{count} blow-up edges")));
        }
        let mut flat = Vec::with_capacity(count as usize * self.r);
        let mut idx = vec![0usize; self.r];
        for e in self.edges() {
            idx.iter_mut().for_each(|x| *x = 0);
            'product: loop {
                for (pos, &v) in e.iter().enumerate() {
                    flat.push((offsets[v as usize] + idx[pos]) as u32);
                }
                for pos in (0..self.r).rev() {
                    idx[pos] += 1;
                    if idx[pos] < sizes[e[pos] as usize] {
                        continue 'product;
                    }
                    idx[pos] = 0;
                }
                break;
            }
        }
        Hypergraph::from_flat(self.r, total, flat)
    }

    /// Per-vertex lists of incident edge indices.
    pub(crate) fn incidence(&self) -> Vec<Vec<u32>> {
        let mut inc = vec![Vec::new(); self.n];
        for (k, e) in self.edges().enumerate() {
            for &v in e {
                inc[v as usize].push(k as u32);
            }
        }
        inc
    }

    fn equivalent_with(&self, inc: &[Vec<u32>], i: u32, j: u32) -> bool {
        if inc[i as usize].len() != inc[j as usize].len() {
            return false;
        }
        let mut swapped = Vec::with_capacity(self.r);
        for (from, to) in [(i, j), (j, i)] {
            for &k in &inc[from as usize] {
                let e = &self.edges[k as usize * self.r..(k as usize + 1) * self.r];
                if e.contains(&to) {
                    continue;
                }
                swapped.clear();
                swapped.extend(e.iter().copied().filter(|&u| u != from));
                let at = swapped.partition_point(|&u| u < to);
                swapped.insert(at, to);
                if !self.contains(&swapped) {
                    return false;
                }
            }
        }
        true
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return invalid(format!("vertex {v} out of range (n = {})", self.n));
        }
        Ok(())
    }
}

fn check_dims(r: usize, n: usize) -> Result<()> {
    if r == 0 {
        return invalid("uniformity must be at least 1");
    }
    if n > u32::MAX as usize {
        return Err(Error::TooLarge(format!("{n} vertices")));
    }
    Ok(())
}

fn push_checked_edge(flat: &mut Vec<u32>, sorted: &[u32], n: usize) -> Result<()> {
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return invalid(format!("edge {sorted:?} repeats a vertex"));
    }
    if let Some(&v) = sorted.last() {
        if v as usize >= n {
            return invalid(format!("vertex {v} out of range (n = {n})"));
        }
    }
    flat.extend_from_slice(sorted);
    Ok(())
}

/// Calls `f` on every k-subset of `0..n` in lexicographic order.
pub fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut s: Vec<usize> = (0..k).collect();
    loop {
        f(&s);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if s[i] < n - k + i {
                break;
            }
            if i == 0 {
                return;
            }
        }
        s[i] += 1;
        for j in i + 1..k {
            s[j] = s[j - 1] + 1;
        }
    }
}

/// Number of edges the blow-up would have, without building it.
pub fn blow_up_edge_count(g: &Hypergraph, sizes: &[usize]) -> Rational {
    let mut acc = num_bigint::BigInt::from(0);
    for e in g.edges() {
        let mut p = num_bigint::BigInt::from(1);
        for &v in e {
            p *= sizes[v as usize];
        }
        acc += p;
    }
    from_big(acc)
}
