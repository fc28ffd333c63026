// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Loopless multigraphs on dense vertex indices.
//!
//! Multiplicities live in a symmetric `n × n` table. Every parallel edge is
//! addressable as an [`EdgeInstance`] `(v, w, copy)` with `v < w`, and the
//! instances are numbered consecutively in lexicographic pair order so that
//! colorings can be stored as flat slot vectors.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported vertex count; vertex sets are 64-bit masks.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0}: multigraphs here are loopless")]
    Loop(usize),
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("edge multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("{n} vertices exceeds the supported maximum of {MAX_VERTICES}")]
    TooLarge { n: usize },
    #[error("operation needs a graph with at least one vertex")]
    Empty,
    #[error("no copy of edge {v}-{w} to remove")]
    MissingEdge { v: usize, w: usize },
    #[error("invalid generator parameter: {0}")]
    BadParameter(&'static str),
}

/// One parallel copy of the edge joining `v` and `w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeInstance {
    pub v: usize,
    pub w: usize,
    pub copy: u32,
}

impl EdgeInstance {
    /// Normalizes endpoint order so that `v < w`.
    pub fn new(a: usize, b: usize, copy: u32) -> Self {
        let (v, w) = if a <= b { (a, b) } else { (b, a) };
        EdgeInstance { v, w, copy }
    }

    pub fn other(&self, x: usize) -> usize {
        if x == self.v {
            self.w
        } else {
            self.v
        }
    }

    pub fn touches(&self, x: usize) -> bool {
        self.v == x || self.w == x
    }

    pub fn pair(&self) -> (usize, usize) {
        (self.v, self.w)
    }
}

impl fmt::Display for EdgeInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}#{}", self.v, self.w, self.copy)
    }
}

/// A subset of `0..64`, stored as a bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const fn empty() -> Self {
        VertexSet(0)
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let items = Vec::<usize>::deserialize(d)?;
        if let Some(&v) = items.iter().find(|&&v| v >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!("vertex {v} out of range")));
        }
        Ok(items.into_iter().collect())
    }
}

/// Summary degree statistics of a nonempty multigraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeStats {
    /// Maximum degree Δ(G).
    pub max_degree: u32,
    /// Maximum multiplicity μ(G).
    pub max_mult: u32,
    /// Ore's parameter: the maximum of d(v) + μ(v).
    pub d_mu: u32,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    n: usize,
    mult: Vec<u32>,
    /// `offsets[v * n + w]` for `v < w` is the slot of copy 0 of that pair.
    offsets: Vec<usize>,
    edge_count: usize,
}

impl fmt::Debug for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multigraph(n={}", self.n)?;
        for (v, w, m) in self.pairs() {
            write!(f, ", {v}-{w}x{m}")?;
        }
        write!(f, ")")
    }
}

impl Multigraph {
    /// The edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge { n });
        }
        Ok(Self::from_table(n, vec![0; n * n]))
    }

    /// Builds a multigraph from `(v, w, multiplicity)` entries. Repeated
    /// pairs accumulate.
    pub fn build<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize, u32)>,
    {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge { n });
        }
        let mut mult = vec![0u32; n * n];
        for (v, w, m) in edges {
            for x in [v, w] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { v: x, n });
                }
            }
            if v == w {
                return Err(GraphError::Loop(v));
            }
            if m == 0 {
                return Err(GraphError::ZeroMultiplicity);
            }
            mult[v * n + w] += m;
            mult[w * n + v] += m;
        }
        Ok(Self::from_table(n, mult))
    }

    fn from_table(n: usize, mult: Vec<u32>) -> Self {
        let mut offsets = vec![0usize; n * n];
        let mut next = 0usize;
        for v in 0..n {
            for w in v + 1..n {
                offsets[v * n + w] = next;
                next += mult[v * n + w] as usize;
            }
        }
        Multigraph {
            n,
            mult,
            offsets,
            edge_count: next,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// μ(v, w); zero on the diagonal.
    pub fn mult(&self, v: usize, w: usize) -> u32 {
        self.mult[v * self.n + w]
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.mult[v * self.n..(v + 1) * self.n].iter().sum()
    }

    /// μ(v) = max_w μ(v, w), zero for an isolated vertex.
    pub fn mu(&self, v: usize) -> u32 {
        self.mult[v * self.n..(v + 1) * self.n]
            .iter()
            .copied()
            .max()
            .unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        (0..self.n).filter(|&w| self.mult(v, w) > 0).collect()
    }

    /// d_F(v) = Σ_{w ∈ F} μ(v, w); `v` need not belong to `f`.
    pub fn degree_into(&self, v: usize, f: VertexSet) -> u32 {
        f.iter().filter(|&w| w < self.n).map(|w| self.mult(v, w)).sum()
    }

    /// Number of edge instances |E(G)|.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_simple(&self) -> bool {
        self.mult.iter().all(|&m| m <= 1)
    }

    pub fn max_degree(&self) -> u32 {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn max_mult(&self) -> u32 {
        self.mult.iter().copied().max().unwrap_or(0)
    }

    /// Δ(G), μ(G) and Ore's D̄μ(G). Rejects the graph with no vertices.
    pub fn degree_stats(&self) -> Result<DegreeStats, GraphError> {
        if self.n == 0 {
            return Err(GraphError::Empty);
        }
        Ok(DegreeStats {
            max_degree: self.max_degree(),
            max_mult: self.max_mult(),
            d_mu: (0..self.n)
                .map(|v| self.degree(v) + self.mu(v))
                .max()
                .unwrap_or(0),
        })
    }

    pub fn d_mu_max(&self) -> Result<u32, GraphError> {
        self.degree_stats().map(|s| s.d_mu)
    }

    /// Nonzero pairs `(v, w, μ(v, w))` with `v < w`, in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        (0..self.n).flat_map(move |v| {
            (v + 1..self.n).filter_map(move |w| {
                let m = self.mult(v, w);
                (m > 0).then_some((v, w, m))
            })
        })
    }

    /// All edge instances in slot order.
    pub fn edges(&self) -> impl Iterator<Item = EdgeInstance> + '_ {
        self.pairs()
            .flat_map(|(v, w, m)| (0..m).map(move |copy| EdgeInstance { v, w, copy }))
    }

    /// Edge instances incident to `v`.
    pub fn incident(&self, v: usize) -> impl Iterator<Item = EdgeInstance> + '_ {
        (0..self.n).flat_map(move |w| {
            (0..self.mult(v, w)).map(move |copy| EdgeInstance::new(v, w, copy))
        })
    }

    pub fn contains_edge(&self, e: EdgeInstance) -> bool {
        e.v < e.w && e.w < self.n && e.copy < self.mult(e.v, e.w)
    }

    /// Slot of an edge instance in `0..edge_count()`.
    pub fn edge_index(&self, e: EdgeInstance) -> Option<usize> {
        self.contains_edge(e)
            .then(|| self.offsets[e.v * self.n + e.w] + e.copy as usize)
    }

    /// Slot of copy 0 of the pair; only meaningful when `μ(v, w) > 0`.
    pub(crate) fn pair_offset(&self, v: usize, w: usize) -> usize {
        let (a, b) = if v < w { (v, w) } else { (w, v) };
        self.offsets[a * self.n + b]
    }

    /// Edge instance occupying slot `idx`.
    pub fn edge_at(&self, idx: usize) -> Option<EdgeInstance> {
        if idx >= self.edge_count {
            return None;
        }
        // Pairs are few at desk scale; a scan is fine.
        self.pairs().find_map(|(v, w, m)| {
            let start = self.offsets[v * self.n + w];
            (idx < start + m as usize).then(|| EdgeInstance {
                v,
                w,
                copy: (idx - start) as u32,
            })
        })
    }

    pub fn with_copy_added(&self, v: usize, w: usize) -> Result<Self, GraphError> {
        self.check_pair(v, w)?;
        let mut mult = self.mult.clone();
        mult[v * self.n + w] += 1;
        mult[w * self.n + v] += 1;
        Ok(Self::from_table(self.n, mult))
    }

    /// Removes the highest-numbered copy of the pair.
    pub fn with_copy_removed(&self, v: usize, w: usize) -> Result<Self, GraphError> {
        self.check_pair(v, w)?;
        if self.mult(v, w) == 0 {
            return Err(GraphError::MissingEdge { v, w });
        }
        let mut mult = self.mult.clone();
        mult[v * self.n + w] -= 1;
        mult[w * self.n + v] -= 1;
        Ok(Self::from_table(self.n, mult))
    }

    fn check_pair(&self, v: usize, w: usize) -> Result<(), GraphError> {
        for x in [v, w] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange { v: x, n: self.n });
            }
        }
        if v == w {
            return Err(GraphError::Loop(v));
        }
        Ok(())
    }

    /// The multigraph spanned by the instances with `keep[slot] == true`,
    /// on the same vertex set.
    pub fn spanning_subgraph(&self, keep: &[bool]) -> Self {
        let mut mult = vec![0u32; self.n * self.n];
        for (idx, e) in self.edges().enumerate() {
            if keep.get(idx).copied().unwrap_or(false) {
                mult[e.v * self.n + e.w] += 1;
                mult[e.w * self.n + e.v] += 1;
            }
        }
        Self::from_table(self.n, mult)
    }

    /// G[D] with vertices relabeled `0..|D|` in increasing order.
    pub fn induced(&self, d: VertexSet) -> Induced {
        let vertices: Vec<usize> = d.iter().filter(|&v| v < self.n).collect();
        let m = vertices.len();
        let mut mult = vec![0u32; m * m];
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate() {
                mult[i * m + j] = self.mult(a, b);
            }
        }
        Induced {
            vertices,
            graph: Self::from_table(m, mult),
        }
    }

    /// The three "maximum" subgraphs G_Δ, G^Δμ and G*.
    pub fn star_subgraphs(&self) -> Result<StarSubgraphs, GraphError> {
        let stats = self.degree_stats()?;
        let mut max_deg = VertexSet::empty();
        let mut both = VertexSet::empty();
        let mut star = VertexSet::empty();
        for v in 0..self.n {
            let (d, mu) = (self.degree(v), self.mu(v));
            if d == stats.max_degree {
                max_deg.insert(v);
                if mu == stats.max_mult {
                    both.insert(v);
                }
            }
            if d + mu == stats.d_mu {
                star.insert(v);
            }
        }
        Ok(StarSubgraphs {
            max_degree: self.induced(max_deg),
            max_degree_mult: self.induced(both),
            star: self.induced(star),
        })
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut mult = vec![0u32; self.n * self.n];
        for v in 0..self.n {
            for w in 0..self.n {
                mult[perm[v] * self.n + perm[w]] = self.mult(v, w);
            }
        }
        Self::from_table(self.n, mult)
    }
}

/// An induced subgraph together with the host labels of its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Induced {
    /// `vertices[i]` is the host vertex relabeled to `i`.
    pub vertices: Vec<usize>,
    pub graph: Multigraph,
}

impl Induced {
    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }
}

#[derive(Debug, Clone)]
pub struct StarSubgraphs {
    /// G_Δ: induced by the vertices of maximum degree.
    pub max_degree: Induced,
    /// G^Δμ: induced by vertices of maximum degree and maximum multiplicity.
    /// May have no vertices.
    pub max_degree_mult: Induced,
    /// G*: induced by the vertices with d(v) + μ(v) = D̄μ(G).
    pub star: Induced,
}

/// The join I_k ∨ H. Vertices of `h` keep their labels; the `k` new
/// independent vertices are `h.n()..h.n() + k`.
pub fn join(k: usize, h: &Multigraph) -> Result<Multigraph, GraphError> {
    let n = h.n() + k;
    if n > MAX_VERTICES {
        return Err(GraphError::TooLarge { n });
    }
    let mut edges: Vec<(usize, usize, u32)> = h.pairs().collect();
    for i in h.n()..n {
        for v in 0..h.n() {
            edges.push((v, i, 1));
        }
    }
    Multigraph::build(n, edges)
}

/// Seeded random multigraph: every unordered pair independently gets an
/// edge with probability `edge_prob`, with multiplicity uniform in
/// `1..=max_mult`.
pub fn random_multigraph(
    seed: u64,
    n: usize,
    max_mult: u32,
    edge_prob: f64,
) -> Result<Multigraph, GraphError> {
    if n == 0 {
        return Err(GraphError::BadParameter("n must be at least 1"));
    }
    if max_mult == 0 {
        return Err(GraphError::BadParameter("max_mult must be at least 1"));
    }
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(GraphError::BadParameter("edge_prob must lie in [0, 1]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 0..n {
        for w in v + 1..n {
            if rng.gen_bool(edge_prob) {
                edges.push((v, w, rng.gen_range(1..=max_mult)));
            }
        }
    }
    Multigraph::build(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn k3() -> Multigraph {
        Multigraph::build(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap()
    }

    fn doubled_triangle() -> Multigraph {
        Multigraph::build(3, [(0, 1, 2), (1, 2, 1), (0, 2, 1)]).unwrap()
    }

    #[test]
    fn build_examples() {
        let g = k3();
        assert_eq!(g.edge_count(), 3);
        assert!(g.is_simple());
        let g = Multigraph::build(2, [(0, 1, 3)]).unwrap();
        assert_eq!(g.mult(0, 1), 3);
        assert_eq!(g.degree(0), 3);
        assert_eq!(
            Multigraph::build(3, [(0, 0, 1)]).unwrap_err(),
            GraphError::Loop(0)
        );
        assert!(matches!(
            Multigraph::build(3, [(0, 3, 1)]),
            Err(GraphError::VertexOutOfRange { v: 3, n: 3 })
        ));
    }

    #[test]
    fn repeated_entries_accumulate() {
        let g = Multigraph::build(2, [(0, 1, 1), (1, 0, 2)]).unwrap();
        assert_eq!(g.mult(0, 1), 3);
        assert_eq!(g.mult(1, 0), 3);
    }

    #[test]
    fn mu_examples() {
        assert_eq!(doubled_triangle().mu(0), 2);
        assert_eq!(Multigraph::new(2).unwrap().mu(1), 0);
        assert!((0..3).all(|v| k3().mu(v) == 1));
    }

    #[test]
    fn degree_stats_examples() {
        let s = k3().degree_stats().unwrap();
        assert_eq!((s.d_mu, s.max_degree, s.max_mult), (3, 2, 1));
        assert_eq!(doubled_triangle().d_mu_max().unwrap(), 5);
        assert_eq!(Multigraph::new(1).unwrap().d_mu_max().unwrap(), 0);
        assert_eq!(
            Multigraph::new(0).unwrap().d_mu_max().unwrap_err(),
            GraphError::Empty
        );
    }

    #[test]
    fn join_examples() {
        let k2 = Multigraph::build(2, [(0, 1, 1)]).unwrap();
        assert_eq!(join(1, &k2).unwrap(), k3());
        let p3 = join(2, &Multigraph::new(1).unwrap()).unwrap();
        assert_eq!(p3.edge_count(), 2);
        assert_eq!(p3.degree(0), 2);
        assert_eq!(p3.mult(1, 2), 0);
        let k4 = join(1, &k3()).unwrap();
        assert_eq!(k4.edge_count(), 6);
        assert!((0..4).all(|v| k4.degree(v) == 3));
    }

    #[test]
    fn star_subgraph_examples() {
        let s = k3().star_subgraphs().unwrap();
        for sub in [&s.max_degree, &s.max_degree_mult, &s.star] {
            assert_eq!(sub.graph, k3());
        }
        let star = Multigraph::build(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)]).unwrap();
        let s = star.star_subgraphs().unwrap();
        assert_eq!(s.max_degree.vertices, vec![0]);
        assert_eq!(s.max_degree.graph.edge_count(), 0);

        // d + μ: vertices 0 and 1 have 3 + 2, vertex 2 has 2 + 1.
        let s = doubled_triangle().star_subgraphs().unwrap();
        assert_eq!(s.star.vertices, vec![0, 1]);
        assert_eq!(s.star.graph.mult(0, 1), 2);
        assert_eq!(s.max_degree_mult.vertices, vec![0, 1]);
    }

    #[test]
    fn induced_and_degree_into() {
        assert_eq!(k3().induced(VertexSet::empty()).graph.n(), 0);
        let f: VertexSet = [1, 2].into_iter().collect();
        assert_eq!(k3().degree_into(0, f), 2);
        assert_eq!(doubled_triangle().degree_into(0, VertexSet::singleton(1)), 2);
    }

    #[test]
    fn random_examples() {
        let g = random_multigraph(1, 6, 3, 0.0).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert!(random_multigraph(5, 8, 1, 0.7).unwrap().is_simple());
        assert_eq!(
            random_multigraph(42, 7, 3, 0.5).unwrap(),
            random_multigraph(42, 7, 3, 0.5).unwrap()
        );
        assert!(random_multigraph(1, 0, 1, 0.5).is_err());
    }

    #[test]
    fn edge_slots_round_trip() {
        let g = doubled_triangle();
        for (idx, e) in g.edges().enumerate() {
            assert_eq!(g.edge_index(e), Some(idx));
            assert_eq!(g.edge_at(idx), Some(e));
        }
        assert_eq!(g.edge_at(g.edge_count()), None);
        assert_eq!(g.incident(0).count(), 3);
    }
}
