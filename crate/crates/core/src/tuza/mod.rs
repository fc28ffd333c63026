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

//! Triangle packing and covering in joins `I_k ∨ H`, and the vertex-set
//! and edge-set optimizations behind them.
//!
//! For a simple graph and `k ≥ 1`:
//!
//! * `φ_k(D) = k|D| − |E(G[D])|` and `φ_k(G)` is its maximum over all `D`;
//!   a k-optimal set is a k-dependent (`Δ(G[D]) ≤ k − 1`) maximizer.
//! * `α'_k(G)` is the largest size of a k-edge-colorable subgraph.
//!
//! When `H` is triangle-free, `ν(I_k ∨ H) = α'_k(H)` and
//! `τ(I_k ∨ H) = k|V(H)| − φ_k(H)`; [`join`] checks both against the
//! independent oracles in [`triangles`].

pub mod conjecture;
pub mod factor;
pub mod join;
pub mod triangles;

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{
    decide_with_mask, maximal_colorable_subgraph, try_extend, PartialColoring,
};
use crate::graph::{EdgeInstance, Multigraph, VertexSet};

pub use conjecture::{
    conjecture_kcover_search, replay_candidate, saturating_coloring, ConjectureOutcome,
    CounterexampleCandidate,
};
pub use factor::degree_constrained_subgraph;
pub use join::{tau_nu_join, validate_join, JoinValidation, TuzaInstance, TuzaReport};
pub use triangles::{nu_exact, tau_exact, triangles};

/// Largest vertex count for the subset searches.
pub const MAX_SUBSET_VERTICES: usize = 24;
/// Largest edge count for the exact α'_k search.
pub const MAX_ALPHA_EDGES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TuzaError {
    #[error("operation needs a simple graph")]
    NotSimple,
    #[error("H contains a triangle")]
    NotTriangleFree,
    #[error("k must be at least 1")]
    ZeroK,
    #[error("{what} is {size}, above the limit {limit}")]
    ScaleGuard {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
}

fn guard(what: &'static str, size: usize, limit: usize) -> Result<(), TuzaError> {
    if size > limit {
        Err(TuzaError::ScaleGuard { what, size, limit })
    } else {
        Ok(())
    }
}

fn check_simple(g: &Multigraph, k: u32) -> Result<(), TuzaError> {
    if k == 0 {
        return Err(TuzaError::ZeroK);
    }
    if !g.is_simple() {
        return Err(TuzaError::NotSimple);
    }
    Ok(())
}

pub fn is_triangle_free(h: &Multigraph) -> bool {
    (0..h.n()).all(|v| {
        let nv = h.neighbors(v);
        nv.iter()
            .filter(|&w| w > v)
            .all(|w| nv.intersection(h.neighbors(w)).iter().all(|z| z <= w))
    })
}

/// |E(G[D])| for a simple graph.
fn induced_edges(g: &Multigraph, d: VertexSet) -> i64 {
    d.iter()
        .map(|v| g.neighbors(v).intersection(d).len() as i64)
        .sum::<i64>()
        / 2
}

/// φ_k(D) = k|D| − |E(G[D])|.
pub fn phi_of(g: &Multigraph, k: u32, d: VertexSet) -> i64 {
    k as i64 * d.len() as i64 - induced_edges(g, d)
}

pub fn is_k_dependent(g: &Multigraph, k: u32, d: VertexSet) -> bool {
    d.iter()
        .all(|v| (g.neighbors(v).intersection(d).len() as u32) < k)
}

pub fn is_k_dominating(g: &Multigraph, k: u32, d: VertexSet) -> bool {
    g.vertices()
        .difference(d)
        .iter()
        .all(|v| g.neighbors(v).intersection(d).len() as u32 >= k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KOptimalWitness {
    pub set: VertexSet,
    pub value: i64,
    pub k_dependent: bool,
    pub k_dominating: bool,
}

impl KOptimalWitness {
    fn of(g: &Multigraph, k: u32, set: VertexSet) -> Self {
        KOptimalWitness {
            set,
            value: phi_of(g, k, set),
            k_dependent: is_k_dependent(g, k, set),
            k_dominating: is_k_dominating(g, k, set),
        }
    }
}

/// Depth-first walk over subsets of `0..n`, deciding vertices in order and
/// pruning with `φ_k(D) + k · (undecided vertices)`.
struct SubsetSearch<'a> {
    g: &'a Multigraph,
    k: i64,
    best: i64,
    /// Collect every maximizer satisfying the filter instead of one.
    collect_all: bool,
    dependent_only: bool,
    found: Vec<VertexSet>,
}

impl SubsetSearch<'_> {
    fn run(&mut self, v: usize, d: VertexSet, value: i64) {
        let n = self.g.n();
        let optimistic = value + self.k * (n - v) as i64;
        if optimistic < self.best || (!self.collect_all && optimistic == self.best && !self.found.is_empty()) {
            return;
        }
        if v == n {
            if self.dependent_only && !is_k_dependent(self.g, self.k as u32, d) {
                return;
            }
            if value > self.best {
                self.best = value;
                self.found.clear();
            }
            if value == self.best && (self.collect_all || self.found.is_empty()) {
                self.found.push(d);
            }
            return;
        }
        let gain = self.k - self.g.neighbors(v).intersection(d).len() as i64;
        let mut with = d;
        with.insert(v);
        if !self.dependent_only || self.g.neighbors(v).intersection(d).iter().all(|w| {
            (self.g.neighbors(w).intersection(with).len() as i64) < self.k
        }) && (self.g.neighbors(v).intersection(d).len() as i64) < self.k
        {
            self.run(v + 1, with, value + gain);
        }
        self.run(v + 1, d, value);
    }
}

/// φ_k(G) over all vertex subsets, with a k-optimal witness obtained by
/// reducing a maximizer to a k-dependent set.
pub fn phi_k(g: &Multigraph, k: u32) -> Result<(i64, KOptimalWitness), TuzaError> {
    check_simple(g, k)?;
    guard("vertex count", g.n(), MAX_SUBSET_VERTICES)?;
    let mut search = SubsetSearch {
        g,
        k: k as i64,
        best: i64::MIN,
        collect_all: false,
        dependent_only: false,
        found: Vec::new(),
    };
    search.run(0, VertexSet::empty(), 0);
    let best = search.best;
    let d = reduce_to_k_dependent(g, k, search.found[0]);
    Ok((best, KOptimalWitness::of(g, k, d)))
}

/// Every k-optimal set: all k-dependent `D` with `φ_k(D) = φ_k(G)`, in
/// increasing mask order.
pub fn k_optimal_sets(g: &Multigraph, k: u32) -> Result<Vec<KOptimalWitness>, TuzaError> {
    let (best, _) = phi_k(g, k)?;
    let mut search = SubsetSearch {
        g,
        k: k as i64,
        best,
        collect_all: true,
        dependent_only: true,
        found: Vec::new(),
    };
    search.run(0, VertexSet::empty(), 0);
    let mut sets: Vec<VertexSet> = search.found;
    sets.sort_by_key(|s| s.bits());
    Ok(sets.into_iter().map(|d| KOptimalWitness::of(g, k, d)).collect())
}

/// The sets visited while removing, one at a time, the least vertex `v`
/// with `d_T(v) ≥ k`; the first entry is `t` and the last is k-dependent.
pub fn reduction_trail(g: &Multigraph, k: u32, t: VertexSet) -> Vec<VertexSet> {
    let mut trail = vec![t];
    let mut cur = t;
    while let Some(v) = cur
        .iter()
        .find(|&v| g.neighbors(v).intersection(cur).len() as u32 >= k)
    {
        cur.remove(v);
        trail.push(cur);
    }
    trail
}

/// A k-dependent `D ⊆ T` with `φ_k(D) ≥ φ_k(T)`.
pub fn reduce_to_k_dependent(g: &Multigraph, k: u32, t: VertexSet) -> VertexSet {
    *reduction_trail(g, k, t).last().unwrap()
}

struct AlphaSearch<'a> {
    g: &'a Multigraph,
    k: u32,
    edges: Vec<EdgeInstance>,
    /// Slots of the host; `active[i]` marks chosen edges.
    active: Vec<bool>,
    best: usize,
    best_set: Vec<bool>,
    ceiling: usize,
}

impl AlphaSearch<'_> {
    fn bound(&self, i: usize, chosen: usize, deg: &[u32]) -> usize {
        let n = self.g.n();
        let mut spare = vec![0u32; n];
        for e in &self.edges[i..] {
            spare[e.v] += 1;
            spare[e.w] += 1;
        }
        let capacity: u32 = (0..n).map(|v| spare[v].min(self.k - deg[v])).sum();
        chosen + (self.edges.len() - i).min(capacity as usize / 2)
    }

    fn run(&mut self, i: usize, coloring: &PartialColoring, deg: &mut Vec<u32>, chosen: usize) {
        if self.best >= self.ceiling {
            return;
        }
        if chosen > self.best {
            self.best = chosen;
            self.best_set = self.active.clone();
        }
        if i == self.edges.len() || self.bound(i, chosen, deg) <= self.best {
            return;
        }
        let e = self.edges[i];
        let slot = self.g.edge_index(e).unwrap();
        if deg[e.v] < self.k && deg[e.w] < self.k {
            let mut next = coloring.clone();
            let ok = try_extend(&mut next, e) || {
                self.active[slot] = true;
                match decide_with_mask(self.g, self.k, &self.active) {
                    Some(slots) => {
                        next = PartialColoring::from_slots(self.g.clone(), self.k, slots);
                        true
                    }
                    None => false,
                }
            };
            if ok {
                self.active[slot] = true;
                deg[e.v] += 1;
                deg[e.w] += 1;
                self.run(i + 1, &next, deg, chosen + 1);
                deg[e.v] -= 1;
                deg[e.w] -= 1;
            }
            self.active[slot] = false;
        }
        self.run(i + 1, coloring, deg, chosen);
    }
}

/// α'_k(G) with a witness edge set, by branch and bound over edges.
///
/// The incumbent starts from a maximal k-edge-colorable subgraph; nodes are
/// pruned when the chosen edges plus half the remaining vertex capacity
/// cannot beat it.
pub fn alpha_prime_k(g: &Multigraph, k: u32) -> Result<(usize, Vec<EdgeInstance>), TuzaError> {
    check_simple(g, k)?;
    guard("edge count", g.edge_count(), MAX_ALPHA_EDGES)?;
    let edges: Vec<EdgeInstance> = g.edges().collect();
    if edges.is_empty() {
        return Ok((0, Vec::new()));
    }
    let seed = maximal_colorable_subgraph(g, k, &edges).expect("order covers every edge");
    let seed_set: Vec<bool> = (0..edges.len())
        .map(|i| seed.coloring().color_of(edges[i]).is_some())
        .collect();
    let degree_cap: u32 = (0..g.n()).map(|v| g.degree(v).min(k)).sum();
    let ceiling = (degree_cap as usize / 2)
        .min(k as usize * (g.n() / 2))
        .min(edges.len());
    let mut search = AlphaSearch {
        g,
        k,
        best: seed.coloring().colored_count(),
        best_set: seed_set,
        active: vec![false; edges.len()],
        edges,
        ceiling,
    };
    let empty = PartialColoring::empty(g.clone(), k).expect("k ≥ 1");
    let mut deg = vec![0; g.n()];
    search.run(0, &empty, &mut deg, 0);
    let witness = search
        .edges
        .iter()
        .zip(&search.best_set)
        .filter(|(_, &b)| b)
        .map(|(&e, _)| e)
        .collect();
    Ok((search.best, witness))
}

/// The Theorem-14 style check for one graph: `2α'_k ≥ k|V| − φ_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlphiCheck {
    pub k: u32,
    pub alpha: usize,
    pub phi: i64,
    /// k|V| − φ_k.
    pub rhs: i64,
    pub holds: bool,
    pub equality: bool,
}

pub fn check_alphi(g: &Multigraph, k: u32) -> Result<AlphiCheck, TuzaError> {
    let (alpha, _) = alpha_prime_k(g, k)?;
    let (phi, _) = phi_k(g, k)?;
    let rhs = k as i64 * g.n() as i64 - phi;
    Ok(AlphiCheck {
        k,
        alpha,
        phi,
        rhs,
        holds: 2 * alpha as i64 >= rhs,
        equality: 2 * alpha as i64 == rhs,
    })
}

/// The same bound for one maximal subgraph `M`, through the chain
/// `2|E(M)| ≥ k|V| − φ_k(F) ≥ k|V| − φ_k(G)` with `F = {v : d_M(v) < k}`.
/// Returns `(2|E(M)| ≥ k|V| − φ_k(F), 2|E(M)| ≥ k|V| − φ_k(G))`.
pub fn check_alphi_for_subgraph(c: &PartialColoring, phi: i64) -> (bool, bool) {
    let g = c.host();
    let k = c.k();
    let f: VertexSet = (0..g.n()).filter(|&v| c.degree_in(v) < k).collect();
    let lhs = 2 * c.colored_count() as i64;
    let kv = k as i64 * g.n() as i64;
    (lhs >= kv - phi_of(g, k, f), lhs >= kv - phi)
}
