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

//! Deficiency sets of a k-edge-colorable subgraph `M ⊆ G` and the
//! inequalities they satisfy when `M` is maximal.
//!
//! * `F = {v : d_M(v) ≤ k − μ(v)}`; for `d_M(v) < k`, `d_F(v) ≤ d_M(v)`.
//! * `Fᵏ(v) = {w ∈ N(v) : d_M(w) ≤ k − μ(v,w)}` and
//!   `Uᵏ(v) = {w ∈ Fᵏ(v) : μ_M(v,w) < μ(v,w)}`; for `d_M(v) < k`,
//!   `dᶠ(v) ≤ d_M(v) − Σ_{w ∈ Uᵏ(v)} (k − d_M(w) − μ(v,w))`.
//!
//! The `check_*` functions take a [`MaximalSubgraphCertificate`], so
//! non-maximal input cannot reach them. [`DeficiencyReport::observe`]
//! computes the same quantities for any coloring without asserting anything.

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{
    chromatic_index, decide_k_colorable, MaximalSubgraphCertificate, PartialColoring,
};
use crate::graph::{Multigraph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeficiencyError {
    #[error("operation needs a simple graph")]
    NotSimple,
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("chromatic index {chi} is not maximum degree {max_degree} plus one")]
    NotClassTwo { chi: u32, max_degree: u32 },
    #[error("edge {0}-{1} is not critical")]
    NotCritical(usize, usize),
    #[error("graph has no edges")]
    NoEdges,
}

/// `F` for the coloring's colored subgraph.
pub fn deficient_set_of(c: &PartialColoring) -> VertexSet {
    let g = c.host();
    (0..g.n())
        .filter(|&v| c.degree_in(v) + g.mu(v) <= c.k())
        .collect()
}

/// The global deficient set `F` of a maximal subgraph.
pub fn global_deficient_set(cert: &MaximalSubgraphCertificate) -> VertexSet {
    deficient_set_of(cert.coloring())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LocalSets {
    pub f_k: VertexSet,
    pub u_k: VertexSet,
    /// dᶠ(v): edges from `v` into `Fᵏ(v)`.
    pub d_fk: u32,
}

/// `Fᵏ(v)`, `Uᵏ(v)` and `dᶠ(v)` for any coloring.
pub fn local_sets_of(c: &PartialColoring, v: usize) -> LocalSets {
    let g = c.host();
    let k = c.k();
    let mut f_k = VertexSet::empty();
    let mut u_k = VertexSet::empty();
    for w in g.neighbors(v).iter() {
        let m = g.mult(v, w);
        if c.degree_in(w) + m <= k {
            f_k.insert(w);
            if c.mult_in(v, w) < m {
                u_k.insert(w);
            }
        }
    }
    LocalSets {
        f_k,
        u_k,
        d_fk: g.degree_into(v, f_k),
    }
}

pub fn local_sets(cert: &MaximalSubgraphCertificate, v: usize) -> LocalSets {
    local_sets_of(cert.coloring(), v)
}

/// Quantities at one vertex with `d_M(v) < k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexRecord {
    pub v: usize,
    pub d_m: u32,
    /// d_F(v) for the global set F.
    pub d_f: u32,
    pub f_k: VertexSet,
    pub u_k: VertexSet,
    pub d_fk: u32,
    /// Σ_{w ∈ Uᵏ(v)} (k − d_M(w) − μ(v,w)).
    pub u_sum: u32,
    /// d_M(v) − d_F(v).
    pub slack_simple: i64,
    /// d_M(v) − U-sum − dᶠ(v).
    pub slack_main: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeficiencyReport {
    pub k: u32,
    pub f: VertexSet,
    pub records: Vec<VertexRecord>,
}

impl DeficiencyReport {
    /// Computes every quantity without assuming `M` is maximal.
    pub fn observe(c: &PartialColoring) -> Self {
        let g = c.host();
        let k = c.k();
        let f = deficient_set_of(c);
        let records = (0..g.n())
            .filter(|&v| c.degree_in(v) < k)
            .map(|v| {
                let d_m = c.degree_in(v);
                let d_f = g.degree_into(v, f);
                let local = local_sets_of(c, v);
                let u_sum: u32 = local
                    .u_k
                    .iter()
                    .map(|w| k - c.degree_in(w) - g.mult(v, w))
                    .sum();
                VertexRecord {
                    v,
                    d_m,
                    d_f,
                    f_k: local.f_k,
                    u_k: local.u_k,
                    d_fk: local.d_fk,
                    u_sum,
                    slack_simple: d_m as i64 - d_f as i64,
                    slack_main: d_m as i64 - u_sum as i64 - local.d_fk as i64,
                }
            })
            .collect();
        DeficiencyReport { k, f, records }
    }

    pub fn simple_violations(&self) -> impl Iterator<Item = &VertexRecord> {
        self.records.iter().filter(|r| r.slack_simple < 0)
    }

    pub fn main_violations(&self) -> impl Iterator<Item = &VertexRecord> {
        self.records.iter().filter(|r| r.slack_main < 0)
    }

    pub fn holds_simple(&self) -> bool {
        self.simple_violations().next().is_none()
    }

    pub fn holds_main(&self) -> bool {
        self.main_violations().next().is_none()
    }

    /// The U-sum bound is at least as strong as the d_F bound at every vertex.
    pub fn slacks_consistent(&self) -> bool {
        self.records.iter().all(|r| r.slack_main <= r.slack_simple)
    }

    pub fn record(&self, v: usize) -> Option<&VertexRecord> {
        self.records.iter().find(|r| r.v == v)
    }
}

/// Per-vertex `d_F(v) ≤ d_M(v)` for a maximal `M`.
pub fn check_theorem_simple(cert: &MaximalSubgraphCertificate) -> DeficiencyReport {
    DeficiencyReport::observe(cert.coloring())
}

/// Per-vertex U-sum inequality for a maximal `M`; the report also carries
/// the `d_F` slacks so the two bounds can be compared pointwise.
pub fn check_theorem_main(cert: &MaximalSubgraphCertificate) -> DeficiencyReport {
    DeficiencyReport::observe(cert.coloring())
}

/// Δ(G[F]) ≤ k − 1 for a simple host.
pub fn check_corollary_maxdelta(cert: &MaximalSubgraphCertificate) -> Result<bool, DeficiencyError> {
    if !cert.host().is_simple() {
        return Err(DeficiencyError::NotSimple);
    }
    let f = global_deficient_set(cert);
    let sub = cert.host().induced(f);
    Ok(sub.graph.max_degree() < cert.k())
}

/// The k = 1 and k = 2 structure of `G[F]`: for k = 1, F is independent;
/// for k = 2 on a simple host, every component of G[F] has at most two
/// vertices and vertices isolated in M are isolated in G[F]. `None` when
/// neither case applies.
pub fn check_small_k_structure(c: &PartialColoring) -> Option<bool> {
    let g = c.host();
    let f = deficient_set_of(c);
    let sub = g.induced(f);
    match c.k() {
        1 => Some(sub.graph.edge_count() == 0),
        2 if g.is_simple() => {
            let matching = sub.graph.max_degree() <= 1;
            let isolated_ok = f
                .iter()
                .filter(|&v| c.degree_in(v) == 0)
                .all(|v| g.neighbors(v).intersection(f).is_empty());
            Some(matching && isolated_ok)
        }
        _ => None,
    }
}

/// Vertex pairs `(v, w)`, `v < w`, whose removal of one copy lowers χ'.
pub fn critical_edges(g: &Multigraph) -> Vec<(usize, usize)> {
    let chi = chromatic_index(g);
    if chi == 0 {
        return Vec::new();
    }
    g.pairs()
        .filter(|&(v, w, _)| {
            let smaller = g.with_copy_removed(v, w).expect("pair has a copy");
            chi == 1 || decide_k_colorable(&smaller, chi - 1).is_some()
        })
        .map(|(v, w, _)| (v, w))
        .collect()
}

/// The adjacency-lemma count at a critical edge `xy` of a simple class-2
/// graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValOutcome {
    pub x: usize,
    pub y: usize,
    pub chi: u32,
    /// t = d(x) + μ(x, y).
    pub t: u32,
    /// χ' − t + 1.
    pub bound: i64,
    /// Neighbors z ≠ x of y with d(z) + μ(y, z) = χ'.
    pub count: u32,
    pub holds: bool,
    /// With k = Δ and M = G − xy colored: Uᵏ(y) = {x}, the U-sum slack at
    /// y is nonnegative, and |N(y) − Fᵏ(y)| lies between the bound and the
    /// count.
    pub derivation_ok: bool,
}

pub fn check_val_simple(g: &Multigraph, x: usize, y: usize) -> Result<ValOutcome, DeficiencyError> {
    if !g.is_simple() {
        return Err(DeficiencyError::NotSimple);
    }
    if g.edge_count() == 0 {
        return Err(DeficiencyError::NoEdges);
    }
    if x >= g.n() || y >= g.n() || g.mult(x, y) == 0 {
        return Err(DeficiencyError::NotAdjacent(x, y));
    }
    let chi = chromatic_index(g);
    let delta = g.max_degree();
    if chi != delta + 1 {
        return Err(DeficiencyError::NotClassTwo {
            chi,
            max_degree: delta,
        });
    }
    let minus = g.with_copy_removed(x, y).expect("adjacent");
    let Some(total) = decide_k_colorable(&minus, delta) else {
        return Err(DeficiencyError::NotCritical(x.min(y), x.max(y)));
    };
    let t = g.degree(x) + g.mult(x, y);
    let bound = chi as i64 - t as i64 + 1;
    let count = g
        .neighbors(y)
        .iter()
        .filter(|&z| z != x && g.degree(z) + g.mult(y, z) == chi)
        .count() as u32;

    let m = total.rehost(g);
    let report = DeficiencyReport::observe(&m);
    let derivation_ok = match report.record(y) {
        Some(r) => {
            let outside = g.neighbors(y).difference(r.f_k).len() as i64;
            r.u_k == VertexSet::singleton(x)
                && r.slack_main >= 0
                && outside >= bound
                && outside <= count as i64
        }
        None => false,
    };
    Ok(ValOutcome {
        x,
        y,
        chi,
        t,
        bound,
        count,
        holds: count as i64 >= bound,
        derivation_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{all_maximal_subgraphs, maximal_colorable_subgraph};
    use crate::graph::EdgeInstance;
    use crate::named;

    fn e(v: usize, w: usize, c: u32) -> EdgeInstance {
        EdgeInstance::new(v, w, c)
    }

    #[test]
    fn k3_with_one_color() {
        let g = named::complete(3);
        let cert = maximal_colorable_subgraph(&g, 1, &g.edges().collect::<Vec<_>>()).unwrap();
        // M = {01}; vertex 2 is uncovered.
        assert_eq!(global_deficient_set(&cert), VertexSet::singleton(2));
        let local = local_sets(&cert, 2);
        assert!(local.f_k.is_empty() && local.u_k.is_empty());
        let report = check_theorem_main(&cert);
        let r = report.record(2).unwrap();
        assert_eq!((r.d_fk, r.d_m, r.u_sum, r.slack_main), (0, 0, 0, 0));
        assert!(report.holds_simple() && report.holds_main());
    }

    #[test]
    fn large_palette_makes_everything_deficient() {
        let g = Multigraph::build(3, [(0, 1, 2), (1, 2, 1), (0, 2, 1)]).unwrap();
        let cert = maximal_colorable_subgraph(&g, 5, &g.edges().collect::<Vec<_>>()).unwrap();
        assert!(cert.uncolored().is_empty());
        assert_eq!(global_deficient_set(&cert), VertexSet::full(3));
    }

    #[test]
    fn saturated_simple_subgraph_has_empty_f() {
        // K4 with k = 3: M = G and every d_M = 3.
        let g = named::complete(4);
        let cert = maximal_colorable_subgraph(&g, 3, &g.edges().collect::<Vec<_>>()).unwrap();
        assert!(global_deficient_set(&cert).is_empty());
        assert!(check_theorem_main(&cert).records.is_empty());
    }

    /// The configuration of the illustration of Fᵏ(v) and Uᵏ(v) with k = 4:
    /// v = 0, x0..x4 = 1..5, pendant vertices from 6 on.
    #[test]
    fn illustration_of_local_sets() {
        let (v, x0, x1, x2, x3, x4) = (0, 1, 2, 3, 4, 5);
        let mut edges = vec![(v, x0, 1), (v, x1, 2), (v, x2, 2), (v, x3, 1), (v, x4, 1), (x0, x4, 1)];
        let mut colored = vec![(e(v, x1, 0), 1), (e(v, x2, 0), 2), (e(v, x2, 1), 3)];
        let mut next = 6;
        let mut stubs = |edges: &mut Vec<(usize, usize, u32)>, at: usize, thick: u32, thin: u32| {
            let mut made = Vec::new();
            for i in 0..thick + thin {
                edges.push((at, next, 1));
                if i < thick {
                    made.push(next);
                }
                next += 1;
            }
            made
        };
        let x0_thick = stubs(&mut edges, x0, 3, 0);
        let x1_thick = stubs(&mut edges, x1, 1, 1);
        let x3_thick = stubs(&mut edges, x3, 4, 0);
        let x4_thick = stubs(&mut edges, x4, 3, 0);
        for (at, ends, first) in [(x0, x0_thick, 1), (x1, x1_thick, 2), (x3, x3_thick, 1), (x4, x4_thick, 1)] {
            for (i, end) in ends.into_iter().enumerate() {
                colored.push((e(at, end, 0), first + i as u32));
            }
        }
        let g = Multigraph::build(next, edges).unwrap();
        let c = PartialColoring::from_assignments(g, 4, colored).unwrap();
        assert!(c.is_proper());
        assert_eq!(c.degree_in(v), 3);
        let local = local_sets_of(&c, v);
        // The boxed members of Uᵏ(v).
        assert!(local.u_k.contains(x0) && local.u_k.contains(x1));
        assert!(local.f_k.contains(x2) && !local.u_k.contains(x2));
        assert!(!local.f_k.contains(x3));
        // d_M(x4) = 3 ≤ 4 − 1 and v-x4 is uncolored, so the definition puts
        // x4 in both sets even though the drawing leaves it outside.
        assert!(local.f_k.contains(x4) && local.u_k.contains(x4));
        assert_eq!(local.u_k.len(), 3);
    }

    #[test]
    fn small_k_structure_on_all_maximal_subgraphs() {
        for g in [named::cycle(5), named::complete(4), named::complete_bipartite(2, 3), named::path(5)] {
            for k in 1..=2 {
                for cert in all_maximal_subgraphs(&g, k) {
                    assert_eq!(check_small_k_structure(cert.coloring()), Some(true));
                    assert!(check_corollary_maxdelta(&cert).unwrap());
                    let r = check_theorem_main(&cert);
                    assert!(r.holds_simple() && r.holds_main() && r.slacks_consistent());
                }
            }
        }
    }

    #[test]
    fn maxdelta_rejects_multigraphs() {
        let g = Multigraph::build(2, [(0, 1, 2)]).unwrap();
        let cert = maximal_colorable_subgraph(&g, 1, &g.edges().collect::<Vec<_>>()).unwrap();
        assert_eq!(check_corollary_maxdelta(&cert), Err(DeficiencyError::NotSimple));
    }

    #[test]
    fn critical_edge_examples() {
        assert_eq!(critical_edges(&named::complete(3)).len(), 3);
        assert_eq!(critical_edges(&named::path(3)), vec![(0, 1), (1, 2)]);
        let matching = Multigraph::build(4, [(0, 1, 1), (2, 3, 1)]).unwrap();
        assert_eq!(critical_edges(&matching).len(), 2);
        // C4 is class 1 and removing an edge leaves a path needing 2 colors.
        assert!(critical_edges(&named::cycle(4)).is_empty());
    }

    #[test]
    fn val_examples() {
        let k3 = named::complete(3);
        let out = check_val_simple(&k3, 0, 1).unwrap();
        assert_eq!((out.chi, out.t, out.bound, out.count), (3, 3, 1, 1));
        assert!(out.holds && out.derivation_ok);
        assert!(matches!(
            check_val_simple(&named::cycle(4), 0, 1),
            Err(DeficiencyError::NotClassTwo { chi: 2, max_degree: 2 })
        ));
        let c5 = named::cycle(5);
        for (x, y) in [(0, 1), (1, 0), (2, 3)] {
            let out = check_val_simple(&c5, x, y).unwrap();
            assert!(out.holds && out.derivation_ok);
        }
    }
}
