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

//! Auxiliary digraphs around a vertex `y` with `d_M(y) < k`.
//!
//! For `u ∈ Uᵏ(y)`, `H_u` lives on `N_M(y) ∪ {u}` with
//! `μ(w → z) = |O(w) ∩ ψ(y, z)|`. A colored neighbor of `y` is remote when
//! no `H_u` reaches it from `u`. The color certificate is `C(w) = ψ(y, w)`
//! for remote `w` and `C(w) = O(w)` otherwise.
//!
//! When `M` is maximal the following hold, and the `verify_*` functions
//! check them:
//!
//! * every `v` reachable from `u` in `H_u` has `O(v) ∩ O(y) = ∅`;
//! * for such `v`, every `α ∈ O(y)` and `β ∈ O(v)`, the maximal
//!   `[α, β]`-path from `y` ends at `v`;
//! * the certificates of distinct vertices of `N_M(y) ∪ {y}` are disjoint,
//!   and `Σ_{z ∈ Fᵏ(y)} |C(z)| ≤ k − |C(y)|`.
//!
//! [`AroundVertex::observe`] builds the same objects for any proper coloring
//! so that the checks can be run on non-maximal negative controls.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{kempe_path_from, ColorSet, MaximalSubgraphCertificate, PartialColoring};
use crate::deficiency::local_sets_of;
use crate::graph::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KostochkaError {
    #[error("vertex {0} has d_M = k, so no color is missing there")]
    Saturated(usize),
    #[error("vertex {u} is not in Uᵏ({y})")]
    NotInU { y: usize, u: usize },
}

/// The multidigraph H_u.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuxDigraph {
    pub y: usize,
    pub u: usize,
    pub vertices: VertexSet,
    /// `(w, z, μ(w → z))` for every ordered pair with at least one arc.
    pub arcs: Vec<(usize, usize, u32)>,
}

impl AuxDigraph {
    pub fn arc_mult(&self, w: usize, z: usize) -> u32 {
        self.arcs
            .iter()
            .find(|&&(a, b, _)| a == w && b == z)
            .map_or(0, |&(_, _, m)| m)
    }

    /// Vertices reachable from `u`, `u` included.
    pub fn reachable(&self) -> VertexSet {
        let mut seen = VertexSet::singleton(self.u);
        let mut stack = vec![self.u];
        while let Some(w) = stack.pop() {
            for &(a, z, _) in &self.arcs {
                if a == w && !seen.contains(z) {
                    seen.insert(z);
                    stack.push(z);
                }
            }
        }
        seen
    }
}

pub fn reachable(h: &AuxDigraph) -> VertexSet {
    h.reachable()
}

fn aux_of(c: &PartialColoring, y: usize, u: usize) -> AuxDigraph {
    let vertices = c.neighbors_in(y).union(VertexSet::singleton(u));
    let mut arcs = Vec::new();
    for w in vertices.iter() {
        let missing = c.missing_at(w);
        for z in vertices.iter() {
            if z == w {
                continue;
            }
            let m = missing.intersection(c.colors_between(y, z)).len() as u32;
            if m > 0 {
                arcs.push((w, z, m));
            }
        }
    }
    AuxDigraph { y, u, vertices, arcs }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CertEntry {
    pub remote: bool,
    pub colors: ColorSet,
}

/// C(w) for every w ∈ Uᵏ(y) ∪ N_M(y) ∪ {y}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateMap {
    pub y: usize,
    pub entries: BTreeMap<usize, CertEntry>,
}

impl CertificateMap {
    pub fn get(&self, w: usize) -> Option<ColorSet> {
        self.entries.get(&w).map(|e| e.colors)
    }
}

/// Outcome of one lemma check: how many instances were examined and the
/// first failing one, if any.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub checked: u64,
    pub failure: Option<String>,
}

impl LemmaCheck {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }

    fn fail(&mut self, detail: String) {
        if self.failure.is_none() {
            self.failure = Some(detail);
        }
    }
}

/// Everything derived around one vertex `y`.
#[derive(Debug, Clone)]
pub struct AroundVertex<'a> {
    coloring: &'a PartialColoring,
    pub y: usize,
    pub f_k: VertexSet,
    pub u_k: VertexSet,
    pub d_fk: u32,
    pub aux: Vec<AuxDigraph>,
    pub remote: VertexSet,
    pub certificates: CertificateMap,
}

impl<'a> AroundVertex<'a> {
    /// Builds the digraphs and certificates for any coloring.
    pub fn observe(c: &'a PartialColoring, y: usize) -> Result<Self, KostochkaError> {
        if c.degree_in(y) >= c.k() {
            return Err(KostochkaError::Saturated(y));
        }
        let local = local_sets_of(c, y);
        let aux: Vec<AuxDigraph> = local.u_k.iter().map(|u| aux_of(c, y, u)).collect();
        let reached = aux
            .iter()
            .fold(VertexSet::empty(), |acc, h| acc.union(h.reachable()));
        let n_m = c.neighbors_in(y);
        let remote = n_m.difference(reached);
        let mut entries = BTreeMap::new();
        for w in local.u_k.union(n_m).union(VertexSet::singleton(y)).iter() {
            let is_remote = remote.contains(w);
            let colors = if is_remote {
                c.colors_between(y, w)
            } else {
                c.missing_at(w)
            };
            entries.insert(
                w,
                CertEntry {
                    remote: is_remote,
                    colors,
                },
            );
        }
        Ok(AroundVertex {
            coloring: c,
            y,
            f_k: local.f_k,
            u_k: local.u_k,
            d_fk: local.d_fk,
            aux,
            remote,
            certificates: CertificateMap { y, entries },
        })
    }

    pub fn for_certificate(
        cert: &'a MaximalSubgraphCertificate,
        y: usize,
    ) -> Result<Self, KostochkaError> {
        Self::observe(cert.coloring(), y)
    }

    /// O(v) ∩ O(y) = ∅ for every `u` and every `v` reachable in `H_u`.
    pub fn lemma_oy(&self) -> LemmaCheck {
        let c = self.coloring;
        let oy = c.missing_at(self.y);
        let mut out = LemmaCheck {
            checked: 0,
            failure: None,
        };
        for h in &self.aux {
            for v in h.reachable().iter() {
                out.checked += 1;
                let common = c.missing_at(v).intersection(oy);
                if !common.is_empty() {
                    out.fail(format!(
                        "u={} v={}: O(v) ∩ O(y) = {common}",
                        h.u, v
                    ));
                }
            }
        }
        out
    }

    /// For every reachable `v`, `α ∈ O(y)`, `β ∈ O(v)`, the maximal
    /// `[α, β]`-path from `y` ends at `v`.
    pub fn lemma_path(&self) -> LemmaCheck {
        let c = self.coloring;
        let oy = c.missing_at(self.y);
        let mut out = LemmaCheck {
            checked: 0,
            failure: None,
        };
        for h in &self.aux {
            for v in h.reachable().iter() {
                for alpha in oy.iter() {
                    for beta in c.missing_at(v).iter() {
                        out.checked += 1;
                        let end = if alpha == beta {
                            None
                        } else {
                            kempe_path_from(c, self.y, alpha, beta).ok().map(|p| p.end())
                        };
                        if end != Some(v) {
                            out.fail(format!(
                                "u={} v={v} α={alpha} β={beta}: path from y ends at {end:?}",
                                h.u
                            ));
                        }
                    }
                }
            }
        }
        out
    }

    /// Pairwise disjoint certificates on N_M(y) ∪ {y}, |C(z)| ≥ μ(z, y) on
    /// Fᵏ(y), and the aggregate Σ_{z ∈ Fᵏ(y)} |C(z)| ≤ k − |C(y)|.
    pub fn lemma_disjoint(&self) -> LemmaCheck {
        let c = self.coloring;
        let g = c.host();
        let mut out = LemmaCheck {
            checked: 0,
            failure: None,
        };
        let domain: Vec<usize> = c
            .neighbors_in(self.y)
            .union(VertexSet::singleton(self.y))
            .iter()
            .collect();
        for (i, &w) in domain.iter().enumerate() {
            for &z in &domain[i + 1..] {
                out.checked += 1;
                let (cw, cz) = (self.cert(w), self.cert(z));
                if !cw.is_disjoint(cz) {
                    out.fail(format!("C({w}) = {cw} meets C({z}) = {cz}"));
                }
            }
        }
        let mut total = 0;
        for z in self.f_k.iter() {
            out.checked += 1;
            let size = self.cert(z).len() as u32;
            total += size;
            if size < g.mult(z, self.y) {
                out.fail(format!("|C({z})| = {size} < μ({z}, y) = {}", g.mult(z, self.y)));
            }
        }
        out.checked += 1;
        let cap = c.k() as i64 - self.cert(self.y).len() as i64;
        if total as i64 > cap {
            out.fail(format!("Σ |C(z)| over Fᵏ(y) = {total} > k − |C(y)| = {cap}"));
        }
        out
    }

    fn cert(&self, w: usize) -> ColorSet {
        self.certificates.get(w).expect("certificate domain")
    }

    /// The bound on dᶠ(y) obtained from the certificates:
    /// `k − |C(y)| − Σ_{z ∈ Uᵏ(y)} (|C(z)| − μ(z, y))`.
    pub fn certificate_bound(&self) -> i64 {
        let c = self.coloring;
        let g = c.host();
        let u_part: i64 = self
            .u_k
            .iter()
            .map(|z| self.cert(z).len() as i64 - g.mult(z, self.y) as i64)
            .sum();
        c.k() as i64 - self.cert(self.y).len() as i64 - u_part
    }

    /// Remote members of Fᵏ(y) have all their edges to `y` colored.
    pub fn remote_edges_colored(&self) -> bool {
        let c = self.coloring;
        self.remote
            .intersection(self.f_k)
            .iter()
            .all(|z| c.mult_in(self.y, z) == c.host().mult(self.y, z) && !self.u_k.contains(z))
    }

    /// Debug dump: `arc`, `remote` and `cert` lines.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for h in &self.aux {
            writeln!(out, "# H_{}", h.u).unwrap();
            for &(w, z, m) in &h.arcs {
                writeln!(out, "arc {w} {z} {m}").unwrap();
            }
        }
        for z in self.remote.iter() {
            writeln!(out, "remote {z}").unwrap();
        }
        for (w, entry) in &self.certificates.entries {
            writeln!(out, "cert {w} {}", entry.colors).unwrap();
        }
        out
    }
}

pub fn build_aux(
    cert: &MaximalSubgraphCertificate,
    y: usize,
    u: usize,
) -> Result<AuxDigraph, KostochkaError> {
    let c = cert.coloring();
    if c.degree_in(y) >= c.k() {
        return Err(KostochkaError::Saturated(y));
    }
    if !local_sets_of(c, y).u_k.contains(u) {
        return Err(KostochkaError::NotInU { y, u });
    }
    Ok(aux_of(c, y, u))
}

pub fn remote_vertices(
    cert: &MaximalSubgraphCertificate,
    y: usize,
) -> Result<VertexSet, KostochkaError> {
    Ok(AroundVertex::for_certificate(cert, y)?.remote)
}

pub fn certificates(
    cert: &MaximalSubgraphCertificate,
    y: usize,
) -> Result<CertificateMap, KostochkaError> {
    Ok(AroundVertex::for_certificate(cert, y)?.certificates)
}

pub fn verify_lemma_oy(cert: &MaximalSubgraphCertificate, y: usize) -> Result<bool, KostochkaError> {
    Ok(AroundVertex::for_certificate(cert, y)?.lemma_oy().holds())
}

pub fn verify_lemma_path(
    cert: &MaximalSubgraphCertificate,
    y: usize,
) -> Result<bool, KostochkaError> {
    Ok(AroundVertex::for_certificate(cert, y)?.lemma_path().holds())
}

pub fn verify_lemma_disjoint(
    cert: &MaximalSubgraphCertificate,
    y: usize,
) -> Result<bool, KostochkaError> {
    Ok(AroundVertex::for_certificate(cert, y)?.lemma_disjoint().holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{all_maximal_subgraphs, maximal_colorable_subgraph};
    use crate::deficiency::check_theorem_main;
    use crate::graph::{EdgeInstance, Multigraph};
    use crate::named;

    fn e(v: usize, w: usize) -> EdgeInstance {
        EdgeInstance::new(v, w, 0)
    }

    #[test]
    fn reachability_examples() {
        let lone = AuxDigraph {
            y: 0,
            u: 3,
            vertices: VertexSet::singleton(3),
            arcs: vec![],
        };
        assert_eq!(lone.reachable(), VertexSet::singleton(3));
        let chain = AuxDigraph {
            y: 0,
            u: 1,
            vertices: [1, 2, 3, 4].into_iter().collect(),
            arcs: vec![(1, 2, 1), (2, 3, 2), (4, 1, 1)],
        };
        assert_eq!(chain.reachable(), [1, 2, 3].into_iter().collect());
    }

    #[test]
    fn reachability_matches_transitive_closure() {
        // Oracle: Floyd-Warshall style closure on a boolean matrix.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = 7;
            let mut arcs = Vec::new();
            let mut adj = [[false; 7]; 7];
            for (w, row) in adj.iter_mut().enumerate() {
                for (z, cell) in row.iter_mut().enumerate() {
                    if w != z && rng.gen_bool(0.2) {
                        arcs.push((w, z, 1));
                        *cell = true;
                    }
                }
            }
            for (i, row) in adj.iter_mut().enumerate() {
                row[i] = true;
            }
            for m in 0..n {
                for a in 0..n {
                    for b in 0..n {
                        if adj[a][m] && adj[m][b] {
                            adj[a][b] = true;
                        }
                    }
                }
            }
            let h = AuxDigraph {
                y: 0,
                u: 0,
                vertices: VertexSet::full(n),
                arcs,
            };
            let expected: VertexSet = (0..n).filter(|&z| adj[0][z]).collect();
            assert_eq!(h.reachable(), expected);
        }
    }

    #[test]
    fn aux_arcs_match_set_intersections() {
        // Every maximal M of K4 minus an edge and of C5 with k = 2.
        let k4_minus = Multigraph::build(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1)])
            .unwrap();
        let mut pairs = 0;
        for cert in [k4_minus, named::cycle(5)].iter().flat_map(|g| all_maximal_subgraphs(g, 2)) {
            let c = cert.coloring();
            let n = c.host().n();
            for y in (0..n).filter(|&y| c.degree_in(y) < 2) {
                let u_k = local_sets_of(c, y).u_k;
                for u in 0..n {
                    if !u_k.contains(u) {
                        assert_eq!(build_aux(&cert, y, u).unwrap_err(), KostochkaError::NotInU { y, u });
                        continue;
                    }
                    pairs += 1;
                    let h = build_aux(&cert, y, u).unwrap();
                    assert_eq!(h.vertices, c.neighbors_in(y).union(VertexSet::singleton(u)));
                    for w in h.vertices.iter() {
                        for z in h.vertices.iter().filter(|&z| z != w) {
                            let oracle = (1..=2)
                                .filter(|&col| {
                                    !c.present_at(w).contains(col)
                                        && c.colored_edges().any(|(f, fc)| {
                                            fc == col && f.pair() == (y.min(z), y.max(z))
                                        })
                                })
                                .count() as u32;
                            assert_eq!(h.arc_mult(w, z), oracle);
                        }
                    }
                }
            }
        }
        assert!(pairs > 0);
    }

    #[test]
    fn empty_u_makes_all_colored_neighbors_remote() {
        let g = named::complete(4);
        let order: Vec<_> = g.edges().collect();
        let cert = maximal_colorable_subgraph(&g, 2, &order).unwrap();
        for y in 0..4 {
            let Ok(view) = AroundVertex::for_certificate(&cert, y) else {
                continue;
            };
            if view.u_k.is_empty() {
                assert_eq!(view.remote, cert.coloring().neighbors_in(y));
                assert!(view.lemma_oy().holds() && view.lemma_oy().checked == 0);
            }
            assert_eq!(view.certificates.get(y), Some(cert.coloring().missing_at(y)));
        }
    }

    #[test]
    fn lemmas_hold_on_all_maximal_subgraphs() {
        let doubled = Multigraph::build(4, [(0, 1, 2), (1, 2, 1), (2, 3, 2), (0, 3, 1), (0, 2, 1)])
            .unwrap();
        for g in [named::complete(4), named::cycle(5), doubled] {
            for k in 1..=4 {
                for cert in all_maximal_subgraphs(&g, k) {
                    let report = check_theorem_main(&cert);
                    for rec in &report.records {
                        let view = AroundVertex::for_certificate(&cert, rec.v).unwrap();
                        assert!(view.lemma_oy().holds());
                        assert!(view.lemma_path().holds());
                        assert!(view.lemma_disjoint().holds());
                        assert!(view.remote_edges_colored());
                        assert_eq!(view.certificate_bound() - view.d_fk as i64, rec.slack_main);
                    }
                }
            }
        }
    }

    #[test]
    fn non_maximal_coloring_breaks_a_lemma() {
        // P3 with nothing colored and k = 1: 0-1 could be colored, so the
        // missing colors at 0 and 1 overlap.
        let c = PartialColoring::empty(named::path(3), 1).unwrap();
        let view = AroundVertex::observe(&c, 0).unwrap();
        assert_eq!(view.u_k, VertexSet::singleton(1));
        assert!(!view.lemma_oy().holds());
        assert!(!view.lemma_path().holds());
    }

    #[test]
    fn dump_format() {
        let c = PartialColoring::from_assignments(named::path(3), 2, [(e(0, 1), 1)]).unwrap();
        let view = AroundVertex::observe(&c, 1).unwrap();
        let text = view.dump();
        assert!(text.contains("cert 1 {2}"));
    }
}
