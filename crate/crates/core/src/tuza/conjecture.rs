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

//! Search for a k-edge-colorable `M` with `d_M(v) = k` outside each
//! k-optimal set `D`.
//!
//! For every k-optimal `D` (all of them, not one) the search first asks
//! whether any subgraph of maximum degree `k` saturates `V − D`, a
//! necessary condition that is also guaranteed to hold. It then searches
//! colorings directly: a vertex outside `D` with `d_M(v) = k` sees every
//! color, so it suffices to repeatedly pick such a vertex, take its least
//! missing color `c`, and branch over the uncolored edges `vw` with `c`
//! missing at `w`. A `D` for which this fails is a counterexample
//! candidate, reported with everything needed to replay it.

use serde::{Deserialize, Serialize};

use super::factor::degree_constrained_subgraph;
use super::{check_simple, k_optimal_sets, TuzaError};
use crate::coloring::{Color, ColorSet, PartialColoring};
use crate::format::write_graph;
use crate::graph::{EdgeInstance, Multigraph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleCandidate {
    /// The graph in the repo's text format.
    pub graph: String,
    pub k: u32,
    pub d: Vec<usize>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SetOutcome {
    pub d: VertexSet,
    /// A subgraph of maximum degree k saturating V − D exists.
    pub degree_subgraph: bool,
    /// Colored edges of a k-edge-colorable M saturating V − D.
    pub witness: Option<Vec<(EdgeInstance, Color)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureOutcome {
    pub k: u32,
    pub sets: Vec<SetOutcome>,
    pub candidates: Vec<CounterexampleCandidate>,
}

impl ConjectureOutcome {
    /// Some k-optimal set failed the necessary degree condition, which
    /// would contradict the (g, f)-factor consequence.
    pub fn degree_condition_failed(&self) -> bool {
        self.sets.iter().any(|s| !s.degree_subgraph)
    }
}

struct Saturate<'a> {
    g: &'a Multigraph,
    k: u32,
    outside: Vec<usize>,
    present: Vec<ColorSet>,
    colors: Vec<Option<Color>>,
}

type Edge = (usize, usize);

impl Saturate<'_> {
    fn run(&mut self) -> bool {
        let palette = ColorSet::palette(self.k);
        // Vertex, its missing color, and the edges into D that could take it.
        let mut pick: Option<(usize, Color, Vec<Edge>)> = None;
        for &v in &self.outside {
            let Some(c) = palette.difference(self.present[v]).first() else {
                continue;
            };
            let options: Vec<(usize, usize)> = self
                .g
                .incident(v)
                .filter_map(|e| {
                    let slot = self.g.edge_index(e).unwrap();
                    let w = e.other(v);
                    (self.colors[slot].is_none() && !self.present[w].contains(c)).then_some((slot, w))
                })
                .collect();
            if options.is_empty() {
                return false;
            }
            if pick.as_ref().is_none_or(|p| options.len() < p.2.len()) {
                pick = Some((v, c, options));
            }
        }
        let Some((v, c, options)) = pick else {
            return true;
        };
        for (slot, w) in options {
            self.colors[slot] = Some(c);
            self.present[v].insert(c);
            self.present[w].insert(c);
            if self.run() {
                return true;
            }
            self.colors[slot] = None;
            self.present[v].remove(c);
            self.present[w].remove(c);
        }
        false
    }
}

/// A k-edge-colorable subgraph with `d_M(v) = k` for every `v ∉ D`.
pub fn saturating_coloring(g: &Multigraph, k: u32, d: VertexSet) -> Option<PartialColoring> {
    let mut search = Saturate {
        g,
        k,
        outside: g.vertices().difference(d).iter().collect(),
        present: vec![ColorSet::default(); g.n()],
        colors: vec![None; g.edge_count()],
    };
    if !search.run() {
        return None;
    }
    let assignments: Vec<(EdgeInstance, Color)> = g
        .edges()
        .zip(&search.colors)
        .filter_map(|(e, c)| c.map(|c| (e, c)))
        .collect();
    PartialColoring::from_assignments(g.clone(), k, assignments).ok()
}

pub fn conjecture_kcover_search(g: &Multigraph, k: u32) -> Result<ConjectureOutcome, TuzaError> {
    check_simple(g, k)?;
    let mut sets = Vec::new();
    let mut candidates = Vec::new();
    for w in k_optimal_sets(g, k)? {
        let degree_subgraph = degree_constrained_subgraph(g, k, w.set).is_some();
        let witness = if degree_subgraph {
            saturating_coloring(g, k, w.set).map(|c| c.colored_edges().collect())
        } else {
            None
        };
        if witness.is_none() {
            candidates.push(CounterexampleCandidate {
                graph: write_graph(g),
                k,
                d: w.set.iter().collect(),
                reason: if degree_subgraph {
                    "no k-edge-colorable subgraph saturates V - D".into()
                } else {
                    "no subgraph of maximum degree k saturates V - D".into()
                },
            });
        }
        sets.push(SetOutcome {
            d: w.set,
            degree_subgraph,
            witness,
        });
    }
    Ok(ConjectureOutcome {
        k,
        sets,
        candidates,
    })
}

/// Re-runs the search for a recorded candidate; `true` when it still fails.
pub fn replay_candidate(c: &CounterexampleCandidate) -> Result<bool, TuzaError> {
    let g = crate::format::parse_graph(&c.graph).map_err(|_| TuzaError::NotSimple)?;
    check_simple(&g, c.k)?;
    let d: VertexSet = c.d.iter().copied().collect();
    Ok(saturating_coloring(&g, c.k, d).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn saturates(c: &PartialColoring, d: VertexSet) -> bool {
        c.is_proper() && (0..c.host().n()).all(|v| d.contains(v) || c.degree_in(v) == c.k())
    }

    #[test]
    fn examples() {
        // k = 1: each of the five maximum independent sets of C5 leaves a
        // path on three vertices, which a matching into D covers.
        let out = conjecture_kcover_search(&named::cycle(5), 1).unwrap();
        assert_eq!(out.sets.len(), 5);
        assert!(out.candidates.is_empty());
        let edgeless = Multigraph::new(4).unwrap();
        let out = conjecture_kcover_search(&edgeless, 2).unwrap();
        assert_eq!(out.sets.len(), 1);
        assert_eq!(out.sets[0].d, VertexSet::full(4));
        assert_eq!(out.sets[0].witness.as_deref(), Some(&[][..]));
    }

    #[test]
    fn saturating_search_matches_brute_force() {
        // Oracle: every assignment of {uncolored, 1..k} to the edges.
        for g in [named::cycle(5), named::complete(4), named::complete_bipartite(2, 3), named::path(4)] {
            for k in 1..=2u32 {
                for dm in 0..1u64 << g.n() {
                    let d = VertexSet::from_bits(dm);
                    let m = g.edge_count() as u32;
                    let exists = (0..(k as u64 + 1).pow(m)).any(|mut code| {
                        let colors: Vec<(EdgeInstance, Color)> = g
                            .edges()
                            .filter_map(|e| {
                                let c = (code % (k as u64 + 1)) as u32;
                                code /= k as u64 + 1;
                                (c > 0).then_some((e, c))
                            })
                            .collect();
                        let c = PartialColoring::from_assignments(g.clone(), k, colors).unwrap();
                        saturates(&c, d)
                    });
                    let got = saturating_coloring(&g, k, d);
                    assert_eq!(got.is_some(), exists, "{g:?} k={k} d={dm:b}");
                    if let Some(c) = got {
                        assert!(saturates(&c, d));
                    }
                }
            }
        }
    }

    #[test]
    fn replay_round_trip() {
        let cand = CounterexampleCandidate {
            graph: write_graph(&named::complete(3)),
            k: 1,
            d: vec![],
            reason: "test".into(),
        };
        // K3 has no perfect matching, so the empty D cannot be saturated.
        assert!(replay_candidate(&cand).unwrap());
        let json = serde_json::to_string(&cand).unwrap();
        let back: CounterexampleCandidate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cand);
    }
}
