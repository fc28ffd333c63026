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

//! Degree-constrained subgraphs: `Δ(M) ≤ k` with `d_M(v) = k` outside `D`.
//!
//! The question reduces to a perfect matching in a gadget graph. Each edge
//! `vw` gets two port nodes `p(v, vw)` and `p(w, vw)` joined to each other;
//! the edge is kept iff its two ports are matched together. A vertex `v` of
//! degree `d` gets `max(d − k, 0)` core nodes adjacent to all of its ports,
//! which absorb the ports of dropped edges. Ports of vertices outside `D`
//! must be matched, so exactly `k` of their edges survive; ports of `D`
//! vertices may stay unmatched, which is modeled by a clique of filler
//! nodes joined to every such port. The filler count has the parity that
//! makes a perfect matching possible exactly when the constraints are
//! satisfiable.

use petgraph::algo::maximum_matching;
use petgraph::graph::{NodeIndex, UnGraph};

use crate::graph::{Multigraph, VertexSet};

/// A subgraph `M` (as edge pairs) with `Δ(M) ≤ k` and `d_M(v) = k` for every
/// `v ∉ D`, if one exists. Multigraph edges count with multiplicity.
pub fn degree_constrained_subgraph(
    g: &Multigraph,
    k: u32,
    d: VertexSet,
) -> Option<Vec<(usize, usize)>> {
    let n = g.n();
    let k = k as usize;
    if (0..n).any(|v| !d.contains(v) && (g.degree(v) as usize) < k) {
        return None;
    }
    let mut gadget: UnGraph<(), ()> = UnGraph::new_undirected();
    let mut ports: Vec<Vec<NodeIndex>> = vec![Vec::new(); n];
    let mut edge_ports: Vec<(usize, usize, NodeIndex, NodeIndex)> = Vec::new();
    for e in g.edges() {
        let a = gadget.add_node(());
        let b = gadget.add_node(());
        gadget.add_edge(a, b, ());
        ports[e.v].push(a);
        ports[e.w].push(b);
        edge_ports.push((e.v, e.w, a, b));
    }
    let mut required = 2 * edge_ports.len()
        - (0..n).filter(|&v| d.contains(v)).map(|v| ports[v].len()).sum::<usize>();
    for vp in &ports {
        for _ in 0..vp.len().saturating_sub(k) {
            let core = gadget.add_node(());
            required += 1;
            for &p in vp {
                gadget.add_edge(core, p, ());
            }
        }
    }
    let optional: Vec<NodeIndex> = d.iter().flat_map(|v| ports[v].iter().copied()).collect();
    let filler_count = optional.len() + required % 2;
    let fillers: Vec<NodeIndex> = (0..filler_count).map(|_| gadget.add_node(())).collect();
    for (i, &a) in fillers.iter().enumerate() {
        for &b in &fillers[i + 1..] {
            gadget.add_edge(a, b, ());
        }
        for &p in &optional {
            gadget.add_edge(a, p, ());
        }
    }
    let matching = maximum_matching(&gadget);
    if !matching.is_perfect() {
        return None;
    }
    Some(
        edge_ports
            .into_iter()
            .filter(|&(_, _, a, b)| matching.mate(a) == Some(b))
            .map(|(v, w, _, _)| (v, w))
            .collect(),
    )
}
