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

//! Exact k-edge-colorability by complete backtracking.
//!
//! Edges are colored in a fixed order (decreasing endpoint-degree sum, ties
//! by slot). Color symmetry is broken by only opening color `c + 1` once
//! `c` is in use, which in particular pins the first edge to color 1 and the
//! second to a color in {1, 2}. Parallel copies of one pair are
//! interchangeable, so they receive increasing colors. Two necessary
//! conditions fail fast before any search: every degree is at most `k`, and
//! every odd vertex set `S` spans at most `k (|S| - 1) / 2` edges.

use super::{Color, PartialColoring};
use crate::graph::Multigraph;

/// Odd-set density check is skipped above this many non-isolated vertices.
const ODD_SET_LIMIT: usize = 12;

/// Decides whether the instances with `active[slot] == true` admit a proper
/// `k`-edge-coloring. Returns the coloring (inactive slots `None`) or `None`.
pub fn decide_with_mask(g: &Multigraph, k: u32, active: &[bool]) -> Option<Vec<Option<Color>>> {
    let m = g.edge_count();
    debug_assert_eq!(active.len(), m);
    let edges: Vec<(usize, usize, usize)> = g
        .edges()
        .enumerate()
        .filter(|&(i, _)| active[i])
        .map(|(i, e)| (i, e.v, e.w))
        .collect();
    let mut slots = vec![None; m];
    if edges.is_empty() {
        return Some(slots);
    }
    if k == 0 {
        return None;
    }
    let n = g.n();
    let mut deg = vec![0u32; n];
    for &(_, v, w) in &edges {
        deg[v] += 1;
        deg[w] += 1;
    }
    if deg.iter().any(|&d| d > k) {
        return None;
    }
    if violates_odd_set_bound(n, &edges, &deg, k) {
        return None;
    }

    let mut order = edges;
    order.sort_by(|a, b| {
        let da = deg[a.1] + deg[a.2];
        let db = deg[b.1] + deg[b.2];
        db.cmp(&da).then(a.0.cmp(&b.0))
    });
    let mut search = Search {
        k,
        order: &order,
        used: vec![0u64; n],
        remaining: deg,
        colors: vec![0; order.len()],
    };
    if search.run(0, 0) {
        for (i, &(slot, _, _)) in order.iter().enumerate() {
            slots[slot] = Some(search.colors[i]);
        }
        Some(slots)
    } else {
        None
    }
}

fn violates_odd_set_bound(n: usize, edges: &[(usize, usize, usize)], deg: &[u32], k: u32) -> bool {
    let live: Vec<usize> = (0..n).filter(|&v| deg[v] > 0).collect();
    if live.len() < 3 || live.len() > ODD_SET_LIMIT {
        return false;
    }
    let index_of = |v: usize| live.iter().position(|&x| x == v).unwrap();
    let pairs: Vec<(u32, u32)> = edges
        .iter()
        .map(|&(_, v, w)| (1u32 << index_of(v), 1u32 << index_of(w)))
        .collect();
    let total = 1u32 << live.len();
    (0..total).any(|s| {
        let size = s.count_ones();
        if size < 3 || size % 2 == 0 {
            return false;
        }
        let inside = pairs
            .iter()
            .filter(|&&(a, b)| s & a != 0 && s & b != 0)
            .count() as u32;
        inside > k * (size - 1) / 2
    })
}

struct Search<'a> {
    k: u32,
    order: &'a [(usize, usize, usize)],
    used: Vec<u64>,
    remaining: Vec<u32>,
    colors: Vec<Color>,
}

impl Search<'_> {
    fn run(&mut self, i: usize, max_used: Color) -> bool {
        if i == self.order.len() {
            return true;
        }
        let (_, a, b) = self.order[i];
        let ceiling = (max_used + 1).min(self.k);
        let floor = match i.checked_sub(1).map(|p| self.order[p]) {
            Some((_, pa, pb)) if pa == a && pb == b => self.colors[i - 1] + 1,
            _ => 1,
        };
        let blocked = self.used[a] | self.used[b];
        self.remaining[a] -= 1;
        self.remaining[b] -= 1;
        for c in floor..=ceiling {
            let bit = 1u64 << c;
            if blocked & bit != 0 {
                continue;
            }
            self.used[a] |= bit;
            self.used[b] |= bit;
            let free_a = self.k - self.used[a].count_ones();
            let free_b = self.k - self.used[b].count_ones();
            if free_a >= self.remaining[a] && free_b >= self.remaining[b] {
                self.colors[i] = c;
                if self.run(i + 1, max_used.max(c)) {
                    return true;
                }
            }
            self.used[a] &= !bit;
            self.used[b] &= !bit;
        }
        self.remaining[a] += 1;
        self.remaining[b] += 1;
        false
    }
}

/// A total proper `k`-edge-coloring of `g` if one exists.
pub fn decide_k_colorable(g: &Multigraph, k: u32) -> Option<PartialColoring> {
    let active = vec![true; g.edge_count()];
    let slots = decide_with_mask(g, k, &active)?;
    // An edgeless graph is colorable with any palette; report it with k >= 1.
    Some(PartialColoring::from_slots(g.clone(), k.max(1), slots))
}

/// χ'(G): the least `k` admitting a proper `k`-edge-coloring; 0 when edgeless.
pub fn chromatic_index(g: &Multigraph) -> u32 {
    if g.edge_count() == 0 {
        return 0;
    }
    let active = vec![true; g.edge_count()];
    let mut k = g.max_degree();
    while decide_with_mask(g, k, &active).is_none() {
        k += 1;
    }
    k
}
