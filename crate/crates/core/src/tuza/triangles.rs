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

//! Exact τ (minimum triangle-hitting edge set) and ν (maximum edge-disjoint
//! triangle packing) for small simple graphs. These know nothing about
//! joins.

use super::{check_simple, guard, TuzaError};
use crate::graph::Multigraph;

/// Largest triangle count accepted by the exact searches.
pub const MAX_TRIANGLES: usize = 128;

/// Triangles as vertex triples `a < b < c`, in lexicographic order.
pub fn triangles(g: &Multigraph) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..g.n() {
        let na = g.neighbors(a);
        for b in na.iter().filter(|&b| b > a) {
            for c in na.intersection(g.neighbors(b)).iter().filter(|&c| c > b) {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Triangles as triples of pair indices into `pairs`.
fn triangle_edges(g: &Multigraph) -> (Vec<(usize, usize)>, Vec<[usize; 3]>) {
    let pairs: Vec<(usize, usize)> = g.pairs().map(|(v, w, _)| (v, w)).collect();
    let index = |v: usize, w: usize| pairs.binary_search(&(v.min(w), v.max(w))).unwrap();
    let tris = triangles(g)
        .into_iter()
        .map(|[a, b, c]| [index(a, b), index(a, c), index(b, c)])
        .collect();
    (pairs, tris)
}

struct Cover<'a> {
    tris: &'a [[usize; 3]],
    chosen: Vec<bool>,
    forbidden: Vec<bool>,
    size: usize,
    best: usize,
    best_set: Vec<bool>,
}

impl Cover<'_> {
    fn hit(&self, t: &[usize; 3]) -> bool {
        t.iter().any(|&e| self.chosen[e])
    }

    /// Greedy family of pairwise edge-disjoint unhit triangles.
    fn packing_bound(&self) -> usize {
        let mut used = vec![false; self.chosen.len()];
        let mut count = 0;
        for t in self.tris.iter().filter(|t| !self.hit(t)) {
            if t.iter().all(|&e| !used[e]) {
                t.iter().for_each(|&e| used[e] = true);
                count += 1;
            }
        }
        count
    }

    fn run(&mut self) {
        let Some(t) = self.tris.iter().find(|t| !self.hit(t)).copied() else {
            if self.size < self.best {
                self.best = self.size;
                self.best_set = self.chosen.clone();
            }
            return;
        };
        if self.size + self.packing_bound() >= self.best {
            return;
        }
        // Branch i takes edge t[i] and forbids t[0..i].
        let mut newly_forbidden = Vec::new();
        for &e in &t {
            if !self.forbidden[e] {
                self.chosen[e] = true;
                self.size += 1;
                self.run();
                self.size -= 1;
                self.chosen[e] = false;
                self.forbidden[e] = true;
                newly_forbidden.push(e);
            }
        }
        for e in newly_forbidden {
            self.forbidden[e] = false;
        }
    }
}

/// τ(G) and a minimum edge set meeting every triangle, as vertex pairs.
pub fn tau_exact(g: &Multigraph) -> Result<(usize, Vec<(usize, usize)>), TuzaError> {
    check_simple(g, 1)?;
    let (pairs, tris) = triangle_edges(g);
    guard("triangle count", tris.len(), MAX_TRIANGLES)?;
    let mut cover = Cover {
        tris: &tris,
        chosen: vec![false; pairs.len()],
        forbidden: vec![false; pairs.len()],
        size: 0,
        best: pairs.len() + 1,
        best_set: Vec::new(),
    };
    if tris.is_empty() {
        return Ok((0, Vec::new()));
    }
    cover.run();
    let set = pairs
        .iter()
        .zip(&cover.best_set)
        .filter(|(_, &b)| b)
        .map(|(&p, _)| p)
        .collect();
    Ok((cover.best, set))
}

struct Packing<'a> {
    tris: &'a [[usize; 3]],
    /// Edge is still available (not used by a chosen triangle, not discarded).
    free: Vec<bool>,
    chosen: Vec<usize>,
    best: Vec<usize>,
    pair_ends: &'a [(usize, usize)],
    n: usize,
}

impl Packing<'_> {
    fn live(&self, t: &[usize; 3]) -> bool {
        t.iter().all(|&e| self.free[e])
    }

    fn bound(&self) -> usize {
        let mut in_live = vec![false; self.free.len()];
        for t in self.tris.iter().filter(|t| self.live(t)) {
            t.iter().for_each(|&e| in_live[e] = true);
        }
        let edges = in_live.iter().filter(|&&b| b).count();
        let mut at = vec![0usize; self.n];
        for (e, &(v, w)) in self.pair_ends.iter().enumerate() {
            if in_live[e] {
                at[v] += 1;
                at[w] += 1;
            }
        }
        // Each triangle uses two live edges at each of its three vertices.
        let by_vertex: usize = at.iter().map(|a| a / 2).sum::<usize>() / 3;
        (edges / 3).min(by_vertex)
    }

    fn run(&mut self) {
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        if self.chosen.len() + self.bound() <= self.best.len() {
            return;
        }
        // Branch on the live edge lying in the fewest live triangles.
        let mut count = vec![0usize; self.free.len()];
        for t in self.tris.iter().filter(|t| self.live(t)) {
            t.iter().for_each(|&e| count[e] += 1);
        }
        let Some(e) = (0..count.len())
            .filter(|&e| count[e] > 0)
            .min_by_key(|&e| (count[e], e))
        else {
            return;
        };
        let options: Vec<usize> = (0..self.tris.len())
            .filter(|&i| self.live(&self.tris[i]) && self.tris[i].contains(&e))
            .collect();
        for i in options {
            let t = self.tris[i];
            t.iter().for_each(|&f| self.free[f] = false);
            self.chosen.push(i);
            self.run();
            self.chosen.pop();
            t.iter().for_each(|&f| self.free[f] = true);
        }
        self.free[e] = false;
        self.run();
        self.free[e] = true;
    }
}

/// ν(G) and a maximum family of edge-disjoint triangles.
pub fn nu_exact(g: &Multigraph) -> Result<(usize, Vec<[usize; 3]>), TuzaError> {
    check_simple(g, 1)?;
    let (pairs, tris) = triangle_edges(g);
    guard("triangle count", tris.len(), MAX_TRIANGLES)?;
    let vertex_tris = triangles(g);
    let mut packing = Packing {
        tris: &tris,
        free: vec![true; pairs.len()],
        chosen: Vec::new(),
        best: Vec::new(),
        pair_ends: &pairs,
        n: g.n(),
    };
    packing.run();
    let family = packing.best.iter().map(|&i| vertex_tris[i]).collect();
    Ok((packing.best.len(), family))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random_multigraph;
    use crate::named;

    /// τ by trying edge subsets in order of size.
    fn brute_tau(g: &Multigraph) -> usize {
        let (pairs, tris) = triangle_edges(g);
        (0..=pairs.len())
            .find(|&size| {
                (0..1u64 << pairs.len())
                    .filter(|m| m.count_ones() as usize == size)
                    .any(|m| tris.iter().all(|t| t.iter().any(|&e| m >> e & 1 == 1)))
            })
            .unwrap()
    }

    /// ν by trying every family of triangles.
    fn brute_nu(g: &Multigraph) -> usize {
        let (_, tris) = triangle_edges(g);
        (0..1u64 << tris.len())
            .filter(|&m| {
                let mut used = 0u64;
                (0..tris.len()).filter(|&i| m >> i & 1 == 1).all(|i| {
                    let bits = tris[i].iter().fold(0u64, |acc, &e| acc | 1 << e);
                    let ok = used & bits == 0;
                    used |= bits;
                    ok
                })
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(tau_exact(&named::cycle(5)).unwrap().0, 0);
        assert_eq!(nu_exact(&named::cycle(5)).unwrap().0, 0);
        assert_eq!(tau_exact(&named::complete(4)).unwrap().0, 2);
        assert_eq!(nu_exact(&named::complete(4)).unwrap().0, 1);
        assert_eq!(tau_exact(&named::complete(3)).unwrap().0, 1);
        assert_eq!(nu_exact(&named::complete(3)).unwrap().0, 1);
        // K5 packs two triangles and needs four edges removed.
        assert_eq!(nu_exact(&named::complete(5)).unwrap().0, 2);
        assert_eq!(tau_exact(&named::complete(5)).unwrap().0, 4);
    }

    #[test]
    fn witnesses_are_valid() {
        let g = named::complete(6);
        let (tau, cover) = tau_exact(&g).unwrap();
        assert_eq!(cover.len(), tau);
        let keep: Vec<bool> = g.edges().map(|e| !cover.contains(&e.pair())).collect();
        assert!(triangles(&g.spanning_subgraph(&keep)).is_empty());
        let (nu, family) = nu_exact(&g).unwrap();
        assert_eq!(family.len(), nu);
        let mut seen = std::collections::HashSet::new();
        for [a, b, c] in family {
            assert!(g.mult(a, b) == 1 && g.mult(a, c) == 1 && g.mult(b, c) == 1);
            assert!(seen.insert((a, b)) && seen.insert((a, c)) && seen.insert((b, c)));
        }
    }

    #[test]
    fn matches_brute_force() {
        for seed in 0..60 {
            let g = random_multigraph(seed, 6, 1, 0.6).unwrap();
            let (pairs, tris) = triangle_edges(&g);
            if pairs.len() > 15 || tris.len() > 14 {
                continue;
            }
            let (tau, _) = tau_exact(&g).unwrap();
            let (nu, _) = nu_exact(&g).unwrap();
            assert_eq!(tau, brute_tau(&g), "seed {seed}");
            assert_eq!(nu, brute_nu(&g), "seed {seed}");
            assert!(nu <= tau && tau <= 3 * nu);
        }
    }
}
