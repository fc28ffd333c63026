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

//! Maximal k-edge-colorable subgraphs and their certificates.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::exact::decide_with_mask;
use super::{try_extend, Color, ColoringError, PartialColoring};
use crate::graph::{EdgeInstance, Multigraph};

/// A proper `k`-coloring of `M ⊆ G` together with exact-search evidence
/// that no uncolored edge can be added to `M` while staying
/// `k`-edge-colorable.
///
/// The only constructors run (or replay) that search, so holding a value of
/// this type means `M` is genuinely maximal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalSubgraphCertificate {
    coloring: PartialColoring,
    uncolored: Vec<EdgeInstance>,
    evidence: Vec<bool>,
}

impl MaximalSubgraphCertificate {
    /// Checks properness and, for every uncolored edge `e`, that `M + e` has
    /// no proper `k`-edge-coloring.
    pub fn certify(coloring: PartialColoring) -> Result<Self, ColoringError> {
        if !coloring.is_proper() {
            return Err(ColoringError::Improper);
        }
        let g = coloring.host();
        let base: Vec<bool> = coloring.slots().iter().map(Option::is_some).collect();
        let mut per_pair: HashMap<(usize, usize), bool> = HashMap::new();
        let uncolored: Vec<EdgeInstance> = coloring.uncolored_edges().collect();
        for &e in &uncolored {
            // Parallel copies give isomorphic M + e.
            let blocked = *per_pair.entry(e.pair()).or_insert_with(|| {
                let mut active = base.clone();
                active[g.edge_index(e).unwrap()] = true;
                decide_with_mask(g, coloring.k(), &active).is_none()
            });
            if !blocked {
                return Err(ColoringError::Augmentable(e));
            }
        }
        let evidence = vec![true; uncolored.len()];
        Ok(MaximalSubgraphCertificate {
            coloring,
            uncolored,
            evidence,
        })
    }

    /// Wraps a coloring whose maximality the caller established with the
    /// same exact search.
    fn from_decided(coloring: PartialColoring) -> Self {
        let uncolored: Vec<EdgeInstance> = coloring.uncolored_edges().collect();
        let evidence = vec![true; uncolored.len()];
        MaximalSubgraphCertificate {
            coloring,
            uncolored,
            evidence,
        }
    }

    pub fn coloring(&self) -> &PartialColoring {
        &self.coloring
    }

    pub fn host(&self) -> &Multigraph {
        self.coloring.host()
    }

    pub fn k(&self) -> u32 {
        self.coloring.k()
    }

    /// E(G) \ M.
    pub fn uncolored(&self) -> &[EdgeInstance] {
        &self.uncolored
    }

    /// One flag per uncolored edge: `M + e` was decided not colorable.
    pub fn evidence(&self) -> &[bool] {
        &self.evidence
    }

    /// Re-runs the exact decision for every uncolored edge.
    pub fn audit(&self) -> bool {
        let g = self.host();
        let base: Vec<bool> = self.coloring.slots().iter().map(Option::is_some).collect();
        let uncolored_ok = self.coloring.uncolored_edges().eq(self.uncolored.iter().copied());
        uncolored_ok
            && self.coloring.is_proper()
            && self.uncolored.iter().all(|&e| {
                let mut active = base.clone();
                active[g.edge_index(e).unwrap()] = true;
                decide_with_mask(g, self.k(), &active).is_none()
            })
    }

    pub fn into_coloring(self) -> PartialColoring {
        self.coloring
    }
}

fn check_order(g: &Multigraph, order: &[EdgeInstance]) -> Result<(), ColoringError> {
    let mut seen = vec![false; g.edge_count()];
    for &e in order {
        let idx = g.edge_index(e).ok_or(ColoringError::UnknownEdge(e))?;
        if std::mem::replace(&mut seen[idx], true) {
            return Err(ColoringError::BadOrder);
        }
    }
    if seen.iter().all(|&s| s) {
        Ok(())
    } else {
        Err(ColoringError::BadOrder)
    }
}

/// Builds `M` greedily along `order`: an edge joins `M` iff `M + e` is
/// `k`-edge-colorable (tried by augmentation first, then decided exactly).
/// The result is certified against the final `M`.
pub fn maximal_colorable_subgraph(
    g: &Multigraph,
    k: u32,
    order: &[EdgeInstance],
) -> Result<MaximalSubgraphCertificate, ColoringError> {
    check_order(g, order)?;
    let mut c = PartialColoring::empty(g.clone(), k)?;
    for &e in order {
        if try_extend(&mut c, e) {
            continue;
        }
        let mut active: Vec<bool> = c.slots().iter().map(Option::is_some).collect();
        active[g.edge_index(e).unwrap()] = true;
        if let Some(slots) = decide_with_mask(g, k, &active) {
            c = PartialColoring::from_slots(g.clone(), k, slots);
        }
    }
    MaximalSubgraphCertificate::certify(c)
}

/// Greedy `M` using augmentation only, with no exact search. Cheap, but
/// carries no maximality guarantee.
pub fn greedy_augmented_subgraph(
    g: &Multigraph,
    k: u32,
    order: &[EdgeInstance],
) -> Result<PartialColoring, ColoringError> {
    check_order(g, order)?;
    let mut c = PartialColoring::empty(g.clone(), k)?;
    for &e in order {
        try_extend(&mut c, e);
    }
    Ok(c)
}

/// A seeded shuffle of the edge instances.
pub fn shuffled_order(g: &Multigraph, seed: u64) -> Vec<EdgeInstance> {
    let mut order: Vec<EdgeInstance> = g.edges().collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    order
}

/// Every maximal `k`-edge-colorable subgraph of `g`, with parallel copies
/// identified: `M` is determined by how many copies of each pair it keeps,
/// and it always keeps the lowest-numbered copies.
///
/// Colorable multiplicity vectors form a down-set, so a depth-first walk
/// that stops raising a pair's count at the first uncolorable value visits
/// exactly the colorable vectors; the maximal ones are those where raising
/// any single count fails.
pub fn all_maximal_subgraphs(g: &Multigraph, k: u32) -> Vec<MaximalSubgraphCertificate> {
    let k = k.max(1);
    if let Some(slots) = decide_with_mask(g, k, &vec![true; g.edge_count()]) {
        let coloring = PartialColoring::from_slots(g.clone(), k, slots);
        return vec![MaximalSubgraphCertificate::from_decided(coloring)];
    }
    let pairs: Vec<(usize, usize, u32)> = g.pairs().collect();
    let mut walk = Walk {
        g,
        k,
        pairs: &pairs,
        memo: HashMap::new(),
        counts: vec![0; pairs.len()],
        found: Vec::new(),
    };
    walk.dfs(0);
    walk.found
}

struct Walk<'a> {
    g: &'a Multigraph,
    k: u32,
    pairs: &'a [(usize, usize, u32)],
    memo: HashMap<Vec<u32>, Option<Vec<Option<Color>>>>,
    counts: Vec<u32>,
    found: Vec<MaximalSubgraphCertificate>,
}

impl Walk<'_> {
    fn colorable(&mut self) -> bool {
        if let Some(r) = self.memo.get(&self.counts) {
            return r.is_some();
        }
        let mut active = vec![false; self.g.edge_count()];
        for (&(v, w, _), &x) in self.pairs.iter().zip(&self.counts) {
            let base = self.g.pair_offset(v, w);
            active[base..base + x as usize].fill(true);
        }
        let r = decide_with_mask(self.g, self.k, &active);
        let ok = r.is_some();
        self.memo.insert(self.counts.clone(), r);
        ok
    }

    fn dfs(&mut self, i: usize) {
        if i == self.pairs.len() {
            self.visit_leaf();
            return;
        }
        self.counts[i] = 0;
        self.dfs(i + 1);
        for t in 1..=self.pairs[i].2 {
            self.counts[i] = t;
            if !self.colorable() {
                break;
            }
            self.dfs(i + 1);
        }
        self.counts[i] = 0;
    }

    fn visit_leaf(&mut self) {
        for j in 0..self.pairs.len() {
            if self.counts[j] < self.pairs[j].2 {
                self.counts[j] += 1;
                let grows = self.colorable();
                self.counts[j] -= 1;
                if grows {
                    return;
                }
            }
        }
        // The empty vector is never memoized by the walk.
        if !self.memo.contains_key(&self.counts) {
            self.colorable();
        }
        let slots = self.memo[&self.counts].clone().expect("leaf is colorable");
        let coloring = PartialColoring::from_slots(self.g.clone(), self.k, slots);
        self.found.push(MaximalSubgraphCertificate::from_decided(coloring));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    /// Every edge subset (as a slot mask), checked for colorability and
    /// maximality independently of the walk.
    fn brute_force_maximal_sizes(g: &Multigraph, k: u32) -> Vec<usize> {
        let m = g.edge_count();
        let colorable = |mask: u32| {
            let active: Vec<bool> = (0..m).map(|i| mask >> i & 1 == 1).collect();
            decide_with_mask(g, k, &active).is_some()
        };
        let mut sizes = Vec::new();
        let mut seen_vectors = std::collections::HashSet::new();
        for mask in 0..1u32 << m {
            if !colorable(mask) {
                continue;
            }
            let maximal = (0..m).all(|i| mask >> i & 1 == 1 || !colorable(mask | 1 << i));
            if !maximal {
                continue;
            }
            // Identify parallel copies by per-pair counts.
            let counts: Vec<u32> = g
                .pairs()
                .map(|(v, w, mult)| {
                    let base = g.pair_offset(v, w);
                    (0..mult as usize).filter(|&c| mask >> (base + c) & 1 == 1).count() as u32
                })
                .collect();
            if seen_vectors.insert(counts) {
                sizes.push(mask.count_ones() as usize);
            }
        }
        sizes.sort();
        sizes
    }

    #[test]
    fn k3_with_one_color() {
        let g = named::complete(3);
        let order: Vec<_> = g.edges().collect();
        let cert = maximal_colorable_subgraph(&g, 1, &order).unwrap();
        assert_eq!(cert.coloring().colored_count(), 1);
        assert_eq!(cert.uncolored().len(), 2);
        assert!(cert.audit());
    }

    #[test]
    fn large_palette_colors_everything() {
        let g = Multigraph::build(4, [(0, 1, 2), (1, 2, 1), (2, 3, 2), (0, 3, 1)]).unwrap();
        let k = g.d_mu_max().unwrap();
        let order = shuffled_order(&g, 3);
        let cert = maximal_colorable_subgraph(&g, k, &order).unwrap();
        assert!(cert.uncolored().is_empty());
    }

    #[test]
    fn c5_with_two_colors_leaves_one_edge() {
        let g = named::cycle(5);
        for seed in 0..10 {
            let cert = maximal_colorable_subgraph(&g, 2, &shuffled_order(&g, seed)).unwrap();
            assert_eq!(cert.coloring().colored_count(), 4);
            assert!(cert.audit());
        }
    }

    #[test]
    fn certify_rejects_non_maximal() {
        let g = named::path(3);
        let c = PartialColoring::empty(g.clone(), 2).unwrap();
        let e = EdgeInstance::new(0, 1, 0);
        assert_eq!(
            MaximalSubgraphCertificate::certify(c).unwrap_err(),
            ColoringError::Augmentable(e)
        );
        let bad = PartialColoring::from_assignments(
            g,
            1,
            [(EdgeInstance::new(0, 1, 0), 1), (EdgeInstance::new(1, 2, 0), 1)],
        )
        .unwrap();
        assert_eq!(
            MaximalSubgraphCertificate::certify(bad).unwrap_err(),
            ColoringError::Improper
        );
    }

    #[test]
    fn bad_orders_rejected() {
        let g = named::path(3);
        let e = EdgeInstance::new(0, 1, 0);
        assert_eq!(
            maximal_colorable_subgraph(&g, 1, &[e, e]).unwrap_err(),
            ColoringError::BadOrder
        );
        assert_eq!(
            maximal_colorable_subgraph(&g, 1, &[e]).unwrap_err(),
            ColoringError::BadOrder
        );
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let graphs = [
            named::complete(4),
            named::cycle(5),
            Multigraph::build(3, [(0, 1, 2), (1, 2, 1), (0, 2, 2)]).unwrap(),
            Multigraph::build(4, [(0, 1, 2), (1, 2, 2), (2, 3, 1), (0, 2, 1)]).unwrap(),
        ];
        for g in &graphs {
            for k in 1..=4 {
                let all = all_maximal_subgraphs(g, k);
                let mut sizes: Vec<usize> =
                    all.iter().map(|c| c.coloring().colored_count()).collect();
                sizes.sort();
                assert_eq!(sizes, brute_force_maximal_sizes(g, k), "{g:?} k={k}");
                for cert in &all {
                    assert!(cert.audit());
                }
            }
        }
    }
}
