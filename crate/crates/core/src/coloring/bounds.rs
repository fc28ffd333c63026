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

//! Constructive colorers for the Vizing (Δ + μ), Ore (D̄μ) and forest
//! (D̄μ − 1) bounds.
//!
//! Edges are added one at a time by [`try_extend`]. When augmentation gets
//! stuck the colorer falls back to exact search on `M + e` and counts the
//! event; the theorems guarantee the exact search succeeds.

use serde::Serialize;

use super::exact::decide_with_mask;
use super::{try_extend, ColoringError, PartialColoring};
use crate::graph::{EdgeInstance, Multigraph, VertexSet};

/// How edges were added by a bounded colorer.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Telemetry {
    /// Edges colored by free colors, fans or Kempe swaps.
    pub augmented: u64,
    /// Edges that needed the exact-search fallback.
    pub exact_fallbacks: u64,
}

impl Telemetry {
    pub fn merge(&mut self, other: Telemetry) {
        self.augmented += other.augmented;
        self.exact_fallbacks += other.exact_fallbacks;
    }
}

#[derive(Debug, Clone)]
pub struct BoundColoring {
    pub coloring: PartialColoring,
    pub telemetry: Telemetry,
}

fn extend_or_fallback(
    c: &mut PartialColoring,
    e: EdgeInstance,
    tel: &mut Telemetry,
    bound: &'static str,
) -> Result<(), ColoringError> {
    if try_extend(c, e) {
        tel.augmented += 1;
        return Ok(());
    }
    let g = c.host();
    let mut active: Vec<bool> = c.slots().iter().map(Option::is_some).collect();
    active[g.edge_index(e).expect("edge of host")] = true;
    let slots = decide_with_mask(g, c.k(), &active)
        .ok_or(ColoringError::BoundFailed { k: c.k(), bound })?;
    tel.exact_fallbacks += 1;
    *c = PartialColoring::from_slots(g.clone(), c.k(), slots);
    Ok(())
}

fn color_in_order(
    g: &Multigraph,
    k: u32,
    order: impl IntoIterator<Item = EdgeInstance>,
    tel: &mut Telemetry,
    bound: &'static str,
) -> Result<PartialColoring, ColoringError> {
    let mut c = PartialColoring::empty(g.clone(), k)?;
    for e in order {
        extend_or_fallback(&mut c, e, tel, bound)?;
    }
    Ok(c)
}

/// Total proper coloring from the palette `[Δ(G) + μ(G)]`.
pub fn color_vizing(g: &Multigraph) -> Result<BoundColoring, ColoringError> {
    if g.edge_count() == 0 {
        return Err(ColoringError::NoEdges);
    }
    let k = g.max_degree() + g.max_mult();
    let mut telemetry = Telemetry::default();
    let coloring = color_in_order(g, k, g.edges(), &mut telemetry, "Vizing")?;
    Ok(BoundColoring {
        coloring,
        telemetry,
    })
}

/// Total proper coloring from the palette `[D̄μ(G)]`.
pub fn color_ore(g: &Multigraph) -> Result<BoundColoring, ColoringError> {
    if g.edge_count() == 0 {
        return Err(ColoringError::NoEdges);
    }
    let k = g.d_mu_max().expect("graph with edges has vertices");
    let mut telemetry = Telemetry::default();
    let coloring = color_in_order(g, k, g.edges(), &mut telemetry, "Ore")?;
    Ok(BoundColoring {
        coloring,
        telemetry,
    })
}

/// True iff collapsing parallel edges of G* leaves a forest, i.e. G* has no
/// cycle of length greater than 2.
pub fn check_star_forest_hypothesis(g: &Multigraph) -> bool {
    let Ok(subs) = g.star_subgraphs() else {
        return true;
    };
    is_forest_after_collapse(&subs.star.graph)
}

fn is_forest_after_collapse(g: &Multigraph) -> bool {
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (v, w, _) in g.pairs() {
        let (a, b) = (find(&mut parent, v), find(&mut parent, w));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// Total proper coloring from the palette `[D̄μ(G) − 1]`, for graphs whose
/// G* has no cycle longer than 2.
///
/// While G* has edges, one copy of an edge `vw` at a leaf `v` of G* is
/// peeled off; peeling drops `v` and `w` out of G* (or lowers D̄μ), so the
/// recursion bottoms out at an edgeless G* or at the Ore bound. The edges
/// away from an edgeless G* are colored first, then the rest, and every
/// peeled copy is added back on the way up.
pub fn color_forest_bound(g: &Multigraph) -> Result<BoundColoring, ColoringError> {
    if g.edge_count() == 0 {
        return Err(ColoringError::NoEdges);
    }
    if !check_star_forest_hypothesis(g) {
        return Err(ColoringError::Hypothesis(
            "G* has a cycle of length greater than 2",
        ));
    }
    let k = g.d_mu_max().expect("graph with edges has vertices") - 1;
    let mut telemetry = Telemetry::default();
    let coloring = peel_and_color(g, k, &mut telemetry)?;
    Ok(BoundColoring {
        coloring,
        telemetry,
    })
}

fn peel_and_color(
    g: &Multigraph,
    k: u32,
    tel: &mut Telemetry,
) -> Result<PartialColoring, ColoringError> {
    let d_mu = g.d_mu_max().expect("nonempty");
    if d_mu <= k {
        return color_in_order(g, k, g.edges(), tel, "Ore");
    }
    let star = g.star_subgraphs().expect("nonempty").star;
    if star.graph.edge_count() == 0 {
        let inside: VertexSet = star.vertex_set();
        let away = g.edges().filter(|e| !inside.contains(e.v) && !inside.contains(e.w));
        let near = g.edges().filter(|e| inside.contains(e.v) || inside.contains(e.w));
        return color_in_order(g, k, away.chain(near), tel, "forest");
    }
    let leaf = (0..star.graph.n())
        .find(|&i| star.graph.neighbors(i).len() == 1)
        .expect("a forest with edges has a leaf");
    let other = star.graph.neighbors(leaf).iter().next().unwrap();
    let (v, w) = (star.vertices[leaf], star.vertices[other]);
    let peeled = g.with_copy_removed(v, w).expect("edge exists");
    let mut c = peel_and_color(&peeled, k, tel)?.rehost(g);
    let e = EdgeInstance::new(v, w, g.mult(v, w) - 1);
    extend_or_fallback(&mut c, e, tel, "forest")?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::chromatic_index;
    use crate::graph::random_multigraph;
    use crate::named;

    #[test]
    fn vizing_examples() {
        let r = color_vizing(&named::complete(4)).unwrap();
        assert!(r.coloring.is_total() && r.coloring.is_proper());
        assert!(r.coloring.colors_used() <= 4);
        let r = color_vizing(&Multigraph::build(2, [(0, 1, 3)]).unwrap()).unwrap();
        assert_eq!(r.coloring.colors_used(), 3);
        let r = color_vizing(&named::complete(3)).unwrap();
        assert!(r.coloring.is_proper() && r.coloring.colors_used() <= 3);
        assert_eq!(color_vizing(&Multigraph::new(3).unwrap()).unwrap_err(), ColoringError::NoEdges);
    }

    #[test]
    fn ore_examples() {
        let doubled = Multigraph::build(3, [(0, 1, 2), (1, 2, 1), (0, 2, 1)]).unwrap();
        let r = color_ore(&doubled).unwrap();
        assert_eq!(r.coloring.k(), 5);
        assert!(r.coloring.is_total() && r.coloring.is_proper());
        assert_eq!(chromatic_index(&doubled), 4);
        let r = color_ore(&named::cycle(5)).unwrap();
        assert_eq!(r.coloring.k(), 3);
        assert!(r.coloring.is_total() && r.coloring.is_proper());
        let r = color_ore(&named::path(2)).unwrap();
        assert_eq!(r.coloring.colors_used(), 1);
    }

    #[test]
    fn star_forest_hypothesis_examples() {
        // G* edgeless: K_{1,3} has G* = {center}.
        assert!(check_star_forest_hypothesis(&named::star(3)));
        assert!(check_star_forest_hypothesis(&Multigraph::build(2, [(0, 1, 2)]).unwrap()));
        assert!(!check_star_forest_hypothesis(&named::complete(3)));
    }

    #[test]
    fn forest_bound_examples() {
        assert!(matches!(
            color_forest_bound(&named::complete(3)),
            Err(ColoringError::Hypothesis(_))
        ));
        let r = color_forest_bound(&named::star(3)).unwrap();
        assert_eq!(r.coloring.k(), 3);
        assert!(r.coloring.is_total() && r.coloring.is_proper());
        // Simple graph whose max-degree vertices induce a forest: path P5.
        let r = color_forest_bound(&named::path(5)).unwrap();
        assert_eq!(r.coloring.k(), 2);
        assert!(r.coloring.is_total() && r.coloring.is_proper());
        // Two vertices joined by a double edge: D̄μ = 4, colored with 3.
        let r = color_forest_bound(&Multigraph::build(2, [(0, 1, 2)]).unwrap()).unwrap();
        assert_eq!(r.coloring.k(), 3);
        assert!(r.coloring.is_total());
    }

    #[test]
    fn forest_bound_on_random_graphs() {
        let mut hits = 0;
        for seed in 0..300 {
            let g = random_multigraph(seed, 6, 2, 0.5).unwrap();
            if g.edge_count() == 0 || !check_star_forest_hypothesis(&g) {
                continue;
            }
            hits += 1;
            let r = color_forest_bound(&g).unwrap();
            assert!(r.coloring.is_total() && r.coloring.is_proper(), "seed {seed}");
            assert_eq!(r.coloring.k(), g.d_mu_max().unwrap() - 1);
        }
        assert!(hits > 20);
    }
}
