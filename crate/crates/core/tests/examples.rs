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

//! Worked examples across modules, with values recomputed by brute force
//! in this file rather than trusted from the library.

use ecolab::coloring::{
    all_maximal_subgraphs, chromatic_index, color_forest_bound, color_ore, decide_k_colorable,
    kempe_path_from, maximal_colorable_subgraph, PartialColoring,
};
use ecolab::deficiency::{
    check_val_simple, critical_edges, deficient_set_of, local_sets_of, DeficiencyReport,
};
use ecolab::graph::{EdgeInstance, Multigraph, VertexSet};
use ecolab::named;
use ecolab::tuza::{
    alpha_prime_k, check_alphi, conjecture_kcover_search, nu_exact, phi_k, reduce_to_k_dependent,
    tau_exact, tau_nu_join, TuzaInstance,
};

/// Does some assignment of colors 1..=k to every edge instance give a
/// proper coloring? Tries all k^|E| assignments.
fn brute_colorable(g: &Multigraph, k: u32) -> bool {
    let edges: Vec<EdgeInstance> = g.edges().collect();
    let total = (k as u64).pow(edges.len() as u32);
    (0..total).any(|mut code| {
        let mut seen = vec![0u64; g.n()];
        edges.iter().all(|e| {
            let bit = 1u64 << (code % k as u64);
            code /= k as u64;
            let ok = seen[e.v] & bit == 0 && seen[e.w] & bit == 0;
            seen[e.v] |= bit;
            seen[e.w] |= bit;
            ok
        })
    })
}

fn brute_chromatic_index(g: &Multigraph) -> u32 {
    (0..).find(|&k| g.edge_count() == 0 || (k > 0 && brute_colorable(g, k))).unwrap()
}

/// Largest edge subset that is k-edge-colorable, over all subsets.
fn brute_alpha(g: &Multigraph, k: u32) -> usize {
    let m = g.edge_count();
    (0..1u32 << m)
        .filter(|mask| {
            let keep: Vec<bool> = (0..m).map(|i| mask >> i & 1 == 1).collect();
            brute_colorable(&g.spanning_subgraph(&keep), k)
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap()
}

fn brute_phi(g: &Multigraph, k: u32) -> i64 {
    (0..1u64 << g.n())
        .map(|bits| {
            let d = VertexSet::from_bits(bits);
            let inside = g.pairs().filter(|&(v, w, _)| d.contains(v) && d.contains(w)).count();
            k as i64 * d.len() as i64 - inside as i64
        })
        .max()
        .unwrap()
}

fn triangle_with_doubled_edge() -> Multigraph {
    Multigraph::build(3, [(0, 1, 2), (0, 2, 1), (1, 2, 1)]).unwrap()
}

#[test]
fn doubled_triangle_star_subgraphs_and_ore() {
    let g = triangle_with_doubled_edge();
    let subs = g.star_subgraphs().unwrap();
    assert_eq!(subs.star.vertices, vec![0, 1]);
    assert_eq!(subs.star.graph.mult(0, 1), 2);
    assert_eq!(subs.max_degree_mult.vertices, vec![0, 1]);
    let ore = color_ore(&g).unwrap();
    assert!(ore.coloring.is_total() && ore.coloring.is_proper());
    assert_eq!(ore.coloring.k(), 5);
    assert_eq!(chromatic_index(&g), 4);
    assert_eq!(brute_chromatic_index(&g), 4);
}

#[test]
fn chromatic_indices_against_brute_force() {
    for g in [
        named::complete(3),
        named::complete(4),
        named::cycle(5),
        named::path(3),
        named::star(3),
        triangle_with_doubled_edge(),
        Multigraph::build(3, [(0, 1, 2), (1, 2, 2), (0, 2, 2)]).unwrap(),
    ] {
        assert_eq!(chromatic_index(&g), brute_chromatic_index(&g), "{g:?}");
    }
    assert!(decide_k_colorable(&named::complete(3), 2).is_none());
    assert!(decide_k_colorable(&named::cycle(5), 2).is_none());
    assert!(decide_k_colorable(&named::cycle(5), 3).is_some());
}

#[test]
fn kempe_path_in_properly_colored_triangle() {
    let g = named::complete(3);
    let c = PartialColoring::from_assignments(
        g,
        3,
        [(EdgeInstance::new(0, 1, 0), 1), (EdgeInstance::new(1, 2, 0), 2), (EdgeInstance::new(0, 2, 0), 3)],
    )
    .unwrap();
    // Vertex 0 misses color 2, so the [1,2]-path runs 0 -1- 1 -2- 2.
    let p = kempe_path_from(&c, 0, 1, 2).unwrap();
    assert_eq!(p.vertices, vec![0, 1, 2]);
    assert_eq!(p.len(), 2);
}

#[test]
fn maximal_subgraph_examples() {
    let k3 = named::complete(3);
    for cert in all_maximal_subgraphs(&k3, 1) {
        assert_eq!(cert.coloring().colored_count(), 1);
        assert_eq!(cert.uncolored().len(), 2);
    }
    let doubled = triangle_with_doubled_edge();
    let order: Vec<EdgeInstance> = doubled.edges().collect();
    let cert = maximal_colorable_subgraph(&doubled, 5, &order).unwrap();
    assert!(cert.uncolored().is_empty());
    let c5 = named::cycle(5);
    assert_eq!(brute_alpha(&c5, 2), 4);
    for cert in all_maximal_subgraphs(&c5, 2) {
        assert_eq!(cert.coloring().colored_count(), 4);
    }
}

#[test]
fn forest_bound_examples() {
    let c5 = color_ore(&named::cycle(5)).unwrap();
    assert!(c5.coloring.is_proper() && c5.coloring.colors_used() == 3);
    // K_{1,3}: D̄μ = 4 at the center only, so three colors.
    let star = color_forest_bound(&named::star(3)).unwrap();
    assert_eq!(star.coloring.k(), 3);
    assert!(star.coloring.is_total() && star.coloring.is_proper());
    // A path on five vertices: G_Δ is the inner path, a forest; Δ colors.
    let p5 = color_forest_bound(&named::path(5)).unwrap();
    assert_eq!(p5.coloring.k(), 2);
    assert!(p5.coloring.is_total() && p5.coloring.is_proper());
}

#[test]
fn deficiency_examples() {
    // k ≥ D̄μ: M = G is forced and every vertex is deficient.
    let g = named::complete(4);
    for cert in all_maximal_subgraphs(&g, 4) {
        assert!(cert.uncolored().is_empty());
        assert_eq!(deficient_set_of(cert.coloring()), g.vertices());
    }
    // K3, k = 1, M = {01}: only 2 is deficient; F¹(2) is empty.
    let c = PartialColoring::from_assignments(named::complete(3), 1, [(EdgeInstance::new(0, 1, 0), 1)]).unwrap();
    assert_eq!(deficient_set_of(&c), VertexSet::singleton(2));
    let local = local_sets_of(&c, 2);
    assert!(local.f_k.is_empty() && local.u_k.is_empty());
    let report = DeficiencyReport::observe(&c);
    assert_eq!(report.record(2).unwrap().slack_main, 0);
    assert!(report.holds_main());
}

#[test]
fn critical_edges_and_adjacency_lemma() {
    assert_eq!(critical_edges(&named::complete(3)).len(), 3);
    assert_eq!(critical_edges(&named::path(3)), vec![(0, 1), (1, 2)]);
    let r = check_val_simple(&named::complete(3), 0, 1).unwrap();
    assert_eq!((r.chi, r.t, r.bound, r.count), (3, 3, 1, 1));
    assert!(r.holds && r.derivation_ok);
}

#[test]
fn phi_and_reduction_examples() {
    let k3 = named::complete(3);
    assert_eq!(phi_k(&k3, 1).unwrap().0, 1);
    assert_eq!(phi_k(&k3, 2).unwrap().0, 3);
    for (g, k) in [(named::cycle(5), 1), (named::complete(4), 2), (named::complete_bipartite(2, 3), 2)] {
        assert_eq!(phi_k(&g, k).unwrap().0, brute_phi(&g, k));
    }
    assert_eq!(reduce_to_k_dependent(&k3, 1, k3.vertices()).len(), 1);
    let star = named::star(5);
    let d = reduce_to_k_dependent(&star, 1, star.vertices());
    assert!(ecolab::tuza::phi_of(&star, 1, d) >= 1);
}

#[test]
fn alpha_examples_against_brute_force() {
    assert_eq!(alpha_prime_k(&named::cycle(5), 2).unwrap().0, 4);
    assert_eq!(alpha_prime_k(&named::complete(4), 3).unwrap().0, 6);
    for (g, k) in [(named::complete(4), 1), (named::cycle(5), 1), (named::complete_bipartite(2, 3), 2)] {
        assert_eq!(alpha_prime_k(&g, k).unwrap().0, brute_alpha(&g, k));
    }
    let r = check_alphi(&named::complete(3), 1).unwrap();
    assert_eq!((r.alpha, r.rhs), (1, 2));
    assert!(r.holds && r.equality);
}

#[test]
fn triangle_examples() {
    let k4 = named::complete(4);
    assert_eq!(tau_exact(&k4).unwrap().0, 2);
    assert_eq!(nu_exact(&k4).unwrap().0, 1);
    let r = tau_nu_join(&TuzaInstance::new(1, named::path(2)).unwrap()).unwrap();
    assert_eq!((r.tau, r.nu), (1, 1));
    let r = tau_nu_join(&TuzaInstance::new(1, named::cycle(5)).unwrap()).unwrap();
    assert_eq!((r.tau, r.nu), (3, 2));
}

#[test]
fn matching_covers_complement_of_maximum_independent_set() {
    let out = conjecture_kcover_search(&named::cycle(5), 1).unwrap();
    assert!(out.candidates.is_empty());
    for set in &out.sets {
        assert_eq!(set.d.len(), 2);
        let witness = set.witness.as_ref().unwrap();
        let covered: VertexSet = witness.iter().flat_map(|(e, _)| [e.v, e.w]).collect();
        assert!(named::cycle(5).vertices().difference(set.d).is_subset(covered));
    }
}
