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

//! Corpora and the suite runners built on them.
//!
//! Instances are processed in parallel and merged in corpus order, so a
//! report depends only on its parameters.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Budget, CheckKind, SuiteReport, Subject};
use crate::coloring::{
    all_maximal_subgraphs, check_star_forest_hypothesis, chromatic_index, maximal_colorable_subgraph,
    shuffled_order, PartialColoring,
};
use crate::deficiency::critical_edges;
use crate::enumerate::{nonisomorphic_multigraphs, nonisomorphic_simple_graphs};
use crate::format::{parse_graph6, to_graph6};
use crate::graph::{random_multigraph, EdgeInstance, Multigraph, VertexSet};
use crate::tuza::{conjecture_kcover_search, is_triangle_free};

/// Parameters of an exhaustive run over all multigraphs up to isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exhaustive {
    pub max_n: usize,
    pub max_mult: u32,
    pub max_k: u32,
}

/// Parameters of a seeded sampled run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sampled {
    pub seed: u64,
    pub trials: usize,
    pub max_n: usize,
    pub max_mult: u32,
    pub max_k: u32,
}

impl Exhaustive {
    fn record(&self, r: &mut SuiteReport) {
        r.param("max_n", self.max_n).param("max_mult", self.max_mult).param("max_k", self.max_k);
    }
}

impl Sampled {
    fn record(&self, r: &mut SuiteReport) {
        r.param("seed", self.seed)
            .param("trials", self.trials)
            .param("max_n", self.max_n)
            .param("max_mult", self.max_mult)
            .param("max_k", self.max_k);
    }
}

/// Independent stream `i` of the generator seeded with `seed`.
pub fn instance_rng(seed: u64, i: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    rng
}

/// All multigraphs on `1..=max_n` vertices with multiplicity at most
/// `max_mult`, one per isomorphism class.
pub fn multigraph_corpus(max_n: usize, max_mult: u32) -> Vec<Multigraph> {
    (1..=max_n)
        .flat_map(|n| nonisomorphic_multigraphs(n, max_mult))
        .collect()
}

pub fn simple_corpus(max_n: usize) -> Vec<Multigraph> {
    (1..=max_n).flat_map(nonisomorphic_simple_graphs).collect()
}

/// Triangle-free simple graphs on `1..=max_n` vertices as graph6 lines.
pub fn triangle_free_graph6(max_n: usize) -> Vec<String> {
    simple_corpus(max_n)
        .iter()
        .filter(|g| is_triangle_free(g))
        .map(|g| to_graph6(g).expect("simple and small"))
        .collect()
}

/// A random multigraph for instance `i`: `(graph seed, graph, k, rng)`.
fn sampled_instance(p: &Sampled, i: u64, simple: bool) -> (u64, Multigraph, u32, ChaCha8Rng) {
    let mut rng = instance_rng(p.seed, i);
    let n = rng.gen_range(1..=p.max_n.max(1));
    let mult = if simple { 1 } else { rng.gen_range(1..=p.max_mult.max(1)) };
    let k = rng.gen_range(1..=p.max_k.max(1));
    let prob = rng.gen_range(0.2..0.9);
    let graph_seed: u64 = rng.gen();
    let g = random_multigraph(graph_seed, n, mult, prob).expect("valid parameters");
    (graph_seed, g, k, rng)
}

fn run_parallel<T: Sync>(
    suite: &str,
    items: &[T],
    budget: &Budget,
    f: impl Fn(&T, &mut SuiteReport) + Sync,
) -> SuiteReport {
    let parts: Vec<SuiteReport> = items
        .par_iter()
        .map(|item| {
            let mut part = SuiteReport::new(suite);
            if budget.expired() {
                part.bump("skipped-instances", 1);
            } else {
                f(item, &mut part);
            }
            part
        })
        .collect();
    let mut out = SuiteReport::new(suite);
    for part in parts {
        out.merge(part);
    }
    if out.telemetry.contains_key("skipped-instances") {
        out.notes.push("time budget exhausted; the run is incomplete".into());
    }
    out
}

fn with_k(graphs: Vec<Multigraph>, max_k: u32) -> Vec<(Multigraph, u32)> {
    graphs
        .into_iter()
        .flat_map(|g| (1..=max_k).map(move |k| (g.clone(), k)))
        .collect()
}

/// `c` with its first colored edge uncolored again: a non-maximal M for
/// the negative controls.
fn drop_first_colored(c: &PartialColoring) -> Option<(PartialColoring, EdgeInstance)> {
    let (first, _) = c.colored_edges().next()?;
    let rest = c.colored_edges().filter(|&(e, _)| e != first);
    let smaller = PartialColoring::from_assignments(c.host().clone(), c.k(), rest).expect("subset of a proper coloring");
    Some((smaller, first))
}

/// Every maximal M of every small multigraph: the local deficiency
/// inequality, the certificate audit, and the simple-graph corollaries.
/// Each M minus one colored edge serves as the negative control.
pub fn theorem_simple_exhaustive(p: &Exhaustive, budget: &Budget) -> SuiteReport {
    let items = with_k(multigraph_corpus(p.max_n, p.max_mult), p.max_k);
    let mut report = run_parallel("theorem-simple", &items, budget, |(g, k), r| {
        r.bump("instances", 1);
        for cert in all_maximal_subgraphs(g, *k) {
            r.bump("maximal-subgraphs", 1);
            let s = Subject::coloring(cert.coloring());
            r.check("maximality-audit", CheckKind::MaximalityAudit, &s, None);
            r.check("deficiency-simple", CheckKind::DeficiencySimple, &s, None);
            r.check("deficiency-main", CheckKind::DeficiencyMain, &s, None);
            r.check("slack-order", CheckKind::SlackOrder, &s, None);
            if g.is_simple() {
                r.check("max-degree-in-f", CheckKind::MaxDegreeInF, &s, None);
                if *k <= 2 {
                    r.check("small-k-structure", CheckKind::SmallKStructure, &s, None);
                }
            }
            if let Some((smaller, _)) = drop_first_colored(cert.coloring()) {
                r.control("deficiency-simple/edge-removed", CheckKind::DeficiencySimple, &Subject::coloring(&smaller));
            }
        }
    });
    p.record(&mut report);
    report
}

/// The three lemmas and the certificate/U-sum agreement at every vertex
/// with `d_M(y) < k`, for every maximal M of every small multigraph.
pub fn lemmas_exhaustive(p: &Exhaustive, budget: &Budget) -> SuiteReport {
    let items = with_k(multigraph_corpus(p.max_n, p.max_mult), p.max_k);
    let mut report = run_parallel("lemmas", &items, budget, |(g, k), r| {
        for cert in all_maximal_subgraphs(g, *k) {
            let c = cert.coloring();
            r.bump("maximal-subgraphs", 1);
            for y in (0..g.n()).filter(|&y| c.degree_in(y) < *k) {
                let s = Subject::coloring(c).at(y);
                r.bump("u-pairs", crate::deficiency::local_sets_of(c, y).u_k.len() as u64);
                r.check("lemma-oy", CheckKind::LemmaOy, &s, None);
                r.check("lemma-path", CheckKind::LemmaPath, &s, None);
                r.check("lemma-disjoint", CheckKind::LemmaDisjoint, &s, None);
                r.check("certificate-slack", CheckKind::CertificateSlack, &s, None);
            }
            if let Some((smaller, e)) = drop_first_colored(c) {
                for y in [e.v, e.w] {
                    let s = Subject::coloring(&smaller).at(y);
                    r.control("lemma-oy/edge-removed", CheckKind::LemmaOy, &s);
                    r.control("lemma-path/edge-removed", CheckKind::LemmaPath, &s);
                    r.control("lemma-disjoint/edge-removed", CheckKind::LemmaDisjoint, &s);
                }
            }
        }
    });
    p.record(&mut report);
    report
}

/// Seeded random multigraphs, each with a maximal M grown along a seeded
/// shuffled edge order.
pub fn theorem_main_sampled(p: &Sampled, budget: &Budget) -> SuiteReport {
    let items: Vec<u64> = (0..p.trials as u64).collect();
    let mut report = run_parallel("theorem-main", &items, budget, |&i, r| {
        let (graph_seed, g, k, mut rng) = sampled_instance(p, i, false);
        let order = shuffled_order(&g, rng.gen());
        let cert = maximal_colorable_subgraph(&g, k, &order).expect("order is a permutation");
        let c = cert.coloring();
        let s = Subject::coloring(c);
        let seed = Some(graph_seed);
        r.bump("instances", 1);
        r.check("maximality-audit", CheckKind::MaximalityAudit, &s, seed);
        r.check("deficiency-simple", CheckKind::DeficiencySimple, &s, seed);
        r.check("deficiency-main", CheckKind::DeficiencyMain, &s, seed);
        r.check("slack-order", CheckKind::SlackOrder, &s, seed);
        for y in (0..g.n()).filter(|&y| c.degree_in(y) < k) {
            r.check("certificate-slack", CheckKind::CertificateSlack, &s.clone().at(y), seed);
        }
    });
    p.record(&mut report);
    report
}

/// The Vizing-type and Ore-type colorers on seeded random multigraphs.
pub fn colorer_bounds(p: &Sampled, budget: &Budget) -> SuiteReport {
    let items: Vec<u64> = (0..p.trials as u64).collect();
    let mut report = run_parallel("colorer-bounds", &items, budget, |&i, r| {
        let (graph_seed, g, _, _) = sampled_instance(p, i, false);
        let s = Subject::graph(g, 0);
        r.bump("instances", 1);
        r.check("vizing-bound", CheckKind::VizingBound, &s, Some(graph_seed));
        r.check("ore-bound", CheckKind::OreBound, &s, Some(graph_seed));
    });
    for key in ["vizing-exact-fallbacks", "ore-exact-fallbacks"] {
        report.telemetry.entry(key.into()).or_default();
    }
    p.record(&mut report);
    report
}

fn forest_checks(g: &Multigraph, seed: Option<u64>, r: &mut SuiteReport) {
    if g.edge_count() == 0 {
        return;
    }
    let s = Subject::graph(g.clone(), 0);
    if check_star_forest_hypothesis(g) {
        r.check("forest-bound", CheckKind::ForestBound, &s, seed);
    } else {
        r.bump("hypothesis-fails", 1);
    }
    let subs = g.star_subgraphs().expect("graph has edges");
    if subs.max_degree_mult.graph.edge_count() == 0 {
        r.check("gdm-edgeless-bound", CheckKind::GdmEdgelessBound, &s, seed);
    }
    if g.is_simple() && super::is_forest(&subs.max_degree.graph) {
        r.check("simple-forest-bound", CheckKind::SimpleForestBound, &s, seed);
    }
}

/// The forest-hypothesis colorer and its two special cases over all
/// multigraphs with `n ≤ 4, μ ≤ 2`, all simple graphs with `n ≤ 7`, and
/// `trials` random multigraphs; every size is capped at `max_n`.
pub fn forest_bounds(p: &Sampled, budget: &Budget) -> SuiteReport {
    let mut fixed = multigraph_corpus(p.max_n.min(4), 2);
    fixed.extend(simple_corpus(p.max_n.min(7)));
    let mut report = run_parallel("forest-bound", &fixed, budget, |g, r| {
        r.bump("exhaustive-graphs", 1);
        forest_checks(g, None, r);
    });
    let items: Vec<u64> = (0..p.trials as u64).collect();
    report.merge(run_parallel("forest-bound", &items, budget, |&i, r| {
        let (graph_seed, g, _, _) = sampled_instance(p, i, false);
        r.bump("sampled-graphs", 1);
        forest_checks(&g, Some(graph_seed), r);
    }));
    p.record(&mut report);
    report
}

/// Join formulas against the general triangle oracles for every
/// triangle-free `H` with at most `max_h` vertices, read back from graph6.
pub fn join_exhaustive(max_h: usize, max_k: u32, budget: &Budget) -> SuiteReport {
    let corpus = triangle_free_graph6(max_h);
    let items: Vec<(String, u32)> = corpus
        .iter()
        .flat_map(|line| (1..=max_k).map(move |k| (line.clone(), k)))
        .collect();
    let mut report = run_parallel("join", &items, budget, |(line, k), r| {
        let h = parse_graph6(line).expect("corpus line parses");
        r.bump("instances", 1);
        r.check("join-formula", CheckKind::JoinFormula, &Subject::graph(h, *k), None);
    });
    report.param("max_h", max_h).param("max_k", max_k);
    report.bump("corpus-graphs", corpus.len() as u64);
    report
}

/// `2α'_k ≥ k|V| − φ_k` exactly and through `orders` sampled maximal M
/// per instance, on seeded simple graphs.
pub fn alphi_sampled(p: &Sampled, orders: usize, budget: &Budget) -> SuiteReport {
    let items: Vec<u64> = (0..p.trials as u64).collect();
    let mut report = run_parallel("alphi", &items, budget, |&i, r| {
        let (graph_seed, g, k, mut rng) = sampled_instance(p, i, true);
        let seed = Some(graph_seed);
        r.bump("instances", 1);
        r.check("alphi-exact", CheckKind::AlphiExact, &Subject::graph(g.clone(), k), seed);
        for _ in 0..orders {
            let order = shuffled_order(&g, rng.gen());
            let cert = maximal_colorable_subgraph(&g, k, &order).expect("order is a permutation");
            r.check("alphi-subgraph", CheckKind::AlphiSubgraph, &Subject::coloring(cert.coloring()), seed);
        }
    });
    p.record(&mut report);
    report.param("orders", orders);
    report
}

/// k-optimal witnesses and the reduction to a k-dependent set, on the same
/// corpus as [`alphi_sampled`] with the same parameters.
pub fn k_optimal_sampled(p: &Sampled, budget: &Budget) -> SuiteReport {
    let items: Vec<u64> = (0..p.trials as u64).collect();
    let mut report = run_parallel("k-optimal", &items, budget, |&i, r| {
        let (graph_seed, g, k, _) = sampled_instance(p, i, true);
        let seed = Some(graph_seed);
        r.bump("instances", 1);
        r.check("k-optimal", CheckKind::KOptimal, &Subject::graph(g.clone(), k), seed);
        // The starting sets come from a stream of their own so the graph
        // stream matches the other sampled suites.
        let mut sets = instance_rng(graph_seed, 1);
        let mut starts = vec![g.vertices()];
        for _ in 0..2 {
            starts.push(VertexSet::from_bits(sets.gen::<u64>() & g.vertices().bits()));
        }
        for t in starts {
            r.check("reduction", CheckKind::Reduction, &Subject::graph(g.clone(), k).with_set(t), seed);
        }
    });
    p.record(&mut report);
    report
}

/// The adjacency-lemma count at every critical edge, in both orientations,
/// of every class-2 simple graph on at most `max_n` vertices.
pub fn adjacency_lemma_exhaustive(max_n: usize, budget: &Budget) -> SuiteReport {
    let corpus = simple_corpus(max_n);
    let mut report = run_parallel("adjacency-lemma", &corpus, budget, |g, r| {
        if g.edge_count() == 0 || chromatic_index(g) != g.max_degree() + 1 {
            return;
        }
        r.bump("class-two-graphs", 1);
        for (v, w) in critical_edges(g) {
            r.bump("critical-edges", 1);
            for (x, y) in [(v, w), (w, v)] {
                let s = Subject::graph(g.clone(), 0).at(x).with_other(y);
                r.check("adjacency-lemma", CheckKind::AdjacencyLemma, &s, None);
            }
        }
    });
    report.param("max_n", max_n);
    report
}

/// The conjecture sweep over all simple graphs on exactly `n` vertices.
/// A candidate is reported, never counted as a failure; only a failed
/// degree condition or a candidate that does not replay is a falsification.
pub fn conjecture_sweep_n(n: usize, max_k: u32, budget: &Budget) -> SuiteReport {
    let items = with_k(nonisomorphic_simple_graphs(n), max_k);
    let mut report = run_parallel("conjecture", &items, budget, |(g, k), r| {
        r.bump("instances", 1);
        let out = conjecture_kcover_search(g, *k).expect("simple corpus");
        for set in &out.sets {
            r.bump("k-optimal-sets", 1);
            if set.witness.is_some() {
                r.bump("witnesses", 1);
            }
            let s = Subject::graph(g.clone(), *k).with_set(set.d);
            r.check("degree-condition", CheckKind::DegreeCondition, &s, None);
            if set.witness.is_none() {
                r.check("candidate-replay", CheckKind::CandidateReplay, &s, None);
            }
        }
        r.bump("candidates", out.candidates.len() as u64);
        r.candidates.extend(out.candidates);
    });
    report.telemetry.entry("candidates".into()).or_default();
    report.param("n", n).param("max_k", max_k);
    report
}

/// [`conjecture_sweep_n`] for `n = 1..=max_n`, calling `progress` after each n.
pub fn conjecture_sweep(
    max_n: usize,
    max_k: u32,
    budget: &Budget,
    mut progress: impl FnMut(usize, &SuiteReport),
) -> SuiteReport {
    let mut report = SuiteReport::new("conjecture");
    for n in 1..=max_n {
        let part = conjecture_sweep_n(n, max_k, budget);
        progress(n, &part);
        report.merge(part);
    }
    report.parameters.clear();
    report.param("max_n", max_n).param("max_k", max_k);
    report.telemetry.entry("candidates".into()).or_default();
    if !report.candidates.is_empty() {
        report
            .notes
            .push(format!("{} counterexample candidate(s) found", report.candidates.len()));
    }
    report
}
