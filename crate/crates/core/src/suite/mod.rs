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

//! Verification suites over generated corpora, with deterministic JSON
//! reports and replayable failure records.
//!
//! Every check is a function of a [`Subject`] (graph, k, optional coloring,
//! vertices, vertex set). A failing check is stored as a
//! [`FalsificationRecord`] holding the subject in text form, and
//! [`replay`] re-runs exactly the same evaluation from the record alone.

mod runners;

pub use runners::*;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{
    check_star_forest_hypothesis, color_forest_bound, color_ore, color_vizing, BoundColoring,
    ColoringError, MaximalSubgraphCertificate, PartialColoring,
};
use crate::deficiency::{check_small_k_structure, check_val_simple, deficient_set_of, DeficiencyReport};
use crate::format::{parse_coloring, parse_graph, write_coloring, write_graph, ParseError};
use crate::graph::{Multigraph, VertexSet};
use crate::kostochka::AroundVertex;
use crate::tuza::{
    check_alphi, check_alphi_for_subgraph, degree_constrained_subgraph, is_k_dependent,
    k_optimal_sets, phi_k, phi_of, reduction_trail, replay_candidate, validate_join,
    CounterexampleCandidate, TuzaInstance,
};

/// Environment variable holding the default time budget in seconds.
pub const TIME_BUDGET_ENV: &str = "ECOLAB_TIME_BUDGET";

/// How many expected (control) failures are kept verbatim per report.
const KEPT_CONTROLS: usize = 8;

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("record is missing `{0}`")]
    Missing(&'static str),
    #[error("precondition not met: {0}")]
    Precondition(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    MaximalityAudit,
    DeficiencySimple,
    DeficiencyMain,
    SlackOrder,
    MaxDegreeInF,
    SmallKStructure,
    LemmaOy,
    LemmaPath,
    LemmaDisjoint,
    CertificateSlack,
    VizingBound,
    OreBound,
    ForestBound,
    GdmEdgelessBound,
    SimpleForestBound,
    JoinFormula,
    AlphiExact,
    AlphiSubgraph,
    KOptimal,
    Reduction,
    AdjacencyLemma,
    DegreeCondition,
    CandidateReplay,
}

impl CheckKind {
    pub fn name(self) -> String {
        serde_json::to_value(self)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default()
    }
}

/// The inputs of one check.
#[derive(Debug, Clone)]
pub struct Subject {
    pub graph: Multigraph,
    pub k: u32,
    pub coloring: Option<PartialColoring>,
    pub vertex: Option<usize>,
    pub other: Option<usize>,
    pub set: Option<VertexSet>,
}

impl Subject {
    pub fn graph(graph: Multigraph, k: u32) -> Self {
        Subject {
            graph,
            k,
            coloring: None,
            vertex: None,
            other: None,
            set: None,
        }
    }

    pub fn coloring(c: &PartialColoring) -> Self {
        Subject {
            coloring: Some(c.clone()),
            ..Subject::graph(c.host().clone(), c.k())
        }
    }

    pub fn at(mut self, v: usize) -> Self {
        self.vertex = Some(v);
        self
    }

    pub fn with_other(mut self, w: usize) -> Self {
        self.other = Some(w);
        self
    }

    pub fn with_set(mut self, d: VertexSet) -> Self {
        self.set = Some(d);
        self
    }

    fn need_coloring(&self) -> Result<&PartialColoring, SuiteError> {
        self.coloring.as_ref().ok_or(SuiteError::Missing("coloring"))
    }

    fn need_vertex(&self) -> Result<usize, SuiteError> {
        self.vertex.ok_or(SuiteError::Missing("vertex"))
    }
}

/// A failed check, self-contained: graphs and colorings are embedded in
/// the repo's text formats.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FalsificationRecord {
    pub check: CheckKind,
    pub label: String,
    pub graph: String,
    pub k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coloring: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub set: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub detail: String,
}

impl FalsificationRecord {
    pub fn new(label: &str, kind: CheckKind, s: &Subject, seed: Option<u64>, detail: String) -> Self {
        FalsificationRecord {
            check: kind,
            label: label.to_owned(),
            graph: write_graph(&s.graph),
            k: s.k,
            coloring: s.coloring.as_ref().map(write_coloring),
            vertex: s.vertex,
            other: s.other,
            set: s.set.map(|d| d.iter().collect()),
            seed,
            detail,
        }
    }

    pub fn subject(&self) -> Result<Subject, SuiteError> {
        let graph = parse_graph(&self.graph)?;
        let coloring = match &self.coloring {
            Some(text) => Some(parse_coloring(text, &graph)?),
            None => None,
        };
        Ok(Subject {
            graph,
            k: self.k,
            coloring,
            vertex: self.vertex,
            other: self.other,
            set: self.set.as_ref().map(|s| s.iter().copied().collect()),
        })
    }
}

/// Re-runs a recorded check. `Some(detail)` when it still fails.
pub fn replay(r: &FalsificationRecord) -> Result<Option<String>, SuiteError> {
    let mut sink = BTreeMap::new();
    evaluate(r.check, &r.subject()?, &mut sink)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckTally {
    pub passed: u64,
    pub failed: u64,
}

impl CheckTally {
    pub fn total(&self) -> u64 {
        self.passed + self.failed
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub parameters: BTreeMap<String, String>,
    pub checks: BTreeMap<String, CheckTally>,
    pub falsifications: Vec<FalsificationRecord>,
    /// Negative controls: `failed` counts the expected failures observed.
    pub controls: BTreeMap<String, CheckTally>,
    pub expected_failures: Vec<FalsificationRecord>,
    pub candidates: Vec<CounterexampleCandidate>,
    pub telemetry: BTreeMap<String, u64>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_owned(),
            ..Default::default()
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.to_owned(), value.to_string());
        self
    }

    pub fn bump(&mut self, key: &str, by: u64) {
        *self.telemetry.entry(key.to_owned()).or_default() += by;
    }

    /// Evaluates `kind` on `s` and tallies it under `label`. Precondition
    /// errors count as failures: the runners only build valid subjects.
    pub fn check(&mut self, label: &str, kind: CheckKind, s: &Subject, seed: Option<u64>) -> bool {
        let failure = match evaluate(kind, s, &mut self.telemetry) {
            Ok(f) => f,
            Err(e) => Some(e.to_string()),
        };
        let tally = self.checks.entry(label.to_owned()).or_default();
        match failure {
            None => {
                tally.passed += 1;
                true
            }
            Some(detail) => {
                tally.failed += 1;
                self.falsifications
                    .push(FalsificationRecord::new(label, kind, s, seed, detail));
                false
            }
        }
    }

    /// A negative control: the check is expected to fail on `s`.
    pub fn control(&mut self, label: &str, kind: CheckKind, s: &Subject) {
        let failure = evaluate(kind, s, &mut BTreeMap::new()).unwrap_or_else(|e| Some(e.to_string()));
        let tally = self.controls.entry(label.to_owned()).or_default();
        match failure {
            None => tally.passed += 1,
            Some(detail) => {
                tally.failed += 1;
                self.expected_failures
                    .push(FalsificationRecord::new(label, kind, s, None, detail));
            }
        }
    }

    pub fn merge(&mut self, other: SuiteReport) {
        for (name, t) in other.checks {
            let e = self.checks.entry(name).or_default();
            e.passed += t.passed;
            e.failed += t.failed;
        }
        for (name, t) in other.controls {
            let e = self.controls.entry(name).or_default();
            e.passed += t.passed;
            e.failed += t.failed;
        }
        for (key, v) in other.telemetry {
            *self.telemetry.entry(key).or_default() += v;
        }
        self.falsifications.extend(other.falsifications);
        let room = KEPT_CONTROLS.saturating_sub(self.expected_failures.len());
        self.expected_failures
            .extend(other.expected_failures.into_iter().take(room));
        self.candidates.extend(other.candidates);
        self.notes.extend(other.notes);
    }

    pub fn tally(&self, label: &str) -> CheckTally {
        self.checks.get(label).copied().unwrap_or_default()
    }

    pub fn total_checks(&self) -> u64 {
        self.checks.values().map(CheckTally::total).sum()
    }

    pub fn falsified(&self) -> bool {
        !self.falsifications.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// A wall-clock budget for a suite run. Instances started after the
/// deadline are skipped and counted, so a run that hits the budget says
/// so in its report.
#[derive(Debug, Clone, Copy, Default)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None }
    }

    pub fn seconds(s: u64) -> Self {
        Budget {
            deadline: Instant::now().checked_add(Duration::from_secs(s)),
        }
    }

    /// Reads [`TIME_BUDGET_ENV`]; unset or unparsable means unlimited.
    pub fn from_env() -> Self {
        std::env::var(TIME_BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<u64>().ok())
            .map_or_else(Budget::unlimited, Budget::seconds)
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

fn join_details<T>(items: impl Iterator<Item = T>, f: impl Fn(T) -> String) -> Option<String> {
    let parts: Vec<String> = items.map(f).collect();
    (!parts.is_empty()).then(|| parts.join("; "))
}

fn is_forest(g: &Multigraph) -> bool {
    // A simple forest has n − c edges; count components by search.
    let mut seen = VertexSet::empty();
    let mut components = 0;
    for s in 0..g.n() {
        if seen.contains(s) {
            continue;
        }
        components += 1;
        let mut stack = vec![s];
        seen.insert(s);
        while let Some(v) = stack.pop() {
            for w in g.neighbors(v).difference(seen).iter() {
                seen.insert(w);
                stack.push(w);
            }
        }
    }
    g.pairs().count() + components == g.n()
}

fn bound_outcome(
    result: Result<BoundColoring, ColoringError>,
    bound: u32,
    prefix: &str,
    tel: &mut BTreeMap<String, u64>,
) -> Option<String> {
    match result {
        Err(e) => Some(e.to_string()),
        Ok(b) => {
            *tel.entry(format!("{prefix}-augmented")).or_default() += b.telemetry.augmented;
            *tel.entry(format!("{prefix}-exact-fallbacks")).or_default() += b.telemetry.exact_fallbacks;
            let c = &b.coloring;
            if !c.is_total() {
                Some("coloring is not total".into())
            } else if !c.is_proper() {
                Some("coloring is not proper".into())
            } else if c.colors_used() as u32 > bound {
                Some(format!("{} colors used, bound {bound}", c.colors_used()))
            } else {
                None
            }
        }
    }
}

/// Runs one check. `Ok(None)` is a pass, `Ok(Some(detail))` a failure.
pub fn evaluate(
    kind: CheckKind,
    s: &Subject,
    tel: &mut BTreeMap<String, u64>,
) -> Result<Option<String>, SuiteError> {
    let g = &s.graph;
    let k = s.k;
    let pre = |msg: &str| SuiteError::Precondition(msg.to_owned());
    Ok(match kind {
        CheckKind::MaximalityAudit => match MaximalSubgraphCertificate::certify(s.need_coloring()?.clone()) {
            Err(e) => Some(e.to_string()),
            Ok(cert) => (!cert.audit()).then(|| "certificate audit failed".into()),
        },
        CheckKind::DeficiencySimple => {
            let r = DeficiencyReport::observe(s.need_coloring()?);
            join_details(r.simple_violations(), |v| {
                format!("v={} d_M={} d_F={}", v.v, v.d_m, v.d_f)
            })
        }
        CheckKind::DeficiencyMain => {
            let r = DeficiencyReport::observe(s.need_coloring()?);
            join_details(r.main_violations(), |v| {
                format!("v={} d_M={} u_sum={} d_fk={}", v.v, v.d_m, v.u_sum, v.d_fk)
            })
        }
        CheckKind::SlackOrder => {
            let r = DeficiencyReport::observe(s.need_coloring()?);
            join_details(
                r.records.iter().filter(|v| v.slack_main > v.slack_simple),
                |v| format!("v={} slack_main={} slack_simple={}", v.v, v.slack_main, v.slack_simple),
            )
        }
        CheckKind::MaxDegreeInF => {
            let c = s.need_coloring()?;
            if !g.is_simple() {
                return Err(pre("host must be simple"));
            }
            let sub = g.induced(deficient_set_of(c));
            let d = sub.graph.max_degree();
            (d >= c.k()).then(|| format!("Δ(G[F]) = {d} with k = {}", c.k()))
        }
        CheckKind::SmallKStructure => match check_small_k_structure(s.need_coloring()?) {
            Some(false) => Some("G[F] structure violated".into()),
            _ => None,
        },
        CheckKind::LemmaOy | CheckKind::LemmaPath | CheckKind::LemmaDisjoint | CheckKind::CertificateSlack => {
            let c = s.need_coloring()?;
            let y = s.need_vertex()?;
            let around = AroundVertex::observe(c, y).map_err(|e| SuiteError::Precondition(e.to_string()))?;
            match kind {
                CheckKind::LemmaOy => around.lemma_oy().failure,
                CheckKind::LemmaPath => around.lemma_path().failure,
                CheckKind::LemmaDisjoint => around.lemma_disjoint().failure,
                _ => {
                    let r = DeficiencyReport::observe(c);
                    let slack = r.record(y).map(|r| r.slack_main).unwrap_or_default();
                    let cert = around.certificate_bound() - around.d_fk as i64;
                    (cert != slack).then(|| format!("certificate slack {cert}, U-sum slack {slack}"))
                }
            }
        }
        CheckKind::VizingBound => {
            if g.edge_count() == 0 {
                return Ok(None);
            }
            bound_outcome(color_vizing(g), g.max_degree() + g.max_mult(), "vizing", tel)
        }
        CheckKind::OreBound => {
            if g.edge_count() == 0 {
                return Ok(None);
            }
            let bound = g.d_mu_max().map_err(|e| SuiteError::Precondition(e.to_string()))?;
            bound_outcome(color_ore(g), bound, "ore", tel)
        }
        CheckKind::ForestBound => {
            if g.edge_count() == 0 {
                return Ok(None);
            }
            if !check_star_forest_hypothesis(g) {
                return Err(pre("G* has a cycle longer than 2"));
            }
            let bound = g.d_mu_max().map_err(|e| SuiteError::Precondition(e.to_string()))? - 1;
            bound_outcome(color_forest_bound(g), bound, "forest", tel)
        }
        CheckKind::GdmEdgelessBound => {
            if g.edge_count() == 0 {
                return Ok(None);
            }
            let subs = g.star_subgraphs().map_err(|e| SuiteError::Precondition(e.to_string()))?;
            if subs.max_degree_mult.graph.edge_count() != 0 {
                return Err(pre("G^Δμ has edges"));
            }
            let bound = g.max_degree() + g.max_mult() - 1;
            // With D̄μ = Δ + μ the forest colorer applies; otherwise Ore
            // already gives at most Δ + μ − 1 colors.
            let result = if check_star_forest_hypothesis(g) {
                color_forest_bound(g)
            } else {
                color_ore(g)
            };
            bound_outcome(result, bound, "gdm-edgeless", tel)
        }
        CheckKind::SimpleForestBound => {
            if g.edge_count() == 0 {
                return Ok(None);
            }
            let subs = g.star_subgraphs().map_err(|e| SuiteError::Precondition(e.to_string()))?;
            if !g.is_simple() || !is_forest(&subs.max_degree.graph) {
                return Err(pre("need a simple graph whose G_Δ is a forest"));
            }
            bound_outcome(color_forest_bound(g), g.max_degree(), "simple-forest", tel)
        }
        CheckKind::JoinFormula => {
            let inst = TuzaInstance::new(k, g.clone()).map_err(|e| SuiteError::Precondition(e.to_string()))?;
            let v = validate_join(&inst).map_err(|e| SuiteError::Precondition(e.to_string()))?;
            (!v.all_ok()).then(|| format!("{v:?}"))
        }
        CheckKind::AlphiExact => {
            let r = check_alphi(g, k).map_err(|e| SuiteError::Precondition(e.to_string()))?;
            if r.equality {
                *tel.entry("alphi-equality".into()).or_default() += 1;
            }
            (!r.holds).then(|| format!("2·{} < {}", r.alpha, r.rhs))
        }
        CheckKind::AlphiSubgraph => {
            let c = s.need_coloring()?;
            let (phi, _) = phi_k(c.host(), c.k()).map_err(|e| SuiteError::Precondition(e.to_string()))?;
            match check_alphi_for_subgraph(c, phi) {
                (true, true) => None,
                (a, b) => Some(format!("via F: {a}, via φ_k: {b}, |E(M)| = {}", c.colored_count())),
            }
        }
        CheckKind::KOptimal => {
            let err = |e: crate::tuza::TuzaError| SuiteError::Precondition(e.to_string());
            let (phi, w) = phi_k(g, k).map_err(err)?;
            let sets = k_optimal_sets(g, k).map_err(err)?;
            let mut bad: Vec<String> = sets
                .iter()
                .chain(std::iter::once(&w))
                .filter(|x| !x.k_dependent || !x.k_dominating || x.value != phi)
                .map(|x| format!("{:?}", x.set))
                .collect();
            if sets.is_empty() {
                bad.push("no k-dependent set attains φ_k".into());
            }
            (!bad.is_empty()).then(|| bad.join("; "))
        }
        CheckKind::Reduction => {
            let t = s.set.ok_or(SuiteError::Missing("set"))?;
            let trail = reduction_trail(g, k, t);
            let last = *trail.last().expect("trail starts at t");
            let steps_ok = trail.windows(2).all(|w| {
                w[1].len() + 1 == w[0].len() && w[1].is_subset(w[0]) && phi_of(g, k, w[1]) >= phi_of(g, k, w[0])
            });
            if trail[0] != t || !steps_ok || !is_k_dependent(g, k, last) {
                Some(format!("trail {trail:?}"))
            } else {
                None
            }
        }
        CheckKind::AdjacencyLemma => {
            let x = s.need_vertex()?;
            let y = s.other.ok_or(SuiteError::Missing("other"))?;
            let r = check_val_simple(g, x, y).map_err(|e| SuiteError::Precondition(e.to_string()))?;
            (!r.holds || !r.derivation_ok).then(|| format!("{r:?}"))
        }
        CheckKind::DegreeCondition => {
            let d = s.set.ok_or(SuiteError::Missing("set"))?;
            degree_constrained_subgraph(g, k, d)
                .is_none()
                .then(|| "no subgraph of maximum degree k saturates V - D".into())
        }
        CheckKind::CandidateReplay => {
            let d = s.set.ok_or(SuiteError::Missing("set"))?;
            let cand = CounterexampleCandidate {
                graph: write_graph(g),
                k,
                d: d.iter().collect(),
                reason: String::new(),
            };
            let err = |e: crate::tuza::TuzaError| SuiteError::Precondition(e.to_string());
            let first = replay_candidate(&cand).map_err(err)?;
            let second = replay_candidate(&cand).map_err(err)?;
            (!(first && second)).then(|| format!("replays gave {first} then {second}"))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    #[test]
    fn records_round_trip_and_replay() {
        // An empty coloring of a path is not maximal, and the deficiency
        // inequality fails at the middle vertex.
        let g = named::path(3);
        let c = PartialColoring::empty(g, 1).unwrap();
        let mut report = SuiteReport::new("t");
        assert!(!report.check("d", CheckKind::DeficiencySimple, &Subject::coloring(&c), Some(3)));
        let rec = &report.falsifications[0];
        let json = serde_json::to_string(rec).unwrap();
        let back: FalsificationRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(&back, rec);
        assert_eq!(replay(&back).unwrap(), Some(rec.detail.clone()));
        assert_eq!(report.tally("d"), CheckTally { passed: 0, failed: 1 });
    }

    #[test]
    fn kind_names() {
        assert_eq!(CheckKind::LemmaOy.name(), "lemma-oy");
        assert_eq!(CheckKind::AlphiSubgraph.name(), "alphi-subgraph");
    }

    #[test]
    fn forest_helper() {
        assert!(is_forest(&named::path(5)));
        assert!(is_forest(&Multigraph::new(3).unwrap()));
        assert!(!is_forest(&named::cycle(4)));
    }

    #[test]
    fn merge_keeps_order_and_caps_controls() {
        let c = PartialColoring::empty(named::path(3), 1).unwrap();
        let mut a = SuiteReport::new("t");
        for _ in 0..20 {
            let mut part = SuiteReport::new("t");
            part.control("ctl", CheckKind::DeficiencySimple, &Subject::coloring(&c));
            part.bump("x", 2);
            a.merge(part);
        }
        assert_eq!(a.controls["ctl"].failed, 20);
        assert_eq!(a.expected_failures.len(), KEPT_CONTROLS);
        assert_eq!(a.telemetry["x"], 40);
        assert!(!a.falsified());
    }
}
