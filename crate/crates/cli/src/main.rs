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

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use ecolab::coloring::{
    color_forest_bound, color_ore, color_vizing, maximal_colorable_subgraph, shuffled_order,
    BoundColoring, ColoringError,
};
use ecolab::deficiency::DeficiencyReport;
use ecolab::format::{parse_graph6, parse_graph_auto, to_graph6, write_coloring, write_graph};
use ecolab::graph::{random_multigraph, Multigraph};
use ecolab::named;
use ecolab::suite::{self, Budget, Exhaustive, FalsificationRecord, Sampled, SuiteReport};
use ecolab::tuza::{replay_candidate, tau_nu_join, validate_join, CounterexampleCandidate, TuzaError, TuzaInstance};

#[derive(Parser)]
#[command(name = "ecolab", version, about = "Edge-coloring laboratory for small multigraphs")]
struct Cli {
    /// Time budget in seconds for suite runs; unfinished instances are reported as skipped.
    #[arg(long, global = true, env = suite::TIME_BUDGET_ENV)]
    time_budget: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Bound {
    /// Δ + μ colors
    Vizing,
    /// max d(v) + μ(v) colors
    Ore,
    /// max d(v) + μ(v) − 1 colors; G* must be a forest after merging parallel edges
    Forest,
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    /// d_F(v) ≤ d_M(v) for every maximal M
    Simple,
    /// the U-sum inequality and its slack order
    Main,
    /// Δ(G[F]) ≤ k − 1 on simple hosts
    Maxdelta,
    /// adjacency lemma at critical edges of class-2 graphs
    Val,
    /// auxiliary digraph lemmas
    Lemmas,
    /// Vizing and Ore colorers
    Colorers,
    /// forest-hypothesis colorer
    Forest,
    /// τ and ν of joins against the oracles
    Join,
    /// 2α'_k ≥ k|V| − φ_k
    Alphi,
    /// k-optimal witnesses and the reduction
    Koptimal,
}

#[derive(Subcommand)]
enum Command {
    /// Color a graph within a classical bound.
    Color {
        /// Graph file, graph6 string, or a name such as K4, C5, K2,3.
        input: String,
        #[arg(long, value_enum, default_value = "vizing")]
        bound: Bound,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Grow a maximal k-edge-colorable subgraph and print its deficiency data.
    Maximal {
        input: String,
        #[arg(long)]
        k: u32,
        /// Shuffle the edge order with this seed; default is the natural order.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite, or replay recorded failures.
    Verify {
        #[arg(long, value_enum, default_value = "simple")]
        theorem: Theorem,
        /// Exhaustive mode over all graphs up to this many vertices.
        #[arg(long)]
        exhaustive: Option<usize>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Largest vertex count in sampled mode.
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Largest k.
        #[arg(long)]
        k: Option<u32>,
        /// Largest multiplicity.
        #[arg(long)]
        mult: Option<u32>,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Replay a failure record, or every failure in a report.
        #[arg(long, conflicts_with = "exhaustive")]
        replay: Option<PathBuf>,
    },
    /// τ and ν of I_k ∨ H for a triangle-free H.
    Tuza {
        #[arg(long)]
        k: u32,
        /// Graph file, graph6 string, or name.
        #[arg(long)]
        h: String,
    },
    /// Search every k-optimal set of every small simple graph.
    Conjecture {
        /// Largest vertex count.
        #[arg(long)]
        n: usize,
        /// Largest k.
        #[arg(long)]
        k: u32,
        /// Where counterexample candidates are written, if any are found.
        #[arg(long, default_value = "conjecture-candidates.json")]
        out: PathBuf,
        /// Replay a candidate file instead of sweeping.
        #[arg(long, conflicts_with = "out")]
        replay: Option<PathBuf>,
    },
    /// Generate graphs.
    Gen {
        #[command(subcommand)]
        what: Gen,
    },
}

#[derive(Subcommand)]
enum Gen {
    /// One seeded random multigraph in the text format.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        mult: u32,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
    },
    /// All graphs up to isomorphism on exactly n vertices, one graph6 line each.
    Corpus {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        triangle_free: bool,
    },
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

fn input_error(err: impl Into<anyhow::Error>) -> Failure {
    Failure { code: 1, err: err.into() }
}

fn precondition(err: impl Into<anyhow::Error>) -> Failure {
    Failure { code: 2, err: err.into() }
}

type Outcome = Result<u8, Failure>;

const FALSIFIED: u8 = 3;

fn read_input(arg: &str) -> anyhow::Result<Option<String>> {
    if arg == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(Some(s));
    }
    let path = Path::new(arg);
    if path.exists() {
        return fs::read_to_string(path)
            .map(Some)
            .with_context(|| format!("reading {arg}"));
    }
    Ok(None)
}

fn load_graph(arg: &str) -> Result<Multigraph, Failure> {
    if let Some(text) = read_input(arg).map_err(input_error)? {
        return parse_graph_auto(&text).map_err(|e| input_error(anyhow!("{arg}: {e}")));
    }
    if let Some(g) = named::by_name(arg) {
        return g.map_err(input_error);
    }
    parse_graph6(arg).map_err(|_| input_error(anyhow!("{arg}: no such file, graph name, or graph6 string")))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => io::stdout().write_all(text.as_bytes()).map_err(Into::into),
    }
    .map_err(input_error)
}

fn cmd_color(input: &str, bound: Bound, out: Option<&Path>) -> Outcome {
    let g = load_graph(input)?;
    let result: Result<BoundColoring, ColoringError> = match bound {
        Bound::Vizing => color_vizing(&g),
        Bound::Ore => color_ore(&g),
        Bound::Forest => color_forest_bound(&g),
    };
    let b = match result {
        Ok(b) => b,
        Err(ColoringError::NoEdges) => {
            emit("k 0\n", out)?;
            return Ok(0);
        }
        Err(e @ ColoringError::Hypothesis(_)) => return Err(precondition(e)),
        Err(e) => return Err(Failure { code: FALSIFIED, err: e.into() }),
    };
    emit(&write_coloring(&b.coloring), out)?;
    eprintln!(
        "colors used {} of {}; augmented {}, exact fallbacks {}",
        b.coloring.colors_used(),
        b.coloring.k(),
        b.telemetry.augmented,
        b.telemetry.exact_fallbacks
    );
    Ok(0)
}

fn cmd_maximal(input: &str, k: u32, seed: Option<u64>, out: Option<&Path>) -> Outcome {
    let g = load_graph(input)?;
    let order = match seed {
        Some(s) => shuffled_order(&g, s),
        None => g.edges().collect(),
    };
    let cert = maximal_colorable_subgraph(&g, k, &order).map_err(precondition)?;
    emit(&write_coloring(cert.coloring()), out)?;
    let report = DeficiencyReport::observe(cert.coloring());
    eprintln!("|E(M)| = {} of {}; F = {:?}", cert.coloring().colored_count(), g.edge_count(), report.f);
    for r in &report.records {
        eprintln!(
            "v {}: d_M {} d_F {} U {:?} U-sum {} slack {} / {}",
            r.v, r.d_m, r.d_f, r.u_k, r.u_sum, r.slack_simple, r.slack_main
        );
    }
    Ok(0)
}

fn print_summary(r: &SuiteReport) {
    for (name, t) in &r.checks {
        println!("{name}: {} passed, {} failed", t.passed, t.failed);
    }
    for (name, t) in &r.controls {
        println!("control {name}: {} expected failure(s), {} held", t.failed, t.passed);
    }
    for (key, v) in &r.telemetry {
        println!("telemetry {key}: {v}");
    }
    for note in &r.notes {
        println!("note: {note}");
    }
    for f in &r.falsifications {
        println!("FALSIFIED {}: {}", f.label, f.detail);
    }
}

fn finish(report: &SuiteReport, out: Option<&Path>, started: Instant) -> Outcome {
    print_summary(report);
    if let Some(p) = out {
        emit(&report.to_json(), Some(p))?;
    }
    eprintln!("elapsed {:.2}s", started.elapsed().as_secs_f64());
    Ok(if report.falsified() { FALSIFIED } else { 0 })
}

fn replay_file(path: &Path) -> Outcome {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(input_error)?;
    let records: Vec<FalsificationRecord> = match serde_json::from_str::<FalsificationRecord>(&text) {
        Ok(r) => vec![r],
        Err(_) => {
            let report: SuiteReport = serde_json::from_str(&text)
                .map_err(|e| input_error(anyhow!("{}: not a record or report: {e}", path.display())))?;
            report.falsifications.into_iter().chain(report.expected_failures).collect()
        }
    };
    let mut still_failing = 0;
    for r in &records {
        match suite::replay(r).map_err(input_error)? {
            Some(detail) => {
                still_failing += 1;
                println!("{} still fails: {detail}", r.label);
            }
            None => println!("{} now passes", r.label),
        }
    }
    Ok(if still_failing > 0 { FALSIFIED } else { 0 })
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    theorem: Theorem,
    exhaustive: Option<usize>,
    seed: u64,
    n: usize,
    trials: usize,
    k: Option<u32>,
    mult: Option<u32>,
    out: Option<&Path>,
    budget: &Budget,
) -> Outcome {
    let started = Instant::now();
    let ex = |default_n: usize| Exhaustive {
        max_n: exhaustive.unwrap_or(default_n),
        max_mult: mult.unwrap_or(2),
        max_k: k.unwrap_or(4),
    };
    let sampled = |simple: bool| Sampled {
        seed,
        trials,
        max_n: n,
        max_mult: if simple { 1 } else { mult.unwrap_or(3) },
        max_k: k.unwrap_or(if simple { 3 } else { 5 }),
    };
    let report = match theorem {
        Theorem::Simple | Theorem::Main | Theorem::Maxdelta => match exhaustive {
            Some(_) => suite::theorem_simple_exhaustive(&ex(4), budget),
            None => suite::theorem_main_sampled(&sampled(false), budget),
        },
        Theorem::Lemmas => suite::lemmas_exhaustive(&ex(4), budget),
        Theorem::Val => suite::adjacency_lemma_exhaustive(exhaustive.unwrap_or(n.min(6)), budget),
        Theorem::Colorers => suite::colorer_bounds(&sampled(false), budget),
        Theorem::Forest => suite::forest_bounds(&sampled(false), budget),
        Theorem::Join => suite::join_exhaustive(exhaustive.unwrap_or(n.min(6)), k.unwrap_or(3), budget),
        Theorem::Alphi => suite::alphi_sampled(&sampled(true), 3, budget),
        Theorem::Koptimal => suite::k_optimal_sampled(&sampled(true), budget),
    };
    finish(&report, out, started)
}

fn tuza_error(e: TuzaError) -> Failure {
    match e {
        TuzaError::ScaleGuard { .. } => input_error(e),
        _ => precondition(e),
    }
}

fn cmd_tuza(k: u32, h: &str) -> Outcome {
    let h = load_graph(h)?;
    let inst = TuzaInstance::new(k, h).map_err(tuza_error)?;
    let r = tau_nu_join(&inst).map_err(tuza_error)?;
    println!("tau {}", r.tau);
    println!("nu {}", r.nu);
    println!("phi_k {} with k-optimal set {:?}", r.phi, r.k_optimal_set);
    let edges: Vec<String> = r.alpha_witness.iter().map(|e| format!("{}-{}", e.v, e.w)).collect();
    println!("alpha'_k {} via {}", r.alpha, edges.join(" "));
    println!("tau <= 2 nu: {}", r.tau_le_2nu);
    match validate_join(&inst) {
        Ok(v) => {
            println!(
                "oracles tau {} nu {}; cross-check {}",
                v.tau_oracle,
                v.nu_oracle,
                if v.all_ok() { "OK" } else { "FAILED" }
            );
            if !v.all_ok() {
                println!("{v:?}");
                return Ok(FALSIFIED);
            }
        }
        Err(e) => println!("cross-check skipped: {e}"),
    }
    Ok(if r.tau_le_2nu { 0 } else { FALSIFIED })
}

fn cmd_conjecture(max_n: usize, max_k: u32, out: &Path, budget: &Budget) -> Outcome {
    let started = Instant::now();
    let report = suite::conjecture_sweep(max_n, max_k, budget, |n, part| {
        let t = |key: &str| part.telemetry.get(key).copied().unwrap_or(0);
        println!(
            "n={n}: {} instances, {} k-optimal sets, {} candidates",
            t("instances"),
            t("k-optimal-sets"),
            t("candidates")
        );
    });
    if report.candidates.is_empty() {
        println!("no counterexample for n <= {max_n}, k <= {max_k}");
    } else {
        let json = serde_json::to_string_pretty(&report.candidates).expect("candidates serialize");
        emit(&json, Some(out))?;
        println!(
            "{} counterexample candidate(s) written to {}",
            report.candidates.len(),
            out.display()
        );
    }
    finish(&report, None, started)
}

fn replay_candidates(path: &Path) -> Outcome {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(input_error)?;
    let cands: Vec<CounterexampleCandidate> = serde_json::from_str(&text)
        .map_err(|e| input_error(anyhow!("{}: {e}", path.display())))?;
    for (i, c) in cands.iter().enumerate() {
        let fails = replay_candidate(c).map_err(tuza_error)?;
        println!(
            "candidate {i} (k = {}, D = {:?}): {}",
            c.k,
            c.d,
            if fails { "still has no witness" } else { "now has a witness" }
        );
    }
    Ok(0)
}

fn cmd_gen(what: Gen) -> Outcome {
    match what {
        Gen::Random { seed, n, mult, p } => {
            let g = random_multigraph(seed, n, mult, p).map_err(input_error)?;
            emit(&write_graph(&g), None)?;
        }
        Gen::Corpus { n, triangle_free } => {
            if n == 0 || n > 8 {
                return Err(input_error(anyhow!("corpus size must be in 1..=8")));
            }
            let mut text = String::new();
            for g in ecolab::enumerate::nonisomorphic_simple_graphs(n) {
                if !triangle_free || ecolab::tuza::is_triangle_free(&g) {
                    text.push_str(&to_graph6(&g).expect("simple"));
                    text.push('\n');
                }
            }
            emit(&text, None)?;
        }
    }
    Ok(0)
}

fn run(cli: Cli) -> Outcome {
    let budget = cli.time_budget.map_or_else(Budget::unlimited, Budget::seconds);
    match cli.command {
        Command::Color { input, bound, out } => cmd_color(&input, bound, out.as_deref()),
        Command::Maximal { input, k, seed, out } => cmd_maximal(&input, k, seed, out.as_deref()),
        Command::Verify { replay: Some(path), .. } => replay_file(&path),
        Command::Verify {
            theorem,
            exhaustive,
            seed,
            n,
            trials,
            k,
            mult,
            out,
            replay: None,
        } => cmd_verify(theorem, exhaustive, seed, n, trials, k, mult, out.as_deref(), &budget),
        Command::Tuza { k, h } => cmd_tuza(k, &h),
        Command::Conjecture { replay: Some(path), .. } => replay_candidates(&path),
        Command::Conjecture { n, k, out, replay: None } => cmd_conjecture(n, k, &out, &budget),
        Command::Gen { what } => cmd_gen(what),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}
