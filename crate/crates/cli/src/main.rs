//! `frechet1d`: exact 1D Fréchet distances from the command line.
//!
//! Every command prints one JSON object on stdout. Exit codes: 0 success,
//! 1 a "no" answer under `--exit-status`, 2 bad input, 3 oracle mismatch
//! under `--check` (or a failing self-test).

mod bench;
mod ingest;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use frechet1d::matrix::{decide_static, exact_distance};
use frechet1d::oracle;
use frechet1d::reach::backend_by_name;
use frechet1d::scaling::{decide_under_scaling_with, optimize_scaling};
use frechet1d::sweep::SweepOutcome;
use frechet1d::translation::{decide_under_translation_with, optimize_translation};
use frechet1d::{Scalar, TimeSeries};
use serde::Serialize;

use ingest::{Format, Numbers};

#[derive(Parser)]
#[command(name = "frechet1d", version, about = "Exact continuous Fréchet distance between 1D time series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Is d_F(P, Q) <= δ?
    Decide(DecideArgs),
    /// d_F(P, Q).
    Distance(PairArgs),
    /// Is there a t with d_F(P, Q + t) <= δ?
    DecideTranslation(DecideArgs),
    /// min over t of d_F(P, Q + t), with a witness t.
    TranslationDistance(PairArgs),
    /// Is there an s >= 0 with d_F(P, sQ) <= δ?
    DecideScaling(DecideArgs),
    /// min over s >= 0 of d_F(P, sQ), with a witness s.
    ScalingDistance(ScalingArgs),
    /// The same queries answered by the brute-force reference implementations.
    Oracle {
        #[command(subcommand)]
        query: Query,
    },
    /// CSV of sweep sizes and timings over seeded random instances.
    Bench(bench::BenchArgs),
    /// Runs built-in examples against the reference implementations.
    Selftest,
}

#[derive(Subcommand)]
enum Query {
    Decide(DecideArgs),
    Distance(PairArgs),
    DecideTranslation(DecideArgs),
    TranslationDistance(PairArgs),
    DecideScaling(DecideArgs),
    ScalingDistance(ScalingArgs),
}

#[derive(Args)]
struct Common {
    /// Input format; sniffed from the file extension by default.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Read vertices as doubles and decide with tolerance `--tol`.
    #[arg(long, requires = "tol")]
    float: bool,
    /// Comparison tolerance τ for `--float`: a <= b becomes a <= b + τ.
    #[arg(long, requires = "float")]
    tol: Option<String>,
    /// Reachability backend for the sweeps.
    #[arg(long, default_value = "baseline")]
    backend: String,
    /// Re-verify the result with the brute-force reference.
    #[arg(long)]
    check: bool,
    /// Exit with status 1 when a decision is "no".
    #[arg(long)]
    exit_status: bool,
    /// Report elapsed_ms as 0 so that output is byte-stable.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct PairArgs {
    p: PathBuf,
    q: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct DecideArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// Distance threshold δ >= 0 (decimal or p/q).
    #[arg(long, allow_hyphen_values = true)]
    delta: String,
}

#[derive(Args)]
struct ScalingArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// Minimize over scaling either series instead of only Q.
    #[arg(long)]
    undirected: bool,
}

#[derive(Serialize, Default)]
struct Stats {
    events: usize,
    cell_updates: usize,
    backend: String,
    elapsed_ms: u64,
}

#[derive(Serialize, Default)]
struct Report {
    command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    decision: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    distance: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
    /// Which series the witness scales (undirected scaling only).
    #[serde(skip_serializing_if = "Option::is_none")]
    scaled: Option<&'static str>,
    stats: Stats,
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Input(String),
    #[error("oracle mismatch: {0}")]
    Mismatch(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Mismatch(_) => 3,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Variant {
    Static,
    Translation,
    Scaling,
}

/// Everything a query needs after parsing.
struct Job {
    name: String,
    variant: Variant,
    p: TimeSeries,
    q: TimeSeries,
    /// Already widened by τ in float mode.
    delta: Option<Scalar>,
    float: bool,
    backend: String,
    check: bool,
    exit_status: bool,
    no_timing: bool,
    undirected: bool,
}

fn parse_scalar(what: &str, text: &str) -> Result<Scalar, Failure> {
    let v: Scalar = text.parse().map_err(|_| Failure::Input(format!("{what}: not a number: {text:?}")))?;
    if v.is_negative() {
        return Err(Failure::Input(format!("{what} must be nonnegative, got {text}")));
    }
    Ok(v)
}

impl Job {
    fn new(name: &str, variant: Variant, pair: &PairArgs, delta: Option<&str>, undirected: bool) -> Result<Job, Failure> {
        let c = &pair.common;
        let numbers = if c.float { Numbers::Float } else { Numbers::Exact };
        let read = |path: &PathBuf| {
            ingest::ingest(path, c.format, numbers).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
        };
        let tol = match &c.tol {
            Some(t) => parse_scalar("--tol", t)?,
            None => Scalar::zero(),
        };
        let delta = delta.map(|d| parse_scalar("--delta", d).map(|d| &d + &tol)).transpose()?;
        if backend_by_name(&c.backend).is_none() {
            return Err(Failure::Input(format!("unknown backend {:?} (expected baseline or naive)", c.backend)));
        }
        Ok(Job {
            name: name.to_string(),
            variant,
            p: read(&pair.p)?,
            q: read(&pair.q)?,
            delta,
            float: c.float,
            backend: c.backend.clone(),
            check: c.check,
            exit_status: c.exit_status,
            no_timing: c.no_timing,
            undirected,
        })
    }

    fn render(&self, v: &Scalar) -> String {
        if self.float {
            v.to_f64().to_string()
        } else {
            v.to_string()
        }
    }

    fn sweep(&self, p: &TimeSeries, q: &TimeSeries, delta: &Scalar) -> Result<(Option<Scalar>, SweepOutcome), Failure> {
        let mut backend = backend_by_name(&self.backend).expect("checked at parse time");
        let run = match self.variant {
            Variant::Translation => decide_under_translation_with(p, q, delta, backend.as_mut()),
            Variant::Scaling => decide_under_scaling_with(p, q, delta, backend.as_mut()),
            Variant::Static => unreachable!("static queries do not sweep"),
        };
        run.map_err(|e| Failure::Input(e.to_string()))
    }

    fn sweep_stats(out: &SweepOutcome) -> Stats {
        Stats { events: out.stats.events, cell_updates: out.stats.cell_updates, backend: out.stats.backend.clone(), elapsed_ms: 0 }
    }

    fn static_stats(&self) -> Stats {
        Stats { events: 0, cell_updates: self.p.len() * self.q.len(), backend: "none".into(), elapsed_ms: 0 }
    }

    fn solve(&self) -> Result<Report, Failure> {
        let (p, q) = (&self.p, &self.q);
        let mut r = Report { command: self.name.clone(), ..Report::default() };
        match (self.variant, &self.delta) {
            (Variant::Static, Some(d)) => {
                let yes = decide_static(p, q, d);
                if self.check && yes != oracle::freespace_decide(p, q, d) {
                    return Err(Failure::Mismatch(format!("decision {yes} disagrees with the free-space oracle")));
                }
                r.decision = Some(yes);
                r.stats = self.static_stats();
            }
            (Variant::Static, None) => {
                let d = exact_distance(p, q);
                if self.check && d != oracle::freespace_distance(p, q) {
                    return Err(Failure::Mismatch(format!("distance {d} disagrees with the free-space oracle")));
                }
                r.distance = Some(self.render(&d));
                r.stats = self.static_stats();
            }
            (_, Some(d)) => {
                let (witness, out) = self.sweep(p, q, d)?;
                if self.check {
                    let want = match self.variant {
                        Variant::Translation => oracle::brute_translation_decide(p, q, d),
                        _ => oracle::brute_scaling_decide(p, q, d),
                    };
                    if want.is_some() != witness.is_some() {
                        return Err(Failure::Mismatch(format!(
                            "decision {} disagrees with the brute-force oracle",
                            witness.is_some()
                        )));
                    }
                }
                r.decision = Some(witness.is_some());
                r.witness = witness.as_ref().map(|w| self.render(w));
                r.stats = Self::sweep_stats(&out);
            }
            (Variant::Translation, None) => {
                let (d, t) = optimize_translation(p, q);
                if self.check && d != oracle::brute_translation_value(p, q).0 {
                    return Err(Failure::Mismatch(format!("distance {d} disagrees with the brute-force oracle")));
                }
                let (_, out) = self.sweep(p, q, &d)?;
                r.distance = Some(self.render(&d));
                r.witness = Some(self.render(&t));
                r.stats = Self::sweep_stats(&out);
            }
            (Variant::Scaling, None) => {
                let (mut d, mut s) = optimize_scaling(p, q);
                let (mut a, mut b) = (p, q);
                if self.undirected {
                    let (d2, s2) = optimize_scaling(q, p);
                    if d2 < d {
                        (d, s, a, b) = (d2, s2, q, p);
                        r.scaled = Some("P");
                    } else {
                        r.scaled = Some("Q");
                    }
                }
                if self.check {
                    let mut want = oracle::brute_scaling_value(p, q).0;
                    if self.undirected {
                        want = want.min(oracle::brute_scaling_value(q, p).0);
                    }
                    if d != want {
                        return Err(Failure::Mismatch(format!("distance {d} disagrees with the brute-force oracle")));
                    }
                }
                let (_, out) = self.sweep(a, b, &d)?;
                r.distance = Some(self.render(&d));
                r.witness = Some(self.render(&s));
                r.stats = Self::sweep_stats(&out);
            }
        }
        Ok(r)
    }

    fn solve_oracle(&self) -> Report {
        let (p, q) = (&self.p, &self.q);
        let mut r = Report { command: format!("oracle {}", self.name), ..Report::default() };
        let mut witness = None;
        match (self.variant, &self.delta) {
            (Variant::Static, Some(d)) => r.decision = Some(oracle::freespace_decide(p, q, d)),
            (Variant::Static, None) => r.distance = Some(self.render(&oracle::freespace_distance(p, q))),
            (Variant::Translation, Some(d)) => {
                witness = oracle::brute_translation_decide(p, q, d);
                r.decision = Some(witness.is_some());
            }
            (Variant::Scaling, Some(d)) => {
                witness = oracle::brute_scaling_decide(p, q, d);
                r.decision = Some(witness.is_some());
            }
            (Variant::Translation, None) => {
                let (d, t) = oracle::brute_translation_value(p, q);
                r.distance = Some(self.render(&d));
                witness = Some(t);
            }
            (Variant::Scaling, None) => {
                let (mut d, mut s) = oracle::brute_scaling_value(p, q);
                if self.undirected {
                    let (d2, s2) = oracle::brute_scaling_value(q, p);
                    r.scaled = Some(if d2 < d { "P" } else { "Q" });
                    if d2 < d {
                        (d, s) = (d2, s2);
                    }
                }
                r.distance = Some(self.render(&d));
                witness = Some(s);
            }
        }
        r.witness = witness.as_ref().map(|w| self.render(w));
        r.stats = Stats { backend: "oracle".into(), ..Stats::default() };
        r
    }
}

fn job(name: &str, query: &Query) -> Result<Job, Failure> {
    match query {
        Query::Decide(a) => Job::new(name, Variant::Static, &a.pair, Some(&a.delta), false),
        Query::Distance(a) => Job::new(name, Variant::Static, a, None, false),
        Query::DecideTranslation(a) => Job::new(name, Variant::Translation, &a.pair, Some(&a.delta), false),
        Query::TranslationDistance(a) => Job::new(name, Variant::Translation, a, None, false),
        Query::DecideScaling(a) => Job::new(name, Variant::Scaling, &a.pair, Some(&a.delta), false),
        Query::ScalingDistance(a) => Job::new(name, Variant::Scaling, &a.pair, None, a.undirected),
    }
}

fn query_name(q: &Query) -> &'static str {
    match q {
        Query::Decide(_) => "decide",
        Query::Distance(_) => "distance",
        Query::DecideTranslation(_) => "decide-translation",
        Query::TranslationDistance(_) => "translation-distance",
        Query::DecideScaling(_) => "decide-scaling",
        Query::ScalingDistance(_) => "scaling-distance",
    }
}

fn emit(r: &Report) {
    println!("{}", serde_json::to_string(r).expect("report serializes"));
}

fn run_query(query: Query, use_oracle: bool) -> Result<u8, Failure> {
    let job = job(query_name(&query), &query)?;
    let start = Instant::now();
    let mut report = if use_oracle { job.solve_oracle() } else { job.solve()? };
    if !job.no_timing {
        report.stats.elapsed_ms = start.elapsed().as_millis() as u64;
    }
    emit(&report);
    Ok(if job.exit_status && report.decision == Some(false) { 1 } else { 0 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let query = match cli.command {
        Command::Decide(a) => Query::Decide(a),
        Command::Distance(a) => Query::Distance(a),
        Command::DecideTranslation(a) => Query::DecideTranslation(a),
        Command::TranslationDistance(a) => Query::TranslationDistance(a),
        Command::DecideScaling(a) => Query::DecideScaling(a),
        Command::ScalingDistance(a) => Query::ScalingDistance(a),
        Command::Oracle { query } => return finish(run_query(query, true)),
        Command::Bench(a) => return finish(bench::run(&a).map_err(Failure::Input)),
        Command::Selftest => return ExitCode::from(selftest::run()),
    };
    finish(run_query(query, false))
}

fn finish(r: Result<u8, Failure>) -> ExitCode {
    match r {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("frechet1d: {e}");
            ExitCode::from(e.code())
        }
    }
}
