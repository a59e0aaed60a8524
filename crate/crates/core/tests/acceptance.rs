//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Every expected value comes from the brute-force oracles
//! or from hand-checked worked examples.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use frechet1d::boundary::deadlock_flags;
use frechet1d::matrix::{decide_static, exact_distance, views, Relations};
use frechet1d::oracle::*;
use frechet1d::reach::BaselineBackend;
use frechet1d::scaling::{decide_under_scaling, optimize_scaling, sweep_scaling};
use frechet1d::signature::half_difference_breakpoints;
use frechet1d::sweep::SweepOutcome;
use frechet1d::translation::{decide_under_translation, decide_under_translation_with, optimize_translation, sweep_translation};
use frechet1d::{compute_drop_thresholds, compute_extended_signature, verify_signature, Scalar, TimeSeries};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn s(x: &str) -> Scalar {
    x.parse().unwrap()
}

fn ts(v: &[&str]) -> TimeSeries {
    TimeSeries::parse(v).unwrap()
}

fn family(seed: u64) -> Family {
    Family::ALL[(seed % 4) as usize]
}

fn instances(base: u64, count: u64, lens: std::ops::RangeInclusive<usize>, range: i64) -> Vec<Instance> {
    (0..count).map(|k| random_instance(base + k, lens.clone(), range, family(k))).collect()
}

fn show(i: &Instance) -> String {
    let fmt = |t: &TimeSeries| t.values().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
    format!("P=<{}> Q=<{}> δ={}", fmt(&i.p), fmt(&i.q), i.delta)
}

fn within(limit: Duration, start: Instant, detail: String) -> Verdict {
    let took = start.elapsed();
    if took < limit {
        Ok(format!("{detail} in {:.1}s", took.as_secs_f64()))
    } else {
        Err(format!("{detail} but took {:.1}s (limit {}s)", took.as_secs_f64(), limit.as_secs()))
    }
}

fn static_set() -> Vec<Instance> {
    instances(1_000, 1_200, 2..=12, 8)
}

fn static_decision() -> Verdict {
    let start = Instant::now();
    let set = static_set();
    for i in &set {
        if decide_static(&i.p, &i.q, &i.delta) != freespace_decide(&i.p, &i.q, &i.delta) {
            return Err(format!("disagreement on {}", show(i)));
        }
    }
    within(Duration::from_secs(60), start, format!("{} instances agree", set.len()))
}

fn static_value() -> Verdict {
    let set = static_set();
    for i in &set {
        let (got, want) = (exact_distance(&i.p, &i.q), freespace_distance(&i.p, &i.q));
        if got != want {
            return Err(format!("{got} vs oracle {want} on {}", show(i)));
        }
    }
    Ok(format!("{} exact values equal", set.len()))
}

fn translation_decision() -> Verdict {
    let start = Instant::now();
    let set = instances(2_000, 500, 2..=10, 8);
    for i in &set {
        let got = decide_under_translation(&i.p, &i.q, &i.delta).0;
        if got != brute_translation_decide(&i.p, &i.q, &i.delta).is_some() {
            return Err(format!("disagreement on {}", show(i)));
        }
    }
    within(Duration::from_secs(300), start, format!("{} instances agree", set.len()))
}

fn translation_value() -> Verdict {
    let (p, q) = (ts(&["0", "2"]), ts(&["0", "1"]));
    if optimize_translation(&p, &q).0 != s("1/2") {
        return Err("<0,2> vs <0,1> is not 1/2".into());
    }
    if optimize_translation(&p, &ts(&["2", "0"])).0 != s("2") {
        return Err("<0,2> vs <2,0> is not 2".into());
    }
    let set = instances(3_000, 200, 2..=8, 6);
    for i in &set {
        let (got, witness) = optimize_translation(&i.p, &i.q);
        let want = brute_translation_value(&i.p, &i.q).0;
        if got != want {
            return Err(format!("{got} vs oracle {want} on {}", show(i)));
        }
        if !freespace_decide(&i.p, &i.q.translate(&witness), &got) {
            return Err(format!("witness {witness} does not attain {got} on {}", show(i)));
        }
    }
    Ok(format!("worked examples and {} values equal", set.len()))
}

fn nonzero_q(base: u64, count: usize, lens: std::ops::RangeInclusive<usize>, range: i64) -> Vec<Instance> {
    (base..)
        .map(|k| random_instance(k, lens.clone(), range, family(k)))
        .filter(|i| !i.q.is_all_zero())
        .take(count)
        .collect()
}

fn scaling_decision() -> Verdict {
    let set = nonzero_q(4_000, 500, 2..=10, 8);
    for i in &set {
        let got = decide_under_scaling(&i.p, &i.q, &i.delta).0;
        if got != brute_scaling_decide(&i.p, &i.q, &i.delta).is_some() {
            return Err(format!("disagreement on {}", show(i)));
        }
    }
    Ok(format!("{} instances agree", set.len()))
}

fn scaling_value() -> Verdict {
    let (p, q) = (ts(&["1", "2"]), ts(&["1", "1.5"]));
    // δ_{1,1,2,2} = (P(2)Q(1) - P(1)Q(2)) / (Q(1) + Q(2)).
    let formula = (&(&p[1] * &q[0]) - &(&p[0] * &q[1])) / (&q[0] + &q[1]);
    let (value, witness) = optimize_scaling(&p, &q);
    if value != s("1/5") || formula != value || witness != s("6/5") {
        return Err(format!("worked example gave ({value}, {witness}), formula {formula}"));
    }
    let set = instances(5_000, 200, 2..=8, 6);
    for i in &set {
        let (got, witness) = optimize_scaling(&i.p, &i.q);
        let want = brute_scaling_value(&i.p, &i.q).0;
        if got != want {
            return Err(format!("{got} vs oracle {want} on {}", show(i)));
        }
        if !freespace_decide(&i.p, &i.q.scale(&witness).unwrap(), &got) {
            return Err(format!("witness {witness} does not attain {got} on {}", show(i)));
        }
    }
    Ok(format!("worked example and {} values equal", set.len()))
}

/// Per-event cell changes allowed away from coarse breakpoints.
const EVENT_CELLS: usize = 8;
/// Cells allowed per coarse breakpoint, as a multiple of `max(n, m)`.
const COARSE_FACTOR: usize = 6;

fn structural_budgets() -> Verdict {
    let (mut worst_event, mut worst_coarse) = (0, 0.0f64);
    let set = instances(6_000, 600, 2..=10, 8);
    for i in &set {
        let (n, m) = (i.p.len(), i.q.len());
        let (ev, out) = sweep_translation(&i.p, &i.q, &i.delta, None, false).map_err(|e| e.to_string())?;
        if ev.representatives.len() > 2 * n * m + 1 {
            return Err(format!("|T| = {} over 2nm+1 on {}", ev.representatives.len(), show(i)));
        }
        if out.stats.max_cells_per_event > EVENT_CELLS {
            return Err(format!("{} cells in one translation event on {}", out.stats.max_cells_per_event, show(i)));
        }
        worst_event = worst_event.max(out.stats.max_cells_per_event);
        if i.q.is_all_zero() {
            continue;
        }
        let (ev, out) = sweep_scaling(&i.p, &i.q, &i.delta, None, false).map_err(|e| e.to_string())?;
        let big = n.max(m);
        if ev.representatives.len() > 2 * n * m + n + 1 {
            return Err(format!("|S| = {} over 2nm+n+1 on {}", ev.representatives.len(), show(i)));
        }
        if out.stats.max_cells_per_event > EVENT_CELLS {
            return Err(format!("{} cells in one scaling event on {}", out.stats.max_cells_per_event, show(i)));
        }
        if out.stats.max_cells_per_coarse > COARSE_FACTOR * big {
            return Err(format!("{} cells at one coarse breakpoint on {}", out.stats.max_cells_per_coarse, show(i)));
        }
        worst_event = worst_event.max(out.stats.max_cells_per_event);
        worst_coarse = worst_coarse.max(out.stats.max_cells_per_coarse as f64 / big as f64);
    }
    Ok(format!(
        "{} instances; worst {worst_event} cells/event (limit {EVENT_CELLS}), {worst_coarse:.2}·max(n,m) per breakpoint (limit {COARSE_FACTOR})",
        set.len()
    ))
}

/// Deadlock-freeness of both sides computed from nothing but the series at
/// one transformation.
fn fresh_free(p: &TimeSeries, q: &TimeSeries, delta: &Scalar) -> (bool, bool) {
    let sp = compute_extended_signature(p, delta);
    let sq = compute_extended_signature(q, delta);
    let (pre, suf) = views(p, &sp, q, &sq);
    let rel = Relations::new(p.values(), q.values(), delta);
    let free = |v: &frechet1d::boundary::BoundaryView| {
        let (x, y) = v.assignments(&rel);
        !deadlock_flags(&x, &y).iter().any(|&f| f)
    };
    (free(&pre), free(&suf))
}

fn check_sweep(out: &SweepOutcome, reps: &[Scalar], at: impl Fn(&Scalar) -> TimeSeries, i: &Instance) -> Result<(), String> {
    if out.stats.mismatches > 0 {
        return Err(format!("{} representatives differ from a fresh build on {}", out.stats.mismatches, show(i)));
    }
    if out.stats.jump_violations > 0 {
        return Err(format!("{} assignment jumps on {}", out.stats.jump_violations, show(i)));
    }
    for (k, r) in reps.iter().enumerate() {
        let want = fresh_free(&i.p, &at(r), &i.delta);
        if (out.prefix_free[k], out.suffix_free[k]) != want {
            return Err(format!("deadlock flags differ at {r} on {}", show(i)));
        }
    }
    Ok(())
}

fn sweep_internals() -> Verdict {
    let set = instances(7_000, 320, 2..=9, 6);
    let mut reps = 0;
    for i in &set {
        let (ev, out) = sweep_translation(&i.p, &i.q, &i.delta, None, true).map_err(|e| e.to_string())?;
        check_sweep(&out, &ev.representatives, |t| i.q.translate(t), i)?;
        reps += ev.representatives.len();
        if i.q.is_all_zero() {
            continue;
        }
        let (ev, out) = sweep_scaling(&i.p, &i.q, &i.delta, None, true).map_err(|e| e.to_string())?;
        check_sweep(&out, &ev.representatives, |x| i.q.scale(x).unwrap(), i)?;
        reps += ev.representatives.len();
    }
    Ok(format!("{} instances, {reps} representatives checked", set.len()))
}

fn metamorphic() -> Verdict {
    let set = instances(8_000, 1_000, 2..=6, 5);
    for (k, i) in set.iter().enumerate() {
        let c = Scalar::ratio(k as i64 % 7 - 3, 2);
        let f = exact_distance(&i.p, &i.q);
        let dt = optimize_translation(&i.p, &i.q).0;
        if optimize_translation(&i.p, &i.q.translate(&c)).0 != dt {
            return Err(format!("translating Q by {c} changed d_T on {}", show(i)));
        }
        if optimize_translation(&i.q, &i.p).0 != dt {
            return Err(format!("d_T not symmetric on {}", show(i)));
        }
        let ds = optimize_scaling(&i.p, &i.q).0;
        let factor = Scalar::ratio(k as i64 % 5 + 1, 3);
        if optimize_scaling(&i.p, &i.q.scale(&factor).unwrap()).0 != ds {
            return Err(format!("scaling Q by {factor} changed d_S on {}", show(i)));
        }
        if dt > f || ds > f {
            return Err(format!("invariant distance above d_F on {}", show(i)));
        }
        let (lo, hi) = (i.delta.clone(), &i.delta + &Scalar::ratio(1, 2));
        let mono = |d: &dyn Fn(&Scalar) -> bool| !d(&lo) || d(&hi);
        if !mono(&|d| decide_static(&i.p, &i.q, d))
            || !mono(&|d| decide_under_translation(&i.p, &i.q, d).0)
            || !mono(&|d| decide_under_scaling(&i.p, &i.q, d).0)
        {
            return Err(format!("decision not monotone in δ on {}", show(i)));
        }
    }
    Ok(format!("{} instances × 6 relations", set.len()))
}

/// Smallest breakpoint at which `j` is missing from the signature, found by
/// bisection over the sorted breakpoints.
fn bisect_drop(p: &TimeSeries, hs: &[Scalar], keep: impl Fn(&[usize]) -> bool) -> Option<Scalar> {
    let present = |k: usize| keep(&compute_extended_signature(p, &hs[k]).indices);
    if present(hs.len() - 1) {
        return None;
    }
    if !present(0) {
        return Some(hs[0].clone());
    }
    let (mut good, mut bad) = (0, hs.len() - 1);
    while bad - good > 1 {
        let mid = (good + bad) / 2;
        if present(mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    Some(hs[bad].clone())
}

fn signatures() -> Verdict {
    let mut checked = 0;
    for k in 0..200u64 {
        let i = random_instance(9_000 + k, 2..=12, 8, family(k));
        let p = &i.p;
        for d in 0..20 {
            let delta = Scalar::ratio(d, 4);
            let sig = compute_extended_signature(p, &delta);
            if let Err(e) = verify_signature(p, &sig.indices, &delta) {
                return Err(format!("{e} at δ={delta} on {}", show(&i)));
            }
            checked += 1;
        }
        let hs = half_difference_breakpoints(p);
        let th = compute_drop_thresholds(p);
        let n = p.len();
        for j in 1..n - 1 {
            let want = bisect_drop(p, &hs, |sig| sig.contains(&j));
            if th.delta_drop[j].finite() != want.as_ref() {
                return Err(format!("drop threshold of vertex {j} is {} on {}", th.delta_drop[j], show(&i)));
            }
        }
        let first = bisect_drop(p, &hs, |sig| sig[1] == 0);
        let last = bisect_drop(p, &hs, |sig| sig[sig.len() - 2] == n - 1);
        if th.first_dup.finite() != first.as_ref() || th.last_dup.finite() != last.as_ref() {
            return Err(format!("duplicated-end thresholds differ on {}", show(&i)));
        }
        let scale = Scalar::ratio(k as i64 % 9 + 1, k as i64 % 4 + 1);
        let delta = &i.delta + &Scalar::ratio(1, 3);
        let scaled = compute_extended_signature(&p.scale(&scale).unwrap(), &delta);
        if scaled.indices != compute_extended_signature(p, &(&delta / &scale)).indices {
            return Err(format!("signature of {scale}·P differs at δ={delta} on {}", show(&i)));
        }
    }
    Ok(format!("{checked} signatures valid; thresholds and scale equivariance hold on 200 series"))
}

fn performance() -> Verdict {
    let i = random_instance(64, 64..=64, 20, Family::Uniform);
    let start = Instant::now();
    let mut backend = BaselineBackend::new();
    let (_, out) = decide_under_translation_with(&i.p, &i.q, &i.delta, &mut backend).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    let full = out.stats.representatives as u64 * out.stats.grid_cells;
    let factor = full as f64 / out.stats.cell_ops.max(1) as f64;
    let detail = format!(
        "n=m=64 in {:.2}s, {} representatives; incremental {} vs full {} cell ops (factor {factor:.1})",
        took.as_secs_f64(),
        out.stats.representatives,
        out.stats.cell_ops,
        full
    );
    if took < Duration::from_secs(10) && out.stats.cell_ops < full {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("static decision matches the free-space oracle", static_decision),
        ("exact static distance matches the oracle", static_value),
        ("decision under translation matches brute force", translation_decision),
        ("distance under translation matches brute force", translation_value),
        ("decision under scaling matches brute force", scaling_decision),
        ("distance under scaling matches brute force", scaling_value),
        ("event and update budgets", structural_budgets),
        ("incremental sweeps match fresh recomputation", sweep_internals),
        ("metamorphic relations", metamorphic),
        ("signature validity, thresholds and equivariance", signatures),
        ("performance sanity at n = 64", performance),
    ];
    let results: Vec<Verdict> = std::thread::scope(|scope| {
        let handles: Vec<_> = criteria.iter().map(|&(_, f)| scope.spawn(f)).collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err("panicked".into())))
            .collect()
    });
    let mut failed = 0;
    for (k, ((name, _), r)) in criteria.iter().zip(&results).enumerate() {
        match r {
            Ok(d) => println!("PASS  {:>2}. {name}: {d}", k + 1),
            Err(d) => {
                failed += 1;
                println!("FAIL  {:>2}. {name}: {d}", k + 1)
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
