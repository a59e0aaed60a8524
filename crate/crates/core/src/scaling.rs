//! Fréchet distance under scaling: `min_{s >= 0} d_F(P, sQ)`.
//!
//! Scaling moves every `sQ(j)` linearly, so pair `(i, j)` is close on one
//! closed `s`-interval. Unlike translation, the signature of `sQ` changes
//! too: it is the signature of `Q` at `δ / s`, which only changes at a few
//! coarse breakpoints. The decision is constant between consecutive
//! interval ends and breakpoints, and the feasible set is closed, so those
//! values (and `s = 0`) are the only ones to check.

use crate::error::{Error, Result};
use crate::matrix::{build_parts, exact_distance, layout_for, views, Layout, Relations};
use crate::boundary::BoundaryView;
use crate::reach::{BaselineBackend, ReachabilityBackend};
use crate::scalar::Scalar;
use crate::series::TimeSeries;
use crate::signature::{compute_extended_signature, half_difference_breakpoints, ExtendedSignature};
use crate::sweep::{Flip, Recorder, SweepOutcome, SweepState};

/// Partition of `[0, ∞)` into `{0}`, `(b_0, b_1]`, …, `(b_last, ∞)` on which
/// the signature of `sQ` (and whether `sQ` fits in a `2δ` range) is constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoarseArrangement {
    /// Sorted positive breakpoints.
    pub breakpoints: Vec<Scalar>,
    /// Signature indices of `sQ` per interval; entry 0 is `s = 0`, entry `k`
    /// the interval ending at `breakpoints[k - 1]`, the last one unbounded.
    pub signatures: Vec<Vec<usize>>,
}

impl CoarseArrangement {
    /// Index into [`CoarseArrangement::signatures`] of the interval holding `s`.
    pub fn interval_of(&self, s: &Scalar) -> usize {
        if s.is_zero() {
            0
        } else {
            1 + self.breakpoints.partition_point(|b| b < s)
        }
    }
}

/// Coarse arrangement for δ > 0.
pub fn coarse_arrangement(q: &TimeSeries, delta: &Scalar) -> Result<CoarseArrangement> {
    if !delta.is_positive() {
        return Err(Error::Domain(format!("coarse arrangement needs δ > 0, got {delta}")));
    }
    Ok(coarse(q, delta))
}

/// The signature of `Q` at `h` is constant for `h ∈ [h_k, h_{k+1})` over
/// consecutive half-differences, i.e. for `s ∈ (δ/h_{k+1}, δ/h_k]`; a
/// breakpoint is kept wherever the signature or the flatness differs.
fn coarse(q: &TimeSeries, delta: &Scalar) -> CoarseArrangement {
    let zero = q.scale(&Scalar::zero()).expect("s >= 0");
    let mut signatures = vec![compute_extended_signature(&zero, delta).indices];
    let mut breakpoints = Vec::new();
    let hs = half_difference_breakpoints(q);
    let state = |h: &Scalar| (compute_extended_signature(q, h).indices, q.fits_within(&(h + h)));
    // Walk s upwards, i.e. h downwards.
    let mut current = state(&hs[hs.len() - 1]);
    if delta.is_positive() {
        for k in (0..hs.len() - 1).rev() {
            let next = state(&hs[k]);
            if next != current {
                breakpoints.push(delta / &hs[k + 1]);
                signatures.push(current.0);
                current = next;
            }
        }
    } else {
        current = state(&Scalar::zero());
    }
    signatures.push(current.0);
    CoarseArrangement { breakpoints, signatures }
}

/// Scales at which some pair enters or leaves the δ-band or the signature
/// changes, with the relation changes between consecutive ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingEvents {
    /// Starts at 0.
    pub representatives: Vec<Scalar>,
    /// `flips[k]` turns the relations at `representatives[k - 1]` into the
    /// ones at `representatives[k]`.
    pub flips: Vec<Vec<Flip>>,
}

pub fn scaling_representatives(
    p: &TimeSeries,
    q: &TimeSeries,
    delta: &Scalar,
    coarse: &CoarseArrangement,
) -> ScalingEvents {
    // Closeness interval of each pair with nonzero Q(j), and the relations
    // before and after it.
    let mut spans = Vec::new();
    for (j, b) in q.values().iter().enumerate().filter(|(_, b)| !b.is_zero()) {
        let dir: i8 = if b.is_positive() { 1 } else { -1 };
        for (i, a) in p.values().iter().enumerate() {
            let (x, y) = ((a - delta) / b, (a + delta) / b);
            let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
            spans.push((i, j, lo, hi, dir));
        }
    }
    let mut reps = vec![Scalar::zero()];
    reps.extend(coarse.breakpoints.iter().cloned());
    for (_, _, lo, hi, _) in &spans {
        reps.extend([lo, hi].into_iter().filter(|v| v.is_positive()).cloned());
    }
    reps.sort();
    reps.dedup();
    let index = |x: &Scalar| reps.binary_search(x).expect("interval end is a representative");
    let mut flips = vec![Vec::new(); reps.len()];
    for (i, j, lo, hi, dir) in spans {
        if lo.is_positive() {
            flips[index(&lo)].push(Flip { i, j, to: 0 });
        }
        if !hi.is_negative() && index(&hi) + 1 < reps.len() {
            flips[index(&hi) + 1].push(Flip { i, j, to: dir });
        }
    }
    ScalingEvents { representatives: reps, flips }
}

fn structure(
    p: &TimeSeries,
    sp: &ExtendedSignature,
    q: &TimeSeries,
    s: &Scalar,
    delta: &Scalar,
) -> (Layout, BoundaryView, BoundaryView) {
    let sq = q.scale(s).expect("s >= 0");
    let sig = compute_extended_signature(&sq, delta);
    let layout = layout_for(p, sp, &sq, &sig, delta);
    let (pre, suf) = views(p, sp, &sq, &sig);
    (layout, pre, suf)
}

/// Runs the incremental sweep over all representatives. At each coarse
/// breakpoint the signature-dependent structure is rebuilt and only the
/// resulting differences are queued. `verify` cross-checks the state against
/// a static build at every representative.
pub fn sweep_scaling(
    p: &TimeSeries,
    q: &TimeSeries,
    delta: &Scalar,
    backend: Option<&mut dyn ReachabilityBackend>,
    verify: bool,
) -> Result<(ScalingEvents, SweepOutcome)> {
    let coarse = coarse(q, delta);
    let events = scaling_representatives(p, q, delta, &coarse);
    let sp = compute_extended_signature(p, delta);
    let zero = Scalar::zero();
    let (layout, pre, suf) = structure(p, &sp, q, &zero, delta);
    let rel = Relations::new(p.values(), q.scale(&zero).expect("s >= 0").values(), delta);
    let mut rec = Recorder::new(SweepState::new(layout, pre, suf, rel));
    let mut interval = 0;
    for (s, flips) in events.representatives.iter().zip(&events.flips) {
        for &f in flips {
            rec.flip(f);
        }
        let k = coarse.interval_of(s);
        if k != interval {
            interval = k;
            let (layout, pre, suf) = structure(p, &sp, q, s, delta);
            rec.relayout(layout, pre, suf);
        }
        let fresh = verify.then(|| {
            let (mx, rel) = build_parts(p, &q.scale(s).expect("s >= 0"), delta);
            mx.lane_grid(&rel)
        });
        rec.mark(fresh.as_ref());
    }
    let outcome = rec.finish(backend)?;
    Ok((events, outcome))
}

/// Prefix and suffix deadlock-freeness at every scaling representative.
pub fn deadlock_free_scalings(p: &TimeSeries, q: &TimeSeries, delta: &Scalar) -> (Vec<bool>, Vec<bool>) {
    let (_, out) = sweep_scaling(p, q, delta, None, false).expect("no backend");
    (out.prefix_free, out.suffix_free)
}

pub fn decide_under_scaling_with(
    p: &TimeSeries,
    q: &TimeSeries,
    delta: &Scalar,
    backend: &mut dyn ReachabilityBackend,
) -> Result<(Option<Scalar>, SweepOutcome)> {
    let (events, out) = sweep_scaling(p, q, delta, Some(backend), false)?;
    let witness = out.first_accepted().map(|k| events.representatives[k].clone());
    Ok((witness, out))
}

/// Some `s >= 0` with `d_F(P, sQ) <= δ`; the witness is the smallest
/// accepted representative.
pub fn decide_under_scaling(p: &TimeSeries, q: &TimeSeries, delta: &Scalar) -> (bool, Option<Scalar>) {
    let (w, _) = decide_under_scaling_with(p, q, delta, &mut BaselineBackend::new())
        .expect("sweep updates stay inside the grid");
    (w.is_some(), w)
}

/// Values of δ at which the scaling decision can switch.
///
/// Crossings `(P(i) ± δ)/Q(j) = (P(k) ± δ)/Q(l)` of the interval-end lines,
/// the values `|P(i)|` where an end passes `s = 0`, crossings of the ends
/// with the coarse breakpoints `δ/h` (`h` a half-difference of Q), the
/// half-differences of P, and 0.
pub fn scaling_distance_candidates(p: &TimeSeries, q: &TimeSeries) -> Vec<Scalar> {
    let (pv, qv) = (p.values(), q.values());
    let nonzero: Vec<&Scalar> = qv.iter().filter(|b| !b.is_zero()).collect();
    let signs = [Scalar::one(), -Scalar::one()];
    let mut out = vec![Scalar::zero()];
    let mut keep = |d: Scalar| {
        if !d.is_negative() {
            out.push(d);
        }
    };
    // (P(i) + σδ) Q(l) = (P(k) + τδ) Q(j).
    for (x, pi) in pv.iter().enumerate() {
        for pk in &pv[x..] {
            for &qj in &nonzero {
                for &ql in &nonzero {
                    for sg in &signs {
                        for tau in &signs {
                            let coef = sg * ql - tau * qj;
                            if !coef.is_zero() {
                                keep((pk * qj - pi * ql) / coef);
                            }
                        }
                    }
                }
            }
        }
    }
    for a in pv {
        keep(a.abs());
    }
    // δ/h = (P(i) + σδ)/Q(k).
    for h in half_difference_breakpoints(q).iter().filter(|h| h.is_positive()) {
        for &qk in &nonzero {
            for a in pv {
                for sg in &signs {
                    let coef = qk - &(sg * h);
                    if !coef.is_zero() {
                        keep(h * a / coef);
                    }
                }
            }
        }
    }
    out.extend(half_difference_breakpoints(p));
    out.sort();
    out.dedup();
    out
}

/// Exact `min_{s >= 0} d_F(P, sQ)` with a witness scale.
pub fn optimize_scaling(p: &TimeSeries, q: &TimeSeries) -> (Scalar, Scalar) {
    if q.is_all_zero() {
        return (exact_distance(p, q), Scalar::zero());
    }
    let cands = scaling_distance_candidates(p, q);
    let (mut lo, mut hi) = (0, cands.len() - 1);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if decide_under_scaling(p, q, &cands[mid]).0 {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let witness = decide_under_scaling(p, q, &cands[lo]).1.expect("optimum is feasible");
    (cands[lo].clone(), witness)
}

/// `min` of both directed values.
pub fn optimize_scaling_undirected(p: &TimeSeries, q: &TimeSeries) -> Scalar {
    let a = optimize_scaling(p, q).0;
    let b = optimize_scaling(q, p).0;
    a.min(b)
}
