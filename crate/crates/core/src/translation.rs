//! Fréchet distance under translation: `min_t d_F(P, Q + t)`.
//!
//! Translating Q never changes either signature or any extreme point
//! sequence, only which vertex pairs are within δ. Pair `(i, j)` is close
//! exactly for `t ∈ [P(i) - Q(j) - δ, P(i) - Q(j) + δ]`, so the decision is
//! constant between consecutive interval ends and the set of feasible `t` is
//! closed: checking every interval end suffices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{build_parts, layout_for, views, Relations};
use crate::reach::{BaselineBackend, ReachabilityBackend};
use crate::scalar::Scalar;
use crate::series::TimeSeries;
use crate::signature::compute_extended_signature;
use crate::sweep::{Flip, Recorder, SweepOutcome, SweepState};

/// Translations at which some pair enters or leaves the δ-band, with the
/// relation changes between consecutive ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationEvents {
    pub representatives: Vec<Scalar>,
    /// `flips[k]` turns the relations at `representatives[k - 1]` into the
    /// ones at `representatives[k]`; `flips[0]` is empty.
    pub flips: Vec<Vec<Flip>>,
}

pub fn translation_representatives(p: &TimeSeries, q: &TimeSeries, delta: &Scalar) -> TranslationEvents {
    let mut ends = Vec::with_capacity(2 * p.len() * q.len());
    for a in p.values() {
        for b in q.values() {
            let d = a - b;
            ends.push(&d - delta);
            ends.push(&d + delta);
        }
    }
    ends.sort();
    ends.dedup();
    let index = |x: &Scalar| ends.binary_search(x).expect("interval end is a representative");
    let mut flips = vec![Vec::new(); ends.len()];
    for (i, a) in p.values().iter().enumerate() {
        for (j, b) in q.values().iter().enumerate() {
            let d = a - b;
            let enter = index(&(&d - delta));
            let leave = index(&(&d + delta));
            if enter > 0 {
                flips[enter].push(Flip { i, j, to: 0 });
            }
            if leave + 1 < ends.len() {
                flips[leave + 1].push(Flip { i, j, to: 1 });
            }
        }
    }
    TranslationEvents { representatives: ends, flips }
}

/// Runs the incremental sweep. `verify` cross-checks the state against a
/// static build at every representative.
pub fn sweep_translation(
    p: &TimeSeries,
    q: &TimeSeries,
    delta: &Scalar,
    backend: Option<&mut dyn ReachabilityBackend>,
    verify: bool,
) -> Result<(TranslationEvents, SweepOutcome)> {
    let events = translation_representatives(p, q, delta);
    let sp = compute_extended_signature(p, delta);
    let sq = compute_extended_signature(q, delta);
    let layout = layout_for(p, &sp, q, &sq, delta);
    let (pre, suf) = views(p, &sp, q, &sq);
    let t0 = &events.representatives[0];
    let rel = Relations::new(p.values(), q.translate(t0).values(), delta);
    let mut rec = Recorder::new(SweepState::new(layout, pre, suf, rel));
    for (t, flips) in events.representatives.iter().zip(&events.flips) {
        for &f in flips {
            rec.flip(f);
        }
        let fresh = verify.then(|| {
            let (mx, rel) = build_parts(p, &q.translate(t), delta);
            mx.lane_grid(&rel)
        });
        rec.mark(fresh.as_ref());
    }
    let outcome = rec.finish(backend)?;
    Ok((events, outcome))
}

/// Prefix and suffix deadlock-freeness at every representative of `events`.
pub fn deadlock_free_translations(p: &TimeSeries, q: &TimeSeries, delta: &Scalar) -> (Vec<bool>, Vec<bool>) {
    let (_, out) = sweep_translation(p, q, delta, None, false).expect("no backend");
    (out.prefix_free, out.suffix_free)
}

/// Some `t` with `d_F(P, Q + t) <= δ`, using the given backend. The witness
/// is the smallest accepted representative.
pub fn decide_under_translation_with(
    p: &TimeSeries,
    q: &TimeSeries,
    delta: &Scalar,
    backend: &mut dyn ReachabilityBackend,
) -> Result<(Option<Scalar>, SweepOutcome)> {
    let (events, out) = sweep_translation(p, q, delta, Some(backend), false)?;
    let witness = out.first_accepted().map(|k| events.representatives[k].clone());
    Ok((witness, out))
}

pub fn decide_under_translation(p: &TimeSeries, q: &TimeSeries, delta: &Scalar) -> (bool, Option<Scalar>) {
    let (w, _) = decide_under_translation_with(p, q, delta, &mut BaselineBackend::new())
        .expect("sweep updates stay inside the grid");
    (w.is_some(), w)
}

/// The multiset `{P(i) - Q(j)}`, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlignTranslations {
    pub values: Vec<Scalar>,
}

impl AlignTranslations {
    pub fn new(p: &TimeSeries, q: &TimeSeries) -> Self {
        Self::from_values(p.values().iter().flat_map(|a| q.values().iter().map(move |b| a - b)).collect())
    }

    pub fn from_values(mut values: Vec<Scalar>) -> Self {
        values.sort();
        AlignTranslations { values }
    }

    /// Number of unordered pairs.
    pub fn pairs(&self) -> usize {
        let n = self.values.len();
        n * n.saturating_sub(1) / 2
    }
}

/// The `rank`-th smallest (1-based) of `|t - t'| / 2` over unordered pairs.
///
/// Pairs form a sorted matrix (row `a`, columns `b > a`); random pivots
/// narrow a per-row window until the pivot's rank matches.
pub fn select_half_difference(t: &AlignTranslations, rank: usize) -> Result<Scalar> {
    let total = t.pairs();
    if rank == 0 || rank > total {
        return Err(Error::Index { index: rank, len: total });
    }
    let v = &t.values;
    let n = v.len();
    let mut lo: Vec<usize> = (1..=n).collect();
    let mut hi = vec![n; n];
    let mut rng = ChaCha8Rng::seed_from_u64(rank as u64);
    loop {
        let remaining: usize = (0..n).map(|a| hi[a] - lo[a]).sum();
        let mut pick = rng.gen_range(0..remaining);
        let mut a = 0;
        while pick >= hi[a] - lo[a] {
            pick -= hi[a] - lo[a];
            a += 1;
        }
        let pivot = &v[lo[a] + pick] - &v[a];
        // Per row: columns below the pivot and columns up to it.
        let mut less = vec![0; n];
        let mut leq = vec![0; n];
        for r in 0..n {
            let row = &v[r + 1..];
            less[r] = r + 1 + row.partition_point(|x| x - &v[r] < pivot);
            leq[r] = r + 1 + row.partition_point(|x| x - &v[r] <= pivot);
        }
        let count = |cut: &[usize]| (0..n).map(|r| cut[r] - (r + 1)).sum::<usize>();
        if rank <= count(&less) {
            (0..n).for_each(|r| hi[r] = hi[r].min(less[r]));
        } else if rank <= count(&leq) {
            return Ok(pivot.half());
        } else {
            (0..n).for_each(|r| lo[r] = lo[r].max(leq[r]));
        }
    }
}

/// Exact `min_t d_F(P, Q + t)` with a witness translation.
///
/// The optimum is 0 or half the distance between two alignment translations;
/// ranks of that set are binary searched, each probe selecting its value
/// without materializing the pairs.
pub fn optimize_translation(p: &TimeSeries, q: &TimeSeries) -> (Scalar, Scalar) {
    let align = AlignTranslations::new(p, q);
    let value = |r: usize| {
        if r == 0 {
            Scalar::zero()
        } else {
            select_half_difference(&align, r).expect("rank in range")
        }
    };
    let (mut lo, mut hi) = (0, align.pairs());
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if decide_under_translation(p, q, &value(mid)).0 {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let best = value(lo);
    let witness = decide_under_translation(p, q, &best).1.expect("optimum is feasible");
    (best, witness)
}
