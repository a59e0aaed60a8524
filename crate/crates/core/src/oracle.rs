//! Brute-force reference implementations.
//!
//! Nothing here shares code with the signature/matrix pipeline: the decision
//! procedure is the classic free-space diagram propagation over cell
//! boundaries, and the transformation variants evaluate it at every cell of
//! their own arrangement. Slow by design.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::Scalar;
use crate::series::TimeSeries;

type Span = Option<(Scalar, Scalar)>;

/// Parameters `b ∈ [0, 1]` with `|x - (c + b (d - c))| <= delta`.
fn free_span(x: &Scalar, c: &Scalar, d: &Scalar, delta: &Scalar) -> Span {
    let slope = d - c;
    if slope.is_zero() {
        return x.within(c, delta).then(|| (Scalar::zero(), Scalar::one()));
    }
    let a = (x - delta - c) / &slope;
    let b = (x + delta - c) / &slope;
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let lo = lo.max_of(&Scalar::zero()).clone();
    let hi = hi.min_of(&Scalar::one()).clone();
    (lo <= hi).then_some((lo, hi))
}

fn clip_from(span: &Span, from: &Scalar) -> Span {
    let (lo, hi) = span.as_ref()?;
    let lo = lo.max_of(from).clone();
    (&lo <= hi).then(|| (lo, hi.clone()))
}

fn contains(span: &Span, x: &Scalar) -> bool {
    matches!(span, Some((lo, hi)) if lo <= x && x <= hi)
}

/// Reachable parts of the boundaries on the last column of the free-space
/// diagram: for each segment `Q[j, j+1]`, the reachable parameters on the
/// line `P(n-1) × Q[j, j+1]`. A single-vertex `P` is handled directly.
pub fn reachable_on_last_column(p: &[Scalar], q: &[Scalar], delta: &Scalar) -> Vec<Span> {
    let (n, m) = (p.len(), q.len());
    assert!(n >= 1 && m >= 2);
    if !p[0].within(&q[0], delta) {
        return vec![None; m - 1];
    }
    // left[j]: reachable span on the vertical line through the current P vertex,
    // bottom[j]: reachable span on P[i, i+1] × {Q(j)}.
    let mut left: Vec<Span> = Vec::with_capacity(m - 1);
    let mut reach_top = true;
    for j in 0..m - 1 {
        let span = free_span(&p[0], &q[j], &q[j + 1], delta);
        let r = if reach_top && contains(&span, &Scalar::zero()) {
            let hi = span.as_ref().unwrap().1.clone();
            reach_top = hi == Scalar::one();
            Some((Scalar::zero(), hi))
        } else {
            reach_top = false;
            None
        };
        left.push(r);
    }
    let mut bottom_start_reach = true;
    for i in 0..n - 1 {
        // bottom boundary of the first row
        let b0 = free_span(&q[0], &p[i], &p[i + 1], delta);
        let mut bottom: Span = if bottom_start_reach && contains(&b0, &Scalar::zero()) {
            let hi = b0.as_ref().unwrap().1.clone();
            bottom_start_reach = hi == Scalar::one();
            Some((Scalar::zero(), hi))
        } else {
            bottom_start_reach = false;
            None
        };
        let mut next_left = Vec::with_capacity(m - 1);
        for j in 0..m - 1 {
            let lf = free_span(&p[i + 1], &q[j], &q[j + 1], delta);
            let bf = free_span(&q[j + 1], &p[i], &p[i + 1], delta);
            let right = if bottom.is_some() {
                lf
            } else if let Some((lo, _)) = &left[j] {
                clip_from(&lf, lo)
            } else {
                None
            };
            let top = if left[j].is_some() {
                bf
            } else if let Some((lo, _)) = &bottom {
                clip_from(&bf, lo)
            } else {
                None
            };
            next_left.push(right);
            bottom = top;
        }
        left = next_left;
    }
    left
}

/// Exact continuous Fréchet decision `d_F(P, Q) <= delta`.
pub fn freespace_decide(p: &TimeSeries, q: &TimeSeries, delta: &Scalar) -> bool {
    decide_slices(p.values(), q.values(), delta)
}

pub fn decide_slices(p: &[Scalar], q: &[Scalar], delta: &Scalar) -> bool {
    let (n, m) = (p.len(), q.len());
    if m == 1 {
        return p.iter().all(|x| x.within(&q[0], delta));
    }
    if n == 1 {
        return q.iter().all(|y| y.within(&p[0], delta));
    }
    if !p[n - 1].within(&q[m - 1], delta) {
        return false;
    }
    let last = reachable_on_last_column(p, q, delta);
    contains(&last[m - 2], &Scalar::one())
}

/// Every value at which the decision can change: vertex–vertex distances and
/// half-distances between two vertices of the same curve.
pub fn critical_values(p: &[Scalar], q: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero()];
    for a in p {
        for b in q {
            out.push(a.dist(b));
        }
    }
    for s in [p, q] {
        for x in 0..s.len() {
            for y in x + 1..s.len() {
                out.push(s[x].dist(&s[y]).half());
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Smallest element of the sorted `candidates` accepted by the monotone
/// predicate `ok`. The last candidate must be accepted.
pub fn min_accepted<F: FnMut(&Scalar) -> bool>(candidates: &[Scalar], mut ok: F) -> usize {
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if ok(&candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

pub fn freespace_distance(p: &TimeSeries, q: &TimeSeries) -> Scalar {
    let cands = critical_values(p.values(), q.values());
    let k = min_accepted(&cands, |d| freespace_decide(p, q, d));
    cands[k].clone()
}

/// Sample points covering every cell of the arrangement of `coords`: each
/// coordinate, each midpoint, and one point beyond either end.
fn arrangement_samples(mut coords: Vec<Scalar>) -> Vec<Scalar> {
    coords.sort();
    coords.dedup();
    if coords.is_empty() {
        return vec![Scalar::zero()];
    }
    let mut out = vec![&coords[0] - &Scalar::one()];
    for k in 0..coords.len() {
        out.push(coords[k].clone());
        if k + 1 < coords.len() {
            out.push(coords[k].midpoint(&coords[k + 1]));
        }
    }
    out.push(&coords[coords.len() - 1] + &Scalar::one());
    out
}

/// Decision under translation: some `t` with `d_F(P, Q + t) <= delta`.
/// Returns the smallest accepted sample as witness.
pub fn brute_translation_decide(p: &TimeSeries, q: &TimeSeries, delta: &Scalar) -> Option<Scalar> {
    let mut coords = Vec::new();
    for a in p.values() {
        for b in q.values() {
            coords.push(a - b - delta);
            coords.push(a - b + delta);
        }
    }
    arrangement_samples(coords)
        .into_iter()
        .find(|t| freespace_decide(p, &q.translate(t), delta))
}

/// `min_t d_F(P, Q + t)` by binary search over all half-differences of
/// alignment translations `P(i) - Q(j)`.
pub fn brute_translation_value(p: &TimeSeries, q: &TimeSeries) -> (Scalar, Scalar) {
    let mut align = Vec::new();
    for a in p.values() {
        for b in q.values() {
            align.push(a - b);
        }
    }
    let mut cands = vec![Scalar::zero()];
    for x in 0..align.len() {
        for y in x + 1..align.len() {
            cands.push(align[x].dist(&align[y]).half());
        }
    }
    cands.sort();
    cands.dedup();
    let k = min_accepted(&cands, |d| brute_translation_decide(p, q, d).is_some());
    let witness = brute_translation_decide(p, q, &cands[k]).expect("accepted");
    (cands[k].clone(), witness)
}

/// Decision under scaling: some `s >= 0` with `d_F(P, sQ) <= delta`.
pub fn brute_scaling_decide(p: &TimeSeries, q: &TimeSeries, delta: &Scalar) -> Option<Scalar> {
    let mut coords = vec![Scalar::zero()];
    for b in q.values() {
        if b.is_zero() {
            continue;
        }
        for a in p.values() {
            coords.push((a - delta) / b);
            coords.push((a + delta) / b);
        }
    }
    let qv = q.values();
    for x in 0..qv.len() {
        for y in x + 1..qv.len() {
            let d = qv[x].dist(&qv[y]);
            if !d.is_zero() {
                coords.push((delta + delta) / d);
            }
        }
    }
    arrangement_samples(coords)
        .into_iter()
        .filter(|s| !s.is_negative())
        .find(|s| freespace_decide(p, &q.scale(s).expect("s >= 0"), delta))
}

/// Candidate values of `min_s d_F(P, sQ)`.
pub fn scaling_candidates(p: &TimeSeries, q: &TimeSeries) -> Vec<Scalar> {
    let (pv, qv) = (p.values(), q.values());
    let mut out = vec![Scalar::zero()];
    let signs = [Scalar::one(), -Scalar::one()];
    // Crossings of (P(i) + σδ)/Q(j) = (P(k) + τδ)/Q(l).
    for i in pv {
        for j in qv.iter().filter(|x| !x.is_zero()) {
            for k in pv {
                for l in qv.iter().filter(|x| !x.is_zero()) {
                    for sg in &signs {
                        for tau in &signs {
                            let coef = sg * l - tau * j;
                            if coef.is_zero() {
                                continue;
                            }
                            let d = (k * j - i * l) / coef;
                            if !d.is_negative() {
                                out.push(d);
                            }
                        }
                    }
                }
            }
        }
    }
    // Boundaries leaving s = 0.
    out.extend(pv.iter().map(Scalar::abs));
    // Half-differences inside P.
    for x in 0..pv.len() {
        for y in x + 1..pv.len() {
            out.push(pv[x].dist(&pv[y]).half());
        }
    }
    // 2δ/|Q(j) - Q(l)| = (P(i) ± δ)/Q(k).
    for x in 0..qv.len() {
        for y in x + 1..qv.len() {
            let g = qv[x].dist(&qv[y]);
            if g.is_zero() {
                continue;
            }
            for k in qv.iter().filter(|v| !v.is_zero()) {
                for i in pv {
                    for sg in &signs {
                        let two = Scalar::from_int(2);
                        let coef = &two * k - sg * &g;
                        if coef.is_zero() {
                            continue;
                        }
                        let d = (&g * i) / coef;
                        if !d.is_negative() {
                            out.push(d);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// `min_{s >= 0} d_F(P, sQ)` with a witness scale factor.
pub fn brute_scaling_value(p: &TimeSeries, q: &TimeSeries) -> (Scalar, Scalar) {
    let mut cands = scaling_candidates(p, q);
    // s = 0 is always available, so the distance to the zero curve bounds the value.
    let zero = q.scale(&Scalar::zero()).expect("s >= 0");
    cands.push(freespace_distance(p, &zero));
    cands.sort();
    cands.dedup();
    let k = min_accepted(&cands, |d| brute_scaling_decide(p, q, d).is_some());
    let witness = brute_scaling_decide(p, q, &cands[k]).expect("accepted");
    (cands[k].clone(), witness)
}

/// Shapes of generated instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Uniform,
    /// Values drawn from a tiny set so that many distances coincide.
    NearTies,
    /// Long runs of repeated values.
    FlatRuns,
    /// Alternating spikes of height exactly `2δ`, `2δ - 1` or `2δ + 1`.
    Spikes,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Uniform, Family::NearTies, Family::FlatRuns, Family::Spikes];
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub p: TimeSeries,
    pub q: TimeSeries,
    pub delta: Scalar,
}

/// Deterministic instance with integer vertices in `[-range, range]`, lengths
/// in `lens`, and δ a multiple of 1/2 in `[0, range]`.
pub fn random_instance(
    seed: u64,
    lens: std::ops::RangeInclusive<usize>,
    range: i64,
    family: Family,
) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let delta_twice = rng.gen_range(0..=2 * range);
    let delta = Scalar::ratio(delta_twice, 2);
    let series = |rng: &mut ChaCha8Rng| {
        let n = rng.gen_range(lens.clone());
        let vals: Vec<i64> = match family {
            Family::Uniform => (0..n).map(|_| rng.gen_range(-range..=range)).collect(),
            Family::NearTies => {
                let pool = [-2, -1, 0, 1, 2].map(|v: i64| v.clamp(-range, range));
                (0..n).map(|_| pool[rng.gen_range(0..pool.len())]).collect()
            }
            Family::FlatRuns => {
                let mut out = Vec::with_capacity(n);
                while out.len() < n {
                    let v = rng.gen_range(-range..=range);
                    let run = rng.gen_range(1..=3);
                    for _ in 0..run {
                        if out.len() < n {
                            out.push(v);
                        }
                    }
                }
                out
            }
            Family::Spikes => {
                let mut v = rng.gen_range(-range..=range) / 2;
                let mut out = Vec::with_capacity(n);
                let mut up = rng.gen_bool(0.5);
                for _ in 0..n {
                    out.push(v.clamp(-range, range));
                    let h = (delta_twice + rng.gen_range(-1..=1)).max(0);
                    v = if up { v + h } else { v - h };
                    up = !up;
                }
                out
            }
        };
        TimeSeries::from_ints(&vals).expect("n >= 2")
    };
    let p = series(&mut rng);
    let q = series(&mut rng);
    Instance { p, q, delta }
}
