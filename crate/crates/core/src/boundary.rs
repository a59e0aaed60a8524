//! Prefixes, suffixes, and the deadlock machinery that decides them.
//!
//! A prefix `P[0..=i_2]` (or a reversed suffix) fits into a `2δ`-range, so its
//! behaviour against another such boundary is captured by its alternating
//! running extrema. Everything here is phrased in terms of a [`Closeness`]
//! predicate on parent indices, so the sweeps can drive it from a sign matrix
//! that changes one cell at a time.

use crate::error::{Error, Result};
use crate::grid::{Closeness, Numeric, Swapped};
use crate::scalar::Scalar;
use crate::series::TimeSeries;
use crate::signature::ExtendedSignature;

/// `pre(P)` or the reversed `suf(P)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Boundary {
    pub series: TimeSeries,
    /// `i_2` for a prefix, `i_{t-1}` for a suffix.
    pub anchor_index: usize,
    pub is_suffix: bool,
    /// Parent index of every boundary position.
    pub parent: Vec<usize>,
}

impl Boundary {
    pub fn prefix(p: &TimeSeries, i2: usize) -> Self {
        Boundary {
            series: p.subseries_allow_point(0, i2).expect("i_2 < n"),
            anchor_index: i2,
            is_suffix: false,
            parent: (0..=i2).collect(),
        }
    }

    pub fn suffix(p: &TimeSeries, ip: usize) -> Self {
        let n = p.len();
        Boundary {
            series: p.subseries_allow_point(ip, n - 1).expect("i_{t-1} < n").reverse(),
            anchor_index: ip,
            is_suffix: true,
            parent: (ip..n).rev().collect(),
        }
    }
}

/// `(pre(P), suf(P))` for the given signature.
pub fn boundaries(p: &TimeSeries, sig: &ExtendedSignature) -> (Boundary, Boundary) {
    (Boundary::prefix(p, sig.second()), Boundary::suffix(p, sig.penultimate()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremePointSequence {
    /// Positions within the boundary series, strictly increasing.
    pub positions: Vec<usize>,
}

impl ExtremePointSequence {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn parent_indices(&self, b: &Boundary) -> Vec<usize> {
        self.positions.iter().map(|&k| b.parent[k]).collect()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Start,
    Min,
    Max,
}

/// Canonical alternating sequence of running records of `v`. Returns `None`
/// if the last value is not a global extremum.
pub fn extreme_points(v: &[Scalar]) -> Option<Vec<usize>> {
    let n = v.len();
    let mut out = vec![0usize];
    let mut kinds = vec![Kind::Start];
    let (mut lo, mut hi) = (&v[0], &v[0]);
    for x in 1..n {
        let kind = if &v[x] > hi {
            hi = &v[x];
            Kind::Max
        } else if &v[x] < lo {
            lo = &v[x];
            Kind::Min
        } else {
            continue;
        };
        let last = out.len() - 1;
        if kinds[last] == kind {
            out[last] = x;
        } else {
            out.push(x);
            kinds.push(kind);
        }
    }
    let end = n - 1;
    if out[out.len() - 1] != end {
        let kind = if &v[end] == hi {
            Kind::Max
        } else if &v[end] == lo {
            Kind::Min
        } else {
            return None;
        };
        let last = out.len() - 1;
        if kinds[last] == kind {
            out[last] = end;
        } else {
            out.push(end);
        }
    }
    Some(out)
}

pub fn extreme_point_sequence(b: &Boundary) -> Result<ExtremePointSequence> {
    extreme_points(b.series.values())
        .map(|positions| ExtremePointSequence { positions })
        .ok_or_else(|| Error::Contract("last boundary vertex is not a global extremum".into()))
}

/// `X(k)`: the first position `l` in `b` with `close(a[k], b[l])`, or `None`
/// for ∞. `a` and `b` are parent indices.
pub fn preliminary_assignment<C: Closeness + ?Sized>(
    a: &[usize],
    b: &[usize],
    c: &C,
) -> Vec<Option<usize>> {
    a.iter().map(|&i| first_close(i, b, c)).collect()
}

fn first_close<C: Closeness + ?Sized>(i: usize, b: &[usize], c: &C) -> Option<usize> {
    b.iter().position(|&j| c.close(i, j))
}

/// `k` belongs to the deadlocked set iff `X(k)` forms a deadlock with
/// `Y(X(k) - 1)`; for `X(k) = ∞` the largest of the last two `Y` values is
/// the one to beat.
pub fn deadlock_flag(k: usize, x: &[Option<usize>], y: &[Option<usize>]) -> bool {
    let above = |v: Option<usize>| v.is_none_or(|v| v > k);
    match x[k] {
        Some(0) => false,
        Some(l) => above(y[l - 1]),
        None => {
            let q = y.len();
            above(y[q - 1]) || (q >= 2 && above(y[q - 2]))
        }
    }
}

pub fn deadlock_flags(x: &[Option<usize>], y: &[Option<usize>]) -> Vec<bool> {
    (0..x.len()).map(|k| deadlock_flag(k, x, y)).collect()
}

/// Returns a deadlocked pair `(k, l)` (positions in the two sequences) if
/// one exists. Only `O(p)` candidate pairs are inspected.
pub fn has_deadlock(x: &[Option<usize>], y: &[Option<usize>]) -> Option<(usize, usize)> {
    (0..x.len()).find(|&k| deadlock_flag(k, x, y)).map(|k| match x[k] {
        Some(l) => (k, l - 1),
        None => {
            let q = y.len();
            if y[q - 1].is_none_or(|v| v > k) {
                (k, q - 1)
            } else {
                (k, q - 2)
            }
        }
    })
}

/// Everything about one side (prefix or suffix) of both curves, in parent
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryView {
    /// Parent indices of the P boundary in boundary order.
    pub p_path: Vec<usize>,
    pub q_path: Vec<usize>,
    /// Parent indices of the extreme point sequences.
    pub p_seq: Vec<usize>,
    pub q_seq: Vec<usize>,
    /// The last entry repeats the value two entries before it (the anchor
    /// only ties an earlier extreme).
    pub p_tied: bool,
    pub q_tied: bool,
}

fn tied(b: &Boundary, seq: &[usize]) -> bool {
    let v = b.series.values();
    seq.len() >= 3 && v[seq[seq.len() - 1]] == v[seq[seq.len() - 3]]
}

impl BoundaryView {
    pub fn new(pb: &Boundary, qb: &Boundary) -> Result<Self> {
        let ps = extreme_point_sequence(pb)?.positions;
        let qs = extreme_point_sequence(qb)?.positions;
        Ok(BoundaryView {
            p_path: pb.parent.clone(),
            q_path: qb.parent.clone(),
            p_seq: ps.iter().map(|&k| pb.parent[k]).collect(),
            q_seq: qs.iter().map(|&k| qb.parent[k]).collect(),
            p_tied: tied(pb, &ps),
            q_tied: tied(qb, &qs),
        })
    }

    pub fn prefix(p: &TimeSeries, sp: &ExtendedSignature, q: &TimeSeries, sq: &ExtendedSignature) -> Self {
        Self::new(&Boundary::prefix(p, sp.second()), &Boundary::prefix(q, sq.second()))
            .expect("signature prefixes end in a global extremum")
    }

    pub fn suffix(p: &TimeSeries, sp: &ExtendedSignature, q: &TimeSeries, sq: &ExtendedSignature) -> Self {
        Self::new(&Boundary::suffix(p, sp.penultimate()), &Boundary::suffix(q, sq.penultimate()))
            .expect("signature suffixes end in a global extremum")
    }

    /// The same view with P and Q exchanged.
    pub fn swapped(&self) -> Self {
        BoundaryView {
            p_path: self.q_path.clone(),
            q_path: self.p_path.clone(),
            p_seq: self.q_seq.clone(),
            q_seq: self.p_seq.clone(),
            p_tied: self.q_tied,
            q_tied: self.p_tied,
        }
    }

    pub fn p_anchor(&self) -> usize {
        self.p_path[self.p_path.len() - 1]
    }

    pub fn q_anchor(&self) -> usize {
        self.q_path[self.q_path.len() - 1]
    }

    pub fn assignments<C: Closeness + ?Sized>(&self, c: &C) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
        (
            preliminary_assignment(&self.p_seq, &self.q_seq, c),
            preliminary_assignment(&self.q_seq, &self.p_seq, &Swapped(c)),
        )
    }
}

/// Image of a boundary is spanned by its last two sequence entries, so
/// `X` finite there means the whole image is covered by the other side.
fn last_two_finite(x: &[Option<usize>]) -> bool {
    x.iter().rev().take(2).all(Option::is_some)
}

/// `d_F(boundary P, boundary Q) <= δ`, in O(1) once the assignments and the
/// deadlock status are known.
pub fn decide_boundary<C: Closeness + ?Sized>(
    view: &BoundaryView,
    c: &C,
    x: &[Option<usize>],
    y: &[Option<usize>],
    deadlocked: bool,
) -> bool {
    !deadlocked
        && c.close(view.p_path[0], view.q_path[0])
        && c.close(view.p_anchor(), view.q_anchor())
        && last_two_finite(x)
        && last_two_finite(y)
}

/// Minimal P-boundary matcher on the Q boundary, as a parent index of Q.
///
/// The smallest boundary position `w` with `close(P anchor, Q(w))` such that
/// the image of the P boundary is covered by `δ`-balls around
/// `Q[0..=min(w + 1, end)]`.
pub fn minimal_matcher<C: Closeness + ?Sized>(
    view: &BoundaryView,
    c: &C,
    x: &[Option<usize>],
    deadlocked: bool,
) -> Option<usize> {
    if deadlocked || x.iter().any(Option::is_none) {
        return None;
    }
    let path = &view.q_path;
    let end = path.len() - 1;
    // First boundary position covering each extreme of the P image.
    let mut need = 0;
    for &e in view.p_seq.iter().rev().take(2) {
        need = need.max(path.iter().position(|&j| c.close(e, j))?);
    }
    let anchor = view.p_anchor();
    (need.saturating_sub(1)..=end).find(|&w| c.close(anchor, path[w])).map(|w| path[w])
}

/// Prefix/suffix facts that enter the modified free-space matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideSummary {
    pub deadlocked: bool,
    /// `d_F(boundary P, boundary Q) <= δ`.
    pub decided: bool,
    /// Minimal P-matcher on Q (parent index of Q).
    pub w: Option<usize>,
    /// Minimal Q-matcher on P (parent index of P).
    pub v: Option<usize>,
}

pub fn summarize<C: Closeness + ?Sized>(
    view: &BoundaryView,
    c: &C,
    x: &[Option<usize>],
    y: &[Option<usize>],
    deadlocked: bool,
) -> SideSummary {
    SideSummary {
        deadlocked,
        decided: decide_boundary(view, c, x, y, deadlocked),
        w: minimal_matcher(view, c, x, deadlocked),
        v: minimal_matcher(&view.swapped(), &Swapped(c), y, deadlocked),
    }
}

pub fn summarize_from_scratch<C: Closeness + ?Sized>(view: &BoundaryView, c: &C) -> SideSummary {
    let (x, y) = view.assignments(c);
    let deadlocked = has_deadlock(&x, &y).is_some();
    summarize(view, c, &x, &y, deadlocked)
}

/// `d_F(pb, qb) <= δ` for two boundaries given by value.
pub fn decide_boundary_frechet(pb: &Boundary, qb: &Boundary, delta: &Scalar) -> Result<bool> {
    let (view, numeric) = standalone(pb, qb, delta)?;
    let c = numeric.as_closeness();
    let (x, y) = view.assignments(&c);
    let dl = has_deadlock(&x, &y).is_some();
    Ok(decide_boundary(&view, &c, &x, &y, dl))
}

/// Minimal `pb`-matcher on `qb`, reported as a parent index of `qb`. For two
/// suffixes this is the reversed-instance index mapped back through
/// `w = (m - 1) - ŵ`.
pub fn boundary_matcher(pb: &Boundary, qb: &Boundary, delta: &Scalar) -> Result<Option<usize>> {
    let (view, numeric) = standalone(pb, qb, delta)?;
    let c = numeric.as_closeness();
    let (x, y) = view.assignments(&c);
    let dl = has_deadlock(&x, &y).is_some();
    Ok(minimal_matcher(&view, &c, &x, dl))
}

/// Minimal prefix matcher of `pb` on the first `j2 + 1` vertices of `q`.
pub fn prefix_matcher(pb: &Boundary, q: &TimeSeries, j2: usize, delta: &Scalar) -> Result<Option<usize>> {
    if j2 >= q.len() {
        return Err(Error::Index { index: j2, len: q.len() });
    }
    boundary_matcher(pb, &Boundary::prefix(q, j2), delta)
}

/// Minimal suffix matcher of `pb` on `q` from `jq` on.
pub fn suffix_matcher(pb: &Boundary, q: &TimeSeries, jq: usize, delta: &Scalar) -> Result<Option<usize>> {
    if jq >= q.len() {
        return Err(Error::Index { index: jq, len: q.len() });
    }
    boundary_matcher(pb, &Boundary::suffix(q, jq), delta)
}

/// Closeness over two boundaries addressed by parent indices of unrelated
/// parents; values are looked up by parent index.
struct Lookup {
    p: Vec<Option<Scalar>>,
    q: Vec<Option<Scalar>>,
    delta: Scalar,
}

impl Lookup {
    fn as_closeness(&self) -> impl Closeness + '_ {
        LookupRef(self)
    }
}

struct LookupRef<'a>(&'a Lookup);

impl Closeness for LookupRef<'_> {
    fn close(&self, i: usize, j: usize) -> bool {
        let a = self.0.p[i].as_ref().expect("boundary index");
        let b = self.0.q[j].as_ref().expect("boundary index");
        a.within(b, &self.0.delta)
    }
}

fn standalone(pb: &Boundary, qb: &Boundary, delta: &Scalar) -> Result<(BoundaryView, Lookup)> {
    let view = BoundaryView::new(pb, qb)?;
    let table = |b: &Boundary| {
        let len = b.parent.iter().max().map_or(0, |m| m + 1);
        let mut t = vec![None; len];
        for (k, &i) in b.parent.iter().enumerate() {
            t[i] = Some(b.series[k].clone());
        }
        t
    };
    Ok((view, Lookup { p: table(pb), q: table(qb), delta: delta.clone() }))
}

/// Direct numeric summary for one side of two full curves.
pub fn side_summary(
    p: &TimeSeries,
    q: &TimeSeries,
    view: &BoundaryView,
    delta: &Scalar,
) -> SideSummary {
    summarize_from_scratch(view, &Numeric { p: p.values(), q: q.values(), delta })
}

/// Deadlock status maintained under single-cell flips of the sign matrix.
///
/// Only the flipped pair's `X` and `Y` entries can change, and a flag `k`
/// depends only on `X(k)` and on `Y(X(k) - 1)` (or on the last two `Y`
/// entries when `X(k) = ∞`). Flags are kept in buckets keyed by `X(k)` so a
/// change of `Y(l)` re-examines exactly the dependent indices.
#[derive(Clone, Debug)]
pub struct DeadlockTracker {
    view: BoundaryView,
    p_pos: Vec<Option<usize>>,
    q_pos: Vec<Option<usize>>,
    x: Vec<Option<usize>>,
    y: Vec<Option<usize>>,
    flags: Vec<bool>,
    count: usize,
    /// `buckets[l]` holds every `k` with `X(k) = l`; the last bucket is ∞.
    buckets: Vec<Vec<usize>>,
    /// Count of assignment changes that moved by more than two positions
    /// without touching ∞ at the last two positions.
    pub jump_violations: usize,
    pub flag_checks: usize,
}

impl DeadlockTracker {
    pub fn new<C: Closeness + ?Sized>(view: BoundaryView, n: usize, m: usize, c: &C) -> Self {
        let mut p_pos = vec![None; n];
        for (k, &i) in view.p_seq.iter().enumerate() {
            p_pos[i] = Some(k);
        }
        let mut q_pos = vec![None; m];
        for (l, &j) in view.q_seq.iter().enumerate() {
            q_pos[j] = Some(l);
        }
        let (x, y) = view.assignments(c);
        let flags = deadlock_flags(&x, &y);
        let count = flags.iter().filter(|&&f| f).count();
        let q = view.q_seq.len();
        let mut buckets = vec![Vec::new(); q + 1];
        for (k, v) in x.iter().enumerate() {
            buckets[v.unwrap_or(q)].push(k);
        }
        DeadlockTracker {
            view,
            p_pos,
            q_pos,
            x,
            y,
            flags,
            count,
            buckets,
            jump_violations: 0,
            flag_checks: 0,
        }
    }

    pub fn view(&self) -> &BoundaryView {
        &self.view
    }

    pub fn x(&self) -> &[Option<usize>] {
        &self.x
    }

    pub fn y(&self) -> &[Option<usize>] {
        &self.y
    }

    pub fn flags(&self) -> &[bool] {
        &self.flags
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn deadlocked(&self) -> bool {
        self.count > 0
    }

    /// True if the pair `(i, j)` of parent indices touches both sequences.
    pub fn involves(&self, i: usize, j: usize) -> bool {
        self.p_pos.get(i).copied().flatten().is_some() && self.q_pos.get(j).copied().flatten().is_some()
    }

    /// Updates after the predicate of parent pair `(i, j)` changed; `c` must
    /// already reflect the new value. Returns true if anything changed.
    pub fn flip<C: Closeness + ?Sized>(&mut self, i: usize, j: usize, c: &C) -> bool {
        let (Some(kk), Some(ll)) = (
            self.p_pos.get(i).copied().flatten(),
            self.q_pos.get(j).copied().flatten(),
        ) else {
            return false;
        };
        let (p, q) = (self.view.p_seq.len(), self.view.q_seq.len());

        let new_x = first_close(self.view.p_seq[kk], &self.view.q_seq, c);
        let new_y = first_close(self.view.q_seq[ll], &self.view.p_seq, &Swapped(c));
        let old_x = std::mem::replace(&mut self.x[kk], new_x);
        let old_y = std::mem::replace(&mut self.y[ll], new_y);
        self.check_jump(old_x, new_x, q, self.view.q_tied);
        self.check_jump(old_y, new_y, p, self.view.p_tied);

        if old_x != new_x {
            let from = &mut self.buckets[old_x.unwrap_or(q)];
            let at = from.iter().position(|&k| k == kk).expect("bucketed");
            from.swap_remove(at);
            self.buckets[new_x.unwrap_or(q)].push(kk);
        }

        let mut touched = vec![kk];
        if old_y != new_y {
            if ll + 1 < q {
                touched.extend_from_slice(&self.buckets[ll + 1]);
            }
            if ll + 2 >= q {
                touched.extend_from_slice(&self.buckets[q]);
            }
        }
        for k in touched {
            self.flag_checks += 1;
            let f = deadlock_flag(k, &self.x, &self.y);
            if f != self.flags[k] {
                self.flags[k] = f;
                if f {
                    self.count += 1;
                } else {
                    self.count -= 1;
                }
            }
        }
        old_x != new_x || old_y != new_y
    }

    fn check_jump(&mut self, old: Option<usize>, new: Option<usize>, len: usize, tied: bool) {
        // A tied last entry is the same position as the one two before it.
        let (old, new, len) = if tied {
            let fold = |x: Option<usize>| x.map(|x| if x + 1 == len { x - 2 } else { x });
            (fold(old), fold(new), len - 1)
        } else {
            (old, new, len)
        };
        let ok = match (old, new) {
            (Some(a), Some(b)) => a.abs_diff(b) <= 2,
            (None, Some(b)) | (Some(b), None) => b + 2 >= len,
            (None, None) => true,
        };
        if !ok {
            self.jump_violations += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::compute_extended_signature;

    fn ts(v: &[&str]) -> TimeSeries {
        TimeSeries::parse(v).unwrap()
    }

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn prefix_and_suffix() {
        let p = ts(&["0.5", "0", "4", "1", "5", "4.5"]);
        let sig = compute_extended_signature(&p, &s("1"));
        let (pre, suf) = boundaries(&p, &sig);
        assert_eq!(pre.series, ts(&["0.5", "0"]));
        assert_eq!(suf.series, ts(&["4.5", "5"]));
        assert_eq!(suf.parent, vec![5, 4]);

        let mono = TimeSeries::from_ints(&[0, 1, 2]).unwrap();
        let sig = compute_extended_signature(&mono, &s("1"));
        let (pre, suf) = boundaries(&mono, &sig);
        assert_eq!(pre.series.len(), 1);
        assert_eq!(suf.series.len(), 1);
    }

    #[test]
    fn reversal_swaps_prefix_and_suffix() {
        let p = ts(&["0.5", "0", "4", "1", "5", "4.5"]);
        let sig = compute_extended_signature(&p, &s("1"));
        let (_, suf) = boundaries(&p, &sig);
        let r = p.reverse();
        let pre_r = Boundary::prefix(&r, p.len() - 1 - sig.penultimate());
        assert_eq!(pre_r.series, suf.series);
    }

    #[test]
    fn extreme_sequences() {
        let v: Vec<Scalar> = [1, 0, 2, -1, 3].map(Scalar::from_int).to_vec();
        assert_eq!(extreme_points(&v), Some(vec![0, 1, 2, 3, 4]));
        let v: Vec<Scalar> = [0, 1, 2].map(Scalar::from_int).to_vec();
        assert_eq!(extreme_points(&v), Some(vec![0, 2]));
        assert_eq!(extreme_points(&[Scalar::one()]), Some(vec![0]));
        let v: Vec<Scalar> = [0, 2, 1].map(Scalar::from_int).to_vec();
        assert_eq!(extreme_points(&v), None);
        // tie with the running maximum at the end
        let v: Vec<Scalar> = [0, 2, 1, 2].map(Scalar::from_int).to_vec();
        assert_eq!(extreme_points(&v), Some(vec![0, 3]));
        let v: Vec<Scalar> = [2, 2, 2].map(Scalar::from_int).to_vec();
        assert_eq!(extreme_points(&v), Some(vec![0, 2]));
    }

    fn pair(p: &[&str], q: &[&str]) -> (Boundary, Boundary) {
        let p = ts(p);
        let q = ts(q);
        (Boundary::prefix(&p, p.len() - 1), Boundary::prefix(&q, q.len() - 1))
    }

    #[test]
    fn opposite_boundaries_deadlock() {
        let (pb, qb) = pair(&["0", "2"], &["2", "0"]);
        let view = BoundaryView::new(&pb, &qb).unwrap();
        let c = Numeric { p: pb.series.values(), q: qb.series.values(), delta: &s("1") };
        let (x, y) = view.assignments(&c);
        assert_eq!(x[0], Some(1));
        assert_eq!(y[0], Some(1));
        assert_eq!(has_deadlock(&x, &y), Some((0, 0)));
        assert!(!decide_boundary_frechet(&pb, &qb, &s("1")).unwrap());
        assert!(decide_boundary_frechet(&pb, &pb, &Scalar::zero()).unwrap());
    }

    #[test]
    fn identical_boundaries_assign_to_start() {
        let (pb, _) = pair(&["0", "-1", "2"], &["0", "1"]);
        let view = BoundaryView::new(&pb, &pb).unwrap();
        let c = Numeric { p: pb.series.values(), q: pb.series.values(), delta: &s("3") };
        let (x, y) = view.assignments(&c);
        assert!(x.iter().all(|&v| v == Some(0)));
        assert!(has_deadlock(&x, &y).is_none());
    }

    #[test]
    fn matcher_example() {
        let pb = Boundary::prefix(&ts(&["0", "1", "2"]), 2);
        let q = ts(&["0.5", "0", "1", "2"]);
        assert_eq!(prefix_matcher(&pb, &q, 3, &s("1")).unwrap(), Some(2));
        // identical prefixes at δ = 0 need the whole prefix
        assert_eq!(prefix_matcher(&pb, &ts(&["0", "1", "2"]), 2, &Scalar::zero()).unwrap(), Some(2));
        // deadlocked
        let pb = Boundary::prefix(&ts(&["0", "2"]), 1);
        assert_eq!(prefix_matcher(&pb, &ts(&["2", "0"]), 1, &s("1")).unwrap(), None);
    }

    #[test]
    fn suffix_matcher_maps_back() {
        // Mirror image of the prefix example.
        let p = ts(&["2", "1", "0"]);
        let q = ts(&["2", "1", "0", "0.5"]);
        let pb = Boundary::suffix(&p, 0);
        assert_eq!(suffix_matcher(&pb, &q, 0, &s("1")).unwrap(), Some(1));
    }
}
