//! Extended δ-signatures and the thresholds at which signature vertices
//! disappear.
//!
//! The signature keeps every feature of the series that is taller than `2δ`,
//! anchored at both endpoints. The first and last index may appear twice
//! (`i_1 = i_2 = 0` or `i_{t-1} = i_t = n - 1`) when the prefix or suffix
//! degenerates to a single point.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::TimeSeries;

/// A nonnegative value that may be infinite.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended {
    Finite(Scalar),
    Infinite,
}

impl Extended {
    pub fn finite(&self) -> Option<&Scalar> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinite)
    }

    /// `x < self`.
    pub fn exceeds(&self, x: &Scalar) -> bool {
        match self {
            Extended::Finite(v) => x < v,
            Extended::Infinite => true,
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => write!(f, "{v}"),
            Extended::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedSignature {
    pub indices: Vec<usize>,
    pub delta: Scalar,
}

impl ExtendedSignature {
    /// Number of entries `t`, counting duplicated ends twice.
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// `i_2`, the last vertex of the prefix.
    pub fn second(&self) -> usize {
        self.indices[1]
    }

    /// `i_{t-1}`, the first vertex of the suffix.
    pub fn penultimate(&self) -> usize {
        self.indices[self.indices.len() - 2]
    }

    /// Per-vertex membership mask over `0..n`.
    pub fn membership(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &i in &self.indices {
            mask[i] = true;
        }
        mask
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }
}

/// Canonical extended δ-signature, computed in one left-to-right pass.
pub fn compute_extended_signature(p: &TimeSeries, delta: &Scalar) -> ExtendedSignature {
    let eps = delta + delta;
    let v = p.values();
    let n = v.len();

    let mut lo = 0usize; // latest argmin so far
    let mut hi = 0usize; // latest argmax so far
    let mut start = None;
    for x in 1..n {
        if &v[x] - &v[lo] > eps {
            start = Some((x, lo, true));
            break;
        }
        if &v[hi] - &v[x] > eps {
            start = Some((x, hi, false));
            break;
        }
        if v[x] <= v[lo] {
            lo = x;
        }
        if v[x] >= v[hi] {
            hi = x;
        }
    }

    let Some((x, first, mut up)) = start else {
        return flat_signature(p, delta);
    };
    let first = opener(v, first);

    let mut indices = vec![0, first];
    let mut cand = x;
    for y in x + 1..n {
        if up {
            if v[y] >= v[cand] {
                cand = y;
            } else if &v[cand] - &v[y] > eps {
                indices.push(cand);
                up = false;
                cand = y;
            }
        } else if v[y] <= v[cand] {
            cand = y;
        } else if &v[y] - &v[cand] > eps {
            indices.push(cand);
            up = true;
            cand = y;
        }
    }
    indices.push(cand);
    indices.push(n - 1);
    ExtendedSignature { indices, delta: delta.clone() }
}

/// Series whose whole range is at most `2δ`: a single monotone feature
/// between the extremes.
fn flat_signature(p: &TimeSeries, delta: &Scalar) -> ExtendedSignature {
    let v = p.values();
    let n = v.len();
    // Latest extremes, matching the tie rule of the non-flat pass so that
    // signatures only lose vertices as δ grows.
    let (mut lo, mut hi) = (0, 0);
    for j in 1..n {
        if v[j] <= v[lo] {
            lo = j;
        }
        if v[j] >= v[hi] {
            hi = j;
        }
    }
    let indices = if v[lo] == v[hi] {
        vec![0, 0, n - 1, n - 1]
    } else {
        vec![0, opener(v, lo.min(hi)), lo.max(hi), n - 1]
    };
    ExtendedSignature { indices, delta: delta.clone() }
}

/// An opening extreme tied with the start is the start itself.
fn opener(v: &[Scalar], i: usize) -> usize {
    if v[i] == v[0] {
        0
    } else {
        i
    }
}

/// The clause of the signature definition that a candidate violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignatureViolation {
    /// Wrong anchors or ordering of the index sequence.
    Shape,
    NonDegenerate,
    Monotone,
    MinEdgeLength,
    Range,
}

impl fmt::Display for SignatureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignatureViolation::Shape => "shape",
            SignatureViolation::NonDegenerate => "non-degenerate",
            SignatureViolation::Monotone => "2δ-monotone",
            SignatureViolation::MinEdgeLength => "minimum edge length",
            SignatureViolation::Range => "range",
        })
    }
}

/// Checks every clause of the definition by direct scans; returns the first
/// violated one.
///
/// Duplicated end indices (`i_1 = i_2` or `i_{t-1} = i_t`) are exempt from
/// the non-degeneracy clause.
pub fn verify_signature(
    p: &TimeSeries,
    indices: &[usize],
    delta: &Scalar,
) -> std::result::Result<(), SignatureViolation> {
    use SignatureViolation::*;
    let v = p.values();
    let n = v.len();
    let t = indices.len();
    let eps = delta + delta;

    if t < 2 || indices[0] != 0 || indices[t - 1] != n - 1 || indices.iter().any(|&i| i >= n) {
        return Err(Shape);
    }
    for k in 0..t - 1 {
        let dup_allowed = k == 0 || k == t - 2;
        let ok = indices[k] < indices[k + 1] || (dup_allowed && indices[k] == indices[k + 1]);
        if !ok {
            return Err(Shape);
        }
    }

    for k in 1..t - 1 {
        let (a, b, c) = (indices[k - 1], indices[k], indices[k + 1]);
        if a == b || b == c {
            continue;
        }
        let (lo, hi) = if v[a] <= v[c] { (&v[a], &v[c]) } else { (&v[c], &v[a]) };
        if lo <= &v[b] && &v[b] <= hi {
            return Err(NonDegenerate);
        }
    }

    for k in 0..t - 1 {
        let seg = &v[indices[k]..=indices[k + 1]];
        if !is_monotone(seg, &eps, true) && !is_monotone(seg, &eps, false) {
            return Err(Monotone);
        }
    }

    if t > 4 {
        for k in 1..=t - 3 {
            if v[indices[k]].dist(&v[indices[k + 1]]) <= eps {
                return Err(MinEdgeLength);
            }
        }
    }

    for k in 1..t.saturating_sub(2) {
        let (a, b) = (indices[k], indices[k + 1]);
        let (lo, hi) = if v[a] <= v[b] { (&v[a], &v[b]) } else { (&v[b], &v[a]) };
        if v[a..=b].iter().any(|x| x < lo || x > hi) {
            return Err(Range);
        }
    }
    if !within_one_sided(&v[..=indices[1]], &v[indices[1]], &eps)
        || !within_one_sided(&v[indices[t - 2]..], &v[indices[t - 2]], &eps)
    {
        return Err(Range);
    }
    Ok(())
}

/// `P(s) <= P(s') + eps` for all `s < s'` (or the decreasing analogue).
fn is_monotone(seg: &[Scalar], eps: &Scalar, increasing: bool) -> bool {
    let mut ext = &seg[0];
    for x in &seg[1..] {
        if increasing {
            if ext - x > *eps {
                return false;
            }
            if x > ext {
                ext = x;
            }
        } else {
            if x - ext > *eps {
                return false;
            }
            if x < ext {
                ext = x;
            }
        }
    }
    true
}

/// `seg ⊂ [anchor, anchor + eps]` or `seg ⊂ [anchor - eps, anchor]`.
fn within_one_sided(seg: &[Scalar], anchor: &Scalar, eps: &Scalar) -> bool {
    let above = seg.iter().all(|x| x >= anchor && x - anchor <= *eps);
    let below = seg.iter().all(|x| x <= anchor && anchor - x <= *eps);
    above || below
}

/// Per-vertex thresholds: vertex `j` is a δ'-signature vertex iff
/// `δ' < delta_drop[j]`.
///
/// `first_dup` / `last_dup` play the same role for the degenerate ends: the
/// signature starts with `0, 0` iff `δ' < first_dup`, and ends with
/// `n-1, n-1` iff `δ' < last_dup`. Together with the vertex thresholds they
/// determine the whole signature at every δ'.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DropThresholds {
    pub delta_drop: Vec<Extended>,
    pub first_dup: Extended,
    pub last_dup: Extended,
}

impl DropThresholds {
    /// Reassembles the signature at `delta` from the thresholds alone.
    pub fn signature_at(&self, delta: &Scalar) -> Vec<usize> {
        let n = self.delta_drop.len();
        let mut out = vec![0];
        if self.first_dup.exceeds(delta) {
            out.push(0);
        }
        out.extend((1..n - 1).filter(|&j| self.delta_drop[j].exceeds(delta)));
        if self.last_dup.exceeds(delta) {
            out.push(n - 1);
        }
        out.push(n - 1);
        out
    }
}

/// Sorted distinct values `{|P(a) - P(b)| / 2} ∪ {0}`. The canonical signature
/// is constant on every half-open gap `[h_k, h_{k+1})` because the
/// construction only compares value differences against `2δ` with `>`.
pub fn half_difference_breakpoints(p: &TimeSeries) -> Vec<Scalar> {
    let v = p.values();
    let mut hs = vec![Scalar::zero()];
    for a in 0..v.len() {
        for b in a + 1..v.len() {
            hs.push(v[a].dist(&v[b]).half());
        }
    }
    hs.sort();
    hs.dedup();
    hs
}

/// Drop thresholds of every vertex.
///
/// Walks the breakpoints of [`half_difference_breakpoints`] in increasing
/// order, jumping over runs with an unchanged signature by galloping search,
/// and records where each vertex (and each duplicated end) disappears.
pub fn compute_drop_thresholds(p: &TimeSeries) -> DropThresholds {
    let n = p.len();
    let hs = half_difference_breakpoints(p);
    let sig_at = |k: usize| compute_extended_signature(p, &hs[k]).indices;

    let mut delta_drop = vec![Extended::Infinite; n];
    let mut first_dup = Extended::Infinite;
    let mut last_dup = Extended::Infinite;

    let mut k = 0;
    let mut current = sig_at(0);
    for (j, slot) in delta_drop.iter_mut().enumerate().take(n - 1).skip(1) {
        if !current.contains(&j) {
            *slot = Extended::Finite(Scalar::zero());
        }
    }
    if !is_first_dup(&current) {
        first_dup = Extended::Finite(Scalar::zero());
    }
    if !is_last_dup(&current) {
        last_dup = Extended::Finite(Scalar::zero());
    }

    while k + 1 < hs.len() {
        // Largest index in [k, len) whose signature still equals `current`.
        let mut step = 1;
        let mut good = k;
        let mut bad = hs.len();
        while good + step < hs.len() {
            if sig_at(good + step) == current {
                good += step;
                step *= 2;
            } else {
                bad = good + step;
                break;
            }
        }
        while bad - good > 1 {
            let mid = good + (bad - good) / 2;
            if sig_at(mid) == current {
                good = mid;
            } else {
                bad = mid;
            }
        }
        if bad == hs.len() {
            break;
        }
        let next = sig_at(bad);
        let h = &hs[bad];
        for &j in &current {
            if j != 0 && j != n - 1 && !next.contains(&j) && delta_drop[j].is_infinite() {
                delta_drop[j] = Extended::Finite(h.clone());
            }
        }
        if is_first_dup(&current) && !is_first_dup(&next) && first_dup.is_infinite() {
            first_dup = Extended::Finite(h.clone());
        }
        if is_last_dup(&current) && !is_last_dup(&next) && last_dup.is_infinite() {
            last_dup = Extended::Finite(h.clone());
        }
        k = bad;
        current = next;
    }

    DropThresholds { delta_drop, first_dup, last_dup }
}

fn is_first_dup(sig: &[usize]) -> bool {
    sig.len() >= 2 && sig[1] == 0
}

fn is_last_dup(sig: &[usize]) -> bool {
    let t = sig.len();
    t >= 2 && sig[t - 2] == sig[t - 1]
}

/// Thresholds in scale space for a fixed δ: `sQ(j)` is a δ-signature vertex of
/// `sQ` iff `s > scale[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingThresholds {
    pub scale: Vec<Extended>,
    pub first_dup: Extended,
    pub last_dup: Extended,
}

impl ScalingThresholds {
    /// Signature index list of `sQ` for `s > 0`.
    pub fn signature_at(&self, s: &Scalar) -> Vec<usize> {
        let n = self.scale.len();
        let above = |e: &Extended| match e {
            Extended::Finite(v) => s > v,
            Extended::Infinite => false,
        };
        let mut out = vec![0];
        if above(&self.first_dup) {
            out.push(0);
        }
        out.extend((1..n - 1).filter(|&j| above(&self.scale[j])));
        if above(&self.last_dup) {
            out.push(n - 1);
        }
        out.push(n - 1);
        out
    }

    /// Distinct finite thresholds in increasing order, always including 0.
    pub fn breakpoints(&self) -> Vec<Scalar> {
        let mut out: Vec<Scalar> = self
            .scale
            .iter()
            .chain([&self.first_dup, &self.last_dup])
            .filter_map(|e| e.finite().cloned())
            .collect();
        out.push(Scalar::zero());
        out.sort();
        out.dedup();
        out
    }
}

/// `s_j = δ / δ_j`, with `δ_j = ∞ ↦ 0` and `δ_j = 0 ↦ ∞`.
///
/// Duplicated ends follow the same rule: the signature of `sQ` starts with
/// `0, 0` iff `s > first_dup`.
pub fn scaling_thresholds(q: &TimeSeries, delta: &Scalar) -> Result<ScalingThresholds> {
    if !delta.is_positive() {
        return Err(Error::Domain(format!("scaling thresholds need δ > 0, got {delta}")));
    }
    Ok(scaling_from_drop(&compute_drop_thresholds(q), delta))
}

pub fn scaling_from_drop(drop: &DropThresholds, delta: &Scalar) -> ScalingThresholds {
    let conv = |e: &Extended| match e {
        Extended::Infinite => Extended::Finite(Scalar::zero()),
        Extended::Finite(d) if d.is_zero() => Extended::Infinite,
        Extended::Finite(d) => Extended::Finite(delta / d),
    };
    ScalingThresholds {
        scale: drop.delta_drop.iter().map(conv).collect(),
        first_dup: conv(&drop.first_dup),
        last_dup: conv(&drop.last_dup),
    }
}
