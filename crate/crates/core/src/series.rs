//! The time series value type.
//!
//! Indices are 0-based throughout the crate: a series of complexity `n` has
//! vertices `0..n`.

use std::ops::Index;

use crate::error::{Error, Result};
use crate::scalar::{Interval, Scalar};

/// A 1D polygonal curve with precomputed running extrema.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TimeSeries {
    values: Vec<Scalar>,
    prefix_min: Vec<Scalar>,
    prefix_max: Vec<Scalar>,
    suffix_min: Vec<Scalar>,
    suffix_max: Vec<Scalar>,
}

impl TimeSeries {
    /// Builds a series with at least two vertices.
    pub fn new(values: Vec<Scalar>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::Domain(format!(
                "a time series needs at least 2 vertices, got {}",
                values.len()
            )));
        }
        Ok(Self::build(values))
    }

    /// Like [`TimeSeries::new`] but also accepts a single vertex. Used for
    /// degenerate one-point prefixes and suffixes.
    pub fn new_allow_point(values: Vec<Scalar>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain("a time series needs at least 1 vertex".into()));
        }
        Ok(Self::build(values))
    }

    pub fn from_ints(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Scalar::from_int(v)).collect())
    }

    /// Parses each token as an exact rational (`"1.5"`, `"-3/4"`, `"2e-1"`).
    pub fn parse<S: AsRef<str>>(values: &[S]) -> Result<Self> {
        Self::new(values.iter().map(|s| s.as_ref().parse()).collect::<Result<_>>()?)
    }

    fn build(values: Vec<Scalar>) -> Self {
        let n = values.len();
        let mut prefix_min = Vec::with_capacity(n);
        let mut prefix_max = Vec::with_capacity(n);
        for (j, v) in values.iter().enumerate() {
            if j == 0 {
                prefix_min.push(v.clone());
                prefix_max.push(v.clone());
            } else {
                prefix_min.push(v.min_of(&prefix_min[j - 1]).clone());
                prefix_max.push(v.max_of(&prefix_max[j - 1]).clone());
            }
        }
        let mut suffix_min = values.clone();
        let mut suffix_max = values.clone();
        for j in (0..n.saturating_sub(1)).rev() {
            if suffix_min[j + 1] < suffix_min[j] {
                suffix_min[j] = suffix_min[j + 1].clone();
            }
            if suffix_max[j + 1] > suffix_max[j] {
                suffix_max[j] = suffix_max[j + 1].clone();
            }
        }
        TimeSeries { values, prefix_min, prefix_max, suffix_min, suffix_max }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; kept for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn first(&self) -> &Scalar {
        &self.values[0]
    }

    pub fn last(&self) -> &Scalar {
        &self.values[self.values.len() - 1]
    }

    fn check(&self, j: usize) -> Result<()> {
        if j >= self.len() {
            return Err(Error::Index { index: j, len: self.len() });
        }
        Ok(())
    }

    /// `P[s..=t]`. Requires `s < t`; see [`TimeSeries::subseries_allow_point`].
    pub fn subseries(&self, s: usize, t: usize) -> Result<TimeSeries> {
        if s >= t || t >= self.len() {
            return Err(Error::Range { start: s, end: t, len: self.len() });
        }
        Ok(Self::build(self.values[s..=t].to_vec()))
    }

    pub fn subseries_allow_point(&self, s: usize, t: usize) -> Result<TimeSeries> {
        if s > t || t >= self.len() {
            return Err(Error::Range { start: s, end: t, len: self.len() });
        }
        Ok(Self::build(self.values[s..=t].to_vec()))
    }

    pub fn reverse(&self) -> TimeSeries {
        Self::build(self.values.iter().rev().cloned().collect())
    }

    pub fn translate(&self, t: &Scalar) -> TimeSeries {
        Self::build(self.values.iter().map(|v| v + t).collect())
    }

    pub fn scale(&self, s: &Scalar) -> Result<TimeSeries> {
        if s.is_negative() {
            return Err(Error::Domain(format!("scale factor must be nonnegative, got {s}")));
        }
        Ok(Self::build(self.values.iter().map(|v| v * s).collect()))
    }

    /// `im(P[0..=j])` in O(1).
    pub fn prefix_image(&self, j: usize) -> Result<Interval> {
        self.check(j)?;
        Ok(Interval::new(self.prefix_min[j].clone(), self.prefix_max[j].clone()))
    }

    /// `im(P[j..n])` in O(1).
    pub fn suffix_image(&self, j: usize) -> Result<Interval> {
        self.check(j)?;
        Ok(Interval::new(self.suffix_min[j].clone(), self.suffix_max[j].clone()))
    }

    pub fn image(&self) -> Interval {
        self.prefix_image(self.len() - 1).expect("nonempty")
    }

    pub fn prefix_min(&self) -> &[Scalar] {
        &self.prefix_min
    }

    pub fn prefix_max(&self) -> &[Scalar] {
        &self.prefix_max
    }

    pub fn suffix_min(&self) -> &[Scalar] {
        &self.suffix_min
    }

    pub fn suffix_max(&self) -> &[Scalar] {
        &self.suffix_max
    }

    /// True if every vertex is zero.
    /// `max - min <= width`.
    pub fn fits_within(&self, width: &Scalar) -> bool {
        &(&self.suffix_max[0] - &self.suffix_min[0]) <= width
    }

    pub fn is_all_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }
}

impl Index<usize> for TimeSeries {
    type Output = Scalar;

    fn index(&self, j: usize) -> &Scalar {
        &self.values[j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(v: &[&str]) -> TimeSeries {
        TimeSeries::parse(v).unwrap()
    }

    #[test]
    fn rejects_single_vertex() {
        assert!(TimeSeries::from_ints(&[5]).is_err());
        assert!(TimeSeries::new_allow_point(vec![Scalar::one()]).is_ok());
    }

    #[test]
    fn slices() {
        let p = TimeSeries::from_ints(&[0, 4, 1, 5]).unwrap();
        assert_eq!(p.subseries(1, 2).unwrap(), TimeSeries::from_ints(&[4, 1]).unwrap());
        assert_eq!(p.subseries(0, 3).unwrap(), p);
        assert!(matches!(p.subseries(2, 1), Err(Error::Range { .. })));
        assert!(p.subseries(2, 4).is_err());
        assert!(p.subseries(2, 2).is_err());
        assert_eq!(p.subseries_allow_point(2, 2).unwrap().values(), &[Scalar::from_int(1)]);
    }

    #[test]
    fn reverse_translate_scale() {
        let p = TimeSeries::from_ints(&[0, 1, 2]).unwrap();
        assert_eq!(p.reverse(), TimeSeries::from_ints(&[2, 1, 0]).unwrap());
        let pal = TimeSeries::from_ints(&[5, 5]).unwrap();
        assert_eq!(pal.reverse(), pal);

        let q = TimeSeries::from_ints(&[0, 1]).unwrap();
        assert_eq!(q.translate(&Scalar::from_int(2)), TimeSeries::from_ints(&[2, 3]).unwrap());
        assert_eq!(q.scale(&Scalar::zero()).unwrap(), TimeSeries::from_ints(&[0, 0]).unwrap());
        assert_eq!(
            ts(&["1", "1.5"]).scale(&Scalar::ratio(6, 5)).unwrap(),
            ts(&["6/5", "9/5"])
        );
        assert!(matches!(q.scale(&Scalar::from_int(-1)), Err(Error::Domain(_))));
    }

    #[test]
    fn prefix_images() {
        let p = ts(&["0.5", "0", "1", "2"]);
        let iv = |a: &str, b: &str| Interval::new(a.parse().unwrap(), b.parse().unwrap());
        assert_eq!(p.prefix_image(2).unwrap(), iv("0", "1"));
        assert_eq!(p.prefix_image(0).unwrap(), iv("0.5", "0.5"));
        assert_eq!(p.prefix_image(3).unwrap(), iv("0", "2"));
        assert!(matches!(p.prefix_image(4), Err(Error::Index { index: 4, len: 4 })));
        assert_eq!(p.suffix_image(1).unwrap(), iv("0", "2"));
        assert_eq!(p.suffix_image(3).unwrap(), iv("2", "2"));
    }
}
