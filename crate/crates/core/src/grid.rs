//! Dense boolean grids and the closeness predicate they encode.

use crate::scalar::Scalar;

/// `n × m` boolean matrix stored row-major (row = P index, column = Q index).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl Grid {
    pub fn new(rows: usize, cols: usize, value: bool) -> Self {
        Grid { rows, cols, bits: vec![value; rows * cols] }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> bool>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut bits = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                bits.push(f(i, j));
            }
        }
        Grid { rows, cols, bits }
    }

    /// The vertex-pair sign matrix `|P(i) - Q(j)| <= delta`.
    pub fn sign_matrix(p: &[Scalar], q: &[Scalar], delta: &Scalar) -> Self {
        Self::from_fn(p.len(), q.len(), |i, j| p[i].within(&q[j], delta))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        self.bits[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        debug_assert!(i < self.rows && j < self.cols);
        self.bits[i * self.cols + j] = v;
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }
}

/// The predicate `|P(i) - Q(j)| <= δ`, however it is represented.
pub trait Closeness {
    fn close(&self, i: usize, j: usize) -> bool;
}

impl Closeness for Grid {
    fn close(&self, i: usize, j: usize) -> bool {
        self.get(i, j)
    }
}

/// Closeness evaluated directly on vertex values.
pub struct Numeric<'a> {
    pub p: &'a [Scalar],
    pub q: &'a [Scalar],
    pub delta: &'a Scalar,
}

impl Closeness for Numeric<'_> {
    fn close(&self, i: usize, j: usize) -> bool {
        self.p[i].within(&self.q[j], self.delta)
    }
}

/// Exchanges the roles of the two curves.
pub struct Swapped<'a, C: ?Sized>(pub &'a C);

impl<C: Closeness + ?Sized> Closeness for Swapped<'_, C> {
    fn close(&self, i: usize, j: usize) -> bool {
        self.0.close(j, i)
    }
}
