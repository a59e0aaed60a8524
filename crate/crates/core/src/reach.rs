//! Offline dynamic grid reachability.
//!
//! A grid of active/inactive cells is given together with the complete list
//! of activate/deactivate updates. After every update prefix we report
//! whether the top corner `(n-1, m-1)` is reachable from `(0, 0)` through
//! active cells by steps `(+1, 0)`, `(0, +1)` and `(+1, +1)`.

use crate::error::{Error, Result};
use crate::grid::Grid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UpdateKind {
    Activate,
    Deactivate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GridUpdate {
    pub kind: UpdateKind,
    pub i: usize,
    pub j: usize,
}

impl GridUpdate {
    pub fn activate(i: usize, j: usize) -> Self {
        GridUpdate { kind: UpdateKind::Activate, i, j }
    }

    pub fn deactivate(i: usize, j: usize) -> Self {
        GridUpdate { kind: UpdateKind::Deactivate, i, j }
    }

    pub fn set(i: usize, j: usize, value: bool) -> Self {
        if value {
            Self::activate(i, j)
        } else {
            Self::deactivate(i, j)
        }
    }

    pub fn value(&self) -> bool {
        self.kind == UpdateKind::Activate
    }
}

/// A solver for the offline problem. Implementations may preprocess the
/// whole update list before answering.
pub trait ReachabilityBackend {
    fn name(&self) -> &'static str;

    /// One answer per prefix, starting with the initial grid (length
    /// `updates.len() + 1`).
    fn run(&mut self, initial: &Grid, updates: &[GridUpdate]) -> Result<Vec<bool>>;

    /// Cell evaluations of the reachability recurrence performed so far.
    fn cell_ops(&self) -> u64;
}

/// Reachability of every cell from `(0, 0)`.
pub fn reach_table(g: &Grid) -> Grid {
    let (n, m) = (g.rows(), g.cols());
    let mut r = Grid::new(n, m, false);
    for i in 0..n {
        for j in 0..m {
            r.set(i, j, eval(g, &r, i, j));
        }
    }
    r
}

fn eval(g: &Grid, r: &Grid, i: usize, j: usize) -> bool {
    if !g.get(i, j) {
        return false;
    }
    if i == 0 && j == 0 {
        return true;
    }
    (i > 0 && r.get(i - 1, j)) || (j > 0 && r.get(i, j - 1)) || (i > 0 && j > 0 && r.get(i - 1, j - 1))
}

/// `(n-1, m-1)` reachable from `(0, 0)`.
pub fn reachable(g: &Grid) -> bool {
    reach_table(g).get(g.rows() - 1, g.cols() - 1)
}

fn validate(initial: &Grid, updates: &[GridUpdate]) -> Result<()> {
    for u in updates {
        if u.i >= initial.rows() {
            return Err(Error::Index { index: u.i, len: initial.rows() });
        }
        if u.j >= initial.cols() {
            return Err(Error::Index { index: u.j, len: initial.cols() });
        }
    }
    Ok(())
}

/// Keeps the reachability table and repairs only the region dominated by a
/// changed cell, row by row, stopping as soon as a row is unaffected.
#[derive(Debug, Default)]
pub struct BaselineBackend {
    ops: u64,
}

impl BaselineBackend {
    pub fn new() -> Self {
        Self::default()
    }
}

impl ReachabilityBackend for BaselineBackend {
    fn name(&self) -> &'static str {
        "baseline"
    }

    fn run(&mut self, initial: &Grid, updates: &[GridUpdate]) -> Result<Vec<bool>> {
        validate(initial, updates)?;
        let (n, m) = (initial.rows(), initial.cols());
        let mut g = initial.clone();
        let mut r = reach_table(&g);
        self.ops += (n * m) as u64;
        let mut out = Vec::with_capacity(updates.len() + 1);
        out.push(r.get(n - 1, m - 1));
        for u in updates {
            if g.get(u.i, u.j) != u.value() {
                g.set(u.i, u.j, u.value());
                self.ops += repair(&g, &mut r, u.i, u.j);
            }
            out.push(r.get(n - 1, m - 1));
        }
        Ok(out)
    }

    fn cell_ops(&self) -> u64 {
        self.ops
    }
}

/// Recomputes cells dominated by `(i0, j0)`; returns the number evaluated.
///
/// In each row only columns fed by a changed cell of the row below (or by a
/// changed left neighbour) are evaluated; the sweep ends at the first row
/// without changes.
fn repair(g: &Grid, r: &mut Grid, i0: usize, j0: usize) -> u64 {
    let (n, m) = (g.rows(), g.cols());
    let mut ops = 0u64;
    // Columns whose inputs may have changed in the current row.
    let mut window = (j0, j0);
    for i in i0..n {
        let mut changed: Option<(usize, usize)> = None;
        let mut left_changed = false;
        for j in window.0..m {
            if j > window.1 && !left_changed {
                break;
            }
            ops += 1;
            let v = eval(g, r, i, j);
            left_changed = v != r.get(i, j);
            if left_changed {
                r.set(i, j, v);
                changed = Some(changed.map_or((j, j), |(lo, _)| (lo, j)));
            }
        }
        match changed {
            Some((lo, hi)) => window = (lo, (hi + 1).min(m - 1)),
            None => break,
        }
    }
    ops
}

/// Recomputes the whole table after every update. Reference for the other
/// backends.
#[derive(Debug, Default)]
pub struct NaiveBackend {
    ops: u64,
}

impl NaiveBackend {
    pub fn new() -> Self {
        Self::default()
    }
}

impl ReachabilityBackend for NaiveBackend {
    fn name(&self) -> &'static str {
        "naive"
    }

    fn run(&mut self, initial: &Grid, updates: &[GridUpdate]) -> Result<Vec<bool>> {
        validate(initial, updates)?;
        let mut g = initial.clone();
        let cells = (g.rows() * g.cols()) as u64;
        let mut out = Vec::with_capacity(updates.len() + 1);
        out.push(reachable(&g));
        self.ops += cells;
        for u in updates {
            g.set(u.i, u.j, u.value());
            out.push(reachable(&g));
            self.ops += cells;
        }
        Ok(out)
    }

    fn cell_ops(&self) -> u64 {
        self.ops
    }
}

/// Backend by name: `"baseline"` or `"naive"`.
pub fn backend_by_name(name: &str) -> Option<Box<dyn ReachabilityBackend>> {
    match name {
        "baseline" => Some(Box::new(BaselineBackend::new())),
        "naive" => Some(Box::new(NaiveBackend::new())),
        _ => None,
    }
}

/// Runs the baseline backend.
pub fn offline_reachability(initial: &Grid, updates: &[GridUpdate]) -> Result<Vec<bool>> {
    BaselineBackend::new().run(initial, updates)
}
