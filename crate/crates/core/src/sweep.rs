//! Incremental maintenance of the lane grid while vertex-pair relations
//! change one at a time.
//!
//! The state mirrors what a from-scratch build would produce: the relation
//! matrix, prefix/suffix deadlock trackers, landmarks, clause tags and the
//! lane grid itself. Every change is turned into the handful of lane-node
//! updates it causes, which are queued for an offline reachability backend.

use crate::boundary::{deadlock_flags, summarize, BoundaryView, DeadlockTracker, SideSummary};
use crate::grid::{Closeness, Grid};
use crate::matrix::{
    assemble, cell_tags, edge_lane, landmarks_from_scratch, lanes, node_active, vertex_lanes, Landmarks, Lane,
    Layout, Relations, Side,
};
use crate::error::Result;
use crate::reach::{GridUpdate, ReachabilityBackend};

/// Work caused by one change.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Cost {
    /// Matrix cells whose clause tags changed.
    pub cells: usize,
    /// Lane nodes whose activity changed (updates sent to the backend).
    pub nodes: usize,
}

/// Which parts of the incremental state disagree with a fresh build.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Mismatch {
    pub flags: bool,
    pub landmarks: bool,
    pub tags: bool,
    pub grid: bool,
}

impl Mismatch {
    pub fn any(&self) -> bool {
        self.flags || self.landmarks || self.tags || self.grid
    }
}

struct Tracked {
    tracker: DeadlockTracker,
    in_p: Vec<bool>,
    in_q: Vec<bool>,
}

impl Tracked {
    fn new(view: BoundaryView, rel: &Relations) -> Self {
        let (n, m) = (rel.rows(), rel.cols());
        let mut in_p = vec![false; n];
        let mut in_q = vec![false; m];
        view.p_path.iter().for_each(|&i| in_p[i] = true);
        view.q_path.iter().for_each(|&j| in_q[j] = true);
        Tracked { tracker: DeadlockTracker::new(view, n, m, rel), in_p, in_q }
    }

    fn summary(&self, rel: &Relations) -> SideSummary {
        let t = &self.tracker;
        summarize(t.view(), rel, t.x(), t.y(), t.deadlocked())
    }
}

pub struct SweepState {
    layout: Layout,
    rows: Vec<Lane>,
    cols: Vec<Lane>,
    rel: Relations,
    pre: Tracked,
    suf: Tracked,
    landmarks: Landmarks,
    tags: Vec<u8>,
    grid: Grid,
    updates: Vec<GridUpdate>,
    /// Counters of trackers replaced by [`SweepState::relayout`].
    retired: (usize, usize),
}

impl SweepState {
    pub fn new(layout: Layout, pre: BoundaryView, suf: BoundaryView, rel: Relations) -> Self {
        let pre = Tracked::new(pre, &rel);
        let suf = Tracked::new(suf, &rel);
        let landmarks = Landmarks { pre: pre.summary(&rel), suf: suf.summary(&rel) };
        let mx = assemble(&layout, &landmarks, &rel);
        let grid = mx.lane_grid(&rel);
        SweepState {
            rows: lanes(&layout, Side::P),
            cols: lanes(&layout, Side::Q),
            tags: mx.tag_slice().to_vec(),
            layout,
            rel,
            pre,
            suf,
            landmarks,
            grid,
            updates: Vec::new(),
            retired: (0, 0),
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn relations(&self) -> &Relations {
        &self.rel
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn updates(&self) -> &[GridUpdate] {
        &self.updates
    }

    pub fn take_updates(&mut self) -> Vec<GridUpdate> {
        std::mem::take(&mut self.updates)
    }

    /// Prefix and suffix trackers.
    pub fn trackers(&self) -> (&DeadlockTracker, &DeadlockTracker) {
        (&self.pre.tracker, &self.suf.tracker)
    }

    pub fn jump_violations(&self) -> usize {
        self.retired.0 + self.pre.tracker.jump_violations + self.suf.tracker.jump_violations
    }

    pub fn flag_checks(&self) -> usize {
        self.retired.1 + self.pre.tracker.flag_checks + self.suf.tracker.flag_checks
    }

    /// Sets the relation of pair `(i, j)`.
    pub fn set_relation(&mut self, i: usize, j: usize, r: i8) -> Cost {
        let old = self.rel.get(i, j);
        if old == r {
            return Cost::default();
        }
        self.rel.set(i, j, r);
        let mut dirty = vec![(i, j)];
        if (old == 0) != (r == 0) {
            let old_lm = self.landmarks.clone();
            let corners = [(self.layout.i2, self.layout.j2), (self.layout.ip, self.layout.jq)];
            for (side, corner) in [(&mut self.pre, corners[0]), (&mut self.suf, corners[1])] {
                side.tracker.flip(i, j, &self.rel);
                if side.in_p[i] && side.in_q[j] {
                    dirty.push(corner);
                }
            }
            self.landmarks = Landmarks { pre: self.pre.summary(&self.rel), suf: self.suf.summary(&self.rel) };
            if self.landmarks != old_lm {
                dirty.extend(old_lm.matcher_cells(&self.layout));
                dirty.extend(self.landmarks.matcher_cells(&self.layout));
                dirty.extend(corners);
            }
        }
        dirty.sort_unstable();
        dirty.dedup();

        let mut cost = Cost::default();
        for &(a, b) in &dirty {
            let t = cell_tags(&self.layout, &self.landmarks, self.rel.close(a, b), a, b);
            let slot = &mut self.tags[a * self.layout.m + b];
            if *slot != t {
                *slot = t;
                cost.cells += 1;
                cost.nodes += self.refresh_cell(a, b);
            }
        }
        cost.nodes += self.refresh_edges(i, j);
        cost
    }

    /// Re-evaluates the vertex-vertex nodes of cell `(i, j)`.
    fn refresh_cell(&mut self, i: usize, j: usize) -> usize {
        let (n, m) = (self.layout.n, self.layout.m);
        let mut count = 0;
        for r in vertex_lanes(i, n) {
            for c in vertex_lanes(j, m) {
                count += self.refresh_node(r, c) as usize;
            }
        }
        count
    }

    /// Re-evaluates the vertex-edge nodes whose proximity test reads the
    /// relation of `(i, j)`.
    fn refresh_edges(&mut self, i: usize, j: usize) -> usize {
        let (n, m) = (self.layout.n, self.layout.m);
        let mut count = 0;
        let q_edges = [j.checked_sub(1), (j + 1 < m).then_some(j)];
        for e in q_edges.into_iter().flatten() {
            for r in vertex_lanes(i, n) {
                count += self.refresh_node(r, edge_lane(e)) as usize;
            }
        }
        let p_edges = [i.checked_sub(1), (i + 1 < n).then_some(i)];
        for e in p_edges.into_iter().flatten() {
            for c in vertex_lanes(j, m) {
                count += self.refresh_node(edge_lane(e), c) as usize;
            }
        }
        count
    }

    fn refresh_node(&mut self, r: usize, c: usize) -> bool {
        let m = self.layout.m;
        let tags = &self.tags;
        let v = node_active(&self.layout, &self.rel, self.rows[r], self.cols[c], |a, b| tags[a * m + b]);
        if v == self.grid.get(r, c) {
            return false;
        }
        self.grid.set(r, c, v);
        self.updates.push(GridUpdate::set(r, c, v));
        true
    }

    /// Replaces signatures and boundaries (the relations are kept). The
    /// trackers are rebuilt; every tag and node is re-evaluated and only the
    /// differences are queued.
    pub fn relayout(&mut self, layout: Layout, pre: BoundaryView, suf: BoundaryView) -> Cost {
        let (n, m) = (layout.n, layout.m);
        self.retired = (self.jump_violations(), self.flag_checks());
        self.pre = Tracked::new(pre, &self.rel);
        self.suf = Tracked::new(suf, &self.rel);
        self.landmarks = Landmarks { pre: self.pre.summary(&self.rel), suf: self.suf.summary(&self.rel) };
        self.rows = lanes(&layout, Side::P);
        self.cols = lanes(&layout, Side::Q);
        self.layout = layout;
        let mut cost = Cost::default();
        for i in 0..n {
            for j in 0..m {
                let t = cell_tags(&self.layout, &self.landmarks, self.rel.close(i, j), i, j);
                if self.tags[i * m + j] != t {
                    self.tags[i * m + j] = t;
                    cost.cells += 1;
                }
            }
        }
        for r in 0..self.rows.len() {
            for c in 0..self.cols.len() {
                cost.nodes += self.refresh_node(r, c) as usize;
            }
        }
        cost
    }

    /// Compares the incremental state with a fresh build on the current
    /// relations.
    pub fn check(&self) -> Mismatch {
        let pre_view = self.pre.tracker.view().clone();
        let suf_view = self.suf.tracker.view().clone();
        let lm = landmarks_from_scratch(&pre_view, &suf_view, &self.rel);
        let mx = assemble(&self.layout, &lm, &self.rel);
        let flags_ok = |t: &DeadlockTracker| {
            let (x, y) = t.view().assignments(&self.rel);
            x == t.x() && y == t.y() && deadlock_flags(&x, &y) == t.flags()
        };
        Mismatch {
            flags: !flags_ok(&self.pre.tracker) || !flags_ok(&self.suf.tracker),
            landmarks: lm != self.landmarks,
            tags: mx.tag_slice() != self.tags.as_slice(),
            grid: mx.lane_grid(&self.rel) != self.grid,
        }
    }
}

/// One relation change.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flip {
    pub i: usize,
    pub j: usize,
    /// New [`relation`](crate::matrix::relation) of the pair.
    pub to: i8,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepStats {
    pub representatives: usize,
    /// Relation flips.
    pub events: usize,
    /// Matrix cells whose tags changed, over the whole sweep.
    pub cell_updates: usize,
    /// Lane-node updates fed to the backend.
    pub node_updates: usize,
    pub max_cells_per_event: usize,
    pub max_nodes_per_event: usize,
    /// Signature changes (scaling only).
    pub coarse_breakpoints: usize,
    pub max_cells_per_coarse: usize,
    pub jump_violations: usize,
    pub flag_checks: usize,
    /// Representatives where the incremental state differed from a fresh
    /// build (only counted when verifying).
    pub mismatches: usize,
    pub backend: String,
    /// Reachability cell evaluations done by the backend.
    pub cell_ops: u64,
    /// Lane-grid size, for comparing against full recomputation.
    pub grid_cells: u64,
}

#[derive(Clone, Debug)]
pub struct SweepOutcome {
    /// Reachability at every representative.
    pub accepted: Vec<bool>,
    /// No prefix / suffix deadlock at every representative.
    pub prefix_free: Vec<bool>,
    pub suffix_free: Vec<bool>,
    pub stats: SweepStats,
}

impl SweepOutcome {
    pub fn first_accepted(&self) -> Option<usize> {
        self.accepted.iter().position(|&a| a)
    }
}

/// Drives a [`SweepState`] through a schedule and collects what the backend
/// needs.
pub struct Recorder {
    state: SweepState,
    initial: Grid,
    marks: Vec<usize>,
    updates: Vec<GridUpdate>,
    prefix_free: Vec<bool>,
    suffix_free: Vec<bool>,
    stats: SweepStats,
}

impl Recorder {
    pub fn new(state: SweepState) -> Self {
        Recorder {
            initial: state.grid().clone(),
            state,
            marks: Vec::new(),
            updates: Vec::new(),
            prefix_free: Vec::new(),
            suffix_free: Vec::new(),
            stats: SweepStats::default(),
        }
    }

    pub fn state(&self) -> &SweepState {
        &self.state
    }

    pub fn flip(&mut self, f: Flip) {
        let c = self.state.set_relation(f.i, f.j, f.to);
        let s = &mut self.stats;
        s.events += 1;
        s.cell_updates += c.cells;
        s.node_updates += c.nodes;
        s.max_cells_per_event = s.max_cells_per_event.max(c.cells);
        s.max_nodes_per_event = s.max_nodes_per_event.max(c.nodes);
        self.updates.extend(self.state.take_updates());
    }

    pub fn relayout(&mut self, layout: Layout, pre: BoundaryView, suf: BoundaryView) {
        let c = self.state.relayout(layout, pre, suf);
        let s = &mut self.stats;
        s.coarse_breakpoints += 1;
        s.cell_updates += c.cells;
        s.node_updates += c.nodes;
        s.max_cells_per_coarse = s.max_cells_per_coarse.max(c.cells);
        self.updates.extend(self.state.take_updates());
    }

    /// Ends a representative. With `fresh`, the lane grid a static build
    /// produces for this representative, the whole state is cross-checked.
    pub fn mark(&mut self, fresh: Option<&Grid>) {
        if let Some(g) = fresh {
            if self.state.check().any() || g != self.state.grid() {
                self.stats.mismatches += 1;
            }
        }
        let (pre, suf) = self.state.trackers();
        self.prefix_free.push(!pre.deadlocked());
        self.suffix_free.push(!suf.deadlocked());
        self.marks.push(self.updates.len());
    }

    /// Runs the backend (if any) over the recorded stream.
    pub fn finish(self, backend: Option<&mut dyn ReachabilityBackend>) -> Result<SweepOutcome> {
        let mut stats = self.stats;
        stats.representatives = self.marks.len();
        stats.jump_violations = self.state.jump_violations();
        stats.flag_checks = self.state.flag_checks();
        stats.grid_cells = (self.initial.rows() * self.initial.cols()) as u64;
        let accepted = match backend {
            Some(b) => {
                let before = b.cell_ops();
                let answers = b.run(&self.initial, &self.updates)?;
                stats.cell_ops = b.cell_ops() - before;
                stats.backend = b.name().to_string();
                self.marks.iter().map(|&k| answers[k]).collect()
            }
            None => Vec::new(),
        };
        Ok(SweepOutcome { accepted, prefix_free: self.prefix_free, suffix_free: self.suffix_free, stats })
    }
}
