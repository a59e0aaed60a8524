//! The modified free-space matrix and the static decision procedure.
//!
//! Entry `(i, j)` is 1 when the pair can be part of a monotone traversal of
//! the signature vertices: either neither vertex is a signature vertex, or
//! they are close and not inside a prefix/suffix corner block, or one of the
//! corner conditions decided by the boundary machinery holds. Reachability of
//! the top corner through 1-entries decides `d_F(P, Q) <= δ`.

use crate::boundary::{summarize_from_scratch, BoundaryView, SideSummary};
use crate::grid::{Closeness, Grid};
use crate::reach::reachable;
use crate::scalar::Scalar;
use crate::series::TimeSeries;
use crate::signature::{compute_extended_signature, ExtendedSignature};

/// Bit flags recording which clauses made an entry 1.
pub mod tag {
    /// Neither vertex is a signature vertex.
    pub const NON_SIGNATURE: u8 = 1;
    /// Close and outside both corner blocks.
    pub const CLOSE: u8 = 1 << 1;
    /// Close at `(0, 0)` or `(n-1, m-1)`.
    pub const ENDPOINT: u8 = 1 << 2;
    /// Close at `(i_2, j_2)` and the prefixes match.
    pub const PREFIX: u8 = 1 << 3;
    /// Close at `(i_{t-1}, j_{u-1})` and the suffixes match.
    pub const SUFFIX: u8 = 1 << 4;
    /// One of the four minimal-matcher landmarks.
    pub const MATCHER: u8 = 1 << 5;
    /// All clauses that make a matrix entry 1.
    pub const ENTRY: u8 = (1 << 6) - 1;
    /// Close at a corner pair `(i_2, j_2)` / `(i_{t-1}, j_{u-1})` while the
    /// Q-side landmark of that corner exists: the P vertex may be matched
    /// here ahead of the Q vertex's landmark match.
    pub const EARLY_ROW: u8 = 1 << 6;
    /// The mirror of [`EARLY_ROW`] for the Q vertex.
    pub const EARLY_COL: u8 = 1 << 7;
}

/// Signature-dependent positions of the matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub n: usize,
    pub m: usize,
    pub p_member: Vec<bool>,
    pub q_member: Vec<bool>,
    pub i2: usize,
    pub j2: usize,
    /// `i_{t-1}` of P.
    pub ip: usize,
    /// Penultimate signature index of Q.
    pub jq: usize,
    /// The series fits in a `2δ` range.
    pub p_flat: bool,
    pub q_flat: bool,
}

impl Layout {
    pub fn new(n: usize, m: usize, sp: &[usize], sq: &[usize]) -> Self {
        let mask = |len: usize, s: &[usize]| {
            let mut v = vec![false; len];
            for &i in s {
                v[i] = true;
            }
            v
        };
        Layout {
            n,
            m,
            p_member: mask(n, sp),
            q_member: mask(m, sq),
            i2: sp[1],
            j2: sq[1],
            ip: sp[sp.len() - 2],
            jq: sq[sq.len() - 2],
            p_flat: false,
            q_flat: false,
        }
    }

    pub fn in_corner(&self, i: usize, j: usize) -> bool {
        (i <= self.i2 && j <= self.j2) || (i >= self.ip && j >= self.jq)
    }

    /// The edge `(e, e + 1)` of the other series leaves both corner blocks
    /// when seen from `vertex` of series `side`.
    pub fn edge_outside_corners(&self, side: Side, vertex: usize, e: usize) -> bool {
        let (second, penult, other_second, other_penult) = match side {
            Side::P => (self.i2, self.ip, self.j2, self.jq),
            Side::Q => (self.j2, self.jq, self.i2, self.ip),
        };
        !(vertex <= second && e < other_second) && !(vertex >= penult && e + 1 > other_penult)
    }
}

/// Prefix and suffix facts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Landmarks {
    pub pre: SideSummary,
    pub suf: SideSummary,
}

impl Landmarks {
    /// The (up to four) matcher cells that are 1 regardless of closeness.
    pub fn matcher_cells(&self, l: &Layout) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(4);
        if let Some(w) = self.pre.w {
            out.push((l.i2, w));
        }
        if let Some(v) = self.pre.v {
            out.push((v, l.j2));
        }
        if let Some(w) = self.suf.w {
            out.push((l.ip, w));
        }
        if let Some(v) = self.suf.v {
            out.push((v, l.jq));
        }
        out
    }
}

/// Clause tags of one entry given the closeness of its pair.
pub fn cell_tags(l: &Layout, lm: &Landmarks, close: bool, i: usize, j: usize) -> u8 {
    let mut t = 0;
    if !l.p_member[i] && !l.q_member[j] {
        t |= tag::NON_SIGNATURE;
    }
    if close {
        if !l.in_corner(i, j) {
            t |= tag::CLOSE;
        }
        if (i, j) == (0, 0) || (i, j) == (l.n - 1, l.m - 1) {
            t |= tag::ENDPOINT;
        }
        if (i, j) == (l.i2, l.j2) && lm.pre.decided {
            t |= tag::PREFIX;
        }
        if (i, j) == (l.ip, l.jq) && lm.suf.decided {
            t |= tag::SUFFIX;
        }
        for (corner, side) in [((l.i2, l.j2), &lm.pre), ((l.ip, l.jq), &lm.suf)] {
            if (i, j) == corner {
                if side.v.is_some() {
                    t |= tag::EARLY_ROW;
                }
                if side.w.is_some() {
                    t |= tag::EARLY_COL;
                }
            }
        }
    }
    if lm.matcher_cells(l).contains(&(i, j)) {
        t |= tag::MATCHER;
    }
    t
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModifiedFreeSpaceMatrix {
    pub layout: Layout,
    pub landmarks: Landmarks,
    tags: Vec<u8>,
}

impl ModifiedFreeSpaceMatrix {
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.tags(i, j) & tag::ENTRY != 0
    }

    pub fn tags(&self, i: usize, j: usize) -> u8 {
        self.tags[i * self.layout.m + j]
    }

    pub fn to_grid(&self) -> Grid {
        Grid::from_fn(self.layout.n, self.layout.m, |i, j| self.get(i, j))
    }

    pub fn reachable(&self) -> bool {
        reachable(&self.to_grid())
    }
}

/// Builds the matrix from a closeness predicate and precomputed structure.
pub fn assemble<C: Closeness + ?Sized>(l: &Layout, lm: &Landmarks, c: &C) -> ModifiedFreeSpaceMatrix {
    let mut tags = Vec::with_capacity(l.n * l.m);
    for i in 0..l.n {
        for j in 0..l.m {
            tags.push(cell_tags(l, lm, c.close(i, j), i, j));
        }
    }
    ModifiedFreeSpaceMatrix { layout: l.clone(), landmarks: lm.clone(), tags }
}

/// Boundary views of both sides for the given signatures.
pub fn views(
    p: &TimeSeries,
    sp: &ExtendedSignature,
    q: &TimeSeries,
    sq: &ExtendedSignature,
) -> (BoundaryView, BoundaryView) {
    (BoundaryView::prefix(p, sp, q, sq), BoundaryView::suffix(p, sp, q, sq))
}

pub fn landmarks_from_scratch<C: Closeness + ?Sized>(
    pre: &BoundaryView,
    suf: &BoundaryView,
    c: &C,
) -> Landmarks {
    Landmarks { pre: summarize_from_scratch(pre, c), suf: summarize_from_scratch(suf, c) }
}

/// Position of `q` relative to the band `[p - δ, p + δ]`: `-1` below, `0`
/// inside, `1` above.
pub fn relation(p: &Scalar, q: &Scalar, delta: &Scalar) -> i8 {
    if q < &(p - delta) {
        -1
    } else if q > &(p + delta) {
        1
    } else {
        0
    }
}

/// [`relation`] for every vertex pair. Closeness and edge proximity are both
/// functions of this matrix, so it is the only numeric input of the lane grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relations {
    rows: usize,
    cols: usize,
    data: Vec<i8>,
}

impl Relations {
    pub fn new(p: &[Scalar], q: &[Scalar], delta: &Scalar) -> Self {
        let data = p.iter().flat_map(|a| q.iter().map(move |b| relation(a, b, delta))).collect();
        Relations { rows: p.len(), cols: q.len(), data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, r: i8) {
        self.data[i * self.cols + j] = r;
    }

    /// The Q edge `(e, e + 1)` passes within δ of `P(i)`.
    pub fn near_q_edge(&self, i: usize, e: usize) -> bool {
        let (a, b) = (self.get(i, e), self.get(i, e + 1));
        a == 0 || b == 0 || a != b
    }

    /// The P edge `(e, e + 1)` passes within δ of `Q(j)`.
    pub fn near_p_edge(&self, e: usize, j: usize) -> bool {
        let (a, b) = (self.get(e, j), self.get(e + 1, j));
        a == 0 || b == 0 || a != b
    }
}

impl Closeness for Relations {
    fn close(&self, i: usize, j: usize) -> bool {
        self.get(i, j) == 0
    }
}

/// Layout with the flatness flags of both series filled in.
pub fn layout_for(
    p: &TimeSeries,
    sp: &ExtendedSignature,
    q: &TimeSeries,
    sq: &ExtendedSignature,
    delta: &Scalar,
) -> Layout {
    let mut layout = Layout::new(p.len(), q.len(), &sp.indices, &sq.indices);
    layout.p_flat = p.fits_within(&(delta + delta));
    layout.q_flat = q.fits_within(&(delta + delta));
    layout
}

/// Matrix and relations of a static instance.
pub fn build_parts(p: &TimeSeries, q: &TimeSeries, delta: &Scalar) -> (ModifiedFreeSpaceMatrix, Relations) {
    let sp = compute_extended_signature(p, delta);
    let sq = compute_extended_signature(q, delta);
    let layout = layout_for(p, &sp, q, &sq, delta);
    let (pre, suf) = views(p, &sp, q, &sq);
    let rel = Relations::new(p.values(), q.values(), delta);
    let lm = landmarks_from_scratch(&pre, &suf, &rel);
    (assemble(&layout, &lm, &rel), rel)
}

pub fn build_modified_matrix(p: &TimeSeries, q: &TimeSeries, delta: &Scalar) -> ModifiedFreeSpaceMatrix {
    build_parts(p, q, delta).0
}

/// One row (or column) of the lane grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lane {
    /// The vertex, or for an edge lane the first vertex of the edge.
    pub vertex: usize,
    /// Crossing this lane means the vertex has been matched at the crossing
    /// node. Lanes of non-signature vertices never are.
    pub visit: bool,
    /// The visit may also be made on an edge of the other series.
    pub weak: bool,
    /// Lane between `vertex` and `vertex + 1`.
    pub edge: bool,
}

impl Lane {
    fn pass(vertex: usize) -> Self {
        Lane { vertex, visit: false, weak: false, edge: false }
    }

    fn visit(vertex: usize, visit: bool, weak: bool) -> Self {
        Lane { vertex, visit, weak: visit && weak, edge: false }
    }

    fn edge(vertex: usize) -> Self {
        Lane { vertex, visit: false, weak: false, edge: true }
    }
}

/// Lanes of one series. Vertex 0 gets `[visit, pass, visit, pass]` (the
/// second visit belongs to a duplicated second signature index), interior
/// vertices `[pass, visit, pass]` and the last vertex `[pass, visit, pass,
/// visit]`; an edge lane sits between consecutive vertices.
pub fn lanes(l: &Layout, side: Side) -> Vec<Lane> {
    let (member, second, penult, flat) = match side {
        Side::P => (&l.p_member, l.i2, l.ip, l.p_flat),
        Side::Q => (&l.q_member, l.j2, l.jq, l.q_flat),
    };
    let n = member.len();
    let weak = |i: usize| flat && (i == second || i == penult);
    let mut out = Vec::with_capacity(4 * n + 2);
    out.extend([Lane::visit(0, true, false), Lane::pass(0), Lane::visit(0, second == 0, flat), Lane::pass(0)]);
    out.push(Lane::edge(0));
    for (i, &m) in member.iter().enumerate().take(n - 1).skip(1) {
        out.extend([Lane::pass(i), Lane::visit(i, m, weak(i)), Lane::pass(i), Lane::edge(i)]);
    }
    let last = n - 1;
    out.extend([Lane::pass(last), Lane::visit(last, penult == last, flat), Lane::pass(last), Lane::visit(last, true, false)]);
    out
}

/// Lane indices owned by vertex `v` of a series with `n` vertices.
pub fn vertex_lanes(v: usize, n: usize) -> std::ops::Range<usize> {
    if v == 0 {
        0..4
    } else if v == n - 1 {
        4 * v + 1..4 * v + 5
    } else {
        4 * v + 1..4 * v + 4
    }
}

/// Lane index of the edge `(e, e + 1)`.
pub fn edge_lane(e: usize) -> usize {
    4 * e + 4
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    P,
    Q,
}

/// Whether a vertex-vertex lane node is active given the tags of its cell.
pub fn lane_active(row: Lane, col: Lane, tags: u8) -> bool {
    let base = tags & tag::ENTRY & !tag::NON_SIGNATURE != 0;
    let row_ok = base || tags & tag::EARLY_ROW != 0;
    let col_ok = base || tags & tag::EARLY_COL != 0;
    (!row.visit || row_ok) && (!col.visit || col_ok)
}

/// Whether the lane node `(row, col)` is active.
pub fn node_active<F: Fn(usize, usize) -> u8>(l: &Layout, rel: &Relations, row: Lane, col: Lane, tags: F) -> bool {
    match (row.edge, col.edge) {
        (true, true) => true,
        (false, true) => {
            !row.visit
                || (row.weak
                    && l.edge_outside_corners(Side::P, row.vertex, col.vertex)
                    && rel.near_q_edge(row.vertex, col.vertex))
        }
        (true, false) => {
            !col.visit
                || (col.weak
                    && l.edge_outside_corners(Side::Q, col.vertex, row.vertex)
                    && rel.near_p_edge(row.vertex, col.vertex))
        }
        (false, false) => lane_active(row, col, tags(row.vertex, col.vertex)),
    }
}

/// `x` within `δ` of the segment `ab`.
pub fn near_segment(x: &Scalar, a: &Scalar, b: &Scalar, delta: &Scalar) -> bool {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    &(x + delta) >= lo && &(x - delta) <= hi
}

impl ModifiedFreeSpaceMatrix {
    /// The lane grid. Each vertex owns a few consecutive rows (columns);
    /// signature vertices have a visit lane, and crossing it at some node
    /// matches the vertex with the partner of that node. A monotone path
    /// through active nodes is a crossing-free choice of admissible partners
    /// for all signature vertices.
    pub fn lane_grid(&self, rel: &Relations) -> Grid {
        let rows = lanes(&self.layout, Side::P);
        let cols = lanes(&self.layout, Side::Q);
        Grid::from_fn(rows.len(), cols.len(), |r, c| {
            node_active(&self.layout, rel, rows[r], cols[c], |i, j| self.tags(i, j))
        })
    }

    pub fn tag_slice(&self) -> &[u8] {
        &self.tags
    }
}

/// `d_F(P, Q) <= δ`.
pub fn decide_static(p: &TimeSeries, q: &TimeSeries, delta: &Scalar) -> bool {
    let (mx, rel) = build_parts(p, q, delta);
    reachable(&mx.lane_grid(&rel))
}

/// Values at which the decision can switch: vertex distances across the
/// curves and half-distances within one curve.
pub fn distance_candidates(p: &[Scalar], q: &[Scalar]) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = p.iter().flat_map(|a| q.iter().map(move |b| a.dist(b))).collect();
    for s in [p, q] {
        for (k, a) in s.iter().enumerate() {
            out.extend(s[k + 1..].iter().map(|b| a.dist(b).half()));
        }
    }
    out.push(Scalar::zero());
    out.sort();
    out.dedup();
    out
}

/// Exact `d_F(P, Q)`.
pub fn exact_distance(p: &TimeSeries, q: &TimeSeries) -> Scalar {
    let cands = distance_candidates(p.values(), q.values());
    let (mut lo, mut hi) = (0, cands.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if decide_static(p, q, &cands[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    cands[lo].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(v: &[i64]) -> TimeSeries {
        TimeSeries::from_ints(v).unwrap()
    }

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn identity_instance() {
        let p = ts(&[0, 3, -1, 4, 2]);
        let mx = build_modified_matrix(&p, &p, &Scalar::zero());
        for i in 0..p.len() {
            assert!(mx.get(i, i));
        }
        assert_ne!(mx.tags(0, 0) & tag::ENDPOINT, 0);
        assert_ne!(mx.tags(4, 4) & tag::ENDPOINT, 0);
        assert!(mx.reachable());
    }

    #[test]
    fn opposite_segments_block_the_start() {
        let mx = build_modified_matrix(&ts(&[0, 2]), &ts(&[2, 0]), &s("1"));
        assert!(!mx.get(0, 0));
        assert!(!mx.reachable());
    }

    #[test]
    fn close_entries_outside_corners() {
        let p = ts(&[0, 5, -3, 6, 1, 2]);
        let q = ts(&[1, 4, -2, 7, 0]);
        let d = s("1");
        let mx = build_modified_matrix(&p, &q, &d);
        for i in 0..p.len() {
            for j in 0..q.len() {
                let expect = p[i].within(&q[j], &d) && !mx.layout.in_corner(i, j);
                assert_eq!(mx.tags(i, j) & tag::CLOSE != 0, expect);
            }
        }
    }

    #[test]
    fn static_decisions() {
        assert!(decide_static(&ts(&[0, 2]), &ts(&[0, 1]), &s("1")));
        assert!(!decide_static(&ts(&[0, 2]), &ts(&[2, 0]), &s("1.99")));
        assert!(decide_static(&ts(&[0, 2]), &ts(&[2, 0]), &s("2")));
        let p = ts(&[1, -4, 6, 0]);
        assert!(decide_static(&p, &p, &Scalar::zero()));
    }

    #[test]
    fn static_values() {
        assert_eq!(exact_distance(&ts(&[0, 2]), &ts(&[0, 1])), s("1"));
        assert_eq!(exact_distance(&ts(&[0, 2]), &ts(&[2, 0])), s("2"));
        let p = ts(&[1, -4, 6, 0]);
        assert_eq!(exact_distance(&p, &p), Scalar::zero());
        assert_eq!(exact_distance(&ts(&[0, 10, 2, 10]), &ts(&[0, 10])), s("4"));
    }

    #[test]
    fn edge_proximity_from_relations() {
        let p: Vec<Scalar> = [-3, 0, 2, 5].map(Scalar::from_int).to_vec();
        let q: Vec<Scalar> = [4, -4, 1, 1, 7].map(Scalar::from_int).to_vec();
        for d in ["0", "1/2", "1", "3"] {
            let d = s(d);
            let rel = Relations::new(&p, &q, &d);
            for i in 0..p.len() {
                for e in 0..q.len() - 1 {
                    assert_eq!(rel.near_q_edge(i, e), near_segment(&p[i], &q[e], &q[e + 1], &d));
                }
            }
            for e in 0..p.len() - 1 {
                for j in 0..q.len() {
                    assert_eq!(rel.near_p_edge(e, j), near_segment(&q[j], &p[e], &p[e + 1], &d));
                }
            }
        }
    }

    #[test]
    fn lane_indexing() {
        let l = Layout::new(5, 2, &[0, 2, 3, 4], &[0, 0, 1, 1]);
        let ls = lanes(&l, Side::P);
        assert_eq!(ls.len(), 21);
        for v in 0..5 {
            for k in vertex_lanes(v, 5) {
                assert!(!ls[k].edge && ls[k].vertex == v);
            }
        }
        for e in 0..4 {
            assert!(ls[edge_lane(e)].edge && ls[edge_lane(e)].vertex == e);
        }
    }
}
