//! String-net vector spaces on triangulated surfaces: fat-graph bases, flip
//! and gauge transports, and cloaking projectors.
//!
//! Conventions (fixed once, used throughout):
//! * the dual edge of an internal triangulation edge points into the triangle
//!   that traverses it forward (the left side), so the inbound color at end 0
//!   is the stored color and at end 1 its dual;
//! * legs point from the boundary into their triangle; with a positive sign
//!   the boundary point's object colors the inward leg directly and its grade
//!   equals the boundary edge label;
//! * the vertex coupling of a triangle with inbound slot colors (x0,x1,x2)
//!   lives in V(x0,x1,x2) = M(x0,x1; x2*); reading the frame from slot k
//!   applies the stored rotation ρ k times;
//! * cloaking rings run counterclockwise; the dual-face walk around a vertex
//!   visits corners (t, enter) with leave = enter+2 and outer = enter+1, the
//!   ring fused on the face side.

use crate::category::{CategoryData, SimpleId};
use crate::group::GroupElem;
use crate::matrix::Mat;
use crate::scalar::Scalar;
use crate::surface::{FatGraph, GTriangulation, Move, SlotTarget, SurfaceError};
use std::collections::{BTreeMap, HashMap};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointValue {
    Simple(SimpleId),
    /// Multiplicity vector over simples.
    Object(Vec<u32>),
}

impl PointValue {
    pub fn multiplicity(&self, s: SimpleId) -> u32 {
        match self {
            PointValue::Simple(x) => u32::from(*x == s),
            PointValue::Object(m) => m.get(s).copied().unwrap_or(0),
        }
    }
}

/// One labeled marked point per boundary component; `sign` says whether the
/// stated object or its dual colors the inward leg.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryValue {
    pub points: Vec<(PointValue, bool)>,
}

impl BoundaryValue {
    pub fn empty() -> Self {
        BoundaryValue { points: vec![] }
    }

    pub fn simples(values: &[SimpleId]) -> Self {
        BoundaryValue { points: values.iter().map(|&s| (PointValue::Simple(s), true)).collect() }
    }

    pub fn objects(values: &[Vec<u32>]) -> Self {
        BoundaryValue {
            points: values.iter().map(|m| (PointValue::Object(m.clone()), true)).collect(),
        }
    }

    /// Signed grades must reproduce each component's holonomy.
    pub fn admissible(&self, cat: &CategoryData, tri: &GTriangulation) -> bool {
        if self.points.len() != tri.boundaries.len() {
            return false;
        }
        for (b, (value, sign)) in self.points.iter().enumerate() {
            let hol = tri.boundaries[b].holonomy;
            let grades: Vec<GroupElem> = (0..cat.simple_count())
                .filter(|&s| value.multiplicity(s) > 0)
                .map(|s| if *sign { cat.grade(s) } else { cat.grade(cat.dual(s)) })
                .collect();
            if grades.is_empty() || grades.iter().any(|&g| g != hol) {
                return false;
            }
        }
        true
    }
}

/// A fat-graph basis state.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FatState {
    /// Simple color per internal fat edge, canonical orientation.
    pub edge_colors: Vec<SimpleId>,
    /// (component, multiplicity index) per leg.
    pub leg_colors: Vec<(SimpleId, usize)>,
    /// Coupling index per vertex, canonical frame.
    pub couplings: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct SnBasis {
    pub tri: GTriangulation,
    pub fat: FatGraph,
    pub boundary: BoundaryValue,
    pub states: Vec<FatState>,
    pub index: HashMap<FatState, usize>,
}

#[derive(Debug, Clone)]
pub struct SnMap {
    pub src: SnBasis,
    pub dst: SnBasis,
    pub mat: Mat,
}

impl SnMap {
    pub fn identity(basis: &SnBasis) -> Self {
        SnMap { src: basis.clone(), dst: basis.clone(), mat: Mat::identity(basis.states.len()) }
    }

    /// self ∘ first.
    pub fn compose(&self, first: &SnMap) -> SnMap {
        assert_eq!(first.dst.states, self.src.states, "composition needs matching bases");
        SnMap { src: first.src.clone(), dst: self.dst.clone(), mat: self.mat.mul(&first.mat) }
    }
}

impl SnBasis {
    /// Inbound color at a vertex slot under a state.
    pub fn inbound(&self, cat: &CategoryData, state: &FatState, vertex: usize, slot: usize) -> SimpleId {
        match self.fat.vertices[vertex].slots[slot] {
            SlotTarget::Edge(f, end) => {
                let c = state.edge_colors[f];
                if end == 0 {
                    c
                } else {
                    cat.dual(c)
                }
            }
            SlotTarget::Leg(l) => {
                let (s, _) = state.leg_colors[l];
                let (_, sign) = &self.boundary.points[self.fat.legs[l].boundary];
                if *sign {
                    s
                } else {
                    cat.dual(s)
                }
            }
        }
    }

    /// Sets the fat-edge color so the inbound color at (vertex, slot) becomes
    /// `color`. Panics on legs.
    fn set_inbound(&self, cat: &CategoryData, state: &mut FatState, vertex: usize, slot: usize, color: SimpleId) {
        match self.fat.vertices[vertex].slots[slot] {
            SlotTarget::Edge(f, end) => {
                state.edge_colors[f] = if end == 0 { color } else { cat.dual(color) };
            }
            SlotTarget::Leg(_) => panic!("cannot recolor a leg through set_inbound"),
        }
    }

    pub fn frame(&self, cat: &CategoryData, state: &FatState, vertex: usize, start: usize) -> [SimpleId; 3] {
        [
            self.inbound(cat, state, vertex, start % 3),
            self.inbound(cat, state, vertex, (start + 1) % 3),
            self.inbound(cat, state, vertex, (start + 2) % 3),
        ]
    }

    fn vertex_dim(&self, cat: &CategoryData, state: &FatState, v: usize) -> u32 {
        let f = self.frame(cat, state, v, 0);
        cat.coupling_dim(f[0], f[1], f[2])
    }
}

/// Enumerates the fat-graph basis over a triangulation with a boundary value.
pub fn sn_basis(cat: &CategoryData, tri: &GTriangulation, boundary: &BoundaryValue) -> SnBasis {
    assert!(
        boundary.admissible(cat, tri),
        "boundary value incompatible with the boundary holonomies"
    );
    let fat = tri.dual_fat_graph();
    let mut basis = SnBasis {
        tri: tri.clone(),
        fat,
        boundary: boundary.clone(),
        states: vec![],
        index: HashMap::new(),
    };

    let edge_choices: Vec<Vec<SimpleId>> = basis
        .fat
        .edges
        .iter()
        .map(|f| cat.sector(basis.tri.edges[f.dual_edge].label))
        .collect();
    let leg_choices: Vec<Vec<(SimpleId, usize)>> = basis
        .fat
        .legs
        .iter()
        .map(|l| {
            let (value, _) = &boundary.points[l.boundary];
            let mut ch = Vec::new();
            for s in 0..cat.simple_count() {
                for m in 0..value.multiplicity(s) as usize {
                    ch.push((s, m));
                }
            }
            ch
        })
        .collect();

    let ne = edge_choices.len();
    let nl = leg_choices.len();
    let nv = basis.fat.vertices.len();
    let mut colorings: Vec<FatState> = Vec::new();
    let mut work = FatState {
        edge_colors: vec![0; ne],
        leg_colors: vec![(0, 0); nl],
        couplings: vec![0; nv],
    };
    fn assign(
        pos: usize,
        edge_choices: &[Vec<SimpleId>],
        leg_choices: &[Vec<(SimpleId, usize)>],
        work: &mut FatState,
        out: &mut Vec<FatState>,
    ) {
        let ne = edge_choices.len();
        let nl = leg_choices.len();
        if pos == ne + nl {
            out.push(work.clone());
            return;
        }
        if pos < ne {
            for &c in &edge_choices[pos] {
                work.edge_colors[pos] = c;
                assign(pos + 1, edge_choices, leg_choices, work, out);
            }
        } else {
            for &lc in &leg_choices[pos - ne] {
                work.leg_colors[pos - ne] = lc;
                assign(pos + 1, edge_choices, leg_choices, work, out);
            }
        }
    }
    assign(0, &edge_choices, &leg_choices, &mut work, &mut colorings);

    for coloring in colorings {
        let dims: Vec<u32> = (0..nv).map(|v| basis.vertex_dim(cat, &coloring, v)).collect();
        if dims.iter().any(|&d| d == 0) {
            continue;
        }
        let mut idx = vec![0usize; nv];
        loop {
            let mut s = coloring.clone();
            s.couplings = idx.clone();
            basis.index.insert(s.clone(), basis.states.len());
            basis.states.push(s);
            let mut k = 0;
            while k < nv {
                idx[k] += 1;
                if idx[k] < dims[k] as usize {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == nv {
                break;
            }
        }
    }
    basis
}

pub fn sn_dim(cat: &CategoryData, tri: &GTriangulation, boundary: &BoundaryValue) -> usize {
    sn_basis(cat, tri, boundary).states.len()
}

// ---------------------------------------------------------------------------
// Frame rotation helpers
// ---------------------------------------------------------------------------

/// Sparse coefficients over coupling indices.
pub type Coeffs = Vec<(usize, Scalar)>;

fn rotate_vec(cat: &CategoryData, mut colors: [SimpleId; 3], mut vec: Vec<Scalar>, power: usize) -> Coeffs {
    for _ in 0..power {
        let r = cat.rotation(colors[0], colors[1], colors[2]);
        let mut out = vec![Scalar::zero(); r.rows];
        for (j, x) in vec.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let t = r.get(i, j).mul(x);
                if !t.is_zero() {
                    *o = o.add(&t);
                }
            }
        }
        vec = out;
        colors = [colors[1], colors[2], colors[0]];
    }
    vec.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
}

/// Coefficients of coupling `mu` of V(colors) read in the frame rotated
/// forward by `power` slots.
pub fn to_frame(cat: &CategoryData, colors: [SimpleId; 3], mu: usize, power: usize) -> Coeffs {
    let dim = cat.coupling_dim(colors[0], colors[1], colors[2]) as usize;
    assert!(mu < dim, "coupling index {mu} out of range for V({},{},{}) of dim {dim}", colors[0], colors[1], colors[2]);
    let mut vec = vec![Scalar::zero(); dim];
    vec[mu] = Scalar::one();
    rotate_vec(cat, colors, vec, power % 3)
}

/// Converts an index in the frame rotated by `power` back to canonical-frame
/// coefficients (ρ³ = 1).
pub fn from_frame(cat: &CategoryData, canonical: [SimpleId; 3], idx: usize, power: usize) -> Coeffs {
    let power = power % 3;
    if power == 0 {
        return vec![(idx, Scalar::one())];
    }
    let mut colors = canonical;
    for _ in 0..power {
        colors = [colors[1], colors[2], colors[0]];
    }
    let dim = cat.coupling_dim(colors[0], colors[1], colors[2]) as usize;
    let mut vec = vec![Scalar::zero(); dim];
    vec[idx] = Scalar::one();
    rotate_vec(cat, colors, vec, 3 - power)
}

// ---------------------------------------------------------------------------
// Flip transport
// ---------------------------------------------------------------------------

/// The isomorphism induced by flipping an internal edge: one F-move between
/// the two adjacent vertex couplings, conjugated by frame rotations.
pub fn flip_map(
    cat: &CategoryData,
    tri: &GTriangulation,
    boundary: &BoundaryValue,
    edge: usize,
) -> Result<SnMap, SurfaceError> {
    let tri2 = tri.flip(edge)?;
    let src = sn_basis(cat, tri, boundary);
    let dst = sn_basis(cat, &tri2, boundary);
    let mut mat = Mat::zeros(dst.states.len(), src.states.len());

    let sides = tri.edge_sides(edge);
    // Normalize so `va` traverses the diagonal forward.
    let fwd0 = tri.triangles[sides[0].0][sides[0].1].forward;
    let ((va, ka), (vb, kb), swapped) = if fwd0 {
        (sides[0], sides[1], false)
    } else {
        (sides[1], sides[0], true)
    };
    // After GTriangulation::flip, triangles[sides[0].0] = (a2,b1,f-rev) and
    // triangles[sides[1].0] = (b2,a1,f) in sides-ordered letters. In
    // normalized letters the vertex carrying the (x2,x3)-coupling and the one
    // carrying (x4,x1) swap along with the normalization.
    let (v_gamma, v_delta) = if !swapped {
        (sides[0].0, sides[1].0)
    } else {
        (sides[1].0, sides[0].0)
    };

    let m_dst = dst.fat.edges.iter().position(|f| f.dual_edge == edge).unwrap();

    for (src_idx, s) in src.states.iter().enumerate() {
        let x1 = src.inbound(cat, s, va, (ka + 1) % 3);
        let x2 = src.inbound(cat, s, va, (ka + 2) % 3);
        let x3 = src.inbound(cat, s, vb, (kb + 1) % 3);
        let x4 = src.inbound(cat, s, vb, (kb + 2) % 3);
        let cm = src.inbound(cat, s, va, ka);
        let cm_dual = cat.dual(cm);
        let d_total = cat.dual(x4);

        // va coupling in the frame V(x1,x2,cm) (start slot ka+1); vb in
        // V(cm*,x3,x4) (start slot kb).
        let mu_a = to_frame(cat, src.frame(cat, s, va, 0), s.couplings[va], (ka + 1) % 3);
        let mu_b = to_frame(cat, src.frame(cat, s, vb, 0), s.couplings[vb], kb % 3);

        for (ia, ca) in &mu_a {
            for (ib, cb) in &mu_b {
                let w = ca.mul(cb);
                for s23 in 0..cat.simple_count() {
                    for gamma in 0..cat.n(x2, x3, s23) as usize {
                        for delta in 0..cat.n(x1, s23, d_total) as usize {
                            let f = cat.f_entry(
                                x1,
                                x2,
                                x3,
                                d_total,
                                (cm_dual, *ia, *ib),
                                (s23, gamma, delta),
                            );
                            if f.is_zero() {
                                continue;
                            }
                            let coeff = w.mul(&f);
                            // New diagonal color: s23 when the gamma-vertex
                            // sits at end 1 of the new dual edge, else dual.
                            let new_color = if !swapped { s23 } else { cat.dual(s23) };
                            // delta ∈ V(x1,s23,x4) = frame of v_delta rotated
                            // by one slot; back to canonical V(x4,x1,s23).
                            for (id_, cd) in from_frame(cat, [x4, x1, s23], delta, 1) {
                                let mut t = s.clone();
                                t.edge_colors = remap_edges(&src.fat, &dst.fat, &t.edge_colors);
                                t.edge_colors[m_dst] = new_color;
                                t.couplings[v_gamma] = gamma;
                                t.couplings[v_delta] = id_;
                                let total = coeff.mul(&cd);
                                let di = *dst
                                    .index
                                    .get(&t)
                                    .expect("flip landed outside the target basis");
                                mat.add_to(di, src_idx, &total);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(SnMap { src, dst, mat })
}

/// Colors carry over by dual-edge identity between the two fat graphs.
fn remap_edges(src: &FatGraph, dst: &FatGraph, colors: &[SimpleId]) -> Vec<SimpleId> {
    let by_dual: HashMap<usize, usize> =
        src.edges.iter().enumerate().map(|(i, f)| (f.dual_edge, i)).collect();
    dst.edges.iter().map(|f| colors[by_dual[&f.dual_edge]]).collect()
}

// ---------------------------------------------------------------------------
// Ring insertion around the dual face of an internal vertex
// ---------------------------------------------------------------------------

/// A corner of the dual face: triangle `t` entered at slot `enter`; the walk
/// leaves across side enter+2 and the outer strand sits at enter+1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Corner {
    t: usize,
    enter: usize,
}

/// Dual-face walk around vertex `v`, corners in ring order starting so that
/// the edge entered first is traversed only once (panics if impossible).
fn face_walk(tri: &GTriangulation, v: usize) -> Vec<Corner> {
    let mut all: Vec<Corner> = Vec::new();
    for (t, tr) in tri.triangles.iter().enumerate() {
        for s in 0..3 {
            if tri.src(tr[s]) == v {
                all.push(Corner { t, enter: s });
            }
        }
    }
    assert!(!all.is_empty(), "vertex has no incident corner");
    let start = all[0];
    let mut corners = Vec::new();
    let mut cur = start;
    loop {
        corners.push(cur);
        let leave = (cur.enter + 2) % 3;
        let oe = tri.triangles[cur.t][leave];
        assert!(tri.is_internal(oe.edge), "internal face walk crossed a boundary edge");
        let sides = tri.edge_sides(oe.edge);
        let (nt, ns) = if sides[0] == (cur.t, leave) { sides[1] } else { sides[0] };
        cur = Corner { t: nt, enter: ns };
        if cur == start {
            break;
        }
        assert!(corners.len() <= all.len(), "face walk failed to close");
    }
    assert_eq!(corners.len(), all.len(), "face walk must visit every corner once");

    // Rotate so the opening edge (entered at corner 0) is traversed once.
    let k = corners.len();
    let entry_edge = |c: &Corner| tri.triangles[c.t][c.enter].edge;
    for off in 0..k {
        let cand = corners[off];
        let e = entry_edge(&cand);
        let count = corners.iter().filter(|c| entry_edge(c) == e).count();
        if count == 1 {
            corners.rotate_left(off);
            return corners;
        }
    }
    panic!("every edge around this vertex is traversed twice; add a marked point");
}

/// One branch of the ring reduction. Edge colors and couplings inside
/// `state` are kept mutually consistent after every corner; the front
/// remembers its own fusion partner so reads never depend on stale colors.
#[derive(Clone)]
struct Branch {
    state: FatState,
    front_channel: SimpleId,
    front_idx: usize,
    /// Inbound color of the unfused strand ahead of the front.
    front_partner: SimpleId,
    /// Opening data: channel, coupling, and the original color of the edge
    /// the walk opened on.
    opened: (SimpleId, usize, SimpleId),
    /// Canonical reference frames of couplings rewritten so far; a vertex
    /// absent here still carries its original coupling.
    frames: std::collections::BTreeMap<usize, [SimpleId; 3]>,
    weight: Scalar,
}

/// Fuses a `ring`-colored loop running just inside the dual face given by
/// `corners` into the fat graph: opens with a dual coupling pair on the edge
/// entered at corner 0, transfers across each corner with one inverse-F
/// contraction, and closes with the dual pairing.
fn ring_around_face(
    cat: &CategoryData,
    src: &SnBasis,
    state: &FatState,
    corners: &[Corner],
    ring: SimpleId,
) -> Vec<(FatState, Scalar)> {
    let c0 = src.inbound(cat, state, corners[0].t, corners[0].enter);
    let mut branches: Vec<Branch> = Vec::new();
    for z0 in 0..cat.simple_count() {
        for mu0 in 0..cat.n(ring, c0, z0) as usize {
            branches.push(Branch {
                state: state.clone(),
                front_channel: z0,
                front_idx: mu0,
                front_partner: c0,
                opened: (z0, mu0, c0),
                frames: std::collections::BTreeMap::new(),
                weight: Scalar::one(),
            });
        }
    }

    for (ci, corner) in corners.iter().enumerate() {
        let mut next: Vec<Branch> = Vec::new();
        for br in &branches {
            let c_prev = br.front_partner;
            // The opening edge is split until the close: its segment at the
            // opening corner's slot already carries the fused channel, while
            // the remainder keeps the original color. Reads through that one
            // slot must see the branch's opening channel.
            let read = |slot: usize, br: &Branch| -> SimpleId {
                if (corner.t, slot) == (corners[0].t, corners[0].enter) && ci != 0 {
                    br.opened.0
                } else {
                    src.inbound(cat, &br.state, corner.t, slot)
                }
            };
            let t_out = read((corner.enter + 1) % 3, br);
            let leave_slot = (corner.enter + 2) % 3;
            let c_leave_in = read(leave_slot, br);
            let c_next_out = cat.dual(c_leave_in);

            // Old coupling expanded in the frame it actually references: the
            // stored one for rewritten vertices, else the state frame. The
            // opening edge keeps its original color until the close, so reads
            // through any slot see the unfused remainder.
            let frame0 = match br.frames.get(&corner.t) {
                Some(f) => *f,
                None => src.frame(cat, &br.state, corner.t, 0),
            };
            let y_old = to_frame(cat, frame0, br.state.couplings[corner.t], corner.enter);

            for (iy, cy) in &y_old {
                for z_next in 0..cat.simple_count() {
                    if cat.n(ring, c_next_out, z_next) == 0 {
                        continue;
                    }
                    let rows = cat.f_rows(ring, c_prev, t_out, z_next);
                    if rows.is_empty() {
                        continue;
                    }
                    let cols = cat.f_cols(ring, c_prev, t_out, z_next);
                    let finv = cat.f_matrix_inv(ring, c_prev, t_out, z_next);
                    for (ri, &(zp, mf, ypr)) in rows.iter().enumerate() {
                        if zp != br.front_channel || mf != br.front_idx {
                            continue;
                        }
                        for (ci_col, &(cn, yy, mupr)) in cols.iter().enumerate() {
                            if cn != c_next_out || yy != *iy {
                                continue;
                            }
                            let f = finv.get(ri, ci_col);
                            if f.is_zero() {
                                continue;
                            }
                            // Write phase: finalize the entering edge (the
                            // opening edge is deferred to the close) and the
                            // coupling together with its reference frame.
                            let mut st = br.state.clone();
                            if ci != 0 {
                                src.set_inbound(cat, &mut st, corner.t, corner.enter, br.front_channel);
                            }
                            // New coupling Y' ∈ V(front_channel, t_out,
                            // z_next*) read in the enter-started frame.
                            let enter_frame = [br.front_channel, t_out, cat.dual(z_next)];
                            let canonical = rotate_colors_back(enter_frame, corner.enter);
                            for (icpl, ccpl) in from_frame(cat, canonical, ypr, corner.enter) {
                                let mut st2 = st.clone();
                                st2.couplings[corner.t] = icpl;
                                let mut frames = br.frames.clone();
                                frames.insert(corner.t, canonical);
                                next.push(Branch {
                                    state: st2,
                                    front_channel: z_next,
                                    front_idx: mupr,
                                    front_partner: c_next_out,
                                    opened: br.opened,
                                    frames,
                                    weight: br.weight.mul(cy).mul(f).mul(&ccpl),
                                });
                            }
                        }
                    }
                }
            }
        }
        branches = merge(next);
    }

    // Close: the front must return to the opening pair; the opening edge
    // receives its final color now.
    let mut out: BTreeMap<FatState, Scalar> = BTreeMap::new();
    for br in branches {
        let (z0, mu0, _) = br.opened;
        if br.front_channel != z0 || br.front_idx != mu0 {
            continue;
        }
        let mut st = br.state;
        src.set_inbound(cat, &mut st, corners[0].t, corners[0].enter, z0);
        let e = out.entry(st).or_insert_with(Scalar::zero);
        *e = e.add(&br.weight);
    }
    out.into_iter().filter(|(_, w)| !w.is_zero()).collect()
}

fn rotate_colors_back(frame: [SimpleId; 3], power: usize) -> [SimpleId; 3] {
    let mut c = frame;
    for _ in 0..(3 - power % 3) % 3 {
        c = [c[1], c[2], c[0]];
    }
    c
}

type BranchKey = (
    FatState,
    SimpleId,
    usize,
    SimpleId,
    (SimpleId, usize, SimpleId),
    Vec<(usize, [SimpleId; 3])>,
);

fn merge(branches: Vec<Branch>) -> Vec<Branch> {
    let mut acc: BTreeMap<BranchKey, Scalar> = BTreeMap::new();
    for b in branches {
        if b.weight.is_zero() {
            continue;
        }
        let frames: Vec<(usize, [SimpleId; 3])> = b.frames.iter().map(|(k, v)| (*k, *v)).collect();
        let key = (b.state.clone(), b.front_channel, b.front_idx, b.front_partner, b.opened, frames);
        let e = acc.entry(key).or_insert_with(Scalar::zero);
        *e = e.add(&b.weight);
    }
    acc.into_iter()
        .filter(|(_, w)| !w.is_zero())
        .map(|((state, fc, fi, fp, opened, frames), weight)| Branch {
            state,
            front_channel: fc,
            front_idx: fi,
            front_partner: fp,
            opened,
            frames: frames.into_iter().collect(),
            weight,
        })
        .collect()
}

/// The map adding a d-weighted cloaking ring of sector `h` around internal
/// vertex `v`: SN_T -> SN_{λ_h(v) T}. For h = e this is the cloaking
/// projector Π at `v`.
pub fn gauge_map(
    cat: &CategoryData,
    tri: &GTriangulation,
    boundary: &BoundaryValue,
    v: usize,
    h: GroupElem,
) -> Result<SnMap, SurfaceError> {
    let tri2 = tri.gauge(v, h)?;
    let src = sn_basis(cat, tri, boundary);
    let dst = sn_basis(cat, &tri2, boundary);
    let mut mat = Mat::zeros(dst.states.len(), src.states.len());
    let corners = face_walk(tri, v);
    let norm = cat.cloak_dim.inv().expect("neutral dimension is invertible");

    for ring in cat.sector(h) {
        let weight = cat.qdim(ring).mul(&norm);
        for (src_idx, s) in src.states.iter().enumerate() {
            for (t, coeff) in ring_around_face(cat, &src, s, &corners, ring) {
                let mut t2 = t;
                t2.edge_colors = remap_edges(&src.fat, &dst.fat, &t2.edge_colors);
                let di = *dst
                    .index
                    .get(&t2)
                    .expect("ring insertion landed outside the target basis");
                mat.add_to(di, src_idx, &coeff.mul(&weight));
            }
        }
    }
    Ok(SnMap { src, dst, mat })
}

/// Cloaking map at a marked point; for sector e an exact idempotent on SN_T.
pub fn pi_projector(
    cat: &CategoryData,
    tri: &GTriangulation,
    boundary: &BoundaryValue,
    marked: usize,
    h: GroupElem,
) -> Result<SnMap, SurfaceError> {
    gauge_map(cat, tri, boundary, marked, h)
}

/// Ordered composite of flip and gauge transports along a move path.
pub fn transport(
    cat: &CategoryData,
    tri: &GTriangulation,
    boundary: &BoundaryValue,
    path: &[Move],
) -> Result<SnMap, SurfaceError> {
    let mut cur = tri.clone();
    let mut acc: Option<SnMap> = None;
    for m in path {
        let step = match *m {
            Move::Flip(e) => flip_map(cat, &cur, boundary, e)?,
            Move::Gauge(v, g) => gauge_map(cat, &cur, boundary, v, g)?,
        };
        cur = step.dst.tri.clone();
        acc = Some(match acc {
            None => step,
            Some(prev) => step.compose(&prev),
        });
    }
    Ok(acc.unwrap_or_else(|| SnMap::identity(&sn_basis(cat, tri, boundary))))
}
