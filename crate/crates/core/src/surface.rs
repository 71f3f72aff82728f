//! Combinatorics of group-labeled ideal triangulations: validation, flips,
//! gauge moves, dual fat graphs and desk-scale move-graph exploration.

use crate::group::{FiniteGroup, GroupElem};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VertexKind {
    /// Basepoint on the boundary component with the given index.
    Boundary(usize),
    /// Internal marked point.
    Marked,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrientedEdge {
    pub edge: usize,
    pub forward: bool,
}

impl OrientedEdge {
    pub fn fwd(edge: usize) -> Self {
        OrientedEdge { edge, forward: true }
    }
    pub fn rev(edge: usize) -> Self {
        OrientedEdge { edge, forward: false }
    }
    pub fn reversed(self) -> Self {
        OrientedEdge { edge: self.edge, forward: !self.forward }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: GroupElem,
    /// Boundary component index when this edge lies on the boundary.
    pub boundary: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryComponent {
    /// Edge cycle along the component.
    pub edges: Vec<OrientedEdge>,
    pub holonomy: GroupElem,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GTriangulation {
    pub group: FiniteGroup,
    pub vertices: Vec<VertexKind>,
    pub edges: Vec<Edge>,
    /// Counterclockwise-ordered edge triples.
    pub triangles: Vec<[OrientedEdge; 3]>,
    pub boundaries: Vec<BoundaryComponent>,
    pub genus: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    Flip(usize),
    Gauge(usize, GroupElem),
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum SurfaceError {
    #[error("flip target must be an internal edge")]
    BoundaryEdge,
    #[error("flip target is adjacent to a single face")]
    SameFace,
    #[error("gauge moves act at internal vertices only")]
    BoundaryVertex,
    #[error("no triangulation for these parameters: {0}")]
    InadmissibleSurface(String),
}

impl GTriangulation {
    pub fn label(&self, oe: OrientedEdge) -> GroupElem {
        let l = self.edges[oe.edge].label;
        if oe.forward {
            l
        } else {
            self.group.inverse(l)
        }
    }

    pub fn src(&self, oe: OrientedEdge) -> usize {
        if oe.forward {
            self.edges[oe.edge].from
        } else {
            self.edges[oe.edge].to
        }
    }

    pub fn dst(&self, oe: OrientedEdge) -> usize {
        self.src(oe.reversed())
    }

    pub fn is_internal(&self, edge: usize) -> bool {
        self.edges[edge].boundary.is_none()
    }

    pub fn internal_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| matches!(self.vertices[v], VertexKind::Marked))
            .collect()
    }

    /// Both (triangle, slot) incidences of an edge, in triangle order.
    pub fn edge_sides(&self, edge: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            for (s, oe) in tri.iter().enumerate() {
                if oe.edge == edge {
                    out.push((t, s));
                }
            }
        }
        out
    }

    // ------------------------------------------------------------------
    // Validation
    // ------------------------------------------------------------------

    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        let nv = self.vertices.len();
        for (i, e) in self.edges.iter().enumerate() {
            if e.from >= nv || e.to >= nv {
                out.push(format!("edge {i} has endpoint out of range"));
            }
            if e.label >= self.group.order {
                out.push(format!("edge {i} has label out of range"));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for (t, tri) in self.triangles.iter().enumerate() {
            for k in 0..3 {
                if self.dst(tri[k]) != self.src(tri[(k + 1) % 3]) {
                    out.push(format!("triangle {t} is not an edge cycle"));
                }
            }
            let w = self.group.word(&[
                (self.label(tri[0]), true),
                (self.label(tri[1]), true),
                (self.label(tri[2]), true),
            ]);
            if !self.group.is_identity(w) {
                out.push(format!("triangle {t} violates the face relation"));
            }
        }
        // Side counts: internal edges bound two sides, boundary edges one.
        for (i, e) in self.edges.iter().enumerate() {
            let sides = self.edge_sides(i).len();
            match e.boundary {
                None if sides != 2 => out.push(format!("internal edge {i} has {sides} sides")),
                Some(_) if sides != 1 => out.push(format!("boundary edge {i} has {sides} sides")),
                _ => {}
            }
        }
        // Boundary cycles and holonomies.
        for (b, comp) in self.boundaries.iter().enumerate() {
            if comp.edges.is_empty() {
                out.push(format!("boundary {b} is empty"));
                continue;
            }
            for (k, oe) in comp.edges.iter().enumerate() {
                let next = comp.edges[(k + 1) % comp.edges.len()];
                if self.dst(*oe) != self.src(next) {
                    out.push(format!("boundary {b} is not a cycle"));
                }
                if self.edges[oe.edge].boundary != Some(b) {
                    out.push(format!("boundary {b} lists a non-member edge"));
                }
                if !matches!(self.vertices[self.src(*oe)], VertexKind::Boundary(c) if c == b) {
                    out.push(format!("boundary {b} passes a foreign vertex"));
                }
            }
            let word: Vec<(GroupElem, bool)> =
                comp.edges.iter().map(|oe| (self.label(*oe), true)).collect();
            if self.group.word(&word) != comp.holonomy {
                out.push(format!("boundary {b} holonomy mismatch"));
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            if let Some(b) = e.boundary {
                if b >= self.boundaries.len() {
                    out.push(format!("edge {i} references missing boundary"));
                } else if !self.boundaries[b].edges.iter().any(|oe| oe.edge == i) {
                    out.push(format!("edge {i} missing from its boundary cycle"));
                }
            }
        }
        // Euler characteristic against declared genus and boundary count.
        let chi = self.vertices.len() as i64 - self.edges.len() as i64 + self.triangles.len() as i64;
        let expect = 2 - 2 * self.genus as i64 - self.boundaries.len() as i64;
        if chi != expect {
            out.push(format!("Euler characteristic {chi}, expected {expect}"));
        }
        // Marked points must not sit on the boundary.
        for (v, kind) in self.vertices.iter().enumerate() {
            let on_boundary = self
                .edges
                .iter()
                .any(|e| e.boundary.is_some() && (e.from == v || e.to == v));
            match kind {
                VertexKind::Marked if on_boundary => {
                    out.push(format!("marked vertex {v} lies on the boundary"))
                }
                VertexKind::Boundary(_) if !on_boundary => {
                    out.push(format!("basepoint {v} misses the boundary"))
                }
                _ => {}
            }
        }
        out
    }

    // ------------------------------------------------------------------
    // Moves
    // ------------------------------------------------------------------

    /// Rotates a triangle so the side holding `edge` comes first; returns the
    /// rotated triple.
    fn rotate_to_front(&self, tri: [OrientedEdge; 3], edge: usize) -> [OrientedEdge; 3] {
        let k = tri.iter().position(|oe| oe.edge == edge).expect("edge on triangle");
        [tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]]
    }

    pub fn flip(&self, edge: usize) -> Result<GTriangulation, SurfaceError> {
        if !self.is_internal(edge) {
            return Err(SurfaceError::BoundaryEdge);
        }
        let sides = self.edge_sides(edge);
        if sides.len() != 2 || sides[0].0 == sides[1].0 {
            return Err(SurfaceError::SameFace);
        }
        let (ta, tb) = (sides[0].0, sides[1].0);
        let a = self.rotate_to_front(self.triangles[ta], edge);
        let b = self.rotate_to_front(self.triangles[tb], edge);
        // a = (f, a1, a2), b = (f̄, b1, b2) with f traversed oppositely.
        debug_assert_eq!(a[0].edge, edge);
        debug_assert_eq!(b[0].edge, edge);
        debug_assert!(a[0].forward != b[0].forward, "oriented surface traverses internal edges both ways");
        let (a1, a2, b1, b2) = (a[1], a[2], b[1], b[2]);
        // Quad cycle a1,a2,b1,b2; new diagonal w -> x with w = dst(a1),
        // x = dst(b1); label from the face relation of (b2, a1, f').
        let w = self.dst(a1);
        let x = self.dst(b1);
        let label = self
            .group
            .inverse(self.group.mul(self.label(b2), self.label(a1)));
        let mut out = self.clone();
        out.edges[edge] = Edge { from: w, to: x, label, boundary: None };
        let f_fwd = OrientedEdge::fwd(edge);
        out.triangles[ta] = [a2, b1, f_fwd.reversed()];
        out.triangles[tb] = [b2, a1, f_fwd];
        Ok(out)
    }

    pub fn gauge(&self, v: usize, g: GroupElem) -> Result<GTriangulation, SurfaceError> {
        if !matches!(self.vertices[v], VertexKind::Marked) {
            return Err(SurfaceError::BoundaryVertex);
        }
        let mut out = self.clone();
        for e in out.edges.iter_mut() {
            if e.from == v {
                e.label = self.group.mul(g, e.label);
            }
            if e.to == v {
                e.label = self.group.mul(e.label, self.group.inverse(g));
            }
        }
        Ok(out)
    }

    pub fn apply(&self, m: Move) -> Result<GTriangulation, SurfaceError> {
        match m {
            Move::Flip(e) => self.flip(e),
            Move::Gauge(v, g) => self.gauge(v, g),
        }
    }

    /// All moves applicable to this triangulation (gauges exclude identity).
    pub fn available_moves(&self) -> Vec<Move> {
        let mut out = Vec::new();
        for e in 0..self.edges.len() {
            if self.is_internal(e) {
                let sides = self.edge_sides(e);
                if sides.len() == 2 && sides[0].0 != sides[1].0 {
                    out.push(Move::Flip(e));
                }
            }
        }
        for v in self.internal_vertices() {
            for g in self.group.elements() {
                if !self.group.is_identity(g) {
                    out.push(Move::Gauge(v, g));
                }
            }
        }
        out
    }

    /// Canonical byte encoding up to simultaneous renaming of vertices,
    /// edges and triangles; labels included.
    pub fn canonical_key(&self) -> Vec<u8> {
        let mut best: Option<Vec<u8>> = None;
        for t0 in 0..self.triangles.len() {
            for rot in 0..3 {
                let key = self.canonical_from(t0, rot);
                if best.as_ref().map(|b| key < *b).unwrap_or(true) {
                    best = Some(key);
                }
            }
        }
        best.unwrap_or_default()
    }

    fn canonical_from(&self, t0: usize, rot: usize) -> Vec<u8> {
        // Deterministic traversal: BFS over triangles through shared edges,
        // renaming edges and vertices in discovery order.
        let mut edge_names: BTreeMap<usize, usize> = BTreeMap::new();
        let mut vert_names: BTreeMap<usize, usize> = BTreeMap::new();
        let mut tri_order = Vec::new();
        let mut tri_rot = vec![0usize; self.triangles.len()];
        let mut seen = vec![false; self.triangles.len()];
        let mut queue = VecDeque::new();
        queue.push_back((t0, rot));
        seen[t0] = true;
        while let Some((t, r)) = queue.pop_front() {
            tri_order.push(t);
            tri_rot[t] = r;
            let tri = self.triangles[t];
            for k in 0..3 {
                let oe = tri[(r + k) % 3];
                let next_len = edge_names.len();
                edge_names.entry(oe.edge).or_insert(next_len);
                let next_v = vert_names.len();
                vert_names.entry(self.src(oe)).or_insert(next_v);
            }
            for k in 0..3 {
                let oe = tri[(r + k) % 3];
                for (t2, s2) in self.edge_sides(oe.edge) {
                    if !seen[t2] {
                        seen[t2] = true;
                        queue.push_back((t2, s2));
                    }
                }
            }
        }
        // Unreached triangles (disconnected surfaces are not produced by the
        // builders) are appended in index order for totality.
        for t in 0..self.triangles.len() {
            if !seen[t] {
                tri_order.push(t);
            }
        }
        // Encoding is independent of stored edge orientations: each slot
        // writes the label as traversed, so reversing an edge's storage (and
        // inverting its label) leaves the key unchanged.
        let mut out = Vec::new();
        out.push(self.triangles.len() as u8);
        for &t in &tri_order {
            let tri = self.triangles[t];
            for k in 0..3 {
                let oe = tri[(tri_rot[t] + k) % 3];
                out.push(*edge_names.get(&oe.edge).unwrap_or(&255) as u8);
                out.push(self.label(oe) as u8);
                out.push(self.edges[oe.edge].boundary.map(|b| b as u8 + 1).unwrap_or(0));
                out.push(*vert_names.get(&self.src(oe)).unwrap_or(&255) as u8);
                let kind = match self.vertices[self.src(oe)] {
                    VertexKind::Boundary(b) => b as u8 + 1,
                    VertexKind::Marked => 0,
                };
                out.push(kind);
            }
        }
        out
    }

    /// Canonical key of the underlying unlabeled ideal triangulation.
    pub fn canonical_key_unlabeled(&self) -> Vec<u8> {
        let mut copy = self.clone();
        for e in copy.edges.iter_mut() {
            e.label = copy.group.identity;
        }
        for b in copy.boundaries.iter_mut() {
            b.holonomy = copy.group.identity;
        }
        copy.canonical_key()
    }
}

// ---------------------------------------------------------------------------
// Dual fat graphs
// ---------------------------------------------------------------------------

/// Slot of a fat-graph vertex: crossing of the dual edge with one triangle
/// side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlotTarget {
    /// Internal fat edge (index, end 0/1).
    Edge(usize, usize),
    /// Leg reaching the boundary (index).
    Leg(usize),
}

#[derive(Debug, Clone)]
pub struct FatVertex {
    /// Targets of the three slots, ccw; slot k crosses triangle side k.
    pub slots: [SlotTarget; 3],
}

#[derive(Debug, Clone, Copy)]
pub struct FatEdge {
    /// (triangle, slot) pairs of the two ends; end 0 is the side traversed
    /// forward by its triangle.
    pub ends: [(usize, usize); 2],
    /// The dual triangulation edge.
    pub dual_edge: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct Leg {
    pub end: (usize, usize),
    pub boundary: usize,
    pub dual_edge: usize,
}

/// Trivalent ribbon graph dual to a triangulation. Vertices are triangles
/// with the ccw slot order inherited from the triangle's side order; edges
/// are dual to internal edges, legs to boundary edges.
#[derive(Debug, Clone)]
pub struct FatGraph {
    pub vertices: Vec<FatVertex>,
    pub edges: Vec<FatEdge>,
    pub legs: Vec<Leg>,
}

impl GTriangulation {
    pub fn dual_fat_graph(&self) -> FatGraph {
        let mut edges: Vec<FatEdge> = Vec::new();
        let mut legs: Vec<Leg> = Vec::new();
        let mut slot_of: BTreeMap<(usize, usize), SlotTarget> = BTreeMap::new();
        for e in 0..self.edges.len() {
            let sides = self.edge_sides(e);
            match self.edges[e].boundary {
                Some(b) => {
                    assert_eq!(sides.len(), 1);
                    let id = legs.len();
                    legs.push(Leg { end: sides[0], boundary: b, dual_edge: e });
                    slot_of.insert(sides[0], SlotTarget::Leg(id));
                }
                None => {
                    assert_eq!(sides.len(), 2);
                    // End 0: the side where the triangle traverses e forward.
                    let fwd_first = self.triangles[sides[0].0][sides[0].1].forward;
                    let ends = if fwd_first { [sides[0], sides[1]] } else { [sides[1], sides[0]] };
                    let id = edges.len();
                    edges.push(FatEdge { ends, dual_edge: e });
                    slot_of.insert(ends[0], SlotTarget::Edge(id, 0));
                    slot_of.insert(ends[1], SlotTarget::Edge(id, 1));
                }
            }
        }
        let vertices = (0..self.triangles.len())
            .map(|t| FatVertex {
                slots: [
                    slot_of[&(t, 0)],
                    slot_of[&(t, 1)],
                    slot_of[&(t, 2)],
                ],
            })
            .collect();
        FatGraph { vertices, edges, legs }
    }
}

impl FatGraph {
    /// Genus computed from the ribbon structure after capping each boundary
    /// component with a disk (legs attached along the boundary cycles).
    pub fn genus(&self, tri: &GTriangulation) -> usize {
        // Darts: (vertex, slot) plus one dart per leg on the boundary side.
        // Faces are traced by next(d) = ccw-next at the vertex of the twin.
        #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
        enum Dart {
            VertexSlot(usize, usize),
            LegTip(usize),
        }
        let twin = |d: Dart| -> Dart {
            match d {
                Dart::VertexSlot(v, s) => match self.vertices[v].slots[s] {
                    SlotTarget::Edge(e, end) => {
                        let (tv, ts) = self.edges[e].ends[1 - end];
                        Dart::VertexSlot(tv, ts)
                    }
                    SlotTarget::Leg(l) => Dart::LegTip(l),
                },
                Dart::LegTip(l) => {
                    let (tv, ts) = self.legs[l].end;
                    Dart::VertexSlot(tv, ts)
                }
            }
        };
        // ccw next around a fat vertex; around a capped boundary vertex the
        // order of legs follows the boundary cycle.
        let mut leg_cycle: BTreeMap<usize, usize> = BTreeMap::new();
        for b in &tri.boundaries {
            // legs ordered along boundary edges of the component
            let ids: Vec<usize> = b
                .edges
                .iter()
                .map(|oe| self.legs.iter().position(|l| l.dual_edge == oe.edge).unwrap())
                .collect();
            for (k, &l) in ids.iter().enumerate() {
                leg_cycle.insert(l, ids[(k + 1) % ids.len()]);
            }
        }
        let next_at_vertex = |d: Dart| -> Dart {
            match d {
                Dart::VertexSlot(v, s) => Dart::VertexSlot(v, (s + 1) % 3),
                Dart::LegTip(l) => Dart::LegTip(leg_cycle[&l]),
            }
        };
        let mut darts: Vec<Dart> = Vec::new();
        for v in 0..self.vertices.len() {
            for s in 0..3 {
                darts.push(Dart::VertexSlot(v, s));
            }
        }
        for l in 0..self.legs.len() {
            darts.push(Dart::LegTip(l));
        }
        let mut seen: BTreeSet<Dart> = BTreeSet::new();
        let mut faces = 0usize;
        for &d0 in &darts {
            if seen.contains(&d0) {
                continue;
            }
            faces += 1;
            let mut d = d0;
            loop {
                seen.insert(d);
                d = next_at_vertex(twin(d));
                if d == d0 {
                    break;
                }
            }
        }
        let v = self.vertices.len() + tri.boundaries.len();
        let e = self.edges.len() + self.legs.len();
        let chi = v as i64 - e as i64 + faces as i64;
        assert!(chi <= 2 && (2 - chi) % 2 == 0, "ribbon Euler characteristic must be even");
        ((2 - chi) / 2) as usize
    }
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

/// Polygon side in a gluing scheme.
#[derive(Debug, Clone, Copy)]
enum Side {
    /// Boundary edge of the given component.
    Boundary(usize),
    /// Glued edge: (cut name, forward?)
    Cut(usize, bool),
}

/// Builds a triangulated surface from a one-polygon gluing scheme by fanning
/// from corner 0. Cut labels are free parameters fixed by a search so every
/// face relation holds.
fn polygon_scheme(
    group: &FiniteGroup,
    word: &[Side],
    holonomies: &[GroupElem],
    genus: usize,
) -> Result<GTriangulation, SurfaceError> {
    let n = word.len();
    assert!(n >= 3);
    let n_cuts = word
        .iter()
        .filter_map(|s| match s {
            Side::Cut(c, true) => Some(*c + 1),
            _ => None,
        })
        .max()
        .unwrap_or(0);

    // Corner identification via union-find.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    let mut cut_occurrences: BTreeMap<usize, Vec<(usize, bool)>> = BTreeMap::new();
    for (k, s) in word.iter().enumerate() {
        if let Side::Cut(c, f) = s {
            cut_occurrences.entry(*c).or_default().push((k, *f));
        }
    }
    for (c, occ) in &cut_occurrences {
        if occ.len() != 2 || occ[0].1 == occ[1].1 {
            return Err(SurfaceError::InadmissibleSurface(format!(
                "cut {c} must appear exactly once in each direction"
            )));
        }
        let (kp, km) = if occ[0].1 { (occ[0].0, occ[1].0) } else { (occ[1].0, occ[0].0) };
        // side kp: c_kp -> c_{kp+1} glued to side km traversed backwards.
        let u1 = find(&mut parent, kp);
        let u2 = find(&mut parent, (km + 1) % n);
        parent[u1] = u2;
        let v1 = find(&mut parent, (kp + 1) % n);
        let v2 = find(&mut parent, km);
        parent[v1] = v2;
    }
    // Vertex classes.
    let mut class_of = vec![0usize; n];
    let mut classes: Vec<usize> = Vec::new();
    for k in 0..n {
        let r = find(&mut parent, k);
        let idx = match classes.iter().position(|&c| c == r) {
            Some(i) => i,
            None => {
                classes.push(r);
                classes.len() - 1
            }
        };
        class_of[k] = idx;
    }
    // Kind of each vertex class: boundary basepoint if a boundary side starts
    // or ends there, else marked.
    let mut kind: Vec<VertexKind> = vec![VertexKind::Marked; classes.len()];
    for (k, s) in word.iter().enumerate() {
        if let Side::Boundary(b) = s {
            kind[class_of[k]] = VertexKind::Boundary(*b);
            kind[class_of[(k + 1) % n]] = VertexKind::Boundary(*b);
        }
    }

    // Search cut labels so that the polygon word multiplies to the identity.
    let side_label = |s: &Side, cuts: &[GroupElem]| -> (GroupElem, bool) {
        match s {
            Side::Boundary(b) => (holonomies[*b], true),
            Side::Cut(c, f) => (cuts[*c], *f),
        }
    };
    let mut cuts = vec![group.identity; n_cuts];
    let mut found = false;
    let total = (group.order as u64).pow(n_cuts as u32);
    if total > 2_000_000 {
        return Err(SurfaceError::InadmissibleSurface(
            "cut-label search space too large".into(),
        ));
    }
    for idx in 0..total {
        let mut x = idx;
        for c in cuts.iter_mut() {
            *c = (x % group.order as u64) as usize;
            x /= group.order as u64;
        }
        let w: Vec<(GroupElem, bool)> = word.iter().map(|s| side_label(s, &cuts)).collect();
        if group.is_identity(group.word(&w)) {
            found = true;
            break;
        }
    }
    if !found {
        return Err(SurfaceError::InadmissibleSurface(
            "boundary holonomies are not realizable on this surface".into(),
        ));
    }

    // Edges: one per boundary side, one per cut, plus fan diagonals.
    let mut edges: Vec<Edge> = Vec::new();
    let mut side_edge: Vec<OrientedEdge> = Vec::with_capacity(n);
    let mut cut_edge: BTreeMap<usize, usize> = BTreeMap::new();
    let mut boundary_cycles: BTreeMap<usize, Vec<OrientedEdge>> = BTreeMap::new();
    for (k, s) in word.iter().enumerate() {
        let from = class_of[k];
        let to = class_of[(k + 1) % n];
        match s {
            Side::Boundary(b) => {
                let id = edges.len();
                edges.push(Edge { from, to, label: holonomies[*b], boundary: Some(*b) });
                side_edge.push(OrientedEdge::fwd(id));
                boundary_cycles.entry(*b).or_default().push(OrientedEdge::fwd(id));
            }
            Side::Cut(c, f) => {
                if let Some(&id) = cut_edge.get(c) {
                    side_edge.push(OrientedEdge { edge: id, forward: *f });
                } else {
                    let id = edges.len();
                    // store the edge in its forward direction
                    let (ef, et) = if *f { (from, to) } else { (to, from) };
                    edges.push(Edge { from: ef, to: et, label: cuts[*c], boundary: None });
                    cut_edge.insert(*c, id);
                    side_edge.push(OrientedEdge { edge: id, forward: *f });
                }
            }
        }
    }
    // Fan diagonals d_k: corner 0 -> corner k for k = 2..n-1, with labels
    // forced by the face relations.
    let mut triangles: Vec<[OrientedEdge; 3]> = Vec::new();
    let mut diag: BTreeMap<usize, OrientedEdge> = BTreeMap::new();
    diag.insert(1, side_edge[0]);
    let mut diag_label: BTreeMap<usize, GroupElem> = BTreeMap::new();
    {
        let (l, f) = side_label(&word[0], &cuts);
        diag_label.insert(1, if f { l } else { group.inverse(l) });
    }
    for k in 1..n - 1 {
        let d_k = diag[&k];
        let lab_k = diag_label[&k];
        let (sl, sf) = side_label(&word[k], &cuts);
        let side_lab = if sf { sl } else { group.inverse(sl) };
        let lab_next = group.mul(lab_k, side_lab);
        let d_next = if k == n - 2 {
            // the closing diagonal is the reversed last side
            side_edge[n - 1].reversed()
        } else {
            let id = edges.len();
            edges.push(Edge { from: class_of[0], to: class_of[(k + 1) % n], label: lab_next, boundary: None });
            OrientedEdge::fwd(id)
        };
        triangles.push([d_k, side_edge[k], d_next.reversed()]);
        diag.insert(k + 1, d_next);
        diag_label.insert(k + 1, lab_next);
    }

    let boundaries = (0..holonomies.len())
        .map(|b| BoundaryComponent {
            edges: boundary_cycles.get(&b).cloned().unwrap_or_default(),
            holonomy: holonomies[b],
        })
        .collect();
    let tri = GTriangulation {
        group: group.clone(),
        vertices: kind,
        edges,
        triangles,
        boundaries,
        genus,
    };
    let report = tri.validate();
    if !report.is_empty() {
        return Err(SurfaceError::InadmissibleSurface(format!(
            "internal builder error: {}",
            report.join("; ")
        )));
    }
    Ok(tri)
}

/// Splits the marked point count up by repeated 1-to-3 subdivision of the
/// first triangle.
fn add_marked_points(mut tri: GTriangulation, count: usize) -> GTriangulation {
    for _ in 0..count {
        let t = 0;
        let [e1, e2, e3] = tri.triangles[t];
        let m = tri.vertices.len();
        tri.vertices.push(VertexKind::Marked);
        let e = tri.group.identity;
        let (v1, v2, v3) = (tri.src(e1), tri.src(e2), tri.src(e3));
        let n1 = tri.edges.len();
        tri.edges.push(Edge { from: v1, to: m, label: e, boundary: None });
        let g1 = tri.label(e1);
        let n2 = tri.edges.len();
        // face (e1, n2, n1 rev): g(e1) g(n2) g(n1)^{-1} = id
        tri.edges.push(Edge { from: v2, to: m, label: tri.group.inverse(g1), boundary: None });
        let g2 = tri.label(e2);
        let n3 = tri.edges.len();
        let lab3 = tri.group.mul(tri.group.inverse(g2), tri.edges[n2].label);
        tri.edges.push(Edge { from: v3, to: m, label: lab3, boundary: None });
        tri.triangles[t] = [e1, OrientedEdge::fwd(n2), OrientedEdge::rev(n1)];
        tri.triangles.push([e2, OrientedEdge::fwd(n3), OrientedEdge::rev(n2)]);
        tri.triangles.push([e3, OrientedEdge::fwd(n1), OrientedEdge::rev(n3)]);
        let _ = (v1, v2, v3);
    }
    tri
}

/// Deterministic triangulated model of the surface with the given genus,
/// boundary holonomies and extra marked points.
pub fn build_surface(
    group: &FiniteGroup,
    genus: usize,
    holonomies: &[GroupElem],
    marked: usize,
) -> Result<GTriangulation, SurfaceError> {
    let b = holonomies.len();
    for &h in holonomies {
        if h >= group.order {
            return Err(SurfaceError::InadmissibleSurface("holonomy out of range".into()));
        }
    }
    let base = match (genus, b) {
        (0, 0) => {
            // Sphere: needs at least three marked points.
            if marked < 3 {
                return Err(SurfaceError::InadmissibleSurface(
                    "a sphere needs at least three marked points".into(),
                ));
            }
            let tri = sphere(group);
            return Ok(add_marked_points(tri, marked - 3));
        }
        (0, 1) => {
            if !group.is_identity(holonomies[0]) {
                return Err(SurfaceError::InadmissibleSurface(
                    "a disk boundary must have trivial holonomy".into(),
                ));
            }
            if marked < 1 {
                return Err(SurfaceError::InadmissibleSurface(
                    "a disk needs at least one marked point".into(),
                ));
            }
            let tri = disk(group);
            return Ok(add_marked_points(tri, marked - 1));
        }
        (0, 2) => {
            // Cylinder: B0+ u B1- u^{-1}
            polygon_scheme(
                group,
                &[Side::Boundary(0), Side::Cut(0, true), Side::Cut(1, true), Side::Cut(0, false)],
                holonomies,
                0,
            )
            .or_else(|_| {
                polygon_scheme(
                    group,
                    &[
                        Side::Boundary(0),
                        Side::Cut(0, true),
                        Side::Boundary(1),
                        Side::Cut(0, false),
                    ],
                    holonomies,
                    0,
                )
            })?
        }
        (0, 3) => polygon_scheme(
            group,
            &[
                Side::Boundary(2),
                Side::Cut(0, true),
                Side::Boundary(0),
                Side::Cut(0, false),
                Side::Cut(1, true),
                Side::Boundary(1),
                Side::Cut(1, false),
            ],
            holonomies,
            0,
        )?,
        (1, 0) => {
            if marked < 1 {
                return Err(SurfaceError::InadmissibleSurface(
                    "a closed torus needs a marked point".into(),
                ));
            }
            let tri = polygon_scheme(
                group,
                &[
                    Side::Cut(0, true),
                    Side::Cut(1, true),
                    Side::Cut(0, false),
                    Side::Cut(1, false),
                ],
                holonomies,
                1,
            )?;
            return Ok(add_marked_points(tri, marked - 1));
        }
        (2, bn @ 0..=3) => {
            let mut word = Vec::new();
            // h b3 h^{-1}-style conjugated boundary slits, then commutators.
            for comp in 0..bn {
                word.push(Side::Cut(comp, true));
                word.push(Side::Boundary(comp));
                word.push(Side::Cut(comp, false));
            }
            let base = bn;
            for j in 0..2 {
                let a = base + 2 * j;
                let b_ = base + 2 * j + 1;
                word.push(Side::Cut(a, true));
                word.push(Side::Cut(b_, true));
                word.push(Side::Cut(a, false));
                word.push(Side::Cut(b_, false));
            }
            let tri = polygon_scheme(group, &word, holonomies, 2)?;
            if bn == 0 {
                if marked < 1 {
                    return Err(SurfaceError::InadmissibleSurface(
                        "a closed surface needs a marked point".into(),
                    ));
                }
                return Ok(add_marked_points(tri, marked - 1));
            }
            tri
        }
        _ => {
            return Err(SurfaceError::InadmissibleSurface(format!(
                "no builder for genus {genus} with {b} boundary components"
            )))
        }
    };
    Ok(add_marked_points(base, marked))
}

fn disk(group: &FiniteGroup) -> GTriangulation {
    let e = group.identity;
    GTriangulation {
        group: group.clone(),
        vertices: vec![VertexKind::Boundary(0), VertexKind::Marked],
        edges: vec![
            Edge { from: 0, to: 0, label: e, boundary: Some(0) },
            Edge { from: 0, to: 1, label: e, boundary: None },
        ],
        triangles: vec![[OrientedEdge::fwd(0), OrientedEdge::fwd(1), OrientedEdge::rev(1)]],
        boundaries: vec![BoundaryComponent { edges: vec![OrientedEdge::fwd(0)], holonomy: e }],
        genus: 0,
    }
}

fn sphere(group: &FiniteGroup) -> GTriangulation {
    let e = group.identity;
    GTriangulation {
        group: group.clone(),
        vertices: vec![VertexKind::Marked; 3],
        edges: vec![
            Edge { from: 0, to: 1, label: e, boundary: None },
            Edge { from: 1, to: 2, label: e, boundary: None },
            Edge { from: 2, to: 0, label: e, boundary: None },
        ],
        triangles: vec![
            [OrientedEdge::fwd(0), OrientedEdge::fwd(1), OrientedEdge::fwd(2)],
            [OrientedEdge::rev(0), OrientedEdge::rev(2), OrientedEdge::rev(1)],
        ],
        boundaries: vec![],
        genus: 0,
    }
}

// ---------------------------------------------------------------------------
// Move-graph exploration
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct MoveGraph {
    /// Canonical keys of discovered triangulations.
    pub nodes: Vec<Vec<u8>>,
    /// Representative triangulations, parallel to `nodes`.
    pub reps: Vec<GTriangulation>,
    /// Directed edges (from, to, move).
    pub arrows: Vec<(usize, usize, Move)>,
    pub budget_exhausted: bool,
}

/// Breadth-first enumeration of triangulations reachable by flips and gauge
/// moves, up to `max_nodes` discovered nodes.
pub fn enumerate_reachable(start: &GTriangulation, max_nodes: usize) -> MoveGraph {
    let mut nodes: Vec<Vec<u8>> = Vec::new();
    let mut reps: Vec<GTriangulation> = Vec::new();
    let mut index: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    let mut arrows = Vec::new();
    let mut queue = VecDeque::new();
    let mut exhausted = false;

    let key0 = start.canonical_key();
    index.insert(key0.clone(), 0);
    nodes.push(key0);
    reps.push(start.clone());
    queue.push_back(0usize);

    while let Some(cur) = queue.pop_front() {
        let tri = reps[cur].clone();
        for m in tri.available_moves() {
            let next = tri.apply(m).expect("available moves apply");
            let key = next.canonical_key();
            let id = match index.get(&key) {
                Some(&i) => i,
                None => {
                    if nodes.len() >= max_nodes {
                        exhausted = true;
                        continue;
                    }
                    let i = nodes.len();
                    index.insert(key.clone(), i);
                    nodes.push(key);
                    reps.push(next.clone());
                    queue.push_back(i);
                    i
                }
            };
            arrows.push((cur, id, m));
        }
    }
    MoveGraph { nodes, reps, arrows, budget_exhausted: exhausted }
}
