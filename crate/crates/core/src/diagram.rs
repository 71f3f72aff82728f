//! Graphical-calculus engine: fusion-tree vectors, F-moves, bubble and
//! completeness moves, theta pairings and partial traces.
//!
//! All coupling bases follow the conventions in [`crate::category`]:
//! fusion couplings `M(a,b;c)` with their declared dual splitting bases, and
//! cyclic vertex spaces `V(a,b,c) = M(a,b;c*)` rotated by the stored ρ.
//! The dual pairing between `V(a,b,c)` and `V(c*,b*,a*)` is the index
//! pairing after a double rotation of the second factor; the theta graph
//! evaluates to `d_c` times that pairing.

use crate::category::{CategoryData, SimpleId};
use crate::matrix::Mat;
use crate::scalar::Scalar;
use std::collections::BTreeMap;

/// Sparse vector keyed by an ordered state encoding.
pub type SparseVec<K> = BTreeMap<K, Scalar>;

/// Adds `val` to `acc[key]`, dropping exact zeros.
pub fn accumulate<K: Ord + Clone>(acc: &mut SparseVec<K>, key: &K, val: &Scalar) {
    if val.is_zero() {
        return;
    }
    match acc.get_mut(key) {
        Some(e) => {
            *e = e.add(val);
            if e.is_zero() {
                acc.remove(key);
            }
        }
        None => {
            acc.insert(key.clone(), val.clone());
        }
    }
}

/// Convenience wrapper carrying the category for move computations.
pub struct Engine<'a> {
    pub cat: &'a CategoryData,
}

impl<'a> Engine<'a> {
    pub fn new(cat: &'a CategoryData) -> Self {
        Engine { cat }
    }

    /// Quantum-dimension ratio d_t/d_x: the weight of tracing out a strand
    /// fused through channel `t` while a simple `x` is retained.
    pub fn trace_weight(&self, t: SimpleId, x: SimpleId) -> Scalar {
        self.cat
            .qdim(t)
            .div(self.cat.qdim(x))
            .expect("quantum dimensions are invertible")
    }

    /// Dual pairing matrix T with <mu, nu> = T[mu][nu] for mu over V(a,b,c)
    /// and nu over V(c*,b*,a*).
    pub fn theta_pairing_matrix(&self, a: SimpleId, b: SimpleId, c: SimpleId) -> Mat {
        let (da, db, dc) = (self.cat.dual(a), self.cat.dual(b), self.cat.dual(c));
        // V(c*,b*,a*) --ρ--> V(b*,a*,c*) --ρ--> V(a*,c*,b*), then pair by index
        // against V(a,b,c).
        let r1 = self.cat.rotation(dc, db, da);
        let r2 = self.cat.rotation(db, da, dc);
        let t = r2.mul(&r1);
        debug_assert_eq!(t.rows, self.cat.coupling_dim(a, b, c) as usize);
        t
    }

    /// Value of the closed theta graph on couplings mu ∈ V(a,b,c),
    /// nu ∈ V(c*,b*,a*).
    pub fn theta(&self, a: SimpleId, b: SimpleId, c: SimpleId, mu: usize, nu: usize) -> Scalar {
        let t = self.theta_pairing_matrix(a, b, c);
        t.get(mu, nu).mul(self.cat.qdim(c))
    }
}

// ---------------------------------------------------------------------------
// Tree shapes and states
// ---------------------------------------------------------------------------

/// Shape of a rooted trivalent (full binary) fusion tree over a leaf word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeShape {
    /// Leaf holding its position in the leaf word.
    Leaf(usize),
    Node(Box<TreeShape>, Box<TreeShape>),
}

impl TreeShape {
    /// Left comb over n leaves: ((..(0 1) 2) .. n-1).
    pub fn comb(n: usize) -> TreeShape {
        assert!(n >= 1);
        let mut t = TreeShape::Leaf(0);
        for k in 1..n {
            t = TreeShape::Node(Box::new(t), Box::new(TreeShape::Leaf(k)));
        }
        t
    }

    pub fn count_nodes(&self) -> usize {
        match self {
            TreeShape::Leaf(_) => 0,
            TreeShape::Node(l, r) => 1 + l.count_nodes() + r.count_nodes(),
        }
    }

    /// Subtree at a root path (false = left, true = right).
    pub fn subtree(&self, path: &[bool]) -> &TreeShape {
        match (path.first(), self) {
            (None, s) => s,
            (Some(&dir), TreeShape::Node(l, r)) => {
                if dir {
                    r.subtree(&path[1..])
                } else {
                    l.subtree(&path[1..])
                }
            }
            _ => panic!("path leaves the tree"),
        }
    }

    /// Prefix-order index of the node a path addresses.
    pub fn node_index(&self, path: &[bool]) -> usize {
        fn go(shape: &TreeShape, path: &[bool], idx: usize) -> usize {
            match (path.first(), shape) {
                (None, TreeShape::Node(..)) => idx,
                (Some(&dir), TreeShape::Node(l, r)) => {
                    if dir {
                        go(r, &path[1..], idx + 1 + l.count_nodes())
                    } else {
                        go(l, &path[1..], idx + 1)
                    }
                }
                _ => panic!("path must address an internal node"),
            }
        }
        go(self, path, 0)
    }

    /// All internal-node paths in prefix order.
    pub fn node_paths(&self) -> Vec<Vec<bool>> {
        let mut out = Vec::new();
        fn go(shape: &TreeShape, prefix: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
            if let TreeShape::Node(l, r) = shape {
                out.push(prefix.clone());
                prefix.push(false);
                go(l, prefix, out);
                prefix.pop();
                prefix.push(true);
                go(r, prefix, out);
                prefix.pop();
            }
        }
        go(self, &mut Vec::new(), &mut out);
        out
    }
}

/// Channels and coupling indices for every internal node, prefix order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeState {
    pub channels: Vec<SimpleId>,
    pub couplings: Vec<usize>,
}

/// Channel carried by the subtree whose prefix index is `base`.
fn subtree_channel(sh: &TreeShape, base: usize, st: &TreeState, leaves: &[SimpleId]) -> SimpleId {
    match sh {
        TreeShape::Leaf(k) => leaves[*k],
        TreeShape::Node(..) => st.channels[base],
    }
}

/// Vector in Hom(x_1 ⊗ ... ⊗ x_n, root) over fusion-tree states of a fixed
/// shape.
#[derive(Debug, Clone)]
pub struct TreeVector {
    pub shape: TreeShape,
    pub leaves: Vec<SimpleId>,
    pub root: SimpleId,
    pub entries: SparseVec<TreeState>,
}

impl TreeVector {
    pub fn zero(shape: TreeShape, leaves: Vec<SimpleId>, root: SimpleId) -> Self {
        TreeVector { shape, leaves, root, entries: BTreeMap::new() }
    }

    pub fn single(shape: TreeShape, leaves: Vec<SimpleId>, root: SimpleId, state: TreeState) -> Self {
        let mut v = TreeVector::zero(shape, leaves, root);
        v.entries.insert(state, Scalar::one());
        v
    }

    pub fn scale(&self, s: &Scalar) -> TreeVector {
        let mut out = self.clone();
        for x in out.entries.values_mut() {
            *x = x.mul(s);
        }
        out
    }

    pub fn add(&self, other: &TreeVector) -> TreeVector {
        assert!(self.shape == other.shape && self.leaves == other.leaves && self.root == other.root);
        let mut out = self.clone();
        for (k, v) in &other.entries {
            accumulate(&mut out.entries, k, v);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Enumerates all admissible states with the given root channel.
    pub fn basis_states(
        cat: &CategoryData,
        shape: &TreeShape,
        leaves: &[SimpleId],
        root: SimpleId,
    ) -> Vec<TreeState> {
        let mut out = Vec::new();
        for (ch, st) in collect_states(cat, shape, leaves) {
            if ch == root {
                out.push(st);
            }
        }
        out
    }
}

fn collect_states(
    cat: &CategoryData,
    shape: &TreeShape,
    leaves: &[SimpleId],
) -> Vec<(SimpleId, TreeState)> {
    match shape {
        TreeShape::Leaf(k) => {
            vec![(leaves[*k], TreeState { channels: vec![], couplings: vec![] })]
        }
        TreeShape::Node(l, r) => {
            let lefts = collect_states(cat, l, leaves);
            let rights = collect_states(cat, r, leaves);
            let mut out = Vec::new();
            for t in 0..cat.simple_count() {
                for (cl, stl) in &lefts {
                    for (cr, str_) in &rights {
                        for mu in 0..cat.n(*cl, *cr, t) as usize {
                            let mut channels = vec![t];
                            channels.extend_from_slice(&stl.channels);
                            channels.extend_from_slice(&str_.channels);
                            let mut couplings = vec![mu];
                            couplings.extend_from_slice(&stl.couplings);
                            couplings.extend_from_slice(&str_.couplings);
                            out.push((t, TreeState { channels, couplings }));
                        }
                    }
                }
            }
            out
        }
    }
}

// ---------------------------------------------------------------------------
// F-move on trees
// ---------------------------------------------------------------------------

/// Reassociates the subtree at `path` from ((A B) C) to (A (B C)) when
/// `forward`, else back; exact on every state.
pub fn f_move(cat: &CategoryData, v: &TreeVector, path: &[bool], forward: bool) -> TreeVector {
    let new_shape = rewrite_shape(&v.shape, path, forward);
    let mut out = TreeVector::zero(new_shape, v.leaves.clone(), v.root);
    for (state, coeff) in &v.entries {
        for (new_state, f) in f_move_state(cat, &v.shape, &v.leaves, v.root, path, forward, state) {
            accumulate(&mut out.entries, &new_state, &f.mul(coeff));
        }
    }
    out
}

fn rewrite_shape(shape: &TreeShape, path: &[bool], forward: bool) -> TreeShape {
    match (path.first(), shape) {
        (Some(&dir), TreeShape::Node(l, r)) => {
            if dir {
                TreeShape::Node(l.clone(), Box::new(rewrite_shape(r, &path[1..], forward)))
            } else {
                TreeShape::Node(Box::new(rewrite_shape(l, &path[1..], forward)), r.clone())
            }
        }
        (None, TreeShape::Node(l, r)) => {
            if forward {
                match l.as_ref() {
                    TreeShape::Node(a, b) => {
                        TreeShape::Node(a.clone(), Box::new(TreeShape::Node(b.clone(), r.clone())))
                    }
                    _ => panic!("f_move: left child is not a node"),
                }
            } else {
                match r.as_ref() {
                    TreeShape::Node(b, c) => {
                        TreeShape::Node(Box::new(TreeShape::Node(l.clone(), b.clone())), c.clone())
                    }
                    _ => panic!("f_move: right child is not a node"),
                }
            }
        }
        _ => panic!("f_move: bad path"),
    }
}

fn f_move_state(
    cat: &CategoryData,
    shape: &TreeShape,
    leaves: &[SimpleId],
    root: SimpleId,
    path: &[bool],
    forward: bool,
    state: &TreeState,
) -> Vec<(TreeState, Scalar)> {
    let p_idx = shape.node_index(path);
    let sub = shape.subtree(path);
    let TreeShape::Node(l, r) = sub else { panic!("path must address a node") };
    let d = if path.is_empty() { root } else { state.channels[p_idx] };
    let mut results = Vec::new();

    if forward {
        // sub = Node(Node(A,B), C): prefix indices p (β over (m,c;d)),
        // p+1 (α over (a,b;m)), then A, B, C blocks.
        let TreeShape::Node(a_sh, b_sh) = l.as_ref() else { panic!("left child must be a node") };
        let a_nodes = a_sh.count_nodes();
        let b_nodes = b_sh.count_nodes();
        let m = state.channels[p_idx + 1];
        let a = subtree_channel(a_sh, p_idx + 2, state, leaves);
        let b = subtree_channel(b_sh, p_idx + 2 + a_nodes, state, leaves);
        let c = subtree_channel(r, p_idx + 2 + a_nodes + b_nodes, state, leaves);
        let alpha = state.couplings[p_idx + 1];
        let beta = state.couplings[p_idx];
        for s in 0..cat.simple_count() {
            for gamma in 0..cat.n(b, c, s) as usize {
                for delta in 0..cat.n(a, s, d) as usize {
                    let f = cat.f_entry(a, b, c, d, (m, alpha, beta), (s, gamma, delta));
                    if f.is_zero() {
                        continue;
                    }
                    // New prefix order: p (δ over (a,s;d)), A block, node (B C)
                    // (γ over (b,c;s)), B block, C block.
                    let mut channels = state.channels.clone();
                    let mut couplings = state.couplings.clone();
                    channels.remove(p_idx + 1);
                    couplings.remove(p_idx + 1);
                    channels.insert(p_idx + 1 + a_nodes, s);
                    couplings.insert(p_idx + 1 + a_nodes, gamma);
                    channels[p_idx] = d;
                    couplings[p_idx] = delta;
                    results.push((TreeState { channels, couplings }, f));
                }
            }
        }
    } else {
        // sub = Node(A, Node(B,C)): indices p (δ over (a,s;d)), A block,
        // q = p+1+|A| (γ over (b,c;s)), B block, C block.
        let TreeShape::Node(b_sh, c_sh) = r.as_ref() else { panic!("right child must be a node") };
        let a_nodes = l.count_nodes();
        let b_nodes = b_sh.count_nodes();
        let q_idx = p_idx + 1 + a_nodes;
        let s = state.channels[q_idx];
        let a = subtree_channel(l, p_idx + 1, state, leaves);
        let b = subtree_channel(b_sh, q_idx + 1, state, leaves);
        let c = subtree_channel(c_sh, q_idx + 1 + b_nodes, state, leaves);
        let gamma = state.couplings[q_idx];
        let delta = state.couplings[p_idx];
        let finv = cat.f_matrix_inv(a, b, c, d);
        let rows = cat.f_rows(a, b, c, d);
        let cols = cat.f_cols(a, b, c, d);
        let col_pos = cols
            .iter()
            .position(|&(s_, g_, d_)| s_ == s && g_ == gamma && d_ == delta)
            .expect("state indexes an admissible column");
        for (ri, &(m, alpha, beta)) in rows.iter().enumerate() {
            let f = finv.get(ri, col_pos).clone();
            if f.is_zero() {
                continue;
            }
            let mut channels = state.channels.clone();
            let mut couplings = state.couplings.clone();
            channels.remove(q_idx);
            couplings.remove(q_idx);
            channels.insert(p_idx + 1, m);
            couplings.insert(p_idx + 1, alpha);
            channels[p_idx] = d;
            couplings[p_idx] = beta;
            results.push((TreeState { channels, couplings }, f));
        }
    }
    results
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::CategoryData;
    use std::path::PathBuf;

    fn load(name: &str) -> CategoryData {
        let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/categories").join(name);
        CategoryData::load(&p).unwrap()
    }

    #[test]
    fn f_move_round_trip_is_exact_identity() {
        for name in ["vec_z2_twisted.json", "ising_z2.json", "vec_s3.json"] {
            let cat = load(name);
            let shape = TreeShape::comb(4);
            // all admissible 4-leaf words with unit total
            let m = cat.simple_count();
            for x1 in 0..m {
                for x2 in 0..m {
                    for x3 in 0..m {
                        for x4 in 0..m {
                            let leaves = vec![x1, x2, x3, x4];
                            for st in
                                TreeVector::basis_states(&cat, &shape, &leaves, cat.unit())
                            {
                                let v = TreeVector::single(
                                    shape.clone(),
                                    leaves.clone(),
                                    cat.unit(),
                                    st.clone(),
                                );
                                let w = f_move(&cat, &v, &[false], true);
                                let back = f_move(&cat, &w, &[false], false);
                                assert_eq!(back.shape, v.shape);
                                let mut diff = back.clone();
                                for (k, val) in &v.entries {
                                    accumulate(&mut diff.entries, k, &val.neg());
                                }
                                assert!(diff.is_zero(), "{name}: round trip failed");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pentagon_through_tree_moves() {
        // Two reassociation routes (((12)3)4) -> (1(2(34))) must agree.
        for name in ["vec_z2_twisted.json", "ising_z2.json"] {
            let cat = load(name);
            let shape = TreeShape::comb(4);
            let m = cat.simple_count();
            for x1 in 0..m {
                for x2 in 0..m {
                    for x3 in 0..m {
                        for x4 in 0..m {
                            let leaves = vec![x1, x2, x3, x4];
                            for st in
                                TreeVector::basis_states(&cat, &shape, &leaves, cat.unit())
                            {
                                let v = TreeVector::single(
                                    shape.clone(),
                                    leaves.clone(),
                                    cat.unit(),
                                    st,
                                );
                                // Route A: two moves.
                                let a1 = f_move(&cat, &v, &[], true); // ((12)(34))? no: (12)3)4 -> (12)(34)
                                let a2 = f_move(&cat, &a1, &[], true);
                                // Route B: three moves.
                                let b1 = f_move(&cat, &v, &[false], true); // (1(23))4
                                let b2 = f_move(&cat, &b1, &[], true); // 1((23)4)
                                let b3 = f_move(&cat, &b2, &[true], true); // 1(2(34))
                                assert_eq!(a2.shape, b3.shape);
                                let mut diff = a2.clone();
                                for (k, val) in &b3.entries {
                                    accumulate(&mut diff.entries, k, &val.neg());
                                }
                                assert!(diff.is_zero(), "{name}: pentagon mismatch");
                            }
                        }
                    }
                }
            }
        }
    }
}
