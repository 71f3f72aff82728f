//! The graded-center side: half-braidings, hom-space projectors, induction
//! idempotents, the sector crossing, and tube algebras per grade sector.
//!
//! Skeletal layout of a half-braiding γ for a center object `z` with
//! underlying multiplicities over simples: for each transparent simple
//! `i` in the neutral sector and each channel `w`, a block matrix from the
//! "below" layout — couplings M(a,i;w) tagged (a, m_a, μ) — to the "above"
//! layout — couplings M(i,b;w) tagged (b, m_b, ν). The whole γ_i is the
//! direct sum of blocks over w and must be invertible; the unit strand
//! braids identically.

use crate::category::{scalar_from_value, CatError, CategoryData, SimpleId};
use crate::group::GroupElem;
use crate::matrix::Mat;
use crate::scalar::Scalar;
use serde_json::Value;
use std::collections::HashMap;
use std::path::Path;

#[derive(Debug, Clone)]
pub struct CenterObject {
    pub name: String,
    pub grade: GroupElem,
    pub mult: Vec<u32>,
    /// half_braiding[&i][&w] = block matrix, above-layout rows by
    /// below-layout columns.
    pub half_braiding: HashMap<SimpleId, HashMap<SimpleId, Mat>>,
}

/// Basis of the "below" layout ⊕_a mult(a)·M(a,i;w).
pub fn below_basis(cat: &CategoryData, z: &CenterObject, i: SimpleId, w: SimpleId) -> Vec<(SimpleId, usize, usize)> {
    let mut out = Vec::new();
    for a in 0..cat.simple_count() {
        for m in 0..z.mult[a] as usize {
            for mu in 0..cat.n(a, i, w) as usize {
                out.push((a, m, mu));
            }
        }
    }
    out
}

/// Basis of the "above" layout ⊕_b mult(b)·M(i,b;w).
pub fn above_basis(cat: &CategoryData, z: &CenterObject, i: SimpleId, w: SimpleId) -> Vec<(SimpleId, usize, usize)> {
    let mut out = Vec::new();
    for b in 0..cat.simple_count() {
        for m in 0..z.mult[b] as usize {
            for nu in 0..cat.n(i, b, w) as usize {
                out.push((b, m, nu));
            }
        }
    }
    out
}

impl CenterObject {
    /// Underlying dimension Σ mult(a) d_a.
    pub fn qdim(&self, cat: &CategoryData) -> Scalar {
        let mut acc = Scalar::zero();
        for (a, &m) in self.mult.iter().enumerate() {
            if m > 0 {
                acc = acc.add(&cat.qdim(a).scale(&num_rational::BigRational::from_integer(
                    num_bigint::BigInt::from(m),
                )));
            }
        }
        acc
    }

    pub fn total_mult(&self) -> u32 {
        self.mult.iter().sum()
    }

    /// The γ_i block at channel w, identity-filled for the unit strand and
    /// zero-shaped when absent.
    pub fn block(&self, cat: &CategoryData, i: SimpleId, w: SimpleId) -> Mat {
        if i == cat.unit() {
            // canonical identification M(a,1;w) = M(1,a;w) = δ_{aw}
            let rows = above_basis(cat, self, i, w).len();
            return Mat::identity(rows);
        }
        if let Some(bi) = self.half_braiding.get(&i) {
            if let Some(m) = bi.get(&w) {
                return m.clone();
            }
        }
        let rows = above_basis(cat, self, i, w).len();
        let cols = below_basis(cat, self, i, w).len();
        if rows == cols {
            // absent blocks of trivial half-braidings default to identity on
            // matching layouts only when both sides are empty
            if rows == 0 {
                return Mat::zeros(0, 0);
            }
        }
        Mat::zeros(rows, cols)
    }

    /// A center object with simple underlying object `a` and the trivial
    /// (identity-block) half-braiding; valid whenever all braiding blocks
    /// are canonically square and the hexagon holds (e.g. pointed categories
    /// with trivial associator on the relevant sector).
    pub fn transparent_simple(cat: &CategoryData, a: SimpleId) -> CenterObject {
        let mut mult = vec![0u32; cat.simple_count()];
        mult[a] = 1;
        let mut hb = HashMap::new();
        for i in cat.sector(cat.group.identity) {
            if i == cat.unit() {
                continue;
            }
            let mut per_w = HashMap::new();
            for w in 0..cat.simple_count() {
                let rows = cat.n(i, a, w) as usize;
                let cols = cat.n(a, i, w) as usize;
                if rows == 0 && cols == 0 {
                    continue;
                }
                assert_eq!(rows, cols, "transparent braiding needs square blocks");
                per_w.insert(w, Mat::identity(rows));
            }
            hb.insert(i, per_w);
        }
        CenterObject {
            name: format!("transparent_{}", cat.simples[a].name),
            grade: cat.grade(a),
            mult,
            half_braiding: hb,
        }
    }

    /// Scales the single-entry blocks of a 1-component object by per-strand
    /// scalars; used to author sign/phase twisted center objects.
    pub fn with_phases(mut self, cat: &CategoryData, phases: &[(SimpleId, Scalar)]) -> CenterObject {
        for (i, phase) in phases {
            let entry = self.half_braiding.entry(*i).or_default();
            for w in 0..cat.simple_count() {
                if let Some(m) = entry.get_mut(&w) {
                    *m = m.scale(phase);
                }
            }
        }
        self
    }

    // ------------------------------------------------------------------
    // Validation
    // ------------------------------------------------------------------

    /// Shape, unit, invertibility and hexagon/naturality checks; empty
    /// report iff the data is a genuine half-braiding.
    pub fn validate(&self, cat: &CategoryData) -> Vec<String> {
        let mut out = Vec::new();
        if self.mult.len() != cat.simple_count() {
            out.push("multiplicity vector has wrong length".into());
            return out;
        }
        for (a, &m) in self.mult.iter().enumerate() {
            if m > 0 && cat.grade(a) != self.grade {
                out.push(format!("component {a} has the wrong grade"));
            }
        }
        if self.total_mult() == 0 {
            out.push("center object has no components".into());
            return out;
        }
        let neutral = cat.sector(cat.group.identity);
        for &i in &neutral {
            let mut whole_rows = 0usize;
            let mut whole_cols = 0usize;
            for w in 0..cat.simple_count() {
                let rows = above_basis(cat, self, i, w).len();
                let cols = below_basis(cat, self, i, w).len();
                let b = self.block(cat, i, w);
                if b.rows != rows || b.cols != cols {
                    out.push(format!("block ({i},{w}) has shape {}x{}, expected {rows}x{cols}", b.rows, b.cols));
                }
                whole_rows += rows;
                whole_cols += cols;
            }
            if whole_rows != whole_cols {
                out.push(format!("strand {i}: total layouts disagree"));
            }
        }
        if !out.is_empty() {
            return out;
        }
        // Invertibility of each γ_i as the direct sum of blocks.
        for &i in &neutral {
            for w in 0..cat.simple_count() {
                let b = self.block(cat, i, w);
                if b.rows != b.cols {
                    // fine: a non-square block must pair with others; the
                    // direct-sum invertibility check below handles it.
                    continue;
                }
            }
            let mut dims = 0;
            let mut singular = false;
            for w in 0..cat.simple_count() {
                let b = self.block(cat, i, w);
                dims += b.rows;
                if b.rows == b.cols && b.rows > 0 && b.inverse().is_none() {
                    singular = true;
                }
                if b.rows != b.cols {
                    singular = true;
                }
            }
            let _ = dims;
            if singular {
                out.push(format!("γ for strand {i} is not invertible blockwise"));
            }
        }
        if !out.is_empty() {
            return out;
        }
        // Hexagon/naturality: γ_{z,X⊗Y} must equal the F-conjugated composite
        // of γ_{z,X} and γ_{z,Y} for all neutral simples X, Y.
        for &x in &neutral {
            for &y in &neutral {
                if let Some(m) = self.hexagon_defect(cat, x, y) {
                    out.push(m);
                }
            }
        }
        out
    }

    /// Returns a message when the hexagon fails at (x, y).
    fn hexagon_defect(&self, cat: &CategoryData, x: SimpleId, y: SimpleId) -> Option<String> {
        // Both sides are maps c⊗x⊗y -> x⊗y⊗c, expanded over
        // IN: (a, m, w1 ∈ ch(a⊗x), α ∈ M(a,x;w1), β ∈ M(w1,y;t))
        // OUT: (v ∈ ch(x⊗y), λ ∈ M(x,y;v), b, m', ν ∈ M(v,b;t))
        // for every total simple t.
        for t in 0..cat.simple_count() {
            let in_basis = self.in_basis(cat, x, y, t);
            let out_basis = self.out_basis(cat, x, y, t);
            if in_basis.is_empty() && out_basis.is_empty() {
                continue;
            }
            let lhs = self.braid_fused(cat, x, y, t, &in_basis, &out_basis);
            let rhs = self.braid_stepwise(cat, x, y, t, &in_basis, &out_basis);
            if lhs != rhs {
                return Some(format!("hexagon fails on strands ({x},{y}) at total {t}"));
            }
        }
        None
    }

    #[allow(clippy::type_complexity)]
    fn in_basis(&self, cat: &CategoryData, x: SimpleId, y: SimpleId, t: SimpleId) -> Vec<(SimpleId, usize, SimpleId, usize, usize)> {
        let mut out = Vec::new();
        for a in 0..cat.simple_count() {
            for m in 0..self.mult[a] as usize {
                for w1 in 0..cat.simple_count() {
                    for alpha in 0..cat.n(a, x, w1) as usize {
                        for beta in 0..cat.n(w1, y, t) as usize {
                            out.push((a, m, w1, alpha, beta));
                        }
                    }
                }
            }
        }
        out
    }

    #[allow(clippy::type_complexity)]
    fn out_basis(&self, cat: &CategoryData, x: SimpleId, y: SimpleId, t: SimpleId) -> Vec<(SimpleId, usize, SimpleId, usize, usize)> {
        let mut out = Vec::new();
        for v in 0..cat.simple_count() {
            for lambda in 0..cat.n(x, y, v) as usize {
                for b in 0..cat.simple_count() {
                    for m in 0..self.mult[b] as usize {
                        for nu in 0..cat.n(v, b, t) as usize {
                            out.push((v, lambda, b, m, nu));
                        }
                    }
                }
            }
        }
        out
    }

    /// γ against the fused strand: reassociate, then braid channelwise.
    #[allow(clippy::type_complexity)]
    fn braid_fused(
        &self,
        cat: &CategoryData,
        x: SimpleId,
        y: SimpleId,
        t: SimpleId,
        in_basis: &[(SimpleId, usize, SimpleId, usize, usize)],
        out_basis: &[(SimpleId, usize, SimpleId, usize, usize)],
    ) -> Mat {
        let mut mat = Mat::zeros(out_basis.len(), in_basis.len());
        for (ii, &(a, m, w1, alpha, beta)) in in_basis.iter().enumerate() {
            // F^{a,x,y}_t: rows (w1, alpha, beta) -> cols (v1, lambda1, kappa)
            for v1 in 0..cat.simple_count() {
                for lambda1 in 0..cat.n(x, y, v1) as usize {
                    for kappa in 0..cat.n(a, v1, t) as usize {
                        let f = cat.f_entry(a, x, y, t, (w1, alpha, beta), (v1, lambda1, kappa));
                        if f.is_zero() {
                            continue;
                        }
                        // braid c past v1 at total t
                        let blk = self.block(cat, v1, t);
                        let cols = below_basis(cat, self, v1, t);
                        let rows = above_basis(cat, self, v1, t);
                        let cpos = cols.iter().position(|&(aa, mm, mu)| aa == a && mm == m && mu == kappa);
                        let Some(cpos) = cpos else { continue };
                        for (rpos, &(b, mb, nu)) in rows.iter().enumerate() {
                            let g = blk.get(rpos, cpos);
                            if g.is_zero() {
                                continue;
                            }
                            let oi = out_basis
                                .iter()
                                .position(|&o| o == (v1, lambda1, b, mb, nu))
                                .expect("target state in basis");
                            let cur = mat.get(oi, ii).add(&f.mul(g));
                            mat.set(oi, ii, cur);
                        }
                    }
                }
            }
        }
        mat
    }

    /// (id_x ⊗ γ_y) ∘ (γ_x ⊗ id_y) with the two reassociations.
    #[allow(clippy::type_complexity)]
    fn braid_stepwise(
        &self,
        cat: &CategoryData,
        x: SimpleId,
        y: SimpleId,
        t: SimpleId,
        in_basis: &[(SimpleId, usize, SimpleId, usize, usize)],
        out_basis: &[(SimpleId, usize, SimpleId, usize, usize)],
    ) -> Mat {
        let mut mat = Mat::zeros(out_basis.len(), in_basis.len());
        for (ii, &(a, m, w1, alpha, beta)) in in_basis.iter().enumerate() {
            // Step 1: braid c past x inside channel w1.
            let blk_x = self.block(cat, x, w1);
            let cols_x = below_basis(cat, self, x, w1);
            let rows_x = above_basis(cat, self, x, w1);
            let Some(c1) = cols_x.iter().position(|&(aa, mm, mu)| aa == a && mm == m && mu == alpha) else {
                continue;
            };
            for (r1, &(b1, m1, nu1)) in rows_x.iter().enumerate() {
                let g1 = blk_x.get(r1, c1);
                if g1.is_zero() {
                    continue;
                }
                // comb ((x b1) y) with couplings (nu1 ∈ M(x,b1;w1), beta).
                // Step 2: reassociate to (x (b1 y)).
                for u2 in 0..cat.simple_count() {
                    for d1 in 0..cat.n(b1, y, u2) as usize {
                        for eps in 0..cat.n(x, u2, t) as usize {
                            let f1 = cat.f_entry(x, b1, y, t, (w1, nu1, beta), (u2, d1, eps));
                            if f1.is_zero() {
                                continue;
                            }
                            // Step 3: braid b1 past y inside u2.
                            let blk_y = self.block(cat, y, u2);
                            let cols_y = below_basis(cat, self, y, u2);
                            let rows_y = above_basis(cat, self, y, u2);
                            let Some(c2) =
                                cols_y.iter().position(|&(bb, mm, mu)| bb == b1 && mm == m1 && mu == d1)
                            else {
                                continue;
                            };
                            for (r2, &(b2, m2, nu2)) in rows_y.iter().enumerate() {
                                let g2 = blk_y.get(r2, c2);
                                if g2.is_zero() {
                                    continue;
                                }
                                // comb (x (y b2)) with couplings (nu2 ∈ M(y,b2;u2), eps);
                                // Step 4: reassociate back to ((x y) b2).
                                let rows_f = cat.f_rows(x, y, b2, t);
                                let cols_f = cat.f_cols(x, y, b2, t);
                                let finv = cat.f_matrix_inv(x, y, b2, t);
                                let cpos = cols_f
                                    .iter()
                                    .position(|&(s, gg, dd)| s == u2 && gg == nu2 && dd == eps)
                                    .expect("admissible column");
                                for (rpos, &(v, lambda, nu)) in rows_f.iter().enumerate() {
                                    let f2 = finv.get(rpos, cpos);
                                    if f2.is_zero() {
                                        continue;
                                    }
                                    let oi = out_basis
                                        .iter()
                                        .position(|&o| o == (v, lambda, b2, m2, nu))
                                        .expect("target state in basis");
                                    let coeff = g1.mul(&f1).mul(&g2).mul(f2);
                                    let cur = mat.get(oi, ii).add(&coeff);
                                    mat.set(oi, ii, cur);
                                }
                            }
                        }
                    }
                }
            }
        }
        mat
    }

    // ------------------------------------------------------------------
    // Loading
    // ------------------------------------------------------------------

    pub fn load(cat: &CategoryData, path: &Path) -> Result<CenterObject, CatError> {
        let text = std::fs::read_to_string(path).map_err(|e| CatError::Io(e.to_string()))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| CatError::Parse(e.to_string()))?;
        CenterObject::from_value(cat, &v)
    }

    pub fn from_value(cat: &CategoryData, v: &Value) -> Result<CenterObject, CatError> {
        let obj = v.as_object().ok_or_else(|| CatError::Parse("center object must be an object".into()))?;
        let name = obj.get("name").and_then(Value::as_str).unwrap_or("center").to_string();
        let grade = obj
            .get("grade")
            .and_then(Value::as_u64)
            .ok_or_else(|| CatError::Parse("missing grade".into()))? as usize;
        let mult: Vec<u32> = obj
            .get("multiplicities")
            .and_then(Value::as_array)
            .ok_or_else(|| CatError::Parse("missing multiplicities".into()))?
            .iter()
            .map(|x| x.as_u64().map(|u| u as u32).ok_or_else(|| CatError::Parse("bad multiplicity".into())))
            .collect::<Result<_, _>>()?;
        let mut half_braiding: HashMap<SimpleId, HashMap<SimpleId, Mat>> = HashMap::new();
        let z = CenterObject { name: name.clone(), grade, mult: mult.clone(), half_braiding: HashMap::new() };
        if let Some(rows) = obj.get("half_braiding").and_then(Value::as_array) {
            for row in rows {
                let ro = row.as_object().ok_or_else(|| CatError::Parse("half_braiding entry".into()))?;
                let i = ro.get("i").and_then(Value::as_u64).ok_or_else(|| CatError::Parse("missing i".into()))? as usize;
                let w = ro.get("w").and_then(Value::as_u64).ok_or_else(|| CatError::Parse("missing w".into()))? as usize;
                let ent = ro
                    .get("matrix")
                    .and_then(Value::as_array)
                    .ok_or_else(|| CatError::Parse("missing matrix".into()))?;
                let rows_n = above_basis(cat, &z, i, w).len();
                let cols_n = below_basis(cat, &z, i, w).len();
                if ent.len() != rows_n * cols_n {
                    return Err(CatError::Parse(format!("block ({i},{w}) needs {rows_n}x{cols_n} entries")));
                }
                let mut m = Mat::zeros(rows_n, cols_n);
                for (k, e) in ent.iter().enumerate() {
                    m.set(k / cols_n, k % cols_n, scalar_from_value(e)?);
                }
                half_braiding.entry(i).or_default().insert(w, m);
            }
        }
        Ok(CenterObject { name, grade, mult, half_braiding })
    }
}

// ---------------------------------------------------------------------------
// Hom spaces in the center
// ---------------------------------------------------------------------------

/// The cloaking projector on hom_C(a,b) whose image is the center hom space;
/// exact idempotent, returned as a matrix over the coordinate basis
/// {(s, m_a, m_b)}.
pub fn hom_projector(cat: &CategoryData, a: &CenterObject, b: &CenterObject) -> Mat {
    let coords: Vec<(SimpleId, usize, usize)> = (0..cat.simple_count())
        .flat_map(|s| {
            let (ma, mb) = (a.mult[s] as usize, b.mult[s] as usize);
            (0..ma).flat_map(move |x| (0..mb).map(move |y| (s, x, y)))
        })
        .collect();
    let dim = coords.len();
    let mut p = Mat::zeros(dim, dim);
    if dim == 0 {
        return p;
    }
    let norm = cat.cloak_dim.inv().expect("nonzero neutral dimension");
    for i in cat.sector(cat.group.identity) {
        let weight = cat.qdim(i).mul(&norm);
        // L_i as a matrix on coords.
        for w in 0..cat.simple_count() {
            let ga = a.block(cat, i, w);
            let gb = b.block(cat, i, w);
            let ga_inv = match ga.inverse() {
                Some(m) => m,
                None => {
                    assert!(ga.rows == 0, "validated γ blocks are invertible");
                    continue;
                }
            };
            let rows_a = above_basis(cat, a, i, w); // (a', m, ν ∈ M(i,a';w))
            let cols_a = below_basis(cat, a, i, w); // (a', m, μ ∈ M(a',i;w))
            let rows_b = above_basis(cat, b, i, w);
            let cols_b = below_basis(cat, b, i, w);
            // C(f) = γ_b ∘ (f⊗id) ∘ γ_a^{-1}: above_a -> above_b.
            // L_i(f)[(s,ma',mb')] += (d_w/d_s)·Σ_μ C[(s,mb',μ),(s,ma',μ)].
            for (ci, &(s_in, m_in, nu_in)) in rows_a.iter().enumerate() {
                // γ_a^{-1} column ci gives below_a coordinates.
                for (k, &(sa, ma_, mu_a)) in cols_a.iter().enumerate() {
                    let c1 = ga_inv.get(k, ci);
                    if c1.is_zero() {
                        continue;
                    }
                    // (f ⊗ id): (sa, ma_, mu_a) -> (sa, mb_, mu_a) with
                    // coefficient at coord (sa, ma_, mb_).
                    for mb_ in 0..b.mult[sa] as usize {
                        let Some(kb) = cols_b.iter().position(|&(sb, mm, mu)| sb == sa && mm == mb_ && mu == mu_a)
                        else {
                            continue;
                        };
                        let src_coord = coords.iter().position(|&c| c == (sa, ma_, mb_)).unwrap();
                        for (r, &(s_out, m_out, nu_out)) in rows_b.iter().enumerate() {
                            let c2 = gb.get(r, kb);
                            if c2.is_zero() {
                                continue;
                            }
                            // partial trace over the left strand: needs the
                            // same above-coupling and component on both ends.
                            if s_out != s_in || nu_out != nu_in {
                                continue;
                            }
                            let Some(dst_coord) =
                                coords.iter().position(|&c| c == (s_in, m_in, m_out))
                            else {
                                continue;
                            };
                            let tr = cat.qdim(w).div(cat.qdim(s_in)).unwrap();
                            let add = weight.mul(&tr).mul(c1).mul(c2);
                            p.add_to(dst_coord, src_coord, &add);
                        }
                    }
                }
            }
        }
    }
    p
}

/// dim hom in the center: exact rank of the cloaking projector; zero across
/// different grades.
pub fn hom_center_dim(cat: &CategoryData, a: &CenterObject, b: &CenterObject) -> usize {
    if a.grade != b.grade {
        return 0;
    }
    let p = hom_projector(cat, a, b);
    p.rank()
}
