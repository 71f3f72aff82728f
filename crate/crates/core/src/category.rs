//! Skeletal data of a group-graded spherical fusion category, with full
//! validation at load time.
//!
//! Conventions used throughout the crate:
//!
//! * Fusion (coupling) spaces are `M(a,b;c) = hom(a⊗b, c)` with dimension
//!   `N[a][b][c]`; basis vectors are plain indices `0..N`.
//! * F-matrices are the associator in the fusion-tree form
//!   `F[a,b,c;d] : hom((a⊗b)⊗c, d) -> hom(a⊗(b⊗c), d)`, rows indexed by
//!   `(r, α ∈ M(a,b;r), β ∈ M(r,c;d))`, columns by `(s, γ ∈ M(b,c;s),
//!   δ ∈ M(a,s;d))`. Any F-matrix with `a`, `b` or `c` equal to the unit is
//!   the identity.
//! * Cyclic vertex spaces are `V(a,b,c) := M(a,b; c*)`; the stored rotation
//!   `ρ_{abc} : V(a,b,c) -> V(b,c,a)` realizes the cyclic structure and must
//!   close up after three applications.
//! * Splitting bases `S(c;a,b) ⊂ hom(c, a⊗b)` are the dual bases of
//!   `M(a,b;c)` under composition, so an `ι∘π` insertion sums to the
//!   identity with coefficient one.

use crate::group::{FiniteGroup, GroupElem};
use crate::matrix::Mat;
use crate::scalar::Scalar;
use serde_json::Value;
use std::collections::HashMap;
use std::path::Path;

pub type SimpleId = usize;

#[derive(Debug, Clone)]
pub struct SimpleObject {
    pub name: String,
    pub grade: GroupElem,
    pub dual: SimpleId,
    pub qdim: Scalar,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum CatError {
    #[error("io error: {0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation failed: {0}")]
    Validation(Violation),
}

/// A failed invariant with enough indices to locate it.
#[derive(Debug, Clone)]
pub struct Violation {
    pub rule: String,
    pub indices: Vec<usize>,
    pub detail: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} at {:?}: {}", self.rule, self.indices, self.detail)
    }
}

fn violation(rule: &str, indices: &[usize], detail: impl Into<String>) -> Violation {
    Violation { rule: rule.into(), indices: indices.to_vec(), detail: detail.into() }
}

#[derive(Debug, Clone)]
pub struct CategoryData {
    pub name: String,
    pub group: FiniteGroup,
    pub conductor: u64,
    pub simples: Vec<SimpleObject>,
    /// N[a][b][c] = dim hom(a⊗b, c)
    fusion: Vec<Vec<Vec<u32>>>,
    /// Sparse F entries keyed by (a,b,c,d,r,s,alpha,beta,gamma,delta).
    fsym: HashMap<[usize; 10], Scalar>,
    /// Rotation matrices per nonempty V(a,b,c).
    rotations: HashMap<[usize; 3], Mat>,
    /// Global dimension Σ d_i².
    pub global_dim: Scalar,
    /// Per-sector dimensions Σ_{grade(i)=g} d_i².
    pub sector_dims: Vec<Scalar>,
    /// Neutral-sector dimension; the normalization entering every cloaking
    /// sum (for a faithful grading all sector dimensions agree with it).
    pub cloak_dim: Scalar,
}

/// A row/column label of an F-matrix: (channel, coupling into channel,
/// coupling out of channel).
pub type FSlot = (SimpleId, usize, usize);

impl CategoryData {
    pub fn unit(&self) -> SimpleId {
        0
    }

    pub fn simple_count(&self) -> usize {
        self.simples.len()
    }

    pub fn dual(&self, a: SimpleId) -> SimpleId {
        self.simples[a].dual
    }

    pub fn grade(&self, a: SimpleId) -> GroupElem {
        self.simples[a].grade
    }

    pub fn qdim(&self, a: SimpleId) -> &Scalar {
        &self.simples[a].qdim
    }

    pub fn n(&self, a: SimpleId, b: SimpleId, c: SimpleId) -> u32 {
        self.fusion[a][b][c]
    }

    /// dim of the cyclic space V(a,b,c) = C(a,b,c).
    pub fn coupling_dim(&self, a: SimpleId, b: SimpleId, c: SimpleId) -> u32 {
        self.n(a, b, self.dual(c))
    }

    /// Simples of a fixed grade.
    pub fn sector(&self, g: GroupElem) -> Vec<SimpleId> {
        (0..self.simples.len()).filter(|&i| self.grade(i) == g).collect()
    }

    pub fn homogeneous_dimension(&self, g: GroupElem) -> Scalar {
        let mut acc = Scalar::zero();
        for i in self.sector(g) {
            acc = acc.add(&self.qdim(i).mul(self.qdim(i)));
        }
        acc
    }

    /// Row labels of F[a,b,c;d] (also the basis of hom((a⊗b)⊗c, d)).
    pub fn f_rows(&self, a: SimpleId, b: SimpleId, c: SimpleId, d: SimpleId) -> Vec<FSlot> {
        let mut out = Vec::new();
        for r in 0..self.simples.len() {
            for alpha in 0..self.n(a, b, r) {
                for beta in 0..self.n(r, c, d) {
                    out.push((r, alpha as usize, beta as usize));
                }
            }
        }
        out
    }

    /// Column labels of F[a,b,c;d] (basis of hom(a⊗(b⊗c), d)).
    pub fn f_cols(&self, a: SimpleId, b: SimpleId, c: SimpleId, d: SimpleId) -> Vec<FSlot> {
        let mut out = Vec::new();
        for s in 0..self.simples.len() {
            for gamma in 0..self.n(b, c, s) {
                for delta in 0..self.n(a, s, d) {
                    out.push((s, gamma as usize, delta as usize));
                }
            }
        }
        out
    }

    pub fn f_entry(
        &self,
        a: SimpleId,
        b: SimpleId,
        c: SimpleId,
        d: SimpleId,
        row: FSlot,
        col: FSlot,
    ) -> Scalar {
        let unit = self.unit();
        if a == unit || b == unit || c == unit {
            // Unit normalization: identity with the canonical identifications.
            // a=1: rows (b,0,β), cols (d,γ,0), pairing β=γ.
            // b=1: rows (a,0,β), cols (c,0,δ), pairing β=δ.
            // c=1: rows (d,α,0), cols (b,0,δ), pairing α=δ.
            let matches = if a == unit {
                row.0 == b && col.0 == d && row.2 == col.1 && row.1 == 0 && col.2 == 0
            } else if b == unit {
                row.0 == a && col.0 == c && row.2 == col.2 && row.1 == 0 && col.1 == 0
            } else {
                row.0 == d && col.0 == b && row.1 == col.2 && row.2 == 0 && col.1 == 0
            };
            return if matches { Scalar::one() } else { Scalar::zero() };
        }
        let key = [a, b, c, d, row.0, col.0, row.1, row.2, col.1, col.2];
        self.fsym.get(&key).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Dense F-matrix for (a,b,c;d); rows/cols per `f_rows`/`f_cols`.
    pub fn f_matrix(&self, a: SimpleId, b: SimpleId, c: SimpleId, d: SimpleId) -> Mat {
        let rows = self.f_rows(a, b, c, d);
        let cols = self.f_cols(a, b, c, d);
        let mut m = Mat::zeros(rows.len(), cols.len());
        for (ri, &row) in rows.iter().enumerate() {
            for (ci, &col) in cols.iter().enumerate() {
                m.set(ri, ci, self.f_entry(a, b, c, d, row, col));
            }
        }
        m
    }

    pub fn f_matrix_inv(&self, a: SimpleId, b: SimpleId, c: SimpleId, d: SimpleId) -> Mat {
        self.f_matrix(a, b, c, d)
            .inverse()
            .expect("validated categories have invertible F-matrices")
    }

    /// Rotation V(a,b,c) -> V(b,c,a). Identity when absent from the data.
    pub fn rotation(&self, a: SimpleId, b: SimpleId, c: SimpleId) -> Mat {
        if let Some(m) = self.rotations.get(&[a, b, c]) {
            return m.clone();
        }
        Mat::identity(self.coupling_dim(a, b, c) as usize)
    }

    /// Whether V(a,b,c) is nonzero.
    pub fn admissible(&self, a: SimpleId, b: SimpleId, c: SimpleId) -> bool {
        self.coupling_dim(a, b, c) > 0
    }

    // ------------------------------------------------------------------
    // Validation
    // ------------------------------------------------------------------

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        out.extend(self.validate_structure());
        if out.is_empty() {
            out.extend(self.validate_pentagon());
            out.extend(self.validate_rotations());
        }
        out
    }

    /// Everything except the pentagon/rotation coherences.
    pub fn validate_structure(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let m = self.simples.len();
        let unit = self.unit();
        let e = self.group.identity;

        if !self.group.validate().is_empty() {
            out.push(violation("group", &[], "group table fails its axioms"));
            return out;
        }
        if m == 0 {
            out.push(violation("simples", &[], "no simple objects"));
            return out;
        }
        if self.grade(unit) != e {
            out.push(violation("unit_grade", &[unit], "unit must sit in the neutral sector"));
        }
        if !self.qdim(unit).is_one() {
            out.push(violation("unit_qdim", &[unit], "qdim(unit) must be 1"));
        }
        for i in 0..m {
            let di = self.dual(i);
            if di >= m || self.dual(di) != i {
                out.push(violation("dual_involution", &[i], "dual is not an involution"));
                continue;
            }
            if self.grade(di) != self.group.inverse(self.grade(i)) {
                out.push(violation("dual_grade", &[i], "grade(dual) must invert grade"));
            }
            if self.qdim(i) != self.qdim(di) {
                out.push(violation("dual_qdim", &[i], "qdim must match its dual"));
            }
        }
        // Faithful support: every group element carries at least one simple.
        for g in self.group.elements() {
            if self.sector(g).is_empty() {
                out.push(violation("grade_support", &[g], "grade has no simple object"));
            }
        }
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let n = self.n(a, b, c);
                    if n > 0 && self.group.mul(self.grade(a), self.grade(b)) != self.grade(c) {
                        out.push(violation("fusion_grading", &[a, b, c], "N nonzero across grades"));
                    }
                    let expect_unit_l = if a == unit { (b == c) as u32 } else { u32::MAX };
                    if a == unit && n != expect_unit_l {
                        out.push(violation("fusion_unit", &[a, b, c], "N_{1b}^c must be δ"));
                    }
                    if b == unit && n != ((a == c) as u32) {
                        out.push(violation("fusion_unit", &[a, b, c], "N_{a1}^c must be δ"));
                    }
                    if c == unit && n != ((b == self.dual(a)) as u32) {
                        out.push(violation("fusion_duality", &[a, b, c], "N_{ab}^1 must pair duals"));
                    }
                    // Frobenius reciprocity as a loadable-data requirement.
                    if n != self.n(b, self.dual(c), self.dual(a)) {
                        out.push(violation(
                            "frobenius",
                            &[a, b, c],
                            "N_{ab}^c must equal N_{b,c*}^{a*}",
                        ));
                    }
                }
            }
        }
        // Exact dimension consistency d_a d_b = Σ_c N_{ab}^c d_c.
        for a in 0..m {
            for b in 0..m {
                let mut rhs = Scalar::zero();
                for c in 0..m {
                    let n = self.n(a, b, c);
                    if n > 0 {
                        rhs = rhs.add(&self.qdim(c).scale(
                            &num_rational::BigRational::from_integer(num_bigint::BigInt::from(n)),
                        ));
                    }
                }
                if self.qdim(a).mul(self.qdim(b)) != rhs {
                    out.push(violation("dim_consistency", &[a, b], "d_a d_b ≠ Σ N d_c"));
                }
            }
        }
        if self.global_dim.is_zero() {
            out.push(violation("global_dim", &[], "global dimension vanishes"));
        }
        // Σ_{i∈I_e} d_i² = Σ_{i∈I_g} d_i² for every sector.
        for g in self.group.elements() {
            if self.sector_dims[g] != self.cloak_dim {
                out.push(violation("sector_dim", &[g], "sector dimension differs from neutral"));
            }
        }
        // Associativity of the fusion ring (F-matrices must be square).
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    for d in 0..m {
                        let rows: u32 = (0..m).map(|r| self.n(a, b, r) * self.n(r, c, d)).sum();
                        let cols: u32 = (0..m).map(|s| self.n(b, c, s) * self.n(a, s, d)).sum();
                        if rows != cols {
                            out.push(violation(
                                "fusion_assoc",
                                &[a, b, c, d],
                                "fusion ring not associative",
                            ));
                        }
                    }
                }
            }
        }
        // F-matrices invertible, unit-normalized entries consistent.
        if out.is_empty() {
            for a in 0..m {
                for b in 0..m {
                    for c in 0..m {
                        for d in 0..m {
                            let f = self.f_matrix(a, b, c, d);
                            if f.rows == 0 {
                                continue;
                            }
                            if f.inverse().is_none() {
                                out.push(violation("f_invertible", &[a, b, c, d], "singular F"));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Checks the pentagon identity by full contraction over all admissible
    /// index tuples; returns one violation per failing tuple.
    pub fn validate_pentagon(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let m = self.simples.len();
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    for d in 0..m {
                        for e in 0..m {
                            out.extend(self.pentagon_tuple(a, b, c, d, e));
                        }
                    }
                }
            }
        }
        out
    }

    fn pentagon_tuple(&self, a: usize, b: usize, c: usize, d: usize, e: usize) -> Vec<Violation> {
        let m = self.simples.len();
        let mut out = Vec::new();
        // Input tree ((ab)c)d: (f,α,β,γ); output tree a(b(cd)): (l,ν,k,μ,ρ).
        for f in 0..m {
            for alpha in 0..self.n(a, b, f) as usize {
                for g in 0..m {
                    for beta in 0..self.n(f, c, g) as usize {
                        for gamma in 0..self.n(g, d, e) as usize {
                            for l in 0..m {
                                for nu in 0..self.n(c, d, l) as usize {
                                    for k in 0..m {
                                        for mu in 0..self.n(b, l, k) as usize {
                                            for rho in 0..self.n(a, k, e) as usize {
                                                let lhs = self.pentagon_lhs(
                                                    a, b, c, d, e, f, alpha, g, beta, gamma, l,
                                                    nu, k, mu, rho,
                                                );
                                                let rhs = self.pentagon_rhs(
                                                    a, b, c, d, e, f, alpha, g, beta, gamma, l,
                                                    nu, k, mu, rho,
                                                );
                                                if lhs != rhs {
                                                    out.push(violation(
                                                        "pentagon",
                                                        &[a, b, c, d, e, f, g, l, k],
                                                        format!("lhs {} ≠ rhs {}", lhs, rhs),
                                                    ));
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn pentagon_lhs(
        &self,
        a: usize,
        b: usize,
        c: usize,
        d: usize,
        e: usize,
        f: usize,
        alpha: usize,
        g: usize,
        beta: usize,
        gamma: usize,
        l: usize,
        nu: usize,
        k: usize,
        mu: usize,
        rho: usize,
    ) -> Scalar {
        // Σ_λ F[f,c,d;e]_{(g,β,γ),(l,ν,λ)} · F[a,b,l;e]_{(f,α,λ),(k,μ,ρ)}
        let mut acc = Scalar::zero();
        for lambda in 0..self.n(f, l, e) as usize {
            let t1 = self.f_entry(f, c, d, e, (g, beta, gamma), (l, nu, lambda));
            if t1.is_zero() {
                continue;
            }
            let t2 = self.f_entry(a, b, l, e, (f, alpha, lambda), (k, mu, rho));
            acc = acc.add(&t1.mul(&t2));
        }
        acc
    }

    #[allow(clippy::too_many_arguments)]
    fn pentagon_rhs(
        &self,
        a: usize,
        b: usize,
        c: usize,
        d: usize,
        e: usize,
        f: usize,
        alpha: usize,
        g: usize,
        beta: usize,
        gamma: usize,
        l: usize,
        nu: usize,
        k: usize,
        mu: usize,
        rho: usize,
    ) -> Scalar {
        // Σ_{h,σ,ψ,δ} F[a,b,c;g]·F[a,h,d;e]·F[b,c,d;k]
        let m = self.simples.len();
        let mut acc = Scalar::zero();
        for h in 0..m {
            for sigma in 0..self.n(b, c, h) as usize {
                for psi in 0..self.n(a, h, g) as usize {
                    let t1 = self.f_entry(a, b, c, g, (f, alpha, beta), (h, sigma, psi));
                    if t1.is_zero() {
                        continue;
                    }
                    for delta in 0..self.n(h, d, k) as usize {
                        let t2 = self.f_entry(a, h, d, e, (g, psi, gamma), (k, delta, rho));
                        if t2.is_zero() {
                            continue;
                        }
                        let t3 = self.f_entry(b, c, d, k, (h, sigma, delta), (l, nu, mu));
                        acc = acc.add(&t1.mul(&t2).mul(&t3));
                    }
                }
            }
        }
        acc
    }

    /// Rotations must be square of the right size and close after three
    /// applications.
    pub fn validate_rotations(&self) -> Vec<Violation> {
        let m = self.simples.len();
        let mut out = Vec::new();
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let dim = self.coupling_dim(a, b, c) as usize;
                    if dim == 0 {
                        if self.rotations.contains_key(&[a, b, c]) {
                            out.push(violation("rotation_shape", &[a, b, c], "rotation on empty space"));
                        }
                        continue;
                    }
                    let r1 = self.rotation(a, b, c);
                    if r1.rows != dim || r1.cols != self.coupling_dim(b, c, a) as usize {
                        out.push(violation("rotation_shape", &[a, b, c], "wrong shape"));
                        continue;
                    }
                    let r2 = self.rotation(b, c, a);
                    let r3 = self.rotation(c, a, b);
                    if !r3.mul(&r2.mul(&r1)).is_identity() {
                        out.push(violation(
                            "rotation_cycle",
                            &[a, b, c],
                            "triple rotation is not the identity",
                        ));
                    }
                }
            }
        }
        out
    }

    // ------------------------------------------------------------------
    // Loading
    // ------------------------------------------------------------------

    pub fn load(path: &Path) -> Result<CategoryData, CatError> {
        let text = std::fs::read_to_string(path).map_err(|e| CatError::Io(e.to_string()))?;
        CategoryData::from_json_str(&text)
    }

    pub fn from_json_str(text: &str) -> Result<CategoryData, CatError> {
        let v: Value = serde_json::from_str(text).map_err(|e| CatError::Parse(e.to_string()))?;
        let data = CategoryData::from_value(&v)?;
        if let Some(first) = data.validate().into_iter().next() {
            return Err(CatError::Validation(first));
        }
        Ok(data)
    }

    /// Parses without validating; used by tests probing the validator.
    pub fn from_value(v: &Value) -> Result<CategoryData, CatError> {
        let obj = v.as_object().ok_or_else(|| parse_err("top level must be an object"))?;
        let name = obj.get("name").and_then(Value::as_str).unwrap_or("unnamed").to_string();
        let mut group: FiniteGroup = serde_json::from_value(
            obj.get("group").cloned().ok_or_else(|| parse_err("missing group"))?,
        )
        .map_err(|e| parse_err(&format!("bad group: {e}")))?;
        group
            .fill_inverses()
            .map_err(|v| parse_err(&format!("group has no inverses: {v}")))?;
        let conductor = obj
            .get("conductor")
            .and_then(Value::as_u64)
            .ok_or_else(|| parse_err("missing conductor"))?;

        let simples_v = obj
            .get("simples")
            .and_then(Value::as_array)
            .ok_or_else(|| parse_err("missing simples"))?;
        let mut simples = Vec::new();
        for (i, s) in simples_v.iter().enumerate() {
            let so = s.as_object().ok_or_else(|| parse_err("simple must be an object"))?;
            let name = so
                .get("name")
                .and_then(Value::as_str)
                .map(str::to_string)
                .unwrap_or_else(|| format!("x{i}"));
            let grade = so
                .get("grade")
                .and_then(Value::as_u64)
                .ok_or_else(|| parse_err("simple missing grade"))? as usize;
            let dual = so
                .get("dual")
                .and_then(Value::as_u64)
                .ok_or_else(|| parse_err("simple missing dual"))? as usize;
            let qdim = scalar_from_value(
                so.get("qdim").ok_or_else(|| parse_err("simple missing qdim"))?,
            )?;
            if grade >= group.order {
                return Err(parse_err("grade index out of range"));
            }
            simples.push(SimpleObject { name, grade, dual, qdim });
        }
        let m = simples.len();
        if m == 0 {
            return Err(parse_err("at least one simple required"));
        }

        let mut fusion = vec![vec![vec![0u32; m]; m]; m];
        for row in obj
            .get("fusion")
            .and_then(Value::as_array)
            .ok_or_else(|| parse_err("missing fusion"))?
        {
            let t = row.as_array().ok_or_else(|| parse_err("fusion row must be an array"))?;
            if t.len() != 4 {
                return Err(parse_err("fusion row must be [i,j,k,N]"));
            }
            let idx: Vec<usize> = t[..3]
                .iter()
                .map(|x| x.as_u64().map(|u| u as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| parse_err("bad fusion index"))?;
            let n = t[3].as_u64().ok_or_else(|| parse_err("bad multiplicity"))? as u32;
            if idx.iter().any(|&x| x >= m) {
                return Err(parse_err("fusion index out of range"));
            }
            fusion[idx[0]][idx[1]][idx[2]] = n;
        }

        let mut fsym = HashMap::new();
        if let Some(rows) = obj.get("fsymbols").and_then(Value::as_array) {
            for row in rows {
                let t = row.as_array().ok_or_else(|| parse_err("fsymbol row must be an array"))?;
                if t.len() != 11 {
                    return Err(parse_err("fsymbol row must be [i,j,k,l,r,s,a,b,g,d,value]"));
                }
                let mut key = [0usize; 10];
                for (n, x) in t[..10].iter().enumerate() {
                    key[n] = x.as_u64().ok_or_else(|| parse_err("bad fsymbol index"))? as usize;
                }
                let val = scalar_from_value(&t[10])?;
                fsym.insert(key, val);
            }
        }

        let mut rotations = HashMap::new();
        if let Some(rows) = obj.get("rotations").and_then(Value::as_array) {
            for row in rows {
                let t = row.as_array().ok_or_else(|| parse_err("rotation row must be an array"))?;
                if t.len() != 4 {
                    return Err(parse_err("rotation row must be [i,j,k,[entries]]"));
                }
                let i = t[0].as_u64().ok_or_else(|| parse_err("bad rotation index"))? as usize;
                let j = t[1].as_u64().ok_or_else(|| parse_err("bad rotation index"))? as usize;
                let k = t[2].as_u64().ok_or_else(|| parse_err("bad rotation index"))? as usize;
                let ent = t[3].as_array().ok_or_else(|| parse_err("rotation entries"))?;
                let dim_src = fusion[i][j][simples[k].dual] as usize;
                let dim_dst = fusion[j][k][simples[i].dual] as usize;
                if ent.len() != dim_src * dim_dst {
                    return Err(parse_err("rotation entry count mismatch"));
                }
                let mut mat = Mat::zeros(dim_dst, dim_src);
                for (n, e) in ent.iter().enumerate() {
                    mat.set(n / dim_src, n % dim_src, scalar_from_value(e)?);
                }
                rotations.insert([i, j, k], mat);
            }
        }

        let mut global_dim = Scalar::zero();
        let mut sector_dims = vec![Scalar::zero(); group.order];
        for s in &simples {
            let sq = s.qdim.mul(&s.qdim);
            global_dim = global_dim.add(&sq);
            sector_dims[s.grade] = sector_dims[s.grade].add(&sq);
        }
        let cloak_dim = sector_dims[group.identity].clone();

        Ok(CategoryData {
            name,
            group,
            conductor,
            simples,
            fusion,
            fsym,
            rotations,
            global_dim,
            sector_dims,
            cloak_dim,
        })
    }
}

fn parse_err(msg: &str) -> CatError {
    CatError::Parse(msg.to_string())
}

/// Scalars in data files may be bare integers, strings like "3/4", or the
/// canonical {conductor, coeffs} object.
pub fn scalar_from_value(v: &Value) -> Result<Scalar, CatError> {
    match v {
        Value::Number(n) => {
            let i = n.as_i64().ok_or_else(|| parse_err("non-integer numeric scalar"))?;
            Ok(Scalar::from_integer(i))
        }
        Value::String(s) => {
            if let Some((num, den)) = s.split_once('/') {
                let n: i64 = num.trim().parse().map_err(|_| parse_err("bad rational"))?;
                let d: i64 = den.trim().parse().map_err(|_| parse_err("bad rational"))?;
                if d == 0 {
                    return Err(parse_err("zero denominator"));
                }
                Ok(Scalar::from_ratio(n, d))
            } else {
                let n: i64 = s.trim().parse().map_err(|_| parse_err("bad integer scalar"))?;
                Ok(Scalar::from_integer(n))
            }
        }
        Value::Object(_) => {
            serde_json::from_value(v.clone()).map_err(|e| parse_err(&format!("bad scalar: {e}")))
        }
        _ => Err(parse_err("unsupported scalar encoding")),
    }
}
