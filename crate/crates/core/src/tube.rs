//! Tube algebras of the cylinder categories, one per grade sector:
//! annular string-nets under stacking, with block analysis by exact linear
//! algebra.
//!
//! A basis element of the sector-g tube algebra is an annulus morphism
//! a⊗x → x⊗b through a middle channel w: couplings μ ∈ M(a,x;w) below and
//! ν ∈ M(x,b;w) above, with a, b boundary simples of grade g and x a
//! neutral winding simple. Stacking decomposes the combined winding strand
//! x⊗y into channels with dual coupling pairs; the structure constants are
//! three-F contractions.

use crate::category::{CategoryData, SimpleId};
use crate::center::{above_basis, below_basis, CenterObject};
use crate::group::GroupElem;
use crate::matrix::Mat;
use crate::scalar::Scalar;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TubeElem {
    pub a: SimpleId,
    pub b: SimpleId,
    pub x: SimpleId,
    pub w: SimpleId,
    pub mu: usize,
    pub nu: usize,
}

#[derive(Debug, Clone)]
pub struct TubeAlgebra {
    pub sector: GroupElem,
    pub basis: Vec<TubeElem>,
    /// mult_table[i][j] = coefficients of basis[i] · basis[j] (i stacked on j).
    pub mult_table: Vec<Vec<Vec<(usize, Scalar)>>>,
    /// Coordinates of the unit element.
    pub unit: Vec<(usize, Scalar)>,
}

pub fn tube_basis(cat: &CategoryData, sector: GroupElem) -> Vec<TubeElem> {
    let mut out = Vec::new();
    let boundary = cat.sector(sector);
    let winding = cat.sector(cat.group.identity);
    for &a in &boundary {
        for &b in &boundary {
            for &x in &winding {
                for w in 0..cat.simple_count() {
                    for mu in 0..cat.n(a, x, w) as usize {
                        for nu in 0..cat.n(x, b, w) as usize {
                            out.push(TubeElem { a, b, x, w, mu, nu });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Structure constants of t2 · t1 (t2 stacked onto t1), as coefficients over
/// the basis.
fn stack(cat: &CategoryData, t2: &TubeElem, t1: &TubeElem, basis: &[TubeElem], index: &BTreeMap<TubeElem, usize>) -> Vec<(usize, Scalar)> {
    // Composable iff the top color of t1 matches the bottom color of t2.
    if t1.b != t2.a {
        return vec![];
    }
    let (a, b, c) = (t1.a, t1.b, t2.b);
    let (x, y) = (t1.x, t2.x);
    let (w, wp) = (t1.w, t2.w);
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for z in 0..cat.simple_count() {
        for kappa in 0..cat.n(x, y, z) as usize {
            for u in 0..cat.simple_count() {
                for mu2 in 0..cat.n(a, z, u) as usize {
                    for nu2 in 0..cat.n(z, c, u) as usize {
                        // Σ_{q,t'} F[a,x,y;u]_{(w,μ,q),(z,κ,μ'')} ·
                        //          F[x,b,y;u]^{-1}_{(w',μ',t'),(w,ν,q)} ·
                        //          F[x,y,c;u]_{(z,κ,ν''),(w',ν',t')}
                        let mut total = Scalar::zero();
                        for q in 0..cat.n(w, y, u) as usize {
                            let f1 = cat.f_entry(a, x, y, u, (w, t1.mu, q), (z, kappa, mu2));
                            if f1.is_zero() {
                                continue;
                            }
                            // [F^{x,b,y}_u]^{-1} indexed (col-shape, row-shape):
                            // the splitting state (w, ν, q) is row-shaped,
                            // the target (w', μ', t') col-shaped.
                            let finv = cat.f_matrix_inv(x, b, y, u);
                            let rows = cat.f_rows(x, b, y, u);
                            let cols = cat.f_cols(x, b, y, u);
                            let Some(rpos) = rows.iter().position(|&(r, a_, b_)| {
                                r == w && a_ == t1.nu && b_ == q
                            }) else {
                                continue;
                            };
                            for (cpos, &(wq, mup, tp)) in cols.iter().enumerate() {
                                if wq != wp || mup != t2.mu {
                                    continue;
                                }
                                let f2 = finv.get(cpos, rpos);
                                if f2.is_zero() {
                                    continue;
                                }
                                let f3 = cat.f_entry(x, y, c, u, (z, kappa, nu2), (wp, t2.nu, tp));
                                if f3.is_zero() {
                                    continue;
                                }
                                total = total.add(&f1.mul(f2).mul(&f3));
                            }
                        }
                        if !total.is_zero() {
                            let elem = TubeElem { a, b: c, x: z, w: u, mu: mu2, nu: nu2 };
                            let _ = b;
                            let i = *index.get(&elem).expect("product lands in the basis");
                            let e = acc.entry(i).or_insert_with(Scalar::zero);
                            *e = e.add(&total);
                        }
                    }
                }
            }
        }
    }
    acc.into_iter().filter(|(_, s)| !s.is_zero()).collect()
}

pub fn tube_algebra(cat: &CategoryData, sector: GroupElem) -> TubeAlgebra {
    let basis = tube_basis(cat, sector);
    let index: BTreeMap<TubeElem, usize> = basis.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    let n = basis.len();
    let mut mult_table = vec![vec![Vec::new(); n]; n];
    for (i, t2) in basis.iter().enumerate() {
        for (j, t1) in basis.iter().enumerate() {
            mult_table[i][j] = stack(cat, t2, t1, &basis, &index);
        }
    }
    // Unit: Σ_a identity strand through the unit winding color.
    let mut unit = Vec::new();
    for &a in &cat.sector(sector) {
        let elem = TubeElem { a, b: a, x: cat.unit(), w: a, mu: 0, nu: 0 };
        unit.push((index[&elem], Scalar::one()));
    }
    TubeAlgebra { sector, basis, mult_table, unit }
}

impl TubeAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Product of two coordinate vectors.
    pub fn multiply(&self, v2: &[Scalar], v1: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for (i, c2) in v2.iter().enumerate() {
            if c2.is_zero() {
                continue;
            }
            for (j, c1) in v1.iter().enumerate() {
                if c1.is_zero() {
                    continue;
                }
                for (k, s) in &self.mult_table[i][j] {
                    out[*k] = out[*k].add(&c2.mul(c1).mul(s));
                }
            }
        }
        out
    }

    pub fn unit_vector(&self) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        for (i, c) in &self.unit {
            v[*i] = c.clone();
        }
        v
    }

    /// Left-multiplication matrix of a coordinate vector.
    pub fn left_mult_matrix(&self, v: &[Scalar]) -> Mat {
        let n = self.dim();
        let mut m = Mat::zeros(n, n);
        for j in 0..n {
            let mut basis_vec = vec![Scalar::zero(); n];
            basis_vec[j] = Scalar::one();
            let col = self.multiply(v, &basis_vec);
            for (i, x) in col.into_iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x);
                }
            }
        }
        m
    }

    /// Exhaustive associativity check on basis triples.
    pub fn associativity_defects(&self) -> usize {
        let n = self.dim();
        let mut bad = 0;
        for i in 0..n {
            let mut vi = vec![Scalar::zero(); n];
            vi[i] = Scalar::one();
            for j in 0..n {
                let mut vj = vec![Scalar::zero(); n];
                vj[j] = Scalar::one();
                let ij = self.multiply(&vi, &vj);
                for k in 0..n {
                    let mut vk = vec![Scalar::zero(); n];
                    vk[k] = Scalar::one();
                    let jk = self.multiply(&vj, &vk);
                    let l = self.multiply(&ij, &vk);
                    let r = self.multiply(&vi, &jk);
                    if l != r {
                        bad += 1;
                    }
                }
            }
        }
        bad
    }

    /// Basis of the center: solutions of z·t_i = t_i·z for all basis t_i.
    pub fn center_basis(&self) -> Vec<Vec<Scalar>> {
        let n = self.dim();
        // Unknown z = Σ z_k e_k; equations per (i, coordinate).
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for i in 0..n {
            let mut ei = vec![Scalar::zero(); n];
            ei[i] = Scalar::one();
            // L_i and R_i as matrices: (L_i z)_m = Σ_k z_k (e_i e_k)_m etc.
            for m in 0..n {
                let mut row = Vec::with_capacity(n);
                for k in 0..n {
                    let mut ek = vec![Scalar::zero(); n];
                    ek[k] = Scalar::one();
                    let ik = self.multiply(&ei, &ek);
                    let ki = self.multiply(&ek, &ei);
                    row.push(ik[m].sub(&ki[m]));
                }
                rows.push(row);
            }
        }
        let m = Mat::from_rows(rows);
        let ker = m.kernel();
        (0..ker.cols)
            .map(|c| (0..ker.rows).map(|r| ker.get(r, c).clone()).collect())
            .collect()
    }

    /// Number of simple blocks = dimension of the center (the ground field
    /// splits the bundled algebras).
    pub fn block_count(&self) -> usize {
        self.center_basis().len()
    }

    /// The action of a basis tube on a center object's component spaces;
    /// returns the matrix over pairs (component, multiplicity).
    pub fn act_on(&self, cat: &CategoryData, z: &CenterObject, t: &TubeElem) -> Mat {
        let coords: Vec<(SimpleId, usize)> = (0..cat.simple_count())
            .flat_map(|s| (0..z.mult[s] as usize).map(move |m| (s, m)))
            .collect();
        let mut out = Mat::zeros(coords.len(), coords.len());
        if t.a >= cat.simple_count() {
            return out;
        }
        let blk = z.block(cat, t.x, t.w);
        let rows = above_basis(cat, z, t.x, t.w);
        let cols = below_basis(cat, z, t.x, t.w);
        for (ri, &(b, mb, nu)) in rows.iter().enumerate() {
            if b != t.b || nu != t.nu {
                continue;
            }
            for (ci, &(a, ma, mu)) in cols.iter().enumerate() {
                if a != t.a || mu != t.mu {
                    continue;
                }
                let g = blk.get(ri, ci);
                if g.is_zero() {
                    continue;
                }
                let dst = coords.iter().position(|&c| c == (b, mb)).unwrap();
                let src = coords.iter().position(|&c| c == (a, ma)).unwrap();
                out.add_to(dst, src, g);
            }
        }
        out
    }

    /// Action of a coordinate vector.
    pub fn act_vec(&self, cat: &CategoryData, z: &CenterObject, v: &[Scalar]) -> Mat {
        let dim = z.total_mult() as usize;
        let mut out = Mat::zeros(dim, dim);
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out = out.add(&self.act_on(cat, z, &self.basis[i]).scale(c));
        }
        out
    }

    /// Character of a center object: trace of the action.
    pub fn character(&self, cat: &CategoryData, z: &CenterObject, v: &[Scalar]) -> Scalar {
        self.act_vec(cat, z, v).trace()
    }

    /// Primitive central idempotents through the exact characters of the
    /// given center simples (Lagrange interpolation along a separating
    /// central element). Errors when the characters fail to separate or the
    /// results do not verify.
    pub fn block_idempotents(
        &self,
        cat: &CategoryData,
        simples: &[CenterObject],
    ) -> Result<Vec<Vec<Scalar>>, String> {
        let zc = self.center_basis();
        if zc.len() != simples.len() {
            return Err(format!(
                "center dimension {} does not match the {} supplied simples",
                zc.len(),
                simples.len()
            ));
        }
        // Find a central combination with pairwise distinct characters.
        let n = self.dim();
        let mut gen: Option<(Vec<Scalar>, Vec<Scalar>)> = None;
        'search: for round in 0..64i64 {
            // Geometric weights: distinct character vectors stay distinct for
            // all but finitely many bases.
            let base = round + 2;
            let mut v = vec![Scalar::zero(); n];
            let mut w = Scalar::one();
            for z in zc.iter() {
                for (i, c) in z.iter().enumerate() {
                    v[i] = v[i].add(&c.mul(&w));
                }
                w = w.mul(&Scalar::from_integer(base));
            }
            let chars: Vec<Scalar> = simples
                .iter()
                .map(|s| {
                    let d = s.total_mult() as i64;
                    // normalize by dimension so characters are eigenvalues
                    self.character(cat, s, &v).div(&Scalar::from_integer(d)).unwrap()
                })
                .collect();
            let mut distinct = true;
            for i in 0..chars.len() {
                for j in (i + 1)..chars.len() {
                    if chars[i] == chars[j] {
                        distinct = false;
                    }
                }
            }
            if distinct {
                gen = Some((v, chars));
                break 'search;
            }
        }
        let Some((v, chars)) = gen else {
            return Err("no separating central element found".into());
        };
        // e_k = Π_{j≠k} (v - χ_j)/(χ_k - χ_j)
        let mut idems = Vec::new();
        for k in 0..chars.len() {
            let mut e = self.unit_vector();
            for j in 0..chars.len() {
                if j == k {
                    continue;
                }
                // e <- e · (v - χ_j)/(χ_k - χ_j)
                let denom = chars[k].sub(&chars[j]);
                let dinv = denom.inv().map_err(|_| "coincident characters".to_string())?;
                let mut shifted = v.clone();
                for (i, c) in self.unit_vector().into_iter().enumerate() {
                    shifted[i] = shifted[i].sub(&c.mul(&chars[j]));
                }
                let prod = self.multiply(&e, &shifted);
                e = prod.into_iter().map(|x| x.mul(&dinv)).collect();
            }
            idems.push(e);
        }
        // Verify: orthogonal idempotents summing to the unit.
        let mut total = vec![Scalar::zero(); n];
        for e in &idems {
            let sq = self.multiply(e, e);
            if &sq != e {
                return Err("idempotent verification failed".into());
            }
            for (i, c) in e.iter().enumerate() {
                total[i] = total[i].add(c);
            }
        }
        if total != self.unit_vector() {
            return Err("idempotents do not sum to the unit".into());
        }
        for i in 0..idems.len() {
            for j in (i + 1)..idems.len() {
                let p = self.multiply(&idems[i], &idems[j]);
                if p.iter().any(|x| !x.is_zero()) {
                    return Err("idempotents are not orthogonal".into());
                }
            }
        }
        Ok(idems)
    }
}
