//! Dense exact matrices over cyclotomic scalars.
//!
//! Shapes at play are desk-scale (coupling blocks, string-net bases of at
//! most a few hundred states), so plain Gaussian elimination over the exact
//! field is the right tool everywhere.

use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| format!("{}", self.get(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c));
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Scalar) {
        let cur = self.get(r, c).add(v);
        self.set(r, c, cur);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for r in 0..self.rows {
            for c in 0..self.cols {
                let x = self.get(r, c);
                if r == c && !x.is_one() {
                    return false;
                }
                if r != c && !x.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out = Mat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(r, c).add(&a.mul(b));
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let mut out = self.clone();
        for i in 0..self.data.len() {
            out.data[i] = out.data[i].add(&other.data[i]);
        }
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let mut out = self.clone();
        for i in 0..self.data.len() {
            out.data[i] = out.data[i].sub(&other.data[i]);
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = x.mul(s);
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let mut t = Scalar::zero();
        for i in 0..self.rows {
            t = t.add(self.get(i, i));
        }
        t
    }

    /// Row-reduces in place; returns pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            // Prefer a rational pivot to keep coefficient growth down.
            let mut pivot = None;
            for r in row..self.rows {
                if !self.get(r, col).is_zero() {
                    if self.get(r, col).as_rational().is_some() {
                        pivot = Some(r);
                        break;
                    }
                    if pivot.is_none() {
                        pivot = Some(r);
                    }
                }
            }
            let Some(p) = pivot else { continue };
            self.swap_rows(row, p);
            let inv = self.get(row, col).inv().expect("nonzero pivot");
            for c in col..self.cols {
                let v = self.get(row, c).mul(&inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let f = self.get(r, col).clone();
                for c in col..self.cols {
                    let v = self.get(r, c).sub(&f.mul(self.get(row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Null space basis as matrix columns.
    pub fn kernel(&self) -> Mat {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zeros(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, Scalar::one());
            for (prow, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, m.get(prow, fc).neg());
            }
        }
        out
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Scalar::one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut out = Mat::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, aug.get(r, n + c).clone());
            }
        }
        Some(out)
    }

    /// Selects columns by index.
    pub fn columns(&self, idx: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.rows, idx.len());
        for (k, &c) in idx.iter().enumerate() {
            for r in 0..self.rows {
                out.set(r, k, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn rows_select(&self, idx: &[usize]) -> Mat {
        let mut out = Mat::zeros(idx.len(), self.cols);
        for (k, &r) in idx.iter().enumerate() {
            for c in 0..self.cols {
                out.set(k, c, self.get(r, c).clone());
            }
        }
        out
    }

    /// For an exact idempotent P, returns (e, r) with r∘e = Id on the image
    /// and e∘r = P. Columns of `e` form a basis of Im(P).
    pub fn split_idempotent(&self) -> (Mat, Mat) {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let pivot_cols = m.rref();
        let e = self.columns(&pivot_cols);
        // Find row indices where e has an invertible square block.
        let mut et = e.clone();
        let pivot_rows = {
            let mut tr = et.transpose();
            let rows = tr.rref();
            let _ = &mut et;
            rows
        };
        let block = e.rows_select(&pivot_rows);
        let binv = block.inverse().expect("image basis block must be invertible");
        // r = B^{-1} * Sel * P
        let sel = {
            let mut s = Mat::zeros(pivot_rows.len(), self.rows);
            for (k, &r) in pivot_rows.iter().enumerate() {
                s.set(k, r, Scalar::one());
            }
            s
        };
        let r = binv.mul(&sel).mul(self);
        (e, r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_integer(n)
    }

    #[test]
    fn rank_and_kernel() {
        let m = Mat::from_rows(vec![vec![s(1), s(2), s(3)], vec![s(2), s(4), s(6)]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.cols, 2);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn inverse_round_trip() {
        let m = Mat::from_rows(vec![
            vec![s(1), s(1)],
            vec![Scalar::root_of_unity(4, 1), s(2)],
        ]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
    }

    #[test]
    fn idempotent_split() {
        // P projects onto span{(1,1)} along (1,-1): P = 1/2 [[1,1],[1,1]]
        let half = Scalar::from_ratio(1, 2);
        let p = Mat::from_rows(vec![
            vec![half.clone(), half.clone()],
            vec![half.clone(), half.clone()],
        ]);
        assert_eq!(p.mul(&p), p);
        let (e, r) = p.split_idempotent();
        assert!(r.mul(&e).is_identity());
        assert_eq!(e.mul(&r), p);
        assert_eq!(e.cols, 1);
    }
}
