//! Exact matrices over F_p(t).

use crate::error::{Error, Result};
use crate::ratfunc::RatFunc;

pub type Vector = Vec<RatFunc>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<RatFunc>,
}

impl Mat {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Mat { p, rows, cols, data: vec![RatFunc::zero(p); rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, RatFunc::one(p));
        }
        m
    }

    pub fn from_fn(p: u32, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RatFunc) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { p, rows, cols, data }
    }

    pub fn from_cols(p: u32, rows: usize, cols: &[Vector]) -> Self {
        Self::from_fn(p, rows, cols.len(), |r, c| cols[c][r].clone())
    }

    /// Builds a matrix of constants from small signed integers.
    pub fn from_ints(p: u32, rows: &[Vec<i64>]) -> Self {
        let pi = p as i64;
        Self::from_fn(p, rows.len(), rows.first().map_or(0, |r| r.len()), |r, c| {
            RatFunc::constant(p, rows[r][c].rem_euclid(pi) as u32)
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &RatFunc {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: RatFunc) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = &RatFunc> {
        self.data.iter()
    }

    pub fn col(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> Vector {
        (0..self.cols).map(|c| self.get(r, c).clone()).collect()
    }

    pub fn map(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Mat {
        Mat { p: self.p, rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.p, self.rows)
    }

    pub fn transpose(&self) -> Mat {
        Self::from_fn(self.p, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        self.add(&o.scale(&RatFunc::constant(self.p, self.p - 1)))
    }

    pub fn scale(&self, a: &RatFunc) -> Mat {
        self.map(|x| x.mul(a))
    }

    pub fn scale_int(&self, a: u32) -> Mat {
        self.map(|x| x.scale(a))
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let mut out = Self::zeros(self.p, self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = o.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c).add(&a.mul(b));
                        out.set(r, c, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[RatFunc]) -> Vector {
        assert_eq!(self.cols, v.len());
        let mut out = vec![RatFunc::zero(self.p); self.rows];
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = self.get(r, k);
                if !a.is_zero() {
                    *o = o.add(&a.mul(x));
                }
            }
        }
        out
    }

    /// Kronecker product, row index `i * o.rows + k`.
    pub fn kron(&self, o: &Mat) -> Mat {
        Self::from_fn(self.p, self.rows * o.rows, self.cols * o.cols, |r, c| {
            self.get(r / o.rows, c / o.cols).mul(o.get(r % o.rows, c % o.cols))
        })
    }

    /// Block diagonal sum.
    pub fn block_diag(&self, o: &Mat) -> Mat {
        let (r1, c1) = (self.rows, self.cols);
        Self::from_fn(self.p, r1 + o.rows, c1 + o.cols, |r, c| match (r < r1, c < c1) {
            (true, true) => self.get(r, c).clone(),
            (false, false) => o.get(r - r1, c - c1).clone(),
            _ => RatFunc::zero(self.p),
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat {
        Self::from_fn(self.p, rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else { continue };
            m.swap_rows(row, pr);
            let inv = m.get(row, col).inv();
            for c in col..m.cols {
                let v = m.get(row, c).mul(&inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let f = m.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m.get(r, c).sub(&f.mul(m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
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
        self.rref().1.len()
    }

    /// Columns spanning the right kernel.
    pub fn kernel(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![RatFunc::zero(self.p); self.cols];
                v[f] = RatFunc::one(self.p);
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = r.get(i, f).neg();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Mat> {
        if self.rows != self.cols {
            return Err(Error::Shape("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let aug = Self::from_fn(self.p, n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                RatFunc::one(self.p)
            } else {
                RatFunc::zero(self.p)
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(Self::from_fn(self.p, n, n, |i, j| r.get(i, n + j).clone()))
    }

    /// Some `x` with `self * x = b`, if one exists.
    pub fn solve(&self, b: &[RatFunc]) -> Option<Vector> {
        let aug = Self::from_fn(self.p, self.rows, self.cols + 1, |r, c| {
            if c < self.cols { self.get(r, c).clone() } else { b[r].clone() }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![RatFunc::zero(self.p); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    pub fn regular_at_zero(&self) -> bool {
        self.data.iter().all(|x| x.regular_at_zero())
    }

    /// Entrywise value at `t = 0`, as a constant matrix.
    pub fn at_zero(&self) -> Option<Mat> {
        let mut data = Vec::with_capacity(self.data.len());
        for x in &self.data {
            data.push(RatFunc::constant(self.p, x.at_zero()?));
        }
        Some(Mat { p: self.p, rows: self.rows, cols: self.cols, data })
    }

    pub fn inflate(&self, k: usize) -> Mat {
        self.map(|x| x.inflate(k))
    }

    pub fn deflate(&self, k: usize) -> Option<Mat> {
        let mut data = Vec::with_capacity(self.data.len());
        for x in &self.data {
            data.push(x.deflate(k)?);
        }
        Some(Mat { p: self.p, rows: self.rows, cols: self.cols, data })
    }
}

pub fn vec_is_zero(v: &[RatFunc]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn vec_add(a: &[RatFunc], b: &[RatFunc]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn vec_scale(a: &[RatFunc], s: &RatFunc) -> Vector {
    a.iter().map(|x| x.mul(s)).collect()
}

pub fn unit_vector(p: u32, n: usize, i: usize) -> Vector {
    let mut v = vec![RatFunc::zero(p); n];
    v[i] = RatFunc::one(p);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_kernel() {
        let p = 5;
        let t = RatFunc::t(p);
        let one = RatFunc::one(p);
        let m = Mat::from_fn(p, 2, 2, |r, c| match (r, c) {
            (0, 0) => t.clone(),
            (0, 1) | (1, 0) => one.clone(),
            _ => RatFunc::zero(p),
        });
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let sing = Mat::from_fn(p, 2, 3, |r, c| t.pow(r + c));
        let ker = sing.kernel();
        assert_eq!(ker.len(), 2);
        assert!(ker.iter().all(|k| vec_is_zero(&sing.mul_vec(k))));
        assert_eq!(sing.rank(), 1);
        let full = Mat::from_fn(p, 2, 3, |r, c| t.pow(r * c));
        assert_eq!(full.rank(), 2);
        assert_eq!(full.kernel().len(), 1);
    }
}
