//! Dense matrices over exact scalars.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{fmt_rational, GaussianRational, Rational};
use crate::error::{Error, Result};

/// Exact field scalars usable in elimination.
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
}

impl Scalar for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

impl Scalar for GaussianRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        GaussianRational::inv(self)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type RationalMatrix = Matrix<Rational>;
pub type GaussianMatrix = Matrix<GaussianRational>;

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Block-diagonal sum with `zero` off the blocks.
    pub fn block_sum(&self, o: &Self, zero: T) -> Self {
        let (r, c) = (self.rows, self.cols);
        Self::from_fn(r + o.rows, c + o.cols, |i, j| {
            if i < r && j < c {
                self.get(i, j).clone()
            } else if i >= r && j >= c {
                o.get(i - r, j - c).clone()
            } else {
                zero.clone()
            }
        })
    }

    /// Submatrix on the given row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        Ok(Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).add(o.get(i, j))))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        Ok(Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j).sub(o.get(i, j))))
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|x| x.mul(k))
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut r = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let v = r.get(i, j).add(&a.mul(o.get(k, j)));
                    r.set(i, j, v);
                }
            }
        }
        Ok(r)
    }

    fn same_shape(&self, o: &Self) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    fn require_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        Ok(())
    }

    /// Row echelon form in place; returns pivot columns and the determinant
    /// sign flips.
    fn eliminate(&mut self) -> (Vec<usize>, bool) {
        let mut pivots = Vec::new();
        let mut flipped = false;
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
                flipped = !flipped;
            }
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            for i in r + 1..self.rows {
                let f = self.get(i, c).mul(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = self.get(i, j).sub(&f.mul(self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (pivots, flipped)
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate().0.len()
    }

    pub fn det(&self) -> Result<T> {
        self.require_square()?;
        let mut m = self.clone();
        let (piv, flipped) = m.eliminate();
        if piv.len() < self.rows {
            return Ok(T::zero());
        }
        let mut d = T::one();
        for i in 0..self.rows {
            d = d.mul(m.get(i, i));
        }
        Ok(if flipped { d.neg() } else { d })
    }

    /// Inverse, `None` when singular.
    pub fn inverse(&self) -> Result<Option<Self>> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(Some(self.clone()));
        }
        let mut aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                T::one()
            } else {
                T::zero()
            }
        });
        let (piv, _) = aug.eliminate();
        if piv.len() < n || piv[n - 1] >= n {
            return Ok(None);
        }
        for r in (0..n).rev() {
            let inv = aug.get(r, r).inv().expect("nonzero pivot");
            for j in 0..2 * n {
                let v = aug.get(r, j).mul(&inv);
                aug.set(r, j, v);
            }
            for i in 0..r {
                let f = aug.get(i, r).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..2 * n {
                    let v = aug.get(i, j).sub(&f.mul(aug.get(r, j)));
                    aug.set(i, j, v);
                }
            }
        }
        Ok(Some(Self::from_fn(n, n, |i, j| aug.get(i, j + n).clone())))
    }
}

impl<T: Scalar> Matrix<T> {
    /// Coefficients `c_0..c_n` of `det(λI - M) = Σ c_k λ^k`, via reduction to
    /// upper Hessenberg form.
    pub fn char_poly(&self) -> Result<Vec<T>> {
        self.require_square()?;
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(p) = (m..n).find(|&i| !h.get(i, m - 1).is_zero()) else {
                continue;
            };
            if p != m {
                for j in 0..n {
                    h.data.swap(p * n + j, m * n + j);
                }
                for i in 0..n {
                    h.data.swap(i * n + p, i * n + m);
                }
            }
            let inv = h.get(m, m - 1).inv().expect("nonzero pivot");
            for i in m + 1..n {
                let f = h.get(i, m - 1).mul(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = h.get(i, j).sub(&f.mul(h.get(m, j)));
                    h.set(i, j, v);
                }
                for r in 0..n {
                    let v = h.get(r, m).add(&f.mul(h.get(r, i)));
                    h.set(r, m, v);
                }
            }
        }
        // p[k] is the characteristic polynomial of the leading k×k block.
        let mut p: Vec<Vec<T>> = vec![vec![T::one()]];
        for k in 1..=n {
            let hk = h.get(k - 1, k - 1);
            let prev = &p[k - 1];
            let mut next = vec![T::zero(); k + 1];
            for (d, c) in prev.iter().enumerate() {
                next[d + 1] = next[d + 1].add(c);
                next[d] = next[d].sub(&hk.mul(c));
            }
            let mut prod = T::one();
            for i in 1..k {
                prod = prod.mul(h.get(k - i, k - i - 1));
                if prod.is_zero() {
                    break;
                }
                let f = h.get(k - i - 1, k - 1).mul(&prod);
                for (d, c) in p[k - i - 1].iter().enumerate() {
                    next[d] = next[d].sub(&f.mul(c));
                }
            }
            p.push(next);
        }
        Ok(p.pop().unwrap())
    }
}

impl Matrix<GaussianRational> {
    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn from_rational(m: &RationalMatrix) -> Self {
        m.map(|q| GaussianRational::real(q.clone()))
    }
}

impl RationalMatrix {
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_fn(rows.len(), rows.first().map_or(0, |r| r.len()), |i, j| {
            crate::arith::int(rows[i][j])
        })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Same as [`Matrix::char_poly`], computed without division on the
    /// integer matrix `L·M` (Berkowitz), which avoids coefficient growth.
    pub fn char_poly_integral(&self) -> Result<Vec<Rational>> {
        self.require_square()?;
        let n = self.rows;
        let l = crate::arith::lcm_denominators(self.data.iter());
        let m: Vec<BigInt> = self.data.iter().map(|q| q.numer() * (&l / q.denom())).collect();
        let at = |i: usize, j: usize| &m[i * n + j];
        // v holds det(λI - N_r) for the leading r×r block, highest degree first.
        let mut v = vec![BigInt::one()];
        for r in 0..n {
            let mut t = Vec::with_capacity(r + 2);
            t.push(BigInt::one());
            t.push(-at(r, r));
            let mut x: Vec<BigInt> = (0..r).map(|i| at(i, r).clone()).collect();
            for k in 0..r {
                if k > 0 {
                    x = (0..r).map(|i| (0..r).map(|j| at(i, j) * &x[j]).sum()).collect();
                }
                let s: BigInt = (0..r).map(|j| at(r, j) * &x[j]).sum();
                t.push(-s);
            }
            v = (0..r + 2).map(|i| (0..=i.min(r)).map(|j| &t[i - j] * &v[j]).sum()).collect();
        }
        let lq = Rational::from_integer(l);
        let mut scale = <Rational as One>::one();
        let mut out = vec![<Rational as Zero>::zero(); n + 1];
        // Coefficient of λ^k in det(λI - LM) is L^(n-k) c_k.
        for k in (0..=n).rev() {
            out[k] = Rational::from_integer(v[n - k].clone()) / &scale;
            scale *= &lq;
        }
        Ok(out)
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(fmt_rational).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
