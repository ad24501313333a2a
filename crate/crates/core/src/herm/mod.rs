//! Exact signature and rank of hermitian forms.
//!
//! One elimination routine runs over any [`HermitianField`]: the Gaussian
//! rationals, a cyclotomic field embedded at a chosen root of unity, or
//! `ℚ(i)(u₀)` for an isolated real algebraic `u₀`.

mod algebraic;
mod cyclotomic;

pub use algebraic::{signature_at_algebraic, AlgebraicPointField, TangentEntry};
pub use cyclotomic::{signature_cyclotomic, CyclotomicField, CyclotomicMatrix, DEFAULT_PRECISION_CEILING};

use num_traits::{Signed, Zero};

use crate::arith::{GaussianRational, Rational};
use crate::error::{Error, Result};
use crate::matrix::GaussianMatrix;

/// A field with an involution and an ordered fixed field, as needed for
/// symmetric elimination.
pub trait HermitianField {
    type Elem: Clone;

    fn zero(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn conj(&self, a: &Self::Elem) -> Self::Elem;
    /// Sign of a nonzero self-conjugate element.
    fn real_sign(&self, a: &Self::Elem) -> Result<i32>;
    /// Pivot preference; larger is chosen first. `None` takes the first
    /// nonzero candidate.
    fn magnitude(&self, _a: &Self::Elem) -> Option<Rational> {
        None
    }
}

/// `(signature, rank)` of a hermitian matrix over `F`.
pub fn signature_over<F: HermitianField>(f: &F, m: Vec<Vec<F::Elem>>) -> Result<(i64, usize)> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::NotSquare(n, m.first().map_or(0, |r| r.len())));
    }
    for i in 0..n {
        for j in 0..=i {
            if !f.is_zero(&f.sub(&m[i][j], &f.conj(&m[j][i]))) {
                return Err(Error::NotHermitian);
            }
        }
    }
    let mut a = m;
    let mut active: Vec<usize> = (0..n).collect();
    let (mut sig, mut rank) = (0i64, 0usize);
    loop {
        let mut best: Option<(usize, Option<Rational>)> = None;
        for (pos, &i) in active.iter().enumerate() {
            if f.is_zero(&a[i][i]) {
                continue;
            }
            let mag = f.magnitude(&a[i][i]);
            let first_only = mag.is_none();
            let better = match (&best, &mag) {
                (None, _) => true,
                (Some((_, Some(b))), Some(m)) => m > b,
                _ => false,
            };
            if better {
                best = Some((pos, mag));
            }
            if first_only {
                break;
            }
        }
        if let Some((pos, _)) = best {
            let i = active.remove(pos);
            let p = a[i][i].clone();
            sig += i64::from(f.real_sign(&p)?);
            rank += 1;
            let pinv = f.inv(&p);
            for (x, &j) in active.iter().enumerate() {
                if f.is_zero(&a[j][i]) {
                    continue;
                }
                let fj = f.mul(&a[j][i], &pinv);
                for &l in &active[x..] {
                    let v = f.sub(&a[j][l], &f.mul(&fj, &a[i][l]));
                    if l != j {
                        a[l][j] = f.conj(&v);
                    }
                    a[j][l] = v;
                }
            }
            continue;
        }
        // All remaining diagonal entries vanish: use a hyperbolic 2×2 block.
        let mut pair = None;
        'search: for (x, &j) in active.iter().enumerate() {
            for (y, &k) in active.iter().enumerate().skip(x + 1) {
                if !f.is_zero(&a[j][k]) {
                    pair = Some((x, y));
                    break 'search;
                }
            }
        }
        let Some((x, y)) = pair else { break };
        let (j, k) = (active[x], active[y]);
        active.remove(y);
        active.remove(x);
        rank += 2;
        let z = a[j][k].clone();
        let zinv = f.inv(&z);
        let zbar_inv = f.conj(&zinv);
        for (s, &i) in active.iter().enumerate() {
            for &l in &active[s..] {
                let t1 = f.mul(&f.mul(&a[i][j], &zbar_inv), &a[k][l]);
                let t2 = f.mul(&f.mul(&a[i][k], &zinv), &a[j][l]);
                let v = f.sub(&a[i][l], &f.add(&t1, &t2));
                if l != i {
                    a[l][i] = f.conj(&v);
                }
                a[i][l] = v;
            }
        }
    }
    Ok((sig, rank))
}

/// The Gaussian rationals with complex conjugation.
#[derive(Clone, Copy, Debug, Default)]
pub struct GaussianField;

impl HermitianField for GaussianField {
    type Elem = GaussianRational;

    fn zero(&self) -> GaussianRational {
        GaussianRational::zero()
    }
    fn is_zero(&self, a: &GaussianRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
        a + b
    }
    fn sub(&self, a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
        a - b
    }
    fn mul(&self, a: &GaussianRational, b: &GaussianRational) -> GaussianRational {
        a * b
    }
    fn inv(&self, a: &GaussianRational) -> GaussianRational {
        a.inv().expect("inverse of zero")
    }
    fn conj(&self, a: &GaussianRational) -> GaussianRational {
        a.conj()
    }
    fn real_sign(&self, a: &GaussianRational) -> Result<i32> {
        Ok(crate::arith::sign_of(&a.re))
    }
    fn magnitude(&self, a: &GaussianRational) -> Option<Rational> {
        Some(a.re.abs())
    }
}

/// `(signature, rank)` of a hermitian Gaussian-rational matrix.
pub fn signature_exact(h: &GaussianMatrix) -> Result<(i64, usize)> {
    if !h.is_square() {
        return Err(Error::NotSquare(h.rows(), h.cols()));
    }
    signature_over(&GaussianField, h.to_rows())
}

/// Signature of `i·P` for anti-hermitian `P`.
pub fn signature_antihermitian(p: &GaussianMatrix) -> Result<(i64, usize)> {
    if !p.is_square() {
        return Err(Error::NotSquare(p.rows(), p.cols()));
    }
    let n = p.rows();
    for i in 0..n {
        for j in 0..=i {
            if p.get(i, j) != &-p.get(j, i).conj() {
                return Err(Error::NotAntiHermitian);
            }
        }
    }
    signature_exact(&p.map(|z| z.mul_i()))
}
