use std::cell::RefCell;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{signature_over, HermitianField};
use crate::arith::{cyclotomic_polynomial, two_cos_root_of_unity, int, Poly, Rational, RealAlgebraic};
use crate::error::{Error, Result};

/// Largest working precision, in bits, used to certify pivot signs.
pub const DEFAULT_PRECISION_CEILING: u32 = 4096;

const START_PRECISION: u32 = 64;

/// A hermitian matrix over `ℚ(ζ_d)`, read at the embedding `ζ ↦ e^{2πik/d}`.
///
/// Entries are polynomials in `ζ` reduced modulo `Φ_d`.
#[derive(Clone, Debug)]
pub struct CyclotomicMatrix {
    d: u64,
    k: u64,
    entries: Vec<Vec<Poly>>,
    precision_ceiling: u32,
}

impl CyclotomicMatrix {
    /// Requires `0 <= k < d` and `gcd(k, d) = 1`.
    pub fn new(d: u64, k: u64, entries: Vec<Vec<Poly>>) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroOrder);
        }
        if k >= d {
            return Err(Error::IndexOutOfRange { k: k as i64, d: d as i64 });
        }
        if k.gcd(&d) != 1 {
            return Err(Error::Incompatible(format!("embedding index {k} not coprime to {d}")));
        }
        let phi = cyclotomic_polynomial(d);
        let entries = entries.into_iter().map(|r| r.into_iter().map(|p| p.rem(&phi)).collect()).collect();
        Ok(Self { d, k, entries, precision_ceiling: DEFAULT_PRECISION_CEILING })
    }

    pub fn with_precision_ceiling(mut self, bits: u32) -> Self {
        self.precision_ceiling = bits;
        self
    }

    pub fn order(&self) -> u64 {
        self.d
    }

    pub fn index(&self) -> u64 {
        self.k
    }

    pub fn entries(&self) -> &[Vec<Poly>] {
        &self.entries
    }
}

/// `ℚ(ζ_d)` with `ζ ↦ ζ⁻¹` and the order induced by `ζ ↦ e^{2πik/d}`.
pub struct CyclotomicField {
    d: u64,
    phi: Poly,
    /// `2cos(2πk/d)`, refined on demand.
    c: RefCell<RealAlgebraic>,
    /// `D_j(x)` with `D_j(t + t⁻¹) = t^j + t^{-j}`.
    dickson: RefCell<Vec<Poly>>,
    ceiling: u32,
}

impl CyclotomicField {
    pub fn new(d: u64, k: u64, ceiling: u32) -> Self {
        Self {
            d,
            phi: cyclotomic_polynomial(d),
            c: RefCell::new(two_cos_root_of_unity(k as i64, d)),
            dickson: RefCell::new(vec![Poly::constant(int(2)), Poly::x()]),
            ceiling,
        }
    }

    fn dickson(&self, j: usize) -> Poly {
        let mut ds = self.dickson.borrow_mut();
        while ds.len() <= j {
            let n = ds.len();
            let next = &(&Poly::x() * &ds[n - 1]) - &ds[n - 2];
            ds.push(next);
        }
        ds[j].clone()
    }

    /// Real value of a self-conjugate element as a polynomial in `2cos(2πk/d)`.
    fn real_part_poly(&self, a: &Poly) -> Poly {
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let mut g = Poly::zero();
        for (j, c) in a.coeffs().iter().enumerate() {
            if !c.is_zero() {
                g = &g + &self.dickson(j).scale(&(c * &half));
            }
        }
        g
    }
}

/// Interval Horner evaluation over a rational interval.
fn interval_eval(p: &Poly, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
    let mut a = Rational::zero();
    let mut b = Rational::zero();
    for c in p.coeffs().iter().rev() {
        let prods = [&a * lo, &a * hi, &b * lo, &b * hi];
        let mn = prods.iter().min().unwrap().clone();
        let mx = prods.iter().max().unwrap().clone();
        a = mn + c;
        b = mx + c;
    }
    (a, b)
}

impl HermitianField for CyclotomicField {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero()
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a + b
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a - b
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        (a * b).rem(&self.phi)
    }
    fn inv(&self, a: &Poly) -> Poly {
        let (g, s) = Poly::ext_gcd(a, &self.phi);
        debug_assert_eq!(g, Poly::one());
        s.rem(&self.phi)
    }
    fn conj(&self, a: &Poly) -> Poly {
        let d = self.d as usize;
        let mut c = vec![Rational::zero(); d.max(1)];
        for (j, x) in a.coeffs().iter().enumerate() {
            c[(d - j % d) % d] += x;
        }
        Poly::new(c).rem(&self.phi)
    }
    fn real_sign(&self, a: &Poly) -> Result<i32> {
        let g = self.real_part_poly(a);
        if g.degree().unwrap_or(0) == 0 {
            return Ok(crate::arith::sign_of(&g.coeff(0)));
        }
        let mut bits = START_PRECISION;
        loop {
            let w = Rational::new(BigInt::one(), BigInt::one() << bits);
            let mut c = self.c.borrow_mut();
            c.refine_to_width(&w);
            let (lo, hi) = c.interval();
            let (a, b) = interval_eval(&g, lo, hi);
            if a.is_positive() {
                return Ok(1);
            }
            if b.is_negative() {
                return Ok(-1);
            }
            if let Some(q) = c.as_rational() {
                return Ok(crate::arith::sign_of(&g.eval(&q)));
            }
            if bits >= self.ceiling {
                return Err(Error::PrecisionExhausted(self.ceiling));
            }
            bits = (bits * 2).min(self.ceiling);
        }
    }
}

/// `(signature, rank)` of a cyclotomic hermitian matrix at its embedding.
pub fn signature_cyclotomic(m: &CyclotomicMatrix) -> Result<(i64, usize)> {
    let f = CyclotomicField::new(m.d, m.k, m.precision_ceiling);
    signature_over(&f, m.entries.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `(1 - ζ)A + (1 - ζ⁻¹)Aᵀ` for integer `A`, with `ζ⁻¹ = ζ^{d-1}`.
    fn seifert_form(a: &[&[i64]], d: u64) -> Vec<Vec<Poly>> {
        let n = a.len();
        let one_minus = Poly::from_ints(&[1, -1]);
        let mut inv = vec![0i64; d as usize];
        inv[0] += 1;
        inv[(d as usize - 1) % d as usize] -= 1;
        let one_minus_inv = Poly::from_ints(&inv);
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| &one_minus.scale(&int(a[i][j])) + &one_minus_inv.scale(&int(a[j][i])))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn spec_examples() {
        let a: &[&[i64]] = &[&[1, 1], &[0, 1]];
        let m = CyclotomicMatrix::new(6, 1, seifert_form(a, 6)).unwrap();
        assert_eq!(signature_cyclotomic(&m), Ok((1, 1)));
        let m = CyclotomicMatrix::new(2, 1, seifert_form(a, 2)).unwrap();
        assert_eq!(signature_cyclotomic(&m), Ok((2, 2)));
        let m = CyclotomicMatrix::new(6, 5, seifert_form(a, 6)).unwrap();
        assert_eq!(signature_cyclotomic(&m), Ok((1, 1)));
    }

    #[test]
    fn degenerate_field_matches_rational() {
        let e = |x: i64| Poly::constant(int(x));
        let m = CyclotomicMatrix::new(1, 0, vec![vec![e(4), e(2)], vec![e(2), e(-4)]]).unwrap();
        assert_eq!(signature_cyclotomic(&m), Ok((0, 2)));
    }

    #[test]
    fn conjugation_and_inverse() {
        let f = CyclotomicField::new(5, 2, DEFAULT_PRECISION_CEILING);
        let z = Poly::x();
        assert_eq!(f.mul(&z, &f.conj(&z)), Poly::one());
        let a = Poly::from_ints(&[2, 1, 0, 3]);
        assert_eq!(f.mul(&a, &f.inv(&a)), Poly::one());
        assert_eq!(f.conj(&f.conj(&a)), a.rem(&cyclotomic_polynomial(5)));
    }

    #[test]
    fn real_signs_of_cosines() {
        // ζ + ζ⁻¹ = 2cos(2πk/d).
        for d in 3..20u64 {
            for k in 1..d {
                if k.gcd(&d) != 1 {
                    continue;
                }
                let f = CyclotomicField::new(d, k, DEFAULT_PRECISION_CEILING);
                let x = f.add(&Poly::x(), &f.conj(&Poly::x()));
                let want = (2.0 * std::f64::consts::PI * k as f64 / d as f64).cos();
                let s = f.real_sign(&x).unwrap();
                if want.abs() > 1e-9 {
                    assert_eq!(s, if want > 0.0 { 1 } else { -1 }, "{k}/{d}");
                } else {
                    assert!(f.is_zero(&x));
                }
            }
        }
    }

    #[test]
    fn precision_ceiling_is_reported() {
        // A tiny nonzero real element that 64 bits cannot separate from zero:
        // 2cos(2π/5) - golden-ratio approximation.
        let f = CyclotomicField::new(5, 1, 64);
        let x = f.add(&Poly::x(), &f.conj(&Poly::x()));
        // φ⁻¹ = 2cos(2π/5); use a convergent F(n-1)/F(n) with error ~ 1e-40.
        let (mut p, mut q) = (BigInt::from(1), BigInt::from(1));
        for _ in 0..95 {
            let t = &p + &q;
            p = q;
            q = t;
        }
        let approx = Poly::constant(Rational::new(p, q));
        let y = f.sub(&x, &approx);
        assert_eq!(f.real_sign(&y), Err(Error::PrecisionExhausted(64)));
        let f = CyclotomicField::new(5, 1, DEFAULT_PRECISION_CEILING);
        assert!(f.real_sign(&y).is_ok());
    }

    #[test]
    fn bad_index() {
        assert!(matches!(CyclotomicMatrix::new(6, 6, vec![]), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(CyclotomicMatrix::new(0, 0, vec![]), Err(Error::ZeroOrder)));
        assert!(CyclotomicMatrix::new(6, 2, vec![]).is_err());
    }
}
