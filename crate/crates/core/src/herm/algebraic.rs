use std::cell::RefCell;

use super::{signature_over, HermitianField};
use crate::arith::{Poly, RealAlgebraic};
use crate::error::Result;

/// `re + i·im` with `re, im ∈ ℚ[u]`, read at `u = u₀`.
pub type TangentEntry = (Poly, Poly);

/// `ℚ(i)(u₀)` for a real algebraic `u₀`, by dynamic evaluation: the defining
/// polynomial is split whenever an inverse meets a common factor.
pub struct AlgebraicPointField {
    point: RefCell<RealAlgebraic>,
}

impl AlgebraicPointField {
    pub fn new(u0: &RealAlgebraic) -> Self {
        Self { point: RefCell::new(u0.clone()) }
    }

    fn modulus(&self) -> Poly {
        self.point.borrow().poly().clone()
    }

    fn reduce(&self, a: &Poly) -> Poly {
        a.rem(&self.modulus())
    }

    fn vanishes(&self, a: &Poly) -> bool {
        a.is_zero() || self.point.borrow().sign_of_poly(a) == 0
    }
}

impl HermitianField for AlgebraicPointField {
    type Elem = TangentEntry;

    fn zero(&self) -> TangentEntry {
        (Poly::zero(), Poly::zero())
    }
    fn is_zero(&self, a: &TangentEntry) -> bool {
        self.vanishes(&a.0) && self.vanishes(&a.1)
    }
    fn add(&self, a: &TangentEntry, b: &TangentEntry) -> TangentEntry {
        (&a.0 + &b.0, &a.1 + &b.1)
    }
    fn sub(&self, a: &TangentEntry, b: &TangentEntry) -> TangentEntry {
        (&a.0 - &b.0, &a.1 - &b.1)
    }
    fn mul(&self, a: &TangentEntry, b: &TangentEntry) -> TangentEntry {
        let re = &(&a.0 * &b.0) - &(&a.1 * &b.1);
        let im = &(&a.0 * &b.1) + &(&a.1 * &b.0);
        (self.reduce(&re), self.reduce(&im))
    }
    fn inv(&self, a: &TangentEntry) -> TangentEntry {
        let n = &(&a.0 * &a.0) + &(&a.1 * &a.1);
        let p = self.modulus();
        let g = Poly::gcd(&n, &p);
        if g.degree().unwrap_or(0) > 0 {
            // u₀ is a root of p but not of n, hence of p / g.
            let q = p.div_rem(&g).0;
            let mut pt = self.point.borrow_mut();
            let (lo, hi) = pt.interval();
            *pt = RealAlgebraic::new(&q, lo.clone(), hi.clone()).expect("split keeps the isolated root");
        }
        let p = self.modulus();
        let (_, s) = Poly::ext_gcd(&n.rem(&p), &p);
        (self.reduce(&(&a.0 * &s)), self.reduce(&-(&a.1 * &s)))
    }
    fn conj(&self, a: &TangentEntry) -> TangentEntry {
        (a.0.clone(), -a.1.clone())
    }
    fn real_sign(&self, a: &TangentEntry) -> Result<i32> {
        Ok(self.point.borrow().sign_of_poly(&a.0))
    }
}

/// `(signature, rank)` of a hermitian matrix with entries in `ℚ(i)[u]`,
/// evaluated at `u = u₀`.
pub fn signature_at_algebraic(u0: &RealAlgebraic, entries: Vec<Vec<TangentEntry>>) -> Result<(i64, usize)> {
    if let Some(q) = u0.as_rational() {
        let f = super::GaussianField;
        let m = entries
            .iter()
            .map(|r| r.iter().map(|(a, b)| crate::arith::GaussianRational::new(a.eval(&q), b.eval(&q))).collect())
            .collect();
        return signature_over(&f, m);
    }
    signature_over(&AlgebraicPointField::new(u0), entries)
}
