//! Evaluation of `σ_A` through the tangent chart `u = tan(θ/2)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{branched_signature, reduced_turn, Angle, Parity, SeifertMatrix};
use crate::arith::{unit_circle_point, Poly, Rational, RealAlgebraic};
use crate::error::{Error, Result};
use crate::herm::{signature_at_algebraic, signature_exact, TangentEntry};

/// Real and imaginary parts of `(1 + iu)^k` as polynomials in `u`.
pub(super) fn one_plus_iu_power(k: u64) -> (Poly, Poly) {
    let k = k as usize;
    let mut re = vec![Rational::zero(); k + 1];
    let mut im = vec![Rational::zero(); k + 1];
    let mut binom = BigInt::one();
    for j in 0..=k {
        let c = Rational::from_integer(binom.clone());
        // i^j
        match j % 4 {
            0 => re[j] = c,
            1 => im[j] = c,
            2 => re[j] = -c,
            _ => im[j] = -c,
        }
        binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
    }
    (Poly::new(re), Poly::new(im))
}

/// `(1 + u²)^k`.
pub(super) fn norm_power(k: u64) -> Poly {
    let base = Poly::from_ints(&[1, 0, 1]);
    let mut acc = Poly::one();
    for _ in 0..k {
        acc = &acc * &base;
    }
    acc
}

/// Entries of `(1 + u²)^{|n|} · i^δ M(w^n)` as `(re, im)` polynomials in `u`.
pub(super) fn tangent_entries(a: &SeifertMatrix, n: i64) -> Vec<Vec<TangentEntry>> {
    let k = n.unsigned_abs();
    let norm = norm_power(k);
    let (re, im) = one_plus_iu_power(2 * k);
    let base = &norm - &re;
    // (1+u²)^k (1 - w^n) and (1+u²)^k (1 - w̄^n).
    let mut alpha = (base.clone(), -im.clone());
    let mut beta = (base, im);
    if n < 0 {
        std::mem::swap(&mut alpha, &mut beta);
    }
    let eps = Rational::from_integer(a.eps().into());
    let dim = a.dim();
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let x = a.entry(i, j);
                    let y = a.entry(j, i) * &eps;
                    let r = &alpha.0.scale(x) + &beta.0.scale(&y);
                    let s = &alpha.1.scale(x) + &beta.1.scale(&y);
                    match a.parity() {
                        Parity::Odd => (r, s),
                        Parity::Even => (-s, r),
                    }
                })
                .collect()
        })
        .collect()
}

/// `σ_A(n·2·atan u)` for rational `u`.
pub(super) fn sigma_at_rational_tangent(a: &SeifertMatrix, u: &Rational, n: i64) -> i64 {
    if n == 0 {
        return 0;
    }
    let w = unit_circle_point(u).pow(n).expect("unit circle point is nonzero");
    signature_exact(&a.hermitian_form(&w)).expect("hermitian by construction").0
}

/// `σ_A(n·2·atan u)` for real algebraic `u`.
pub(super) fn sigma_at_tangent(a: &SeifertMatrix, u: &RealAlgebraic, n: i64) -> Result<i64> {
    if n == 0 {
        return Ok(0);
    }
    if let Some(q) = u.as_rational() {
        return Ok(sigma_at_rational_tangent(a, &q, n));
    }
    Ok(signature_at_algebraic(u, tangent_entries(a, n))?.0)
}

pub(super) fn sigma_at(a: &SeifertMatrix, theta: &Angle) -> Result<i64> {
    match theta {
        Angle::RationalPi(r) => {
            let (k, d) = reduced_turn(r);
            branched_signature(a, k, d)
        }
        Angle::Algebraic { tangent, .. } => {
            let n = theta
                .integer_scale()
                .ok_or_else(|| Error::Unrepresentable(format!("σ at {theta} needs a fractional angle")))?;
            sigma_at_tangent(a, tangent, n)
        }
    }
}
