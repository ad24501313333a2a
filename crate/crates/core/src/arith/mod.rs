//! Exact scalar and polynomial arithmetic.
//!
//! Everything here is exact: big rationals, Gaussian rationals, dense
//! rational polynomials with Sturm sequences, Laurent polynomials with the
//! bar involution, isolated real algebraic numbers, and the cyclotomic
//! helpers used to place roots of unity inside the tangent chart.

mod algebraic;
mod circle;
mod cyclotomic;
mod gaussian;
mod laurent;
mod poly;

pub use algebraic::{alg_compare, isolate_all as real_roots, sturm_isolate, RealAlgebraic};
pub use circle::{circle_to_tangent, simplest_between, unit_circle_point, CirclePoint};
pub use cyclotomic::{
    cyclotomic_polynomial, euler_phi, laurent_vanishes_at_root_of_unity, real_cyclotomic_polynomial,
    root_of_unity_tangent, tangent_polynomial_of_roots, two_cos_root_of_unity,
};
pub use gaussian::GaussianRational;
pub use laurent::{laurent_bar, LaurentPolynomial};
pub use poly::Poly;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders as `p` or `p/q`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `p/q` or a decimal-free signed integer fraction.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

/// Least common multiple of the denominators.
pub fn lcm_denominators<'a>(it: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Floating-point approximation, for rendering and test oracles only.
pub fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Scale down huge numerators/denominators before dividing.
            let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
            let n = (q.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (q.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

pub(crate) fn sign_of(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}
