use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{alg_compare, int, GaussianRational, LaurentPolynomial, Poly, Rational, RealAlgebraic};
use crate::error::{Error, Result};

/// A point of the unit circle in the tangent chart `u = tan(θ/2)`.
///
/// `Tangent(u)` is `θ = 2·arctan(u)` read in `[0, 2π)`, so negative `u` lies
/// in `(π, 2π)`. `Pi` is `θ = π`, which the chart does not reach.
#[derive(Clone, Debug)]
pub enum CirclePoint {
    Tangent(RealAlgebraic),
    Pi,
}

impl CirclePoint {
    pub fn zero() -> Self {
        CirclePoint::Tangent(RealAlgebraic::from_rational(&Rational::zero()))
    }

    pub fn from_rational_tangent(u: &Rational) -> Self {
        CirclePoint::Tangent(RealAlgebraic::from_rational(u))
    }

    pub fn is_zero_angle(&self) -> bool {
        match self {
            CirclePoint::Tangent(u) => u.cmp_rational(&Rational::zero()) == Ordering::Equal,
            CirclePoint::Pi => false,
        }
    }

    /// 0 for `[0, π)`, 1 for `π`, 2 for `(π, 2π)`.
    fn half(&self) -> u8 {
        match self {
            CirclePoint::Pi => 1,
            CirclePoint::Tangent(u) => {
                if u.cmp_rational(&Rational::zero()) == Ordering::Less {
                    2
                } else {
                    0
                }
            }
        }
    }

    /// Angle in `[0, 2π)` as a float.
    pub fn theta_f64(&self) -> f64 {
        match self {
            CirclePoint::Pi => std::f64::consts::PI,
            CirclePoint::Tangent(u) => {
                let t = 2.0 * u.to_f64().atan();
                if t < 0.0 {
                    t + 2.0 * std::f64::consts::PI
                } else {
                    t
                }
            }
        }
    }
}

impl PartialEq for CirclePoint {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}

impl Eq for CirclePoint {}

impl PartialOrd for CirclePoint {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for CirclePoint {
    fn cmp(&self, o: &Self) -> Ordering {
        match self.half().cmp(&o.half()) {
            Ordering::Equal => match (self, o) {
                (CirclePoint::Tangent(a), CirclePoint::Tangent(b)) => alg_compare(a, b),
                _ => Ordering::Equal,
            },
            c => c,
        }
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CirclePoint::Pi => write!(f, "π"),
            CirclePoint::Tangent(u) => write!(f, "2·atan({u})"),
        }
    }
}

/// `e^{iθ}` for `u = tan(θ/2)`, i.e. `((1 - u²) + 2iu) / (1 + u²)`.
pub fn unit_circle_point(u: &Rational) -> GaussianRational {
    let d = Rational::one() + u * u;
    GaussianRational::new((Rational::one() - u * u) / &d, (int(2) * u) / &d)
}

type GPoly = Vec<GaussianRational>;

fn gmul(a: &GPoly, b: &GPoly) -> GPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![GaussianRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] = &r[i + j] + &(x * y);
        }
    }
    r
}

fn gpow(a: &GPoly, n: u64) -> GPoly {
    let mut acc = vec![GaussianRational::one()];
    for _ in 0..n {
        acc = gmul(&acc, a);
    }
    acc
}

/// Rewrites `p(t)` on the unit circle as a real polynomial in `u = tan(θ/2)`.
///
/// With `D = max |exponent|` the result is `(1 + u²)^D · p(t(u))`, which has
/// the same sign as `p` at every `θ ≠ π`. Fails unless `p` is real on the
/// circle.
pub fn circle_to_tangent(p: &LaurentPolynomial) -> Result<Poly> {
    let d = p.half_width();
    let g = |re: i64, im: i64| GaussianRational::new(int(re), int(im));
    let plus = vec![g(1, 0), g(0, 1)];
    let minus = vec![g(1, 0), g(0, -1)];
    let norm = vec![g(1, 0), g(0, 0), g(1, 0)];
    let mut acc: GPoly = Vec::new();
    for (k, c) in p.terms() {
        let ak = k.unsigned_abs();
        let base = if k >= 0 { &plus } else { &minus };
        let term = gmul(&gpow(base, 2 * ak), &gpow(&norm, d - ak));
        if acc.len() < term.len() {
            acc.resize(term.len(), GaussianRational::zero());
        }
        for (i, x) in term.iter().enumerate() {
            acc[i] = &acc[i] + &(x * c);
        }
    }
    if acc.iter().any(|c| !c.is_real()) {
        return Err(Error::NotRealOnCircle);
    }
    Ok(Poly::new(acc.into_iter().map(|c| c.re).collect()))
}

/// The simplest rational strictly between `lo` and `hi` in the Stern–Brocot
/// sense. `None` stands for an infinite end.
pub fn simplest_between(lo: Option<&Rational>, hi: Option<&Rational>) -> Rational {
    if let (Some(l), Some(h)) = (lo, hi) {
        assert!(l < h, "empty interval");
    }
    let below_zero = lo.map_or(true, |l| l.is_negative());
    let above_zero = hi.map_or(true, |h| h.is_positive());
    if below_zero && above_zero {
        return Rational::zero();
    }
    if !above_zero {
        let nl = hi.map(|h| -h);
        let nh = lo.map(|l| -l);
        return -simplest_between(nl.as_ref(), nh.as_ref());
    }
    // Here 0 <= lo.
    let l = lo.expect("finite lower end");
    let n = l.floor();
    let next = &n + Rational::one();
    if hi.map_or(true, |h| &next < h) {
        return next;
    }
    let h = hi.expect("finite upper end");
    // n <= lo < hi <= n + 1, so write x = n + 1/y.
    let y_lo = (h - &n).recip();
    let y_hi = (l - &n).is_positive().then(|| (l - &n).recip());
    let y = simplest_between(Some(&y_lo), y_hi.as_ref());
    n + y.recip()
}
