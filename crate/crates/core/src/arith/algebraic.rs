use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::poly::{count_roots, Poly};
use super::{fmt_rational, to_f64, Rational};
use crate::error::{Error, Result};

/// A real algebraic number: the unique root of a squarefree integer
/// polynomial inside a closed rational interval whose endpoints are not
/// roots.
#[derive(Clone, Debug)]
pub struct RealAlgebraic {
    poly: Arc<Poly>,
    chain: Arc<Vec<Poly>>,
    lo: Rational,
    hi: Rational,
}

impl RealAlgebraic {
    /// Exact rational value `q`.
    pub fn from_rational(q: &Rational) -> Self {
        let p = Poly::linear_root(q).normalized();
        let chain = p.sturm_chain();
        Self {
            poly: Arc::new(p),
            chain: Arc::new(chain),
            lo: q - Rational::one(),
            hi: q + Rational::one(),
        }
    }

    /// Validating constructor. `None` unless `poly` is squarefree with exactly
    /// one root in `[lo, hi]` and non-root endpoints.
    pub fn new(poly: &Poly, lo: Rational, hi: Rational) -> Option<Self> {
        if poly.degree().unwrap_or(0) == 0 || lo > hi {
            return None;
        }
        let p = poly.normalized();
        if p.squarefree() != p {
            return None;
        }
        if p.eval(&lo).is_zero() || p.eval(&hi).is_zero() {
            return None;
        }
        let chain = p.sturm_chain();
        (count_roots(&chain, &lo, &hi) == 1).then(|| Self::from_parts(Arc::new(p), Arc::new(chain), lo, hi))
    }

    pub(crate) fn from_parts(poly: Arc<Poly>, chain: Arc<Vec<Poly>>, lo: Rational, hi: Rational) -> Self {
        Self { poly, chain, lo, hi }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn interval(&self) -> (&Rational, &Rational) {
        (&self.lo, &self.hi)
    }

    /// The exact value when the defining polynomial is linear.
    pub fn as_rational(&self) -> Option<Rational> {
        (self.poly.degree() == Some(1)).then(|| -self.poly.coeff(0) / self.poly.coeff(1))
    }

    /// Halves the isolating interval.
    pub fn refine(&mut self) {
        if let Some(q) = self.as_rational() {
            let w = (&self.hi - &self.lo) / Rational::from_integer(4.into());
            self.lo = &q - &w;
            self.hi = &q + &w;
            return;
        }
        let mid = (&self.lo + &self.hi) / Rational::from_integer(2.into());
        let s = self.poly.sign_at(&mid);
        if s == 0 {
            *self = Self::from_rational(&mid);
            return;
        }
        if s == self.poly.sign_at(&self.lo) {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    pub fn refine_to_width(&mut self, width: &Rational) {
        while &(&self.hi - &self.lo) > width {
            self.refine();
        }
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        let mut me = self.clone();
        loop {
            if q < &me.lo {
                return Ordering::Greater;
            }
            if q > &me.hi {
                return Ordering::Less;
            }
            if me.poly.eval(q).is_zero() {
                return Ordering::Equal;
            }
            me.refine();
        }
    }

    /// Exact sign of `q` evaluated at this number.
    pub fn sign_of_poly(&self, q: &Poly) -> i32 {
        if q.is_zero() {
            return 0;
        }
        if q.degree() == Some(0) {
            return super::sign_of(&q.coeff(0));
        }
        let g = Poly::gcd(&self.poly, q);
        if g.degree().unwrap_or(0) > 0 && count_roots(&g.sturm_chain(), &self.lo, &self.hi) > 0 {
            return 0;
        }
        let qs = q.squarefree();
        let qchain = qs.sturm_chain();
        let mut me = self.clone();
        loop {
            if let Some(r) = me.as_rational() {
                return q.sign_at(&r);
            }
            let (a, b) = (&me.lo, &me.hi);
            if !qs.eval(a).is_zero() && !qs.eval(b).is_zero() && count_roots(&qchain, a, b) == 0 {
                return q.sign_at(a);
            }
            me.refine();
        }
    }

    /// Approximate value; for rendering and float oracles only.
    pub fn to_f64(&self) -> f64 {
        let mut me = self.clone();
        let w = Rational::new(1.into(), num_bigint::BigInt::one() << 60);
        me.refine_to_width(&w);
        to_f64(&((&me.lo + &me.hi) / Rational::from_integer(2.into())))
    }

    /// The number `-x`.
    pub fn neg(&self) -> Self {
        if let Some(q) = self.as_rational() {
            return Self::from_rational(&-q);
        }
        let p = self.poly.compose(&Poly::from_ints(&[0, -1])).normalized();
        let chain = p.sturm_chain();
        Self::from_parts(Arc::new(p), Arc::new(chain), -self.hi.clone(), -self.lo.clone())
    }

    pub(crate) fn shares_poly(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.poly, &other.poly) || self.poly == other.poly
    }
}

impl fmt::Display for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(q) => write!(f, "{}", fmt_rational(&q)),
            None => write!(f, "root of {} in [{}, {}]", self.poly, fmt_rational(&self.lo), fmt_rational(&self.hi)),
        }
    }
}

/// Exact trichotomy of two real algebraic numbers.
///
/// Equality is decided by a common factor of the defining polynomials having
/// a root in the overlap of the isolating intervals; otherwise the intervals
/// are refined until they separate.
pub fn alg_compare(a: &RealAlgebraic, b: &RealAlgebraic) -> Ordering {
    if a.hi < b.lo {
        return Ordering::Less;
    }
    if b.hi < a.lo {
        return Ordering::Greater;
    }
    match (a.as_rational(), b.as_rational()) {
        (Some(x), Some(y)) => return x.cmp(&y),
        (Some(x), None) => return b.cmp_rational(&x).reverse(),
        (None, Some(y)) => return a.cmp_rational(&y),
        _ => {}
    }
    let lo = if a.lo > b.lo { &a.lo } else { &b.lo };
    let hi = if a.hi < b.hi { &a.hi } else { &b.hi };
    // A root of the common factor inside the overlap is the unique root of
    // both intervals.
    let equal = lo < hi
        && if a.shares_poly(b) {
            count_roots(&a.chain, lo, hi) > 0
        } else {
            let g = Poly::gcd(&a.poly, &b.poly);
            g.degree().unwrap_or(0) > 0 && count_roots(&g.sturm_chain(), lo, hi) > 0
        };
    if equal {
        return Ordering::Equal;
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    loop {
        a.refine();
        b.refine();
        if a.hi < b.lo {
            return Ordering::Less;
        }
        if b.hi < a.lo {
            return Ordering::Greater;
        }
        if let (Some(x), Some(y)) = (a.as_rational(), b.as_rational()) {
            return x.cmp(&y);
        }
    }
}

/// Isolates the distinct real roots of the squarefree part of `p` lying in the
/// closed range `[lo, hi]`, in increasing order.
pub fn sturm_isolate(p: &Poly, lo: &Rational, hi: &Rational) -> Result<Vec<RealAlgebraic>> {
    if p.is_zero() {
        return Err(Error::IndeterminateRootSet);
    }
    let roots = isolate_all(p);
    Ok(roots
        .into_iter()
        .filter(|r| r.cmp_rational(lo) != Ordering::Less && r.cmp_rational(hi) != Ordering::Greater)
        .collect())
}

/// Isolates every real root of the squarefree part of `p`, increasing.
pub fn isolate_all(p: &Poly) -> Vec<RealAlgebraic> {
    let sq = p.squarefree();
    if sq.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let chain = Arc::new(sq.sturm_chain());
    let sq = Arc::new(sq);
    let b = sq.root_bound();
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((a, b)) = stack.pop() {
        let n = count_roots(&chain, &a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(RealAlgebraic::from_parts(sq.clone(), chain.clone(), a, b));
            continue;
        }
        let m = split_point(&sq, &a, &b);
        // Right half first so the left half is processed next.
        stack.push((m.clone(), b));
        stack.push((a, m));
    }
    out
}

fn split_point(p: &Poly, a: &Rational, b: &Rational) -> Rational {
    let mut k = 2i64;
    loop {
        for j in 1..k {
            let t = Rational::new(j.into(), k.into());
            let m = a + (b - a) * &t;
            if !p.eval(&m).is_zero() {
                return m;
            }
        }
        k += 1;
    }
}
