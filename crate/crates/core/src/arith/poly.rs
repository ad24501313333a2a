use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{fmt_rational, lcm_denominators, Rational};

/// Dense univariate polynomial over ℚ; `coeffs[i]` multiplies `u^i`.
///
/// Trailing zero coefficients are never stored, so the zero polynomial has
/// an empty coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `u`.
    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// `den·u − num`, vanishing exactly at `q`.
    pub fn linear_root(q: &Rational) -> Self {
        Self::new(vec![-Rational::from_integer(q.numer().clone()), Rational::from_integer(q.denom().clone())])
    }

    pub fn monomial(c: Rational, deg: usize) -> Self {
        let mut v = vec![Rational::zero(); deg + 1];
        v[deg] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        if self.coeffs.is_empty() {
            return Rational::zero();
        }
        let (num, den) = self.eval_homogeneous(x);
        Rational::new(num, den)
    }

    pub fn sign_at(&self, x: &Rational) -> i32 {
        if self.coeffs.is_empty() {
            return 0;
        }
        match self.eval_homogeneous(x).0.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// `p(n/d) = num / den` with `den > 0`, computed over the integers.
    fn eval_homogeneous(&self, x: &Rational) -> (BigInt, BigInt) {
        let l = lcm_denominators(self.coeffs.iter());
        let (n, d) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            let ci = if l.is_one() { c.numer().clone() } else { (c * Rational::from_integer(l.clone())).to_integer() };
            acc = acc * n + ci * &dpow;
            dpow *= d;
        }
        // acc = L · d^deg · p(x)
        let deg = self.coeffs.len() - 1;
        (acc, l * num_traits::pow(d.clone(), deg))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Quotient and remainder of Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.lc().unwrap().clone();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> Poly {
        match self.lc() {
            Some(lc) => self.scale(&lc.recip()),
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.primitive(), b.primitive());
        while !b.is_zero() {
            let r = a.rem(&b).primitive();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s)` with `g = gcd(a, m)` monic and `s·a ≡ g (mod m)`.
    pub fn ext_gcd(a: &Poly, m: &Poly) -> (Poly, Poly) {
        let (mut r0, mut r1) = (m.clone(), a.rem(m));
        let (mut s0, mut s1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        let lc = r0.lc().cloned().unwrap_or_else(Rational::one).recip();
        (r0.scale(&lc), s0.scale(&lc))
    }

    /// Positive rational multiple with coprime integer coefficients.
    /// The sign of the leading coefficient is preserved.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let l = lcm_denominators(self.coeffs.iter());
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        Poly::new(ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect())
    }

    /// Primitive integer normalization with positive leading coefficient.
    pub fn normalized(&self) -> Poly {
        let p = self.primitive();
        if p.lc().is_some_and(|c| c.is_negative()) {
            -p
        } else {
            p
        }
    }

    /// Squarefree part `p / gcd(p, p')`, normalized.
    pub fn squarefree(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return self.normalized();
        }
        let g = Poly::gcd(self, &self.derivative());
        self.div_rem(&g).0.normalized()
    }

    /// Integer coefficients, if they are all integral.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    /// Cauchy bound: every real root lies strictly inside `(-B, B)`.
    pub fn root_bound(&self) -> Rational {
        let lc = self.lc().expect("root bound of zero polynomial").abs();
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs() / &lc)
            .fold(Rational::zero(), |a, b| if b > a { b } else { a });
        m + Rational::one() + Rational::one()
    }

    /// Sturm chain `p, p', -rem(...), ...`, each term rescaled by a
    /// positive constant.
    pub fn sturm_chain(&self) -> Vec<Poly> {
        let mut chain = vec![self.primitive()];
        let d = self.derivative().primitive();
        if d.is_zero() {
            return chain;
        }
        chain.push(d);
        loop {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push((-r).primitive());
        }
        chain
    }

    /// The interpolating polynomial of degree `< xs.len()` (Newton form).
    /// Nodes must be distinct.
    pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Poly {
        let n = xs.len();
        let mut dd = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
            }
        }
        let mut acc = Poly::zero();
        for i in (0..n).rev() {
            acc = &(&acc * &Poly::linear_root(&xs[i])) + &Poly::constant(dd[i].clone());
        }
        acc
    }

    /// Composition `self(q(u))`.
    pub fn compose(&self, q: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Poly::constant(c.clone());
        }
        acc
    }
}

/// Number of sign changes in the chain evaluated at `x` (zeros skipped).
pub(crate) fn sign_variations(chain: &[Poly], x: &Rational) -> usize {
    let mut last = 0;
    let mut v = 0;
    for p in chain {
        let s = p.sign_at(x);
        if s != 0 {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
    }
    v
}

/// Distinct roots of a squarefree polynomial in the open interval `(a, b)`;
/// `a` and `b` must not be roots.
pub(crate) fn count_roots(chain: &[Poly], a: &Rational, b: &Rational) -> usize {
    sign_variations(chain, a) - sign_variations(chain, b)
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let coef = if a.is_one() && i > 0 { String::new() } else { fmt_rational(&a) };
            match i {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}u")?,
                _ => write!(f, "{coef}u^{i}")?,
            }
        }
        Ok(())
    }
}
