use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{GaussianRational, Rational};

/// Laurent polynomial in `t` with Gaussian-rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, GaussianRational>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(GaussianRational::one(), 0)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(GaussianRational::one(), 1)
    }

    pub fn monomial(c: GaussianRational, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c);
        p
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_terms(it: impl IntoIterator<Item = (i64, GaussianRational)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    /// Real coefficients `coeffs[k]` at exponent `offset + k`.
    pub fn from_rationals(offset: i64, coeffs: &[Rational]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(k, c)| (offset + k as i64, GaussianRational::real(c.clone()))))
    }

    pub fn add_term(&mut self, exp: i64, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exp).or_default();
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> GaussianRational {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussianRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Largest `|exponent|`, zero for constants and the zero polynomial.
    pub fn half_width(&self) -> u64 {
        self.terms.keys().map(|e| e.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn has_real_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    pub fn scale(&self, k: &GaussianRational) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, c * k)))
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// Substitutes `t ↦ t^n`.
    pub fn substitute_power(&self, n: i64) -> Self {
        if n == 0 {
            let s = self.terms.values().fold(GaussianRational::zero(), |a, c| &a + c);
            return Self::constant(s);
        }
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * n, c.clone())))
    }

    /// Evaluation at a nonzero Gaussian rational.
    pub fn eval(&self, t: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (e, c) in &self.terms {
            let p = t.pow(*e).expect("evaluation of negative power at zero");
            acc = &acc + &(c * &p);
        }
        acc
    }

    pub fn is_bar_symmetric(&self) -> bool {
        laurent_bar(self) == *self
    }

    /// Unit normalization over ℚ[t, t⁻¹]: lowest exponent moved to 0 and the
    /// top coefficient scaled to 1. Requires real coefficients.
    pub fn normalize_unit(&self) -> Self {
        let (Some(lo), Some(hi)) = (self.min_exp(), self.max_exp()) else {
            return Self::zero();
        };
        let lead = self.coeff(hi).inv().expect("nonzero leading coefficient");
        self.shift(-lo).scale(&lead)
    }
}

/// The involution `(Σ αᵢ tⁱ)⁻ = Σ ᾱᵢ t⁻ⁱ`.
pub fn laurent_bar(p: &LaurentPolynomial) -> LaurentPolynomial {
    LaurentPolynomial { terms: p.terms.iter().map(|(e, c)| (-e, c.conj())).collect() }
}

impl<'a> Add<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, o: &LaurentPolynomial) -> LaurentPolynomial {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }
}

impl<'a> Sub<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, o: &LaurentPolynomial) -> LaurentPolynomial {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, -c);
        }
        r
    }
}

impl<'a> Mul<&'a LaurentPolynomial> for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, o: &LaurentPolynomial) -> LaurentPolynomial {
        let mut r = LaurentPolynomial::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(e1 + e2, c1 * c2);
            }
        }
        r
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let c = if c.is_real() { format!("{c}") } else { format!("({c})") };
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}t")?,
                _ => write!(f, "{c}t^{e}")?,
            }
        }
        Ok(())
    }
}
