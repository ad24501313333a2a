//! Seifert matrices and their signature functions.

mod angle;
mod profile;
mod tangent;

pub use angle::Angle;
pub use profile::{signature_profile, SignatureFunction, SignatureProfile};

use std::fmt;

use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{cyclotomic_polynomial, int, root_of_unity_tangent, CirclePoint, GaussianRational, LaurentPolynomial, Poly, Rational};
use crate::error::{Error, Result};
use crate::herm::{signature_cyclotomic, signature_exact, CyclotomicMatrix, DEFAULT_PRECISION_CEILING};
use crate::matrix::{GaussianMatrix, RationalMatrix};

/// Parity of the middle dimension `q`: `ε = (-1)^{q+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    /// Odd `q`, `ε = +1`; the signature form is hermitian.
    Odd,
    /// Even `q`, `ε = -1`; the form is anti-hermitian.
    Even,
}

impl Parity {
    pub fn eps(self) -> i64 {
        match self {
            Parity::Odd => 1,
            Parity::Even => -1,
        }
    }

    pub fn from_q(q: u32) -> Self {
        if q % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Odd => "odd-q",
            Parity::Even => "even-q",
        })
    }
}

/// A square rational Seifert matrix together with its parity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertMatrix {
    a: RationalMatrix,
    parity: Parity,
}

impl SeifertMatrix {
    pub fn new(a: RationalMatrix, parity: Parity) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare(a.rows(), a.cols()));
        }
        Ok(Self { a, parity })
    }

    pub fn from_ints(rows: &[&[i64]], parity: Parity) -> Self {
        Self::new(RationalMatrix::from_ints(rows), parity).expect("square input")
    }

    pub fn zero(n: usize, parity: Parity) -> Self {
        Self { a: RationalMatrix::zeros(n, n), parity }
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.a
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn eps(&self) -> i64 {
        self.parity.eps()
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        self.a.get(i, j)
    }

    pub fn is_zero(&self) -> bool {
        (0..self.dim()).all(|i| (0..self.dim()).all(|j| self.a.get(i, j).is_zero()))
    }

    /// Block sum `A ⊕ B`; parities must agree.
    pub fn block_sum(&self, o: &Self) -> Result<Self> {
        if self.parity != o.parity {
            return Err(Error::Incompatible("parity mismatch".into()));
        }
        Ok(Self { a: self.a.block_sum(&o.a, Rational::zero()), parity: self.parity })
    }

    /// `A - εAᵀ`, the intersection form.
    pub fn intersection_form(&self) -> RationalMatrix {
        self.a.sub(&eps_transpose(self).a).expect("same shape")
    }

    pub fn has_nonsingular_form(&self) -> bool {
        self.intersection_form().rank() == self.dim()
    }

    /// `A + Aᵀ`.
    pub fn symmetrization(&self) -> RationalMatrix {
        self.a.add(&self.a.transpose()).expect("same shape")
    }

    /// `M(w) = (1 - w)A + ε(1 - w̄)Aᵀ` at a Gaussian point `w`.
    pub fn circle_form(&self, w: &GaussianRational) -> GaussianMatrix {
        let one = GaussianRational::real(int(1));
        let x = &one - w;
        let y = (&one - &w.conj()).scale(&int(self.eps()));
        GaussianMatrix::from_fn(self.dim(), self.dim(), |i, j| {
            &x.scale(self.a.get(i, j)) + &y.scale(self.a.get(j, i))
        })
    }

    /// `i^δ M(w)` with `δ = 0` for odd and `1` for even parity: a hermitian
    /// matrix whose signature is `σ(w)`.
    pub fn hermitian_form(&self, w: &GaussianRational) -> GaussianMatrix {
        let m = self.circle_form(w);
        match self.parity {
            Parity::Odd => m,
            Parity::Even => m.map(|z| z.mul_i()),
        }
    }
}

impl fmt::Display for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.a, self.parity)
    }
}

/// `εAᵀ`, same parity.
pub fn eps_transpose(a: &SeifertMatrix) -> SeifertMatrix {
    let t = a.a.transpose();
    let t = if a.eps() == 1 { t } else { t.map(|x| -x) };
    SeifertMatrix { a: t, parity: a.parity }
}

/// A nonempty tuple of signs `α = (s₁, …, s_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignTuple {
    signs: Vec<i8>,
}

impl SignTuple {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.is_empty() {
            return Err(Error::EmptySignTuple);
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::HypothesisViolated("sign tuple entries must be ±1".into()));
        }
        Ok(Self { signs })
    }

    /// `(sgn r, …, sgn r)` of length `|r|`, `r ≠ 0`.
    pub fn uniform(r: i64) -> Result<Self> {
        if r == 0 {
            return Err(Error::EmptySignTuple);
        }
        Self::new(vec![r.signum() as i8; r.unsigned_abs() as usize])
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `n_α`, the sum of the signs.
    pub fn n(&self) -> i64 {
        self.signs.iter().map(|&s| i64::from(s)).sum()
    }

    /// `-α`.
    pub fn negated(&self) -> Self {
        Self { signs: self.signs.iter().map(|s| -s).collect() }
    }
}

/// The parallel-copy matrix `i_α A`: blocks `A` above the diagonal, `εAᵀ`
/// below, and `A` or `εAᵀ` on the diagonal according to the signs.
pub fn reparam_matrix(a: &SeifertMatrix, alpha: &SignTuple) -> SeifertMatrix {
    let n = a.dim();
    let r = alpha.len();
    let at = eps_transpose(a);
    let m = RationalMatrix::from_fn(n * r, n * r, |i, j| {
        let (bi, bj) = (i / n, j / n);
        let (x, y) = (i % n, j % n);
        let use_a = match bi.cmp(&bj) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => alpha.signs[bi] == 1,
        };
        if use_a {
            a.a.get(x, y).clone()
        } else {
            at.a.get(x, y).clone()
        }
    });
    SeifertMatrix { a: m, parity: a.parity }
}

/// The step function `η_a` of period `2π`.
pub fn eta(a: i64, phi: &Angle) -> Result<i64> {
    if a == 0 {
        return Ok(0);
    }
    if a < 0 {
        return eta(-a, &phi.neg());
    }
    if let Angle::RationalPi(r) = phi {
        // φ / 2π reduced to [0, 1), in units of 2π/a.
        let (p, m) = reduced_turn(r);
        let x = Rational::new(p.into(), (m as i64).into()) * int(a);
        if x.is_zero() {
            return Ok(0);
        }
        let k = x.floor().to_integer();
        let k: i64 = i64::try_from(k).expect("small index");
        return Ok(if x.is_integer() { a - 2 * k } else { a + 1 - 2 * (k + 1) });
    }
    let p = phi.circle_point()?;
    if p.is_zero_angle() {
        return Ok(0);
    }
    for k in 1..a {
        match p.cmp(&root_of_unity_tangent(k, a as u64)) {
            std::cmp::Ordering::Less => return Ok(a + 1 - 2 * k),
            std::cmp::Ordering::Equal => return Ok(a - 2 * k),
            std::cmp::Ordering::Greater => {}
        }
    }
    Ok(1 - a)
}

/// `det(tA - εAᵀ)`, defined up to units of `ℚ[t, t⁻¹]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderPolynomial {
    laurent: LaurentPolynomial,
}

impl AlexanderPolynomial {
    pub fn from_laurent(laurent: LaurentPolynomial) -> Self {
        Self { laurent }
    }

    pub fn laurent(&self) -> &LaurentPolynomial {
        &self.laurent
    }

    pub fn is_zero(&self) -> bool {
        self.laurent.is_zero()
    }

    /// Representative with lowest exponent 0 and leading coefficient 1.
    pub fn normalized(&self) -> Self {
        Self { laurent: self.laurent.normalize_unit() }
    }

    /// Equality up to a unit `q·t^k`, `q ∈ ℚ^×`.
    pub fn equivalent(&self, o: &Self) -> bool {
        self.normalized() == o.normalized()
    }

    /// `Δ(t^n)`.
    pub fn substitute_power(&self, n: i64) -> Self {
        Self { laurent: self.laurent.substitute_power(n) }
    }

    /// `Δ(t) = ±t^k Δ(t⁻¹)` for some `k`.
    pub fn is_symmetric_up_to_unit(&self) -> bool {
        let bar = Self { laurent: crate::arith::laurent_bar(&self.laurent) };
        let n = self.normalized();
        let b = bar.normalized();
        n == b || n.laurent == -b.laurent
    }
}

impl fmt::Display for AlexanderPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.laurent)
    }
}

/// The Alexander polynomial `det(tA - εAᵀ)` by interpolation at `n + 1` points.
pub fn alexander(a: &SeifertMatrix) -> AlexanderPolynomial {
    let n = a.dim();
    let at = eps_transpose(a);
    let xs: Vec<Rational> = (0..=n as i64).map(int).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|t| a.a.scale(t).sub(&at.a).expect("same shape").det().expect("square"))
        .collect();
    let p = Poly::interpolate(&xs, &ys);
    AlexanderPolynomial { laurent: LaurentPolynomial::from_rationals(0, p.coeffs()) }
}

/// `σ_A(θ)` at an exactly representable angle.
pub fn sigma_at(a: &SeifertMatrix, theta: &Angle) -> Result<i64> {
    tangent::sigma_at(a, theta)
}

/// `δ_A(θ)`, forced to 0 at multiples of `2π`.
pub fn delta_at(a: &SeifertMatrix, theta: &Angle) -> Result<i64> {
    SignatureFunction::new(a).delta_at(theta)
}

/// `σ_A(2πk/d)` through the cyclotomic field, `0 <= k < d`.
pub fn branched_signature(a: &SeifertMatrix, k: i64, d: u64) -> Result<i64> {
    branched_signature_with_ceiling(a, k, d, DEFAULT_PRECISION_CEILING)
}

/// As [`branched_signature`] with an explicit precision ceiling in bits.
pub fn branched_signature_with_ceiling(a: &SeifertMatrix, k: i64, d: u64, ceiling: u32) -> Result<i64> {
    if d == 0 {
        return Err(Error::ZeroOrder);
    }
    if k < 0 || k as u64 >= d {
        return Err(Error::IndexOutOfRange { k, d: d as i64 });
    }
    if k == 0 {
        return Ok(0);
    }
    let g = (k as u64).gcd(&d);
    let (k, d) = (k as u64 / g, d / g);
    if d == 2 {
        return Ok(signature_exact(&a.hermitian_form(&GaussianRational::real(int(-1))))?.0);
    }
    let n = a.dim();
    let phi = cyclotomic_polynomial(d);
    let one_minus = Poly::from_ints(&[1, -1]);
    // 1 - ζ⁻¹ = 1 - ζ^{d-1}
    let one_minus_inv = &Poly::one() - &Poly::monomial(int(1), (d - 1) as usize);
    let eps = int(a.eps());
    let entries: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let x = one_minus.scale(a.entry(i, j));
                    let y = one_minus_inv.scale(&(a.entry(j, i) * &eps));
                    (&x + &y).rem(&phi)
                })
                .collect()
        })
        .collect();
    match a.parity {
        Parity::Odd => {
            let m = CyclotomicMatrix::new(d, k, entries)?.with_precision_ceiling(ceiling);
            Ok(signature_cyclotomic(&m)?.0)
        }
        Parity::Even => {
            // (ζ - ζ⁻¹)P = 2 sin(2πk/d)·iP.
            let s = &Poly::x() - &Poly::monomial(int(1), (d - 1) as usize);
            let h: Vec<Vec<Poly>> = entries.iter().map(|r| r.iter().map(|p| (p * &s).rem(&phi)).collect()).collect();
            let m = CyclotomicMatrix::new(d, k, h)?.with_precision_ceiling(ceiling);
            let sig = signature_cyclotomic(&m)?.0;
            Ok(if 2 * k < d { sig } else { -sig })
        }
    }
}

/// `rπ = 2πa/m` with `0 <= a < m` and `gcd(a, m) = 1`.
pub(crate) fn reduced_turn(r: &Rational) -> (i64, u64) {
    let t = r / int(2);
    let frac = &t - t.floor();
    let a: i64 = i64::try_from(frac.numer().clone()).expect("angle numerator fits in i64");
    let m: u64 = u64::try_from(frac.denom().clone()).expect("angle denominator fits in u64");
    (a, m)
}

/// Circle point of `rπ` together with its reduced `(a, m)`.
pub(crate) fn rational_turn(r: &Rational) -> (i64, u64, CirclePoint) {
    let (a, m) = reduced_turn(r);
    (a, m, root_of_unity_tangent(a, m))
}
