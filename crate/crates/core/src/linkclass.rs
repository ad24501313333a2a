//! Link-level signature jump functions of a fixed type.
//!
//! A [`LinkClass`] stores its generalized Seifert matrix lazily, as a
//! block sum of weighted parallel-copy matrices `±i_k A`. Jump functions
//! are read through cached pullback profiles of the bases, so parallel
//! copies and complexity rescalings never build large matrices unless
//! asked to with [`LinkClass::matrix`].

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{int, lcm_denominators, CirclePoint, Rational};
use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::seifert::{reparam_matrix, Angle, Parity, SeifertMatrix, SignTuple, SignatureFunction};
use crate::surgery::TypeVector;

/// Columns are the meridians of a link in a basis of `H₁(E_L)/torsion`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeridianMatrix {
    b: RationalMatrix,
    inv: RationalMatrix,
}

impl MeridianMatrix {
    pub fn new(b: RationalMatrix) -> Result<Self> {
        if !b.is_square() {
            return Err(Error::NotSquare(b.rows(), b.cols()));
        }
        let inv = b.inverse()?.ok_or(Error::SingularMeridianMatrix)?;
        Ok(Self { b, inv })
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.b
    }
}

/// `c^τ(L)`: the lcm of the denominators of `τᵀB⁻¹`.
pub fn complexity_of_type(b: &MeridianMatrix, tau: &TypeVector) -> Result<BigInt> {
    let m = tau.len();
    if b.b.rows() != m {
        return Err(Error::DimensionMismatch(format!("{m} type entries for {} meridians", b.b.rows())));
    }
    let row: Vec<Rational> =
        (0..m).map(|j| (0..m).map(|i| int(tau.entries()[i]) * b.inv.get(i, j)).sum()).collect();
    Ok(lcm_denominators(&row))
}

/// One block `weight · i_copies A` of a lazily stored Seifert matrix;
/// negative weights stand for `|weight|` copies of `-i_copies A`.
#[derive(Clone, Debug)]
pub struct Summand {
    func: Arc<SignatureFunction>,
    copies: i64,
    weight: i64,
}

impl Summand {
    pub fn base(&self) -> &SeifertMatrix {
        self.func.matrix()
    }

    pub fn copies(&self) -> i64 {
        self.copies
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn signature_function(&self) -> &SignatureFunction {
        &self.func
    }
}

/// A link of type `τ` in a rational homology sphere, recorded by a
/// generalized Seifert matrix of complexity `c`.
#[derive(Clone, Debug)]
pub struct LinkClass {
    tau: TypeVector,
    c: i64,
    q: u32,
    summands: Vec<Summand>,
}

/// The jump function of a link in the variable `φ = θ/c`, on one period.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkJumps {
    c: i64,
    points: Vec<(CirclePoint, i64)>,
}

impl LinkJumps {
    /// Nonzero jumps `(φ, δ_L(cφ))` with `φ` in circle order.
    pub fn points(&self) -> &[(CirclePoint, i64)] {
        &self.points
    }

    pub fn is_zero(&self) -> bool {
        self.points.is_empty()
    }

    /// The angles `θ = c(φ + 2πm)`, `0 <= m < |c|`, where `δ_L` is nonzero.
    pub fn breakpoints(&self) -> Vec<(Angle, i64)> {
        let mut out = Vec::new();
        for m in 0..self.c.abs() {
            for (p, v) in &self.points {
                let a = Angle::from_circle_point(p).add_two_pi(m).expect("scale one");
                out.push((a.scaled(&int(self.c)), *v));
            }
        }
        out
    }
}

fn check_q(q: u32, a: &SeifertMatrix) -> Result<()> {
    if q == 0 {
        return Err(Error::HypothesisViolated("middle dimension q must be positive".into()));
    }
    if Parity::from_q(q) != a.parity() {
        return Err(Error::Incompatible(format!("q = {q} with a {} matrix", a.parity())));
    }
    Ok(())
}

impl LinkClass {
    /// A link of type `tau` with Seifert matrix `a` of complexity `c`, for
    /// `(2q-1)`-links.
    pub fn new(tau: TypeVector, c: i64, a: SeifertMatrix, q: u32) -> Result<Self> {
        if c == 0 {
            return Err(Error::ZeroComplexity);
        }
        check_q(q, &a)?;
        let func = Arc::new(SignatureFunction::new(&a));
        Ok(Self { tau, c, q, summands: vec![Summand { func, copies: 1, weight: 1 }] })
    }

    /// A knot (type `(1)`) with Seifert matrix `a` of complexity `c`.
    pub fn knot(a: SeifertMatrix, c: i64, q: u32) -> Result<Self> {
        Self::new(TypeVector::ones(1), c, a, q)
    }

    /// The knot `J` obtained from a knot with Seifert matrix `a` by the
    /// surgery construction: complexity `n`, Seifert matrix `i_k A`, so
    /// `δ_J(θ) = sgn n · δ_{i_k A}(θ/n)`.
    pub fn period_knot(a: &SeifertMatrix, k: i64, n: i64, q: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::HypothesisViolated("parallel copy count must be nonzero".into()));
        }
        let mut l = Self::knot(a.clone(), n, q)?;
        l.summands[0].copies = k;
        Ok(l)
    }

    pub fn tau(&self) -> &TypeVector {
        &self.tau
    }

    pub fn complexity(&self) -> i64 {
        self.c
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn parity(&self) -> Parity {
        Parity::from_q(self.q)
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn is_knot(&self) -> bool {
        self.tau.len() == 1
    }

    /// The generalized Seifert matrix, built explicitly.
    pub fn matrix(&self) -> SeifertMatrix {
        let mut out = SeifertMatrix::zero(0, self.parity());
        for s in &self.summands {
            let block = reparam_matrix(s.base(), &SignTuple::uniform(s.copies).expect("nonzero copies"));
            let block = if s.weight < 0 {
                SeifertMatrix::new(block.matrix().map(|x| -x), block.parity()).expect("square")
            } else {
                block
            };
            for _ in 0..s.weight.abs() {
                out = out.block_sum(&block).expect("same parity");
            }
        }
        out
    }

    /// Same link with complexity `rc` and Seifert matrix `i_r A`; `r > 0`.
    /// `δ` is unchanged when every block has nonsingular `A - εAᵀ`; otherwise
    /// `i_r A` can gain jumps at `θ ∈ 2πcℤ` (see
    /// [`SignatureFunction::copies_delta_at`]).
    pub fn rescaled(&self, r: i64) -> Result<Self> {
        if r <= 0 {
            return Err(Error::HypothesisViolated("rescaling factor must be positive".into()));
        }
        let mut l = self.clone();
        l.c *= r;
        for s in &mut l.summands {
            s.copies *= r;
        }
        Ok(l)
    }

    /// Same jump function with positive complexity.
    pub fn normalized(&self) -> Self {
        let mut l = self.clone();
        if l.c < 0 {
            l.c = -l.c;
            for s in &mut l.summands {
                s.copies = -s.copies;
            }
        }
        l
    }

    /// The inverse in the matrix cobordism group: every block negated.
    pub fn negated(&self) -> Self {
        let mut l = self.clone();
        for s in &mut l.summands {
            s.weight = -s.weight;
        }
        l
    }

    /// `i_α L`, lazily: each block `i_k A` becomes `i_{k n_α} A`.
    pub fn parallel(&self, alpha: &SignTuple) -> Result<Self> {
        let n = alpha.n();
        if n == 0 {
            return Err(Error::HypothesisViolated("lazy parallel copies need n_α ≠ 0".into()));
        }
        let mut l = self.clone();
        for s in &mut l.summands {
            s.copies *= n;
        }
        Ok(l)
    }

    /// `δ_L(θ) = sgn c · δ_A(θ/c)`.
    pub fn delta(&self, theta: &Angle) -> Result<i64> {
        let mut total = 0;
        for s in &self.summands {
            let t = theta.divided(self.c);
            total += s.weight * s.func.copies_delta_at(s.copies, &t)?;
        }
        Ok(self.c.signum() * total)
    }

    /// Nonzero jumps on one period, in the variable `θ/c`.
    pub fn jump_function(&self) -> LinkJumps {
        let mut pts: Vec<(CirclePoint, i64)> = Vec::new();
        for s in &self.summands {
            for (p, v) in s.func.copies_jump_function(s.copies) {
                pts.push((p, self.c.signum() * s.weight * v));
            }
        }
        pts.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(CirclePoint, i64)> = Vec::new();
        for (p, v) in pts {
            match merged.last_mut() {
                Some((q, w)) if *q == p => *w += v,
                _ => merged.push((p, v)),
            }
        }
        merged.retain(|(_, v)| *v != 0);
        LinkJumps { c: self.c, points: merged }
    }

    /// `2π|c|` as a multiple of `π`: a period of `δ_L`.
    pub fn period(&self) -> Rational {
        int(2 * self.c.abs())
    }

    /// Block-sum connected sum at the least common complexity.
    pub fn connected_sum(&self, o: &Self) -> Result<Self> {
        if self.tau != o.tau {
            return Err(Error::Incompatible("different types".into()));
        }
        if self.q != o.q {
            return Err(Error::Incompatible(format!("q = {} and q = {}", self.q, o.q)));
        }
        let (a, b) = (self.normalized(), o.normalized());
        let c = a.c.lcm(&b.c);
        let mut l = a.rescaled(c / a.c)?;
        l.summands.extend(b.rescaled(c / b.c)?.summands);
        Ok(l)
    }

    /// `Σ aᵢ Lᵢ` as a connected sum; at least one link.
    pub fn combination(links: &[Self], coeffs: &[i64]) -> Result<Self> {
        if links.is_empty() || links.len() != coeffs.len() {
            return Err(Error::DimensionMismatch(format!("{} links, {} coefficients", links.len(), coeffs.len())));
        }
        let mut acc: Option<Self> = None;
        for (l, &a) in links.iter().zip(coeffs) {
            let mut t = l.clone();
            t.summands.retain(|_| a != 0);
            for s in &mut t.summands {
                s.weight *= a;
            }
            acc = Some(match acc {
                None => t,
                Some(x) => x.connected_sum(&t)?,
            });
        }
        Ok(acc.expect("nonempty"))
    }
}

impl fmt::Display for LinkClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "type {:?}, complexity {}, q = {}", self.tau.entries(), self.c, self.q)?;
        for s in &self.summands {
            write!(f, "; {}·i_{} {}", s.weight, s.copies, s.base())?;
        }
        Ok(())
    }
}

/// `δ^τ_L(θ)`.
pub fn link_delta(l: &LinkClass, theta: &Angle) -> Result<i64> {
    l.delta(theta)
}

/// `δ_{i_α L}(θ)` from the explicit matrix `i_α A`, checked against the
/// lazy [`LinkClass::parallel`]. Away from `θ/c ∈ (2π/n_α)ℤ` that is
/// `sgn n_α · δ_L(n_α θ)`.
pub fn parallel_delta(l: &LinkClass, alpha: &SignTuple, theta: &Angle) -> Result<i64> {
    let a = l.matrix();
    let n = alpha.n();
    if n == 0 && !a.has_nonsingular_form() {
        return Err(Error::HypothesisViolated("n_α = 0 with singular A - εAᵀ".into()));
    }
    let big = LinkClass::new(l.tau.clone(), l.c, reparam_matrix(&a, alpha), l.q)?;
    let left = big.delta(theta)?;
    let right = if n == 0 { 0 } else { l.parallel(alpha)?.delta(theta)? };
    if left != right {
        return Err(Error::IdentityViolated(format!("parallel copies at {theta}: {left} ≠ {right}")));
    }
    Ok(left)
}

/// Free entries of the connected-sum matrix for `q = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsumStars {
    /// Rows of `A₁ ⊕ A₂` against the `y` generators.
    pub top: RationalMatrix,
    /// The `y` generators against `A₁ ⊕ A₂`.
    pub left: RationalMatrix,
    /// The `y` generators against themselves.
    pub center: RationalMatrix,
}

impl CsumStars {
    pub fn zero(dim: usize, c: i64) -> Self {
        let k = (c - 1).max(0) as usize;
        Self { top: RationalMatrix::zeros(dim, k), left: RationalMatrix::zeros(k, dim), center: RationalMatrix::zeros(k, k) }
    }
}

/// The Seifert matrix of a connected sum of two `1`-knots whose surfaces
/// have complexity `c`, on generators of `A₁`, `A₂`, `y₁…y_{c-1}`,
/// `x₁…x_{c-1}`.
pub fn csum_matrix_q1(a1: &SeifertMatrix, a2: &SeifertMatrix, c: i64, stars: &CsumStars) -> Result<SeifertMatrix> {
    if c < 1 {
        return Err(Error::HypothesisViolated(format!("complexity {c} < 1")));
    }
    if a1.parity() != Parity::Odd || a2.parity() != Parity::Odd {
        return Err(Error::Incompatible("the q = 1 connected sum needs odd parity".into()));
    }
    let (d1, d2) = (a1.dim(), a2.dim());
    let d = d1 + d2;
    let k = (c - 1) as usize;
    let shape = |m: &RationalMatrix, r: usize, s: usize| m.rows() == r && m.cols() == s;
    if !shape(&stars.top, d, k) || !shape(&stars.left, k, d) || !shape(&stars.center, k, k) {
        return Err(Error::DimensionMismatch("star blocks do not match the generators".into()));
    }
    let n = d + 2 * k;
    let cq = int(c);
    let m = RationalMatrix::from_fn(n, n, |i, j| {
        let block = |x: usize| if x < d1 { 0 } else if x < d { 1 } else if x < d + k { 2 } else { 3 };
        match (block(i), block(j)) {
            (0, 0) => a1.entry(i, j).clone(),
            (1, 1) => a2.entry(i - d1, j - d1).clone(),
            (0 | 1, 2) => stars.top.get(i, j - d).clone(),
            (2, 0 | 1) => stars.left.get(i - d, j).clone(),
            (2, 2) => stars.center.get(i - d, j - d).clone(),
            (2, 3) => {
                // y_r against x_s.
                let (r, s) = ((i - d + 1) as i64, (j - d - k + 1) as i64);
                if s < r { int(c - r) / &cq } else { int(-r) / &cq }
            }
            (3, 2) => {
                // x_r against y_s.
                let (r, s) = ((i - d - k + 1) as i64, (j - d + 1) as i64);
                if s < r { int(-s) / &cq } else { int(c - s) / &cq }
            }
            _ => Rational::zero(),
        }
    });
    SeifertMatrix::new(m, Parity::Odd)
}

/// `δ` of a connected sum at `θ`. For `q = 1` the composite matrix is
/// assembled with [`csum_matrix_q1`] (zero stars); otherwise it is the
/// block sum.
pub fn csum_delta(l1: &LinkClass, l2: &LinkClass, theta: &Angle) -> Result<i64> {
    csum_delta_with_stars(l1, l2, theta, None)
}

pub fn csum_delta_with_stars(l1: &LinkClass, l2: &LinkClass, theta: &Angle, stars: Option<&CsumStars>) -> Result<i64> {
    let sum = l1.connected_sum(l2)?;
    if l1.q != 1 {
        return sum.delta(theta);
    }
    if !l1.is_knot() {
        return Err(Error::HypothesisViolated("the q = 1 connected sum is defined for knots".into()));
    }
    let c = sum.c;
    let a1 = l1.normalized().rescaled(c / l1.c.abs())?.matrix();
    let a2 = l2.normalized().rescaled(c / l2.c.abs())?.matrix();
    let zero = CsumStars::zero(a1.dim() + a2.dim(), c);
    let m = csum_matrix_q1(&a1, &a2, c, stars.unwrap_or(&zero))?;
    LinkClass::new(l1.tau.clone(), c, m, 1)?.delta(theta)
}

/// `δ_K(θ)` of the satellite with companion knot `k_prime`, pattern knot
/// `j` and winding number `r`, from the matrix `A ⊕ i_r B`, checked
/// against `δ_J(θ) + sgn r · δ_{K'}(rθ)`.
pub fn satellite_delta(j: &LinkClass, k_prime: &LinkClass, r: i64, theta: &Angle) -> Result<i64> {
    if !j.is_knot() || !k_prime.is_knot() {
        return Err(Error::HypothesisViolated("satellites are formed from knots".into()));
    }
    if j.parity() != k_prime.parity() {
        return Err(Error::Incompatible("parity mismatch".into()));
    }
    if j.c.abs() != 1 || k_prime.c.abs() != 1 {
        return Err(Error::HypothesisViolated("satellite formula needs knots of complexity 1".into()));
    }
    let a = j.normalized().matrix();
    let m = if r == 0 {
        a
    } else {
        let b = k_prime.normalized().matrix();
        a.block_sum(&reparam_matrix(&b, &SignTuple::uniform(r)?))?
    };
    let left = LinkClass::new(j.tau.clone(), 1, m, j.q)?.delta(theta)?;
    let right = j.delta(theta)? + if r == 0 { 0 } else { r.signum() * k_prime.delta(&theta.scaled(&int(r)))? };
    if left != right {
        return Err(Error::IdentityViolated(format!("satellite at {theta}: {left} ≠ {right}")));
    }
    Ok(left)
}

/// Whether `δ_K(2θ) = 2δ_K(θ)` everywhere, which holds exactly when the
/// jump function vanishes.
pub fn kawauchi_torsion_test(k: &LinkClass) -> Result<bool> {
    if !k.is_knot() {
        return Err(Error::HypothesisViolated("the torsion test is for knots".into()));
    }
    Ok(k.jump_function().is_zero())
}

/// The base matrices: `[[1,1],[0,1]]` for odd `q` and a `4×4` matrix for
/// even `q`; both have `δ` supported on `θ = nπ(k ± 1/6)`.
pub fn family_base(parity: Parity) -> SeifertMatrix {
    match parity {
        Parity::Odd => SeifertMatrix::from_ints(&[&[1, 1], &[0, 1]], Parity::Odd),
        Parity::Even => SeifertMatrix::from_ints(
            &[&[1, 1, 0, 0], &[0, 0, 1, 0], &[0, -1, 0, 1], &[0, 0, 0, 1]],
            Parity::Even,
        ),
    }
}

/// `n` in `θ = nπ(k ± 1/6)`: 2 for odd, 1 for even parity.
pub fn family_n(parity: Parity) -> i64 {
    match parity {
        Parity::Odd => 2,
        Parity::Even => 1,
    }
}

/// Options for [`independent_family_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FamilyOptions {
    /// Use the block sum of 8 copies of the even base matrix.
    pub eightfold: bool,
}

/// One prime's row of a family verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyRow {
    pub prime: u64,
    pub coefficient: i64,
    /// `7nπ/(6p)` as a multiple of `π`.
    pub theta: Rational,
    pub value: i64,
    pub shifted_value: i64,
    /// `None` when the coefficient is 0 and no claim is made.
    pub nonvanishing: Option<bool>,
    pub vanishing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyReport {
    pub parity: Parity,
    pub n: i64,
    pub coefficients: Vec<i64>,
    pub rows: Vec<FamilyRow>,
}

impl FamilyReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.nonvanishing != Some(false) && r.vanishing)
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn check_primes(primes: &[u64]) -> Result<()> {
    if primes.is_empty() {
        return Err(Error::InvalidPrimes("no primes given".into()));
    }
    for (i, &p) in primes.iter().enumerate() {
        if p <= 7 {
            return Err(Error::InvalidPrimes(format!("{p} must exceed 7")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidPrimes(format!("{p} is not prime")));
        }
        if primes[..i].contains(&p) {
            return Err(Error::InvalidPrimes(format!("{p} is repeated")));
        }
    }
    Ok(())
}

/// Knots `Kᵢ` with `δ_{Kᵢ}(θ) = δ_A(θ·pᵢ/7)`, and the verification of the
/// combination with all coefficients 1.
pub fn independent_family(parity: Parity, primes: &[u64]) -> Result<(Vec<LinkClass>, FamilyReport)> {
    independent_family_with(parity, primes, FamilyOptions::default())
}

pub fn independent_family_with(parity: Parity, primes: &[u64], opts: FamilyOptions) -> Result<(Vec<LinkClass>, FamilyReport)> {
    check_primes(primes)?;
    let mut base = family_base(parity);
    if opts.eightfold && parity == Parity::Even {
        let one = base.clone();
        for _ in 1..8 {
            base = base.block_sum(&one)?;
        }
    }
    let q = match parity {
        Parity::Odd => 1,
        Parity::Even => 2,
    };
    let knots: Vec<LinkClass> = primes
        .iter()
        .map(|&p| LinkClass::period_knot(&base, p as i64, 7, q))
        .collect::<Result<_>>()?;
    let report = verify_combination(&knots, primes, &vec![1; primes.len()])?;
    Ok((knots, report))
}

/// Checks `δ_K(7nπ/6pⱼ) ≠ 0` when `aⱼ ≠ 0` and `δ_K(7nπ/6pⱼ + 2π) = 0`
/// for `K = Σ aᵢKᵢ`.
pub fn verify_combination(knots: &[LinkClass], primes: &[u64], coeffs: &[i64]) -> Result<FamilyReport> {
    if knots.len() != primes.len() {
        return Err(Error::DimensionMismatch(format!("{} knots, {} primes", knots.len(), primes.len())));
    }
    if coeffs.iter().all(|&a| a == 0) {
        return Err(Error::HypothesisViolated("coefficients must not all vanish".into()));
    }
    let parity = knots.first().map_or(Parity::Odd, |k| k.parity());
    let n = family_n(parity);
    let k = LinkClass::combination(knots, coeffs)?;
    let rows = primes
        .iter()
        .zip(coeffs)
        .map(|(&p, &a)| {
            let theta = Rational::new((7 * n).into(), (6 * p as i64).into());
            let value = k.delta(&Angle::pi_multiple(theta.clone()))?;
            let shifted_value = k.delta(&Angle::pi_multiple(&theta + int(2)))?;
            Ok(FamilyRow {
                prime: p,
                coefficient: a,
                theta,
                value,
                shifted_value,
                nonvanishing: (a != 0).then_some(value != 0),
                vanishing: shifted_value == 0,
            })
        })
        .collect::<Result<_>>()?;
    Ok(FamilyReport { parity, n, coefficients: coeffs.to_vec(), rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn trefoil() -> SeifertMatrix {
        family_base(Parity::Odd)
    }

    fn pi(n: i64, d: i64) -> Angle {
        Angle::pi_multiple(rat(n, d))
    }

    #[test]
    fn complexity_examples() {
        let t = TypeVector::new(vec![3, -5]).unwrap();
        let id = MeridianMatrix::new(RationalMatrix::identity(2)).unwrap();
        assert_eq!(complexity_of_type(&id, &t).unwrap(), BigInt::from(1));
        let b = MeridianMatrix::new(RationalMatrix::from_ints(&[&[-4]])).unwrap();
        assert_eq!(complexity_of_type(&b, &TypeVector::ones(1)).unwrap(), BigInt::from(4));
        let b = MeridianMatrix::new(RationalMatrix::from_ints(&[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!(complexity_of_type(&b, &TypeVector::ones(2)).unwrap(), BigInt::from(6));
        assert_eq!(MeridianMatrix::new(RationalMatrix::zeros(2, 2)), Err(Error::SingularMeridianMatrix));
    }

    #[test]
    fn period_knot_jumps() {
        let j = LinkClass::period_knot(&trefoil(), 1, 5, 1).unwrap();
        assert_eq!(j.delta(&pi(5, 3)).unwrap(), 2);
        assert_eq!(j.delta(&pi(5, 3).add_two_pi(1).unwrap()).unwrap(), 0);
        assert_eq!(j.delta(&pi(5, 3).add_two_pi(5).unwrap()).unwrap(), 2);
        assert_eq!(j.delta(&Angle::zero()).unwrap(), 0);
        assert_eq!(j.period(), int(10));
        let neg = LinkClass::period_knot(&trefoil(), 1, -5, 1).unwrap();
        assert_eq!(neg.delta(&pi(-5, 3)).unwrap(), -2);
    }

    #[test]
    fn parallel_examples() {
        let k = LinkClass::knot(trefoil(), 1, 1).unwrap();
        let two = SignTuple::new(vec![1, 1]).unwrap();
        assert_eq!(parallel_delta(&k, &two, &pi(1, 6)).unwrap(), 2);
        assert_eq!(parallel_delta(&k, &two, &pi(1, 3)).unwrap(), 0);
        let mixed = SignTuple::new(vec![1, -1]).unwrap();
        for (n, d) in [(1, 6), (1, 3), (1, 2), (5, 3)] {
            assert_eq!(parallel_delta(&k, &mixed, &pi(n, d)).unwrap(), 0);
        }
        let lazy = k.parallel(&two).unwrap();
        assert_eq!(lazy.delta(&pi(1, 6)).unwrap(), 2);
        let z = LinkClass::knot(SeifertMatrix::zero(1, Parity::Odd), 1, 1).unwrap();
        assert!(matches!(parallel_delta(&z, &mixed, &pi(1, 3)), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn csum_matrix_layout() {
        let a = SeifertMatrix::zero(0, Parity::Odd);
        let m = csum_matrix_q1(&a, &a, 2, &CsumStars::zero(0, 2)).unwrap();
        assert_eq!(m.matrix(), &RationalMatrix::from_fn(2, 2, |i, j| [[int(0), rat(-1, 2)], [rat(1, 2), int(0)]][i][j].clone()));
        let t = trefoil();
        let m = csum_matrix_q1(&t, &t, 1, &CsumStars::zero(4, 1)).unwrap();
        assert_eq!(m, t.block_sum(&t).unwrap());
        let m = csum_matrix_q1(&a, &a, 4, &CsumStars::zero(0, 4)).unwrap();
        let e = |i: usize, j: usize| m.entry(i, j).clone();
        // y rows against x columns, then x rows against y columns.
        assert_eq!((e(0, 3), e(1, 3), e(1, 4), e(2, 5)), (rat(-1, 4), rat(2, 4), rat(-2, 4), rat(-3, 4)));
        assert_eq!((e(3, 0), e(3, 2), e(4, 0), e(5, 1), e(5, 2)), (rat(3, 4), rat(1, 4), rat(-1, 4), rat(-2, 4), rat(1, 4)));
        assert!(csum_matrix_q1(&t, &t, 0, &CsumStars::zero(4, 0)).is_err());
    }

    #[test]
    fn connected_sums() {
        let k = LinkClass::knot(trefoil(), 1, 1).unwrap();
        let unknot = LinkClass::knot(SeifertMatrix::zero(1, Parity::Odd), 1, 1).unwrap();
        assert_eq!(csum_delta(&k, &unknot, &pi(1, 3)).unwrap(), 2);
        assert_eq!(csum_delta(&k, &k, &pi(1, 3)).unwrap(), 4);
        assert_eq!(csum_delta(&k, &k.negated(), &pi(1, 3)).unwrap(), 0);
        assert!(k.connected_sum(&k.negated()).unwrap().jump_function().is_zero());
        let j2 = LinkClass::period_knot(&trefoil(), 1, 2, 1).unwrap();
        // Complexities 1 and 2 meet at 2.
        for (n, d) in [(1, 3), (2, 3), (5, 3), (10, 3)] {
            let s = csum_delta(&k, &j2, &pi(n, d)).unwrap();
            assert_eq!(s, k.delta(&pi(n, d)).unwrap() + j2.delta(&pi(n, d)).unwrap(), "{n}/{d}");
        }
    }

    #[test]
    fn satellites() {
        let j = LinkClass::knot(SeifertMatrix::from_ints(&[&[1]], Parity::Odd), 1, 1).unwrap();
        let k = LinkClass::knot(trefoil(), 1, 1).unwrap();
        assert_eq!(satellite_delta(&j, &k, 0, &pi(1, 3)).unwrap(), 0);
        assert_eq!(satellite_delta(&j, &k, 1, &pi(1, 3)).unwrap(), 2);
        assert_eq!(satellite_delta(&j, &k, 2, &pi(1, 6)).unwrap(), 2);
        assert_eq!(satellite_delta(&j, &k, -2, &pi(1, 6)).unwrap(), 2);
    }

    #[test]
    fn torsion_test() {
        let z = LinkClass::knot(SeifertMatrix::zero(2, Parity::Odd), 1, 1).unwrap();
        assert!(kawauchi_torsion_test(&z).unwrap());
        let k = LinkClass::knot(trefoil(), 1, 1).unwrap();
        assert!(!kawauchi_torsion_test(&k).unwrap());
        let mirror = crate::seifert::eps_transpose(&trefoil());
        let m = SeifertMatrix::new(mirror.matrix().map(|x| -x), Parity::Odd).unwrap();
        let s = LinkClass::knot(trefoil().block_sum(&m).unwrap(), 1, 1).unwrap();
        assert!(kawauchi_torsion_test(&s).unwrap());
    }

    #[test]
    fn family_single_prime() {
        let (ks, report) = independent_family(Parity::Odd, &[11]).unwrap();
        assert!(report.all_pass());
        assert_eq!(report.rows[0].theta, rat(7, 33));
        // Jumps exactly where 11θ/7 ≡ ±π/3.
        let j = ks[0].jump_function();
        assert_eq!(j.points().len(), 22);
        for (theta, _) in j.breakpoints() {
            let x = theta.to_f64() * 11.0 / 7.0 / std::f64::consts::PI;
            let frac = (x / 2.0).rem_euclid(1.0);
            assert!((frac - 1.0 / 6.0).abs() < 1e-9 || (frac - 5.0 / 6.0).abs() < 1e-9, "{theta}");
        }
        assert!(matches!(independent_family(Parity::Odd, &[5]), Err(Error::InvalidPrimes(_))));
        assert!(matches!(independent_family(Parity::Odd, &[11, 11]), Err(Error::InvalidPrimes(_))));
        assert!(matches!(independent_family(Parity::Odd, &[15]), Err(Error::InvalidPrimes(_))));
    }
}
