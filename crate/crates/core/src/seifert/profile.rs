//! Exact profile of the step function `θ ↦ σ_A(nθ)` on the circle.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::tangent::{norm_power, one_plus_iu_power, sigma_at, sigma_at_rational_tangent, sigma_at_tangent};
use super::{reduced_turn, Angle, Parity, SeifertMatrix};
use crate::arith::{
    alg_compare, circle_to_tangent, int, laurent_vanishes_at_root_of_unity, root_of_unity_tangent, simplest_between,
    CirclePoint, GaussianRational, LaurentPolynomial, Poly, Rational, RealAlgebraic,
};
use crate::error::{Error, Result};
use crate::herm::signature_exact;
use crate::matrix::{GaussianMatrix, RationalMatrix};

/// The piecewise-constant function `θ ↦ σ_A(nθ)` described exactly.
///
/// `breakpoints` are the points where the arc value changes, in circle
/// order starting at `θ = 0`. `arc_values[j]` is the value on the open arc
/// from `breakpoints[j]` to the next breakpoint (cyclically). Without
/// breakpoints there is one arc value.
#[derive(Clone, Debug)]
pub struct SignatureProfile {
    scale: i64,
    parity: Parity,
    generic_rank: usize,
    candidate: LaurentPolynomial,
    breakpoints: Vec<CirclePoint>,
    arc_values: Vec<i64>,
    jumps: Vec<i64>,
    /// `w^scale = 1` at the breakpoint; `δ` is forced to 0 there.
    trivial: Vec<bool>,
}

impl SignatureProfile {
    fn constant(scale: i64, parity: Parity, generic_rank: usize, candidate: LaurentPolynomial, v: i64) -> Self {
        Self {
            scale,
            parity,
            generic_rank,
            candidate,
            breakpoints: Vec::new(),
            arc_values: vec![v],
            jumps: Vec::new(),
            trivial: Vec::new(),
        }
    }

    /// `n` in `θ ↦ σ_A(nθ)`.
    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Rank of `M(w)` at all but finitely many `w`.
    pub fn generic_rank(&self) -> usize {
        self.generic_rank
    }

    /// The Laurent polynomial whose roots on the circle contain every breakpoint.
    pub fn candidate(&self) -> &LaurentPolynomial {
        &self.candidate
    }

    pub fn breakpoints(&self) -> &[CirclePoint] {
        &self.breakpoints
    }

    pub fn arc_values(&self) -> &[i64] {
        &self.arc_values
    }

    /// Right value minus left value at each breakpoint.
    pub fn raw_jumps(&self) -> &[i64] {
        &self.jumps
    }

    pub fn is_constant(&self) -> bool {
        self.breakpoints.is_empty()
    }

    fn index_of(&self, p: &CirclePoint) -> Option<usize> {
        self.breakpoints.binary_search(p).ok()
    }

    /// Value on the arc just after `p`.
    pub fn value_right_of(&self, p: &CirclePoint) -> i64 {
        let idx = self.breakpoints.partition_point(|b| b <= p);
        self.arc_before(idx)
    }

    /// Value on the arc just before `p`.
    pub fn value_left_of(&self, p: &CirclePoint) -> i64 {
        let idx = self.breakpoints.partition_point(|b| b < p);
        self.arc_before(idx)
    }

    fn arc_before(&self, idx: usize) -> i64 {
        if idx == 0 {
            *self.arc_values.last().expect("at least one arc")
        } else {
            self.arc_values[idx - 1]
        }
    }

    /// Value of the arc through `p`, `None` at a breakpoint. This is `σ` at
    /// `p` unless the candidate vanishes there.
    pub fn value_at(&self, p: &CirclePoint) -> Option<i64> {
        if self.index_of(p).is_some() {
            return None;
        }
        Some(self.value_right_of(p))
    }

    /// Right minus left value at `p`.
    pub fn raw_jump_at(&self, p: &CirclePoint) -> i64 {
        self.index_of(p).map_or(0, |i| self.jumps[i])
    }

    /// The jump at `p`, forced to 0 where `w^scale = 1`.
    pub fn delta_at_point(&self, p: &CirclePoint) -> i64 {
        match self.index_of(p) {
            Some(i) if !self.trivial[i] => self.jumps[i],
            _ => 0,
        }
    }

    /// Nonzero values of the jump function, in circle order.
    pub fn jump_function(&self) -> Vec<(CirclePoint, i64)> {
        self.breakpoints
            .iter()
            .zip(&self.jumps)
            .zip(&self.trivial)
            .filter(|(_, &t)| !t)
            .map(|((p, &j), _)| (p.clone(), j))
            .collect()
    }

    /// Points where the jump function is nonzero.
    pub fn delta_support(&self) -> Vec<CirclePoint> {
        self.jump_function().into_iter().map(|(p, _)| p).collect()
    }

    pub fn delta_vanishes(&self) -> bool {
        self.jump_function().is_empty()
    }

    /// Every arc value is 0.
    pub fn arcs_vanish(&self) -> bool {
        self.arc_values.iter().all(|&v| v == 0)
    }

    /// Same breakpoints and arc values.
    pub fn same_function(&self, o: &Self) -> bool {
        self.breakpoints == o.breakpoints && self.arc_values == o.arc_values
    }

    /// Pointwise sum on arcs. Scales must agree.
    pub fn sum(&self, o: &Self) -> Result<Self> {
        if self.scale != o.scale {
            return Err(Error::Incompatible("profiles at different scales".into()));
        }
        let mut pts: Vec<CirclePoint> = self.breakpoints.iter().chain(&o.breakpoints).cloned().collect();
        pts.sort();
        pts.dedup();
        let vals: Vec<i64> = pts.iter().map(|p| self.value_right_of(p) + o.value_right_of(p)).collect();
        let base = self.arc_values[0] + o.arc_values[0];
        let candidate = &self.candidate * &o.candidate;
        let rank = self.generic_rank + o.generic_rank;
        if pts.is_empty() {
            return Ok(Self::constant(self.scale, self.parity, rank, candidate, base));
        }
        let mut out = Self::constant(self.scale, self.parity, rank, candidate, 0);
        out.arc_values.clear();
        let k = pts.len();
        for j in 0..k {
            let jump = vals[j] - vals[(j + k - 1) % k];
            if jump != 0 {
                let t = self.index_of(&pts[j]).map(|i| self.trivial[i]).or_else(|| o.index_of(&pts[j]).map(|i| o.trivial[i]));
                out.breakpoints.push(pts[j].clone());
                out.arc_values.push(vals[j]);
                out.jumps.push(jump);
                out.trivial.push(t.unwrap_or(false));
            }
        }
        if out.breakpoints.is_empty() {
            out.arc_values.push(vals[0]);
        }
        Ok(out)
    }
}

/// `M(t) = (1 - t)A + ε(1 - 1/t)Aᵀ` at a rational `t ≠ 0`.
fn real_form(a: &SeifertMatrix, t: &Rational) -> RationalMatrix {
    let one = int(1);
    let x = &one - t;
    let y = (&one - t.recip()) * int(a.eps());
    let n = a.dim();
    RationalMatrix::from_fn(n, n, |i, j| &x * a.entry(i, j) + &y * a.entry(j, i))
}

fn generic_rank(a: &SeifertMatrix) -> usize {
    let n = a.dim();
    let mut r = 0;
    for t in 2..=(2 * n as i64 + 2) {
        r = r.max(real_form(a, &int(t)).rank());
        if r == n {
            break;
        }
    }
    r
}

/// `i^{δr}·e_r(M(t))` as a Laurent polynomial, where `e_r` is the `r`-th
/// elementary symmetric function of the eigenvalues.
fn rank_candidate(a: &SeifertMatrix, r: usize) -> LaurentPolynomial {
    if r == 0 {
        return LaurentPolynomial::one();
    }
    let n = a.dim();
    // t^r e_r(M(t)) has degree at most 2r.
    let xs: Vec<Rational> = (1..=(2 * r as i64 + 1)).map(int).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|t| {
            let cp = real_form(a, t).char_poly_integral().expect("square");
            let e = if r % 2 == 0 { cp[n - r].clone() } else { -cp[n - r].clone() };
            e * t.pow(r as i32)
        })
        .collect();
    let p = Poly::interpolate(&xs, &ys);
    let l = LaurentPolynomial::from_rationals(-(r as i64), p.coeffs());
    let delta = match a.parity() {
        Parity::Odd => 0,
        Parity::Even => r % 4,
    };
    let unit = match delta {
        0 => GaussianRational::real(int(1)),
        1 => GaussianRational::i(),
        2 => GaussianRational::real(int(-1)),
        _ => -GaussianRational::i(),
    };
    l.scale(&unit)
}

fn half_of(u: &RealAlgebraic) -> bool {
    u.cmp_rational(&Rational::zero()) != Ordering::Less
}

/// Roots of `p` on the circle, in circle order.
fn circle_roots(p: &LaurentPolynomial) -> Vec<CirclePoint> {
    let tp = circle_to_tangent(p).expect("candidate is real on the circle");
    let roots = crate::arith::real_roots(&tp);
    let (upper, lower): (Vec<_>, Vec<_>) = roots.into_iter().partition(half_of);
    let mut out: Vec<CirclePoint> = upper.into_iter().map(CirclePoint::Tangent).collect();
    if p.eval(&GaussianRational::real(int(-1))).is_zero() {
        out.push(CirclePoint::Pi);
    }
    out.extend(lower.into_iter().map(CirclePoint::Tangent));
    out
}

/// Simplest rational strictly inside `(lo, hi)`; `None` is infinite.
///
/// Searches between the inner ends of the isolating intervals, so the
/// answer is never one of the roots even when a root is rational but
/// carried by a nonlinear polynomial.
fn rational_inside(lo: Option<&RealAlgebraic>, hi: Option<&RealAlgebraic>) -> Rational {
    let mut lo = lo.cloned();
    let mut hi = hi.cloned();
    loop {
        let lq = lo.as_ref().map(|u| u.as_rational().unwrap_or_else(|| u.interval().1.clone()));
        let hq = hi.as_ref().map(|u| u.as_rational().unwrap_or_else(|| u.interval().0.clone()));
        if let (Some(l), Some(h)) = (&lq, &hq) {
            if l >= h {
                for u in lo.iter_mut().chain(hi.iter_mut()) {
                    if u.as_rational().is_none() {
                        u.refine();
                    }
                }
                continue;
            }
        }
        let s = simplest_between(lq.as_ref(), hq.as_ref());
        debug_assert!(lo.as_ref().map_or(true, |u| u.cmp_rational(&s) == Ordering::Less));
        debug_assert!(hi.as_ref().map_or(true, |u| u.cmp_rational(&s) == Ordering::Greater));
        return s;
    }
}

/// A rational tangent strictly inside the open arc from `a` to `b`
/// (counterclockwise). `a == b` means the full circle minus `a`.
fn arc_sample(a: &CirclePoint, b: &CirclePoint, whole: bool) -> Rational {
    let lo = match a {
        CirclePoint::Tangent(u) => Some(u),
        CirclePoint::Pi => None,
    };
    let mut hi = match b {
        CirclePoint::Tangent(u) => Some(u),
        CirclePoint::Pi => None,
    };
    if whole {
        hi = None;
    } else if let (Some(l), Some(h)) = (lo, hi) {
        // The arc passes through π.
        if alg_compare(l, h) != Ordering::Less {
            hi = None;
        }
    }
    rational_inside(lo, hi)
}

/// `w^n = 1` at the point.
fn is_trivial_point(p: &CirclePoint, n: i64) -> bool {
    match p {
        CirclePoint::Pi => n % 2 == 0,
        CirclePoint::Tangent(u) => {
            if n.abs() == 1 {
                return p.is_zero_angle();
            }
            let k = n.unsigned_abs();
            let (re, im) = one_plus_iu_power(2 * k);
            u.sign_of_poly(&im) == 0 && u.sign_of_poly(&(&re - &norm_power(k))) == 0
        }
    }
}

fn build(a: &SeifertMatrix, rank: usize, base: &LaurentPolynomial, n: i64) -> SignatureProfile {
    if rank == 0 || n == 0 {
        return SignatureProfile::constant(n, a.parity(), rank, base.substitute_power(n), 0);
    }
    let candidate = base.substitute_power(n);
    let pts = circle_roots(&candidate);
    if pts.is_empty() {
        let v = sigma_at_rational_tangent(a, &int(1), n);
        return SignatureProfile::constant(n, a.parity(), rank, candidate, v);
    }
    let k = pts.len();
    let vals: Vec<i64> = (0..k)
        .map(|j| {
            let s = arc_sample(&pts[j], &pts[(j + 1) % k], k == 1);
            sigma_at_rational_tangent(a, &s, n)
        })
        .collect();
    let mut out = SignatureProfile::constant(n, a.parity(), rank, candidate, 0);
    out.arc_values.clear();
    for j in 0..k {
        let jump = vals[j] - vals[(j + k - 1) % k];
        if jump != 0 {
            out.trivial.push(is_trivial_point(&pts[j], n));
            out.breakpoints.push(pts[j].clone());
            out.arc_values.push(vals[j]);
            out.jumps.push(jump);
        }
    }
    if out.breakpoints.is_empty() {
        out.arc_values.push(vals[0]);
    }
    out
}

/// Whether `kθ ∈ 2πℤ` but `θ ∉ 2πℤ`.
fn on_lattice(theta: &Angle, k: i64) -> bool {
    let turn = |r: &Rational| (r * int(k) / int(2)).is_integer() && !(r / int(2)).is_integer();
    match theta {
        Angle::RationalPi(r) => turn(r),
        Angle::Algebraic { tangent, winding, scale } => {
            // kθ ∈ 2πℤ forces 2·atan(tangent) to be a multiple of 2π/N.
            let n = (scale.numer() * BigInt::from(k)).abs();
            let Some(n) = n.to_u64() else { return false };
            let p = CirclePoint::Tangent(tangent.clone());
            (0..n as i64).find(|&j| root_of_unity_tangent(j, n) == p).is_some_and(|j| {
                let r = scale * (int(2 * j) / int(n as i64) + int(2 * winding));
                turn(&r)
            })
        }
    }
}

/// The exact profile of `σ_A`.
pub fn signature_profile(a: &SeifertMatrix) -> SignatureProfile {
    let r = generic_rank(a);
    build(a, r, &rank_candidate(a, r), 1)
}

/// `σ_A` and `δ_A` with cached profiles of `θ ↦ σ_A(nθ)`.
#[derive(Debug)]
pub struct SignatureFunction {
    matrix: SeifertMatrix,
    rank: usize,
    candidate: LaurentPolynomial,
    profile: Arc<SignatureProfile>,
    pullbacks: Mutex<HashMap<i64, Arc<SignatureProfile>>>,
    /// `σ_A(0+) - σ_A(0-) - 2·sign(A + Aᵀ)` for `ε = -1`, else 0. Nonzero
    /// only when `A + Aᵀ` is singular; see [`Self::copies_delta_at`].
    lattice_jump: i64,
}

impl SignatureFunction {
    pub fn new(a: &SeifertMatrix) -> Self {
        let rank = generic_rank(a);
        let candidate = rank_candidate(a, rank);
        let profile = Arc::new(build(a, rank, &candidate, 1));
        let lattice_jump = match a.parity() {
            Parity::Even if rank > 0 => {
                let sym = GaussianMatrix::from_rational(&a.symmetrization());
                let s = signature_exact(&sym).expect("symmetric").0;
                profile.raw_jump_at(&CirclePoint::zero()) - 2 * s
            }
            _ => 0,
        };
        Self { matrix: a.clone(), rank, candidate, profile, pullbacks: Mutex::new(HashMap::new()), lattice_jump }
    }

    pub fn matrix(&self) -> &SeifertMatrix {
        &self.matrix
    }

    pub fn profile(&self) -> &SignatureProfile {
        &self.profile
    }

    /// Profile of `θ ↦ σ_A(nθ)`.
    pub fn pullback(&self, n: i64) -> Arc<SignatureProfile> {
        if n == 1 {
            return self.profile.clone();
        }
        if let Some(p) = self.pullbacks.lock().expect("cache lock").get(&n) {
            return p.clone();
        }
        let p = Arc::new(build(&self.matrix, self.rank, &self.candidate, n));
        self.pullbacks.lock().expect("cache lock").insert(n, p.clone());
        p
    }

    pub fn sigma_at(&self, theta: &Angle) -> Result<i64> {
        sigma_at(&self.matrix, theta)
    }

    /// `δ_A(θ)`: right minus left limit, 0 at multiples of `2π`.
    pub fn delta_at(&self, theta: &Angle) -> Result<i64> {
        match theta {
            Angle::RationalPi(r) => {
                let (k, m) = reduced_turn(r);
                if k == 0 || self.rank == 0 {
                    return Ok(0);
                }
                if !laurent_vanishes_at_root_of_unity(&self.candidate, k, m) {
                    return Ok(0);
                }
                Ok(self.profile.delta_at_point(&root_of_unity_tangent(k, m)))
            }
            Angle::Algebraic { tangent, .. } => {
                let n = theta
                    .integer_scale()
                    .ok_or_else(|| Error::Unrepresentable(format!("δ at {theta} needs a fractional angle")))?;
                if n == 0 {
                    return Ok(0);
                }
                let p = CirclePoint::Tangent(tangent.clone());
                // The pullback jumps by sgn(n)·δ_A(nθ).
                Ok(n.signum() * self.pullback(n).delta_at_point(&p))
            }
        }
    }

    /// `δ` of `i_k A` at `θ`, `k ≠ 0`.
    ///
    /// This is `sgn k · δ_A(kθ)` except at `θ = 2πj/k`, `θ ∉ 2πℤ`, with
    /// `ε = -1`: there the step of `η_k` contributes `-2·sign(A + Aᵀ)` and
    /// the jump of `σ_A` at 0 does not cancel it when `A + Aᵀ` is singular.
    pub fn copies_delta_at(&self, k: i64, theta: &Angle) -> Result<i64> {
        if k == 0 {
            return Err(Error::HypothesisViolated("parallel copy count must be nonzero".into()));
        }
        let base = k.signum() * self.delta_at(&theta.scaled(&int(k)))?;
        if self.lattice_jump != 0 && on_lattice(theta, k) {
            return Ok(base + k.signum() * self.lattice_jump);
        }
        Ok(base)
    }

    /// Nonzero jumps of `i_k A` on the circle, `k ≠ 0`.
    pub fn copies_jump_function(&self, k: i64) -> Vec<(CirclePoint, i64)> {
        let mut pts = self.pullback(k).jump_function();
        if self.lattice_jump != 0 {
            let m = k.unsigned_abs();
            pts.extend((1..m as i64).map(|j| (root_of_unity_tangent(j, m), k.signum() * self.lattice_jump)));
            pts.sort_by(|a, b| a.0.cmp(&b.0));
        }
        pts
    }

    /// `σ_A` at each breakpoint of the profile.
    pub fn point_values(&self) -> Result<Vec<i64>> {
        self.profile
            .breakpoints()
            .iter()
            .map(|p| match p {
                CirclePoint::Pi => sigma_at(&self.matrix, &Angle::pi_multiple(int(1))),
                CirclePoint::Tangent(u) => sigma_at_tangent(&self.matrix, u, 1),
            })
            .collect()
    }
}
