#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qsig::arith::{rat, to_f64, GaussianRational, Rational};
use qsig::matrix::{GaussianMatrix, RationalMatrix};
use qsig::seifert::{Parity, SeifertMatrix, SignTuple};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rational: mostly integers in [-3, 3], sometimes halves or thirds.
pub fn small_rational(r: &mut impl Rng) -> Rational {
    let n = r.gen_range(-3i64..=3);
    let d = if r.gen_bool(0.2) { r.gen_range(2i64..=3) } else { 1 };
    rat(n, d)
}

pub fn random_rational_matrix(r: &mut impl Rng, rows: usize, cols: usize) -> RationalMatrix {
    RationalMatrix::from_fn(rows, cols, |_, _| small_rational(r))
}

pub fn random_parity(r: &mut impl Rng) -> Parity {
    if r.gen_bool(0.5) { Parity::Odd } else { Parity::Even }
}

pub fn random_seifert(r: &mut impl Rng, dim: usize, parity: Parity) -> SeifertMatrix {
    SeifertMatrix::new(random_rational_matrix(r, dim, dim), parity).unwrap()
}

pub fn random_any_parity(r: &mut impl Rng, dim: usize) -> SeifertMatrix {
    let p = random_parity(r);
    random_seifert(r, dim, p)
}

/// A sign tuple of random length in `1..=max_len`.
pub fn random_alpha(r: &mut impl Rng, max_len: usize) -> SignTuple {
    let len = r.gen_range(1..=max_len);
    random_signs(r, len)
}

pub fn random_signs(r: &mut impl Rng, len: usize) -> SignTuple {
    SignTuple::new((0..len).map(|_| if r.gen_bool(0.5) { 1 } else { -1 }).collect()).unwrap()
}

/// Random nonzero rational tangent avoiding `0, ±1` (so `e^{iφ}` is not a
/// root of unity).
pub fn random_tangent(r: &mut impl Rng) -> Rational {
    loop {
        let u = rat(r.gen_range(-40i64..=40), r.gen_range(1i64..=13));
        if u != rat(0, 1) && u != rat(1, 1) && u != rat(-1, 1) {
            return u;
        }
    }
}

pub fn to_complex(m: &RationalMatrix) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| Complex64::new(to_f64(m.get(i, j)), 0.0))
}

/// `i^δ((1 - w)A + ε(1 - w̄)Aᵀ)` in floating point, `w = e^{iθ}`.
pub fn float_form(a: &SeifertMatrix, theta: f64) -> DMatrix<Complex64> {
    let m = to_complex(a.matrix());
    let w = Complex64::from_polar(1.0, theta);
    let one = Complex64::new(1.0, 0.0);
    let eps = a.eps() as f64;
    let h = m.map(|x| x * (one - w)) + m.transpose().map(|x| x * (one - w.conj()) * eps);
    match a.parity() {
        Parity::Odd => h,
        Parity::Even => h.map(|x| x * Complex64::new(0.0, 1.0)),
    }
}

/// Signature of a hermitian float matrix whose exact rank is `rank`.
/// `None` when the eigenvalues do not separate cleanly into `rank` clearly
/// nonzero ones and the rest clearly zero.
pub fn certified_float_signature(h: &DMatrix<Complex64>, rank: usize) -> Option<i64> {
    let n = h.nrows();
    if n == 0 {
        return Some(0);
    }
    let mut ev: Vec<f64> = h.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| b.abs().partial_cmp(&a.abs()).unwrap());
    let scale = ev[0].abs().max(1.0);
    let zero = 1e-9 * scale;
    if ev[..rank].iter().any(|x| x.abs() <= zero) || ev[rank..].iter().any(|x| x.abs() > zero) {
        return None;
    }
    Some(ev[..rank].iter().map(|x| x.signum() as i64).sum())
}

/// Exact rank of `i^δ M(w)` at `w` through plain Gaussian elimination.
pub fn exact_rank_at(a: &SeifertMatrix, w: &GaussianRational) -> usize {
    let m: GaussianMatrix = a.circle_form(w);
    m.rank()
}

/// Signature of a real symmetric rational matrix from float eigenvalues,
/// certified by the exact rank.
pub fn float_symmetric_signature(m: &RationalMatrix) -> Option<i64> {
    certified_float_signature(&to_complex(m), m.rank())
}

/// `η_a(φ)` straight from the step-function definition, for `φ` not a
/// multiple of `2π/a`.
pub fn eta_oracle(a: i64, phi: f64) -> i64 {
    if a == 0 {
        return 0;
    }
    if a < 0 {
        return eta_oracle(-a, -phi);
    }
    let t = phi.rem_euclid(2.0 * std::f64::consts::PI);
    let k = (t * a as f64 / (2.0 * std::f64::consts::PI)).floor() as i64 + 1;
    a + 1 - 2 * k
}

pub fn rm(rows: &[&[i64]]) -> RationalMatrix {
    RationalMatrix::from_ints(rows)
}

pub mod strat {
    use proptest::prelude::*;

    use qsig::arith::{rat, GaussianRational, Rational};
    use qsig::matrix::RationalMatrix;
    use qsig::seifert::{Parity, SeifertMatrix, SignTuple};

    pub fn rational() -> impl Strategy<Value = Rational> {
        (-6i64..=6, prop_oneof![4 => Just(1i64), 1 => 2i64..=5]).prop_map(|(n, d)| rat(n, d))
    }

    pub fn gaussian() -> impl Strategy<Value = GaussianRational> {
        (rational(), rational()).prop_map(|(a, b)| GaussianRational::new(a, b))
    }

    pub fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RationalMatrix> {
        prop::collection::vec(rational(), rows * cols)
            .prop_map(move |v| RationalMatrix::from_fn(rows, cols, |i, j| v[i * cols + j].clone()))
    }

    pub fn parity() -> impl Strategy<Value = Parity> {
        prop_oneof![Just(Parity::Odd), Just(Parity::Even)]
    }

    pub fn seifert(max_dim: usize) -> impl Strategy<Value = SeifertMatrix> {
        (1..=max_dim, parity())
            .prop_flat_map(|(n, p)| matrix(n, n).prop_map(move |m| SeifertMatrix::new(m, p).unwrap()))
    }

    pub fn seifert_with(max_dim: usize, p: Parity) -> impl Strategy<Value = SeifertMatrix> {
        (1..=max_dim).prop_flat_map(move |n| matrix(n, n).prop_map(move |m| SeifertMatrix::new(m, p).unwrap()))
    }

    pub fn signs(max_len: usize) -> impl Strategy<Value = SignTuple> {
        prop::collection::vec(prop_oneof![Just(1i8), Just(-1i8)], 1..=max_len).prop_map(|v| SignTuple::new(v).unwrap())
    }
}
