use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Zero};

use super::algebraic::isolate_all;
use super::{int, CirclePoint, GaussianRational, LaurentPolynomial, Poly, Rational, RealAlgebraic};

pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut r = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if n > 1 {
        r -= r / n;
    }
    r
}

fn cache() -> &'static Mutex<HashMap<u64, Poly>> {
    static C: OnceLock<Mutex<HashMap<u64, Poly>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The cyclotomic polynomial `Φ_m`, `m >= 1`.
pub fn cyclotomic_polynomial(m: u64) -> Poly {
    assert!(m >= 1, "order must be positive");
    if let Some(p) = cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut num = Poly::monomial(Rational::one(), m as usize);
    num = &num - &Poly::one();
    for d in 1..m {
        if m % d == 0 {
            num = num.div_rem(&cyclotomic_polynomial(d)).0;
        }
    }
    cache().lock().unwrap().insert(m, num.clone());
    num
}

/// Real polynomial in `u = tan(θ/2)` whose roots are the tangents of the
/// primitive `m`-th roots of unity other than `-1`, namely `tan(πj/m)` for
/// `gcd(j, m) = 1`, `|j| < m/2`.
pub fn tangent_polynomial_of_roots(m: u64) -> Poly {
    let phi = cyclotomic_polynomial(m);
    let d = phi.degree().unwrap_or(0);
    let g = |re: i64, im: i64| GaussianRational::new(int(re), int(im));
    let mut acc = vec![GaussianRational::zero(); d + 1];
    for (k, c) in phi.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // (1 + iu)^k (1 - iu)^(d - k)
        let mut term = vec![GaussianRational::real(c.clone())];
        for j in 0..d {
            let f = if j < k { g(0, 1) } else { g(0, -1) };
            let mut next = vec![GaussianRational::zero(); term.len() + 1];
            for (i, x) in term.iter().enumerate() {
                next[i] = &next[i] + x;
                next[i + 1] = &next[i + 1] + &(x * &f);
            }
            term = next;
        }
        for (i, x) in term.iter().enumerate() {
            acc[i] = &acc[i] + x;
        }
    }
    let coeffs: Vec<Rational> = if acc.iter().all(|c| c.is_real()) {
        acc.into_iter().map(|c| c.re).collect()
    } else {
        debug_assert!(acc.iter().all(|c| c.re.is_zero()));
        acc.into_iter().map(|c| c.im).collect()
    };
    Poly::new(coeffs).normalized()
}

fn tangent_roots(m: u64) -> Vec<RealAlgebraic> {
    static C: OnceLock<Mutex<HashMap<u64, Vec<RealAlgebraic>>>> = OnceLock::new();
    let c = C.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = c.lock().unwrap().get(&m) {
        return r.clone();
    }
    let r = isolate_all(&tangent_polynomial_of_roots(m));
    c.lock().unwrap().insert(m, r.clone());
    r
}

fn two_cos_roots(m: u64) -> Vec<RealAlgebraic> {
    static C: OnceLock<Mutex<HashMap<u64, Vec<RealAlgebraic>>>> = OnceLock::new();
    let c = C.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = c.lock().unwrap().get(&m) {
        return r.clone();
    }
    let r = isolate_all(&real_cyclotomic_polynomial(m));
    c.lock().unwrap().insert(m, r.clone());
    r
}

/// Reduces `a/m` to lowest terms with `0 <= a < m`.
fn reduce(a: i64, m: u64) -> (u64, u64) {
    let mi = m as i64;
    let a = a.rem_euclid(mi) as u64;
    let g = a.gcd(&m);
    (a / g, m / g)
}

/// The point `θ = 2πa/m` of the circle, with its tangent isolated exactly.
pub fn root_of_unity_tangent(a: i64, m: u64) -> CirclePoint {
    let (a, m) = reduce(a, m);
    if a == 0 {
        return CirclePoint::zero();
    }
    if m == 2 {
        return CirclePoint::Pi;
    }
    let j = if 2 * a < m { a as i64 } else { a as i64 - m as i64 };
    let idx = (-(m as i64) / 2..=(m as i64) / 2)
        .filter(|&x| 2 * x.abs() < m as i64 && (x.unsigned_abs()).gcd(&m) == 1)
        .position(|x| x == j)
        .expect("coprime index");
    CirclePoint::Tangent(tangent_roots(m)[idx].clone())
}

/// `Ψ_d(c)` with `Φ_d(t) = t^{φ(d)/2} Ψ_d(t + t⁻¹)` for `d >= 3`; for `d = 1, 2`
/// the linear polynomials `c ∓ 2`.
pub fn real_cyclotomic_polynomial(d: u64) -> Poly {
    match d {
        1 => return Poly::from_ints(&[-2, 1]),
        2 => return Poly::from_ints(&[2, 1]),
        _ => {}
    }
    let phi = cyclotomic_polynomial(d);
    let h = phi.degree().unwrap() / 2;
    let c = Poly::x();
    let mut dk = vec![Poly::constant(int(2)), c.clone()];
    while dk.len() <= h {
        let n = dk.len();
        let next = &(&c * &dk[n - 1]) - &dk[n - 2];
        dk.push(next);
    }
    let mut acc = Poly::constant(phi.coeff(h));
    for k in 1..=h {
        acc = &acc + &dk[k].scale(&phi.coeff(h + k));
    }
    acc
}

/// `2cos(2πk/d)` as an isolated real root of `Ψ_d` (after reducing `k/d`).
pub fn two_cos_root_of_unity(k: i64, d: u64) -> RealAlgebraic {
    let (a, m) = reduce(k, d);
    match m {
        1 => return RealAlgebraic::from_rational(&int(2)),
        2 => return RealAlgebraic::from_rational(&int(-2)),
        _ => {}
    }
    let j = a.min(m - a);
    let idx = (1..j).filter(|x| x.gcd(&m) == 1).count();
    // Roots come ascending; 2cos(2πj/m) decreases with j.
    let roots = two_cos_roots(m);
    roots[roots.len() - 1 - idx].clone()
}

/// Exact test of `p(e^{2πia/m}) = 0`, computed in `ℚ(ζ_L)` with `L = lcm(m, 4)`.
pub fn laurent_vanishes_at_root_of_unity(p: &LaurentPolynomial, a: i64, m: u64) -> bool {
    let (a, m) = reduce(a, m);
    let l = m.lcm(&4);
    let step = a * (l / m);
    let quarter = l / 4;
    let mut acc = vec![Rational::zero(); l as usize];
    for (k, c) in p.terms() {
        let e = ((k.rem_euclid(l as i64) as u64) * step % l) as usize;
        acc[e] += &c.re;
        acc[(e + quarter as usize) % l as usize] += &c.im;
    }
    Poly::new(acc).rem(&cyclotomic_polynomial(l)).is_zero()
}
