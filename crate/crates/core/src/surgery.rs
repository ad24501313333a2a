//! Rational homology 3-spheres from surgery on framed links in `S³`.
//!
//! Diagrams are kept as linking data only: the surgery linking matrix,
//! and for each extra curve its linking numbers with the surgery
//! components.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{lcm_denominators, Rational};
use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;

/// A framed link in `S³` presenting a 3-manifold by surgery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedLinkDiagram {
    lk: RationalMatrix,
}

impl FramedLinkDiagram {
    /// Framings on the diagonal, linking numbers off it.
    pub fn new(lk: Vec<Vec<i64>>) -> Result<Self> {
        let rows: Vec<&[i64]> = lk.iter().map(|r| r.as_slice()).collect();
        let m = lk.len();
        if lk.iter().any(|r| r.len() != m) {
            return Err(Error::NotSquare(m, lk.first().map_or(0, |r| r.len())));
        }
        let lk = RationalMatrix::from_ints(&rows);
        if !lk.is_symmetric() {
            return Err(Error::HypothesisViolated("linking matrix must be symmetric".into()));
        }
        Ok(Self { lk })
    }

    pub fn components(&self) -> usize {
        self.lk.rows()
    }

    pub fn linking_matrix(&self) -> &RationalMatrix {
        &self.lk
    }

    /// Surgery gives a rational homology sphere iff the matrix is nonsingular.
    pub fn is_rational_homology_sphere(&self) -> bool {
        self.lk.rank() == self.components()
    }

    fn inverse(&self) -> Result<RationalMatrix> {
        self.lk.inverse()?.ok_or(Error::NotRationalHomologySphere)
    }
}

/// A curve in the surgery complement, recorded by its linking numbers
/// with the surgery components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveClass {
    lk: Vec<i64>,
}

impl CurveClass {
    pub fn new(lk: Vec<i64>) -> Self {
        Self { lk }
    }

    pub fn lk_vector(&self) -> &[i64] {
        &self.lk
    }
}

/// A type: nonzero coprime integers, one per component.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypeVector {
    tau: Vec<i64>,
}

impl TypeVector {
    pub fn new(tau: Vec<i64>) -> Result<Self> {
        if let Some(i) = tau.iter().position(|&t| t == 0) {
            return Err(Error::ZeroTypeEntry(i));
        }
        if tau.is_empty() || tau.iter().fold(0i64, |g, &t| g.gcd(&t)) != 1 {
            return Err(Error::TypeNotCoprime);
        }
        Ok(Self { tau })
    }

    /// `(1, …, 1)`.
    pub fn ones(m: usize) -> Self {
        Self { tau: vec![1; m.max(1)] }
    }

    pub fn entries(&self) -> &[i64] {
        &self.tau
    }

    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn negated(&self) -> Self {
        Self { tau: self.tau.iter().map(|t| -t).collect() }
    }
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn check_len(d: &FramedLinkDiagram, x: &CurveClass) -> Result<()> {
    if x.lk.len() != d.components() {
        return Err(Error::DimensionMismatch(format!(
            "curve has {} linking numbers, diagram has {} components",
            x.lk.len(),
            d.components()
        )));
    }
    Ok(())
}

fn bilinear(inv: &RationalMatrix, x: &[i64], y: &[i64]) -> Rational {
    let mut s = Rational::zero();
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for (j, &yj) in y.iter().enumerate() {
            if yj != 0 {
                s += inv.get(i, j) * q(xi * yj);
            }
        }
    }
    s
}

/// Linking number in the surgered manifold: `lk_{S³} - xᵀA⁻¹y`.
pub fn lk_sigma(d: &FramedLinkDiagram, x: &CurveClass, y: &CurveClass, lk_s3: &Rational) -> Result<Rational> {
    check_len(d, x)?;
    check_len(d, y)?;
    let inv = d.inverse()?;
    Ok(lk_s3 - bilinear(&inv, &x.lk, &y.lk))
}

/// Linking matrix of `curves` in the surgered manifold. `s3_lk` holds
/// their `S³` linking numbers, with the chosen framings on the diagonal.
pub fn induced_linking_matrix(d: &FramedLinkDiagram, curves: &[CurveClass], s3_lk: &RationalMatrix) -> Result<RationalMatrix> {
    let n = curves.len();
    if s3_lk.rows() != n || s3_lk.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "{n} curves but a {}x{} S³ linking matrix",
            s3_lk.rows(),
            s3_lk.cols()
        )));
    }
    for c in curves {
        check_len(d, c)?;
    }
    let inv = d.inverse()?;
    Ok(RationalMatrix::from_fn(n, n, |i, j| s3_lk.get(i, j) - bilinear(&inv, &curves[i].lk, &curves[j].lk)))
}

/// `(1/τᵢ)Σⱼ aᵢⱼτⱼ` for each `i`.
fn type_quotients(a: &RationalMatrix, tau: &TypeVector) -> Result<Vec<Rational>> {
    let m = tau.len();
    if a.rows() != m || a.cols() != m {
        return Err(Error::DimensionMismatch(format!("{}x{} matrix with a type of length {m}", a.rows(), a.cols())));
    }
    Ok((0..m)
        .map(|i| {
            let s: Rational = (0..m).map(|j| a.get(i, j) * q(tau.tau[j])).sum();
            s / q(tau.tau[i])
        })
        .collect())
}

/// Whether a link with linking matrix `a` admits type `tau`.
pub fn admits_type(a: &RationalMatrix, tau: &TypeVector) -> Result<bool> {
    Ok(type_quotients(a, tau)?.iter().all(|x| x.is_integer()))
}

/// The integer diagonal `D` with `(A + D)τ = 0`, if there is one.
pub fn framing_for_type(a: &RationalMatrix, tau: &TypeVector) -> Result<Option<Vec<BigInt>>> {
    let qs = type_quotients(a, tau)?;
    if qs.iter().any(|x| !x.is_integer()) {
        return Ok(None);
    }
    Ok(Some(qs.into_iter().map(|x| -x.to_integer()).collect()))
}

/// Congruence diagonalization `A = Pᵀ [D 0; 0 0] P` with `D` nonsingular
/// diagonal. Returns `(P, d)` with `d` the diagonal of `D`.
pub fn congruence_diagonalize(a: &RationalMatrix) -> Result<(RationalMatrix, Vec<Rational>)> {
    if !a.is_square() {
        return Err(Error::NotSquare(a.rows(), a.cols()));
    }
    if !a.is_symmetric() {
        return Err(Error::HypothesisViolated("matrix must be symmetric".into()));
    }
    let n = a.rows();
    // s = e·a·eᵀ throughout.
    let mut s = a.to_rows();
    let mut e = RationalMatrix::identity(n).to_rows();
    let mut active: Vec<usize> = (0..n).collect();
    let mut order = Vec::new();
    loop {
        let pivot = active
            .iter()
            .enumerate()
            .filter(|(_, &i)| !s[i][i].is_zero())
            .max_by(|x, y| s[*x.1][*x.1].abs().cmp(&s[*y.1][*y.1].abs()).then(y.0.cmp(&x.0)))
            .map(|(p, _)| p);
        let pos = match pivot {
            Some(p) => p,
            None => {
                // Zero diagonal: row_j += row_k makes s[j][j] = 2s[j][k] ≠ 0.
                let pair = active.iter().enumerate().find_map(|(x, &j)| {
                    active[x + 1..].iter().find(|&&k| !s[j][k].is_zero()).map(|&k| (x, j, k))
                });
                let Some((x, j, k)) = pair else { break };
                for c in 0..n {
                    let v = &s[j][c] + &s[k][c];
                    s[j][c] = v;
                    let v = &e[j][c] + &e[k][c];
                    e[j][c] = v;
                }
                for r in 0..n {
                    let v = &s[r][j] + &s[r][k];
                    s[r][j] = v;
                }
                x
            }
        };
        let i = active.remove(pos);
        order.push(i);
        let p = s[i][i].clone();
        for &j in &active {
            if s[j][i].is_zero() {
                continue;
            }
            let f = &s[j][i] / &p;
            for c in 0..n {
                let v = &s[j][c] - &f * &s[i][c];
                s[j][c] = v;
                let v = &e[j][c] - &f * &e[i][c];
                e[j][c] = v;
            }
            for r in 0..n {
                let v = &s[r][j] - &f * &s[r][i];
                s[r][j] = v;
            }
        }
    }
    let d: Vec<Rational> = order.iter().map(|&i| s[i][i].clone()).collect();
    order.extend(active);
    // F = Q·E with Q the permutation putting pivots first; P = F⁻ᵀ.
    let f = RationalMatrix::from_fn(n, n, |r, c| e[order[r]][c].clone());
    let p = f.inverse()?.expect("elimination matrix is invertible").transpose();
    Ok((p, d))
}

/// Integer data `(B, V)` with `V` nonsingular symmetric and `BᵀV⁻¹B = A`:
/// a surgery description of a framed link with linking matrix `A`.
///
/// `n` is the least common multiple of the denominators of `P` and
/// `D⁻¹`; `B = n[I 0]P` and `V = n²D⁻¹`.
pub fn realize_linking_matrix(a: &RationalMatrix) -> Result<(RationalMatrix, RationalMatrix)> {
    let (p, d) = congruence_diagonalize(a)?;
    let dinv: Vec<Rational> = d.iter().map(|x| x.recip()).collect();
    let all = p.to_rows().into_iter().flatten().collect::<Vec<_>>();
    let n = lcm_denominators(all.iter().chain(&dinv));
    realize_with_multiplier(&p, &dinv, &Rational::from_integer(n))
}

/// As [`realize_linking_matrix`] with a caller-chosen multiplier `n`.
/// Fails unless the result is integral.
pub fn realize_linking_matrix_with(a: &RationalMatrix, n: &BigInt) -> Result<(RationalMatrix, RationalMatrix)> {
    if !n.is_positive() {
        return Err(Error::HypothesisViolated("multiplier must be positive".into()));
    }
    let (p, d) = congruence_diagonalize(a)?;
    let dinv: Vec<Rational> = d.iter().map(|x| x.recip()).collect();
    let (b, v) = realize_with_multiplier(&p, &dinv, &Rational::from_integer(n.clone()))?;
    let integral = |m: &RationalMatrix| m.to_rows().iter().flatten().all(|x| x.is_integer());
    if !integral(&b) || !integral(&v) {
        return Err(Error::HypothesisViolated(format!("multiplier {n} does not clear denominators")));
    }
    Ok((b, v))
}

fn realize_with_multiplier(p: &RationalMatrix, dinv: &[Rational], n: &Rational) -> Result<(RationalMatrix, RationalMatrix)> {
    let k = dinv.len();
    let m = p.cols();
    let b = RationalMatrix::from_fn(k, m, |i, j| n * p.get(i, j));
    let n2 = n * n;
    let v = RationalMatrix::from_fn(k, k, |i, j| if i == j { &n2 * &dinv[i] } else { Rational::zero() });
    Ok((b, v))
}

/// `BᵀV⁻¹B`.
pub fn linking_matrix_of(b: &RationalMatrix, v: &RationalMatrix) -> Result<RationalMatrix> {
    if v.rows() == 0 {
        return Ok(RationalMatrix::zeros(b.cols(), b.cols()));
    }
    let vinv = v.inverse()?.ok_or_else(|| Error::HypothesisViolated("V is singular".into()))?;
    b.transpose().mul(&vinv)?.mul(b)
}

/// Whether every entry is an integer.
pub fn is_integral(m: &RationalMatrix) -> bool {
    m.to_rows().iter().flatten().all(|x| x.is_integer())
}

/// The diagonal matrix `-1/n` of `m` meridians of an unlink with
/// `n`-surgery on each component.
pub fn meridian_example(m: usize, n: i64) -> Result<RationalMatrix> {
    let d = FramedLinkDiagram::new((0..m).map(|i| (0..m).map(|j| if i == j { n } else { 0 }).collect()).collect())?;
    let curves: Vec<CurveClass> =
        (0..m).map(|i| CurveClass::new((0..m).map(|j| i64::from(i == j)).collect())).collect();
    induced_linking_matrix(&d, &curves, &RationalMatrix::zeros(m, m))
}
