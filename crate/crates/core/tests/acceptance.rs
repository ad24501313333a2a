//! Acceptance criteria. Runs as a plain binary so every verdict line is
//! printed, then exits nonzero if any criterion failed.

mod common;

use std::time::{Duration, Instant};

use num_integer::Integer;
use num_traits::Zero;
use rand::Rng;

use common::*;
use qsig::arith::{int, laurent_vanishes_at_root_of_unity, rat, root_of_unity_tangent, unit_circle_point, CirclePoint, GaussianRational, Rational};
use qsig::herm::signature_exact;
use qsig::linkclass::{csum_matrix_q1, independent_family, verify_combination, CsumStars};
use qsig::matrix::{GaussianMatrix, RationalMatrix};
use qsig::seifert::{
    alexander, branched_signature, reparam_matrix, sigma_at, signature_profile, Angle, Parity, SeifertMatrix,
    SignatureFunction,
};
use qsig::surgery::{admits_type, lk_sigma, meridian_example, CurveClass, FramedLinkDiagram, TypeVector};

type Outcome = Result<String, String>;

/// Prefix for a failure that is a counterexample to the stated claim itself
/// rather than a defect here. Printed as FAIL, but does not fail the run.
const KNOWN: &str = "known counterexample: ";

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let e = t.elapsed();
    check(e < limit, || format!("{what} took {e:?}, limit {limit:?}"))?;
    Ok(e)
}

/// `{nπ(k ± 1/6)} ∩ [0, 2π)` as circle points.
fn expected_support(n: i64) -> Vec<CirclePoint> {
    let mut pts = Vec::new();
    for k in 0..=2 {
        for s in [-1, 1] {
            // nπ(6k + s)/6 = 2π·n(6k + s)/12
            let a = n * (6 * k + s);
            if a > 0 && a < 12 {
                pts.push(root_of_unity_tangent(a, 12));
            }
        }
    }
    pts.sort();
    pts.dedup();
    pts
}

fn c1_breakpoints() -> Outcome {
    let cases = [
        (SeifertMatrix::from_ints(&[&[1, 1], &[0, 1]], Parity::Odd), 2),
        (
            SeifertMatrix::from_ints(&[&[1, 1, 0, 0], &[0, 0, 1, 0], &[0, -1, 0, 1], &[0, 0, 0, 1]], Parity::Even),
            1,
        ),
    ];
    let mut times = Vec::new();
    for (a, n) in cases {
        let t = Instant::now();
        let p = signature_profile(&a);
        let want = expected_support(n);
        check(p.breakpoints() == want.as_slice(), || format!("{} breakpoints: {:?}", a.parity(), p.breakpoints()))?;
        check(p.delta_support() == want, || format!("{} jump support differs", a.parity()))?;
        times.push(within(t, Duration::from_secs(1), "profile")?);
    }
    Ok(format!("odd {:?}, even {:?}", times[0], times[1]))
}

fn c2_reparametrization() -> Outcome {
    let t = Instant::now();
    let mut r = rng(2);
    let mut points = 0usize;
    let mut mismatches: Vec<String> = Vec::new();
    let mut done = 0;
    while done < 500 {
        let dim = r.gen_range(1..=4);
        let a = random_any_parity(&mut r, dim);
        let alpha = random_alpha(&mut r, 4);
        let n = alpha.n();
        if n == 0 && !a.has_nonsingular_form() {
            continue;
        }
        done += 1;
        let fa = SignatureFunction::new(&a);
        let b = reparam_matrix(&a, &alpha);
        let pb = signature_profile(&b);
        if n == 0 {
            check(pb.delta_vanishes(), || format!("n_α = 0 but δ ≠ 0 for {a} {:?}", alpha.signs()))?;
            continue;
        }
        // At θ = 2πk/n (θ ≠ 0) with ε = -1 the η step contributes
        // -2·sign(A+Aᵀ) and δ_A(2πk) is taken to be 0, while the actual
        // one-sided limits of σ_A at 0 give σ_A(0+) - σ_A(0-). These only
        // cancel when that jump equals 2·sign(A+Aᵀ), which can fail when
        // A+Aᵀ = A - εAᵀ is singular (allowed here because n ≠ 0).
        let sym_sign = signature_exact(&a.symmetrization().map(|x| GaussianRational::real(x.clone()))).map_err(|e| e.to_string())?.0;
        let jump_at_zero = fa.profile().raw_jump_at(&CirclePoint::zero());
        let mut pts: Vec<CirclePoint> = pb.breakpoints().iter().chain(fa.pullback(n).breakpoints()).cloned().collect();
        pts.sort();
        pts.dedup();
        for p in pts {
            let left = pb.delta_at_point(&p);
            let scaled = Angle::from_circle_point(&p).scaled(&int(n));
            let right = n.signum() * fa.delta_at(&scaled).map_err(|e| e.to_string())?;
            let on_lattice = a.eps() == -1 && (1..n.abs()).any(|k| root_of_unity_tangent(k, n.unsigned_abs()) == p);
            let corrected = if on_lattice { n.signum() * (jump_at_zero - 2 * sym_sign) } else { right };
            check(left == corrected, || format!("{a} α={:?} at {p}: {left} ≠ {corrected} (corrected)", alpha.signs()))?;
            if left != right {
                check(a.symmetrization().rank() < a.dim(), || format!("{a}: mismatch with nonsingular A+Aᵀ"))?;
                mismatches.push(format!("{}α={:?} at {p}: δ = {left}, theorem gives {right}", a.to_string().replace('\n', "; "), alpha.signs()));
            }
            points += 1;
        }
    }
    within(t, Duration::from_secs(60), "500 instances")?;
    if let Some(first) = mismatches.first() {
        return Err(format!(
            "{KNOWN}{} of {points} breakpoints disagree with the stated formula, all at θ = 2πk/n with ε = -1 and singular A - εAᵀ = A + Aᵀ; corrected formula holds everywhere. First: {first}",
            mismatches.len()
        ));
    }
    Ok(format!("500 instances, {points} breakpoints, {:?}", t.elapsed()))
}

fn c3_even_sign_formula() -> Outcome {
    let mut r = rng(3);
    let mut done = 0;
    while done < 200 {
        let dim = r.gen_range(1..=4);
        let a = random_seifert(&mut r, dim, Parity::Even);
        let alpha = random_alpha(&mut r, 4);
        let n = alpha.n();
        if n == 0 && !a.has_nonsingular_form() {
            continue;
        }
        done += 1;
        let sym = a.symmetrization();
        let sign_sym = float_symmetric_signature(&sym).ok_or("uncertified symmetric signature")?;
        let b = reparam_matrix(&a, &alpha);
        for _ in 0..20 {
            let u = random_tangent(&mut r);
            let phi = Angle::from_rational_tangent(&u);
            let left = sigma_at(&b, &phi).map_err(|e| e.to_string())?;
            let right = eta_oracle(n, phi.to_f64()) * sign_sym + sigma_at(&a, &phi.scaled(&int(n))).map_err(|e| e.to_string())?;
            check(left == right, || format!("{a} α={:?} u={u}: {left} ≠ {right}", alpha.signs()))?;
        }
    }
    Ok("200 instances × 20 angles".into())
}

fn c4_alexander() -> Outcome {
    let mut r = rng(4);
    let mut done = 0;
    while done < 200 {
        let dim = r.gen_range(1..=4);
        let a = random_any_parity(&mut r, dim);
        if !a.has_nonsingular_form() {
            continue;
        }
        done += 1;
        let alpha = random_alpha(&mut r, 4);
        let left = alexander(&reparam_matrix(&a, &alpha));
        let right = alexander(&a).substitute_power(alpha.n());
        check(left.equivalent(&right), || format!("{a} α={:?}: {left} vs {right}", alpha.signs()))?;
    }
    Ok("200 instances".into())
}

fn c5_linking() -> Outcome {
    for n in 2..=20 {
        for m in 1..=3 {
            let got = meridian_example(m, n).map_err(|e| e.to_string())?;
            let want = RationalMatrix::from_fn(m, m, |i, j| if i == j { rat(-1, n) } else { int(0) });
            check(got == want, || format!("n={n} m={m}: {got}"))?;
        }
    }
    let mut r = rng(5);
    let mut done = 0;
    while done < 500 {
        let k = r.gen_range(1..=4);
        let mut lk = vec![vec![0i64; k]; k];
        for i in 0..k {
            for j in i..k {
                let v = r.gen_range(-4..=4);
                lk[i][j] = v;
                lk[j][i] = v;
            }
        }
        let d = FramedLinkDiagram::new(lk.clone()).map_err(|e| e.to_string())?;
        if !d.is_rational_homology_sphere() {
            continue;
        }
        done += 1;
        let x = CurveClass::new((0..k).map(|_| r.gen_range(-3..=3)).collect());
        let y = CurveClass::new((0..k).map(|_| r.gen_range(-3..=3)).collect());
        let s = small_rational(&mut r);
        let xy = lk_sigma(&d, &x, &y, &s).map_err(|e| e.to_string())?;
        let yx = lk_sigma(&d, &y, &x, &s).map_err(|e| e.to_string())?;
        check(xy == yx, || format!("asymmetric: {xy} vs {yx}"))?;
        // Float oracle for lk_{S³} - xᵀA⁻¹y.
        let am = nalgebra::DMatrix::from_fn(k, k, |i, j| lk[i][j] as f64);
        let xv = nalgebra::DVector::from_iterator(k, x.lk_vector().iter().map(|&v| v as f64));
        let yv = nalgebra::DVector::from_iterator(k, y.lk_vector().iter().map(|&v| v as f64));
        let oracle = qsig::arith::to_f64(&s) - (xv.transpose() * am.try_inverse().ok_or("oracle inverse")? * yv)[0];
        check((qsig::arith::to_f64(&xy) - oracle).abs() < 1e-8, || format!("{xy} vs oracle {oracle}"))?;
    }
    Ok("n = 2..20 exact, 500 random diagrams symmetric".into())
}

fn coprime_types(bound: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for x in -bound..=bound {
        for y in -bound..=bound {
            if x != 0 && y != 0 && x.gcd(&y) == 1 {
                out.push((x, y));
            }
        }
    }
    out
}

fn tv(v: &[i64]) -> TypeVector {
    TypeVector::new(v.to_vec()).unwrap()
}

fn c6_admitted_types() -> Outcome {
    let mut r = rng(6);
    // Zero linking matrix: every type.
    for m in 1..=3 {
        let z = RationalMatrix::zeros(m, m);
        for _ in 0..20 {
            let t: Vec<i64> = (0..m).map(|_| r.gen_range(1..=9) * if r.gen_bool(0.5) { 1 } else { -1 }).collect();
            if let Ok(t) = TypeVector::new(t) {
                check(admits_type(&z, &t).unwrap(), || format!("zero matrix rejects {:?}", t.entries()))?;
            }
        }
    }
    check(admits_type(&RationalMatrix::zeros(2, 2), &tv(&[2, 3])).unwrap(), || "τ = (2,3)".into())?;
    // Integral linking matrices admit (1, …, 1).
    for _ in 0..50 {
        let m = r.gen_range(1..=4);
        let upper = random_rational_matrix(&mut r, m, m).map(|x| x.round());
        let a = RationalMatrix::from_fn(m, m, |i, j| upper.get(i.min(j), i.max(j)).clone());
        check(admits_type(&a, &TypeVector::ones(m)).unwrap(), || format!("integral {a} rejects ones"))?;
    }
    // Meridians of an unlink after n-surgery admit no type.
    for n in 2..=6 {
        let a = meridian_example(2, n).unwrap();
        for (x, y) in coprime_types(8) {
            check(!admits_type(&a, &tv(&[x, y])).unwrap(), || format!("n={n} admits ({x},{y})"))?;
        }
    }
    // Only ±τ. With k = (y/x - b/a)/3 and l = (x/y - a/b)/3 integers,
    // writing l = am forces a(3mb + 1) | mb², and gcd(3mb + 1, mb) = 1
    // gives 3mb + 1 = ±1, so m = 0 and (x, y) = ±(a, b).
    let mut done = 0;
    while done < 50 {
        let a = r.gen_range(-12i64..=12);
        let b = r.gen_range(-12i64..=12);
        if a == 0 || b == 0 || a.gcd(&b) != 1 {
            continue;
        }
        done += 1;
        let third = rat(1, 3);
        let lk = RationalMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => rat(-b, 3 * a),
            (1, 1) => rat(-a, 3 * b),
            _ => third.clone(),
        });
        for (x, y) in coprime_types(3 * a.abs().max(b.abs()) + 3) {
            let admitted = admits_type(&lk, &tv(&[x, y])).unwrap();
            let expected = (x, y) == (a, b) || (x, y) == (-a, -b);
            check(admitted == expected, || format!("τ=({a},{b}): ({x},{y}) admitted={admitted}"))?;
        }
        let (bm, vm) = qsig::surgery::realize_linking_matrix(&lk).map_err(|e| e.to_string())?;
        check(qsig::surgery::linking_matrix_of(&bm, &vm).unwrap() == lk, || "realization".into())?;
    }
    Ok("examples 1-4, 50 random (a, b)".into())
}

fn c7_connected_sum() -> Outcome {
    let t = Instant::now();
    let mut r = rng(7);
    for i in 0..100 {
        let c = (i % 4) as i64 + 1;
        let (d1, d2) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let a1 = random_seifert(&mut r, d1, Parity::Odd);
        let a2 = random_seifert(&mut r, d2, Parity::Odd);
        let k = (c - 1) as usize;
        let stars = CsumStars {
            top: random_rational_matrix(&mut r, d1 + d2, k),
            left: random_rational_matrix(&mut r, k, d1 + d2),
            center: random_rational_matrix(&mut r, k, k),
        };
        let m = csum_matrix_q1(&a1, &a2, c, &stars).map_err(|e| e.to_string())?;
        let got = signature_profile(&m);
        let want = signature_profile(&a1).sum(&signature_profile(&a2)).map_err(|e| e.to_string())?;
        check(got.same_function(&want), || format!("c={c} {a1} {a2}: {:?} vs {:?}", got.arc_values(), want.arc_values()))?;
    }
    within(t, Duration::from_secs(120), "100 instances")?;
    Ok(format!("100 instances, {:?}", t.elapsed()))
}

fn c8_independence() -> Outcome {
    let primes = [11u64, 13];
    let mut vectors = 0;
    for parity in [Parity::Odd, Parity::Even] {
        let (knots, report) = independent_family(parity, &primes).map_err(|e| e.to_string())?;
        check(report.all_pass(), || format!("{parity}: {report:?}"))?;
        for a0 in -2..=2 {
            for a1 in -2..=2 {
                if a0 == 0 && a1 == 0 {
                    continue;
                }
                let rep = verify_combination(&knots, &primes, &[a0, a1]).map_err(|e| e.to_string())?;
                check(rep.all_pass(), || format!("{parity} a=({a0},{a1}): {:?}", rep.rows))?;
                vectors += 1;
            }
        }
    }
    Ok(format!("{vectors} coefficient vectors over both parities"))
}

/// Exact `σ_A` at a rational tangent, reading the profile off the
/// candidate's zero set.
fn exact_sigma(f: &SignatureFunction, u: &Rational) -> Result<i64, String> {
    let p = CirclePoint::from_rational_tangent(u);
    let prof = f.profile();
    let on_candidate = prof.candidate().eval(&unit_circle_point(u)).is_zero();
    match prof.value_at(&p) {
        Some(v) if !on_candidate => Ok(v),
        _ => f.sigma_at(&Angle::from_rational_tangent(u)).map_err(|e| e.to_string()),
    }
}

fn c9_float_oracle() -> Outcome {
    let mut r = rng(9);
    let mut samples = 0;
    for _ in 0..300 {
        let dim = r.gen_range(1..=5);
        let a = random_any_parity(&mut r, dim);
        let f = SignatureFunction::new(&a);
        for j in 0..1000 {
            let theta = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / 1000.0;
            let u = Rational::new(((theta / 2.0).tan() * 1000.0).round().to_string().parse().unwrap(), 1000.into());
            let exact = exact_sigma(&f, &u)?;
            let rank = exact_rank_at(&a, &unit_circle_point(&u));
            let th = 2.0 * qsig::arith::to_f64(&u).atan();
            let oracle = certified_float_signature(&float_form(&a, th), rank)
                .ok_or_else(|| format!("uncertified oracle for {a} at u={u}"))?;
            check(exact == oracle, || format!("{a} at u={u}: exact {exact}, oracle {oracle}"))?;
            samples += 1;
        }
    }
    Ok(format!("{samples} samples, 0 disagreements"))
}

fn c10_branched() -> Outcome {
    let mut r = rng(10);
    let mut count = 0;
    for _ in 0..50 {
        let dim = r.gen_range(1..=4);
        let a = random_any_parity(&mut r, dim);
        let f = SignatureFunction::new(&a);
        let prof = f.profile();
        for d in 1..=24u64 {
            for k in 0..d as i64 {
                let got = branched_signature(&a, k, d).map_err(|e| e.to_string())?;
                let p = root_of_unity_tangent(k, d);
                let want = if k == 0 {
                    0
                } else if laurent_vanishes_at_root_of_unity(prof.candidate(), k, d) {
                    match &p {
                        CirclePoint::Pi => {
                            let h: GaussianMatrix = a.hermitian_form(&GaussianRational::real(int(-1)));
                            signature_exact(&h).map_err(|e| e.to_string())?.0
                        }
                        CirclePoint::Tangent(u) => sigma_at(&a, &Angle::from_tangent(u.clone())).map_err(|e| e.to_string())?,
                    }
                } else {
                    prof.value_at(&p).ok_or("breakpoint off the candidate")?
                };
                check(got == want, || format!("{a} at 2π·{k}/{d}: cyclotomic {got}, profile {want}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} evaluations"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("breakpoint reproduction", c1_breakpoints),
        ("reparametrization theorem", c2_reparametrization),
        ("sign formula, even parity", c3_even_sign_formula),
        ("Alexander reparametrization", c4_alexander),
        ("linking formula", c5_linking),
        ("admitted types", c6_admitted_types),
        ("connected sum q=1", c7_connected_sum),
        ("independence claims", c8_independence),
        ("float oracle cross-validation", c9_float_oracle),
        ("branched-cover signatures", c10_branched),
    ];
    let filter = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let id = format!("{}", i + 1);
        if filter.as_ref().is_some_and(|s| *s != id) {
            continue;
        }
        let t = Instant::now();
        match f() {
            Ok(detail) => println!("criterion {id:>2} {name}: PASS ({detail}; {:.2?})", t.elapsed()),
            Err(e) => {
                if !e.starts_with(KNOWN) {
                    failed += 1;
                }
                println!("criterion {id:>2} {name}: FAIL ({e})");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
