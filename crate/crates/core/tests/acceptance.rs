//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::time::Instant;

use num_traits::{One, Zero};
use venant::calculus::{curl, curl_curl, curl_curl_direct, div_sym, grad, sym_grad};
use venant::complex::chain::{
    derive_elasticity, elasticity_complex, grad_curl_div_complex, verify_complex, ComplexReport,
};
use venant::complex::lambda2::{interior, lambda2_split, wedge3, SkewMat4, Vec4};
use venant::complex::ops::{matrix_of, OperatorId};
use venant::connection::{normalize_rigid, saint_venant_reconstruct, w_curl, w_div, w_grad};
use venant::poly::{int, Monomial, Poly3, Rational};
use venant::random::FieldRng;
use venant::riemannian::{linearized_einstein, pointwise_curvature, PolyMetric};
use venant::{Error, SymField, VecField};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn identity_suite() -> Outcome {
    let mut rng = FieldRng::new(20_240_101);
    let trials = 100;
    for t in 0..trials {
        let f = rng.scalar(5);
        ensure(curl(&grad(&f)).is_zero(), || format!("curl grad != 0 at trial {t}"))?;
        let x = rng.vec(5);
        let cc = curl_curl(&sym_grad(&x)).map_err(|e| e.to_string())?;
        ensure(cc.is_zero(), || format!("curl_curl sym_grad != 0 at trial {t}: {cc}"))?;
        let s = rng.sym(5);
        let cc = curl_curl(&s).map_err(|e| e.to_string())?;
        ensure(cc == curl_curl_direct(&s), || format!("curl_curl forms differ at trial {t}"))?;
        ensure(div_sym(&cc).is_zero(), || format!("div_sym curl_curl != 0 at trial {t}"))?;
        let w = rng.w(5);
        ensure(w_curl(&w_grad(&w)).is_zero(), || format!("w_curl w_grad != 0 at trial {t}"))?;
        let form = rng.wform(5);
        ensure(w_div(&w_curl(&form)).is_zero(), || format!("w_div w_curl != 0 at trial {t}"))?;
    }
    Ok(format!("6 identities x {trials} trials, degree 5, all residuals 0"))
}

fn reconstruction() -> Outcome {
    let mut rng = FieldRng::new(7_000_001);
    for t in 0..50 {
        let x = rng.vec(5);
        let s = sym_grad(&x);
        let r = saint_venant_reconstruct(&s).map_err(|e| format!("trial {t}: {e}"))?;
        ensure(sym_grad(&r) == s, || format!("sym_grad of reconstruction differs at trial {t}"))?;
        ensure(r == normalize_rigid(&x), || format!("normalized reconstruction differs at trial {t}"))?;
    }
    let mut bad = SymField::zero();
    bad.set(0, 0, Poly3::term(Monomial([0, 2, 0]), int(1)));
    match saint_venant_reconstruct(&bad) {
        Err(Error::SaintVenant { residual }) => {
            ensure(residual.get(2, 2) == &Poly3::int(2), || format!("residual (3,3) = {}", residual.get(2, 2)))?
        }
        other => return Err(format!("diag(x2^2, 0, 0) not rejected: {other:?}")),
    }
    Ok("50 round trips exact; diag(x2^2,0,0) rejected with residual (3,3) = 2".into())
}

fn linearization() -> Outcome {
    let mut rng = FieldRng::new(31_415);
    for t in 0..100 {
        let s = rng.sym(4);
        let g = linearized_einstein(&s).map_err(|e| e.to_string())?;
        let cc = curl_curl(&s).map_err(|e| e.to_string())?;
        ensure(g == cc, || format!("trial {t}: difference {}", &g - &cc))?;
    }
    Ok("100 random strains of degree 4, exact equality".into())
}

fn x(i: usize) -> Poly3 {
    Poly3::var(i)
}

fn mono(e: [u32; 3]) -> Poly3 {
    Poly3::term(Monomial(e), int(1))
}

fn flatness() -> Outcome {
    let maps: Vec<(&str, VecField)> = vec![
        ("(x1 + x2^2, x2, x3)", VecField([&x(0) + &mono([0, 2, 0]), x(1), x(2)])),
        (
            "(x1, x2 + x1 x3, x3 + x1^2)",
            VecField([x(0), &x(1) + &mono([1, 0, 1]), &x(2) + &mono([2, 0, 0])]),
        ),
        (
            "(x1 + x2 x3, x2 + x3^2, x3)",
            VecField([&x(0) + &mono([0, 1, 1]), &x(1) + &mono([0, 0, 2]), x(2)]),
        ),
        (
            "(x1 + x2, x2 + x3^2, x3 + x1^2)",
            VecField([&x(0) + &x(1), &x(1) + &mono([0, 0, 2]), &x(2) + &mono([2, 0, 0])]),
        ),
        (
            "(x1^3 + x1, x2 + x1 x3^2, x3 - x1 x2)",
            VecField([
                &mono([3, 0, 0]) + &x(0),
                &x(1) + &mono([1, 0, 2]),
                &x(2) - &mono([1, 1, 0]),
            ]),
        ),
    ];
    let mut rng = FieldRng::new(271_828);
    let mut evaluated = 0;
    let mut skipped = 0;
    for (name, map) in &maps {
        let metric = PolyMetric::pullback(map);
        for _ in 0..20 {
            let p: [Rational; 3] = std::array::from_fn(|_| rng.rational(3, 7));
            match pointwise_curvature(&metric, &p) {
                Ok(c) => {
                    evaluated += 1;
                    let zero = c.ricci.iter().flatten().all(Zero::is_zero);
                    ensure(zero, || format!("{name}: nonzero Ricci at {p:?}"))?;
                }
                Err(Error::SingularMetric) => skipped += 1,
                Err(e) => return Err(format!("{name}: {e}")),
            }
        }
    }
    ensure(evaluated >= 90, || format!("only {evaluated} points evaluated"))?;
    Ok(format!("5 maps, {evaluated} points with Ricci = 0, {skipped} singular points skipped"))
}

/// Independent dense Gauss-Jordan rank over the rationals.
fn dense_rank(mut m: Vec<Vec<Rational>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = Rational::one() / &m[rank][c];
        let pivot: Vec<Rational> = m[rank].iter().map(|v| v * &inv).collect();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (a, b) in row.iter_mut().zip(&pivot) {
                    if !b.is_zero() {
                        *a -= &f * b;
                    }
                }
            }
        }
        m[rank] = pivot;
        rank += 1;
    }
    rank
}

fn kernels() -> Outcome {
    let mut dims = Vec::new();
    for op in [OperatorId::SymGrad, OperatorId::WGrad] {
        for d in 1..=5 {
            let m = matrix_of(op, d).map_err(|e| e.to_string())?;
            let k = m.kernel_dim();
            let oracle = m.domain.dim() - dense_rank(m.entries.to_dense());
            ensure(k == 6 && oracle == 6, || format!("{op} d={d}: kernel {k}, dense oracle {oracle}"))?;
            dims.push(k);
        }
    }
    Ok(format!("sym_grad and w_grad kernels for d = 1..5: {dims:?}"))
}

fn exact(r: &ComplexReport) -> Result<(), String> {
    ensure(r.compositions_vanish(), || format!("{}: compositions {:?}", r.complex, r.composition_residuals))?;
    ensure(r.is_exact(), || format!("{}: defects {:?}", r.complex, r.interior_defects()))
}

fn exactness() -> Outcome {
    let mut ranks = Vec::new();
    for d in 3..=5 {
        for c in [elasticity_complex(d), grad_curl_div_complex(d)] {
            let r = verify_complex(&c.map_err(|e| e.to_string())?);
            exact(&r)?;
            ranks.push(r.ranks);
        }
    }
    Ok(format!("elasticity and grad-curl-div, d = 3..5, interior defects 0, ranks {ranks:?}"))
}

fn chase() -> Outcome {
    let d = derive_elasticity(3).map_err(|e| e.to_string())?;
    let halfway = [["R3", "R3"], ["R3", "S2R3"], ["S2R3", "R3"], ["R3", "R3"]];
    ensure(d.halfway_shapes == halfway, || format!("halfway shapes {:?}", d.halfway_shapes))?;
    let reduced = [["R3"], ["S2R3"], ["S2R3"], ["R3"]];
    ensure(d.reduced_shapes == reduced, || format!("reduced shapes {:?}", d.reduced_shapes))?;
    let pinned = [Rational::one(), Rational::one(), Rational::one()];
    let constants = d.constants();
    ensure(constants.iter().zip(&pinned).all(|(c, p)| c.as_ref() == Some(p)), || {
        format!("proportionality constants {constants:?}")
    })?;
    for r in [&d.w_report, &d.halfway_report, &d.reduced_report, &d.elasticity_report] {
        exact(r)?;
    }
    let before = d.w_report.interior_defects();
    for r in [&d.halfway_report, &d.reduced_report] {
        ensure(r.interior_defects() == before, || format!("{} defects changed", r.complex))?;
    }
    ensure(d.reduced_report.ranks == d.elasticity_report.ranks, || "ranks differ".into())?;
    let dims = |r: &ComplexReport| r.slots.iter().map(|s| s.dim).collect::<Vec<_>>();
    ensure(dims(&d.reduced_report) == dims(&d.elasticity_report), || "dims differ".into())?;
    Ok("halfway and reduced shapes match, constants (1, 1, 1), defects preserved".into())
}

fn lambda2() -> Outcome {
    let mut rng = FieldRng::new(4_444);
    for t in 0..100 {
        let v: Vec4 = loop {
            let v: Vec4 = std::array::from_fn(|_| rng.rational(4, 5));
            if v.iter().any(|c| !c.is_zero()) {
                break v;
            }
        };
        let w = SkewMat4::from_upper(std::array::from_fn(|_| rng.rational(4, 5)));
        let (alpha, beta) = lambda2_split(&v, &w).map_err(|e| e.to_string())?;
        ensure(alpha.add(&beta) == w, || format!("recombination fails at pair {t}"))?;
        ensure(interior(&v, &beta).iter().all(Zero::is_zero), || format!("v _| beta != 0 at pair {t}"))?;
        ensure(wedge3(&v, &alpha).iter().all(Zero::is_zero), || format!("v ^ alpha != 0 at pair {t}"))?;
        let flipped = lambda2_split(&v.clone().map(|c| -c), &w).map_err(|e| e.to_string())?;
        ensure(flipped == (alpha, beta), || format!("sign of v matters at pair {t}"))?;
    }
    Ok("100 random pairs: recombination, defining conditions and v -> -v invariance exact".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("identity suite", identity_suite),
        ("Saint-Venant reconstruction", reconstruction),
        ("linearized Einstein == curl curl", linearization),
        ("flatness of pullback metrics", flatness),
        ("kernel dimensions", kernels),
        ("exactness", exactness),
        ("diagram chase", chase),
        ("Lambda^2 splitting", lambda2),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let slow = secs > 60.0;
        match outcome {
            Ok(msg) if !slow => println!("PASS {}: {name}: {msg} ({secs:.2}s)", k + 1),
            Ok(msg) => {
                failed += 1;
                println!("FAIL {}: {name}: {msg} but took {secs:.2}s", k + 1);
            }
            Err(msg) => {
                failed += 1;
                println!("FAIL {}: {name}: {msg} ({secs:.2}s)", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
