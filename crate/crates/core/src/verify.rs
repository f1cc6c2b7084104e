//! Identity suites: every invariant of the calculus, connection, riemannian
//! and complex modules, run on seeded random inputs with exact residuals.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::Zero;
use serde::Serialize;

use crate::calculus::{
    curl, curl_col, curl_curl, curl_curl_direct, curl_row, div_sym, grad, homotopy_antiderivative,
    sym_grad,
};
use crate::complex::chain::{
    derive_elasticity, elasticity_complex, grad_curl_div_complex, verify_complex, w_split_complex,
    ComplexReport,
};
use crate::complex::lambda2::{interior, lambda2_split, wedge3, SkewMat4, Vec4};
use crate::complex::ops::{matrix_of, mat_comps, sym_comps, vec_comps, OperatorId};
use crate::connection::{
    normalize_rigid, saint_venant_reconstruct, strain_one_form, w_curl, w_div, w_grad, WField,
    WOneForm,
};
use crate::error::{Error, Result};
use crate::poly::{int, Poly3, Rational};
use crate::random::FieldRng;
use crate::riemannian::{
    bianchi_check, christoffel_jet, linearized_einstein, pointwise_curvature, ricci_jet,
    MetricJet, PolyMetric,
};
use crate::tensor::{delta, levi_civita, VecField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Calculus,
    Connection,
    Riemannian,
    Complex,
    All,
}

impl Suite {
    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::Calculus => "calculus",
            Suite::Connection => "connection",
            Suite::Riemannian => "riemannian",
            Suite::Complex => "complex",
            Suite::All => "all",
        }
    }

    fn members(&self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Calculus, Suite::Connection, Suite::Riemannian, Suite::Complex],
            s => vec![*s],
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [Suite::Calculus, Suite::Connection, Suite::Riemannian, Suite::Complex, Suite::All]
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::Input(format!("unknown suite `{s}`")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub degree: u32,
    pub trials: u32,
    pub seed: u64,
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.degree < 1 {
            return Err(Error::Input("degree must be at least 1".into()));
        }
        if self.trials < 1 {
            return Err(Error::Input("trials must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub suite: Suite,
    pub status: Status,
    /// `"0"` on success, otherwise the first nonzero residual or defect.
    pub residual: String,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub config: SuiteConfig,
    pub passed: bool,
    pub records: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn record(&self, name: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.config;
        writeln!(
            f,
            "suite {} degree {} trials {} seed {}",
            c.suite, c.degree, c.trials, c.seed
        )?;
        let width = self.records.iter().map(|r| r.name.len()).max().unwrap_or(0);
        for r in &self.records {
            let status = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            writeln!(
                f,
                "{status}  {:<11} {:<width$}  residual {}  ({} ms)",
                r.suite.as_str(),
                r.name,
                r.residual,
                r.elapsed_ms
            )?;
        }
        let failed = self.failures().count();
        write!(
            f,
            "{}: {} checks, {} failed",
            if self.passed { "PASS" } else { "FAIL" },
            self.records.len(),
            failed
        )
    }
}

/// Collects the first nonzero residual of a check.
struct Probe {
    corrupt: bool,
    residual: Option<String>,
}

impl Probe {
    fn zero(&mut self, comps: Vec<Poly3>) {
        let mut comps = comps;
        if std::mem::take(&mut self.corrupt) {
            comps[0] += Poly3::one();
        }
        if self.residual.is_none() && comps.iter().any(|p| !p.is_zero()) {
            let shown: Vec<String> = comps.iter().map(|p| p.to_string()).collect();
            self.residual = Some(format!("({})", shown.join(", ")));
        }
    }

    fn equal(&mut self, a: Vec<Poly3>, b: Vec<Poly3>) {
        self.zero(a.iter().zip(&b).map(|(x, y)| x - y).collect());
    }

    fn count(&mut self, got: i64, want: i64) {
        let got = if std::mem::take(&mut self.corrupt) { got + 1 } else { got };
        if self.residual.is_none() && got != want {
            self.residual = Some((got - want).to_string());
        }
    }

    fn rational(&mut self, r: Rational) {
        self.zero(vec![Poly3::constant(r)]);
    }
}

type CheckFn = fn(&mut Probe, &mut FieldRng, u32, u32) -> Result<()>;

fn checks(suite: Suite) -> Vec<(&'static str, CheckFn)> {
    match suite {
        Suite::Calculus => vec![
            ("partials commute", partials_commute),
            ("leibniz rule", leibniz),
            ("epsilon contraction identity", epsilon_identity),
            ("curl grad == 0", curl_grad),
            ("curl_curl sym_grad == 0", curl_curl_sym_grad),
            ("curl_curl == curl_curl_direct", curl_curl_forms_agree),
            ("div_sym curl_curl == 0", div_sym_curl_curl),
            ("grad homotopy_antiderivative == id", homotopy_inverts_grad),
            ("curl_curl preserves symmetry", curl_curl_symmetric),
        ],
        Suite::Connection => vec![
            ("w_curl w_grad == 0", w_curl_w_grad),
            ("w_div w_curl == 0", w_div_w_curl),
            ("w_grad kernel dim == 6", w_grad_kernel),
            ("strain one-form curl slot 1 == 0", strain_slot_one),
            ("strain one-form curl slot 2 == curl_curl", strain_slot_two),
            ("sym_grad reconstruct == sym_grad", reconstruct_round_trip),
            ("reconstruct - X is rigid", reconstruct_rigid),
        ],
        Suite::Riemannian => vec![
            ("linearized_einstein == curl_curl", linearization),
            ("christoffel zeroth order == 0", christoffel_background),
            ("einstein == 2 ricci - scalar g", einstein_consistency),
            ("bianchi_check == 0", bianchi),
            ("pullback metric ricci == 0", pullback_flat),
        ],
        Suite::Complex => vec![
            ("matrix action == operator", representation),
            ("compositions == 0", compositions),
            ("sym_grad kernel dim == 6", sym_grad_kernels),
            ("w_grad kernel dims == 6", w_grad_kernels),
            ("elasticity complex exact", elasticity_exact),
            ("grad-curl-div complex exact", gcd_exact),
            ("schur_reduce preserves defects", reduction_defects),
            ("lambda2 split", lambda2),
        ],
        Suite::All => Vec::new(),
    }
}

/// Runs the configured suites. `fault` names a check whose first residual is
/// perturbed, to exercise the failure path.
pub fn run_suite(config: &SuiteConfig, fault: Option<&str>) -> Result<VerificationReport> {
    config.validate()?;
    let mut records = Vec::new();
    for suite in config.suite.members() {
        for (k, (name, check)) in checks(suite).into_iter().enumerate() {
            let mut rng = FieldRng::new(config.seed.wrapping_add(1000 * suite as u64 + k as u64));
            let mut probe = Probe {
                corrupt: fault == Some(name),
                residual: None,
            };
            let start = Instant::now();
            let outcome = check(&mut probe, &mut rng, config.degree, config.trials);
            let elapsed_ms = start.elapsed().as_millis() as u64;
            let residual = match outcome {
                Err(e) => Some(format!("error: {e}")),
                Ok(()) => probe.residual,
            };
            records.push(CheckRecord {
                name: name.to_string(),
                suite,
                status: if residual.is_none() { Status::Pass } else { Status::Fail },
                residual: residual.unwrap_or_else(|| "0".into()),
                elapsed_ms,
            });
        }
    }
    records.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(VerificationReport {
        config: config.clone(),
        passed: records.iter().all(|r| r.status == Status::Pass),
        records,
    })
}

/// Names of all checks in a suite.
pub fn check_names(suite: Suite) -> Vec<&'static str> {
    suite
        .members()
        .into_iter()
        .flat_map(|s| checks(s).into_iter().map(|(n, _)| n))
        .collect()
}

fn partials_commute(p: &mut Probe, rng: &mut FieldRng, d: u32, n: u32) -> Result<()> {
    for _ in 0..n {
        let f = rng.scalar(d);
        let r = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| &f.derivative(i).derivative(j) - &f.derivative(j).derivative(i))
            .collect();
        p.zero(r);
    }
    Ok(())
}

fn leibniz(p: &mut Probe, rng: &mut FieldRng, d: u32, n: u32) -> Result<()> {
    for _ in 0..n {
        let a = rng.scalar(d);
        let b = rng.scalar(d);
        let ab = &a * &b;
        let r = (0..3)
            .map(|i| &ab.derivative(i) - &(&(&a.derivative(i) * &b) + &(&a * &b.derivative(i))))
            .collect();
        p.zero(r);
    }
    Ok(())
}

fn epsilon_identity(p: &mut Probe, _: &mut FieldRng, _: u32, _: u32) -> Result<()> {
    for a in 0..3 {
        for b in 0..3 {
            let xi = |k: usize, m: usize| i64::from(k == a && m == b);
            let mut r = Vec::new();
            for l in 0..3 {
                for i in 0..3 {
                    let mut lhs = 0;
                    for j in 0..3 {
                        for k in 0..3 {
                            for m in 0..3 {
                                lhs += levi_civita(i, j, k) * levi_civita(j, l, m) * xi(k, m);
                            }
                        }
                    }
                    let trace: i64 = (0..3).map(|m| xi(m, m)).sum();
                    r.push(Poly3::int(lhs - (xi(l, i) - delta(i, l) * trace)));
                }
            }
            p.zero(r);
        }
    }
    Ok(())
}

fn curl_grad(p: &mut Probe, rng: &mut FieldRng, d: u32, n: u32) -> Result<()> {
    for _ in 0..n {
        p.zero(vec_comps(&curl(&grad(&rng.scalar(d)))));
    }
    Ok(())
}

fn curl_curl_sym_grad(p: &mut Probe, rng: &mut FieldRng, d: u32, n: u32) -> Result<()> {
    for _ in 0..n {
        p.zero(sym_comps(&curl_curl(&sym_grad(&rng.vec(d)))?));
    }
    Ok(())
}

fn curl_curl_forms_agree(p: &mut Probe, rng: &mut FieldRng, d: u32, n: u32) -> Result<()> {
    for _ in 0..n {
        let s = rng.sym(d);
        p.equal(sym_comps(&curl_curl(&s)?), sym_comps(&curl_curl_direct(&s)));
    }
    Ok(())
}

fn div_sym_curl_curl(p: &mut Probe, rng: &mut FieldRng, d: u32, n: u32) -> Result<()> {
    for _ in 0..n {
        p.zero(vec_comps(&div_sym(&curl_curl(&rng.sym(d))?)));
    }
    Ok(())
}

fn homotopy_inverts_grad(p: &mut Probe, rng: &mut FieldRng, d: u32, n: u32) -> Result<()> {
    for _ in 0..n {
        let x = grad(&rng.scalar(d + 1));
        p.equal(vec_comps(&grad(&homotopy_antiderivative(&x)?)), vec_comps(&x));
    }
    Ok(())
}

fn curl_curl_symmetric(p: &mut Probe, rng: &mut FieldRng, d: u32, n: u32) -> Result<()> {
    for _ in 0..n {
        let m = curl_col(&curl_row(&rng.sym(d).to_matrix()));
        p.equal(mat_comps(&m), mat_comps(&m.transpose()));
    }
    Ok(())
}

fn wform_comps(f: &WOneForm) -> Vec<Poly3> {
    let mut v = mat_comps(&f.sigma);
    v.extend(mat_comps(&f.xi));
    v
}

fn w_comps(w: &WField) -> Vec<Poly3> {
    let mut v = vec_comps(&w.x);
    v.extend(vec_comps(&w.y));
    v
}

fn w_curl_w_grad(p: &mut Probe, rng: &mut FieldRng, d: u32, n: u32) -> Result<()> {
    for _ in 0..n {
        p.zero(wform_comps(&w_curl(&w_grad(&rng.w(d)))));
    }
    Ok(())
}

fn w_div_w_curl(p: &mut Probe, rng: &mut FieldRng, d: u32, n: u32) -> Result<()> {
    for _ in 0..n {
        p.zero(w_comps(&w_div(&w_curl(&rng.wform(d)))));
    }
    Ok(())
}

fn w_grad_kernel(p: &mut Probe, _: &mut FieldRng, d: u32, _: u32) -> Result<()> {
    p.count(matrix_of(OperatorId::WGrad, d as i64)?.kernel_dim() as i64, 6);
    Ok(())
}

fn strain_slot_one(p: &mut Probe, rng: &mut FieldRng, d: u32, n: u32) -> Result<()> {
    for _ in 0..n {
        p.zero(mat_comps(&w_curl(&strain_one_form(&rng.sym(d))).sigma));
    }
    Ok(())
}

fn strain_slot_two(p: &mut Probe, rng: &mut FieldRng, d: u32, n: u32) -> Result<()> {
    for _ in 0..n {
        let s = rng.sym(d);
        let xi = w_curl(&strain_one_form(&s)).xi;
        p.equal(mat_comps(&xi), mat_comps(&curl_curl(&s)?.to_matrix()));
    }
    Ok(())
}

fn reconstruct_round_trip(p: &mut Probe, rng: &mut FieldRng, d: u32, n: u32) -> Result<()> {
    for _ in 0..n {
        let s = sym_grad(&rng.vec(d));
        p.equal(sym_comps(&sym_grad(&saint_venant_reconstruct(&s)?)), sym_comps(&s));
    }
    Ok(())
}

fn reconstruct_rigid(p: &mut Probe, rng: &mut FieldRng, d: u32, n: u32) -> Result<()> {
    for _ in 0..n {
        let x = rng.vec(d);
        let diff = &x - &saint_venant_reconstruct(&sym_grad(&x))?;
        // a rigid motion is removed entirely by normalization
        p.zero(vec_comps(&normalize_rigid(&diff)));
    }
    Ok(())
}

fn linearization(p: &mut Probe, rng: &mut FieldRng, d: u32, n: u32) -> Result<()> {
    for _ in 0..n {
        let s = rng.sym(d);
        p.equal(sym_comps(&linearized_einstein(&s)?), sym_comps(&curl_curl(&s)?));
    }
    Ok(())
}

fn christoffel_background(p: &mut Probe, rng: &mut FieldRng, d: u32, n: u32) -> Result<()> {
    for _ in 0..n {
        let ch = christoffel_jet(&MetricJet::from_strain(&rng.sym(d)))?;
        p.zero(ch.gamma.iter().flatten().flatten().map(|j| j.p0.clone()).collect());
    }
    Ok(())
}

fn einstein_consistency(p: &mut Probe, rng: &mut FieldRng, d: u32, n: u32) -> Result<()> {
    for _ in 0..n {
        let g = MetricJet::from_strain(&rng.sym(d));
        let c = ricci_jet(&g)?;
        let mut r = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                let want = &c.ricci[i][j].scale(&int(2)) - &(&c.scalar * &g.entries()[i][j]);
                let diff = &want - &c.einstein[i][j];
                r.push(diff.p0);
                r.push(diff.p1);
            }
        }
        p.zero(r);
    }
    Ok(())
}

fn bianchi(p: &mut Probe, rng: &mut FieldRng, d: u32, n: u32) -> Result<()> {
    for _ in 0..n {
        p.zero(vec_comps(&bianchi_check(&rng.sym(d))?));
    }
    Ok(())
}

/// Triangular maps `(x1 + f(x2, x3), x2 + g(x3), x3)` have unit Jacobian
/// determinant, so their pullback metrics are invertible everywhere.
fn pullback_flat(p: &mut Probe, rng: &mut FieldRng, d: u32, n: u32) -> Result<()> {
    let deg = d.max(2);
    for _ in 0..n {
        let drop_x1 = |q: Poly3| {
            Poly3::from_terms(q.terms().filter(|(m, _)| m.0[0] == 0).map(|(m, c)| (*m, c.clone())))
        };
        let f = drop_x1(rng.scalar(deg));
        let g = Poly3::from_terms(
            rng.scalar(deg)
                .terms()
                .filter(|(m, _)| m.0[0] == 0 && m.0[1] == 0)
                .map(|(m, c)| (*m, c.clone())),
        );
        let x = VecField::position();
        let map = VecField([&x.0[0] + &f, &x.0[1] + &g, x.0[2].clone()]);
        let point: [Rational; 3] = std::array::from_fn(|_| rng.rational(3, 5));
        let c = pointwise_curvature(&PolyMetric::pullback(&map), &point)?;
        for row in c.ricci.iter() {
            for v in row {
                p.rational(v.clone());
            }
        }
    }
    Ok(())
}

fn representation(p: &mut Probe, rng: &mut FieldRng, d: u32, n: u32) -> Result<()> {
    for op in OperatorId::ALL {
        let m = matrix_of(op, (d as i64).max(op.order()))?;
        for _ in 0..n.min(50) {
            let coords: Vec<Rational> =
                (0..m.domain.dim()).map(|_| rng.rational(5, 1)).collect();
            let field = m.domain.from_coordinates(&coords);
            p.equal(m.apply(&field)?, op.apply(&field)?);
        }
    }
    Ok(())
}

fn report_residuals(p: &mut Probe, r: &ComplexReport) {
    for s in &r.composition_residuals {
        if s != "0" {
            p.count(1, 0);
        }
    }
    p.count(0, 0);
}

fn complex_degree(d: u32) -> i64 {
    (d as i64).max(3)
}

fn compositions(p: &mut Probe, _: &mut FieldRng, d: u32, _: u32) -> Result<()> {
    let d = complex_degree(d);
    for c in [elasticity_complex(d)?, grad_curl_div_complex(d)?, w_split_complex(d)?] {
        report_residuals(p, &verify_complex(&c));
    }
    Ok(())
}

fn sym_grad_kernels(p: &mut Probe, _: &mut FieldRng, d: u32, _: u32) -> Result<()> {
    for b in 1..=d as i64 {
        p.count(matrix_of(OperatorId::SymGrad, b)?.kernel_dim() as i64, 6);
    }
    Ok(())
}

fn w_grad_kernels(p: &mut Probe, _: &mut FieldRng, d: u32, _: u32) -> Result<()> {
    for b in 1..=d as i64 {
        p.count(matrix_of(OperatorId::WGrad, b)?.kernel_dim() as i64, 6);
    }
    Ok(())
}

fn total_defect(r: &ComplexReport) -> i64 {
    r.interior_defects().iter().map(|x| x.abs()).sum()
}

fn elasticity_exact(p: &mut Probe, _: &mut FieldRng, d: u32, _: u32) -> Result<()> {
    p.count(total_defect(&verify_complex(&elasticity_complex(complex_degree(d))?)), 0);
    Ok(())
}

fn gcd_exact(p: &mut Probe, _: &mut FieldRng, d: u32, _: u32) -> Result<()> {
    p.count(total_defect(&verify_complex(&grad_curl_div_complex(complex_degree(d))?)), 0);
    Ok(())
}

fn reduction_defects(p: &mut Probe, _: &mut FieldRng, d: u32, _: u32) -> Result<()> {
    let r = derive_elasticity(complex_degree(d))?;
    let before = r.w_report.interior_defects();
    for after in [&r.halfway_report, &r.reduced_report] {
        report_residuals(p, after);
        p.count(
            after.interior_defects().iter().zip(&before).map(|(a, b)| (a - b).abs()).sum(),
            0,
        );
    }
    p.count(i64::from(!r.all_proportional()), 0);
    Ok(())
}

fn lambda2(p: &mut Probe, rng: &mut FieldRng, _: u32, n: u32) -> Result<()> {
    for _ in 0..n {
        let v: Vec4 = loop {
            let v: Vec4 = std::array::from_fn(|_| rng.rational(3, 4));
            if v.iter().any(|x| !x.is_zero()) {
                break v;
            }
        };
        let w = SkewMat4::from_upper(std::array::from_fn(|_| rng.rational(3, 5)));
        let (alpha, beta) = lambda2_split(&v, &w)?;
        let flat = |m: &SkewMat4| -> Vec<Poly3> {
            m.entries().iter().flatten().cloned().map(Poly3::constant).collect()
        };
        let consts = |xs: &[Rational]| -> Vec<Poly3> { xs.iter().cloned().map(Poly3::constant).collect() };
        p.equal(flat(&alpha.add(&beta)), flat(&w));
        p.zero(consts(&interior(&v, &beta)));
        p.zero(consts(&wedge3(&v, &alpha)));
        let (na, nb) = lambda2_split(&v.clone().map(|x| -x), &w)?;
        p.equal(flat(&na), flat(&alpha));
        p.equal(flat(&nb), flat(&beta));
        let (aa, ab) = lambda2_split(&v, &alpha)?;
        p.equal(flat(&aa), flat(&alpha));
        p.zero(flat(&ab));
    }
    Ok(())
}
