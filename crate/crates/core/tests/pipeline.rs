use venant::calculus::{curl_curl, sym_grad};
use venant::complex::derive_elasticity;
use venant::connection::{normalize_rigid, saint_venant_reconstruct, strain_one_form, w_curl};
use venant::random::{random_field, FieldRng};
use venant::riemannian::linearized_einstein;
use venant::verify::{run_suite, Suite, SuiteConfig};
use venant::{Field, FieldKind};

#[test]
fn serialized_strain_reconstructs_displacement() {
    let mut rng = FieldRng::new(99);
    let x = rng.vec(3);
    let text = Field::Sym(sym_grad(&x)).to_json();
    let sigma = Field::from_json(&text).unwrap().into_sym().unwrap();
    let rebuilt = saint_venant_reconstruct(&sigma).unwrap();
    assert_eq!(rebuilt, normalize_rigid(&x));
    let back = Field::from_json(&Field::Vec(rebuilt.clone()).to_json()).unwrap();
    assert_eq!(back.into_vec().unwrap(), rebuilt);
}

#[test]
fn every_kind_round_trips_through_json() {
    for kind in [
        FieldKind::Scalar,
        FieldKind::Vec,
        FieldKind::Sym,
        FieldKind::Mat,
        FieldKind::W,
        FieldKind::WForm,
    ] {
        let f = random_field(kind, 2, 3);
        let text = f.to_json();
        let g = Field::from_json(&text).unwrap();
        assert_eq!(g, f);
        assert_eq!(g.to_json(), text);
    }
}

#[test]
fn stress_of_a_strain_three_ways() {
    let mut rng = FieldRng::new(12);
    for _ in 0..5 {
        let s = rng.sym(3);
        let cc = curl_curl(&s).unwrap();
        assert_eq!(linearized_einstein(&s).unwrap(), cc);
        assert_eq!(w_curl(&strain_one_form(&s)).xi, cc.to_matrix());
    }
}

#[test]
fn derivation_report_serializes_constants_as_fractions() {
    let d = derive_elasticity(3).unwrap();
    let v = serde_json::to_value(&d).unwrap();
    for stage in v["stages"].as_array().unwrap() {
        assert_eq!(stage["constant"], "1/1");
    }
    assert_eq!(v["reduced_report"]["ranks"], v["elasticity_report"]["ranks"]);
}

#[test]
fn full_suite_at_degree_three() {
    let config = SuiteConfig {
        suite: Suite::All,
        degree: 3,
        trials: 5,
        seed: 2024,
    };
    let report = run_suite(&config, None).unwrap();
    assert!(report.passed, "{report}");
    assert!(report.records.iter().all(|r| r.residual == "0"));
}
