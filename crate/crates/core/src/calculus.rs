//! Flat-space differential operators on polynomial fields.

use crate::error::{Error, Result};
use crate::poly::{rat, Poly3};
use crate::tensor::{Mat3Field, SymField, VecField, EPSILON};

fn accumulate(target: &mut Poly3, sign: i64, p: Poly3) {
    if sign > 0 {
        *target += p;
    } else {
        *target -= p;
    }
}

pub fn grad(f: &Poly3) -> VecField {
    VecField::from_fn(|i| f.derivative(i))
}

/// `(curl X)_i = eps_ijk d_j X_k`.
pub fn curl(x: &VecField) -> VecField {
    let mut out = VecField::zero();
    for &(i, j, k, s) in &EPSILON {
        accumulate(&mut out.0[i], s, x.0[k].derivative(j));
    }
    out
}

pub fn div(x: &VecField) -> Poly3 {
    (0..3).map(|i| x.0[i].derivative(i)).sum()
}

/// Jacobian `J_ij = d_i X_j` (derivative index first).
pub fn jacobian(x: &VecField) -> Mat3Field {
    Mat3Field::from_fn(|i, j| x.0[j].derivative(i))
}

/// Strain of a displacement: `(d_i X_j + d_j X_i) / 2`.
pub fn sym_grad(x: &VecField) -> SymField {
    let half = rat(1, 2);
    SymField::from_fn(|i, j| (x.0[j].derivative(i) + x.0[i].derivative(j)).scale(&half))
}

/// Curl on the first index: `(curl_row M)_il = eps_ijk d_j M_kl`.
pub fn curl_row(m: &Mat3Field) -> Mat3Field {
    let mut out = Mat3Field::zero();
    for &(i, j, k, s) in &EPSILON {
        for l in 0..3 {
            accumulate(&mut out.0[i][l], s, m.0[k][l].derivative(j));
        }
    }
    out
}

/// Curl on the second index: `(curl_col M)_il = eps_ljk d_j M_ik`.
pub fn curl_col(m: &Mat3Field) -> Mat3Field {
    let mut out = Mat3Field::zero();
    for &(l, j, k, s) in &EPSILON {
        for i in 0..3 {
            accumulate(&mut out.0[i][l], s, m.0[i][k].derivative(j));
        }
    }
    out
}

/// Saint-Venant operator as a row curl followed by a column curl.
pub fn curl_curl(sigma: &SymField) -> Result<SymField> {
    let m = curl_col(&curl_row(&sigma.to_matrix()));
    SymField::try_from_matrix(&m)
        .map_err(|e| Error::Internal(format!("curl curl of a symmetric field: {e}")))
}

/// Saint-Venant operator as the double contraction `eps_ikm eps_jln d_k d_l S_mn`.
pub fn curl_curl_direct(sigma: &SymField) -> SymField {
    let mut out = SymField::zero();
    for (slot, &(i, j)) in crate::tensor::SYM_INDEX.iter().enumerate() {
        for &(a, k, m, s1) in &EPSILON {
            if a != i {
                continue;
            }
            for &(b, l, n, s2) in &EPSILON {
                if b != j {
                    continue;
                }
                let t = sigma.get(m, n).derivative(k).derivative(l);
                accumulate(&mut out.0[slot], s1 * s2, t);
            }
        }
    }
    out
}

/// Divergence on the first index: `(div S)_j = d_i S_ij`.
pub fn div_sym(s: &SymField) -> VecField {
    VecField::from_fn(|j| (0..3).map(|i| s.get(i, j).derivative(i)).sum())
}

/// Potential of a curl-free field via the radial homotopy from the origin:
/// `f(x) = int_0^1 x . X(t x) dt`, so `grad f = X` and `f(0) = 0`.
pub fn homotopy_antiderivative(x: &VecField) -> Result<Poly3> {
    let residual = curl(x);
    if !residual.is_zero() {
        return Err(Error::NotCurlFree { residual: Box::new(residual) });
    }
    Ok(radial_potential(x))
}

/// The homotopy formula without the closedness check.
pub(crate) fn radial_potential(x: &VecField) -> Poly3 {
    (0..3)
        .map(|i| &Poly3::var(i) * &x.0[i].radial_average(0))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, Monomial};
    use crate::random::FieldRng;
    use crate::tensor::levi_civita;
    use proptest::prelude::*;

    fn x(i: usize) -> Poly3 {
        Poly3::var(i)
    }

    fn mono(e: [u32; 3], c: i64) -> Poly3 {
        Poly3::term(Monomial(e), int(c))
    }

    /// Component-by-component expansion of the textbook curl.
    fn curl_oracle(v: &VecField) -> VecField {
        let d = |comp: usize, axis: usize| v.0[comp].derivative(axis);
        VecField([d(2, 1) - d(1, 2), d(0, 2) - d(2, 0), d(1, 0) - d(0, 1)])
    }

    /// Brute-force sum over all 3^6 index values of eps_ikm eps_jln d_k d_l S_mn.
    fn curl_curl_oracle(s: &SymField) -> [[Poly3; 3]; 3] {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let mut acc = Poly3::zero();
                for k in 0..3 {
                    for m in 0..3 {
                        for l in 0..3 {
                            for n in 0..3 {
                                let e = levi_civita(i, k, m) * levi_civita(j, l, n);
                                if e != 0 {
                                    acc += s.get(m, n).derivative(k).derivative(l).scale(&int(e));
                                }
                            }
                        }
                    }
                }
                acc
            })
        })
    }

    #[test]
    fn grad_examples() {
        assert!(grad(&Poly3::int(4)).is_zero());
        assert_eq!(grad(&(&x(0) * &x(1))), VecField([x(1), x(0), Poly3::zero()]));
        let r2 = &(&(&x(0) * &x(0)) + &(&x(1) * &x(1))) + &(&x(2) * &x(2));
        assert_eq!(grad(&r2), VecField::position().scale(&int(2)));
    }

    #[test]
    fn curl_examples() {
        let v = VecField([Poly3::zero(), Poly3::zero(), &x(0) * &x(1)]);
        let expected = curl_oracle(&v);
        assert_eq!(expected, VecField([x(0), -x(1), Poly3::zero()]));
        assert_eq!(curl(&v), expected);

        let rot = VecField([-x(1), x(0), Poly3::zero()]);
        assert_eq!(curl_oracle(&rot), VecField([Poly3::zero(), Poly3::zero(), Poly3::int(2)]));
        assert_eq!(curl(&rot), curl_oracle(&rot));

        let f = FieldRng::new(5).scalar(5);
        assert!(curl(&grad(&f)).is_zero());
    }

    #[test]
    fn div_examples() {
        assert_eq!(div(&VecField::position()), Poly3::int(3));
        assert!(div(&VecField([x(1), x(2), x(0)])).is_zero());
        let v = FieldRng::new(8).vec(4);
        assert!(div(&curl(&v)).is_zero());
    }

    #[test]
    fn sym_grad_examples() {
        assert!(sym_grad(&VecField::constant([int(1), int(-2), int(3)])).is_zero());
        assert!(sym_grad(&VecField([-x(1), x(0), Poly3::zero()])).is_zero());
        let s = sym_grad(&VecField([mono([0, 2, 0], 1), Poly3::zero(), Poly3::zero()]));
        let mut expected = SymField::zero();
        expected.set(0, 1, x(1));
        assert_eq!(s, expected);
    }

    #[test]
    fn curl_row_and_col_examples() {
        let c = Mat3Field::from_fn(|i, j| Poly3::int((3 * i + j) as i64));
        assert!(curl_row(&c).is_zero());
        assert!(curl_col(&c).is_zero());

        let f = FieldRng::new(3).scalar(4);
        let hessian = jacobian(&grad(&f));
        assert!(curl_row(&hessian).is_zero());

        let m = Mat3Field::elementary(0, 0, x(1));
        assert_eq!(curl_row(&m), Mat3Field::elementary(2, 0, Poly3::int(-1)));
        assert_eq!(curl_col(&m), Mat3Field::elementary(0, 2, Poly3::int(-1)));

        let r = FieldRng::new(11).mat(3);
        assert_eq!(curl_col(&r.transpose()), curl_row(&r).transpose());
    }

    #[test]
    fn curl_curl_examples() {
        let sigma = SymField::diag([mono([0, 2, 0], 1), Poly3::zero(), Poly3::zero()]);
        let oracle = curl_curl_oracle(&sigma);
        for i in 0..3 {
            for j in 0..3 {
                let want = if (i, j) == (2, 2) { Poly3::int(2) } else { Poly3::zero() };
                assert_eq!(oracle[i][j], want);
            }
        }
        let expected = SymField::diag([Poly3::zero(), Poly3::zero(), Poly3::int(2)]);
        assert_eq!(curl_curl(&sigma).unwrap(), expected);
        assert_eq!(curl_curl_direct(&sigma), expected);

        assert!(curl_curl(&SymField::identity()).unwrap().is_zero());
        assert!(curl_curl_direct(&SymField::zero()).is_zero());
        let x5 = FieldRng::new(21).vec(5);
        assert!(curl_curl(&sym_grad(&x5)).unwrap().is_zero());
    }

    #[test]
    fn curl_curl_forms_agree_with_oracle() {
        let mut rng = FieldRng::new(77);
        for _ in 0..10 {
            let s = rng.sym(4);
            let oracle = curl_curl_oracle(&s);
            let direct = curl_curl_direct(&s);
            for i in 0..3 {
                for j in 0..3 {
                    assert_eq!(direct.get(i, j), &oracle[i][j]);
                }
            }
        }
        for _ in 0..100 {
            let s = rng.sym(4);
            assert_eq!(curl_curl(&s).unwrap(), curl_curl_direct(&s));
        }
    }

    #[test]
    fn div_sym_examples() {
        assert!(div_sym(&SymField::identity()).is_zero());
        let s = SymField::diag([x(0), x(1), x(2)]);
        assert_eq!(div_sym(&s), VecField::constant([int(1), int(1), int(1)]));
        let r = FieldRng::new(4).sym(5);
        assert!(div_sym(&curl_curl(&r).unwrap()).is_zero());
    }

    #[test]
    fn homotopy_examples() {
        let v = VecField([x(1), x(0), Poly3::zero()]);
        assert_eq!(homotopy_antiderivative(&v).unwrap(), &x(0) * &x(1));

        let bad = VecField([x(1), -x(0), Poly3::zero()]);
        match homotopy_antiderivative(&bad) {
            Err(Error::NotCurlFree { residual }) => {
                assert_eq!(*residual, VecField([Poly3::zero(), Poly3::zero(), Poly3::int(-2)]))
            }
            other => panic!("expected NotCurlFree, got {other:?}"),
        }

        let f = FieldRng::new(13).scalar(5);
        let g = homotopy_antiderivative(&grad(&f)).unwrap();
        assert_eq!(g, &f - &Poly3::constant(f.constant_term()));
    }

    proptest! {
        #[test]
        fn partials_commute(seed in any::<u64>(), i in 0usize..3, j in 0usize..3) {
            let p = FieldRng::new(seed).scalar(5);
            prop_assert_eq!(p.derivative(i).derivative(j), p.derivative(j).derivative(i));
        }

        #[test]
        fn leibniz_rule(seed in any::<u64>(), i in 0usize..3) {
            let mut rng = FieldRng::new(seed);
            let a = rng.scalar(3);
            let b = rng.scalar(3);
            let lhs = (&a * &b).derivative(i);
            let rhs = &(&a.derivative(i) * &b) + &(&a * &b.derivative(i));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn homotopy_inverts_grad(seed in any::<u64>(), degree in 0u32..6) {
            let v = grad(&FieldRng::new(seed).scalar(degree + 1));
            let f = homotopy_antiderivative(&v).unwrap();
            prop_assert_eq!(grad(&f), v);
            prop_assert!(f.constant_term() == int(0));
        }
    }
}
