//! The coupled flat connection on `W = R^3 (+) R^3`.
//!
//! A section is a pair `F = (X, Y)` of vector fields. Its gradient is
//!
//! ```text
//! grad (X, Y) = ( d_j X_l - eps_jlm Y_m ,  d_j Y_l )
//! ```
//!
//! and a W-valued one-form `Psi = (Sigma, Xi)` is stored with the form index
//! `j` as the row and the W index `l` as the column of both slots. The curl
//! and divergence below are what this gradient gives when the ordinary
//! formulas are applied to W-valued fields component by component.

use std::fmt;

use crate::calculus::{curl_curl, curl_row, jacobian, radial_potential};
use crate::error::{Error, Result};
use crate::poly::{rat, Poly3, Rational};
use crate::tensor::{Mat3Field, SymField, VecField, EPSILON};

/// Section of the trivial bundle with fibre W.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WField {
    pub x: VecField,
    pub y: VecField,
}

/// W-valued one-form; `sigma[j][l]` and `xi[j][l]` with `j` the form index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WOneForm {
    pub sigma: Mat3Field,
    pub xi: Mat3Field,
}

impl WField {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl WOneForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.sigma.is_zero() && self.xi.is_zero()
    }
}

impl fmt::Display for WField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(X = {}, Y = {})", self.x, self.y)
    }
}

impl fmt::Display for WOneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(Sigma = {}, Xi = {})", self.sigma, self.xi)
    }
}

/// `sum_m eps_jlm v_m` as a matrix in `(j, l)`.
fn eps_contract(v: &VecField) -> Mat3Field {
    Mat3Field::from_skew_vector(v)
}

pub fn w_grad(f: &WField) -> WOneForm {
    WOneForm {
        sigma: &jacobian(&f.x) - &eps_contract(&f.y),
        xi: jacobian(&f.y),
    }
}

/// `(eps_ijk d_j S_kl - Xi_li + delta_il tr Xi ,  eps_ijk d_j Xi_kl)`.
pub fn w_curl(psi: &WOneForm) -> WOneForm {
    let tr = psi.xi.trace();
    let mut sigma = &curl_row(&psi.sigma) - &psi.xi.transpose();
    for i in 0..3 {
        sigma.0[i][i] += &tr;
    }
    WOneForm {
        sigma,
        xi: curl_row(&psi.xi),
    }
}

/// `(d_j T1_jl - eps_jlm T2_jm ,  d_j T2_jl)`.
pub fn w_div(theta: &WOneForm) -> WField {
    let col_div = |m: &Mat3Field| VecField::from_fn(|l| (0..3).map(|j| m.0[j][l].derivative(j)).sum());
    let mut x = col_div(&theta.sigma);
    for &(j, l, m, s) in &EPSILON {
        if s > 0 {
            x.0[l] -= &theta.xi.0[j][m];
        } else {
            x.0[l] += &theta.xi.0[j][m];
        }
    }
    WField {
        x,
        y: col_div(&theta.xi),
    }
}

/// Infinitesimal rigid motion `a + b x position`.
pub fn rigid_motion(a: &[Rational; 3], b: &[Rational; 3]) -> VecField {
    let a = VecField::constant(a.clone());
    let b = VecField::constant(b.clone());
    &a + &b.cross(&VecField::position())
}

/// Translations `(e_m, 0)` followed by rotations `(e_m x position, e_m)`, m = 1..3.
pub fn flat_sections_basis() -> [WField; 6] {
    let unit = |m: usize| VecField::from_fn(|i| Poly3::int((i == m) as i64));
    std::array::from_fn(|n| {
        if n < 3 {
            WField {
                x: unit(n),
                y: VecField::zero(),
            }
        } else {
            let e = unit(n - 3);
            WField {
                x: e.cross(&VecField::position()),
                y: e,
            }
        }
    })
}

/// Solves `w_grad F = psi` for `psi` with vanishing coupled curl, with `F(0) = 0`.
pub fn w_poincare(psi: &WOneForm) -> Result<WField> {
    let residual = w_curl(psi);
    if !residual.is_zero() {
        return Err(Error::NotFlat {
            residual: Box::new(residual),
        });
    }
    Ok(integrate_flat(psi))
}

fn integrate_flat(psi: &WOneForm) -> WField {
    let y = VecField::from_fn(|l| radial_potential(&psi.xi.column(l)));
    let a = &psi.sigma + &eps_contract(&y);
    let x = VecField::from_fn(|l| radial_potential(&a.column(l)));
    WField { x, y }
}

/// The one-form `(Sigma_jl, eps_lim d_i Sigma_mj)` attached to a strain.
pub fn strain_one_form(sigma: &SymField) -> WOneForm {
    let mut xi = Mat3Field::zero();
    for &(l, i, m, s) in &EPSILON {
        for j in 0..3 {
            let t = sigma.get(m, j).derivative(i);
            if s > 0 {
                xi.0[j][l] += t;
            } else {
                xi.0[j][l] -= t;
            }
        }
    }
    WOneForm {
        sigma: sigma.to_matrix(),
        xi,
    }
}

/// Displacement whose strain is `sigma`, normalized so that it vanishes at
/// the origin together with the skew part of its Jacobian.
pub fn saint_venant_reconstruct(sigma: &SymField) -> Result<VecField> {
    let psi = strain_one_form(sigma);
    let c = w_curl(&psi);
    if !c.sigma.is_zero() {
        return Err(Error::Internal(format!(
            "first slot of the coupled curl of a strain one-form is nonzero: {}",
            c.sigma
        )));
    }
    let cc = curl_curl(sigma)?;
    if c.xi != cc.to_matrix() {
        return Err(Error::Internal(
            "second slot of the coupled curl differs from curl curl".into(),
        ));
    }
    if !cc.is_zero() {
        return Err(Error::SaintVenant { residual: Box::new(cc) });
    }
    Ok(integrate_flat(&psi).x)
}

/// Removes the rigid motion that matches `x` to first order at the origin.
pub fn normalize_rigid(x: &VecField) -> VecField {
    let a: [Rational; 3] = std::array::from_fn(|i| x.0[i].constant_term());
    let c = crate::calculus::curl(x);
    let half = rat(1, 2);
    let b: [Rational; 3] = std::array::from_fn(|i| c.0[i].constant_term() * &half);
    x - &rigid_motion(&a, &b)
}
