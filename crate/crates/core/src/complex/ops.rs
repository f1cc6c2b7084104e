//! Matrices of the differential operators on truncated field spaces.

use std::fmt;
use std::str::FromStr;

use crate::calculus::{curl, curl_curl, div, div_sym, grad, sym_grad};
use crate::complex::linalg::RatMatrix;
use crate::complex::space::{GradedSpace, Slot, SlotKind};
use crate::connection::{w_curl, w_div, w_grad, WField, WOneForm};
use crate::error::{Error, Result};
use crate::poly::{Poly3, Rational};
use crate::tensor::{Mat3Field, SymField, VecField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperatorId {
    Grad,
    Curl,
    Div,
    SymGrad,
    CurlCurl,
    DivSym,
    WGrad,
    WCurl,
    WDiv,
}

impl OperatorId {
    pub const ALL: [OperatorId; 9] = [
        OperatorId::Grad,
        OperatorId::Curl,
        OperatorId::Div,
        OperatorId::SymGrad,
        OperatorId::CurlCurl,
        OperatorId::DivSym,
        OperatorId::WGrad,
        OperatorId::WCurl,
        OperatorId::WDiv,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            OperatorId::Grad => "grad",
            OperatorId::Curl => "curl",
            OperatorId::Div => "div",
            OperatorId::SymGrad => "sym_grad",
            OperatorId::CurlCurl => "curl_curl",
            OperatorId::DivSym => "div_sym",
            OperatorId::WGrad => "w_grad",
            OperatorId::WCurl => "w_curl",
            OperatorId::WDiv => "w_div",
        }
    }

    /// Differential order; the degree drop between domain and codomain.
    pub fn order(&self) -> i64 {
        match self {
            OperatorId::CurlCurl => 2,
            _ => 1,
        }
    }

    /// Domain space for domain degree `d`.
    ///
    /// W-valued operators use a weighted truncation: the second W slot
    /// carries one degree less than the first, which is what the algebraic
    /// coupling in the connection maps between.
    pub fn domain(&self, d: i64) -> GradedSpace {
        use SlotKind::*;
        match self {
            OperatorId::Grad => GradedSpace::single("f", Scalar, d),
            OperatorId::Curl | OperatorId::Div | OperatorId::SymGrad => {
                GradedSpace::single("X", Vector, d)
            }
            OperatorId::CurlCurl | OperatorId::DivSym => GradedSpace::single("S", Symmetric, d),
            OperatorId::WGrad => GradedSpace::new(vec![
                Slot::new("X", Vector, d),
                Slot::new("Y", Vector, d - 1),
            ]),
            OperatorId::WCurl | OperatorId::WDiv => GradedSpace::new(vec![
                Slot::new("Sigma", Matrix, d),
                Slot::new("Xi", Matrix, d - 1),
            ]),
        }
    }

    pub fn codomain(&self, d: i64) -> GradedSpace {
        use SlotKind::*;
        let e = d - self.order();
        match self {
            OperatorId::Grad | OperatorId::Curl => GradedSpace::single("V", Vector, e),
            OperatorId::Div => GradedSpace::single("f", Scalar, e),
            OperatorId::SymGrad | OperatorId::CurlCurl => GradedSpace::single("S", Symmetric, e),
            OperatorId::DivSym => GradedSpace::single("V", Vector, e),
            OperatorId::WGrad | OperatorId::WCurl => GradedSpace::new(vec![
                Slot::new("Sigma", Matrix, e),
                Slot::new("Xi", Matrix, e - 1),
            ]),
            OperatorId::WDiv => GradedSpace::new(vec![
                Slot::new("X", Vector, e),
                Slot::new("Y", Vector, e - 1),
            ]),
        }
    }

    /// Applies the operator to flattened components of its domain.
    pub fn apply(&self, comps: &[Poly3]) -> Result<Vec<Poly3>> {
        Ok(match self {
            OperatorId::Grad => vec_comps(&grad(&comps[0])),
            OperatorId::Curl => vec_comps(&curl(&to_vec(comps))),
            OperatorId::Div => vec![div(&to_vec(comps))],
            OperatorId::SymGrad => sym_comps(&sym_grad(&to_vec(comps))),
            OperatorId::CurlCurl => sym_comps(&curl_curl(&to_sym(comps))?),
            OperatorId::DivSym => vec_comps(&div_sym(&to_sym(comps))),
            OperatorId::WGrad => wform_comps(&w_grad(&to_w(comps))),
            OperatorId::WCurl => wform_comps(&w_curl(&to_wform(comps))),
            OperatorId::WDiv => w_comps(&w_div(&to_wform(comps))),
        })
    }
}

impl FromStr for OperatorId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        OperatorId::ALL
            .iter()
            .copied()
            .find(|op| op.name() == s)
            .ok_or_else(|| Error::UnknownOperator(s.to_string()))
    }
}

impl fmt::Display for OperatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub(crate) fn to_vec(c: &[Poly3]) -> VecField {
    VecField::from_fn(|i| c[i].clone())
}

pub(crate) fn to_sym(c: &[Poly3]) -> SymField {
    SymField(std::array::from_fn(|s| c[s].clone()))
}

pub(crate) fn to_mat(c: &[Poly3]) -> Mat3Field {
    Mat3Field::from_fn(|i, j| c[3 * i + j].clone())
}

fn to_w(c: &[Poly3]) -> WField {
    WField {
        x: to_vec(&c[..3]),
        y: to_vec(&c[3..6]),
    }
}

fn to_wform(c: &[Poly3]) -> WOneForm {
    WOneForm {
        sigma: to_mat(&c[..9]),
        xi: to_mat(&c[9..18]),
    }
}

pub(crate) fn vec_comps(v: &VecField) -> Vec<Poly3> {
    v.0.to_vec()
}

pub(crate) fn sym_comps(s: &SymField) -> Vec<Poly3> {
    s.0.to_vec()
}

pub(crate) fn mat_comps(m: &Mat3Field) -> Vec<Poly3> {
    m.0.iter().flatten().cloned().collect()
}

fn w_comps(w: &WField) -> Vec<Poly3> {
    let mut v = vec_comps(&w.x);
    v.extend(vec_comps(&w.y));
    v
}

fn wform_comps(f: &WOneForm) -> Vec<Poly3> {
    let mut v = mat_comps(&f.sigma);
    v.extend(mat_comps(&f.xi));
    v
}

/// Finite-dimensional matrix of an operator between two truncated spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinOpMatrix {
    pub name: String,
    pub domain: GradedSpace,
    pub codomain: GradedSpace,
    pub entries: RatMatrix,
}

impl LinOpMatrix {
    /// Builds the matrix column by column from images of basis elements.
    pub fn build(
        name: impl Into<String>,
        domain: GradedSpace,
        codomain: GradedSpace,
        op: impl Fn(&[Poly3]) -> Result<Vec<Poly3>>,
    ) -> Result<Self> {
        let mut entries = RatMatrix::zeros(codomain.dim(), domain.dim());
        for col in 0..domain.dim() {
            let image = op(&domain.basis_element(col))?;
            for (row, v) in codomain.coordinates(&image)? {
                entries.set(row, col, v);
            }
        }
        Ok(LinOpMatrix {
            name: name.into(),
            domain,
            codomain,
            entries,
        })
    }

    pub fn rank(&self) -> usize {
        self.entries.rank()
    }

    pub fn kernel_dim(&self) -> usize {
        self.entries.kernel_dim()
    }

    /// Applies the matrix to a field given by flattened domain components.
    pub fn apply(&self, comps: &[Poly3]) -> Result<Vec<Poly3>> {
        let mut dense = vec![Rational::from_integer(0.into()); self.domain.dim()];
        for (i, v) in self.domain.coordinates(comps)? {
            dense[i] = v;
        }
        Ok(self.codomain.from_coordinates(&self.entries.mul_vec(&dense)))
    }
}

/// Matrix of a named operator on fields of degree at most `degree`.
pub fn matrix_of(op: OperatorId, degree: i64) -> Result<LinOpMatrix> {
    if degree < op.order() {
        return Err(Error::DegreeTooLow {
            op: op.name().into(),
            min: op.order(),
            got: degree,
        });
    }
    LinOpMatrix::build(op.name(), op.domain(degree), op.codomain(degree), |c| op.apply(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::FieldRng;

    #[test]
    fn grad_on_affine_functions() {
        let m = matrix_of(OperatorId::Grad, 1).unwrap();
        assert_eq!(m.domain.dim(), 4);
        assert_eq!(m.codomain.dim(), 3);
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn curl_curl_on_quadratic_strains() {
        let m = matrix_of(OperatorId::CurlCurl, 2).unwrap();
        assert_eq!(m.domain.dim(), 60);
        assert_eq!(m.codomain.dim(), 6);
        assert_eq!(m.kernel_dim(), 54);
    }

    #[test]
    fn sym_grad_matrix_matches_direct_operator() {
        let m = matrix_of(OperatorId::SymGrad, 4).unwrap();
        let mut rng = FieldRng::new(3);
        for _ in 0..5 {
            let x = rng.vec(4);
            let direct = sym_comps(&sym_grad(&x));
            assert_eq!(m.apply(&vec_comps(&x)).unwrap(), direct);
        }
    }

    #[test]
    fn unknown_and_too_low() {
        assert!(matches!("laplace".parse::<OperatorId>(), Err(Error::UnknownOperator(_))));
        assert_eq!("w_curl".parse::<OperatorId>().unwrap(), OperatorId::WCurl);
        assert!(matches!(
            matrix_of(OperatorId::CurlCurl, 1),
            Err(Error::DegreeTooLow { min: 2, .. })
        ));
    }

    #[test]
    fn rigid_motion_kernels() {
        for d in 1..=3 {
            assert_eq!(matrix_of(OperatorId::SymGrad, d).unwrap().kernel_dim(), 6, "sym_grad d={d}");
            assert_eq!(matrix_of(OperatorId::WGrad, d).unwrap().kernel_dim(), 6, "w_grad d={d}");
        }
    }
}
