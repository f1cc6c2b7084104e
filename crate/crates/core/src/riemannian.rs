//! Christoffel symbols, Ricci and Einstein tensors.
//!
//! Two evaluation modes share the same formulas:
//!
//! * jets: metrics `delta + eps * Sigma` with `eps^2 = 0`, computed exactly as
//!   polynomial fields. The `eps` part of the Einstein tensor is the
//!   linearization of curvature around the flat metric.
//! * pointwise: arbitrary polynomial metrics evaluated at a rational point,
//!   where the inverse metric is a plain 3x3 rational inverse.
//!
//! The Einstein tensor is `G = 2 Ric - R g`. With the Ricci convention
//! `R_ij = d_k G_ij^k - d_i G_jk^k + G_ij^m G_mk^k - G_ik^m G_jm^k` this is the
//! sign for which the linearization of `G` equals `curl curl Sigma`.

use std::ops::{Add, Mul, Sub};

use num_traits::Zero;

use crate::calculus::{curl_curl, div_sym};
use crate::error::{Error, Result};
use crate::poly::{int, rat, Poly3, Rational};
use crate::tensor::{delta, SymField, VecField};

/// `p0 + eps * p1` with `eps^2 = 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JetPoly {
    pub p0: Poly3,
    pub p1: Poly3,
}

impl JetPoly {
    pub fn new(p0: Poly3, p1: Poly3) -> Self {
        JetPoly { p0, p1 }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(p0: Poly3) -> Self {
        JetPoly { p0, p1: Poly3::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.p0.is_zero() && self.p1.is_zero()
    }

    pub fn derivative(&self, axis: usize) -> Self {
        JetPoly {
            p0: self.p0.derivative(axis),
            p1: self.p1.derivative(axis),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        JetPoly {
            p0: self.p0.scale(c),
            p1: self.p1.scale(c),
        }
    }
}

impl Add for &JetPoly {
    type Output = JetPoly;
    fn add(self, rhs: &JetPoly) -> JetPoly {
        JetPoly {
            p0: &self.p0 + &rhs.p0,
            p1: &self.p1 + &rhs.p1,
        }
    }
}

impl Sub for &JetPoly {
    type Output = JetPoly;
    fn sub(self, rhs: &JetPoly) -> JetPoly {
        JetPoly {
            p0: &self.p0 - &rhs.p0,
            p1: &self.p1 - &rhs.p1,
        }
    }
}

impl Mul for &JetPoly {
    type Output = JetPoly;
    fn mul(self, rhs: &JetPoly) -> JetPoly {
        JetPoly {
            p0: &self.p0 * &rhs.p0,
            p1: &(&self.p0 * &rhs.p1) + &(&self.p1 * &rhs.p0),
        }
    }
}

pub type JetMatrix = [[JetPoly; 3]; 3];

fn jet_matrix(mut f: impl FnMut(usize, usize) -> JetPoly) -> JetMatrix {
    std::array::from_fn(|i| std::array::from_fn(|j| f(i, j)))
}

fn sum_jets(it: impl Iterator<Item = JetPoly>) -> JetPoly {
    it.fold(JetPoly::zero(), |acc, j| &acc + &j)
}

/// Metric `delta + eps * Sigma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricJet {
    g: JetMatrix,
}

impl MetricJet {
    pub fn from_strain(sigma: &SymField) -> Self {
        MetricJet {
            g: jet_matrix(|i, j| JetPoly::new(Poly3::int(delta(i, j)), sigma.get(i, j).clone())),
        }
    }

    /// Validates symmetry and an identity zeroth-order part.
    pub fn new(g: JetMatrix) -> Result<Self> {
        for i in 0..3 {
            for j in 0..3 {
                if g[i][j] != g[j][i] {
                    return Err(Error::NotSymmetric { row: i + 1, col: j + 1 });
                }
                if g[i][j].p0 != Poly3::int(delta(i, j)) {
                    return Err(Error::NonIdentityBackground);
                }
            }
        }
        Ok(MetricJet { g })
    }

    pub fn entries(&self) -> &JetMatrix {
        &self.g
    }

    pub fn perturbation(&self) -> SymField {
        SymField::from_fn(|i, j| self.g[i][j].p1.clone())
    }
}

/// First-order inverse metric `delta - eps * Sigma`.
pub fn jet_inverse(g: &MetricJet) -> Result<JetMatrix> {
    for i in 0..3 {
        for j in 0..3 {
            if g.g[i][j].p0 != Poly3::int(delta(i, j)) {
                return Err(Error::NonIdentityBackground);
            }
        }
    }
    Ok(jet_matrix(|i, j| JetPoly::new(Poly3::int(delta(i, j)), -&g.g[i][j].p1)))
}

/// `gamma[i][j][k]` is `G_ij^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChristoffelJet {
    pub gamma: [[[JetPoly; 3]; 3]; 3],
}

pub fn christoffel_jet(g: &MetricJet) -> Result<ChristoffelJet> {
    let ginv = jet_inverse(g)?;
    let half = rat(1, 2);
    let d = |axis: usize, a: usize, b: usize| g.g[a][b].derivative(axis);
    let gamma = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            std::array::from_fn(|k| {
                sum_jets((0..3).map(|l| {
                    let bracket = &(&d(i, j, l) + &d(j, i, l)) - &d(l, i, j);
                    &ginv[k][l] * &bracket
                }))
                .scale(&half)
            })
        })
    });
    let out = ChristoffelJet { gamma };
    if out.gamma.iter().flatten().flatten().any(|c| !c.p0.is_zero()) {
        return Err(Error::Internal(
            "Christoffel symbols of a flat background must vanish at zeroth order".into(),
        ));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureJet {
    pub ricci: JetMatrix,
    pub scalar: JetPoly,
    pub einstein: JetMatrix,
}

impl CurvatureJet {
    /// Recomputes `2 Ric - R g` and compares with the stored Einstein tensor.
    pub fn is_consistent(&self, g: &MetricJet) -> bool {
        (0..3).all(|i| {
            (0..3).all(|j| {
                let want = &self.ricci[i][j].scale(&int(2)) - &(&self.scalar * &g.g[i][j]);
                want == self.einstein[i][j]
                    && self.ricci[i][j] == self.ricci[j][i]
                    && self.einstein[i][j] == self.einstein[j][i]
            })
        })
    }
}

pub fn ricci_jet(g: &MetricJet) -> Result<CurvatureJet> {
    let ch = christoffel_jet(g)?;
    let gm = &ch.gamma;
    let ginv = jet_inverse(g)?;
    let trace: [JetPoly; 3] = std::array::from_fn(|j| sum_jets((0..3).map(|k| gm[j][k][k].clone())));

    let mut ricci = jet_matrix(|_, _| JetPoly::zero());
    for i in 0..3 {
        for j in 0..3 {
            let linear = &sum_jets((0..3).map(|k| gm[i][j][k].derivative(k)))
                - &trace[j].derivative(i);
            let quadratic = sum_jets((0..3).map(|m| {
                let a = &gm[i][j][m] * &trace[m];
                let b = sum_jets((0..3).map(|k| &gm[i][k][m] * &gm[j][m][k]));
                &a - &b
            }));
            if !quadratic.is_zero() {
                return Err(Error::Internal(
                    "quadratic Christoffel terms must vanish to first order".into(),
                ));
            }
            ricci[i][j] = &linear + &quadratic;
        }
    }
    let scalar = sum_jets((0..3).flat_map(|k| (0..3).map(move |l| (k, l))).map(|(k, l)| &ginv[k][l] * &ricci[k][l]));
    let einstein = jet_matrix(|i, j| &ricci[i][j].scale(&int(2)) - &(&scalar * &g.g[i][j]));
    let out = CurvatureJet {
        ricci,
        scalar,
        einstein,
    };
    if !out.is_consistent(g) {
        return Err(Error::Internal("curvature jet is not self-consistent".into()));
    }
    Ok(out)
}

/// First-order part of the Einstein tensor of `delta + eps * Sigma`.
pub fn linearized_einstein(sigma: &SymField) -> Result<SymField> {
    let curv = ricci_jet(&MetricJet::from_strain(sigma))?;
    Ok(SymField::from_fn(|i, j| curv.einstein[i][j].p1.clone()))
}

/// Linearized Bianchi identity: `d_i (curl curl Sigma)_ij`, always zero.
pub fn bianchi_check(sigma: &SymField) -> Result<VecField> {
    Ok(div_sym(&curl_curl(sigma)?))
}

/// Polynomial metric, invertibility checked per evaluation point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMetric {
    pub g: SymField,
}

impl PolyMetric {
    pub fn new(g: SymField) -> Self {
        PolyMetric { g }
    }

    pub fn flat() -> Self {
        PolyMetric {
            g: SymField::identity(),
        }
    }

    /// Pullback `J^t J` of the flat metric along a polynomial map.
    pub fn pullback(map: &VecField) -> Self {
        let jac = crate::calculus::jacobian(map); // jac[i][a] = d_i phi_a
        PolyMetric {
            g: SymField::from_fn(|i, j| (0..3).map(|a| &jac.0[i][a] * &jac.0[j][a]).sum()),
        }
    }
}

pub type RatMat3 = [[Rational; 3]; 3];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCurvature {
    pub ricci: RatMat3,
    pub scalar: Rational,
    pub einstein: RatMat3,
}

fn det3(m: &RatMat3) -> Rational {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

/// Exact inverse of a 3x3 rational matrix, `None` if singular.
pub fn inverse3(m: &RatMat3) -> Option<RatMat3> {
    let det = det3(m);
    if det.is_zero() {
        return None;
    }
    let cof = |r: usize, c: usize| {
        let (r0, r1) = ((r + 1) % 3, (r + 2) % 3);
        let (c0, c1) = ((c + 1) % 3, (c + 2) % 3);
        &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0]
    };
    // inverse = adj / det, adj[i][j] = cofactor[j][i]
    Some(std::array::from_fn(|i| std::array::from_fn(|j| cof(j, i) / &det)))
}

/// Exact Ricci, scalar and Einstein tensors of a polynomial metric at a rational point.
pub fn pointwise_curvature(metric: &PolyMetric, p: &[Rational; 3]) -> Result<PointCurvature> {
    let gp = |i: usize, j: usize| metric.g.get(i, j);
    let g: RatMat3 = std::array::from_fn(|i| std::array::from_fn(|j| gp(i, j).evaluate(p)));
    let h = inverse3(&g).ok_or(Error::SingularMetric)?;
    // dg[m][i][j] = d_m g_ij, ddg[m][n][i][j] = d_m d_n g_ij at p
    let dg: [RatMat3; 3] = std::array::from_fn(|m| {
        std::array::from_fn(|i| std::array::from_fn(|j| gp(i, j).derivative(m).evaluate(p)))
    });
    let ddg: [[RatMat3; 3]; 3] = std::array::from_fn(|m| {
        std::array::from_fn(|n| {
            std::array::from_fn(|i| {
                std::array::from_fn(|j| gp(i, j).derivative(n).derivative(m).evaluate(p))
            })
        })
    });
    let zero = Rational::zero;
    let half = rat(1, 2);

    let bracket = |i: usize, j: usize, l: usize| &dg[i][j][l] + &dg[j][i][l] - &dg[l][i][j];
    let d_bracket =
        |m: usize, i: usize, j: usize, l: usize| &ddg[m][i][j][l] + &ddg[m][j][i][l] - &ddg[m][l][i][j];
    // d_m (g^-1) = -g^-1 (d_m g) g^-1
    let dh: [RatMat3; 3] = std::array::from_fn(|m| {
        std::array::from_fn(|k| {
            std::array::from_fn(|l| {
                let mut acc = zero();
                for a in 0..3 {
                    for b in 0..3 {
                        acc -= &h[k][a] * &dg[m][a][b] * &h[b][l];
                    }
                }
                acc
            })
        })
    });

    let gamma: [[[Rational; 3]; 3]; 3] = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            std::array::from_fn(|k| {
                (0..3).fold(zero(), |acc, l| acc + &h[k][l] * bracket(i, j, l)) * &half
            })
        })
    });
    // dgamma[m][i][j][k] = d_m G_ij^k
    let dgamma: [[[[Rational; 3]; 3]; 3]; 3] = std::array::from_fn(|m| {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                std::array::from_fn(|k| {
                    (0..3).fold(zero(), |acc, l| {
                        acc + &dh[m][k][l] * bracket(i, j, l) + &h[k][l] * d_bracket(m, i, j, l)
                    }) * &half
                })
            })
        })
    });

    let ricci: RatMat3 = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut r = zero();
            for k in 0..3 {
                r += &dgamma[k][i][j][k];
                r -= &dgamma[i][j][k][k];
                for m in 0..3 {
                    r += &gamma[i][j][m] * &gamma[m][k][k];
                    r -= &gamma[i][k][m] * &gamma[j][m][k];
                }
            }
            r
        })
    });
    let scalar = (0..3)
        .flat_map(|k| (0..3).map(move |l| (k, l)))
        .fold(zero(), |acc, (k, l)| acc + &h[k][l] * &ricci[k][l]);
    let two = int(2);
    let einstein = std::array::from_fn(|i| std::array::from_fn(|j| &ricci[i][j] * &two - &scalar * &g[i][j]));
    Ok(PointCurvature {
        ricci,
        scalar,
        einstein,
    })
}
