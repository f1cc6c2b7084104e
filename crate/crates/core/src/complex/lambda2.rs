//! Pointwise splitting of skew 2-tensors on R^4 along a nonzero vector `v`:
//! `omega = alpha + beta` with `v ^ alpha = 0` and `v _| beta = 0`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Rational;

pub type Vec4 = [Rational; 4];

/// Exact skew-symmetric 4x4 matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewMat4([[Rational; 4]; 4]);

impl SkewMat4 {
    pub fn new(m: [[Rational; 4]; 4]) -> Result<Self> {
        for a in 0..4 {
            for b in 0..4 {
                if m[a][b] != -m[b][a].clone() {
                    return Err(Error::Input(format!("matrix is not skew at ({}, {})", a + 1, b + 1)));
                }
            }
        }
        Ok(SkewMat4(m))
    }

    /// Skew matrix from its six upper-triangle entries `(12, 13, 14, 23, 24, 34)`.
    pub fn from_upper(e: [Rational; 6]) -> Self {
        let mut m: [[Rational; 4]; 4] = Default::default();
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for ((a, b), v) in pairs.into_iter().zip(e) {
            m[b][a] = -v.clone();
            m[a][b] = v;
        }
        SkewMat4(m)
    }

    pub fn zero() -> Self {
        SkewMat4(Default::default())
    }

    pub fn entries(&self) -> &[[Rational; 4]; 4] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Zero::is_zero)
    }

    pub fn add(&self, o: &SkewMat4) -> SkewMat4 {
        SkewMat4(std::array::from_fn(|a| std::array::from_fn(|b| &self.0[a][b] + &o.0[a][b])))
    }

    pub fn sub(&self, o: &SkewMat4) -> SkewMat4 {
        SkewMat4(std::array::from_fn(|a| std::array::from_fn(|b| &self.0[a][b] - &o.0[a][b])))
    }
}

/// `v ^ u` as a skew matrix, `(v ^ u)_ab = v_a u_b - v_b u_a`.
pub fn wedge(v: &Vec4, u: &Vec4) -> SkewMat4 {
    SkewMat4(std::array::from_fn(|a| {
        std::array::from_fn(|b| &v[a] * &u[b] - &v[b] * &u[a])
    }))
}

/// Interior product `(v _| omega)_b = v_a omega_ab`.
pub fn interior(v: &Vec4, w: &SkewMat4) -> Vec4 {
    std::array::from_fn(|b| (0..4).fold(Rational::zero(), |acc, a| acc + &v[a] * &w.0[a][b]))
}

/// Components `(v ^ omega)_abc = v_a w_bc + v_b w_ca + v_c w_ab` for `a < b < c`.
pub fn wedge3(v: &Vec4, w: &SkewMat4) -> [Rational; 4] {
    let triples = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)];
    triples.map(|(a, b, c)| &v[a] * &w.0[b][c] + &v[b] * &w.0[c][a] + &v[c] * &w.0[a][b])
}

fn norm_sq(v: &Vec4) -> Rational {
    v.iter().fold(Rational::zero(), |acc, x| acc + x * x)
}

/// Splits `omega` into `alpha = v ^ a` with `a = (v _| omega) / |v|^2` and `beta = omega - alpha`.
pub fn lambda2_split(v: &Vec4, omega: &SkewMat4) -> Result<(SkewMat4, SkewMat4)> {
    let n = norm_sq(v);
    if n.is_zero() {
        return Err(Error::ZeroVector);
    }
    let a = interior(v, omega).map(|x| x / &n);
    let alpha = wedge(v, &a);
    let beta = omega.sub(&alpha);
    Ok((alpha, beta))
}
