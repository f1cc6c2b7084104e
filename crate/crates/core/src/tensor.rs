//! Fixed-rank tensor fields over R^3 and the epsilon/delta algebra.
//!
//! Indices are 0-based internally; index strings in serialized form and in
//! the public `partial` helper are 1-based. Upper and lower indices are not
//! distinguished since the ambient metric is the identity.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::poly::{Poly3, Rational};

/// Nonzero entries of the Levi-Civita symbol, `(i, j, k, sign)` with `eps[0][1][2] = 1`.
pub const EPSILON: [(usize, usize, usize, i64); 6] = [
    (0, 1, 2, 1),
    (1, 2, 0, 1),
    (2, 0, 1, 1),
    (0, 2, 1, -1),
    (2, 1, 0, -1),
    (1, 0, 2, -1),
];

/// Upper-triangle storage order of a symmetric 3x3 array.
pub const SYM_INDEX: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

pub fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    if i == j || j == k || i == k {
        return 0;
    }
    EPSILON
        .iter()
        .find(|&&(a, b, c, _)| (a, b, c) == (i, j, k))
        .map(|e| e.3)
        .unwrap_or(0)
}

pub fn delta(i: usize, j: usize) -> i64 {
    (i == j) as i64
}

/// Storage slot of `(i, j)` in [`SYM_INDEX`].
pub fn sym_slot(i: usize, j: usize) -> usize {
    let (a, b) = if i <= j { (i, j) } else { (j, i) };
    SYM_INDEX.iter().position(|&p| p == (a, b)).expect("index < 3")
}

/// Checked partial derivative with a 1-based axis.
pub fn partial(p: &Poly3, axis: usize) -> Result<Poly3> {
    if !(1..=3).contains(&axis) {
        return Err(Error::InvalidAxis(axis));
    }
    Ok(p.derivative(axis - 1))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VecField(pub [Poly3; 3]);

impl VecField {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_fn(f: impl FnMut(usize) -> Poly3) -> Self {
        VecField(std::array::from_fn(f))
    }

    pub fn constant(c: [Rational; 3]) -> Self {
        let [a, b, d] = c;
        VecField([a.into(), b.into(), d.into()])
    }

    /// The identity field `x -> x`.
    pub fn position() -> Self {
        Self::from_fn(Poly3::var)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Poly3::is_zero)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(Poly3::degree).max().unwrap_or(-1)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_fn(|i| self.0[i].scale(c))
    }

    pub fn value_at(&self, point: &[Rational; 3]) -> [Rational; 3] {
        std::array::from_fn(|i| self.0[i].evaluate(point))
    }

    /// Cross product `a x b` of two fields.
    pub fn cross(&self, other: &VecField) -> VecField {
        let mut out = VecField::zero();
        for &(i, j, k, s) in &EPSILON {
            let t = &self.0[j] * &other.0[k];
            if s > 0 {
                out.0[i] += t;
            } else {
                out.0[i] -= t;
            }
        }
        out
    }
}

impl Add for &VecField {
    type Output = VecField;
    fn add(self, rhs: &VecField) -> VecField {
        VecField::from_fn(|i| &self.0[i] + &rhs.0[i])
    }
}

impl Sub for &VecField {
    type Output = VecField;
    fn sub(self, rhs: &VecField) -> VecField {
        VecField::from_fn(|i| &self.0[i] - &rhs.0[i])
    }
}

impl Neg for &VecField {
    type Output = VecField;
    fn neg(self) -> VecField {
        VecField::from_fn(|i| -&self.0[i])
    }
}

/// General 3x3 matrix field, indexed `[row][col]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Mat3Field(pub [[Poly3; 3]; 3]);

impl Mat3Field {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Poly3) -> Self {
        Mat3Field(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    /// The constant identity matrix field.
    pub fn identity() -> Self {
        Self::from_fn(|i, j| Poly3::int(delta(i, j)))
    }

    /// Elementary matrix with a single entry `p` at `(row, col)`.
    pub fn elementary(row: usize, col: usize, p: Poly3) -> Self {
        let mut m = Self::zero();
        m.0[row][col] = p;
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly3 {
        &self.0[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Poly3::is_zero)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().flatten().map(Poly3::degree).max().unwrap_or(-1)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].clone())
    }

    pub fn trace(&self) -> Poly3 {
        &(&self.0[0][0] + &self.0[1][1]) + &self.0[2][2]
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_fn(|i, j| self.0[i][j].scale(c))
    }

    pub fn column(&self, col: usize) -> VecField {
        VecField::from_fn(|i| self.0[i][col].clone())
    }

    pub fn from_columns(cols: &[VecField; 3]) -> Self {
        Self::from_fn(|i, j| cols[j].0[i].clone())
    }

    /// Symmetric part `(M + M^t) / 2`.
    pub fn sym_part(&self) -> SymField {
        let half = crate::poly::rat(1, 2);
        SymField::from_fn(|i, j| (&self.0[i][j] + &self.0[j][i]).scale(&half))
    }

    /// Axial vector of the skew part, `s_i = (1/2) eps_ijk M_jk`.
    pub fn skew_vector(&self) -> VecField {
        let mut out = VecField::zero();
        for &(i, j, k, s) in &EPSILON {
            let t = self.0[j][k].scale(&crate::poly::rat(s, 2));
            out.0[i] += t;
        }
        out
    }

    /// Skew matrix `M_jk = eps_jki s_i` whose axial vector is `s`.
    pub fn from_skew_vector(s: &VecField) -> Self {
        let mut m = Mat3Field::zero();
        for &(j, k, i, sign) in &EPSILON {
            if sign > 0 {
                m.0[j][k] += &s.0[i];
            } else {
                m.0[j][k] -= &s.0[i];
            }
        }
        m
    }
}

impl Add for &Mat3Field {
    type Output = Mat3Field;
    fn add(self, rhs: &Mat3Field) -> Mat3Field {
        Mat3Field::from_fn(|i, j| &self.0[i][j] + &rhs.0[i][j])
    }
}

impl Sub for &Mat3Field {
    type Output = Mat3Field;
    fn sub(self, rhs: &Mat3Field) -> Mat3Field {
        Mat3Field::from_fn(|i, j| &self.0[i][j] - &rhs.0[i][j])
    }
}

impl Neg for &Mat3Field {
    type Output = Mat3Field;
    fn neg(self) -> Mat3Field {
        Mat3Field::from_fn(|i, j| -&self.0[i][j])
    }
}

/// Symmetric 3x3 field; only the upper triangle is stored (see [`SYM_INDEX`]).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymField(pub [Poly3; 6]);

impl SymField {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds from a function evaluated on the upper triangle only.
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Poly3) -> Self {
        SymField(std::array::from_fn(|s| {
            let (i, j) = SYM_INDEX[s];
            f(i, j)
        }))
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| Poly3::int(delta(i, j)))
    }

    pub fn diag(entries: [Poly3; 3]) -> Self {
        let [a, b, c] = entries;
        SymField([a, Poly3::zero(), Poly3::zero(), b, Poly3::zero(), c])
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly3 {
        &self.0[sym_slot(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly3) {
        self.0[sym_slot(i, j)] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Poly3::is_zero)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(Poly3::degree).max().unwrap_or(-1)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        SymField(std::array::from_fn(|s| self.0[s].scale(c)))
    }

    pub fn trace(&self) -> Poly3 {
        &(&self.0[0] + &self.0[3]) + &self.0[5]
    }

    pub fn to_matrix(&self) -> Mat3Field {
        Mat3Field::from_fn(|i, j| self.get(i, j).clone())
    }

    /// Repackages a matrix field that is exactly symmetric; never symmetrizes.
    pub fn try_from_matrix(m: &Mat3Field) -> Result<Self> {
        for i in 0..3 {
            for j in (i + 1)..3 {
                if m.0[i][j] != m.0[j][i] {
                    return Err(Error::NotSymmetric { row: i + 1, col: j + 1 });
                }
            }
        }
        Ok(Self::from_fn(|i, j| m.0[i][j].clone()))
    }
}

impl Add for &SymField {
    type Output = SymField;
    fn add(self, rhs: &SymField) -> SymField {
        SymField(std::array::from_fn(|s| &self.0[s] + &rhs.0[s]))
    }
}

impl Sub for &SymField {
    type Output = SymField;
    fn sub(self, rhs: &SymField) -> SymField {
        SymField(std::array::from_fn(|s| &self.0[s] - &rhs.0[s]))
    }
}

impl Neg for &SymField {
    type Output = SymField;
    fn neg(self) -> SymField {
        SymField(std::array::from_fn(|s| -&self.0[s]))
    }
}

impl fmt::Display for VecField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Display for Mat3Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}, {}, {}", row[0], row[1], row[2])?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for SymField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_matrix().fmt(f)
    }
}
