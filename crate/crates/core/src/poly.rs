//! Exact polynomials in three variables with rational coefficients.
//!
//! [`Poly3`] is the scalar type of every field in the crate. Terms live in a
//! `BTreeMap` keyed by [`Monomial`], whose ordering is graded lexicographic
//! with `x1 > x2 > x3`. Zero coefficients are never stored, so two polynomials
//! are equal exactly when their term maps are equal.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Builds the rational `num / den`. Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a rational as an exact `p/q` string, always with an explicit denominator.
pub fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or `p` into a rational in lowest terms.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Exponent triple `(a1, a2, a3)` standing for `x1^a1 x2^a2 x3^a3`.
///
/// Ordered by total degree first, then lexicographically with `x1 > x2 > x3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The monomial `x_{axis+1}` (0-based axis).
    pub fn var(axis: usize) -> Monomial {
        let mut e = [0; 3];
        e[axis] = 1;
        Monomial(e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }

    /// All monomials of total degree at most `bound`, in ascending graded-lex order.
    /// Negative bounds give an empty list.
    pub fn up_to_degree(bound: i64) -> Vec<Monomial> {
        let mut out = Vec::new();
        if bound < 0 {
            return out;
        }
        let bound = bound as u32;
        for total in 0..=bound {
            // ascending lex with x1 > x2 > x3: smallest a1 first, then smallest a2
            for a1 in 0..=total {
                for a2 in 0..=(total - a1) {
                    out.push(Monomial([a1, a2, total - a1 - a2]));
                }
            }
        }
        out
    }

    /// Number of monomials of total degree at most `bound` in three variables.
    pub fn count_up_to(bound: i64) -> usize {
        if bound < 0 {
            0
        } else {
            let d = bound as usize;
            (d + 1) * (d + 2) * (d + 3) / 6
        }
    }

    fn eval(&self, point: &[Rational; 3]) -> Rational {
        let mut acc = Rational::one();
        for (x, &e) in point.iter().zip(self.0.iter()) {
            if e > 0 {
                acc *= num_traits::pow(x.clone(), e as usize);
            }
        }
        acc
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `x1, x2, x3` with exact rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly3 {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly3 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(int(n))
    }

    /// The coordinate function `x_{axis+1}` (0-based axis).
    pub fn var(axis: usize) -> Self {
        Self::term(Monomial::var(axis), Rational::one())
    }

    /// Single term `coef * x^exp`; zero coefficients give the zero polynomial.
    pub fn term(exp: Monomial, coef: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(exp, coef);
        }
        Poly3 { terms }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut p = Poly3::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; the zero polynomial has degree `-1`.
    pub fn degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| m.degree() as i64)
            .max()
            .unwrap_or(-1)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Poly3::zero();
        }
        Poly3 {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (*m, v * c))
                .collect(),
        }
    }

    /// Formal partial derivative along a 0-based axis.
    ///
    /// Panics if `axis > 2`; use [`crate::tensor::partial`] for a checked, 1-based version.
    pub fn derivative(&self, axis: usize) -> Self {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[axis];
            if e == 0 {
                continue;
            }
            let mut exp = m.0;
            exp[axis] -= 1;
            out.insert(Monomial(exp), c * int(e as i64));
        }
        Poly3 { terms: out }
    }

    pub fn evaluate(&self, point: &[Rational; 3]) -> Rational {
        self.terms
            .iter()
            .fold(Rational::zero(), |acc, (m, c)| acc + c * m.eval(point))
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::ONE)
    }

    /// `p(t*x)` with the power of `t` integrated over `[0, 1]`: a term of degree `k` is divided by `k + 1 + shift`.
    pub(crate) fn radial_average(&self, shift: u32) -> Self {
        Poly3 {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c / int((m.degree() + 1 + shift) as i64)))
                .collect(),
        }
    }
}

impl fmt::Display for Poly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, e)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl From<Rational> for Poly3 {
    fn from(c: Rational) -> Self {
        Poly3::constant(c)
    }
}

impl<'a> Add<&'a Poly3> for &'a Poly3 {
    type Output = Poly3;
    fn add(self, rhs: &Poly3) -> Poly3 {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly3 {
    type Output = Poly3;
    fn add(mut self, rhs: Poly3) -> Poly3 {
        self += &rhs;
        self
    }
}

impl AddAssign<&Poly3> for Poly3 {
    fn add_assign(&mut self, rhs: &Poly3) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl AddAssign for Poly3 {
    fn add_assign(&mut self, rhs: Poly3) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl<'a> Sub<&'a Poly3> for &'a Poly3 {
    type Output = Poly3;
    fn sub(self, rhs: &Poly3) -> Poly3 {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly3 {
    type Output = Poly3;
    fn sub(mut self, rhs: Poly3) -> Poly3 {
        self -= &rhs;
        self
    }
}

impl SubAssign<&Poly3> for Poly3 {
    fn sub_assign(&mut self, rhs: &Poly3) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl SubAssign for Poly3 {
    fn sub_assign(&mut self, rhs: Poly3) {
        *self -= &rhs;
    }
}

impl Neg for &Poly3 {
    type Output = Poly3;
    fn neg(self) -> Poly3 {
        Poly3 {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Neg for Poly3 {
    type Output = Poly3;
    fn neg(self) -> Poly3 {
        -&self
    }
}

impl<'a> Mul<&'a Poly3> for &'a Poly3 {
    type Output = Poly3;
    fn mul(self, rhs: &Poly3) -> Poly3 {
        let mut out = Poly3::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Poly3 {
    type Output = Poly3;
    fn mul(self, rhs: Poly3) -> Poly3 {
        &self * &rhs
    }
}

impl std::iter::Sum for Poly3 {
    fn sum<I: Iterator<Item = Poly3>>(iter: I) -> Poly3 {
        iter.fold(Poly3::zero(), |acc, p| acc + p)
    }
}
