//! Degree-truncated polynomial field spaces and their coordinates.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly3, Rational};

/// Tensor type of one slot. Skew 2-tensors are stored as `Vector` slots via
/// their axial vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SlotKind {
    Scalar,
    Vector,
    Symmetric,
    Matrix,
}

impl SlotKind {
    pub fn components(&self) -> usize {
        match self {
            SlotKind::Scalar => 1,
            SlotKind::Vector => 3,
            SlotKind::Symmetric => 6,
            SlotKind::Matrix => 9,
        }
    }

    /// Fibre name: `R`, `R3`, `S2R3` or `R3xR3`.
    pub fn fibre(&self) -> &'static str {
        match self {
            SlotKind::Scalar => "R",
            SlotKind::Vector => "R3",
            SlotKind::Symmetric => "S2R3",
            SlotKind::Matrix => "R3xR3",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slot {
    pub label: String,
    pub kind: SlotKind,
    /// Maximal total degree; negative bounds give a zero-dimensional slot.
    pub bound: i64,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Slot {
    pub fn new(label: impl Into<String>, kind: SlotKind, bound: i64) -> Self {
        let monomials = Monomial::up_to_degree(bound);
        let index = monomials.iter().enumerate().map(|(n, m)| (*m, n)).collect();
        Slot {
            label: label.into(),
            kind,
            bound,
            monomials,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.kind.components() * self.monomials.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }
}

/// Ordered direct sum of slots. Coordinates are slot-major, then
/// component-major, then by monomial in ascending graded-lex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSpace {
    slots: Vec<Slot>,
}

impl GradedSpace {
    pub fn new(slots: Vec<Slot>) -> Self {
        GradedSpace { slots }
    }

    pub fn single(label: &str, kind: SlotKind, bound: i64) -> Self {
        Self::new(vec![Slot::new(label, kind, bound)])
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn dim(&self) -> usize {
        self.slots.iter().map(Slot::dim).sum()
    }

    /// Total number of polynomial components across slots.
    pub fn num_components(&self) -> usize {
        self.slots.iter().map(|s| s.kind.components()).sum()
    }

    /// Same slot kinds and degree bounds, ignoring labels.
    pub fn matches(&self, other: &GradedSpace) -> bool {
        self.slots.len() == other.slots.len()
            && self
                .slots
                .iter()
                .zip(&other.slots)
                .all(|(a, b)| a.kind == b.kind && a.bound == b.bound)
    }

    /// `R3 + S2R3`-style description of the fibres.
    pub fn shape(&self) -> Vec<&'static str> {
        self.slots.iter().map(|s| s.kind.fibre()).collect()
    }

    pub fn slot_position(&self, label: &str) -> Option<usize> {
        self.slots.iter().position(|s| s.label == label)
    }

    /// Coordinate range occupied by slot `n`.
    pub fn slot_range(&self, n: usize) -> std::ops::Range<usize> {
        let start: usize = self.slots[..n].iter().map(Slot::dim).sum();
        start..start + self.slots[n].dim()
    }

    /// Space with the listed slots removed.
    pub fn without(&self, removed: &[usize]) -> GradedSpace {
        GradedSpace {
            slots: self
                .slots
                .iter()
                .enumerate()
                .filter(|(n, _)| !removed.contains(n))
                .map(|(_, s)| s.clone())
                .collect(),
        }
    }

    /// Flattened components of the `idx`-th basis element.
    pub fn basis_element(&self, idx: usize) -> Vec<Poly3> {
        let mut comps = vec![Poly3::zero(); self.num_components()];
        let mut offset = 0;
        let mut comp_offset = 0;
        for slot in &self.slots {
            let d = slot.dim();
            if idx < offset + d {
                let local = idx - offset;
                let nm = slot.monomials.len();
                comps[comp_offset + local / nm] = Poly3::term(slot.monomials[local % nm], Rational::from_integer(1.into()));
                return comps;
            }
            offset += d;
            comp_offset += slot.kind.components();
        }
        panic!("basis index {idx} out of range for dimension {}", self.dim());
    }

    /// Sparse coordinates of flattened components; fails if a degree bound is exceeded.
    pub fn coordinates(&self, comps: &[Poly3]) -> Result<Vec<(usize, Rational)>> {
        if comps.len() != self.num_components() {
            return Err(Error::Internal(format!(
                "expected {} components, got {}",
                self.num_components(),
                comps.len()
            )));
        }
        let mut out = Vec::new();
        let mut offset = 0;
        let mut c = 0;
        for slot in &self.slots {
            let nm = slot.monomials.len();
            for k in 0..slot.kind.components() {
                for (m, v) in comps[c].terms() {
                    let Some(&pos) = slot.index.get(m) else {
                        return Err(Error::Internal(format!(
                            "slot `{}` has degree bound {} but received a term of degree {}",
                            slot.label,
                            slot.bound,
                            m.degree()
                        )));
                    };
                    out.push((offset + k * nm + pos, v.clone()));
                }
                c += 1;
            }
            offset += slot.dim();
        }
        out.sort_by_key(|(i, _)| *i);
        Ok(out)
    }

    /// Inverse of [`GradedSpace::coordinates`] on a dense coordinate vector.
    pub fn from_coordinates(&self, coords: &[Rational]) -> Vec<Poly3> {
        assert_eq!(coords.len(), self.dim());
        let mut comps = Vec::with_capacity(self.num_components());
        let mut offset = 0;
        for slot in &self.slots {
            let nm = slot.monomials.len();
            for k in 0..slot.kind.components() {
                let base = offset + k * nm;
                comps.push(Poly3::from_terms(
                    slot.monomials
                        .iter()
                        .enumerate()
                        .map(|(n, m)| (*m, coords[base + n].clone())),
                ));
            }
            offset += slot.dim();
        }
        comps
    }
}

impl fmt::Display for GradedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .slots
            .iter()
            .map(|s| format!("{}:{}(deg<={})", s.label, s.kind.fibre(), s.bound))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    #[test]
    fn dimensions() {
        let s = GradedSpace::new(vec![
            Slot::new("a", SlotKind::Scalar, 1),
            Slot::new("b", SlotKind::Symmetric, 2),
            Slot::new("c", SlotKind::Vector, -1),
        ]);
        assert_eq!(s.dim(), 4 + 60);
        assert_eq!(s.slot_range(1), 4..64);
        assert_eq!(s.slot_range(2), 64..64);
        assert_eq!(s.shape(), vec!["R", "S2R3", "R3"]);
    }

    #[test]
    fn coordinates_invert_basis() {
        let s = GradedSpace::new(vec![
            Slot::new("x", SlotKind::Vector, 2),
            Slot::new("m", SlotKind::Matrix, 1),
        ]);
        for idx in 0..s.dim() {
            let e = s.basis_element(idx);
            assert_eq!(s.coordinates(&e).unwrap(), vec![(idx, int(1))]);
            let mut dense = vec![int(0); s.dim()];
            dense[idx] = int(1);
            assert_eq!(s.from_coordinates(&dense), e);
        }
    }

    #[test]
    fn degree_overflow_is_an_error() {
        let s = GradedSpace::single("x", SlotKind::Scalar, 1);
        let p = &Poly3::var(0) * &Poly3::var(1);
        assert!(s.coordinates(&[p]).is_err());
    }
}
