//! Chain complexes of truncated field spaces, exactness checks and
//! cancellation of invertible blocks.

use num_traits::Zero;
use serde::Serialize;

use crate::complex::linalg::RatMatrix;
use crate::complex::ops::{
    mat_comps, matrix_of, sym_comps, to_mat, to_sym, to_vec, vec_comps, LinOpMatrix, OperatorId,
};
use crate::complex::space::{GradedSpace, Slot, SlotKind};
use crate::connection::{w_curl, w_div, w_grad, WField, WOneForm};
use crate::error::{Error, Result};
use crate::poly::{rational_to_string, Poly3, Rational};
use crate::tensor::Mat3Field;

/// `maps[k]` goes from `spaces[k]` to `spaces[k + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub name: String,
    pub spaces: Vec<GradedSpace>,
    pub maps: Vec<LinOpMatrix>,
}

impl ChainComplex {
    pub fn new(name: impl Into<String>, maps: Vec<LinOpMatrix>) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::Input("a complex needs at least one map".into()));
        }
        for w in maps.windows(2) {
            if !w[0].codomain.matches(&w[1].domain) {
                return Err(Error::Internal(format!(
                    "`{}` lands in {} but `{}` starts from {}",
                    w[0].name, w[0].codomain, w[1].name, w[1].domain
                )));
            }
        }
        let mut spaces: Vec<GradedSpace> = maps.iter().map(|m| m.domain.clone()).collect();
        spaces.push(maps.last().expect("nonempty").codomain.clone());
        Ok(ChainComplex {
            name: name.into(),
            spaces,
            maps,
        })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(GradedSpace::dim).collect()
    }

    pub fn shapes(&self) -> Vec<Vec<&'static str>> {
        self.spaces.iter().map(GradedSpace::shape).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlotReport {
    pub space: String,
    pub dim: usize,
    /// Kernel dimension of the outgoing map (the full dimension at the last slot).
    pub kernel_dim: usize,
    /// Rank of the incoming map (zero at the first slot).
    pub incoming_rank: usize,
    /// `kernel_dim - incoming_rank`, reported at interior slots only.
    pub defect: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexReport {
    pub complex: String,
    pub slots: Vec<SlotReport>,
    pub ranks: Vec<usize>,
    /// Largest absolute entry of each consecutive composition, `"0"` when it vanishes.
    pub composition_residuals: Vec<String>,
}

impl ComplexReport {
    pub fn compositions_vanish(&self) -> bool {
        self.composition_residuals.iter().all(|r| r == "0")
    }

    pub fn interior_defects(&self) -> Vec<i64> {
        self.slots.iter().filter_map(|s| s.defect).collect()
    }

    pub fn is_exact(&self) -> bool {
        self.interior_defects().iter().all(|&d| d == 0)
    }
}

fn residual_string(m: &RatMatrix) -> String {
    let r = m.max_abs();
    if r.is_zero() {
        "0".into()
    } else {
        rational_to_string(&r)
    }
}

pub fn verify_complex(c: &ChainComplex) -> ComplexReport {
    let ranks: Vec<usize> = c.maps.iter().map(LinOpMatrix::rank).collect();
    let composition_residuals = c
        .maps
        .windows(2)
        .map(|w| residual_string(&w[1].entries.mul(&w[0].entries)))
        .collect();
    let n = c.spaces.len();
    let slots = (0..n)
        .map(|k| {
            let dim = c.spaces[k].dim();
            let kernel_dim = if k + 1 < n { dim - ranks[k] } else { dim };
            let incoming_rank = if k > 0 { ranks[k - 1] } else { 0 };
            let defect = (k > 0 && k + 1 < n).then(|| kernel_dim as i64 - incoming_rank as i64);
            SlotReport {
                space: c.spaces[k].to_string(),
                dim,
                kernel_dim,
                incoming_rank,
                defect,
            }
        })
        .collect();
    ComplexReport {
        complex: c.name.clone(),
        slots,
        ranks,
        composition_residuals,
    }
}

/// Displacement, strain, stress and load with degree bounds `(d+1, d, d-2, d-3)`.
pub fn elasticity_complex(d: i64) -> Result<ChainComplex> {
    ChainComplex::new(
        format!("elasticity(d={d})"),
        vec![
            matrix_of(OperatorId::SymGrad, d + 1)?,
            matrix_of(OperatorId::CurlCurl, d)?,
            matrix_of(OperatorId::DivSym, d - 2)?,
        ],
    )
}

/// Scalars, vectors, vectors, scalars with degree bounds `(d+1, d, d-1, d-2)`.
pub fn grad_curl_div_complex(d: i64) -> Result<ChainComplex> {
    ChainComplex::new(
        format!("grad-curl-div(d={d})"),
        vec![
            matrix_of(OperatorId::Grad, d + 1)?,
            matrix_of(OperatorId::Curl, d)?,
            matrix_of(OperatorId::Div, d - 1)?,
        ],
    )
}

/// The W-valued complex `grad, curl, div` with bounds `(d+1, d, d-1, d-2)` on
/// the leading slot of each space.
pub fn w_complex(d: i64) -> Result<ChainComplex> {
    ChainComplex::new(
        format!("w(d={d})"),
        vec![
            matrix_of(OperatorId::WGrad, d + 1)?,
            matrix_of(OperatorId::WCurl, d)?,
            matrix_of(OperatorId::WDiv, d - 1)?,
        ],
    )
}

/// Slot labels of [`w_split_complex`].
pub mod labels {
    pub const X: &str = "X";
    pub const Y: &str = "Y";
    pub const SIGMA_SKEW: &str = "Sigma.skew";
    pub const SIGMA_SYM: &str = "Sigma.sym";
    pub const XI: &str = "Xi";
    pub const THETA1: &str = "Theta1";
    pub const THETA2_SYM: &str = "Theta2.sym";
    pub const THETA2_SKEW: &str = "Theta2.skew";
    pub const LOAD_X: &str = "Load.X";
    pub const LOAD_Y: &str = "Load.Y";
}

fn split_matrix(m: &Mat3Field) -> (Vec<Poly3>, Vec<Poly3>) {
    (vec_comps(&m.skew_vector()), sym_comps(&m.sym_part()))
}

fn join_matrix(skew: &[Poly3], sym: &[Poly3]) -> Mat3Field {
    &to_sym(sym).to_matrix() + &Mat3Field::from_skew_vector(&to_vec(skew))
}

/// The W-valued complex with the first form slot split into skew and
/// symmetric parts at stage 1 and the second at stage 2, so each summand of
/// the big diagram is its own slot. Skew parts are stored as axial vectors.
pub fn w_split_complex(d: i64) -> Result<ChainComplex> {
    use labels::*;
    use SlotKind::*;
    if d < 3 {
        return Err(Error::DegreeTooLow {
            op: "w_split_complex".into(),
            min: 3,
            got: d,
        });
    }
    let s0 = GradedSpace::new(vec![Slot::new(X, Vector, d + 1), Slot::new(Y, Vector, d)]);
    let s1 = GradedSpace::new(vec![
        Slot::new(SIGMA_SKEW, Vector, d),
        Slot::new(SIGMA_SYM, Symmetric, d),
        Slot::new(XI, Matrix, d - 1),
    ]);
    let s2 = GradedSpace::new(vec![
        Slot::new(THETA1, Matrix, d - 1),
        Slot::new(THETA2_SYM, Symmetric, d - 2),
        Slot::new(THETA2_SKEW, Vector, d - 2),
    ]);
    let s3 = GradedSpace::new(vec![Slot::new(LOAD_X, Vector, d - 2), Slot::new(LOAD_Y, Vector, d - 3)]);

    let grad = LinOpMatrix::build("w_grad", s0, s1.clone(), |c| {
        let f = w_grad(&WField {
            x: to_vec(&c[0..3]),
            y: to_vec(&c[3..6]),
        });
        let (skew, sym) = split_matrix(&f.sigma);
        Ok([skew, sym, mat_comps(&f.xi)].concat())
    })?;
    let curl = LinOpMatrix::build("w_curl", s1, s2.clone(), |c| {
        let psi = WOneForm {
            sigma: join_matrix(&c[0..3], &c[3..9]),
            xi: to_mat(&c[9..18]),
        };
        let t = w_curl(&psi);
        let (skew, sym) = split_matrix(&t.xi);
        Ok([mat_comps(&t.sigma), sym, skew].concat())
    })?;
    let div = LinOpMatrix::build("w_div", s2, s3, |c| {
        let theta = WOneForm {
            sigma: to_mat(&c[0..9]),
            xi: join_matrix(&c[15..18], &c[9..15]),
        };
        let l = w_div(&theta);
        Ok([vec_comps(&l.x), vec_comps(&l.y)].concat())
    })?;
    ChainComplex::new(format!("w-split(d={d})"), vec![grad, curl, div])
}

fn coordinate_indices(space: &GradedSpace, slots: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut kept = Vec::new();
    let mut chosen = Vec::new();
    for n in 0..space.slots().len() {
        let r = space.slot_range(n);
        if slots.contains(&n) {
            chosen.extend(r);
        } else {
            kept.extend(r);
        }
    }
    (kept, chosen)
}

fn resolve(space: &GradedSpace, labels: &[&str]) -> Result<Vec<usize>> {
    labels
        .iter()
        .map(|l| {
            space
                .slot_position(l)
                .ok_or_else(|| Error::Input(format!("no slot labelled `{l}` in {space}")))
        })
        .collect()
}

/// Cancels an invertible block of the map at `stage`.
///
/// With the stage map written as `[[a, b], [c, phi]]` on
/// `(kept, cancelled)` domain and codomain summands, the cancelled summands
/// are dropped, the stage map becomes `a - b phi^-1 c`, the previous map is
/// projected onto the kept domain summands and the next map is restricted to
/// the kept codomain summands.
pub fn schur_reduce(
    c: &ChainComplex,
    stage: usize,
    domain_slots: &[&str],
    codomain_slots: &[&str],
) -> Result<ChainComplex> {
    if stage >= c.maps.len() {
        return Err(Error::Input(format!(
            "stage {stage} out of range for a complex with {} maps",
            c.maps.len()
        )));
    }
    let dom = &c.spaces[stage];
    let cod = &c.spaces[stage + 1];
    let dom_sel = resolve(dom, domain_slots)?;
    let cod_sel = resolve(cod, codomain_slots)?;
    let (a_idx, b_idx) = coordinate_indices(dom, &dom_sel);
    let (a2_idx, b2_idx) = coordinate_indices(cod, &cod_sel);

    let m = &c.maps[stage].entries;
    let phi = m.select(&b2_idx, &b_idx);
    let phi_inv = phi.inverse()?;
    let a = m.select(&a2_idx, &a_idx);
    let b = m.select(&a2_idx, &b_idx);
    let cc = m.select(&b2_idx, &a_idx);
    let reduced = a.sub(&b.mul(&phi_inv).mul(&cc));

    let new_dom = dom.without(&dom_sel);
    let new_cod = cod.without(&cod_sel);
    let mut maps = c.maps.clone();
    maps[stage] = LinOpMatrix {
        name: c.maps[stage].name.clone(),
        domain: new_dom.clone(),
        codomain: new_cod.clone(),
        entries: reduced,
    };
    if stage > 0 {
        let prev = &c.maps[stage - 1];
        let all: Vec<usize> = (0..prev.domain.dim()).collect();
        maps[stage - 1] = LinOpMatrix {
            name: prev.name.clone(),
            domain: prev.domain.clone(),
            codomain: new_dom,
            entries: prev.entries.select(&a_idx, &all),
        };
    }
    if stage + 1 < c.maps.len() {
        let next = &c.maps[stage + 1];
        let all: Vec<usize> = (0..next.codomain.dim()).collect();
        maps[stage + 1] = LinOpMatrix {
            name: next.name.clone(),
            domain: new_cod,
            codomain: next.codomain.clone(),
            entries: next.entries.select(&all, &a2_idx),
        };
    }
    ChainComplex::new(c.name.clone(), maps)
}

/// Cancels only the `Xi -> Theta1` pair of [`w_split_complex`].
pub fn halfway_complex(d: i64) -> Result<ChainComplex> {
    let w = w_split_complex(d)?;
    let mut h = schur_reduce(&w, 1, &[labels::XI], &[labels::THETA1])?;
    h.name = format!("halfway(d={d})");
    Ok(h)
}

/// Cancels all three isomorphic pairs of [`w_split_complex`].
pub fn fully_reduced_complex(d: i64) -> Result<ChainComplex> {
    let h = halfway_complex(d)?;
    let h = schur_reduce(&h, 0, &[labels::Y], &[labels::SIGMA_SKEW])?;
    let mut e = schur_reduce(&h, 2, &[labels::THETA2_SKEW], &[labels::LOAD_X])?;
    e.name = format!("reduced-w(d={d})");
    Ok(e)
}

/// `Some(c)` with `reduced = c * reference` and `c != 0`, otherwise `None`.
pub fn proportionality(reduced: &RatMatrix, reference: &RatMatrix) -> Option<Rational> {
    if (reduced.rows(), reduced.cols()) != (reference.rows(), reference.cols()) {
        return None;
    }
    let (i, j, r) = (0..reference.rows())
        .find_map(|i| reference.row(i).iter().next().map(|(&j, v)| (i, j, v.clone())))?;
    let c = reduced.get(i, j) / r;
    if c.is_zero() || reduced.sub(&reference.scale(&c)).nnz() != 0 {
        return None;
    }
    Some(c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageComparison {
    pub stage: usize,
    pub reduced_map: String,
    pub reference_map: String,
    /// `p/q` factor with `reduced = factor * reference`, absent if not proportional.
    pub constant: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElasticityDerivation {
    pub degree: i64,
    pub halfway_shapes: Vec<Vec<&'static str>>,
    pub halfway_dims: Vec<usize>,
    pub reduced_shapes: Vec<Vec<&'static str>>,
    pub stages: Vec<StageComparison>,
    pub w_report: ComplexReport,
    pub halfway_report: ComplexReport,
    pub reduced_report: ComplexReport,
    pub elasticity_report: ComplexReport,
}

impl ElasticityDerivation {
    pub fn all_proportional(&self) -> bool {
        self.stages.iter().all(|s| s.constant.is_some())
    }

    pub fn constants(&self) -> Vec<Option<Rational>> {
        self.stages
            .iter()
            .map(|s| s.constant.as_deref().and_then(crate::poly::parse_rational))
            .collect()
    }
}

/// Derives the elasticity complex from the W-valued complex by cancellation
/// and compares each reduced map with the hand-coded operator. Slots are
/// identified by the identity on coordinates: the surviving summands are
/// displacement, strain, stress and load with the same kinds and bounds.
pub fn derive_elasticity(d: i64) -> Result<ElasticityDerivation> {
    let w = w_split_complex(d)?;
    let halfway = halfway_complex(d)?;
    let reduced = fully_reduced_complex(d)?;
    let reference = elasticity_complex(d)?;

    let stages = reduced
        .maps
        .iter()
        .zip(reference.maps.iter())
        .enumerate()
        .map(|(stage, (r, h))| {
            let same_spaces = r.domain.dim() == h.domain.dim()
                && r.codomain.dim() == h.codomain.dim()
                && r.domain.shape() == h.domain.shape()
                && r.codomain.shape() == h.codomain.shape();
            let constant = same_spaces
                .then(|| proportionality(&r.entries, &h.entries))
                .flatten()
                .map(|c| rational_to_string(&c));
            StageComparison {
                stage,
                reduced_map: r.name.clone(),
                reference_map: h.name.clone(),
                constant,
            }
        })
        .collect();

    Ok(ElasticityDerivation {
        degree: d,
        halfway_shapes: halfway.shapes(),
        halfway_dims: halfway.dims(),
        reduced_shapes: reduced.shapes(),
        stages,
        w_report: verify_complex(&w),
        halfway_report: verify_complex(&halfway),
        reduced_report: verify_complex(&reduced),
        elasticity_report: verify_complex(&reference),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    #[test]
    fn zero_coupling_leaves_surviving_map_alone() {
        // 0 -> A + B -> A' + B' -> 0 with b = c = 0 and phi = 2
        let a_space = GradedSpace::new(vec![
            Slot::new("A", SlotKind::Scalar, 0),
            Slot::new("B", SlotKind::Scalar, 0),
        ]);
        let mut m = RatMatrix::zeros(2, 2);
        m.set(0, 0, int(3));
        m.set(1, 1, int(2));
        let map = LinOpMatrix {
            name: "m".into(),
            domain: a_space.clone(),
            codomain: a_space,
            entries: m,
        };
        let c = ChainComplex::new("toy", vec![map]).unwrap();
        let r = schur_reduce(&c, 0, &["B"], &["B"]).unwrap();
        assert_eq!(r.maps[0].entries.to_dense(), vec![vec![int(3)]]);
    }

    #[test]
    fn singular_block_is_rejected() {
        let space = GradedSpace::new(vec![
            Slot::new("A", SlotKind::Scalar, 0),
            Slot::new("B", SlotKind::Scalar, 0),
        ]);
        let mut m = RatMatrix::zeros(2, 2);
        m.set(0, 0, int(1));
        let map = LinOpMatrix {
            name: "m".into(),
            domain: space.clone(),
            codomain: space,
            entries: m,
        };
        let c = ChainComplex::new("toy", vec![map]).unwrap();
        assert!(matches!(
            schur_reduce(&c, 0, &["B"], &["B"]),
            Err(Error::NonInvertibleBlock { rank: 0, .. })
        ));
        assert!(schur_reduce(&c, 0, &["C"], &["B"]).is_err());
        assert!(schur_reduce(&c, 3, &["B"], &["B"]).is_err());
    }

    #[test]
    fn mismatched_maps_are_rejected() {
        let a = matrix_of(OperatorId::SymGrad, 3).unwrap();
        let b = matrix_of(OperatorId::CurlCurl, 3).unwrap();
        assert!(ChainComplex::new("bad", vec![a, b]).is_err());
    }

    #[test]
    fn proportionality_detects_scale() {
        let r = RatMatrix::from_dense(&[vec![int(2), int(0)], vec![int(0), int(4)]]);
        let h = RatMatrix::from_dense(&[vec![int(1), int(0)], vec![int(0), int(2)]]);
        assert_eq!(proportionality(&r, &h), Some(int(2)));
        let h2 = RatMatrix::from_dense(&[vec![int(1), int(0)], vec![int(0), int(1)]]);
        assert_eq!(proportionality(&r, &h2), None);
        assert_eq!(proportionality(&RatMatrix::zeros(2, 2), &h), None);
    }

    #[test]
    fn small_complexes_compose_to_zero() {
        let r = verify_complex(&elasticity_complex(3).unwrap());
        assert!(r.compositions_vanish());
        assert_eq!(r.slots[0].kernel_dim, 6);
        let r = verify_complex(&grad_curl_div_complex(3).unwrap());
        assert!(r.compositions_vanish());
        assert_eq!(r.slots[0].kernel_dim, 1);
    }
}
