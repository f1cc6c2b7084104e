//! Deterministic random polynomial fields for property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::connection::{WField, WOneForm};
use crate::field::{Field, FieldKind};
use crate::poly::{int, Monomial, Poly3};
use crate::tensor::{Mat3Field, SymField, VecField};

/// Coefficients are drawn uniformly from `-COEFF_RANGE..=COEFF_RANGE`.
pub const COEFF_RANGE: i64 = 5;

/// Seeded generator of polynomial fields. Same seed, same sequence of fields.
#[derive(Clone, Debug)]
pub struct FieldRng {
    rng: ChaCha8Rng,
}

impl FieldRng {
    pub fn new(seed: u64) -> Self {
        FieldRng {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Every monomial of degree at most `degree` gets a coefficient.
    pub fn scalar(&mut self, degree: u32) -> Poly3 {
        Poly3::from_terms(
            Monomial::up_to_degree(degree as i64)
                .into_iter()
                .map(|m| (m, int(self.rng.gen_range(-COEFF_RANGE..=COEFF_RANGE))))
                .collect::<Vec<_>>(),
        )
    }

    pub fn vec(&mut self, degree: u32) -> VecField {
        VecField::from_fn(|_| self.scalar(degree))
    }

    pub fn sym(&mut self, degree: u32) -> SymField {
        SymField::from_fn(|_, _| self.scalar(degree))
    }

    pub fn mat(&mut self, degree: u32) -> Mat3Field {
        Mat3Field::from_fn(|_, _| self.scalar(degree))
    }

    pub fn w(&mut self, degree: u32) -> WField {
        let x = self.vec(degree);
        let y = self.vec(degree);
        WField { x, y }
    }

    pub fn wform(&mut self, degree: u32) -> WOneForm {
        let sigma = self.mat(degree);
        let xi = self.mat(degree);
        WOneForm { sigma, xi }
    }

    /// A rational in `[-range, range]` with denominator in `1..=max_den`.
    pub fn rational(&mut self, range: i64, max_den: i64) -> crate::poly::Rational {
        let den = self.rng.gen_range(1..=max_den);
        let num = self.rng.gen_range(-range * den..=range * den);
        crate::poly::rat(num, den)
    }

    pub fn inner(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

/// One-shot random field of the given kind.
pub fn random_field(kind: FieldKind, degree: u32, seed: u64) -> Field {
    let mut rng = FieldRng::new(seed);
    match kind {
        FieldKind::Scalar => Field::Scalar(rng.scalar(degree)),
        FieldKind::Vec => Field::Vec(rng.vec(degree)),
        FieldKind::Sym => Field::Sym(rng.sym(degree)),
        FieldKind::Mat => Field::Mat(rng.mat(degree)),
        FieldKind::W => Field::W(rng.w(degree)),
        FieldKind::WForm => Field::WForm(rng.wform(degree)),
    }
}
