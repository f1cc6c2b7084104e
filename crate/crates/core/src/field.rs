//! Tagged field values and their canonical JSON form.
//!
//! ```json
//! {"kind": "sym", "components": {"11": [{"exp": [0, 2, 0], "coef": "1/1"}], "12": [], ...}}
//! ```
//!
//! Index strings are 1-based: `"0"` for scalars, `"1".."3"` for vectors,
//! `"11".."33"` for matrices (upper triangle only for `sym`), `"X1".."Y3"` for
//! W-valued fields and `"S11".."S33"`, `"Xi11".."Xi33"` for the two slots of a
//! W-valued one-form. Terms are listed in descending graded-lex order and
//! coefficients are always written as `p/q`, so writing a parsed canonical
//! document reproduces it byte for byte.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::connection::{WField, WOneForm};
use crate::error::{Error, Result};
use crate::poly::{parse_rational, rational_to_string, Monomial, Poly3};
use crate::tensor::{Mat3Field, SymField, VecField, SYM_INDEX};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Scalar,
    Vec,
    Sym,
    Mat,
    W,
    WForm,
}

impl FieldKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            FieldKind::Scalar => "scalar",
            FieldKind::Vec => "vec",
            FieldKind::Sym => "sym",
            FieldKind::Mat => "mat",
            FieldKind::W => "w",
            FieldKind::WForm => "wform",
        }
    }

    /// Component keys in storage order.
    pub fn keys(&self) -> Vec<String> {
        let vec_keys = || (1..=3).map(|i| i.to_string());
        let mat_keys = || (1..=3).flat_map(|i| (1..=3).map(move |j| format!("{i}{j}")));
        match self {
            FieldKind::Scalar => vec!["0".to_string()],
            FieldKind::Vec => vec_keys().collect(),
            FieldKind::Sym => SYM_INDEX
                .iter()
                .map(|(i, j)| format!("{}{}", i + 1, j + 1))
                .collect(),
            FieldKind::Mat => mat_keys().collect(),
            FieldKind::W => vec_keys()
                .map(|k| format!("X{k}"))
                .chain(vec_keys().map(|k| format!("Y{k}")))
                .collect(),
            FieldKind::WForm => mat_keys()
                .map(|k| format!("S{k}"))
                .chain(mat_keys().map(|k| format!("Xi{k}")))
                .collect(),
        }
    }
}

impl FromStr for FieldKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "scalar" => FieldKind::Scalar,
            "vec" => FieldKind::Vec,
            "sym" => FieldKind::Sym,
            "mat" => FieldKind::Mat,
            "w" => FieldKind::W,
            "wform" => FieldKind::WForm,
            other => return Err(Error::Parse(format!("unknown field kind `{other}`"))),
        })
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Field {
    Scalar(Poly3),
    Vec(VecField),
    Sym(SymField),
    Mat(Mat3Field),
    W(WField),
    WForm(WOneForm),
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    exp: [u32; 3],
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct FieldDoc {
    kind: String,
    components: BTreeMap<String, Vec<TermDoc>>,
}

fn poly_to_doc(p: &Poly3) -> Vec<TermDoc> {
    p.terms()
        .rev()
        .map(|(m, c)| TermDoc {
            exp: m.0,
            coef: rational_to_string(c),
        })
        .collect()
}

fn poly_from_doc(key: &str, terms: &[TermDoc]) -> Result<Poly3> {
    let mut p = Poly3::zero();
    for t in terms {
        let c = parse_rational(&t.coef).ok_or_else(|| {
            Error::Parse(format!("component {key}: bad coefficient `{}`", t.coef))
        })?;
        p.add_term(Monomial(t.exp), c);
    }
    Ok(p)
}

impl Field {
    pub fn kind(&self) -> FieldKind {
        match self {
            Field::Scalar(_) => FieldKind::Scalar,
            Field::Vec(_) => FieldKind::Vec,
            Field::Sym(_) => FieldKind::Sym,
            Field::Mat(_) => FieldKind::Mat,
            Field::W(_) => FieldKind::W,
            Field::WForm(_) => FieldKind::WForm,
        }
    }

    /// Components in the storage order of [`FieldKind::keys`].
    pub fn components(&self) -> Vec<&Poly3> {
        match self {
            Field::Scalar(p) => vec![p],
            Field::Vec(v) => v.0.iter().collect(),
            Field::Sym(s) => s.0.iter().collect(),
            Field::Mat(m) => m.0.iter().flatten().collect(),
            Field::W(w) => w.x.0.iter().chain(w.y.0.iter()).collect(),
            Field::WForm(f) => f.sigma.0.iter().flatten().chain(f.xi.0.iter().flatten()).collect(),
        }
    }

    /// Inverse of [`Field::components`]; `comps` must have the right length.
    pub fn from_components(kind: FieldKind, comps: Vec<Poly3>) -> Result<Field> {
        let expected = kind.keys().len();
        if comps.len() != expected {
            return Err(Error::Input(format!(
                "{kind} field needs {expected} components, got {}",
                comps.len()
            )));
        }
        let mut it = comps.into_iter();
        let mut next = move || it.next().expect("length checked");
        Ok(match kind {
            FieldKind::Scalar => Field::Scalar(next()),
            FieldKind::Vec => Field::Vec(VecField::from_fn(|_| next())),
            FieldKind::Sym => Field::Sym(SymField::from_fn(|_, _| next())),
            FieldKind::Mat => Field::Mat(Mat3Field::from_fn(|_, _| next())),
            FieldKind::W => {
                let x = VecField::from_fn(|_| next());
                let y = VecField::from_fn(|_| next());
                Field::W(WField { x, y })
            }
            FieldKind::WForm => {
                let sigma = Mat3Field::from_fn(|_, _| next());
                let xi = Mat3Field::from_fn(|_, _| next());
                Field::WForm(WOneForm { sigma, xi })
            }
        })
    }

    pub fn is_zero(&self) -> bool {
        self.components().iter().all(|p| p.is_zero())
    }

    pub fn to_json(&self) -> String {
        let kind = self.kind();
        let components = kind
            .keys()
            .into_iter()
            .zip(self.components())
            .map(|(k, p)| (k, poly_to_doc(p)))
            .collect();
        let doc = FieldDoc {
            kind: kind.as_str().to_string(),
            components,
        };
        serde_json::to_string_pretty(&doc).expect("field documents always serialize")
    }

    /// Parses a field document. Missing components are zero; unknown keys are rejected.
    pub fn from_json(text: &str) -> Result<Field> {
        let doc: FieldDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let kind: FieldKind = doc.kind.parse()?;
        let keys = kind.keys();
        if let Some(bad) = doc.components.keys().find(|k| !keys.contains(k)) {
            return Err(Error::Parse(format!(
                "component key `{bad}` is not valid for kind `{kind}`"
            )));
        }
        let comps = keys
            .iter()
            .map(|k| match doc.components.get(k) {
                Some(terms) => poly_from_doc(k, terms),
                None => Ok(Poly3::zero()),
            })
            .collect::<Result<Vec<_>>>()?;
        Field::from_components(kind, comps)
    }

    pub fn into_sym(self) -> Result<SymField> {
        match self {
            Field::Sym(s) => Ok(s),
            other => Err(Error::Input(format!("expected a sym field, got {}", other.kind()))),
        }
    }

    pub fn into_vec(self) -> Result<VecField> {
        match self {
            Field::Vec(v) => Ok(v),
            other => Err(Error::Input(format!("expected a vec field, got {}", other.kind()))),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let keys = self.kind().keys();
        for (k, p) in keys.iter().zip(self.components()) {
            writeln!(f, "{k}: {p}")?;
        }
        Ok(())
    }
}
