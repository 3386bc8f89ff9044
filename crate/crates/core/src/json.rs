//! JSON schema for words, polynomials, domains, contours, paths and exponent
//! matrices, plus the result records emitted by the command-line tool.
//!
//! Complex numbers are `[re, im]` pairs, except polynomial terms which are
//! `{"exponents": [...], "re": x, "im": y}`. Coordinate indices are 1-based.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::domain::{Classification, DomainKind, DomainSpec, PreservationVerdict};
use crate::error::Error;
use crate::homotopy::{BumpFunction, CertificationReport, HomotopyPath};
use crate::poly::PolynomialRepr;
use crate::torus::CommutationVerdict;
use crate::winding::{ContourSpec, IndexResult};
use crate::word::{AutomorphismWord, GeneratorStep};

#[derive(Debug, Error)]
pub enum SchemaError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] Error),
}

pub type ComplexJson = [f64; 2];

fn to_complex(c: &ComplexJson) -> Complex64 {
    Complex64::new(c[0], c[1])
}

fn from_complex(c: &Complex64) -> ComplexJson {
    [c.re, c.im]
}

pub fn point_to_json(z: &[Complex64]) -> Vec<ComplexJson> {
    z.iter().map(from_complex).collect()
}

pub fn point_from_json(z: &[ComplexJson]) -> Vec<Complex64> {
    z.iter().map(to_complex).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub exponents: Vec<u32>,
    pub re: f64,
    pub im: f64,
}

/// Decodes a term list as a polynomial in `n_vars` variables.
pub fn polynomial_from_json(n_vars: usize, terms: &[TermJson]) -> Result<PolynomialRepr, Error> {
    PolynomialRepr::from_terms(
        n_vars,
        terms
            .iter()
            .map(|t| (t.exponents.clone(), Complex64::new(t.re, t.im))),
    )
}

pub fn polynomial_to_json(p: &PolynomialRepr) -> Vec<TermJson> {
    p.terms()
        .map(|(e, c)| TermJson {
            exponents: e.clone(),
            re: c.re,
            im: c.im,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum StepJson {
    Overshear {
        axis: usize,
        #[serde(default)]
        f: Vec<TermJson>,
        #[serde(default)]
        g: Vec<TermJson>,
    },
    Permutation {
        perm: Vec<usize>,
    },
    Diagonal {
        lambda: Vec<ComplexJson>,
    },
    Linear {
        matrix: Vec<Vec<ComplexJson>>,
    },
    Inversion {
        axis: usize,
    },
}

impl StepJson {
    pub fn to_step(&self, n: usize) -> Result<GeneratorStep, Error> {
        Ok(match self {
            StepJson::Overshear { axis, f, g } => GeneratorStep::Overshear {
                axis: *axis,
                f: polynomial_from_json(n, f)?,
                g: polynomial_from_json(n, g)?,
            },
            StepJson::Permutation { perm } => GeneratorStep::Permutation { perm: perm.clone() },
            StepJson::Diagonal { lambda } => GeneratorStep::Diagonal {
                lambda: point_from_json(lambda),
            },
            StepJson::Linear { matrix } => {
                if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
                    return Err(Error::InvalidStep(format!("linear matrix must be {n}×{n}")));
                }
                let entries: Vec<Complex64> = matrix.iter().flatten().map(to_complex).collect();
                GeneratorStep::Linear {
                    matrix: DMatrix::from_row_slice(n, n, &entries),
                }
            }
            StepJson::Inversion { axis } => GeneratorStep::Inversion { axis: *axis },
        })
    }

    pub fn from_step(step: &GeneratorStep) -> Self {
        match step {
            GeneratorStep::Overshear { axis, f, g } => StepJson::Overshear {
                axis: *axis,
                f: polynomial_to_json(f),
                g: polynomial_to_json(g),
            },
            GeneratorStep::Permutation { perm } => StepJson::Permutation { perm: perm.clone() },
            GeneratorStep::Diagonal { lambda } => StepJson::Diagonal {
                lambda: point_to_json(lambda),
            },
            GeneratorStep::Linear { matrix } => StepJson::Linear {
                matrix: matrix
                    .row_iter()
                    .map(|row| row.iter().map(from_complex).collect())
                    .collect(),
            },
            GeneratorStep::Inversion { axis } => StepJson::Inversion { axis: *axis },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WordJson {
    pub n: usize,
    #[serde(default)]
    pub steps: Vec<StepJson>,
}

impl WordJson {
    pub fn to_word(&self) -> Result<AutomorphismWord, Error> {
        let steps = self
            .steps
            .iter()
            .map(|s| s.to_step(self.n))
            .collect::<Result<Vec<_>, _>>()?;
        AutomorphismWord::new(self.n, steps)
    }

    pub fn from_word(w: &AutomorphismWord) -> Self {
        WordJson {
            n: w.dim(),
            steps: w.steps().iter().map(StepJson::from_step).collect(),
        }
    }
}

pub fn parse_word(text: &str) -> Result<AutomorphismWord, SchemaError> {
    let raw: WordJson = serde_json::from_str(text)?;
    Ok(raw.to_word()?)
}

pub fn word_to_value(w: &AutomorphismWord) -> Value {
    serde_json::to_value(WordJson::from_word(w)).expect("word JSON is always representable")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DomainKindJson {
    Full,
    Punctured,
    Complement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainJson {
    pub kind: DomainKindJson,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub deleted: Vec<usize>,
}

impl DomainJson {
    pub fn to_domain(&self) -> Result<DomainSpec, Error> {
        match self.kind {
            DomainKindJson::Full | DomainKindJson::Punctured if !self.deleted.is_empty() => Err(
                Error::InvalidDomain("only complements carry a deleted set".into()),
            ),
            DomainKindJson::Full => DomainSpec::full(self.n),
            DomainKindJson::Punctured => DomainSpec::punctured(self.n),
            DomainKindJson::Complement => DomainSpec::complement(self.n, self.deleted.iter().copied()),
        }
    }

    pub fn from_domain(d: &DomainSpec) -> Self {
        DomainJson {
            kind: match d.kind() {
                DomainKind::FullSpace => DomainKindJson::Full,
                DomainKind::Punctured => DomainKindJson::Punctured,
                DomainKind::HyperplaneComplement => DomainKindJson::Complement,
            },
            n: d.dim(),
            deleted: d.deleted().iter().copied().collect(),
        }
    }
}

/// A contour; `domain` may be omitted when the enclosing scene supplies it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContourJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<DomainJson>,
    pub axis: usize,
    pub p: Vec<ComplexJson>,
    #[serde(rename = "R")]
    pub radius: f64,
}

impl ContourJson {
    pub fn to_contour(&self, fallback: Option<&DomainSpec>) -> Result<ContourSpec, Error> {
        let domain = match (&self.domain, fallback) {
            (Some(d), _) => d.to_domain()?,
            (None, Some(d)) => d.clone(),
            (None, None) => {
                return Err(Error::InvalidDomain("contour has no domain".into()));
            }
        };
        ContourSpec::new(domain, self.axis, point_from_json(&self.p), self.radius)
    }

    pub fn from_contour(c: &ContourSpec) -> Self {
        ContourJson {
            domain: Some(DomainJson::from_domain(c.domain())),
            axis: c.axis(),
            p: point_to_json(c.base_point()),
            radius: c.radius(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BumpJson {
    Named(String),
    Table { table: Vec<f64> },
}

impl Default for BumpJson {
    fn default() -> Self {
        BumpJson::Named("sin".into())
    }
}

impl BumpJson {
    pub fn to_bump(&self) -> Result<BumpFunction, Error> {
        match self {
            BumpJson::Named(name) if name == "sin" => Ok(BumpFunction::Sin),
            BumpJson::Named(name) => Err(Error::InvalidBump(format!("unknown bump {name:?}"))),
            BumpJson::Table { table } => BumpFunction::table(table.clone()),
        }
    }

    pub fn from_bump(b: &BumpFunction) -> Self {
        match b {
            BumpFunction::Sin => BumpJson::Named("sin".into()),
            BumpFunction::Table(v) => BumpJson::Table { table: v.clone() },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum PathJson {
    Overshear {
        n: usize,
        axis: usize,
        #[serde(default)]
        f: Vec<TermJson>,
        #[serde(default)]
        g: Vec<TermJson>,
    },
    Transposition {
        n: usize,
        j: usize,
        k: usize,
        #[serde(default)]
        bump: BumpJson,
    },
}

impl PathJson {
    pub fn to_path(&self) -> Result<HomotopyPath, Error> {
        match self {
            PathJson::Overshear { n, axis, f, g } => HomotopyPath::overshear(
                *n,
                *axis,
                polynomial_from_json(*n, f)?,
                polynomial_from_json(*n, g)?,
            ),
            PathJson::Transposition { n, j, k, bump } => HomotopyPath::transposition(*n, *j, *k, bump.to_bump()?),
        }
    }

    pub fn from_path(p: &HomotopyPath) -> Self {
        match p {
            HomotopyPath::Overshear { n, axis, f, g } => PathJson::Overshear {
                n: *n,
                axis: *axis,
                f: polynomial_to_json(f),
                g: polynomial_to_json(g),
            },
            HomotopyPath::Transposition { n, j, k, bump } => PathJson::Transposition {
                n: *n,
                j: *j,
                k: *k,
                bump: BumpJson::from_bump(bump),
            },
        }
    }
}

/// Integer matrix as stored; unimodularity is checked on use.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentMatrixJson {
    pub n: usize,
    pub a: Vec<Vec<i64>>,
}

impl ExponentMatrixJson {
    pub fn rows(&self) -> Result<&[Vec<i64>], Error> {
        if self.a.len() != self.n || self.a.iter().any(|r| r.len() != self.n) {
            return Err(Error::InvalidMatrix(format!("matrix must be {0}×{0}", self.n)));
        }
        Ok(&self.a)
    }
}

pub fn index_result_json(r: &IndexResult) -> Value {
    json!({ "index": r.index, "raw": r.raw, "samples": r.samples_used })
}

pub fn report_json(r: &CertificationReport) -> Value {
    json!({
        "endpoint_err0": r.endpoint_err0,
        "endpoint_err1": r.endpoint_err1,
        "min_abs_det": r.min_abs_det,
        "max_inverse_residual": r.max_inverse_residual,
    })
}

pub fn classification_json(c: &Classification) -> Value {
    json!({ "kind": c.kind.name(), "is_stein": c.is_stein })
}

pub fn preservation_json(v: &PreservationVerdict) -> Value {
    json!({
        "preserves": v.preserves,
        "witness": v.witness.as_deref().map(point_to_json),
        "step": v.step,
        "reason": v.reason,
    })
}

pub fn commutation_json(v: &CommutationVerdict) -> Value {
    json!({
        "commutes": v.commutes,
        "max_deviation": v.max_deviation,
        "witness": v.witness.as_ref().map(|w| json!({
            "theta": w.theta,
            "z": point_to_json(&w.z),
            "deviation": w.deviation,
        })),
    })
}

/// Machine-readable payload for an operation error.
pub fn error_json(e: &Error) -> Value {
    let mut v = json!({ "error": e.kind() });
    let obj = v.as_object_mut().expect("object literal");
    match e {
        Error::NotUnimodular { det } => {
            obj.insert("det".into(), json!(det));
        }
        Error::SingularPoint { step, axis } => {
            obj.insert("step".into(), json!(step));
            obj.insert("axis".into(), json!(axis));
        }
        Error::NotDiagonal { coordinate, point } => {
            obj.insert("coordinate".into(), json!(coordinate));
            obj.insert("point".into(), json!(point_to_json(point)));
        }
        Error::ZeroOnContour { theta } => {
            obj.insert("theta".into(), json!(theta));
        }
        Error::BudgetExhausted { samples } => {
            obj.insert("samples".into(), json!(samples));
        }
        _ => {}
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_step_kind() {
        let text = r#"{"n": 2, "steps": [
            {"type": "overshear", "axis": 2, "f": [{"exponents": [1, 0], "re": 1.0, "im": 0.0}]},
            {"type": "permutation", "perm": [2, 1]},
            {"type": "diagonal", "lambda": [[2, 0], [0, 3]]},
            {"type": "linear", "matrix": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]},
            {"type": "inversion", "axis": 1}
        ]}"#;
        let w = parse_word(text).unwrap();
        assert_eq!(w.steps().len(), 5);
        let again: WordJson = serde_json::from_value(word_to_value(&w)).unwrap();
        assert_eq!(again.to_word().unwrap(), w);
    }

    #[test]
    fn rejects_invalid_words() {
        assert!(matches!(parse_word("{"), Err(SchemaError::Json(_))));
        assert!(matches!(
            parse_word(r#"{"n": 2, "steps": [{"type": "inversion", "axis": 3}]}"#),
            Err(SchemaError::Invalid(Error::InvalidStep(_)))
        ));
        assert!(matches!(
            parse_word(r#"{"n": 2, "steps": [{"type": "twist"}]}"#),
            Err(SchemaError::Json(_))
        ));
        assert!(parse_word(r#"{"n": 2, "steps": [{"type": "linear", "matrix": [[[1, 0]]]}]}"#).is_err());
    }

    #[test]
    fn domain_and_contour() {
        let d: DomainJson = serde_json::from_str(r#"{"kind": "complement", "n": 2, "deleted": [1]}"#).unwrap();
        let dom = d.to_domain().unwrap();
        assert_eq!(DomainJson::from_domain(&dom), d);
        let c: ContourJson = serde_json::from_str(r#"{"axis": 1, "p": [[1, 0], [1, 0]], "R": 1.0}"#).unwrap();
        let cs = c.to_contour(Some(&dom)).unwrap();
        assert_eq!(cs.radius(), 1.0);
        assert!(c.to_contour(None).is_err());
        let bad: DomainJson = serde_json::from_str(r#"{"kind": "full", "n": 2, "deleted": [1]}"#).unwrap();
        assert!(bad.to_domain().is_err());
    }

    #[test]
    fn paths_and_bumps() {
        let p: PathJson = serde_json::from_str(r#"{"type": "transposition", "n": 2, "j": 1, "k": 2}"#).unwrap();
        assert!(matches!(p.to_path().unwrap(), HomotopyPath::Transposition { bump: BumpFunction::Sin, .. }));
        let p: PathJson =
            serde_json::from_str(r#"{"type": "transposition", "n": 2, "j": 1, "k": 2, "bump": {"table": [0, 1, 0]}}"#)
                .unwrap();
        assert!(p.to_path().is_ok());
        let p: PathJson =
            serde_json::from_str(r#"{"type": "transposition", "n": 2, "j": 1, "k": 2, "bump": "cos"}"#).unwrap();
        assert!(matches!(p.to_path(), Err(Error::InvalidBump(_))));
    }

    #[test]
    fn error_payloads() {
        let v = error_json(&Error::NotUnimodular { det: 2 });
        assert_eq!(v["error"], "NotUnimodular");
        assert_eq!(v["det"], 2);
    }
}
