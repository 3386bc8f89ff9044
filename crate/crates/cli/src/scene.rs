//! Scene files: one JSON document holding named words, contours, paths and
//! exponent matrices, with an optional ambient domain.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use holoaut::json::{ContourJson, DomainJson, ExponentMatrixJson, PathJson, WordJson};
use holoaut::{AutomorphismWord, ContourSpec, DomainSpec, HomotopyPath};
use serde::de::{Deserializer, MapAccess, Visitor};
use serde::Deserialize;

/// A JSON object whose keys must be unique.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedMap<T>(pub BTreeMap<String, T>);

impl<T> Default for NamedMap<T> {
    fn default() -> Self {
        NamedMap(BTreeMap::new())
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for NamedMap<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct UniqueVisitor<T>(PhantomData<T>);

        impl<'de, T: Deserialize<'de>> Visitor<'de> for UniqueVisitor<T> {
            type Value = NamedMap<T>;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an object of uniquely named entries")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
                let mut map = BTreeMap::new();
                while let Some((key, value)) = access.next_entry::<String, T>()? {
                    if map.contains_key(&key) {
                        return Err(serde::de::Error::custom(format!("duplicate name {key:?}")));
                    }
                    map.insert(key, value);
                }
                Ok(NamedMap(map))
            }
        }

        deserializer.deserialize_map(UniqueVisitor(PhantomData))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneJson {
    #[serde(default)]
    pub domain: Option<DomainJson>,
    #[serde(default)]
    pub words: NamedMap<WordJson>,
    #[serde(default)]
    pub contours: NamedMap<ContourJson>,
    #[serde(default)]
    pub paths: NamedMap<PathJson>,
    #[serde(default)]
    pub exponent_matrices: NamedMap<ExponentMatrixJson>,
}

/// A scene with every object decoded and validated.
#[derive(Debug, Clone)]
pub struct Scene {
    pub domain: Option<DomainSpec>,
    pub words: BTreeMap<String, AutomorphismWord>,
    pub contours: BTreeMap<String, ContourSpec>,
    pub paths: BTreeMap<String, HomotopyPath>,
    pub exponent_matrices: BTreeMap<String, ExponentMatrixJson>,
}

#[derive(Debug)]
pub enum SceneError {
    Json(serde_json::Error),
    Invalid { what: String, source: holoaut::Error },
    Inconsistent(String),
}

impl fmt::Display for SceneError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SceneError::Json(e) => write!(f, "malformed scene JSON: {e}"),
            SceneError::Invalid { what, source } => write!(f, "{what}: {source}"),
            SceneError::Inconsistent(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for SceneError {}

fn invalid(what: impl Into<String>) -> impl FnOnce(holoaut::Error) -> SceneError {
    let what = what.into();
    move |source| SceneError::Invalid { what, source }
}

pub fn parse_scene(text: &str) -> Result<Scene, SceneError> {
    let raw: SceneJson = serde_json::from_str(text).map_err(SceneError::Json)?;
    let domain = raw.domain.as_ref().map(|d| d.to_domain()).transpose().map_err(invalid("domain"))?;
    let check_dim = |what: &str, n: usize| match &domain {
        Some(d) if d.dim() != n => Err(SceneError::Inconsistent(format!(
            "{what} has dimension {n} but the scene domain has dimension {}",
            d.dim()
        ))),
        _ => Ok(()),
    };

    let mut words = BTreeMap::new();
    for (name, w) in raw.words.0 {
        let word = w.to_word().map_err(invalid(format!("word {name:?}")))?;
        check_dim(&format!("word {name:?}"), word.dim())?;
        words.insert(name, word);
    }
    let mut contours = BTreeMap::new();
    for (name, c) in raw.contours.0 {
        let contour = c.to_contour(domain.as_ref()).map_err(invalid(format!("contour {name:?}")))?;
        check_dim(&format!("contour {name:?}"), contour.domain().dim())?;
        contours.insert(name, contour);
    }
    let mut paths = BTreeMap::new();
    for (name, p) in raw.paths.0 {
        let path = p.to_path().map_err(invalid(format!("path {name:?}")))?;
        check_dim(&format!("path {name:?}"), path.dim())?;
        paths.insert(name, path);
    }
    for (name, m) in &raw.exponent_matrices.0 {
        m.rows().map_err(invalid(format!("exponent matrix {name:?}")))?;
        check_dim(&format!("exponent matrix {name:?}"), m.n)?;
    }
    Ok(Scene {
        domain,
        words,
        contours,
        paths,
        exponent_matrices: raw.exponent_matrices.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_names_are_rejected() {
        let text = r#"{"words": {"a": {"n": 2}, "a": {"n": 2}}}"#;
        let err = parse_scene(text).unwrap_err();
        assert!(err.to_string().contains("duplicate name"));
    }

    #[test]
    fn dimensions_must_match_domain() {
        let text = r#"{"domain": {"kind": "full", "n": 3}, "words": {"a": {"n": 2}}}"#;
        assert!(matches!(parse_scene(text), Err(SceneError::Inconsistent(_))));
    }

    #[test]
    fn unknown_sections_are_rejected() {
        assert!(matches!(parse_scene(r#"{"wrods": {}}"#), Err(SceneError::Json(_))));
    }

    #[test]
    fn full_scene() {
        let text = r#"{
            "domain": {"kind": "complement", "n": 2, "deleted": [1]},
            "words": {"id": {"n": 2, "steps": []}, "inv1": {"n": 2, "steps": [{"type": "inversion", "axis": 1}]}},
            "contours": {"c0": {"axis": 1, "p": [[1, 0], [1, 0]], "R": 1.0}},
            "paths": {"swap": {"type": "transposition", "n": 2, "j": 1, "k": 2, "bump": "sin"}},
            "exponent_matrices": {"m2": {"n": 2, "a": [[2, 0], [0, 1]]}}
        }"#;
        let s = parse_scene(text).unwrap();
        assert_eq!(s.words.len(), 2);
        assert_eq!(s.contours["c0"].axis(), 1);
        assert!(s.paths.contains_key("swap"));
        assert_eq!(s.exponent_matrices["m2"].a[0][0], 2);
    }
}
