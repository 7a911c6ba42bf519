//! JSON cone files. Rationals are strings such as `"3/4"` or `"-2"`.

use serde::{Deserialize, Serialize};

use crate::cone::PolyhedralCone;
use crate::error::{Error, Result};
use crate::linalg::QVector;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeSpecFile {
    pub dim: usize,
    #[serde(default)]
    pub generators: Vec<QVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub halfspaces: Option<Vec<QVector>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

impl ConeSpecFile {
    /// Parses JSON; errors name the line and column.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("cone files serialize");
        s.push('\n');
        s
    }

    /// The described cone. With both lists present they must agree.
    pub fn to_cone(&self) -> Result<PolyhedralCone> {
        match &self.halfspaces {
            Some(h) if self.generators.is_empty() => PolyhedralCone::from_halfspaces(self.dim, h.clone()),
            Some(h) => PolyhedralCone::from_both(self.dim, self.generators.clone(), h.clone()),
            None => PolyhedralCone::from_generators(self.dim, self.generators.clone()),
        }
    }

    /// Canonical file for `cone`: canonical generators and halfspaces.
    pub fn from_cone(cone: &PolyhedralCone, name: Option<String>, source: Option<String>) -> Self {
        let canonical = cone.canonical();
        ConeSpecFile {
            dim: canonical.dim(),
            generators: canonical.generators().to_vec(),
            halfspaces: Some(canonical.halfspaces().to_vec()),
            name,
            source,
        }
    }

    /// Parse, build, and re-emit canonically, keeping the metadata.
    pub fn canonicalize(&self) -> Result<Self> {
        Ok(Self::from_cone(&self.to_cone()?, self.name.clone(), self.source.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_plane_file() {
        let text = r#"{"dim": 2, "generators": [["1","0"], ["0","1"], ["0","-1"]], "name": "half-plane"}"#;
        let file = ConeSpecFile::from_json(text).unwrap();
        let canon = file.canonicalize().unwrap();
        assert_eq!(canon.halfspaces, Some(vec![QVector::from_i64s(&[1, 0])]));
        let again = ConeSpecFile::from_json(&canon.to_json()).unwrap().canonicalize().unwrap();
        assert_eq!(again.to_json(), canon.to_json());
    }

    #[test]
    fn halfspace_only_file() {
        let file = ConeSpecFile::from_json(r#"{"dim": 2, "halfspaces": [["1","0"], ["0","1"]]}"#).unwrap();
        let cone = file.to_cone().unwrap();
        assert!(cone.set_eq(&PolyhedralCone::nonnegative_orthant(2)).unwrap());
    }

    #[test]
    fn inconsistent_and_malformed() {
        let bad = r#"{"dim": 2, "generators": [["1","0"]], "halfspaces": [["1","0"]]}"#;
        assert!(ConeSpecFile::from_json(bad).unwrap().to_cone().is_err());
        let err = ConeSpecFile::from_json("{\"dim\": 2,\n \"generators\": [[1,}").unwrap_err();
        assert!(err.to_string().contains("line 2"));
        assert!(ConeSpecFile::from_json(r#"{"dim": 2, "generators": [["1"]]}"#).unwrap().to_cone().is_err());
    }
}
