use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use semisimple_core::{ConeSpecFile, PolyhedralCone, QVector};

pub const BUILTINS: &[&str] =
    &["orthant", "orthant2", "orthant3", "halfplane", "wedge", "ice-cream-closure", "full2", "zero2"];

fn v(x: &[i64]) -> QVector {
    QVector::from_i64s(x)
}

pub fn builtin(name: &str) -> Option<PolyhedralCone> {
    let cone = match name {
        "orthant" | "orthant2" => PolyhedralCone::nonnegative_orthant(2),
        "orthant3" => PolyhedralCone::nonnegative_orthant(3),
        "halfplane" => PolyhedralCone::from_halfspaces(2, vec![v(&[0, 1])]).ok()?,
        "wedge" => PolyhedralCone::from_generators(2, vec![v(&[1, 0]), v(&[1, 1])]).ok()?,
        // closure of the image of the second-order cone modulo the ray (1, 0, 1)
        "ice-cream-closure" => PolyhedralCone::from_halfspaces(2, vec![v(&[-1, 0])]).ok()?,
        "full2" => PolyhedralCone::full_space(2),
        "zero2" => PolyhedralCone::zero(2),
        _ => return None,
    };
    Some(cone)
}

/// A cone from a JSON file, or from a builtin name when no such file exists.
pub fn load_cone(spec: &str) -> Result<PolyhedralCone> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
        let file = ConeSpecFile::from_json(&text).with_context(|| format!("parsing {spec}"))?;
        return file.to_cone().with_context(|| format!("building the cone in {spec}"));
    }
    match builtin(spec) {
        Some(cone) => Ok(cone),
        None => bail!("{spec}: no such file, and not a builtin cone ({})", BUILTINS.join(", ")),
    }
}

pub fn parse_vector(s: &str) -> Result<QVector> {
    QVector::parse(s).with_context(|| format!("bad vector {s:?}"))
}

/// Semicolon-separated vectors, e.g. `"1,-1;0,2"`.
pub fn parse_vectors(s: &str) -> Result<Vec<QVector>> {
    s.split(';').filter(|p| !p.trim().is_empty()).map(parse_vector).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_builtin_loads() {
        for name in BUILTINS {
            assert!(builtin(name).is_some(), "{name}");
        }
        assert!(load_cone("no-such-cone").is_err());
    }

    #[test]
    fn vector_lists() {
        assert_eq!(parse_vectors("1,-1; 0,1/2").unwrap().len(), 2);
        assert!(parse_vectors("1,x").is_err());
    }
}
