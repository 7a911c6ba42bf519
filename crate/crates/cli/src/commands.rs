use std::fs;

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use serde_json::{json, Value};

use semisimple_core::hereditary::{pushforward_cone, quotient_semisimple, QuotientMap};
use semisimple_core::lab::{completion_cauchy_demo, density_witness, envelope_demo, normalizing_alphas, QPolynomial};
use semisimple_core::norms::{distance_to_cone, monotone_norm, PolyhedralNorm};
use semisimple_core::representation::{
    synthesize_bipositive, synthesize_positive, FiniteRepresentation, RepresentationFile, Synthesis,
};
use semisimple_core::soc::{closure_witness_sequence, pushforward_preimage, quotient_by_ray, RayQuotient, SocPoint};
use semisimple_core::{format_rational, parse_rational, rat, ConeSpecFile, PolyhedralCone, QVector, Rational};

use crate::source::{load_cone, parse_vector, parse_vectors};

/// A report plus whether it carries a negative verdict (exit code 2).
pub struct Outcome {
    pub report: Value,
    pub negative: bool,
}

fn canonical(cone: &PolyhedralCone) -> ConeSpecFile {
    ConeSpecFile::from_cone(cone, None, None)
}

fn q(r: &Rational) -> String {
    format_rational(r)
}

pub fn analyze(spec: &str) -> Result<Outcome> {
    let cone = load_cone(spec)?;
    let report = cone.semisimplicity_report()?;
    let semisimple = report.is_semisimple();
    Ok(Outcome {
        report: json!({
            "cone": canonical(&cone),
            "proper": cone.is_proper(),
            "lineality": cone.lineality_space(),
            "semisimple": semisimple,
            "criteria": report,
            "order_radical": cone.order_radical(),
            "supporting_hyperplanes": cone.supporting_hyperplanes(),
        }),
        negative: !semisimple,
    })
}

pub fn dual(spec: &str) -> Result<Outcome> {
    let cone = load_cone(spec)?;
    Ok(Outcome { report: json!({ "dual": canonical(&cone.dual()) }), negative: false })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Positive,
    Bipositive,
}

fn verdict_json(rep: &FiniteRepresentation, cone: &PolyhedralCone) -> Result<Value> {
    let v = rep.verify(cone)?;
    Ok(json!({
        "injective": v.injective,
        "positive": v.positive,
        "bipositive": v.bipositive,
        "pullback_cone": canonical(&v.pullback_cone),
    }))
}

fn seminorm_values(rep: &FiniteRepresentation, samples: &[QVector]) -> Result<Value> {
    let values =
        samples.iter().map(|x| Ok(json!({ "x": x, "sup": q(&rep.sup_seminorm(x)?) }))).collect::<Result<Vec<_>>>()?;
    Ok(Value::Array(values))
}

pub fn represent(spec: &str, mode: Mode, verify: Option<&str>, samples: Option<&str>) -> Result<Outcome> {
    let cone = load_cone(spec)?;
    let samples = samples.map(parse_vectors).transpose()?.unwrap_or_default();
    let wanted = |v: &Value| match mode {
        Mode::Positive => v["injective"] == true && v["positive"] == true,
        Mode::Bipositive => v["injective"] == true && v["bipositive"] == true,
    };

    if let Some(path) = verify {
        let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        let file: RepresentationFile = serde_json::from_str(&text).with_context(|| format!("parsing {path}"))?;
        let rep = FiniteRepresentation::from_file(file)?;
        let verdict = verdict_json(&rep, &cone)?;
        let negative = !wanted(&verdict);
        return Ok(Outcome {
            report: json!({
                "status": if negative { "rejected" } else { "verified" },
                "representation": rep.to_file(),
                "verdict": verdict,
                "seminorm": seminorm_values(&rep, &samples)?,
            }),
            negative,
        });
    }

    let synthesis = match mode {
        Mode::Positive => synthesize_positive(&cone)?,
        Mode::Bipositive => synthesize_bipositive(&cone)?,
    };
    Ok(match synthesis {
        Synthesis::Found(rep) => Outcome {
            report: json!({
                "status": "found",
                "representation": rep.to_file(),
                "verdict": verdict_json(&rep, &cone)?,
                "seminorm": seminorm_values(&rep, &samples)?,
            }),
            negative: false,
        },
        Synthesis::Infeasible { certificate, fallback } => {
            let fallback = match fallback {
                Some(rep) => json!({
                    "representation": rep.to_file(),
                    "verdict": verdict_json(&rep, &cone)?,
                    "seminorm": seminorm_values(&rep, &samples)?,
                }),
                None => Value::Null,
            };
            Outcome {
                report: json!({ "status": "infeasible", "certificate": certificate, "fallback": fallback }),
                negative: true,
            }
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum NormChoice {
    Ell1,
    Ellinf,
    Polytope,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Facet {
    normal: QVector,
    bound: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NormFile {
    dim: usize,
    facets: Vec<Facet>,
}

fn load_norm(choice: NormChoice, norm_file: Option<&str>) -> Result<PolyhedralNorm> {
    match (choice, norm_file) {
        (NormChoice::Ell1, None) => Ok(PolyhedralNorm::ell1()),
        (NormChoice::Ellinf, None) => Ok(PolyhedralNorm::ellinf()),
        (NormChoice::Polytope, Some(path)) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            let file: NormFile = serde_json::from_str(&text).with_context(|| format!("parsing {path}"))?;
            let facets = file
                .facets
                .into_iter()
                .map(|f| Ok((f.normal, parse_rational(&f.bound)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(PolyhedralNorm::polytope(file.dim, facets)?)
        }
        (NormChoice::Polytope, None) => bail!("--norm polytope needs --norm-file"),
        (_, Some(_)) => bail!("--norm-file is only used with --norm polytope"),
    }
}

pub fn norm(spec: &str, choice: NormChoice, norm_file: Option<&str>, point: &str) -> Result<Outcome> {
    let cone = load_cone(spec)?;
    let norm = load_norm(choice, norm_file)?;
    let x = parse_vector(point)?;
    let d_pos = distance_to_cone(&x, &cone, &norm)?;
    let d_neg = distance_to_cone(&x.neg(), &cone, &norm)?;
    let m = monotone_norm(&x, &cone, &norm)?;
    Ok(Outcome {
        report: json!({
            "point": x,
            "distance": q(&d_pos),
            "distance_of_negative": q(&d_neg),
            "monotone_norm": q(&m),
            "base_norm": q(&norm.eval(&x)),
        }),
        negative: false,
    })
}

pub fn quotient(spec: &str, kernel: &str) -> Result<Outcome> {
    let cone = load_cone(spec)?;
    let map = QuotientMap::new(cone.dim(), parse_vectors(kernel)?)?;
    let verdict = quotient_semisimple(&map, &cone)?;
    let negative = !verdict.semisimple;
    Ok(Outcome {
        report: json!({
            "kernel_basis": map.kernel_basis(),
            "projection": map.projection().rows(),
            "pushforward": canonical(&pushforward_cone(&map, &cone)?),
            "verdict": verdict,
        }),
        negative,
    })
}

pub fn soc(ray: &str, relaxed: bool, point: Option<&str>, terms: usize) -> Result<Outcome> {
    let p = SocPoint::from_vector(&parse_vector(ray)?)?;
    let class = quotient_by_ray(&p, relaxed)?;
    let mut report = json!({
        "ray": p.to_vector(),
        "proper": class.is_proper,
        "closed": class.is_closed,
        "semisimple": class.is_semisimple,
        "perp_positive_dim": class.perp_positive_dim,
        "witness_line": class.witness_line,
        "closure_halfspace": class.closure_halfspace,
    });
    if class.witness_line.is_some() && terms > 0 {
        let seq = closure_witness_sequence(&p, terms)?;
        report["closure_sequence"] =
            seq.iter().map(|(v, x)| json!({ "member": v, "preimage": x })).collect::<Vec<_>>().into();
    }
    if let Some(point) = point {
        let v = parse_vector(point)?;
        let preimage = pushforward_preimage(&RayQuotient::new(&p)?, &v)?;
        report["point"] = json!({ "v": v, "member": preimage.is_some(), "preimage": preimage });
    }
    Ok(Outcome { negative: !class.is_semisimple, report })
}

pub fn lab_density(poly: &str, a: &str, b: &str, eps: &str) -> Result<Outcome> {
    let g = QPolynomial::parse(poly)?;
    let w = density_witness(&g, &parse_rational(a)?, &parse_rational(b)?, &parse_rational(eps)?)?;
    let distance = w.p.sub(&g).coefficient_sup();
    Ok(Outcome { report: json!({ "g": g, "witness": w, "coefficient_distance": q(&distance) }), negative: false })
}

pub fn lab_completion(n_max: usize) -> Result<Outcome> {
    let r = completion_cauchy_demo(n_max)?;
    let negative = !(r.cauchy_holds && r.bounded_below);
    Ok(Outcome { report: serde_json::to_value(r)?, negative })
}

pub fn lab_envelope(window: &str, alphas: Option<&str>) -> Result<Outcome> {
    let window = parse_rational(window)?;
    let top = window.floor().to_integer();
    let top: i64 = top.try_into().context("window too large")?;
    if top < 1 {
        bail!("window must be at least 1");
    }
    let samples: Vec<Rational> = (0..=top).map(rat).collect();
    let alphas = match alphas {
        Some(s) => s.split(',').map(|a| parse_rational(a).map_err(Into::into)).collect::<Result<Vec<_>>>()?,
        None => normalizing_alphas(&samples, top as usize)?,
    };
    let r = envelope_demo(&alphas, &samples, &window)?;
    let negative = !r.certified;
    Ok(Outcome { report: serde_json::to_value(r)?, negative })
}
