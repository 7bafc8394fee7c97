use std::path::Path;

use anyhow::{Context, Result};
use palcore::farey::{enumerate as farey_enumerate, primitive_word, Rational};
use palcore::io::{matrix_from_json, GeneratorPair};
use palcore::probe::{pi_spectrum, probe as run_probe, SpectrumEntry};
use palcore::rep::{elliptic_info, EllipticInfo};
use palcore::{
    BoundaryPoint, Geodesic, GroupElement, IsometryClass, ProbeReport, ProbeSettings, Representation, Tolerances, Word,
};
use serde::{Deserialize, Serialize};

use crate::Format;

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct ClassifyRecord {
    pub trace: [f64; 2],
    pub class: IsometryClass,
    pub fixed: Vec<BoundaryPoint>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rotation: Option<EllipticInfo>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct PrimitiveRecord {
    pub rational: Rational,
    pub word: Word,
    pub palindrome: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub factors: Option<[Word; 2]>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct EnumerateRecord {
    pub rational: Rational,
    pub depth: u32,
    pub word: Word,
    pub is_palindrome: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub factors: Option<[Word; 2]>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct HexagonRecord {
    #[serde(rename = "Ax_A")]
    pub ax_a: Geodesic,
    #[serde(rename = "L")]
    pub core: Geodesic,
    #[serde(rename = "Ax_B")]
    pub ax_b: Geodesic,
    #[serde(rename = "L_B")]
    pub l_b: Geodesic,
    #[serde(rename = "Ax_AB")]
    pub ax_ab: Geodesic,
    #[serde(rename = "L_A")]
    pub l_a: Geodesic,
    pub orthogonality_residuals: [f64; 6],
    pub a_factorization_residual: f64,
    pub b_factorization_residual: f64,
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

pub fn classify(input: &str, tol: &Tolerances) -> Result<String> {
    let text = if Path::new(input).is_file() {
        std::fs::read_to_string(input).with_context(|| format!("reading {input}"))?
    } else {
        input.to_owned()
    };
    let g = GroupElement::normalize(matrix_from_json(&text)?, tol)?;
    let class = g.classify(tol);
    let fixed = match g.fixed_points(tol) {
        Ok(fp) => fp.to_vec(),
        Err(palcore::Error::IdentityElement) => Vec::new(),
        Err(e) => return Err(e.into()),
    };
    let t = g.trace();
    json(&ClassifyRecord {
        trace: [t.re, t.im],
        class,
        fixed,
        rotation: elliptic_info(&g, tol),
    })
}

pub fn primitive(rational: &str) -> Result<String> {
    let r: Rational = rational.parse()?;
    let pw = primitive_word(r)?;
    json(&PrimitiveRecord {
        rational: r,
        palindrome: pw.word.is_palindrome(),
        word: pw.word,
        factors: pw.factors.map(|(u, v)| [u, v]),
    })
}

pub fn enumerate(depth: u32, format: Format) -> Result<String> {
    let nodes = farey_enumerate(depth)?;
    match format {
        Format::Json => json(
            &nodes
                .into_iter()
                .map(|n| EnumerateRecord {
                    rational: n.rational,
                    depth: n.depth,
                    is_palindrome: n.word.is_palindrome(),
                    word: n.word,
                    factors: n.factors.map(|(u, v)| [u, v]),
                })
                .collect::<Vec<_>>(),
        ),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["p", "q", "word", "is_palindrome", "factor1", "factor2"])?;
            for n in nodes {
                let (f1, f2) = n
                    .factors
                    .as_ref()
                    .map(|(u, v)| (u.to_string(), v.to_string()))
                    .unwrap_or_default();
                w.write_record([
                    n.rational.p().to_string(),
                    n.rational.q().to_string(),
                    n.word.to_string(),
                    n.word.is_palindrome().to_string(),
                    f1,
                    f2,
                ])?;
            }
            Ok(String::from_utf8(w.into_inner()?)?)
        }
    }
}

fn format_s(s: f64) -> String {
    if s == f64::INFINITY {
        "inf".into()
    } else if s == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        s.to_string()
    }
}

fn class_name(class: IsometryClass) -> &'static str {
    match class {
        IsometryClass::Identity => "identity",
        IsometryClass::Parabolic => "parabolic",
        IsometryClass::Elliptic => "elliptic",
        IsometryClass::Loxodromic => "loxodromic",
    }
}

pub fn spectrum_csv(spectrum: &[SpectrumEntry]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["p", "q", "s", "class", "source"])?;
    for e in spectrum {
        let source = match e.pi {
            Some(pi) => serde_json::to_value(pi.source)?.as_str().unwrap_or_default().to_owned(),
            None => "error".to_owned(),
        };
        w.write_record([
            e.rational.p().to_string(),
            e.rational.q().to_string(),
            e.pi.map(|pi| format_s(pi.s)).unwrap_or_default(),
            e.class.map(class_name).unwrap_or_default().to_owned(),
            source,
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn pi_map(gens: &GeneratorPair, depth: u32, tol: Tolerances, format: Format) -> Result<String> {
    let rep = Representation::build_with(gens.a, gens.b, tol)?;
    let spectrum = pi_spectrum(&rep, depth)?;
    match format {
        Format::Json => json(&spectrum),
        Format::Csv => spectrum_csv(&spectrum),
    }
}

pub fn probe(gens: &GeneratorPair, tol: Tolerances, settings: &ProbeSettings) -> Result<ProbeReport> {
    let rep = Representation::build_with(gens.a, gens.b, tol)?;
    Ok(run_probe(&rep, settings)?)
}

pub fn hexagon(gens: &GeneratorPair, tol: Tolerances) -> Result<String> {
    let rep = Representation::build_with(gens.a, gens.b, tol)?;
    let hex = rep.hexagon()?;
    let [ax_a, core, ax_b, l_b, ax_ab, l_a] = hex.sides;
    json(&HexagonRecord {
        ax_a,
        core,
        ax_b,
        l_b,
        ax_ab,
        l_a,
        orthogonality_residuals: hex.orthogonality_residuals,
        a_factorization_residual: hex.a_factorization_residual,
        b_factorization_residual: hex.b_factorization_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_examples() {
        let tol = Tolerances::default();
        let r: ClassifyRecord = serde_json::from_str(&classify(r#"{"a":1,"b":1,"c":0,"d":1}"#, &tol).unwrap()).unwrap();
        assert_eq!(r.class, IsometryClass::Parabolic);
        assert_eq!(r.fixed, vec![BoundaryPoint::Infinity]);
        let r: ClassifyRecord =
            serde_json::from_str(&classify(r#"{"a":2,"b":0,"c":0,"d":0.5}"#, &tol).unwrap()).unwrap();
        assert_eq!(r.class, IsometryClass::Loxodromic);
        assert_eq!(r.fixed.len(), 2);
        assert!(r.fixed.contains(&BoundaryPoint::ZERO) && r.fixed.contains(&BoundaryPoint::Infinity));
        let r: ClassifyRecord =
            serde_json::from_str(&classify(r#"{"a":0,"b":1,"c":-1,"d":0}"#, &tol).unwrap()).unwrap();
        assert_eq!(r.class, IsometryClass::Elliptic);
        assert_eq!(r.rotation.unwrap().order, Some(2));
    }

    #[test]
    fn primitive_examples() {
        let r: PrimitiveRecord = serde_json::from_str(&primitive("1/2").unwrap()).unwrap();
        assert_eq!((r.word.to_string(), r.palindrome), ("aba".into(), true));
        assert!(r.factors.is_none());
        let r: PrimitiveRecord = serde_json::from_str(&primitive("1/1").unwrap()).unwrap();
        assert_eq!((r.word.to_string(), r.palindrome), ("ab".into(), false));
        assert_eq!(r.factors.unwrap().map(|w| w.to_string()), ["a", "b"]);
        let r: PrimitiveRecord = serde_json::from_str(&primitive("5/3").unwrap()).unwrap();
        let [f1, f2] = r.factors.unwrap();
        assert!(f1.is_palindrome() && f2.is_palindrome());
        assert!(primitive("2/4").is_err());
    }

    #[test]
    fn enumerate_csv_shape() {
        let text = enumerate(1, Format::Csv).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "p,q,word,is_palindrome,factor1,factor2");
        assert_eq!(lines.len(), 4);
        assert!(lines.contains(&"1,1,ab,false,a,b"));
    }

    #[test]
    fn s_formatting() {
        assert_eq!(format_s(f64::INFINITY), "inf");
        assert_eq!(format_s(f64::NEG_INFINITY), "-inf");
        assert_eq!(format_s(0.5).parse::<f64>().unwrap(), 0.5);
    }
}
