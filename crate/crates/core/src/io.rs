//! JSON encodings of fields, algebras, modules, resolutions, point sets and ideals.
//!
//! Field elements are arrays of `e` coefficients, constant term first.
//! Documents are written with sorted keys, two-space indentation, arrays of
//! scalars on one line and a trailing newline, so saving a loaded canonical
//! file reproduces it byte for byte.

use std::fs;
use std::io::{BufRead, Write as _};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::ffield::{default_modulus, Fe, Field};
use crate::linalg::Matrix;
use crate::modrep::{ModuleRep, Resolution};
use crate::qalgebra::{AlgElement, AlgebraSpec};
use crate::rankvar::ProjectivePointSet;
use crate::suppvar::{AnnihilatorIdeal, Poly};

/// Point sets above this size are written as line-delimited records.
pub const JSONL_THRESHOLD: usize = 100_000;

pub type ElementJson = Vec<u32>;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FieldJson {
    pub p: u32,
    pub e: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AlgebraJson {
    pub field: FieldJson,
    pub a: usize,
    pub c: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<ElementJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ModuleJson {
    pub algebra: AlgebraJson,
    pub dim: usize,
    /// `matrices[i][r][s]` is entry `(r, s)` of `X_{i+1}`.
    pub matrices: Vec<Vec<Vec<ElementJson>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ResolutionJson {
    pub module: ModuleJson,
    pub betti: Vec<usize>,
    /// `differentials[n-1][r][s]`: component `r` of the image of generator `s`
    /// of the `n`-th term, an algebra element in PBW coordinates.
    pub differentials: Vec<Vec<Vec<Vec<ElementJson>>>>,
    pub augmentation: Vec<Vec<ElementJson>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct PointsJson {
    pub field: FieldJson,
    pub ext_degree: u32,
    pub c: usize,
    pub points: Vec<Vec<ElementJson>>,
    pub enumerated: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
struct PointsHeader {
    field: FieldJson,
    ext_degree: u32,
    c: usize,
    count: usize,
    enumerated: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub exps: Vec<usize>,
    pub coeff: ElementJson,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolyJson {
    pub monomials: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct IdealJson {
    pub field: FieldJson,
    pub c: usize,
    pub degree_bound: usize,
    pub max_deg: usize,
    pub stabilized: bool,
    pub certified_degree: usize,
    pub generator_degrees: Vec<usize>,
    pub generators: Vec<PolyJson>,
}

pub fn encode_element(field: &Field, x: Fe) -> ElementJson {
    field.coeffs(x)
}

pub fn decode_element(field: &Field, v: &[u32]) -> Result<Fe> {
    field.from_coeffs(v)
}

pub fn encode_point(field: &Field, p: &[Fe]) -> Vec<ElementJson> {
    p.iter().map(|&x| encode_element(field, x)).collect()
}

pub fn decode_point(field: &Field, p: &[ElementJson]) -> Result<Vec<Fe>> {
    p.iter().map(|x| decode_element(field, x)).collect()
}

pub fn encode_matrix(field: &Field, m: &Matrix) -> Vec<Vec<ElementJson>> {
    (0..m.rows())
        .map(|r| encode_point(field, m.row(r)))
        .collect()
}

pub fn decode_matrix(field: &Field, rows: &[Vec<ElementJson>], cols: usize) -> Result<Matrix> {
    let decoded = rows
        .iter()
        .map(|r| {
            if r.len() != cols {
                return Err(Error::Shape(format!("row has {} entries, expected {}", r.len(), cols)));
            }
            decode_point(field, r)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(&decoded, cols))
}

impl FieldJson {
    pub fn from_field(f: &Field) -> FieldJson {
        FieldJson {
            p: f.p(),
            e: f.degree(),
            modulus: Some(f.modulus().to_vec()),
        }
    }

    /// A missing modulus selects the default table entry.
    pub fn to_field(&self) -> Result<Field> {
        let modulus = match &self.modulus {
            Some(m) => m.clone(),
            None => default_modulus(self.p, self.e)?,
        };
        Field::new(self.p, self.e, &modulus)
    }
}

impl AlgebraJson {
    pub fn from_algebra(a: &AlgebraSpec) -> AlgebraJson {
        AlgebraJson {
            field: FieldJson::from_field(a.field()),
            a: a.a(),
            c: a.c(),
            q: Some(encode_element(a.field(), a.q())),
        }
    }

    /// A missing `q` selects the first primitive `a'`-th root of unity.
    pub fn to_algebra(&self) -> Result<AlgebraSpec> {
        let field = self.field.to_field()?;
        match &self.q {
            Some(q) => {
                let q = decode_element(&field, q)?;
                AlgebraSpec::new(field, self.a, self.c, q)
            }
            None => AlgebraSpec::with_default_q(field, self.a, self.c),
        }
    }
}

impl ModuleJson {
    pub fn from_module(m: &ModuleRep) -> ModuleJson {
        let f = m.field();
        ModuleJson {
            algebra: AlgebraJson::from_algebra(m.algebra()),
            dim: m.dim(),
            matrices: m.matrices().iter().map(|x| encode_matrix(f, x)).collect(),
        }
    }

    /// Decodes and validates.
    pub fn to_module(&self) -> Result<ModuleRep> {
        let alg = self.algebra.to_algebra()?;
        let f = alg.field();
        if self.matrices.len() != alg.c() {
            return Err(Error::Shape(format!(
                "expected {} matrices, got {}",
                alg.c(),
                self.matrices.len()
            )));
        }
        let mats = self
            .matrices
            .iter()
            .map(|rows| {
                if rows.len() != self.dim {
                    return Err(Error::Shape(format!(
                        "matrix has {} rows, module dimension is {}",
                        rows.len(),
                        self.dim
                    )));
                }
                decode_matrix(f, rows, self.dim)
            })
            .collect::<Result<Vec<_>>>()?;
        ModuleRep::new(&alg, mats)
    }
}

fn encode_alg_element(field: &Field, u: &AlgElement) -> Vec<ElementJson> {
    encode_point(field, u.coeffs())
}

impl ResolutionJson {
    pub fn from_resolution(res: &Resolution) -> ResolutionJson {
        let f = res.module.field();
        let differentials = res
            .differentials
            .iter()
            .enumerate()
            .map(|(k, gens)| {
                let rows = res.betti[k];
                (0..rows)
                    .map(|r| gens.iter().map(|g| encode_alg_element(f, &g[r])).collect())
                    .collect()
            })
            .collect();
        ResolutionJson {
            module: ModuleJson::from_module(&res.module),
            betti: res.betti.clone(),
            differentials,
            augmentation: encode_matrix(f, &res.augmentation),
        }
    }
}

impl PointsJson {
    pub fn from_points(s: &ProjectivePointSet) -> PointsJson {
        PointsJson {
            field: FieldJson::from_field(&s.field),
            ext_degree: s.ext_degree,
            c: s.c,
            points: s.points.iter().map(|p| encode_point(&s.field, p)).collect(),
            enumerated: s.enumerated,
        }
    }

    pub fn to_points(&self) -> Result<ProjectivePointSet> {
        let field = self.field.to_field()?;
        let points = self
            .points
            .iter()
            .map(|p| {
                if p.len() != self.c {
                    return Err(Error::Shape(format!("point has {} coordinates, expected {}", p.len(), self.c)));
                }
                decode_point(&field, p)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ProjectivePointSet {
            field,
            ext_degree: self.ext_degree,
            c: self.c,
            points,
            enumerated: self.enumerated,
        })
    }
}

impl IdealJson {
    pub fn from_ideal(i: &AnnihilatorIdeal) -> IdealJson {
        IdealJson {
            field: FieldJson::from_field(&i.field),
            c: i.c,
            degree_bound: i.degree_bound,
            max_deg: i.max_deg,
            stabilized: i.stabilized,
            certified_degree: i.certified_degree,
            generator_degrees: i.generator_degrees.clone(),
            generators: i
                .generators
                .iter()
                .map(|p| PolyJson {
                    monomials: p
                        .terms
                        .iter()
                        .map(|(e, c)| TermJson {
                            exps: e.clone(),
                            coeff: encode_element(&i.field, *c),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_ideal(&self) -> Result<AnnihilatorIdeal> {
        let field = self.field.to_field()?;
        let generators = self
            .generators
            .iter()
            .map(|p| {
                Ok(Poly {
                    terms: p
                        .monomials
                        .iter()
                        .map(|t| Ok((t.exps.clone(), decode_element(&field, &t.coeff)?)))
                        .collect::<Result<Vec<_>>>()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AnnihilatorIdeal {
            field,
            c: self.c,
            degree_bound: self.degree_bound,
            max_deg: self.max_deg,
            generators,
            generator_degrees: self.generator_degrees.clone(),
            certified_degree: self.certified_degree,
            stabilized: self.stabilized,
        })
    }
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            out.push('[');
            for (k, x) in items.iter().enumerate() {
                if k > 0 {
                    out.push_str(", ");
                }
                out.push_str(&x.to_string());
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (k, x) in items.iter().enumerate() {
                out.push_str(&"  ".repeat(indent + 1));
                write_value(out, x, indent + 1);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (k, (key, x)) in map.iter().enumerate() {
                out.push_str(&"  ".repeat(indent + 1));
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(out, x, indent + 1);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}

/// The canonical text form of any serializable document.
pub fn to_canonical_string<T: Serialize>(doc: &T) -> String {
    let value = serde_json::to_value(doc).expect("documents serialize to JSON");
    let mut out = String::new();
    write_value(&mut out, &value, 0);
    out.push('\n');
    out
}

pub fn parse_str<T: for<'de> Deserialize<'de>>(text: &str, path: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        path: path.to_string(),
        message: e.to_string(),
        line: e.line(),
        column: e.column(),
    })
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    parse_str(&text, &path.display().to_string())
}

pub fn write_json<T: Serialize>(doc: &T, path: &Path) -> Result<()> {
    fs::write(path, to_canonical_string(doc))?;
    Ok(())
}

pub fn load_module(path: &Path) -> Result<ModuleRep> {
    read_json::<ModuleJson>(path)?.to_module()
}

pub fn save_module(m: &ModuleRep, path: &Path) -> Result<()> {
    write_json(&ModuleJson::from_module(m), path)
}

/// Writes a point set as one document, or as a header line followed by one
/// point per line when it exceeds [`JSONL_THRESHOLD`].
pub fn save_points(s: &ProjectivePointSet, path: &Path) -> Result<()> {
    let doc = PointsJson::from_points(s);
    if doc.points.len() <= JSONL_THRESHOLD {
        return write_json(&doc, path);
    }
    let mut w = std::io::BufWriter::new(fs::File::create(path)?);
    let header = PointsHeader {
        field: doc.field.clone(),
        ext_degree: doc.ext_degree,
        c: doc.c,
        count: doc.points.len(),
        enumerated: doc.enumerated,
    };
    writeln!(w, "{}", serde_json::to_string(&header).expect("header serializes"))?;
    for p in &doc.points {
        writeln!(w, "{}", serde_json::to_string(p).expect("points serialize"))?;
    }
    w.flush()?;
    Ok(())
}

pub fn load_points(path: &Path) -> Result<ProjectivePointSet> {
    let name = path.display().to_string();
    let text = fs::read_to_string(path)?;
    let first = text.lines().next().unwrap_or("");
    if let Ok(header) = serde_json::from_str::<PointsHeader>(first) {
        let mut points = Vec::with_capacity(header.count);
        for (k, line) in std::io::Cursor::new(&text).lines().enumerate().skip(1) {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let p: Vec<ElementJson> = serde_json::from_str(&line).map_err(|e| Error::Parse {
                path: name.clone(),
                message: e.to_string(),
                line: k + 1,
                column: e.column(),
            })?;
            points.push(p);
        }
        return PointsJson {
            field: header.field,
            ext_degree: header.ext_degree,
            c: header.c,
            points,
            enumerated: header.enumerated,
        }
        .to_points();
    }
    parse_str::<PointsJson>(&text, &name)?.to_points()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e2() -> AlgebraSpec {
        let f = Field::prime(5).unwrap();
        AlgebraSpec::new(f.clone(), 2, 2, f.from_int(4)).unwrap()
    }

    #[test]
    fn module_round_trip() {
        let alg = e2();
        let (m, _) = ModuleRep::left_ideal(&alg, &alg.x(0)).unwrap();
        let text = to_canonical_string(&ModuleJson::from_module(&m));
        let back: ModuleJson = parse_str(&text, "mem").unwrap();
        assert_eq!(back.to_module().unwrap(), m);
        assert_eq!(to_canonical_string(&back), text);
        assert!(text.ends_with("}\n"));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse_str::<ModuleJson>("{\n  \"dim\": ", "m.json").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn invalid_module_is_rejected() {
        let f = Field::prime(3).unwrap();
        let alg = AlgebraSpec::new(f.clone(), 2, 1, f.from_int(2)).unwrap();
        let doc = ModuleJson {
            algebra: AlgebraJson::from_algebra(&alg),
            dim: 1,
            matrices: vec![vec![vec![vec![1]]]],
        };
        match doc.to_module() {
            Err(Error::Validation(v)) => assert!(v[0].contains("X1")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn defaults_fill_in() {
        let doc: AlgebraJson = parse_str(r#"{"field":{"p":5,"e":1},"a":2,"c":2}"#, "a").unwrap();
        let alg = doc.to_algebra().unwrap();
        assert_eq!(alg.q(), alg.field().from_int(4));
    }
}
