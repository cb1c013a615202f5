//! JSON file formats for groups, subgroups, representations, measures and
//! spectral output. All element indices are 0-based.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::{CMat, CVec};
use crate::repr::UnitaryRep;
use crate::transform::{CoefficientSpace, SpectralField, VectorFunction, VectorMeasure};

/// Version of the spectral output and verification report layouts.
pub const SCHEMA_VERSION: u32 = 1;

/// Prefix selecting a catalog group instead of a file, e.g. `builtin:symmetric:3`.
pub const BUILTIN_PREFIX: &str = "builtin:";

type Pair = [f64; 2];

fn c(p: &Pair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

fn pair(z: &Complex64) -> Pair {
    [z.re, z.im]
}

fn parse<T: for<'de> Deserialize<'de>>(context: &str, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        context: context.to_string(),
        message: e.to_string(),
    })
}

fn read(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

fn parse_index(context: &str, key: &str) -> Result<usize> {
    key.trim().parse().map_err(|_| Error::Parse {
        context: context.to_string(),
        message: format!("key `{key}` is not an element index"),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default)]
    pub name: Option<String>,
}

impl GroupFile {
    pub fn from_group(g: &FiniteGroup) -> Self {
        Self {
            order: g.order(),
            table: g.table().to_vec(),
            name: Some(g.name().to_string()),
        }
    }

    pub fn into_group(self, context: &str) -> Result<FiniteGroup> {
        if self.order != self.table.len() {
            return Err(Error::Parse {
                context: context.to_string(),
                message: format!(
                    "field `order` is {} but `table` has {} rows",
                    self.order,
                    self.table.len()
                ),
            });
        }
        let name = self.name.unwrap_or_else(|| format!("G{}", self.order));
        FiniteGroup::from_table(name, self.table)
    }
}

pub fn parse_group(context: &str, text: &str) -> Result<FiniteGroup> {
    parse::<GroupFile>(context, text)?.into_group(context)
}

/// Loads a group from a JSON file, or from the catalog for `builtin:<name>`.
pub fn load_group(source: &str) -> Result<FiniteGroup> {
    if let Some(name) = source.strip_prefix(BUILTIN_PREFIX) {
        return catalog::group_by_name(name);
    }
    parse_group(source, &read(Path::new(source))?)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupFile {
    pub generators: Vec<usize>,
}

/// Subgroup generators from a comma-separated list (`"1,2"`) or a JSON file.
pub fn load_generators(source: &str) -> Result<Vec<usize>> {
    let trimmed = source.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    let inline: std::result::Result<Vec<usize>, _> = trimmed
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect();
    if let Ok(gens) = inline {
        return Ok(gens);
    }
    Ok(parse::<SubgroupFile>(source, &read(Path::new(source))?)?.generators)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepFile {
    pub dim: usize,
    pub matrices: BTreeMap<String, Vec<Vec<Pair>>>,
}

impl RepFile {
    pub fn from_rep(rep: &UnitaryRep) -> Self {
        let matrices = rep
            .matrices()
            .iter()
            .map(|(k, m)| {
                let rows = (0..m.nrows())
                    .map(|i| (0..m.ncols()).map(|j| pair(&m[(i, j)])).collect())
                    .collect();
                (k.to_string(), rows)
            })
            .collect();
        Self {
            dim: rep.dim(),
            matrices,
        }
    }

    /// Builds the representation. The matrices may cover all of `K` or only a
    /// generating set, in which case they are extended multiplicatively.
    pub fn into_rep(
        self,
        context: &str,
        label: &str,
        subgroup: Arc<Subgroup>,
        tol: f64,
    ) -> Result<UnitaryRep> {
        let mut mats = BTreeMap::new();
        for (key, rows) in &self.matrices {
            let k = parse_index(context, key)?;
            if rows.len() != self.dim || rows.iter().any(|r| r.len() != self.dim) {
                return Err(Error::BadMatrixShape {
                    element: k,
                    rows: rows.len(),
                    cols: rows.first().map_or(0, Vec::len),
                    dim: self.dim,
                });
            }
            let m: CMat = DMatrix::from_fn(self.dim, self.dim, |i, j| c(&rows[i][j]));
            mats.insert(k, m);
        }
        let complete = subgroup.members().iter().all(|k| mats.contains_key(k));
        if complete {
            UnitaryRep::new(label, subgroup, &mats, tol)
        } else {
            let gens: Vec<(usize, CMat)> = mats.into_iter().collect();
            UnitaryRep::from_generators(label, subgroup, &gens, tol)
        }
    }
}

/// Loads a representation by catalog name or from a JSON file. A file-based
/// representation is labelled by its file stem.
pub fn load_rep(source: &str, subgroup: Arc<Subgroup>, tol: f64) -> Result<UnitaryRep> {
    let path = Path::new(source);
    if !path.exists() {
        return match catalog::rep_by_name(subgroup, source) {
            Err(Error::UnknownCatalog(_)) => Err(Error::Io(std::io::Error::new(
                std::io::ErrorKind::NotFound,
                format!("`{source}` is neither a catalog name nor a readable file"),
            ))),
            other => other,
        };
    }
    let label = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or(source)
        .to_string();
    parse::<RepFile>(source, &read(path)?)?.into_rep(source, &label, subgroup, tol)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureFile {
    pub space_dim: usize,
    pub atoms: BTreeMap<String, Vec<Pair>>,
}

impl MeasureFile {
    /// Atom vectors indexed by element; unlisted elements carry zero.
    fn into_values(self, context: &str, order: usize) -> Result<(CoefficientSpace, Vec<CVec>)> {
        let space = CoefficientSpace::new(self.space_dim)?;
        let mut values = vec![space.zero(); order];
        for (key, v) in &self.atoms {
            let t = parse_index(context, key)?;
            if t >= order {
                return Err(Error::IndexOutOfRange { index: t, order });
            }
            if v.len() != self.space_dim {
                return Err(Error::Parse {
                    context: context.to_string(),
                    message: format!(
                        "atom at {t} has {} components, space_dim is {}",
                        v.len(),
                        self.space_dim
                    ),
                });
            }
            values[t] = CVec::from_iterator(v.len(), v.iter().map(c));
        }
        Ok((space, values))
    }

    pub fn from_values(space: CoefficientSpace, values: &[CVec]) -> Self {
        let atoms = values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.iter().any(|z| z.norm() != 0.0))
            .map(|(t, v)| (t.to_string(), v.iter().map(pair).collect()))
            .collect();
        Self {
            space_dim: space.dim(),
            atoms,
        }
    }

    pub fn into_measure(self, context: &str, order: usize) -> Result<VectorMeasure> {
        let (space, values) = self.into_values(context, order)?;
        VectorMeasure::new(space, values)
    }

    pub fn into_function(self, context: &str, order: usize) -> Result<VectorFunction> {
        let (space, values) = self.into_values(context, order)?;
        VectorFunction::new(space, values)
    }
}

pub fn parse_measure_file(context: &str, text: &str) -> Result<MeasureFile> {
    parse(context, text)
}

pub fn load_measure_file(path: &Path) -> Result<MeasureFile> {
    parse_measure_file(&path.display().to_string(), &read(path)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralBlockOut {
    pub sigma: String,
    pub n: usize,
    pub d_sigma: usize,
    pub space_dim: usize,
    /// `coeffs[i][j][k]` is component `k` of `Phi(sigma)(theta_i, theta_j)`.
    pub coeffs: Vec<Vec<Vec<Pair>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralOutput {
    pub schema_version: u32,
    pub group: String,
    pub group_order: usize,
    pub subgroup_order: usize,
    pub blocks: Vec<SpectralBlockOut>,
}

impl SpectralOutput {
    pub fn from_field(field: &SpectralField) -> Self {
        let first = field.blocks().next();
        let blocks = field
            .blocks()
            .map(|b| {
                let n = b.size();
                SpectralBlockOut {
                    sigma: b.label().to_string(),
                    n,
                    d_sigma: b.weight(),
                    space_dim: b.space().dim(),
                    coeffs: (0..n)
                        .map(|i| {
                            (0..n)
                                .map(|j| b.get(i, j).iter().map(pair).collect())
                                .collect()
                        })
                        .collect(),
                }
            })
            .collect();
        Self {
            schema_version: SCHEMA_VERSION,
            group: first.map_or_else(String::new, |b| b.rep().group().name().to_string()),
            group_order: first.map_or(0, |b| b.rep().group().order()),
            subgroup_order: first.map_or(0, |b| b.rep().sigma().subgroup().order()),
            blocks,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::induce::InducedRep;
    use crate::transform;

    #[test]
    fn group_round_trip_and_errors() {
        let g = catalog::symmetric_group(3);
        let text = serde_json::to_string(&GroupFile::from_group(&g)).unwrap();
        let back = parse_group("s3.json", &text).unwrap();
        assert_eq!(back.table(), g.table());
        assert_eq!(back.name(), "S3");

        let err = parse_group("bad.json", r#"{"order": 2, "table": [[0,1],[0,1]]}"#).unwrap_err();
        assert!(matches!(err, Error::NotLatinSquare { .. }), "{err}");
        let err = parse_group("bad.json", r#"{"order": 3, "table": [[0,1],[1,0]]}"#).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
        let err = parse_group(
            "bad.json",
            "{\n  \"order\": 1,\n  \"table\": [[0]],\n  \"extra\": 1\n}",
        )
        .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("bad.json") && msg.contains("line"), "{msg}");
        assert_eq!(
            parse_group("t", r#"{"order":1,"table":[[0]]}"#)
                .unwrap()
                .name(),
            "G1"
        );
        assert_eq!(load_group("builtin:cyclic:5").unwrap().order(), 5);
    }

    #[test]
    fn generators_inline() {
        assert_eq!(load_generators("1, 2").unwrap(), vec![1, 2]);
        assert_eq!(load_generators("").unwrap(), Vec::<usize>::new());
        assert!(load_generators("/definitely/missing.json").is_err());
    }

    #[test]
    fn rep_from_generators_and_full() {
        let p = catalog::s3_a3();
        let rep = catalog::rep_by_name(p.subgroup.clone(), "cyclic:3:chi1").unwrap();
        let full = RepFile::from_rep(&rep);
        let back = full
            .clone()
            .into_rep("r", "w", p.subgroup.clone(), 1e-9)
            .unwrap();
        assert_eq!(back.max_difference(&rep).unwrap(), 0.0);

        let gen = *p.subgroup.members().iter().find(|&&k| k != 0).unwrap();
        let mut partial = full.clone();
        partial.matrices.retain(|k, _| k == &gen.to_string());
        let back = partial
            .into_rep("r", "w", p.subgroup.clone(), 1e-9)
            .unwrap();
        assert!(back.max_difference(&rep).unwrap() < 1e-12);

        let mut bad = full;
        bad.matrices.insert("1".into(), vec![vec![[1.0, 0.0]]]);
        let bad = bad.into_rep("r", "w", p.subgroup.clone(), 1e-9);
        assert!(bad.is_err());
    }

    #[test]
    fn measure_parsing() {
        let f =
            parse_measure_file("m", r#"{"space_dim": 2, "atoms": {"0": [[1,0],[0,1]]}}"#).unwrap();
        let m = f.into_measure("m", 6).unwrap();
        assert_eq!(m.atoms()[0][1], Complex64::new(0.0, 1.0));
        assert_eq!(m.atoms()[3].norm(), 0.0);
        let bad = parse_measure_file("m", r#"{"space_dim": 2, "atoms": {"9": [[1,0],[0,1]]}}"#)
            .unwrap()
            .into_measure("m", 6);
        assert!(matches!(bad, Err(Error::IndexOutOfRange { .. })));
        let bad = parse_measure_file("m", r#"{"space_dim": 2, "atoms": {"1": [[1,0]]}}"#)
            .unwrap()
            .into_measure("m", 6);
        assert!(matches!(bad, Err(Error::Parse { .. })));
    }

    #[test]
    fn spectral_output_layout() {
        let p = catalog::s3_a3();
        let rep = catalog::rep_by_name(p.subgroup.clone(), "cyclic:3:chi1").unwrap();
        let u = Arc::new(InducedRep::new(Arc::new(rep)));
        let space = CoefficientSpace::new(1).unwrap();
        let m = VectorMeasure::dirac(space, 6, 0, CVec::from_element(1, Complex64::new(2.0, 0.0)))
            .unwrap();
        let field = transform::transform_measure(&m, &[u]).unwrap();
        let out = SpectralOutput::from_field(&field);
        assert_eq!(out.schema_version, 1);
        assert_eq!(out.blocks[0].n, 2);
        assert_eq!(out.blocks[0].coeffs[1][1][0], [2.0, 0.0]);
        assert_eq!(out.blocks[0].coeffs[0][1][0], [0.0, 0.0]);
        let parsed: SpectralOutput = serde_json::from_str(&out.to_json()).unwrap();
        assert_eq!(parsed, out);
    }
}
