//! File formats for algebras (bound quivers), modules (representations) and
//! Kupisch series.
//!
//! Paths in relation terms are written in application order: `["a", "b"]`
//! means "apply a first, then b" (the composite b.a). A module file gives
//! per-vertex dimensions and one matrix per arrow label, with shape
//! `dims[target] x dims[source]`; missing labels default to zero matrices.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use itphi::algebra::AlgebraRef;
use itphi::linalg::FpMatrix;
use itphi::module::Module;
use itphi::quiver::{
    module_from_representation, to_algebra, Arrow, KupischSeries, QuiverSpec, RelationTerm,
};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrowFile {
    pub from: usize,
    pub to: usize,
    pub label: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelationTermFile {
    pub coeff: i64,
    pub path: Vec<String>,
}

fn default_length_bound() -> usize {
    12
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub prime: u64,
    pub vertices: usize,
    #[serde(default)]
    pub arrows: Vec<ArrowFile>,
    #[serde(default)]
    pub relations: Vec<Vec<RelationTermFile>>,
    #[serde(default = "default_length_bound")]
    pub length_bound: usize,
}

impl AlgebraFile {
    /// Vertices are 1-indexed in files, 0-indexed internally.
    pub fn to_spec(&self) -> Result<QuiverSpec, String> {
        if self.vertices == 0 {
            return Err("algebra file declares zero vertices".into());
        }
        let mut arrows = Vec::new();
        for (i, a) in self.arrows.iter().enumerate() {
            if a.from == 0 || a.from > self.vertices || a.to == 0 || a.to > self.vertices {
                return Err(format!("arrow {} has out-of-range endpoints", i));
            }
            arrows.push(Arrow {
                source: a.from - 1,
                target: a.to - 1,
                label: a.label.clone(),
            });
        }
        let label_index = |label: &str| -> Result<usize, String> {
            arrows
                .iter()
                .position(|a| a.label == label)
                .ok_or_else(|| format!("unknown arrow label {label}"))
        };
        let p = self.prime as i64;
        let mut relations = Vec::new();
        for (ri, rel) in self.relations.iter().enumerate() {
            let mut terms = Vec::new();
            for term in rel {
                let coeff = term.coeff.rem_euclid(p) as u64;
                let path = term
                    .path
                    .iter()
                    .map(|l| label_index(l))
                    .collect::<Result<Vec<usize>, String>>()
                    .map_err(|e| format!("relation {ri}: {e}"))?;
                terms.push(RelationTerm { coeff, path });
            }
            relations.push(terms);
        }
        Ok(QuiverSpec {
            vertices: self.vertices,
            arrows,
            relations,
            p: self.prime,
            length_bound: self.length_bound,
        })
    }

    pub fn build(&self) -> Result<AlgebraRef, String> {
        let spec = self.to_spec()?;
        to_algebra(&spec).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuleFile {
    pub dims: Vec<usize>,
    #[serde(default)]
    pub arrows: BTreeMap<String, Vec<Vec<u64>>>,
}

impl ModuleFile {
    pub fn to_module(&self, algebra: &AlgebraRef) -> Result<Module, String> {
        let data = algebra
            .quiver_data()
            .ok_or("algebra is not quiver-derived")?;
        if self.dims.len() != data.vertices {
            return Err(format!(
                "module file has {} vertex dimensions, algebra has {} vertices",
                self.dims.len(),
                data.vertices
            ));
        }
        for label in self.arrows.keys() {
            if !data.arrows.iter().any(|a| &a.label == label) {
                return Err(format!("module file names unknown arrow {label}"));
            }
        }
        let p = algebra.p();
        let mut mats = Vec::new();
        for arrow in &data.arrows {
            let rows = self.dims[arrow.target];
            let cols = self.dims[arrow.source];
            let mat = match self.arrows.get(&arrow.label) {
                None => FpMatrix::zeros(p, rows, cols),
                Some(entries) => {
                    if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
                        return Err(format!(
                            "matrix for arrow {} must be {}x{}",
                            arrow.label, rows, cols
                        ));
                    }
                    FpMatrix::from_rows(p, entries.clone()).map_err(|e| e.to_string())?
                }
            };
            mats.push(mat);
        }
        module_from_representation(algebra, &self.dims, &mats).map_err(|e| e.to_string())
    }
}

/// Parses a Kupisch series of the form "2,2,1".
pub fn parse_kupisch(text: &str, cyclic: bool) -> Result<KupischSeries, String> {
    let lengths = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|e| format!("bad Kupisch entry {s:?}: {e}"))
        })
        .collect::<Result<Vec<_>, String>>()?;
    let series = if cyclic {
        KupischSeries::cyclic(lengths)
    } else {
        KupischSeries::linear(lengths)
    };
    series.validate().map_err(|e| e.to_string())?;
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_file_roundtrip() {
        let text = r#"{
            "prime": 2,
            "vertices": 3,
            "arrows": [
                {"from": 1, "to": 2, "label": "a"},
                {"from": 2, "to": 3, "label": "b"}
            ],
            "relations": [[{"coeff": 1, "path": ["a", "b"]}]],
            "length_bound": 4
        }"#;
        let file: AlgebraFile = serde_json::from_str(text).unwrap();
        let a = file.build().unwrap();
        assert_eq!(a.dim(), 5);
    }

    #[test]
    fn module_file_parses() {
        let atext = r#"{
            "prime": 2,
            "vertices": 3,
            "arrows": [
                {"from": 1, "to": 2, "label": "a"},
                {"from": 2, "to": 3, "label": "b"}
            ],
            "length_bound": 4
        }"#;
        let afile: AlgebraFile = serde_json::from_str(atext).unwrap();
        let a = afile.build().unwrap();
        let mtext = r#"{"dims": [1, 1, 0], "arrows": {"a": [[1]]}}"#;
        let mfile: ModuleFile = serde_json::from_str(mtext).unwrap();
        let m = mfile.to_module(&a).unwrap();
        assert_eq!(m.dim(), 2);
    }

    #[test]
    fn kupisch_parser() {
        assert!(parse_kupisch("2,2,1", false).is_ok());
        assert!(parse_kupisch("2,2", true).is_ok());
        assert!(parse_kupisch("2,x", false).is_err());
        assert!(parse_kupisch("3,1,1", false).is_err());
    }
}
