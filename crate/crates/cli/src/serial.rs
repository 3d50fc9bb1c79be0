//! JSON layout: complex numbers are `[re, im]`, matrices are arrays of rows.

use std::collections::BTreeMap;

use pbosc::pb_operators::Generator;
use pbosc::{build_family, CMatrix, Family64, C64};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub type JsonMatrix = Vec<Vec<[f64; 2]>>;

pub fn matrix_to_json(m: &CMatrix) -> JsonMatrix {
    m.rows().map(|row| row.iter().map(|z| [z.re, z.im]).collect()).collect()
}

pub fn matrix_from_json(rows: &JsonMatrix) -> CliResult<CMatrix> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Usage("matrix must be square and non-empty".into()));
    }
    Ok(CMatrix::from_fn(n, |i, j| {
        let [re, im] = rows[i][j];
        C64::new(re, im)
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProvenanceJson {
    pub left: String,
    pub right: String,
    pub coefficient: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub dim: usize,
    pub s: usize,
    pub generators: BTreeMap<String, JsonMatrix>,
    #[serde(default)]
    pub provenance: BTreeMap<String, ProvenanceJson>,
}

impl FamilyJson {
    pub fn from_family(f: &Family64) -> Self {
        let generators = f
            .generators()
            .map(|(g, m)| (g.name().to_string(), matrix_to_json(m)))
            .collect();
        let provenance = f
            .derived
            .iter()
            .map(|(g, d)| {
                let p = &d.provenance;
                (
                    g.name().to_string(),
                    ProvenanceJson {
                        left: p.left.name().into(),
                        right: p.right.name().into(),
                        coefficient: p.coefficient,
                    },
                )
            })
            .collect();
        Self {
            dim: f.dim(),
            s: f.s(),
            generators,
            provenance,
        }
    }

    /// Matrix for a canonical generator name.
    pub fn matrix(&self, name: &str) -> CliResult<CMatrix> {
        let rows = self
            .generators
            .get(name)
            .ok_or_else(|| CliError::Usage(format!("generator {name:?} missing")))?;
        let m = matrix_from_json(rows)?;
        if m.dim() != self.dim {
            return Err(CliError::Usage(format!("generator {name:?} has dimension {}", m.dim())));
        }
        Ok(m)
    }

    /// Checks the document against a freshly built family at the same cutoff.
    pub fn reload_residual(&self) -> CliResult<f64> {
        if self.dim != self.s + 1 {
            return Err(CliError::Usage(format!("dim {} does not match s = {}", self.dim, self.s)));
        }
        let fresh = build_family::<f64>(self.s)?;
        let mut worst = 0.0f64;
        for name in self.generators.keys() {
            let g = Generator::from_name(name)
                .ok_or_else(|| CliError::Usage(format!("unknown generator {name:?}")))?;
            let reference = fresh
                .get(g)
                .ok_or_else(|| CliError::Usage(format!("generator {name:?} not defined at s = {}", self.s)))?;
            worst = worst.max(self.matrix(name)?.max_abs_diff(reference)?);
        }
        Ok(worst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip() {
        let m = CMatrix::from_fn(3, |i, j| C64::new(i as f64, -(j as f64) / 3.0));
        let back = matrix_from_json(&matrix_to_json(&m)).unwrap();
        assert_eq!(m, back);
        assert!(matrix_from_json(&vec![vec![[0.0, 0.0]; 2]; 3]).is_err());
    }

    #[test]
    fn family_document_round_trip() {
        let f = build_family::<f64>(3).unwrap();
        let doc = FamilyJson::from_family(&f);
        let text = serde_json::to_string(&doc).unwrap();
        let back: FamilyJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.reload_residual().unwrap(), 0.0);
        assert_eq!(back.provenance["M"].left, "a");
        assert_eq!(back.generators.len(), 8);
    }
}
