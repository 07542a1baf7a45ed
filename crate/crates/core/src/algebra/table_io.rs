//! JSON exchange format for structure tables.
//!
//! ```json
//! {"name": "...", "dim": 3, "parity": [0, 1, 1], "labels": ["h", "x", "y"],
//!  "entries": [[1, 2, [[0, 1, 1]]]]}
//! ```
//!
//! Each entry `[i, j, [[k, num, den], ...]]` (with `i <= j`) lists the nonzero
//! coefficients of `[b_i, b_j]`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{check_axioms, AxiomReport, Parity, SparseVec, SuperAlgebra};
use crate::error::{Error, Result};
use crate::exact::Scalar;

/// Nonzero products `[b_i, b_j]` for `i <= j`, as `(i, j, [(k, num, den)])`.
pub type TableEntry = (usize, usize, Vec<(usize, i64, i64)>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureTable {
    pub name: String,
    pub dim: usize,
    pub parity: Vec<Parity>,
    pub labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_degree: Option<Vec<i32>>,
    pub entries: Vec<TableEntry>,
}

impl SuperAlgebra {
    pub fn to_table(&self) -> Result<StructureTable> {
        let mut entries = Vec::new();
        for j in 0..self.dim() {
            for i in 0..=j {
                let v = self.basis_bracket(i, j).1;
                if v.is_empty() {
                    continue;
                }
                let mut terms = Vec::with_capacity(v.len());
                for (k, c) in v {
                    let (n, d) = c.to_i64_pair().ok_or_else(|| {
                        Error::Usage(format!("coefficient {c} does not fit the table format"))
                    })?;
                    terms.push((*k, n, d));
                }
                entries.push((i, j, terms));
            }
        }
        entries.sort_by_key(|(i, j, _)| (*i, *j));
        Ok(StructureTable {
            name: self.name().to_string(),
            dim: self.dim(),
            parity: self.parities().to_vec(),
            labels: self.labels().to_vec(),
            z_degree: self.z_degrees().map(<[i32]>::to_vec),
            entries,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string(&self.to_table()?).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Builds an algebra from a table, rejecting malformed input and any
    /// table that fails the superalgebra axioms.
    pub fn from_table(t: &StructureTable) -> Result<SuperAlgebra> {
        let d = t.dim;
        if t.parity.len() != d || t.labels.len() != d {
            return Err(Error::Dimension {
                expected: d,
                found: t.parity.len().max(t.labels.len()),
            });
        }
        if let Some(z) = &t.z_degree {
            crate::error::check_len(d, z.len())?;
        }
        let mut seen = BTreeSet::new();
        let mut table: Vec<SparseVec> = vec![Vec::new(); d * (d + 1) / 2];
        for (i, j, terms) in &t.entries {
            let (i, j) = (*i, *j);
            if i > j || j >= d {
                return Err(Error::Parse(format!("entry ({i}, {j}) must satisfy i <= j < dim")));
            }
            if !seen.insert((i, j)) {
                return Err(Error::Parse(format!("duplicate entry ({i}, {j})")));
            }
            let mut v = Vec::new();
            for &(k, n, den) in terms {
                if k >= d {
                    return Err(Error::Parse(format!("result index {k} out of range")));
                }
                if den <= 0 {
                    return Err(Error::Parse(format!("denominator must be positive, got {den}")));
                }
                if v.iter().any(|(kk, _)| *kk == k) {
                    return Err(Error::Parse(format!("duplicate term {k} in entry ({i}, {j})")));
                }
                let c = Scalar::from_big(BigInt::from(n), BigInt::from(den))?;
                if !c.is_zero() {
                    v.push((k, c));
                }
            }
            v.sort_by_key(|(k, _)| *k);
            table[j * (j + 1) / 2 + i] = v;
        }
        let alg = SuperAlgebra::from_raw_parts(
            &t.name,
            t.labels.clone(),
            t.parity.clone(),
            table,
            t.z_degree.clone(),
        );
        match check_axioms(&alg) {
            AxiomReport::Pass { .. } => Ok(alg),
            AxiomReport::Fail { violation } => Err(Error::Structural(violation.to_string())),
        }
    }

    pub fn from_json(s: &str) -> Result<SuperAlgebra> {
        let t: StructureTable = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        SuperAlgebra::from_table(&t)
    }
}
