//! JSON documents for coupled codes and joint relay graphs.
//!
//! ```json
//! {"family": {"kind": "regular", "l": 3, "r": 6}, "coupling": 4,
//!  "rows": 6, "cols": 8, "entries": [1, 1, 0, ...],
//!  "roles": ["information", "parity", ...]}
//! ```
//!
//! Joint graphs add `labels` (`"SD"`, `"RD"`, `"P"`) and the index ranges
//! of the two halves.

use serde::{Deserialize, Serialize};

use crate::base_matrix::{BaseMatrix, ColumnRole};
use crate::coupling::{CoupledCode, Family};
use crate::error::{Error, Result};
use crate::relay::{ChannelLabel, JointRelayGraph};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodeDocument {
    pub family: Family,
    #[serde(default = "one")]
    pub coupling: u32,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<u32>,
    pub roles: Vec<ColumnRole>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<ChannelLabel>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sender_cols: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sender_rows: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connector_rows: Option<[usize; 2]>,
}

fn one() -> u32 {
    1
}

impl From<&CoupledCode> for CodeDocument {
    fn from(code: &CoupledCode) -> Self {
        CodeDocument {
            family: code.family,
            coupling: code.coupling,
            rows: code.base.rows(),
            cols: code.base.cols(),
            entries: code.base.entries().to_vec(),
            roles: code.column_roles.clone(),
            labels: None,
            sender_cols: None,
            sender_rows: None,
            connector_rows: None,
        }
    }
}

impl From<&JointRelayGraph> for CodeDocument {
    fn from(g: &JointRelayGraph) -> Self {
        let pair = |r: &std::ops::Range<usize>| [r.start, r.end];
        CodeDocument {
            family: Family::Custom,
            coupling: 1,
            rows: g.base.rows(),
            cols: g.base.cols(),
            entries: g.base.entries().to_vec(),
            roles: g.roles.clone(),
            labels: Some(g.labels.clone()),
            sender_cols: Some(pair(&g.sender_cols)),
            sender_rows: g.sender_rows.as_ref().map(pair),
            connector_rows: Some(pair(&g.connector_rows)),
        }
    }
}

impl CodeDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    fn base(&self) -> Result<BaseMatrix> {
        if self.roles.len() != self.cols {
            return Err(Error::Format(format!(
                "{} roles for {} columns",
                self.roles.len(),
                self.cols
            )));
        }
        BaseMatrix::from_row_major(self.rows, self.cols, self.entries.clone())
    }

    pub fn is_joint(&self) -> bool {
        self.labels.is_some()
    }

    pub fn to_coupled(&self) -> Result<CoupledCode> {
        Ok(CoupledCode {
            base: self.base()?,
            coupling: self.coupling,
            column_roles: self.roles.clone(),
            family: self.family,
        })
    }

    /// A joint graph. Missing ranges default to: source columns up to the
    /// first `RD` column, no separate source rows, no connector rows.
    pub fn to_joint(&self) -> Result<JointRelayGraph> {
        let base = self.base()?;
        let labels = self
            .labels
            .clone()
            .ok_or_else(|| Error::Format("joint graph needs a labels field".into()))?;
        if labels.len() != self.cols {
            return Err(Error::Format(format!(
                "{} labels for {} columns",
                labels.len(),
                self.cols
            )));
        }
        for (j, (l, r)) in labels.iter().zip(&self.roles).enumerate() {
            if (*l == ChannelLabel::Punctured) != r.is_punctured() {
                return Err(Error::Format(format!(
                    "column {j}: punctured label and role disagree"
                )));
            }
        }
        let first_rd = labels
            .iter()
            .position(|&l| l == ChannelLabel::RD)
            .unwrap_or(self.cols);
        let range = |p: [usize; 2], bound: usize| -> Result<std::ops::Range<usize>> {
            if p[0] > p[1] || p[1] > bound {
                return Err(Error::Format(format!("range {p:?} out of bounds")));
            }
            Ok(p[0]..p[1])
        };
        let sender_cols = range(self.sender_cols.unwrap_or([0, first_rd]), self.cols)?;
        let sender_rows = self.sender_rows.map(|p| range(p, self.rows)).transpose()?;
        let connector_rows = range(
            self.connector_rows.unwrap_or([self.rows, self.rows]),
            self.rows,
        )?;
        Ok(JointRelayGraph {
            base,
            labels,
            roles: self.roles.clone(),
            relay_cols: sender_cols.end..self.cols,
            sender_cols,
            sender_rows,
            connector_rows,
        })
    }
}
