//! Joint destination-side protograph for decode-and-forward.
//!
//! The destination sees the source codeword over S->D and the relay's
//! re-encoding over R->D. Both codes are stacked block-diagonally and each
//! matched pair of information columns is tied together by a degree-2 check.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::base_matrix::{
    arja_roles, arja_split_extended_base, BaseMatrix, ColumnRole, ARJA_RELAY_COLS, ARJA_SENDER_COLS,
};
use crate::coupling::CoupledCode;
use crate::error::{invalid, Error, Result};

/// Which channel feeds a protograph column at the destination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChannelLabel {
    #[serde(rename = "SD")]
    SD,
    #[serde(rename = "RD")]
    RD,
    #[serde(rename = "P")]
    Punctured,
}

/// Erasure probabilities of the three links.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelParams {
    pub eps_sd: f64,
    pub eps_rd: f64,
    pub eps_sr: f64,
}

impl ChannelParams {
    pub fn new(eps_sd: f64, eps_rd: f64, eps_sr: f64) -> Result<Self> {
        let p = ChannelParams {
            eps_sd,
            eps_rd,
            eps_sr,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("eps_sd", self.eps_sd),
            ("eps_rd", self.eps_rd),
            ("eps_sr", self.eps_sr),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return invalid(format!("{name}={v} is not a probability"));
            }
        }
        Ok(())
    }
}

/// How the two halves share check rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum JointLayout {
    /// `[[B_S, 0], [0, B_R], [C_S, C_R]]`.
    #[default]
    BlockDiagonal,
    /// `[[B_S, B_R], [C_S, C_R]]`: both halves sum into one set of checks.
    /// Only for comparison; requires equal row counts.
    SharedChecks,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JointRelayGraph {
    pub base: BaseMatrix,
    pub labels: Vec<ChannelLabel>,
    pub roles: Vec<ColumnRole>,
    pub sender_cols: Range<usize>,
    pub relay_cols: Range<usize>,
    /// Rows checking only the sender's code, when it has its own rows.
    pub sender_rows: Option<Range<usize>>,
    pub connector_rows: Range<usize>,
}

impl JointRelayGraph {
    /// Columns the destination must recover: the source codeword, including
    /// its punctured information.
    pub fn target_columns(&self) -> Vec<bool> {
        (0..self.base.cols())
            .map(|j| self.sender_cols.contains(&j))
            .collect()
    }

    /// Per-column erasure probability at the destination.
    pub fn eps_vector(&self, params: &ChannelParams) -> Vec<f64> {
        eps_vector(&self.labels, params)
    }

    /// Wraps a single code as a point-to-point graph: every transmitted
    /// column gets the S->D label.
    pub fn standalone(code: &CoupledCode) -> Self {
        let n = code.base.cols();
        JointRelayGraph {
            base: code.base.clone(),
            labels: code
                .column_roles
                .iter()
                .map(|r| label_for(*r, ChannelLabel::SD))
                .collect(),
            roles: code.column_roles.clone(),
            sender_cols: 0..n,
            relay_cols: n..n,
            sender_rows: Some(0..code.base.rows()),
            connector_rows: code.base.rows()..code.base.rows(),
        }
    }

    /// Source's standalone code, when the layout keeps it in its own rows.
    pub fn sender_code(&self) -> Option<(BaseMatrix, Vec<ColumnRole>)> {
        let rows = self.sender_rows.clone()?;
        let mut b = BaseMatrix::zeros(rows.len(), self.sender_cols.len());
        for (bi, i) in rows.enumerate() {
            for (bj, j) in self.sender_cols.clone().enumerate() {
                b.set(bi, bj, self.base.get(i, j));
            }
        }
        Some((b, self.roles[self.sender_cols.clone()].to_vec()))
    }

    /// Swaps the roles of source and relay (columns and rows permuted).
    /// Only for block-diagonal graphs.
    pub fn swapped(&self) -> Option<JointRelayGraph> {
        let s_rows = self.sender_rows.clone()?;
        let r_rows = s_rows.end..self.connector_rows.start;
        let ns = self.sender_cols.len();
        let nr = self.relay_cols.len();
        let col_map: Vec<usize> = self
            .relay_cols
            .clone()
            .chain(self.sender_cols.clone())
            .collect();
        let row_map: Vec<usize> = r_rows
            .clone()
            .chain(s_rows.clone())
            .chain(self.connector_rows.clone())
            .collect();
        let mut base = BaseMatrix::zeros(self.base.rows(), self.base.cols());
        for (ni, &oi) in row_map.iter().enumerate() {
            for (nj, &oj) in col_map.iter().enumerate() {
                base.set(ni, nj, self.base.get(oi, oj));
            }
        }
        let swap = |l: ChannelLabel| match l {
            ChannelLabel::SD => ChannelLabel::RD,
            ChannelLabel::RD => ChannelLabel::SD,
            ChannelLabel::Punctured => ChannelLabel::Punctured,
        };
        Some(JointRelayGraph {
            base,
            labels: col_map.iter().map(|&j| swap(self.labels[j])).collect(),
            roles: col_map.iter().map(|&j| self.roles[j]).collect(),
            sender_cols: 0..nr,
            relay_cols: nr..nr + ns,
            sender_rows: Some(0..r_rows.len()),
            connector_rows: self.connector_rows.clone(),
        })
    }
}

fn label_for(role: ColumnRole, transmitted: ChannelLabel) -> ChannelLabel {
    if role.is_punctured() {
        ChannelLabel::Punctured
    } else {
        transmitted
    }
}

/// Stacks the source and relay codes and adds one degree-2 check per matched
/// pair of information columns (matched in copy order).
pub fn build_joint(sender: &CoupledCode, relay: &CoupledCode) -> Result<JointRelayGraph> {
    build_joint_with(sender, relay, JointLayout::BlockDiagonal)
}

pub fn build_joint_with(
    sender: &CoupledCode,
    relay: &CoupledCode,
    layout: JointLayout,
) -> Result<JointRelayGraph> {
    let s_info = sender.information_columns();
    let r_info = relay.information_columns();
    if s_info.len() != r_info.len() || s_info.is_empty() {
        return Err(Error::InvalidPairing {
            sender: s_info.len(),
            relay: r_info.len(),
        });
    }
    let (ms, ns) = (sender.base.rows(), sender.base.cols());
    let (mr, nr) = (relay.base.rows(), relay.base.cols());
    let pairs = s_info.len();

    let (code_rows, relay_row0, sender_rows) = match layout {
        JointLayout::BlockDiagonal => (ms + mr, ms, Some(0..ms)),
        JointLayout::SharedChecks => {
            if ms != mr {
                return invalid("shared-check layout needs equal row counts");
            }
            (ms, 0, None)
        }
    };
    let mut base = BaseMatrix::zeros(code_rows + pairs, ns + nr);
    base.place(0, 0, &sender.base);
    for i in 0..mr {
        for j in 0..nr {
            let v = relay.base.get(i, j);
            let cur = base.get(relay_row0 + i, ns + j);
            base.set(relay_row0 + i, ns + j, cur + v);
        }
    }
    for (t, (&js, &jr)) in s_info.iter().zip(&r_info).enumerate() {
        base.set(code_rows + t, js, 1);
        base.set(code_rows + t, ns + jr, 1);
    }

    let labels = sender
        .column_roles
        .iter()
        .map(|&r| label_for(r, ChannelLabel::SD))
        .chain(
            relay
                .column_roles
                .iter()
                .map(|&r| label_for(r, ChannelLabel::RD)),
        )
        .collect();
    let roles = sender
        .column_roles
        .iter()
        .chain(&relay.column_roles)
        .copied()
        .collect();
    Ok(JointRelayGraph {
        base,
        labels,
        roles,
        sender_cols: 0..ns,
        relay_cols: ns..ns + nr,
        sender_rows,
        connector_rows: code_rows..code_rows + pairs,
    })
}

/// The split-extended ARJA protograph already contains both halves.
pub fn arja_joint() -> JointRelayGraph {
    let base = arja_split_extended_base();
    let labels = (0..base.cols())
        .map(|j| {
            if j == 0 {
                ChannelLabel::Punctured
            } else if ARJA_SENDER_COLS.contains(&j) {
                ChannelLabel::SD
            } else {
                ChannelLabel::RD
            }
        })
        .collect();
    let rows = base.rows();
    JointRelayGraph {
        base,
        labels,
        roles: arja_roles(),
        sender_cols: ARJA_SENDER_COLS,
        relay_cols: ARJA_RELAY_COLS,
        sender_rows: None,
        connector_rows: rows..rows,
    }
}

/// `eps_sd` for S->D columns, `eps_rd` for R->D columns, 1 for punctured.
pub fn eps_vector(labels: &[ChannelLabel], params: &ChannelParams) -> Vec<f64> {
    labels
        .iter()
        .map(|l| match l {
            ChannelLabel::SD => params.eps_sd,
            ChannelLabel::RD => params.eps_rd,
            ChannelLabel::Punctured => 1.0,
        })
        .collect()
}
