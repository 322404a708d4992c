//! Protograph base matrices, the code families built from them and their
//! design rates.

mod lift;
pub mod rate;

pub use lift::{lift, LiftedCode, SparseBinary};
pub use rate::{design_rate_mn, design_rate_regular, CouplingNumber, Rate};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Dense non-negative integer matrix; entry `(i, j)` is the number of edges
/// between check type `i` and variable type `j` of the protograph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BaseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl BaseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BaseMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    /// Builds a matrix from row-major entries.
    pub fn from_row_major(rows: usize, cols: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Format(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(BaseMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from nested rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[u32]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged base matrix");
            entries.extend_from_slice(r.as_ref());
        }
        BaseMatrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn max_entry(&self) -> u32 {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn row_weight(&self, i: usize) -> u32 {
        self.row(i).iter().sum()
    }

    pub fn col_weight(&self, j: usize) -> u32 {
        (0..self.rows).map(|i| self.get(i, j)).sum()
    }

    /// Number of nonzero entries, i.e. edge sections.
    pub fn nnz(&self) -> usize {
        self.entries.iter().filter(|&&e| e != 0).count()
    }

    /// True when every row and every column has a nonzero entry.
    pub fn is_connected_shape(&self) -> bool {
        (0..self.rows).all(|i| self.row_weight(i) > 0)
            && (0..self.cols).all(|j| self.col_weight(j) > 0)
    }

    /// Copies `block` into this matrix with its top-left corner at `(r0, c0)`.
    pub fn place(&mut self, r0: usize, c0: usize, block: &BaseMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j));
            }
        }
    }

    pub fn checked_sub(&self, other: &BaseMatrix) -> Result<BaseMatrix> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let (a, b) = (self.get(i, j), other.get(i, j));
                if b > a {
                    return Err(Error::NegativeSpreading { row: i, col: j });
                }
                out.set(i, j, a - b);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &BaseMatrix) -> BaseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        BaseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }
}

impl fmt::Display for BaseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(u32::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// What a protograph column carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColumnRole {
    Information,
    /// Information bits that are never transmitted (MacKay-Neal, ARJA).
    PuncturedInformation,
    Parity,
}

impl ColumnRole {
    pub fn is_information(self) -> bool {
        matches!(
            self,
            ColumnRole::Information | ColumnRole::PuncturedInformation
        )
    }

    pub fn is_punctured(self) -> bool {
        self == ColumnRole::PuncturedInformation
    }
}

/// `[l, ..., l]` with `k = r / l` columns.
pub fn regular_base(l: u32, r: u32) -> Result<BaseMatrix> {
    let k = regular_k(l, r)?;
    Ok(BaseMatrix::from_rows(&[vec![l; k as usize]]))
}

pub(crate) fn regular_k(l: u32, r: u32) -> Result<u32> {
    if l < 2 {
        return invalid(format!("variable degree l={l} must be at least 2"));
    }
    if !r.is_multiple_of(l) || r / l < 2 {
        return invalid(format!(
            "check degree r={r} must be a multiple k*l of l={l} with k >= 2"
        ));
    }
    Ok(r / l)
}

/// Column roles of the uncoupled regular protograph: information on column 0.
pub fn regular_roles(k: usize) -> Vec<ColumnRole> {
    (0..k)
        .map(|j| {
            if j == 0 {
                ColumnRole::Information
            } else {
                ColumnRole::Parity
            }
        })
        .collect()
}

/// The `g x (g+1)` MacKay-Neal template: column 0 all `r`, the rest ones.
pub fn mn_base(l: u32, r: u32, g: u32) -> Result<BaseMatrix> {
    check_mn(l, r, g)?;
    let g = g as usize;
    let mut b = BaseMatrix::zeros(g, g + 1);
    for i in 0..g {
        b.set(i, 0, r);
        for j in 1..=g {
            b.set(i, j, 1);
        }
    }
    Ok(b)
}

pub(crate) fn check_mn(l: u32, r: u32, g: u32) -> Result<()> {
    if g < 1 || r < 1 {
        return invalid(format!(
            "MN codes need g >= 1 and r >= 1 (got g={g}, r={r})"
        ));
    }
    if l != g * r {
        return invalid(format!("MN codes need l = g*r (got l={l}, g={g}, r={r})"));
    }
    Ok(())
}

/// Column roles of the uncoupled MN protograph: column 0 punctured.
pub fn mn_roles(g: usize) -> Vec<ColumnRole> {
    (0..=g)
        .map(|j| {
            if j == 0 {
                ColumnRole::PuncturedInformation
            } else {
                ColumnRole::Parity
            }
        })
        .collect()
}

/// Split-extended accumulate-repeat-jagged-accumulate protograph. Column 0 is
/// punctured, columns 1..=4 are sent by the source and 5..=8 by the relay.
pub fn arja_split_extended_base() -> BaseMatrix {
    BaseMatrix::from_rows(&[
        [0, 0, 0, 1, 0, 0, 1, 0, 0],
        [0, 1, 0, 0, 1, 1, 1, 0, 0],
        [1, 1, 0, 1, 0, 1, 0, 0, 0],
        [1, 1, 0, 0, 0, 0, 0, 1, 0],
        [1, 0, 0, 1, 0, 0, 0, 1, 1],
        [1, 0, 0, 0, 1, 0, 0, 0, 1],
        [2, 0, 1, 0, 0, 0, 0, 0, 0],
    ])
}

/// Columns of [`arja_split_extended_base`] sent by the source (including the
/// punctured column 0).
pub const ARJA_SENDER_COLS: std::ops::Range<usize> = 0..5;
/// Columns of [`arja_split_extended_base`] sent by the relay.
pub const ARJA_RELAY_COLS: std::ops::Range<usize> = 5..9;

pub fn arja_roles() -> Vec<ColumnRole> {
    let mut roles = vec![ColumnRole::Parity; 9];
    roles[0] = ColumnRole::PuncturedInformation;
    roles
}
