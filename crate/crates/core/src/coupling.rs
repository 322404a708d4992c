//! Spreading base-matrices and the band-structured coupled base matrix.
//!
//! Copy `t` of the protograph occupies block column `t`; block `(t + i, t)`
//! holds spreading matrix `B_i`, so a coupled code with `L` copies and
//! spreading depth `d` has `m_p (L + d)` rows and `n_p L` columns.

use serde::{Deserialize, Serialize};

use crate::base_matrix::{
    check_mn, design_rate_mn, design_rate_regular, mn_base, mn_roles, regular_k, regular_roles,
    BaseMatrix, ColumnRole, Rate,
};
use crate::error::{invalid, Error, Result};

/// Which construction a code came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    Regular { l: u32, r: u32 },
    MacKayNeal { l: u32, r: u32, g: u32 },
    SplitExtendedArja,
    Custom,
}

/// `B_0, ..., B_d` summing to the underlying protograph.
#[derive(Debug, Clone, PartialEq)]
pub struct SpreadingSet {
    matrices: Vec<BaseMatrix>,
    roles: Vec<ColumnRole>,
    family: Family,
}

impl SpreadingSet {
    /// A custom spreading set. All matrices must share one shape and `roles`
    /// must have one entry per column.
    pub fn new(matrices: Vec<BaseMatrix>, roles: Vec<ColumnRole>) -> Result<Self> {
        Self::with_family(matrices, roles, Family::Custom)
    }

    fn with_family(
        matrices: Vec<BaseMatrix>,
        roles: Vec<ColumnRole>,
        family: Family,
    ) -> Result<Self> {
        let Some(first) = matrices.first() else {
            return invalid("spreading set is empty");
        };
        let shape = (first.rows(), first.cols());
        if matrices.iter().any(|m| (m.rows(), m.cols()) != shape) {
            return invalid("spreading matrices differ in shape");
        }
        if roles.len() != shape.1 {
            return invalid(format!("{} roles for {} columns", roles.len(), shape.1));
        }
        Ok(SpreadingSet {
            matrices,
            roles,
            family,
        })
    }

    pub fn matrices(&self) -> &[BaseMatrix] {
        &self.matrices
    }

    pub fn depth(&self) -> usize {
        self.matrices.len() - 1
    }

    pub fn roles(&self) -> &[ColumnRole] {
        &self.roles
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Entrywise sum, i.e. the underlying protograph.
    pub fn underlying(&self) -> BaseMatrix {
        self.matrices[1..]
            .iter()
            .fold(self.matrices[0].clone(), |acc, m| acc.add(m))
    }
}

/// `l` copies of the all-ones `1 x k` row.
pub fn regular_spreading(l: u32, r: u32) -> Result<SpreadingSet> {
    let k = regular_k(l, r)? as usize;
    let ones = BaseMatrix::from_rows(&[vec![1; k]]);
    SpreadingSet::with_family(
        vec![ones; l as usize],
        regular_roles(k),
        Family::Regular { l, r },
    )
}

/// `B_i` for `1 <= i <= g-1` carries `b_i = [r-1, 0_{g-i}, 1_i]` in row
/// `i-1`; `B_0` is the remainder of the MN template.
pub fn mn_spreading(l: u32, r: u32, g: u32) -> Result<SpreadingSet> {
    check_mn(l, r, g)?;
    let template = mn_base(l, r, g)?;
    let gu = g as usize;
    let mut tail = Vec::with_capacity(gu.saturating_sub(1));
    for i in 1..gu {
        let mut bi = BaseMatrix::zeros(gu, gu + 1);
        bi.set(i - 1, 0, r - 1);
        for j in (gu + 1 - i)..=gu {
            bi.set(i - 1, j, 1);
        }
        tail.push(bi);
    }
    let mut b0 = template.clone();
    for bi in &tail {
        b0 = b0.checked_sub(bi)?;
    }
    let mut matrices = vec![b0];
    matrices.extend(tail);
    let set = SpreadingSet::with_family(matrices, mn_roles(gu), Family::MacKayNeal { l, r, g })?;
    debug_assert_eq!(set.underlying(), template);
    Ok(set)
}

/// A coupled (or, with `L = 1, d = 0`, plain) protograph with per-column
/// roles.
#[derive(Debug, Clone, PartialEq)]
pub struct CoupledCode {
    pub base: BaseMatrix,
    pub coupling: u32,
    pub column_roles: Vec<ColumnRole>,
    pub family: Family,
}

impl CoupledCode {
    /// Wraps an uncoupled protograph.
    pub fn uncoupled(
        base: BaseMatrix,
        column_roles: Vec<ColumnRole>,
        family: Family,
    ) -> Result<Self> {
        if column_roles.len() != base.cols() {
            return invalid(format!(
                "{} roles for {} columns",
                column_roles.len(),
                base.cols()
            ));
        }
        Ok(CoupledCode {
            base,
            coupling: 1,
            column_roles,
            family,
        })
    }

    /// Information (including punctured information) columns in copy order.
    pub fn information_columns(&self) -> Vec<usize> {
        self.column_roles
            .iter()
            .enumerate()
            .filter(|(_, r)| r.is_information())
            .map(|(j, _)| j)
            .collect()
    }

    /// Design rate of the family at this coupling number, when the family
    /// has a closed form.
    pub fn design_rate(&self) -> Option<Rate> {
        let coupled = self.coupling > 1 || self.base.rows() > self.uncoupled_rows();
        let cl = if coupled { Some(self.coupling) } else { None };
        match self.family {
            Family::Regular { l, r } => design_rate_regular(l, r, cl).ok(),
            Family::MacKayNeal { l, r, g } => design_rate_mn(l, r, g, cl).ok(),
            Family::SplitExtendedArja => Some(Rate::new(1, 2)),
            Family::Custom => None,
        }
    }

    fn uncoupled_rows(&self) -> usize {
        match self.family {
            Family::Regular { .. } => 1,
            Family::MacKayNeal { g, .. } => g as usize,
            _ => self.base.rows(),
        }
    }
}

/// Chains `L` copies of the protograph through the spreading set.
pub fn couple(spreading: &SpreadingSet, coupling: u32) -> Result<CoupledCode> {
    if coupling == 0 {
        return invalid("coupling number L must be at least 1");
    }
    let cl = coupling as usize;
    let d = spreading.depth();
    let (mp, np) = (spreading.matrices[0].rows(), spreading.matrices[0].cols());
    let mut base = BaseMatrix::zeros(mp * (cl + d), np * cl);
    for t in 0..cl {
        for (i, bi) in spreading.matrices.iter().enumerate() {
            base.place((t + i) * mp, t * np, bi);
        }
    }
    let column_roles = (0..cl)
        .flat_map(|_| spreading.roles.iter().copied())
        .collect();
    Ok(CoupledCode {
        base,
        coupling,
        column_roles,
        family: spreading.family,
    })
}

/// Checks that the sum of the spreading set matches `expected`.
pub fn verify_spreading(spreading: &SpreadingSet, expected: &BaseMatrix) -> Result<()> {
    if &spreading.underlying() != expected {
        return Err(Error::InvalidParameter(
            "spreading matrices do not sum to the base matrix".into(),
        ));
    }
    Ok(())
}
