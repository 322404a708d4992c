use num_rational::Ratio;

use super::{check_mn, regular_k};
use crate::error::{invalid, Result};

/// Exact design rate.
pub type Rate = Ratio<i64>;

/// Number of coupled copies `L`; `Infinite` gives the limiting rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CouplingNumber {
    Finite(u32),
    Infinite,
}

impl CouplingNumber {
    fn checked(self) -> Result<Option<i64>> {
        match self {
            CouplingNumber::Finite(0) => invalid("coupling number L must be at least 1"),
            CouplingNumber::Finite(l) => Ok(Some(i64::from(l))),
            CouplingNumber::Infinite => Ok(None),
        }
    }
}

impl From<u32> for CouplingNumber {
    fn from(l: u32) -> Self {
        CouplingNumber::Finite(l)
    }
}

impl From<Option<u32>> for CouplingNumber {
    fn from(l: Option<u32>) -> Self {
        l.map_or(CouplingNumber::Infinite, CouplingNumber::Finite)
    }
}

/// `1 - (L + l - 1) / (L k)` for the coupled `(l, r, L)`-regular ensemble.
pub fn design_rate_regular(l: u32, r: u32, coupling: impl Into<CouplingNumber>) -> Result<Rate> {
    let k = i64::from(regular_k(l, r)?);
    let l = i64::from(l);
    Ok(match coupling.into().checked()? {
        Some(cl) => Rate::from_integer(1) - Rate::new(cl + l - 1, cl * k),
        None => Rate::from_integer(1) - Rate::new(1, k),
    })
}

/// `R - (1 - R) / L` with `R = 1/g` for the coupled `(l, r, g, L)`-MN ensemble.
pub fn design_rate_mn(l: u32, r: u32, g: u32, coupling: impl Into<CouplingNumber>) -> Result<Rate> {
    check_mn(l, r, g)?;
    let base = Rate::new(1, i64::from(g));
    Ok(match coupling.into().checked()? {
        Some(cl) => base - (Rate::from_integer(1) - base) / cl,
        None => base,
    })
}

pub fn rate_to_f64(rate: Rate) -> f64 {
    *rate.numer() as f64 / *rate.denom() as f64
}
