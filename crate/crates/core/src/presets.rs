//! Named code pairs: `reg-3-6`, `reg-5-10`, `mn-4-2-2` and `arja-se`.

use std::fmt;
use std::str::FromStr;

use crate::base_matrix::{mn_base, mn_roles, rate::rate_to_f64, regular_base, regular_roles, Rate};
use crate::coupling::{couple, mn_spreading, regular_spreading, CoupledCode, Family};
use crate::error::{invalid, Error, Result};
use crate::relay::{arja_joint, build_joint, JointRelayGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    Regular3x6,
    Regular5x10,
    MacKayNeal4x2x2,
    SplitExtendedArja,
}

impl Preset {
    pub const ALL: [Preset; 4] = [
        Preset::Regular3x6,
        Preset::Regular5x10,
        Preset::MacKayNeal4x2x2,
        Preset::SplitExtendedArja,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Regular3x6 => "reg-3-6",
            Preset::Regular5x10 => "reg-5-10",
            Preset::MacKayNeal4x2x2 => "mn-4-2-2",
            Preset::SplitExtendedArja => "arja-se",
        }
    }

    pub fn names() -> String {
        Self::ALL.map(Preset::name).join(", ")
    }

    /// The code used at both the source and the relay. `None` is the
    /// uncoupled protograph.
    pub fn code(self, coupling: Option<u32>) -> Result<CoupledCode> {
        match (self, coupling) {
            (Preset::Regular3x6, None) => uncoupled_regular(3, 6),
            (Preset::Regular5x10, None) => uncoupled_regular(5, 10),
            (Preset::Regular3x6, Some(cl)) => couple(&regular_spreading(3, 6)?, cl),
            (Preset::Regular5x10, Some(cl)) => couple(&regular_spreading(5, 10)?, cl),
            (Preset::MacKayNeal4x2x2, None) => CoupledCode::uncoupled(
                mn_base(4, 2, 2)?,
                mn_roles(2),
                Family::MacKayNeal { l: 4, r: 2, g: 2 },
            ),
            (Preset::MacKayNeal4x2x2, Some(cl)) => couple(&mn_spreading(4, 2, 2)?, cl),
            (Preset::SplitExtendedArja, _) => {
                invalid("arja-se is a joint protograph; it has no separate source code")
            }
        }
    }

    /// The destination's joint protograph.
    pub fn joint(self, coupling: Option<u32>) -> Result<JointRelayGraph> {
        match (self, coupling) {
            (Preset::SplitExtendedArja, None) => Ok(arja_joint()),
            (Preset::SplitExtendedArja, Some(_)) => {
                invalid("arja-se has no coupled variant; drop --L")
            }
            (p, cl) => {
                let code = p.code(cl)?;
                build_joint(&code, &code)
            }
        }
    }

    pub fn design_rate(self, coupling: Option<u32>) -> Result<Rate> {
        match self {
            Preset::SplitExtendedArja => Ok(Rate::new(1, 2)),
            p => p
                .code(coupling)?
                .design_rate()
                .ok_or_else(|| Error::InvalidParameter("no closed-form rate".into())),
        }
    }

    pub fn design_rate_f64(self, coupling: Option<u32>) -> Result<f64> {
        self.design_rate(coupling).map(rate_to_f64)
    }
}

fn uncoupled_regular(l: u32, r: u32) -> Result<CoupledCode> {
    let base = regular_base(l, r)?;
    let k = base.cols();
    CoupledCode::uncoupled(base, regular_roles(k), Family::Regular { l, r })
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "unknown preset '{s}' (expected one of: {})",
                    Preset::names()
                ))
            })
    }
}
