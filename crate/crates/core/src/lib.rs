//! Spatially-coupled protograph LDPC and MacKay-Neal codes for
//! decode-and-forward over the three-terminal erasure relay channel.
//!
//! Build a code pair ([`presets`] or [`coupling`]), join it at the
//! destination ([`relay`]), then compute BP thresholds and achievable
//! erasure regions by density evolution ([`de`]) and compare them with the
//! relay-channel limit ([`capacity`]). [`mc`] checks the predictions on
//! lifted finite-length codes with a peeling decoder.

pub mod base_matrix;
pub mod capacity;
pub mod coupling;
pub mod de;
pub mod document;
pub mod error;
pub mod exec;
pub mod mc;
pub mod presets;
pub mod relay;
pub mod report;

pub use error::{Error, Result};
pub use exec::Execution;
