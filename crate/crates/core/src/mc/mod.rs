//! Finite-length checks of the density-evolution predictions: lift the
//! protographs, push the all-zero codeword through erasure channels and
//! decode with a peeling decoder.

mod channel;
mod peel;
mod pipeline;

pub use channel::{sample_erasures, ErasurePattern};
pub use peel::{peel, PeelResult, Peeler};
pub use pipeline::{run_pipeline, wilson_interval, PipelineStats, TrialResult};
