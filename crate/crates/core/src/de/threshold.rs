use super::{run_de, DeConfig, DeGraph, DeOutcome};
use crate::error::{Error, Result};
use crate::relay::{ChannelParams, JointRelayGraph};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdResult {
    /// Largest probed value found achievable (the lower bracket end).
    pub threshold: f64,
    pub bracket: (f64, f64),
    pub de_runs: u32,
    /// DE iterations needed at `threshold`.
    pub converged_iterations: u64,
}

/// Bisects a monotone achievability predicate. `lo` must be achievable and
/// `hi` not; the bracket is halved until `hi - lo <= tol`.
pub fn bisect_threshold(
    mut probe: impl FnMut(f64) -> DeOutcome,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<ThresholdResult> {
    if !(lo < hi) || tol <= 0.0 {
        return Err(Error::Bracket(format!(
            "empty bracket [{lo}, {hi}] or tol {tol}"
        )));
    }
    let at_lo = probe(lo);
    if !at_lo.achievable {
        return Err(Error::Bracket(format!("lower end {lo} is not achievable")));
    }
    if probe(hi).achievable {
        return Err(Error::Bracket(format!("upper end {hi} is achievable")));
    }
    let (mut lo, mut hi) = (lo, hi);
    let mut runs = 2;
    let mut iters = at_lo.iterations;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let out = probe(mid);
        runs += 1;
        if out.achievable {
            lo = mid;
            iters = out.iterations;
        } else {
            hi = mid;
        }
    }
    Ok(ThresholdResult {
        threshold: lo,
        bracket: (lo, hi),
        de_runs: runs,
        converged_iterations: iters,
    })
}

/// The channel parameter left free by a threshold search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreeParam {
    /// Search `eps_sd` with `eps_rd` fixed.
    Sd,
    /// Search `eps_rd` with `eps_sd` fixed.
    Rd,
}

/// Threshold of one link with the other link's erasure probability fixed,
/// bracketed by `[0, 1]`.
pub fn corner_threshold(
    graph: &JointRelayGraph,
    free: FreeParam,
    fixed: f64,
    config: &DeConfig,
    tol: f64,
) -> Result<ThresholdResult> {
    config.validate()?;
    let de = DeGraph::from_joint(graph);
    let params = |v: f64| match free {
        FreeParam::Sd => ChannelParams {
            eps_sd: v,
            eps_rd: fixed,
            eps_sr: 0.0,
        },
        FreeParam::Rd => ChannelParams {
            eps_sd: fixed,
            eps_rd: v,
            eps_sr: 0.0,
        },
    };
    params(fixed).validate()?;
    bisect_threshold(
        |v| run_de(&de, &graph.eps_vector(&params(v)), config),
        0.0,
        1.0,
        tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_matrix::BaseMatrix;

    #[test]
    fn bisects_uncoupled_3_6() {
        let g = DeGraph::new(&BaseMatrix::from_rows(&[[3, 3]]));
        let cfg = DeConfig::default();
        let r = bisect_threshold(|e| run_de(&g, &[e, e], &cfg), 0.0, 1.0, 1e-6).unwrap();
        assert!((r.threshold - 0.4294).abs() < 1e-4, "{r:?}");
        assert!(r.bracket.1 - r.bracket.0 <= 1e-6);
        assert!(r.de_runs >= 20);
    }

    #[test]
    fn bracket_errors() {
        let g = DeGraph::new(&BaseMatrix::from_rows(&[[3, 3]]));
        let cfg = DeConfig::default();
        let probe = |e: f64| run_de(&g, &[e, e], &cfg);
        assert!(matches!(
            bisect_threshold(probe, 0.45, 1.0, 1e-6),
            Err(Error::Bracket(_))
        ));
        assert!(matches!(
            bisect_threshold(probe, 0.0, 0.4, 1e-6),
            Err(Error::Bracket(_))
        ));
    }
}
