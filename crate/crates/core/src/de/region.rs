use super::{bisect_threshold, run_de, DeConfig, DeGraph};
use crate::error::Result;
use crate::exec::{map_ordered, Execution};
use crate::relay::{ChannelParams, JointRelayGraph};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionPoint {
    pub eps_rd: f64,
    pub eps_sd_max: f64,
    /// DE iterations at the reported point.
    pub iters: u64,
    pub de_runs: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionResult {
    pub points: Vec<RegionPoint>,
    pub config: DeConfig,
    pub bisect_tol: f64,
}

/// For each `eps_rd` in `grid`, the largest achievable `eps_sd`. Points are
/// returned in grid order whatever the execution mode.
pub fn sweep_region(
    graph: &JointRelayGraph,
    grid: &[f64],
    config: &DeConfig,
    bisect_tol: f64,
    exec: Execution,
) -> Result<RegionResult> {
    config.validate()?;
    for &eps_rd in grid {
        ChannelParams::new(0.0, eps_rd, 0.0)?;
    }
    let de = DeGraph::from_joint(graph);
    let points = map_ordered(exec, grid, |&eps_rd| {
        region_point(graph, &de, eps_rd, config, bisect_tol)
    });
    Ok(RegionResult {
        points,
        config: *config,
        bisect_tol,
    })
}

fn region_point(
    graph: &JointRelayGraph,
    de: &DeGraph,
    eps_rd: f64,
    config: &DeConfig,
    tol: f64,
) -> RegionPoint {
    let probe = |eps_sd: f64| {
        let eps = graph.eps_vector(&ChannelParams {
            eps_sd,
            eps_rd,
            eps_sr: 0.0,
        });
        run_de(de, &eps, config)
    };
    let top = probe(1.0);
    if top.achievable {
        return RegionPoint {
            eps_rd,
            eps_sd_max: 1.0,
            iters: top.iterations,
            de_runs: 1,
        };
    }
    match bisect_threshold(probe, 0.0, 1.0, tol) {
        Ok(t) => RegionPoint {
            eps_rd,
            eps_sd_max: t.threshold,
            iters: t.converged_iterations,
            de_runs: t.de_runs + 1,
        },
        // Not even a noiseless S->D link suffices.
        Err(_) => RegionPoint {
            eps_rd,
            eps_sd_max: 0.0,
            iters: 0,
            de_runs: 3,
        },
    }
}
