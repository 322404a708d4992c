//! Achievable rate of the interference-free erasure relay channel and the
//! gap between computed regions and that limit.

use crate::de::RegionResult;
use crate::relay::ChannelParams;

/// `beta = 1` while the relay can decode (`R < 1 - eps_sr`), else `eps_sr`.
pub fn beta(rate: f64, eps_sr: f64) -> f64 {
    if rate < 1.0 - eps_sr {
        1.0
    } else {
        eps_sr
    }
}

/// Largest rate `R` with `R <= min{1 - eps_sd eps_sr, (1 - eps_sd) + beta (1 - eps_rd)}`.
///
/// `beta` depends on `R` itself; this returns the larger of the two
/// self-consistent solutions (decode-and-forward with `beta = 1` whenever
/// the resulting rate stays below `1 - eps_sr`).
pub fn max_rate(params: &ChannelParams) -> f64 {
    let broadcast = 1.0 - params.eps_sd * params.eps_sr;
    let bound = |b: f64| broadcast.min((1.0 - params.eps_sd) + b * (1.0 - params.eps_rd));
    let df = bound(1.0);
    if df < 1.0 - params.eps_sr {
        df
    } else {
        // beta = 1 is consistent for every R below 1 - eps_sr.
        let below = (1.0 - params.eps_sr).min(df);
        below.max(bound(params.eps_sr))
    }
}

/// Largest `eps_sd` with `R <= (1 - eps_sd) + (1 - eps_rd)`, capped at 1.
pub fn limit_boundary(rate: f64, eps_rd: f64) -> f64 {
    (2.0 - rate - eps_rd).min(1.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionGap {
    /// `(eps_rd, limit - eps_sd_max)` for points where the limit is below 1.
    pub points: Vec<(f64, f64)>,
    pub max: f64,
}

/// Distance from the region boundary to the limit line for `rate`, over the
/// slope part of the limit.
pub fn region_gap(region: &RegionResult, rate: f64) -> RegionGap {
    let points: Vec<(f64, f64)> = region
        .points
        .iter()
        .filter_map(|p| {
            let limit = limit_boundary(rate, p.eps_rd);
            (limit < 1.0).then_some((p.eps_rd, limit - p.eps_sd_max))
        })
        .collect();
    let max = points.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    RegionGap { points, max }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::de::{DeConfig, RegionPoint};

    fn p(sd: f64, rd: f64, sr: f64) -> ChannelParams {
        ChannelParams::new(sd, rd, sr).unwrap()
    }

    #[test]
    fn rate_examples() {
        assert_eq!(max_rate(&p(0.5, 0.5, 0.0)), 1.0);
        assert_eq!(max_rate(&p(1.0, 1.0, 0.4)), 0.0);
        assert!((max_rate(&p(0.6, 0.7, 0.3)) - 0.7).abs() < 1e-15);
    }

    #[test]
    fn dead_relay_link() {
        // eps_rd = 1 leaves the direct link: 1 - eps_sd when that is binding.
        for sd in [0.1, 0.3, 0.7] {
            assert!((max_rate(&p(sd, 1.0, 0.2)) - (1.0 - sd)).abs() < 1e-15);
        }
    }

    #[test]
    fn boundary_examples() {
        assert_eq!(limit_boundary(0.5, 1.0), 0.5);
        assert_eq!(limit_boundary(0.5, 0.5), 1.0);
        assert_eq!(limit_boundary(0.4921875, 1.0), 0.5078125);
    }

    #[test]
    fn boundary_monotone() {
        let mut prev = f64::INFINITY;
        for k in 0..=100 {
            let v = limit_boundary(0.5, k as f64 / 100.0);
            assert!(v <= prev);
            prev = v;
        }
        assert!(limit_boundary(0.6, 0.8) <= limit_boundary(0.5, 0.8));
    }

    #[test]
    fn gap_on_limit_is_zero() {
        let rate = 0.5;
        let points = (50..=100)
            .map(|k| {
                let eps_rd = k as f64 / 100.0;
                RegionPoint {
                    eps_rd,
                    eps_sd_max: limit_boundary(rate, eps_rd),
                    iters: 0,
                    de_runs: 0,
                }
            })
            .collect();
        let region = RegionResult {
            points,
            config: DeConfig::default(),
            bisect_tol: 1e-6,
        };
        let gap = region_gap(&region, rate);
        assert_eq!(gap.points.len(), 50);
        assert!(gap.points.iter().all(|g| g.1 == 0.0));
        assert_eq!(gap.max, 0.0);
    }
}
