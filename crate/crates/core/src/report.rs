//! CSV writers. Floats use nine significant digits, comment lines start
//! with `#` so the files load directly in gnuplot.

use std::fmt::Write as _;

use crate::capacity::limit_boundary;
use crate::de::{RegionResult, ThresholdResult};
use crate::error::{invalid, Result};
use crate::mc::PipelineStats;

/// `printf("%.*g")`-style formatting.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    let sig = sig.max(1);
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= sig as i32 {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn g9(x: f64) -> String {
    fmt_sig(x, 9)
}

pub const REGION_HEADER: &str = "eps_rd,eps_sd_max,iters,de_runs";
pub const LIMIT_HEADER: &str = "eps_rd,eps_sd_limit";
pub const SIM_HEADER: &str = "eps_sd,eps_rd,eps_sr,trials,relay_fail,dest_fail,avg_residual";

pub fn region_csv(region: &RegionResult, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(
        out,
        "# success_tol={} stall_tol={} max_iter={} bisect_tol={}",
        g9(region.config.success_tol),
        g9(region.config.stall_tol),
        region.config.max_iter,
        g9(region.bisect_tol)
    );
    let _ = writeln!(out, "{REGION_HEADER}");
    for p in &region.points {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            g9(p.eps_rd),
            g9(p.eps_sd_max),
            p.iters,
            p.de_runs
        );
    }
    out
}

/// A threshold as one boundary point: `eps_rd` is the fixed (or found)
/// R->D probability, `eps_sd_max` the matching S->D probability.
pub fn threshold_csv(eps_rd: f64, eps_sd_max: f64, result: &ThresholdResult) -> String {
    format!(
        "{REGION_HEADER}\n{},{},{},{}\n",
        g9(eps_rd),
        g9(eps_sd_max),
        result.converged_iterations,
        result.de_runs
    )
}

pub fn limit_csv(rate: f64, grid: &[f64]) -> String {
    let mut out = format!("# rate={}\n{LIMIT_HEADER}\n", g9(rate));
    for &e in grid {
        let _ = writeln!(out, "{},{}", g9(e), g9(limit_boundary(rate, e)));
    }
    out
}

pub fn simulation_csv(stats: &PipelineStats) -> String {
    let mut out = format!(
        "# seed={} q={}\n{SIM_HEADER}\n",
        stats.seed, stats.lifting_factor
    );
    if stats.trials > 0 {
        let p = &stats.params;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            g9(p.eps_sd),
            g9(p.eps_rd),
            g9(p.eps_sr),
            stats.trials,
            stats.relay_fail,
            stats.dest_fail,
            g9(stats.avg_residual())
        );
    }
    out
}

/// Parses `start:stop:step`; both ends are included within 1e-12.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [start, stop, step] = parts.as_slice() else {
        return invalid(format!("grid '{spec}' is not start:stop:step"));
    };
    let num = |s: &str| -> Result<f64> {
        s.trim()
            .parse::<f64>()
            .or_else(|_| invalid(format!("'{s}' in grid '{spec}' is not a number")))
    };
    let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
    if !(step > 0.0) {
        return invalid("grid step must be positive");
    }
    if !(0.0..=1.0).contains(&start) || !(0.0..=1.0).contains(&stop) || stop < start {
        return invalid(format!(
            "grid '{spec}' must satisfy 0 <= start <= stop <= 1"
        ));
    }
    let n = ((stop - start) / step + 1e-12).floor() as usize;
    Ok((0..=n)
        .map(|k| (start + k as f64 * step).min(1.0))
        .collect())
}
