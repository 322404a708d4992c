use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::channel::erase_blocks;
use super::peel::Peeler;
use crate::base_matrix::{lift, SparseBinary};
use crate::error::{invalid, Result};
use crate::exec::{map_range, Execution};
use crate::relay::{eps_vector, ChannelLabel, ChannelParams, JointRelayGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialResult {
    pub relay_decoded: bool,
    pub dest_decoded: bool,
    /// Source-codeword variables still erased at the destination. A relay
    /// failure counts every source variable as unresolved.
    pub residual_erasures: usize,
    pub peeling_rounds: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineStats {
    pub params: ChannelParams,
    pub lifting_factor: usize,
    pub seed: u64,
    pub trials: u64,
    pub relay_fail: u64,
    pub dest_fail: u64,
    pub total_residual: u64,
}

impl PipelineStats {
    pub fn avg_residual(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.total_residual as f64 / self.trials as f64
        }
    }

    pub fn dest_fail_rate(&self) -> Option<f64> {
        (self.trials > 0).then(|| self.dest_fail as f64 / self.trials as f64)
    }

    pub fn relay_fail_rate(&self) -> Option<f64> {
        (self.trials > 0).then(|| self.relay_fail as f64 / self.trials as f64)
    }

    pub fn dest_fail_ci(&self) -> Option<(f64, f64)> {
        wilson_interval(self.dest_fail, self.trials, 1.959_963_984_540_054)
    }

    pub fn relay_fail_ci(&self) -> Option<(f64, f64)> {
        wilson_interval(self.relay_fail, self.trials, 1.959_963_984_540_054)
    }
}

/// Wilson score interval for `k` successes out of `n` at normal quantile `z`.
pub fn wilson_interval(k: u64, n: u64, z: f64) -> Option<(f64, f64)> {
    if n == 0 {
        return None;
    }
    let (kf, nf) = (k as f64, n as f64);
    let p = kf / nf;
    let z2 = z * z;
    let center = (p + z2 / (2.0 * nf)) / (1.0 + z2 / nf);
    let half = z * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt() / (1.0 + z2 / nf);
    let lo = if k == 0 {
        0.0
    } else {
        (center - half).max(0.0)
    };
    let hi = if k == n {
        1.0
    } else {
        (center + half).min(1.0)
    };
    Some((lo, hi))
}

/// Decode-and-forward over lifted codes. The joint protograph is lifted once
/// with `seed`; the relay decodes with the source's block of that lift and
/// the destination with the whole lift. Trial `t` draws its erasures from
/// stream `t + 1` of a ChaCha generator seeded with `seed`.
pub fn run_pipeline(
    joint: &JointRelayGraph,
    params: &ChannelParams,
    q: usize,
    trials: u64,
    seed: u64,
    exec: Execution,
) -> Result<PipelineStats> {
    params.validate()?;
    let Some(sender_rows) = joint.sender_rows.clone() else {
        return invalid("this joint graph has no standalone source code to decode at the relay");
    };
    let lifted = lift(&joint.base, &joint.roles, q, seed)?;
    let h = &lifted.parity_check;
    let sender_vars = joint.sender_cols.start * q..joint.sender_cols.end * q;
    let sender_h: SparseBinary = h.submatrix(
        sender_rows.start * q..sender_rows.end * q,
        sender_vars.clone(),
    );

    let relay_peeler = Peeler::new(&sender_h);
    let dest_peeler = Peeler::new(h);
    // At the relay every transmitted source column sees eps_sr.
    let sr_probs: Vec<f64> = joint.labels[joint.sender_cols.clone()]
        .iter()
        .map(|l| match l {
            ChannelLabel::Punctured => 1.0,
            _ => params.eps_sr,
        })
        .collect();
    let d_probs = eps_vector(&joint.labels, params);

    let results = map_range(exec, trials, |t| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(t + 1);
        let mut at_relay = vec![false; sender_vars.len()];
        erase_blocks(&sr_probs, q, &mut rng, &mut at_relay);
        let relay = relay_peeler.peel(&at_relay);
        if relay.remaining() > 0 {
            return TrialResult {
                relay_decoded: false,
                dest_decoded: false,
                residual_erasures: sender_vars.len(),
                peeling_rounds: relay.rounds,
            };
        }
        let mut at_dest = vec![false; h.num_cols()];
        erase_blocks(&d_probs, q, &mut rng, &mut at_dest);
        let dest = dest_peeler.peel(&at_dest);
        let residual = dest.erased[sender_vars.clone()]
            .iter()
            .filter(|&&e| e)
            .count();
        TrialResult {
            relay_decoded: true,
            dest_decoded: residual == 0,
            residual_erasures: residual,
            peeling_rounds: dest.rounds,
        }
    });

    Ok(PipelineStats {
        params: *params,
        lifting_factor: q,
        seed,
        trials,
        relay_fail: results.iter().filter(|r| !r.relay_decoded).count() as u64,
        dest_fail: results.iter().filter(|r| !r.dest_decoded).count() as u64,
        total_residual: results.iter().map(|r| r.residual_erasures as u64).sum(),
    })
}
