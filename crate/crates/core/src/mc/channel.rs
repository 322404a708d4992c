use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::base_matrix::LiftedCode;
use crate::relay::{eps_vector, ChannelLabel, ChannelParams};

#[derive(Debug, Clone, PartialEq)]
pub struct ErasurePattern {
    pub erased: Vec<bool>,
    pub params: ChannelParams,
    pub seed: u64,
}

impl ErasurePattern {
    pub fn count(&self) -> usize {
        self.erased.iter().filter(|&&e| e).count()
    }
}

/// Erases each lifted variable independently with the probability of its
/// base column's label; punctured variables are always erased.
pub fn sample_erasures(
    code: &LiftedCode,
    labels: &[ChannelLabel],
    params: &ChannelParams,
    seed: u64,
) -> ErasurePattern {
    assert_eq!(labels.len(), code.base_cols);
    let probs = eps_vector(labels, params);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut erased = vec![false; code.base_cols * code.lifting_factor];
    erase_blocks(&probs, code.lifting_factor, &mut rng, &mut erased);
    ErasurePattern {
        erased,
        params: *params,
        seed,
    }
}

/// Fills `out` block by block: base column `j` covers `j*q..(j+1)*q`.
pub(crate) fn erase_blocks(probs: &[f64], q: usize, rng: &mut impl Rng, out: &mut [bool]) {
    for (j, &p) in probs.iter().enumerate() {
        let block = &mut out[j * q..(j + 1) * q];
        if p >= 1.0 {
            block.fill(true);
        } else if p <= 0.0 {
            block.fill(false);
        } else {
            for e in block {
                *e = rng.gen::<f64>() < p;
            }
        }
    }
}
