//! Reference computations shared by the integration tests. Each one is
//! written directly from its definition, independent of the library code.

#![allow(dead_code)]

use sc_relay::base_matrix::{BaseMatrix, SparseBinary};

/// Scalar BEC recursion for the (l,r)-regular ensemble, one value per
/// iteration starting from x = eps.
pub fn scalar_regular(l: u32, r: u32, eps: f64, iterations: usize) -> Vec<f64> {
    let mut out = vec![eps];
    let mut x = eps;
    for _ in 0..iterations {
        x = eps * (1.0 - (1.0 - x).powi(r as i32 - 1)).powi(l as i32 - 1);
        out.push(x);
    }
    out
}

/// Check neighborhoods as bitmasks over at most 32 variables.
pub fn check_masks(h: &SparseBinary) -> Vec<u32> {
    assert!(h.num_cols() <= 32);
    h.rows()
        .map(|row| row.iter().fold(0u32, |m, &v| m | 1 << v))
        .collect()
}

/// A set is a stopping set when no check sees exactly one of its members.
pub fn is_stopping_set(set: u32, checks: &[u32]) -> bool {
    checks.iter().all(|&c| (c & set).count_ones() != 1)
}

/// Largest stopping set inside every subset of `n` variables, by dynamic
/// programming over subsets: either the set is itself stopping, or its
/// largest stopping subset avoids some member.
pub fn max_stopping_sets(n: usize, checks: &[u32]) -> Vec<u32> {
    let size = 1usize << n;
    let mut best = vec![0u32; size];
    for set in 1..size as u32 {
        best[set as usize] = if is_stopping_set(set, checks) {
            set
        } else {
            let mut acc = 0;
            let mut rest = set;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                acc |= best[(set & !bit) as usize];
                rest &= !bit;
            }
            acc
        };
    }
    best
}

pub fn to_mask(erased: &[bool]) -> u32 {
    erased
        .iter()
        .enumerate()
        .fold(0, |m, (i, &e)| if e { m | 1 << i } else { m })
}

pub fn from_mask(mask: u32, n: usize) -> Vec<bool> {
    (0..n).map(|i| mask >> i & 1 == 1).collect()
}

/// Column sums of a base matrix.
pub fn col_sums(b: &BaseMatrix) -> Vec<u32> {
    (0..b.cols())
        .map(|j| (0..b.rows()).map(|i| b.get(i, j)).sum())
        .collect()
}

/// Row sums of a base matrix.
pub fn row_sums(b: &BaseMatrix) -> Vec<u32> {
    (0..b.rows())
        .map(|i| (0..b.cols()).map(|j| b.get(i, j)).sum())
        .collect()
}
