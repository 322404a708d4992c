use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{BaseMatrix, ColumnRole};
use crate::error::{invalid, Result};

/// Binary matrix stored as sorted per-row column lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseBinary {
    cols: usize,
    rows: Vec<Vec<u32>>,
}

impl SparseBinary {
    pub fn from_rows(cols: usize, mut rows: Vec<Vec<u32>>) -> Self {
        for r in &mut rows {
            r.sort_unstable();
            debug_assert!(r.windows(2).all(|w| w[0] != w[1]), "duplicate entry");
            debug_assert!(r.iter().all(|&c| (c as usize) < cols));
        }
        SparseBinary { cols, rows }
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.rows[i]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.rows.iter().map(Vec::as_slice)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.rows[i].binary_search(&(j as u32)).is_ok()
    }

    pub fn col_weights(&self) -> Vec<u32> {
        let mut w = vec![0; self.cols];
        for r in &self.rows {
            for &c in r {
                w[c as usize] += 1;
            }
        }
        w
    }

    /// Column adjacency lists (check indices per variable).
    pub fn transpose_lists(&self) -> Vec<Vec<u32>> {
        let mut cols = vec![Vec::new(); self.cols];
        for (i, r) in self.rows.iter().enumerate() {
            for &c in r {
                cols[c as usize].push(i as u32);
            }
        }
        cols
    }

    /// Rows `rows` restricted to columns `cols`, reindexed from zero.
    pub fn submatrix(
        &self,
        rows: std::ops::Range<usize>,
        cols: std::ops::Range<usize>,
    ) -> SparseBinary {
        let picked = self.rows[rows]
            .iter()
            .map(|r| {
                r.iter()
                    .filter(|&&c| cols.contains(&(c as usize)))
                    .map(|&c| c - cols.start as u32)
                    .collect()
            })
            .collect();
        SparseBinary::from_rows(cols.len(), picked)
    }
}

/// A protograph lifted by a factor `q`. Base column `j` becomes variables
/// `j*q .. (j+1)*q`, base row `i` becomes checks `i*q .. (i+1)*q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedCode {
    pub lifting_factor: usize,
    pub base_rows: usize,
    pub base_cols: usize,
    pub parity_check: SparseBinary,
    pub column_roles: Vec<ColumnRole>,
}

impl LiftedCode {
    pub fn base_col_of(&self, var: usize) -> usize {
        var / self.lifting_factor
    }

    /// Header `q m n`, then one `row col` line per nonzero in row-major order.
    pub fn to_alist(&self) -> String {
        let h = &self.parity_check;
        let mut out = String::with_capacity(16 + h.nnz() * 12);
        let _ = writeln!(
            out,
            "{} {} {}",
            self.lifting_factor,
            h.num_rows(),
            h.num_cols()
        );
        for (i, r) in h.rows().enumerate() {
            for c in r {
                let _ = writeln!(out, "{i} {c}");
            }
        }
        out
    }
}

const REJECTION_ATTEMPTS: usize = 64;

/// Replaces every entry `B(i,j)` with the sum of `B(i,j)` random `q x q`
/// permutation matrices with pairwise disjoint supports.
pub fn lift(
    base: &BaseMatrix,
    column_roles: &[ColumnRole],
    q: usize,
    seed: u64,
) -> Result<LiftedCode> {
    if q == 0 {
        return invalid("lifting factor must be positive");
    }
    if (base.max_entry() as usize) > q {
        return invalid(format!(
            "lifting factor q={q} is smaller than the largest base entry {}",
            base.max_entry()
        ));
    }
    if column_roles.len() != base.cols() {
        return invalid(format!(
            "{} column roles for {} base columns",
            column_roles.len(),
            base.cols()
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); base.rows() * q];
    for i in 0..base.rows() {
        for j in 0..base.cols() {
            let mult = base.get(i, j) as usize;
            if mult == 0 {
                continue;
            }
            let mut used: Vec<Vec<u32>> = vec![Vec::with_capacity(mult); q];
            for _ in 0..mult {
                let perm = disjoint_permutation(&used, q, &mut rng);
                for (r, &c) in perm.iter().enumerate() {
                    used[r].push(c);
                }
            }
            for (r, cs) in used.into_iter().enumerate() {
                rows[i * q + r].extend(cs.into_iter().map(|c| (j * q) as u32 + c));
            }
        }
    }
    Ok(LiftedCode {
        lifting_factor: q,
        base_rows: base.rows(),
        base_cols: base.cols(),
        parity_check: SparseBinary::from_rows(base.cols() * q, rows),
        column_roles: column_roles.to_vec(),
    })
}

/// Uniform permutation avoiding the positions in `used`; after a bounded
/// number of rejections, falls back to a randomized augmenting-path matching
/// on the complement, which always exists since it is a regular bipartite
/// graph.
fn disjoint_permutation(used: &[Vec<u32>], q: usize, rng: &mut ChaCha8Rng) -> Vec<u32> {
    let mut perm: Vec<u32> = (0..q as u32).collect();
    for _ in 0..REJECTION_ATTEMPTS {
        perm.shuffle(rng);
        if perm.iter().enumerate().all(|(r, c)| !used[r].contains(c)) {
            return perm;
        }
    }
    random_matching(used, q, rng)
}

fn random_matching(used: &[Vec<u32>], q: usize, rng: &mut ChaCha8Rng) -> Vec<u32> {
    const NONE: usize = usize::MAX;
    let mut col_owner = vec![NONE; q];
    let mut row_col = vec![NONE; q];
    let mut order: Vec<usize> = (0..q).collect();
    order.shuffle(rng);
    let candidates: Vec<Vec<u32>> = (0..q)
        .map(|r| {
            let mut c: Vec<u32> = (0..q as u32).filter(|c| !used[r].contains(c)).collect();
            c.shuffle(rng);
            c
        })
        .collect();
    // Kuhn's augmenting paths, visiting candidates in random order.
    fn augment(
        r: usize,
        candidates: &[Vec<u32>],
        seen: &mut [bool],
        col_owner: &mut [usize],
        row_col: &mut [usize],
    ) -> bool {
        for &c in &candidates[r] {
            let c = c as usize;
            if seen[c] {
                continue;
            }
            seen[c] = true;
            if col_owner[c] == usize::MAX
                || augment(col_owner[c], candidates, seen, col_owner, row_col)
            {
                col_owner[c] = r;
                row_col[r] = c;
                return true;
            }
        }
        false
    }
    let mut seen = vec![false; q];
    for &r in &order {
        seen.iter_mut().for_each(|s| *s = false);
        let ok = augment(r, &candidates, &mut seen, &mut col_owner, &mut row_col);
        assert!(
            ok,
            "complement of a regular bipartite graph has a perfect matching"
        );
    }
    row_col.into_iter().map(|c| c as u32).collect()
}
