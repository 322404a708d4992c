use crate::base_matrix::SparseBinary;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelResult {
    /// Variables still erased when no check has a single erased neighbor.
    pub erased: Vec<bool>,
    /// Parallel rounds that recovered at least one variable.
    pub rounds: u32,
}

impl PeelResult {
    pub fn remaining(&self) -> usize {
        self.erased.iter().filter(|&&e| e).count()
    }
}

/// Peeling (BP) decoder for the erasure channel with the all-zero codeword:
/// a check with exactly one erased neighbor reveals it.
#[derive(Debug, Clone)]
pub struct Peeler<'a> {
    h: &'a SparseBinary,
    var_checks: Vec<Vec<u32>>,
}

impl<'a> Peeler<'a> {
    pub fn new(h: &'a SparseBinary) -> Self {
        Peeler {
            h,
            var_checks: h.transpose_lists(),
        }
    }

    fn erased_counts(&self, erased: &[bool]) -> Vec<u32> {
        self.h
            .rows()
            .map(|r| r.iter().filter(|&&v| erased[v as usize]).count() as u32)
            .collect()
    }

    fn erased_neighbor(&self, check: usize, erased: &[bool]) -> Option<u32> {
        self.h
            .row(check)
            .iter()
            .copied()
            .find(|&v| erased[v as usize])
    }

    /// Resolves, round by round, every check that has one erased neighbor at
    /// the start of the round.
    pub fn peel(&self, erased: &[bool]) -> PeelResult {
        assert_eq!(erased.len(), self.h.num_cols());
        let mut erased = erased.to_vec();
        let mut count = self.erased_counts(&erased);
        let mut frontier: Vec<u32> = (0..count.len() as u32)
            .filter(|&c| count[c as usize] == 1)
            .collect();
        let mut rounds = 0;
        let mut resolved = Vec::new();
        while !frontier.is_empty() {
            resolved.clear();
            resolved.extend(
                frontier
                    .iter()
                    .filter(|&&c| count[c as usize] == 1)
                    .filter_map(|&c| self.erased_neighbor(c as usize, &erased)),
            );
            frontier.clear();
            let mut progressed = false;
            for &v in &resolved {
                if !erased[v as usize] {
                    continue;
                }
                erased[v as usize] = false;
                progressed = true;
                for &c in &self.var_checks[v as usize] {
                    count[c as usize] -= 1;
                    if count[c as usize] == 1 {
                        frontier.push(c);
                    }
                }
            }
            if progressed {
                rounds += 1;
            }
        }
        PeelResult { erased, rounds }
    }

    /// Serial peeling that draws resolvable checks from a worklist seeded in
    /// `order` (last first). Any order reaches the same final set; this
    /// exists so that claim can be checked.
    pub fn peel_in_order(&self, erased: &[bool], order: &[u32]) -> Vec<bool> {
        let mut erased = erased.to_vec();
        let mut count = self.erased_counts(&erased);
        let mut stack: Vec<u32> = order
            .iter()
            .copied()
            .filter(|&c| count[c as usize] == 1)
            .collect();
        while let Some(c) = stack.pop() {
            if count[c as usize] != 1 {
                continue;
            }
            let Some(v) = self.erased_neighbor(c as usize, &erased) else {
                continue;
            };
            erased[v as usize] = false;
            for &c2 in &self.var_checks[v as usize] {
                count[c2 as usize] -= 1;
                if count[c2 as usize] == 1 {
                    stack.push(c2);
                }
            }
        }
        erased
    }
}

pub fn peel(h: &SparseBinary, erased: &[bool]) -> PeelResult {
    Peeler::new(h).peel(erased)
}
