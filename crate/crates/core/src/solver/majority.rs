//! The majority game on component weights: spies always lie and knights
//! outnumber spies by at least `e`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::SolverError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MajorityPosition {
    pub weights: Vec<usize>,
    pub excess: usize,
}

impl MajorityPosition {
    pub fn new(weights: Vec<usize>, excess: usize) -> Self {
        MajorityPosition { weights, excess }
    }

    /// `{2^a, 1^b}`.
    pub fn twos_and_ones(a: usize, b: usize, excess: usize) -> Self {
        let mut weights = vec![2; a];
        weights.extend(std::iter::repeat_n(1, b));
        MajorityPosition { weights, excess }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MajorityValue {
    /// Questions needed to find a knight under optimal play.
    pub questions: usize,
    /// Components left at the end, `|M| - questions`.
    pub components: usize,
}

/// Whether some component's larger class must be knights: with weights
/// summing to `2 s + e`, a component of weight at least `s + 1` is settled.
pub fn knight_known(weights: &[usize], excess: usize) -> bool {
    let total: usize = weights.iter().sum();
    let s = total.saturating_sub(excess) / 2;
    weights.iter().any(|&w| w > s)
}

pub fn majority_value(pos: &MajorityPosition) -> Result<MajorityValue, SolverError> {
    let questions = MajoritySolver::new(pos.excess)?.questions(&pos.weights)?;
    Ok(MajorityValue { questions, components: pos.weights.len() - questions })
}

/// Memoised minimax for one excess value.
#[derive(Clone, Debug)]
pub struct MajoritySolver {
    excess: usize,
    memo: HashMap<Vec<usize>, usize>,
}

impl MajoritySolver {
    pub fn new(excess: usize) -> Result<Self, SolverError> {
        if excess == 0 {
            return Err(SolverError::Unsupported("excess must be at least 1".into()));
        }
        Ok(MajoritySolver { excess, memo: HashMap::new() })
    }

    /// Questions needed from the given weights (any order, zeros allowed).
    pub fn questions(&mut self, weights: &[usize]) -> Result<usize, SolverError> {
        let total: usize = weights.iter().sum();
        if total % 2 != self.excess % 2 {
            return Err(SolverError::ParityError);
        }
        if total < self.excess {
            return Err(SolverError::Unsupported(format!("weights sum to {total}, below the excess {}", self.excess)));
        }
        Ok(self.value(normalize(weights)))
    }

    /// Outcomes of a question joining components of weights `c` and `c2`,
    /// additive first. The subtractive outcome is absent when the adversary
    /// cannot afford it.
    pub fn outcomes(&self, weights: &[usize], i: usize, j: usize) -> Vec<Vec<usize>> {
        let total: usize = weights.iter().sum();
        let (c, c2) = (weights[i], weights[j]);
        let rest = weights.iter().enumerate().filter(|&(t, _)| t != i && t != j).map(|(_, &w)| w);
        let mut plus: Vec<usize> = rest.clone().collect();
        plus.push(c + c2);
        let mut out = vec![normalize(&plus)];
        if total - 2 * c.min(c2) >= self.excess {
            let mut minus: Vec<usize> = rest.collect();
            minus.push(c.abs_diff(c2));
            out.push(normalize(&minus));
        }
        out
    }

    fn value(&mut self, m: Vec<usize>) -> usize {
        if knight_known(&m, self.excess) {
            return 0;
        }
        if let Some(&v) = self.memo.get(&m) {
            return v;
        }
        let mut best = usize::MAX;
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                if (i > 0 && m[i] == m[i - 1]) || (j > i + 1 && m[j] == m[j - 1]) {
                    continue;
                }
                let worst = self.outcomes(&m, i, j).into_iter().map(|c| self.value(c)).max().unwrap();
                best = best.min(worst + 1);
            }
        }
        self.memo.insert(m, best);
        best
    }
}

/// Sorted descending with zero weights removed.
fn normalize(weights: &[usize]) -> Vec<usize> {
    let mut m: Vec<usize> = weights.iter().copied().filter(|&w| w > 0).collect();
    m.sort_unstable_by(|a, b| b.cmp(a));
    m
}
