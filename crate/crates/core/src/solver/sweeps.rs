//! Sweeps over parameter ranges: the all-identities classification and the
//! majority-game conjecture.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::SolverError;
use crate::formulas::{majority_conjecture_value, qr};
use crate::game::GameParams;
use crate::knowledge::Objective;

use super::liar::solve_liar_abstract_with_budget;
use super::majority::{MajorityPosition, MajoritySolver};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AClass {
    pub n: usize,
    pub k: usize,
    pub q: usize,
    pub r: usize,
    /// Questions needed to learn every identity.
    pub value: usize,
}

impl AClass {
    /// Whether the pair needs only `n - q` questions.
    pub fn is_low(&self) -> bool {
        self.value == self.n - self.q
    }
}

/// Solves the all-identities liar game for every pair with `n <= n_max` and
/// `2 <= r < s`, the range without a closed form.
pub fn classify_a(n_max: usize, budget: u64) -> Result<Vec<AClass>, SolverError> {
    let pairs: Vec<(usize, usize)> = GameParams::all_pairs(3, n_max)
        .into_iter()
        .filter(|&(n, k)| {
            let r = qr(n, k).1;
            r >= 2 && r < n - k
        })
        .collect();
    pairs
        .par_iter()
        .map(|&(n, k)| {
            let params = GameParams::liar(n, k)?;
            let value = solve_liar_abstract_with_budget(&params, Objective::AllIdentities, budget)?;
            let (q, r) = qr(n, k);
            Ok(AClass { n, k, q, r, value })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureRow {
    pub k: usize,
    pub a: usize,
    /// Components left under optimal play from `{2^a, 1^(2k-2a-1)}`.
    pub value: usize,
    pub expected: usize,
}

impl ConjectureRow {
    pub fn pass(&self) -> bool {
        self.value == self.expected
    }
}

/// Rows for every `1 <= a < k <= k_max`.
pub fn check_conjecture(k_max: usize) -> Result<Vec<ConjectureRow>, SolverError> {
    let mut solver = MajoritySolver::new(1)?;
    let mut rows = Vec::new();
    for k in 2..=k_max {
        for a in 1..k {
            let pos = MajorityPosition::twos_and_ones(a, 2 * k - 2 * a - 1, 1);
            let questions = solver.questions(&pos.weights)?;
            rows.push(ConjectureRow {
                k,
                a,
                value: pos.weights.len() - questions,
                expected: majority_conjecture_value(k),
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_conjecture_rows() {
        let rows = check_conjecture(4).unwrap();
        assert!(rows.iter().all(ConjectureRow::pass));
        let row = rows.iter().find(|r| r.k == 4 && r.a == 2).unwrap();
        assert_eq!(row.value, 3);
    }
}
