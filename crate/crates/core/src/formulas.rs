//! Closed-form question counts for the searching games.

use serde::{Deserialize, Serialize};

/// Number of ones in the binary expansion of `m`.
pub fn binary_weight(m: usize) -> usize {
    m.count_ones() as usize
}

/// Questions needed to find a knight: `2(n - k) - B(n - k)`.
pub fn knight_count(n: usize, k: usize) -> usize {
    let s = n - k;
    2 * s - binary_weight(s)
}

/// Writes `n = q(s + 1) + r` with `0 <= r <= s`.
pub fn qr(n: usize, k: usize) -> (usize, usize) {
    let s = n - k;
    (n / (s + 1), n % (s + 1))
}

/// Questions needed under liar semantics to find a spy: `all` when the
/// interrogator must also allow for an all-knight room, `spy` when a spy is
/// known to be present.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpyTargets {
    pub all: usize,
    pub spy: usize,
}

pub fn liar_spy_targets(n: usize, k: usize) -> SpyTargets {
    let (q, r) = qr(n, k);
    let all = if r == 0 { n - q + 1 } else { n - q };
    let spy = if (n, k) == (5, 3) {
        4
    } else if r <= 1 {
        n - q
    } else {
        n - q - 1
    };
    SpyTargets { all, spy }
}

/// The same targets when spies may answer either way.
pub fn unconstrained_spy_targets(n: usize, _k: usize) -> SpyTargets {
    SpyTargets { all: n, spy: n - 1 }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityTargets {
    /// Find a knight.
    pub knight: usize,
    /// Find the identity of at least one person.
    pub any: usize,
    /// Find the identity of a chosen person.
    pub person: usize,
    /// Chosen person with a spy known present, liar semantics.
    pub person_spy_known_liar: usize,
    /// Chosen person with a spy known present, unconstrained semantics.
    pub person_spy_known_unconstrained: usize,
}

/// The chosen-person exception: `n = 2^(e+1) + 1`, `k = 2^e + 1`.
pub fn is_person_exception(n: usize, k: usize) -> bool {
    let s = n - k;
    s.is_power_of_two() && n == 2 * s + 1
}

pub fn identity_targets(n: usize, k: usize) -> IdentityTargets {
    let kk = knight_count(n, k);
    IdentityTargets {
        knight: kk,
        any: kk,
        person: kk + 1,
        person_spy_known_liar: if is_person_exception(n, k) { kk } else { kk + 1 },
        person_spy_known_unconstrained: kk + 1,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CountValue {
    Exact {
        value: usize,
    },
    /// Known to lie in `lo..=hi`.
    Interval {
        lo: usize,
        hi: usize,
    },
}

impl CountValue {
    pub fn contains(&self, v: usize) -> bool {
        match *self {
            CountValue::Exact { value } => v == value,
            CountValue::Interval { lo, hi } => (lo..=hi).contains(&v),
        }
    }

    pub fn exact(&self) -> Option<usize> {
        match *self {
            CountValue::Exact { value } => Some(value),
            CountValue::Interval { .. } => None,
        }
    }
}

impl std::fmt::Display for CountValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            CountValue::Exact { value } => write!(f, "{value}"),
            CountValue::Interval { lo, hi } => write!(f, "{lo}..{hi}"),
        }
    }
}

/// Pairs `(n, k)` with `n <= 30` and `2 <= r < s` where every identity is found
/// in `n - q` rather than `n - q + 1` questions.
pub const LOW_A_PAIRS: &[(usize, usize)] = &[
    (13, 9),
    (16, 11),
    (18, 14),
    (19, 13),
    (21, 14),
    (22, 15),
    (22, 17),
    (23, 19),
    (24, 16),
    (25, 17),
    (25, 19),
    (26, 17),
    (26, 20),
    (27, 18),
    (28, 19),
    (28, 23),
    (28, 24),
    (29, 19),
    (29, 22),
    (30, 20),
    (30, 23),
];

/// Largest `n` for which the low pairs are fully classified.
pub const A_CLASSIFIED_UP_TO: usize = 30;

/// Questions needed under liar semantics to find every identity.
pub fn all_identities_liar(n: usize, k: usize) -> CountValue {
    let s = n - k;
    let (q, r) = qr(n, k);
    if r == s {
        CountValue::Exact { value: n - q }
    } else if r <= 1 {
        CountValue::Exact { value: n - q + 1 }
    } else if n <= A_CLASSIFIED_UP_TO {
        let value = if LOW_A_PAIRS.contains(&(n, k)) { n - q } else { n - q + 1 };
        CountValue::Exact { value }
    } else {
        CountValue::Interval { lo: n - q, hi: n - q + 1 }
    }
}

/// Questions needed with unconstrained spies to find every identity.
pub fn all_identities_unconstrained(n: usize, k: usize) -> usize {
    n + (n - k) - 1
}

/// Largest-class multiplicity conjecture for the majority game:
/// weights `{2^a, 1^(2k - 2a - 1)}` with excess 1 need `B(k - 1) + 1` fewer
/// questions than components.
pub fn majority_conjecture_value(k: usize) -> usize {
    binary_weight(k - 1) + 1
}

/// One row of the value table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub k: usize,
    pub q: usize,
    pub r: usize,
    pub knight: usize,
    pub any: usize,
    pub person: usize,
    pub person_spy_known_liar: usize,
    pub person_spy_known_unconstrained: usize,
    pub liar: SpyTargets,
    pub unconstrained: SpyTargets,
    pub all_identities: CountValue,
    pub exceptions: Vec<String>,
}

pub fn table_row(n: usize, k: usize) -> TableRow {
    let (q, r) = qr(n, k);
    let id = identity_targets(n, k);
    let mut exceptions = Vec::new();
    if (n, k) == (5, 3) {
        exceptions.push("spy-known liar spy count is 4".to_string());
    }
    if is_person_exception(n, k) {
        exceptions.push("spy-known liar chosen person found with the knight count".to_string());
    }
    if LOW_A_PAIRS.contains(&(n, k)) {
        exceptions.push("all identities in n-q".to_string());
    }
    TableRow {
        n,
        k,
        q,
        r,
        knight: id.knight,
        any: id.any,
        person: id.person,
        person_spy_known_liar: id.person_spy_known_liar,
        person_spy_known_unconstrained: id.person_spy_known_unconstrained,
        liar: liar_spy_targets(n, k),
        unconstrained: unconstrained_spy_targets(n, k),
        all_identities: all_identities_liar(n, k),
        exceptions,
    }
}

/// Rows for all valid pairs with `n <= n_max` (and `k <= k_max` when given).
pub fn value_table(n_max: usize, k_max: Option<usize>) -> Vec<TableRow> {
    crate::game::GameParams::all_pairs(3, n_max)
        .into_iter()
        .filter(|&(_, k)| k_max.is_none_or(|m| k <= m))
        .map(|(n, k)| table_row(n, k))
        .collect()
}
