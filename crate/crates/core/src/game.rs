//! Basic vocabulary of the game: parameters, people, questions and answers.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::GameError;

/// People are numbered from 1.
pub type Person = u8;

/// Largest room the question graph supports (people are bits of a `u64`).
pub const MAX_PEOPLE: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpyModel {
    /// Every spy lies on every question.
    Liar,
    /// Spies may answer either way.
    Unconstrained,
}

impl fmt::Display for SpyModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpyModel::Liar => "liar",
            SpyModel::Unconstrained => "unconstrained",
        })
    }
}

impl FromStr for SpyModel {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "liar" | "liars" => Ok(SpyModel::Liar),
            "unconstrained" | "free" => Ok(SpyModel::Unconstrained),
            other => Err(GameError::Parse(format!("unknown spy model `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Answer {
    Support,
    Accuse,
}

impl Answer {
    pub fn flip(self) -> Answer {
        match self {
            Answer::Support => Answer::Accuse,
            Answer::Accuse => Answer::Support,
        }
    }

    pub fn is_accuse(self) -> bool {
        self == Answer::Accuse
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Support => "Support",
            Answer::Accuse => "Accuse",
        })
    }
}

impl FromStr for Answer {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "support" | "s" | "no" => Ok(Answer::Support),
            "accuse" | "a" | "yes" => Ok(Answer::Accuse),
            other => Err(GameError::Parse(format!("unknown answer `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Identity {
    Knight,
    Spy,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Identity::Knight => "knight",
            Identity::Spy => "spy",
        })
    }
}

impl FromStr for Identity {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "knight" => Ok(Identity::Knight),
            "spy" => Ok(Identity::Spy),
            other => Err(GameError::Parse(format!("unknown identity `{other}`"))),
        }
    }
}

/// "Person `asker`, is Person `subject` a spy?"
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Question {
    pub asker: Person,
    pub subject: Person,
}

impl Question {
    pub fn new(asker: Person, subject: Person) -> Self {
        Question { asker, subject }
    }
}

impl fmt::Display for Question {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.asker, self.subject)
    }
}

/// Parameters of one game: `n` people, at least `k` of them knights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GameParams {
    pub n: usize,
    pub k: usize,
    pub model: SpyModel,
    /// The interrogator is told that at least one spy is present.
    pub spy_known: bool,
}

impl GameParams {
    pub fn new(n: usize, k: usize, model: SpyModel, spy_known: bool) -> Result<Self, GameError> {
        if n > MAX_PEOPLE || 2 * k <= n || k >= n {
            return Err(GameError::InvalidParams { n, k });
        }
        Ok(GameParams { n, k, model, spy_known })
    }

    pub fn liar(n: usize, k: usize) -> Result<Self, GameError> {
        Self::new(n, k, SpyModel::Liar, false)
    }

    pub fn unconstrained(n: usize, k: usize) -> Result<Self, GameError> {
        Self::new(n, k, SpyModel::Unconstrained, false)
    }

    pub fn with_spy_known(self, spy_known: bool) -> Self {
        GameParams { spy_known, ..self }
    }

    pub fn with_model(self, model: SpyModel) -> Self {
        GameParams { model, ..self }
    }

    /// Maximum number of spies, `s = n - k`.
    pub fn s(&self) -> usize {
        self.n - self.k
    }

    pub fn min_spies(&self) -> usize {
        usize::from(self.spy_known)
    }

    /// Knight surplus `k - (n - k)`.
    pub fn excess(&self) -> usize {
        2 * self.k - self.n
    }

    pub fn everyone(&self) -> u64 {
        full_mask(self.n)
    }

    pub fn people(&self) -> impl Iterator<Item = Person> {
        1..=self.n as Person
    }

    /// Every valid `(n, k)` pair with `n` in `lo..=hi`.
    pub fn all_pairs(lo: usize, hi: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for n in lo.max(3)..=hi {
            for k in n / 2 + 1..n {
                out.push((n, k));
            }
        }
        out
    }
}

impl fmt::Display for GameParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} k={} {}", self.n, self.k, self.model)?;
        if self.spy_known {
            f.write_str(" spy-known")?;
        }
        Ok(())
    }
}

pub fn bit(p: Person) -> u64 {
    1u64 << (p - 1)
}

pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// People in `mask`, lowest first.
pub fn members(mut mask: u64) -> impl Iterator<Item = Person> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let p = mask.trailing_zeros() as Person + 1;
            mask &= mask - 1;
            Some(p)
        }
    })
}

pub fn lowest(mask: u64) -> Option<Person> {
    (mask != 0).then(|| mask.trailing_zeros() as Person + 1)
}

/// A set of spies written as `{1,4,7}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct SpySet(pub u64);

impl SpySet {
    pub fn contains(&self, p: Person) -> bool {
        self.0 & bit(p) != 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn identity(&self, p: Person) -> Identity {
        if self.contains(p) {
            Identity::Spy
        } else {
            Identity::Knight
        }
    }
}

impl fmt::Display for SpySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in members(self.0).enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for SpySet {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
        let mut mask = 0u64;
        for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let p: usize = part.parse().map_err(|_| GameError::Parse(format!("bad person `{part}` in spy set")))?;
            if p == 0 || p > MAX_PEOPLE {
                return Err(GameError::Parse(format!("person {p} out of range")));
            }
            mask |= 1u64 << (p - 1);
        }
        Ok(SpySet(mask))
    }
}
