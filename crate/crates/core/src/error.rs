use thiserror::Error;

use crate::game::{Person, Question};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("invalid parameters n={n}, k={k}: need n/2 < k < n and n <= 64")]
    InvalidParams { n: usize, k: usize },
    #[error("person {0} is not in the room")]
    NoSuchPerson(Person),
    #[error("question {0} asks a person about themselves")]
    SelfQuestion(Question),
    #[error("question {0} has already been asked")]
    DuplicateQuestion(Question),
    #[error("answer to {0} contradicts earlier answers under liar semantics")]
    ContradictoryAnswer(Question),
    #[error("weights must satisfy c >= c' >= 0, got c={c}, c'={c2}")]
    WeightOrder { c: u32, c2: u32 },
    #[error("no assignment of identities is consistent with the answers")]
    EmptyConsistentSet,
    #[error("operation needs the liar model")]
    ModeError,
    #[error("explicit consistent sets are limited to {max} people, got {n}")]
    TooManyPeople { n: usize, max: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Failures while running a strategy against an answer source.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RunError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("strategy precondition failed: {0}")]
    PreconditionUnmet(String),
    #[error("bad strategy configuration: {0}")]
    ConfigError(String),
    #[error("claim `{claim}` after question {index} is not forced by the answers")]
    InvalidClaim { claim: String, index: usize },
    #[error("adversary answer to {0} leaves no consistent assignment")]
    AdversaryInconsistent(Question),
    #[error("strategy stuck: {0}")]
    StrategyStuck(String),
    #[error("answer source exhausted at question {0}")]
    SourceExhausted(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("search budget of {0} states exceeded")]
    BudgetExceeded(u64),
    #[error("structure violates liar parity")]
    ParityError,
    #[error("{0} cannot be achieved against every room")]
    Unreachable(String),
    #[error("unsupported solver input: {0}")]
    Unsupported(String),
}
