//! Engine for the knights-and-spies searching game.
//!
//! A room holds `n` people, at least `k > n/2` of them knights who always tell
//! the truth. The rest are spies. The interrogator asks questions of the form
//! "Person x, is Person y a spy?" and tries to identify a knight, a spy, or
//! everyone, in as few questions as possible.

pub mod adversary;
pub mod dot;
pub mod error;
pub mod formulas;
pub mod game;
pub mod graph;
pub mod knowledge;
pub mod solver;
pub mod strategies;
pub mod transcript;
pub mod verify;

pub use error::{GameError, RunError, SolverError};
pub use game::{Answer, GameParams, Identity, Person, Question, SpyModel, SpySet};
pub use graph::{merge_weight, ComponentSig, QuestionGraph};
pub use knowledge::{
    consistent_assignments, deduce, objective_status, unambiguous_components, Claim, ConsistentSet, Deduction,
    Objective, ObjectiveStatus,
};
