//! Exact game-tree solvers.

mod generic;
mod liar;
mod majority;
mod space;
mod sweeps;

pub use generic::{
    combined_feasible, combined_feasible_with_budget, solve_generic, solve_generic_with_budget, DEFAULT_BUDGET,
};
pub use liar::{solve_liar_abstract, solve_liar_abstract_with_budget, AbstractState, LiarJudge, Sig};
pub use majority::{knight_known, majority_value, MajorityPosition, MajoritySolver, MajorityValue};
pub use space::{AssignmentSpace, Bits, MAX_ASSIGNMENTS};
pub use sweeps::{check_conjecture, classify_a, AClass, ConjectureRow};
