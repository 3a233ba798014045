//! Spy master answer policies and exhaustive exploration of strategies.

mod policies;
mod search;
mod worst_case;

pub use policies::{DeadlineBlocker, LiarLowerBound, MajorityLowerBound, UnconstrainedLowerBound};
pub use search::{policy_combined_feasible, policy_value};
pub use worst_case::{consistent_answers, worst_case, worst_case_from, ExploreFailure, WorstCase};

use crate::error::RunError;
use crate::game::{Answer, GameParams, Question, SpySet};
use crate::graph::QuestionGraph;
use crate::knowledge::{consistent_assignments, deduce, MAX_EXPLICIT};
use crate::solver::Bits;
use crate::strategies::AnswerSource;

/// How a room with spy set `spies` answers `q`. Liar spies always lie;
/// unconstrained spies lie when `spy_lies` is set and tell the truth otherwise.
pub fn ground_truth_answer(spies: SpySet, q: Question, spy_lies: bool) -> Answer {
    let truth = if spies.contains(q.subject) { Answer::Accuse } else { Answer::Support };
    if spies.contains(q.asker) && spy_lies {
        truth.flip()
    } else {
        truth
    }
}

/// A spy master that answers from the position alone.
pub trait Policy: Clone + Send + Sync {
    fn name(&self) -> String;

    fn check(&self, _params: &GameParams) -> Result<(), RunError> {
        Ok(())
    }

    /// The preferred answer, or `None` to defer to [`fallback`]. A preferred
    /// answer that leaves no consistent assignment is replaced as well.
    fn propose(&self, graph: &QuestionGraph, params: &GameParams, q: Question) -> Option<Answer>;

    /// Sees the answer actually given, before it is applied to `graph`.
    fn observe(&mut self, _graph: &QuestionGraph, _params: &GameParams, _q: Question, _a: Answer) {}

    /// Positions with equal keys after the same number of questions lead to
    /// the same play up to relabelling people. `set` is the consistent set.
    fn key(&self, graph: &QuestionGraph, set: &Bits) -> Vec<u64>;
}

/// The consistent answer leaving the most consistent assignments, support on
/// ties. `sizes` holds the counts after support and after accuse.
pub fn fallback(sizes: [usize; 2]) -> Option<Answer> {
    match sizes {
        [0, 0] => None,
        [s, a] if s >= a => Some(Answer::Support),
        _ => Some(Answer::Accuse),
    }
}

/// Adapts a policy to live play.
#[derive(Clone, Debug)]
pub struct PolicySource<P>(pub P);

impl<P: Policy> AnswerSource for PolicySource<P> {
    fn answer(&mut self, graph: &QuestionGraph, params: &GameParams, q: Question) -> Result<Answer, RunError> {
        let size = |a: Answer| -> usize {
            let Ok(g) = graph.with_answer(q, a) else { return 0 };
            if params.n <= MAX_EXPLICIT {
                consistent_assignments(&g, params).map_or(0, |s| s.len())
            } else {
                deduce(&g, params).map_or(0, |_| 1)
            }
        };
        let sizes = [size(Answer::Support), size(Answer::Accuse)];
        let a = match self.0.propose(graph, params, q) {
            Some(a) if sizes[a.is_accuse() as usize] > 0 => a,
            _ => fallback(sizes).ok_or(RunError::AdversaryInconsistent(q))?,
        };
        self.0.observe(graph, params, q, a);
        Ok(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_truth_examples() {
        let spies: SpySet = "{3}".parse().unwrap();
        assert_eq!(ground_truth_answer(spies, Question::new(1, 2), true), Answer::Support);
        assert_eq!(ground_truth_answer(spies, Question::new(1, 3), true), Answer::Accuse);
        assert_eq!(ground_truth_answer(spies, Question::new(3, 1), true), Answer::Accuse);
        assert_eq!(ground_truth_answer(spies, Question::new(3, 1), false), Answer::Support);
    }

    #[test]
    fn fallback_prefers_larger_set() {
        assert_eq!(fallback([3, 3]), Some(Answer::Support));
        assert_eq!(fallback([1, 4]), Some(Answer::Accuse));
        assert_eq!(fallback([0, 0]), None);
    }
}
