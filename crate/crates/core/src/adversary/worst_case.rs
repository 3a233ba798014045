//! Exhaustive exploration of a strategy against every consistent answer
//! sequence.

use std::fmt;

use crate::error::RunError;
use crate::game::{Answer, GameParams};
use crate::graph::QuestionGraph;
use crate::knowledge::{deduce, Objective};
use crate::strategies::{Halt, Interrogation, LiveIo, ScriptSource, Strategy};

/// Branches below this depth are explored in parallel.
const PARALLEL_DEPTH: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorstCase {
    pub objectives: Vec<Objective>,
    /// Latest question index at which each objective is first claimed, or
    /// `None` if some line ends without claiming it.
    pub max: Vec<Option<usize>>,
    /// An answer sequence attaining each entry of `max`.
    pub witness: Vec<Vec<Answer>>,
    /// Number of complete lines explored.
    pub lines: usize,
    /// Most questions asked on any line.
    pub longest: usize,
}

impl WorstCase {
    pub fn get(&self, objective: Objective) -> Option<usize> {
        let i = self.objectives.iter().position(|&o| o == objective)?;
        self.max[i]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{error} after answers [{}]", AnswerList(.answers))]
pub struct ExploreFailure {
    pub error: RunError,
    pub answers: Vec<Answer>,
}

struct AnswerList<'a>(&'a [Answer]);

impl fmt::Display for AnswerList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Answers to the next question that keep some assignment consistent.
pub fn consistent_answers(graph: &QuestionGraph, params: &GameParams, q: crate::game::Question) -> Vec<Answer> {
    [Answer::Support, Answer::Accuse]
        .into_iter()
        .filter(|&a| graph.with_answer(q, a).is_ok_and(|g| deduce(&g, params).is_ok()))
        .collect()
}

pub fn worst_case(
    strategy: &dyn Strategy,
    params: &GameParams,
    objectives: &[Objective],
) -> Result<WorstCase, ExploreFailure> {
    worst_case_from(strategy, params, objectives, &[])
}

/// Like [`worst_case`], restricted to lines that begin with `prefix`.
pub fn worst_case_from(
    strategy: &dyn Strategy,
    params: &GameParams,
    objectives: &[Objective],
    prefix: &[Answer],
) -> Result<WorstCase, ExploreFailure> {
    strategy.check(params).map_err(|error| ExploreFailure { error, answers: Vec::new() })?;
    let ex = Explorer { strategy, params: *params, objectives };
    let s = ex.explore(prefix.to_vec())?;
    Ok(WorstCase {
        objectives: objectives.to_vec(),
        max: s.scores.iter().map(|&(v, _)| (v != usize::MAX).then_some(v)).collect(),
        witness: s.scores.into_iter().map(|(_, w)| w).collect(),
        lines: s.lines,
        longest: s.longest,
    })
}

struct Summary {
    /// Per objective: claim index (`usize::MAX` when never claimed) and line.
    scores: Vec<(usize, Vec<Answer>)>,
    lines: usize,
    longest: usize,
}

impl Summary {
    fn merge(mut self, other: Summary) -> Summary {
        for (mine, theirs) in self.scores.iter_mut().zip(other.scores) {
            if theirs.0 > mine.0 {
                *mine = theirs;
            }
        }
        self.lines += other.lines;
        self.longest = self.longest.max(other.longest);
        self
    }
}

struct Explorer<'a> {
    strategy: &'a dyn Strategy,
    params: GameParams,
    objectives: &'a [Objective],
}

impl Explorer<'_> {
    fn explore(&self, prefix: Vec<Answer>) -> Result<Summary, ExploreFailure> {
        let mut source = ScriptSource::new(prefix.clone());
        let mut io = LiveIo::new(&self.params, &mut source, Some(prefix.len()));
        match self.strategy.run(&mut io) {
            Ok(()) => {
                let t = io.into_transcript();
                let scores = self
                    .objectives
                    .iter()
                    .map(|&o| (t.first_claim_for(o).unwrap_or(usize::MAX), prefix.clone()))
                    .collect();
                Ok(Summary { scores, lines: 1, longest: t.question_count() })
            }
            Err(Halt::Fail(error)) => Err(ExploreFailure { error, answers: prefix }),
            Err(Halt::Branch) => {
                let q = io.pending.expect("branch without a pending question");
                let answers = consistent_answers(io.graph(), &self.params, q);
                let child = |a: Answer| {
                    let mut p = prefix.clone();
                    p.push(a);
                    self.explore(p)
                };
                match answers[..] {
                    [a] => child(a),
                    [a, b] if prefix.len() < PARALLEL_DEPTH => {
                        let (x, y) = rayon::join(|| child(a), || child(b));
                        Ok(x?.merge(y?))
                    }
                    [a, b] => Ok(child(a)?.merge(child(b)?)),
                    _ => Err(ExploreFailure { error: RunError::AdversaryInconsistent(q), answers: prefix }),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategies::BinaryKnightHunt;

    #[test]
    fn knight_hunt_on_seven() {
        let params = GameParams::liar(7, 4).unwrap();
        let bkh = BinaryKnightHunt::default();
        let wc = worst_case(&bkh, &params, &[Objective::FindKnight]).unwrap();
        assert_eq!(wc.get(Objective::FindKnight), Some(4));
        assert!(wc.lines > 1);
    }

    #[test]
    fn missing_objective_is_reported() {
        let params = GameParams::liar(3, 2).unwrap();
        let bkh = BinaryKnightHunt::default();
        let wc = worst_case(&bkh, &params, &[Objective::AllIdentities]).unwrap();
        assert_eq!(wc.max, vec![None]);
    }
}
