//! Extended spider interrogation for unconstrained spies.
//!
//! Phase 1 walks a support chain `1 -> 2 -> ... -> n`. After the first
//! accusation, candidates are questioned by fresh people until a candidate
//! collects enough support to be a certain knight.

use crate::error::RunError;
use crate::game::{lowest, GameParams, Person};
use crate::knowledge::{Claim, Objective};

use super::{ask, spy_found, spy_objective, stuck, Announcing, Interrogation, Step, Strategy};

#[derive(Clone, Copy, Debug, Default)]
pub struct ExtendedSpider {
    pub track_person_one: bool,
}

/// Outcome of the spider: the accepted knight and the Phase 1 accuser.
pub(crate) struct SpiderOutcome {
    pub knight: Person,
}

pub(crate) fn spider(io: &mut dyn Interrogation) -> Step<SpiderOutcome> {
    let params = *io.params();
    let n = params.n as Person;
    let mut accuser = None;
    for p in 1..n {
        if ask(io, p, p + 1)?.is_accuse() {
            accuser = Some(p);
            break;
        }
    }
    let Some(p) = accuser else {
        io.note("chain-complete");
        io.claim(Claim::KnightIs(n))?;
        if !spy_found(io)? {
            ask(io, n, 1)?;
        }
        return Ok(SpiderOutcome { knight: n });
    };
    let mut budget = params.s() as i64;
    let (mut candidate, mut support, mut against) = (p, p as i64 - 1, 1i64);
    let knight = loop {
        if against > support {
            budget -= against;
            let fresh = untouched(io);
            let Some(c) = lowest(fresh) else {
                return stuck("no fresh candidate");
            };
            candidate = c;
            support = 0;
            against = 0;
            continue;
        }
        if support >= budget {
            break candidate;
        }
        let Some(v) = lowest(untouched(io) & !crate::game::bit(candidate)) else {
            return stuck("no fresh person to question the candidate");
        };
        if ask(io, v, candidate)?.is_accuse() {
            against += 1;
        } else {
            support += 1;
        }
    };
    io.note("knight-found");
    io.claim(Claim::KnightIs(knight))?;
    if !spy_found(io)? {
        ask(io, knight, p)?;
    }
    Ok(SpiderOutcome { knight })
}

/// People not yet involved in any question.
fn untouched(io: &dyn Interrogation) -> u64 {
    let g = io.graph();
    g.components().into_iter().filter(|c| c.count_ones() == 1).fold(0, |m, c| m | c)
}

impl Strategy for ExtendedSpider {
    fn name(&self) -> String {
        "spider".into()
    }

    fn check(&self, params: &GameParams) -> Result<(), RunError> {
        if params.n < 3 {
            return Err(RunError::PreconditionUnmet("need at least three people".into()));
        }
        Ok(())
    }

    fn run(&self, io: &mut dyn Interrogation) -> Step {
        let params = *io.params();
        let mut objectives = vec![spy_objective(&params)];
        if self.track_person_one {
            objectives.push(Objective::IdentityOfPerson(1));
        }
        let io = &mut Announcing::new(io, &objectives)?;
        let out = spider(io)?;
        if !spy_found(io)? {
            return stuck("spider ended without a spy");
        }
        if self.track_person_one && io.deduction()?.identity(1).is_none() {
            ask(io, out.knight, 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{Answer, SpyModel};
    use crate::strategies::{run_strategy, ScriptSource};

    #[test]
    fn chain_without_accusation() {
        let params = GameParams::new(5, 3, SpyModel::Unconstrained, true).unwrap();
        let t = run_strategy(&ExtendedSpider::default(), &mut ScriptSource::new(vec![Answer::Support; 4]), &params)
            .unwrap();
        assert_eq!(t.question_count(), 4);
        assert_eq!(t.first_claim_for(Objective::FindSpy), Some(4));
        assert!(t.claims().any(|(_, c)| c == Claim::SpyIs(1)));
    }

    #[test]
    fn all_knights_needs_one_more_question() {
        let params = GameParams::unconstrained(5, 3).unwrap();
        let t = run_strategy(&ExtendedSpider::default(), &mut ScriptSource::new(vec![Answer::Support; 5]), &params)
            .unwrap();
        assert_eq!(t.question_count(), 5);
        assert!(t.claims().any(|(i, c)| i == 5 && c == Claim::AllKnights));
    }

    #[test]
    fn immediate_accusation_rejects_first_candidate() {
        // 1 accuses 2; candidate 1 is discarded, 3 becomes the candidate.
        let params = GameParams::new(5, 3, SpyModel::Unconstrained, true).unwrap();
        let answers = vec![Answer::Accuse, Answer::Support, Answer::Support];
        let t = run_strategy(&ExtendedSpider::default(), &mut ScriptSource::new(answers), &params).unwrap();
        let qs: Vec<_> = t.questions().map(|(_, q, _)| (q.asker, q.subject)).collect();
        assert_eq!(qs, vec![(1, 2), (4, 3), (3, 1)]);
        assert!(t.claims().any(|(_, c)| c == Claim::KnightIs(3)));
    }
}
