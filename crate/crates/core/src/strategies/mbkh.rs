//! Modified binary knight hunt for unconstrained spies, with the follow-up
//! questions that also settle Person 1 and find a spy.
//!
//! Work happens in `P = {1..2s+1}`. Inside `X = {2..2^(a+1)+1}`, where `2^a` is
//! the largest power of two at most `s`, components are directed paths and
//! two equal paths are joined sink to source. The first accusation there is
//! set aside and an ordinary knight hunt (sink to sink) completes in `P`.

use crate::error::RunError;
use crate::game::{bit, lowest, GameParams, Person, Question, SpyModel};
use crate::knowledge::{Claim, Objective};

use super::bkh::{pick_pair, Unit};
use super::spider::spider;
use super::{
    ask, knight_from_units, singletons, spy_found, spy_objective, stuck, Announcing, Interrogation, Step, Strategy,
};

#[derive(Clone, Copy, Debug, Default)]
pub struct ModifiedKnightHunt;

fn largest_power_at_most(s: usize) -> usize {
    1 << (usize::BITS - 1 - s.leading_zeros())
}

impl ModifiedKnightHunt {
    fn exceptional(params: &GameParams) -> bool {
        params.s().is_power_of_two() && params.n == 2 * params.s() + 1
    }

    /// Phase 1 inside `X`. Returns the first accusation, or the joined path.
    fn paths(&self, io: &mut dyn Interrogation, units: &mut Vec<Unit>) -> Step<Option<Question>> {
        while units.len() > 1 {
            let Some((i, j)) = pick_pair(units, None) else {
                return stuck("paths in X have distinct sizes");
            };
            let (a, b) = (units[i], units[j]);
            let q = Question::new(a.sink, b.source);
            if io.ask(q)?.is_accuse() {
                return Ok(Some(q));
            }
            units[i] = Unit { members: a.members | b.members, sink: b.sink, source: a.source, accusatory: false };
            units.remove(j);
        }
        Ok(None)
    }

    /// Knight hunt in `P` that treats an already asked sink-to-sink question as
    /// answered, stopping once a knight is certain. When Person 1 would be
    /// left over by the final merge, the sink holding `accused` is asked about
    /// Person 1 first.
    fn complete_hunt(&self, io: &mut dyn Interrogation, units: &mut Vec<Unit>, accused: Person) -> Step {
        let mut vouched = false;
        while io.deduction()?.knights == 0 {
            let open: Vec<&Unit> = units.iter().filter(|u| !u.accusatory).collect();
            let stranded = open.len() == 3
                && open.iter().any(|u| u.members == bit(1))
                && open.iter().filter(|u| !u.contains(1)).all(|u| u.size() > 1);
            if stranded && !vouched {
                vouched = true;
                let sink = units.iter().find(|u| u.contains(accused)).map_or(open[0].sink, |u| u.sink);
                ask(io, sink, 1)?;
                continue;
            }
            let Some((i, j)) = pick_pair(units, Some(1)) else {
                break;
            };
            let (a, b) = (units[i], units[j]);
            let q = Question::new(a.sink, b.sink);
            let answer = match io.graph().edges().iter().find(|e| e.0 == q) {
                Some(&(_, recorded)) => recorded,
                None => io.ask(q)?,
            };
            units[i] = Unit {
                members: a.members | b.members,
                sink: b.sink,
                source: a.source,
                accusatory: a.accusatory || b.accusatory || answer.is_accuse(),
            };
            units.remove(j);
        }
        Ok(())
    }

    fn settle_person_one(&self, io: &mut dyn Interrogation, w: Person) -> Step {
        if io.deduction()?.identity(1).is_none() {
            ask(io, w, 1)?;
        }
        Ok(())
    }
}

impl Strategy for ModifiedKnightHunt {
    fn name(&self) -> String {
        "mbkh".into()
    }

    fn check(&self, params: &GameParams) -> Result<(), RunError> {
        if params.model != SpyModel::Unconstrained {
            return Err(RunError::PreconditionUnmet("needs unconstrained spies".into()));
        }
        Ok(())
    }

    fn run(&self, io: &mut dyn Interrogation) -> Step {
        let params = *io.params();
        let objectives = [spy_objective(&params), Objective::IdentityOfPerson(1)];
        let io = &mut Announcing::new(io, &objectives)?;
        if Self::exceptional(&params) {
            let out = spider(io)?;
            return self.settle_person_one(io, out.knight);
        }
        let s = params.s();
        let x_size = 2 * largest_power_at_most(s);
        let p_last = (2 * s + 1) as Person;
        let mut units = singletons(2..=x_size as Person + 1);
        match self.paths(io, &mut units)? {
            None => {
                let path = units[0];
                let w = path.sink;
                io.note("knight-found");
                io.claim(Claim::KnightIs(w))?;
                self.settle_person_one(io, w)?;
                let outside = params.everyone() & !path.members & !bit(1);
                for p in crate::game::members(outside) {
                    if spy_found(io)? {
                        break;
                    }
                    ask(io, w, p)?;
                }
                if !spy_found(io)? {
                    ask(io, w, path.source)?;
                }
            }
            Some(first) => {
                let x_mask = units.iter().fold(0, |m, u| m | u.members);
                let rest = (1..=p_last).filter(|&p| x_mask & bit(p) == 0);
                units.extend(singletons(rest));
                self.complete_hunt(io, &mut units, first.subject)?;
                let w = match lowest(io.deduction()?.knights) {
                    Some(w) => w,
                    None => match knight_from_units(&units) {
                        Some(w) => w,
                        None => return stuck("no open component in P"),
                    },
                };
                io.note("knight-found");
                io.claim(Claim::KnightIs(w))?;
                self.settle_person_one(io, w)?;
                if !spy_found(io)? {
                    ask(io, w, first.asker)?;
                }
            }
        }
        if !spy_found(io)? {
            return stuck("hunt ended without a spy");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Answer;
    use crate::strategies::{run_strategy, ScriptSource};

    #[test]
    fn power_sizes() {
        assert_eq!(largest_power_at_most(1), 1);
        assert_eq!(largest_power_at_most(3), 2);
        assert_eq!(largest_power_at_most(8), 8);
    }

    #[test]
    fn phase_one_completes() {
        // n = 8, s = 3: X = {2,3,4,5}, three path questions find a knight.
        let params = GameParams::new(8, 5, SpyModel::Unconstrained, true).unwrap();
        let answers = vec![Answer::Support; 7];
        let t = run_strategy(&ModifiedKnightHunt, &mut ScriptSource::new(answers), &params).unwrap();
        assert_eq!(t.note_index("knight-found"), Some(3));
        let qs: Vec<_> = t.questions().map(|(_, q, _)| (q.asker, q.subject)).take(4).collect();
        assert_eq!(qs, vec![(2, 3), (4, 5), (3, 4), (5, 1)]);
        assert_eq!(t.first_claim_for(Objective::FindSpy), Some(7));
    }

    #[test]
    fn stranded_person_one_is_vouched_for() {
        let params = GameParams::new(6, 4, SpyModel::Unconstrained, true).unwrap();
        let objectives = [Objective::FindKnight, Objective::IdentityOfPerson(1), Objective::FindSpy];
        let wc = crate::adversary::worst_case(&ModifiedKnightHunt, &params, &objectives).unwrap();
        assert_eq!(wc.max, vec![Some(4), Some(5), Some(5)]);
    }
}
