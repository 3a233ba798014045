//! Liar strategies for rooms of exactly `2s + 1` people.

use crate::error::RunError;
use crate::game::{lowest, Answer, GameParams, Person, Question, SpyModel};
use crate::knowledge::{Claim, Objective};

use super::bkh::Unit;
use super::{
    ask, complete_identities, knight_from_units, knight_hunt, singletons, spy_found, spy_objective, stuck, Announcing,
    Interrogation, Step, Strategy,
};

/// One row of the nine-person table: the question, the anticipated answer
/// and the first question of the continuation after the other answer.
pub type TableRow = (Question, Option<Answer>, Option<Question>);

/// Main line for nine people with a spy known present. The last question has
/// no anticipated answer: either reply identifies a spy.
pub fn nine_person_line() -> Vec<TableRow> {
    let q = Question::new;
    vec![
        (q(1, 2), Some(Answer::Support), Some(q(3, 4))),
        (q(1, 3), Some(Answer::Support), Some(q(4, 5))),
        (q(4, 5), Some(Answer::Support), Some(q(1, 6))),
        (q(4, 6), Some(Answer::Accuse), Some(q(1, 4))),
        (q(4, 7), Some(Answer::Support), Some(q(1, 5))),
        (q(1, 8), Some(Answer::Accuse), Some(q(1, 4))),
        (q(1, 9), None, None),
    ]
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EdgeCaseStrategy {
    pub track_person_one: bool,
    pub complete_identities: bool,
}

impl EdgeCaseStrategy {
    fn objectives(&self, params: &GameParams) -> Vec<Objective> {
        let mut v = vec![spy_objective(params), Objective::FindKnight];
        if self.track_person_one {
            v.push(Objective::IdentityOfPerson(1));
        }
        if self.complete_identities {
            v.push(Objective::AllIdentities);
        }
        v
    }

    fn settle_person_one(&self, io: &mut dyn Interrogation, w: Person) -> Step {
        if self.track_person_one && io.deduction()?.identity(1).is_none() {
            ask(io, w, 1)?;
        }
        Ok(())
    }

    fn wrap_up(&self, io: &mut dyn Interrogation) -> Step {
        let Some(w) = lowest(io.deduction()?.knights) else {
            return stuck("finished without a known knight");
        };
        self.settle_person_one(io, w)?;
        if self.complete_identities {
            complete_identities(io, w)?;
        }
        Ok(())
    }

    /// Knight hunt through Person 1, then questions to the knight.
    fn hunt_then_probe(&self, io: &mut dyn Interrogation) -> Step {
        let mut units = singletons(io.params().people());
        knight_hunt(io, &mut units, Some(1))?;
        let Some(w) = knight_from_units(&units) else {
            return stuck("no open component");
        };
        io.note("knight-found");
        io.claim(Claim::KnightIs(w))?;
        self.settle_person_one(io, w)?;
        probe_with_knight(io, w)?;
        self.wrap_up(io)
    }

    /// The nine-person table, lifted to blocks of size `s / 4` when `s >= 8`.
    fn table(&self, io: &mut dyn Interrogation) -> Step {
        let n = io.params().n as Person;
        let block = (io.params().s() / 4) as Person;
        let mut units: Vec<Unit> = Vec::new();
        for b in 0..8 {
            let mut inner = singletons(b * block + 1..=(b + 1) * block);
            if let Some(acc) = knight_hunt(io, &mut inner, None)? {
                units.extend(inner);
                units.extend(singletons(((b + 1) * block + 1)..=n));
                return self.after_block_accusation(io, units, acc);
            }
            units.extend(inner);
        }
        io.note("blocks");
        let mut reps: Vec<Person> = units.iter().map(|u| u.sink).collect();
        reps.push(n);
        let rep = |i: Person| reps[i as usize - 1];
        for (question, expected, continuation) in nine_person_line() {
            let a = ask(io, rep(question.asker), rep(question.subject))?;
            if expected.is_some_and(|e| e != a) {
                let c = continuation.unwrap();
                let (x, y) = (rep(c.asker), rep(c.subject));
                if !spy_found(io)? && !io.graph().same_component(x, y) {
                    ask(io, x, y)?;
                }
                liar_finish(io)?;
                break;
            }
        }
        if !spy_found(io)? {
            return stuck("table line ended without a spy");
        }
        self.wrap_up(io)
    }

    fn after_block_accusation(&self, io: &mut dyn Interrogation, units: Vec<Unit>, acc: Question) -> Step {
        let (bad, mut rest): (Vec<Unit>, Vec<Unit>) = units.into_iter().partition(|u| u.contains(acc.asker));
        knight_hunt(io, &mut rest, None)?;
        let Some(w) = knight_from_units(&rest) else {
            return stuck("no open component outside the accusation");
        };
        io.claim(Claim::KnightIs(w))?;
        if !spy_found(io)? {
            ask(io, w, bad[0].sink)?;
        }
        self.wrap_up(io)
    }
}

impl Strategy for EdgeCaseStrategy {
    fn name(&self) -> String {
        "edge".into()
    }

    fn check(&self, params: &GameParams) -> Result<(), RunError> {
        if params.model != SpyModel::Liar {
            return Err(RunError::PreconditionUnmet("needs liar semantics".into()));
        }
        if params.n != 2 * params.s() + 1 {
            return Err(RunError::PreconditionUnmet(format!("needs n = 2s+1, got n={} s={}", params.n, params.s())));
        }
        Ok(())
    }

    fn run(&self, io: &mut dyn Interrogation) -> Step {
        let params = *io.params();
        let io = &mut Announcing::new(io, &self.objectives(&params))?;
        let s = params.s();
        if params.spy_known && s >= 4 && s.is_power_of_two() {
            self.table(io)
        } else {
            self.hunt_then_probe(io)
        }
    }
}

/// With knight `w` known, asks `w` about accusatory components first, then
/// about the smallest open component, until a spy is found or everyone is
/// known to be a knight.
pub(crate) fn probe_with_knight(io: &mut dyn Interrogation, w: Person) -> Step {
    while !spy_found(io)? {
        let Some(target) = probe_target(io, w)? else {
            return stuck("no component left to probe");
        };
        ask(io, w, target)?;
    }
    Ok(())
}

fn probe_target(io: &mut dyn Interrogation, w: Person) -> Step<Option<Person>> {
    let d = io.deduction()?;
    let g = io.graph();
    let open: Vec<u64> =
        g.components().into_iter().filter(|&c| c & g.component(w) == 0 && c & d.known() == 0).collect();
    let pick = open
        .iter()
        .find(|&&c| g.is_accusatory(lowest(c).unwrap()))
        .or_else(|| open.iter().min_by_key(|c| (c.count_ones(), c.trailing_zeros())));
    Ok(pick.map(|&c| lowest(c).unwrap()))
}

/// Generic liar endgame: weighted knight hunt on the two-coloured components,
/// then probing with the knight.
pub(crate) fn liar_finish(io: &mut dyn Interrogation) -> Step {
    loop {
        if spy_found(io)? {
            return Ok(());
        }
        if let Some(w) = lowest(io.deduction()?.knights) {
            return probe_with_knight(io, w);
        }
        let g = io.graph();
        let mut weighted: Vec<(usize, u64)> = g
            .components()
            .into_iter()
            .map(|c| (g.sig(lowest(c).unwrap()).unwrap().weight(), c))
            .filter(|&(wt, _)| wt > 0)
            .collect();
        weighted.sort_by_key(|&(wt, c)| (wt, c.trailing_zeros()));
        let pair = weighted
            .windows(2)
            .find(|p| p[0].0 == p[1].0)
            .map(|p| (p[0].1, p[1].1))
            .or_else(|| (weighted.len() >= 2).then(|| (weighted[0].1, weighted[1].1)));
        let Some((a, b)) = pair else {
            return stuck("fewer than two weighted components and no knight");
        };
        let x = lowest(g.larger_class(lowest(a).unwrap())).unwrap();
        let y = lowest(g.larger_class(lowest(b).unwrap())).unwrap();
        ask(io, x, y)?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategies::{run_strategy, ScriptSource};

    #[test]
    fn nine_person_main_line() {
        let params = GameParams::liar(9, 5).unwrap().with_spy_known(true);
        let s = EdgeCaseStrategy::default();
        let mut answers: Vec<Answer> = nine_person_line().iter().filter_map(|r| r.1).collect();
        answers.push(Answer::Support);
        let t = run_strategy(&s, &mut ScriptSource::new(answers.clone()), &params).unwrap();
        assert_eq!(t.question_count(), 7);
        assert!(t.claims().any(|(i, c)| i == 7 && c == Claim::SpyIs(8)));
        *answers.last_mut().unwrap() = Answer::Accuse;
        let t = run_strategy(&s, &mut ScriptSource::new(answers), &params).unwrap();
        assert!(t.claims().any(|(i, c)| i == 7 && c == Claim::SpyIs(6)));
    }
}
