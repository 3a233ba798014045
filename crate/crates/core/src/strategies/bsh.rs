//! Binary spy hunt for rooms with `n >= 2(s + 1)` under liar semantics.
//!
//! Phase 1 runs knight hunts in `X = {1..s+1}` and `X' = {s+2..2s+1}`.
//! Phase 2 is a switching knight hunt across the two. Phase 3 builds
//! components of size `s + 1` from the remaining people, and Phase 4 uses the
//! known knight on the leftovers.

use crate::error::RunError;
use crate::formulas::qr;
use crate::game::{GameParams, Person, SpyModel};
use crate::knowledge::{Claim, Objective};

use super::bkh::merge_units;
use super::{
    ask, complete_identities, knight_from_units, knight_hunt, singletons, spy_found, spy_objective, stuck,
    switching_knight_hunt, Announcing, Interrogation, Step, Strategy,
};

#[derive(Clone, Copy, Debug, Default)]
pub struct BinarySpyHunt {
    /// Route questions through Person 1 and settle Person 1's identity one
    /// question after the knight is found.
    pub track_person_one: bool,
    /// Keep going until every identity is known.
    pub complete_identities: bool,
}

impl BinarySpyHunt {
    fn objectives(&self, params: &GameParams) -> Vec<Objective> {
        let mut v = vec![spy_objective(params)];
        if self.track_person_one {
            v.push(Objective::IdentityOfPerson(1));
        }
        if self.complete_identities {
            v.push(Objective::AllIdentities);
        }
        v
    }

    fn knight_found(&self, io: &mut dyn Interrogation, w: Person) -> Step {
        io.note("knight-found");
        io.claim(Claim::KnightIs(w))
    }

    fn settle_person_one(&self, io: &mut dyn Interrogation, w: Person) -> Step {
        if self.track_person_one && io.deduction()?.identity(1).is_none() {
            ask(io, w, 1)?;
        }
        Ok(())
    }

    /// A knight `w` is known and `accuser` made an accusation.
    fn finish(&self, io: &mut dyn Interrogation, w: Person, accuser: Person) -> Step {
        self.settle_person_one(io, w)?;
        if !spy_found(io)? {
            if io.graph().same_component(w, accuser) {
                return stuck("accuser joined to the knight without revealing a spy");
            }
            ask(io, w, accuser)?;
        }
        self.wrap_up(io, w)
    }

    fn wrap_up(&self, io: &mut dyn Interrogation, w: Person) -> Step {
        if !spy_found(io)? {
            return stuck("spy hunt ended without a spy");
        }
        if self.complete_identities {
            complete_identities(io, w)?;
        }
        Ok(())
    }
}

impl Strategy for BinarySpyHunt {
    fn name(&self) -> String {
        "bsh".into()
    }

    fn check(&self, params: &GameParams) -> Result<(), RunError> {
        if params.model != SpyModel::Liar {
            return Err(RunError::PreconditionUnmet("binary spy hunt needs liar semantics".into()));
        }
        if params.n < 2 * (params.s() + 1) {
            return Err(RunError::PreconditionUnmet(format!(
                "binary spy hunt needs n >= 2(s+1), got n={} s={}",
                params.n,
                params.s()
            )));
        }
        Ok(())
    }

    fn run(&self, io: &mut dyn Interrogation) -> Step {
        let params = *io.params();
        let io = &mut Announcing::new(io, &self.objectives(&params))?;
        let s = params.s() as Person;
        let (q, r) = qr(params.n, params.k);
        let prefer = self.track_person_one.then_some(1);

        let mut ux = singletons(1..=s + 1);
        let mut ux2 = singletons(s + 2..=2 * s + 1);
        let acc1 = knight_hunt(io, &mut ux, prefer)?;
        let acc2 = knight_hunt(io, &mut ux2, None)?;
        io.note("phase-1");
        if let Some(first) = acc1.or(acc2) {
            let mut units = ux;
            units.extend(ux2);
            knight_hunt(io, &mut units, prefer)?;
            let Some(w) = knight_from_units(&units) else {
                return stuck("no open component after phase 1");
            };
            self.knight_found(io, w)?;
            return self.finish(io, w, first.asker);
        }

        ux.sort_by_key(|u| u.size());
        ux2.sort_by_key(|u| u.size());
        let chain: Vec<Person> = ux.iter().map(|u| u.sink).collect();
        let mut alt = Vec::new();
        for u in &ux[1..] {
            match ux2.iter().find(|v| v.size() == u.size()) {
                Some(v) => alt.push(v.sink),
                None => return stuck("second group lacks a matching component"),
            }
        }
        let out = switching_knight_hunt(io, &chain, &alt)?;
        let w = out.knight;
        self.knight_found(io, w)?;
        if let Some(a) = out.accuser {
            return self.finish(io, w, a);
        }
        self.settle_person_one(io, w)?;
        io.note("phase-2");

        while ux2.len() > 1 {
            let (qn, a) = merge_units(io, &mut ux2, 0, 1)?;
            if a.is_accuse() {
                return self.finish(io, w, qn.asker);
            }
            ux2.sort_by_key(|u| u.size());
        }
        let y = ux2[0].sink;
        let rest: Vec<Person> = (2 * s + 2..=params.n as Person).collect();
        let group = s as usize + 1;
        for g in rest.chunks(group).take(q - 2) {
            for &m in &g[1..] {
                if ask(io, g[0], m)?.is_accuse() {
                    return self.finish(io, w, g[0]);
                }
            }
        }
        io.note("phase-3");

        let singles = &rest[(q - 2) * group..];
        debug_assert_eq!(singles.len(), r + 1);
        if r == 0 {
            ask(io, w, singles[0])?;
            if !spy_found(io)? {
                ask(io, w, y)?;
            }
        } else if ask(io, y, singles[r])?.is_accuse() {
            ask(io, w, y)?;
        } else {
            for &x in &singles[..r - 1] {
                if spy_found(io)? {
                    break;
                }
                ask(io, w, x)?;
            }
            if !spy_found(io)? {
                ask(io, w, singles[r - 1])?;
            }
        }
        self.wrap_up(io, w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{Answer, SpySet};
    use crate::strategies::{run_strategy, ScriptSource, TruthSource};

    #[test]
    fn largest_example_follows_narrative() {
        // 29 people, at least 16 knights, a spy is known to be present.
        let params = GameParams::liar(29, 16).unwrap().with_spy_known(true);
        let mut answers = vec![Answer::Support; 25];
        answers.extend([Answer::Accuse, Answer::Support, Answer::Support]);
        let s = BinarySpyHunt { track_person_one: false, complete_identities: true };
        let t = run_strategy(&s, &mut ScriptSource::new(answers), &params).unwrap();
        assert_eq!(t.note_index("phase-1"), Some(21));
        assert_eq!(t.note_index("knight-found"), Some(23));
        assert_eq!(t.note_index("phase-3"), Some(25));
        assert_eq!(t.first_claim_for(Objective::FindSpy), Some(27));
        assert_eq!(t.first_claim_for(Objective::AllIdentities), Some(28));
        assert_eq!(t.question_count(), 28);
    }

    #[test]
    fn every_room_of_ten_is_solved() {
        let params = GameParams::liar(10, 7).unwrap();
        let s = BinarySpyHunt { track_person_one: true, complete_identities: true };
        for mask in 0u64..1 << 10 {
            if mask.count_ones() > 3 {
                continue;
            }
            let t = run_strategy(&s, &mut TruthSource::new(SpySet(mask)), &params).unwrap();
            let last = t.claims().last().unwrap().1;
            let expected = if mask == 0 { Claim::AllKnights } else { Claim::FullAssignment(SpySet(mask)) };
            assert_eq!(last, expected);
        }
    }
}
