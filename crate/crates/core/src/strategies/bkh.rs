//! Binary knight hunt: repeatedly join two equal-sized components that
//! contain no accusation until all such components have distinct sizes.

use crate::error::RunError;
use crate::game::{bit, lowest, Answer, GameParams, Person, Question};
use crate::knowledge::Claim;

use super::{ask, singletons, Interrogation, Step, Strategy};

/// A component built by support chains; `sink` is the last person asked about.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Unit {
    pub members: u64,
    pub sink: Person,
    pub source: Person,
    pub accusatory: bool,
}

impl Unit {
    pub fn single(p: Person) -> Self {
        Unit { members: bit(p), sink: p, source: p, accusatory: false }
    }

    pub fn size(&self) -> usize {
        self.members.count_ones() as usize
    }

    pub fn contains(&self, p: Person) -> bool {
        self.members & bit(p) != 0
    }

    fn first(&self) -> Person {
        lowest(self.members).unwrap()
    }
}

/// Asks the sink of `units[i]` about the sink of `units[j]` and merges them.
pub(crate) fn merge_units(
    io: &mut dyn Interrogation,
    units: &mut Vec<Unit>,
    i: usize,
    j: usize,
) -> Step<(Question, Answer)> {
    let (a, b) = (units[i], units[j]);
    let q = Question::new(a.sink, b.sink);
    let answer = io.ask(q)?;
    units[i] = Unit {
        members: a.members | b.members,
        sink: b.sink,
        source: a.source,
        accusatory: a.accusatory || b.accusatory || answer.is_accuse(),
    };
    units.remove(j);
    Ok((q, answer))
}

/// Next pair to merge: the preferred person's component when it has an
/// equal-sized partner, otherwise the two lowest components of the smallest
/// size that occurs twice. The first index is the asking side.
pub(crate) fn pick_pair(units: &[Unit], prefer: Option<Person>) -> Option<(usize, usize)> {
    let open: Vec<usize> = (0..units.len()).filter(|&i| !units[i].accusatory).collect();
    if let Some(p) = prefer {
        if let Some(&pi) = open.iter().find(|&&i| units[i].contains(p)) {
            let partner = open
                .iter()
                .copied()
                .filter(|&i| i != pi && units[i].size() == units[pi].size())
                .min_by_key(|&i| units[i].first());
            if let Some(o) = partner {
                return Some((o, pi));
            }
        }
    }
    let mut best: Option<(usize, usize, usize)> = None;
    for (x, &i) in open.iter().enumerate() {
        for &j in &open[x + 1..] {
            if units[i].size() != units[j].size() {
                continue;
            }
            let key = units[i].size();
            let (lo, hi) = if units[i].first() < units[j].first() { (i, j) } else { (j, i) };
            let better = match best {
                None => true,
                Some((bs, bi, bj)) => {
                    (key, units[lo].first(), units[hi].first()) < (bs, units[bi].first(), units[bj].first())
                }
            };
            if better {
                best = Some((key, lo, hi));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Runs a knight hunt on `units` until no two open components share a size.
/// Returns the first question answered with an accusation.
pub fn knight_hunt(
    io: &mut dyn Interrogation,
    units: &mut Vec<Unit>,
    prefer: Option<Person>,
) -> Step<Option<Question>> {
    let mut first_accusation = None;
    while let Some((i, j)) = pick_pair(units, prefer) {
        let (q, a) = merge_units(io, units, i, j)?;
        if a.is_accuse() && first_accusation.is_none() {
            first_accusation = Some(q);
        }
    }
    Ok(first_accusation)
}

/// Sink of the largest open component.
pub fn knight_from_units(units: &[Unit]) -> Option<Person> {
    units.iter().filter(|u| !u.accusatory).max_by_key(|u| u.size()).map(|u| u.sink)
}

/// Stand-alone knight hunt over `pool` (everyone when `None`).
#[derive(Clone, Debug, Default)]
pub struct BinaryKnightHunt {
    pub pool: Option<Vec<Person>>,
    pub prefer_person_one: bool,
}

impl BinaryKnightHunt {
    fn pool(&self, params: &GameParams) -> Vec<Person> {
        self.pool.clone().unwrap_or_else(|| params.people().collect())
    }
}

impl Strategy for BinaryKnightHunt {
    fn name(&self) -> String {
        "bkh".into()
    }

    fn check(&self, params: &GameParams) -> Result<(), RunError> {
        let pool = self.pool(params);
        if pool.iter().any(|&p| p == 0 || p as usize > params.n) {
            return Err(RunError::ConfigError("pool person out of range".into()));
        }
        if pool.len() < 2 * params.s() + 1 {
            return Err(RunError::PreconditionUnmet(format!(
                "pool of {} may not have a knight majority with {} spies",
                pool.len(),
                params.s()
            )));
        }
        Ok(())
    }

    fn run(&self, io: &mut dyn Interrogation) -> Step {
        let mut units = singletons(self.pool(io.params()));
        let prefer = self.prefer_person_one.then_some(1);
        knight_hunt(io, &mut units, prefer)?;
        match knight_from_units(&units) {
            Some(w) => io.claim(Claim::KnightIs(w)),
            None => super::stuck("no open component left"),
        }
    }
}

/// Questions in a support chain through `people`, each asking the next person.
pub(crate) fn chain(io: &mut dyn Interrogation, people: &[Person]) -> Step<Option<Question>> {
    for w in people.windows(2) {
        if ask(io, w[0], w[1])?.is_accuse() {
            return Ok(Some(Question::new(w[0], w[1])));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::SpyModel;
    use crate::strategies::{run_strategy, ScriptSource, TruthSource};

    #[test]
    fn three_supports_need_one_question() {
        let params = GameParams::liar(3, 2).unwrap();
        let mut src = ScriptSource::new(vec![Answer::Support]);
        let t = run_strategy(&BinaryKnightHunt::default(), &mut src, &params).unwrap();
        assert_eq!(t.question_count(), 1);
        assert_eq!(t.claims().next().unwrap().1, Claim::KnightIs(2));
    }

    #[test]
    fn component_sizes_are_distinct_powers_of_two() {
        let params = GameParams::new(11, 6, SpyModel::Liar, false).unwrap();
        let mut src = TruthSource::new(crate::game::SpySet(0));
        let t = run_strategy(&BinaryKnightHunt::default(), &mut src, &params).unwrap();
        let g = crate::graph::QuestionGraph::from_edges(11, SpyModel::Liar, &t.edges()).unwrap();
        let mut sizes: Vec<u32> = g.components().iter().map(|c| c.count_ones()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 8]);
        assert_eq!(t.question_count(), 11 - 3);
    }

    #[test]
    fn preferred_person_stays_sink() {
        let params = GameParams::liar(7, 4).unwrap();
        let mut src = TruthSource::new(crate::game::SpySet(0));
        let s = BinaryKnightHunt { pool: None, prefer_person_one: true };
        let t = run_strategy(&s, &mut src, &params).unwrap();
        assert!(t.questions().all(|(_, q, _)| q.asker != 1));
        assert_eq!(t.claims().next().unwrap().1, Claim::KnightIs(1));
    }
}
