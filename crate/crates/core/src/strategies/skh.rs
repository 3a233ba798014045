//! Switching knight hunt.
//!
//! Two chains of representatives `p_1..p_d` and `p'_2..p'_d` of components
//! whose sizes grow faster than their partial sums. The hunt walks up one
//! chain and switches to the other after each accusation.

use crate::error::RunError;
use crate::game::{GameParams, Person};
use crate::knowledge::Claim;

use super::bkh::chain;
use super::{ask, Interrogation, Step, Strategy};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SwitchOutcome {
    pub knight: Person,
    /// The person who made the first accusation, if any.
    pub accuser: Option<Person>,
    pub switches: usize,
}

/// Runs the hunt from `b = 1` on the first chain. `alt[i]` is `p'_{i+2}`.
pub fn switching_knight_hunt(io: &mut dyn Interrogation, chain: &[Person], alt: &[Person]) -> Step<SwitchOutcome> {
    let d = chain.len();
    assert_eq!(alt.len() + 1, d, "second chain must start at index 2");
    let rep = |first: bool, i: usize| if first { chain[i - 1] } else { alt[i - 2] };
    let (mut b, mut first, mut accuser, mut switches) = (1, true, None, 0);
    'outer: loop {
        if b == d {
            break;
        }
        for j in b + 1..=d {
            let (x, y) = (rep(first, j), rep(first, j - 1));
            if ask(io, x, y)?.is_accuse() {
                accuser.get_or_insert(x);
                b = j;
                first = !first;
                switches += 1;
                continue 'outer;
            }
        }
        break;
    }
    Ok(SwitchOutcome { knight: rep(first, d), accuser, switches })
}

/// Stand-alone hunt: builds components of sizes `2^a_1 < ... < 2^a_d` in the
/// first group and `1, 2, ..., 2^(a_1 - 1), 2^a_2, ..., 2^a_d` in the second
/// by support chains, then runs the switching hunt.
#[derive(Clone, Debug)]
pub struct SwitchingKnightHunt {
    pub exponents: Vec<u32>,
}

impl SwitchingKnightHunt {
    fn layout(&self) -> (Vec<Vec<Person>>, Vec<Vec<Person>>, usize) {
        let mut next: Person = 1;
        let mut take = |size: usize| {
            let v: Vec<Person> = (next..next + size as Person).collect();
            next += size as Person;
            v
        };
        let first: Vec<_> = self.exponents.iter().map(|&a| take(1 << a)).collect();
        let mut second: Vec<_> = (0..self.exponents[0]).map(|a| take(1 << a)).collect();
        second.extend(self.exponents[1..].iter().map(|&a| take(1 << a)));
        (first, second, next as usize - 1)
    }
}

impl Strategy for SwitchingKnightHunt {
    fn name(&self) -> String {
        "skh".into()
    }

    fn check(&self, params: &GameParams) -> Result<(), RunError> {
        if self.exponents.is_empty() || self.exponents.windows(2).any(|w| w[0] >= w[1]) {
            return Err(RunError::ConfigError("exponents must be strictly increasing".into()));
        }
        let (_, _, used) = self.layout();
        if used > params.n || used < 2 * params.s() + 1 {
            return Err(RunError::PreconditionUnmet(format!(
                "hunt uses {used} people; need {}..={}",
                2 * params.s() + 1,
                params.n
            )));
        }
        Ok(())
    }

    fn run(&self, io: &mut dyn Interrogation) -> Step {
        let (first, second, _) = self.layout();
        for group in first.iter().chain(&second) {
            if chain(io, group)?.is_some() {
                return Err(RunError::PreconditionUnmet("accusation while building components".into()).into());
            }
        }
        let reps: Vec<Person> = first.iter().map(|g| *g.last().unwrap()).collect();
        let skip = self.exponents[0] as usize;
        let alt: Vec<Person> = second[skip..].iter().map(|g| *g.last().unwrap()).collect();
        let out = switching_knight_hunt(io, &reps, &alt)?;
        io.note("knight-found");
        io.claim(Claim::KnightIs(out.knight))
    }
}
