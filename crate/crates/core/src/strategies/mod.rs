//! Interrogation strategies.
//!
//! A strategy is written in direct style against [`Interrogation`]: it asks
//! questions, reads answers and announces claims. The same code runs live
//! against an [`AnswerSource`] and under exhaustive exploration of every
//! consistent answer sequence (see [`crate::adversary::worst_case`]).

mod bkh;
mod bsh;
mod edge;
mod mbkh;
mod skh;
mod spider;

use crate::error::{GameError, RunError};
use crate::game::{lowest, Answer, GameParams, Person, Question, SpySet};
use crate::graph::QuestionGraph;
use crate::knowledge::{deduce, Claim, Deduction, Objective};
use crate::transcript::{Record, Transcript};

pub use bkh::{knight_from_units, knight_hunt, BinaryKnightHunt, Unit};
pub use bsh::BinarySpyHunt;
pub use edge::{nine_person_line, EdgeCaseStrategy};
pub use mbkh::ModifiedKnightHunt;
pub use skh::{switching_knight_hunt, SwitchOutcome, SwitchingKnightHunt};
pub use spider::ExtendedSpider;

/// Why a strategy stopped early.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Halt {
    /// The explorer reached an unanswered question.
    Branch,
    Fail(RunError),
}

impl From<RunError> for Halt {
    fn from(e: RunError) -> Self {
        Halt::Fail(e)
    }
}

impl From<GameError> for Halt {
    fn from(e: GameError) -> Self {
        Halt::Fail(RunError::Game(e))
    }
}

pub type Step<T = ()> = Result<T, Halt>;

pub trait Interrogation {
    fn params(&self) -> &GameParams;
    fn graph(&self) -> &QuestionGraph;
    fn ask(&mut self, q: Question) -> Step<Answer>;
    /// Records a claim; fails if the answers so far do not force it.
    fn claim(&mut self, claim: Claim) -> Step;
    fn deduction(&mut self) -> Step<Deduction>;
    fn note(&mut self, _label: &str) {}

    fn asked(&self) -> usize {
        self.graph().len()
    }
}

pub trait Strategy: Sync {
    fn name(&self) -> String;
    /// Rejects parameters the strategy is not designed for.
    fn check(&self, params: &GameParams) -> Result<(), RunError>;
    fn run(&self, io: &mut dyn Interrogation) -> Step;
}

/// Supplies answers during a live game.
pub trait AnswerSource {
    fn answer(&mut self, graph: &QuestionGraph, params: &GameParams, q: Question) -> Result<Answer, RunError>;
}

/// Answers as a fixed room would. Spies lie; under the unconstrained model
/// `spy_lies = false` makes them truthful instead.
#[derive(Clone, Debug)]
pub struct TruthSource {
    pub spies: SpySet,
    pub spy_lies: bool,
}

impl TruthSource {
    pub fn new(spies: SpySet) -> Self {
        TruthSource { spies, spy_lies: true }
    }
}

impl AnswerSource for TruthSource {
    fn answer(&mut self, _: &QuestionGraph, params: &GameParams, q: Question) -> Result<Answer, RunError> {
        let lies = self.spy_lies || params.model == crate::game::SpyModel::Liar;
        Ok(crate::adversary::ground_truth_answer(self.spies, q, lies))
    }
}

/// Replays a fixed answer list.
#[derive(Clone, Debug)]
pub struct ScriptSource {
    answers: Vec<Answer>,
    pos: usize,
}

impl ScriptSource {
    pub fn new(answers: Vec<Answer>) -> Self {
        ScriptSource { answers, pos: 0 }
    }
}

impl AnswerSource for ScriptSource {
    fn answer(&mut self, _: &QuestionGraph, _: &GameParams, _: Question) -> Result<Answer, RunError> {
        let a = self.answers.get(self.pos).copied().ok_or(RunError::SourceExhausted(self.pos + 1))?;
        self.pos += 1;
        Ok(a)
    }
}

pub(crate) struct LiveIo<'a> {
    params: GameParams,
    graph: QuestionGraph,
    source: &'a mut dyn AnswerSource,
    records: Vec<Record>,
    cached: Option<Deduction>,
    /// Stop with [`Halt::Branch`] when asked a question once this many have
    /// been answered.
    frontier: Option<usize>,
    pub pending: Option<Question>,
}

impl<'a> LiveIo<'a> {
    pub fn new(params: &GameParams, source: &'a mut dyn AnswerSource, frontier: Option<usize>) -> Self {
        LiveIo {
            params: *params,
            graph: QuestionGraph::new(params.n, params.model),
            source,
            records: Vec::new(),
            cached: None,
            frontier,
            pending: None,
        }
    }

    pub fn into_transcript(self) -> Transcript {
        Transcript { params: self.params, records: self.records }
    }
}

impl Interrogation for LiveIo<'_> {
    fn params(&self) -> &GameParams {
        &self.params
    }

    fn graph(&self) -> &QuestionGraph {
        &self.graph
    }

    fn ask(&mut self, q: Question) -> Step<Answer> {
        self.graph.check_question(q)?;
        if self.frontier == Some(self.graph.len()) {
            self.pending = Some(q);
            return Err(Halt::Branch);
        }
        let a = self.source.answer(&self.graph, &self.params, q)?;
        let next = match self.graph.with_answer(q, a) {
            Ok(g) => g,
            Err(GameError::ContradictoryAnswer(_)) => return Err(RunError::AdversaryInconsistent(q).into()),
            Err(e) => return Err(e.into()),
        };
        let d = match deduce(&next, &self.params) {
            Ok(d) => d,
            Err(GameError::EmptyConsistentSet) => return Err(RunError::AdversaryInconsistent(q).into()),
            Err(e) => return Err(e.into()),
        };
        self.graph = next;
        self.cached = Some(d);
        self.records.push(Record::Asked { index: self.graph.len(), question: q, answer: a });
        Ok(a)
    }

    fn claim(&mut self, claim: Claim) -> Step {
        let d = self.deduction()?;
        if !d.holds(&claim) {
            return Err(RunError::InvalidClaim { claim: claim.to_string(), index: self.graph.len() }.into());
        }
        if self.records.iter().any(|r| matches!(r, Record::Claimed { claim: c, .. } if *c == claim)) {
            return Ok(());
        }
        self.records.push(Record::Claimed { index: self.graph.len(), claim });
        Ok(())
    }

    fn deduction(&mut self) -> Step<Deduction> {
        if let Some(d) = self.cached {
            return Ok(d);
        }
        let d = deduce(&self.graph, &self.params)?;
        self.cached = Some(d);
        Ok(d)
    }

    fn note(&mut self, label: &str) {
        self.records.push(Record::Note { index: self.graph.len(), label: label.to_string() });
    }
}

/// Plays `strategy` against `source` and returns the transcript.
pub fn run_strategy(
    strategy: &dyn Strategy,
    source: &mut dyn AnswerSource,
    params: &GameParams,
) -> Result<Transcript, RunError> {
    strategy.check(params)?;
    let mut io = LiveIo::new(params, source, None);
    match strategy.run(&mut io) {
        Ok(()) => Ok(io.into_transcript()),
        Err(Halt::Fail(e)) => Err(e),
        Err(Halt::Branch) => Err(RunError::StrategyStuck("unexpected branch halt".into())),
    }
}

pub(crate) fn ask(io: &mut dyn Interrogation, asker: Person, subject: Person) -> Step<Answer> {
    io.ask(Question::new(asker, subject))
}

pub(crate) fn stuck<T>(msg: impl Into<String>) -> Step<T> {
    Err(Halt::Fail(RunError::StrategyStuck(msg.into())))
}

/// Claims each tracked objective as soon as the answers force it.
pub(crate) struct Announcer {
    pending: Vec<Objective>,
}

impl Announcer {
    pub fn new(objectives: &[Objective]) -> Self {
        Announcer { pending: objectives.to_vec() }
    }

    pub fn update(&mut self, io: &mut dyn Interrogation) -> Step {
        if self.pending.is_empty() {
            return Ok(());
        }
        let d = io.deduction()?;
        while let Some(c) = self.pending.iter().find_map(|&o| d.witness(o)) {
            io.claim(c)?;
            self.claimed(c);
        }
        Ok(())
    }

    /// Marks objectives satisfied by an explicit claim.
    pub fn claimed(&mut self, claim: Claim) {
        self.pending.retain(|o| !claim.satisfies(*o));
    }
}

/// Wraps an interrogation so that tracked objectives are claimed right after
/// the question that settles them.
pub(crate) struct Announcing<'a> {
    inner: &'a mut dyn Interrogation,
    ann: Announcer,
}

impl<'a> Announcing<'a> {
    pub fn new(inner: &'a mut dyn Interrogation, objectives: &[Objective]) -> Step<Self> {
        let mut ann = Announcer::new(objectives);
        ann.update(inner)?;
        Ok(Announcing { inner, ann })
    }
}

impl Interrogation for Announcing<'_> {
    fn params(&self) -> &GameParams {
        self.inner.params()
    }

    fn graph(&self) -> &QuestionGraph {
        self.inner.graph()
    }

    fn ask(&mut self, q: Question) -> Step<Answer> {
        let a = self.inner.ask(q)?;
        self.ann.update(self.inner)?;
        Ok(a)
    }

    fn claim(&mut self, claim: Claim) -> Step {
        self.inner.claim(claim)?;
        self.ann.claimed(claim);
        Ok(())
    }

    fn deduction(&mut self) -> Step<Deduction> {
        self.inner.deduction()
    }

    fn note(&mut self, label: &str) {
        self.inner.note(label)
    }
}

/// Objectives about spies for the given parameters.
pub(crate) fn spy_objective(params: &GameParams) -> Objective {
    if params.spy_known {
        Objective::FindSpy
    } else {
        Objective::FindSpyOrAllKnights
    }
}

/// Whether the spy objective has been met.
pub(crate) fn spy_found(io: &mut dyn Interrogation) -> Step<bool> {
    let d = io.deduction()?;
    let all = io.params().everyone();
    Ok(d.spies != 0 || d.knights == all)
}

/// With a knight `w` known, asks `w` about one member of every component whose
/// identities are still open until everyone is identified. Each question joins
/// two components, so a forest stays a forest.
pub(crate) fn complete_identities(io: &mut dyn Interrogation, w: Person) -> Step {
    loop {
        let d = io.deduction()?;
        if d.all_known() {
            return Ok(());
        }
        let open = io.params().everyone() & !d.known() & !io.graph().component(w);
        let Some(target) = lowest(open) else {
            return stuck("identities open but no component left to join");
        };
        ask(io, w, target)?;
    }
}

pub(crate) fn singletons(people: impl IntoIterator<Item = Person>) -> Vec<Unit> {
    people.into_iter().map(Unit::single).collect()
}

/// The liar combined strategy: binary spy hunt when `n >= 2(s + 1)`, the
/// edge-case strategy otherwise, both tracking Person 1 and finishing with
/// every identity.
#[derive(Clone, Copy, Debug, Default)]
pub struct LiarCombined;

impl LiarCombined {
    fn pick(params: &GameParams) -> Box<dyn Strategy> {
        if params.n >= 2 * (params.s() + 1) {
            Box::new(BinarySpyHunt { track_person_one: true, complete_identities: true })
        } else {
            Box::new(EdgeCaseStrategy { track_person_one: true, complete_identities: true })
        }
    }
}

impl Strategy for LiarCombined {
    fn name(&self) -> String {
        "combined".into()
    }

    fn check(&self, params: &GameParams) -> Result<(), RunError> {
        Self::pick(params).check(params)
    }

    fn run(&self, io: &mut dyn Interrogation) -> Step {
        let params = *io.params();
        Self::pick(&params).run(io)
    }
}

/// Strategy names accepted by [`named`].
pub const STRATEGY_NAMES: &[&str] = &["bkh", "bsh", "edge", "figure2", "combined", "spider", "mbkh"];

/// Looks a strategy up by name.
pub fn named(name: &str) -> Option<Box<dyn Strategy>> {
    Some(match name {
        "bkh" => Box::new(BinaryKnightHunt::default()),
        "bsh" => Box::new(BinarySpyHunt::default()),
        "edge" | "figure2" => Box::new(EdgeCaseStrategy::default()),
        "combined" => Box::new(LiarCombined),
        "spider" => Box::new(ExtendedSpider::default()),
        "mbkh" => Box::new(ModifiedKnightHunt),
        _ => return None,
    })
}
