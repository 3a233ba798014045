//! Adversaries for `play` and transcript rendering.

use std::fmt::Write as _;
use std::io::{self, BufRead, Write};

use anyhow::{anyhow, bail, Context};
use spyhunt::adversary::{
    DeadlineBlocker, LiarLowerBound, MajorityLowerBound, Policy, PolicySource, UnconstrainedLowerBound,
};
use spyhunt::strategies::{nine_person_line, AnswerSource, ScriptSource, TruthSource};
use spyhunt::transcript::{Record, Transcript};
use spyhunt::{deduce, Answer, GameError, GameParams, Question, QuestionGraph, RunError, SpySet};

pub const POLICY_NAMES: &[&str] =
    &["liar-lower-bound", "majority-lower-bound", "unconstrained-lower-bound", "deadline-blocker"];

fn policy<P: Policy + 'static>(p: P, params: &GameParams) -> anyhow::Result<Box<dyn AnswerSource>> {
    p.check(params).map_err(|e| anyhow!("adversary {}: {e}", p.name()))?;
    Ok(Box::new(PolicySource(p)))
}

/// Parses an adversary id.
pub fn adversary(id: &str, params: &GameParams) -> anyhow::Result<Box<dyn AnswerSource>> {
    if id == "human" {
        return Ok(Box::new(Human::new(io::stdin().lock(), io::stderr())));
    }
    if let Some(spies) = id.strip_prefix("truth:") {
        let spies: SpySet = spies.parse().with_context(|| format!("bad spy set `{spies}`"))?;
        if spies.0 >> params.n != 0 || spies.len() > params.s() || spies.len() < params.min_spies() {
            bail!("spy set {spies} is not a possible room for {params}");
        }
        return Ok(Box::new(TruthSource::new(spies)));
    }
    if let Some(script) = id.strip_prefix("script:") {
        let answers = if script == "figure2" {
            let mut a: Vec<Answer> = nine_person_line().iter().filter_map(|r| r.1).collect();
            a.push(Answer::Support);
            a
        } else {
            script
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(str::parse)
                .collect::<Result<_, _>>()?
        };
        return Ok(Box::new(ScriptSource::new(answers)));
    }
    match id {
        "liar-lower-bound" => policy(LiarLowerBound, params),
        "majority-lower-bound" => policy(MajorityLowerBound, params),
        "unconstrained-lower-bound" => policy(UnconstrainedLowerBound, params),
        "deadline-blocker" => policy(DeadlineBlocker::default(), params),
        _ => bail!(
            "unknown adversary `{id}`; expected truth:{{..}}, script:<answers>, script:figure2, human or one of {}",
            POLICY_NAMES.join(", ")
        ),
    }
}

/// Answers typed by a person. Answers that no room could give are refused
/// with the reason.
pub struct Human<R, W> {
    input: R,
    prompt: W,
}

impl<R: BufRead, W: Write> Human<R, W> {
    pub fn new(input: R, prompt: W) -> Self {
        Human { input, prompt }
    }
}

/// Why `a` cannot be the answer to `q`, if it cannot.
pub fn refusal(graph: &QuestionGraph, params: &GameParams, q: Question, a: Answer) -> Option<String> {
    match graph.with_answer(q, a) {
        Err(GameError::ContradictoryAnswer(_)) => {
            let rel =
                if graph.same_class(q.asker, q.subject) == Some(true) { "the same side" } else { "opposite sides" };
            Some(format!("earlier answers put {} and {} on {rel}, and spies always lie", q.asker, q.subject))
        }
        Err(e) => Some(e.to_string()),
        Ok(g) => match deduce(&g, params) {
            Err(GameError::EmptyConsistentSet) => {
                let floor = if params.spy_known { " and at least one spy" } else { "" };
                Some(format!("no room with at most {} spies{floor} gives all these answers", params.s()))
            }
            Err(e) => Some(e.to_string()),
            Ok(_) => None,
        },
    }
}

impl<R: BufRead, W: Write> AnswerSource for Human<R, W> {
    fn answer(&mut self, graph: &QuestionGraph, params: &GameParams, q: Question) -> Result<Answer, RunError> {
        let index = graph.len() + 1;
        loop {
            let _ = write!(
                self.prompt,
                "Q{index}: Person {}, is Person {} a spy? [s]upport / [a]ccuse: ",
                q.asker, q.subject
            );
            let _ = self.prompt.flush();
            let mut line = String::new();
            match self.input.read_line(&mut line) {
                Ok(0) | Err(_) => return Err(RunError::SourceExhausted(index)),
                Ok(_) => {}
            }
            let a: Answer = match line.parse() {
                Ok(a) => a,
                Err(_) => {
                    let _ = writeln!(self.prompt, "please type s or a");
                    continue;
                }
            };
            match refusal(graph, params, q, a) {
                Some(why) => {
                    let _ = writeln!(self.prompt, "refused: {why}");
                }
                None => return Ok(a),
            }
        }
    }
}

/// One line per question and claim.
pub fn render(t: &Transcript) -> String {
    let mut out = String::new();
    for r in &t.records {
        let _ = match r {
            Record::Asked { index, question, answer } => {
                writeln!(out, "Q{index:<3} {} -> {}  {answer}", question.asker, question.subject)
            }
            Record::Claimed { index, claim } => writeln!(out, "     claim {claim} after {index} questions"),
            Record::Note { .. } => Ok(()),
        };
    }
    let _ = writeln!(out, "{} questions", t.question_count());
    out
}
