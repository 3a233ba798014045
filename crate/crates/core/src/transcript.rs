//! Game transcripts and their line-delimited JSON form.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::GameError;
use crate::game::{Answer, GameParams, Identity, Person, Question, SpySet};
use crate::knowledge::Claim;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Record {
    Asked {
        index: usize,
        question: Question,
        answer: Answer,
    },
    /// `index` is the number of questions asked when the claim was made.
    Claimed {
        index: usize,
        claim: Claim,
    },
    /// Strategy bookkeeping, such as the end of a phase.
    Note {
        index: usize,
        label: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript {
    pub params: GameParams,
    pub records: Vec<Record>,
}

impl Transcript {
    pub fn new(params: GameParams) -> Self {
        Transcript { params, records: Vec::new() }
    }

    pub fn questions(&self) -> impl Iterator<Item = (usize, Question, Answer)> + '_ {
        self.records.iter().filter_map(|r| match *r {
            Record::Asked { index, question, answer } => Some((index, question, answer)),
            _ => None,
        })
    }

    pub fn edges(&self) -> Vec<(Question, Answer)> {
        self.questions().map(|(_, q, a)| (q, a)).collect()
    }

    pub fn answers(&self) -> Vec<Answer> {
        self.questions().map(|(_, _, a)| a).collect()
    }

    pub fn claims(&self) -> impl Iterator<Item = (usize, Claim)> + '_ {
        self.records.iter().filter_map(|r| match *r {
            Record::Claimed { index, claim } => Some((index, claim)),
            _ => None,
        })
    }

    pub fn question_count(&self) -> usize {
        self.questions().count()
    }

    /// Index of the first claim satisfying `objective`.
    pub fn first_claim_for(&self, objective: crate::knowledge::Objective) -> Option<usize> {
        self.claims().find(|(_, c)| c.satisfies(objective)).map(|(i, _)| i)
    }

    pub fn note_index(&self, label: &str) -> Option<usize> {
        self.records.iter().find_map(|r| match r {
            Record::Note { index, label: l } if l == label => Some(*index),
            _ => None,
        })
    }

    pub fn write_jsonl<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{}", serde_json::to_string(&Line::Header(self.params)).unwrap())?;
        for r in &self.records {
            let line = Line::from_record(r);
            writeln!(w, "{}", serde_json::to_string(&line).unwrap())?;
        }
        Ok(())
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    pub fn read_jsonl<R: BufRead>(r: R) -> Result<Self, GameError> {
        let mut params = None;
        let mut records = Vec::new();
        for (i, line) in r.lines().enumerate() {
            let line = line.map_err(|e| GameError::Parse(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let parsed: Line =
                serde_json::from_str(&line).map_err(|e| GameError::Parse(format!("line {}: {e}", i + 1)))?;
            match parsed {
                Line::Header(p) => params = Some(p),
                other => records.push(other.into_record()?),
            }
        }
        let params = params.ok_or_else(|| GameError::Parse("missing header line".into()))?;
        Ok(Transcript { params, records })
    }

    pub fn from_jsonl(s: &str) -> Result<Self, GameError> {
        Self::read_jsonl(s.as_bytes())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum ClaimKind {
    Knight,
    Spy,
    AllKnights,
    Person,
    Assignment,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Line {
    Header(GameParams),
    Asked {
        index: usize,
        asker: Person,
        subject: Person,
        answer: Answer,
    },
    Claimed {
        index: usize,
        claim: ClaimKind,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        person: Option<Person>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        identity: Option<Identity>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        spies: Option<Vec<Person>>,
    },
    Note {
        index: usize,
        note: String,
    },
}

impl Line {
    fn from_record(r: &Record) -> Line {
        match r {
            Record::Asked { index, question, answer } => {
                Line::Asked { index: *index, asker: question.asker, subject: question.subject, answer: *answer }
            }
            Record::Note { index, label } => Line::Note { index: *index, note: label.clone() },
            Record::Claimed { index, claim } => {
                let (kind, person, identity, spies) = match *claim {
                    Claim::KnightIs(p) => (ClaimKind::Knight, Some(p), Some(Identity::Knight), None),
                    Claim::SpyIs(p) => (ClaimKind::Spy, Some(p), Some(Identity::Spy), None),
                    Claim::AllKnights => (ClaimKind::AllKnights, None, None, None),
                    Claim::PersonIs(p, id) => (ClaimKind::Person, Some(p), Some(id), None),
                    Claim::FullAssignment(s) => {
                        (ClaimKind::Assignment, None, None, Some(crate::game::members(s.0).collect()))
                    }
                };
                Line::Claimed { index: *index, claim: kind, person, identity, spies }
            }
        }
    }

    fn into_record(self) -> Result<Record, GameError> {
        let missing = |what: &str| GameError::Parse(format!("claim record missing {what}"));
        Ok(match self {
            Line::Header(_) => unreachable!(),
            Line::Asked { index, asker, subject, answer } => {
                Record::Asked { index, question: Question::new(asker, subject), answer }
            }
            Line::Note { index, note } => Record::Note { index, label: note },
            Line::Claimed { index, claim, person, identity, spies } => {
                let claim = match claim {
                    ClaimKind::Knight => Claim::KnightIs(person.ok_or_else(|| missing("person"))?),
                    ClaimKind::Spy => Claim::SpyIs(person.ok_or_else(|| missing("person"))?),
                    ClaimKind::AllKnights => Claim::AllKnights,
                    ClaimKind::Person => Claim::PersonIs(
                        person.ok_or_else(|| missing("person"))?,
                        identity.ok_or_else(|| missing("identity"))?,
                    ),
                    ClaimKind::Assignment => {
                        let spies = spies.ok_or_else(|| missing("spies"))?;
                        Claim::FullAssignment(SpySet(spies.iter().fold(0, |m, &p| m | crate::game::bit(p))))
                    }
                };
                Record::Claimed { index, claim }
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::SpyModel;

    #[test]
    fn jsonl_round_trip() {
        let params = GameParams::new(5, 3, SpyModel::Liar, true).unwrap();
        let mut t = Transcript::new(params);
        t.records.push(Record::Asked { index: 1, question: Question::new(1, 2), answer: Answer::Accuse });
        t.records.push(Record::Note { index: 1, label: "phase-1".into() });
        t.records.push(Record::Claimed { index: 1, claim: Claim::KnightIs(3) });
        t.records.push(Record::Claimed { index: 1, claim: Claim::PersonIs(1, Identity::Spy) });
        t.records.push(Record::Claimed { index: 1, claim: Claim::FullAssignment(SpySet(0b10)) });
        t.records.push(Record::Claimed { index: 1, claim: Claim::AllKnights });
        let text = t.to_jsonl();
        assert!(text.lines().nth(1).unwrap().contains("\"asker\":1"));
        assert_eq!(Transcript::from_jsonl(&text).unwrap(), t);
    }
}
