//! Graphviz export of question graphs.
//!
//! Support is drawn as a solid arrow and accusation as a dashed one. Edge
//! labels give the question number.

use std::fmt::Write;

use crate::error::GameError;
use crate::game::{Answer, Person, Question};
use crate::transcript::Transcript;

pub fn edges_to_dot(n: usize, edges: &[(Question, Answer)]) -> String {
    let mut out = String::from("digraph questions {\n  node [shape=circle];\n");
    for p in 1..=n {
        let _ = writeln!(out, "  {p};");
    }
    for (i, (q, a)) in edges.iter().enumerate() {
        let style = match a {
            Answer::Support => "solid",
            Answer::Accuse => "dashed",
        };
        let _ = writeln!(out, "  {} -> {} [label=\"{}\", style={style}];", q.asker, q.subject, i + 1);
    }
    out.push_str("}\n");
    out
}

pub fn transcript_to_dot(t: &Transcript) -> String {
    edges_to_dot(t.params.n, &t.edges())
}

/// Reads back a graph written by [`edges_to_dot`]: the vertex count and the
/// edges in label order.
pub fn parse_dot(text: &str) -> Result<(usize, Vec<(Question, Answer)>), GameError> {
    let bad = |line: &str| GameError::Parse(format!("unrecognised dot line: {line}"));
    let mut n = 0;
    let mut edges: Vec<(usize, Question, Answer)> = Vec::new();
    for raw in text.lines() {
        let line = raw.trim().trim_end_matches(';').trim();
        if line.is_empty() || line.starts_with("digraph") || line == "}" || line.starts_with("node ") {
            continue;
        }
        let Some((head, attrs)) = line.split_once('[') else {
            let p: usize = line.parse().map_err(|_| bad(raw))?;
            n = n.max(p);
            continue;
        };
        let (x, y) = head.split_once("->").ok_or_else(|| bad(raw))?;
        let x: Person = x.trim().parse().map_err(|_| bad(raw))?;
        let y: Person = y.trim().parse().map_err(|_| bad(raw))?;
        let attrs = attrs.trim_end_matches(']');
        let mut label = None;
        let mut answer = Answer::Support;
        for kv in attrs.split(',') {
            let Some((key, value)) = kv.split_once('=') else {
                continue;
            };
            let value = value.trim().trim_matches('"');
            match key.trim() {
                "label" => label = Some(value.parse::<usize>().map_err(|_| bad(raw))?),
                "style" if value == "dashed" => answer = Answer::Accuse,
                _ => {}
            }
        }
        let label = label.ok_or_else(|| bad(raw))?;
        n = n.max(x as usize).max(y as usize);
        edges.push((label, Question::new(x, y), answer));
    }
    edges.sort_by_key(|e| e.0);
    for (i, e) in edges.iter().enumerate() {
        if e.0 != i + 1 {
            return Err(GameError::Parse(format!("edge labels skip question {}", i + 1)));
        }
    }
    Ok((n, edges.into_iter().map(|(_, q, a)| (q, a)).collect()))
}
