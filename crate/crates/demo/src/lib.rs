//! Browser bindings for the spyhunt engine. Each export returns a JSON
//! string; failures come back as `{"error": "..."}`.

use std::f64::consts::PI;
use std::fmt::Write;

use serde_json::{json, Value};
use spyhunt::formulas::value_table;
use spyhunt::game::members;
use spyhunt::solver::{majority_value, MajorityPosition};
use spyhunt::strategies::{named, run_strategy, TruthSource};
use spyhunt::transcript::{Record, Transcript};
use spyhunt::{deduce, Answer, GameParams, QuestionGraph, SpyModel, SpySet};
use wasm_bindgen::prelude::wasm_bindgen;

fn reply(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

/// Closed-form values for every pair with `3 <= n <= n_max`.
#[wasm_bindgen]
pub fn table(n_max: usize) -> String {
    reply(if (3..=64).contains(&n_max) {
        serde_json::to_value(value_table(n_max, None)).map_err(|e| e.to_string())
    } else {
        Err("n must be between 3 and 64".into())
    })
}

/// Plays `strategy` against the room whose spies are listed in `spies`
/// (for example `{2, 5}`). Returns the question log and an SVG drawing of
/// the question graph.
#[wasm_bindgen]
pub fn play(n: usize, k: usize, unconstrained: bool, spy_known: bool, strategy: &str, spies: &str) -> String {
    reply(play_inner(n, k, unconstrained, spy_known, strategy, spies))
}

fn play_inner(
    n: usize,
    k: usize,
    unconstrained: bool,
    spy_known: bool,
    strategy: &str,
    spies: &str,
) -> Result<Value, String> {
    let model = if unconstrained { SpyModel::Unconstrained } else { SpyModel::Liar };
    let params = GameParams::new(n, k, model, spy_known).map_err(|e| e.to_string())?;
    if n > 16 {
        return Err("the demo draws rooms of at most 16 people".into());
    }
    let room: SpySet = spies.parse().map_err(|e: spyhunt::GameError| e.to_string())?;
    if room.0 >> n != 0 || room.len() > params.s() || room.len() < params.min_spies() {
        return Err(format!("{room} is not a possible room: at most {} spies", params.s()));
    }
    let s = named(strategy).ok_or_else(|| format!("unknown strategy {strategy}"))?;
    let t = run_strategy(s.as_ref(), &mut TruthSource::new(room), &params).map_err(|e| e.to_string())?;
    let log: Vec<String> = t
        .records
        .iter()
        .filter_map(|r| match r {
            Record::Asked { index, question, answer } => {
                Some(format!("Q{index}: {} about {}: {answer}", question.asker, question.subject))
            }
            Record::Claimed { index, claim } => Some(format!("claim after {index}: {claim}")),
            Record::Note { .. } => None,
        })
        .collect();
    Ok(json!({ "questions": t.question_count(), "log": log, "svg": svg(&t)? }))
}

/// Optimal question count in the majority game from component weights.
#[wasm_bindgen]
pub fn majority(weights: &str, excess: usize) -> String {
    reply(majority_inner(weights, excess))
}

fn majority_inner(weights: &str, excess: usize) -> Result<Value, String> {
    let weights: Vec<usize> = weights
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| format!("bad weight `{t}`")))
        .collect::<Result<_, _>>()?;
    if weights.is_empty() || weights.len() > 24 {
        return Err("give between 1 and 24 weights".into());
    }
    let total: usize = weights.iter().sum();
    if excess == 0 || excess > total || !(total - excess).is_multiple_of(2) {
        return Err(format!("the excess must be positive, at most {total} and of the same parity"));
    }
    let v = majority_value(&MajorityPosition::new(weights, excess)).map_err(|e| e.to_string())?;
    Ok(json!({ "questions": v.questions, "components": v.components }))
}

/// People on a circle; support drawn solid, accusation dashed. Known
/// knights are filled white and known spies dark.
pub fn svg(t: &Transcript) -> Result<String, String> {
    let n = t.params.n;
    let edges = t.edges();
    let graph = QuestionGraph::from_edges(n, t.params.model, &edges).map_err(|e| e.to_string())?;
    let known = deduce(&graph, &t.params).map_err(|e| e.to_string())?;
    let (size, radius, node) = (360.0, 140.0, 16.0);
    let at = |p: u8| {
        let a = 2.0 * PI * (p as f64 - 1.0) / n as f64 - PI / 2.0;
        (size / 2.0 + radius * a.cos(), size / 2.0 + radius * a.sin())
    };
    let mut out = String::new();
    let _ = write!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {size} {size}\" width=\"{size}\" height=\"{size}\">\
         <defs><marker id=\"tip\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"7\" markerHeight=\"7\" orient=\"auto\">\
         <path d=\"M0,0 L10,5 L0,10 z\"/></marker></defs>"
    );
    for (i, (q, a)) in edges.iter().enumerate() {
        let ((x1, y1), (x2, y2)) = (at(q.asker), at(q.subject));
        let (dx, dy) = (x2 - x1, y2 - y1);
        let len = (dx * dx + dy * dy).sqrt();
        let (ux, uy) = (dx / len, dy / len);
        let dash = if *a == Answer::Accuse { " stroke-dasharray=\"6 4\"" } else { "" };
        let _ = write!(
            out,
            "<line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"black\"{dash} marker-end=\"url(#tip)\"/>\
             <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\" fill=\"#a33\">{}</text>",
            x1 + ux * node,
            y1 + uy * node,
            x2 - ux * node,
            y2 - uy * node,
            (x1 + x2) / 2.0 + 4.0,
            (y1 + y2) / 2.0 - 4.0,
            i + 1
        );
    }
    for p in members(t.params.everyone()) {
        let (x, y) = at(p);
        let (fill, ink) = if known.spies & (1 << (p - 1)) != 0 {
            ("#333", "white")
        } else if known.knights & (1 << (p - 1)) != 0 {
            ("white", "black")
        } else {
            ("#ccc", "black")
        };
        let _ = write!(
            out,
            "<circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"{node}\" fill=\"{fill}\" stroke=\"black\"/>\
             <text x=\"{x:.1}\" y=\"{:.1}\" font-size=\"13\" text-anchor=\"middle\" fill=\"{ink}\">{p}</text>",
            y + 4.5
        );
    }
    out.push_str("</svg>");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn table_rows() {
        let v = parse(table(5));
        assert_eq!(v.as_array().unwrap().len(), 4);
        assert!(parse(table(2))["error"].is_string());
    }

    #[test]
    fn play_draws_every_question() {
        let v = parse(play(9, 5, false, true, "edge", "{8}"));
        let svg = v["svg"].as_str().unwrap();
        let q = v["questions"].as_u64().unwrap() as usize;
        assert_eq!(svg.matches("<line").count(), q);
        assert_eq!(svg.matches("<circle").count(), 9);
        assert!(v["log"].as_array().unwrap().iter().any(|l| l.as_str().unwrap().contains("spy 8")));
    }

    #[test]
    fn play_rejects_bad_rooms() {
        assert!(parse(play(5, 3, false, false, "bsh", "{1,2,3}"))["error"].is_string());
        assert!(parse(play(5, 3, false, false, "nope", "{}"))["error"].is_string());
    }

    #[test]
    fn majority_of_nine_ones() {
        let v = parse(majority("1,1,1,1,1,1,1,1,1", 1));
        assert_eq!(v["questions"], 7);
        assert!(parse(majority("1,1", 1))["error"].is_string());
    }
}
