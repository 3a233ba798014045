//! Transcript and graph file round trips.

use spyhunt::dot::{parse_dot, transcript_to_dot};
use spyhunt::strategies::{run_strategy, BinarySpyHunt, ScriptSource};
use spyhunt::transcript::Transcript;
use spyhunt::{Answer, GameParams, QuestionGraph, SpyModel};

fn twenty_nine() -> Transcript {
    let params = GameParams::liar(29, 16).unwrap().with_spy_known(true);
    let mut answers = vec![Answer::Support; 25];
    answers.extend([Answer::Accuse, Answer::Support, Answer::Support]);
    let s = BinarySpyHunt { track_person_one: false, complete_identities: true };
    run_strategy(&s, &mut ScriptSource::new(answers), &params).unwrap()
}

#[test]
fn jsonl_round_trip() {
    let t = twenty_nine();
    let back = Transcript::from_jsonl(&t.to_jsonl()).unwrap();
    assert_eq!(back, t);
}

#[test]
fn dot_round_trip_is_a_spanning_tree() {
    let t = twenty_nine();
    let text = transcript_to_dot(&t);
    let (n, edges) = parse_dot(&text).unwrap();
    assert_eq!(n, 29);
    assert_eq!(edges, t.edges());
    assert_eq!(edges.len(), 28);
    let g = QuestionGraph::from_edges(n, SpyModel::Liar, &edges).unwrap();
    assert_eq!(g.component_count(), 1);
    assert_eq!(text.matches("style=dashed").count(), 1);
}

#[test]
fn empty_transcript_draws_isolated_people() {
    let t = Transcript::new(GameParams::liar(4, 3).unwrap());
    let (n, edges) = parse_dot(&transcript_to_dot(&t)).unwrap();
    assert_eq!((n, edges.len()), (4, 0));
}
