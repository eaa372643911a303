use fodepth::harness::{
    corpus_build, run_criterion, strip_timing, succinctness_survey, to_sorted_json, Check, RunReport, CRITERIA,
};
use fodepth::GraphData;
use serde_json::{json, Value};
use std::fs;
use std::path::PathBuf;

fn scratch(name: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("fodepth-harness-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&p);
    fs::create_dir_all(&p).unwrap();
    p
}

#[test]
fn reports_have_sorted_keys_and_strip_timing() {
    let r = RunReport::new(
        "x",
        json!({"z": 1, "a": 2}),
        json!({"b": [{"wall_time_ms": 4, "k": 1}]}),
        vec![Check::new("one", true), Check::new("two", false)],
    )
    .with_wall_time(17);
    assert!(!r.passed);
    let text = r.to_json();
    assert!(text.ends_with('\n'));
    assert!(text.find("\"a\"").unwrap() < text.find("\"z\"").unwrap());
    let mut v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["wall_time_ms"], 17);
    strip_timing(&mut v);
    assert!(v.get("wall_time_ms").is_none());
    assert_eq!(v["results"]["b"][0], json!({"k": 1}));
    assert_eq!(
        to_sorted_json(&json!({"b": 1, "a": 2})),
        "{\n  \"a\": 2,\n  \"b\": 1\n}\n"
    );
}

#[test]
fn corpus_files_parse_back() {
    let dir = scratch("corpus");
    let m = corpus_build(5, &dir).unwrap();
    let counts: Vec<usize> = m.counts.iter().map(|c| c.count).collect();
    assert_eq!(counts, [1, 2, 4, 11, 34]);
    assert_eq!(m.total, 52);
    assert_eq!(m.files.len(), 52);
    let graphs: Vec<GraphData> = m
        .files
        .iter()
        .map(|f| GraphData::parse_any(&fs::read_to_string(dir.join(f)).unwrap()).unwrap())
        .collect();
    for (i, g) in graphs.iter().enumerate() {
        for h in &graphs[i + 1..] {
            assert!(!fodepth::graph::is_isomorphic(g, h));
        }
    }
    assert!(corpus_build(0, &dir).is_err());
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn survey_routes() {
    let t = succinctness_survey(10, 10, 5, 1).unwrap();
    assert_eq!(
        (t.route.as_str(), t.upper_certificate, t.graph_order),
        ("trivial", 11, 10)
    );
    let c = succinctness_survey(21, 10, 5, 1).unwrap();
    assert_eq!(c.route, "construction");
    assert_eq!(c.graph_order, 21);
    assert!(c.upper_certificate <= 26);
    assert_eq!(c.within_log_star_bound, Some(true));
    if let Some(lower) = c.lower_estimate {
        assert!(lower <= c.upper_certificate);
    }
}

#[test]
fn criteria_are_deterministic() {
    assert_eq!(CRITERIA.len(), 12);
    let run = || {
        let mut v = serde_json::to_value(run_criterion(1, 7).unwrap()).unwrap();
        strip_timing(&mut v);
        v
    };
    let a = run();
    assert_eq!(a, run());
    assert_eq!(a["passed"], true);
    assert!(run_criterion(13, 7).is_err());
}
