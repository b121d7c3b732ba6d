mod common;

use cyclecover::cuts::is_cyclically_4_edge_connected;
use cyclecover::pipeline::{run, Options};

#[test]
fn corpus_sizes() {
    let mut by_n = [0usize; 15];
    for (_, g) in common::simple_corpus() {
        by_n[g.vertex_count()] += 1;
    }
    assert_eq!([by_n[4], by_n[6], by_n[8], by_n[10], by_n[12], by_n[14]], [1, 2, 5, 18, 81, 480]);
    assert_eq!(common::multi_corpus().len(), 90);
}

#[test]
fn pipeline_passes_on_the_corpus() {
    let mut failures = Vec::new();
    for (name, g) in common::corpus() {
        match run(&name, &g, &Options::default()) {
            Ok(out) if out.report.passed() => {
                assert!(out.covers.best.cycles.len() <= 3);
                assert_eq!(out.report.bounds.cyclic4.is_some(), is_cyclically_4_edge_connected(&g));
            }
            Ok(out) => failures.push(format!("{name}: {:?}", out.report.failures)),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    assert!(failures.is_empty(), "{} failures: {:#?}", failures.len(), &failures[..failures.len().min(8)]);
}

#[test]
fn reports_are_deterministic() {
    for (name, g) in common::simple_corpus().into_iter().step_by(37) {
        let a = run(&name, &g, &Options::default()).unwrap().report;
        let b = run(&name, &g, &Options::default()).unwrap().report;
        assert_eq!(a, b, "{name}");
    }
}
