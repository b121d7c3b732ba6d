#![allow(dead_code)]

use cyclecover::graph::{parse_edge_list, parse_graph6, Graph};

/// Every connected bridgeless cubic simple graph on 4 to 14 vertices.
pub fn simple_corpus() -> Vec<(String, Graph)> {
    include_str!("../data/bridgeless_cubic_n4_14.g6")
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| (l.trim().to_string(), parse_graph6(l).expect("corpus line parses")))
        .collect()
}

/// Every connected bridgeless cubic multigraph with at most 16 edges,
/// simple ones included.
pub fn multi_corpus() -> Vec<(String, Graph)> {
    include_str!("../data/bridgeless_cubic_multi_m16.txt")
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| (l.to_string(), parse_edge_list(l, true).expect("corpus line parses")))
        .collect()
}

pub fn corpus() -> Vec<(String, Graph)> {
    let mut out = simple_corpus();
    out.extend(multi_corpus());
    out
}
