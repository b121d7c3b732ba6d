//! Batch runner: reads graphs, runs the cover pipeline on each, prints one
//! record per graph and a closing summary.
//!
//! Exit status: 0 when every graph passed every audit and bound, 1 when
//! some audit or bound failed, 2 when some input was unreadable or not a
//! connected bridgeless cubic graph.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use cyclecover::graph::{parse_edge_list, parse_graph6};
use cyclecover::pipeline::{frac, run, Options, Report};
use cyclecover::{Error, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Graph6,
    Edgelist,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportKind {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "cyclecover", version, about = "Short 3-cycle covers of bridgeless cubic graphs")]
struct Args {
    /// Input file; may be repeated. `-` reads standard input.
    #[arg(long = "in", value_name = "PATH", required = true)]
    inputs: Vec<String>,
    /// graph6: one graph per line. edgelist: `u v` records separated by
    /// newlines or commas; blank lines separate graphs, and inside a block
    /// where every line has a comma each line is its own graph.
    #[arg(long, value_enum, default_value = "graph6")]
    format: Format,
    #[arg(long, value_enum, default_value = "json")]
    report: ReportKind,
    /// Also compute the exact shortest cover where the edge cap allows.
    #[arg(long)]
    oracle: bool,
    #[arg(long, default_value_t = 16)]
    max_oracle_edges: usize,
    /// Print every local flow step to standard error.
    #[arg(long)]
    trace: bool,
    /// The pipeline never uses randomness; accepted for explicitness.
    #[arg(long)]
    seedless: bool,
}

/// Splits an input into `(label, text)` records, one per graph.
fn split(path: &str, text: &str, format: Format) -> Vec<(String, String)> {
    match format {
        Format::Graph6 => text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
            .map(|(i, l)| (format!("{path}:{}", i + 1), l.trim().to_string()))
            .collect(),
        Format::Edgelist => {
            let mut out = Vec::new();
            let mut block: Vec<(usize, &str)> = Vec::new();
            let mut flush = |block: &mut Vec<(usize, &str)>| {
                if block.is_empty() {
                    return;
                }
                if block.iter().all(|(_, l)| l.contains(',')) {
                    out.extend(block.iter().map(|(i, l)| (format!("{path}:{}", i + 1), l.to_string())));
                } else {
                    let body: Vec<&str> = block.iter().map(|(_, l)| *l).collect();
                    out.push((format!("{path}:{}", block[0].0 + 1), body.join("\n")));
                }
                block.clear();
            };
            for (i, line) in text.lines().enumerate() {
                let content = line.split('#').next().unwrap_or("").trim();
                if content.is_empty() {
                    if line.trim().is_empty() {
                        flush(&mut block);
                    }
                    continue;
                }
                block.push((i, content));
            }
            flush(&mut block);
            out
        }
    }
}

fn parse(text: &str, format: Format) -> Result<Graph, Error> {
    match format {
        Format::Graph6 => parse_graph6(text),
        Format::Edgelist => parse_edge_list(text, false),
    }
}

fn text_line(r: &Report) -> String {
    let opt = r.optimum.map_or_else(String::new, |o| format!(" optimum={o}"));
    let status = if r.passed() { "ok".to_string() } else { format!("FAILED: {}", r.failures.join("; ")) };
    format!(
        "{}: n={} m={} cyclic4={} length={} bound={} ratio={} l1={} l2={:?} chosen={}{opt} {status}",
        r.name, r.n, r.m, r.cyclic4, r.length, r.bounds.general, r.ratio, r.l1, r.l2, r.chosen
    )
}

fn main() -> ExitCode {
    let args = Args::parse();
    let opts = Options { oracle: args.oracle, max_oracle_edges: args.max_oracle_edges, trace: args.trace };
    let mut invalid = 0usize;
    let mut failed = 0usize;
    let mut passed = 0usize;
    let mut worst: Option<(String, String)> = None;
    let mut worst_value = None;
    for path in &args.inputs {
        let text = if path == "-" {
            std::io::read_to_string(std::io::stdin()).map_err(|e| e.to_string())
        } else {
            fs::read_to_string(path).map_err(|e| e.to_string())
        };
        let text = match text {
            Ok(t) => t,
            Err(e) => {
                eprintln!("{path}: cannot read: {e}");
                invalid += 1;
                continue;
            }
        };
        for (label, body) in split(path, &text, args.format) {
            let outcome = parse(&body, args.format).and_then(|g| run(&label, &g, &opts));
            let out = match outcome {
                Ok(o) => o,
                Err(e @ Error::Internal(_)) => {
                    eprintln!("{label}: {e}");
                    failed += 1;
                    continue;
                }
                Err(e) => {
                    eprintln!("{label}: rejected: {e}");
                    invalid += 1;
                    continue;
                }
            };
            for line in &out.trace {
                eprintln!("{label}: {line}");
            }
            let r = &out.report;
            if r.passed() {
                passed += 1;
            } else {
                failed += 1;
            }
            let v = r.ratio_value();
            if worst_value.is_none_or(|w| v > w) {
                worst_value = Some(v);
                worst = Some((frac(v), label.clone()));
            }
            match args.report {
                ReportKind::Json => println!("{}", serde_json::to_string(r).expect("report serializes")),
                ReportKind::Text => println!("{}", text_line(r)),
            }
        }
    }
    let (ratio, at) = worst.unwrap_or_default();
    match args.report {
        ReportKind::Json => println!(
            "{}",
            serde_json::json!({"summary": {"graphs": passed + failed, "passed": passed, "failed": failed,
                "invalid": invalid, "max_ratio": ratio, "max_ratio_at": at}})
        ),
        ReportKind::Text => println!(
            "summary: graphs={} passed={passed} failed={failed} invalid={invalid} max_ratio={ratio} at {at}",
            passed + failed
        ),
    }
    if invalid > 0 {
        ExitCode::from(2)
    } else if failed > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edgelist_blocks() {
        let text = "0 1,0 1,0 1\n0 1,0 2,0 3,1 2,1 3,2 3\n\n0 1\n0 1\n0 1 # theta\n";
        let recs = split("f", text, Format::Edgelist);
        assert_eq!(recs.len(), 3);
        assert_eq!(recs[2].0, "f:4");
        assert_eq!(parse(&recs[2].1, Format::Edgelist).unwrap().edge_count(), 3);
    }

    #[test]
    fn graph6_lines() {
        let recs = split("f", "C~\n\nIheA@GUAo\n", Format::Graph6);
        assert_eq!(recs.iter().map(|r| r.0.as_str()).collect::<Vec<_>>(), ["f:1", "f:3"]);
    }
}
