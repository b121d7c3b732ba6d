//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines always print; exits nonzero if any line fails.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cyclecover::chain::{extend, mod1, mod2, parity_check, Chain, Subgraph};
use cyclecover::cover::check_coefficients;
use cyclecover::good_flow::check_good;
use cyclecover::graph::{circuits_up_to, induced_edges, Circuit, Graph};
use cyclecover::named::{k4, petersen, theta};
use cyclecover::oracle::{certify_tables, fundamental_cycles, shortest_cycle_cover};
use cyclecover::pipeline::{run, Options, Outcome};
use cyclecover::search::{find_flow, FlowProblem, NONZERO};
use cyclecover::toolbox::{fan_extend, fan_modify};
use cyclecover::trace::Trace;
use cyclecover::{EdgeId, Gf4};

struct Line {
    passed: bool,
    detail: String,
}

fn line(passed: bool, detail: impl Into<String>) -> Line {
    Line { passed, detail: detail.into() }
}

fn floor(r: Rational64) -> usize {
    r.floor().to_integer() as usize
}

fn int(n: usize) -> Rational64 {
    Rational64::from_integer(n as i64)
}

fn main_bound(runs: &[(String, Graph, Outcome)]) -> Line {
    let mut bad = Vec::new();
    for (name, g, out) in runs {
        let m = g.edge_count();
        let best = &out.covers.best;
        let len = best.length();
        if !best.is_valid(g) || best.cycles.len() > 3 || len > floor(Rational64::new(212, 135) * int(m)) {
            bad.push(name.clone());
        }
    }
    line(bad.is_empty(), format!("{} graphs, {} over the bound {:?}", runs.len(), bad.len(), &bad[..bad.len().min(5)]))
}

fn cyclic_bound(runs: &[(String, Graph, Outcome)]) -> Line {
    let mut count = 0;
    let mut bad = Vec::new();
    for (name, g, out) in runs.iter().filter(|r| r.2.report.cyclic4) {
        count += 1;
        if out.covers.best.length() > floor(Rational64::new(47, 30) * int(g.edge_count())) {
            bad.push(name.clone());
        }
    }
    line(bad.is_empty() && count > 0, format!("{count} cyclically 4-edge-connected graphs, {} over", bad.len()))
}

fn petersen_check() -> Line {
    let g = petersen();
    let out = run("petersen", &g, &Options::default()).expect("petersen runs");
    let (opt, _) = shortest_cycle_cover(&g, 16).expect("petersen fits the oracle");
    let len = out.report.length;
    line(len <= 23 && opt == 21 && out.report.passed(), format!("pipeline {len}, optimum {opt}, gap {}", len - opt))
}

fn audits(runs: &[(String, Graph, Outcome)]) -> Line {
    let mut bad = Vec::new();
    for (name, g, out) in runs {
        let c = &out.covers;
        let m = g.edge_count();
        let cn = out.report.cn_in_factor;
        let mean: Rational64 = c.trials.iter().map(|t| int(t.cover.length())).sum::<Rational64>() / int(c.trials.len());
        let best = int(c.best.length());
        let ok = c.trials.len() == 6
            && int(c.cover_one.length()) <= c.sum_a
            && mean <= c.sum_b
            && best <= c.sum_c
            && best <= Rational64::new(14, 9) * int(m) + Rational64::new(2, 3) * int(cn)
            && c.failures.is_empty();
        if !ok {
            bad.push(format!("{name}: {:?}", c.failures));
        }
    }
    line(bad.is_empty(), format!("{} instances, {} failing {:?}", runs.len(), bad.len(), &bad[..bad.len().min(3)]))
}

fn certificates(runs: &[(String, Graph, Outcome)]) -> Line {
    let mut bad = Vec::new();
    for (name, g, out) in runs {
        let cert = check_good(g, &out.factor, &out.pairing, &out.flow);
        if !cert.passed() {
            bad.push(format!("{name}: {:?}", cert.failures));
        }
    }
    line(bad.is_empty(), format!("{} flows re-checked, {} failing {:?}", runs.len(), bad.len(), &bad[..bad.len().min(3)]))
}

fn tables() -> Line {
    let t0 = Instant::now();
    let rep = certify_tables();
    let summary: Vec<String> = rep
        .tables
        .iter()
        .map(|t| format!("{} {}/{}", t.kind.map_or("?", |k| k.name()), t.certified, t.strings))
        .collect();
    let errata = rep.tables.iter().map(|t| t.errata.len()).sum::<usize>() + rep.bridge.errata.len();
    line(
        rep.passed(),
        format!(
            "{}; bridge rows: {} strings, {} unmatched, {} impossible; {errata} errata; {:.2}s",
            summary.join(", "),
            rep.bridge.strings,
            rep.bridge.unmatched.len(),
            rep.bridge.impossible.len(),
            t0.elapsed().as_secs_f64()
        ),
    )
}

fn coefficients() -> Line {
    let rep = check_coefficients(1000);
    line(
        rep.passed(),
        format!(
            "{} rows, {} mismatches, {} improved rows, max c/n above 12 = {}, header (a+2b)/2 wrong on {} rows",
            rep.rows,
            rep.mismatches.len(),
            rep.improved.len(),
            rep.worst_long_ratio,
            rep.half_header_misses
        ),
    )
}

fn oracle_equivalence(runs: &[(String, Graph, Outcome)]) -> Line {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (name, g, out) in runs.iter().filter(|r| r.1.edge_count() <= 16) {
        let (opt, cover) = shortest_cycle_cover(g, 16).expect("within cap");
        checked += 1;
        let len = out.report.length;
        let sum: usize = cover.iter().map(|c| c.len()).sum();
        if opt > len || len > floor(Rational64::new(212, 135) * int(g.edge_count())) || sum != opt {
            bad.push(format!("{name}: optimum {opt}, pipeline {len}"));
        }
    }
    let k4_opt = shortest_cycle_cover(&k4(), 16).map(|r| r.0).ok();
    let theta_opt = shortest_cycle_cover(&theta(), 16).map(|r| r.0).ok();
    line(
        bad.is_empty() && k4_opt == Some(8) && theta_opt == Some(4),
        format!("{checked} graphs with m <= 16, {} failing; K4 = {k4_opt:?}, theta = {theta_opt:?}", bad.len()),
    )
}

fn random_flow(g: &Graph, rng: &mut ChaCha8Rng) -> Chain {
    let mut c = Chain::new();
    for cyc in fundamental_cycles(g) {
        let x = Gf4::ALL[rng.gen_range(0..4)];
        for e in cyc {
            c.add(e, x);
        }
    }
    c
}

fn random_subgraph(g: &Graph, rng: &mut ChaCha8Rng) -> Subgraph {
    let vs: Vec<_> = g.vertices().collect();
    let target = rng.gen_range(1..vs.len());
    let mut set = BTreeSet::from([*vs.choose(rng).expect("nonempty")]);
    while set.len() < target {
        let frontier: Vec<_> = set
            .iter()
            .flat_map(|&v| g.incident(v).iter().map(move |&e| g.other_end(e, v)))
            .filter(|w| !set.contains(w))
            .collect();
        set.insert(*frontier.choose(rng).expect("connected graph"));
    }
    Subgraph { vertices: set.iter().copied().collect(), edges: induced_edges(g, &set) }
}

fn off_h_zeros(c: &Chain, g: &Graph, h: &Subgraph) -> BTreeSet<EdgeId> {
    c.zeros(g).into_iter().filter(|e| !h.edges.contains(e)).collect()
}

/// Random extensible chains: Parity Lemma, extension, and both
/// modifications; then the quarter bound for circuit extensions.
fn fuzz(corpus: &[(String, Graph)], runs: &[(String, Graph, Outcome)]) -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut problems = Vec::new();
    let (mut instances, mut mods, mut fans) = (0usize, 0usize, 0usize);
    let circuits: Vec<Vec<Circuit>> = corpus.iter().map(|(_, g)| circuits_up_to(g, g.vertex_count())).collect();
    while instances < 10_000 {
        let k = rng.gen_range(0..corpus.len());
        let g = &corpus[k].1;
        instances += 1;
        let mut chain = random_flow(g, &mut rng);
        let h = random_subgraph(g, &mut rng);
        for &e in &h.edges {
            chain.set(e, Gf4::ALL[rng.gen_range(0..4)]);
        }
        if !parity_check(&chain, g, &h) {
            problems.push(format!("parity fails on {}", corpus[k].0));
            continue;
        }
        let zeros = off_h_zeros(&chain, g, &h);
        let boundary = h.boundary(g);
        // mod2 then mod1 where applicable
        if let Some(&f) = boundary.iter().find(|&&e| !chain.get(e).is_zero()) {
            let x = chain.get(f);
            let others: Vec<Gf4> = Gf4::NONZERO.into_iter().filter(|&y| y != x).collect();
            let y = others[rng.gen_range(0..2)];
            if mod2(&mut chain, g, &h, f, x, y).is_ok() {
                mods += 1;
            } else {
                problems.push(format!("mod2 failed on {}", corpus[k].0));
            }
        }
        let hv = h.vertex_set();
        'pairs: for (i, &e1) in boundary.iter().enumerate() {
            for &e2 in &boundary[i + 1..] {
                let (a, b) = (chain.get(e1), chain.get(e2));
                let out1: Vec<_> = g.ends_of(e1).into_iter().filter(|v| !hv.contains(v)).collect();
                let common = g.ends_of(e2).iter().any(|v| out1.contains(v));
                if e1 == e2 || a.is_zero() || b.is_zero() || !common {
                    continue;
                }
                let (x, y) = if a != b { (a, b) } else { (a, Gf4::NONZERO.into_iter().find(|&y| y != a).expect("exists")) };
                if mod1(&mut chain, g, &h, e1, e2, x, y).is_ok() {
                    mods += 1;
                } else {
                    problems.push(format!("mod1 failed on {}", corpus[k].0));
                }
                break 'pairs;
            }
        }
        if off_h_zeros(&chain, g, &h) != zeros || !chain.is_extensible(g, &hv) || !parity_check(&chain, g, &h) {
            problems.push(format!("modification broke the zero set or extensibility on {}", corpus[k].0));
        }
        let before: Vec<Gf4> = g.edge_ids().filter(|e| !h.edges.contains(e)).map(|e| chain.get(e)).collect();
        if extend(&mut chain, g, &h).is_err() || !chain.is_flow(g) {
            problems.push(format!("extension failed on {}", corpus[k].0));
        }
        let after: Vec<Gf4> = g.edge_ids().filter(|e| !h.edges.contains(e)).map(|e| chain.get(e)).collect();
        if before != after {
            problems.push(format!("extension touched edges outside the subgraph on {}", corpus[k].0));
        }

        // a circuit with a nowhere-zero boundary, the rest of the flow random
        let Some(c) = circuits[k].choose(&mut rng) else { continue };
        let h = Subgraph::from(c);
        let mut p = FlowProblem::default();
        for e in h.boundary(g) {
            p.allowed.insert(e, NONZERO);
        }
        for e in g.edge_ids() {
            p.preferred.insert(e, Gf4::ALL[rng.gen_range(0..4)]);
        }
        let Some(mut chain) = find_flow(g, &p).expect("search within the node cap") else {
            problems.push(format!("no flow nonzero on the boundary of a {}-circuit of {}", c.len(), corpus[k].0));
            continue;
        };
        for &e in &c.edges {
            chain.set(e, Gf4::Zero);
        }
        match fan_extend(&chain, g, c, &mut Trace::new(false)) {
            Ok(out) => {
                fans += 1;
                let z = c.edges.iter().filter(|&&e| out.get(e).is_zero()).count();
                let outside_same = g.edge_ids().filter(|e| !c.edges.contains(e)).all(|e| out.get(e) == chain.get(e));
                if z > c.len() / 4 || !out.is_flow(g) || !outside_same {
                    problems.push(format!("fan_extend gave {z} zeros on a {}-circuit of {}", c.len(), corpus[k].0));
                }
            }
            Err(e) => problems.push(format!("fan_extend: {e}")),
        }
    }

    // the strict bound on every factor circuit the pipeline met
    let mut strict = 0usize;
    for (name, g, out) in runs {
        for c in out.factor.circuits.iter().filter(|c| c.len() < 20) {
            let mut chain = out.flow.clone();
            for &e in &c.edges {
                chain.set(e, Gf4::Zero);
            }
            let h = Subgraph::from(c);
            let zeros = off_h_zeros(&chain, g, &h);
            match fan_modify(&chain, g, c, &mut Trace::new(false)) {
                Ok(res) => {
                    strict += 1;
                    let z = c.edges.iter().filter(|&&e| res.get(e).is_zero()).count();
                    if 4 * z >= c.len() || off_h_zeros(&res, g, &h) != zeros || !res.is_flow(g) {
                        problems.push(format!("fan_modify gave {z} zeros on a {}-circuit of {name}", c.len()));
                    }
                }
                Err(e) => problems.push(format!("fan_modify on {name}: {e}")),
            }
        }
    }
    line(
        problems.is_empty(),
        format!(
            "{instances} random instances ({mods} modifications, {fans} circuit extensions), {strict} factor circuits; {} problems {:?}",
            problems.len(),
            &problems[..problems.len().min(3)]
        ),
    )
}

fn main() {
    let t0 = Instant::now();
    let corpus = common::corpus();
    let mut runs = Vec::new();
    let mut errors = Vec::new();
    for (name, g) in &corpus {
        match run(name, g, &Options::default()) {
            Ok(out) => runs.push((name.clone(), g.clone(), out)),
            Err(e) => errors.push(format!("{name}: {e}")),
        }
    }
    let pipeline_ok = errors.is_empty();
    let wrap = |l: Line| if pipeline_ok { l } else { line(false, format!("{} (pipeline errors: {errors:?})", l.detail)) };

    let lines = [
        ("1 main bound", wrap(main_bound(&runs))),
        ("2 cyclically 4-edge-connected bound", wrap(cyclic_bound(&runs))),
        ("3 Petersen", petersen_check()),
        ("4 cover audits", wrap(audits(&runs))),
        ("5 good-flow certificates", wrap(certificates(&runs))),
        ("6 case tables", tables()),
        ("7 coefficient table", coefficients()),
        ("8 oracle equivalence", wrap(oracle_equivalence(&runs))),
        ("9 property fuzz", wrap(fuzz(&corpus, &runs))),
    ];
    let mut all = true;
    for (name, l) in &lines {
        all &= l.passed;
        println!("{} criterion {name}: {}", if l.passed { "PASS" } else { "FAIL" }, l.detail);
    }
    println!("acceptance finished in {:.1}s", t0.elapsed().as_secs_f64());
    if !all {
        std::process::exit(1);
    }
}
