//! One graph in, one report out: 2-factor, pairing, good flow, covers,
//! audits, and the final bounds.

use std::collections::BTreeMap;

use num_rational::Rational64;
use serde::Serialize;

use crate::chain::Chain;
use crate::cover::{build_covers, histogram, CoverSummary};
use crate::cuts::{is_cyclically_4_edge_connected, select_two_factor, uniform_weights, z_weights, TwoFactor};
use crate::error::Result;
use crate::five::{build_pairing, classify_five_circuits, factor_five_circuits_classified, Pairing};
use crate::good_flow::{build_good_flow, GoodCertificate};
use crate::graph::{EdgeId, Graph};
use crate::oracle::shortest_cycle_cover;
use crate::trace::Trace;

#[derive(Clone, Debug)]
pub struct Options {
    pub oracle: bool,
    pub max_oracle_edges: usize,
    pub trace: bool,
}

impl Default for Options {
    fn default() -> Options {
        Options { oracle: false, max_oracle_edges: 16, trace: false }
    }
}

/// Exact `p/q` form, denominator always written.
pub fn frac(r: Rational64) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn floor_of(r: Rational64) -> usize {
    r.floor().to_integer() as usize
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Bounds {
    pub sum_a: String,
    pub sum_b: String,
    pub sum_c: String,
    pub main: String,
    /// ⌊212/135 m⌋.
    pub general: usize,
    /// ⌊47/30 m⌋, for cyclically 4-edge-connected graphs.
    pub cyclic4: Option<usize>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub cyclic4: bool,
    pub cn: usize,
    pub cn_in_factor: usize,
    pub cn_bound: String,
    pub factor_lengths: Vec<usize>,
    pub types: BTreeMap<String, usize>,
    pub pairs: usize,
    pub unpaired: usize,
    pub zeros: usize,
    pub l1: usize,
    pub l2: Vec<usize>,
    pub l2_mean: String,
    pub length: usize,
    /// `cover1`, or `cover2` with the permutation's images of R, G, B.
    pub chosen: String,
    pub ratio: String,
    pub bounds: Bounds,
    pub optimum: Option<usize>,
    pub cycles: Vec<Vec<EdgeId>>,
    pub failures: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Cover length over edge count.
    pub fn ratio_value(&self) -> Rational64 {
        Rational64::new(self.length as i64, self.m as i64)
    }
}

/// Everything the pipeline computed, for callers that want more than the
/// report.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub factor: TwoFactor,
    pub pairing: Pairing,
    pub flow: Chain,
    pub certificate: GoodCertificate,
    pub covers: CoverSummary,
    pub trace: Vec<String>,
}

/// Runs the full pipeline. Invalid input is an `Err`; audit and bound
/// failures are listed in the report.
pub fn run(name: &str, g: &Graph, opts: &Options) -> Result<Outcome> {
    g.validate_bridgeless_cubic()?;
    let (n, m) = (g.vertex_count(), g.edge_count());
    let classes = classify_five_circuits(g);
    let cyclic4 = is_cyclically_4_edge_connected(g);
    let y = if cyclic4 { z_weights(g, &classes.isolated) } else { uniform_weights(g) };
    let choice = select_two_factor(g, &y, &classes.isolated)?;
    let factor = choice.factor;
    let mut failures = Vec::new();
    if !factor_five_circuits_classified(&classes, &factor) {
        failures.push("a pentagon of the 2-factor is neither intersecting nor isolated".to_string());
    }
    let pairing = build_pairing(g, &factor, &classes)?;
    let mut trace = Trace::new(opts.trace);
    let (flow, certificate) = build_good_flow(g, &factor, &pairing, &mut trace)?;
    failures.extend(certificate.failures.iter().map(|f| format!("good flow: {f}")));
    let covers = build_covers(g, &factor, &pairing, &flow)?;
    failures.extend(covers.failures.iter().cloned());

    let length = covers.best.length();
    let mm = Rational64::from_integer(m as i64);
    let general = floor_of(Rational64::new(212, 135) * mm);
    let cyc = cyclic4.then(|| floor_of(Rational64::new(47, 30) * mm));
    if length > general {
        failures.push(format!("length {length} > {general}"));
    }
    if let Some(b) = cyc {
        if length > b {
            failures.push(format!("length {length} > {b} on a cyclically 4-edge-connected graph"));
        }
    }
    let optimum = if opts.oracle && m <= opts.max_oracle_edges {
        let (opt, _) = shortest_cycle_cover(g, opts.max_oracle_edges)?;
        if opt > length {
            failures.push(format!("oracle optimum {opt} exceeds the pipeline length {length}"));
        }
        Some(opt)
    } else {
        None
    };
    let chosen = match covers.chosen_trial {
        None => "cover1".to_string(),
        Some(k) => {
            let im: String = covers.trials[k].perm.images().iter().map(|x| x.to_char()).collect();
            format!("cover2[{im}]")
        }
    };
    let report = Report {
        name: name.to_string(),
        n,
        m,
        cyclic4,
        cn: classes.isolated.len(),
        cn_in_factor: choice.counted_in_factor,
        cn_bound: frac(choice.bound),
        factor_lengths: factor.circuits.iter().map(|c| c.len()).collect(),
        types: histogram(&covers.types).into_iter().map(|(t, k)| (t.to_string(), k)).collect(),
        pairs: pairing.pairs.len(),
        unpaired: pairing.unpaired.len(),
        zeros: flow.zeros(g).len(),
        l1: covers.cover_one.length(),
        l2: covers.trials.iter().map(|t| t.cover.length()).collect(),
        l2_mean: frac(covers.mean_two),
        length,
        chosen,
        ratio: frac(Rational64::new(length as i64, m as i64)),
        bounds: Bounds {
            sum_a: frac(covers.sum_a),
            sum_b: frac(covers.sum_b),
            sum_c: frac(covers.sum_c),
            main: frac(covers.main_bound),
            general,
            cyclic4: cyc,
        },
        optimum,
        cycles: covers.best.nonempty().map(|c| c.iter().copied().collect()).collect(),
        failures,
    };
    Ok(Outcome { report, factor, pairing, flow, certificate, covers, trace: trace.lines })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::named::petersen;

    #[test]
    fn petersen_report() {
        let opts = Options { oracle: true, ..Options::default() };
        let out = run("petersen", &petersen(), &opts).unwrap();
        let r = &out.report;
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!((r.n, r.m), (10, 15));
        assert!(r.length <= 23);
        assert_eq!(r.optimum, Some(21));
        assert_eq!(r.bounds.general, 23);
        assert_eq!(run("petersen", &petersen(), &opts).unwrap().report, out.report);
    }

    #[test]
    fn rejects_bridges() {
        // two K4s with one edge subdivided each, joined through the subdivisions
        let g = Graph::from_edges(
            10,
            &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (1, 4), (4, 9), (5, 7), (5, 8), (6, 7), (6, 8), (7, 8), (5, 9), (6, 9)],
        );
        assert!(matches!(run("bridge", &g, &Options::default()), Err(Error::Bridge { .. })));
    }
}
