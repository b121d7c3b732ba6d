//! A flow on G with few, well placed zeros, built by restoring the
//! circuits of the 2-factor one at a time.
//!
//! Restoration order: unpaired intersecting pentagons (each before its
//! partner), then every other circuit that is neither a hexagon nor paired,
//! then hexagons and pairs, which are first stood in for by three virtual
//! edges and finally filled in once no other value can change.

use std::collections::{BTreeMap, BTreeSet};

use crate::chain::{boundary_ordering, Chain};
use crate::contraction::ContractionStack;
use crate::cuts::TwoFactor;
use crate::error::{internal, Result};
use crate::five::{Pairing, SGraph};
use crate::gf4::{BoundaryString, ColourPerm, Gf4};
use crate::graph::{Circuit, EdgeId, Graph, VertexId};
use crate::search::nowhere_zero_flow;
use crate::tables::{dihedral, s_condition, S_CONDITIONS, SIX_CONDITIONS};
use crate::toolbox::{
    extend_five_circuit, fan_extend, fan_modify, label, natural_ordering, normalize_s_graph, normalize_six_circuit,
    rescue_five_circuit,
};
use crate::trace::Trace;

fn name(i: usize) -> String {
    format!("F{i}")
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GoodCertificate {
    pub is_flow: bool,
    /// Properties 1 to 5.
    pub properties: [bool; 5],
    pub failures: Vec<String>,
    /// Zeros on each factor circuit, in factor order.
    pub circuit_zeros: Vec<usize>,
    /// (factor index, "4a" or "4b") per hexagon.
    pub six_witness: Vec<(usize, String)>,
    /// Zeros on each paired subgraph, in pair order.
    pub pair_zeros: Vec<usize>,
}

impl GoodCertificate {
    pub fn passed(&self) -> bool {
        self.is_flow && self.properties.iter().all(|&p| p)
    }
}

fn missing_colour(s: &BoundaryString) -> bool {
    Gf4::NONZERO.iter().any(|&x| s.count(x) == 0)
}

fn odd_counts_match(values: &[Gf4]) -> bool {
    let zeros = values.iter().filter(|x| x.is_zero()).count();
    Gf4::NONZERO.iter().all(|&x| values.iter().filter(|&&v| v == x).count() % 2 == zeros % 2)
}

/// Direct re-check of Properties 1 to 5 for `flow` restricted to `g`.
pub fn check_good(g: &Graph, factor: &TwoFactor, pairing: &Pairing, flow: &Chain) -> GoodCertificate {
    let mut cert = GoodCertificate { is_flow: flow.is_flow(g), properties: [true; 5], ..Default::default() };
    if !cert.is_flow {
        cert.failures.push("not a flow".into());
    }
    let zeros = flow.zeros(g);
    for &e in &zeros {
        if !factor.edges.contains(&e) {
            cert.properties[0] = false;
            cert.failures.push(format!("property 1: zero on matching edge {e}"));
        }
    }
    for (i, c) in factor.circuits.iter().enumerate() {
        let z = c.edges.iter().filter(|e| zeros.contains(e)).count();
        cert.circuit_zeros.push(z);
        let strict = [4, 8, 12, 16].contains(&c.len());
        if 4 * z > c.len() || (strict && 4 * z == c.len()) {
            cert.properties[1] = false;
            cert.failures.push(format!("property 2: circuit {i} of length {} has {z} zeros", c.len()));
        }
    }
    for &i in &pairing.unpaired {
        if cert.circuit_zeros[i] > 0 {
            cert.properties[2] = false;
            cert.failures.push(format!("property 3: unpaired circuit {i} has a zero"));
        }
    }
    for (i, c) in factor.circuits.iter().enumerate().filter(|(_, c)| c.len() == 6) {
        let Ok(order) = natural_ordering(g, c) else {
            cert.properties[3] = false;
            cert.failures.push(format!("property 4: circuit {i} has no boundary ordering"));
            continue;
        };
        let values: Vec<Gf4> = c.edges.iter().map(|&e| flow.get(e)).collect();
        if missing_colour(&flow.string(&order)) {
            cert.six_witness.push((i, "4a".into()));
        } else if odd_counts_match(&values) {
            cert.six_witness.push((i, "4b".into()));
        } else {
            cert.properties[3] = false;
            cert.failures.push(format!("property 4: hexagon {i} satisfies neither alternative"));
        }
    }
    for (k, s) in pairing.s_graphs.iter().enumerate() {
        let z = s.subgraph.edges.iter().filter(|e| zeros.contains(e)).count();
        cert.pair_zeros.push(z);
        let lacks = boundary_ordering(g, &s.seq, &s.subgraph.edges).is_ok_and(|o| missing_colour(&flow.string(&o)));
        if z > 1 || !(lacks || z == 0) {
            cert.properties[4] = false;
            cert.failures.push(format!("property 5: pair {k} has {z} zeros and all colours on its boundary"));
        }
    }
    cert
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    Unpaired(usize),
    Plain(usize),
    Six(usize),
    Pair(usize),
}

/// Bridge values for the paired subgraph, as in the proof: the colour
/// classes of `a0..a5` (R, G, B) and the values on `w0w1`, `w2w3`.
pub type BridgeRow = (&'static [usize], &'static [usize], &'static [usize], Gf4, Gf4);

pub const BRIDGE_ROWS: [BridgeRow; 13] = [
    (&[0, 1, 2, 3, 4, 5], &[], &[], Gf4::G, Gf4::B),
    (&[0, 1, 2, 3], &[4, 5], &[], Gf4::G, Gf4::B),
    (&[0, 1, 4, 5], &[2, 3], &[], Gf4::B, Gf4::R),
    (&[2, 3, 4, 5], &[0, 1], &[], Gf4::B, Gf4::G),
    (&[0, 1], &[2, 3], &[4, 5], Gf4::G, Gf4::B),
    (&[0, 1, 2, 4], &[3, 5], &[], Gf4::G, Gf4::B),
    (&[0, 1, 3, 5], &[2, 4], &[], Gf4::B, Gf4::G),
    (&[0, 1], &[2, 4], &[3, 5], Gf4::B, Gf4::R),
    (&[0, 2, 3, 4], &[1, 5], &[], Gf4::B, Gf4::R),
    (&[1, 2, 4, 5], &[0, 3], &[], Gf4::R, Gf4::B),
    (&[0, 3], &[1, 5], &[2, 4], Gf4::B, Gf4::B),
    (&[1, 2, 3, 5], &[0, 4], &[], Gf4::R, Gf4::B),
    (&[0, 4], &[1, 5], &[2, 3], Gf4::R, Gf4::R),
];

const S_SWAP: [usize; 6] = [2, 1, 0, 5, 4, 3];

fn row_string(r: usize) -> BoundaryString {
    let (rs, gs, bs, _, _) = BRIDGE_ROWS[r];
    let mut s = vec![Gf4::Zero; 6];
    for (set, x) in [(rs, Gf4::R), (gs, Gf4::G), (bs, Gf4::B)] {
        for &i in set {
            s[i] = x;
        }
    }
    BoundaryString(s)
}

/// The table's bridge values for `a`, matched directly or through the
/// swap automorphism of `S`, in real `(b1, b2)` terms.
pub fn bridge_row_for(a: &BoundaryString) -> Option<(usize, Gf4, Gf4)> {
    for (r, &(_, _, _, x, y)) in BRIDGE_ROWS.iter().enumerate() {
        let row = row_string(r);
        for swapped in [false, true] {
            let t = if swapped { BoundaryString(S_SWAP.iter().map(|&k| a[k]).collect()) } else { a.clone() };
            for sigma in ColourPerm::all() {
                if t.map_colours(&sigma) == row {
                    let inv = sigma.inverse();
                    let (b1, b2) = if swapped { (inv.apply(y), inv.apply(x)) } else { (inv.apply(x), inv.apply(y)) };
                    return Some((r, b1, b2));
                }
            }
        }
    }
    None
}

fn x_string(a: &BoundaryString, b1: Gf4, b2: Gf4) -> BoundaryString {
    BoundaryString(vec![b1, b2, a[0], a[1], a[2]])
}

fn y_string(a: &BoundaryString, b1: Gf4, b2: Gf4) -> BoundaryString {
    BoundaryString(vec![b1, a[4], b2, a[3], a[5]])
}

/// Which pentagon of `S` can be completed first (by the explicit
/// extension) with the second finished by the explicit extension or, when
/// the outer boundary misses a colour, by the quarter-bound extension.
/// `Some(true)` means `X` first.
pub fn completion_order(a: &BoundaryString, b1: Gf4, b2: Gf4) -> Option<bool> {
    if b1.is_zero() || b2.is_zero() || b1 + b2 + a[0] + a[1] + a[2] != Gf4::Zero {
        return None;
    }
    let (xs, ys) = (x_string(a, b1, b2), y_string(a, b1, b2));
    let fan_ok = missing_colour(a);
    let triple = crate::tables::has_equal_triple;
    if triple(&xs) && (triple(&ys) || fan_ok) {
        Some(true)
    } else if triple(&ys) && (triple(&xs) || fan_ok) {
        Some(false)
    } else {
        None
    }
}

#[derive(Clone, Debug, Default)]
pub struct BridgeTableReport {
    /// One line per row: the status of the listed values.
    pub rows: Vec<String>,
    /// Rows whose listed values do not work as stated.
    pub errata: Vec<String>,
    /// Strings satisfying some condition that match no row.
    pub unmatched: Vec<String>,
    /// Strings satisfying some condition for which no bridge values work.
    pub impossible: Vec<String>,
    pub strings: usize,
}

/// Abstract check of the bridge table against every parity-feasible string
/// satisfying one of the eight conditions.
pub fn certify_bridge_table() -> BridgeTableReport {
    let mut rep = BridgeTableReport::default();
    for (r, &(_, _, _, b1, b2)) in BRIDGE_ROWS.iter().enumerate() {
        let a = row_string(r);
        let status = match completion_order(&a, b1, b2) {
            Some(true) => "works, X first".to_string(),
            Some(false) => {
                rep.errata.push(format!("row {} ({a}): {b1},{b2} needs Y completed first", r + 1));
                "works, Y first only".to_string()
            }
            None => {
                let alt: Vec<String> = Gf4::NONZERO
                    .iter()
                    .filter_map(|&x| {
                        let y = x + a[0] + a[1] + a[2];
                        completion_order(&a, x, y).map(|o| format!("{x},{y} ({} first)", if o { "X" } else { "Y" }))
                    })
                    .collect();
                rep.errata.push(format!("row {} ({a}): {b1},{b2} fails; working: {}", r + 1, alt.join(" ")));
                format!("fails; working: {}", alt.join(" "))
            }
        };
        rep.rows.push(format!("row {} {a} -> {b1},{b2}: {status}", r + 1));
    }
    let table = crate::tables::Table::get(crate::tables::TableKind::STwoPentagons);
    for a in table.feasible_strings() {
        if s_condition(&a).is_none() {
            continue;
        }
        rep.strings += 1;
        if bridge_row_for(&a).is_none() {
            rep.unmatched.push(a.to_string());
        }
        let any = Gf4::NONZERO.iter().any(|&x| completion_order(&a, x, x + a[0] + a[1] + a[2]).is_some());
        if !any {
            rep.impossible.push(a.to_string());
        }
    }
    rep
}

struct Builder<'a> {
    g: &'a Graph,
    st: ContractionStack,
    chain: Chain,
    trace: &'a mut Trace,
}

impl Builder<'_> {
    fn zero(&mut self, edges: impl IntoIterator<Item = EdgeId>) {
        for e in edges {
            self.chain.set(e, Gf4::Zero);
        }
    }

    fn check_flow(&self, what: &str) -> Result<()> {
        if !self.chain.is_flow(self.st.graph()) {
            return Err(internal!("working chain is not a flow after {what}"));
        }
        Ok(())
    }

    fn uncontract(&mut self, i: usize, c: &Circuit) -> Result<()> {
        self.st.uncontract(&name(i))?;
        self.zero(c.edges.iter().copied());
        if !self.chain.is_extensible(self.st.graph(), &c.vertex_set()) {
            return Err(internal!("chain not extensible after restoring circuit {i}"));
        }
        Ok(())
    }

    /// Replaces `edges` by virtual edges `v_i v_j` carrying `a_i`, one for
    /// each equality of the condition.
    fn substitute(
        &mut self,
        edges: &BTreeSet<EdgeId>,
        seq: &[VertexId],
        order: &[EdgeId],
        pairs: &[(usize, usize); 3],
    ) -> Result<Vec<EdgeId>> {
        let s = self.chain.string(order);
        for &e in edges {
            self.st.graph_mut().remove_edge(e)?;
        }
        let mut virt = Vec::new();
        for &(i, j) in pairs {
            let e = self.st.graph_mut().add_edge(seq[i], seq[j]);
            self.chain.set(e, s[i]);
            virt.push(e);
        }
        self.check_flow("substitution")?;
        Ok(virt)
    }

    fn unsubstitute(&mut self, virt: &[EdgeId], edges: &BTreeSet<EdgeId>) -> Result<()> {
        for &e in virt {
            self.st.graph_mut().remove_edge(e)?;
            self.chain.set(e, Gf4::Zero);
        }
        for &e in edges {
            let [u, v] = self.g.ends_of(e);
            self.st.graph_mut().restore_edge(e, u, v);
        }
        self.zero(edges.iter().copied());
        Ok(())
    }

    fn complete_six(&mut self, i: usize, c: &Circuit) -> Result<()> {
        let g = self.st.graph().clone();
        let order = natural_ordering(&g, c)?;
        let s = self.chain.string(&order);
        if missing_colour(&s) {
            self.chain = fan_extend(&self.chain, &g, c, self.trace)?;
            return Ok(());
        }
        // explicit assignments for conditions 1, 3 and 6 with the colour
        // classes R, G, B
        type Base = ([usize; 2], [usize; 2], [usize; 2], [Gf4; 6]);
        const BASES: [Base; 3] = [
            ([0, 1], [2, 3], [4, 5], [Gf4::B, Gf4::G, Gf4::Zero, Gf4::G, Gf4::R, Gf4::G]),
            ([0, 3], [1, 2], [4, 5], [Gf4::B, Gf4::R, Gf4::B, Gf4::G, Gf4::R, Gf4::G]),
            ([0, 3], [1, 4], [2, 5], [Gf4::B, Gf4::R, Gf4::G, Gf4::B, Gf4::R, Gf4::G]),
        ];
        let edge_between = |p: usize, q: usize| if (p + 1) % 6 == q { c.edges[p] } else { c.edges[q] };
        for (rs, gs, bs, vals) in BASES {
            for pos in dihedral(6) {
                let t = |k: usize| s[pos[k]];
                if t(rs[0]) != t(rs[1]) || t(gs[0]) != t(gs[1]) || t(bs[0]) != t(bs[1]) {
                    continue;
                }
                let Ok(inv) = ColourPerm::from_images([t(rs[0]), t(gs[0]), t(bs[0])]) else { continue };
                let mut trial = self.chain.clone();
                for k in 0..6 {
                    trial.set(edge_between(pos[k], pos[(k + 1) % 6]), inv.apply(vals[k]));
                }
                let values: Vec<Gf4> = c.edges.iter().map(|&e| trial.get(e)).collect();
                if trial.is_flow(&g) && odd_counts_match(&values) {
                    self.trace.step("six-complete", &label(&c.vertices), &s.to_string(), "-", "4b");
                    self.chain = trial;
                    return Ok(());
                }
            }
        }
        Err(internal!("hexagon {i} with boundary {s} matches no explicit completion"))
    }

    fn complete_pair(&mut self, k: usize, t: &SGraph) -> Result<()> {
        let g = self.st.graph().clone();
        let order = boundary_ordering(&g, &t.seq, &t.subgraph.edges)?;
        let a = self.chain.string(&order);
        let mut candidates = Vec::new();
        if let Some((_, b1, b2)) = bridge_row_for(&a) {
            candidates.push((b1, b2));
        }
        for x in Gf4::NONZERO {
            candidates.push((x, x + a[0] + a[1] + a[2]));
        }
        let (b1, b2, x_first) = candidates
            .into_iter()
            .find_map(|(b1, b2)| completion_order(&a, b1, b2).map(|o| (b1, b2, o)))
            .ok_or_else(|| internal!("pair {k} with boundary {a} admits no bridge values"))?;
        self.chain.set(t.b1, b1);
        self.chain.set(t.b2, b2);
        let (cx, cy) = (&t.x_walk, &t.y_walk);
        let (first, second) = if x_first { (cx, cy) } else { (cy, cx) };
        self.st.contract("pair-second", &second.edge_set())?;
        let h = self.st.graph().clone();
        self.chain = extend_five_circuit(&self.chain, &h, first, self.trace)?
            .ok_or_else(|| internal!("pair {k}: first pentagon has no equal triple"))?;
        self.st.uncontract("pair-second")?;
        let g = self.st.graph().clone();
        self.chain = match extend_five_circuit(&self.chain, &g, second, self.trace)? {
            Some(f) => f,
            None => fan_extend(&self.chain, &g, second, self.trace)?,
        };
        self.trace.step(
            "pair-complete",
            &label(&t.subgraph.vertices),
            &a.to_string(),
            &format!("b1={b1} b2={b2}"),
            if x_first { "X-first" } else { "Y-first" },
        );
        Ok(())
    }
}

/// Runs the restoration procedure and re-checks the result.
pub fn build_good_flow(
    g: &Graph,
    factor: &TwoFactor,
    pairing: &Pairing,
    trace: &mut Trace,
) -> Result<(Chain, GoodCertificate)> {
    let cs = &factor.circuits;
    let paired: BTreeSet<usize> = pairing.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    let unpaired: BTreeSet<usize> = pairing.unpaired.iter().copied().collect();
    let mut steps: Vec<Step> = pairing.restore_order.iter().map(|&i| Step::Unpaired(i)).collect();
    let mut plain: Vec<usize> = (0..cs.len())
        .filter(|i| cs[*i].len() != 6 && !paired.contains(i) && !unpaired.contains(i))
        .collect();
    plain.sort_by(|&a, &b| cs[b].len().cmp(&cs[a].len()).then_with(|| cs[a].cmp(&cs[b])));
    steps.extend(plain.into_iter().map(Step::Plain));
    let sixes: Vec<usize> = (0..cs.len()).filter(|&i| cs[i].len() == 6 && !paired.contains(&i)).collect();
    steps.extend(sixes.iter().map(|&i| Step::Six(i)));
    steps.extend((0..pairing.pairs.len()).map(Step::Pair));

    let mut st = ContractionStack::new(g.clone());
    for step in steps.iter().rev() {
        let ids = match *step {
            Step::Unpaired(i) | Step::Plain(i) | Step::Six(i) => vec![i],
            Step::Pair(k) => vec![pairing.pairs[k].1, pairing.pairs[k].0],
        };
        for i in ids {
            st.contract(&name(i), &cs[i].edge_set())?;
        }
    }
    let chain = nowhere_zero_flow(st.graph())?;
    trace.note(format!("start: nowhere-zero flow on the quotient with {} vertices", st.graph().vertex_count()));
    let mut b = Builder { g, st, chain, trace };

    let mut six_state: BTreeMap<usize, (u8, Vec<EdgeId>)> = BTreeMap::new();
    let mut pair_state: BTreeMap<usize, (u8, Vec<EdgeId>)> = BTreeMap::new();
    for step in &steps {
        match *step {
            Step::Unpaired(i) => {
                b.uncontract(i, &cs[i])?;
                let f = pairing.partner[&i];
                let witness = b.st.merged_vertices(&name(f))?[0];
                let h = b.st.graph().clone();
                b.chain = rescue_five_circuit(&b.chain, &h, &cs[i], witness, b.trace)?;
                if !b.chain.zeros(&h).is_empty() {
                    return Err(internal!("zero left after restoring unpaired circuit {i}"));
                }
            }
            Step::Plain(i) => {
                b.uncontract(i, &cs[i])?;
                let h = b.st.graph().clone();
                b.chain = if cs[i].len() < 20 {
                    fan_modify(&b.chain, &h, &cs[i], b.trace)?
                } else {
                    fan_extend(&b.chain, &h, &cs[i], b.trace)?
                };
            }
            Step::Six(i) => {
                b.uncontract(i, &cs[i])?;
                let h = b.st.graph().clone();
                let (ch, cond) = normalize_six_circuit(&b.chain, &h, &cs[i], b.trace)?;
                b.chain = ch;
                let order = natural_ordering(&h, &cs[i])?;
                let virt = b.substitute(&cs[i].edge_set(), &cs[i].vertices, &order, &SIX_CONDITIONS[cond as usize - 1])?;
                six_state.insert(i, (cond, virt));
            }
            Step::Pair(k) => {
                let (x, y) = pairing.pairs[k];
                b.st.uncontract(&name(x))?;
                b.st.uncontract(&name(y))?;
                let t = &pairing.s_graphs[k];
                b.zero(cs[x].edges.iter().chain(&cs[y].edges).copied());
                let h = b.st.graph().clone();
                let (ch, cond) = normalize_s_graph(&b.chain, &h, &t.subgraph, &t.seq, b.trace)?;
                b.chain = ch;
                let order = boundary_ordering(&h, &t.seq, &t.subgraph.edges)?;
                let virt = b.substitute(&t.subgraph.edges, &t.seq, &order, &S_CONDITIONS[cond as usize - 1])?;
                pair_state.insert(k, (cond, virt));
            }
        }
        b.check_flow("a restoration step")?;
    }
    if b.st.depth() != 0 {
        return Err(internal!("contractions left after restoring every circuit"));
    }

    // from here on only edges of hexagons and paired subgraphs change
    let frozen: BTreeMap<EdgeId, Gf4> = b.st.graph().edge_ids().map(|e| (e, b.chain.get(e))).collect();
    for (&i, (cond, virt)) in &six_state {
        b.unsubstitute(virt, &cs[i].edge_set())?;
        let h = b.st.graph().clone();
        let s = b.chain.string(&natural_ordering(&h, &cs[i])?);
        if !SIX_CONDITIONS[*cond as usize - 1].iter().all(|&(p, q)| s[p] == s[q]) {
            return Err(internal!("hexagon {i} lost condition {cond}"));
        }
        b.complete_six(i, &cs[i])?;
        b.check_flow("completing a hexagon")?;
    }
    for (&k, (cond, virt)) in &pair_state {
        let t = &pairing.s_graphs[k];
        b.unsubstitute(virt, &t.subgraph.edges)?;
        let h = b.st.graph().clone();
        let s = b.chain.string(&boundary_ordering(&h, &t.seq, &t.subgraph.edges)?);
        if !S_CONDITIONS[*cond as usize - 1].iter().all(|&(p, q)| s[p] == s[q]) {
            return Err(internal!("pair {k} lost condition {cond}"));
        }
        b.complete_pair(k, t)?;
        b.check_flow("completing a pair")?;
    }
    for (e, x) in frozen {
        if b.st.graph().has_edge(e) && b.chain.get(e) != x {
            return Err(internal!("frozen edge {e} changed while completing"));
        }
    }
    let final_graph = b.st.into_graph();
    let want: Vec<_> = g.edges().collect();
    let got: Vec<_> = final_graph.edges().collect();
    if want != got {
        return Err(internal!("graph differs from the input after restoration"));
    }
    let mut flow = Chain::new();
    for e in g.edge_ids() {
        flow.set(e, b.chain.get(e));
    }
    let cert = check_good(g, factor, pairing, &flow);
    if !cert.passed() {
        return Err(internal!("good-flow check failed: {}", cert.failures.join("; ")));
    }
    Ok((flow, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::{select_two_factor, uniform_weights};
    use crate::five::{build_pairing, classify_five_circuits};
    use crate::named::{k4, petersen, prism};

    fn run(g: &Graph) -> GoodCertificate {
        let classes = classify_five_circuits(g);
        let factor = select_two_factor(g, &uniform_weights(g), &classes.isolated).unwrap().factor;
        let pairing = build_pairing(g, &factor, &classes).unwrap();
        let (flow, cert) = build_good_flow(g, &factor, &pairing, &mut Trace::default()).unwrap();
        assert_eq!(check_good(g, &factor, &pairing, &flow), cert);
        cert
    }

    #[test]
    fn petersen_good_flow() {
        let cert = run(&petersen());
        assert!(cert.passed());
        assert!(cert.pair_zeros[0] <= 1);
    }

    #[test]
    fn k4_and_prism() {
        let c = run(&k4());
        assert_eq!(c.circuit_zeros, vec![0]);
        assert!(run(&prism()).passed());
    }

    #[test]
    fn bridge_table_covers_all_conditions() {
        let rep = certify_bridge_table();
        assert!(rep.impossible.is_empty(), "{:?}", rep.impossible);
        assert_eq!(rep.rows.len(), 13);
    }

    #[test]
    fn bad_flows_are_caught() {
        let g = petersen();
        let classes = classify_five_circuits(&g);
        let factor = select_two_factor(&g, &uniform_weights(&g), &classes.isolated).unwrap().factor;
        let pairing = build_pairing(&g, &factor, &classes).unwrap();
        let (mut flow, _) = build_good_flow(&g, &factor, &pairing, &mut Trace::default()).unwrap();
        let m = *factor.matching.iter().next().unwrap();
        flow.set(m, Gf4::Zero);
        let cert = check_good(&g, &factor, &pairing, &flow);
        assert!(!cert.properties[0]);
    }
}
