//! Local flow surgery on one circuit or one small subgraph at a time.
//!
//! Every function takes an `H`-extensible chain and returns either a flow
//! (an extension or modification on `H`) or a chain whose boundary string
//! on `H` has been normalized by the case tables. Modifications never move
//! a zero outside `E(H)`.

use std::collections::BTreeSet;

use crate::chain::{boundary_ordering, extend, mod1, mod2, Chain, Subgraph};
use crate::error::{internal, precondition, Result};
use crate::gf4::{ColourPerm, Gf4};
use crate::graph::{Circuit, EdgeId, Graph, VertexId};
use crate::search::{find_flow, FlowProblem, ANY, NONZERO, ZERO_ONLY};
use crate::tables::{Move, Table, TableKind};
use crate::trace::Trace;

const MAX_TABLE_STEPS: usize = 64;

pub fn label(vertices: &[VertexId]) -> String {
    let parts: Vec<String> = vertices.iter().map(|v| v.to_string()).collect();
    parts.join("-")
}

/// Boundary ordering given by the circuit's own vertex order.
pub fn natural_ordering(g: &Graph, c: &Circuit) -> Result<Vec<EdgeId>> {
    boundary_ordering(g, &c.vertices, &c.edge_set())
}

fn check_ready(chain: &Chain, g: &Graph, h: &Subgraph, order: &[EdgeId]) -> Result<()> {
    if h.vertices.iter().any(|&v| g.degree(v) != 3) {
        return Err(precondition!("subgraph {} has a vertex of degree other than 3", label(&h.vertices)));
    }
    if !chain.is_extensible(g, &h.vertex_set()) {
        return Err(precondition!("chain is not extensible for {}", label(&h.vertices)));
    }
    if order.iter().any(|&e| chain.get(e).is_zero()) {
        return Err(precondition!("boundary of {} has a zero", label(&h.vertices)));
    }
    Ok(())
}

/// Explicit extension into a 5-circuit whose boundary string has three
/// cyclically consecutive equal values. `None` if there is no such triple.
/// The circuit is used in the order given.
pub fn extend_five_circuit(chain: &Chain, g: &Graph, c: &Circuit, trace: &mut Trace) -> Result<Option<Chain>> {
    if c.len() != 5 {
        return Err(precondition!("expected a 5-circuit, got length {}", c.len()));
    }
    let order = natural_ordering(g, c)?;
    check_ready(chain, g, &Subgraph::from(c), &order)?;
    let s = chain.string(&order);
    let Some(r) = (0..5).find(|&r| s[r] == s[(r + 1) % 5] && s[r] == s[(r + 2) % 5]) else {
        return Ok(None);
    };
    let a = |j: usize| s[(r + j) % 5];
    // the colour renaming taking a0, a3, a4 to R, G, B, inverted
    let inv = ColourPerm::from_images([a(0), a(3), a(4)])?;
    let mut out = chain.clone();
    for (j, x) in [Gf4::B, Gf4::G, Gf4::B, Gf4::R, Gf4::G].into_iter().enumerate() {
        out.set(c.edges[(r + j) % 5], inv.apply(x));
    }
    if !out.is_flow(g) || c.edges.iter().any(|&e| out.get(e).is_zero()) {
        return Err(internal!("explicit 5-circuit extension failed on {s}"));
    }
    trace.step("lemma5c", &label(&c.vertices), &s.to_string(), &out.string(&order).to_string(), "5c");
    Ok(Some(out))
}

/// Applies one table move to the real chain.
fn apply(chain: &mut Chain, g: &Graph, h: &Subgraph, order: &[EdgeId], mv: Move) -> Result<()> {
    match mv {
        Move::Mod1 { i, j, x, y } => mod1(chain, g, h, order[i], order[j], x, y),
        Move::Mod2 { i, x, y } => mod2(chain, g, h, order[i], x, y).map(|_| ()),
    }
}

/// Drives a table until its success condition holds; returns the
/// condition reached (0 for the 5-circuit triple).
fn run_table(
    kind: TableKind,
    chain: &mut Chain,
    g: &Graph,
    h: &Subgraph,
    order: &[EdgeId],
    trace: &mut Trace,
) -> Result<u8> {
    let table = Table::get(kind);
    let name = label(&h.vertices);
    for _ in 0..MAX_TABLE_STEPS {
        let s = chain.string(order);
        if !s.satisfies_parity() {
            return Err(internal!("boundary {s} of {name} violates parity"));
        }
        if let Some(k) = table.success(&s) {
            return Ok(k);
        }
        let (row, mv) = table.lookup(&s).ok_or_else(|| internal!("no {} row matches {s}", kind.name()))?;
        let mv = mv.ok_or_else(|| internal!("{} row {} has no move", kind.name(), table.rows[row].start))?;
        apply(chain, g, h, order, mv)?;
        let after = chain.string(order);
        let cond = table.success(&after).map_or("-".to_string(), |k| k.to_string());
        trace.step(kind.name(), &name, &s.to_string(), &after.to_string(), &cond);
    }
    Err(internal!("{} script on {name} did not terminate", kind.name()))
}

/// A flow without zeros on a 5-circuit `c`, given a vertex outside `c`
/// adjacent to at least two of its vertices.
pub fn rescue_five_circuit(
    chain: &Chain,
    g: &Graph,
    c: &Circuit,
    witness: VertexId,
    trace: &mut Trace,
) -> Result<Chain> {
    if c.len() != 5 || c.contains_vertex(witness) {
        return Err(precondition!("need a 5-circuit and a vertex outside it"));
    }
    let order = natural_ordering(g, c)?;
    let hits: Vec<usize> = (0..5).filter(|&i| g.other_end(order[i], c.vertices[i]) == witness).collect();
    let (i, k) = match hits.as_slice() {
        [i, k, ..] => (*i, *k),
        _ => return Err(precondition!("vertex {witness} has fewer than two neighbours on the circuit")),
    };
    // orient so that the witness sees v0 and one of v1, v2
    let (start, forward, kind) = match (k + 5 - i) % 5 {
        1 => (i, true, TableKind::RescueAdjacent),
        4 => (i, false, TableKind::RescueAdjacent),
        2 => (i, true, TableKind::RescueSkip),
        _ => (i, false, TableKind::RescueSkip),
    };
    let oc = c.oriented(start, forward);
    let h = Subgraph::from(&oc);
    let order = natural_ordering(g, &oc)?;
    check_ready(chain, g, &h, &order)?;
    let mut work = chain.clone();
    run_table(kind, &mut work, g, &h, &order, trace)?;
    extend_five_circuit(&work, g, &oc, trace)?
        .ok_or_else(|| internal!("rescue script ended without an equal triple"))
}

/// Normalizes the boundary string of a 6-circuit (in the given vertex
/// order) until one of the six pairing conditions holds.
pub fn normalize_six_circuit(chain: &Chain, g: &Graph, c: &Circuit, trace: &mut Trace) -> Result<(Chain, u8)> {
    if c.len() != 6 {
        return Err(precondition!("expected a 6-circuit, got length {}", c.len()));
    }
    let h = Subgraph::from(c);
    let order = natural_ordering(g, c)?;
    check_ready(chain, g, &h, &order)?;
    let mut work = chain.clone();
    let k = run_table(TableKind::Six, &mut work, g, &h, &order, trace)?;
    Ok((work, k))
}

/// Normalizes the boundary string of a copy of `S` until one of its eight
/// conditions holds. `seq` lists the six degree-two vertices in the
/// natural order.
pub fn normalize_s_graph(
    chain: &Chain,
    g: &Graph,
    h: &Subgraph,
    seq: &[VertexId],
    trace: &mut Trace,
) -> Result<(Chain, u8)> {
    if seq.len() != 6 {
        return Err(precondition!("S has six boundary vertices, got {}", seq.len()));
    }
    let order = boundary_ordering(g, seq, &h.edges)?;
    check_ready(chain, g, h, &order)?;
    let mut work = chain.clone();
    let k = run_table(TableKind::STwoPentagons, &mut work, g, h, &order, trace)?;
    Ok((work, k))
}

fn zeros_on(chain: &Chain, edges: &[EdgeId]) -> usize {
    edges.iter().filter(|&&e| chain.get(e).is_zero()).count()
}

/// Extension into a circuit with at most a quarter of its edges zero: any
/// extension, shifted along the circuit by its least frequent value.
pub fn fan_extend(chain: &Chain, g: &Graph, c: &Circuit, trace: &mut Trace) -> Result<Chain> {
    let h = Subgraph::from(c);
    let mut out = chain.clone();
    extend(&mut out, g, &h)?;
    let count = |x: Gf4| c.edges.iter().filter(|&&e| out.get(e) == x).count();
    let shift = Gf4::ALL.into_iter().min_by_key(|&x| count(x)).expect("four elements");
    for &e in &c.edges {
        out.add(e, shift);
    }
    let z = zeros_on(&out, &c.edges);
    if 4 * z > c.len() || !out.is_flow(g) {
        return Err(internal!("circuit extension left {z} zeros on a {}-circuit", c.len()));
    }
    trace.step("fan-extend", &label(&c.vertices), "-", &format!("zeros={z}"), "-");
    Ok(out)
}

/// A modification on a circuit of length below 20 with strictly fewer
/// than a quarter of its edges zero. Zeros outside the circuit stay put.
pub fn fan_modify(chain: &Chain, g: &Graph, c: &Circuit, trace: &mut Trace) -> Result<Chain> {
    if c.len() >= 20 {
        return Err(precondition!("circuit of length {} is too long for the strict bound", c.len()));
    }
    let first = fan_extend(chain, g, c, trace)?;
    if 4 * zeros_on(&first, &c.edges) < c.len() {
        return Ok(first);
    }
    let on_c: BTreeSet<EdgeId> = c.edge_set();
    let mut p = FlowProblem { zero_budget: Some((on_c.clone(), (c.len() - 1) / 4)), ..FlowProblem::default() };
    for e in g.edge_ids() {
        let mask = if on_c.contains(&e) {
            ANY
        } else if first.get(e).is_zero() {
            ZERO_ONLY
        } else {
            NONZERO
        };
        p.allowed.insert(e, mask);
        p.preferred.insert(e, first.get(e));
    }
    let out = find_flow(g, &p)?
        .ok_or_else(|| internal!("no modification meets the strict zero bound on a {}-circuit", c.len()))?;
    trace.step(
        "fan-modify",
        &label(&c.vertices),
        &format!("zeros={}", zeros_on(&first, &c.edges)),
        &format!("zeros={}", zeros_on(&out, &c.edges)),
        "-",
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::circuits_up_to;
    use crate::named::petersen;

    fn outer(g: &Graph) -> Circuit {
        circuits_up_to(g, 5).into_iter().find(|c| c.vertex_set() == (0..5).collect()).unwrap()
    }

    /// A chain on Petersen that balances every vertex off the circuit `c`,
    /// with the given boundary string on the spokes read along `c`. Built
    /// as a flow on the quotient by `c` (a wheel).
    fn chain_with_boundary(g: &Graph, c: &Circuit, s: &str) -> Chain {
        let order = natural_ordering(g, c).unwrap();
        let want = crate::gf4::BoundaryString::parse(s).unwrap();
        let mut st = crate::contraction::ContractionStack::new(g.clone());
        st.contract("c", &c.edge_set()).unwrap();
        // Petersen has no nowhere-zero flow, so the inside may need zeros
        let mut p = FlowProblem::default();
        for (k, &e) in order.iter().enumerate() {
            p.allowed.insert(e, 1 << want[k].bits());
        }
        find_flow(st.graph(), &p).unwrap().expect("wheel flow with the requested spokes")
    }

    #[test]
    fn five_circuit_triple_assignment() {
        let g = petersen();
        let c = outer(&g);
        let mut tr = Trace::new(true);
        let ch = chain_with_boundary(&g, &c, "RRRGB");
        let f = extend_five_circuit(&ch, &g, &c, &mut tr).unwrap().unwrap();
        assert!(f.is_flow(&g));
        let vals: Vec<Gf4> = c.edges.iter().map(|&e| f.get(e)).collect();
        assert_eq!(vals, vec![Gf4::B, Gf4::G, Gf4::B, Gf4::R, Gf4::G]);
        assert_eq!(tr.lines.len(), 1);
    }

    #[test]
    fn five_circuit_without_triple_is_not_applicable() {
        let g = petersen();
        let c = outer(&g);
        let ch = chain_with_boundary(&g, &c, "RGRBR");
        assert_eq!(extend_five_circuit(&ch, &g, &c, &mut Trace::default()).unwrap(), None);
    }

    #[test]
    fn fan_extend_quarter_bound_on_petersen_circuits() {
        let g = petersen();
        let all: BTreeSet<EdgeId> = g.edge_ids().collect();
        let p = FlowProblem { zero_budget: Some((all, 1)), ..FlowProblem::default() };
        let base = find_flow(&g, &p).unwrap().unwrap();
        for c in circuits_up_to(&g, 9) {
            let f = fan_extend(&base, &g, &c, &mut Trace::default()).unwrap();
            assert!(f.is_flow(&g));
            assert!(4 * zeros_on(&f, &c.edges) <= c.len());
            let m = fan_modify(&base, &g, &c, &mut Trace::default()).unwrap();
            assert!(4 * zeros_on(&m, &c.edges) < c.len());
            assert_eq!(m.zeros(&g).difference(&c.edge_set()).count(), base.zeros(&g).difference(&c.edge_set()).count());
        }
    }

    #[test]
    fn rescue_requires_a_witness() {
        // no outside vertex of Petersen sees two outer vertices
        let g = petersen();
        let c = outer(&g);
        let ch = chain_with_boundary(&g, &c, "RGRBR");
        assert!(rescue_five_circuit(&ch, &g, &c, 5, &mut Trace::default()).is_err());
    }
}
