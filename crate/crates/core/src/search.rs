//! Backtracking search for Z2×Z2 flows with per-edge value restrictions.
//!
//! Edges are taken in an order that closes vertices early; an edge that is
//! the last unassigned one at some vertex gets its forced value instead of
//! branching, so the branching depth is roughly the cycle rank.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::gf4::Gf4;
use crate::graph::{bridges, EdgeId, Graph, VertexId};

/// Bitmask over `{0, R, G, B}`; bit `k` allows `Gf4::from_bits(k)`.
pub type Mask = u8;
pub const ANY: Mask = 0b1111;
pub const NONZERO: Mask = 0b1110;
pub const ZERO_ONLY: Mask = 0b0001;

fn allows(mask: Mask, x: Gf4) -> bool {
    mask & (1 << x.bits()) != 0
}

#[derive(Clone, Debug)]
pub struct FlowProblem {
    /// Allowed values per edge; edges not listed may take any value.
    pub allowed: BTreeMap<EdgeId, Mask>,
    /// Values tried first, per edge (the search is otherwise R, G, B, 0).
    pub preferred: BTreeMap<EdgeId, Gf4>,
    /// At most `limit` zeros among `edges`.
    pub zero_budget: Option<(BTreeSet<EdgeId>, usize)>,
    /// Abort after this many search nodes.
    pub node_cap: u64,
}

impl Default for FlowProblem {
    fn default() -> FlowProblem {
        FlowProblem { allowed: BTreeMap::new(), preferred: BTreeMap::new(), zero_budget: None, node_cap: 50_000_000 }
    }
}

struct Plan {
    order: Vec<EdgeId>,
    /// Vertices whose last incident (non-loop) edge is `order[i]`.
    closes: Vec<Vec<VertexId>>,
}

fn plan(g: &Graph) -> Plan {
    // BFS over vertices; list each vertex's edges when it is reached
    let mut order = Vec::new();
    let mut listed = BTreeSet::new();
    let mut seen = BTreeSet::new();
    for s in g.vertices() {
        if !seen.insert(s) {
            continue;
        }
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &e in g.incident(v) {
                if listed.insert(e) {
                    order.push(e);
                }
                let w = g.other_end(e, v);
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
    }
    let pos: BTreeMap<EdgeId, usize> = order.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut closes = vec![Vec::new(); order.len()];
    for v in g.vertices() {
        let last = g.incident(v).iter().filter(|&&e| !g.is_loop(e)).map(|e| pos[e]).max();
        if let Some(i) = last {
            closes[i].push(v);
        }
    }
    Plan { order, closes }
}

struct Search<'a> {
    g: &'a Graph,
    p: &'a FlowProblem,
    plan: Plan,
    values: Chain,
    assigned: BTreeSet<EdgeId>,
    zeros_used: usize,
    nodes: u64,
}

impl Search<'_> {
    fn mask(&self, e: EdgeId) -> Mask {
        self.p.allowed.get(&e).copied().unwrap_or(ANY)
    }

    fn counts_zero(&self, e: EdgeId) -> bool {
        self.p.zero_budget.as_ref().is_some_and(|(s, _)| s.contains(&e))
    }

    fn budget(&self) -> usize {
        self.p.zero_budget.as_ref().map_or(usize::MAX, |(_, l)| *l)
    }

    /// Sum at `v` over assigned edges other than `skip`.
    fn partial_sum(&self, v: VertexId, skip: EdgeId) -> Gf4 {
        self.g.incident(v).iter().filter(|&&e| e != skip).map(|&e| self.values.get(e)).sum()
    }

    fn candidates(&self, i: usize) -> Vec<Gf4> {
        let e = self.plan.order[i];
        let mask = self.mask(e);
        if let Some(&v) = self.plan.closes[i].first() {
            let forced = self.partial_sum(v, e);
            return if allows(mask, forced) { vec![forced] } else { Vec::new() };
        }
        let mut out = Vec::with_capacity(4);
        if let Some(&x) = self.p.preferred.get(&e) {
            if allows(mask, x) {
                out.push(x);
            }
        }
        for x in [Gf4::R, Gf4::G, Gf4::B, Gf4::Zero] {
            if allows(mask, x) && !out.contains(&x) {
                out.push(x);
            }
        }
        out
    }

    fn run(&mut self, i: usize) -> Result<bool> {
        if i == self.plan.order.len() {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.p.node_cap {
            return Err(Error::CapExceeded(format!("flow search exceeded {} nodes", self.p.node_cap)));
        }
        let e = self.plan.order[i];
        for x in self.candidates(i) {
            let zero = x.is_zero() && self.counts_zero(e);
            if zero && self.zeros_used + 1 > self.budget() {
                continue;
            }
            self.values.set(e, x);
            self.assigned.insert(e);
            let ok = self.plan.closes[i].iter().all(|&v| self.partial_sum(v, usize::MAX).is_zero());
            if ok {
                if zero {
                    self.zeros_used += 1;
                }
                if self.run(i + 1)? {
                    return Ok(true);
                }
                if zero {
                    self.zeros_used -= 1;
                }
            }
            self.assigned.remove(&e);
            self.values.set(e, Gf4::Zero);
        }
        Ok(false)
    }
}

/// Finds a flow on `g` meeting the problem's restrictions, or `None` when
/// none exists.
pub fn find_flow(g: &Graph, problem: &FlowProblem) -> Result<Option<Chain>> {
    let mut s = Search {
        g,
        p: problem,
        plan: plan(g),
        values: Chain::new(),
        assigned: BTreeSet::new(),
        zeros_used: 0,
        nodes: 0,
    };
    Ok(if s.run(0)? { Some(s.values) } else { None })
}

/// A nowhere-zero Z2×Z2 flow. Loops get `R`.
pub fn nowhere_zero_flow(h: &Graph) -> Result<Chain> {
    if let Some(&e) = bridges(h).iter().next() {
        let [u, v] = h.ends_of(e);
        return Err(Error::Bridge { edge: e, u, v });
    }
    let mut p = FlowProblem::default();
    for e in h.edge_ids() {
        p.allowed.insert(e, NONZERO);
        if h.is_loop(e) {
            p.preferred.insert(e, Gf4::R);
        }
    }
    find_flow(h, &p)?.ok_or_else(|| Error::Internal("no nowhere-zero flow on a bridgeless graph".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::{k33, k4, petersen, theta};

    #[test]
    fn nowhere_zero_on_small_graphs() {
        for g in [theta(), k4(), k33()] {
            let f = nowhere_zero_flow(&g).unwrap();
            assert!(f.is_flow(&g));
            assert!(f.zeros(&g).is_empty());
        }
    }

    #[test]
    fn petersen_has_no_nowhere_zero_flow_but_its_quotient_does() {
        let g = petersen();
        let mut p = FlowProblem::default();
        for e in g.edge_ids() {
            p.allowed.insert(e, NONZERO);
        }
        assert_eq!(find_flow(&g, &p).unwrap(), None);
        let h = Graph::from_edges(2, &[(0, 1); 5]);
        let f = nowhere_zero_flow(&h).unwrap();
        assert!(f.is_flow(&h) && f.zeros(&h).is_empty());
    }

    #[test]
    fn loops_get_r() {
        let mut h = Graph::new();
        h.add_vertex(0);
        h.add_edge(0, 0);
        h.add_edge(0, 0);
        let f = nowhere_zero_flow(&h).unwrap();
        assert_eq!((f.get(0), f.get(1)), (Gf4::R, Gf4::R));
    }

    #[test]
    fn bridge_is_rejected() {
        let h = Graph::from_edges(2, &[(0, 1)]);
        assert!(matches!(nowhere_zero_flow(&h), Err(Error::Bridge { edge: 0, .. })));
    }

    #[test]
    fn zero_budget_is_respected() {
        // Petersen has no nowhere-zero flow, but deleting one edge leaves
        // a colourable graph
        let g = petersen();
        let all: BTreeSet<EdgeId> = g.edge_ids().collect();
        let with = |limit| FlowProblem { zero_budget: Some((all.clone(), limit)), ..FlowProblem::default() };
        assert_eq!(find_flow(&g, &with(0)).unwrap(), None);
        let f = find_flow(&g, &with(1)).unwrap().unwrap();
        assert!(f.is_flow(&g));
        assert_eq!(f.zeros(&g).len(), 1);
    }
}
