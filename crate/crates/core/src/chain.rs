//! Z2×Z2 chains on a graph and the basic extension/modification moves.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{internal, precondition, Result};
use crate::gf4::{BoundaryString, Gf4};
use crate::graph::{Circuit, EdgeId, Graph, VertexId};

/// Edge id → group element. Ids never written read as zero, so one chain
/// can be carried across contraction levels and virtual-edge insertions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Chain {
    values: Vec<Gf4>,
}

impl Chain {
    pub fn new() -> Chain {
        Chain::default()
    }

    pub fn get(&self, e: EdgeId) -> Gf4 {
        self.values.get(e).copied().unwrap_or_default()
    }

    pub fn set(&mut self, e: EdgeId, x: Gf4) {
        if self.values.len() <= e {
            self.values.resize(e + 1, Gf4::Zero);
        }
        self.values[e] = x;
    }

    pub fn add(&mut self, e: EdgeId, x: Gf4) {
        let v = self.get(e) + x;
        self.set(e, v);
    }

    pub fn zeros(&self, g: &Graph) -> BTreeSet<EdgeId> {
        g.edge_ids().filter(|&e| self.get(e).is_zero()).collect()
    }

    /// Sum over the incidence list; a loop appears twice and cancels.
    pub fn vertex_sum(&self, g: &Graph, v: VertexId) -> Gf4 {
        g.incident(v).iter().map(|&e| self.get(e)).sum()
    }

    pub fn is_flow(&self, g: &Graph) -> bool {
        g.vertices().all(|v| self.vertex_sum(g, v).is_zero())
    }

    pub fn unbalanced_vertices(&self, g: &Graph) -> Vec<VertexId> {
        g.vertices().filter(|&v| !self.vertex_sum(g, v).is_zero()).collect()
    }

    /// Zero-sum at every vertex outside `h`.
    pub fn is_extensible(&self, g: &Graph, h: &BTreeSet<VertexId>) -> bool {
        g.vertices().filter(|v| !h.contains(v)).all(|v| self.vertex_sum(g, v).is_zero())
    }

    pub fn string(&self, ordering: &[EdgeId]) -> BoundaryString {
        BoundaryString(ordering.iter().map(|&e| self.get(e)).collect())
    }

    /// Values on the given edges only, for compact comparisons.
    pub fn restricted(&self, edges: impl IntoIterator<Item = EdgeId>) -> BTreeMap<EdgeId, Gf4> {
        edges.into_iter().map(|e| (e, self.get(e))).collect()
    }
}

/// A connected subgraph given by an ordered vertex list and its edge set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub vertices: Vec<VertexId>,
    pub edges: BTreeSet<EdgeId>,
}

impl Subgraph {
    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.vertices.iter().copied().collect()
    }

    pub fn single_vertex(v: VertexId) -> Subgraph {
        Subgraph { vertices: vec![v], edges: BTreeSet::new() }
    }

    /// The boundary multiset, grouped by vertex in list order.
    pub fn boundary(&self, g: &Graph) -> Vec<EdgeId> {
        crate::graph::boundary_multiset(g, &self.vertices, &self.edges)
    }
}

impl From<&Circuit> for Subgraph {
    fn from(c: &Circuit) -> Subgraph {
        Subgraph { vertices: c.vertices.clone(), edges: c.edge_set() }
    }
}

/// Natural boundary ordering of a subgraph given by a sequence of its
/// degree-two vertices: position `i` is the unique edge at `seq[i]` that is
/// not in `edges`.
pub fn boundary_ordering(g: &Graph, seq: &[VertexId], edges: &BTreeSet<EdgeId>) -> Result<Vec<EdgeId>> {
    seq.iter()
        .map(|&v| {
            let outside: Vec<EdgeId> = g.incident(v).iter().copied().filter(|e| !edges.contains(e)).collect();
            match outside.as_slice() {
                [e] => Ok(*e),
                _ => Err(precondition!("vertex {v} has {} boundary edges, expected one", outside.len())),
            }
        })
        .collect()
}

/// The three congruences |∂H − Z| ≡ |∂H ∩ φ⁻¹(a)| (mod 2).
pub fn parity_check(chain: &Chain, g: &Graph, h: &Subgraph) -> bool {
    chain.string(&h.boundary(g)).satisfies_parity()
}

/// Extension by leaf peeling: a spanning tree of `h` is peeled leaf by
/// leaf, each tree edge taking the value that balances its leaf. Edges of
/// `h` off the tree are free; they get 0.
pub fn extend(chain: &mut Chain, g: &Graph, h: &Subgraph) -> Result<()> {
    let hv = h.vertex_set();
    if !chain.is_extensible(g, &hv) {
        return Err(precondition!("chain is not extensible for the given subgraph"));
    }
    let Some(&root) = h.vertices.iter().min() else {
        return Ok(());
    };
    for &e in &h.edges {
        chain.set(e, Gf4::Zero);
    }
    // BFS tree of h, smaller edge ids first
    let mut parent: BTreeMap<VertexId, EdgeId> = BTreeMap::new();
    let mut order = vec![root];
    let mut seen = BTreeSet::from([root]);
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &e in g.incident(v) {
            if !h.edges.contains(&e) {
                continue;
            }
            let w = g.other_end(e, v);
            if seen.insert(w) {
                parent.insert(w, e);
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    if seen.len() != hv.len() {
        return Err(precondition!("subgraph is not connected"));
    }
    for &v in order.iter().skip(1).rev() {
        let e = parent[&v];
        let others: Gf4 = g.incident(v).iter().filter(|&&f| f != e).map(|&f| chain.get(f)).sum();
        chain.set(e, others);
    }
    if !chain.is_flow(g) {
        return Err(internal!("leaf peeling left an unbalanced vertex"));
    }
    Ok(())
}

fn check_pair(x: Gf4, y: Gf4) -> Result<()> {
    if x.is_zero() || y.is_zero() || x == y {
        return Err(precondition!("need two distinct non-zero elements, got {x} and {y}"));
    }
    Ok(())
}

/// Lemma mod1: shifts two boundary edges with a common outside endpoint by
/// `x + y`.
pub fn mod1(chain: &mut Chain, g: &Graph, h: &Subgraph, e1: EdgeId, e2: EdgeId, x: Gf4, y: Gf4) -> Result<()> {
    check_pair(x, y)?;
    if e1 == e2 {
        return Err(precondition!("mod1 needs two distinct edges"));
    }
    let hv = h.vertex_set();
    let boundary = h.boundary(g);
    for e in [e1, e2] {
        if !boundary.contains(&e) {
            return Err(precondition!("edge {e} is not on the boundary"));
        }
        let a = chain.get(e);
        if a != x && a != y {
            return Err(precondition!("edge {e} has value {a}, outside {{{x}, {y}}}"));
        }
    }
    let outside = |e: EdgeId| -> BTreeSet<VertexId> {
        g.ends_of(e).into_iter().filter(|v| !hv.contains(v)).collect()
    };
    if outside(e1).intersection(&outside(e2)).next().is_none() {
        return Err(precondition!("edges {e1} and {e2} share no endpoint outside the subgraph"));
    }
    chain.add(e1, x + y);
    chain.add(e2, x + y);
    Ok(())
}

/// Lemma mod2: a Kempe switch from boundary edge `f` through the
/// `{x, y}`-coloured part of G − V(H). Returns the partner edge `f'`.
///
/// The walk is a BFS from the outside endpoint of `f` taking incidences in
/// edge-id order; the first `{x, y}`-coloured edge back into H other than
/// `f` is the partner.
pub fn mod2(chain: &mut Chain, g: &Graph, h: &Subgraph, f: EdgeId, x: Gf4, y: Gf4) -> Result<EdgeId> {
    check_pair(x, y)?;
    let hv = h.vertex_set();
    if !h.boundary(g).contains(&f) {
        return Err(precondition!("edge {f} is not on the boundary"));
    }
    let in_pair = |e: EdgeId| {
        let a = chain.get(e);
        a == x || a == y
    };
    if !in_pair(f) {
        return Err(precondition!("edge {f} has value {}, outside {{{x}, {y}}}", chain.get(f)));
    }
    let [a, b] = g.ends_of(f);
    if hv.contains(&a) && hv.contains(&b) {
        chain.add(f, x + y);
        return Ok(f);
    }
    let v2 = if hv.contains(&a) { b } else { a };
    let mut parent: BTreeMap<VertexId, (VertexId, EdgeId)> = BTreeMap::new();
    let mut seen = BTreeSet::from([v2]);
    let mut queue = VecDeque::from([v2]);
    let mut partner = None;
    'walk: while let Some(v) = queue.pop_front() {
        for &e in g.incident(v) {
            if e == f || !in_pair(e) {
                continue;
            }
            let w = g.other_end(e, v);
            if hv.contains(&w) {
                partner = Some((v, e));
                break 'walk;
            }
            if seen.insert(w) {
                parent.insert(w, (v, e));
                queue.push_back(w);
            }
        }
    }
    let Some((w2, f2)) = partner else {
        return Err(internal!("Kempe component from edge {f} has no partner edge; parity violated"));
    };
    let shift = x + y;
    chain.add(f, shift);
    chain.add(f2, shift);
    let mut v = w2;
    while v != v2 {
        let (p, e) = parent[&v];
        chain.add(e, shift);
        v = p;
    }
    Ok(f2)
}
