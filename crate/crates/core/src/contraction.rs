//! Contraction with exact, last-in-first-out uncontraction.
//!
//! Contracting an edge set merges each connected class of its endpoints into
//! one fresh vertex. The contracted edges disappear; every other edge keeps
//! its id and is re-attached to the merged vertex (edges with both ends in a
//! class become loops). The history records enough to put every endpoint
//! slot back where it was.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{internal, Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

#[derive(Clone, Debug)]
struct Entry {
    name: String,
    /// (merged vertex, original members)
    classes: Vec<(VertexId, Vec<VertexId>)>,
    removed: Vec<(EdgeId, [VertexId; 2])>,
    rewired: Vec<(EdgeId, [VertexId; 2])>,
}

#[derive(Clone, Debug)]
pub struct ContractionStack {
    graph: Graph,
    history: Vec<Entry>,
}

impl ContractionStack {
    pub fn new(graph: Graph) -> ContractionStack {
        ContractionStack { graph, history: Vec::new() }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Direct mutable access, for callers that add or delete edges between
    /// contractions. Such edits must not touch the edges recorded by an
    /// entry still on the stack.
    pub fn graph_mut(&mut self) -> &mut Graph {
        &mut self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn depth(&self) -> usize {
        self.history.len()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.history.iter().map(|e| e.name.as_str())
    }

    /// Merged vertices created by the named, still active contraction.
    pub fn merged_vertices(&self, name: &str) -> Result<Vec<VertexId>> {
        self.history
            .iter()
            .rev()
            .find(|e| e.name == name)
            .map(|e| e.classes.iter().map(|c| c.0).collect())
            .ok_or_else(|| Error::UnknownContraction(name.to_string()))
    }

    /// Contracts `edges`; returns the merged vertex of each endpoint class,
    /// ordered by the least original vertex of the class.
    pub fn contract(&mut self, name: &str, edges: &BTreeSet<EdgeId>) -> Result<Vec<VertexId>> {
        if edges.is_empty() {
            return Err(Error::Precondition("cannot contract an empty edge set".into()));
        }
        for &e in edges {
            self.graph.ends(e)?;
        }
        let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        fn find(parent: &mut BTreeMap<VertexId, VertexId>, v: VertexId) -> VertexId {
            let p = *parent.entry(v).or_insert(v);
            if p == v {
                return v;
            }
            let r = find(parent, p);
            parent.insert(v, r);
            r
        }
        for &e in edges {
            let [u, v] = self.graph.ends_of(e);
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent.insert(ru.max(rv), ru.min(rv));
            }
        }
        let members: Vec<VertexId> = parent.keys().copied().collect();
        let mut by_root: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for v in members {
            let r = find(&mut parent, v);
            by_root.entry(r).or_default().push(v);
        }
        let mut merge: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        let mut classes = Vec::new();
        for (next, vs) in (self.graph.next_vertex_id()..).zip(by_root.into_values()) {
            for &v in &vs {
                merge.insert(v, next);
            }
            classes.push((next, vs));
        }

        let mut removed = Vec::new();
        for &e in edges {
            removed.push((e, self.graph.remove_edge(e)?));
        }
        let touching: BTreeSet<EdgeId> =
            merge.keys().flat_map(|&v| self.graph.incident(v).iter().copied()).collect();
        let mut rewired = Vec::new();
        for e in touching {
            let [u, v] = self.graph.remove_edge(e)?;
            rewired.push((e, [u, v]));
        }
        for (_, vs) in &classes {
            for &v in vs {
                self.graph.remove_isolated_vertex(v);
            }
        }
        for &(m, _) in &classes {
            self.graph.add_vertex(m);
        }
        let map = |x: VertexId| *merge.get(&x).unwrap_or(&x);
        for &(e, [u, v]) in &rewired {
            self.graph.restore_edge(e, map(u), map(v));
        }
        let merged = classes.iter().map(|c| c.0).collect();
        self.history.push(Entry { name: name.to_string(), classes, removed, rewired });
        Ok(merged)
    }

    /// Undoes the most recent contraction, which must carry `name`.
    pub fn uncontract(&mut self, name: &str) -> Result<()> {
        let top = self.history.last().ok_or_else(|| Error::UnknownContraction(name.to_string()))?;
        if top.name != name {
            if self.history.iter().any(|e| e.name == name) {
                return Err(Error::ContractionOrder { requested: name.to_string(), top: top.name.clone() });
            }
            return Err(Error::UnknownContraction(name.to_string()));
        }
        let entry = self.history.pop().expect("checked non-empty");
        for &(e, _) in &entry.rewired {
            self.graph
                .remove_edge(e)
                .map_err(|_| internal!("edge {e} vanished while contraction `{name}` was active"))?;
        }
        for &(m, _) in &entry.classes {
            if self.graph.degree(m) != 0 {
                return Err(internal!("merged vertex {m} of `{name}` gained foreign edges"));
            }
            self.graph.remove_isolated_vertex(m);
        }
        for (_, vs) in &entry.classes {
            for &v in vs {
                self.graph.add_vertex(v);
            }
        }
        for &(e, [u, v]) in entry.rewired.iter().chain(&entry.removed) {
            self.graph.restore_edge(e, u, v);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::circuits_up_to;
    use crate::named::{k4, petersen};

    #[test]
    fn circuit_round_trip() {
        let g = petersen();
        for c in circuits_up_to(&g, 6) {
            let mut st = ContractionStack::new(g.clone());
            let vs = st.contract("c", &c.edge_set()).unwrap();
            assert_eq!(vs.len(), 1);
            assert_eq!(st.graph().vertex_count(), 10 - c.len() + 1);
            assert!(st.graph().check_consistency());
            st.uncontract("c").unwrap();
            assert_eq!(st.graph(), &g);
        }
    }

    #[test]
    fn petersen_two_factor_quotient() {
        let g = petersen();
        let outer: BTreeSet<_> = (0..5).collect();
        let inner: BTreeSet<_> = (10..15).collect();
        let mut st = ContractionStack::new(g.clone());
        let a = st.contract("outer", &outer).unwrap()[0];
        let b = st.contract("inner", &inner).unwrap()[0];
        let h = st.graph();
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.edge_count(), 5);
        assert_eq!(h.edges_between(a, b).len(), 5);
        assert!(matches!(st.uncontract("outer"), Err(Error::ContractionOrder { .. })));
        st.uncontract("inner").unwrap();
        st.uncontract("outer").unwrap();
        assert_eq!(st.graph(), &g);
    }

    #[test]
    fn chord_becomes_loop() {
        // 4-circuit 0 1 2 3 with chord 0-2 in K4
        let g = k4();
        let circuit: BTreeSet<_> = [0, 3, 5, 2].into_iter().collect(); // 01 12 23 30
        let mut st = ContractionStack::new(g.clone());
        let m = st.contract("c", &circuit).unwrap()[0];
        let h = st.graph();
        assert_eq!(h.vertex_count(), 1);
        assert_eq!(h.degree(m), 4);
        assert!(h.edge_ids().all(|e| h.is_loop(e)));
        st.uncontract("c").unwrap();
        assert_eq!(st.graph(), &g);
        assert!(matches!(st.uncontract("c"), Err(Error::UnknownContraction(_))));
    }

    #[test]
    fn rejects_missing_edges() {
        let mut st = ContractionStack::new(k4());
        assert_eq!(st.contract("x", &BTreeSet::from([42])), Err(Error::UnknownEdge(42)));
    }
}
