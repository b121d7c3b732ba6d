//! Multigraphs with stable edge identities.
//!
//! Loops and parallel edges are first-class: contraction produces both, and
//! the smallest bridgeless cubic graph is the theta graph (three parallel
//! edges). A loop is listed twice in its vertex's incidence list, so degree
//! is simply the list length.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    ends: Vec<Option<[VertexId; 2]>>,
    incidence: BTreeMap<VertexId, Vec<EdgeId>>,
}

impl Graph {
    pub fn new() -> Graph {
        Graph::default()
    }

    /// A graph on vertices `0..n` with edges numbered in the given order.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Graph {
        let mut g = Graph::new();
        for v in 0..n {
            g.add_vertex(v);
        }
        for &(u, v) in edges {
            g.add_vertex(u);
            g.add_vertex(v);
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.incidence.entry(v).or_default();
    }

    /// Adds an edge with the next unused id. Ids are never reused, even
    /// after removal.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> EdgeId {
        let e = self.ends.len();
        self.ends.push(None);
        self.attach(e, u, v);
        e
    }

    fn attach(&mut self, e: EdgeId, u: VertexId, v: VertexId) {
        if self.ends.len() <= e {
            self.ends.resize(e + 1, None);
        }
        debug_assert!(self.ends[e].is_none());
        self.ends[e] = Some([u, v]);
        for w in [u, v] {
            let list = self.incidence.entry(w).or_default();
            let pos = list.partition_point(|&x| x < e);
            list.insert(pos, e);
        }
    }

    /// Re-inserts an edge under an id it previously held.
    pub(crate) fn restore_edge(&mut self, e: EdgeId, u: VertexId, v: VertexId) {
        self.attach(e, u, v);
    }

    pub fn remove_edge(&mut self, e: EdgeId) -> Result<[VertexId; 2]> {
        let [u, v] = self.ends(e)?;
        self.ends[e] = None;
        for w in [u, v] {
            let list = self.incidence.get_mut(&w).expect("endpoint present");
            let pos = list.iter().position(|&x| x == e).expect("incidence consistent");
            list.remove(pos);
        }
        Ok([u, v])
    }

    /// Removes a vertex; it must have no incident edges.
    pub(crate) fn remove_isolated_vertex(&mut self, v: VertexId) {
        let list = self.incidence.remove(&v);
        debug_assert!(list.is_some_and(|l| l.is_empty()));
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.incidence.contains_key(&v)
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        self.ends.get(e).is_some_and(|x| x.is_some())
    }

    pub fn ends(&self, e: EdgeId) -> Result<[VertexId; 2]> {
        self.ends.get(e).copied().flatten().ok_or(Error::UnknownEdge(e))
    }

    /// Panicking variant for ids already known to be live.
    pub fn ends_of(&self, e: EdgeId) -> [VertexId; 2] {
        self.ends[e].expect("live edge")
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let [a, b] = self.ends_of(e);
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let [a, b] = self.ends_of(e);
        a == b
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        self.incidence.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident(v).len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.incidence.keys().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, [VertexId; 2])> + '_ {
        self.ends.iter().enumerate().filter_map(|(e, x)| x.map(|x| (e, x)))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges().map(|(e, _)| e)
    }

    pub fn vertex_count(&self) -> usize {
        self.incidence.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.iter().filter(|x| x.is_some()).count()
    }

    /// One past the largest edge id ever issued.
    pub fn edge_id_bound(&self) -> usize {
        self.ends.len()
    }

    pub fn next_vertex_id(&self) -> VertexId {
        self.incidence.keys().next_back().map_or(0, |&v| v + 1)
    }

    /// Edges between `u` and `v` (for `u == v`, the loops at `u`).
    pub fn edges_between(&self, u: VertexId, v: VertexId) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = self
            .incident(u)
            .iter()
            .copied()
            .filter(|&e| {
                let [a, b] = self.ends_of(e);
                (a == u && b == v) || (a == v && b == u)
            })
            .collect();
        out.dedup();
        out
    }

    pub fn is_cubic(&self) -> bool {
        self.vertices().all(|v| self.degree(v) == 3)
    }

    pub fn validate_cubic(&self) -> Result<()> {
        if self.vertex_count() == 0 {
            return Err(Error::Empty);
        }
        for v in self.vertices() {
            if self.degree(v) != 3 {
                return Err(Error::NotCubic { vertex: v, degree: self.degree(v) });
            }
        }
        Ok(())
    }

    /// Full cubic + connected + bridgeless validation for pipeline input.
    pub fn validate_bridgeless_cubic(&self) -> Result<()> {
        self.validate_cubic()?;
        if self.components().len() != 1 {
            return Err(Error::Disconnected);
        }
        if let Some(&e) = bridges(self).iter().next() {
            let [u, v] = self.ends_of(e);
            return Err(Error::Bridge { edge: e, u, v });
        }
        Ok(())
    }

    /// Rescans the edge table and checks it against the incidence index.
    pub fn check_consistency(&self) -> bool {
        let mut expect: BTreeMap<VertexId, Vec<EdgeId>> =
            self.incidence.keys().map(|&v| (v, Vec::new())).collect();
        for (e, ends) in self.edges() {
            for w in ends {
                match expect.get_mut(&w) {
                    Some(l) => l.push(e),
                    None => return false,
                }
            }
        }
        expect.values_mut().for_each(|l| l.sort_unstable());
        expect == self.incidence
    }

    pub fn components(&self) -> Vec<Vec<VertexId>> {
        self.components_without(&BTreeSet::new())
    }

    /// Components of the graph with the given edges deleted.
    pub fn components_without(&self, removed: &BTreeSet<EdgeId>) -> Vec<Vec<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for s in self.vertices() {
            if !seen.insert(s) {
                continue;
            }
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &e in self.incident(v) {
                    if removed.contains(&e) {
                        continue;
                    }
                    let w = self.other_end(e, v);
                    if seen.insert(w) {
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn edge_list(&self) -> Vec<(VertexId, VertexId)> {
        self.edges().map(|(_, [u, v])| (u, v)).collect()
    }
}

/// Decodes one graph6 line. Only cubic graphs are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let g = decode_graph6(text)?;
    g.validate_cubic()?;
    Ok(g)
}

/// Decodes one graph6 line without any degree requirement.
pub fn decode_graph6(text: &str) -> Result<Graph> {
    let line = text.trim();
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Malformed("empty graph6 line".into()));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Malformed(format!("byte {b} outside the graph6 range")));
    }
    let six = |b: u8| (b - 63) as usize;
    let (n, rest) = if bytes[0] != 126 {
        (six(bytes[0]), &bytes[1..])
    } else if bytes.len() >= 4 && bytes[1] != 126 {
        (six(bytes[1]) << 12 | six(bytes[2]) << 6 | six(bytes[3]), &bytes[4..])
    } else if bytes.len() >= 8 {
        let mut n = 0;
        for &b in &bytes[2..8] {
            n = n << 6 | six(b);
        }
        (n, &bytes[8..])
    } else {
        return Err(Error::Malformed("truncated graph6 size field".into()));
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    if rest.len() != need {
        return Err(Error::Malformed(format!(
            "graph6 body has {} bytes, {need} expected for {n} vertices",
            rest.len()
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = six(rest[k / 6]);
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if rest.last().is_some_and(|&b| {
        let pad = need * 6 - pairs;
        pad > 0 && six(b) & ((1 << pad) - 1) != 0
    }) {
        return Err(Error::Malformed("nonzero graph6 padding bits".into()));
    }
    Ok(Graph::from_edges(n, &edges))
}

/// Encodes a simple graph on vertices `0..n` as graph6.
pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.vertex_count();
    if g.vertices().enumerate().any(|(i, v)| i != v) {
        return Err(Error::Precondition("graph6 needs vertices 0..n".into()));
    }
    let mut adj = HashSet::new();
    for (_, [u, v]) in g.edges() {
        if u == v || !adj.insert((u.min(v), u.max(v))) {
            return Err(Error::Precondition("graph6 cannot encode loops or parallel edges".into()));
        }
    }
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258047 {
        out.push(126);
        for s in [12, 6, 0] {
            out.push((n >> s & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for s in [30, 24, 18, 12, 6, 0] {
            out.push((n >> s & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | adj.contains(&(i, j)) as u8;
            bits += 1;
            if bits == 6 {
                out.push(acc + 63);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push((acc << (6 - bits)) + 63);
    }
    Ok(String::from_utf8(out).expect("ascii"))
}

/// Parses lines of `u v` pairs. Vertex labels are arbitrary non-negative
/// integers, renumbered densely in order of first appearance; edge ids
/// follow line order. Blank lines and `#` comments are skipped, and `,`
/// separates records on one line.
pub fn parse_edge_list(text: &str, require_cubic: bool) -> Result<Graph> {
    let mut labels: BTreeMap<u64, VertexId> = BTreeMap::new();
    let mut order: Vec<u64> = Vec::new();
    let mut raw = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for record in line.split(',') {
            let toks: Vec<&str> = record.split_whitespace().collect();
            if toks.is_empty() {
                continue;
            }
            if toks.len() != 2 {
                return Err(Error::Malformed(format!(
                    "line {}: expected two vertex labels, found {}",
                    lineno + 1,
                    toks.len()
                )));
            }
            let mut pair = [0; 2];
            for (slot, t) in pair.iter_mut().zip(&toks) {
                let x: u64 = t.parse().map_err(|_| {
                    Error::Malformed(format!("line {}: `{t}` is not a vertex label", lineno + 1))
                })?;
                *slot = *labels.entry(x).or_insert_with(|| {
                    order.push(x);
                    order.len() - 1
                });
            }
            raw.push((pair[0], pair[1]));
        }
    }
    if raw.is_empty() {
        return Err(Error::Empty);
    }
    let g = Graph::from_edges(order.len(), &raw);
    if require_cubic {
        g.validate_cubic()?;
    }
    Ok(g)
}

/// Bridges by Tarjan's lowpoint method. Parallel edges are handled by
/// skipping only the tree edge itself, not every edge to the parent.
pub fn bridges(g: &Graph) -> BTreeSet<EdgeId> {
    let mut disc: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut low: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut out = BTreeSet::new();
    let mut time = 0;
    for root in g.vertices() {
        if disc.contains_key(&root) {
            continue;
        }
        // (vertex, edge used to enter, next incidence index)
        let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(root, None, 0)];
        disc.insert(root, time);
        low.insert(root, time);
        time += 1;
        while let Some(top) = stack.last_mut() {
            let (v, via, idx) = *top;
            if idx < g.incident(v).len() {
                top.2 += 1;
                let e = g.incident(v)[idx];
                if Some(e) == via {
                    continue;
                }
                let w = g.other_end(e, v);
                if let Some(&dw) = disc.get(&w) {
                    let lv = low[&v].min(dw);
                    low.insert(v, lv);
                } else {
                    disc.insert(w, time);
                    low.insert(w, time);
                    time += 1;
                    stack.push((w, Some(e), 0));
                }
            } else {
                stack.pop();
                if let (Some(e), Some(&(p, _, _))) = (via, stack.last()) {
                    let lv = low[&v];
                    let lp = low[&p].min(lv);
                    low.insert(p, lp);
                    if lv > disc[&p] {
                        out.insert(e);
                    }
                }
            }
        }
    }
    out
}

/// A circuit: `edges[i]` joins `vertices[i]` and `vertices[(i+1) % len]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Circuit {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Circuit {
    pub fn new(vertices: Vec<VertexId>, edges: Vec<EdgeId>) -> Circuit {
        Circuit { vertices, edges }.canonical()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.vertices.iter().copied().collect()
    }

    pub fn edge_set(&self) -> BTreeSet<EdgeId> {
        self.edges.iter().copied().collect()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    /// Rotation to the least vertex, then the direction with the smaller
    /// second vertex; remaining ties (digons) are broken on edge ids.
    pub fn canonical(&self) -> Circuit {
        let k = self.len();
        let mut best: Option<Circuit> = None;
        for start in 0..k {
            for forward in [true, false] {
                let (vs, es): (Vec<_>, Vec<_>) = if forward {
                    (0..k)
                        .map(|i| (self.vertices[(start + i) % k], self.edges[(start + i) % k]))
                        .unzip()
                } else {
                    (0..k)
                        .map(|i| {
                            (
                                self.vertices[(start + k - i) % k],
                                self.edges[(start + 2 * k - i - 1) % k],
                            )
                        })
                        .unzip()
                };
                let c = Circuit { vertices: vs, edges: es };
                if best.as_ref().is_none_or(|b| (&c.vertices, &c.edges) < (&b.vertices, &b.edges)) {
                    best = Some(c);
                }
            }
        }
        best.unwrap_or_else(|| self.clone())
    }

    /// The same circuit traversed from `vertices[start]`, forwards or
    /// backwards, without canonicalizing. `edges[i]` still joins
    /// `vertices[i]` and `vertices[i+1]`.
    pub fn oriented(&self, start: usize, forward: bool) -> Circuit {
        let k = self.len();
        if forward {
            Circuit {
                vertices: (0..k).map(|i| self.vertices[(start + i) % k]).collect(),
                edges: (0..k).map(|i| self.edges[(start + i) % k]).collect(),
            }
        } else {
            Circuit {
                vertices: (0..k).map(|i| self.vertices[(start + k - i) % k]).collect(),
                edges: (0..k).map(|i| self.edges[(start + 2 * k - i - 1) % k]).collect(),
            }
        }
    }

    /// True when the stored sequences describe a closed walk in `g`
    /// without repeated vertices.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let k = self.len();
        if k == 0 || self.vertices.len() != k || self.vertex_set().len() != k || self.edge_set().len() != k {
            return false;
        }
        (0..k).all(|i| {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % k]);
            g.ends(self.edges[i]).is_ok_and(|[u, v]| (u == a && v == b) || (u == b && v == a))
        })
    }
}

/// Every circuit of length at most `max_len`, each once, in canonical form,
/// sorted by (length, canonical form).
pub fn circuits_up_to(g: &Graph, max_len: usize) -> Vec<Circuit> {
    let mut found: BTreeSet<(usize, Circuit)> = BTreeSet::new();
    for s in g.vertices() {
        let mut path_v = vec![s];
        let mut path_e: Vec<EdgeId> = Vec::new();
        extend_paths(g, s, max_len, &mut path_v, &mut path_e, &mut found);
    }
    found.into_iter().map(|(_, c)| c).collect()
}

fn extend_paths(
    g: &Graph,
    s: VertexId,
    max_len: usize,
    path_v: &mut Vec<VertexId>,
    path_e: &mut Vec<EdgeId>,
    found: &mut BTreeSet<(usize, Circuit)>,
) {
    let v = *path_v.last().expect("non-empty path");
    let incident: Vec<EdgeId> = {
        let mut l = g.incident(v).to_vec();
        l.dedup();
        l
    };
    for e in incident {
        if path_e.contains(&e) {
            continue;
        }
        let w = g.other_end(e, v);
        if w == s {
            if path_e.len() < max_len {
                let mut es = path_e.clone();
                es.push(e);
                let c = Circuit::new(path_v.clone(), es);
                found.insert((c.len(), c));
            }
        } else if w > s && !path_v.contains(&w) && path_e.len() + 1 < max_len {
            path_v.push(w);
            path_e.push(e);
            extend_paths(g, s, max_len, path_v, path_e, found);
            path_v.pop();
            path_e.pop();
        }
    }
}

/// The boundary multiset of the subgraph with the given vertices and edges:
/// every edge outside `edges` once per endpoint in `vertices`, in vertex
/// order, each vertex's edges by id.
pub fn boundary_multiset(g: &Graph, vertices: &[VertexId], edges: &BTreeSet<EdgeId>) -> Vec<EdgeId> {
    let mut out = Vec::new();
    for &v in vertices {
        for &e in g.incident(v) {
            if !edges.contains(&e) {
                out.push(e);
            }
        }
    }
    out
}

/// Edge set of `∂(A)` for a vertex set `A` (edges with exactly one end in A).
pub fn edge_cut(g: &Graph, side: &BTreeSet<VertexId>) -> BTreeSet<EdgeId> {
    g.edges()
        .filter(|(_, [u, v])| side.contains(u) != side.contains(v))
        .map(|(e, _)| e)
        .collect()
}

/// Edges with both ends in `side`.
pub fn induced_edges(g: &Graph, side: &BTreeSet<VertexId>) -> BTreeSet<EdgeId> {
    g.edges()
        .filter(|(_, [u, v])| side.contains(u) && side.contains(v))
        .map(|(e, _)| e)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::petersen;

    #[test]
    fn k4_from_graph6() {
        let g = parse_graph6("C~").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 6);
        for u in 0..4 {
            for v in u + 1..4 {
                assert_eq!(g.edges_between(u, v).len(), 1);
            }
        }
        assert_eq!(to_graph6(&g).unwrap(), "C~");
    }

    #[test]
    fn graph6_errors() {
        assert!(matches!(parse_graph6(""), Err(Error::Malformed(_))));
        assert!(matches!(parse_graph6("C"), Err(Error::Malformed(_))));
        // path on 4 vertices
        assert!(matches!(parse_graph6("Ch"), Err(Error::NotCubic { .. })));
        assert_eq!(parse_graph6("?"), Err(Error::Empty));
    }

    #[test]
    fn edge_list_inputs() {
        let theta = parse_edge_list("0 1\n0 1\n0 1", true).unwrap();
        assert_eq!(theta.vertex_count(), 2);
        assert_eq!(theta.edges_between(0, 1), vec![0, 1, 2]);
        assert!(matches!(
            parse_edge_list("0 1\n1 2\n2 0\n0 1", true),
            Err(Error::NotCubic { .. })
        ));
        assert!(matches!(parse_edge_list("0 x", false), Err(Error::Malformed(_))));
        let lp = parse_edge_list("7 7\n7 3", false).unwrap();
        assert_eq!(lp.degree(0), 3);
        assert!(lp.is_loop(0));
    }

    #[test]
    fn bridges_found() {
        assert!(bridges(&parse_graph6("C~").unwrap()).is_empty());
        assert!(bridges(&petersen()).is_empty());
        // two K4-minus-an-edge blocks joined by one edge
        let mut e = vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)];
        e.extend([(4, 5), (4, 6), (5, 6), (5, 7), (6, 7)]);
        e.push((0, 4));
        e.push((3, 7));
        let g = Graph::from_edges(8, &e[..e.len() - 1]);
        assert_eq!(bridges(&g), BTreeSet::from([10]));
        let g2 = Graph::from_edges(8, &e);
        assert!(bridges(&g2).is_empty());
        let theta = parse_edge_list("0 1\n0 1\n0 1", true).unwrap();
        assert!(bridges(&theta).is_empty());
    }

    #[test]
    fn circuit_counts() {
        let p = petersen();
        let c5 = circuits_up_to(&p, 5);
        assert_eq!(c5.len(), 12);
        assert!(c5.iter().all(|c| c.len() == 5 && c.is_valid_in(&p)));
        let k4 = parse_graph6("C~").unwrap();
        assert_eq!(circuits_up_to(&k4, 3).len(), 4);
        assert_eq!(circuits_up_to(&k4, 4).len(), 7);
        let theta = parse_edge_list("0 1\n0 1\n0 1", true).unwrap();
        assert_eq!(circuits_up_to(&theta, 2).len(), 3);
    }

    #[test]
    fn canonical_form_is_rotation_invariant() {
        let c = Circuit { vertices: vec![3, 1, 4, 2], edges: vec![10, 11, 12, 13] };
        let canon = c.canonical();
        assert_eq!(canon.vertices[0], 1);
        assert_eq!(canon.vertices[1], 3);
        let r = Circuit { vertices: vec![2, 4, 1, 3], edges: vec![12, 11, 10, 13] };
        assert_eq!(r.canonical(), canon);
    }

    #[test]
    fn boundary_sizes() {
        let p = petersen();
        for v in p.vertices() {
            assert_eq!(boundary_multiset(&p, &[v], &BTreeSet::new()).len(), 3);
        }
        let all: Vec<_> = p.vertices().collect();
        let alle: BTreeSet<_> = p.edge_ids().collect();
        assert!(boundary_multiset(&p, &all, &alle).is_empty());
        let lp = parse_edge_list("0 0\n0 1\n1 1", false).unwrap();
        assert_eq!(boundary_multiset(&lp, &[0], &BTreeSet::new()), vec![0, 0, 1]);
        assert!(lp.check_consistency());
    }
}
