//! Intersection structure of the 5-circuits relative to a 2-factor.

use std::collections::{BTreeMap, BTreeSet};

use crate::chain::Subgraph;
use crate::cuts::TwoFactor;
use crate::error::{internal, Result};
use crate::graph::{circuits_up_to, edge_cut, Circuit, EdgeId, Graph, VertexId};

#[derive(Clone, Debug, Default)]
pub struct FiveClasses {
    pub all: Vec<Circuit>,
    /// Meets another 5-circuit in one edge or in two adjacent edges.
    pub intersecting: Vec<Circuit>,
    /// Shares no edge with any other 5-circuit.
    pub isolated: Vec<Circuit>,
}

fn adjacent_pair(g: &Graph, a: EdgeId, b: EdgeId) -> bool {
    let [u, v] = g.ends_of(a);
    let [x, y] = g.ends_of(b);
    u == x || u == y || v == x || v == y
}

pub fn classify_five_circuits(g: &Graph) -> FiveClasses {
    let all = circuits_up_to(g, 5).into_iter().filter(|c| c.len() == 5).collect::<Vec<_>>();
    let sets: Vec<BTreeSet<EdgeId>> = all.iter().map(|c| c.edge_set()).collect();
    let mut out = FiveClasses { all: all.clone(), ..FiveClasses::default() };
    for (i, c) in all.iter().enumerate() {
        let mut meets = false;
        let mut special = false;
        for (j, s) in sets.iter().enumerate() {
            if i == j {
                continue;
            }
            let common: Vec<EdgeId> = sets[i].intersection(s).copied().collect();
            meets |= !common.is_empty();
            special |= common.len() == 1 || (common.len() == 2 && adjacent_pair(g, common[0], common[1]));
        }
        if special {
            out.intersecting.push(c.clone());
        } else if !meets {
            out.isolated.push(c.clone());
        }
    }
    out
}

/// Every 5-circuit of the factor is intersecting or isolated.
pub fn factor_five_circuits_classified(classes: &FiveClasses, factor: &TwoFactor) -> bool {
    factor
        .circuits
        .iter()
        .filter(|c| c.len() == 5)
        .all(|c| classes.intersecting.contains(c) || classes.isolated.contains(c))
}

/// Copy of `S`: two factor pentagons `X`, `Y` joined by the bridges of a
/// third pentagon `D`, which uses one edge of `X` and two of `Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SGraph {
    /// Indices into the factor's circuit list.
    pub x: usize,
    pub y: usize,
    pub d: Circuit,
    /// `X` walked as p0..p4, where p0p1 is the edge shared with `D`.
    pub x_walk: Circuit,
    /// `Y` walked as q0..q4, where q0, q2 are the bridge ends of p0, p1.
    pub y_walk: Circuit,
    pub b1: EdgeId,
    pub b2: EdgeId,
    /// v0..v5: the degree-two vertices in boundary order.
    pub seq: [VertexId; 6],
    /// w0..w3: ends of the bridges, `b1 = w0w1`, `b2 = w2w3`.
    pub w: [VertexId; 4],
    pub subgraph: Subgraph,
}

fn walk_from(c: &Circuit, a: VertexId, b: VertexId) -> Option<Circuit> {
    let i = c.vertices.iter().position(|&v| v == a)?;
    let k = c.len();
    if c.vertices[(i + 1) % k] == b {
        Some(c.oriented(i, true))
    } else if c.vertices[(i + k - 1) % k] == b {
        Some(c.oriented(i, false))
    } else {
        None
    }
}

fn build_s(g: &Graph, factor: &TwoFactor, ia: usize, ib: usize, d: &Circuit) -> Option<SGraph> {
    let (ca, cb) = (&factor.circuits[ia], &factor.circuits[ib]);
    let on = |c: &Circuit| d.edges.iter().filter(|e| c.edges.contains(e)).count();
    let (x, y) = match (on(ca), on(cb)) {
        (1, 2) => (ia, ib),
        (2, 1) => (ib, ia),
        _ => return None,
    };
    let (cx, cy) = (&factor.circuits[x], &factor.circuits[y]);
    let shared = *d.edges.iter().find(|e| cx.edges.contains(e))?;
    let [a, b] = g.ends_of(shared);
    let (p0, p1) = (a.min(b), a.max(b));
    let x_walk = walk_from(cx, p0, p1)?;
    let bridge_at = |p: VertexId| -> Option<(EdgeId, VertexId)> {
        d.edges
            .iter()
            .copied()
            .find(|e| !cx.edges.contains(e) && !cy.edges.contains(e) && g.ends_of(*e).contains(&p))
            .map(|e| (e, g.other_end(e, p)))
    };
    let (b1, q0) = bridge_at(p0)?;
    let (b2, q2) = bridge_at(p1)?;
    let q1 = *d.vertices.iter().find(|&&v| v != q0 && v != q2 && cy.contains_vertex(v))?;
    let y_walk = walk_from(cy, q0, q1)?;
    if y_walk.vertices[2] != q2 {
        return None;
    }
    let (p, q) = (&x_walk.vertices, &y_walk.vertices);
    let seq = [p[2], p[3], p[4], q[3], q[1], q[4]];
    let mut edges = cx.edge_set();
    edges.extend(cy.edges.iter().copied());
    edges.extend([b1, b2]);
    let mut vertices = p.clone();
    vertices.extend(q.iter().copied());
    Some(SGraph {
        x,
        y,
        d: d.clone(),
        x_walk: x_walk.clone(),
        y_walk: y_walk.clone(),
        b1,
        b2,
        seq,
        w: [p0, q0, p1, q2],
        subgraph: Subgraph { vertices, edges },
    })
}

#[derive(Clone, Debug)]
pub struct Pairing {
    /// Factor indices of the intersecting factor circuits.
    pub intersecting: Vec<usize>,
    /// Factor indices of the isolated factor circuits.
    pub isolated: Vec<usize>,
    /// The partner function on intersecting factor circuits.
    pub partner: BTreeMap<usize, usize>,
    pub pairs: Vec<(usize, usize)>,
    pub unpaired: Vec<usize>,
    /// Unpaired circuits in restoration order, each before its partner
    /// whenever the partner is unpaired too.
    pub restore_order: Vec<usize>,
    pub s_graphs: Vec<SGraph>,
}

impl Pairing {
    pub fn is_paired(&self, i: usize) -> bool {
        self.pairs.iter().any(|&(a, b)| a == i || b == i)
    }
}

pub fn build_pairing(g: &Graph, factor: &TwoFactor, classes: &FiveClasses) -> Result<Pairing> {
    let cs = &factor.circuits;
    let intersecting: Vec<usize> = (0..cs.len()).filter(|&i| classes.intersecting.contains(&cs[i])).collect();
    let isolated: Vec<usize> = (0..cs.len()).filter(|&i| classes.isolated.contains(&cs[i])).collect();
    let is_int: BTreeSet<usize> = intersecting.iter().copied().collect();
    let home: BTreeMap<VertexId, usize> =
        cs.iter().enumerate().flat_map(|(i, c)| c.vertices.iter().map(move |&v| (v, i))).collect();

    // S(C): factor circuits met by a 5-circuit that also meets C
    let mut partner = BTreeMap::new();
    for &i in &intersecting {
        let mut s: BTreeSet<usize> = BTreeSet::new();
        for d in &classes.all {
            let touched: BTreeSet<usize> = d.vertices.iter().map(|v| home[v]).collect();
            if touched.contains(&i) {
                s.extend(touched.into_iter().filter(|&j| j != i));
            }
        }
        // factor order is (length, canonical form), which is also the order on
        // intersecting circuits
        let f = s
            .iter()
            .copied()
            .find(|j| !is_int.contains(j))
            .or_else(|| s.iter().copied().next())
            .ok_or_else(|| internal!("intersecting circuit {i} has no partner candidates"))?;
        let common = edge_cut(g, &cs[i].vertex_set()).intersection(&edge_cut(g, &cs[f].vertex_set())).count();
        if common < 2 {
            return Err(internal!("circuits {i} and {f} share {common} boundary edges"));
        }
        partner.insert(i, f);
    }

    let paired: BTreeSet<usize> = intersecting
        .iter()
        .copied()
        .filter(|i| {
            let f = partner[i];
            is_int.contains(&f) && partner[&f] == *i
        })
        .collect();
    let pairs: Vec<(usize, usize)> =
        paired.iter().copied().filter(|i| *i < partner[i]).map(|i| (i, partner[&i])).collect();
    let unpaired: Vec<usize> = intersecting.iter().copied().filter(|i| !paired.contains(i)).collect();

    // C lies above every unpaired circuit on its forward partner chain
    let un: BTreeSet<usize> = unpaired.iter().copied().collect();
    let mut below: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for &c in &unpaired {
        let mut seen = BTreeSet::from([c]);
        let mut cur = c;
        let set = below.entry(c).or_default();
        while let Some(&next) = partner.get(&cur) {
            if next == c {
                return Err(internal!("partner chain of circuit {c} returns to it"));
            }
            if !seen.insert(next) {
                break;
            }
            if un.contains(&next) {
                set.insert(next);
            }
            cur = next;
        }
    }
    let mut restore_order = Vec::new();
    let mut left: BTreeSet<usize> = un.clone();
    while !left.is_empty() {
        let next = left
            .iter()
            .copied()
            .find(|&c| !left.iter().any(|&o| o != c && below[&o].contains(&c)))
            .ok_or_else(|| internal!("order on unpaired circuits has a cycle"))?;
        left.remove(&next);
        restore_order.push(next);
    }

    let mut s_graphs = Vec::new();
    for &(a, b) in &pairs {
        let span: BTreeSet<VertexId> = cs[a].vertex_set().union(&cs[b].vertex_set()).copied().collect();
        let s = classes
            .all
            .iter()
            .filter(|d| d.vertices.iter().all(|v| span.contains(v)))
            .find_map(|d| build_s(g, factor, a, b, d))
            .ok_or_else(|| internal!("paired circuits {a} and {b} span no copy of S"))?;
        s_graphs.push(s);
    }
    Ok(Pairing { intersecting, isolated, partner, pairs, unpaired, restore_order, s_graphs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::{select_two_factor, uniform_weights};
    use crate::named::{k4, petersen};

    #[test]
    fn petersen_classes() {
        let c = classify_five_circuits(&petersen());
        assert_eq!(c.all.len(), 12);
        assert_eq!(c.intersecting.len(), 12);
        assert!(c.isolated.is_empty());
        let k = classify_five_circuits(&k4());
        assert!(k.all.is_empty() && k.intersecting.is_empty());
    }

    #[test]
    fn petersen_pair_spans_s() {
        let g = petersen();
        let classes = classify_five_circuits(&g);
        let f = select_two_factor(&g, &uniform_weights(&g), &classes.isolated).unwrap().factor;
        assert!(factor_five_circuits_classified(&classes, &f));
        let p = build_pairing(&g, &f, &classes).unwrap();
        assert_eq!(p.pairs, vec![(0, 1)]);
        assert!(p.unpaired.is_empty());
        let s = &p.s_graphs[0];
        assert_eq!(s.subgraph.vertices.len(), 10);
        assert_eq!(s.subgraph.edges.len(), 12);
        // the six listed vertices are exactly those of degree two in S
        for v in 0..10 {
            let deg = g.incident(v).iter().filter(|e| s.subgraph.edges.contains(e)).count();
            assert_eq!(deg == 2, s.seq.contains(&v), "vertex {v}");
        }
        let again = build_pairing(&g, &f, &classes).unwrap();
        assert_eq!(again.s_graphs, p.s_graphs);
    }
}
