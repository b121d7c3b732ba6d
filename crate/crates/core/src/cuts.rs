//! Small edge cuts, perfect matchings and the choice of the 2-factor.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::contraction::ContractionStack;
use crate::error::{internal, Result};
use crate::graph::{edge_cut, Circuit, EdgeId, Graph, VertexId};

pub type Weights = BTreeMap<EdgeId, Rational64>;

/// The side `A` with `∂A = cut` exactly, if there is one. The side is
/// unique up to complement on connected graphs; the one returned is the
/// smaller, or the one holding the least vertex on a tie.
pub fn side_of_cut(g: &Graph, cut: &BTreeSet<EdgeId>) -> Option<BTreeSet<VertexId>> {
    let comps = g.components_without(cut);
    let comp_of: BTreeMap<VertexId, usize> =
        comps.iter().enumerate().flat_map(|(i, c)| c.iter().map(move |&v| (v, i))).collect();
    let mut colour: Vec<Option<bool>> = vec![None; comps.len()];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); comps.len()];
    for &e in cut {
        let [u, v] = g.ends_of(e);
        let (a, b) = (comp_of[&u], comp_of[&v]);
        if a == b {
            return None;
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    for s in 0..comps.len() {
        if colour[s].is_some() {
            continue;
        }
        colour[s] = Some(false);
        let mut stack = vec![s];
        while let Some(a) = stack.pop() {
            let ca = colour[a].expect("coloured");
            for &b in &adj[a] {
                match colour[b] {
                    None => {
                        colour[b] = Some(!ca);
                        stack.push(b);
                    }
                    Some(cb) if cb == ca => return None,
                    _ => {}
                }
            }
        }
    }
    let side: BTreeSet<VertexId> =
        comps.iter().enumerate().filter(|(i, _)| colour[*i] == Some(true)).flat_map(|(_, c)| c.iter().copied()).collect();
    let rest: BTreeSet<VertexId> = g.vertices().filter(|v| !side.contains(v)).collect();
    if side.is_empty() || rest.is_empty() {
        return None;
    }
    let first = g.vertices().next();
    let pick_side = side.len() < rest.len() || (side.len() == rest.len() && first.is_some_and(|v| side.contains(&v)));
    Some(if pick_side { side } else { rest })
}

fn edge_subsets(ids: &[EdgeId], k: usize, mut visit: impl FnMut(&BTreeSet<EdgeId>) -> bool) -> bool {
    fn rec(
        ids: &[EdgeId],
        k: usize,
        start: usize,
        cur: &mut Vec<EdgeId>,
        visit: &mut dyn FnMut(&BTreeSet<EdgeId>) -> bool,
    ) -> bool {
        if cur.len() == k {
            return visit(&cur.iter().copied().collect());
        }
        for i in start..ids.len() {
            cur.push(ids[i]);
            if !rec(ids, k, i + 1, cur, visit) {
                return false;
            }
            cur.pop();
        }
        true
    }
    rec(ids, k, 0, &mut Vec::new(), &mut visit)
}

/// Every vertex set `A` with `|∂A| = 3`, one representative per cut (the
/// smaller side), trivial cuts included.
pub fn three_edge_cuts(g: &Graph) -> Vec<BTreeSet<VertexId>> {
    let ids: Vec<EdgeId> = g.edge_ids().filter(|&e| !g.is_loop(e)).collect();
    let mut out = BTreeSet::new();
    edge_subsets(&ids, 3, |k| {
        if let Some(a) = side_of_cut(g, k) {
            out.insert(a);
        }
        true
    });
    out.into_iter().collect()
}

/// No vertex set has a boundary of size 1 or 3.
pub fn is_5_odd_edge_connected(h: &Graph) -> bool {
    let ids: Vec<EdgeId> = h.edge_ids().filter(|&e| !h.is_loop(e)).collect();
    [1, 3].into_iter().all(|k| edge_subsets(&ids, k, |cut| side_of_cut(h, cut).is_none()))
}

fn has_cycle(g: &Graph, side: &BTreeSet<VertexId>) -> bool {
    let inner = crate::graph::induced_edges(g, side);
    let mut parent: BTreeMap<VertexId, VertexId> = side.iter().map(|&v| (v, v)).collect();
    fn find(p: &mut BTreeMap<VertexId, VertexId>, v: VertexId) -> VertexId {
        let mut r = v;
        while p[&r] != r {
            r = p[&r];
        }
        p.insert(v, r);
        r
    }
    for e in inner {
        let [u, v] = g.ends_of(e);
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a == b {
            return true;
        }
        parent.insert(a, b);
    }
    false
}

/// No edge cut of size at most 3 has a circuit on both sides. Graphs too
/// small to have two such sides (K4, K3,3, theta) count as connected.
pub fn is_cyclically_4_edge_connected(g: &Graph) -> bool {
    let ids: Vec<EdgeId> = g.edge_ids().filter(|&e| !g.is_loop(e)).collect();
    (1..=3).all(|k| {
        edge_subsets(&ids, k, |cut| match side_of_cut(g, cut) {
            Some(a) => {
                let b: BTreeSet<VertexId> = g.vertices().filter(|v| !a.contains(v)).collect();
                !(has_cycle(g, &a) && has_cycle(g, &b))
            }
            None => true,
        })
    })
}

/// All perfect matchings, each as a sorted edge set, in lexicographic order.
pub fn perfect_matchings(g: &Graph) -> Vec<BTreeSet<EdgeId>> {
    fn rec(g: &Graph, free: &mut BTreeSet<VertexId>, cur: &mut Vec<EdgeId>, out: &mut Vec<BTreeSet<EdgeId>>) {
        let Some(&v) = free.iter().next() else {
            out.push(cur.iter().copied().collect());
            return;
        };
        free.remove(&v);
        for &e in g.incident(v) {
            if g.is_loop(e) {
                continue;
            }
            let w = g.other_end(e, v);
            if free.remove(&w) {
                cur.push(e);
                rec(g, free, cur, out);
                cur.pop();
                free.insert(w);
            }
        }
        free.insert(v);
    }
    let mut free: BTreeSet<VertexId> = g.vertices().collect();
    let mut out = Vec::new();
    rec(g, &mut free, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Splits a spanning 2-regular edge set into its circuits.
pub fn factor_circuits(g: &Graph, factor: &BTreeSet<EdgeId>) -> Result<Vec<Circuit>> {
    let mut seen: BTreeSet<VertexId> = BTreeSet::new();
    let mut out = Vec::new();
    for s in g.vertices() {
        if seen.contains(&s) {
            continue;
        }
        let at = |v: VertexId| -> Vec<EdgeId> { g.incident(v).iter().copied().filter(|e| factor.contains(e)).collect() };
        let first = at(s);
        // a loop shows up twice in the incidence list
        if first.len() != 2 {
            return Err(internal!("vertex {s} has {} factor edges", first.len()));
        }
        let (mut vs, mut es) = (vec![s], vec![first[0]]);
        seen.insert(s);
        let mut prev = first[0];
        let mut v = g.other_end(prev, s);
        while v != s {
            seen.insert(v);
            vs.push(v);
            let next = at(v).into_iter().find(|&e| e != prev).ok_or_else(|| internal!("factor ends at {v}"))?;
            es.push(next);
            prev = next;
            v = g.other_end(next, v);
        }
        out.push(Circuit::new(vs, es));
    }
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct TwoFactor {
    pub matching: BTreeSet<EdgeId>,
    pub edges: BTreeSet<EdgeId>,
    pub circuits: Vec<Circuit>,
}

impl TwoFactor {
    pub fn from_matching(g: &Graph, matching: BTreeSet<EdgeId>) -> Result<TwoFactor> {
        let edges: BTreeSet<EdgeId> = g.edge_ids().filter(|e| !matching.contains(e)).collect();
        let circuits = factor_circuits(g, &edges)?;
        Ok(TwoFactor { matching, edges, circuits })
    }

    /// G/F, with each circuit merged into one vertex; returns the quotient and
    /// the merged vertex of each circuit, in circuit order.
    pub fn quotient(&self, g: &Graph) -> Result<(Graph, Vec<VertexId>)> {
        let mut st = ContractionStack::new(g.clone());
        let mut merged = Vec::new();
        for (i, c) in self.circuits.iter().enumerate() {
            merged.push(st.contract(&format!("F{i}"), &c.edge_set())?[0]);
        }
        Ok((st.into_graph(), merged))
    }

    pub fn contains(&self, c: &Circuit) -> bool {
        c.edges.iter().all(|e| self.edges.contains(e))
    }
}

pub fn uniform_weights(g: &Graph) -> Weights {
    g.edge_ids().map(|e| (e, Rational64::new(1, 3))).collect()
}

/// The weight vector for cyclically 4-edge-connected graphs: edges joining
/// two isolated 5-circuits drop to 1/5 and the circuits compensate.
pub fn z_weights(g: &Graph, isolated: &[Circuit]) -> Weights {
    let mut y = uniform_weights(g);
    let on_circuit: BTreeSet<EdgeId> = isolated.iter().flat_map(|c| c.edges.iter().copied()).collect();
    let home: BTreeMap<VertexId, &Circuit> =
        isolated.iter().flat_map(|c| c.vertices.iter().map(move |&v| (v, c))).collect();
    let fifteenth = Rational64::new(1, 15);
    for (e, [u, v]) in g.edges() {
        if on_circuit.contains(&e) || !home.contains_key(&u) || !home.contains_key(&v) {
            continue;
        }
        y.insert(e, Rational64::new(1, 5));
        for w in [u, v] {
            let c = home[&w];
            let start = c.vertices.iter().position(|&x| x == w).expect("vertex on its circuit");
            let walk = c.oriented(start, true);
            for (k, &f) in walk.edges.iter().enumerate() {
                let delta = if k % 2 == 0 { fifteenth } else { -fifteenth };
                *y.get_mut(&f).expect("weighted edge") += delta;
            }
        }
    }
    y
}

/// Sum of `y` at every vertex equals 1 and every entry is at least 1/5.
pub fn weights_are_valid(g: &Graph, y: &Weights) -> bool {
    let fifth = Rational64::new(1, 5);
    y.values().all(|w| *w >= fifth)
        && g.vertices().all(|v| {
            let s: Rational64 = g.incident(v).iter().map(|e| y[e]).sum();
            s == Rational64::one()
        })
}

/// `Σ_C ((Σ_{∂C} y) − 1) / 4`.
pub fn pmp_bound(g: &Graph, y: &Weights, circuits: &[Circuit]) -> Rational64 {
    let mut total = Rational64::zero();
    for c in circuits {
        let s: Rational64 = edge_cut(g, &c.vertex_set()).iter().map(|e| y[e]).sum();
        total += (s - Rational64::one()) / Rational64::from_integer(4);
    }
    total
}

#[derive(Clone, Debug)]
pub struct FactorChoice {
    pub factor: TwoFactor,
    pub counted_in_factor: usize,
    pub bound: Rational64,
    pub candidates: usize,
}

/// Among perfect matchings meeting every 3-edge-cut once, the one whose
/// complementary 2-factor contains the fewest of `avoid`. Ties go to the
/// lexicographically least matching.
pub fn select_two_factor(g: &Graph, y: &Weights, avoid: &[Circuit]) -> Result<FactorChoice> {
    let cuts: Vec<BTreeSet<EdgeId>> = three_edge_cuts(g).iter().map(|a| edge_cut(g, a)).collect();
    let mut best: Option<(usize, BTreeSet<EdgeId>)> = None;
    let mut candidates = 0;
    for m in perfect_matchings(g) {
        if cuts.iter().any(|k| k.intersection(&m).count() != 1) {
            continue;
        }
        candidates += 1;
        let count = avoid.iter().filter(|c| c.edges.iter().all(|e| !m.contains(e))).count();
        if best.as_ref().is_none_or(|(b, _)| count < *b) {
            best = Some((count, m));
        }
    }
    let (count, m) = best.ok_or_else(|| internal!("no perfect matching meets every 3-edge-cut once"))?;
    let bound = pmp_bound(g, y, avoid);
    if Rational64::from_integer(count as i64) > bound {
        return Err(internal!("2-factor holds {count} avoided circuits, above the bound {bound}"));
    }
    let factor = TwoFactor::from_matching(g, m)?;
    let (h, _) = factor.quotient(g)?;
    if !is_5_odd_edge_connected(&h) {
        return Err(internal!("quotient by the chosen 2-factor has a 1- or 3-edge-cut"));
    }
    Ok(FactorChoice { factor, counted_in_factor: count, bound, candidates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::{k33, k4, petersen, prism, theta};

    #[test]
    fn three_cuts_of_small_graphs() {
        assert_eq!(three_edge_cuts(&k4()).len(), 4);
        assert!(three_edge_cuts(&k4()).iter().all(|a| a.len() == 1));
        assert_eq!(three_edge_cuts(&petersen()).len(), 10);
        let p = prism();
        let cuts = three_edge_cuts(&p);
        assert_eq!(cuts.len(), 7);
        assert!(cuts.iter().filter(|a| a.len() == 3).count() == 1);
    }

    #[test]
    fn matchings() {
        assert_eq!(perfect_matchings(&k4()).len(), 3);
        assert_eq!(perfect_matchings(&petersen()).len(), 6);
        assert_eq!(perfect_matchings(&theta()).len(), 3);
        for g in [k4(), petersen(), prism(), k33()] {
            for m in perfect_matchings(&g) {
                for a in three_edge_cuts(&g) {
                    assert_eq!(edge_cut(&g, &a).intersection(&m).count() % 2, 1);
                }
            }
        }
    }

    #[test]
    fn connectivity() {
        assert!(is_cyclically_4_edge_connected(&petersen()));
        assert!(is_cyclically_4_edge_connected(&k4()));
        assert!(is_cyclically_4_edge_connected(&theta()));
        assert!(!is_cyclically_4_edge_connected(&prism()));
        let quotient = Graph::from_edges(2, &[(0, 1); 5]);
        assert!(is_5_odd_edge_connected(&quotient));
        assert!(!is_5_odd_edge_connected(&Graph::from_edges(2, &[(0, 1); 3])));
    }

    #[test]
    fn uniform_bound_is_a_sixth_per_circuit() {
        let g = petersen();
        let y = uniform_weights(&g);
        let cs: Vec<Circuit> = crate::graph::circuits_up_to(&g, 5);
        assert_eq!(pmp_bound(&g, &y, &cs[..1]), Rational64::new(1, 6));
        assert_eq!(pmp_bound(&g, &y, &[]), Rational64::zero());
        assert!(weights_are_valid(&g, &y));
    }

    #[test]
    fn petersen_factor() {
        let g = petersen();
        let choice = select_two_factor(&g, &uniform_weights(&g), &[]).unwrap();
        assert_eq!(choice.candidates, 6);
        assert_eq!(choice.factor.circuits.len(), 2);
        assert!(choice.factor.circuits.iter().all(|c| c.len() == 5));
    }

    #[test]
    fn theta_factor_is_a_digon() {
        let g = theta();
        let choice = select_two_factor(&g, &uniform_weights(&g), &[]).unwrap();
        assert_eq!(choice.factor.circuits.len(), 1);
        assert_eq!(choice.factor.circuits[0].len(), 2);
        let (h, _) = choice.factor.quotient(&g).unwrap();
        assert_eq!(h.vertex_count(), 1);
        assert!(is_5_odd_edge_connected(&h));
    }
}
