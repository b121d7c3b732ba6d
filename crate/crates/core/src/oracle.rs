//! Brute-force checks, independent of the construction: exact shortest
//! cycle covers of tiny graphs, whole flow cosets, and the case tables.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::gf4::Gf4;
use crate::good_flow::{certify_bridge_table, BridgeTableReport};
use crate::graph::{EdgeId, Graph};
use crate::tables::{certify, TableKind, TableReport};

/// Largest edge count the cover search accepts, whatever the caller asks.
pub const HARD_EDGE_CAP: usize = 24;
pub const DEFAULT_RANK_CAP: usize = 8;

/// One edge list per fundamental cycle of a BFS spanning forest, smaller
/// edge ids first.
pub fn fundamental_cycles(g: &Graph) -> Vec<Vec<EdgeId>> {
    let mut parent = BTreeMap::new();
    let mut depth = BTreeMap::new();
    let mut tree = BTreeSet::new();
    for s in g.vertices() {
        if depth.contains_key(&s) {
            continue;
        }
        depth.insert(s, 0usize);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &e in g.incident(v) {
                let w = g.other_end(e, v);
                if !depth.contains_key(&w) {
                    depth.insert(w, depth[&v] + 1);
                    parent.insert(w, e);
                    tree.insert(e);
                    queue.push_back(w);
                }
            }
        }
    }
    let mut out = Vec::new();
    for (e, [u, v]) in g.edges() {
        if tree.contains(&e) {
            continue;
        }
        let mut cyc = vec![e];
        let (mut a, mut b) = (u, v);
        while a != b {
            if depth[&a] >= depth[&b] {
                let f = parent[&a];
                cyc.push(f);
                a = g.other_end(f, a);
            } else {
                let f = parent[&b];
                cyc.push(f);
                b = g.other_end(f, b);
            }
        }
        cyc.sort_unstable();
        out.push(cyc);
    }
    out
}

/// Minimum total length of a cycle cover, by dynamic programming over the
/// set of covered edges with every nonempty even subgraph as a move.
pub fn shortest_cycle_cover(g: &Graph, max_edges: usize) -> Result<(usize, Vec<BTreeSet<EdgeId>>)> {
    let m = g.edge_count();
    if m > max_edges.min(HARD_EDGE_CAP) {
        return Err(Error::CapExceeded(format!("{m} edges, cap {}", max_edges.min(HARD_EDGE_CAP))));
    }
    let ids: Vec<EdgeId> = g.edge_ids().collect();
    let index: BTreeMap<EdgeId, usize> = ids.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let basis: Vec<u32> =
        fundamental_cycles(g).iter().map(|c| c.iter().fold(0u32, |acc, e| acc ^ (1 << index[e]))).collect();
    let mut cycles = Vec::with_capacity(1 << basis.len());
    for pick in 1u32..(1 << basis.len()) {
        let c = (0..basis.len()).filter(|k| pick & (1 << k) != 0).fold(0u32, |acc, k| acc ^ basis[k]);
        cycles.push(c);
    }
    let full: u32 = (1u32 << m) - 1;
    let states = full as usize + 1;
    let mut best = vec![u16::MAX; states];
    let mut back = vec![(0u32, 0u32); states];
    best[0] = 0;
    for mask in 0..states {
        let here = best[mask];
        if here == u16::MAX {
            continue;
        }
        for &c in &cycles {
            let next = mask as u32 | c;
            if next as usize == mask {
                continue;
            }
            let cost = here + c.count_ones() as u16;
            if cost < best[next as usize] {
                best[next as usize] = cost;
                back[next as usize] = (mask as u32, c);
            }
        }
    }
    if best[full as usize] == u16::MAX {
        return Err(Error::Precondition("graph has no cycle cover (it has a bridge)".into()));
    }
    let mut cover = Vec::new();
    let mut at = full;
    while at != 0 {
        let (prev, c) = back[at as usize];
        cover.push((0..m).filter(|&i| c & (1 << i) != 0).map(|i| ids[i]).collect());
        at = prev;
    }
    cover.sort();
    Ok((best[full as usize] as usize, cover))
}

/// Every flow `base + κ` with κ in the Z2×Z2 cycle space whose zeros off
/// `free` are exactly those of `base`.
pub fn flow_coset(g: &Graph, base: &Chain, free: &BTreeSet<EdgeId>, rank_cap: usize) -> Result<Vec<Chain>> {
    let basis = fundamental_cycles(g);
    if basis.len() > rank_cap {
        return Err(Error::CapExceeded(format!("cycle rank {}, cap {rank_cap}", basis.len())));
    }
    let fixed: Vec<EdgeId> = g.edge_ids().filter(|e| !free.contains(e)).collect();
    let mut out = Vec::new();
    let mut cur = base.clone();
    fn walk(
        k: usize,
        basis: &[Vec<EdgeId>],
        cur: &mut Chain,
        fixed: &[EdgeId],
        base: &Chain,
        out: &mut Vec<Chain>,
    ) {
        if k == basis.len() {
            if fixed.iter().all(|&e| cur.get(e).is_zero() == base.get(e).is_zero()) {
                out.push(cur.clone());
            }
            return;
        }
        for x in [Gf4::Zero, Gf4::R, Gf4::G, Gf4::B] {
            for &e in &basis[k] {
                cur.add(e, x);
            }
            walk(k + 1, basis, cur, fixed, base, out);
            for &e in &basis[k] {
                cur.add(e, x);
            }
        }
    }
    walk(0, &basis, &mut cur, &fixed, base, &mut out);
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct TablesReport {
    pub tables: Vec<TableReport>,
    pub bridge: BridgeTableReport,
}

impl TablesReport {
    pub fn passed(&self) -> bool {
        self.tables.iter().all(|t| t.passed()) && self.bridge.unmatched.is_empty() && self.bridge.impossible.is_empty()
    }
}

pub fn certify_tables() -> TablesReport {
    TablesReport { tables: TableKind::ALL.iter().map(|&k| certify(k)).collect(), bridge: certify_bridge_table() }
}
