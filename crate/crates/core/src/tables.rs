//! Case tables for the 5-circuit rescue, the 6-circuit normalization and the
//! two-pentagon subgraph `S`, stored as in the proofs and applied up to
//! symmetry.
//!
//! A row's start string marks the edges a move acts on in lower case: two
//! marked positions are a mod1 move, one is a mod2 move. Each move is
//! followed by the outcomes the proof lists and the reason each outcome is
//! fine (`5c`, `C<k>` or a bracketed reference to another row).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::gf4::{BoundaryString, ColourPerm, Gf4};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    Mod1 { i: usize, j: usize, x: Gf4, y: Gf4 },
    Mod2 { i: usize, x: Gf4, y: Gf4 },
}

impl Move {
    /// Abstract effect on a boundary string: every possible result.
    pub fn outcomes(&self, s: &BoundaryString) -> Vec<BoundaryString> {
        match *self {
            Move::Mod1 { i, j, x, y } => {
                let ok = |a: Gf4| a == x || a == y;
                if i == j || !ok(s[i]) || !ok(s[j]) {
                    return Vec::new();
                }
                let mut t = s.clone();
                t.0[i] = t.0[i] + x + y;
                t.0[j] = t.0[j] + x + y;
                vec![t]
            }
            Move::Mod2 { i, x, y } => {
                let ok = |a: Gf4| a == x || a == y;
                if !ok(s[i]) {
                    return Vec::new();
                }
                (0..s.len())
                    .filter(|&j| j != i && ok(s[j]))
                    .map(|j| {
                        let mut t = s.clone();
                        t.0[i] = t.0[i] + x + y;
                        t.0[j] = t.0[j] + x + y;
                        t
                    })
                    .collect()
            }
        }
    }

    /// The same move seen through a symmetry `(pos, colours)`: position
    /// `k` of the table frame is position `pos[k]` of the real string and
    /// table colours are real colours mapped by `colours`.
    fn pulled_back(&self, pos: &[usize], colours: &ColourPerm) -> Move {
        let inv = colours.inverse();
        match *self {
            Move::Mod1 { i, j, x, y } => Move::Mod1 { i: pos[i], j: pos[j], x: inv.apply(x), y: inv.apply(y) },
            Move::Mod2 { i, x, y } => Move::Mod2 { i: pos[i], x: inv.apply(x), y: inv.apply(y) },
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Mod1 { i, j, x, y } => write!(f, "mod1(e{i},e{j};{x}{y})"),
            Move::Mod2 { i, x, y } => write!(f, "mod2(e{i};{x}{y})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    Lemma5c,
    Condition(u8),
    SeeRow(BoundaryString),
}

impl Reason {
    fn parse(s: &str) -> Reason {
        if s == "5c" {
            Reason::Lemma5c
        } else if let Some(k) = s.strip_prefix('C') {
            Reason::Condition(k.parse().expect("condition number"))
        } else {
            let inner = s.trim_start_matches('[').trim_end_matches(']');
            Reason::SeeRow(BoundaryString::parse(inner).expect("row reference"))
        }
    }
}

#[derive(Clone, Debug)]
pub struct Row {
    pub start: BoundaryString,
    pub mv: Option<Move>,
    pub listed: Vec<(BoundaryString, Reason)>,
}

fn row(pattern: &str, pair: &str, listed: &[(&str, &str)]) -> Row {
    let marked: Vec<usize> = pattern.char_indices().filter(|(_, c)| c.is_ascii_lowercase()).map(|(i, _)| i).collect();
    let start = BoundaryString::parse(&pattern.to_ascii_uppercase()).expect("row pattern");
    let xy: Vec<Gf4> = pair.chars().map(|c| Gf4::from_char(c).expect("move pair")).collect();
    let mv = match marked.as_slice() {
        [] => None,
        [i] => Some(Move::Mod2 { i: *i, x: xy[0], y: xy[1] }),
        [i, j] => Some(Move::Mod1 { i: *i, j: *j, x: xy[0], y: xy[1] }),
        _ => panic!("row {pattern} marks too many edges"),
    };
    let listed = listed
        .iter()
        .map(|(s, r)| (BoundaryString::parse(s).expect("outcome"), Reason::parse(r)))
        .collect();
    Row { start, mv, listed }
}

fn done(pattern: &str, reason: &str) -> Row {
    row(pattern, "", &[(pattern, reason)])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableKind {
    /// 5-circuit with a common outside neighbour of `v0` and `v1`.
    RescueAdjacent,
    /// 5-circuit with a common outside neighbour of `v0` and `v2`.
    RescueSkip,
    Six,
    STwoPentagons,
}

impl TableKind {
    pub const ALL: [TableKind; 4] =
        [TableKind::RescueAdjacent, TableKind::RescueSkip, TableKind::Six, TableKind::STwoPentagons];

    pub fn name(self) -> &'static str {
        match self {
            TableKind::RescueAdjacent => "l5u-v0v1",
            TableKind::RescueSkip => "l5u-v0v2",
            TableKind::Six => "l6",
            TableKind::STwoPentagons => "l10",
        }
    }
}

pub struct Table {
    pub kind: TableKind,
    pub len: usize,
    /// Position maps `pos` with `table[k] = real[pos[k]]`, identity first.
    pub symmetries: Vec<Vec<usize>>,
    pub rows: Vec<Row>,
}

/// Some cyclic window of three equal values.
pub fn has_equal_triple(s: &BoundaryString) -> bool {
    let n = s.len();
    (0..n).any(|i| s[i] == s[(i + 1) % n] && s[i] == s[(i + 2) % n])
}

pub const SIX_CONDITIONS: [[(usize, usize); 3]; 6] = [
    [(0, 1), (2, 3), (4, 5)],
    [(0, 5), (1, 2), (3, 4)],
    [(0, 3), (1, 2), (4, 5)],
    [(0, 5), (1, 4), (2, 3)],
    [(0, 1), (2, 5), (3, 4)],
    [(0, 3), (1, 4), (2, 5)],
];

pub const S_CONDITIONS: [[(usize, usize); 3]; 8] = [
    [(0, 1), (2, 3), (4, 5)],
    [(0, 5), (1, 2), (3, 4)],
    [(0, 1), (2, 4), (3, 5)],
    [(0, 4), (1, 2), (3, 5)],
    [(0, 3), (1, 5), (2, 4)],
    [(0, 4), (1, 3), (2, 5)],
    [(0, 4), (1, 5), (2, 3)],
    [(0, 5), (1, 3), (2, 4)],
];

fn lowest_condition(conds: &[[(usize, usize); 3]], s: &BoundaryString) -> Option<u8> {
    conds
        .iter()
        .position(|c| c.iter().all(|&(i, j)| s[i] == s[j]))
        .map(|k| k as u8 + 1)
}

pub fn six_condition(s: &BoundaryString) -> Option<u8> {
    lowest_condition(&SIX_CONDITIONS, s)
}

pub fn s_condition(s: &BoundaryString) -> Option<u8> {
    lowest_condition(&S_CONDITIONS, s)
}

fn satisfies(conds: &[[(usize, usize); 3]], k: u8, s: &BoundaryString) -> bool {
    conds[k as usize - 1].iter().all(|&(i, j)| s[i] == s[j])
}

pub(crate) fn dihedral(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for r in 0..n {
        out.push((0..n).map(|k| (k + r) % n).collect());
    }
    for r in 0..n {
        out.push((0..n).map(|k| (r + n - k) % n).collect());
    }
    out
}

impl Table {
    pub fn get(kind: TableKind) -> Table {
        match kind {
            TableKind::RescueAdjacent => Table {
                kind,
                len: 5,
                symmetries: vec![vec![0, 1, 2, 3, 4], vec![1, 0, 4, 3, 2]],
                rows: vec![
                    row("rgRRB", "RG", &[("GRRRB", "5c")]),
                    row("RGRbR", "RB", &[("BGRRR", "5c"), ("RGBRR", "5c"), ("RGRRB", "[RGRRB]")]),
                    row("rrGRB", "RG", &[("GGGRB", "5c")]),
                ],
            },
            TableKind::RescueSkip => Table {
                kind,
                len: 5,
                symmetries: vec![vec![0, 1, 2, 3, 4], vec![2, 1, 0, 4, 3]],
                rows: vec![
                    row("rGrRB", "RG", &[("GGGRB", "5c")]),
                    row("GrBRR", "RG", &[("RGBRR", "5c"), ("GGBGR", "[RRGRB]"), ("GGBRG", "5c")]),
                    row("rRgRB", "RG", &[("GRRRB", "5c")]),
                ],
            },
            TableKind::Six => Table {
                kind,
                len: 6,
                symmetries: dihedral(6),
                rows: vec![
                    done("RRRRRR", "C1"),
                    done("RRRRGG", "C1"),
                    row("RRRGrG", "RB", &[("BRRGBG", "[RRGBGB]"), ("RBRGBG", "[RGRBGB]"), ("RRBGBG", "[RRGBGB]")]),
                    done("RRGRRG", "C3"),
                    done("RRGGBB", "C1"),
                    row("RRgBGB", "GB", &[("RRBGGB", "C5"), ("RRBBBB", "C1"), ("RRBBGG", "C1")]),
                    done("RRGBBG", "C5"),
                    row("rGRBGB", "RB", &[("BGBBGB", "C4"), ("BGRRGB", "C4"), ("BGRBGR", "C6")]),
                    done("RGBRGB", "C6"),
                ],
            },
            TableKind::STwoPentagons => Table {
                kind,
                len: 6,
                symmetries: vec![vec![0, 1, 2, 3, 4, 5], vec![2, 1, 0, 5, 4, 3]],
                rows: vec![
                    done("RRRRRR", "C1"),
                    done("RRRRGG", "C1"),
                    done("RRRGRG", "C3"),
                    done("RRGRRG", "C6"),
                    done("RRGRGR", "C5"),
                    done("RRGGRR", "C1"),
                    done("RGRRRG", "C5"),
                    row(
                        "RGRRgR",
                        "RG",
                        &[("GGRRRR", "C1"), ("RRRRRR", "C1"), ("RGGRRR", "C2"), ("RGRGRR", "C6"), ("RGRRRG", "C5")],
                    ),
                    done("RGGRRR", "C1"),
                    row(
                        "GrGRRR",
                        "GR",
                        &[("RGGRRR", "C4"), ("GGRRRR", "C1"), ("GGGGRR", "C1"), ("GGGRGR", "C3"), ("GGGRRG", "C2")],
                    ),
                    done("RRGGBB", "C1"),
                    done("RRGBGB", "C3"),
                    row("RRgBBG", "GB", &[("RRBGBG", "C3"), ("RRBBGG", "C1"), ("RRBBBB", "C1")]),
                    row("rGRGBB", "GR", &[("GRRGBB", "[RRGBBG]"), ("GGRRBB", "C1"), ("GGGGBB", "C1")]),
                    row("rGRBGB", "GR", &[("GRRBGB", "C4"), ("GGRBRB", "C3"), ("GGGRGR", "C3")]),
                    row("RGBRgB", "GR", &[("GGBRRB", "[RRGBBG]"), ("RRBRRB", "C6"), ("RGBGRB", "C6")]),
                    done("RGBRBG", "C5"),
                    done("RGBGBR", "C8"),
                    row("RgBBGR", "RG", &[("GRBBGR", "C7"), ("RRBBRR", "C1"), ("RRBBGG", "C1")]),
                ],
            },
        }
    }

    /// Index of the satisfied success condition (0 for the 5-circuit
    /// triple), lowest first.
    pub fn success(&self, s: &BoundaryString) -> Option<u8> {
        match self.kind {
            TableKind::RescueAdjacent | TableKind::RescueSkip => has_equal_triple(s).then_some(0),
            TableKind::Six => six_condition(s),
            TableKind::STwoPentagons => s_condition(s),
        }
    }

    fn reason_holds(&self, reason: &Reason, s: &BoundaryString) -> bool {
        match reason {
            Reason::Lemma5c => has_equal_triple(s),
            Reason::Condition(k) => match self.kind {
                TableKind::Six => satisfies(&SIX_CONDITIONS, *k, s),
                TableKind::STwoPentagons => satisfies(&S_CONDITIONS, *k, s),
                _ => false,
            },
            Reason::SeeRow(_) => false,
        }
    }

    /// The first row matching `s` under some symmetry, together with the
    /// row's move translated into the frame of `s`.
    pub fn lookup(&self, s: &BoundaryString) -> Option<(usize, Option<Move>)> {
        for (r, row) in self.rows.iter().enumerate() {
            for pos in &self.symmetries {
                for sigma in ColourPerm::all() {
                    let t = BoundaryString(pos.iter().map(|&p| sigma.apply(s[p])).collect());
                    if t == row.start {
                        return Some((r, row.mv.map(|m| m.pulled_back(pos, &sigma))));
                    }
                }
            }
        }
        None
    }

    /// Every nowhere-zero string of the table's length that satisfies the
    /// parity congruences.
    pub fn feasible_strings(&self) -> Vec<BoundaryString> {
        let mut out = Vec::new();
        let total = 3usize.pow(self.len as u32);
        for code in 0..total {
            let mut c = code;
            let s = BoundaryString(
                (0..self.len)
                    .map(|_| {
                        let x = Gf4::NONZERO[c % 3];
                        c /= 3;
                        x
                    })
                    .collect(),
            );
            if s.satisfies_parity() {
                out.push(s);
            }
        }
        out.sort();
        out
    }
}

#[derive(Clone, Debug, Default)]
pub struct TableReport {
    pub kind: Option<TableKind>,
    pub strings: usize,
    pub certified: usize,
    /// Strings from which some branch of the scripts fails to terminate.
    pub failures: Vec<String>,
    /// Differences between the listed and the computed move outcomes, and
    /// listed reasons that do not hold.
    pub errata: Vec<String>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.certified == self.strings
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mark {
    Active,
    Good,
    Bad,
}

fn explore(t: &Table, s: &BoundaryString, memo: &mut BTreeMap<BoundaryString, Mark>, why: &mut Vec<String>) -> bool {
    match memo.get(s) {
        Some(Mark::Good) => return true,
        Some(Mark::Bad) => return false,
        Some(Mark::Active) => {
            why.push(format!("{s}: cyclic reference"));
            return false;
        }
        None => {}
    }
    if t.success(s).is_some() {
        memo.insert(s.clone(), Mark::Good);
        return true;
    }
    memo.insert(s.clone(), Mark::Active);
    let ok = match t.lookup(s) {
        None => {
            why.push(format!("{s}: no matching row"));
            false
        }
        Some((r, None)) => {
            why.push(format!("{s}: row {} has no move and no condition holds", t.rows[r].start));
            false
        }
        Some((_, Some(m))) => {
            let outs = m.outcomes(s);
            if outs.is_empty() {
                why.push(format!("{s}: move {m} not applicable"));
                false
            } else {
                // evaluate every branch so failures are all reported
                let branches: Vec<bool> = outs.iter().map(|o| explore(t, o, memo, why)).collect();
                branches.into_iter().all(|b| b)
            }
        }
    };
    memo.insert(s.clone(), if ok { Mark::Good } else { Mark::Bad });
    ok
}

/// Machine check of one table: every feasible string reaches success along
/// every branch, with no cyclic references. Also compares each listed row
/// against the computed move outcomes.
pub fn certify(kind: TableKind) -> TableReport {
    let t = Table::get(kind);
    let mut report = TableReport { kind: Some(kind), ..TableReport::default() };
    let mut memo = BTreeMap::new();
    for s in t.feasible_strings() {
        report.strings += 1;
        let mut why = Vec::new();
        if explore(&t, &s, &mut memo, &mut why) {
            report.certified += 1;
        } else {
            report.failures.push(format!("{s}: {}", why.join("; ")));
        }
    }
    for row in &t.rows {
        match row.mv {
            None => {
                for (s, reason) in &row.listed {
                    if !t.reason_holds(reason, s) {
                        report.errata.push(format!("{}: listed {:?} does not hold", row.start, reason));
                    }
                }
            }
            Some(m) => {
                let computed: BTreeSet<BoundaryString> = m.outcomes(&row.start).into_iter().collect();
                let listed: BTreeSet<BoundaryString> = row.listed.iter().map(|(s, _)| s.clone()).collect();
                for s in listed.difference(&computed) {
                    report.errata.push(format!("{} {m}: listed outcome {s} is not a result of the move", row.start));
                }
                for s in computed.difference(&listed) {
                    let fine = t
                        .success(s)
                        .map(|k| format!("it satisfies {}", if k == 0 { "5c".to_string() } else { format!("C{k}") }))
                        .unwrap_or_else(|| "it needs a further move".into());
                    report.errata.push(format!("{} {m}: outcome {s} is not listed; {fine}", row.start));
                }
                for (s, reason) in &row.listed {
                    if computed.contains(s) && !matches!(reason, Reason::SeeRow(_)) && !t.reason_holds(reason, s) {
                        report.errata.push(format!("{} {m}: outcome {s} does not satisfy listed {:?}", row.start, reason));
                    }
                    if let Reason::SeeRow(target) = reason {
                        if t.lookup(s).map(|(r, _)| &t.rows[r].start) != Some(target) {
                            report.errata.push(format!(
                                "{} {m}: outcome {s} does not reduce to row {target} by a symmetry",
                                row.start
                            ));
                        }
                    }
                }
            }
        }
    }
    report
}
