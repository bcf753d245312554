//! Decomposition shapes from (inertia, decomposition) subgroup pairs in
//! C4, V4 and D4, the three reduction tables, and the reduction predictor.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::cmfield::{GaloisType, QuarticCMField, ShapeProfile, SplittingShape};
use crate::error::{Error, Result};
use crate::hasse_witt::ReductionProfile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GroupKind {
    C4,
    V4,
    D4,
}

impl GroupKind {
    pub fn table_name(self) -> &'static str {
        match self {
            GroupKind::C4 => "cyclic",
            GroupKind::V4 => "biquadratic",
            GroupKind::D4 => "nonGalois",
        }
    }

    pub fn parse(s: &str) -> Result<GroupKind> {
        match s.to_ascii_lowercase().as_str() {
            "cyclic" | "c4" => Ok(GroupKind::C4),
            "biquadratic" | "v4" => Ok(GroupKind::V4),
            "nongalois" | "dihedral" | "d4" => Ok(GroupKind::D4),
            _ => Err(Error::Parse(format!("unknown table kind '{s}'"))),
        }
    }
}

/// Subgroups are bitmasks over element indices.
pub type Subgroup = u16;

#[derive(Clone, Debug)]
pub struct FiniteGroupPresentation {
    pub kind: GroupKind,
    pub names: Vec<&'static str>,
    table: Vec<Vec<usize>>,
    /// Fixes K.
    pub h: Subgroup,
    pub conj: usize,
    pub cm_type: Vec<usize>,
}

impl FiniteGroupPresentation {
    pub fn new(kind: GroupKind) -> Self {
        match kind {
            GroupKind::C4 => {
                let table = (0..4).map(|a| (0..4).map(|b| (a + b) % 4).collect()).collect();
                let mut g = FiniteGroupPresentation {
                    kind,
                    names: vec!["1", "g", "g^2", "g^3"],
                    table,
                    h: 0,
                    conj: 2,
                    cm_type: vec![0, 1],
                };
                g.h = g.generate(&[]);
                g
            }
            GroupKind::V4 => {
                let table = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
                let mut g = FiniteGroupPresentation {
                    kind,
                    names: vec!["1", "a1", "a2", "b"],
                    table,
                    h: 0,
                    conj: 3,
                    cm_type: vec![0, 1],
                };
                g.h = g.generate(&[]);
                g
            }
            GroupKind::D4 => {
                // index 4a + b is x^a y^b, and y^b x = x y^-b
                let table = (0..8)
                    .map(|i| {
                        (0..8)
                            .map(|j| {
                                let (a, b) = (i / 4, i % 4);
                                let (c, d) = (j / 4, j % 4);
                                let yb = if c == 1 { (4 - b) % 4 } else { b };
                                4 * ((a + c) % 2) + (yb + d) % 4
                            })
                            .collect()
                    })
                    .collect();
                let mut g = FiniteGroupPresentation {
                    kind,
                    names: vec!["1", "y", "y^2", "y^3", "x", "xy", "xy^2", "xy^3"],
                    table,
                    h: 0,
                    conj: 2,
                    cm_type: vec![0, 1],
                };
                g.h = g.generate(&[4]);
                g
            }
        }
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.table[a][b] == 0).unwrap()
    }

    pub fn element(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| *n == name)
            .ok_or_else(|| Error::Parse(format!("unknown group element '{name}'")))
    }

    pub fn all(&self) -> Subgroup {
        ((1u32 << self.order()) - 1) as Subgroup
    }

    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut s: Subgroup = 1;
        loop {
            let mut next = s;
            for a in self.members(s) {
                for &g in gens {
                    next |= 1 << self.mul(a, g);
                }
            }
            if next == s {
                return s;
            }
            s = next;
        }
    }

    /// "1", "G" or a comma list of generator names.
    pub fn subgroup(&self, spec: &str) -> Result<Subgroup> {
        match spec.trim() {
            "1" | "" => Ok(1),
            "G" => Ok(self.all()),
            s => {
                let gens = s.split(',').map(|g| self.element(g.trim())).collect::<Result<Vec<_>>>()?;
                Ok(self.generate(&gens))
            }
        }
    }

    pub fn members(&self, s: Subgroup) -> Vec<usize> {
        (0..self.order()).filter(|&i| s >> i & 1 == 1).collect()
    }

    pub fn size(s: Subgroup) -> usize {
        s.count_ones() as usize
    }

    pub fn is_subgroup(&self, s: Subgroup) -> bool {
        s & 1 == 1 && self.members(s).iter().all(|&a| self.members(s).iter().all(|&b| s >> self.mul(a, b) & 1 == 1))
    }

    pub fn subgroups(&self) -> Vec<Subgroup> {
        (1..=self.all()).filter(|&s| self.is_subgroup(s)).collect()
    }

    pub fn conjugate(&self, s: Subgroup, a: usize) -> Subgroup {
        let ai = self.inv(a);
        self.members(s).iter().fold(0, |acc, &m| acc | 1 << self.mul(self.mul(a, m), ai))
    }

    pub fn is_normal_in(&self, i: Subgroup, d: Subgroup) -> bool {
        i & d == i && self.members(d).iter().all(|&a| self.conjugate(i, a) == i)
    }

    /// D/I cyclic: some element of D generates D together with I.
    pub fn quotient_cyclic(&self, i: Subgroup, d: Subgroup) -> bool {
        self.members(d).iter().any(|&a| {
            let mut gens = self.members(i);
            gens.push(a);
            self.generate(&gens) == d
        })
    }

    pub fn subgroup_name(&self, s: Subgroup) -> String {
        if s == 1 {
            return "{1}".into();
        }
        if s == self.all() {
            return "G".into();
        }
        // smallest generating set in index order
        let m = self.members(s);
        for &a in &m {
            if self.generate(&[a]) == s {
                return format!("<{}>", self.names[a]);
            }
        }
        for &a in &m {
            for &b in &m {
                if a < b && self.generate(&[a, b]) == s {
                    return format!("<{},{}>", self.names[a], self.names[b]);
                }
            }
        }
        format!("{s:#b}")
    }

    /// Subgroups fixing the subfields: K, K+, and per kind K1 (V4) or K*, K*+ (D4).
    pub fn subfield(&self, which: Subfield) -> Subgroup {
        match (self.kind, which) {
            (_, Subfield::N) => 1,
            (_, Subfield::K) => self.h,
            (_, Subfield::KPlus) => self.generate(&[self.members(self.h), vec![self.conj]].concat()),
            (GroupKind::V4, Subfield::K1) => self.generate(&[1]),
            (GroupKind::D4, Subfield::KStar) => self.generate(&[7]),
            (GroupKind::D4, Subfield::KStarPlus) => self.generate(&[7, 2]),
            (GroupKind::C4, Subfield::KStar) => self.h,
            (GroupKind::C4, Subfield::KStarPlus) => self.generate(&[2]),
            _ => self.h,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Subfield {
    N,
    K,
    KPlus,
    KStar,
    KStarPlus,
    K1,
}

impl fmt::Display for Subfield {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Subfield::N => "N",
            Subfield::K => "K",
            Subfield::KPlus => "K+",
            Subfield::KStar => "K*",
            Subfield::KStarPlus => "K*+",
            Subfield::K1 => "K1",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct InertiaDecompositionPair {
    pub i: Subgroup,
    pub d: Subgroup,
}

pub fn enumerate_id_pairs(g: &FiniteGroupPresentation) -> Vec<InertiaDecompositionPair> {
    let subs = g.subgroups();
    let mut out = Vec::new();
    for &i in &subs {
        for &d in &subs {
            if g.is_normal_in(i, d) && g.quotient_cyclic(i, d) {
                out.push(InertiaDecompositionPair { i, d });
            }
        }
    }
    out
}

/// One prime of the subfield: double coset H a D with representative a.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeData {
    pub rep: usize,
    pub coset: Subgroup,
    pub e: usize,
    pub f: usize,
}

/// Double cosets H a D and their (e, f); e = [I^a : I^a n H],
/// f = [D^a : I^a] / [D^a n H : I^a n H].
pub fn primes_from_pair(g: &FiniteGroupPresentation, h: Subgroup, pair: InertiaDecompositionPair) -> Vec<PrimeData> {
    let mut seen: Subgroup = 0;
    let mut out = Vec::new();
    for a in 0..g.order() {
        if seen >> a & 1 == 1 {
            continue;
        }
        let mut coset: Subgroup = 0;
        for &hh in &g.members(h) {
            for &dd in &g.members(pair.d) {
                coset |= 1 << g.mul(g.mul(hh, a), dd);
            }
        }
        seen |= coset;
        let ia = g.conjugate(pair.i, a);
        let da = g.conjugate(pair.d, a);
        let sz = FiniteGroupPresentation::size;
        let e = sz(ia) / sz(ia & h);
        let f = (sz(da) / sz(ia)) / (sz(da & h) / sz(ia & h));
        out.push(PrimeData { rep: a, coset, e, f });
    }
    out
}

pub fn shape_from_pair(g: &FiniteGroupPresentation, h: Subgroup, pair: InertiaDecompositionPair) -> SplittingShape {
    SplittingShape::new(primes_from_pair(g, h, pair).iter().map(|p| (p.e, p.f)).collect())
}

/// Printed shape column: labels alpha of p_{F,alpha} with exponents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrintedShape {
    pub field: Subfield,
    pub primes: Vec<(String, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub id: String,
    pub kind: GroupKind,
    pub i_printed: String,
    pub d_printed: String,
    #[serde(skip)]
    pub pair: InertiaDecompositionPair,
    pub printed: Vec<PrintedShape>,
    pub type_norm: Option<String>,
    pub a_number: u8,
    pub f_number: u8,
    pub superspecial: bool,
}

impl TableRow {
    pub fn profile(&self) -> ReductionProfile {
        ReductionProfile {
            a_number: self.a_number,
            f_number: self.f_number,
            superspecial: self.superspecial,
            ordinary: self.f_number == 2,
        }
    }

    /// Engine shape of this row's (I, D) in a subfield.
    pub fn shape(&self, g: &FiniteGroupPresentation, field: Subfield) -> SplittingShape {
        shape_from_pair(g, g.subfield(field), self.pair)
    }
}

struct Raw {
    id: &'static str,
    i: &'static str,
    d: &'static str,
    cols: &'static [(Subfield, &'static str)],
    norm: Option<&'static str>,
    a: u8,
    f: u8,
    ss: bool,
}

use Subfield::{KPlus as KP, KStar as KS, KStarPlus as KSP, K, N};

macro_rules! row {
    ($id:expr, $i:expr, $d:expr, [$($c:expr),*], $norm:expr, $a:expr, $f:expr, $ss:expr) => {
        Raw { id: $id, i: $i, d: $d, cols: &[$($c),*], norm: $norm, a: $a, f: $f, ss: $ss }
    };
}

const CYCLIC: &[Raw] = &[
    row!("i", "1", "1", [(K, "1 g g^2 g^3"), (KP, "1 g")], None, 0, 2, false),
    row!("ii", "1", "g^2", [(K, "1 g"), (KP, "1 g")], None, 2, 0, true),
    row!("iii", "1", "G", [(K, "1"), (KP, "1")], None, 1, 0, false),
    row!("iv", "g^2", "g^2", [(K, "1:2 g:2"), (KP, "1 g")], None, 2, 0, true),
    row!("v", "g^2", "G", [(K, "1:2"), (KP, "1")], None, 2, 0, true),
    row!("vi", "G", "G", [(K, "1:4"), (KP, "1:2")], None, 2, 0, true),
];

const BIQUADRATIC: &[Raw] = &[
    row!("i", "1", "1", [(K, "1 a1 b a2"), (KP, "1 a1")], None, 0, 2, false),
    row!("ii", "1", "a1", [(K, "1 b"), (KP, "1")], None, 0, 2, false),
    row!("iii", "1", "b", [(K, "1 a1"), (KP, "1 a1")], None, 2, 0, true),
    row!("iv", "1", "a2", [(K, "1 b"), (KP, "1")], None, 2, 0, true),
    row!("v", "a1", "a1", [(K, "1:2 b:2"), (KP, "1:2")], None, 0, 2, false),
    row!("vi", "a1", "G", [(K, "1:2"), (KP, "1:2")], None, 2, 0, true),
    row!("vii", "b", "b", [(K, "1:2 a1:2"), (KP, "1 a1")], None, 2, 0, true),
    row!("viii", "b", "G", [(K, "1:2"), (KP, "1")], None, 2, 0, true),
    row!("ix", "a2", "a2", [(K, "1:2 b:2"), (KP, "1:2")], None, 2, 0, true),
    row!("x", "a2", "G", [(K, "1:2"), (KP, "1:2")], None, 2, 0, true),
    row!("xi", "G", "G", [(K, "1:4"), (KP, "1:2")], None, 2, 0, true),
];

const ALL8: &str = "1 y y^2 y^3 x xy xy^2 xy^3";

const NON_GALOIS: &[Raw] = &[
    row!("i", "1", "1", [(N, ALL8), (K, "1 y y^2 y^3"), (KP, "1 y"), (KS, "1 y y^2 y^3"), (KSP, "1 y")], Some("p_{K,1} p_{K,y^3}"), 0, 2, false),
    row!("ii", "1", "x", [(N, "1 y y^2 y^3"), (K, "1 y y^2"), (KP, "1 y"), (KS, "1 y^2"), (KSP, "1")], Some("p_{K,1}^2 p_{K,y}"), 1, 1, false),
    row!("iii", "1", "xy", [(N, "1 y y^2 y^3"), (K, "1 y^2"), (KP, "1"), (KS, "1 y y^3"), (KSP, "1 y")], Some("p"), 2, 0, true),
    row!("iv", "1", "xy^2", [(N, "1 y y^2 y^3"), (K, "1 y y^3"), (KP, "1 y"), (KS, "1 y"), (KSP, "1")], Some("p_{K,1} p_{K,y^3}^2"), 1, 1, false),
    row!("v", "1", "xy^3", [(N, "1 y y^2 y^3"), (K, "1 y^2"), (KP, "1"), (KS, "1 y y^2"), (KSP, "1 y")], Some("p_{K,1}^2"), 0, 2, false),
    row!("vi", "1", "y^2", [(N, "1 x y xy"), (K, "1 y"), (KP, "1 y"), (KS, "1 y"), (KSP, "1 y")], Some("p"), 2, 0, true),
    row!("vii", "1", "y", [(N, "1 x"), (K, "1"), (KP, "1"), (KS, "1"), (KSP, "1")], Some("p^2"), 1, 0, false),
    row!("viii", "y^2", "y^2", [(N, "1:2 x:2 y:2 xy:2"), (K, "1:2 y:2"), (KP, "1 y"), (KS, "1:2 y:2"), (KSP, "1 y")], Some("p_{K,1} p_{K,y}"), 2, 0, true),
    row!("ix", "y^2", "y", [(N, "1:2 x:2"), (K, "1:2"), (KP, "1"), (KS, "1:2"), (KSP, "1")], Some("p"), 2, 0, true),
    row!("x", "y^2", "x,y^2", [(N, "1:2 y:2"), (K, "1:2 y:2"), (KP, "1 y"), (KS, "1:2"), (KSP, "1")], Some("p"), 2, 0, true),
    row!("xi", "y^2", "xy,y^2", [(N, "1:2 y:2"), (K, "1:2"), (KP, "1"), (KS, "1:2 y:2"), (KSP, "1 y")], Some("p"), 2, 0, true),
    row!("xii", "x", "x", [(N, "1:2 y:2 y^2:2 y^3:2"), (K, "1 y:2 y^2"), (KP, "1 y"), (KS, "1:2 y^2:2"), (KSP, "1:2")], Some("p_{K,1} p_{K,y}"), 1, 1, false),
    row!("xiii", "x", "x,y^2", [(N, "1:2 y:2"), (K, "1 y:2"), (KP, "1 y"), (KS, "1:2"), (KSP, "1:2")], Some("p"), 2, 0, true),
    row!("xiv", "xy^2", "xy^2", [(N, "1:2 y:2 y^2:2 y^3:2"), (K, "1:2 y y^3"), (KP, "1 y"), (KS, "1:2 y:2"), (KSP, "1:2")], Some("p_{K,1} p_{K,y^3} (triangle)"), 1, 1, false),
    row!("xv", "xy^2", "x,y^2", [(N, "1:2 y:2"), (K, "1:2 y"), (KP, "1 y"), (KS, "1:2"), (KSP, "1:2")], Some("p"), 2, 0, true),
    row!("xvi", "xy", "xy", [(N, "1:2 y:2 y^2:2 y^3:2"), (K, "1:2 y^3:2"), (KP, "1:2"), (KS, "1:2 y y^3"), (KSP, "1 y")], Some("p_{K,1} p_{K,y^3} (triangle)"), 2, 0, true),
    row!("xvii", "xy", "xy,y^2", [(N, "1:2 y:2"), (K, "1:2"), (KP, "1:2"), (KS, "1:2 y"), (KSP, "1 y")], Some("p"), 2, 0, true),
    row!("xviii", "xy^3", "xy^3", [(N, "1:2 y:2 y^2:2 y^3:2"), (K, "1:2 y:2"), (KP, "1:2"), (KS, "1 y:2 y^2"), (KSP, "1 y")], Some("p_{K,1}^2 (triangle)"), 2, 0, true),
    row!("xix", "xy", "xy,y^2", [(N, "1:2 y:2"), (K, "1:2"), (KP, "1:2"), (KS, "1:2 y"), (KSP, "1 y")], Some("p"), 2, 0, true),
    row!("xx", "y", "y", [(N, "1:4 x:4"), (K, "1:4"), (KP, "1:2"), (KS, "1:4"), (KSP, "1:2")], Some("p_{K,1}^2"), 2, 0, true),
    row!("xxi", "y", "G", [(N, "1:4"), (K, "1:4"), (KP, "1:2"), (KS, "1:4"), (KSP, "1:2")], Some("p"), 2, 0, true),
    row!("xxii", "x,y^2", "x,y^2", [(N, "1:4 y:4"), (K, "1:2 y:2"), (KP, "1 y"), (KS, "1:4"), (KSP, "1:2")], Some("p_{K,1} p_{K,y}"), 2, 0, true),
    row!("xxiii", "x,y^2", "G", [(N, "1:4"), (K, "1:2"), (KP, "1"), (KS, "1:4"), (KSP, "1:2")], Some("p"), 2, 0, true),
    row!("xxiv", "xy,y^2", "xy,y^2", [(N, "1:4 y:4"), (K, "1:4"), (KP, "1:2"), (KS, "1:2 y:2"), (KSP, "1 y")], Some("p_{K,1}^2"), 2, 0, true),
    row!("xxv", "xy,y^2", "G", [(N, "1:4"), (K, "1:4"), (KP, "1:2"), (KS, "1:2"), (KSP, "1")], Some("p"), 2, 0, true),
    row!("xxvi", "G", "G", [(N, "1:4"), (K, "1:4"), (KP, "1:2"), (KS, "1:4"), (KSP, "1:2")], Some("p"), 2, 0, true),
];

fn parse_printed(field: Subfield, s: &str) -> PrintedShape {
    let primes = s
        .split_whitespace()
        .map(|t| match t.split_once(':') {
            Some((l, e)) => (l.to_string(), e.parse().unwrap()),
            None => (t.to_string(), 1),
        })
        .collect();
    PrintedShape { field, primes }
}

pub fn table_rows(kind: GroupKind) -> Vec<TableRow> {
    let g = FiniteGroupPresentation::new(kind);
    let raw = match kind {
        GroupKind::C4 => CYCLIC,
        GroupKind::V4 => BIQUADRATIC,
        GroupKind::D4 => NON_GALOIS,
    };
    raw.iter()
        .map(|r| TableRow {
            id: format!("{}.{}", kind.table_name(), r.id),
            kind,
            i_printed: r.i.to_string(),
            d_printed: r.d.to_string(),
            pair: InertiaDecompositionPair { i: g.subgroup(r.i).unwrap(), d: g.subgroup(r.d).unwrap() },
            printed: r.cols.iter().map(|(f, s)| parse_printed(*f, s)).collect(),
            type_norm: r.norm.map(str::to_string),
            a_number: r.a,
            f_number: r.f,
            superspecial: r.ss,
        })
        .collect()
}

/// Outcome of checking the printed tables against the engine.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ReproductionReport {
    pub rows_checked: usize,
    /// (row id, field, message) for printed columns the engine disagrees with.
    pub inconsistencies: Vec<(String, String, String)>,
    /// Rows whose (I, D) repeats an earlier row.
    pub duplicate_pairs: Vec<(String, String)>,
    /// Admissible pairs with no row, as (I, D) names.
    pub missing_pairs: Vec<(String, String)>,
    /// (row, a, f, superspecial) that violate the a/f rules.
    pub profile_violations: Vec<String>,
}

impl ReproductionReport {
    pub fn shapes_consistent(&self) -> bool {
        self.inconsistencies.is_empty() && self.profile_violations.is_empty()
    }
}

/// Check each printed column: labels name distinct double cosets H alpha D that
/// cover H\G/D, with the printed exponents equal to the engine's e.
pub fn verify_rows(kind: GroupKind) -> ReproductionReport {
    let g = FiniteGroupPresentation::new(kind);
    let rows = table_rows(kind);
    let mut rep = ReproductionReport { rows_checked: rows.len(), ..Default::default() };
    for (k, row) in rows.iter().enumerate() {
        if let Some(prev) = rows[..k].iter().find(|r| r.pair == row.pair) {
            rep.duplicate_pairs.push((row.id.clone(), prev.id.clone()));
        }
        let ok_profile = row.a_number + row.f_number <= 2
            && row.superspecial == (row.a_number == 2 && row.f_number == 0);
        if !ok_profile {
            rep.profile_violations.push(row.id.clone());
        }
        for col in &row.printed {
            let h = g.subfield(col.field);
            let primes = primes_from_pair(&g, h, row.pair);
            let mut used: Subgroup = 0;
            let mut msg = Vec::new();
            for (label, exp) in &col.primes {
                let Ok(a) = g.element(label) else {
                    msg.push(format!("unknown label {label}"));
                    continue;
                };
                let Some(pd) = primes.iter().find(|p| p.coset >> a & 1 == 1) else { continue };
                if used & pd.coset != 0 {
                    msg.push(format!("label {label} repeats a prime"));
                }
                used |= pd.coset;
                if pd.e != *exp {
                    msg.push(format!("label {label}: printed e={exp}, engine e={}", pd.e));
                }
            }
            if used != g.all() {
                msg.push(format!("printed {} primes, engine has {}", col.primes.len(), primes.len()));
            }
            if !msg.is_empty() {
                rep.inconsistencies.push((row.id.clone(), col.field.to_string(), msg.join("; ")));
            }
        }
    }
    for pair in enumerate_id_pairs(&g) {
        if !rows.iter().any(|r| r.pair == pair) {
            rep.missing_pairs.push((g.subgroup_name(pair.i), g.subgroup_name(pair.d)));
        }
    }
    rep
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub row: String,
    pub profile: ReductionProfile,
    pub type_norm: Option<String>,
    /// |I|: ramification index of p in the normal closure.
    pub inertia_order: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PredictResult {
    pub galois_type: GaloisType,
    pub shapes: ShapeProfile,
    pub matches: Vec<Prediction>,
    pub warning: Option<String>,
}

impl PredictResult {
    /// Largest ramification index in the normal closure among the matching rows.
    pub fn closure_ramification(&self) -> usize {
        self.matches.iter().map(|m| m.inertia_order).max().unwrap_or(1)
    }

    pub fn has_superspecial(&self) -> bool {
        self.matches.iter().any(|m| m.profile.superspecial)
    }
}

fn row_matches(g: &FiniteGroupPresentation, row: &TableRow, cols: &[(Subfield, &SplittingShape)]) -> bool {
    cols.iter().all(|(f, s)| row.shape(g, *f) == **s)
}

/// Table rows consistent with the splitting shapes of p in K and its relatives.
pub fn predict(k: &QuarticCMField, p: u64) -> Result<PredictResult> {
    let gt = k.galois_type();
    let shapes = k.shape_profile(p)?;
    let kind = match gt {
        GaloisType::Cyclic => GroupKind::C4,
        GaloisType::Biquadratic => GroupKind::V4,
        GaloisType::Dihedral => GroupKind::D4,
    };
    let g = FiniteGroupPresentation::new(kind);
    let mut col_sets: Vec<Vec<(Subfield, &SplittingShape)>> = Vec::new();
    let base = vec![(Subfield::K, &shapes.k), (Subfield::KPlus, &shapes.k_plus)];
    match gt {
        GaloisType::Cyclic => col_sets.push(base),
        GaloisType::Dihedral => {
            let mut c = base;
            c.push((Subfield::KStar, shapes.k_star.as_ref().unwrap()));
            c.push((Subfield::KStarPlus, shapes.k_star_plus.as_ref().unwrap()));
            col_sets.push(c);
        }
        GaloisType::Biquadratic => {
            // which constituent is K1 depends on the CM type: take both
            for s in [shapes.k1.as_ref().unwrap(), shapes.k2.as_ref().unwrap()] {
                let mut c = base.clone();
                c.push((Subfield::K1, s));
                col_sets.push(c);
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut matches = Vec::new();
    for row in table_rows(kind) {
        if col_sets.iter().any(|c| row_matches(&g, &row, c)) && seen.insert(row.id.clone()) {
            matches.push(Prediction {
                row: row.id.clone(),
                profile: row.profile(),
                type_norm: row.type_norm.clone(),
                inertia_order: FiniteGroupPresentation::size(row.pair.i),
            });
        }
    }
    if matches.is_empty() {
        return Err(Error::Internal(format!("no table row matches the shapes of p = {p}")));
    }
    let warning = (gt == GaloisType::Biquadratic).then(|| "non-primitive field".to_string());
    Ok(PredictResult { galois_type: gt, shapes, matches, warning })
}
