//! Snapshots and the full swap structure over a finite Boolean algebra.

use std::fmt;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boolalg::{binomial, AlgebraError, Element, FiniteBooleanAlgebra};
use crate::formula::BinOp;

/// Default cap on materialized carriers.
pub const DEFAULT_MAX_CARRIER: usize = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SwapError {
    #[error("n must be at least 1")]
    ZeroN,
    #[error("carrier of size {size} exceeds the cap of {cap}")]
    CarrierCap { size: u128, cap: usize },
    #[error("{0} is not a snapshot for n = {1}")]
    NotSnapshot(String, u32),
    #[error("malformed snapshot literal `{0}`")]
    Literal(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// An `(n+1)`-tuple of algebra elements. Ordered lexicographically by
/// coordinate bits, which is also the enumeration order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Snapshot {
    coords: Vec<Element>,
}

impl Snapshot {
    pub fn new(coords: Vec<Element>) -> Self {
        Snapshot { coords }
    }

    pub fn coords(&self) -> &[Element] {
        &self.coords
    }

    /// 1-based coordinate access, `z[i]`.
    pub fn at(&self, i: usize) -> Element {
        self.coords[i - 1]
    }

    pub fn first(&self) -> Element {
        self.coords[0]
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn format(&self, b: &FiniteBooleanAlgebra) -> String {
        let parts: Vec<String> = self.coords.iter().map(|&x| b.format(x)).collect();
        format!("({})", parts.join(","))
    }

    /// Element literals, one per coordinate.
    pub fn literals(&self, b: &FiniteBooleanAlgebra) -> Vec<String> {
        self.coords.iter().map(|&x| b.format(x)).collect()
    }

    /// Parses `(1,{a},0)`.
    pub fn parse(b: &FiniteBooleanAlgebra, text: &str) -> Result<Snapshot, SwapError> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| SwapError::Literal(t.to_string()))?;
        let mut parts = Vec::new();
        let mut depth = 0usize;
        let mut start = 0;
        for (i, c) in inner.char_indices() {
            match c {
                '{' => depth += 1,
                '}' => depth = depth.saturating_sub(1),
                ',' if depth == 0 => {
                    parts.push(&inner[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        parts.push(&inner[start..]);
        let coords = parts
            .into_iter()
            .map(|p| b.parse_element(p))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Snapshot { coords })
    }
}

/// Membership in `B_n^ℬ`: `(⋀_{i≤k} z[i]) ∨ z[k+1] = 1` for `1 ≤ k ≤ n`.
pub fn is_snapshot(b: &FiniteBooleanAlgebra, n: u32, coords: &[Element]) -> bool {
    if coords.len() != n as usize + 1 || coords.iter().any(|&x| !b.contains(x)) {
        return false;
    }
    let mut meet = b.one();
    for k in 0..n as usize {
        meet = b.meet(meet, coords[k]);
        if b.join(meet, coords[k + 1]) != b.one() {
            return false;
        }
    }
    true
}

/// Closed form `(⋀_{i≥3} z[i]) ∧ ∼(z[1] ∧ z[2])`: the first coordinate that
/// `α^(n)` must take when `α` takes `z`.
pub fn bounded_power_first(b: &FiniteBooleanAlgebra, z: &[Element]) -> Element {
    let rest = b.meet_all(z[2..].iter().copied());
    b.meet(rest, b.compl(b.meet(z[0], z[1])))
}

/// Lazy depth-first enumeration of `B_n^ℬ` in lexicographic order: each
/// prefix in `B_k^ℬ` is extended by every `a` with `a ∨ ⋀ prefix = 1`.
pub struct SnapshotIter {
    mask: u32,
    len: usize,
    base: Vec<u32>,
    free: Vec<u32>,
    sub: Vec<u32>,
    started: bool,
    done: bool,
}

impl SnapshotIter {
    pub fn new(b: &FiniteBooleanAlgebra, n: u32) -> Self {
        let len = n as usize + 1;
        SnapshotIter {
            mask: b.one().bits(),
            len,
            base: vec![0; len],
            free: vec![0; len],
            sub: vec![0; len],
            started: false,
            done: false,
        }
    }

    fn fill_from(&mut self, level: usize) {
        for l in level..self.len {
            let meet = (0..l).fold(self.mask, |acc, i| acc & (self.base[i] | self.sub[i]));
            if l == 0 {
                self.base[0] = 0;
                self.free[0] = self.mask;
            } else {
                self.base[l] = !meet & self.mask;
                self.free[l] = meet;
            }
            self.sub[l] = 0;
        }
    }

    fn current(&self) -> Snapshot {
        Snapshot {
            coords: (0..self.len).map(|l| Element(self.base[l] | self.sub[l])).collect(),
        }
    }
}

impl Iterator for SnapshotIter {
    type Item = Snapshot;

    fn next(&mut self) -> Option<Snapshot> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.fill_from(0);
            return Some(self.current());
        }
        for l in (0..self.len).rev() {
            if self.sub[l] != self.free[l] {
                // next subset of free[l] in increasing order
                self.sub[l] = self.sub[l].wrapping_sub(self.free[l]) & self.free[l];
                self.fill_from(l + 1);
                return Some(self.current());
            }
        }
        self.done = true;
        None
    }
}

pub fn enumerate_snapshots(b: &FiniteBooleanAlgebra, n: u32) -> SnapshotIter {
    SnapshotIter::new(b, n)
}

/// Index of a snapshot within a materialized carrier.
pub type SnapId = u32;

/// The multialgebra `𝒜_{C_n}^ℬ` with `D_n^ℬ` and `Boo_n^ℬ`, carrier materialized.
#[derive(Clone, Debug)]
pub struct SwapStructure {
    n: u32,
    algebra: FiniteBooleanAlgebra,
    snaps: Vec<Snapshot>,
    index: FxHashMap<Snapshot, SnapId>,
    /// Snapshots grouped by first coordinate (indexed by element bits).
    by_first: Vec<Vec<SnapId>>,
    /// `boolean_of[a]` is the index of `(a, ∼a, 1, …, 1)`.
    boolean_of: Vec<SnapId>,
}

impl SwapStructure {
    pub fn new(algebra: FiniteBooleanAlgebra, n: u32) -> Result<Self, SwapError> {
        Self::with_cap(algebra, n, DEFAULT_MAX_CARRIER)
    }

    pub fn with_cap(algebra: FiniteBooleanAlgebra, n: u32, cap: usize) -> Result<Self, SwapError> {
        if n == 0 {
            return Err(SwapError::ZeroN);
        }
        let size = census(&algebra, n).total;
        if size > cap as u128 {
            return Err(SwapError::CarrierCap { size, cap });
        }
        let snaps: Vec<Snapshot> = enumerate_snapshots(&algebra, n).collect();
        let mut index = FxHashMap::default();
        let mut by_first = vec![Vec::new(); algebra.size()];
        for (i, z) in snaps.iter().enumerate() {
            index.insert(z.clone(), i as SnapId);
            by_first[z.first().bits() as usize].push(i as SnapId);
        }
        let boolean_of = algebra
            .elements()
            .map(|a| {
                let mut coords = vec![algebra.one(); n as usize + 1];
                coords[0] = a;
                coords[1] = algebra.compl(a);
                index[&Snapshot::new(coords)]
            })
            .collect();
        Ok(SwapStructure {
            n,
            algebra,
            snaps,
            index,
            by_first,
            boolean_of,
        })
    }

    /// The structure over the two-element algebra.
    pub fn two(n: u32) -> Result<Self, SwapError> {
        Self::new(FiniteBooleanAlgebra::two(), n)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn algebra(&self) -> &FiniteBooleanAlgebra {
        &self.algebra
    }

    pub fn len(&self) -> usize {
        self.snaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snaps.is_empty()
    }

    pub fn snapshots(&self) -> &[Snapshot] {
        &self.snaps
    }

    pub fn get(&self, id: SnapId) -> &Snapshot {
        &self.snaps[id as usize]
    }

    pub fn id(&self, z: &Snapshot) -> Option<SnapId> {
        self.index.get(z).copied()
    }

    pub fn id_of_coords(&self, coords: &[Element]) -> Option<SnapId> {
        self.index.get(&Snapshot::new(coords.to_vec())).copied()
    }

    pub fn with_first(&self, x: Element) -> &[SnapId] {
        &self.by_first[x.bits() as usize]
    }

    pub fn boolean_of(&self, a: Element) -> SnapId {
        self.boolean_of[a.bits() as usize]
    }

    /// `boolean_ids()[a]` is the index of `(a, ∼a, 1, …, 1)`.
    pub fn boolean_ids(&self) -> &[SnapId] {
        &self.boolean_of
    }

    pub fn is_designated(&self, id: SnapId) -> bool {
        self.get(id).first() == self.algebra.one()
    }

    pub fn is_boolean(&self, id: SnapId) -> bool {
        let z = self.get(id);
        self.algebra.meet(z.at(1), z.at(2)) == self.algebra.zero()
    }

    pub fn designated(&self) -> Vec<SnapId> {
        self.with_first(self.algebra.one()).to_vec()
    }

    pub fn boolean(&self) -> Vec<SnapId> {
        (0..self.len() as SnapId).filter(|&i| self.is_boolean(i)).collect()
    }

    fn constant(&self, zero_at: Option<usize>) -> Snapshot {
        let b = &self.algebra;
        let mut coords = vec![b.one(); self.n as usize + 1];
        if let Some(i) = zero_at {
            coords[i] = b.zero();
        }
        Snapshot::new(coords)
    }

    /// `T_n = (1, 0, 1, …, 1)`.
    pub fn top(&self) -> Snapshot {
        self.constant(Some(1))
    }

    /// `F_n = (0, 1, 1, …, 1)`.
    pub fn bottom(&self) -> Snapshot {
        self.constant(Some(0))
    }

    /// `t^n_i` for `0 ≤ i ≤ n-1`: all ones except a 0 at coordinate `i+3`;
    /// `t^n_{n-1}` is all ones.
    pub fn t(&self, i: u32) -> Snapshot {
        assert!(i < self.n, "t^n_i needs i < n");
        if i + 1 == self.n {
            self.constant(None)
        } else {
            self.constant(Some(i as usize + 2))
        }
    }

    /// The `n + 2` two-valued snapshots `T_n, t^n_0, …, t^n_{n-1}, F_n`.
    pub fn two_valued(&self) -> Vec<Snapshot> {
        let mut out = vec![self.top()];
        out.extend((0..self.n).map(|i| self.t(i)));
        out.push(self.bottom());
        out
    }

    /// Name of a two-valued snapshot (`T`, `t0`, …, `F`), if it is one.
    pub fn name_of(&self, z: &Snapshot) -> Option<String> {
        if *z == self.top() {
            return Some("T".into());
        }
        if *z == self.bottom() {
            return Some("F".into());
        }
        (0..self.n).find(|&i| *z == self.t(i)).map(|i| format!("t{i}"))
    }

    /// `¬̃z = {w : w[1] = z[2], w[2] ≤ z[1]}`.
    pub fn neg_ids(&self, z: SnapId) -> Vec<SnapId> {
        let z = self.get(z);
        self.with_first(z.at(2))
            .iter()
            .copied()
            .filter(|&w| self.get(w).at(2).le(z.at(1)))
            .collect()
    }

    /// `z #̃ w`: Boolean singleton when both arguments are Boolean, else every
    /// snapshot whose first coordinate is `z[1] # w[1]`.
    pub fn bin_ids(&self, op: BinOp, z: SnapId, w: SnapId) -> Vec<SnapId> {
        let x = self.first_op(op, self.get(z).first(), self.get(w).first());
        if self.is_boolean(z) && self.is_boolean(w) {
            vec![self.boolean_of(x)]
        } else {
            self.with_first(x).to_vec()
        }
    }

    pub fn first_op(&self, op: BinOp, x: Element, y: Element) -> Element {
        let b = &self.algebra;
        match op {
            BinOp::And => b.meet(x, y),
            BinOp::Or => b.join(x, y),
            BinOp::Imp => b.imp(x, y),
        }
    }

    fn require(&self, z: &Snapshot) -> Result<SnapId, SwapError> {
        self.id(z)
            .ok_or_else(|| SwapError::NotSnapshot(z.format(&self.algebra), self.n))
    }

    pub fn mult_neg(&self, z: &Snapshot) -> Result<Vec<Snapshot>, SwapError> {
        let id = self.require(z)?;
        Ok(self.neg_ids(id).into_iter().map(|i| self.get(i).clone()).collect())
    }

    pub fn mult_bin(&self, op: BinOp, z: &Snapshot, w: &Snapshot) -> Result<Vec<Snapshot>, SwapError> {
        let (a, b) = (self.require(z)?, self.require(w)?);
        Ok(self.bin_ids(op, a, b).into_iter().map(|i| self.get(i).clone()).collect())
    }

    /// Closed form of `α^(n)`'s first coordinate for a given `ν(α)`.
    pub fn bounded_power_first(&self, id: SnapId) -> Element {
        bounded_power_first(&self.algebra, self.get(id).coords())
    }

    /// Order of `⋀_i z[i]`.
    pub fn meet_order(&self, id: SnapId) -> u32 {
        self.algebra.meet_all(self.get(id).coords().iter().copied()).order()
    }

    /// Renders a set of snapshots, naming `D_n` and two-valued points when possible.
    pub fn describe_set(&self, ids: &[SnapId]) -> String {
        let mut sorted = ids.to_vec();
        sorted.sort_unstable();
        if sorted == self.designated() && sorted.len() > 1 {
            return "D".into();
        }
        if sorted.len() == self.len() && sorted.len() > 1 {
            return "B".into();
        }
        let parts: Vec<String> = sorted.iter().map(|&i| self.label(i)).collect();
        if parts.len() == 1 {
            parts.into_iter().next().unwrap()
        } else {
            format!("{{{}}}", parts.join(", "))
        }
    }

    pub fn label(&self, id: SnapId) -> String {
        let z = self.get(id);
        self.name_of(z).unwrap_or_else(|| z.format(&self.algebra))
    }
}

impl fmt::Display for SwapStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "swap structure for C_{} over {}", self.n, self.algebra)
    }
}

/// The operation tabulated by [`table`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableOp {
    Neg,
    And,
    Or,
    Imp,
}

impl TableOp {
    pub fn binary(self) -> Option<BinOp> {
        match self {
            TableOp::Neg => None,
            TableOp::And => Some(BinOp::And),
            TableOp::Or => Some(BinOp::Or),
            TableOp::Imp => Some(BinOp::Imp),
        }
    }
}

/// A multioperation table; `cells[i]` is a row for unary `¬̃`, and
/// `cells[i][j]` a cell for binary operations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub op: TableOp,
    pub n: u32,
    pub algebra: String,
    pub rows: Vec<String>,
    pub cells: Vec<Vec<String>>,
}

pub fn table(s: &SwapStructure, op: TableOp) -> Table {
    let ids: Vec<SnapId> = (0..s.len() as SnapId).collect();
    let rows = ids.iter().map(|&i| s.label(i)).collect();
    let cells = match op.binary() {
        None => ids.iter().map(|&z| vec![s.describe_set(&s.neg_ids(z))]).collect(),
        Some(bin) => ids
            .iter()
            .map(|&z| ids.iter().map(|&w| s.describe_set(&s.bin_ids(bin, z, w))).collect())
            .collect(),
    };
    Table {
        op,
        n: s.n(),
        algebra: s.algebra().to_string(),
        rows,
        cells,
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .rows
            .iter()
            .chain(self.cells.iter().flatten())
            .map(|s| s.chars().count())
            .max()
            .unwrap_or(1);
        let sym = match self.op {
            TableOp::Neg => "~",
            TableOp::And => "&",
            TableOp::Or => "|",
            TableOp::Imp => "->",
        };
        write!(f, "{sym:width$} |")?;
        if self.op == TableOp::Neg {
            writeln!(f)?;
        } else {
            for c in &self.rows {
                write!(f, " {c:width$}")?;
            }
            writeln!(f)?;
        }
        for (r, cells) in self.rows.iter().zip(&self.cells) {
            write!(f, "{r:width$} |")?;
            for c in cells {
                write!(f, " {c:width$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Closed-form counts for `B_n^ℬ` with `m` atoms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub total: u128,
    pub designated: u128,
    pub boolean: u128,
    /// Entry `p` counts snapshots whose total meet has order `p`.
    pub by_meet_order: Vec<u128>,
}

pub fn census(b: &FiniteBooleanAlgebra, n: u32) -> Census {
    let m = b.atom_count() as u32;
    let n = n as u128;
    Census {
        total: (n + 2).pow(m),
        designated: (n + 1).pow(m),
        boolean: 2u128.pow(m),
        by_meet_order: (0..=m)
            .map(|p| binomial(m as u64, p as u64) * (n + 1).pow(m - p))
            .collect(),
    }
}

/// Closed forms next to the tallies of an exhaustive enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub m: usize,
    pub n: u32,
    pub total: u128,
    pub designated: u128,
    pub boolean: u128,
    pub by_meet_order: Vec<u128>,
    pub enumerated: Census,
    #[serde(rename = "match")]
    pub matches: bool,
}

pub fn verify_census(b: &FiniteBooleanAlgebra, n: u32, cap: usize) -> Result<CensusReport, SwapError> {
    if n == 0 {
        return Err(SwapError::ZeroN);
    }
    let closed = census(b, n);
    if closed.total > cap as u128 {
        return Err(SwapError::CarrierCap {
            size: closed.total,
            cap,
        });
    }
    let mut tally = Census {
        total: 0,
        designated: 0,
        boolean: 0,
        by_meet_order: vec![0; b.atom_count() + 1],
    };
    for z in enumerate_snapshots(b, n) {
        tally.total += 1;
        if z.at(1) == b.one() {
            tally.designated += 1;
        }
        if b.meet(z.at(1), z.at(2)) == b.zero() {
            tally.boolean += 1;
        }
        tally.by_meet_order[b.meet_all(z.coords().iter().copied()).order() as usize] += 1;
    }
    Ok(CensusReport {
        m: b.atom_count(),
        n,
        matches: tally == closed,
        total: closed.total,
        designated: closed.designated,
        boolean: closed.boolean,
        by_meet_order: closed.by_meet_order,
        enumerated: tally,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(m: usize) -> FiniteBooleanAlgebra {
        FiniteBooleanAlgebra::powerset(m).unwrap()
    }

    fn brute(b: &FiniteBooleanAlgebra, n: u32) -> Vec<Snapshot> {
        // all (n+1)-tuples, filtered
        let len = n as usize + 1;
        let size = b.size();
        let mut out = Vec::new();
        for code in 0..size.pow(len as u32) {
            let coords: Vec<Element> = (0..len)
                .map(|i| Element((code / size.pow((len - 1 - i) as u32) % size) as u32))
                .collect();
            if is_snapshot(b, n, &coords) {
                out.push(Snapshot::new(coords));
            }
        }
        out
    }

    #[test]
    fn membership() {
        let b2 = p(1);
        assert!(is_snapshot(&b2, 2, &[Element(1), Element(0), Element(1)]));
        assert!(!is_snapshot(&b2, 1, &[Element(0), Element(0)]));
        let b4 = FiniteBooleanAlgebra::parse("P(a,b)").unwrap();
        let z = Snapshot::parse(&b4, "({a},1,{b})").unwrap();
        assert!(is_snapshot(&b4, 2, z.coords()));
        assert!(!is_snapshot(&b4, 1, z.coords()));
    }

    #[test]
    fn iterator_matches_brute_force_in_order() {
        for m in 1..=3 {
            for n in 1..=3 {
                let b = p(m);
                let lazy: Vec<Snapshot> = enumerate_snapshots(&b, n).collect();
                assert_eq!(lazy, brute(&b, n), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn two_valued_carrier() {
        let s = SwapStructure::two(1).unwrap();
        assert_eq!(s.len(), 3);
        let mut named: Vec<Snapshot> = s.two_valued();
        named.sort();
        assert_eq!(named, s.snapshots());
        let s3 = SwapStructure::two(3).unwrap();
        assert_eq!(s3.len(), 5);
        assert_eq!(s3.t(0).coords(), &[Element(1), Element(1), Element(0), Element(1)]);
        assert_eq!(s3.name_of(&s3.t(2)).as_deref(), Some("t2"));
    }

    #[test]
    fn negation_examples() {
        for n in 1..=3 {
            let s = SwapStructure::two(n).unwrap();
            assert_eq!(s.mult_neg(&s.top()).unwrap(), vec![s.bottom()]);
            let d: Vec<Snapshot> = s.designated().iter().map(|&i| s.get(i).clone()).collect();
            for i in 0..n {
                assert_eq!(s.mult_neg(&s.t(i)).unwrap(), d);
            }
        }
        let s = SwapStructure::new(p(2), 2).unwrap();
        let b = s.algebra().clone();
        for a in b.elements() {
            let z = s.get(s.boolean_of(a)).clone();
            let expected = s.get(s.boolean_of(b.compl(a))).clone();
            assert_eq!(s.mult_neg(&z).unwrap(), vec![expected]);
        }
    }

    #[test]
    fn binary_examples() {
        let s = SwapStructure::two(2).unwrap();
        assert_eq!(s.mult_bin(BinOp::And, &s.top(), &s.bottom()).unwrap(), vec![s.bottom()]);
        let d: Vec<Snapshot> = s.designated().iter().map(|&i| s.get(i).clone()).collect();
        assert_eq!(s.mult_bin(BinOp::Imp, &s.t(0), &s.t(1)).unwrap(), d);
        let b4 = FiniteBooleanAlgebra::parse("P(a,b)").unwrap();
        let s = SwapStructure::new(b4.clone(), 1).unwrap();
        let z = Snapshot::parse(&b4, "({a},{b})").unwrap();
        let w = Snapshot::parse(&b4, "({b},{a})").unwrap();
        assert_eq!(
            s.mult_bin(BinOp::And, &z, &w).unwrap(),
            vec![Snapshot::parse(&b4, "(0,1)").unwrap()]
        );
        assert!(s.mult_bin(BinOp::And, &z, &Snapshot::parse(&b4, "(0,0)").unwrap()).is_err());
    }

    #[test]
    fn multioperation_laws() {
        for (m, n) in [(1, 1), (1, 3), (2, 1), (2, 2), (3, 1)] {
            let s = SwapStructure::new(p(m), n).unwrap();
            let b = s.algebra();
            for z in 0..s.len() as SnapId {
                let negs = s.neg_ids(z);
                assert!(!negs.is_empty());
                for &w in &negs {
                    assert_eq!(s.get(w).at(1), s.get(z).at(2));
                    assert!(s.get(w).at(2).le(s.get(z).at(1)));
                }
                if s.is_boolean(z) {
                    assert_eq!(negs.len(), 1);
                }
                for w in 0..s.len() as SnapId {
                    for op in BinOp::ALL {
                        let out = s.bin_ids(op, z, w);
                        assert!(!out.is_empty());
                        let x = s.first_op(op, s.get(z).first(), s.get(w).first());
                        assert!(out.iter().all(|&u| s.get(u).first() == x));
                        if s.is_boolean(z) && s.is_boolean(w) {
                            assert_eq!(out.len(), 1);
                            assert!(s.is_boolean(out[0]));
                        }
                    }
                }
            }
            for a in b.elements() {
                let z = s.get(s.boolean_of(a));
                assert!(s.is_boolean(s.boolean_of(a)));
                assert_eq!(z.at(2), b.compl(a));
                assert!(z.coords()[2..].iter().all(|&x| x == b.one()));
            }
            assert_eq!(s.boolean().len(), b.size());
        }
    }

    #[test]
    fn census_closed_forms() {
        let c = census(&p(2), 1);
        assert_eq!(c.total, 9);
        let c = census(&p(2), 2);
        assert_eq!((c.total, c.designated, c.boolean), (16, 9, 4));
        for n in 1..=5 {
            assert_eq!(census(&p(1), n).total, n as u128 + 2);
        }
        let r = verify_census(&p(1), 4, 1000).unwrap();
        assert_eq!(r.enumerated.by_meet_order, vec![5, 1]);
        assert!(r.matches);
        assert_eq!(verify_census(&p(3), 2, 1000).unwrap().enumerated.total, 64);
        assert_eq!(verify_census(&p(3), 3, 1000).unwrap().enumerated.total, 125);
        assert!(verify_census(&p(3), 2, 50).is_err());
    }

    #[test]
    fn census_report_json_keys() {
        let r = verify_census(&p(2), 1, 100).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for key in ["m", "n", "total", "designated", "boolean", "by_meet_order", "enumerated", "match"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn carrier_cap_enforced() {
        assert!(matches!(
            SwapStructure::with_cap(p(3), 2, 50),
            Err(SwapError::CarrierCap { size: 64, cap: 50 })
        ));
        assert_eq!(SwapStructure::new(p(1), 0).unwrap_err(), SwapError::ZeroN);
    }

    #[test]
    fn table_rendering() {
        let s = SwapStructure::two(1).unwrap();
        let t = table(&s, TableOp::Neg);
        assert_eq!(t.rows, ["F", "T", "t0"]);
        assert_eq!(t.cells, vec![vec!["T".to_string()], vec!["F".into()], vec!["D".into()]]);
        assert!(t.to_string().contains("t0 | D"));
    }
}
