//! Finite Boolean algebras in powerset normal form.
//!
//! Every finite non-trivial Boolean algebra is isomorphic to the powerset of
//! its atoms, so an algebra here is just a list of atom names and an element
//! is a bit set over those atoms. Homomorphisms between powerset algebras
//! are represented by a map from the *codomain's* atoms to the *domain's*
//! atoms: `f(A) = { y : atom_map[y] ∈ A }`. Every homomorphism between finite
//! powerset algebras arises this way, which makes them easy to enumerate.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hard ceiling on the number of atoms; elements are stored in a `u32`.
pub const MAX_ATOMS: usize = 31;

/// Default cap on the number of atoms accepted from user input.
pub const DEFAULT_ATOM_CAP: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("the trivial Boolean algebra (0 = 1) is not supported")]
    Trivial,
    #[error("{0} atoms exceeds the cap of {1}")]
    TooManyAtoms(usize, usize),
    #[error("duplicate atom name `{0}`")]
    DuplicateAtom(String),
    #[error("element {0:#b} does not belong to an algebra with {1} atoms")]
    Mismatch(u32, usize),
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("malformed literal `{0}`: {1}")]
    Literal(String, &'static str),
    #[error("atom map has length {got}, expected {expected}")]
    AtomMapLength { expected: usize, got: usize },
    #[error("atom map sends target atom {target} to {source_atom}, but the source has {source_size} atoms")]
    AtomMapRange {
        target: usize,
        source_atom: usize,
        source_size: usize,
    },
    #[error("map is not a Boolean homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("invalid partition: {0}")]
    Partition(&'static str),
}

/// An element of a powerset algebra: the set of atoms it contains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(pub u32);

impl Element {
    pub const ZERO: Element = Element(0);

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Number of atoms below this element.
    pub fn order(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains_atom(self, atom: usize) -> bool {
        self.0 >> atom & 1 == 1
    }

    /// Lattice order `self ≤ other`.
    pub fn le(self, other: Element) -> bool {
        self.0 & !other.0 == 0
    }
}

/// The powerset algebra over a list of named atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteBooleanAlgebra {
    atoms: Vec<String>,
}

impl FiniteBooleanAlgebra {
    /// `P(m)` with atoms auto-named `a, b, c, …` (or `a0, a1, …` past 26).
    pub fn powerset(m: usize) -> Result<Self, AlgebraError> {
        let names = (0..m)
            .map(|i| {
                if m <= 26 {
                    ((b'a' + i as u8) as char).to_string()
                } else {
                    format!("a{i}")
                }
            })
            .collect();
        Self::with_atoms(names)
    }

    /// The two-element algebra `B_2 = P(1)`.
    pub fn two() -> Self {
        Self::powerset(1).expect("one atom is always valid")
    }

    pub fn with_atoms(atoms: Vec<String>) -> Result<Self, AlgebraError> {
        Self::with_atoms_capped(atoms, MAX_ATOMS)
    }

    pub fn with_atoms_capped(atoms: Vec<String>, cap: usize) -> Result<Self, AlgebraError> {
        if atoms.is_empty() {
            return Err(AlgebraError::Trivial);
        }
        let cap = cap.min(MAX_ATOMS);
        if atoms.len() > cap {
            return Err(AlgebraError::TooManyAtoms(atoms.len(), cap));
        }
        for (i, a) in atoms.iter().enumerate() {
            if atoms[..i].contains(a) {
                return Err(AlgebraError::DuplicateAtom(a.clone()));
            }
        }
        Ok(Self { atoms })
    }

    /// Parses `P(3)` or `P(a,b,c)`.
    pub fn parse(text: &str) -> Result<Self, AlgebraError> {
        Self::parse_capped(text, DEFAULT_ATOM_CAP)
    }

    pub fn parse_capped(text: &str, cap: usize) -> Result<Self, AlgebraError> {
        let t = text.trim();
        let inner = t
            .strip_prefix('P')
            .map(str::trim_start)
            .and_then(|r| r.strip_prefix('('))
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| AlgebraError::Literal(t.to_string(), "expected P(m) or P(a,b,…)"))?
            .trim();
        if let Ok(m) = inner.parse::<usize>() {
            if m > cap.min(MAX_ATOMS) {
                return Err(AlgebraError::TooManyAtoms(m, cap.min(MAX_ATOMS)));
            }
            return Self::powerset(m);
        }
        let names: Vec<String> = inner
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect();
        if names.iter().any(|s| !is_identifier(s)) {
            return Err(AlgebraError::Literal(t.to_string(), "atom names must be identifiers"));
        }
        Self::with_atoms_capped(names, cap)
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    /// Number of elements, `2^m`.
    pub fn size(&self) -> usize {
        1usize << self.atoms.len()
    }

    pub fn zero(&self) -> Element {
        Element(0)
    }

    pub fn one(&self) -> Element {
        Element(self.mask())
    }

    fn mask(&self) -> u32 {
        if self.atoms.len() >= 32 {
            u32::MAX
        } else {
            (1u32 << self.atoms.len()) - 1
        }
    }

    pub fn atom(&self, i: usize) -> Element {
        debug_assert!(i < self.atoms.len());
        Element(1 << i)
    }

    pub fn contains(&self, x: Element) -> bool {
        x.0 & !self.mask() == 0
    }

    pub fn check(&self, x: Element) -> Result<Element, AlgebraError> {
        if self.contains(x) {
            Ok(x)
        } else {
            Err(AlgebraError::Mismatch(x.0, self.atoms.len()))
        }
    }

    /// All elements in increasing bit order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..=self.mask()).map(Element)
    }

    #[inline]
    pub fn meet(&self, x: Element, y: Element) -> Element {
        Element(x.0 & y.0)
    }

    #[inline]
    pub fn join(&self, x: Element, y: Element) -> Element {
        Element(x.0 | y.0)
    }

    #[inline]
    pub fn compl(&self, x: Element) -> Element {
        Element(!x.0 & self.mask())
    }

    /// Boolean implication `∼x ∨ y`.
    #[inline]
    pub fn imp(&self, x: Element, y: Element) -> Element {
        Element((!x.0 | y.0) & self.mask())
    }

    pub fn checked_meet(&self, x: Element, y: Element) -> Result<Element, AlgebraError> {
        Ok(self.meet(self.check(x)?, self.check(y)?))
    }

    pub fn checked_join(&self, x: Element, y: Element) -> Result<Element, AlgebraError> {
        Ok(self.join(self.check(x)?, self.check(y)?))
    }

    pub fn checked_imp(&self, x: Element, y: Element) -> Result<Element, AlgebraError> {
        Ok(self.imp(self.check(x)?, self.check(y)?))
    }

    pub fn checked_compl(&self, x: Element) -> Result<Element, AlgebraError> {
        Ok(self.compl(self.check(x)?))
    }

    pub fn meet_all<I: IntoIterator<Item = Element>>(&self, xs: I) -> Element {
        xs.into_iter().fold(self.one(), |acc, x| self.meet(acc, x))
    }

    pub fn is_bit(&self, x: Element) -> bool {
        x == self.zero() || x == self.one()
    }

    /// Renders an element as `0`, `1` or `{a,b}`.
    pub fn format(&self, x: Element) -> String {
        if x == self.zero() {
            "0".into()
        } else if x == self.one() {
            "1".into()
        } else {
            let names: Vec<&str> = (0..self.atoms.len())
                .filter(|&i| x.contains_atom(i))
                .map(|i| self.atoms[i].as_str())
                .collect();
            format!("{{{}}}", names.join(","))
        }
    }

    /// Parses `0`, `1`, `{}` or `{a,b}`.
    pub fn parse_element(&self, text: &str) -> Result<Element, AlgebraError> {
        let t = text.trim();
        match t {
            "0" => return Ok(self.zero()),
            "1" => return Ok(self.one()),
            _ => {}
        }
        let inner = t
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| AlgebraError::Literal(t.to_string(), "expected 0, 1 or {a,b,…}"))?;
        let mut bits = 0u32;
        for name in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let i = self
                .atoms
                .iter()
                .position(|a| a == name)
                .ok_or_else(|| AlgebraError::UnknownAtom(name.to_string()))?;
            bits |= 1 << i;
        }
        Ok(Element(bits))
    }
}

impl fmt::Display for FiniteBooleanAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({})", self.atoms.join(","))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Number of elements of `P(m)` of order `k`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// A Boolean homomorphism `source → target` between powerset algebras.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BooleanHom {
    source: FiniteBooleanAlgebra,
    target: FiniteBooleanAlgebra,
    /// `atom_map[y]` is the source atom that target atom `y` sits over.
    atom_map: Vec<usize>,
}

impl BooleanHom {
    pub fn new(
        source: FiniteBooleanAlgebra,
        target: FiniteBooleanAlgebra,
        atom_map: Vec<usize>,
    ) -> Result<Self, AlgebraError> {
        if atom_map.len() != target.atom_count() {
            return Err(AlgebraError::AtomMapLength {
                expected: target.atom_count(),
                got: atom_map.len(),
            });
        }
        if let Some((y, &x)) = atom_map
            .iter()
            .enumerate()
            .find(|(_, &x)| x >= source.atom_count())
        {
            return Err(AlgebraError::AtomMapRange {
                target: y,
                source_atom: x,
                source_size: source.atom_count(),
            });
        }
        Ok(Self {
            source,
            target,
            atom_map,
        })
    }

    pub fn identity(algebra: &FiniteBooleanAlgebra) -> Self {
        Self {
            source: algebra.clone(),
            target: algebra.clone(),
            atom_map: (0..algebra.atom_count()).collect(),
        }
    }

    pub fn source(&self) -> &FiniteBooleanAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FiniteBooleanAlgebra {
        &self.target
    }

    pub fn atom_map(&self) -> &[usize] {
        &self.atom_map
    }

    /// Applies the homomorphism, assuming `x` belongs to the source.
    #[inline]
    pub fn apply(&self, x: Element) -> Element {
        let mut out = 0u32;
        for (y, &src) in self.atom_map.iter().enumerate() {
            out |= (x.0 >> src & 1) << y;
        }
        Element(out)
    }

    pub fn apply_checked(&self, x: Element) -> Result<Element, AlgebraError> {
        Ok(self.apply(self.source.check(x)?))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &BooleanHom) -> Result<BooleanHom, AlgebraError> {
        if self.target != other.source {
            return Err(AlgebraError::NotHomomorphism(
                "composition of non-adjacent homomorphisms".into(),
            ));
        }
        // (k ∘ g)(A) = { z : k_map[z] ∈ g(A) } = { z : g_map[k_map[z]] ∈ A }
        let atom_map = other.atom_map.iter().map(|&y| self.atom_map[y]).collect();
        Ok(BooleanHom {
            source: self.source.clone(),
            target: other.target.clone(),
            atom_map,
        })
    }

    pub fn to_element_map(&self) -> ElementMap {
        ElementMap {
            source: self.source.clone(),
            target: self.target.clone(),
            images: self.source.elements().map(|x| self.apply(x)).collect(),
        }
    }
}

/// Every homomorphism `b1 → b2`: all `m1^m2` atom maps, in lexicographic order.
pub fn enumerate_homs(b1: &FiniteBooleanAlgebra, b2: &FiniteBooleanAlgebra) -> Vec<BooleanHom> {
    let m1 = b1.atom_count();
    let m2 = b2.atom_count();
    let mut out = Vec::new();
    let mut digits = vec![0usize; m2];
    loop {
        out.push(BooleanHom {
            source: b1.clone(),
            target: b2.clone(),
            atom_map: digits.clone(),
        });
        // odometer, last digit fastest
        let mut i = m2;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < m1 {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// An arbitrary function between the carriers of two algebras, tabulated
/// by source element bits. Used for embeddings that may or may not be
/// homomorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementMap {
    source: FiniteBooleanAlgebra,
    target: FiniteBooleanAlgebra,
    images: Vec<Element>,
}

impl ElementMap {
    pub fn new(
        source: FiniteBooleanAlgebra,
        target: FiniteBooleanAlgebra,
        images: Vec<Element>,
    ) -> Result<Self, AlgebraError> {
        if images.len() != source.size() {
            return Err(AlgebraError::AtomMapLength {
                expected: source.size(),
                got: images.len(),
            });
        }
        for &y in &images {
            target.check(y)?;
        }
        Ok(Self {
            source,
            target,
            images,
        })
    }

    /// Builds a map from its values on the source atoms, extended by joins
    /// (so `0 ↦ 0` always). Not necessarily a homomorphism.
    pub fn from_atom_images(
        source: FiniteBooleanAlgebra,
        target: FiniteBooleanAlgebra,
        atom_images: &[Element],
    ) -> Result<Self, AlgebraError> {
        if atom_images.len() != source.atom_count() {
            return Err(AlgebraError::AtomMapLength {
                expected: source.atom_count(),
                got: atom_images.len(),
            });
        }
        let images = source
            .elements()
            .map(|x| {
                (0..source.atom_count())
                    .filter(|&i| x.contains_atom(i))
                    .fold(Element::ZERO, |acc, i| Element(acc.0 | atom_images[i].0))
            })
            .collect();
        Self::new(source, target, images)
    }

    pub fn source(&self) -> &FiniteBooleanAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FiniteBooleanAlgebra {
        &self.target
    }

    pub fn apply(&self, x: Element) -> Element {
        self.images[x.0 as usize]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.images.iter().all(|y| seen.insert(*y))
    }

    /// First violated Boolean law, exhaustively over the source.
    pub fn hom_violation(&self) -> Option<String> {
        let (s, t) = (&self.source, &self.target);
        if self.apply(s.zero()) != t.zero() {
            return Some("f(0) ≠ 0".into());
        }
        if self.apply(s.one()) != t.one() {
            return Some("f(1) ≠ 1".into());
        }
        for x in s.elements() {
            if self.apply(s.compl(x)) != t.compl(self.apply(x)) {
                return Some(format!("f(∼{}) ≠ ∼f({})", s.format(x), s.format(x)));
            }
            for y in s.elements() {
                let (fx, fy) = (self.apply(x), self.apply(y));
                if self.apply(s.meet(x, y)) != t.meet(fx, fy) {
                    return Some(format!("f({} ∧ {}) ≠ f(x) ∧ f(y)", s.format(x), s.format(y)));
                }
                if self.apply(s.join(x, y)) != t.join(fx, fy) {
                    return Some(format!("f({} ∨ {}) ≠ f(x) ∨ f(y)", s.format(x), s.format(y)));
                }
                if self.apply(s.imp(x, y)) != t.imp(fx, fy) {
                    return Some(format!("f({} → {}) ≠ f(x) → f(y)", s.format(x), s.format(y)));
                }
            }
        }
        None
    }

    /// Converts to atom-map form, checking every Boolean law first.
    pub fn to_hom(&self) -> Result<BooleanHom, AlgebraError> {
        if let Some(v) = self.hom_violation() {
            return Err(AlgebraError::NotHomomorphism(v));
        }
        // images of the source atoms partition the target atoms
        let mut atom_map = vec![usize::MAX; self.target.atom_count()];
        for x in 0..self.source.atom_count() {
            let img = self.apply(self.source.atom(x));
            for (y, slot) in atom_map.iter_mut().enumerate() {
                if img.contains_atom(y) {
                    *slot = x;
                }
            }
        }
        debug_assert!(atom_map.iter().all(|&x| x != usize::MAX));
        BooleanHom::new(self.source.clone(), self.target.clone(), atom_map)
    }
}

/// A subalgebra of a powerset algebra, given by a partition of its atoms:
/// members are exactly the unions of blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subalgebra {
    ambient: FiniteBooleanAlgebra,
    /// `block_of[atom]` is the block index of each ambient atom.
    block_of: Vec<usize>,
    blocks: usize,
}

impl Subalgebra {
    /// `block_of` must be a restricted growth string (blocks numbered in
    /// order of first appearance).
    pub fn new(ambient: FiniteBooleanAlgebra, block_of: Vec<usize>) -> Result<Self, AlgebraError> {
        if block_of.len() != ambient.atom_count() {
            return Err(AlgebraError::Partition("one block index per atom required"));
        }
        let mut next = 0;
        for &b in &block_of {
            if b > next {
                return Err(AlgebraError::Partition("block indices must appear in order"));
            }
            if b == next {
                next += 1;
            }
        }
        Ok(Self {
            ambient,
            block_of,
            blocks: next,
        })
    }

    /// Every partition of the ambient atom set, as restricted growth strings.
    pub fn enumerate(ambient: &FiniteBooleanAlgebra) -> Vec<Subalgebra> {
        fn go(
            m: usize,
            cur: &mut Vec<usize>,
            max: usize,
            out: &mut Vec<Vec<usize>>,
        ) {
            if cur.len() == m {
                out.push(cur.clone());
                return;
            }
            let limit = if cur.is_empty() { 0 } else { max + 1 };
            for b in 0..=limit {
                cur.push(b);
                go(m, cur, max.max(b), out);
                cur.pop();
            }
        }
        let mut strings = Vec::new();
        go(ambient.atom_count(), &mut Vec::new(), 0, &mut strings);
        strings
            .into_iter()
            .map(|s| Subalgebra::new(ambient.clone(), s).expect("generated partitions are valid"))
            .collect()
    }

    pub fn ambient(&self) -> &FiniteBooleanAlgebra {
        &self.ambient
    }

    pub fn block_count(&self) -> usize {
        self.blocks
    }

    pub fn block(&self, b: usize) -> Element {
        Element(
            self.block_of
                .iter()
                .enumerate()
                .filter(|(_, &x)| x == b)
                .fold(0, |acc, (i, _)| acc | 1 << i),
        )
    }

    /// Members of the subalgebra as ambient elements.
    pub fn members(&self) -> Vec<Element> {
        (0u32..1 << self.blocks)
            .map(|sel| {
                (0..self.blocks)
                    .filter(|b| sel >> b & 1 == 1)
                    .fold(Element::ZERO, |acc, b| Element(acc.0 | self.block(b).0))
            })
            .collect()
    }

    /// The subalgebra as an abstract powerset algebra, atoms named after
    /// their blocks (`a+b` for the block `{a,b}`).
    pub fn as_algebra(&self) -> FiniteBooleanAlgebra {
        let names = (0..self.blocks)
            .map(|b| {
                (0..self.ambient.atom_count())
                    .filter(|&i| self.block_of[i] == b)
                    .map(|i| self.ambient.atoms()[i].as_str())
                    .collect::<Vec<_>>()
                    .join("+")
            })
            .collect();
        FiniteBooleanAlgebra { atoms: names }
    }

    /// The inclusion homomorphism into the ambient algebra.
    pub fn inclusion(&self) -> BooleanHom {
        BooleanHom {
            source: self.as_algebra(),
            target: self.ambient.clone(),
            atom_map: self.block_of.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(m: usize) -> FiniteBooleanAlgebra {
        FiniteBooleanAlgebra::powerset(m).unwrap()
    }

    #[test]
    fn basic_operations() {
        let b = FiniteBooleanAlgebra::parse("P(a,b)").unwrap();
        let a = b.parse_element("{a}").unwrap();
        let bb = b.parse_element("{b}").unwrap();
        assert_eq!(b.meet(a, bb), b.zero());
        assert_eq!(b.compl(a), bb);
        for x in b.elements() {
            assert_eq!(b.imp(b.one(), x), x);
        }
        assert_eq!(b.format(b.join(a, bb)), "1");
        assert_eq!(b.format(a), "{a}");
    }

    #[test]
    fn mismatch_and_trivial_rejected() {
        let b = p(2);
        assert!(matches!(b.checked_meet(Element(4), Element(1)), Err(AlgebraError::Mismatch(..))));
        assert_eq!(FiniteBooleanAlgebra::powerset(0), Err(AlgebraError::Trivial));
        assert!(FiniteBooleanAlgebra::parse("P(0)").is_err());
        assert!(FiniteBooleanAlgebra::parse("P(17)").is_err());
        assert!(FiniteBooleanAlgebra::parse("P(a,a)").is_err());
        assert!(FiniteBooleanAlgebra::parse("Q(2)").is_err());
    }

    #[test]
    fn literals() {
        let b = FiniteBooleanAlgebra::parse("P(3)").unwrap();
        assert_eq!(b.atoms(), ["a", "b", "c"]);
        assert_eq!(b.one().order(), 3);
        assert_eq!(b.parse_element("{}").unwrap(), b.zero());
        assert_eq!(b.parse_element("{c,a}").unwrap(), Element(0b101));
        assert!(b.parse_element("{d}").is_err());
        assert_eq!(b.to_string(), "P(a,b,c)");
    }

    #[test]
    fn order_counts_match_binomials() {
        for m in 1..=6 {
            let b = p(m);
            for k in 0..=m {
                let count = b.elements().filter(|x| x.order() as usize == k).count();
                assert_eq!(count as u128, binomial(m as u64, k as u64));
            }
        }
        assert_eq!(p(2).elements().filter(|x| x.order() == 1).count(), 2);
    }

    #[test]
    fn hom_examples() {
        let b1 = p(1);
        let b2 = FiniteBooleanAlgebra::parse("P(u,v)").unwrap();
        let f = BooleanHom::new(b1.clone(), b2.clone(), vec![0, 0]).unwrap();
        assert_eq!(f.apply(b1.one()), b2.one());
        assert_eq!(f.apply(b1.zero()), b2.zero());
        let id = BooleanHom::identity(&b2);
        for x in b2.elements() {
            assert_eq!(id.apply(x), x);
        }
        assert!(BooleanHom::new(b1.clone(), b2.clone(), vec![0]).is_err());
        assert!(BooleanHom::new(b1, b2, vec![0, 1]).is_err());
    }

    #[test]
    fn hom_counts() {
        assert_eq!(enumerate_homs(&p(1), &p(1)).len(), 1);
        assert_eq!(enumerate_homs(&p(2), &p(1)).len(), 2);
        assert_eq!(enumerate_homs(&p(2), &p(2)).len(), 4);
        assert_eq!(enumerate_homs(&p(3), &p(2)).len(), 9);
        assert_eq!(enumerate_homs(&p(1), &p(3)).len(), 1);
    }

    #[test]
    fn enumerated_homs_preserve_everything() {
        for m1 in 1..=3 {
            for m2 in 1..=3 {
                let (b1, b2) = (p(m1), p(m2));
                let homs = enumerate_homs(&b1, &b2);
                let distinct: std::collections::HashSet<Vec<Element>> = homs
                    .iter()
                    .map(|f| b1.elements().map(|x| f.apply(x)).collect())
                    .collect();
                assert_eq!(distinct.len(), homs.len());
                for f in &homs {
                    assert_eq!(f.to_element_map().hom_violation(), None);
                    assert_eq!(&f.to_element_map().to_hom().unwrap(), f);
                }
            }
        }
    }

    #[test]
    fn composition_matches_pointwise() {
        let (b1, b2, b3) = (p(2), p(3), p(2));
        for g in enumerate_homs(&b1, &b2) {
            for k in enumerate_homs(&b2, &b3) {
                let kg = g.then(&k).unwrap();
                for x in b1.elements() {
                    assert_eq!(kg.apply(x), k.apply(g.apply(x)));
                }
            }
        }
    }

    #[test]
    fn non_homomorphisms_detected() {
        let (b1, b2) = (p(1), p(2));
        let f = ElementMap::from_atom_images(b1.clone(), b2.clone(), &[Element(0b01)]).unwrap();
        assert_eq!(f.hom_violation().as_deref(), Some("f(1) ≠ 1"));
        assert!(f.to_hom().is_err());
        let g = ElementMap::new(b1, b2, vec![Element(1), Element(3)]).unwrap();
        assert_eq!(g.hom_violation().as_deref(), Some("f(0) ≠ 0"));
    }

    #[test]
    fn complement_lemma_counts() {
        // For a of order k: #{b : a ∨ b = 1, |a ∧ b| = p} = C(k, p), and
        // #{c : a ∧ c = 0, |a ∨ c| = q} = C(m - k, q - k).
        for m in 1..=4 {
            let b = p(m);
            for a in b.elements() {
                let k = a.order() as u64;
                for pp in 0..=k {
                    let count = b
                        .elements()
                        .filter(|&x| b.join(a, x) == b.one() && b.meet(a, x).order() as u64 == pp)
                        .count();
                    assert_eq!(count as u128, binomial(k, pp));
                }
                for q in k..=m as u64 {
                    let count = b
                        .elements()
                        .filter(|&x| b.meet(a, x) == b.zero() && b.join(a, x).order() as u64 == q)
                        .count();
                    assert_eq!(count as u128, binomial(m as u64 - k, q - k));
                }
            }
        }
    }

    #[test]
    fn binomial_sum_identity() {
        for x in 1u128..=5 {
            for m in 0u64..=8 {
                for pp in 0..=m {
                    let lhs: u128 = (pp..=m)
                        .map(|j| binomial(j, pp) * binomial(m, j) * x.pow((m - j) as u32))
                        .sum();
                    let rhs = binomial(m, pp) * (x + 1).pow((m - pp) as u32);
                    assert_eq!(lhs, rhs, "x={x} m={m} p={pp}");
                }
            }
        }
    }

    #[test]
    fn partitions_and_subalgebras() {
        let b = p(3);
        let subs = Subalgebra::enumerate(&b);
        assert_eq!(subs.len(), 5); // Bell(3)
        for s in &subs {
            let members = s.members();
            assert_eq!(members.len(), 1 << s.block_count());
            for &x in &members {
                assert!(members.contains(&b.compl(x)));
                for &y in &members {
                    assert!(members.contains(&b.meet(x, y)));
                    assert!(members.contains(&b.join(x, y)));
                }
            }
            let inc = s.inclusion();
            assert_eq!(inc.to_element_map().hom_violation(), None);
            let image: Vec<Element> = inc.source().elements().map(|x| inc.apply(x)).collect();
            let mut sorted = image.clone();
            sorted.sort();
            let mut expected = members.clone();
            expected.sort();
            assert_eq!(sorted, expected);
        }
        assert!(Subalgebra::new(b.clone(), vec![1, 0, 0]).is_err());
        assert_eq!(
            Subalgebra::new(FiniteBooleanAlgebra::parse("P(a,b)").unwrap(), vec![0, 0])
                .unwrap()
                .as_algebra()
                .atoms(),
            ["a+b"]
        );
    }
}
