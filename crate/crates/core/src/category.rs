//! The category of restricted swap structures for `C_n` and its isomorphism
//! with finite Boolean algebras.
//!
//! Arrows between swap structures are handled in tabulated form
//! ([`SnapshotMap`]): one image per snapshot of the source carrier. The
//! functor `𝒜_n` lifts a Boolean homomorphism coordinatewise
//! ([`lift_hom`]); `Boo_n` reads it back off the Boolean snapshots
//! ([`extract_hom`]). This module implements the isomorphism variant of
//! `Boo_n`, which sends a structure over `ℬ` back to `ℬ` itself. Sending it
//! to `Boo_n^ℬ` instead would give an equivalence of categories only.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boolalg::{
    enumerate_homs, AlgebraError, BooleanHom, Element, ElementMap, FiniteBooleanAlgebra, Subalgebra,
};
use crate::formula::BinOp;
use crate::swap::{SnapId, Snapshot, SwapError, SwapStructure};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CategoryError {
    #[error("structures have different n ({0} and {1})")]
    LevelMismatch(u32, u32),
    #[error("map has {got} images but the source carrier has {expected} snapshots")]
    Length { expected: usize, got: usize },
    #[error("image index {0} is outside the target carrier")]
    Range(SnapId),
    #[error("{0} lands outside the target carrier")]
    NotSnapshot(String),
    #[error("{0} maps into a different algebra")]
    WrongAlgebra(String),
    #[error("enumeration of {count} maps exceeds the cap of {cap}")]
    TooManyMaps { count: u128, cap: u128 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Swap(#[from] SwapError),
}

fn same_level(a: &SwapStructure, b: &SwapStructure) -> Result<(), CategoryError> {
    if a.n() != b.n() {
        return Err(CategoryError::LevelMismatch(a.n(), b.n()));
    }
    Ok(())
}

/// A function between two carriers, by snapshot index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SnapshotMap {
    images: Vec<SnapId>,
}

impl SnapshotMap {
    pub fn new(
        source: &SwapStructure,
        target: &SwapStructure,
        images: Vec<SnapId>,
    ) -> Result<Self, CategoryError> {
        same_level(source, target)?;
        if images.len() != source.len() {
            return Err(CategoryError::Length {
                expected: source.len(),
                got: images.len(),
            });
        }
        if let Some(&bad) = images.iter().find(|&&w| w as usize >= target.len()) {
            return Err(CategoryError::Range(bad));
        }
        Ok(SnapshotMap { images })
    }

    /// Tabulates `f`, which must return snapshots of the target.
    pub fn from_fn(
        source: &SwapStructure,
        target: &SwapStructure,
        mut f: impl FnMut(&Snapshot) -> Snapshot,
    ) -> Result<Self, CategoryError> {
        same_level(source, target)?;
        let images = source
            .snapshots()
            .iter()
            .map(|z| {
                let w = f(z);
                target
                    .id(&w)
                    .ok_or_else(|| CategoryError::NotSnapshot(w.format(target.algebra())))
            })
            .collect::<Result<_, _>>()?;
        Ok(SnapshotMap { images })
    }

    pub fn identity(s: &SwapStructure) -> Self {
        SnapshotMap {
            images: (0..s.len() as SnapId).collect(),
        }
    }

    pub fn apply(&self, z: SnapId) -> SnapId {
        self.images[z as usize]
    }

    pub fn images(&self) -> &[SnapId] {
        &self.images
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SnapshotMap) -> SnapshotMap {
        SnapshotMap {
            images: self.images.iter().map(|&z| other.apply(z)).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.images.iter().all(|w| seen.insert(*w))
    }
}

/// The image of a Boolean homomorphism under `𝒜_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwapMorphism {
    n: u32,
    hom: BooleanHom,
}

/// `𝒜_n g`: applies `g` to every coordinate.
pub fn lift_hom(g: &BooleanHom, n: u32) -> SwapMorphism {
    SwapMorphism { n, hom: g.clone() }
}

impl SwapMorphism {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn hom(&self) -> &BooleanHom {
        &self.hom
    }

    pub fn apply(&self, z: &Snapshot) -> Snapshot {
        Snapshot::new(z.coords().iter().map(|&x| self.hom.apply(x)).collect())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SwapMorphism) -> Result<SwapMorphism, CategoryError> {
        if self.n != other.n {
            return Err(CategoryError::LevelMismatch(self.n, other.n));
        }
        Ok(SwapMorphism {
            n: self.n,
            hom: self.hom.then(&other.hom)?,
        })
    }

    pub fn tabulate(&self, source: &SwapStructure, target: &SwapStructure) -> Result<SnapshotMap, CategoryError> {
        if source.n() != self.n {
            return Err(CategoryError::LevelMismatch(source.n(), self.n));
        }
        if source.algebra() != self.hom.source() {
            return Err(CategoryError::WrongAlgebra(source.to_string()));
        }
        if target.algebra() != self.hom.target() {
            return Err(CategoryError::WrongAlgebra(target.to_string()));
        }
        SnapshotMap::from_fn(source, target, |z| self.apply(z))
    }
}

/// `Boo_n h`: `a ↦ h((a, ∼a, 1, …, 1))[1]`, checked against every Boolean law.
pub fn extract_hom(
    h: &SnapshotMap,
    source: &SwapStructure,
    target: &SwapStructure,
) -> Result<BooleanHom, CategoryError> {
    let g = extract_element_map(h, source, target)?;
    Ok(g.to_hom()?)
}

fn extract_element_map(
    h: &SnapshotMap,
    source: &SwapStructure,
    target: &SwapStructure,
) -> Result<ElementMap, CategoryError> {
    let images = source
        .algebra()
        .elements()
        .map(|a| target.get(h.apply(source.boolean_of(a))).first())
        .collect();
    Ok(ElementMap::new(
        source.algebra().clone(),
        target.algebra().clone(),
        images,
    )?)
}

/// Why a map between carriers is not a morphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rejection {
    pub law: String,
    pub detail: String,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.law, self.detail)
    }
}

/// Decides whether `h` is a morphism. On success the certificate is the
/// underlying Boolean homomorphism `g` with `h(z)[i] = g(z[i])`.
pub fn is_morphism(
    h: &SnapshotMap,
    source: &SwapStructure,
    target: &SwapStructure,
) -> Result<BooleanHom, Rejection> {
    let g = extract_element_map(h, source, target).map_err(|e| Rejection {
        law: "shape".into(),
        detail: e.to_string(),
    })?;
    let g = g.to_hom().map_err(|e| Rejection {
        law: "Boolean homomorphism".into(),
        detail: e.to_string(),
    })?;
    let lifted = lift_hom(&g, source.n());
    for (i, z) in source.snapshots().iter().enumerate() {
        let want = lifted.apply(z);
        let got = target.get(h.apply(i as SnapId));
        if *got != want {
            let (b1, b2) = (source.algebra(), target.algebra());
            return Err(Rejection {
                law: "coordinatewise".into(),
                detail: format!(
                    "h{} = {} but g applied coordinatewise gives {}",
                    z.format(b1),
                    got.format(b2),
                    want.format(b2)
                ),
            });
        }
    }
    Ok(g)
}

fn in_neg(t: &SwapStructure, of: SnapId, v: SnapId) -> bool {
    let (z, v) = (t.get(of), t.get(v));
    v.at(1) == z.at(2) && v.at(2).le(z.at(1))
}

fn in_bin(t: &SwapStructure, op: BinOp, w: SnapId, z: SnapId, u: SnapId) -> bool {
    let x = t.first_op(op, t.get(w).first(), t.get(z).first());
    if t.is_boolean(w) && t.is_boolean(z) {
        u == t.boolean_of(x)
    } else {
        t.get(u).first() == x
    }
}

/// First failure of the multialgebra homomorphism conditions
/// `h[¬̃z] ⊆ ¬̃h(z)` and `h[w #̃ z] ⊆ h(w) #̃ h(z)`, checked directly over
/// every cell of the source tables.
pub fn sigma_hom_violation(
    h: &SnapshotMap,
    source: &SwapStructure,
    target: &SwapStructure,
) -> Option<Rejection> {
    let (b1, b2) = (source.algebra(), target.algebra());
    let fmt1 = |z: SnapId| source.get(z).format(b1);
    let fmt2 = |z: SnapId| target.get(z).format(b2);
    let ids = 0..source.len() as SnapId;
    for z in ids.clone() {
        for v in source.neg_ids(z) {
            if !in_neg(target, h.apply(z), h.apply(v)) {
                return Some(Rejection {
                    law: "¬̃".into(),
                    detail: format!(
                        "{} ∈ ¬̃{} but {} ∉ ¬̃{}",
                        fmt1(v),
                        fmt1(z),
                        fmt2(h.apply(v)),
                        fmt2(h.apply(z))
                    ),
                });
            }
        }
    }
    for op in BinOp::ALL {
        for w in ids.clone() {
            for z in ids.clone() {
                for u in source.bin_ids(op, w, z) {
                    if !in_bin(target, op, h.apply(w), h.apply(z), h.apply(u)) {
                        return Some(Rejection {
                            law: format!("{}̃", op.unicode()),
                            detail: format!(
                                "{} ∈ {} {op}̃ {} but its image is not in the image cell",
                                fmt1(u),
                                fmt1(w),
                                fmt1(z),
                                op = op.unicode()
                            ),
                        });
                    }
                }
            }
        }
    }
    None
}

/// Whether `h[D_n^{ℬ₁}] ⊆ D_n^{ℬ₂}`.
pub fn preserves_designation(h: &SnapshotMap, source: &SwapStructure, target: &SwapStructure) -> bool {
    source
        .designated()
        .into_iter()
        .all(|z| target.is_designated(h.apply(z)))
}

/// Every map between the carriers that is a multialgebra homomorphism,
/// preserves designation and sends `F_n` to `F_n`. Brute force; refuses
/// when there are more than `cap` candidate maps.
pub fn enumerate_sigma_morphisms(
    source: &SwapStructure,
    target: &SwapStructure,
    cap: u128,
) -> Result<Vec<SnapshotMap>, CategoryError> {
    same_level(source, target)?;
    let (k, m) = (source.len(), target.len());
    let count = (m as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if count > cap {
        return Err(CategoryError::TooManyMaps { count, cap });
    }
    let bot1 = source.id(&source.bottom()).expect("F_n is a snapshot");
    let bot2 = target.id(&target.bottom()).expect("F_n is a snapshot");
    let mut out = Vec::new();
    let mut images = vec![0 as SnapId; k];
    loop {
        let h = SnapshotMap { images: images.clone() };
        if h.apply(bot1) == bot2 && preserves_designation(&h, source, target) && sigma_hom_violation(&h, source, target).is_none() {
            out.push(h);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            images[i] += 1;
            if (images[i] as usize) < m {
                break;
            }
            images[i] = 0;
        }
    }
}

/// Round-trip and law tallies for one ordered pair of algebras.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub source: String,
    pub target: String,
    pub homs: usize,
    /// Homs `g` with `Boo_n(𝒜_n g) = g`.
    pub boo_after_lift: usize,
    /// Lifted morphisms `h` with `𝒜_n(Boo_n h) = h` pointwise.
    pub lift_after_boo: usize,
    /// Lifted morphisms accepted by [`is_morphism`] with certificate `g`.
    pub accepted: usize,
    /// Lifted morphisms mapping `D_n` into `D_n`.
    pub designation_preserved: usize,
    /// Homs that are injective.
    pub injective: usize,
    /// Lifted morphisms that also pass [`sigma_hom_violation`]. Lifts of
    /// non-injective homs can fail it: two non-Boolean arguments may land
    /// on Boolean snapshots, whose cells are singletons.
    pub strict_homomorphisms: usize,
}

impl PairReport {
    pub fn ok(&self) -> bool {
        [
            self.boo_after_lift,
            self.lift_after_boo,
            self.accepted,
            self.designation_preserved,
        ]
        .iter()
        .all(|&c| c == self.homs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoReport {
    pub n: u32,
    pub algebras: Vec<String>,
    pub pairs: Vec<PairReport>,
    /// Algebras where both functors preserve identities.
    pub identity_laws: usize,
    /// Composable pairs `(g, k)` checked against both functors.
    pub compositions: usize,
    pub composition_failures: Vec<String>,
}

impl IsoReport {
    pub fn ok(&self) -> bool {
        self.pairs.iter().all(PairReport::ok)
            && self.identity_laws == self.algebras.len()
            && self.composition_failures.is_empty()
    }
}

/// Checks `Boo_n ∘ 𝒜_n = Id` and `𝒜_n ∘ Boo_n = Id` on every hom between
/// every ordered pair of `algebras`, plus both functor laws on every
/// composable pair.
pub fn verify_iso_roundtrip(
    algebras: &[FiniteBooleanAlgebra],
    n: u32,
    max_carrier: usize,
) -> Result<IsoReport, CategoryError> {
    let swaps = algebras
        .iter()
        .map(|b| SwapStructure::with_cap(b.clone(), n, max_carrier))
        .collect::<Result<Vec<_>, _>>()?;
    let mut report = IsoReport {
        n,
        algebras: algebras.iter().map(|b| b.to_string()).collect(),
        pairs: Vec::new(),
        identity_laws: 0,
        compositions: 0,
        composition_failures: Vec::new(),
    };

    for s in &swaps {
        let id = BooleanHom::identity(s.algebra());
        let lifted = lift_hom(&id, n).tabulate(s, s)?;
        let back = extract_hom(&SnapshotMap::identity(s), s, s)?;
        if lifted == SnapshotMap::identity(s) && back == id {
            report.identity_laws += 1;
        }
    }

    // tabulated lifts, by (source index, target index)
    let mut lifts = Vec::new();
    for s1 in &swaps {
        let mut row = Vec::new();
        for s2 in &swaps {
            let homs = enumerate_homs(s1.algebra(), s2.algebra());
            let mut pair = PairReport {
                source: s1.algebra().to_string(),
                target: s2.algebra().to_string(),
                homs: homs.len(),
                boo_after_lift: 0,
                lift_after_boo: 0,
                accepted: 0,
                designation_preserved: 0,
                injective: 0,
                strict_homomorphisms: 0,
            };
            let mut tabs = Vec::new();
            for g in homs {
                let h = lift_hom(&g, n).tabulate(s1, s2)?;
                let g_back = extract_hom(&h, s1, s2)?;
                if g_back == g {
                    pair.boo_after_lift += 1;
                }
                if lift_hom(&g_back, n).tabulate(s1, s2)? == h {
                    pair.lift_after_boo += 1;
                }
                if is_morphism(&h, s1, s2).is_ok_and(|cert| cert == g) {
                    pair.accepted += 1;
                }
                if preserves_designation(&h, s1, s2) {
                    pair.designation_preserved += 1;
                }
                if g.to_element_map().is_injective() {
                    pair.injective += 1;
                }
                if sigma_hom_violation(&h, s1, s2).is_none() {
                    pair.strict_homomorphisms += 1;
                }
                tabs.push((g, h));
            }
            report.pairs.push(pair);
            row.push(tabs);
        }
        lifts.push(row);
    }

    for i in 0..swaps.len() {
        for j in 0..swaps.len() {
            for k in 0..swaps.len() {
                for (g, hg) in &lifts[i][j] {
                    for (kk, hk) in &lifts[j][k] {
                        report.compositions += 1;
                        let composite = g.then(kk)?;
                        let direct = lift_hom(&composite, n).tabulate(&swaps[i], &swaps[k])?;
                        let chained = hg.then(hk);
                        if direct != chained {
                            report.composition_failures.push(format!(
                                "𝒜_n({:?} then {:?}) over {} → {} → {}",
                                g.atom_map(),
                                kk.atom_map(),
                                swaps[i].algebra(),
                                swaps[j].algebra(),
                                swaps[k].algebra()
                            ));
                            continue;
                        }
                        let boo = extract_hom(&chained, &swaps[i], &swaps[k])?;
                        let boo_chain = extract_hom(hg, &swaps[i], &swaps[j])?
                            .then(&extract_hom(hk, &swaps[j], &swaps[k])?)?;
                        if boo != boo_chain {
                            report.composition_failures.push(format!(
                                "Boo_n composite for {:?} then {:?}",
                                g.atom_map(),
                                kk.atom_map()
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Result of the subRNmatrix test for one embedding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubCheck {
    pub sub: bool,
    /// Whether every snapshot of the smaller structure, pushed through the
    /// element embedding, is a snapshot of the larger one (and distinct
    /// snapshots stay distinct).
    pub carrier_included: bool,
    pub reason: Option<String>,
}

/// Decides whether the structure over `embedding.source()` is a
/// subRNmatrix of the one over `embedding.target()`, with the carrier
/// identified through `embedding` applied coordinatewise.
pub fn is_subrnmatrix(embedding: &ElementMap, n: u32, max_carrier: usize) -> Result<SubCheck, CategoryError> {
    let s1 = SwapStructure::with_cap(embedding.source().clone(), n, max_carrier)?;
    let s2 = SwapStructure::with_cap(embedding.target().clone(), n, max_carrier)?;
    let inclusion = SnapshotMap::from_fn(&s1, &s2, |z| {
        Snapshot::new(z.coords().iter().map(|&x| embedding.apply(x)).collect())
    });
    let inclusion = match inclusion {
        Ok(h) if h.is_injective() => h,
        Ok(_) => {
            return Ok(SubCheck {
                sub: false,
                carrier_included: false,
                reason: Some("embedding identifies distinct snapshots".into()),
            })
        }
        Err(CategoryError::NotSnapshot(z)) => {
            return Ok(SubCheck {
                sub: false,
                carrier_included: false,
                reason: Some(format!("{z} is not a snapshot of the larger structure")),
            })
        }
        Err(e) => return Err(e),
    };
    let verdict = is_morphism(&inclusion, &s1, &s2);
    Ok(SubCheck {
        sub: verdict.is_ok(),
        carrier_included: true,
        reason: verdict.err().map(|r| r.to_string()),
    })
}

/// [`is_subrnmatrix`] for a subalgebra given by an atom partition.
pub fn is_subrnmatrix_partition(sub: &Subalgebra, n: u32, max_carrier: usize) -> Result<SubCheck, CategoryError> {
    is_subrnmatrix(&sub.inclusion().to_element_map(), n, max_carrier)
}

/// `Boo_n^ℬ` with its Boolean operations, and the isomorphism
/// `ρ(a) = (a, ∼a, 1, …, 1)` from `ℬ`.
#[derive(Clone, Debug)]
pub struct BooleanCore<'s> {
    swap: &'s SwapStructure,
}

pub fn boolean_core(s: &SwapStructure) -> BooleanCore<'_> {
    BooleanCore { swap: s }
}

impl BooleanCore<'_> {
    pub fn algebra(&self) -> &FiniteBooleanAlgebra {
        self.swap.algebra()
    }

    pub fn rho(&self, a: Element) -> SnapId {
        self.swap.boolean_of(a)
    }

    /// Inverse of `ρ`: the first coordinate.
    pub fn rho_inverse(&self, z: SnapId) -> Element {
        self.swap.get(z).first()
    }

    pub fn members(&self) -> Vec<SnapId> {
        self.swap.boolean()
    }

    pub fn top(&self) -> SnapId {
        self.rho(self.algebra().one())
    }

    pub fn bottom(&self) -> SnapId {
        self.rho(self.algebra().zero())
    }

    pub fn op(&self, op: BinOp, z: SnapId, w: SnapId) -> SnapId {
        let x = self.swap.first_op(op, self.rho_inverse(z), self.rho_inverse(w));
        self.rho(x)
    }

    pub fn compl(&self, z: SnapId) -> SnapId {
        self.rho(self.algebra().compl(self.rho_inverse(z)))
    }

    /// Checks that `ρ` is a bijection onto `Boo_n^ℬ` with inverse `z ↦ z[1]`,
    /// that `⊤ = T_n` and `⊥ = F_n`, and that `Boo_n^ℬ` is closed in the
    /// multialgebra: `ρ(a) #̃ ρ(b) = {ρ(a # b)}` and `¬̃ρ(a) = {ρ(∼a)}`.
    pub fn violations(&self) -> Vec<String> {
        let s = self.swap;
        let b = self.algebra();
        let mut out = Vec::new();
        let mut image: Vec<SnapId> = b.elements().map(|a| self.rho(a)).collect();
        image.sort_unstable();
        image.dedup();
        if image != self.members() {
            out.push("ρ is not a bijection onto Boo_n".into());
        }
        for z in self.members() {
            if self.rho(self.rho_inverse(z)) != z {
                out.push(format!("ρ(z[1]) ≠ z for {}", s.label(z)));
            }
        }
        if s.get(self.top()) != &s.top() || s.get(self.bottom()) != &s.bottom() {
            out.push("ρ(1), ρ(0) are not T_n, F_n".into());
        }
        for a in b.elements() {
            if s.neg_ids(self.rho(a)) != [self.rho(b.compl(a))] {
                out.push(format!("¬̃ρ({}) ≠ {{ρ(∼a)}}", b.format(a)));
            }
            for c in b.elements() {
                for op in BinOp::ALL {
                    let want = self.op(op, self.rho(a), self.rho(c));
                    if s.bin_ids(op, self.rho(a), self.rho(c)) != [want] {
                        out.push(format!(
                            "ρ({}) {}̃ ρ({}) is not a singleton",
                            b.format(a),
                            op.unicode(),
                            b.format(c)
                        ));
                    }
                }
            }
        }
        out
    }
}

/// Comparison of the structure over `P(m)` with the `m`-fold product of
/// the structure over the two-element algebra, through the atom
/// projections `π_a = 𝒜_n(x ↦ [a ∈ x])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerReport {
    pub m: usize,
    pub n: u32,
    pub carrier: usize,
    pub product_carrier: usize,
    /// The tupling `z ↦ (π_a z)_a` is a bijection onto the product carrier.
    pub bijective: bool,
    /// `z` is designated iff every `π_a z` is.
    pub designation: bool,
    /// `z` is Boolean iff every `π_a z` is.
    pub boolean: bool,
    /// Every `π_a` is accepted by [`is_morphism`].
    pub projections_are_morphisms: bool,
    /// The tupling maps every multioperation cell into the coordinatewise
    /// product cell. Fails for `m ≥ 2`, see [`PairReport::strict_homomorphisms`].
    pub tupling_is_homomorphism: bool,
    /// Table cells whose image under the tupling differs from the
    /// coordinatewise product cell, out of `cells` in all.
    pub mismatched_cells: usize,
    pub cells: usize,
    pub mismatch_example: Option<String>,
    /// For every `P(k)` with `k ≤ 2` and every family of morphisms into the
    /// factors, exactly one morphism into the power factors through the
    /// projections.
    pub universal_property: bool,
}

impl PowerReport {
    /// The power property in the sense of the category: a bijection that
    /// respects designation, projections that are morphisms, and the
    /// universal property of the product.
    pub fn ok(&self) -> bool {
        self.bijective
            && self.designation
            && self.boolean
            && self.projections_are_morphisms
            && self.universal_property
    }
}

/// Builds the comparison described on [`PowerReport`].
pub fn verify_power(m: usize, n: u32, max_carrier: usize) -> Result<PowerReport, CategoryError> {
    let big = FiniteBooleanAlgebra::powerset(m)?;
    let two = FiniteBooleanAlgebra::two();
    let s = SwapStructure::with_cap(big.clone(), n, max_carrier)?;
    let base = SwapStructure::two(n)?;
    let radix = base.len();
    let projections = (0..m)
        .map(|a| {
            let g = BooleanHom::new(big.clone(), two.clone(), vec![a])?;
            lift_hom(&g, n).tabulate(&s, &base)
        })
        .collect::<Result<Vec<_>, CategoryError>>()?;
    let tuple = |z: SnapId| -> Vec<SnapId> { projections.iter().map(|p| p.apply(z)).collect() };
    let encode = |t: &[SnapId]| t.iter().rev().fold(0usize, |acc, &w| acc * radix + w as usize);
    let product_carrier = radix.pow(m as u32);

    let mut hit = vec![false; product_carrier];
    let mut bijective = s.len() == product_carrier;
    let mut designation = true;
    let mut boolean = true;
    for z in 0..s.len() as SnapId {
        let t = tuple(z);
        let code = encode(&t);
        bijective &= !std::mem::replace(&mut hit[code], true);
        designation &= s.is_designated(z) == t.iter().all(|&w| base.is_designated(w));
        boolean &= s.is_boolean(z) == t.iter().all(|&w| base.is_boolean(w));
    }
    let projections_are_morphisms = projections.iter().all(|p| is_morphism(p, &s, &base).is_ok());
    let tupling_is_homomorphism = projections
        .iter()
        .all(|p| sigma_hom_violation(p, &s, &base).is_none());

    let product_cell = |lists: Vec<Vec<SnapId>>| -> Vec<usize> {
        let mut codes = vec![0usize];
        for list in lists.iter().rev() {
            codes = codes
                .iter()
                .flat_map(|&c| list.iter().map(move |&w| c * radix + w as usize))
                .collect();
        }
        codes.sort_unstable();
        codes
    };
    let image_cell = |ids: Vec<SnapId>| -> Vec<usize> {
        let mut codes: Vec<usize> = ids.into_iter().map(|u| encode(&tuple(u))).collect();
        codes.sort_unstable();
        codes
    };
    let mut cells = 0;
    let mut mismatched_cells = 0;
    let mut mismatch_example = None;
    let mut compare = |own: Vec<usize>, product: Vec<usize>, what: &dyn Fn() -> String| {
        cells += 1;
        if own != product {
            mismatched_cells += 1;
            if mismatch_example.is_none() {
                mismatch_example = Some(format!(
                    "{}: {} snapshots, product cell has {}",
                    what(),
                    own.len(),
                    product.len()
                ));
            }
        }
    };
    for z in 0..s.len() as SnapId {
        let product = product_cell(tuple(z).iter().map(|&w| base.neg_ids(w)).collect());
        compare(image_cell(s.neg_ids(z)), product, &|| format!("¬̃{}", s.label(z)));
    }
    for op in BinOp::ALL {
        for w in 0..s.len() as SnapId {
            for z in 0..s.len() as SnapId {
                let (tw, tz) = (tuple(w), tuple(z));
                let product = product_cell(tw.iter().zip(&tz).map(|(&a, &b)| base.bin_ids(op, a, b)).collect());
                compare(image_cell(s.bin_ids(op, w, z)), product, &|| {
                    format!("{} {}̃ {}", s.label(w), op.unicode(), s.label(z))
                });
            }
        }
    }

    let mut universal_property = true;
    for k in 1..=2 {
        let src_alg = FiniteBooleanAlgebra::powerset(k)?;
        let src = SwapStructure::with_cap(src_alg.clone(), n, max_carrier)?;
        let factor_homs = enumerate_homs(&src_alg, &two);
        let candidates: Vec<SnapshotMap> = enumerate_homs(&src_alg, &big)
            .iter()
            .map(|u| lift_hom(u, n).tabulate(&src, &s))
            .collect::<Result<_, _>>()?;
        // every family (f_a)_a, as an odometer over factor_homs
        let mut family = vec![0usize; m];
        loop {
            let legs = family
                .iter()
                .map(|&i| lift_hom(&factor_homs[i], n).tabulate(&src, &base))
                .collect::<Result<Vec<_>, _>>()?;
            let mediating = candidates
                .iter()
                .filter(|u| projections.iter().zip(&legs).all(|(p, leg)| u.then(p) == *leg))
                .count();
            universal_property &= mediating == 1;
            let mut i = m;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                family[i] += 1;
                if family[i] < factor_homs.len() {
                    break;
                }
                family[i] = 0;
            }
            if family.iter().all(|&d| d == 0) {
                break;
            }
        }
    }

    Ok(PowerReport {
        m,
        n,
        carrier: s.len(),
        product_carrier,
        bijective,
        designation,
        boolean,
        projections_are_morphisms,
        tupling_is_homomorphism,
        mismatched_cells,
        cells,
        mismatch_example,
        universal_property,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(m: usize) -> FiniteBooleanAlgebra {
        FiniteBooleanAlgebra::powerset(m).unwrap()
    }

    fn swap(m: usize, n: u32) -> SwapStructure {
        SwapStructure::new(p(m), n).unwrap()
    }

    #[test]
    fn lift_collapses_to_atom() {
        let ab = FiniteBooleanAlgebra::parse("P(a,b)").unwrap();
        let u = FiniteBooleanAlgebra::parse("P(u)").unwrap();
        let g = BooleanHom::new(ab.clone(), u.clone(), vec![0]).unwrap();
        let h = lift_hom(&g, 2);
        let z = Snapshot::parse(&ab, "({a},{b},1)").unwrap();
        assert_eq!(h.apply(&z), Snapshot::parse(&u, "(1,0,1)").unwrap());
        assert_eq!(h.apply(&z), SwapStructure::new(u, 2).unwrap().top());
    }

    #[test]
    fn identity_lifts_to_identity() {
        let s = swap(2, 2);
        let id = lift_hom(&BooleanHom::identity(s.algebra()), 2).tabulate(&s, &s).unwrap();
        assert_eq!(id, SnapshotMap::identity(&s));
        assert_eq!(extract_hom(&id, &s, &s).unwrap(), BooleanHom::identity(s.algebra()));
    }

    #[test]
    fn swapping_t0_and_top_is_rejected() {
        let s = SwapStructure::two(1).unwrap();
        let (t, t0) = (s.id(&s.top()).unwrap(), s.id(&s.t(0)).unwrap());
        let images = (0..s.len() as SnapId)
            .map(|z| if z == t { t0 } else if z == t0 { t } else { z })
            .collect();
        let h = SnapshotMap::new(&s, &s, images).unwrap();
        assert!(is_morphism(&h, &s, &s).is_err());
        let direct = sigma_hom_violation(&h, &s, &s).unwrap();
        assert_eq!(direct.law, "¬̃");
    }

    #[test]
    fn constant_top_is_rejected() {
        for (m, n) in [(1, 1), (2, 1), (1, 2)] {
            let s = swap(m, n);
            let top = s.id(&s.top()).unwrap();
            let h = SnapshotMap::new(&s, &s, vec![top; s.len()]).unwrap();
            let r = is_morphism(&h, &s, &s).unwrap_err();
            assert_eq!(r.law, "Boolean homomorphism");
            assert!(sigma_hom_violation(&h, &s, &s).is_some());
        }
    }

    #[test]
    fn extraction_from_p1_is_the_unique_hom() {
        for m in 1..=3 {
            let (s1, s2) = (swap(1, 1), swap(m, 1));
            let homs = enumerate_homs(s1.algebra(), s2.algebra());
            assert_eq!(homs.len(), 1);
            let h = lift_hom(&homs[0], 1).tabulate(&s1, &s2).unwrap();
            assert_eq!(extract_hom(&h, &s1, &s2).unwrap(), homs[0]);
        }
    }

    #[test]
    fn small_round_trips() {
        let r = verify_iso_roundtrip(&[p(2)], 1, 1000).unwrap();
        assert_eq!(r.pairs[0].homs, 4);
        assert!(r.ok());
        let r = verify_iso_roundtrip(&[p(2), p(1)], 2, 1000).unwrap();
        let pair = r.pairs.iter().find(|x| x.source == "P(a,b)" && x.target == "P(a)").unwrap();
        assert_eq!(pair.homs, 2);
        assert!(r.ok(), "{r:?}");
    }

    #[test]
    fn projection_lift_is_not_a_strict_homomorphism() {
        let (s1, s2) = (swap(2, 1), swap(1, 1));
        let g = BooleanHom::new(s1.algebra().clone(), s2.algebra().clone(), vec![0]).unwrap();
        let h = lift_hom(&g, 1).tabulate(&s1, &s2).unwrap();
        assert!(is_morphism(&h, &s1, &s2).is_ok());
        // ({b},1) is not Boolean but lands on F; F →̃ F = {T}
        let w = s1.id(&Snapshot::parse(s1.algebra(), "({b},1)").unwrap()).unwrap();
        let u = s1.id(&Snapshot::parse(s1.algebra(), "(1,{a})").unwrap()).unwrap();
        assert!(s1.bin_ids(BinOp::Imp, w, w).contains(&u));
        assert_eq!(s2.label(h.apply(w)), "F");
        assert_eq!(s2.label(h.apply(u)), "t0");
        assert!(sigma_hom_violation(&h, &s1, &s2).is_some());
    }

    #[test]
    fn strict_morphisms_are_lifts_of_injective_homs() {
        // n = 1: multialgebra homs fixing F_n and preserving designation
        for (m1, m2) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let (s1, s2) = (swap(m1, 1), swap(m2, 1));
            let found = match enumerate_sigma_morphisms(&s1, &s2, 1 << 20) {
                Ok(f) => f,
                Err(CategoryError::TooManyMaps { .. }) => continue,
                Err(e) => panic!("{e}"),
            };
            let mut lifted: Vec<SnapshotMap> = enumerate_homs(s1.algebra(), s2.algebra())
                .iter()
                .filter(|g| g.to_element_map().is_injective())
                .map(|g| lift_hom(g, 1).tabulate(&s1, &s2).unwrap())
                .collect();
            let mut found_sorted = found.clone();
            found_sorted.sort_by(|a, b| a.images().cmp(b.images()));
            lifted.sort_by(|a, b| a.images().cmp(b.images()));
            assert_eq!(found_sorted, lifted, "m1={m1} m2={m2}");
        }
    }

    #[test]
    fn subrnmatrix_examples() {
        let ab = FiniteBooleanAlgebra::parse("P(a,b)").unwrap();
        let whole = Subalgebra::new(ab.clone(), vec![0, 0]).unwrap();
        assert!(is_subrnmatrix_partition(&whole, 2, 1000).unwrap().sub);
        let discrete = Subalgebra::new(ab.clone(), vec![0, 1]).unwrap();
        assert!(is_subrnmatrix_partition(&discrete, 2, 1000).unwrap().sub);
        // a ↦ {a}: 1 is not sent to 1
        let a = FiniteBooleanAlgebra::parse("P(a)").unwrap();
        let e = ElementMap::new(a, ab.clone(), vec![Element(0), Element(1)]).unwrap();
        let r = is_subrnmatrix(&e, 1, 1000).unwrap();
        assert!(!r.sub);
        assert!(!r.carrier_included);
    }

    #[test]
    fn boolean_core_of_p2() {
        let s = swap(2, 1);
        let core = boolean_core(&s);
        assert_eq!(core.members().len(), 4);
        assert!(core.violations().is_empty());
        let s = swap(1, 3);
        let core = boolean_core(&s);
        let labels: Vec<String> = core.members().iter().map(|&z| s.label(z)).collect();
        assert_eq!(labels.len(), 2);
        assert!(labels.contains(&"T".to_string()) && labels.contains(&"F".to_string()));
    }

    #[test]
    fn power_of_two_element_structure() {
        for m in 1..=2 {
            let r = verify_power(m, 1, 1000).unwrap();
            assert!(r.ok(), "{r:?}");
            assert_eq!(r.carrier, 3usize.pow(m as u32));
            assert_eq!(r.tupling_is_homomorphism, m == 1);
            assert_eq!(r.mismatched_cells == 0, m == 1);
        }
    }
}
