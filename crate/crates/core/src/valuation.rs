//! ℬ-valuations, restricted valuations over swap structures, and the
//! bridges between them.
//!
//! Both kinds of valuation are finite: they assign values to the members of
//! an explicit [`Closure`], and every clause is checked only where the
//! formulas it mentions are present.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boolalg::{AlgebraError, Element, FiniteBooleanAlgebra};
use crate::formula::{BinOp, Closure, Formula, Node, NodeId};
use crate::swap::{bounded_power_first, is_snapshot, Snapshot};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValuationError {
    #[error("closure too small: `{formula}` needs `{missing}`")]
    ClosureTooSmall { formula: String, missing: String },
    #[error("seed for `{var}` violates a ∨ a' = 1")]
    Seed { var: String },
    #[error("no seed for variable `{0}`")]
    MissingVariable(String),
    #[error("`{0}` is not in the closure")]
    NotInClosure(String),
    #[error("expected {expected} values, got {got}")]
    Length { expected: usize, got: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// One failed clause instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub clause: String,
    pub formulas: Vec<String>,
    pub detail: String,
}

/// A clause instance that could not be checked because a formula it refers
/// to lies outside the closure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gap {
    pub clause: String,
    pub formula: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub violations: Vec<Violation>,
    pub gaps: Vec<Gap>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn violation(&mut self, clause: &str, formulas: &[&Formula], detail: String) {
        self.violations.push(Violation {
            clause: clause.into(),
            formulas: formulas.iter().map(|f| f.to_string()).collect(),
            detail,
        });
    }

    fn gap(&mut self, clause: &str, f: &Formula) {
        self.gaps.push(Gap {
            clause: clause.into(),
            formula: f.to_string(),
        });
    }
}

/// `z[3], …, z[n+1], ∼⋀z`: the values the tower `α¹, …, α^n` must take
/// as first coordinates when `α` takes `z`.
pub fn tail(b: &FiniteBooleanAlgebra, z: &[Element]) -> Vec<Element> {
    let mut e: Vec<Element> = z[2..].to_vec();
    e.push(b.compl(b.meet_all(z.iter().copied())));
    e
}

/// Second coordinate forced on `α ∧ ¬α` by restriction clause (1).
pub fn contradiction_second(b: &FiniteBooleanAlgebra, z: &[Element]) -> Element {
    tail(b, z)[0]
}

/// The value of `α¹` forced by restriction clause (2).
pub fn circle_snapshot(b: &FiniteBooleanAlgebra, z: &[Element]) -> Vec<Element> {
    let e = tail(b, z);
    let mut out = Vec::with_capacity(z.len());
    out.push(e[0]);
    out.push(b.meet(z[0], z[1]));
    out.extend_from_slice(&e[1..z.len() - 1]);
    out
}

/// Closed form for `ν(α^k)` given `ν(α) = z`, `1 ≤ k`:
/// `(e[k-1], z[1] ∧ z[2] ∧ e[0] ∧ … ∧ e[k-2], e[k], …)` with `e` from
/// [`tail`] padded by 1s. For `k ≤ n` the second coordinate is `⋀_{i≤k+1} z[i]`.
pub fn tower_snapshot(b: &FiniteBooleanAlgebra, z: &[Element], k: usize) -> Vec<Element> {
    let e = tail(b, z);
    let at = |i: usize| e.get(i).copied().unwrap_or(b.one());
    let seconds = z[..2].iter().copied().chain((0..k - 1).map(at));
    let mut out = vec![at(k - 1), b.meet_all(seconds)];
    out.extend((k..k + z.len() - 2).map(at));
    out
}

fn first_op(b: &FiniteBooleanAlgebra, op: BinOp, x: Element, y: Element) -> Element {
    match op {
        BinOp::And => b.meet(x, y),
        BinOp::Or => b.join(x, y),
        BinOp::Imp => b.imp(x, y),
    }
}

fn is_boolean(b: &FiniteBooleanAlgebra, z: &[Element]) -> bool {
    b.meet(z[0], z[1]) == b.zero()
}

/// An assignment of Boolean-algebra elements to the members of a closure.
#[derive(Clone, Debug)]
pub struct BValuation {
    algebra: FiniteBooleanAlgebra,
    n: u32,
    closure: Arc<Closure>,
    values: Vec<Element>,
}

impl BValuation {
    pub fn new(
        algebra: FiniteBooleanAlgebra,
        n: u32,
        closure: Arc<Closure>,
        values: Vec<Element>,
    ) -> Result<Self, ValuationError> {
        if values.len() != closure.len() {
            return Err(ValuationError::Length {
                expected: closure.len(),
                got: values.len(),
            });
        }
        for &v in &values {
            algebra.check(v)?;
        }
        Ok(BValuation {
            algebra,
            n,
            closure,
            values,
        })
    }

    pub fn algebra(&self) -> &FiniteBooleanAlgebra {
        &self.algebra
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn closure(&self) -> &Arc<Closure> {
        &self.closure
    }

    pub fn values(&self) -> &[Element] {
        &self.values
    }

    pub fn get(&self, id: NodeId) -> Element {
        self.values[id]
    }

    pub fn value_of(&self, f: &Formula) -> Option<Element> {
        self.closure.id_of(f).map(|i| self.values[i])
    }

    pub fn set(&mut self, f: &Formula, x: Element) -> Result<(), ValuationError> {
        let id = self
            .closure
            .id_of(f)
            .ok_or_else(|| ValuationError::NotInClosure(f.to_string()))?;
        self.values[id] = self.algebra.check(x)?;
        Ok(())
    }

    /// Checks V1–V6 on every clause instance inside the closure.
    pub fn check(&self) -> CheckReport {
        check_bvaluation(self)
    }

    /// `ν(α) = (𝖻(α), 𝖻(¬α), 𝖻(α¹), …, 𝖻(α^{n-1}))` on every closure
    /// member whose ingredients (and whose subformulas' ingredients) are present.
    pub fn to_valuation(&self) -> Result<RestrictedValuation, ValuationError> {
        let c = &self.closure;
        let mut ok = vec![false; c.len()];
        let mut selected = Vec::new();
        for id in 0..c.len() {
            let children_ok = match *c.node(id) {
                Node::Var(_) => true,
                Node::Neg(a) => ok[a],
                Node::Bin(_, a, b) => ok[a] && ok[b],
            };
            ok[id] = children_ok && self.ingredients(id).is_ok();
            if ok[id] {
                selected.push(c.formula(id).clone());
            }
        }
        if selected.is_empty() {
            return Err(self.ingredients(0).unwrap_err());
        }
        self.to_valuation_on(Arc::new(Closure::subformulas(&selected)))
    }

    /// As [`BValuation::to_valuation`] on an explicit target closure.
    pub fn to_valuation_on(&self, target: Arc<Closure>) -> Result<RestrictedValuation, ValuationError> {
        let mut values = Vec::with_capacity(target.len());
        for f in target.formulas() {
            let id = self
                .closure
                .id_of(f)
                .ok_or_else(|| ValuationError::ClosureTooSmall {
                    formula: f.to_string(),
                    missing: f.to_string(),
                })?;
            let ids = self.ingredients(id)?;
            values.push(Snapshot::new(ids.into_iter().map(|i| self.values[i]).collect()));
        }
        Ok(RestrictedValuation {
            algebra: self.algebra.clone(),
            n: self.n,
            closure: target,
            values,
        })
    }

    /// Ids of `α, ¬α, α¹, …, α^{n-1}`.
    fn ingredients(&self, id: NodeId) -> Result<Vec<NodeId>, ValuationError> {
        let c = &self.closure;
        let f = c.formula(id);
        let missing = |m: Formula| ValuationError::ClosureTooSmall {
            formula: f.to_string(),
            missing: m.to_string(),
        };
        let neg = c.find_neg(id).ok_or_else(|| missing(Formula::neg(f.clone())))?;
        let tower = c.tower_ids(id, self.n - 1);
        if tower.len() < self.n as usize - 1 {
            return Err(missing(f.power(tower.len() as u32 + 1)));
        }
        let mut out = vec![id, neg];
        out.extend(tower);
        Ok(out)
    }

    pub fn dump(&self) -> Vec<DumpEntry> {
        self.closure
            .formulas()
            .iter()
            .zip(&self.values)
            .map(|(f, &x)| DumpEntry {
                formula: f.to_string(),
                snapshot: vec![self.algebra.format(x)],
            })
            .collect()
    }
}

/// Checks V1–V6 over the closure of `v`.
pub fn check_bvaluation(v: &BValuation) -> CheckReport {
    let (b, c, n) = (&v.algebra, &v.closure, v.n);
    let val = |i: NodeId| v.values[i];
    let mut report = CheckReport::default();
    for id in 0..c.len() {
        let f = c.formula(id);
        match *c.node(id) {
            Node::Var(_) => {}
            Node::Bin(op, a, bb) => {
                let expected = first_op(b, op, val(a), val(bb));
                if val(id) != expected {
                    report.violation(
                        "V1",
                        &[f],
                        format!("{} ≠ {}", b.format(val(id)), b.format(expected)),
                    );
                }
                // V6: α^(n) evaluated through V1 as the meet of the tower
                let bounded = |x: NodeId| -> Option<Element> {
                    let t = c.tower_ids(x, n);
                    (t.len() == n as usize).then(|| b.meet_all(t.into_iter().map(val)))
                };
                match (bounded(a), bounded(bb), bounded(id)) {
                    (Some(x), Some(y), Some(z)) => {
                        if !b.meet(x, y).le(z) {
                            report.violation(
                                "V6",
                                &[c.formula(a), c.formula(bb)],
                                format!(
                                    "{} ∧ {} ≰ {}",
                                    b.format(x),
                                    b.format(y),
                                    b.format(z)
                                ),
                            );
                        }
                    }
                    (x, y, _) => {
                        let missing = if x.is_none() {
                            a
                        } else if y.is_none() {
                            bb
                        } else {
                            id
                        };
                        report.gap("V6", &c.formula(missing).power(n));
                    }
                }
            }
            Node::Neg(a) => {
                if !b.compl(val(a)).le(val(id)) {
                    report.violation(
                        "V2",
                        &[c.formula(a)],
                        format!("∼{} ≰ {}", b.format(val(a)), b.format(val(id))),
                    );
                }
                if let Node::Neg(aa) = *c.node(a) {
                    if !val(id).le(val(aa)) {
                        report.violation(
                            "V3",
                            &[c.formula(aa)],
                            format!("{} ≰ {}", b.format(val(id)), b.format(val(aa))),
                        );
                    }
                }
                if let Some(base) = c.circle_base(a) {
                    // ¬(α°) with α = base
                    let nb = c.find_neg(base).expect("¬α is a subformula of α°");
                    let expected = b.meet(val(base), val(nb));
                    if val(id) != expected {
                        report.violation(
                            "V5",
                            &[c.formula(base)],
                            format!("{} ≠ {}", b.format(val(id)), b.format(expected)),
                        );
                    }
                }
                if let Some(base) = c.circle_base(id) {
                    if c.formula(base).tower().1 + 1 >= n {
                        let nb = c.find_neg(base).expect("¬β is a subformula of β¹");
                        let expected = b.compl(b.meet(val(base), val(nb)));
                        if val(id) != expected {
                            report.violation(
                                "V4",
                                &[f],
                                format!("{} ≠ {}", b.format(val(id)), b.format(expected)),
                            );
                        }
                    }
                }
            }
        }
    }
    report
}

/// An assignment of snapshots to the members of a closure.
#[derive(Clone, Debug)]
pub struct RestrictedValuation {
    algebra: FiniteBooleanAlgebra,
    n: u32,
    closure: Arc<Closure>,
    values: Vec<Snapshot>,
}

impl RestrictedValuation {
    pub fn new(
        algebra: FiniteBooleanAlgebra,
        n: u32,
        closure: Arc<Closure>,
        values: Vec<Snapshot>,
    ) -> Result<Self, ValuationError> {
        if values.len() != closure.len() {
            return Err(ValuationError::Length {
                expected: closure.len(),
                got: values.len(),
            });
        }
        Ok(RestrictedValuation {
            algebra,
            n,
            closure,
            values,
        })
    }

    pub fn algebra(&self) -> &FiniteBooleanAlgebra {
        &self.algebra
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn closure(&self) -> &Arc<Closure> {
        &self.closure
    }

    pub fn values(&self) -> &[Snapshot] {
        &self.values
    }

    pub fn get(&self, id: NodeId) -> &Snapshot {
        &self.values[id]
    }

    pub fn value_of(&self, f: &Formula) -> Option<&Snapshot> {
        self.closure.id_of(f).map(|i| &self.values[i])
    }

    pub fn is_designated(&self, id: NodeId) -> bool {
        self.values[id].first() == self.algebra.one()
    }

    /// Homomorphism conditions and restriction clauses (1)–(3).
    pub fn check(&self) -> CheckReport {
        let (b, c) = (&self.algebra, &self.closure);
        let z = |i: NodeId| self.values[i].coords();
        let mut report = CheckReport::default();
        for id in 0..c.len() {
            let f = c.formula(id);
            if !is_snapshot(b, self.n, z(id)) {
                report.violation(
                    "snapshot",
                    &[f],
                    format!("{} is not in B_n", self.values[id].format(b)),
                );
                continue;
            }
            match *c.node(id) {
                Node::Var(_) => {}
                Node::Neg(a) => {
                    let (w, za) = (z(id), z(a));
                    if w[0] != za[1] || !w[1].le(za[0]) {
                        report.violation(
                            "neg",
                            &[f],
                            format!(
                                "{} ∉ ¬̃{}",
                                self.values[id].format(b),
                                self.values[a].format(b)
                            ),
                        );
                    }
                }
                Node::Bin(op, a, bb) => {
                    let (u, za, zb) = (z(id), z(a), z(bb));
                    let x = first_op(b, op, za[0], zb[0]);
                    let boolean_branch = is_boolean(b, za) && is_boolean(b, zb);
                    let boolean_ok = !boolean_branch
                        || (u[1] == b.compl(u[0]) && u[2..].iter().all(|&e| e == b.one()));
                    if u[0] != x || !boolean_ok {
                        report.violation(
                            op.name(),
                            &[f],
                            format!(
                                "{} ∉ {} {}̃ {}",
                                self.values[id].format(b),
                                self.values[a].format(b),
                                op.unicode(),
                                self.values[bb].format(b)
                            ),
                        );
                    }
                    if !b
                        .meet(bounded_power_first(b, za), bounded_power_first(b, zb))
                        .le(bounded_power_first(b, u))
                    {
                        report.violation(
                            "clause3",
                            &[c.formula(a), c.formula(bb)],
                            "first coordinates of the ^(n) values decrease".into(),
                        );
                    }
                    if op == BinOp::And && c.find_neg(a) == Some(bb) {
                        let expected = contradiction_second(b, za);
                        if u[1] != expected {
                            report.violation(
                                "clause1",
                                &[c.formula(a)],
                                format!("second coordinate {} ≠ {}", b.format(u[1]), b.format(expected)),
                            );
                        }
                    }
                }
            }
            if let Some(base) = c.circle_base(id) {
                let expected = circle_snapshot(b, z(base));
                if z(id) != expected.as_slice() {
                    report.violation(
                        "clause2",
                        &[c.formula(base)],
                        format!(
                            "{} ≠ {}",
                            self.values[id].format(b),
                            Snapshot::new(expected).format(b)
                        ),
                    );
                }
            }
        }
        report
    }

    /// `𝖻(α) = ν(α)[1]`.
    pub fn to_bvaluation(&self) -> BValuation {
        BValuation {
            algebra: self.algebra.clone(),
            n: self.n,
            closure: self.closure.clone(),
            values: self.values.iter().map(Snapshot::first).collect(),
        }
    }

    pub fn dump(&self) -> Vec<DumpEntry> {
        self.closure
            .formulas()
            .iter()
            .zip(&self.values)
            .map(|(f, z)| DumpEntry {
                formula: f.to_string(),
                snapshot: z.literals(&self.algebra),
            })
            .collect()
    }
}

pub fn valuation_to_bvaluation(v: &RestrictedValuation) -> BValuation {
    v.to_bvaluation()
}

pub fn bvaluation_to_valuation(b: &BValuation) -> Result<RestrictedValuation, ValuationError> {
    b.to_valuation()
}

/// One row of a valuation dump.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DumpEntry {
    pub formula: String,
    pub snapshot: Vec<String>,
}

/// Stored `ν(α^k)` against the closed form, for each `k` whose tower level is present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedLaws {
    pub levels: Vec<(u32, Snapshot, Snapshot)>,
    pub mismatches: Vec<u32>,
    pub bounded_power_first: Element,
}

pub fn derived_snapshot_laws(v: &RestrictedValuation, alpha: &Formula) -> Result<DerivedLaws, ValuationError> {
    let c = &v.closure;
    let id = c
        .id_of(alpha)
        .ok_or_else(|| ValuationError::NotInClosure(alpha.to_string()))?;
    let z = v.values[id].coords();
    let mut levels = Vec::new();
    let mut mismatches = Vec::new();
    for (k, t) in c.tower_ids(id, v.n).into_iter().enumerate() {
        let k = k as u32 + 1;
        let expected = Snapshot::new(tower_snapshot(&v.algebra, z, k as usize));
        if expected != v.values[t] {
            mismatches.push(k);
        }
        levels.push((k, expected, v.values[t].clone()));
    }
    Ok(DerivedLaws {
        levels,
        mismatches,
        bounded_power_first: bounded_power_first(&v.algebra, z),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongNegationLaws {
    pub contradiction: Snapshot,
    pub excluded_middle: Snapshot,
    pub contradiction_is_bottom: bool,
    pub excluded_middle_designated: bool,
}

impl StrongNegationLaws {
    pub fn hold(&self) -> bool {
        self.contradiction_is_bottom && self.excluded_middle_designated
    }
}

/// `ν(α ∧ ∼α) = F_n` and `ν(α ∨ ∼α) ∈ D_n^ℬ`.
pub fn strong_negation_laws(v: &RestrictedValuation, alpha: &Formula) -> Result<StrongNegationLaws, ValuationError> {
    let sn = alpha.strong_neg(v.n);
    let lookup = |f: Formula| {
        v.value_of(&f)
            .cloned()
            .ok_or_else(|| ValuationError::NotInClosure(f.to_string()))
    };
    let contradiction = lookup(Formula::and(alpha.clone(), sn.clone()))?;
    let excluded_middle = lookup(Formula::or(alpha.clone(), sn))?;
    let b = &v.algebra;
    let mut bottom = vec![b.one(); v.n as usize + 1];
    bottom[0] = b.zero();
    Ok(StrongNegationLaws {
        contradiction_is_bottom: contradiction.coords() == bottom.as_slice(),
        excluded_middle_designated: excluded_middle.first() == b.one(),
        contradiction,
        excluded_middle,
    })
}

/// Per-variable seeds `(𝖻(p), 𝖻(¬p))` for the nontrivial construction.
pub type Seeds = HashMap<String, (Element, Element)>;

/// Snapshot for every closure member, built bottom-up:
///
/// * `α¹` gets the value forced by clause (2) from `α`;
/// * otherwise the first coordinate is the seed, `ν(γ)[2]` for `¬γ`, or
///   the Boolean combination for binary formulas;
/// * the second coordinate is the seed for variables, the value forced by
///   clause (1) for `γ ∧ ¬γ`, and the complement of the first otherwise;
/// * every later coordinate is `a_k = ∼⋀_{j<k} a_j`.
pub fn generate_snapshots(
    algebra: &FiniteBooleanAlgebra,
    n: u32,
    seeds: &Seeds,
    closure: &Closure,
) -> Result<Vec<Vec<Element>>, ValuationError> {
    let b = algebra;
    for (var, &(a, an)) in seeds {
        b.check(a)?;
        b.check(an)?;
        if b.join(a, an) != b.one() {
            return Err(ValuationError::Seed { var: var.clone() });
        }
    }
    let mut snaps: Vec<Vec<Element>> = Vec::with_capacity(closure.len());
    for id in 0..closure.len() {
        if let Some(base) = closure.circle_base(id) {
            snaps.push(circle_snapshot(b, &snaps[base]));
            continue;
        }
        let (first, second) = match closure.node(id) {
            Node::Var(name) => *seeds
                .get(name.as_ref())
                .ok_or_else(|| ValuationError::MissingVariable(name.to_string()))?,
            &Node::Neg(a) => {
                let x = snaps[a][1];
                (x, b.compl(x))
            }
            &Node::Bin(op, a, bb) => {
                let x = first_op(b, op, snaps[a][0], snaps[bb][0]);
                if op == BinOp::And && closure.find_neg(a) == Some(bb) {
                    (x, contradiction_second(b, &snaps[a]))
                } else {
                    (x, b.compl(x))
                }
            }
        };
        let mut z = vec![first, second];
        while z.len() < n as usize + 1 {
            z.push(b.compl(b.meet_all(z.iter().copied())));
        }
        snaps.push(z);
    }
    Ok(snaps)
}

/// The nontrivial ℬ-valuation on `closure` determined by `seeds`.
pub fn generate_nontrivial_bvaluation(
    algebra: &FiniteBooleanAlgebra,
    n: u32,
    seeds: &Seeds,
    closure: Arc<Closure>,
) -> Result<BValuation, ValuationError> {
    let snaps = generate_snapshots(algebra, n, seeds, &closure)?;
    Ok(BValuation {
        algebra: algebra.clone(),
        n,
        values: snaps.iter().map(|z| z[0]).collect(),
        closure,
    })
}

/// The restricted valuation on `closure` determined by `seeds`.
pub fn generate_valuation(
    algebra: &FiniteBooleanAlgebra,
    n: u32,
    seeds: &Seeds,
    closure: Arc<Closure>,
) -> Result<RestrictedValuation, ValuationError> {
    let snaps = generate_snapshots(algebra, n, seeds, &closure)?;
    Ok(RestrictedValuation {
        algebra: algebra.clone(),
        n,
        values: snaps.into_iter().map(Snapshot::new).collect(),
        closure,
    })
}

/// Random seeds for `vars`: `𝖻(p)` uniform, `𝖻(¬p)` uniform among the
/// elements joining it to 1.
pub fn random_seeds<R: rand::Rng + ?Sized>(
    algebra: &FiniteBooleanAlgebra,
    vars: impl IntoIterator<Item = String>,
    rng: &mut R,
) -> Seeds {
    let size = algebra.size() as u32;
    vars.into_iter()
        .map(|v| {
            let a = Element(rng.gen_range(0..size));
            let extra = Element(rng.gen_range(0..size));
            (v, (a, algebra.join(algebra.compl(a), algebra.meet(extra, a))))
        })
        .collect()
}

/// Ways in which a generated point departs from the classical and the
/// two-valued semantics.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nontriviality {
    /// Some `𝖻(α)` lies outside `{0, 1}`.
    pub non_binary_value: bool,
    /// Variables `p` with `𝖻(¬p) ≠ ∼𝖻(p)`.
    pub non_classical_negations: Vec<String>,
    /// Some `ν(α)` lies outside `Boo_n^ℬ`.
    pub outside_boolean: bool,
    /// Some `ν(α)` has a coordinate outside `{0, 1}`.
    pub outside_two_valued: bool,
}

impl Nontriviality {
    pub fn holds(&self) -> bool {
        self.non_binary_value
            && !self.non_classical_negations.is_empty()
            && self.outside_boolean
            && self.outside_two_valued
    }
}

pub fn nontriviality(b: &BValuation, v: &RestrictedValuation) -> Nontriviality {
    let alg = b.algebra();
    let closure = b.closure();
    let non_classical_negations = (0..closure.len())
        .filter_map(|id| match closure.node(id) {
            Node::Var(name) => {
                let neg = closure.find_neg(id)?;
                (b.get(neg) != alg.compl(b.get(id))).then(|| name.to_string())
            }
            _ => None,
        })
        .collect();
    let va = v.algebra();
    Nontriviality {
        non_binary_value: b.values().iter().any(|&x| !alg.is_bit(x)),
        non_classical_negations,
        outside_boolean: v.values().iter().any(|z| va.meet(z.at(1), z.at(2)) != va.zero()),
        outside_two_valued: v
            .values()
            .iter()
            .any(|z| z.coords().iter().any(|&x| !va.is_bit(x))),
    }
}

/// Closure on which a ℬ-valuation supports the restricted valuation over
/// `closure(gamma, n)`: the closure of that closure.
pub fn bridge_domain(gamma: &[Formula], n: u32) -> (Arc<Closure>, Arc<Closure>) {
    let inner = Closure::new(gamma, n);
    let outer = Closure::new(inner.formulas(), n);
    (Arc::new(inner), Arc::new(outer))
}
