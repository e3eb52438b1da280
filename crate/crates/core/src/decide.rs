//! Row-branching decision procedure for `Γ ⊨ φ` over a swap structure.
//!
//! The closure of `Γ ∪ {φ}` is assigned snapshots in subformula order.
//! Variables range over the whole carrier; compound formulas range over the
//! multioperation output, cut down by the restriction clauses and by the
//! designation requirements (premises designated, conclusion not). The first
//! complete row is a countermodel; since candidates are tried in carrier
//! order it is the lexicographically least one.
//!
//! Failed partial rows are memoized on what later rows can still observe of
//! the values assigned so far, so independent subtrees are not re-explored.

use std::cell::OnceCell;
use std::collections::HashMap;
use std::sync::Arc;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boolalg::{Element, FiniteBooleanAlgebra};
use crate::formula::{BinOp, Closure, Formula, Node, NodeId};
use crate::hilbert::{schemas, Schema};
use crate::swap::{SnapId, SwapError, SwapStructure};
use crate::valuation::{circle_snapshot, contradiction_second, DumpEntry, RestrictedValuation};
use crate::Limits;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecideError {
    #[error("row cap of {limit} exceeded after {rows} rows")]
    CapExceeded { rows: u64, limit: u64 },
    #[error(transparent)]
    Swap(#[from] SwapError),
}

/// Candidates rejected, by the reason they were rejected.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruneCounts {
    pub clause1: u64,
    pub clause2: u64,
    pub clause3: u64,
    pub designation: u64,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub entailed: bool,
    pub countermodel: Option<RestrictedValuation>,
    /// Candidate assignments accepted during the search.
    pub rows_explored: u64,
    pub rows_pruned_by_clause: PruneCounts,
}

#[derive(Clone, Debug)]
pub struct EntailmentQuery {
    pub n: u32,
    pub algebra: FiniteBooleanAlgebra,
    pub premises: Vec<Formula>,
    pub conclusion: Formula,
}

impl EntailmentQuery {
    pub fn new(n: u32, premises: Vec<Formula>, conclusion: Formula) -> Self {
        EntailmentQuery {
            n,
            algebra: FiniteBooleanAlgebra::two(),
            premises,
            conclusion,
        }
    }

    pub fn over(mut self, algebra: FiniteBooleanAlgebra) -> Self {
        self.algebra = algebra;
        self
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    Free,
    Premise,
    Conclusion,
    Both,
}

/// Per-carrier data reused across queries.
pub struct Decider<'s> {
    swap: &'s SwapStructure,
    max_rows: u64,
    bounded_first: Vec<Element>,
    boolean: Vec<bool>,
    circle: Vec<SnapId>,
    contra: Vec<Element>,
    classes: [OnceCell<Vec<u32>>; 16],
}

// What a later row may look at in an earlier value.
const SEEN_BY_NEG: u8 = 1;
const SEEN_BY_BIN: u8 = 2;
const SEEN_BY_CONTRA: u8 = 4;
const SEEN_BY_CIRCLE: u8 = 8;

impl<'s> Decider<'s> {
    pub fn new(swap: &'s SwapStructure, max_rows: u64) -> Self {
        let b = swap.algebra();
        let ids = 0..swap.len() as SnapId;
        let circle = ids
            .clone()
            .map(|z| {
                let w = circle_snapshot(b, swap.get(z).coords());
                swap.id_of_coords(&w).expect("clause (2) yields a snapshot")
            })
            .collect();
        Decider {
            swap,
            max_rows,
            bounded_first: ids.clone().map(|z| swap.bounded_power_first(z)).collect(),
            boolean: ids.clone().map(|z| swap.is_boolean(z)).collect(),
            contra: ids.map(|z| contradiction_second(b, swap.get(z).coords())).collect(),
            circle,
            classes: Default::default(),
        }
    }

    /// Snapshot ids numbered by the equivalence "indistinguishable to the
    /// uses in `mask`".
    fn classes(&self, mask: u8) -> &[u32] {
        self.classes[mask as usize].get_or_init(|| {
            let s = self.swap;
            let mut seen = HashMap::new();
            (0..s.len())
                .map(|z| {
                    let snap = s.get(z as SnapId);
                    let mut key = Vec::with_capacity(6);
                    if mask & SEEN_BY_NEG != 0 {
                        key.extend([snap.at(1).0, snap.at(2).0]);
                    }
                    if mask & SEEN_BY_BIN != 0 {
                        key.extend([snap.first().0, self.bounded_first[z].0, self.boolean[z] as u32]);
                    }
                    if mask & SEEN_BY_CONTRA != 0 {
                        key.push(self.contra[z].0);
                    }
                    if mask & SEEN_BY_CIRCLE != 0 {
                        key.push(self.circle[z]);
                    }
                    let next = seen.len() as u32;
                    *seen.entry(key).or_insert(next)
                })
                .collect()
        })
    }

    pub fn swap(&self) -> &SwapStructure {
        self.swap
    }

    pub fn entails(&self, premises: &[Formula], conclusion: &Formula) -> Result<Verdict, DecideError> {
        let mut all: Vec<&Formula> = premises.iter().collect();
        all.push(conclusion);
        let closure = Arc::new(Closure::new(all, self.swap.n()));
        let mut roles = vec![Role::Free; closure.len()];
        for f in premises {
            roles[closure.id_of(f).unwrap()] = Role::Premise;
        }
        let c = closure.id_of(conclusion).unwrap();
        roles[c] = if roles[c] == Role::Premise {
            Role::Both
        } else {
            Role::Conclusion
        };

        let len = closure.len();
        let mut uses: Vec<Vec<(usize, u8)>> = vec![Vec::new(); len];
        for i in 0..len {
            match *closure.node(i) {
                Node::Var(_) => {}
                Node::Neg(a) => uses[a].push((i, SEEN_BY_NEG)),
                Node::Bin(op, a, b) => {
                    uses[a].push((i, SEEN_BY_BIN));
                    uses[b].push((i, SEEN_BY_BIN));
                    if op == BinOp::And && closure.find_neg(a) == Some(b) {
                        uses[a].push((i, SEEN_BY_CONTRA));
                    }
                }
            }
            if let Some(base) = closure.circle_base(i) {
                uses[base].push((i, SEEN_BY_CIRCLE));
            }
        }
        let frontier = (0..=len)
            .map(|k| {
                (0..k)
                    .filter_map(|j| {
                        let mask = uses[j].iter().filter(|&&(i, _)| i >= k).fold(0, |m, &(_, u)| m | u);
                        (mask != 0).then(|| (j, self.classes(mask)))
                    })
                    .collect()
            })
            .collect();

        let mut search = Search {
            d: self,
            closure: &closure,
            roles,
            frontier,
            assign: vec![0; len],
            failed: FxHashSet::default(),
            rows: 0,
            pruned: PruneCounts::default(),
            scratch: Vec::new(),
        };
        let found = search.dfs(0)?;
        let countermodel = found.then(|| {
            let values = search.assign.iter().map(|&z| self.swap.get(z).clone()).collect();
            RestrictedValuation::new(self.swap.algebra().clone(), self.swap.n(), closure.clone(), values)
                .expect("one value per closure member")
        });
        debug_assert!(countermodel.as_ref().is_none_or(|v| v.check().ok()));
        Ok(Verdict {
            entailed: !found,
            countermodel,
            rows_explored: search.rows,
            rows_pruned_by_clause: search.pruned,
        })
    }
}

struct Search<'a, 's> {
    d: &'a Decider<'s>,
    closure: &'a Closure,
    roles: Vec<Role>,
    frontier: Vec<Vec<(NodeId, &'a [u32])>>,
    assign: Vec<SnapId>,
    failed: FxHashSet<Box<[u32]>>,
    rows: u64,
    pruned: PruneCounts,
    scratch: Vec<Vec<SnapId>>,
}

impl Search<'_, '_> {
    fn candidates(&mut self, k: NodeId, out: &mut Vec<SnapId>) {
        let d = self.d;
        let s = d.swap;
        let b = s.algebra();
        out.clear();
        match *self.closure.node(k) {
            Node::Var(_) => out.extend(0..s.len() as SnapId),
            Node::Neg(a) => {
                let za = s.get(self.assign[a]);
                let negs = s
                    .with_first(za.at(2))
                    .iter()
                    .copied()
                    .filter(|&w| s.get(w).at(2).le(za.at(1)));
                if let Some(base) = self.closure.circle_base(k) {
                    let forced = d.circle[self.assign[base] as usize];
                    let mut hit = false;
                    for w in negs {
                        if w == forced {
                            hit = true;
                        } else {
                            self.pruned.clause2 += 1;
                        }
                    }
                    if hit {
                        out.push(forced);
                    }
                } else {
                    out.extend(negs);
                }
            }
            Node::Bin(op, a, bb) => {
                let (za, zb) = (self.assign[a], self.assign[bb]);
                let x = s.first_op(op, s.get(za).first(), s.get(zb).first());
                let floor = b.meet(d.bounded_first[za as usize], d.bounded_first[zb as usize]);
                let contra = (op == BinOp::And && self.closure.find_neg(a) == Some(bb))
                    .then(|| d.contra[za as usize]);
                let pool: &[SnapId] = if d.boolean[za as usize] && d.boolean[zb as usize] {
                    std::slice::from_ref(&s.boolean_ids()[x.bits() as usize])
                } else {
                    s.with_first(x)
                };
                for &u in pool {
                    if let Some(e) = contra {
                        if s.get(u).at(2) != e {
                            self.pruned.clause1 += 1;
                            continue;
                        }
                    }
                    if !floor.le(d.bounded_first[u as usize]) {
                        self.pruned.clause3 += 1;
                        continue;
                    }
                    out.push(u);
                }
            }
        }
        let designated = |u: SnapId| s.is_designated(u);
        let before = out.len();
        match self.roles[k] {
            Role::Free => {}
            Role::Premise => out.retain(|&u| designated(u)),
            Role::Conclusion => out.retain(|&u| !designated(u)),
            Role::Both => out.clear(),
        }
        self.pruned.designation += (before - out.len()) as u64;
    }

    fn dfs(&mut self, k: NodeId) -> Result<bool, DecideError> {
        if k == self.assign.len() {
            return Ok(true);
        }
        let key: Box<[u32]> = std::iter::once(k as u32)
            .chain(self.frontier[k].iter().map(|&(j, class)| class[self.assign[j] as usize]))
            .collect();
        if self.failed.contains(&key) {
            return Ok(false);
        }
        let mut cands = self.scratch.pop().unwrap_or_default();
        self.candidates(k, &mut cands);
        for &u in &cands {
            self.rows += 1;
            if self.rows > self.d.max_rows {
                return Err(DecideError::CapExceeded {
                    rows: self.rows,
                    limit: self.d.max_rows,
                });
            }
            self.assign[k] = u;
            if self.dfs(k + 1)? {
                return Ok(true);
            }
        }
        self.scratch.push(cands);
        self.failed.insert(key);
        Ok(false)
    }
}

/// Decides one query, building the carrier from scratch.
pub fn entails(q: &EntailmentQuery, limits: &Limits) -> Result<Verdict, DecideError> {
    let swap = SwapStructure::with_cap(q.algebra.clone(), q.n, limits.max_carrier)?;
    Decider::new(&swap, limits.max_rows).entails(&q.premises, &q.conclusion)
}

/// Machine-readable form of a [`Verdict`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub n: u32,
    pub algebra: String,
    pub premises: Vec<String>,
    pub conclusion: String,
    pub entailed: bool,
    pub rows_explored: u64,
    pub rows_pruned_by_clause: PruneCounts,
    pub countermodel: Option<Vec<DumpEntry>>,
}

impl Verdict {
    pub fn report(&self, q: &EntailmentQuery) -> VerdictReport {
        VerdictReport {
            n: q.n,
            algebra: q.algebra.to_string(),
            premises: q.premises.iter().map(|f| f.to_string()).collect(),
            conclusion: q.conclusion.to_string(),
            entailed: self.entailed,
            rows_explored: self.rows_explored,
            rows_pruned_by_clause: self.rows_pruned_by_clause,
            countermodel: self.countermodel.as_ref().map(|v| v.dump()),
        }
    }
}

/// How schema metavariables are instantiated by [`validate_axioms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instantiation {
    /// `α ↦ p, β ↦ q, γ ↦ r`.
    Canonical,
    /// Every map from the metavariables into the given variables.
    AllVariables(Vec<String>),
    /// Every map from the metavariables into the given formulas.
    Formulas(Vec<Formula>),
}

impl Instantiation {
    pub fn pqr() -> Self {
        Instantiation::AllVariables(vec!["p".into(), "q".into(), "r".into()])
    }

    fn pool(&self) -> Vec<Formula> {
        match self {
            Instantiation::Canonical => Vec::new(),
            Instantiation::AllVariables(vs) => vs.iter().map(|v| Formula::var(v)).collect(),
            Instantiation::Formulas(fs) => fs.clone(),
        }
    }

    pub fn instances(&self, schema: &Schema) -> Vec<Formula> {
        let metas = schema.metavariables();
        if *self == Instantiation::Canonical {
            let canon = ["p", "q", "r"];
            let sigma = metas
                .iter()
                .enumerate()
                .map(|(i, m)| (m.clone(), Formula::var(canon[i % 3])))
                .collect();
            return vec![schema.instantiate(&sigma)];
        }
        let pool = self.pool();
        let mut out = Vec::new();
        let mut digits = vec![0usize; metas.len()];
        'outer: loop {
            let sigma = metas
                .iter()
                .zip(&digits)
                .map(|(m, &i)| (m.clone(), pool[i].clone()))
                .collect();
            out.push(schema.instantiate(&sigma));
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d < pool.len() {
                    continue 'outer;
                }
                *d = 0;
            }
            break;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomFailure {
    pub schema: String,
    pub instance: String,
    pub countermodel: Vec<DumpEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub n: u32,
    pub algebra: String,
    pub schemas: Vec<String>,
    pub instances: usize,
    pub rows_explored: u64,
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Decides `∅ ⊨ ψ` for every instance `ψ` of every schema in `extra` plus
/// the axioms of `C_n`.
pub fn validate_axioms(
    n: u32,
    algebra: &FiniteBooleanAlgebra,
    scheme: &Instantiation,
    extra: &[Schema],
    limits: &Limits,
) -> Result<AxiomReport, DecideError> {
    let swap = SwapStructure::with_cap(algebra.clone(), n, limits.max_carrier)?;
    let d = Decider::new(&swap, limits.max_rows);
    let mut all = schemas(n);
    all.extend(extra.iter().cloned());
    let mut report = AxiomReport {
        n,
        algebra: algebra.to_string(),
        schemas: all.iter().map(|s| s.name().to_string()).collect(),
        instances: 0,
        rows_explored: 0,
        failures: Vec::new(),
    };
    for schema in &all {
        for inst in scheme.instances(schema) {
            let v = d.entails(&[], &inst)?;
            report.instances += 1;
            report.rows_explored += v.rows_explored;
            if let Some(cm) = v.countermodel {
                report.failures.push(AxiomFailure {
                    schema: schema.name().to_string(),
                    instance: inst.to_string(),
                    countermodel: cm.dump(),
                });
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraVerdict {
    pub algebra: String,
    pub entailed: bool,
    pub rows_explored: u64,
    pub countermodel: Option<Vec<DumpEntry>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossReport {
    pub entailed_everywhere: bool,
    pub per_algebra: Vec<AlgebraVerdict>,
}

/// Decides the same query over several algebras.
pub fn cross_algebra_check(
    premises: &[Formula],
    conclusion: &Formula,
    n: u32,
    algebras: &[FiniteBooleanAlgebra],
    limits: &Limits,
) -> Result<CrossReport, DecideError> {
    let mut per_algebra = Vec::new();
    for b in algebras {
        let q = EntailmentQuery {
            n,
            algebra: b.clone(),
            premises: premises.to_vec(),
            conclusion: conclusion.clone(),
        };
        let v = entails(&q, limits)?;
        per_algebra.push(AlgebraVerdict {
            algebra: b.to_string(),
            entailed: v.entailed,
            rows_explored: v.rows_explored,
            countermodel: v.countermodel.map(|m| m.dump()),
        });
    }
    Ok(CrossReport {
        entailed_everywhere: per_algebra.iter().all(|v| v.entailed),
        per_algebra,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, parse_list};

    fn decide(n: u32, gamma: &str, phi: &str) -> Verdict {
        let q = EntailmentQuery::new(n, parse_list(gamma, n).unwrap(), parse(phi, n).unwrap());
        entails(&q, &Limits::default()).unwrap()
    }

    #[test]
    fn no_explosion() {
        let v = decide(1, "p; ~p", "q");
        assert!(!v.entailed);
        let cm = v.countermodel.unwrap();
        assert!(cm.check().ok());
        let s = SwapStructure::two(1).unwrap();
        assert_eq!(cm.value_of(&parse("p", 1).unwrap()).unwrap(), &s.t(0));
        assert_eq!(cm.value_of(&parse("q", 1).unwrap()).unwrap(), &s.bottom());
    }

    #[test]
    fn explosion_under_consistency() {
        for n in 1..=3 {
            let v = decide(n, &format!("p; ~p; p^({n})"), "q");
            assert!(v.entailed, "n={n}");
            assert!(v.countermodel.is_none());
        }
    }

    #[test]
    fn excluded_middle_and_non_contradiction() {
        for n in 1..=3 {
            assert!(decide(n, "", "p | ~p").entailed);
        }
        let v = decide(1, "", "~(p & ~p)");
        assert!(!v.entailed);
        let cm = v.countermodel.unwrap();
        let s = SwapStructure::two(1).unwrap();
        assert_eq!(cm.value_of(&parse("p", 1).unwrap()).unwrap(), &s.t(0));
        assert_eq!(cm.value_of(&parse("p & ~p", 1).unwrap()).unwrap(), &s.top());
    }

    #[test]
    fn reflexivity_everywhere() {
        let p = parse("p", 1).unwrap();
        let algebras: Vec<FiniteBooleanAlgebra> =
            (1..=3).map(|m| FiniteBooleanAlgebra::powerset(m).unwrap()).collect();
        let r = cross_algebra_check(&[p.clone()], &p, 1, &algebras, &Limits::default()).unwrap();
        assert!(r.entailed_everywhere);
        let r = cross_algebra_check(&[], &parse("~~p -> p", 2).unwrap(), 2, &algebras, &Limits::default())
            .unwrap();
        assert!(r.entailed_everywhere);
        let r = cross_algebra_check(&[], &parse("p -> ~~p", 1).unwrap(), 1, &algebras, &Limits::default())
            .unwrap();
        assert!(!r.entailed_everywhere);
        assert!(!r.per_algebra[0].entailed);
    }

    #[test]
    fn cap_is_an_error() {
        let q = EntailmentQuery::new(2, vec![], parse("(p -> q) -> (q -> p)", 2).unwrap());
        let limits = Limits {
            max_rows: 3,
            ..Limits::default()
        };
        assert!(matches!(entails(&q, &limits), Err(DecideError::CapExceeded { .. })));
    }

    #[test]
    fn premise_equal_to_conclusion() {
        assert!(decide(2, "p -> q", "p -> q").entailed);
    }

    #[test]
    fn consistency_propagation() {
        assert!(!decide(1, "", "p^1").entailed);
        assert!(decide(1, "p^1", "(~p)^1").entailed);
        assert!(decide(1, "p^1; q^1", "(p -> q)^1").entailed);
        assert!(!decide(1, "p^1", "(p -> q)^1").entailed);
    }
}
