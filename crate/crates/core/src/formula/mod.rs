//! Formulas over the signature `{¬, ∧, ∨, →}`.
//!
//! Derived operators (`α^k`, `α^(k)`, `α°`, strong negation) have no AST
//! nodes of their own: they are expanded when built, so every formula is a
//! plain tree over the four primitive connectives.

mod closure;
mod parse;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

pub use closure::{Closure, Node, NodeId};
pub use parse::{parse, parse_list, ParseError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinOp {
    And,
    Or,
    Imp,
}

impl BinOp {
    pub const ALL: [BinOp; 3] = [BinOp::And, BinOp::Or, BinOp::Imp];

    pub fn ascii(self) -> &'static str {
        match self {
            BinOp::And => "&",
            BinOp::Or => "|",
            BinOp::Imp => "->",
        }
    }

    pub fn unicode(self) -> &'static str {
        match self {
            BinOp::And => "∧",
            BinOp::Or => "∨",
            BinOp::Imp => "→",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BinOp::And => "and",
            BinOp::Or => "or",
            BinOp::Imp => "imp",
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Imp => 1,
            BinOp::Or => 2,
            BinOp::And => 3,
        }
    }
}

/// The derived operators, each a fixed syntactic abbreviation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DerivedOp {
    /// `α^k`
    Power(u32),
    /// `α^(k)`
    BoundedPower(u32),
    /// `α° = α¹`
    Circle,
    /// `∼α = ¬α ∧ α^(n)` for the configured `n`
    StrongNeg,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(Arc<str>),
    Neg(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Imp(Arc<Formula>, Arc<Formula>),
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::Var(Arc::from(name))
    }

    pub fn neg(a: Formula) -> Formula {
        Formula::Neg(Arc::new(a))
    }

    pub fn bin(op: BinOp, a: Formula, b: Formula) -> Formula {
        let (a, b) = (Arc::new(a), Arc::new(b));
        match op {
            BinOp::And => Formula::And(a, b),
            BinOp::Or => Formula::Or(a, b),
            BinOp::Imp => Formula::Imp(a, b),
        }
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::bin(BinOp::And, a, b)
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::bin(BinOp::Or, a, b)
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::bin(BinOp::Imp, a, b)
    }

    pub fn as_binary(&self) -> Option<(BinOp, &Formula, &Formula)> {
        match self {
            Formula::And(a, b) => Some((BinOp::And, a, b)),
            Formula::Or(a, b) => Some((BinOp::Or, a, b)),
            Formula::Imp(a, b) => Some((BinOp::Imp, a, b)),
            _ => None,
        }
    }

    pub fn as_neg(&self) -> Option<&Formula> {
        match self {
            Formula::Neg(a) => Some(a),
            _ => None,
        }
    }

    /// `α¹ = ¬(α ∧ ¬α)`.
    pub fn circle(&self) -> Formula {
        Formula::neg(Formula::and(self.clone(), Formula::neg(self.clone())))
    }

    /// `α^k`.
    pub fn power(&self, k: u32) -> Formula {
        (0..k).fold(self.clone(), |acc, _| acc.circle())
    }

    /// `α^(k)`: the conjunction `α¹ ∧ … ∧ α^k` (left nested), `α` when `k = 0`.
    pub fn bounded_power(&self, k: u32) -> Formula {
        if k == 0 {
            return self.clone();
        }
        let mut tower = self.circle();
        let mut acc = tower.clone();
        for _ in 1..k {
            tower = tower.circle();
            acc = Formula::and(acc, tower.clone());
        }
        acc
    }

    /// Strong negation `∼α = ¬α ∧ α^(n)`.
    pub fn strong_neg(&self, n: u32) -> Formula {
        Formula::and(Formula::neg(self.clone()), self.bounded_power(n))
    }

    pub fn derive(&self, op: DerivedOp, n: u32) -> Formula {
        match op {
            DerivedOp::Power(k) => self.power(k),
            DerivedOp::BoundedPower(k) => self.bounded_power(k),
            DerivedOp::Circle => self.circle(),
            DerivedOp::StrongNeg => self.strong_neg(n),
        }
    }

    /// If `self = ¬(α ∧ ¬α)`, returns `α`.
    pub fn circle_base(&self) -> Option<&Formula> {
        let inner = self.as_neg()?;
        let Formula::And(a, b) = inner else {
            return None;
        };
        match b.as_neg() {
            Some(c) if c == a.as_ref() => Some(a),
            _ => None,
        }
    }

    /// Peels the longest `α^k` prefix: returns `(α, k)` with `α` not itself a circle.
    pub fn tower(&self) -> (&Formula, u32) {
        let mut cur = self;
        let mut k = 0;
        while let Some(base) = cur.circle_base() {
            cur = base;
            k += 1;
        }
        (cur, k)
    }

    /// Homomorphic replacement of variables.
    pub fn substitute(&self, sigma: &HashMap<String, Formula>) -> Formula {
        match self {
            Formula::Var(name) => sigma.get(name.as_ref()).cloned().unwrap_or_else(|| self.clone()),
            Formula::Neg(a) => Formula::neg(a.substitute(sigma)),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                let (op, _, _) = self.as_binary().unwrap();
                Formula::bin(op, a.substitute(sigma), b.substitute(sigma))
            }
        }
    }

    pub fn vars(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Formula::Var(name) => {
                out.insert(name.clone());
            }
            Formula::Neg(a) => a.collect_vars(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) => 1,
            Formula::Neg(a) => 1 + a.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Connective nesting depth; variables have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) => 0,
            Formula::Neg(a) => 1 + a.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// ASCII rendering with no `^k` folding.
    pub fn to_plain_string(&self) -> String {
        let mut s = String::new();
        write_formula(&mut s, self, 0, Style { unicode: false, fold: false }).unwrap();
        s
    }

    /// Unicode rendering with `^k` folding.
    pub fn to_unicode_string(&self) -> String {
        let mut s = String::new();
        write_formula(&mut s, self, 0, Style { unicode: true, fold: true }).unwrap();
        s
    }
}

#[derive(Clone, Copy)]
struct Style {
    unicode: bool,
    fold: bool,
}

const PREC_NEG: u8 = 4;
const PREC_POSTFIX: u8 = 5;

fn write_formula<W: fmt::Write>(w: &mut W, f: &Formula, ctx: u8, style: Style) -> fmt::Result {
    if style.fold {
        let (base, k) = f.tower();
        if k > 0 {
            write_formula(w, base, PREC_POSTFIX, style)?;
            return write!(w, "^{k}");
        }
    }
    match f {
        Formula::Var(name) => w.write_str(name),
        Formula::Neg(a) => {
            let paren = ctx > PREC_NEG;
            if paren {
                w.write_char('(')?;
            }
            w.write_str(if style.unicode { "¬" } else { "~" })?;
            write_formula(w, a, PREC_NEG, style)?;
            if paren {
                w.write_char(')')?;
            }
            Ok(())
        }
        _ => {
            let (op, a, b) = f.as_binary().unwrap();
            let p = op.precedence();
            let paren = ctx > p;
            if paren {
                w.write_char('(')?;
            }
            // → is right associative, ∧ and ∨ left associative
            let (lp, rp) = if op == BinOp::Imp { (p + 1, p) } else { (p, p + 1) };
            write_formula(w, a, lp, style)?;
            if style.unicode {
                write!(w, " {} ", op.unicode())?;
            } else {
                write!(w, " {} ", op.ascii())?;
            }
            write_formula(w, b, rp, style)?;
            if paren {
                w.write_char(')')?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self, 0, Style { unicode: false, fold: true })
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Formula({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::var("p")
    }

    #[test]
    fn towers() {
        let p1 = p().power(1);
        assert_eq!(p1, Formula::neg(Formula::and(p(), Formula::neg(p()))));
        assert_eq!(p().power(0), p());
        assert_eq!(p().power(3).tower(), (&p(), 3));
        assert_eq!(p().circle(), p().derive(DerivedOp::Circle, 1));
        assert_eq!(p().bounded_power(1), p1);
        assert_eq!(p().bounded_power(2), Formula::and(p().power(1), p().power(2)));
        assert_eq!(p().strong_neg(1), Formula::and(Formula::neg(p()), p1));
    }

    #[test]
    fn printing() {
        let q = Formula::var("q");
        let f = Formula::imp(Formula::imp(p(), q.clone()), Formula::imp(q.clone(), p()));
        assert_eq!(f.to_string(), "(p -> q) -> q -> p");
        assert_eq!(Formula::neg(p()).power(2).to_string(), "(~p)^2");
        assert_eq!(Formula::neg(p().power(2)).to_string(), "~p^2");
        assert_eq!(p().power(1).to_plain_string(), "~(p & ~p)");
        assert_eq!(Formula::or(p(), Formula::and(q.clone(), p())).to_unicode_string(), "p ∨ q ∧ p");
        assert_eq!(Formula::and(Formula::and(p(), q.clone()), p()).to_string(), "p & q & p");
        assert_eq!(Formula::and(p(), Formula::and(q, p())).to_string(), "p & (q & p)");
    }

    #[test]
    fn substitution() {
        let q = Formula::var("q");
        let r = Formula::var("r");
        let mut sigma = HashMap::new();
        sigma.insert("p".to_string(), Formula::and(q.clone(), r.clone()));
        assert_eq!(p().substitute(&sigma), Formula::and(q.clone(), r));
        let id: HashMap<String, Formula> = [("p".to_string(), p())].into();
        assert_eq!(Formula::neg(p()).substitute(&id), Formula::neg(p()));
        let sigma: HashMap<String, Formula> = [("p".to_string(), Formula::neg(q.clone()))].into();
        assert_eq!(
            Formula::imp(p(), q.clone()).substitute(&sigma),
            Formula::imp(Formula::neg(q.clone()), q)
        );
    }

    #[test]
    fn metrics() {
        let f = p().power(1);
        assert_eq!(f.size(), 5);
        assert_eq!(f.depth(), 3);
        assert_eq!(Formula::imp(p(), Formula::var("q")).vars().len(), 2);
    }
}
