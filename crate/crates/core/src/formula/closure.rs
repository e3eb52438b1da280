//! Subformula closures with `^n` towers.
//!
//! A closure is an interned DAG: every distinct formula gets one id, and ids
//! are assigned so that proper subformulas always come first.

use std::collections::HashMap;
use std::sync::Arc;

use super::{BinOp, Formula};

pub type NodeId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Var(Arc<str>),
    Neg(NodeId),
    Bin(BinOp, NodeId, NodeId),
}

#[derive(Clone, Debug)]
pub struct Closure {
    n: u32,
    nodes: Vec<Node>,
    formulas: Vec<Formula>,
    ids: HashMap<Node, NodeId>,
    /// Subformulas of the generating set (as opposed to tower fillers).
    core: Vec<bool>,
    towered: Vec<bool>,
}

impl Closure {
    /// Subformulas of `gamma` plus `α^n` (and hence its own subformulas)
    /// for every subformula `α` of `gamma`.
    pub fn new<'a, I>(gamma: I, n: u32) -> Closure
    where
        I: IntoIterator<Item = &'a Formula>,
    {
        let mut c = Closure {
            n,
            nodes: Vec::new(),
            formulas: Vec::new(),
            ids: HashMap::new(),
            core: Vec::new(),
            towered: Vec::new(),
        };
        for f in gamma {
            c.visit(f);
        }
        c
    }

    /// Plain subformula closure, with no towers added.
    pub fn subformulas<'a, I>(gamma: I) -> Closure
    where
        I: IntoIterator<Item = &'a Formula>,
    {
        let mut c = Closure::new(std::iter::empty(), 0);
        for f in gamma {
            c.visit(f);
        }
        c
    }

    fn intern(&mut self, node: Node, make: impl FnOnce(&Self) -> Formula) -> NodeId {
        if let Some(&id) = self.ids.get(&node) {
            return id;
        }
        let id = self.nodes.len();
        let f = make(self);
        self.nodes.push(node.clone());
        self.formulas.push(f);
        self.core.push(false);
        self.towered.push(false);
        self.ids.insert(node, id);
        id
    }

    fn visit(&mut self, f: &Formula) -> NodeId {
        let id = match f {
            Formula::Var(name) => self.intern(Node::Var(name.clone()), |_| f.clone()),
            Formula::Neg(a) => {
                let a = self.visit(a);
                self.intern(Node::Neg(a), |_| f.clone())
            }
            _ => {
                let (op, a, b) = f.as_binary().unwrap();
                let a = self.visit(a);
                let b = self.visit(b);
                self.intern(Node::Bin(op, a, b), |_| f.clone())
            }
        };
        self.core[id] = true;
        if !self.towered[id] {
            self.towered[id] = true;
            let mut t = id;
            for _ in 0..self.n {
                t = self.circle_of(t);
            }
        }
        id
    }

    fn circle_of(&mut self, a: NodeId) -> NodeId {
        let neg = self.intern(Node::Neg(a), |c| Formula::neg(c.formulas[a].clone()));
        let conj = self.intern(Node::Bin(BinOp::And, a, neg), |c| {
            Formula::and(c.formulas[a].clone(), c.formulas[neg].clone())
        });
        self.intern(Node::Neg(conj), |c| Formula::neg(c.formulas[conj].clone()))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn formula(&self, id: NodeId) -> &Formula {
        &self.formulas[id]
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn is_core(&self, id: NodeId) -> bool {
        self.core[id]
    }

    /// Ids of the subformulas of the generating set, in closure order.
    pub fn core_ids(&self) -> Vec<NodeId> {
        (0..self.len()).filter(|&i| self.core[i]).collect()
    }

    /// Looks a formula up by structure.
    pub fn id_of(&self, f: &Formula) -> Option<NodeId> {
        let node = match f {
            Formula::Var(name) => Node::Var(name.clone()),
            Formula::Neg(a) => Node::Neg(self.id_of(a)?),
            _ => {
                let (op, a, b) = f.as_binary().unwrap();
                Node::Bin(op, self.id_of(a)?, self.id_of(b)?)
            }
        };
        self.ids.get(&node).copied()
    }

    pub fn find_neg(&self, a: NodeId) -> Option<NodeId> {
        self.ids.get(&Node::Neg(a)).copied()
    }

    pub fn find_bin(&self, op: BinOp, a: NodeId, b: NodeId) -> Option<NodeId> {
        self.ids.get(&Node::Bin(op, a, b)).copied()
    }

    /// Id of `α ∧ ¬α` for `α = id`, if present.
    pub fn find_contradiction(&self, a: NodeId) -> Option<NodeId> {
        self.find_bin(BinOp::And, a, self.find_neg(a)?)
    }

    /// Id of `α¹` for `α = id`, if present.
    pub fn find_circle(&self, a: NodeId) -> Option<NodeId> {
        self.find_neg(self.find_contradiction(a)?)
    }

    /// Ids of `α¹, …, α^k`, stopping at the first missing level.
    pub fn tower_ids(&self, a: NodeId, k: u32) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut cur = a;
        for _ in 0..k {
            match self.find_circle(cur) {
                Some(next) => {
                    out.push(next);
                    cur = next;
                }
                None => break,
            }
        }
        out
    }

    /// If `id` is `α¹` for some `α` in the closure, returns `α`.
    pub fn circle_base(&self, id: NodeId) -> Option<NodeId> {
        let Node::Neg(conj) = self.nodes[id] else {
            return None;
        };
        let Node::Bin(BinOp::And, a, neg) = self.nodes[conj] else {
            return None;
        };
        (self.nodes[neg] == Node::Neg(a)).then_some(a)
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn closure(src: &[&str], n: u32) -> Closure {
        let fs: Vec<Formula> = src.iter().map(|s| parse(s, n).unwrap()).collect();
        Closure::new(&fs, n)
    }

    fn is_closed(c: &Closure) -> bool {
        c.nodes().iter().enumerate().all(|(i, node)| match *node {
            Node::Var(_) => true,
            Node::Neg(a) => a < i,
            Node::Bin(_, a, b) => a < i && b < i,
        })
    }

    #[test]
    fn single_variable_n1() {
        let c = closure(&["p"], 1);
        let printed: Vec<String> = c.formulas().iter().map(|f| f.to_plain_string()).collect();
        assert_eq!(printed, ["p", "~p", "p & ~p", "~(p & ~p)"]);
    }

    #[test]
    fn single_variable_n2() {
        let c = closure(&["p"], 2);
        let p2 = parse("p^2", 2).unwrap();
        assert_eq!(c.formulas().last(), Some(&p2));
        // p, ¬p, p∧¬p, p¹, ¬p¹, p¹∧¬p¹, p²
        assert_eq!(c.len(), 7);
        assert!(is_closed(&c));
        assert_eq!(c.core_ids(), vec![0]);
        assert_eq!(c.tower_ids(0, 2).len(), 2);
        assert_eq!(c.circle_base(6), Some(3));
    }

    #[test]
    fn implication_towers() {
        let c = closure(&["p -> q"], 2);
        for s in ["p", "q", "p -> q", "p^2", "q^2", "(p -> q)^2"] {
            assert!(c.id_of(&parse(s, 2).unwrap()).is_some(), "{s}");
        }
        assert!(is_closed(&c));
        assert_eq!(c.core_ids().len(), 3);
        // towers of tower fillers are not added
        assert!(c.id_of(&parse("(~p)^1", 2).unwrap()).is_none());
    }

    #[test]
    fn shared_subformulas_deduplicated() {
        let c = closure(&["p & p", "p"], 1);
        // p's tower (4 nodes) plus p & p and its tower (4 more)
        assert_eq!(c.len(), 8);
        let d = closure(&["p^1"], 1);
        // p^1 is a subformula, so it gets its own tower p^2
        assert!(d.id_of(&parse("p^2", 1).unwrap()).is_some());
    }

    #[test]
    fn plain_subformulas() {
        let f = parse("p^1", 1).unwrap();
        let c = Closure::subformulas([&f]);
        assert_eq!(c.len(), 4);
    }
}
