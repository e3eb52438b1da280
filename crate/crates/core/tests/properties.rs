use std::collections::HashMap;
use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rnmat::decide::Decider;
use rnmat::formula::{parse_list, Node};
use rnmat::valuation::{self, derived_snapshot_laws, generate_valuation, random_seeds};
use rnmat::{parse, BinOp, Closure, FiniteBooleanAlgebra, Formula, SwapStructure};

fn formula(vars: &'static [&'static str], depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = proptest::sample::select(vars).prop_map(Formula::var);
    leaf.prop_recursive(depth, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::neg),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::imp(a, b)),
        ]
    })
}

fn small() -> impl Strategy<Value = Formula> {
    formula(&["p", "q"], 2)
}

fn substitution() -> impl Strategy<Value = HashMap<String, Formula>> {
    (formula(&["p", "q", "r"], 1), formula(&["p", "q", "r"], 1))
        .prop_map(|(a, b)| HashMap::from([("p".to_string(), a), ("q".to_string(), b)]))
}

fn vars_of(f: &Formula) -> Vec<String> {
    f.vars().iter().map(|v| v.to_string()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn printing_round_trips(f in formula(&["p", "q", "r", "s1"], 5), n in 1u32..4) {
        prop_assert_eq!(parse(&f.to_string(), n).unwrap(), f.clone());
        prop_assert_eq!(parse(&f.to_plain_string(), n).unwrap(), f.clone());
        prop_assert_eq!(parse(&f.to_unicode_string(), n).unwrap(), f.clone());
    }

    #[test]
    fn derived_operators_round_trip(f in formula(&["p", "q"], 3), k in 0u32..4, n in 1u32..4) {
        prop_assert_eq!(parse(&f.power(k).to_string(), n).unwrap(), f.power(k));
        prop_assert_eq!(parse(&f.bounded_power(k).to_string(), n).unwrap(), f.bounded_power(k));
        prop_assert_eq!(parse(&f.strong_neg(n).to_string(), n).unwrap(), f.strong_neg(n));
        prop_assert_eq!(f.power(k).tower().1 >= k, true);
    }

    #[test]
    fn substitution_is_a_homomorphism(
        f in formula(&["p", "q", "r"], 4),
        s in substitution(),
        t in substitution(),
    ) {
        let composed: HashMap<String, Formula> = ["p", "q", "r"]
            .iter()
            .map(|v| {
                let image = s.get(*v).cloned().unwrap_or_else(|| Formula::var(v));
                (v.to_string(), image.substitute(&t))
            })
            .collect();
        prop_assert_eq!(f.substitute(&s).substitute(&t), f.substitute(&composed));
        prop_assert_eq!(Formula::neg(f.clone()).substitute(&s), Formula::neg(f.substitute(&s)));
        prop_assert_eq!(f.circle().substitute(&s), f.substitute(&s).circle());
        prop_assert_eq!(f.substitute(&HashMap::new()), f.clone());
        let mut expected = std::collections::BTreeSet::new();
        for v in f.vars() {
            match s.get(v.as_ref()) {
                Some(img) => expected.extend(img.vars()),
                None => { expected.insert(v); }
            }
        }
        prop_assert_eq!(f.substitute(&s).vars(), expected);
    }

    #[test]
    fn closures_are_closed(gamma in proptest::collection::vec(formula(&["p", "q", "r"], 3), 1..4), n in 1u32..4) {
        let c = Closure::new(&gamma, n);
        for id in 0..c.len() {
            prop_assert_eq!(c.id_of(c.formula(id)), Some(id));
            match *c.node(id) {
                Node::Var(_) => {}
                Node::Neg(a) => {
                    prop_assert!(a < id);
                    prop_assert_eq!(c.formula(id), &Formula::neg(c.formula(a).clone()));
                }
                Node::Bin(op, a, b) => {
                    prop_assert!(a < id && b < id);
                    prop_assert_eq!(c.formula(id), &Formula::bin(op, c.formula(a).clone(), c.formula(b).clone()));
                }
            }
            if c.is_core(id) {
                prop_assert!(c.id_of(&c.formula(id).power(n)).is_some());
            }
        }
        for g in &gamma {
            prop_assert!(c.id_of(g).is_some());
        }
        let sub = Closure::subformulas(c.formulas());
        prop_assert_eq!(sub.len(), c.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_valuations_obey_the_clauses(
        gamma in proptest::collection::vec(formula(&["p", "q"], 3), 1..3),
        n in 1u32..4,
        m in 1usize..3,
        seed: u64,
    ) {
        let alg = FiniteBooleanAlgebra::powerset(m).unwrap();
        let closure = Arc::new(Closure::new(&gamma, n));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let seeds = random_seeds(&alg, ["p".to_string(), "q".to_string()], &mut rng);
        let v = generate_valuation(&alg, n, &seeds, closure.clone()).unwrap();
        let report = v.check();
        prop_assert!(report.ok(), "{:?}", report.violations);
        for id in closure.core_ids() {
            let laws = derived_snapshot_laws(&v, closure.formula(id)).unwrap();
            prop_assert!(laws.mismatches.is_empty());
            prop_assert_eq!(laws.levels.len(), n as usize);
        }
    }

    /// Two valuations that agree on α agree on every level of its tower.
    #[test]
    fn clause_two_determines_towers(alpha in small(), n in 1u32..4, s1: u64, s2: u64) {
        let alg = FiniteBooleanAlgebra::powerset(2).unwrap();
        let closure = Arc::new(Closure::new([&alpha], n));
        let vars = vars_of(&alpha);
        let v1 = generate_valuation(&alg, n, &random_seeds(&alg, vars.clone(), &mut ChaCha8Rng::seed_from_u64(s1)), closure.clone()).unwrap();
        let v2 = generate_valuation(&alg, n, &random_seeds(&alg, vars, &mut ChaCha8Rng::seed_from_u64(s2)), closure.clone()).unwrap();
        if v1.value_of(&alpha) == v2.value_of(&alpha) {
            for k in 1..=n {
                prop_assert_eq!(v1.value_of(&alpha.power(k)), v2.value_of(&alpha.power(k)));
            }
        }
        let id = closure.id_of(&alpha).unwrap();
        let laws = derived_snapshot_laws(&v1, &alpha).unwrap();
        for (k, expected, _) in &laws.levels {
            let tower_id = closure.tower_ids(id, n)[*k as usize - 1];
            prop_assert_eq!(&v1.values()[tower_id], expected);
        }
    }

    /// Entailment is closed under uniform substitution.
    #[test]
    fn entailment_is_structural(
        gamma in proptest::collection::vec(small(), 0..3),
        phi in small(),
        s in substitution(),
    ) {
        let swap = SwapStructure::new(FiniteBooleanAlgebra::two(), 1).unwrap();
        let d = Decider::new(&swap, 5_000_000);
        if d.entails(&gamma, &phi).unwrap().entailed {
            let sg: Vec<Formula> = gamma.iter().map(|g| g.substitute(&s)).collect();
            prop_assert!(d.entails(&sg, &phi.substitute(&s)).unwrap().entailed);
        }
    }

    /// Verdicts agree with sampled valuations: an entailed query has no
    /// sampled counterexample, and a countermodel passes every clause.
    #[test]
    fn verdicts_agree_with_sampled_valuations(
        gamma in proptest::collection::vec(small(), 0..3),
        phi in small(),
        n in 1u32..3,
        seed: u64,
    ) {
        let alg = FiniteBooleanAlgebra::powerset(2).unwrap();
        let swap = SwapStructure::new(alg.clone(), n).unwrap();
        let verdict = Decider::new(&swap, 5_000_000).entails(&gamma, &phi).unwrap();
        match &verdict.countermodel {
            Some(cm) => {
                prop_assert!(!verdict.entailed);
                prop_assert!(cm.check().ok(), "{:?}", cm.check().violations);
                for g in &gamma {
                    let id = cm.closure().id_of(g).unwrap();
                    prop_assert!(cm.is_designated(id));
                }
                prop_assert!(!cm.is_designated(cm.closure().id_of(&phi).unwrap()));
            }
            None => {
                prop_assert!(verdict.entailed);
                let mut all = gamma.clone();
                all.push(phi.clone());
                let closure = Arc::new(Closure::new(&all, n));
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..8 {
                    let seeds = random_seeds(&alg, ["p".to_string(), "q".to_string()], &mut rng);
                    let v = generate_valuation(&alg, n, &seeds, closure.clone()).unwrap();
                    let designated = |f: &Formula| v.is_designated(closure.id_of(f).unwrap());
                    if gamma.iter().all(designated) {
                        prop_assert!(designated(&phi));
                    }
                }
            }
        }
    }

    #[test]
    fn bridges_round_trip(gamma in proptest::collection::vec(small(), 1..3), n in 1u32..4, seed: u64) {
        let alg = FiniteBooleanAlgebra::powerset(2).unwrap();
        let (inner, outer) = valuation::bridge_domain(&gamma, n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let seeds = random_seeds(&alg, ["p".to_string(), "q".to_string()], &mut rng);
        let v = generate_valuation(&alg, n, &seeds, outer).unwrap();
        let b = v.to_bvaluation();
        prop_assert!(b.check().ok(), "{:?}", b.check().violations);
        let back = b.to_valuation_on(inner.clone()).unwrap();
        prop_assert!(back.check().ok());
        for (id, f) in inner.formulas().iter().enumerate() {
            prop_assert_eq!(Some(&back.values()[id]), v.value_of(f));
        }
    }
}

#[test]
fn boolean_operations_in_the_closure_are_interned_once() {
    let gamma = parse_list("p & q; (p & q) -> p; ~(p & q)", 2).unwrap();
    let c = Closure::new(&gamma, 2);
    let conj = parse("p & q", 2).unwrap();
    let hits = c.formulas().iter().filter(|f| **f == conj).count();
    assert_eq!(hits, 1);
    let id = c.id_of(&conj).unwrap();
    assert_eq!(c.find_bin(BinOp::And, c.id_of(&Formula::var("p")).unwrap(), c.id_of(&Formula::var("q")).unwrap()), Some(id));
}
