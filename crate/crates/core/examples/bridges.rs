//! From a B-valuation to a restricted valuation and back, and a
//! nontrivial point over P(a,b).
use std::collections::HashMap;

use rnmat::formula::parse_list;
use rnmat::valuation::{bridge_domain, generate_nontrivial_bvaluation, nontriviality, strong_negation_laws};
use rnmat::{parse, Element, FiniteBooleanAlgebra};

fn main() {
    let n = 1;
    let b = FiniteBooleanAlgebra::parse("P(a,b)").unwrap();
    let gamma = parse_list("p -> q; p & !p; p | !p", n).unwrap();
    let (inner, outer) = bridge_domain(&gamma, n);

    // b(p) = {a}, b(~p) = 1: p and ~p overlap on {a}
    let a = b.parse_element("{a}").unwrap();
    let seeds = HashMap::from([
        ("p".to_string(), (a, b.one())),
        ("q".to_string(), (Element(0b10), Element(0b01))),
    ]);
    let bv = generate_nontrivial_bvaluation(&b, n, &seeds, outer).unwrap();
    println!("B-valuation on {} formulas, clauses hold: {}", bv.closure().len(), bv.check().ok());

    let nu = bv.to_valuation_on(inner).unwrap();
    println!("restricted valuation, clauses hold: {}", nu.check().ok());
    for e in nu.dump() {
        println!("    {:<28} ({})", e.formula, e.snapshot.join(", "));
    }

    let back = nu.to_bvaluation();
    let same = back.closure().formulas().iter().all(|f| back.value_of(f) == bv.value_of(f));
    println!("b -> nu -> b is the identity: {same}");

    let w = nontriviality(&bv, &nu);
    println!("{w:?}");
    let laws = strong_negation_laws(&nu, &parse("p", n).unwrap()).unwrap();
    println!(
        "p & !p = {}, p | !p = {}",
        laws.contradiction.format(&b),
        laws.excluded_middle.format(&b)
    );
}
