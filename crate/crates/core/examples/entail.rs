//! Deciding consequence, with countermodels.
use rnmat::decide::Decider;
use rnmat::formula::parse_list;
use rnmat::{parse, FiniteBooleanAlgebra, SwapStructure};

fn show(s: &SwapStructure, gamma: &str, phi: &str) {
    let n = s.n();
    let premises = parse_list(gamma, n).unwrap();
    let conclusion = parse(phi, n).unwrap();
    let v = Decider::new(s, 10_000_000).entails(&premises, &conclusion).unwrap();
    let verdict = if v.entailed { "entailed" } else { "not entailed" };
    println!("C_{n} over {}: {gamma} ⊨ {phi}: {verdict} ({} rows)", s.algebra(), v.rows_explored);
    if let Some(cm) = v.countermodel {
        for e in cm.dump() {
            println!("    {:<16} ({})", e.formula, e.snapshot.join(", "));
        }
    }
}

fn main() {
    for n in 1..=2 {
        let s = SwapStructure::two(n).unwrap();
        show(&s, "p; ~p", "q");
        show(&s, &format!("p; ~p; p^({n})"), "q");
    }
    let s = SwapStructure::two(1).unwrap();
    show(&s, "", "~(p & ~p)");
    show(&s, "", "p | ~p");

    let b = FiniteBooleanAlgebra::powerset(2).unwrap();
    let s = SwapStructure::new(b, 2).unwrap();
    show(&s, "~~p", "p");
    show(&s, "p", "~~p");
}
