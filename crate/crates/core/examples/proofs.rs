//! Checking Hilbert derivations, and comparing them with the semantics.
use rnmat::formula::parse_list;
use rnmat::hilbert::{check_derivation, parse_corpus, soundness_harness, Derivation};
use rnmat::{FiniteBooleanAlgebra, Limits};

const PROOF: &str = "
1. p -> ((p -> p) -> p) ; ax Ax1
2. (p -> ((p -> p) -> p)) -> ((p -> (p -> p)) -> (p -> p)) ; ax Ax2
3. (p -> (p -> p)) -> (p -> p) ; mp 1 2
4. p -> (p -> p) ; ax Ax1
5. p -> p ; mp 4 3
";

fn main() {
    let d = Derivation::parse(PROOF, 1).unwrap();
    println!("proves {}", check_derivation(&d, &[], 1).unwrap());

    let bad = Derivation::parse("1. q ; premise\n2. p -> q ; mp 1 1\n", 1).unwrap();
    let gamma = parse_list("q", 1).unwrap();
    println!("broken: {}", check_derivation(&bad, &gamma, 1).unwrap_err());

    let corpus = include_str!("../tests/data/derivations.txt");
    let entries = parse_corpus(corpus);
    let algebras = [FiniteBooleanAlgebra::two(), FiniteBooleanAlgebra::powerset(2).unwrap()];
    let r = soundness_harness(&entries, &[1, 2], &algebras, &Limits::default()).unwrap();
    println!("{} entries, {} checks, {} discrepancies", entries.len(), r.checks.len(), r.discrepancies);
}
