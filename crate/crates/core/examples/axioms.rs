//! Every axiom instance over p, q, r is valid.
use std::time::Instant;

use rnmat::decide::{validate_axioms, Instantiation};
use rnmat::hilbert::{dc_schema, schemas};
use rnmat::{FiniteBooleanAlgebra, Limits};

fn main() {
    let n = 1;
    for s in schemas(n) {
        println!("{:<5} {}", s.name(), s.template());
    }
    for b in [FiniteBooleanAlgebra::two(), FiniteBooleanAlgebra::powerset(2).unwrap()] {
        let t = Instant::now();
        let r = validate_axioms(n, &b, &Instantiation::pqr(), &[dc_schema(n)], &Limits::default()).unwrap();
        println!(
            "C_{n} over {b}: {} instances, {} failures, {} rows, {:.2?}",
            r.instances,
            r.failures.len(),
            r.rows_explored,
            t.elapsed()
        );
    }
}
