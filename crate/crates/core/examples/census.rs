//! Snapshot counts over P(m): closed form against enumeration.
use rnmat::swap::{verify_census, DEFAULT_MAX_CARRIER};
use rnmat::FiniteBooleanAlgebra;

fn main() {
    println!("{:>2} {:>2} {:>6} {:>6} {:>4}  strata by meet order", "m", "n", "total", "desig", "bool");
    for m in 1..=3 {
        let b = FiniteBooleanAlgebra::powerset(m).unwrap();
        for n in 1..=4 {
            let r = verify_census(&b, n, DEFAULT_MAX_CARRIER).unwrap();
            assert!(r.matches);
            println!(
                "{m:>2} {n:>2} {:>6} {:>6} {:>4}  {:?}",
                r.total, r.designated, r.boolean, r.by_meet_order
            );
        }
    }
}
