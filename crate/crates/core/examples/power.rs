//! The structure over P(m) against the m-th power of the two-element one.
use rnmat::category::verify_power;
use rnmat::swap::DEFAULT_MAX_CARRIER;

fn main() {
    for m in 1..=3 {
        for n in 1..=2 {
            let r = verify_power(m, n, DEFAULT_MAX_CARRIER).unwrap();
            println!(
                "m = {m}, n = {n}: {} snapshots, bijective {}, projections {}, universal {}, cells differing {}/{}",
                r.carrier, r.bijective, r.projections_are_morphisms, r.universal_property, r.mismatched_cells, r.cells
            );
            if let Some(e) = r.mismatch_example {
                println!("    e.g. {e}");
            }
        }
    }
}
