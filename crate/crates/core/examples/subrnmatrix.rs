//! Substructures induced by subalgebras of P(3).
use rnmat::boolalg::ElementMap;
use rnmat::category::{is_subrnmatrix, is_subrnmatrix_partition};
use rnmat::swap::DEFAULT_MAX_CARRIER;
use rnmat::{Element, FiniteBooleanAlgebra, Subalgebra};

fn main() {
    let p3 = FiniteBooleanAlgebra::powerset(3).unwrap();
    for n in 1..=2 {
        for sub in Subalgebra::enumerate(&p3) {
            let c = is_subrnmatrix_partition(&sub, n, DEFAULT_MAX_CARRIER).unwrap();
            let blocks: Vec<String> = (0..sub.block_count()).map(|i| p3.format(sub.block(i))).collect();
            println!("n = {n}, blocks {}: sub {}", blocks.join(" "), c.sub);
        }
    }

    let p2 = FiniteBooleanAlgebra::powerset(2).unwrap();
    let missing = ElementMap::from_atom_images(p2, p3, &[Element(0b001), Element(0b010)]).unwrap();
    let c = is_subrnmatrix(&missing, 1, DEFAULT_MAX_CARRIER).unwrap();
    println!("P(2) into P(3) missing an atom: sub {}, {}", c.sub, c.reason.unwrap_or_default());
}
