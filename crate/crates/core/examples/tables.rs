//! The multioperation tables.
use rnmat::swap::{table, TableOp};
use rnmat::{FiniteBooleanAlgebra, SwapStructure};

fn main() {
    let s = SwapStructure::two(2).unwrap();
    println!("{s}");
    for op in [TableOp::Neg, TableOp::And, TableOp::Or, TableOp::Imp] {
        println!("{}", table(&s, op));
    }

    // over P(a) the snapshots are no longer two-valued
    let b = FiniteBooleanAlgebra::parse("P(a,b)").unwrap();
    let s = SwapStructure::new(b, 1).unwrap();
    println!("{s}: {} snapshots", s.len());
    println!("{}", table(&s, TableOp::Neg));
}
