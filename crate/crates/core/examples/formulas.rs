//! Parsing, derived operators and closures.
use rnmat::{parse, Closure};

fn main() {
    let n = 2;
    let f = parse("p^(2) -> (p -> (~p -> q))", n).unwrap();
    println!("parsed:  {f}");
    println!("unicode: {}", f.to_unicode_string());
    println!("plain:   {}", f.to_plain_string());
    println!("size {} depth {}", f.size(), f.depth());

    let p = parse("p", n).unwrap();
    println!("p°     = {}", p.circle().to_plain_string());
    println!("p^(2)  = {}", p.bounded_power(2));
    println!("!p     = {}", p.strong_neg(n));

    // every subformula gets its ^n tower
    let c = Closure::new([&parse("p & ~q", n).unwrap()], n);
    println!("closure of p & ~q for n = {n}: {} formulas", c.len());
    for (id, g) in c.formulas().iter().enumerate() {
        let mark = if c.is_core(id) { "*" } else { " " };
        println!("  {mark} {id:>2}  {g}");
    }

    match parse("p & -> q", n) {
        Ok(_) => unreachable!(),
        Err(e) => println!("error: {e}"),
    }
}
