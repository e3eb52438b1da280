//! Morphisms between swap structures and the functors to and from
//! Boolean algebras.
use rnmat::boolalg::enumerate_homs;
use rnmat::category::{is_morphism, lift_hom, sigma_hom_violation, verify_iso_roundtrip, SnapshotMap};
use rnmat::swap::DEFAULT_MAX_CARRIER;
use rnmat::{FiniteBooleanAlgebra, SwapStructure};

fn main() {
    let n = 1;
    let p1 = FiniteBooleanAlgebra::powerset(1).unwrap();
    let p2 = FiniteBooleanAlgebra::powerset(2).unwrap();
    let (s1, s2) = (SwapStructure::new(p1.clone(), n).unwrap(), SwapStructure::new(p2.clone(), n).unwrap());

    for g in enumerate_homs(&p2, &p1) {
        let h = lift_hom(&g, n).tabulate(&s2, &s1).unwrap();
        let strict = sigma_hom_violation(&h, &s2, &s1).is_none();
        println!("atom map {:?}: accepted {}, strict homomorphism {strict}", g.atom_map(), is_morphism(&h, &s2, &s1).is_ok());
    }

    // T and t0 swapped: not a morphism
    let (t, t0) = (s1.id(&s1.top()).unwrap(), s1.id(&s1.t(0)).unwrap());
    let h = SnapshotMap::from_fn(&s1, &s1, |z| {
        let id = s1.id(z).unwrap();
        let id = if id == t { t0 } else if id == t0 { t } else { id };
        s1.get(id).clone()
    })
    .unwrap();
    println!("swap T/t0 over {} snapshots: {}", s1.len(), sigma_hom_violation(&h, &s1, &s1).unwrap());

    for n in 1..=2 {
        let r = verify_iso_roundtrip(&[p1.clone(), p2.clone()], n, DEFAULT_MAX_CARRIER).unwrap();
        println!(
            "n = {n}: {} pairs, {} compositions, round trips ok: {}",
            r.pairs.len(),
            r.compositions,
            r.ok()
        );
    }
}
