// Finite commutative rings: units, ideals, quotients and local decomposition.

use std::error::Error;

use chevnet::ringkit::{FiniteRing, Ideal, RingSpec};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let z12 = FiniteRing::new(&RingSpec::Zmod { n: 12 })?;
    println!("{}: {} units, local: {}", z12.label(), z12.units().len(), z12.is_local());

    let dec = z12.local_decomposition();
    for f in &dec.factors {
        println!("  factor {} (idempotent {})", f.ring().label(), z12.name(f.idempotent));
    }
    let seven = z12.int(7);
    let parts = dec.project(seven);
    assert_eq!(dec.reassemble(&parts), seven);

    let dual = FiniteRing::new(&RingSpec::Polyquot { p: 2, modulus: "t^2".into() })?;
    let j = dual.jacobson_radical();
    let names: Vec<&str> = j.elements().map(|a| dual.name(a)).collect();
    println!("{}: radical {{{}}}", dual.label(), names.join(", "));

    let q = dual.quotient(&j)?;
    println!("  quotient by the radical is {} (field: {})", q.target.label(), q.target.is_field());
    assert_eq!(q.kernel(), j);

    let z8 = FiniteRing::new(&RingSpec::Zmod { n: 8 })?;
    let two = Ideal::parse(&z8, &["2"])?;
    assert_eq!(two.power(3), Ideal::zero(&z8));
    println!("{}: (2) has {} elements and (2)^3 = 0", z8.label(), two.size());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
