// Chevalley basis structure constants and the commutator formula they induce.

use std::error::Error;
use std::sync::Arc;

use chevnet::chevalg::StructureConstants;
use chevnet::rootsys::parse_root_system;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let rs = parse_root_system("B2")?;
    let sc = Arc::new(StructureConstants::new(&rs));
    print!("{}", sc.dump_table());
    assert!(sc.jacobi_violation().is_none());

    // [x_a1(ξ), x_a2(ζ)] in terms of the roots a1+a2 and a1+2a2
    let (a1, a2) = (rs.simple(0), rs.simple(1));
    for t in sc.commutator_terms(a1, a2) {
        println!(
            "[x_{}(ξ), x_{}(ζ)] contributes x_{}({} ζ^{} ξ^{})",
            rs.root_name(a1),
            rs.root_name(a2),
            rs.root_name(t.root),
            t.coeff,
            t.i,
            t.j
        );
    }

    // x_α(ξ) is a polynomial in ξ of degree 2 (roots of one length) or 3 (short roots of G2)
    let g2 = parse_root_system("G2")?;
    let sc2 = Arc::new(StructureConstants::new(&g2));
    let degrees: Vec<usize> = g2.simple_roots().iter().map(|&r| sc2.template(r).degree()).collect();
    println!("G2 generator degrees for simple roots: {degrees:?}");
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
