// Root systems, Weyl groups and the root order used by Gauss decompositions.
//
// ```bash
// cargo run --example root_systems
// ```

use std::error::Error;

use chevnet::rootsys::parse_root_system;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for name in ["A2", "B2", "G2", "A3"] {
        let rs = parse_root_system(name)?;
        let weyl = rs.weyl_group();
        println!("{name}: {} roots, |W| = {}", rs.num_roots(), weyl.len());
        assert_eq!(rs.num_roots() % 2, 0);

        let order: Vec<String> = rs.gauss_order().into_iter().map(|r| rs.root_name(r)).collect();
        println!("  gauss order: {}", order.join(" "));

        let highest = rs.positive_roots().max_by_key(|&r| rs.height(r)).unwrap();
        println!("  highest root {} of height {}", rs.root_name(highest), rs.height(highest));
    }

    // a subsystem and its irreducible pieces
    let rs = parse_root_system("B3")?;
    let delta = rs.parse_subsystem(&["a1", "-a1", "a3", "-a3"])?;
    for c in delta.irreducible_components() {
        let names: Vec<String> = c.roots.iter().map(|&r| rs.root_name(r)).collect();
        println!("B3 component {{{}}} (A1: {})", names.join(", "), c.is_a1);
    }
    assert_eq!(delta.irreducible_components().len(), 2);

    // a reflection swaps a root with its negative
    let a1 = rs.simple(0);
    assert_eq!(rs.reflection(a1).apply(a1), rs.neg(a1));
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
