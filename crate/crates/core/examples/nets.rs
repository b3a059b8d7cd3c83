// Closing a partial assignment of ideals to a net and testing condition (*).

use std::collections::BTreeMap;
use std::error::Error;
use std::sync::Arc;

use chevnet::chevalg::{check_condition_star, StructureConstants};
use chevnet::nets::{net_close, validate_net};
use chevnet::ringkit::{FiniteRing, RingSpec};
use chevnet::rootsys::parse_root_system;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let rs = parse_root_system("A2")?;
    let sc = StructureConstants::new(&rs);
    let ring = FiniteRing::new(&RingSpec::Zmod { n: 4 })?;
    let delta = rs.parse_subsystem(&["a1", "-a1"])?;

    // only x_a2 gets a generator; closing spreads it along the Δ-orbit
    let a2 = rs.parse_root("a2")?;
    let assignment = BTreeMap::from([(a2, vec![ring.int(2)])]);
    let net = net_close(&delta, &ring, &assignment);
    println!("closed net: {}", net.describe());
    validate_net(&net).map_err(|v| format!("{v:?}"))?;
    assert_eq!(net.sigma(rs.parse_root("a1+a2")?).size(), 2);

    match check_condition_star(&sc, &delta, &ring) {
        Ok(w) => println!("condition (*) holds with {} witnesses", w.len()),
        Err(g) => println!("condition (*) fails at {}", rs.root_name(g)),
    }

    // the long A1 in B2 never satisfies (*)
    let b2 = parse_root_system("B2")?;
    let b2_sc = Arc::new(StructureConstants::new(&b2));
    let long = b2.parse_subsystem(&["a1", "-a1"])?;
    let f3 = FiniteRing::new(&RingSpec::Zmod { n: 3 })?;
    assert!(check_condition_star(&b2_sc, &long, &f3).is_err());
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
