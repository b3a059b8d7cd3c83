// Net subgroups E(σ), Ê(σ), S(σ) and G(σ) of the adjoint group A2 over Z/4.

use std::collections::BTreeMap;
use std::error::Error;
use std::sync::Arc;

use chevnet::chevalg::StructureConstants;
use chevnet::grp::{
    e_hat_sigma, e_sigma, full_group, g_sigma, quotient_structure, s_sigma, Chevalley, LocalFactors, DEFAULT_BUDGET,
};
use chevnet::nets::net_close;
use chevnet::ringkit::{FiniteRing, RingSpec};
use chevnet::rootsys::parse_root_system;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let rs = parse_root_system("A2")?;
    let sc = Arc::new(StructureConstants::new(&rs));
    let ring = FiniteRing::new(&RingSpec::Zmod { n: 4 })?;
    let g = Chevalley::new(&sc, &ring);

    let delta = rs.parse_subsystem(&["a1", "-a1"])?;
    let two = vec![ring.int(2)];
    let assignment: BTreeMap<usize, Vec<_>> = rs.roots().filter(|&r| !delta.contains(r)).map(|r| (r, two.clone())).collect();
    let net = net_close(&delta, &ring, &assignment);

    let full = full_group(&g, DEFAULT_BUDGET)?;
    let e = e_sigma(&g, &net, DEFAULT_BUDGET)?;
    let e_hat = e_hat_sigma(&g, &net, DEFAULT_BUDGET)?;
    let s = s_sigma(&g, &net, &full);
    let gs = g_sigma(&g, &net, &LocalFactors::new(&g), DEFAULT_BUDGET)?;
    println!("|G| = {}, |E(σ)| = {}, |Ê(σ)| = {}, |S(σ)| = {}, |G(σ)| = {}", full.len(), e.len(), e_hat.len(), s.len(), gs.len());

    let a2 = rs.parse_root("a2")?;
    assert!(e.contains(&g.x(a2, ring.int(2))));
    assert!(!e.contains(&g.x(a2, ring.int(1))));
    assert!(e.is_subset(&e_hat) && e_hat.is_subset(&s));

    let q = quotient_structure(&g, &s, &e_hat)?;
    println!("S(σ)/Ê(σ): index {}, normal {}, abelian {}", q.index, q.is_normal, q.is_abelian);
    assert!(q.is_normal);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
