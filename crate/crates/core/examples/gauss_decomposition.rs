// Rewriting words into the normal form `h · ∏ x_γ(ξ_γ)` and reading it back off a matrix.

use std::error::Error;
use std::sync::Arc;

use chevnet::chevalg::StructureConstants;
use chevnet::grp::{gauss_extract, gauss_rewrite, Chevalley, ProbeTable, Token};
use chevnet::ringkit::{FiniteRing, RingSpec};
use chevnet::rootsys::parse_root_system;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let rs = parse_root_system("B2")?;
    let sc = Arc::new(StructureConstants::new(&rs));
    let ring = FiniteRing::new(&RingSpec::Zmod { n: 9 })?;
    let g = Chevalley::new(&sc, &ring);
    let radical = ring.jacobson_radical();

    let (a1, a2) = (rs.simple(0), rs.simple(1));
    let three = ring.int(3);
    let word = vec![
        Token::X { root: a1, xi: three },
        Token::X { root: rs.neg(a2), xi: ring.int(6) },
        Token::X { root: a2, xi: three },
        Token::X { root: rs.neg(a1), xi: three },
    ];
    let (nf, stats) = gauss_rewrite(&g, &word, None, 10_000)?;
    println!("{}", g.word_string(&word));
    println!("  = {}  ({} rewriting steps)", g.word_string(&nf.word(&g)), stats.steps);
    assert_eq!(nf.matrix(&g), g.eval_word(&word)?);

    let probes = ProbeTable::new(&g)?;
    let extracted = gauss_extract(&g, &probes, &g.eval_word(&word)?, &radical)?;
    assert_eq!(extracted, nf);
    println!("matrix extraction agrees with the rewritten word");
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
