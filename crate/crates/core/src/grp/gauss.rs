//! Gauss normal forms `h · ∏ x_γ(ξ_γ)` (product in `gauss_order`) for
//! elements of a congruence subgroup of nilpotent level.

use super::{Chevalley, GroupElement, GroupError, Token};
use crate::nets::IdealFamily;
use crate::ringkit::{Elem, Ideal};

/// `h · ∏_γ x_γ(ξ_γ)` with `coeffs` indexed by root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub torus: Vec<Elem>,
    pub coeffs: Vec<Elem>,
}

impl NormalForm {
    pub fn trivial(g: &Chevalley) -> NormalForm {
        let r = g.ring();
        NormalForm { torus: vec![r.one(); g.rs().rank()], coeffs: vec![r.zero(); g.rs().num_roots()] }
    }

    pub fn word(&self, g: &Chevalley) -> Vec<Token> {
        let mut w = vec![Token::Torus(self.torus.clone())];
        for root in g.rs().gauss_order() {
            if self.coeffs[root] != Elem::ZERO {
                w.push(Token::X { root, xi: self.coeffs[root] });
            }
        }
        w
    }

    pub fn matrix(&self, g: &Chevalley) -> GroupElement {
        g.eval_word(&self.word(g)).expect("torus entries are units")
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RewriteStats {
    pub steps: usize,
    pub initial_inversions: usize,
}

#[derive(Clone, Debug)]
enum Item {
    T(Vec<Elem>),
    X(usize, Elem),
}

fn expand(g: &Chevalley, word: &[Token]) -> Result<Vec<Item>, GroupError> {
    let mut items = Vec::new();
    for t in word {
        match t {
            Token::X { root, xi } => items.push(Item::X(*root, *xi)),
            Token::Torus(chi) => items.push(Item::T(chi.clone())),
            Token::Transvection { root, zeta, eta, xi } => {
                let m = g.transvection_matrix(*zeta, *eta, *xi);
                items.extend(expand(g, &g.phi_alpha_word(*root, m)?)?);
            }
            Token::WeylLift(_) => {
                return Err(GroupError::Precondition("Weyl lifts are not congruence elements".into()))
            }
        }
    }
    Ok(items)
}

fn inversions(items: &[Item]) -> usize {
    let mut count = 0;
    for (i, a) in items.iter().enumerate() {
        for b in &items[i + 1..] {
            match (a, b) {
                (Item::X(x, _), Item::X(y, _)) if x > y => count += 1,
                (Item::X(..), Item::T(_)) => count += 1,
                _ => {}
            }
        }
    }
    count
}

/// Rewrites a word of congruence generators into Gauss normal form.
///
/// With `pre = Some((σ ∩ J, J))`, every root token must carry `ξ ∈ σ_γ ∩ J`
/// and every torus token must lie in `T(R, J)`.
pub fn gauss_rewrite(
    g: &Chevalley,
    word: &[Token],
    pre: Option<(&IdealFamily, &Ideal)>,
    cap: usize,
) -> Result<(NormalForm, RewriteStats), GroupError> {
    let r = g.ring();
    let rs = g.rs();
    let sc = g.sc();
    if let Some((family, radical)) = pre {
        for t in word {
            match t {
                Token::X { root, xi } if !family.get(*root).contains(*xi) => {
                    return Err(GroupError::Precondition(format!(
                        "{} has a coefficient outside its level",
                        g.token_string(t)
                    )))
                }
                Token::Torus(chi) if chi.iter().any(|&c| !radical.contains(r.sub(c, r.one()))) => {
                    return Err(GroupError::Precondition(format!("{} is not congruent", g.token_string(t))))
                }
                _ => {}
            }
        }
    }
    let mut items = expand(g, word)?;
    let mut stats = RewriteStats { steps: 0, initial_inversions: inversions(&items) };
    let is_trivial_torus = |chi: &[Elem]| chi.iter().all(|&c| c == r.one());
    loop {
        let mut changed = false;
        for i in 0..items.len() {
            match &items[i] {
                Item::X(_, xi) if *xi == Elem::ZERO => {
                    items.remove(i);
                    changed = true;
                }
                Item::T(chi) if is_trivial_torus(chi) => {
                    items.remove(i);
                    changed = true;
                }
                _ => {}
            }
            if changed {
                break;
            }
            if i + 1 == items.len() {
                break;
            }
            let replacement: Option<Vec<Item>> = match (&items[i], &items[i + 1]) {
                // x_γ(ξ) h = h x_γ(γ(h)⁻¹ ξ)
                (Item::X(a, xi), Item::T(chi)) => {
                    let v = r.inv(g.char_value(chi, *a)).expect("unit character value");
                    Some(vec![Item::T(chi.clone()), Item::X(*a, r.mul(v, *xi))])
                }
                (Item::T(c1), Item::T(c2)) => {
                    Some(vec![Item::T(c1.iter().zip(c2).map(|(&a, &b)| r.mul(a, b)).collect())])
                }
                (Item::X(a, x1), Item::X(b, x2)) if a == b => Some(vec![Item::X(*a, r.add(*x1, *x2))]),
                (Item::X(a, x1), Item::X(b, x2)) if a > b => {
                    let (a, b, x1, x2) = (*a, *b, *x1, *x2);
                    if b == rs.neg(a) {
                        // x_γ(ξ1) x_{−γ}(ξ2) = x_{−γ}(ξ2 u⁻¹) x_γ(ξ1 u) h_γ(u), u = 1 + ξ1ξ2
                        let u = r.add(r.one(), r.mul(x1, x2));
                        let ui = r.inv(u).ok_or_else(|| {
                            GroupError::Precondition(format!("1 + {}·{} is not a unit", r.name(x1), r.name(x2)))
                        })?;
                        Some(vec![
                            Item::X(b, r.mul(x2, ui)),
                            Item::X(a, r.mul(x1, u)),
                            Item::T(g.h_alpha_char(a, u)?),
                        ])
                    } else {
                        // x_a x_b = [x_a, x_b] x_b x_a
                        let mut out: Vec<Item> = sc
                            .commutator_terms(a, b)
                            .into_iter()
                            .map(|t| {
                                let v = r.mul(
                                    r.int(t.coeff),
                                    r.mul(r.pow(x2, t.i as i64).unwrap(), r.pow(x1, t.j as i64).unwrap()),
                                );
                                Item::X(t.root, v)
                            })
                            .collect();
                        out.push(Item::X(b, x2));
                        out.push(Item::X(a, x1));
                        Some(out)
                    }
                }
                _ => None,
            };
            if let Some(rep) = replacement {
                items.splice(i..i + 2, rep);
                changed = true;
                break;
            }
        }
        if !changed {
            break;
        }
        stats.steps += 1;
        if stats.steps > cap {
            let word: Vec<String> = items
                .iter()
                .map(|it| match it {
                    Item::T(chi) => g.token_string(&Token::Torus(chi.clone())),
                    Item::X(root, xi) => g.token_string(&Token::X { root: *root, xi: *xi }),
                })
                .collect();
            return Err(GroupError::IterationCap { steps: stats.steps, word: word.join(" ") });
        }
    }
    let mut nf = NormalForm::trivial(g);
    for it in items {
        match it {
            Item::T(chi) => nf.torus = chi,
            Item::X(root, xi) => nf.coeffs[root] = xi,
        }
    }
    Ok((nf, stats))
}

/// For each root, a matrix position whose first-order entry in
/// `∏ x_δ(ξ_δ)` is `±ξ_γ` alone.
#[derive(Clone, Debug)]
pub struct ProbeTable {
    probes: Vec<(usize, usize, i64)>,
}

impl ProbeTable {
    pub fn new(g: &Chevalley) -> Result<ProbeTable, GroupError> {
        let sc = g.sc();
        let rs = g.rs();
        let d = g.dim();
        let l = rs.rank();
        let linear: Vec<Vec<i64>> = rs.roots().map(|a| sc.template(a).term(1).to_vec()).collect();
        let mut probes = Vec::new();
        for gamma in rs.roots() {
            let mut candidates: Vec<(usize, usize)> = (0..l).map(|i| (i, sc.e(rs.neg(gamma)))).collect();
            candidates.extend((0..l).map(|i| (sc.e(gamma), i)));
            for b in rs.roots() {
                if let Some(s) = rs.sum(gamma, b) {
                    candidates.push((sc.e(s), sc.e(b)));
                }
            }
            let found = candidates.into_iter().find(|&(row, col)| {
                let p = row * d + col;
                linear[gamma][p].abs() == 1 && rs.roots().all(|delta| delta == gamma || linear[delta][p] == 0)
            });
            match found {
                Some((row, col)) => probes.push((row, col, linear[gamma][row * d + col])),
                None => return Err(GroupError::NoProbe(rs.root_name(gamma))),
            }
        }
        Ok(ProbeTable { probes })
    }

    /// `(row, column, ±1)` for a root.
    pub fn probe(&self, root: usize) -> (usize, usize, i64) {
        self.probes[root]
    }
}

/// Decomposes `x ∈ G(Φ, R, J)` as `h · ∏ x_γ(ξ_γ)` by peeling one power of
/// `J` at a time.
pub fn gauss_extract(
    g: &Chevalley,
    probes: &ProbeTable,
    x: &GroupElement,
    radical: &Ideal,
) -> Result<NormalForm, GroupError> {
    if !g.is_congruent(x, radical) {
        return Err(GroupError::NotCongruent);
    }
    let r = g.ring();
    let rs = g.rs();
    let sc = g.sc();
    let mut current = x.clone();
    let mut word: Vec<Token> = Vec::new();
    let max_levels = r.size() + 1;
    for _ in 0..max_levels {
        if g.is_identity(&current) {
            break;
        }
        let chi: Vec<Elem> = rs.simple_roots().iter().map(|&a| g.entry(&current, sc.e(a), sc.e(a))).collect();
        let coeffs: Vec<(usize, Elem)> = rs
            .gauss_order()
            .into_iter()
            .map(|gamma| {
                let (row, col, c) = probes.probe(gamma);
                let v = g.entry(&current, row, col);
                (gamma, if c == 1 { v } else { r.neg(v) })
            })
            .collect();
        let chi_inv: Vec<Elem> = chi
            .iter()
            .map(|&c| r.inv(c).ok_or_else(|| GroupError::NonUnit(r.name(c).to_string())))
            .collect::<Result<_, _>>()?;
        // P⁻¹ = ∏ reversed x_γ(−ξ_γ) · h⁻¹
        let mut inverse: Vec<Token> =
            coeffs.iter().rev().map(|&(root, xi)| Token::X { root, xi: r.neg(xi) }).collect();
        inverse.push(Token::Torus(chi_inv));
        current = g.mul(&g.eval_word(&inverse)?, &current);
        word.push(Token::Torus(chi));
        word.extend(coeffs.into_iter().map(|(root, xi)| Token::X { root, xi }));
    }
    if !g.is_identity(&current) {
        return Err(GroupError::Precondition("peeling did not terminate; level is not nilpotent".into()));
    }
    let (nf, _) = gauss_rewrite(g, &word, None, 1_000_000)?;
    if nf.matrix(g) != *x {
        return Err(GroupError::Precondition("extracted decomposition does not reproduce the element".into()));
    }
    Ok(nf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::tests::ctx;
    use crate::grp::{congruence_elements, congruence_subgroup};
    use crate::ringkit::RingSpec;

    fn all_pairs_commutator_check(system: &str, spec: RingSpec) {
        let g = ctx(system, spec);
        let r = g.ring().clone();
        let rs = g.rs().clone();
        for a in rs.roots() {
            for b in rs.roots() {
                if a == b || b == rs.neg(a) {
                    continue;
                }
                for xi in r.elements() {
                    for zeta in r.elements() {
                        let lhs = g.commutator(&g.x(a, xi), &g.x(b, zeta));
                        let (nf, _) = gauss_rewrite(&g, &[
                            Token::X { root: a, xi },
                            Token::X { root: b, xi: zeta },
                            Token::X { root: a, xi: r.neg(xi) },
                            Token::X { root: b, xi: r.neg(zeta) },
                        ], None, 10_000)
                        .unwrap();
                        assert_eq!(nf.matrix(&g), lhs, "{system} {} {}", rs.root_name(a), rs.root_name(b));
                    }
                }
            }
        }
    }

    #[test]
    fn commutator_formula_matches_matrices() {
        all_pairs_commutator_check("A2", RingSpec::Zmod { n: 4 });
        all_pairs_commutator_check("B2", RingSpec::Zmod { n: 3 });
        all_pairs_commutator_check("G2", RingSpec::Zmod { n: 4 });
        all_pairs_commutator_check("G2", RingSpec::Zmod { n: 3 });
        all_pairs_commutator_check("C3", RingSpec::Zmod { n: 2 });
    }

    #[test]
    fn opposite_roots_swap() {
        let g = ctx("B2", RingSpec::Zmod { n: 9 });
        let r = g.ring().clone();
        let three = r.int(3);
        for a in g.rs().roots() {
            for k in 0..9 {
                let x1 = r.mul(three, r.int(k));
                for x2 in r.elements() {
                    let word = [Token::X { root: a, xi: x1 }, Token::X { root: g.rs().neg(a), xi: x2 }];
                    let (nf, _) = gauss_rewrite(&g, &word, None, 1000).unwrap();
                    assert_eq!(nf.matrix(&g), g.eval_word(&word).unwrap());
                }
            }
        }
    }

    #[test]
    fn extraction_round_trips_on_a_congruence_group() {
        let g = ctx("A2", RingSpec::Zmod { n: 4 });
        let two = Ideal::generated(g.ring(), &[g.ring().int(2)]);
        let probes = ProbeTable::new(&g).unwrap();
        let elems = congruence_elements(&g, &two);
        let c = congruence_subgroup(&g, &two);
        // 2^8 from the kernel of GL3(Z/4) → GL3(F2), modulo scalars of order 2
        assert_eq!(elems.len(), 256);
        assert_eq!(c.len(), 256);
        for x in &elems {
            let nf = gauss_extract(&g, &probes, x, &two).unwrap();
            assert_eq!(nf.matrix(&g), *x);
        }
    }

    #[test]
    fn probes_exist_everywhere() {
        for sys in ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "D4", "G2"] {
            let g = ctx(sys, RingSpec::Zmod { n: 2 });
            ProbeTable::new(&g).unwrap();
        }
    }

    #[test]
    fn rewrite_rejects_weyl_lifts_and_respects_cap() {
        let g = ctx("A2", RingSpec::Zmod { n: 4 });
        assert!(gauss_rewrite(&g, &[Token::WeylLift(0)], None, 10).is_err());
        let r = g.ring().clone();
        let rs = g.rs();
        let word: Vec<Token> = rs
            .gauss_order()
            .into_iter()
            .rev()
            .map(|root| Token::X { root, xi: r.int(2) })
            .collect();
        assert!(matches!(gauss_rewrite(&g, &word, None, 1), Err(GroupError::IterationCap { .. })));
        let (nf, stats) = gauss_rewrite(&g, &word, None, 10_000).unwrap();
        assert!(stats.initial_inversions > 0);
        assert_eq!(nf.matrix(&g), g.eval_word(&word).unwrap());
    }
}
