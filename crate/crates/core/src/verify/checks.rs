use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{CheckKind, Context, Outcome, Witness};
use crate::grp::{
    congruence_elements, e_family_gens, e_hat_gens, e_hat_relative, e_hat_relative_generated, e_sigma_gens,
    full_group, gauss_extract, gauss_rewrite, normal_closure, quotient_structure, s_sigma, torus_congruence,
    torus_generators, torus_times_e, w_bar_sigma, Chevalley, FiberedSubgroup, GroupElement, GroupError,
    NormalForm, ProbeTable, Subgroup, Token,
};
use crate::nets::{sigma_from_closed_set, IdealFamily, Net};
use crate::ringkit::{Ideal, RingHom};
use crate::rootsys::WeylElement;

/// Conjugators up to this many elements are used in full, beyond it only
/// generators.
const FULL_CONJUGATION_LIMIT: usize = 10_000;
const GAUSS_WORDS: usize = 100;
const GAUSS_WORD_LEN: usize = 10;
const SAMPLE_SIZE: usize = 20_000;

pub(super) fn run(ctx: &Context, kind: CheckKind) -> Outcome {
    let result = match kind {
        CheckKind::Jacobson => jacobson(ctx),
        CheckKind::Local => local(ctx),
        CheckKind::Normal => normal(ctx),
        CheckKind::FiniteIndex => finite_index(ctx),
        CheckKind::SemilocalG => semilocal_g(ctx),
        CheckKind::StandardCommutator => standard_commutator(ctx),
        CheckKind::NilpotentByAbelian => nilpotent_by_abelian(ctx),
        CheckKind::DecomposeField => decompose_field(ctx),
        CheckKind::RelativeGenerators => relative_generators(ctx),
        CheckKind::GaussRewrite => gauss_words(ctx),
    };
    match result {
        Ok(outcome) => outcome,
        Err(GroupError::BudgetExceeded { partial, budget }) => {
            Outcome::skipped(format!("budget {budget} exceeded (partial size {partial})"))
        }
        Err(e) => Outcome::fail("none", Witness { description: format!("internal error: {e}"), matrix: None, word: None }),
    }
}

type CheckResult = Result<Outcome, GroupError>;

fn witness(g: &Chevalley, description: impl Into<String>, x: &GroupElement) -> Witness {
    Witness { description: description.into(), matrix: Some(g.format(x)), word: None }
}

fn precondition(e: impl std::fmt::Display) -> GroupError {
    GroupError::Precondition(e.to_string())
}

/// `|T(R, I)| · |I|^|Φ|`, saturating.
fn congruence_size(g: &Chevalley, ideal: &Ideal) -> usize {
    let tori = torus_congruence(g.ring(), g.rs().rank(), ideal).len();
    (0..g.rs().num_roots()).fold(tori, |acc, _| acc.saturating_mul(ideal.size()))
}

/// Seeded random Gauss products `h ∏ x_γ(ξ_γ)` with `h ∈ T(R, I)`, `ξ_γ ∈ I`.
fn sample_congruence(g: &Chevalley, ideal: &Ideal, n: usize, seed: u64) -> Vec<GroupElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tori = torus_congruence(g.ring(), g.rs().rank(), ideal);
    let members: Vec<_> = ideal.elements().collect();
    let order = g.rs().gauss_order();
    let words: Vec<Vec<Token>> = (0..n)
        .map(|_| {
            let mut w = vec![Token::Torus(tori[rng.gen_range(0..tori.len())].clone())];
            for &root in &order {
                w.push(Token::X { root, xi: members[rng.gen_range(0..members.len())] });
            }
            w
        })
        .collect();
    let mut out: Vec<GroupElement> = words.par_iter().map(|w| g.eval_word(w).unwrap()).collect();
    out.par_sort();
    out.dedup();
    out
}

/// `S(σ) ∩ G(R, I)` for `I` in the radical: exhaustive over the Gauss
/// products when they fit the budget, sampled otherwise.
fn relative_stabilizer(ctx: &Context, ideal: &Ideal) -> (Vec<GroupElement>, Option<usize>) {
    let s = &ctx.setup;
    let g = &s.group;
    let (candidates, sampled) = if congruence_size(g, ideal) <= s.budget {
        (congruence_elements(g, ideal), None)
    } else {
        (sample_congruence(g, ideal, SAMPLE_SIZE, s.seed), Some(SAMPLE_SIZE))
    };
    let kept = candidates.into_par_iter().filter(|x| g.stabilizes(x, &s.net)).collect();
    (kept, sampled)
}

fn torus_in_level(g: &Chevalley, chi: &[crate::ringkit::Elem], level: &Ideal) -> bool {
    let r = g.ring();
    chi.iter().all(|&c| level.contains(r.sub(c, r.one())))
}

fn coefficients_in_family(g: &Chevalley, nf: &NormalForm, family: &IdealFamily) -> Option<usize> {
    g.rs().roots().find(|&a| !family.get(a).contains(nf.coeffs[a]))
}

/// Set equality of two sorted element lists, with the first difference.
fn compare_sets(
    g: &Chevalley,
    left: &[GroupElement],
    left_name: &str,
    right: &HashSet<GroupElement>,
    right_sorted: &[GroupElement],
    right_name: &str,
) -> Option<Witness> {
    let left_set: HashSet<&GroupElement> = left.iter().collect();
    if let Some(x) = left.iter().find(|x| !right.contains(*x)) {
        return Some(witness(g, format!("in {left_name} but not in {right_name}"), x));
    }
    right_sorted
        .iter()
        .find(|x| !left_set.contains(x))
        .map(|x| witness(g, format!("in {right_name} but not in {left_name}"), x))
}

fn subgroup_equality(g: &Chevalley, a: &Subgroup, a_name: &str, b: &Subgroup, b_name: &str) -> Option<Witness> {
    if let Some(x) = a.first_outside(b) {
        return Some(witness(g, format!("in {a_name} but not in {b_name}"), x));
    }
    b.first_outside(a).map(|x| witness(g, format!("in {b_name} but not in {a_name}"), x))
}

/// `{t w : t ∈ TE, w ∈ W}` as a sorted list and a set.
fn product_with(g: &Chevalley, te: &Subgroup, w: &Subgroup) -> (Vec<GroupElement>, HashSet<GroupElement>) {
    let set: HashSet<GroupElement> = w
        .elements()
        .par_iter()
        .flat_map_iter(|wi| te.elements().iter().map(move |t| g.mul(t, wi)))
        .collect();
    let mut sorted: Vec<GroupElement> = set.iter().cloned().collect();
    sorted.par_sort();
    (sorted, set)
}

fn jacobson(ctx: &Context) -> CheckResult {
    let s = &ctx.setup;
    let g = &s.group;
    let j = s.ring.jacobson_radical();
    if j.is_zero() {
        return Ok(Outcome::pass("exhaustive").with_reason("J = 0"));
    }
    let family = s.net.intersect_ideal(&j).map_err(precondition)?;
    let (lhs, sampled) = relative_stabilizer(ctx, &j);
    let mut gens: Vec<GroupElement> = torus_congruence(&s.ring, s.rs.rank(), &j)
        .iter()
        .map(|chi| g.torus(chi))
        .collect::<Result<_, _>>()?;
    gens.retain(|t| !g.is_identity(t));
    gens.extend(e_family_gens(g, &family));
    let rhs = Subgroup::generate(g, &gens, s.budget)?;
    ctx.record_size("S(σ)∩G(R,J)", lhs.len());
    ctx.record_size("T(R,J)E(σ∩J)", rhs.len());
    let coverage = sampled.map_or("exhaustive".to_string(), |n| format!("sampled({n})"));
    if let Some(x) = lhs.iter().find(|x| !rhs.contains(x)) {
        return Ok(Outcome::fail(coverage, witness(g, "in S(σ)∩G(R,J) but not in T(R,J)E(σ∩J)", x)));
    }
    let probes = ProbeTable::new(g)?;
    let bad = lhs.par_iter().find_map_first(|x| match gauss_extract(g, &probes, x, &j) {
        Err(e) => Some(witness(g, format!("extraction failed: {e}"), x)),
        Ok(nf) if !torus_in_level(g, &nf.torus, &j) => Some(witness(g, "torus part outside T(R,J)", x)),
        Ok(nf) => coefficients_in_family(g, &nf, &family)
            .map(|a| witness(g, format!("coefficient at {} outside σ∩J", s.rs.root_name(a)), x)),
    });
    Ok(match bad {
        Some(w) => Outcome::fail(coverage, w),
        None => Outcome::pass(coverage),
    })
}

fn local(ctx: &Context) -> CheckResult {
    let s = &ctx.setup;
    let g = &s.group;
    if !s.ring.is_local() {
        return Ok(Outcome::skipped("ring not local"));
    }
    let stab = ctx.s()?;
    let te = ctx.te()?;
    let w = ctx.w_bar_sigma()?;
    let (sorted, set) = product_with(g, te, w);
    ctx.record_size("T·E(σ)·W̄(Φ,σ)", sorted.len());
    Ok(match compare_sets(g, stab.elements(), "S(σ)", &set, &sorted, "T·E(σ)·W̄(Φ,σ)") {
        Some(wit) => Outcome::fail("exhaustive", wit),
        None => Outcome::pass("exhaustive"),
    })
}

fn normal(ctx: &Context) -> CheckResult {
    let g = &ctx.setup.group;
    let stab = ctx.s()?;
    let e_hat = ctx.e_hat()?;
    if let Some(x) = e_hat.first_outside(stab) {
        return Ok(Outcome::fail("exhaustive", witness(g, "in Ê(σ) but not in S(σ)", x)));
    }
    let (conjugators, coverage) = if stab.len() <= FULL_CONJUGATION_LIMIT {
        (stab.elements(), "exhaustive")
    } else {
        (stab.gens(), "generators")
    };
    Ok(match e_hat.normality_witness(g, conjugators) {
        Some((h, n)) => {
            let mut wit = witness(g, "conjugate of an Ê(σ) generator leaves Ê(σ); matrix is the conjugator", &h);
            wit.word = Some(format!("generator {}", g.format(&n)));
            Outcome::fail(coverage, wit)
        }
        None => Outcome::pass(coverage),
    })
}

/// One local factor `R_P` with its net and the groups needed for `ψ`.
struct FactorData {
    group: Arc<Chevalley>,
    hom: Option<RingHom>,
    s: Subgroup,
    te: Subgroup,
    w: Subgroup,
    levi: Vec<WeylElement>,
    /// `S(F_P σ)` element -> canonical coset of `W(Δ'_P ∩ −Δ'_P)`.
    psi: HashMap<GroupElement, WeylElement>,
}

fn coset_key(w: &WeylElement, levi: &[WeylElement]) -> WeylElement {
    levi.iter().map(|u| w.compose(u)).min().expect("levi contains the identity")
}

fn factor_data(ctx: &Context) -> Result<Result<Vec<FactorData>, Witness>, GroupError> {
    let s = &ctx.setup;
    let factors = ctx.factors();
    let mut out = Vec::new();
    for (k, factor) in factors.decomposition.factors.iter().enumerate() {
        let delta_prime = s.net.delta_prime(&factor.maximal).map_err(precondition)?;
        let sym = delta_prime.symmetric_part();
        let reflections: Vec<WeylElement> = sym.iter().map(|&a| s.rs.reflection(a)).collect();
        let levi = WeylElement::closure(s.rs.num_roots(), &reflections);
        let (group, hom, stab, te, w) = if factors.len() == 1 {
            (s.group.clone(), None, ctx.s()?.clone(), ctx.te()?.clone(), ctx.w_bar_sigma()?.clone())
        } else {
            let group = factors.contexts[k].clone();
            let net: Net = s.net.image(&factor.projection).map_err(precondition)?;
            let full = full_group(&group, s.budget)?;
            let stab = s_sigma(&group, &net, &full);
            let te = torus_times_e(&group, &net, s.budget)?;
            let w = w_bar_sigma(&group, &net, s.budget)?;
            (group, Some(factor.projection.clone()), stab, te, w)
        };
        let w_inv: Vec<(GroupElement, GroupElement)> =
            w.elements().iter().map(|x| (x.clone(), group.inverse(x))).collect();
        // W̄(Φ, F_P σ) ∩ T E(F_P σ) is the preimage of W(Δ'_P ∩ −Δ'_P)
        for (x, _) in &w_inv {
            let perm = group.root_permutation(x).ok_or_else(|| precondition("W̄ element is not monomial"))?;
            if te.contains(x) != levi.contains(&perm) {
                let desc = format!("factor {k}: W̄ element disagrees with W(Δ'∩−Δ') on membership in T·E");
                return Ok(Err(witness(&group, desc, x)));
            }
        }
        let table: Vec<(GroupElement, Option<WeylElement>)> = stab
            .elements()
            .par_iter()
            .map(|x| {
                let found = w_inv
                    .iter()
                    .find(|(_, wi)| te.contains(&group.mul(x, wi)))
                    .and_then(|(wx, _)| group.root_permutation(wx))
                    .map(|perm| coset_key(&perm, &levi));
                (x.clone(), found)
            })
            .collect();
        if let Some((x, _)) = table.iter().find(|(_, v)| v.is_none()) {
            return Ok(Err(witness(&group, format!("factor {k}: element of S outside T·E·W̄"), x)));
        }
        let psi = table.into_iter().map(|(x, v)| (x, v.unwrap())).collect();
        out.push(FactorData { group, hom, s: stab, te, w, levi, psi });
    }
    Ok(Ok(out))
}

fn finite_index(ctx: &Context) -> CheckResult {
    let s = &ctx.setup;
    let g = &s.group;
    let parts = match factor_data(ctx)? {
        Ok(p) => p,
        Err(wit) => return Ok(Outcome::fail("exhaustive", wit)),
    };
    let stab = ctx.s()?;
    let gs = ctx.g_sigma()?;
    let psi = |x: &GroupElement| -> Option<Vec<WeylElement>> {
        parts
            .iter()
            .map(|p| {
                let y = match &p.hom {
                    Some(h) => g.map(x, h, &p.group),
                    None => x.clone(),
                };
                p.psi.get(&y).cloned()
            })
            .collect()
    };
    let values: Vec<Option<Vec<WeylElement>>> = stab.elements().par_iter().map(psi).collect();
    if let Some(i) = values.iter().position(Option::is_none) {
        return Ok(Outcome::fail("exhaustive", witness(g, "projection outside the factor S(F_P σ)", &stab.elements()[i])));
    }
    let values: HashMap<&GroupElement, Vec<WeylElement>> =
        stab.elements().iter().zip(values).map(|(x, v)| (x, v.unwrap())).collect();
    let trivial: Vec<WeylElement> = parts.iter().map(|_| WeylElement::identity(s.rs.num_roots())).collect();
    let trivial: Vec<WeylElement> = trivial.iter().zip(&parts).map(|(w, p)| coset_key(w, &p.levi)).collect();

    // kernel of ψ equals G(σ)
    let kernel: Vec<GroupElement> = stab.elements().iter().filter(|x| values[x] == trivial).cloned().collect();
    let kernel_set: HashSet<GroupElement> = kernel.iter().cloned().collect();
    if let Some(x) = gs.elements().iter().find(|x| !kernel_set.contains(*x)) {
        return Ok(Outcome::fail("exhaustive", witness(g, "in G(σ) but ψ is nontrivial", x)));
    }
    if let Some(x) = kernel.iter().find(|x| !gs.contains(x)) {
        return Ok(Outcome::fail("exhaustive", witness(g, "ψ is trivial but not in G(σ)", x)));
    }
    // multiplicative on generators times elements
    let compose = |a: &[WeylElement], b: &[WeylElement]| -> Vec<WeylElement> {
        a.iter().zip(b).zip(&parts).map(|((x, y), p)| coset_key(&x.compose(y), &p.levi)).collect()
    };
    let broken = stab.gens().iter().find_map(|a| {
        stab.elements().par_iter().find_map_first(|x| {
            let ax = g.mul(a, x);
            (values[&ax] != compose(&values[a], &values[x])).then_some(ax)
        })
    });
    if let Some(x) = broken {
        return Ok(Outcome::fail("exhaustive", witness(g, "ψ is not multiplicative at this product", &x)));
    }
    // constant on G(σ)-cosets
    let moved = gs.gens().iter().find_map(|h| {
        stab.elements()
            .par_iter()
            .find_map_first(|x| (values[&g.mul(x, h)] != values[x]).then(|| x.clone()))
    });
    if let Some(x) = moved {
        return Ok(Outcome::fail("exhaustive", witness(g, "ψ changes along a G(σ)-coset", &x)));
    }
    // injective on S(σ)/G(σ)
    let distinct: HashSet<&Vec<WeylElement>> = values.values().collect();
    let index = stab.len() / gs.len();
    ctx.record_size("S(σ)/G(σ)", index);
    ctx.record_size("im ψ", distinct.len());
    for (k, p) in parts.iter().enumerate() {
        ctx.record_size(&format!("factor {k}: W(Δ'∩−Δ')"), p.levi.len());
        ctx.record_size(&format!("factor {k}: W̄(Φ,F_P σ)"), p.w.len());
        ctx.record_size(&format!("factor {k}: S(F_P σ)"), p.s.len());
        ctx.record_size(&format!("factor {k}: T·E(F_P σ)"), p.te.len());
    }
    if stab.len() % gs.len() != 0 || distinct.len() != index {
        let wit = Witness {
            description: format!("|S(σ)/G(σ)| = {} but ψ takes {} values", index, distinct.len()),
            matrix: None,
            word: None,
        };
        return Ok(Outcome::fail("exhaustive", wit));
    }
    Ok(match gs.normality_witness(g, stab.gens()) {
        Some((h, _)) => Outcome::fail("exhaustive", witness(g, "conjugation by this element does not preserve G(σ)", &h)),
        None => Outcome::pass("exhaustive"),
    })
}

fn semilocal_g(ctx: &Context) -> CheckResult {
    let s = &ctx.setup;
    let g = &s.group;
    let gs = ctx.g_sigma()?;
    let mut gens = torus_generators(g);
    gens.extend(e_sigma_gens(g, &s.net));
    let generated = Subgroup::generate(g, &gens, s.budget)?;
    ctx.record_size("⟨T,E(σ)⟩", generated.len());
    Ok(match subgroup_equality(g, gs, "G(σ)", &generated, "⟨T(R),E(σ)⟩") {
        Some(w) => Outcome::fail("exhaustive", w),
        None => Outcome::pass("exhaustive"),
    })
}

fn standard_commutator(ctx: &Context) -> CheckResult {
    let s = &ctx.setup;
    let g = &s.group;
    if s.delta.has_a1_component() {
        return Ok(Outcome::skipped("Δ has an A1 component"));
    }
    let ideal = &s.relative;
    let (s_rel, sampled) = if ideal.is_subset(&s.ring.jacobson_radical()) {
        relative_stabilizer(ctx, ideal)
    } else {
        let all = ctx.s()?.elements().par_iter().filter(|x| g.is_congruent(x, ideal)).cloned().collect();
        (all, None)
    };
    let family = s.net.intersect_ideal(ideal).map_err(precondition)?;
    let e_rel = normal_closure(g, &e_family_gens(g, &family), &e_hat_gens(g, &s.net), s.budget)?;
    ctx.record_size("S(σ,I)", s_rel.len());
    ctx.record_size("E(σ,I)", e_rel.len());
    let e_gens: Vec<(GroupElement, GroupElement)> =
        e_sigma_gens(g, &s.net).into_iter().map(|e| {
            let inv = g.inverse(&e);
            (e, inv)
        }).collect();
    let instances = s_rel.len() * e_gens.len();
    let coverage = match sampled {
        Some(_) => format!("sampled({instances})"),
        None => "exhaustive".to_string(),
    };
    let bad = s_rel.par_iter().find_map_first(|x| {
        let x_inv = g.inverse(x);
        e_gens.iter().find_map(|(e, e_inv)| {
            let c = g.mul(&g.mul(x, e), &g.mul(&x_inv, e_inv));
            (!e_rel.contains(&c)).then(|| {
                let mut w = witness(g, "[s, e] leaves E(σ,I); matrix is s", x);
                w.word = Some(format!("e = {}", g.format(e)));
                w
            })
        })
    });
    let outcome = match bad {
        Some(w) => Outcome::fail(coverage, w),
        None => Outcome::pass(coverage),
    };
    Ok(outcome.with_reason(format!("{instances} commutators")))
}

fn nilpotent_by_abelian(ctx: &Context) -> CheckResult {
    let s = &ctx.setup;
    let g = &s.group;
    if s.delta.has_a1_component() {
        return Ok(Outcome::skipped("Δ has an A1 component"));
    }
    let mut g_gens = torus_generators(g);
    g_gens.extend(e_sigma_gens(g, &s.net));
    match ctx.e_hat() {
        Ok(e_hat) => {
            let gs = ctx.g_sigma()?;
            let q = quotient_structure(g, gs, e_hat)?;
            ctx.record_size("G(σ)/Ê(σ)", q.index);
            if !q.is_normal {
                let (h, _) = e_hat.normality_witness(g, gs.gens()).expect("not normal");
                return Ok(Outcome::fail("exhaustive", witness(g, "conjugation by this element leaves Ê(σ)", &h)));
            }
            if !q.is_abelian {
                let c = gs
                    .gens()
                    .iter()
                    .flat_map(|a| gs.gens().iter().map(move |b| (a, b)))
                    .map(|(a, b)| g.commutator(a, b))
                    .find(|c| !e_hat.contains(c))
                    .expect("not abelian");
                return Ok(Outcome::fail("exhaustive", witness(g, "commutator of G(σ) generators outside Ê(σ)", &c)));
            }
            Ok(Outcome::pass("exhaustive"))
        }
        Err(GroupError::BudgetExceeded { .. }) => {
            let j = s.ring.jacobson_radical();
            let reduction = s.ring.quotient(&j)?;
            let residue = Chevalley::new(&s.sc, &reduction.target);
            let e_hat = FiberedSubgroup::generate(g, &residue, &reduction, &j, &e_hat_gens(g, &s.net), s.budget)?;
            ctx.record_size("Ê(σ) (fibered)", e_hat.len());
            ctx.record_size("Ê(σ) mod J", e_hat.image().len());
            let pairs: Vec<(&GroupElement, &GroupElement)> =
                g_gens.iter().flat_map(|a| e_hat.gens().iter().map(move |n| (a, n))).collect();
            let escaped = pairs.par_iter().find_map_first(|(h, n)| {
                let c = g.conjugate(h, &g.inverse(h), n);
                (!e_hat.contains(g, &c)).then(|| (*h).clone())
            });
            if let Some(h) = escaped {
                return Ok(Outcome::fail("generators", witness(g, "conjugation by this element leaves Ê(σ)", &h)));
            }
            let pairs: Vec<(&GroupElement, &GroupElement)> =
                g_gens.iter().flat_map(|a| g_gens.iter().map(move |b| (a, b))).collect();
            let outside = pairs.par_iter().find_map_first(|(a, b)| {
                let c = g.commutator(a, b);
                (!e_hat.contains(g, &c)).then_some(c)
            });
            Ok(match outside {
                Some(c) => Outcome::fail("generators", witness(g, "commutator of G(σ) generators outside Ê(σ)", &c)),
                None => Outcome::pass("generators"),
            })
        }
        Err(e) => Err(e),
    }
}

fn decompose_field(ctx: &Context) -> CheckResult {
    let s = &ctx.setup;
    let g = &s.group;
    if !s.ring.is_field() {
        return Ok(Outcome::skipped("ring is not a field"));
    }
    let Some(closed) = &s.delta_prime else {
        return Ok(Outcome::skipped("no Δ' given"));
    };
    let net = sigma_from_closed_set(&s.delta, &s.ring, closed).map_err(precondition)?;
    let full = ctx.full()?;
    let stab = s_sigma(g, &net, full);
    let te = torus_times_e(g, &net, s.budget)?;
    let w = w_bar_sigma(g, &net, s.budget)?;
    let (sorted, set) = product_with(g, &te, &w);
    ctx.record_size("S(σ_Δ')", stab.len());
    ctx.record_size("W̄(Φ,σ_Δ')", w.len());
    Ok(match compare_sets(g, stab.elements(), "S(σ_Δ')", &set, &sorted, "T·E(σ_Δ')·W̄(Φ,σ_Δ')") {
        Some(wit) => Outcome::fail("exhaustive", wit),
        None => Outcome::pass("exhaustive"),
    })
}

fn relative_generators(ctx: &Context) -> CheckResult {
    let s = &ctx.setup;
    let g = &s.group;
    let ideal = &s.relative;
    let closure = e_hat_relative(g, &s.net, ideal, s.budget)?;
    let generated = e_hat_relative_generated(g, &s.net, ideal, s.budget, true)?;
    ctx.record_size("Ê(σ,I)", closure.len());
    if let Some(w) = subgroup_equality(g, &closure, "Ê(σ,I)", &generated, "conjugated generators with transvections") {
        return Ok(Outcome::fail("exhaustive", w));
    }
    if s.delta.has_a1_component() {
        return Ok(Outcome::pass("exhaustive"));
    }
    let family = s.net.intersect_ideal(ideal).map_err(precondition)?;
    let plain = normal_closure(g, &e_family_gens(g, &family), &e_hat_gens(g, &s.net), s.budget)?;
    if let Some(w) = subgroup_equality(g, &closure, "Ê(σ,I)", &plain, "normal closure of root elements") {
        return Ok(Outcome::fail("exhaustive", w));
    }
    let conjugated = e_hat_relative_generated(g, &s.net, ideal, s.budget, false)?;
    Ok(match subgroup_equality(g, &closure, "Ê(σ,I)", &conjugated, "conjugated generators") {
        Some(w) => Outcome::fail("exhaustive", w),
        None => Outcome::pass("exhaustive"),
    })
}

fn gauss_words(ctx: &Context) -> CheckResult {
    let s = &ctx.setup;
    let g = &s.group;
    let j = s.ring.jacobson_radical();
    if j.is_zero() {
        return Ok(Outcome::pass("exhaustive").with_reason("J = 0"));
    }
    let family = s.net.intersect_ideal(&j).map_err(precondition)?;
    let tori = torus_congruence(&s.ring, s.rs.rank(), &j);
    let levels: Vec<Vec<_>> = s.rs.roots().map(|a| family.get(a).elements().collect()).collect();
    let probes = ProbeTable::new(g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let coverage = format!("sampled({GAUSS_WORDS})");
    for _ in 0..GAUSS_WORDS {
        let word: Vec<Token> = (0..GAUSS_WORD_LEN)
            .map(|_| {
                if rng.gen_range(0..5) == 0 {
                    Token::Torus(tori[rng.gen_range(0..tori.len())].clone())
                } else {
                    let root = rng.gen_range(0..s.rs.num_roots());
                    Token::X { root, xi: levels[root][rng.gen_range(0..levels[root].len())] }
                }
            })
            .collect();
        let fail = |desc: String| {
            Ok(Outcome::fail(
                coverage.clone(),
                Witness { description: desc, matrix: None, word: Some(g.word_string(&word)) },
            ))
        };
        let (nf, _) = match gauss_rewrite(g, &word, Some((&family, &j)), 1_000_000) {
            Ok(r) => r,
            Err(e) => return fail(format!("rewriting failed: {e}")),
        };
        let m = g.eval_word(&word)?;
        if nf.matrix(g) != m {
            return fail("normal form differs from the word".into());
        }
        if !torus_in_level(g, &nf.torus, &j) {
            return fail("torus part outside T(R,J)".into());
        }
        if let Some(a) = coefficients_in_family(g, &nf, &family) {
            return fail(format!("coefficient at {} outside σ∩J", s.rs.root_name(a)));
        }
        match gauss_extract(g, &probes, &m, &j) {
            Ok(other) if other == nf => {}
            Ok(_) => return fail("extraction and rewriting disagree".into()),
            Err(e) => return fail(format!("extraction failed: {e}")),
        }
    }
    Ok(Outcome::pass(coverage))
}
