//! Net subgroups: `E(σ)`, `Ê(σ)`, `S(σ)`, `G(σ)`, Weyl lifts, congruence
//! subgroups and relative subgroups.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;

use super::{Chevalley, GroupElement, GroupError, Subgroup};
use crate::nets::{IdealFamily, Net};
use crate::ringkit::{Elem, FiniteRing, Ideal, LocalDecomposition};

/// A small generating set of the unit group.
pub fn unit_generators(ring: &FiniteRing) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut reached: BTreeSet<Elem> = BTreeSet::from([ring.one()]);
    for u in ring.units() {
        if reached.contains(&u) {
            continue;
        }
        gens.push(u);
        let mut frontier: Vec<Elem> = reached.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            for &gen in &gens {
                let y = ring.mul(gen, x);
                if reached.insert(y) {
                    frontier.push(y);
                }
            }
        }
    }
    gens
}

/// Characters with every `χ_i` a unit in `1 + I`; that is `T(R, I)`.
pub fn torus_congruence(ring: &FiniteRing, rank: usize, ideal: &Ideal) -> Vec<Vec<Elem>> {
    let allowed: Vec<Elem> = ring
        .units()
        .into_iter()
        .filter(|&u| ideal.contains(ring.sub(u, ring.one())))
        .collect();
    let mut chars = vec![vec![]];
    for _ in 0..rank {
        chars = chars
            .into_iter()
            .flat_map(|c: Vec<Elem>| {
                allowed.iter().map(move |&u| {
                    let mut c = c.clone();
                    c.push(u);
                    c
                })
            })
            .collect();
    }
    chars
}

/// Generators of the split torus `T(R)`.
pub fn torus_generators(g: &Chevalley) -> Vec<GroupElement> {
    let r = g.ring();
    let l = g.rs().rank();
    let mut out = Vec::new();
    for u in unit_generators(r) {
        for i in 0..l {
            let mut chi = vec![r.one(); l];
            chi[i] = u;
            out.push(g.torus(&chi).unwrap());
        }
    }
    out
}

fn root_elements(g: &Chevalley, ideals: &[Ideal]) -> Vec<GroupElement> {
    g.rs()
        .roots()
        .flat_map(|a| ideals[a].additive_generators().into_iter().map(move |s| (a, s)))
        .map(|(a, s)| g.x(a, s))
        .collect()
}

/// `x_α(s)` for additive generators `s` of `σ_α`.
pub fn e_sigma_gens(g: &Chevalley, net: &Net) -> Vec<GroupElement> {
    root_elements(g, net.ideals())
}

/// Generators of `E(σ ∩ I)` for a family that need not be a net.
pub fn e_family_gens(g: &Chevalley, family: &IdealFamily) -> Vec<GroupElement> {
    root_elements(g, family.ideals())
}

pub fn e_sigma(g: &Chevalley, net: &Net, budget: usize) -> Result<Subgroup, GroupError> {
    Subgroup::generate(g, &e_sigma_gens(g, net), budget)
}

/// `t_α^{ζ,η}(ξ)` for `α ∈ Δ`, `ζ, η ∈ R` and `ξ` over additive generators of
/// `level`; `ξ ↦ t(ξ)` is additive, so these generate all of them.
pub fn transvection_gens(g: &Chevalley, net: &Net, level: &Ideal) -> Vec<GroupElement> {
    let r = g.ring();
    let xis = level.additive_generators();
    let mut params = Vec::new();
    for &a in net.delta().members() {
        for zeta in r.elements() {
            for eta in r.elements() {
                for &xi in &xis {
                    params.push((a, zeta, eta, xi));
                }
            }
        }
    }
    let mut out: Vec<GroupElement> = params
        .par_iter()
        .map(|&(a, z, e, x)| g.transvection(a, z, e, x))
        .filter(|t| !g.is_identity(t))
        .collect();
    out.sort();
    out.dedup();
    out
}

pub fn e_hat_gens(g: &Chevalley, net: &Net) -> Vec<GroupElement> {
    let mut gens = e_sigma_gens(g, net);
    gens.extend(transvection_gens(g, net, &Ideal::whole(g.ring())));
    gens
}

pub fn e_hat_sigma(g: &Chevalley, net: &Net, budget: usize) -> Result<Subgroup, GroupError> {
    Subgroup::generate(g, &e_hat_gens(g, net), budget)
}

/// `x_α(s)` for every root and additive generator `s` of `R`, plus `T(R)`.
pub fn full_group_gens(g: &Chevalley) -> Vec<GroupElement> {
    let whole = vec![Ideal::whole(g.ring()); g.rs().num_roots()];
    let mut gens = root_elements(g, &whole);
    gens.extend(torus_generators(g));
    gens
}

pub fn full_group(g: &Chevalley, budget: usize) -> Result<Subgroup, GroupError> {
    Subgroup::generate(g, &full_group_gens(g), budget)
}

/// `w_lift(α_i)` and the characters with entries `±1`.
pub fn w_bar_gens(g: &Chevalley) -> Vec<GroupElement> {
    let r = g.ring();
    let l = g.rs().rank();
    let mut gens: Vec<GroupElement> = g.rs().simple_roots().iter().map(|&a| g.w_lift(a)).collect();
    for i in 0..l {
        let mut chi = vec![r.one(); l];
        chi[i] = r.neg(r.one());
        gens.push(g.torus(&chi).unwrap());
    }
    gens
}

pub fn w_bar(g: &Chevalley, budget: usize) -> Result<Subgroup, GroupError> {
    Subgroup::generate(g, &w_bar_gens(g), budget)
}

/// `W̄(Φ, σ) = W̄(Φ) ∩ S(σ)`.
pub fn w_bar_sigma(g: &Chevalley, net: &Net, budget: usize) -> Result<Subgroup, GroupError> {
    Ok(w_bar(g, budget)?.filter(g, |w| g.stabilizes(w, net)))
}

/// `S(σ)` as the stabilizer filter on an enumerated ambient group.
pub fn s_sigma(g: &Chevalley, net: &Net, ambient: &Subgroup) -> Subgroup {
    ambient.filter(g, |x| g.stabilizes(x, net))
}

/// `T(R, I) · ∏ x_γ(I)` over `gauss_order`: all of `G(Φ, R, I)` when `I` is
/// in the radical.
pub fn congruence_elements(g: &Chevalley, ideal: &Ideal) -> Vec<GroupElement> {
    let rs = g.rs();
    let members: Vec<Elem> = ideal.elements().collect();
    let mut prefix: Vec<GroupElement> = torus_congruence(g.ring(), rs.rank(), ideal)
        .iter()
        .map(|chi| g.torus(chi).unwrap())
        .collect();
    for gamma in rs.gauss_order() {
        let factors: Vec<GroupElement> = members.iter().map(|&s| g.x(gamma, s)).collect();
        prefix = prefix
            .par_iter()
            .flat_map_iter(|p| factors.iter().map(move |f| g.mul(p, f)))
            .collect();
    }
    prefix.par_sort();
    prefix.dedup();
    prefix
}

/// Generators of `G(Φ, R, I)` for `I` in the radical.
pub fn congruence_gens(g: &Chevalley, ideal: &Ideal) -> Vec<GroupElement> {
    let rs = g.rs();
    let mut gens: Vec<GroupElement> = torus_congruence(g.ring(), rs.rank(), ideal)
        .iter()
        .map(|chi| g.torus(chi).unwrap())
        .filter(|t| !g.is_identity(t))
        .collect();
    gens.extend(root_elements(g, &vec![ideal.clone(); rs.num_roots()]));
    gens
}

pub fn congruence_subgroup(g: &Chevalley, ideal: &Ideal) -> Subgroup {
    Subgroup::from_parts(congruence_elements(g, ideal), congruence_gens(g, ideal))
}

/// `⟨T(R), E(σ)⟩` by closure.
pub fn g_sigma_local(g: &Chevalley, net: &Net, budget: usize) -> Result<Subgroup, GroupError> {
    let mut gens = torus_generators(g);
    gens.extend(e_sigma_gens(g, net));
    Subgroup::generate(g, &gens, budget)
}

/// All of `T(R)` as matrices.
pub fn torus_elements(g: &Chevalley) -> Vec<GroupElement> {
    torus_congruence(g.ring(), g.rs().rank(), &Ideal::whole(g.ring()))
        .iter()
        .map(|chi| g.torus(chi).unwrap())
        .collect()
}

/// The product set `T(R) · E(σ)`, a subgroup since `T(R)` normalizes `E(σ)`.
pub fn torus_times_e(g: &Chevalley, net: &Net, budget: usize) -> Result<Subgroup, GroupError> {
    let e = e_sigma(g, net, budget)?;
    let t = torus_elements(g);
    let mut gens = torus_generators(g);
    gens.extend(e.gens().iter().cloned());
    let elements = product_set(g, &t, e.elements());
    if elements.len() > budget {
        return Err(GroupError::BudgetExceeded { partial: elements.len(), budget });
    }
    Ok(Subgroup::from_parts(elements, gens))
}

/// `{x_α(ξ): ξ ∈ σ_α ∩ I} ∪ {t_α^{ζ,η}(ξ): α ∈ Δ, ξ ∈ I}`.
pub fn relative_seeds(g: &Chevalley, net: &Net, ideal: &Ideal) -> Result<Vec<GroupElement>, GroupError> {
    let fam = net.intersect_ideal(ideal).map_err(|e| GroupError::Precondition(e.to_string()))?;
    let mut seeds = e_family_gens(g, &fam);
    seeds.extend(transvection_gens(g, net, ideal));
    Ok(seeds)
}

/// `Ê(σ, I)` as the normal closure of [`relative_seeds`] in `Ê(σ)`.
pub fn e_hat_relative(g: &Chevalley, net: &Net, ideal: &Ideal, budget: usize) -> Result<Subgroup, GroupError> {
    let seeds = relative_seeds(g, net, ideal)?;
    super::normal_closure(g, &seeds, &e_hat_gens(g, net), budget)
}

/// `Ê(σ, I)` from conjugated root elements `x_{−α}(ζ) x_α(ξ) x_{−α}(−ζ)`
/// with `ξ ∈ σ_α ∩ I`, `ζ ∈ σ_{−α}`, plus the relative transvections.
pub fn e_hat_relative_generated(
    g: &Chevalley,
    net: &Net,
    ideal: &Ideal,
    budget: usize,
    with_transvections: bool,
) -> Result<Subgroup, GroupError> {
    let r = g.ring();
    let rs = g.rs();
    let mut gens = Vec::new();
    for a in rs.roots() {
        let lower = net.sigma(a).intersection(ideal)?;
        for xi in lower.additive_generators() {
            let x = g.x(a, xi);
            for zeta in net.sigma(rs.neg(a)).elements() {
                let y = g.x(rs.neg(a), zeta);
                let y_inv = g.x(rs.neg(a), r.neg(zeta));
                gens.push(g.conjugate(&y, &y_inv, &x));
            }
        }
    }
    if with_transvections {
        gens.extend(transvection_gens(g, net, ideal));
    }
    gens.sort();
    gens.dedup();
    Subgroup::generate(g, &gens, budget)
}

/// `{a b : a ∈ A, b ∈ B}` as a sorted set.
pub fn product_set(g: &Chevalley, a: &[GroupElement], b: &[GroupElement]) -> Vec<GroupElement> {
    let set: HashSet<GroupElement> = a
        .par_iter()
        .flat_map_iter(|x| b.iter().map(move |y| g.mul(x, y)))
        .collect();
    let mut v: Vec<GroupElement> = set.into_iter().collect();
    v.par_sort();
    v
}

/// Per-factor contexts for a ring split into local factors.
pub struct LocalFactors {
    pub decomposition: LocalDecomposition,
    pub contexts: Vec<std::sync::Arc<Chevalley>>,
}

impl LocalFactors {
    pub fn new(g: &Chevalley) -> LocalFactors {
        let decomposition = g.ring().local_decomposition();
        let contexts = decomposition
            .factors
            .iter()
            .map(|f| Chevalley::new(g.sc(), f.ring()))
            .collect();
        LocalFactors { decomposition, contexts }
    }

    pub fn len(&self) -> usize {
        self.contexts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contexts.is_empty()
    }

    /// `F_P(x)` for the `k`-th local factor.
    pub fn project(&self, g: &Chevalley, k: usize, x: &GroupElement) -> GroupElement {
        g.map(x, &self.decomposition.factors[k].projection, &self.contexts[k])
    }

    /// Entrywise CRT reassembly of one matrix per factor.
    pub fn reassemble(&self, g: &Chevalley, parts: &[&GroupElement]) -> GroupElement {
        let n = g.dim() * g.dim();
        let entries = (0..n)
            .map(|p| {
                let coords: Vec<Elem> = parts.iter().map(|x| x.entries()[p]).collect();
                self.decomposition.reassemble(&coords)
            })
            .collect();
        g.from_entries(entries)
    }

    /// The subgroup of `G(Φ, R)` whose projections land in the given
    /// factor subgroups.
    pub fn assemble(&self, g: &Chevalley, parts: &[&Subgroup]) -> Subgroup {
        let mut combos: Vec<Vec<&GroupElement>> = vec![vec![]];
        for part in parts {
            combos = combos
                .into_iter()
                .flat_map(|c| {
                    part.elements().iter().map(move |x| {
                        let mut c = c.clone();
                        c.push(x);
                        c
                    })
                })
                .collect();
        }
        let elements: Vec<GroupElement> = combos.par_iter().map(|c| self.reassemble(g, c)).collect();
        let mut gens = Vec::new();
        for (k, part) in parts.iter().enumerate() {
            for x in part.gens() {
                let ids: Vec<GroupElement> = self.contexts.iter().map(|c| c.identity()).collect();
                let mut pieces: Vec<&GroupElement> = ids.iter().collect();
                pieces[k] = x;
                gens.push(self.reassemble(g, &pieces));
            }
        }
        Subgroup::from_parts(elements, gens)
    }
}

/// `S(σ)` assembled from `S(F_P σ)` over each local factor.
pub fn s_sigma_by_factors(g: &Chevalley, net: &Net, factors: &LocalFactors, budget: usize) -> Result<Subgroup, GroupError> {
    let mut parts = Vec::new();
    for (k, ctx) in factors.contexts.iter().enumerate() {
        let local = net
            .image(&factors.decomposition.factors[k].projection)
            .map_err(|e| GroupError::Precondition(e.to_string()))?;
        let full = full_group(ctx, budget)?;
        parts.push(s_sigma(ctx, &local, &full));
    }
    let total = parts.iter().try_fold(1usize, |acc, p| acc.checked_mul(p.len()));
    if total.is_none_or(|t| t > budget) {
        return Err(GroupError::BudgetExceeded { partial: total.unwrap_or(usize::MAX), budget });
    }
    Ok(factors.assemble(g, &parts.iter().collect::<Vec<_>>()))
}

/// `G(σ)`: elements whose every projection lies in `T(R_P) E(F_P σ)`.
pub fn g_sigma(g: &Chevalley, net: &Net, factors: &LocalFactors, budget: usize) -> Result<Subgroup, GroupError> {
    if factors.len() == 1 {
        return torus_times_e(g, net, budget);
    }
    let mut parts = Vec::new();
    for (k, ctx) in factors.contexts.iter().enumerate() {
        let local = net
            .image(&factors.decomposition.factors[k].projection)
            .map_err(|e| GroupError::Precondition(e.to_string()))?;
        parts.push(torus_times_e(ctx, &local, budget)?);
    }
    let total = parts.iter().try_fold(1usize, |acc, p| acc.checked_mul(p.len()));
    if total.is_none_or(|t| t > budget) {
        return Err(GroupError::BudgetExceeded { partial: total.unwrap_or(usize::MAX), budget });
    }
    Ok(factors.assemble(g, &parts.iter().collect::<Vec<_>>()))
}
