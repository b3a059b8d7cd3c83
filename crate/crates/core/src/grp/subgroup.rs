use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use super::{Chevalley, GroupElement, GroupError};

/// A finite subgroup as a canonical sorted element set plus generators.
#[derive(Clone, Debug)]
pub struct Subgroup {
    gens: Vec<GroupElement>,
    elements: Vec<GroupElement>,
    set: HashSet<GroupElement>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}
impl Eq for Subgroup {}

impl Subgroup {
    pub fn trivial(g: &Chevalley) -> Subgroup {
        let id = g.identity();
        Subgroup { gens: vec![], elements: vec![id.clone()], set: HashSet::from([id]) }
    }

    /// Closure of `gens` under multiplication.
    pub fn generate(g: &Chevalley, gens: &[GroupElement], budget: usize) -> Result<Subgroup, GroupError> {
        let mut sub = Subgroup::trivial(g);
        for x in gens {
            sub.extend_with(g, x, budget)?;
        }
        Ok(sub)
    }

    /// A subgroup from an element set already known to be closed, with a
    /// generating set picked greedily in canonical order.
    pub fn from_closed_set(g: &Chevalley, mut elements: Vec<GroupElement>) -> Subgroup {
        elements.sort();
        elements.dedup();
        let budget = elements.len();
        let mut sub = Subgroup::trivial(g);
        for x in &elements {
            if sub.len() == budget {
                break;
            }
            sub.extend_with(g, x, budget).expect("closed set");
        }
        debug_assert_eq!(sub.elements, elements);
        sub
    }

    /// A subgroup from a closed element set and a known generating set.
    pub fn from_parts(mut elements: Vec<GroupElement>, gens: Vec<GroupElement>) -> Subgroup {
        elements.par_sort();
        elements.dedup();
        let set = elements.iter().cloned().collect();
        Subgroup { gens, elements, set }
    }

    /// Adds a generator and closes again, touching only what is new.
    pub fn extend_with(&mut self, g: &Chevalley, x: &GroupElement, budget: usize) -> Result<bool, GroupError> {
        if self.set.contains(x) {
            return Ok(false);
        }
        self.gens.push(x.clone());
        let mut frontier: Vec<GroupElement> = self.insert_new(self.elements.par_iter().map(|y| g.mul(x, y)).collect(), budget)?;
        while !frontier.is_empty() {
            let gens = &self.gens;
            let products: Vec<GroupElement> = frontier
                .par_iter()
                .flat_map_iter(|y| gens.iter().map(move |s| g.mul(s, y)))
                .collect();
            frontier = self.insert_new(products, budget)?;
        }
        self.elements.sort();
        Ok(true)
    }

    fn insert_new(&mut self, candidates: Vec<GroupElement>, budget: usize) -> Result<Vec<GroupElement>, GroupError> {
        let mut fresh = Vec::new();
        for c in candidates {
            if self.set.insert(c.clone()) {
                self.elements.push(c.clone());
                fresh.push(c);
                if self.set.len() > budget {
                    return Err(GroupError::BudgetExceeded { partial: self.set.len(), budget });
                }
            }
        }
        Ok(fresh)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.set.contains(x)
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn gens(&self) -> &[GroupElement] {
        &self.gens
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.len() <= other.len() && self.elements.par_iter().all(|x| other.contains(x))
    }

    /// First element of `self` missing from `other`.
    pub fn first_outside(&self, other: &Subgroup) -> Option<&GroupElement> {
        self.elements.iter().find(|x| !other.contains(x))
    }

    /// Elements passing `keep`, which must cut out a subgroup.
    pub fn filter(&self, g: &Chevalley, keep: impl Fn(&GroupElement) -> bool + Sync) -> Subgroup {
        let kept: Vec<GroupElement> = self.elements.par_iter().filter(|x| keep(x)).cloned().collect();
        Subgroup::from_closed_set(g, kept)
    }

    /// First `(h, n)` with `h n h⁻¹ ∉ self`, over the given conjugators.
    pub fn normality_witness(&self, g: &Chevalley, by: &[GroupElement]) -> Option<(GroupElement, GroupElement)> {
        let targets: &[GroupElement] = if self.gens.is_empty() { &[] } else { &self.gens };
        by.par_iter()
            .map(|h| {
                let h_inv = g.inverse(h);
                targets
                    .iter()
                    .find(|n| !self.contains(&g.conjugate(h, &h_inv, n)))
                    .map(|n| (h.clone(), n.clone()))
            })
            .find_map_first(|w| w)
    }

    /// Text dump: one matrix per line, in canonical order.
    pub fn dump(&self, g: &Chevalley) -> String {
        let mut s = String::new();
        for x in &self.elements {
            s.push_str(&g.format(x));
            s.push('\n');
        }
        s
    }
}

/// Smallest subgroup containing `seeds` and normalized by `by`.
pub fn normal_closure(
    g: &Chevalley,
    seeds: &[GroupElement],
    by: &[GroupElement],
    budget: usize,
) -> Result<Subgroup, GroupError> {
    let mut sub = Subgroup::generate(g, seeds, budget)?;
    let pairs: Vec<(GroupElement, GroupElement)> = by.iter().map(|h| (h.clone(), g.inverse(h))).collect();
    let mut i = 0;
    while i < sub.gens.len() {
        let n = sub.gens[i].clone();
        let conj: Vec<GroupElement> = pairs.par_iter().map(|(h, hi)| g.conjugate(h, hi, &n)).collect();
        for c in conj {
            sub.extend_with(g, &c, budget)?;
        }
        i += 1;
    }
    Ok(sub)
}

/// Coset data for `H/N`.
#[derive(Clone, Debug)]
pub struct QuotientInfo {
    pub index: usize,
    pub is_normal: bool,
    pub is_abelian: bool,
    /// `None` when `N` is not normal.
    pub is_nilpotent: Option<bool>,
    /// Coset representatives, the first being the identity coset.
    pub representatives: Vec<GroupElement>,
}

/// Left cosets of `N` in `H` with normality, commutativity and nilpotency
/// of the quotient.
pub fn quotient_structure(g: &Chevalley, h: &Subgroup, n: &Subgroup) -> Result<QuotientInfo, GroupError> {
    if !n.is_subset(h) {
        return Err(GroupError::NotSubset);
    }
    let mut coset_of: HashMap<GroupElement, usize> = HashMap::with_capacity(h.len());
    let mut reps = vec![g.identity()];
    for x in n.elements() {
        coset_of.insert(x.clone(), 0);
    }
    for x in h.elements() {
        if coset_of.contains_key(x) {
            continue;
        }
        let id = reps.len();
        reps.push(x.clone());
        let coset: Vec<GroupElement> = n.elements().par_iter().map(|m| g.mul(x, m)).collect();
        for y in coset {
            coset_of.insert(y, id);
        }
    }
    let k = reps.len();
    let is_normal = n.normality_witness(g, h.gens()).is_none();
    let is_abelian = is_normal
        && h.gens().iter().all(|a| h.gens().iter().all(|b| n.contains(&g.commutator(a, b))));
    let is_nilpotent = if !is_normal {
        None
    } else if is_abelian {
        Some(true)
    } else {
        let table: Vec<Vec<usize>> = reps
            .par_iter()
            .map(|a| reps.iter().map(|b| coset_of[&g.mul(a, b)]).collect())
            .collect();
        Some(table_is_nilpotent(&table))
    };
    Ok(QuotientInfo { index: k, is_normal, is_abelian, is_nilpotent, representatives: reps })
}

/// Lower central series on a multiplication table with identity `0`.
fn table_is_nilpotent(table: &[Vec<usize>]) -> bool {
    let k = table.len();
    let inv: Vec<usize> = (0..k).map(|a| (0..k).find(|&b| table[a][b] == 0).unwrap()).collect();
    let close = |seed: HashSet<usize>| -> HashSet<usize> {
        let mut set = seed;
        set.insert(0);
        loop {
            let mut added = vec![];
            for &a in &set {
                for &b in &set {
                    let c = table[a][b];
                    if !set.contains(&c) {
                        added.push(c);
                    }
                }
            }
            if added.is_empty() {
                return set;
            }
            set.extend(added);
        }
    };
    let mut current: HashSet<usize> = (0..k).collect();
    loop {
        let mut comms = HashSet::new();
        for a in 0..k {
            for &b in &current {
                comms.insert(table[table[table[a][b]][inv[a]]][inv[b]]);
            }
        }
        let next = close(comms);
        if next.len() == 1 {
            return true;
        }
        if next.len() == current.len() {
            return false;
        }
        current = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::tests::ctx;
    use crate::ringkit::RingSpec;

    #[test]
    fn trivial_and_involution() {
        let g = ctx("A2", RingSpec::Zmod { n: 2 });
        let id = g.identity();
        assert_eq!(Subgroup::generate(&g, &[id], 10).unwrap().len(), 1);
        let a = g.rs().parse_root("a1").unwrap();
        let x = g.x(a, g.ring().one());
        assert_eq!(Subgroup::generate(&g, &[x], 10).unwrap().len(), 2);
    }

    #[test]
    fn elementary_group_over_f2_is_gl3() {
        // |GL(3,2)| = (8-1)(8-2)(8-4)
        let g = ctx("A2", RingSpec::Zmod { n: 2 });
        let one = g.ring().one();
        let gens: Vec<_> = g.rs().roots().map(|a| g.x(a, one)).collect();
        let e = Subgroup::generate(&g, &gens, 1000).unwrap();
        assert_eq!(e.len(), 7 * 6 * 4);
        let err = Subgroup::generate(&g, &gens, 100).unwrap_err();
        assert!(matches!(err, GroupError::BudgetExceeded { budget: 100, .. }));
    }

    #[test]
    fn quotient_of_weyl_lifts_by_torus() {
        let g = ctx("A2", RingSpec::Zmod { n: 3 });
        let r = g.ring().clone();
        let m1 = r.neg(r.one());
        let one = r.one();
        let tor = [g.torus(&[m1, one]).unwrap(), g.torus(&[one, m1]).unwrap()];
        let mut gens: Vec<_> = g.rs().simple_roots().iter().map(|&a| g.w_lift(a)).collect();
        gens.extend(tor.iter().cloned());
        let w = Subgroup::generate(&g, &gens, 1000).unwrap();
        let t = Subgroup::generate(&g, &tor, 1000).unwrap();
        let q = quotient_structure(&g, &w, &t).unwrap();
        assert_eq!(q.index, 6);
        assert!(q.is_normal);
        assert!(!q.is_abelian);
        assert_eq!(q.is_nilpotent, Some(false));
    }

    #[test]
    fn normal_closure_of_a_root_element() {
        let g = ctx("A2", RingSpec::Zmod { n: 2 });
        let one = g.ring().one();
        let gens: Vec<_> = g.rs().roots().map(|a| g.x(a, one)).collect();
        let nc = normal_closure(&g, &gens[..1], &gens, 1000).unwrap();
        // GL(3,2) is simple
        assert_eq!(nc.len(), 168);
    }

    #[test]
    fn generation_is_order_independent() {
        let g = ctx("B2", RingSpec::Zmod { n: 2 });
        let one = g.ring().one();
        let mut gens: Vec<_> = g.rs().roots().map(|a| g.x(a, one)).collect();
        let a = Subgroup::generate(&g, &gens, 10_000).unwrap();
        gens.reverse();
        let b = Subgroup::generate(&g, &gens, 10_000).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dump(&g), b.dump(&g));
    }
}
