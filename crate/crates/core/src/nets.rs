//! Nets of ideals indexed by roots, relative to a subsystem `Δ`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::ringkit::{Elem, FiniteRing, Ideal, RingError, RingHom};
use crate::rootsys::{ClosedRootSet, RootSystem, Subsystem, WeylElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("not a net: {0}")]
    Invalid(NetViolation),
    #[error("ideal is not maximal")]
    NotMaximal,
    #[error("closed root set does not contain the subsystem")]
    MissingSubsystem,
    #[error("expected {expected} ideals, got {got}")]
    WrongLength { expected: usize, got: usize },
}

/// The first axiom failure found by [`validate_net`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NetViolation {
    /// `σ_α σ_β ⊄ σ_{α+β}`.
    Product { alpha: String, beta: String },
    /// `σ_α ≠ R` for `α ∈ Δ`.
    NotWhole { alpha: String },
}

impl fmt::Display for NetViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NetViolation::Product { alpha, beta } => {
                write!(f, "σ_{alpha}·σ_{beta} not contained in σ_({alpha}+{beta})")
            }
            NetViolation::NotWhole { alpha } => write!(f, "σ_{alpha} must be the whole ring"),
        }
    }
}

/// A net of ideals `σ` over `(Φ, Δ, R)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Net {
    delta: Subsystem,
    ring: Arc<FiniteRing>,
    sigma: Vec<Ideal>,
}

impl Net {
    /// Validates `sigma` (indexed by root) as given, without closing it.
    pub fn strict(delta: &Subsystem, ring: &Arc<FiniteRing>, sigma: Vec<Ideal>) -> Result<Net, NetError> {
        let rs = delta.parent();
        if sigma.len() != rs.num_roots() {
            return Err(NetError::WrongLength { expected: rs.num_roots(), got: sigma.len() });
        }
        for s in &sigma {
            ring.check_same(s.ring())?;
        }
        if let Some(v) = first_violation(rs, delta, &sigma) {
            return Err(NetError::Invalid(v));
        }
        Ok(Net { delta: delta.clone(), ring: ring.clone(), sigma })
    }

    /// `σ_α = R` for every root.
    pub fn full(delta: &Subsystem, ring: &Arc<FiniteRing>) -> Net {
        let n = delta.parent().num_roots();
        Net { delta: delta.clone(), ring: ring.clone(), sigma: vec![Ideal::whole(ring); n] }
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        self.delta.parent()
    }

    pub fn delta(&self) -> &Subsystem {
        &self.delta
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn sigma(&self, root: usize) -> &Ideal {
        &self.sigma[root]
    }

    pub fn ideals(&self) -> &[Ideal] {
        &self.sigma
    }

    pub fn is_full(&self) -> bool {
        self.sigma.iter().all(Ideal::is_whole)
    }

    /// Pointwise `σ_α ∩ I`, which in general satisfies only the product axiom.
    pub fn intersect_ideal(&self, ideal: &Ideal) -> Result<IdealFamily, NetError> {
        self.ring.check_same(ideal.ring())?;
        let sigma = self
            .sigma
            .iter()
            .map(|s| s.intersection(ideal))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IdealFamily { rs: self.root_system().clone(), ring: self.ring.clone(), sigma })
    }

    /// `f(σ)_α` = ideal generated by `f(σ_α)`.
    pub fn image(&self, f: &RingHom) -> Result<Net, NetError> {
        self.ring.check_same(&f.source)?;
        let sigma = self.sigma.iter().map(|s| s.image(f)).collect::<Result<Vec<_>, _>>()?;
        Net::strict(&self.delta, &f.target, sigma)
    }

    /// `{w ∈ W(Φ) : σ_{wα} = σ_α for all α}`.
    pub fn weyl_stabilizer(&self) -> Vec<WeylElement> {
        self.root_system()
            .weyl_group()
            .into_iter()
            .filter(|w| self.root_system().roots().all(|a| self.sigma[w.apply(a)] == self.sigma[a]))
            .collect()
    }

    /// `Δ'_P = {α : σ_α ⊄ P}` for a maximal ideal `P`.
    pub fn delta_prime(&self, p: &Ideal) -> Result<ClosedRootSet, NetError> {
        self.ring.check_same(p.ring())?;
        if !self.ring.local_decomposition().maximal_ideals().contains(p) {
            return Err(NetError::NotMaximal);
        }
        let members = self.root_system().roots().filter(|&a| !self.sigma[a].is_subset(p)).collect();
        ClosedRootSet::new(self.root_system(), members).map_err(|_| NetError::NotMaximal)
    }

    /// Defining primes. In a finite ring every prime is maximal, so the
    /// minimal primes of each `Δ'_P` class are all maximal ideals.
    pub fn defining_primes(&self) -> Vec<Ideal> {
        self.ring.local_decomposition().maximal_ideals()
    }

    /// Roots `α, β` with `α − β ∈ Δ` but `σ_α ≠ σ_β`.
    pub fn shift_violation(&self) -> Option<(usize, usize)> {
        let rs = self.root_system();
        for a in rs.roots() {
            for b in rs.roots() {
                if let Some(d) = rs.sum(a, rs.neg(b)) {
                    if self.delta.contains(d) && self.sigma[a] != self.sigma[b] {
                        return Some((a, b));
                    }
                }
            }
        }
        None
    }

    /// `root: (generators)` per root, in root order.
    pub fn describe(&self) -> String {
        let rs = self.root_system();
        let mut out = String::new();
        for a in rs.roots() {
            out.push_str(&format!("{}: {:?}\n", rs.root_name(a), self.sigma[a]));
        }
        out
    }
}

/// A root-indexed family of ideals that need not be a net (such as `σ ∩ I`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFamily {
    rs: Arc<RootSystem>,
    ring: Arc<FiniteRing>,
    sigma: Vec<Ideal>,
}

impl IdealFamily {
    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn get(&self, root: usize) -> &Ideal {
        &self.sigma[root]
    }

    pub fn ideals(&self) -> &[Ideal] {
        &self.sigma
    }

    pub fn satisfies_product_axiom(&self) -> bool {
        product_violation(&self.rs, &self.sigma).is_none()
    }
}

fn product_violation(rs: &RootSystem, sigma: &[Ideal]) -> Option<(usize, usize)> {
    for a in rs.roots() {
        for b in rs.roots() {
            if let Some(s) = rs.sum(a, b) {
                let prod = sigma[a].product(&sigma[b]).expect("same ring");
                if !prod.is_subset(&sigma[s]) {
                    return Some((a, b));
                }
            }
        }
    }
    None
}

fn first_violation(rs: &RootSystem, delta: &Subsystem, sigma: &[Ideal]) -> Option<NetViolation> {
    if let Some(&a) = delta.members().iter().find(|&&a| !sigma[a].is_whole()) {
        return Some(NetViolation::NotWhole { alpha: rs.root_name(a) });
    }
    product_violation(rs, sigma)
        .map(|(a, b)| NetViolation::Product { alpha: rs.root_name(a), beta: rs.root_name(b) })
}

/// Both net axioms, exhaustively.
pub fn validate_net(net: &Net) -> Result<(), NetViolation> {
    match first_violation(net.root_system(), &net.delta, &net.sigma) {
        Some(v) => Err(v),
        None => Ok(()),
    }
}

/// Smallest net whose ideals contain the given generators.
pub fn net_close(delta: &Subsystem, ring: &Arc<FiniteRing>, assignment: &BTreeMap<usize, Vec<Elem>>) -> Net {
    let rs = delta.parent();
    let mut sigma: Vec<Ideal> = rs
        .roots()
        .map(|a| {
            if delta.contains(a) {
                Ideal::whole(ring)
            } else {
                Ideal::generated(ring, assignment.get(&a).map_or(&[][..], |g| &g[..]))
            }
        })
        .collect();
    loop {
        let mut changed = false;
        for a in rs.roots() {
            for b in rs.roots() {
                if let Some(s) = rs.sum(a, b) {
                    let prod = sigma[a].product(&sigma[b]).expect("same ring");
                    if !prod.is_subset(&sigma[s]) {
                        sigma[s] = sigma[s].sum(&prod).expect("same ring");
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    Net { delta: delta.clone(), ring: ring.clone(), sigma }
}

/// `σ_{Δ'}`: `R` on `Δ'`, zero elsewhere.
pub fn sigma_from_closed_set(delta: &Subsystem, ring: &Arc<FiniteRing>, closed: &ClosedRootSet) -> Result<Net, NetError> {
    if !delta.members().is_subset(closed.members()) {
        return Err(NetError::MissingSubsystem);
    }
    let sigma = delta
        .parent()
        .roots()
        .map(|a| if closed.contains(a) { Ideal::whole(ring) } else { Ideal::zero(ring) })
        .collect();
    Net::strict(delta, ring, sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ringkit::RingSpec;
    use crate::rootsys::parse_root_system;

    fn setup(n: u32) -> (Subsystem, Arc<FiniteRing>) {
        let rs = parse_root_system("A2").unwrap();
        let delta = rs.parse_subsystem(&["a1", "-a1"]).unwrap();
        (delta, FiniteRing::new(&RingSpec::Zmod { n }).unwrap())
    }

    fn assignment(rs: &RootSystem, ring: &FiniteRing, pairs: &[(&str, &str)]) -> BTreeMap<usize, Vec<Elem>> {
        let mut m = BTreeMap::new();
        for (r, g) in pairs {
            m.entry(rs.parse_root(r).unwrap())
                .or_insert_with(Vec::new)
                .push(ring.parse_elem(g).unwrap());
        }
        m
    }

    #[test]
    fn closure_of_single_generator() {
        let (delta, ring) = setup(4);
        let rs = delta.parent().clone();
        let net = net_close(&delta, &ring, &assignment(&rs, &ring, &[("a2", "2")]));
        let two = Ideal::parse(&ring, &["2"]).unwrap();
        let zero = Ideal::zero(&ring);
        let at = |s: &str| net.sigma(rs.parse_root(s).unwrap()).clone();
        assert_eq!(at("a2"), two);
        assert_eq!(at("a1+a2"), two);
        assert_eq!(at("-a2"), zero);
        assert_eq!(at("-a1-a2"), zero);
        assert!(at("a1").is_whole() && at("-a1").is_whole());
        assert_eq!(validate_net(&net), Ok(()));
        assert_eq!(net.shift_violation(), None);
    }

    #[test]
    fn closure_is_idempotent() {
        let (delta, ring) = setup(4);
        let rs = delta.parent().clone();
        let net = net_close(&delta, &ring, &assignment(&rs, &ring, &[("a2", "2"), ("-a2", "2")]));
        let mut again = BTreeMap::new();
        for a in rs.roots() {
            again.insert(a, net.sigma(a).generators());
        }
        assert_eq!(net_close(&delta, &ring, &again), net);
    }

    #[test]
    fn invalid_net_is_rejected() {
        let (delta, ring) = setup(4);
        let rs = delta.parent().clone();
        let sigma: Vec<Ideal> = rs
            .roots()
            .map(|a| match rs.root_name(a).as_str() {
                "a1+a2" => Ideal::parse(&ring, &["2"]).unwrap(),
                _ => Ideal::whole(&ring),
            })
            .collect();
        let err = Net::strict(&delta, &ring, sigma).unwrap_err();
        assert_eq!(
            err,
            NetError::Invalid(NetViolation::Product { alpha: "a1".into(), beta: "a2".into() })
        );
    }

    #[test]
    fn intersections_and_images() {
        let (delta, ring) = setup(4);
        let rs = delta.parent().clone();
        let net = net_close(&delta, &ring, &assignment(&rs, &ring, &[("a2", "2")]));
        let whole = Ideal::whole(&ring);
        assert_eq!(net.intersect_ideal(&whole).unwrap().ideals(), net.ideals());
        let zero = net.intersect_ideal(&Ideal::zero(&ring)).unwrap();
        assert!(zero.ideals().iter().all(Ideal::is_zero));
        let j = ring.jacobson_radical();
        let fam = net.intersect_ideal(&j).unwrap();
        assert!(fam.get(rs.parse_root("a1").unwrap()) == &j);
        assert!(fam.satisfies_product_axiom());

        let rho = ring.quotient(&j).unwrap();
        let img = net.image(&rho).unwrap();
        assert!(img.sigma(rs.parse_root("a2").unwrap()).is_zero());
        assert_eq!(net.image(&RingHom::identity(&ring)).unwrap(), net);
    }

    #[test]
    fn stabilizer_of_s1_net() {
        let (delta, ring) = setup(4);
        let rs = delta.parent().clone();
        let net = net_close(&delta, &ring, &assignment(&rs, &ring, &[("a2", "2")]));
        // only the reflection in a1 keeps each block of the partition in place
        let stab = net.weyl_stabilizer();
        assert_eq!(stab.len(), 2);
        assert_eq!(Net::full(&delta, &ring).weyl_stabilizer().len(), 6);
    }

    #[test]
    fn delta_prime_over_product_ring() {
        let rs = parse_root_system("A2").unwrap();
        let delta = rs.parse_subsystem(&["a1", "-a1"]).unwrap();
        let ring = FiniteRing::new(&RingSpec::Product {
            factors: vec![RingSpec::Zmod { n: 2 }, RingSpec::Zmod { n: 3 }],
        })
        .unwrap();
        let mut asg = BTreeMap::new();
        for a in rs.roots().filter(|&a| !delta.contains(a)) {
            asg.insert(a, vec![ring.parse_elem("(0,1)").unwrap()]);
        }
        let net = net_close(&delta, &ring, &asg);
        let primes = net.defining_primes();
        assert_eq!(primes.len(), 2);
        let sizes: Vec<usize> = primes.iter().map(|p| net.delta_prime(p).unwrap().members().len()).collect();
        let mut sorted = sizes.clone();
        sorted.sort();
        assert_eq!(sorted, [2, 6]);
        assert_eq!(net.delta_prime(&Ideal::zero(&ring)).unwrap_err(), NetError::NotMaximal);
    }

    #[test]
    fn sigma_from_closed_sets() {
        let (delta, ring) = setup(3);
        let rs = delta.parent().clone();
        let closed = ClosedRootSet::parse(&rs, &["a1", "-a1", "a2", "a1+a2"]).unwrap();
        let net = sigma_from_closed_set(&delta, &ring, &closed).unwrap();
        assert_eq!(net.ideals().iter().filter(|s| s.is_zero()).count(), 2);
        let all = ClosedRootSet::new(&rs, rs.roots().collect()).unwrap();
        assert!(sigma_from_closed_set(&delta, &ring, &all).unwrap().is_full());
        let missing = ClosedRootSet::parse(&rs, &["a2"]).unwrap();
        assert_eq!(sigma_from_closed_set(&delta, &ring, &missing).unwrap_err(), NetError::MissingSubsystem);
    }
}
