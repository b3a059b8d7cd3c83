//! Adjoint Chevalley groups over finite rings as explicit matrix groups.
//!
//! An element of `G(Φ, R)` is its matrix on the Chevalley basis. All
//! subgroups are materialized as sorted element sets.

mod fibered;
mod gauss;
mod nets;
mod subgroup;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::chevalg::StructureConstants;
use crate::nets::Net;
use crate::ringkit::{Elem, FiniteRing, Ideal, RingError, RingHom};
use crate::rootsys::{RootSystem, WeylElement};

pub use fibered::FiberedSubgroup;
pub use gauss::{gauss_extract, gauss_rewrite, NormalForm, ProbeTable, RewriteStats};
pub use nets::*;
pub use subgroup::{normal_closure, quotient_structure, QuotientInfo, Subgroup};

/// Default cap on materialized subgroup sizes.
pub const DEFAULT_BUDGET: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("{0} is not a unit")]
    NonUnit(String),
    #[error("subgroup exceeded budget {budget} (partial size {partial})")]
    BudgetExceeded { partial: usize, budget: usize },
    #[error("cannot factor 2x2 matrix {0}")]
    NotFactorable(String),
    #[error("rewriting hit the iteration cap after {steps} steps: {word}")]
    IterationCap { steps: usize, word: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no unit probe for root {0}")]
    NoProbe(String),
    #[error("element is not congruent to the identity")]
    NotCongruent,
    #[error("subgroup is not contained in the ambient group")]
    NotSubset,
}

/// A matrix on the Chevalley basis, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Arc<[Elem]>);

impl GroupElement {
    pub fn entries(&self) -> &[Elem] {
        &self.0
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<u16> = self.0.iter().map(|e| e.0).collect();
        write!(f, "GroupElement({v:?})")
    }
}

/// A single generator in a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Token {
    X { root: usize, xi: Elem },
    Torus(Vec<Elem>),
    Transvection { root: usize, zeta: Elem, eta: Elem, xi: Elem },
    WeylLift(usize),
}

/// A 2×2 matrix `[[a, b], [c, d]]` over the ring.
pub type Mat2 = [[Elem; 2]; 2];

/// The ambient group `G(Φ, R)` in the adjoint representation.
pub struct Chevalley {
    sc: Arc<StructureConstants>,
    ring: Arc<FiniteRing>,
    dim: usize,
    /// Per root: non-identity template entries as `(position, coefficient of ξ^k)`.
    templates: Vec<Vec<(usize, Vec<Elem>)>>,
}

impl fmt::Debug for Chevalley {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chevalley({}, {})", self.rs().name(), self.ring.label())
    }
}

impl Chevalley {
    pub fn new(sc: &Arc<StructureConstants>, ring: &Arc<FiniteRing>) -> Arc<Chevalley> {
        let dim = sc.dim();
        let templates = sc
            .root_system()
            .roots()
            .map(|a| {
                let t = sc.template(a);
                let mut entries = Vec::new();
                for pos in 0..dim * dim {
                    let coeffs: Vec<Elem> = (1..=t.degree()).map(|k| ring.int(t.term(k)[pos])).collect();
                    if coeffs.iter().any(|&c| c != ring.zero()) {
                        entries.push((pos, coeffs));
                    }
                }
                entries
            })
            .collect();
        Arc::new(Chevalley { sc: sc.clone(), ring: ring.clone(), dim, templates })
    }

    pub fn sc(&self) -> &Arc<StructureConstants> {
        &self.sc
    }

    pub fn rs(&self) -> &Arc<RootSystem> {
        self.sc.root_system()
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn identity(&self) -> GroupElement {
        let mut m = vec![Elem::ZERO; self.dim * self.dim];
        for i in 0..self.dim {
            m[i * self.dim + i] = self.ring.one();
        }
        GroupElement(m.into())
    }

    pub fn is_identity(&self, g: &GroupElement) -> bool {
        let d = self.dim;
        g.0.iter().enumerate().all(|(p, &v)| v == if p / d == p % d { self.ring.one() } else { Elem::ZERO })
    }

    pub fn from_entries(&self, entries: Vec<Elem>) -> GroupElement {
        assert_eq!(entries.len(), self.dim * self.dim);
        GroupElement(entries.into())
    }

    #[inline]
    pub fn entry(&self, g: &GroupElement, row: usize, col: usize) -> Elem {
        g.0[row * self.dim + col]
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let d = self.dim;
        let n = self.ring.size();
        let add = self.ring.add_table();
        let mul = self.ring.mul_table();
        let mut out = vec![Elem::ZERO; d * d];
        for i in 0..d {
            let row = &mut out[i * d..(i + 1) * d];
            for k in 0..d {
                let x = a.0[i * d + k];
                if x == Elem::ZERO {
                    continue;
                }
                let mrow = &mul[x.idx() * n..(x.idx() + 1) * n];
                let brow = &b.0[k * d..(k + 1) * d];
                for (r, &y) in row.iter_mut().zip(brow) {
                    let p = mrow[y.idx()];
                    if p != Elem::ZERO {
                        *r = add[r.idx() * n + p.idx()];
                    }
                }
            }
        }
        GroupElement(out.into())
    }

    pub fn product<'a>(&self, items: impl IntoIterator<Item = &'a GroupElement>) -> GroupElement {
        items.into_iter().fold(self.identity(), |acc, g| self.mul(&acc, g))
    }

    /// Order of `g`; panics past `10⁴` since every group here is far smaller.
    pub fn order(&self, g: &GroupElement) -> usize {
        let mut acc = g.clone();
        let mut k = 1;
        while !self.is_identity(&acc) {
            acc = self.mul(&acc, g);
            k += 1;
            assert!(k <= 10_000, "element of unexpectedly large order");
        }
        k
    }

    /// `g⁻¹ = g^{ord(g)−1}`.
    pub fn inverse(&self, g: &GroupElement) -> GroupElement {
        let mut prev = self.identity();
        let mut acc = g.clone();
        while !self.is_identity(&acc) {
            prev = acc.clone();
            acc = self.mul(&acc, g);
        }
        prev
    }

    /// `g h g⁻¹` given `g⁻¹`.
    pub fn conjugate(&self, g: &GroupElement, g_inv: &GroupElement, h: &GroupElement) -> GroupElement {
        self.mul(&self.mul(g, h), g_inv)
    }

    /// `[x, y] = x y x⁻¹ y⁻¹`.
    pub fn commutator(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        self.mul(&xy, &self.inverse(&yx))
    }

    /// `x_α(ξ)`.
    pub fn x(&self, root: usize, xi: Elem) -> GroupElement {
        let r = &self.ring;
        let mut m: Vec<Elem> = self.identity().0.to_vec();
        if xi == Elem::ZERO {
            return GroupElement(m.into());
        }
        for (pos, coeffs) in &self.templates[root] {
            let mut p = xi;
            let mut v = m[*pos];
            for &c in coeffs {
                v = r.add(v, r.mul(c, p));
                p = r.mul(p, xi);
            }
            m[*pos] = v;
        }
        GroupElement(m.into())
    }

    /// Value of the character `χ` on a root: `∏ χ_i^{m_i}`.
    pub fn char_value(&self, chi: &[Elem], root: usize) -> Elem {
        let r = &self.ring;
        self.rs()
            .coords(root)
            .iter()
            .zip(chi)
            .fold(r.one(), |acc, (&m, &c)| r.mul(acc, r.pow(c, m as i64).expect("torus entries are units")))
    }

    /// Torus element acting on `e_β` by `χ(β)` and trivially on `h`.
    pub fn torus(&self, chi: &[Elem]) -> Result<GroupElement, GroupError> {
        if let Some(&c) = chi.iter().find(|&&c| !self.ring.is_unit(c)) {
            return Err(GroupError::NonUnit(self.ring.name(c).to_string()));
        }
        let mut m: Vec<Elem> = self.identity().0.to_vec();
        for b in self.rs().roots() {
            let i = self.sc.e(b);
            m[i * self.dim + i] = self.char_value(chi, b);
        }
        Ok(GroupElement(m.into()))
    }

    /// Character of `h_α(ε)`: `χ_i = ε^{<α_i, α^∨>}`.
    pub fn h_alpha_char(&self, root: usize, eps: Elem) -> Result<Vec<Elem>, GroupError> {
        let r = &self.ring;
        if !r.is_unit(eps) {
            return Err(GroupError::NonUnit(r.name(eps).to_string()));
        }
        let rs = self.rs();
        Ok((0..rs.rank())
            .map(|i| r.pow(eps, rs.pairing(rs.simple(i), root) as i64).unwrap())
            .collect())
    }

    pub fn h_alpha(&self, root: usize, eps: Elem) -> Result<GroupElement, GroupError> {
        self.torus(&self.h_alpha_char(root, eps)?)
    }

    /// `x_α(1) x_{−α}(−1) x_α(1)`.
    pub fn w_lift(&self, root: usize) -> GroupElement {
        let one = self.ring.one();
        let m1 = self.ring.neg(one);
        let a = self.x(root, one);
        self.mul(&self.mul(&a, &self.x(self.rs().neg(root), m1)), &a)
    }

    /// Factors `m ∈ SL₂(R)` as `x_α(−x) x_{−α}(c/a') h_α(a') x_α(b'/a')`.
    pub fn phi_alpha_word(&self, root: usize, m: Mat2) -> Result<Vec<Token>, GroupError> {
        let r = &self.ring;
        let [[a, b], [c, d]] = m;
        if r.sub(r.mul(a, d), r.mul(b, c)) != r.one() {
            return Err(GroupError::NotFactorable(self.mat2_string(m)));
        }
        let x = r
            .elements()
            .find(|&x| r.is_unit(r.add(a, r.mul(x, c))))
            .ok_or_else(|| GroupError::NotFactorable(self.mat2_string(m)))?;
        let a1 = r.add(a, r.mul(x, c));
        let b1 = r.add(b, r.mul(x, d));
        let inv = r.inv(a1).unwrap();
        let neg = self.rs().neg(root);
        Ok(vec![
            Token::X { root, xi: r.neg(x) },
            Token::X { root: neg, xi: r.mul(c, inv) },
            Token::Torus(self.h_alpha_char(root, a1)?),
            Token::X { root, xi: r.mul(b1, inv) },
        ])
    }

    /// `φ_α(m)` for `m ∈ SL₂(R)`.
    pub fn phi_alpha(&self, root: usize, m: Mat2) -> Result<GroupElement, GroupError> {
        self.eval_word(&self.phi_alpha_word(root, m)?)
    }

    /// Matrix `[[1−ξζη, ξζ²], [−ξη², 1+ξζη]]`.
    pub fn transvection_matrix(&self, zeta: Elem, eta: Elem, xi: Elem) -> Mat2 {
        let r = &self.ring;
        let xzh = r.mul(xi, r.mul(zeta, eta));
        [
            [r.sub(r.one(), xzh), r.mul(xi, r.mul(zeta, zeta))],
            [r.neg(r.mul(xi, r.mul(eta, eta))), r.add(r.one(), xzh)],
        ]
    }

    /// `t_α^{ζ,η}(ξ)`.
    pub fn transvection(&self, root: usize, zeta: Elem, eta: Elem, xi: Elem) -> GroupElement {
        self.phi_alpha(root, self.transvection_matrix(zeta, eta, xi))
            .expect("transvections have determinant one")
    }

    pub fn eval(&self, token: &Token) -> Result<GroupElement, GroupError> {
        match token {
            Token::X { root, xi } => Ok(self.x(*root, *xi)),
            Token::Torus(chi) => self.torus(chi),
            Token::Transvection { root, zeta, eta, xi } => Ok(self.transvection(*root, *zeta, *eta, *xi)),
            Token::WeylLift(root) => Ok(self.w_lift(*root)),
        }
    }

    pub fn eval_word(&self, word: &[Token]) -> Result<GroupElement, GroupError> {
        let mut acc = self.identity();
        for t in word {
            acc = self.mul(&acc, &self.eval(t)?);
        }
        Ok(acc)
    }

    pub fn token_string(&self, t: &Token) -> String {
        let r = &self.ring;
        let rs = self.rs();
        match t {
            Token::X { root, xi } => format!("x[{}]({})", rs.root_name(*root), r.name(*xi)),
            Token::Torus(chi) => {
                let v: Vec<&str> = chi.iter().map(|&c| r.name(c)).collect();
                format!("h({})", v.join(","))
            }
            Token::Transvection { root, zeta, eta, xi } => format!(
                "t[{}]^({},{})({})",
                rs.root_name(*root),
                r.name(*zeta),
                r.name(*eta),
                r.name(*xi)
            ),
            Token::WeylLift(root) => format!("w[{}]", rs.root_name(*root)),
        }
    }

    pub fn word_string(&self, word: &[Token]) -> String {
        word.iter().map(|t| self.token_string(t)).collect::<Vec<_>>().join(" ")
    }

    fn mat2_string(&self, m: Mat2) -> String {
        let n = |e: Elem| self.ring.name(e).to_string();
        format!("[[{}, {}], [{}, {}]]", n(m[0][0]), n(m[0][1]), n(m[1][0]), n(m[1][1]))
    }

    /// One-line text form: rows separated by `;`, entries by spaces.
    pub fn format(&self, g: &GroupElement) -> String {
        g.0.chunks(self.dim)
            .map(|row| row.iter().map(|&e| self.ring.name(e)).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Entrywise image under a ring map into `target`'s ring.
    pub fn map(&self, g: &GroupElement, f: &RingHom, target: &Chevalley) -> GroupElement {
        debug_assert_eq!(self.dim, target.dim);
        GroupElement(g.0.iter().map(|&e| f.apply(e)).collect::<Vec<_>>().into())
    }

    /// `g ≡ 1 (mod I)`.
    pub fn is_congruent(&self, g: &GroupElement, ideal: &Ideal) -> bool {
        let d = self.dim;
        let r = &self.ring;
        g.0.iter().enumerate().all(|(p, &v)| {
            let v = if p / d == p % d { r.sub(v, r.one()) } else { v };
            ideal.contains(v)
        })
    }

    /// Does `g` map every module generator of `L(σ)` into `L(σ)`?
    pub fn stabilizes(&self, g: &GroupElement, net: &Net) -> bool {
        let rs = self.rs();
        let l = rs.rank();
        let r = &self.ring;
        let cols_ok = |col: usize, scale: Elem| {
            rs.roots().all(|b| net.sigma(b).contains(r.mul(scale, self.entry(g, l + b, col))))
        };
        (0..l).all(|i| cols_ok(i, r.one()))
            && rs.roots().all(|a| net.sigma(a).generators().into_iter().all(|s| cols_ok(l + a, s)))
    }

    /// The root permutation of a monomial element, if it is one.
    pub fn root_permutation(&self, g: &GroupElement) -> Option<WeylElement> {
        let rs = self.rs();
        let l = rs.rank();
        let mut perm = Vec::with_capacity(rs.num_roots());
        for b in rs.roots() {
            let col = l + b;
            if (0..l).any(|i| self.entry(g, i, col) != Elem::ZERO) {
                return None;
            }
            let mut hits = rs.roots().filter(|&c| self.entry(g, l + c, col) != Elem::ZERO);
            let c = hits.next()?;
            if hits.next().is_some() || !self.ring.is_unit(self.entry(g, l + c, col)) {
                return None;
            }
            perm.push(c);
        }
        Some(WeylElement::from_perm(perm))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::ringkit::RingSpec;
    use crate::rootsys::parse_root_system;

    pub(crate) fn ctx(system: &str, spec: RingSpec) -> Arc<Chevalley> {
        let rs = parse_root_system(system).unwrap();
        let sc = Arc::new(StructureConstants::new(&rs));
        Chevalley::new(&sc, &FiniteRing::new(&spec).unwrap())
    }

    #[test]
    fn one_parameter_subgroups() {
        let g = ctx("B2", RingSpec::Zmod { n: 4 });
        let r = g.ring().clone();
        for a in g.rs().roots() {
            assert!(g.is_identity(&g.x(a, r.zero())));
            for xi in r.elements() {
                for zeta in r.elements() {
                    assert_eq!(g.mul(&g.x(a, xi), &g.x(a, zeta)), g.x(a, r.add(xi, zeta)));
                }
            }
        }
    }

    #[test]
    fn h_alpha_is_a_product_of_weyl_lifts() {
        let g = ctx("A2", RingSpec::Zmod { n: 5 });
        let r = g.ring().clone();
        for a in g.rs().roots() {
            for eps in r.units() {
                let e_inv = r.inv(eps).unwrap();
                // w_α(ε) = x_α(ε) x_{−α}(−ε⁻¹) x_α(ε)
                let w = |e: Elem, ei: Elem| {
                    g.product([&g.x(a, e), &g.x(g.rs().neg(a), r.neg(ei)), &g.x(a, e)])
                };
                let m1 = r.neg(r.one());
                let lhs = g.mul(&w(eps, e_inv), &w(m1, m1));
                assert_eq!(lhs, g.h_alpha(a, eps).unwrap());
            }
        }
    }

    #[test]
    fn phi_alpha_on_standard_matrices() {
        let g = ctx("A2", RingSpec::Zmod { n: 4 });
        let r = g.ring().clone();
        let (o, z) = (r.one(), r.zero());
        for a in g.rs().roots() {
            assert!(g.is_identity(&g.phi_alpha(a, [[o, z], [z, o]]).unwrap()));
            for xi in r.elements() {
                assert_eq!(g.phi_alpha(a, [[o, xi], [z, o]]).unwrap(), g.x(a, xi));
                assert_eq!(g.phi_alpha(a, [[o, z], [xi, o]]).unwrap(), g.x(g.rs().neg(a), xi));
            }
            for eps in r.units() {
                let d = [[eps, z], [z, r.inv(eps).unwrap()]];
                assert_eq!(g.phi_alpha(a, d).unwrap(), g.h_alpha(a, eps).unwrap());
            }
        }
    }

    #[test]
    fn weyl_lift_sends_root_vector_to_its_negative() {
        let g = ctx("B2", RingSpec::Zmod { n: 3 });
        let rs = g.rs().clone();
        for a in rs.roots() {
            let w = g.w_lift(a);
            let col = g.sc().e(a);
            let row = g.sc().e(rs.neg(a));
            let v = g.entry(&w, row, col);
            assert!(v == g.ring().one() || v == g.ring().neg(g.ring().one()));
            let perm = g.root_permutation(&w).unwrap();
            assert_eq!(perm, rs.reflection(a));
        }
    }

    #[test]
    fn torus_rejects_non_units() {
        let g = ctx("A2", RingSpec::Zmod { n: 4 });
        let two = g.ring().int(2);
        assert!(matches!(g.torus(&[two, g.ring().one()]), Err(GroupError::NonUnit(_))));
    }

    #[test]
    fn inverse_and_order() {
        let g = ctx("A2", RingSpec::Zmod { n: 4 });
        let r = g.ring().clone();
        let a = g.rs().parse_root("a1").unwrap();
        let b = g.rs().parse_root("-a2").unwrap();
        let x = g.mul(&g.x(a, r.one()), &g.x(b, r.int(3)));
        assert!(g.is_identity(&g.mul(&x, &g.inverse(&x))));
        assert_eq!(g.order(&g.x(a, r.one())), 4);
    }
}
