//! Chevalley basis of the simple Lie algebra, its structure constants and
//! the integral polynomial templates of the adjoint root elements.
//!
//! Basis order everywhere: `h_1 .. h_l`, then `e_γ` for the roots in
//! [`RootSystem::gauss_order`]. Matrices act on column vectors, so column
//! `j` of a matrix is the image of basis vector `j`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::nets::Net;
use crate::ringkit::{Elem, FiniteRing, RingError};
use crate::rootsys::{RootSystem, Subsystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("structure constants inconsistent at {0}")]
    Inconsistent(String),
}

/// Signed structure constants `N_{α,β}` for one root system.
#[derive(Debug)]
pub struct StructureConstants {
    rs: Arc<RootSystem>,
    n: Vec<i32>,
    coroot: Vec<Vec<i32>>,
}

impl StructureConstants {
    /// Extraspecial-pair construction: on each positive non-simple root the
    /// extraspecial pair gets sign `+`, every other constant follows.
    pub fn new(rs: &Arc<RootSystem>) -> StructureConstants {
        let nr = rs.num_roots();
        let mut sc = StructureConstants {
            rs: rs.clone(),
            n: vec![0; nr * nr],
            coroot: rs.roots().map(|r| rs.coroot_coeffs(r)).collect(),
        };
        let positive: Vec<usize> = rs.positive_roots().collect();
        for &xi in &positive {
            let mut pairs = Vec::new();
            for &a in &positive {
                for &b in &positive {
                    if a < b && rs.sum(a, b) == Some(xi) {
                        pairs.push((a, b));
                    }
                }
            }
            let Some(&(alpha, beta)) = pairs.iter().min() else {
                continue;
            };
            sc.fill(alpha, beta, sc.magnitude(alpha, beta));
            let len_xi = rs.len2(xi);
            for &(r, s) in &pairs[1..] {
                if r == alpha {
                    continue;
                }
                // four-root identity on (r, s, −α, −β)
                let (na, nb) = (rs.neg(alpha), rs.neg(beta));
                let term = |x: usize, y: usize, u: usize, v: usize| -> (i64, i64) {
                    match rs.sum(x, y) {
                        Some(w) => (sc.get(x, y) as i64 * sc.get(u, v) as i64, rs.len2(w) as i64),
                        None => (0, 1),
                    }
                };
                let (a1, l1) = term(s, na, r, nb);
                let (a2, l2) = term(na, r, s, nb);
                let num = -(len_xi as i64) * (a1 * l2 + a2 * l1);
                let den = l1 * l2 * sc.get(na, nb) as i64;
                assert!(num % den == 0, "non-integral constant at {}", rs.root_name(xi));
                let value = (num / den) as i32;
                assert_eq!(value.abs(), sc.magnitude(r, s), "wrong magnitude at {}", rs.root_name(xi));
                sc.fill(r, s, value);
            }
        }
        sc
    }

    /// `p + 1` with `p` maximal such that `β − pα ∈ Φ`.
    fn magnitude(&self, alpha: usize, beta: usize) -> i32 {
        let mut p = 0;
        while self.rs.combo(1, beta, -(p + 1), alpha).is_some() {
            p += 1;
        }
        p + 1
    }

    /// Records `N_{a,b}` for positive `a, b` and every constant tied to it by
    /// antisymmetry, `N_{−a,−b} = −N_{a,b}` and the zero-sum triple rule.
    fn fill(&mut self, a: usize, b: usize, value: i32) {
        let rs = self.rs.clone();
        let c = rs.neg(rs.sum(a, b).expect("summable pair"));
        let (la, lb, lc) = (rs.len2(a), rs.len2(b), rs.len2(c));
        // N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b)
        assert!((value * la) % lc == 0 && (value * lb) % lc == 0);
        let triple = [(a, b, value), (b, c, value * la / lc), (c, a, value * lb / lc)];
        let nr = rs.num_roots();
        for (x, y, v) in triple {
            self.n[x * nr + y] = v;
            self.n[y * nr + x] = -v;
            self.n[rs.neg(x) * nr + rs.neg(y)] = -v;
            self.n[rs.neg(y) * nr + rs.neg(x)] = v;
        }
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    /// `N_{α,β}`, or `0` when `α + β` is not a root.
    #[inline]
    pub fn get(&self, a: usize, b: usize) -> i32 {
        self.n[a * self.rs.num_roots() + b]
    }

    /// Expansion of `h_α` in `h_1 .. h_l`.
    pub fn coroot(&self, alpha: usize) -> &[i32] {
        &self.coroot[alpha]
    }

    /// `(1/k!) ∏_{i<k} N_{α, β+iα}`; `None` when the string breaks first.
    pub fn divided(&self, alpha: usize, beta: usize, k: usize) -> Option<i64> {
        let mut prod: i64 = 1;
        let mut cur = beta;
        for _ in 0..k {
            let next = self.rs.sum(alpha, cur)?;
            prod *= self.get(alpha, cur) as i64;
            cur = next;
        }
        let fact: i64 = (1..=k as i64).product();
        (prod % fact == 0).then_some(prod / fact)
    }

    pub fn dim(&self) -> usize {
        self.rs.rank() + self.rs.num_roots()
    }

    /// Index of `e_γ` in the basis.
    #[inline]
    pub fn e(&self, root: usize) -> usize {
        self.rs.rank() + root
    }

    /// Bracket of two basis vectors over `Z`, as sparse `(index, coefficient)`.
    pub fn bracket_basis(&self, x: usize, y: usize) -> Vec<(usize, i64)> {
        let l = self.rs.rank();
        match (x < l, y < l) {
            (true, true) => vec![],
            (true, false) => {
                let b = y - l;
                let c = self.rs.simple_pairing(b, x) as i64;
                if c == 0 { vec![] } else { vec![(y, c)] }
            }
            (false, true) => {
                let a = x - l;
                let c = self.rs.simple_pairing(a, y) as i64;
                if c == 0 { vec![] } else { vec![(x, -c)] }
            }
            (false, false) => {
                let (a, b) = (x - l, y - l);
                if b == self.rs.neg(a) {
                    self.coroot[a]
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(i, &c)| (i, c as i64))
                        .collect()
                } else if let Some(s) = self.rs.sum(a, b) {
                    vec![(l + s, self.get(a, b) as i64)]
                } else {
                    vec![]
                }
            }
        }
    }

    /// Bracket of two integer vectors.
    pub fn bracket_int(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.dim()];
        for (i, &xi) in x.iter().enumerate().filter(|(_, &v)| v != 0) {
            for (j, &yj) in y.iter().enumerate().filter(|(_, &v)| v != 0) {
                for (k, c) in self.bracket_basis(i, j) {
                    out[k] += xi * yj * c;
                }
            }
        }
        out
    }

    /// First basis triple violating the Jacobi identity over `Z`.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        let unit = |i: usize| {
            let mut v = vec![0i64; d];
            v[i] = 1;
            v
        };
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let (x, y, z) = (unit(i), unit(j), unit(k));
                    let t1 = self.bracket_int(&x, &self.bracket_int(&y, &z));
                    let t2 = self.bracket_int(&y, &self.bracket_int(&z, &x));
                    let t3 = self.bracket_int(&z, &self.bracket_int(&x, &y));
                    if (0..d).any(|m| t1[m] + t2[m] + t3[m] != 0) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Matrix of `ad x` for a basis vector `x`, row-major.
    pub fn ad_basis(&self, x: usize) -> Vec<i64> {
        let d = self.dim();
        let mut m = vec![0i64; d * d];
        for col in 0..d {
            for (row, c) in self.bracket_basis(x, col) {
                m[row * d + col] += c;
            }
        }
        m
    }

    /// Constants of `x_α(ξ) x_β(ζ) x_α(ξ)⁻¹ x_β(ζ)⁻¹ = ∏ x_{iβ+jα}(c ζ^i ξ^j)`
    /// for non-proportional `α, β`, listed in increasing `i + j`.
    pub fn commutator_terms(&self, alpha: usize, beta: usize) -> Vec<CommutatorTerm> {
        let rs = &self.rs;
        let n = |x: usize, y: usize| self.get(x, y) as i64;
        let mut out = Vec::new();
        for total in 2..=5 {
            for i in 1..total {
                let j = total - i;
                let Some(root) = rs.combo(i, beta, j, alpha) else { continue };
                let c = if j == 1 {
                    // (1/i!) ∏_{k<i} N_{β, kβ+α}
                    let mut p = 1i64;
                    for k in 0..i {
                        p *= n(beta, rs.combo(k, beta, 1, alpha).unwrap());
                    }
                    p / (1..=i as i64).product::<i64>()
                } else if i == 1 {
                    // (−1)^j (1/j!) ∏_{k<j} N_{α, kα+β}
                    let mut p = 1i64;
                    for k in 0..j {
                        p *= n(alpha, rs.combo(k, alpha, 1, beta).unwrap());
                    }
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    sign * p / (1..=j as i64).product::<i64>()
                } else {
                    let ab = rs.sum(alpha, beta).unwrap();
                    if (i, j) == (3, 2) {
                        n(ab, beta) * n(ab, rs.combo(1, alpha, 2, beta).unwrap()) / 6
                    } else {
                        -n(ab, alpha) * n(ab, rs.combo(2, alpha, 1, beta).unwrap()) / 3
                    }
                };
                // the ξ-exponent carries the sign of (−ξ)^j
                let c = if j % 2 == 0 { c } else { -c };
                out.push(CommutatorTerm { i: i as u32, j: j as u32, root, coeff: c });
            }
        }
        out
    }

    /// Golden-table text: one line `(α) (β) ±N` per summable pair.
    pub fn dump_table(&self) -> String {
        let rs = &self.rs;
        let mut s = String::new();
        for a in rs.roots() {
            for b in rs.roots() {
                if rs.sum(a, b).is_some() {
                    let _ = writeln!(
                        s,
                        "{} {} {:+}",
                        rs.root_coords_string(a),
                        rs.root_coords_string(b),
                        self.get(a, b)
                    );
                }
            }
        }
        s
    }

    pub fn template(self: &Arc<Self>, alpha: usize) -> GeneratorTemplate {
        GeneratorTemplate::new(self, alpha)
    }
}

/// One factor `x_root(coeff · ζ^i · ξ^j)` of a commutator expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CommutatorTerm {
    pub i: u32,
    pub j: u32,
    pub root: usize,
    pub coeff: i64,
}

/// `x_α(ξ) = Σ_k ξ^k T_k` with integral `T_k = (ad e_α)^k / k!`.
#[derive(Clone, Debug)]
pub struct GeneratorTemplate {
    root: usize,
    dim: usize,
    terms: Vec<Vec<i64>>,
}

impl GeneratorTemplate {
    fn new(sc: &StructureConstants, alpha: usize) -> GeneratorTemplate {
        let d = sc.dim();
        let ad = sc.ad_basis(sc.e(alpha));
        let mut identity = vec![0i64; d * d];
        for i in 0..d {
            identity[i * d + i] = 1;
        }
        let mut terms = vec![identity.clone()];
        let mut power = identity;
        for k in 1.. {
            power = int_matmul(&ad, &power, d);
            if power.iter().all(|&v| v == 0) {
                break;
            }
            let fact: i64 = (1..=k).product();
            let term: Vec<i64> = power
                .iter()
                .map(|&v| {
                    assert_eq!(v % fact, 0, "divided power not integral");
                    v / fact
                })
                .collect();
            terms.push(term);
        }
        GeneratorTemplate { root: alpha, dim: d, terms }
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn degree(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coefficient matrix of `ξ^k`.
    pub fn term(&self, k: usize) -> &[i64] {
        &self.terms[k]
    }

    pub fn eval_int(&self, xi: i64) -> Vec<i64> {
        let mut out = vec![0i64; self.dim * self.dim];
        let mut p = 1i64;
        for t in &self.terms {
            for (o, &v) in out.iter_mut().zip(t) {
                *o += v * p;
            }
            p *= xi;
        }
        out
    }

    /// Row-major evaluation over a finite ring.
    pub fn eval(&self, ring: &FiniteRing, xi: Elem) -> Vec<Elem> {
        let coeffs: Vec<Vec<Elem>> =
            self.terms.iter().map(|t| t.iter().map(|&v| ring.int(v)).collect()).collect();
        let mut out = vec![ring.zero(); self.dim * self.dim];
        let mut p = ring.one();
        for c in &coeffs {
            for (o, &v) in out.iter_mut().zip(c) {
                *o = ring.add(*o, ring.mul(v, p));
            }
            p = ring.mul(p, xi);
        }
        out
    }
}

pub(crate) fn int_matmul(a: &[i64], b: &[i64], d: usize) -> Vec<i64> {
    let mut out = vec![0i64; d * d];
    for i in 0..d {
        for k in 0..d {
            let x = a[i * d + k];
            if x == 0 {
                continue;
            }
            for j in 0..d {
                out[i * d + j] += x * b[k * d + j];
            }
        }
    }
    out
}

/// An element of `L(Φ, R)` in the Chevalley basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement {
    ring: Arc<FiniteRing>,
    coeffs: Vec<Elem>,
}

impl LieElement {
    pub fn zero(sc: &StructureConstants, ring: &Arc<FiniteRing>) -> LieElement {
        LieElement { ring: ring.clone(), coeffs: vec![ring.zero(); sc.dim()] }
    }

    /// `c · b` for basis vector `b`.
    pub fn basis(sc: &StructureConstants, ring: &Arc<FiniteRing>, b: usize, c: Elem) -> LieElement {
        let mut x = LieElement::zero(sc, ring);
        x.coeffs[b] = c;
        x
    }

    pub fn from_coeffs(ring: &Arc<FiniteRing>, coeffs: Vec<Elem>) -> LieElement {
        LieElement { ring: ring.clone(), coeffs }
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff_h(&self, i: usize) -> Elem {
        self.coeffs[i]
    }

    pub fn coeff_e(&self, sc: &StructureConstants, root: usize) -> Elem {
        self.coeffs[sc.e(root)]
    }

    pub fn add(&self, other: &LieElement) -> Result<LieElement, AlgebraError> {
        self.ring.check_same(&other.ring)?;
        let r = &self.ring;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| r.add(a, b)).collect();
        Ok(LieElement { ring: r.clone(), coeffs })
    }

    pub fn scale(&self, c: Elem) -> LieElement {
        let r = &self.ring;
        LieElement { ring: r.clone(), coeffs: self.coeffs.iter().map(|&a| r.mul(a, c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == self.ring.zero())
    }
}

/// `[x, y]` over the coefficient ring.
pub fn bracket(sc: &StructureConstants, x: &LieElement, y: &LieElement) -> Result<LieElement, AlgebraError> {
    x.ring.check_same(&y.ring)?;
    let r = &x.ring;
    let mut out = vec![r.zero(); sc.dim()];
    for (i, &a) in x.coeffs.iter().enumerate().filter(|(_, &a)| a != r.zero()) {
        for (j, &b) in y.coeffs.iter().enumerate().filter(|(_, &b)| b != r.zero()) {
            let ab = r.mul(a, b);
            for (k, c) in sc.bracket_basis(i, j) {
                out[k] = r.add(out[k], r.mul(r.int(c), ab));
            }
        }
    }
    Ok(LieElement { ring: r.clone(), coeffs: out })
}

/// Condition that every root outside `Δ` is reached from `Δ` with a unit
/// structure constant. `Ok` carries the witness `γ ↦ α`, `Err` the first
/// failing `γ`.
pub fn check_condition_star(
    sc: &StructureConstants,
    delta: &Subsystem,
    ring: &FiniteRing,
) -> Result<BTreeMap<usize, usize>, usize> {
    let rs = sc.root_system();
    let mut witness = BTreeMap::new();
    for gamma in rs.roots().filter(|&g| !delta.contains(g)) {
        let found = delta.members().iter().copied().find(|&a| {
            rs.sum(a, gamma).is_some() && ring.is_unit(ring.int(sc.get(a, gamma) as i64))
        });
        match found {
            Some(a) => {
                witness.insert(gamma, a);
            }
            None => return Err(gamma),
        }
    }
    Ok(witness)
}

/// The Lie subring `L(σ) = D ⊕ ⨁ σ_α e_α`.
#[derive(Clone, Debug)]
pub struct LSigma<'a> {
    pub net: &'a Net,
}

impl<'a> LSigma<'a> {
    pub fn new(net: &'a Net) -> LSigma<'a> {
        LSigma { net }
    }

    pub fn contains(&self, sc: &StructureConstants, x: &LieElement) -> Result<bool, AlgebraError> {
        in_l_sigma(sc, x, self.net)
    }

    /// `R`-module generators: every `h_i` and `s·e_α` for ideal generators `s` of `σ_α`.
    pub fn module_generators(&self, sc: &StructureConstants) -> Vec<LieElement> {
        let ring = self.net.ring();
        let rs = sc.root_system();
        let mut gens: Vec<LieElement> =
            (0..rs.rank()).map(|i| LieElement::basis(sc, ring, i, ring.one())).collect();
        for r in rs.roots() {
            for s in self.net.sigma(r).generators() {
                gens.push(LieElement::basis(sc, ring, sc.e(r), s));
            }
        }
        gens
    }

    /// First pair of module generators whose bracket leaves `L(σ)`.
    pub fn closure_violation(&self, sc: &StructureConstants) -> Result<Option<(LieElement, LieElement)>, AlgebraError> {
        let gens = self.module_generators(sc);
        for x in &gens {
            for y in &gens {
                if !self.contains(sc, &bracket(sc, x, y)?)? {
                    return Ok(Some((x.clone(), y.clone())));
                }
            }
        }
        Ok(None)
    }
}

/// Every root coefficient of `x` lies in the matching ideal of the net.
pub fn in_l_sigma(sc: &StructureConstants, x: &LieElement, net: &Net) -> Result<bool, AlgebraError> {
    x.ring.check_same(net.ring())?;
    let rs = sc.root_system();
    Ok(rs.roots().all(|r| net.sigma(r).contains(x.coeff_e(sc, r))))
}
