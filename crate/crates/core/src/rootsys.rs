//! Irreducible root systems in simple-root coordinates, subsystems, closed
//! root sets and Weyl groups acting as permutations of the roots.
//!
//! Roots are stored in a fixed total order (see [`RootSystem::gauss_order`]):
//! all negative roots first, then all positive ones, each block by height of
//! the absolute value and then by coordinates in descending lexicographic
//! order. A root is referred to by its position in that order.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("unsupported root system {0}")]
    Unsupported(String),
    #[error("cannot parse root expression {0:?}")]
    BadRoot(String),
    #[error("{0} is not a root")]
    NotARoot(String),
    #[error("root set is not symmetric: {0} present without its negative")]
    NotSymmetric(String),
    #[error("root set is not closed: {0} + {1} is missing")]
    NotClosed(String, String),
    #[error("subsystem must be a proper subset of the roots")]
    NotProper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    G,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            CartanType::A => 'A',
            CartanType::B => 'B',
            CartanType::C => 'C',
            CartanType::D => 'D',
            CartanType::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// An irreducible reduced crystallographic root system of small rank.
#[derive(Debug)]
pub struct RootSystem {
    kind: CartanType,
    rank: usize,
    /// `cartan[i][j] = <α_i, α_j^∨>`.
    cartan: Vec<Vec<i32>>,
    /// Squared length of each simple root.
    simple_len2: Vec<i32>,
    roots: Vec<Vec<i32>>,
    index: HashMap<Vec<i32>, usize>,
    neg: Vec<usize>,
    sum: Vec<Option<usize>>,
    simple: Vec<usize>,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.rank == other.rank
    }
}
impl Eq for RootSystem {}

fn height(v: &[i32]) -> i32 {
    v.iter().sum()
}

fn gauss_cmp(a: &[i32], b: &[i32]) -> Ordering {
    let pos_a = height(a) > 0;
    let pos_b = height(b) > 0;
    let abs = |v: &[i32]| -> Vec<i32> { v.iter().map(|x| x.abs()).collect() };
    let (aa, bb) = (abs(a), abs(b));
    pos_a
        .cmp(&pos_b)
        .then(height(&aa).cmp(&height(&bb)))
        .then(bb.cmp(&aa))
}

impl RootSystem {
    /// Supported: A1 to A4, B2, B3, C2, C3, D4, G2.
    pub fn new(kind: CartanType, rank: usize) -> Result<Arc<RootSystem>, RootError> {
        let supported = match kind {
            CartanType::A => (1..=4).contains(&rank),
            CartanType::B | CartanType::C => (2..=3).contains(&rank),
            CartanType::D => rank == 4,
            CartanType::G => rank == 2,
        };
        if !supported {
            return Err(RootError::Unsupported(format!("{kind}{rank}")));
        }
        let l = rank;
        let mut cartan = vec![vec![0i32; l]; l];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut simple_len2 = vec![2i32; l];
        match kind {
            CartanType::A | CartanType::B | CartanType::C => {
                for i in 0..l.saturating_sub(1) {
                    cartan[i][i + 1] = -1;
                    cartan[i + 1][i] = -1;
                }
                if kind == CartanType::B {
                    // α_l short
                    cartan[l - 2][l - 1] = -2;
                    simple_len2 = vec![4; l];
                    simple_len2[l - 1] = 2;
                } else if kind == CartanType::C {
                    // α_l long
                    cartan[l - 1][l - 2] = -2;
                    simple_len2 = vec![2; l];
                    simple_len2[l - 1] = 4;
                }
            }
            CartanType::D => {
                for (i, j) in [(0, 1), (1, 2), (1, 3)] {
                    cartan[i][j] = -1;
                    cartan[j][i] = -1;
                }
            }
            CartanType::G => {
                // α_1 short, α_2 long
                cartan[0][1] = -1;
                cartan[1][0] = -3;
                simple_len2 = vec![2, 6];
            }
        }

        // positive roots by simple-root strings
        let unit = |i: usize| {
            let mut v = vec![0; l];
            v[i] = 1;
            v
        };
        let mut positive: Vec<Vec<i32>> = (0..l).map(unit).collect();
        let mut known: BTreeSet<Vec<i32>> = positive.iter().cloned().collect();
        let mut k = 0;
        while k < positive.len() {
            let beta = positive[k].clone();
            for i in 0..l {
                // p = how far β − pα_i stays a root
                let mut p = 0;
                loop {
                    let mut down = beta.clone();
                    down[i] -= p + 1;
                    if known.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i32 = (0..l).map(|j| beta[j] * cartan[j][i]).sum();
                let q = p - pairing;
                if q > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        positive.push(up);
                    }
                }
            }
            k += 1;
        }
        let mut roots: Vec<Vec<i32>> = positive
            .iter()
            .map(|v| v.iter().map(|x| -x).collect())
            .chain(positive.iter().cloned())
            .collect();
        roots.sort_by(|a, b| gauss_cmp(a, b));
        let index: HashMap<Vec<i32>, usize> =
            roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let neg = roots
            .iter()
            .map(|r| index[&r.iter().map(|x| -x).collect::<Vec<_>>()])
            .collect();
        let n = roots.len();
        let mut sum = vec![None; n * n];
        for a in 0..n {
            for b in 0..n {
                let s: Vec<i32> = roots[a].iter().zip(&roots[b]).map(|(x, y)| x + y).collect();
                sum[a * n + b] = index.get(&s).copied();
            }
        }
        let simple = (0..l).map(|i| index[&unit(i)]).collect();
        Ok(Arc::new(RootSystem { kind, rank, cartan, simple_len2, roots, index, neg, sum, simple }))
    }

    pub fn kind(&self) -> CartanType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn roots(&self) -> impl Iterator<Item = usize> {
        0..self.roots.len()
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = usize> + '_ {
        self.roots().filter(|&r| self.is_positive(r))
    }

    pub fn coords(&self, r: usize) -> &[i32] {
        &self.roots[r]
    }

    pub fn root_of(&self, coords: &[i32]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn simple(&self, i: usize) -> usize {
        self.simple[i]
    }

    pub fn simple_roots(&self) -> &[usize] {
        &self.simple
    }

    #[inline]
    pub fn neg(&self, r: usize) -> usize {
        self.neg[r]
    }

    /// `α + β` when it is a root.
    #[inline]
    pub fn sum(&self, a: usize, b: usize) -> Option<usize> {
        self.sum[a * self.roots.len() + b]
    }

    /// `i·α + j·β` when it is a root.
    pub fn combo(&self, i: i32, a: usize, j: i32, b: usize) -> Option<usize> {
        let v: Vec<i32> = self.roots[a]
            .iter()
            .zip(&self.roots[b])
            .map(|(x, y)| i * x + j * y)
            .collect();
        self.root_of(&v)
    }

    pub fn is_positive(&self, r: usize) -> bool {
        height(&self.roots[r]) > 0
    }

    pub fn height(&self, r: usize) -> i32 {
        height(&self.roots[r])
    }

    /// Symmetric bilinear form with ADE roots of squared length 2.
    pub fn inner(&self, a: &[i32], b: &[i32]) -> i32 {
        let l = self.rank;
        let mut s = 0;
        for i in 0..l {
            for j in 0..l {
                // (α_i, α_j) = <α_i, α_j^∨> (α_j, α_j) / 2
                s += a[i] * b[j] * self.cartan[i][j] * self.simple_len2[j] / 2;
            }
        }
        s
    }

    pub fn len2(&self, r: usize) -> i32 {
        self.inner(&self.roots[r], &self.roots[r])
    }

    /// `<β, α^∨> = 2(β, α)/(α, α)`.
    pub fn pairing(&self, beta: usize, alpha: usize) -> i32 {
        2 * self.inner(&self.roots[beta], &self.roots[alpha]) / self.len2(alpha)
    }

    /// `<β, α_i^∨>` against the i-th simple coroot.
    pub fn simple_pairing(&self, beta: usize, i: usize) -> i32 {
        (0..self.rank).map(|j| self.roots[beta][j] * self.cartan[j][i]).sum()
    }

    /// Coefficients of `α^∨` in the simple coroots `α_1^∨ .. α_l^∨`.
    pub fn coroot_coeffs(&self, alpha: usize) -> Vec<i32> {
        let len = self.len2(alpha);
        (0..self.rank)
            .map(|i| self.roots[alpha][i] * self.simple_len2[i] / len)
            .collect()
    }

    pub fn is_long(&self, r: usize) -> bool {
        let max = self.roots().map(|x| self.len2(x)).max().unwrap_or(0);
        self.len2(r) == max
    }

    /// The fixed total order used for Gauss normal forms, as root indices.
    pub fn gauss_order(&self) -> Vec<usize> {
        self.roots().collect()
    }

    /// Formats a root as `a1+2a2`, `-a1-a2`.
    pub fn root_name(&self, r: usize) -> String {
        let mut s = String::new();
        for (i, &c) in self.roots[r].iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            if c.abs() != 1 {
                s.push_str(&c.abs().to_string());
            }
            s.push_str(&format!("a{}", i + 1));
        }
        s
    }

    /// Coordinate form `(1,2)` used by table dumps.
    pub fn root_coords_string(&self, r: usize) -> String {
        let parts: Vec<String> = self.roots[r].iter().map(|c| c.to_string()).collect();
        format!("({})", parts.join(","))
    }

    /// Parses `a1+a2`, `-a1-2a2`, `2*a2+a1`.
    pub fn parse_root(&self, src: &str) -> Result<usize, RootError> {
        let bad = || RootError::BadRoot(src.to_string());
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad());
        }
        let mut v = vec![0i32; self.rank];
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in s.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        for t in terms {
            let (sign, body) = match t.strip_prefix('-') {
                Some(r) => (-1, r),
                None => (1, t.strip_prefix('+').unwrap_or(&t)),
            };
            let pos = body.find('a').ok_or_else(bad)?;
            let c = body[..pos].trim_end_matches('*');
            let c: i32 = if c.is_empty() { 1 } else { c.parse().map_err(|_| bad())? };
            let i: usize = body[pos + 1..].parse().map_err(|_| bad())?;
            if i == 0 || i > self.rank {
                return Err(bad());
            }
            v[i - 1] += sign * c;
        }
        self.root_of(&v).ok_or_else(|| RootError::NotARoot(src.to_string()))
    }

    /// Simple reflection `s_i` as a root permutation.
    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        self.reflection(self.simple[i])
    }

    /// Reflection in the hyperplane orthogonal to `alpha`.
    pub fn reflection(&self, alpha: usize) -> WeylElement {
        let perm = self
            .roots()
            .map(|b| {
                let k = self.pairing(b, alpha);
                let v: Vec<i32> = self.roots[b]
                    .iter()
                    .zip(&self.roots[alpha])
                    .map(|(x, y)| x - k * y)
                    .collect();
                self.index[&v]
            })
            .collect();
        WeylElement { perm }
    }

    /// The Weyl group as root permutations, sorted.
    pub fn weyl_group(&self) -> Vec<WeylElement> {
        let gens: Vec<WeylElement> = (0..self.rank).map(|i| self.simple_reflection(i)).collect();
        WeylElement::closure(self.num_roots(), &gens)
    }

    /// Symmetric, closed, proper subsystem from root expressions.
    pub fn parse_subsystem(self: &Arc<Self>, exprs: &[impl AsRef<str>]) -> Result<Subsystem, RootError> {
        let members = exprs
            .iter()
            .map(|e| self.parse_root(e.as_ref()))
            .collect::<Result<BTreeSet<_>, _>>()?;
        Subsystem::new(self, members)
    }

    /// Smallest symmetric closed set containing `seed`.
    pub fn subsystem_closure(&self, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = seed.iter().flat_map(|&r| [r, self.neg(r)]).collect();
        loop {
            let mut added = Vec::new();
            for &a in &set {
                for &b in &set {
                    if let Some(s) = self.sum(a, b) {
                        if !set.contains(&s) {
                            added.push(s);
                        }
                    }
                }
            }
            if added.is_empty() {
                return set;
            }
            for s in added {
                set.insert(s);
                set.insert(self.neg(s));
            }
        }
    }

    fn check_closed(&self, members: &BTreeSet<usize>) -> Result<(), RootError> {
        for &a in members {
            for &b in members {
                if let Some(s) = self.sum(a, b) {
                    if !members.contains(&s) {
                        return Err(RootError::NotClosed(self.root_name(a), self.root_name(b)));
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for CartanType {
    type Err = RootError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" => Ok(CartanType::A),
            "B" => Ok(CartanType::B),
            "C" => Ok(CartanType::C),
            "D" => Ok(CartanType::D),
            "G" => Ok(CartanType::G),
            _ => Err(RootError::Unsupported(s.to_string())),
        }
    }
}

/// Parses names like `A2`, `B2`, `G2`.
pub fn parse_root_system(name: &str) -> Result<Arc<RootSystem>, RootError> {
    let name = name.trim();
    let (letter, rank) = name.split_at(name.char_indices().nth(1).map_or(name.len(), |(i, _)| i));
    let kind: CartanType = letter.parse()?;
    let rank: usize = rank.parse().map_err(|_| RootError::Unsupported(name.to_string()))?;
    RootSystem::new(kind, rank)
}

/// A permutation of the roots induced by an element of `W(Φ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    perm: Vec<usize>,
}

impl WeylElement {
    pub fn identity(n: usize) -> WeylElement {
        WeylElement { perm: (0..n).collect() }
    }

    pub fn from_perm(perm: Vec<usize>) -> WeylElement {
        WeylElement { perm }
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    #[inline]
    pub fn apply(&self, r: usize) -> usize {
        self.perm[r]
    }

    /// `(self ∘ other)(r) = self(other(r))`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement { perm: other.perm.iter().map(|&r| self.perm[r]).collect() }
    }

    pub fn inverse(&self) -> WeylElement {
        let mut inv = vec![0; self.perm.len()];
        for (i, &j) in self.perm.iter().enumerate() {
            inv[j] = i;
        }
        WeylElement { perm: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// BFS closure of `gens` under composition, sorted.
    pub fn closure(n: usize, gens: &[WeylElement]) -> Vec<WeylElement> {
        let id = WeylElement::identity(n);
        let mut seen: BTreeSet<WeylElement> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(id.clone());
        queue.push_back(id);
        while let Some(w) = queue.pop_front() {
            for g in gens {
                let next = g.compose(&w);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        seen.into_iter().collect()
    }
}

/// A symmetric, closed, proper subset of the roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subsystem {
    parent: Arc<RootSystem>,
    members: BTreeSet<usize>,
}

/// One irreducible component of a subsystem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub roots: BTreeSet<usize>,
    pub is_a1: bool,
}

impl Subsystem {
    pub fn new(parent: &Arc<RootSystem>, members: BTreeSet<usize>) -> Result<Subsystem, RootError> {
        if let Some(&r) = members.iter().find(|&&r| !members.contains(&parent.neg(r))) {
            return Err(RootError::NotSymmetric(parent.root_name(r)));
        }
        parent.check_closed(&members)?;
        if members.len() == parent.num_roots() {
            return Err(RootError::NotProper);
        }
        Ok(Subsystem { parent: parent.clone(), members })
    }

    pub fn empty(parent: &Arc<RootSystem>) -> Subsystem {
        Subsystem { parent: parent.clone(), members: BTreeSet::new() }
    }

    pub fn parent(&self) -> &Arc<RootSystem> {
        &self.parent
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn contains(&self, r: usize) -> bool {
        self.members.contains(&r)
    }

    /// Partition into mutually orthogonal irreducible pieces.
    pub fn irreducible_components(&self) -> Vec<Component> {
        let rs = &self.parent;
        let mut comps: Vec<Component> = Vec::new();
        let mut assigned: BTreeSet<usize> = BTreeSet::new();
        for &start in &self.members {
            if assigned.contains(&start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = vec![start];
            while let Some(r) = stack.pop() {
                if !comp.insert(r) {
                    continue;
                }
                for &s in &self.members {
                    if !comp.contains(&s) && rs.inner(rs.coords(r), rs.coords(s)) != 0 {
                        stack.push(s);
                    }
                }
            }
            assigned.extend(comp.iter().copied());
            let is_a1 = comp.len() == 2;
            comps.push(Component { roots: comp, is_a1 });
        }
        comps
    }

    pub fn has_a1_component(&self) -> bool {
        self.irreducible_components().iter().any(|c| c.is_a1)
    }

    /// Weyl group of the subsystem, generated by its reflections.
    pub fn weyl_group(&self) -> Vec<WeylElement> {
        let gens: Vec<WeylElement> = self.members.iter().map(|&r| self.parent.reflection(r)).collect();
        WeylElement::closure(self.parent.num_roots(), &gens)
    }
}

/// A root set closed under addition, not necessarily symmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedRootSet {
    parent: Arc<RootSystem>,
    members: BTreeSet<usize>,
}

impl ClosedRootSet {
    pub fn new(parent: &Arc<RootSystem>, members: BTreeSet<usize>) -> Result<ClosedRootSet, RootError> {
        parent.check_closed(&members)?;
        Ok(ClosedRootSet { parent: parent.clone(), members })
    }

    pub fn parse(parent: &Arc<RootSystem>, exprs: &[impl AsRef<str>]) -> Result<ClosedRootSet, RootError> {
        let members = exprs
            .iter()
            .map(|e| parent.parse_root(e.as_ref()))
            .collect::<Result<BTreeSet<_>, _>>()?;
        Self::new(parent, members)
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn contains(&self, r: usize) -> bool {
        self.members.contains(&r)
    }

    /// `Δ' ∩ −Δ'` as a (possibly improper) symmetric closed set.
    pub fn symmetric_part(&self) -> BTreeSet<usize> {
        self.members
            .iter()
            .copied()
            .filter(|&r| self.members.contains(&self.parent.neg(r)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(name: &str) -> Arc<RootSystem> {
        parse_root_system(name).unwrap()
    }

    fn names(r: &RootSystem) -> Vec<String> {
        r.roots().map(|x| r.root_name(x)).collect()
    }

    #[test]
    fn root_counts() {
        // classical counts: A_n n(n+1), B_n/C_n 2n², D4 24, G2 12
        for (name, count) in
            [("A1", 2), ("A2", 6), ("A3", 12), ("A4", 20), ("B2", 8), ("B3", 18), ("C2", 8), ("C3", 18), ("D4", 24), ("G2", 12)]
        {
            let r = rs(name);
            assert_eq!(r.num_roots(), count, "{name}");
            assert_eq!(r.positive_roots().count(), count / 2, "{name}");
        }
    }

    #[test]
    fn b2_roots_match_the_classical_list() {
        let r = rs("B2");
        let mut got: Vec<Vec<i32>> = r.roots().map(|x| r.coords(x).to_vec()).collect();
        got.sort();
        let mut want = vec![];
        for v in [[1, 0], [0, 1], [1, 1], [1, 2]] {
            want.push(v.to_vec());
            want.push(v.iter().map(|x| -x).collect());
        }
        want.sort();
        assert_eq!(got, want);
        assert!(r.is_long(r.parse_root("a1").unwrap()));
        assert!(!r.is_long(r.parse_root("a2").unwrap()));
    }

    #[test]
    fn gauss_order_examples() {
        assert_eq!(names(&rs("A1")), ["-a1", "a1"]);
        assert_eq!(names(&rs("A2")), ["-a1", "-a2", "-a1-a2", "a1", "a2", "a1+a2"]);
        let b2 = rs("B2");
        let heights: Vec<i32> = b2.positive_roots().map(|x| b2.height(x)).collect();
        assert_eq!(heights, [1, 1, 2, 3]);
        assert!(b2.roots().take(4).all(|x| !b2.is_positive(x)));
    }

    #[test]
    fn unsupported_systems_are_rejected() {
        assert!(matches!(parse_root_system("E6"), Err(RootError::Unsupported(_))));
        assert!(matches!(parse_root_system("A9"), Err(RootError::Unsupported(_))));
        assert!(matches!(parse_root_system("B1"), Err(RootError::Unsupported(_))));
    }

    #[test]
    fn root_strings_are_unbroken() {
        for name in ["A3", "B3", "C3", "D4", "G2"] {
            let r = rs(name);
            for a in r.roots() {
                for b in r.roots() {
                    if b == a || b == r.neg(a) {
                        continue;
                    }
                    let members: Vec<i32> =
                        (-4..=4).filter(|&k| r.combo(1, b, k, a).is_some()).collect();
                    let (lo, hi) = (members[0], *members.last().unwrap());
                    assert_eq!(members.len() as i32, hi - lo + 1, "{name}");
                    // string length matches the pairing
                    assert_eq!(lo + hi, -r.pairing(b, a), "{name}");
                }
            }
        }
    }

    #[test]
    fn weyl_group_orders() {
        // |W(A_n)| = (n+1)!, |W(B_n)| = 2^n n!, |W(D4)| = 192, |W(G2)| = 12
        for (name, order) in [("A1", 2), ("A2", 6), ("A3", 24), ("B2", 8), ("B3", 48), ("C2", 8), ("D4", 192), ("G2", 12)] {
            assert_eq!(rs(name).weyl_group().len(), order, "{name}");
        }
    }

    #[test]
    fn weyl_elements_preserve_root_sums() {
        for name in ["A3", "B2", "G2"] {
            let r = rs(name);
            for w in r.weyl_group() {
                for a in r.roots() {
                    for b in r.roots() {
                        if let Some(s) = r.sum(a, b) {
                            assert_eq!(r.sum(w.apply(a), w.apply(b)), Some(w.apply(s)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn components() {
        let a2 = rs("A2");
        let d = a2.parse_subsystem(&["a1", "-a1"]).unwrap();
        let c = d.irreducible_components();
        assert_eq!(c.len(), 1);
        assert!(c[0].is_a1);

        let a3 = rs("A3");
        let d = a3.parse_subsystem(&["a1", "-a1", "a3", "-a3"]).unwrap();
        let c = d.irreducible_components();
        assert_eq!(c.len(), 2);
        assert!(c.iter().all(|c| c.is_a1));

        let d = a3.parse_subsystem(&["a1", "-a1", "a2", "-a2", "a1+a2", "-a1-a2"]).unwrap();
        let c = d.irreducible_components();
        assert_eq!(c.len(), 1);
        assert!(!c[0].is_a1);
        assert!(!d.has_a1_component());
    }

    #[test]
    fn subsystem_validation() {
        let a2 = rs("A2");
        assert!(matches!(a2.parse_subsystem(&["a1"]), Err(RootError::NotSymmetric(_))));
        assert!(matches!(
            a2.parse_subsystem(&["a1", "-a1", "a2", "-a2"]),
            Err(RootError::NotClosed(..))
        ));
        let all: Vec<String> = names(&a2);
        assert_eq!(a2.parse_subsystem(&all).unwrap_err(), RootError::NotProper);
        assert!(matches!(a2.parse_root("a3"), Err(RootError::BadRoot(_))));
        assert!(matches!(a2.parse_root("a1-a2"), Err(RootError::NotARoot(_))));
    }

    #[test]
    fn subsystem_closure_is_idempotent() {
        let b3 = rs("B3");
        for a in b3.roots() {
            for b in b3.roots() {
                let seed: BTreeSet<usize> = [a, b].into_iter().collect();
                let once = b3.subsystem_closure(&seed);
                assert_eq!(b3.subsystem_closure(&once), once);
            }
        }
    }

    #[test]
    fn parse_and_print_roundtrip() {
        let g2 = rs("G2");
        for r in g2.roots() {
            assert_eq!(g2.parse_root(&g2.root_name(r)).unwrap(), r);
        }
    }
}
