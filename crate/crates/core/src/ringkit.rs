//! Finite commutative rings with unity, materialized as addition and
//! multiplication tables over the index set `0..n`.
//!
//! Three families are constructed directly ([`RingSpec`]): `Z/n`, quotients
//! `F_p[t]/(f)` for monic `f`, and finite products. Quotients `R/I` and local
//! factors `eR` are derived tables that keep the element names of their
//! parent ring.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest carrier accepted by [`FiniteRing::new`]; tables are `n²` entries.
pub const MAX_CARRIER: usize = 1024;

/// Index of a ring element inside its [`FiniteRing`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(transparent)]
pub struct Elem(pub u16);

impl Elem {
    pub const ZERO: Elem = Elem(0);

    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("Z/n needs n >= 2, got {0}")]
    ModulusTooSmall(u32),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("modulus {0:?} is not a monic polynomial of positive degree")]
    BadModulus(String),
    #[error("could not parse polynomial {0:?}")]
    BadPolynomial(String),
    #[error("product ring needs at least one factor")]
    EmptyProduct,
    #[error("carrier of {size} elements exceeds the limit of {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("cannot parse ring element {0:?}")]
    BadElement(String),
    #[error("ring mismatch: {0} vs {1}")]
    Mismatch(String, String),
    #[error("{0} is not a unital ring homomorphism")]
    NotHomomorphism(String),
}

/// Scenario-file description of a ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RingSpec {
    Zmod { n: u32 },
    Polyquot { p: u32, modulus: String },
    Product { factors: Vec<RingSpec> },
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zmod { n } => write!(f, "Z/{n}"),
            RingSpec::Polyquot { p, modulus } => write!(f, "F{p}[t]/({modulus})"),
            RingSpec::Product { factors } => {
                let parts: Vec<String> = factors.iter().map(|s| s.to_string()).collect();
                write!(f, "{}", parts.join(" x "))
            }
        }
    }
}

/// A finite commutative ring with unity, fully tabulated.
#[derive(Clone)]
pub struct FiniteRing {
    label: String,
    spec: Option<RingSpec>,
    n: usize,
    one: Elem,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Option<Elem>>,
    names: Vec<String>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, {} elements)", self.label, self.n)
    }
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label && self.n == other.n
    }
}
impl Eq for FiniteRing {}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Coefficients (constant term first) of a polynomial in `t` over `F_p`.
fn parse_poly(src: &str, p: u32) -> Result<Vec<u32>, RingError> {
    let bad = || RingError::BadPolynomial(src.to_string());
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad());
    }
    let mut coeffs: Vec<i64> = Vec::new();
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (i, ch) in s.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 && !s[..i].ends_with('^') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1i64, rest),
            None => (1, term.strip_prefix('+').unwrap_or(&term)),
        };
        if body.is_empty() {
            return Err(bad());
        }
        let (coef, deg) = if let Some(pos) = body.find('t') {
            let c = body[..pos].trim_end_matches('*');
            let c: i64 = if c.is_empty() { 1 } else { c.parse().map_err(|_| bad())? };
            let rest = &body[pos + 1..];
            let d: usize = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
            };
            (c, d)
        } else {
            (body.parse().map_err(|_| bad())?, 0)
        };
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, 0);
        }
        coeffs[deg] += sign * coef;
    }
    let p = p as i64;
    let mut out: Vec<u32> = coeffs.iter().map(|c| c.rem_euclid(p) as u32).collect();
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    Ok(out)
}

fn poly_name(coeffs: &[u32]) -> String {
    let mut parts = Vec::new();
    for (d, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let part = match (d, c) {
            (0, c) => c.to_string(),
            (1, 1) => "t".to_string(),
            (1, c) => format!("{c}t"),
            (d, 1) => format!("t^{d}"),
            (d, c) => format!("{c}t^{d}"),
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

impl FiniteRing {
    /// Builds a ring from a scenario spec.
    pub fn new(spec: &RingSpec) -> Result<Arc<FiniteRing>, RingError> {
        Ok(Arc::new(Self::build(spec)?))
    }

    fn build(spec: &RingSpec) -> Result<FiniteRing, RingError> {
        match spec {
            RingSpec::Zmod { n } => {
                let n = *n;
                if n < 2 {
                    return Err(RingError::ModulusTooSmall(n));
                }
                let size = n as usize;
                check_size(size)?;
                let names = (0..n).map(|i| i.to_string()).collect();
                Ok(Self::from_ops(
                    spec.to_string(),
                    Some(spec.clone()),
                    size,
                    1,
                    |a, b| (a + b) % size,
                    |a, b| (a * b) % size,
                    names,
                ))
            }
            RingSpec::Polyquot { p, modulus } => {
                if !is_prime(*p) {
                    return Err(RingError::NotPrime(*p));
                }
                let f = parse_poly(modulus, *p)?;
                let deg = f.len() - 1;
                if deg == 0 || f[deg] != 1 {
                    return Err(RingError::BadModulus(modulus.clone()));
                }
                let p = *p as usize;
                let size = p.checked_pow(deg as u32).unwrap_or(usize::MAX);
                check_size(size)?;
                let digits = |mut x: usize| {
                    let mut v = vec![0usize; deg];
                    for d in v.iter_mut() {
                        *d = x % p;
                        x /= p;
                    }
                    v
                };
                let undigits = |v: &[usize]| v.iter().rev().fold(0, |acc, &d| acc * p + d);
                let names = (0..size)
                    .map(|x| {
                        let c: Vec<u32> = digits(x).iter().map(|&d| d as u32).collect();
                        poly_name(&c)
                    })
                    .collect();
                let add = |a: usize, b: usize| {
                    let (da, db) = (digits(a), digits(b));
                    let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    undigits(&s)
                };
                let f_low: Vec<usize> = f[..deg].iter().map(|&c| c as usize).collect();
                let mul = |a: usize, b: usize| {
                    let (da, db) = (digits(a), digits(b));
                    let mut prod = vec![0usize; 2 * deg];
                    for (i, x) in da.iter().enumerate() {
                        for (j, y) in db.iter().enumerate() {
                            prod[i + j] = (prod[i + j] + x * y) % p;
                        }
                    }
                    // t^deg = -(f_low)
                    for k in (deg..2 * deg).rev() {
                        let c = prod[k];
                        if c == 0 {
                            continue;
                        }
                        prod[k] = 0;
                        for (i, fc) in f_low.iter().enumerate() {
                            let sub = (c * fc) % p;
                            prod[k - deg + i] = (prod[k - deg + i] + p - sub) % p;
                        }
                    }
                    undigits(&prod[..deg])
                };
                Ok(Self::from_ops(spec.to_string(), Some(spec.clone()), size, 1, add, mul, names))
            }
            RingSpec::Product { factors } => {
                if factors.is_empty() {
                    return Err(RingError::EmptyProduct);
                }
                let rings: Vec<FiniteRing> =
                    factors.iter().map(Self::build).collect::<Result<_, _>>()?;
                let size = rings.iter().try_fold(1usize, |acc, r| acc.checked_mul(r.n));
                let size = size.unwrap_or(usize::MAX);
                check_size(size)?;
                // first factor is the most significant digit
                let split = |mut x: usize| {
                    let mut v = vec![0usize; rings.len()];
                    for (k, r) in rings.iter().enumerate().rev() {
                        v[k] = x % r.n;
                        x /= r.n;
                    }
                    v
                };
                let join = |v: &[usize]| {
                    v.iter().zip(&rings).fold(0, |acc, (&d, r)| acc * r.n + d)
                };
                let names = (0..size)
                    .map(|x| {
                        let parts: Vec<&str> = split(x)
                            .iter()
                            .zip(&rings)
                            .map(|(&d, r)| r.names[d].as_str())
                            .collect();
                        format!("({})", parts.join(","))
                    })
                    .collect();
                let one = join(&rings.iter().map(|r| r.one.idx()).collect::<Vec<_>>());
                let add = |a: usize, b: usize| {
                    let (va, vb) = (split(a), split(b));
                    let s: Vec<usize> = rings
                        .iter()
                        .enumerate()
                        .map(|(k, r)| r.add(Elem(va[k] as u16), Elem(vb[k] as u16)).idx())
                        .collect();
                    join(&s)
                };
                let mul = |a: usize, b: usize| {
                    let (va, vb) = (split(a), split(b));
                    let s: Vec<usize> = rings
                        .iter()
                        .enumerate()
                        .map(|(k, r)| r.mul(Elem(va[k] as u16), Elem(vb[k] as u16)).idx())
                        .collect();
                    join(&s)
                };
                Ok(Self::from_ops(spec.to_string(), Some(spec.clone()), size, one, add, mul, names))
            }
        }
    }

    fn from_ops(
        label: String,
        spec: Option<RingSpec>,
        n: usize,
        one: usize,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
        names: Vec<String>,
    ) -> FiniteRing {
        let mut add_t = vec![Elem(0); n * n];
        let mut mul_t = vec![Elem(0); n * n];
        for a in 0..n {
            for b in 0..n {
                add_t[a * n + b] = Elem(add(a, b) as u16);
                mul_t[a * n + b] = Elem(mul(a, b) as u16);
            }
        }
        Self::from_tables(label, spec, n, Elem(one as u16), add_t, mul_t, names)
    }

    fn from_tables(
        label: String,
        spec: Option<RingSpec>,
        n: usize,
        one: Elem,
        add: Vec<Elem>,
        mul: Vec<Elem>,
        names: Vec<String>,
    ) -> FiniteRing {
        let mut neg = vec![Elem(0); n];
        let mut inv = vec![None; n];
        for a in 0..n {
            for b in 0..n {
                if add[a * n + b] == Elem(0) {
                    neg[a] = Elem(b as u16);
                }
                if mul[a * n + b] == one {
                    inv[a] = Some(Elem(b as u16));
                }
            }
        }
        FiniteRing { label, spec, n, one, add, mul, neg, inv, names }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn spec(&self) -> Option<&RingSpec> {
        self.spec.as_ref()
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    #[inline]
    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.n as u16).map(Elem)
    }

    /// Row-major addition table, `n × n`.
    pub fn add_table(&self) -> &[Elem] {
        &self.add
    }

    /// Row-major multiplication table, `n × n`.
    pub fn mul_table(&self) -> &[Elem] {
        &self.mul
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a.idx() * self.n + b.idx()]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a.idx() * self.n + b.idx()]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a.idx()]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        self.inv[a.idx()]
    }

    #[inline]
    pub fn is_unit(&self, a: Elem) -> bool {
        self.inv[a.idx()].is_some()
    }

    pub fn units(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.is_unit(a)).collect()
    }

    /// `a^k` for any integer `k`; negative powers need `a` to be a unit.
    pub fn pow(&self, a: Elem, k: i64) -> Option<Elem> {
        let base = if k < 0 { self.inv(a)? } else { a };
        let mut acc = self.one;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        Some(acc)
    }

    /// Image of an integer under `Z -> R`.
    pub fn int(&self, k: i64) -> Elem {
        let char = self.characteristic() as i64;
        let k = k.rem_euclid(char);
        let mut acc = Elem(0);
        for _ in 0..k {
            acc = self.add(acc, self.one);
        }
        acc
    }

    pub fn characteristic(&self) -> usize {
        let mut acc = self.one;
        let mut c = 1;
        while acc != Elem(0) {
            acc = self.add(acc, self.one);
            c += 1;
        }
        c
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a.idx()]
    }

    /// Parses an element from its display name, an integer, or (for
    /// polynomial quotients) any polynomial expression in `t`.
    pub fn parse_elem(&self, src: &str) -> Result<Elem, RingError> {
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(i) = self.names.iter().position(|n| *n == s) {
            return Ok(Elem(i as u16));
        }
        if let Ok(k) = s.parse::<i64>() {
            return Ok(self.int(k));
        }
        if let Some(RingSpec::Polyquot { p, .. }) = &self.spec {
            let coeffs = parse_poly(&s, *p)?;
            let t = self
                .names
                .iter()
                .position(|n| n == "t")
                .map(|i| Elem(i as u16))
                .ok_or_else(|| RingError::BadElement(src.to_string()))?;
            let mut acc = Elem(0);
            let mut power = self.one;
            for c in coeffs {
                acc = self.add(acc, self.mul(self.int(c as i64), power));
                power = self.mul(power, t);
            }
            return Ok(acc);
        }
        if let (Some(RingSpec::Product { factors }), Some(inner)) =
            (&self.spec, s.strip_prefix('(').and_then(|r| r.strip_suffix(')')))
        {
            let parts: Vec<&str> = split_top_level(inner);
            if parts.len() == factors.len() {
                let rings: Vec<FiniteRing> = factors
                    .iter()
                    .map(Self::build)
                    .collect::<Result<_, _>>()?;
                let mut idx = 0usize;
                for (part, r) in parts.iter().zip(&rings) {
                    idx = idx * r.n + r.parse_elem(part)?.idx();
                }
                return Ok(Elem(idx as u16));
            }
        }
        Err(RingError::BadElement(src.to_string()))
    }

    pub fn check_same(&self, other: &FiniteRing) -> Result<(), RingError> {
        if self == other {
            Ok(())
        } else {
            Err(RingError::Mismatch(self.label.clone(), other.label.clone()))
        }
    }

    pub fn idempotents(&self) -> Vec<Elem> {
        self.elements().filter(|&e| self.mul(e, e) == e).collect()
    }

    /// `true` when `0` and `1` are the only idempotents.
    pub fn is_local(&self) -> bool {
        self.idempotents().len() == 2
    }

    /// `true` when every nonzero element is a unit.
    pub fn is_field(&self) -> bool {
        self.elements().skip(1).all(|a| self.is_unit(a))
    }

    /// Jacobson radical by its defining scan: `x` with `1 + xy` a unit for all `y`.
    pub fn jacobson_radical(self: &Arc<Self>) -> Ideal {
        let members: Vec<bool> = self
            .elements()
            .map(|x| {
                self.elements()
                    .all(|y| self.is_unit(self.add(self.one, self.mul(x, y))))
            })
            .collect();
        Ideal::from_members(self, members)
    }

    /// Quotient `R/I` together with the reduction map.
    pub fn quotient(self: &Arc<Self>, ideal: &Ideal) -> Result<RingHom, RingError> {
        self.check_same(&ideal.ring)?;
        // coset representative = smallest index in the coset
        let mut rep = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for a in 0..self.n {
            if rep[a] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(a);
            for i in ideal.elements() {
                rep[self.add(Elem(a as u16), i).idx()] = id;
            }
        }
        let m = reps.len();
        let mut add = vec![Elem(0); m * m];
        let mut mul = vec![Elem(0); m * m];
        for (x, &a) in reps.iter().enumerate() {
            for (y, &b) in reps.iter().enumerate() {
                let (a, b) = (Elem(a as u16), Elem(b as u16));
                add[x * m + y] = Elem(rep[self.add(a, b).idx()] as u16);
                mul[x * m + y] = Elem(rep[self.mul(a, b).idx()] as u16);
            }
        }
        let gens: Vec<&str> = ideal.generators().iter().map(|&g| self.name(g)).collect();
        let label = format!("({})/({})", self.label, gens.join(","));
        let names = reps.iter().map(|&a| self.names[a].clone()).collect();
        let one = Elem(rep[self.one.idx()] as u16);
        let target = Arc::new(Self::from_tables(label, None, m, one, add, mul, names));
        let table = rep.iter().map(|&r| Elem(r as u16)).collect();
        Ok(RingHom { source: self.clone(), target, table })
    }

    /// Splits `R` into local factors `e R` along its primitive idempotents.
    pub fn local_decomposition(self: &Arc<Self>) -> LocalDecomposition {
        let idem = self.idempotents();
        let nonzero: Vec<Elem> = idem.iter().copied().filter(|&e| e != Elem(0)).collect();
        let primitive: Vec<Elem> = nonzero
            .iter()
            .copied()
            .filter(|&e| {
                nonzero
                    .iter()
                    .all(|&f| f == e || self.mul(f, e) != f)
            })
            .collect();
        let mut factors = Vec::new();
        for &e in &primitive {
            let values: BTreeSet<Elem> = self.elements().map(|r| self.mul(e, r)).collect();
            let values: Vec<Elem> = values.into_iter().collect();
            let pos: HashMap<Elem, u16> =
                values.iter().enumerate().map(|(i, &v)| (v, i as u16)).collect();
            let m = values.len();
            let mut add = vec![Elem(0); m * m];
            let mut mul = vec![Elem(0); m * m];
            for (x, &a) in values.iter().enumerate() {
                for (y, &b) in values.iter().enumerate() {
                    add[x * m + y] = Elem(pos[&self.add(a, b)]);
                    mul[x * m + y] = Elem(pos[&self.mul(a, b)]);
                }
            }
            let names = values.iter().map(|&v| self.names[v.idx()].clone()).collect();
            let label = format!("{}|e={}", self.label, self.name(e));
            let one = Elem(pos[&e]);
            let ring = Arc::new(Self::from_tables(label, None, m, one, add, mul, names));
            let table: Vec<Elem> = self.elements().map(|r| Elem(pos[&self.mul(e, r)])).collect();
            let members: Vec<bool> = table.iter().map(|&x| !ring.is_unit(x)).collect();
            let maximal = Ideal::from_members(self, members);
            factors.push(LocalFactor {
                idempotent: e,
                projection: RingHom { source: self.clone(), target: ring, table },
                lift: values,
                maximal,
            });
        }
        LocalDecomposition { ring: self.clone(), factors }
    }
}

fn check_size(size: usize) -> Result<(), RingError> {
    if size > MAX_CARRIER {
        Err(RingError::TooLarge { size, limit: MAX_CARRIER })
    } else {
        Ok(())
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

/// An ideal stored as its membership table.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<FiniteRing>,
    members: Vec<bool>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.members == other.members
    }
}
impl Eq for Ideal {}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<&str> = self.generators().iter().map(|&g| self.ring.name(g)).collect();
        write!(f, "({})", gens.join(","))
    }
}

impl Ideal {
    fn from_members(ring: &Arc<FiniteRing>, members: Vec<bool>) -> Ideal {
        Ideal { ring: ring.clone(), members }
    }

    pub fn zero(ring: &Arc<FiniteRing>) -> Ideal {
        let mut members = vec![false; ring.size()];
        members[0] = true;
        Self::from_members(ring, members)
    }

    pub fn whole(ring: &Arc<FiniteRing>) -> Ideal {
        Self::from_members(ring, vec![true; ring.size()])
    }

    /// Smallest ideal containing `gens`.
    pub fn generated(ring: &Arc<FiniteRing>, gens: &[Elem]) -> Ideal {
        let products: BTreeSet<Elem> = gens
            .iter()
            .flat_map(|&g| ring.elements().map(move |r| ring.mul(g, r)))
            .filter(|&p| p != Elem(0))
            .collect();
        // additive closure of {0} under the products
        let mut members = vec![false; ring.size()];
        let mut stack = vec![Elem(0)];
        while let Some(x) = stack.pop() {
            if members[x.idx()] {
                continue;
            }
            members[x.idx()] = true;
            for &p in &products {
                let s = ring.add(x, p);
                if !members[s.idx()] {
                    stack.push(s);
                }
            }
        }
        Self::from_members(ring, members)
    }

    pub fn parse(ring: &Arc<FiniteRing>, gens: &[impl AsRef<str>]) -> Result<Ideal, RingError> {
        let gens: Vec<Elem> = gens
            .iter()
            .map(|g| ring.parse_elem(g.as_ref()))
            .collect::<Result<_, _>>()?;
        Ok(Self::generated(ring, &gens))
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    #[inline]
    pub fn contains(&self, a: Elem) -> bool {
        self.members[a.idx()]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| Elem(i as u16))
    }

    pub fn size(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_zero(&self) -> bool {
        self.size() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.contains(self.ring.one())
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.members.iter().zip(&other.members).all(|(&a, &b)| !a || b)
    }

    /// A small generating set as an ideal, chosen greedily in index order.
    pub fn generators(&self) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut span = Ideal::zero(&self.ring);
        for a in self.elements() {
            if !span.contains(a) {
                gens.push(a);
                span = Ideal::generated(&self.ring, &gens);
            }
        }
        gens
    }

    /// A small generating set of the additive group.
    pub fn additive_generators(&self) -> Vec<Elem> {
        let ring = &self.ring;
        let mut gens = Vec::new();
        let mut span = vec![false; ring.size()];
        span[0] = true;
        for a in self.elements() {
            if span[a.idx()] {
                continue;
            }
            gens.push(a);
            loop {
                let cur: Vec<Elem> = (0..ring.size())
                    .filter(|&i| span[i])
                    .map(|i| Elem(i as u16))
                    .collect();
                let mut grew = false;
                for &x in &cur {
                    for &g in &gens {
                        let s = ring.add(x, g);
                        if !span[s.idx()] {
                            span[s.idx()] = true;
                            grew = true;
                        }
                    }
                }
                if !grew {
                    break;
                }
            }
        }
        gens
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal, RingError> {
        self.ring.check_same(&other.ring)?;
        let mut gens = self.generators();
        gens.extend(other.generators());
        Ok(Ideal::generated(&self.ring, &gens))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal, RingError> {
        self.ring.check_same(&other.ring)?;
        let mut gens = Vec::new();
        for a in self.generators() {
            for b in other.generators() {
                gens.push(self.ring.mul(a, b));
            }
        }
        Ok(Ideal::generated(&self.ring, &gens))
    }

    pub fn intersection(&self, other: &Ideal) -> Result<Ideal, RingError> {
        self.ring.check_same(&other.ring)?;
        let members = self.members.iter().zip(&other.members).map(|(&a, &b)| a && b).collect();
        Ok(Ideal::from_members(&self.ring, members))
    }

    /// Ideal generated by the image under `f`.
    pub fn image(&self, f: &RingHom) -> Result<Ideal, RingError> {
        self.ring.check_same(&f.source)?;
        let gens: Vec<Elem> = self.generators().iter().map(|&g| f.apply(g)).collect();
        Ok(Ideal::generated(&f.target, &gens))
    }

    /// Full preimage under `f`.
    pub fn preimage(&self, f: &RingHom) -> Result<Ideal, RingError> {
        self.ring.check_same(&f.target)?;
        let members = f.table.iter().map(|&x| self.contains(x)).collect();
        Ok(Ideal::from_members(&f.source, members))
    }

    pub fn power(&self, k: usize) -> Ideal {
        let mut acc = Ideal::whole(&self.ring);
        for _ in 0..k {
            acc = acc.product(self).expect("same ring");
        }
        acc
    }
}

/// A unital ring map given by its table.
#[derive(Clone, Debug)]
pub struct RingHom {
    pub source: Arc<FiniteRing>,
    pub target: Arc<FiniteRing>,
    table: Vec<Elem>,
}

impl RingHom {
    pub fn identity(ring: &Arc<FiniteRing>) -> RingHom {
        RingHom { source: ring.clone(), target: ring.clone(), table: ring.elements().collect() }
    }

    /// Builds a map from an explicit table, verifying that it is a unital homomorphism.
    pub fn from_table(
        source: &Arc<FiniteRing>,
        target: &Arc<FiniteRing>,
        table: Vec<Elem>,
    ) -> Result<RingHom, RingError> {
        let f = RingHom { source: source.clone(), target: target.clone(), table };
        if f.is_homomorphism() {
            Ok(f)
        } else {
            Err(RingError::NotHomomorphism(format!("{} -> {}", source.label, target.label)))
        }
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.table[a.idx()]
    }

    pub fn is_homomorphism(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        if self.table.len() != s.size() || self.apply(s.one()) != t.one() {
            return false;
        }
        s.elements().all(|a| {
            s.elements().all(|b| {
                self.apply(s.add(a, b)) == t.add(self.apply(a), self.apply(b))
                    && self.apply(s.mul(a, b)) == t.mul(self.apply(a), self.apply(b))
            })
        })
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.size()];
        for &x in &self.table {
            hit[x.idx()] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn kernel(&self) -> Ideal {
        Ideal::zero(&self.target).preimage(self).expect("same ring")
    }
}

/// One local factor `eR` of a finite ring.
#[derive(Clone, Debug)]
pub struct LocalFactor {
    pub idempotent: Elem,
    /// `r -> e r`, onto the factor ring.
    pub projection: RingHom,
    /// Factor element index -> the corresponding element `e r` of the parent.
    lift: Vec<Elem>,
    /// The maximal ideal of the parent that this factor localizes at.
    pub maximal: Ideal,
}

impl LocalFactor {
    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.projection.target
    }

    pub fn lift(&self, a: Elem) -> Elem {
        self.lift[a.idx()]
    }
}

/// `R ≅ ∏ R_M` over the maximal ideals `M`.
#[derive(Clone, Debug)]
pub struct LocalDecomposition {
    pub ring: Arc<FiniteRing>,
    pub factors: Vec<LocalFactor>,
}

impl LocalDecomposition {
    pub fn maximal_ideals(&self) -> Vec<Ideal> {
        self.factors.iter().map(|f| f.maximal.clone()).collect()
    }

    pub fn project(&self, a: Elem) -> Vec<Elem> {
        self.factors.iter().map(|f| f.projection.apply(a)).collect()
    }

    /// Inverse of [`project`](Self::project).
    pub fn reassemble(&self, parts: &[Elem]) -> Elem {
        parts
            .iter()
            .zip(&self.factors)
            .fold(Elem(0), |acc, (&x, f)| self.ring.add(acc, f.lift(x)))
    }

    pub fn factor_for(&self, maximal: &Ideal) -> Option<&LocalFactor> {
        self.factors.iter().find(|f| f.maximal == *maximal)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmod(n: u32) -> Arc<FiniteRing> {
        FiniteRing::new(&RingSpec::Zmod { n }).unwrap()
    }

    fn dual_numbers() -> Arc<FiniteRing> {
        FiniteRing::new(&RingSpec::Polyquot { p: 2, modulus: "t^2".into() }).unwrap()
    }

    fn f2xf3() -> Arc<FiniteRing> {
        FiniteRing::new(&RingSpec::Product {
            factors: vec![RingSpec::Zmod { n: 2 }, RingSpec::Zmod { n: 3 }],
        })
        .unwrap()
    }

    #[test]
    fn zmod4_units() {
        let r = zmod(4);
        assert_eq!(r.size(), 4);
        let units: Vec<&str> = r.units().iter().map(|&u| r.name(u)).collect();
        assert_eq!(units, ["1", "3"]);
    }

    #[test]
    fn dual_numbers_square_to_zero() {
        let r = dual_numbers();
        assert_eq!(r.size(), 4);
        let names: Vec<&str> = r.elements().map(|a| r.name(a)).collect();
        assert_eq!(names, ["0", "1", "t", "1+t"]);
        let t = r.parse_elem("t").unwrap();
        assert_eq!(r.mul(t, t), r.zero());
        assert_eq!(r.parse_elem("t+1").unwrap(), r.parse_elem("1+t").unwrap());
    }

    #[test]
    fn product_cardinality() {
        let r = f2xf3();
        assert_eq!(r.size(), 6);
        assert_eq!(r.name(r.one()), "(1,1)");
        assert_eq!(r.parse_elem("(0,2)").unwrap(), r.parse_elem("(0,-1)").unwrap());
    }

    #[test]
    fn rejects_degenerate_specs() {
        assert_eq!(
            FiniteRing::new(&RingSpec::Zmod { n: 1 }).unwrap_err(),
            RingError::ModulusTooSmall(1)
        );
        assert!(matches!(
            FiniteRing::new(&RingSpec::Polyquot { p: 2, modulus: "2t^2".into() }),
            Err(RingError::BadModulus(_))
        ));
        assert!(matches!(
            FiniteRing::new(&RingSpec::Polyquot { p: 4, modulus: "t".into() }),
            Err(RingError::NotPrime(4))
        ));
        assert_eq!(
            FiniteRing::new(&RingSpec::Product { factors: vec![] }).unwrap_err(),
            RingError::EmptyProduct
        );
        assert!(matches!(
            FiniteRing::new(&RingSpec::Zmod { n: 5000 }),
            Err(RingError::TooLarge { .. })
        ));
    }

    #[test]
    fn jacobson_radicals() {
        let r = zmod(4);
        assert_eq!(r.jacobson_radical(), Ideal::parse(&r, &["2"]).unwrap());
        let r = f2xf3();
        assert!(r.jacobson_radical().is_zero());
        let r = dual_numbers();
        assert_eq!(r.jacobson_radical(), Ideal::parse(&r, &["t"]).unwrap());
    }

    #[test]
    fn local_decompositions() {
        let r = f2xf3();
        let d = r.local_decomposition();
        let mut sizes: Vec<usize> = d.factors.iter().map(|f| f.ring().size()).collect();
        sizes.sort();
        assert_eq!(sizes, [2, 3]);
        assert!(d.factors.iter().all(|f| f.ring().is_field()));

        let r = zmod(4);
        let d = r.local_decomposition();
        assert_eq!(d.factors.len(), 1);
        assert_eq!(d.factors[0].ring().size(), 4);

        let r = zmod(6);
        let d = r.local_decomposition();
        let mut sizes: Vec<usize> = d.factors.iter().map(|f| f.ring().size()).collect();
        sizes.sort();
        assert_eq!(sizes, [2, 3]);
    }

    #[test]
    fn ideal_arithmetic_in_z4() {
        let r = zmod(4);
        let two = Ideal::parse(&r, &["2"]).unwrap();
        assert_eq!(two.sum(&two).unwrap(), two);
        assert!(two.product(&two).unwrap().is_zero());
        let q = r.quotient(&two).unwrap();
        assert_eq!(q.target.size(), 2);
        assert!(q.target.is_field());
        assert!(q.is_surjective());
        assert_eq!(q.kernel(), two);
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let a = Ideal::whole(&zmod(4));
        let b = Ideal::whole(&zmod(6));
        assert!(matches!(a.sum(&b), Err(RingError::Mismatch(..))));
    }

    #[test]
    fn additive_generators_of_dual_numbers() {
        let r = dual_numbers();
        let gens = Ideal::whole(&r).additive_generators();
        assert_eq!(gens.len(), 2);
    }
}
