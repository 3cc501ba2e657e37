//! Sparse multivariate polynomials over ℚ.
//!
//! Symbols are interned. Internally terms are kept sorted in graded
//! lexicographic order on interning ids, which is fast but depends on the
//! order symbols were first seen; anything that must be canonical (the sign
//! of a denominator, printed term order) uses the same order on names.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{OnceLock, RwLock};

use smallvec::SmallVec;

pub use super::rat::Rat;
use super::rat::content_of;

pub type Q = Rat;

/// An interned variable name.
#[derive(Clone, Copy)]
pub struct Symbol {
    id: u32,
    name: &'static str,
}

fn interner() -> &'static RwLock<HashMap<&'static str, u32>> {
    static TABLE: OnceLock<RwLock<HashMap<&'static str, u32>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(HashMap::new()))
}

impl Symbol {
    pub fn new(name: &str) -> Symbol {
        if let Some((&k, &id)) = interner().read().unwrap().get_key_value(name) {
            return Symbol { id, name: k };
        }
        let mut t = interner().write().unwrap();
        if let Some((&k, &id)) = t.get_key_value(name) {
            return Symbol { id, name: k };
        }
        let k: &'static str = Box::leak(name.to_owned().into_boxed_str());
        let id = t.len() as u32;
        t.insert(k, id);
        Symbol { id, name: k }
    }

    pub fn as_str(&self) -> &'static str {
        self.name
    }

    #[inline]
    fn id(&self) -> u32 {
        self.id
    }
}

impl PartialEq for Symbol {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl Eq for Symbol {}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// By name, so maps keyed by symbols iterate deterministically.
impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.id == other.id {
            return Ordering::Equal;
        }
        self.name.cmp(other.name)
    }
}

impl Hash for Symbol {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.id.hash(state)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name)
    }
}

/// Power product of symbols, sorted by symbol id, exponents nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Symbol, u32); 8]>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(SmallVec::new())
    }

    pub fn var(s: Symbol) -> Monomial {
        let mut v = SmallVec::new();
        v.push((s, 1));
        Monomial(v)
    }

    pub fn from_pairs(mut pairs: Vec<(Symbol, u32)>) -> Monomial {
        pairs.sort_by_key(|a| a.0.id());
        let mut out: SmallVec<[(Symbol, u32); 8]> = SmallVec::new();
        for (s, e) in pairs {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.0 == s => last.1 += e,
                _ => out.push((s, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| *e).sum()
    }

    pub fn exponent(&self, s: &Symbol) -> u32 {
        self.0
            .iter()
            .find(|(v, _)| v == s)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = &(Symbol, u32)> {
        self.0.iter()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.id().cmp(&b[j].0.id()) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::new();
        let mut j = 0;
        let b = &other.0;
        for &(s, e) in self.0.iter() {
            if j < b.len() && b[j].0.id() < s.id() {
                return None;
            }
            if j < b.len() && b[j].0 == s {
                match e.cmp(&b[j].1) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((s, e - b[j].1)),
                }
                j += 1;
            } else {
                out.push((s, e));
            }
        }
        if j < b.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = SmallVec::new();
        for &(s, e) in self.0.iter() {
            let f = other.exponent(&s);
            if f > 0 {
                out.push((s, e.min(f)));
            }
        }
        Monomial(out)
    }

    /// Removes `s` and returns its former exponent.
    fn split_off(&self, s: &Symbol) -> (u32, Monomial) {
        let mut out = SmallVec::new();
        let mut e = 0;
        for &(v, k) in self.0.iter() {
            if v == *s {
                e = k;
            } else {
                out.push((v, k));
            }
        }
        (e, Monomial(out))
    }

    fn with_power(&self, s: &Symbol, e: u32) -> Monomial {
        if e == 0 {
            return self.clone();
        }
        let mut m = Monomial::one();
        m.0.push((*s, e));
        self.mul(&m)
    }

    fn by_name(&self) -> SmallVec<[(&'static str, u32); 8]> {
        let mut v: SmallVec<[(&'static str, u32); 8]> =
            self.0.iter().map(|(s, e)| (s.as_str(), *e)).collect();
        v.sort_unstable();
        v
    }

    /// Graded lexicographic order with variables compared by name.
    pub fn cmp_canonical(&self, other: &Monomial) -> Ordering {
        let d = self.degree().cmp(&other.degree());
        if d != Ordering::Equal {
            return d;
        }
        let (a, b) = (self.by_name(), other.by_name());
        grlex_tail(&a, &b, |x, y| x.cmp(y))
    }
}

fn grlex_tail<T, F: Fn(&T, &T) -> Ordering>(a: &[(T, u32)], b: &[(T, u32)], key: F) -> Ordering {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match key(&a[i].0, &b[j].0) {
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
            Ordering::Equal => {
                let c = a[i].1.cmp(&b[j].1);
                if c != Ordering::Equal {
                    return c;
                }
                i += 1;
                j += 1;
            }
        }
    }
    match (i < a.len(), j < b.len()) {
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        _ => Ordering::Equal,
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded lexicographic order, variables ordered by interning id.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self.degree().cmp(&other.degree());
        if d != Ordering::Equal {
            return d;
        }
        grlex_tail(&self.0, &other.0, |x, y| x.id().cmp(&y.id()))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (k, (s, e)) in self.by_name().iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{}", s)?;
            } else {
                write!(f, "{}^{}", s, e)?;
            }
        }
        Ok(())
    }
}

/// Polynomial with rational coefficients, terms sorted ascending, no zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, Q)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Poly {
        Poly::term(Monomial::one(), c)
    }

    pub fn integer(n: i64) -> Poly {
        Poly::constant(Q::from_integer(n))
    }

    pub fn var(s: Symbol) -> Poly {
        Poly::term(Monomial::var(s), Q::one())
    }

    pub fn term(m: Monomial, c: Q) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(it: I) -> Poly {
        Poly::from_unsorted(it.into_iter().collect())
    }

    fn from_unsorted(mut v: Vec<(Monomial, Q)>) -> Poly {
        v.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut terms: Vec<(Monomial, Q)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match terms.last_mut() {
                Some(last) if last.0 == m => {
                    last.1 = &last.1 + &c;
                    if last.1.is_zero() {
                        terms.pop();
                    }
                }
                _ => {
                    if !c.is_zero() {
                        terms.push((m, c));
                    }
                }
            }
        }
        Poly { terms }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms[0].0.is_one().then(|| self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// Largest term in the internal order.
    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.last().map(|(m, c)| (m, c))
    }

    /// Largest term in the order on names; stable across runs.
    pub fn leading_canonical(&self) -> Option<(&Monomial, &Q)> {
        self.terms
            .iter()
            .max_by(|a, b| a.0.cmp_canonical(&b.0))
            .map(|(m, c)| (m, c))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.last().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    pub fn degree_in(&self, s: &Symbol) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(s)).max().unwrap_or(0)
    }

    pub fn contains_var(&self, s: &Symbol) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(s) > 0)
    }

    pub fn vars(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        for (m, _) in self.terms.iter() {
            for (s, _) in m.factors() {
                out.insert(*s);
            }
        }
        out
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.binary_search_by(|(k, _)| k.cmp(&m)) {
            Ok(i) => {
                let v = &self.terms[i].1 + &c;
                if v.is_zero() {
                    self.terms.remove(i);
                } else {
                    self.terms[i].1 = v;
                }
            }
            Err(i) => self.terms.insert(i, (m, c)),
        }
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let conv = |c: &Q| if negate { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0.clone(), conv(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), conv(c))));
        Poly { terms: out }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        if other.is_zero() {
            return self.clone();
        }
        self.merge(other, true)
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Poly { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    /// Multiplying by a monomial preserves the term order.
    pub fn mul_term(&self, m: &Monomial, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(n, k)| (n.mul(m), k * c)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        if other.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        let mut v = Vec::with_capacity(self.len() * other.len());
        for (m1, c1) in self.terms.iter() {
            for (m2, c2) in other.terms.iter() {
                v.push((m1.mul(m2), c1 * c2));
            }
        }
        Poly::from_unsorted(v)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self, s: &Symbol) -> Poly {
        let mut v = Vec::new();
        for (m, c) in self.terms.iter() {
            let (e, rest) = m.split_off(s);
            if e == 0 {
                continue;
            }
            v.push((rest.with_power(s, e - 1), c * &Q::from_integer(e as i64)));
        }
        Poly::from_unsorted(v)
    }

    /// Antiderivative in `s` with zero constant term.
    pub fn antiderivative(&self, s: &Symbol) -> Poly {
        let mut v = Vec::with_capacity(self.len());
        for (m, c) in self.terms.iter() {
            let (e, rest) = m.split_off(s);
            v.push((rest.with_power(s, e + 1), c * &Q::new(1, e as i64 + 1)));
        }
        Poly::from_unsorted(v)
    }

    /// Replaces `s` by another symbol `r` (which may already occur).
    pub fn rename(&self, s: &Symbol, r: &Symbol) -> Poly {
        let mut v = Vec::with_capacity(self.len());
        for (m, c) in self.terms.iter() {
            let (e, rest) = m.split_off(s);
            v.push((rest.with_power(r, e), c.clone()));
        }
        Poly::from_unsorted(v)
    }

    /// Sets `s` to a rational constant.
    pub fn eval_at(&self, s: &Symbol, val: &Q) -> Poly {
        let mut v = Vec::with_capacity(self.len());
        for (m, c) in self.terms.iter() {
            let (e, rest) = m.split_off(s);
            let f = if e == 0 { c.clone() } else { c * &val.pow(e) };
            v.push((rest, f));
        }
        Poly::from_unsorted(v)
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (lm_d, lc_d) = d.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let lc_inv = lc_d.recip();
        let mut q = Vec::new();
        let mut r = self.clone();
        while let Some((lm_r, lc_r)) = r.leading() {
            let m = lm_r.div(&lm_d)?;
            let c = lc_r * &lc_inv;
            r = r.sub(&d.mul_term(&m, &c));
            q.push((m, c));
        }
        // Quotient terms come out in descending order.
        q.reverse();
        Some(Poly { terms: q })
    }

    /// Rational content: gcd of numerators over lcm of denominators, positive.
    pub fn content(&self) -> Q {
        content_of(self.terms.iter().map(|(_, c)| c))
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => Poly::zero(),
        }
    }

    fn to_univariate(&self, x: &Symbol) -> BTreeMap<u32, Poly> {
        let mut parts: BTreeMap<u32, Vec<(Monomial, Q)>> = BTreeMap::new();
        for (m, c) in self.terms.iter() {
            let (e, rest) = m.split_off(x);
            parts.entry(e).or_default().push((rest, c.clone()));
        }
        parts.into_iter().map(|(e, v)| (e, Poly::from_unsorted(v))).collect()
    }

    fn from_univariate(u: &BTreeMap<u32, Poly>, x: &Symbol) -> Poly {
        let mut v = Vec::new();
        for (e, p) in u.iter() {
            for (m, c) in p.terms.iter() {
                v.push((m.with_power(x, *e), c.clone()));
            }
        }
        Poly::from_unsorted(v)
    }

    /// Greatest common divisor, normalized to leading coefficient 1.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        gcd_inner(a, b).monic()
    }
}

fn gcd_inner(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a.len() == 1 || b.len() == 1 {
        let (mono, other) = if a.len() == 1 { (a, b) } else { (b, a) };
        let mut g = mono.terms[0].0.clone();
        for (m, _) in other.terms.iter() {
            g = g.gcd(m);
            if g.is_one() {
                break;
            }
        }
        return Poly::term(g, Q::one());
    }
    if a == b {
        return a.clone();
    }
    let va = a.vars();
    let vb = b.vars();
    if let Some(v) = va.symmetric_difference(&vb).next() {
        return content_gcd(a, b, v);
    }
    // Same variables on both sides. Degrees of modular images bound the
    // degrees of the gcd, so a zero image degree removes that variable.
    let degrees: Vec<(Symbol, Option<usize>)> =
        va.iter().map(|v| (*v, modular::image_gcd_degree(a, b, v))).collect();
    if degrees.iter().all(|(_, d)| *d == Some(0)) {
        return Poly::one();
    }
    if let Some((v, _)) = degrees.iter().find(|(_, d)| *d == Some(0)) {
        return content_gcd(a, b, v);
    }
    if b.div_exact(a).is_some() {
        return a.clone();
    }
    if a.div_exact(b).is_some() {
        return b.clone();
    }
    let x = degrees
        .iter()
        .min_by_key(|(v, _)| a.degree_in(v).max(b.degree_in(v)))
        .map(|(v, _)| *v)
        .unwrap();
    prs_gcd(a, b, &x)
}

/// gcd when the result cannot involve `v`: fold over the coefficients in `v`.
fn content_gcd(a: &Poly, b: &Poly, v: &Symbol) -> Poly {
    let mut parts: Vec<Poly> = Vec::new();
    for p in [a, b] {
        if p.contains_var(v) {
            parts.extend(p.to_univariate(v).into_values());
        } else {
            parts.push(p.clone());
        }
    }
    parts.sort_by_key(|p| p.len());
    let mut g = Poly::zero();
    for p in parts.iter() {
        g = gcd_inner(&g, p).monic();
        if g.is_one() {
            break;
        }
    }
    g
}

fn prs_gcd(a: &Poly, b: &Poly, x: &Symbol) -> Poly {
    let ua = a.to_univariate(x);
    let ub = b.to_univariate(x);
    let ca = univariate_content(&ua);
    let cb = univariate_content(&ub);
    let c = gcd_inner(&ca, &cb).monic();
    let mut f = divide_coeffs(&ua, &ca);
    let mut g = divide_coeffs(&ub, &cb);
    if deg(&f) < deg(&g) {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        let r = prem(&f, &g);
        if r.is_empty() {
            break;
        }
        if deg(&r) == 0 {
            g = BTreeMap::from([(0, Poly::one())]);
            break;
        }
        f = g;
        let cr = univariate_content(&r);
        g = divide_coeffs(&r, &cr);
    }
    let cg = univariate_content(&g);
    let g = divide_coeffs(&g, &cg);
    c.mul(&Poly::from_univariate(&g, x))
}

mod modular {
    //! Images of polynomials modulo a prime with all but one variable fixed.

    use num_traits::ToPrimitive;

    use super::{Poly, Symbol, Q};

    const P: u64 = (1 << 61) - 1;

    fn mul(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % P as u128) as u64
    }

    fn pow(mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, a);
            }
            a = mul(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(a: u64) -> u64 {
        pow(a, P - 2)
    }

    fn reduce_int(n: &num_bigint::BigInt) -> u64 {
        let m = num_bigint::BigInt::from(P);
        let r = ((n % &m) + &m) % &m;
        r.to_u64().unwrap()
    }

    fn rat(c: &Q) -> Option<u64> {
        let (n, d) = match c {
            Q::Small(n, d) => ((*n as i128).rem_euclid(P as i128) as u64, (*d as u64) % P),
            Q::Big(_) => (reduce_int(&c.numer()), reduce_int(&c.denom())),
        };
        if d == 0 {
            return None;
        }
        Some(mul(n, inv(d)))
    }

    /// Deterministic evaluation point for a variable.
    fn point(s: &Symbol, salt: u64) -> u64 {
        let mut h: u64 = 0x9e37_79b9_7f4a_7c15 ^ salt.wrapping_mul(0xbf58_476d_1ce4_e5b9);
        for b in s.as_str().bytes() {
            h = (h ^ b as u64).wrapping_mul(0x0100_0000_01b3);
        }
        (h % (P - 2)) + 2
    }

    /// Dense coefficients in `x`, lowest degree first.
    fn image(p: &Poly, x: &Symbol, salt: u64) -> Option<Vec<u64>> {
        let mut out = vec![0u64; p.degree_in(x) as usize + 1];
        for (m, c) in p.terms() {
            let mut v = rat(c)?;
            let mut e = 0;
            for (s, k) in m.factors() {
                if s == x {
                    e = *k as usize;
                } else {
                    v = mul(v, pow(point(s, salt), *k as u64));
                }
            }
            out[e] = (out[e] + v) % P;
        }
        Some(out)
    }

    fn trim(v: &mut Vec<u64>) {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
    }

    fn rem(mut a: Vec<u64>, b: &[u64]) -> Vec<u64> {
        let lb = inv(*b.last().unwrap());
        while a.len() >= b.len() && !(a.len() == 1 && a[0] == 0) {
            let f = mul(*a.last().unwrap(), lb);
            let shift = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                a[i + shift] = (a[i + shift] + P - mul(f, *c)) % P;
            }
            a.pop();
            trim(&mut a);
            if a.is_empty() {
                a.push(0);
            }
        }
        a
    }

    fn degree_of_gcd(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
        while !(b.len() == 1 && b[0] == 0) {
            let r = rem(a, &b);
            a = b;
            b = r;
        }
        a.len() - 1
    }

    /// Upper bound on the `x`-degree of `gcd(a, b)` from one modular image,
    /// `None` if the point was unlucky for leading coefficients.
    pub(super) fn image_gcd_degree(a: &Poly, b: &Poly, x: &Symbol) -> Option<usize> {
        for salt in 0..3 {
            let (Some(ia), Some(ib)) = (image(a, x, salt), image(b, x, salt)) else {
                return None;
            };
            if *ia.last().unwrap() == 0 || *ib.last().unwrap() == 0 {
                continue;
            }
            return Some(degree_of_gcd(ia, ib));
        }
        None
    }
}

fn deg(u: &BTreeMap<u32, Poly>) -> u32 {
    u.keys().next_back().copied().unwrap_or(0)
}

fn univariate_content(u: &BTreeMap<u32, Poly>) -> Poly {
    let mut parts: Vec<&Poly> = u.values().collect();
    parts.sort_by_key(|p| p.len());
    let mut g = Poly::zero();
    for p in parts {
        g = gcd_inner(&g, p).monic();
        if g.is_one() {
            break;
        }
    }
    g
}

fn divide_coeffs(u: &BTreeMap<u32, Poly>, c: &Poly) -> BTreeMap<u32, Poly> {
    if c.is_one() {
        return u.clone();
    }
    u.iter()
        .map(|(e, p)| (*e, p.div_exact(c).expect("content divides coefficients")))
        .collect()
}

/// Pseudo-remainder of univariate polynomials with polynomial coefficients.
fn prem(f: &BTreeMap<u32, Poly>, g: &BTreeMap<u32, Poly>) -> BTreeMap<u32, Poly> {
    let dg = deg(g);
    let lc_g = g[&dg].clone();
    let mut r = f.clone();
    while !r.is_empty() && deg(&r) >= dg {
        let dr = deg(&r);
        let lc_r = r[&dr].clone();
        let shift = dr - dg;
        let mut next: BTreeMap<u32, Poly> = BTreeMap::new();
        for (e, p) in r.iter() {
            let v = p.mul(&lc_g);
            if !v.is_zero() {
                next.insert(*e, v);
            }
        }
        for (e, p) in g.iter() {
            let k = e + shift;
            let v = next.remove(&k).unwrap_or_default().sub(&p.mul(&lc_r));
            if !v.is_zero() {
                next.insert(k, v);
            }
        }
        r = next;
    }
    r
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

pub(crate) fn fmt_rational(c: &Q) -> String {
    c.to_string()
}

/// Terms in descending order on names, re-parseable by the expression grammar.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut sorted: Vec<&(Monomial, Q)> = self.terms.iter().collect();
        sorted.sort_by(|a, b| b.0.cmp_canonical(&a.0));
        for (k, (m, c)) in sorted.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            let body = if m.is_one() {
                fmt_rational(&a)
            } else if a.is_one() {
                m.to_string()
            } else {
                format!("{}*{}", fmt_rational(&a), m)
            };
            match (k, neg) {
                (0, true) => write!(f, "-{}", body)?,
                (0, false) => write!(f, "{}", body)?,
                (_, true) => write!(f, " - {}", body)?,
                (_, false) => write!(f, " + {}", body)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(Symbol::new("x"))
    }
    fn y() -> Poly {
        Poly::var(Symbol::new("y"))
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::from_pairs(vec![(Symbol::new("x"), 2)]);
        let b = Monomial::from_pairs(vec![(Symbol::new("x"), 1), (Symbol::new("y"), 1)]);
        let c = Monomial::from_pairs(vec![(Symbol::new("y"), 3)]);
        assert_eq!(a.cmp_canonical(&b), Ordering::Greater);
        assert_eq!(c.cmp_canonical(&a), Ordering::Greater);
        assert!(c > a);
    }

    #[test]
    fn gcd_of_products() {
        let p = x().add(&y()).mul(&x().sub(&Poly::one()));
        let q = x().add(&y()).mul(&y().add(&Poly::integer(2)));
        let g = Poly::gcd(&p, &q);
        assert_eq!(g, x().add(&y()).monic());
        let r = x().pow(2).mul(&y());
        let s = x().mul(&y().pow(3)).add(&x().pow(3).mul(&y()));
        assert_eq!(Poly::gcd(&r, &s), x().mul(&y()));
    }

    #[test]
    fn exact_division() {
        let p = x().add(&y()).pow(3);
        let q = p.div_exact(&x().add(&y())).unwrap();
        assert_eq!(q, x().add(&y()).pow(2));
        assert!(x().div_exact(&y()).is_none());
    }

    #[test]
    fn display() {
        let p = x().pow(2).scale(&Q::new(3, 4)).sub(&y()).add(&Poly::integer(-2));
        assert_eq!(p.to_string(), "3/4*x^2 - y - 2");
    }

    #[test]
    fn display_ignores_interning_order() {
        let b = Poly::var(Symbol::new("zz_b"));
        let a = Poly::var(Symbol::new("zz_a"));
        assert_eq!(a.add(&b).to_string(), "zz_a + zz_b");
    }
}
