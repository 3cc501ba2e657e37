//! Reduced quotients of polynomials.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::poly::{Monomial, Poly, Symbol, Q};
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and `den` a primitive integer
/// polynomial with positive leading coefficient (`den = 1` when constant).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

pub type CoordMap = BTreeMap<Symbol, RationalFunction>;

impl Default for RationalFunction {
    fn default() -> Self {
        RationalFunction::zero()
    }
}

impl From<Poly> for RationalFunction {
    fn from(p: Poly) -> Self {
        RationalFunction { num: p, den: Poly::one() }
    }
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RationalFunction { num: Poly::one(), den: Poly::one() }
    }

    pub fn constant(c: Q) -> Self {
        Poly::constant(c).into()
    }

    pub fn integer(n: i64) -> Self {
        Poly::integer(n).into()
    }

    pub fn var(s: Symbol) -> Self {
        Poly::var(s).into()
    }

    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Q> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn contains_var(&self, s: &Symbol) -> bool {
        self.num.contains_var(s) || self.den.contains_var(s)
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Symbol> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.as_constant() {
            return RationalFunction { num: num.scale(&c.recip()), den: Poly::one() };
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Self::normalize(num, den)
    }

    /// Fixes the scaling of an already coprime pair.
    fn normalize(num: Poly, den: Poly) -> Self {
        if let Some(c) = den.as_constant() {
            return RationalFunction { num: num.scale(&c.recip()), den: Poly::one() };
        }
        let mut c = den.content();
        if den.leading_canonical().map(|(_, l)| l.is_negative()).unwrap_or(false) {
            c = -c;
        }
        if c.is_one() {
            return RationalFunction { num, den };
        }
        let r = c.recip();
        RationalFunction { num: num.scale(&r), den: den.scale(&r) }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return self.num.add(&other.num).into();
        }
        if self.den == other.den {
            return Self::reduce(self.num.add(&other.num), self.den.clone());
        }
        let g = Poly::gcd(&self.den, &other.den);
        if g.is_one() {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            return Self::reduce(num, self.den.mul(&other.den));
        }
        let a = self.den.div_exact(&g).expect("gcd divides");
        let b = other.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&b).add(&other.num.mul(&a));
        Self::reduce(num, self.den.mul(&b))
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return self.num.mul(&other.num).into();
        }
        let g1 = Poly::gcd(&self.num, &other.den);
        let g2 = Poly::gcd(&other.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = other.den.div_exact(&g1).expect("gcd divides");
        let n2 = other.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        Self::normalize(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let e = e as u32;
        Ok(RationalFunction { num: self.num.pow(e), den: self.den.pow(e) }
            .renormalized())
    }

    fn renormalized(self) -> Self {
        Self::normalize(self.num, self.den)
    }

    pub fn derivative(&self, s: &Symbol) -> Self {
        let dn = self.num.derivative(s);
        if self.den.is_one() {
            return dn.into();
        }
        let dd = self.den.derivative(s);
        if dd.is_zero() {
            return Self::reduce(dn, self.den.clone());
        }
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        Self::reduce(num, self.den.mul(&self.den))
    }

    /// Simultaneous substitution; unmapped symbols are kept.
    pub fn substitute(&self, map: &CoordMap) -> Result<Self> {
        if map.is_empty() {
            return Ok(self.clone());
        }
        let mut cache: HashMap<(Symbol, u32), RationalFunction> = HashMap::new();
        let num = eval_poly(&self.num, map, &mut cache);
        if self.den.is_one() {
            return Ok(num);
        }
        let den = eval_poly(&self.den, map, &mut cache);
        if den.is_zero() {
            return Err(Error::SubstitutionPole);
        }
        num.div(&den)
    }
}

fn eval_poly(
    p: &Poly,
    map: &CoordMap,
    cache: &mut HashMap<(Symbol, u32), RationalFunction>,
) -> RationalFunction {
    let touched = p
        .terms()
        .any(|(m, _)| m.factors().any(|(s, _)| map.contains_key(s)));
    if !touched {
        return p.clone().into();
    }
    let polynomial = map.values().all(|r| r.is_polynomial());
    if polynomial {
        let mut acc = Poly::zero();
        for (m, c) in p.terms() {
            let mut kept = Vec::new();
            let mut t = Poly::constant(c.clone());
            for (s, e) in m.factors() {
                match map.get(s) {
                    Some(img) => {
                        let f = power(img, s, *e, cache);
                        t = t.mul(&f.num);
                    }
                    None => kept.push((*s, *e)),
                }
            }
            if !kept.is_empty() {
                t = t.mul_term(&Monomial::from_pairs(kept), &Q::one());
            }
            acc = acc.add(&t);
        }
        return acc.into();
    }
    let mut acc = RationalFunction::zero();
    for (m, c) in p.terms() {
        let mut kept = Vec::new();
        let mut t = RationalFunction::constant(c.clone());
        for (s, e) in m.factors() {
            match map.get(s) {
                Some(img) => {
                    let f = power(img, s, *e, cache);
                    t = t.mul(&f);
                }
                None => kept.push((*s, *e)),
            }
        }
        if !kept.is_empty() {
            t = t.mul(&Poly::term(Monomial::from_pairs(kept), Q::one()).into());
        }
        acc = acc.add(&t);
    }
    acc
}

fn power(
    img: &RationalFunction,
    s: &Symbol,
    e: u32,
    cache: &mut HashMap<(Symbol, u32), RationalFunction>,
) -> RationalFunction {
    if e == 1 {
        return img.clone();
    }
    cache
        .entry((*s, e))
        .or_insert_with(|| img.pow(e as i64).expect("nonnegative power"))
        .clone()
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
