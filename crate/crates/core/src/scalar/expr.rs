use std::collections::BTreeMap;
use std::fmt;

use super::poly::{Symbol, Q};
use super::ratfunc::{CoordMap, RationalFunction};
use crate::error::{Error, Result};

/// Exponents of the formal variables `u` (degree -2) and `τ = 1/(2πi)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct UTau {
    pub u: u32,
    pub tau: u32,
}

impl UTau {
    pub const ONE: UTau = UTau { u: 0, tau: 0 };

    pub fn new(u: u32, tau: u32) -> Self {
        UTau { u, tau }
    }
}

impl std::ops::Mul for UTau {
    type Output = UTau;
    fn mul(self, o: UTau) -> UTau {
        UTau { u: self.u + o.u, tau: self.tau + o.tau }
    }
}

/// Element of ℚ(coordinates)[u, τ].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ScalarExpr {
    terms: BTreeMap<UTau, RationalFunction>,
}

impl From<RationalFunction> for ScalarExpr {
    fn from(r: RationalFunction) -> Self {
        ScalarExpr::term(UTau::ONE, r)
    }
}

impl ScalarExpr {
    pub fn zero() -> Self {
        ScalarExpr::default()
    }

    pub fn one() -> Self {
        RationalFunction::one().into()
    }

    pub fn constant(c: Q) -> Self {
        RationalFunction::constant(c).into()
    }

    pub fn integer(n: i64) -> Self {
        RationalFunction::integer(n).into()
    }

    pub fn var(s: Symbol) -> Self {
        RationalFunction::var(s).into()
    }

    pub fn u() -> Self {
        ScalarExpr::term(UTau::new(1, 0), RationalFunction::one())
    }

    pub fn tau() -> Self {
        ScalarExpr::term(UTau::new(0, 1), RationalFunction::one())
    }

    pub fn term(k: UTau, r: RationalFunction) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(k, r);
        }
        ScalarExpr { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&UTau, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&UTau::ONE).map(|r| r.is_one()).unwrap_or(false)
    }

    /// The `u^u τ^tau` coefficient.
    pub fn coefficient(&self, k: UTau) -> RationalFunction {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    /// The rational function if no `u` or `τ` occurs.
    pub fn as_rational_function(&self) -> Option<RationalFunction> {
        match self.terms.len() {
            0 => Some(RationalFunction::zero()),
            1 => self.terms.get(&UTau::ONE).cloned(),
            _ => None,
        }
    }

    /// Exponents when the expression is a single `u^a τ^b` term.
    pub fn u_power(&self) -> Option<u32> {
        (self.terms.len() == 1).then(|| self.terms.keys().next().unwrap().u)
    }

    pub fn tau_power(&self) -> Option<u32> {
        (self.terms.len() == 1).then(|| self.terms.keys().next().unwrap().tau)
    }

    fn insert(&mut self, k: UTau, r: RationalFunction) {
        if r.is_zero() {
            return;
        }
        let v = match self.terms.remove(&k) {
            Some(old) => old.add(&r),
            None => r,
        };
        if !v.is_zero() {
            self.terms.insert(k, v);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, r) in o.terms.iter() {
            out.insert(*k, r.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        ScalarExpr { terms: self.terms.iter().map(|(k, r)| (*k, r.neg())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ScalarExpr { terms: self.terms.iter().map(|(k, r)| (*k, r.scale(c))).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (k1, r1) in self.terms.iter() {
            for (k2, r2) in o.terms.iter() {
                out.insert(*k1 * *k2, r1.mul(r2));
            }
        }
        out
    }

    /// Inverse; only defined without `u` and `τ`.
    pub fn inv(&self) -> Result<Self> {
        match self.as_rational_function() {
            Some(r) => Ok(r.inv()?.into()),
            None => Err(Error::NotInvertible(self.to_string())),
        }
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        if let Some(r) = self.as_rational_function() {
            return Ok(r.pow(e)?.into());
        }
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        Ok(acc)
    }

    pub fn derivative(&self, s: &Symbol) -> Self {
        let mut out = Self::zero();
        for (k, r) in self.terms.iter() {
            out.insert(*k, r.derivative(s));
        }
        out
    }

    pub fn substitute(&self, map: &CoordMap) -> Result<Self> {
        let mut out = Self::zero();
        for (k, r) in self.terms.iter() {
            out.insert(*k, r.substitute(map)?);
        }
        Ok(out)
    }

    pub fn contains_var(&self, s: &Symbol) -> bool {
        self.terms.values().any(|r| r.contains_var(s))
    }
}

impl fmt::Debug for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Canonical text; `u` and `tau` are printed as the formal identifiers.
impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, r)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let mut prefix = Vec::new();
            match k.u {
                0 => {}
                1 => prefix.push("u".to_string()),
                n => prefix.push(format!("u^{}", n)),
            }
            match k.tau {
                0 => {}
                1 => prefix.push("tau".to_string()),
                n => prefix.push(format!("tau^{}", n)),
            }
            if prefix.is_empty() {
                write!(f, "{}", r)?;
            } else if r.is_one() {
                write!(f, "{}", prefix.join("*"))?;
            } else if r.as_constant().map(|c| c == -Q::one()).unwrap_or(false) {
                write!(f, "-{}", prefix.join("*"))?;
            } else {
                write!(f, "{}*({})", prefix.join("*"), r)?;
            }
        }
        Ok(())
    }
}
