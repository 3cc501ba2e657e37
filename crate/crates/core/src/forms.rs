//! Graded exterior algebra over a fixed ordered set of 1-form generators.
//!
//! A wedge monomial is a bit set over the generator list; the product of
//! two monomials is signed by the number of inversions of the concatenation.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;


use crate::error::{Error, Result};
use crate::scalar::{parse_expr, CoordMap, RationalFunction, ScalarExpr, Symbol, UTau, Q};

pub type Wedge = u32;

pub const MAX_GENERATORS: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub coord: Symbol,
}

impl Generator {
    pub fn new(name: &str, coord: &Symbol) -> Self {
        Generator { name: name.to_string(), coord: *coord }
    }

    /// `d<coord>`.
    pub fn differential(coord: &Symbol) -> Self {
        Generator { name: format!("d{}", coord), coord: *coord }
    }
}

/// Simplex coordinate `t_k`; the leading underscore keeps it out of the
/// manifest grammar, so it never collides with chart coordinates.
pub fn simplex_coord(k: usize) -> Symbol {
    Symbol::new(&format!("_t{}", k))
}

/// Ordered generators: base generators first, then `dt_1..dt_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    gens: Vec<Generator>,
    base_len: usize,
}

impl GeneratorSet {
    pub fn new(base: Vec<Generator>) -> Result<Arc<Self>> {
        Self::build(base, 0)
    }

    /// `d` of each coordinate, in the given order.
    pub fn from_coords(coords: &[Symbol]) -> Result<Arc<Self>> {
        Self::new(coords.iter().map(Generator::differential).collect())
    }

    fn build(base: Vec<Generator>, n: usize) -> Result<Arc<Self>> {
        let base_len = base.len();
        let mut gens = base;
        for k in 1..=n {
            let c = simplex_coord(k);
            gens.push(Generator { name: format!("d{}", c), coord: c });
        }
        if gens.len() > MAX_GENERATORS {
            return Err(Error::InvalidArgument(format!(
                "at most {} generators supported",
                MAX_GENERATORS
            )));
        }
        for (i, g) in gens.iter().enumerate() {
            if gens[..i].iter().any(|h| h.name == g.name || h.coord == g.coord) {
                return Err(Error::InvalidArgument(format!("duplicate generator {}", g.name)));
            }
        }
        Ok(Arc::new(GeneratorSet { gens, base_len }))
    }

    /// Same base generators with `n` simplex generators appended.
    pub fn with_simplex(&self, n: usize) -> Arc<Self> {
        Self::build(self.gens[..self.base_len].to_vec(), n).expect("valid base")
    }

    pub fn base(&self) -> Arc<Self> {
        self.with_simplex(0)
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn base_len(&self) -> usize {
        self.base_len
    }

    pub fn simplex_len(&self) -> usize {
        self.gens.len() - self.base_len
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn index_of_coord(&self, c: &Symbol) -> Option<usize> {
        self.gens.iter().position(|g| &g.coord == c)
    }

    pub fn index_of_name(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn names(&self, w: Wedge) -> Vec<String> {
        (0..self.gens.len())
            .filter(|i| w & (1 << i) != 0)
            .map(|i| self.gens[i].name.clone())
            .collect()
    }

    /// Whether `self` extends `other` (same leading generators).
    pub fn extends(&self, other: &GeneratorSet) -> bool {
        other.gens.len() <= self.gens.len() && self.gens[..other.gens.len()] == other.gens[..]
    }
}

/// Sign of `a ∧ b` for disjoint monomials.
fn wedge_sign(a: Wedge, b: Wedge) -> bool {
    let mut inv = 0u32;
    let mut bits = b;
    while bits != 0 {
        let j = bits.trailing_zeros();
        inv += (a >> (j + 1)).count_ones();
        bits &= bits - 1;
    }
    inv % 2 == 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormKey {
    pub wedge: Wedge,
    pub ut: UTau,
}

/// A differential form with coefficients in ℚ(coords)[u, τ].
#[derive(Clone, PartialEq, Eq)]
pub struct Form {
    gens: Arc<GeneratorSet>,
    terms: BTreeMap<FormKey, RationalFunction>,
}

fn same(a: &Arc<GeneratorSet>, b: &Arc<GeneratorSet>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Form {
    pub fn zero(gens: &Arc<GeneratorSet>) -> Form {
        Form { gens: gens.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(gens: &Arc<GeneratorSet>, s: &ScalarExpr) -> Form {
        let mut f = Form::zero(gens);
        for (k, r) in s.terms() {
            f.insert(FormKey { wedge: 0, ut: *k }, r.clone());
        }
        f
    }

    pub fn function(gens: &Arc<GeneratorSet>, r: RationalFunction) -> Form {
        let mut f = Form::zero(gens);
        f.insert(FormKey { wedge: 0, ut: UTau::ONE }, r);
        f
    }

    pub fn constant(gens: &Arc<GeneratorSet>, c: Q) -> Form {
        Form::function(gens, RationalFunction::constant(c))
    }

    pub fn generator(gens: &Arc<GeneratorSet>, i: usize) -> Form {
        let mut f = Form::zero(gens);
        f.insert(FormKey { wedge: 1 << i, ut: UTau::ONE }, RationalFunction::one());
        f
    }

    pub fn monomial(gens: &Arc<GeneratorSet>, key: FormKey, r: RationalFunction) -> Form {
        let mut f = Form::zero(gens);
        f.insert(key, r);
        f
    }

    pub fn generators(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FormKey, &RationalFunction)> {
        self.terms.iter()
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

    pub fn insert(&mut self, k: FormKey, r: RationalFunction) {
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

    fn check(&self, o: &Form) {
        assert!(same(&self.gens, &o.gens), "{}", Error::GeneratorMismatch);
    }

    pub fn add(&self, o: &Form) -> Form {
        self.check(o);
        let (mut out, small) = if self.len() >= o.len() { (self.clone(), o) } else { (o.clone(), self) };
        for (k, r) in small.terms.iter() {
            out.insert(*k, r.clone());
        }
        out
    }

    pub fn neg(&self) -> Form {
        Form {
            gens: self.gens.clone(),
            terms: self.terms.iter().map(|(k, r)| (*k, r.neg())).collect(),
        }
    }

    pub fn sub(&self, o: &Form) -> Form {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Q) -> Form {
        if c.is_zero() {
            return Form::zero(&self.gens);
        }
        if c.is_one() {
            return self.clone();
        }
        Form {
            gens: self.gens.clone(),
            terms: self.terms.iter().map(|(k, r)| (*k, r.scale(c))).collect(),
        }
    }

    pub fn mul_function(&self, f: &RationalFunction) -> Form {
        let mut out = Form::zero(&self.gens);
        for (k, r) in self.terms.iter() {
            out.insert(*k, r.mul(f));
        }
        out
    }

    pub fn mul_scalar(&self, s: &ScalarExpr) -> Form {
        let mut out = Form::zero(&self.gens);
        for (k2, r2) in s.terms() {
            for (k, r) in self.terms.iter() {
                out.insert(FormKey { wedge: k.wedge, ut: k.ut * *k2 }, r.mul(r2));
            }
        }
        out
    }

    /// Multiplies by `u^a τ^b`.
    pub fn shift(&self, ut: UTau) -> Form {
        Form {
            gens: self.gens.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, r)| (FormKey { wedge: k.wedge, ut: k.ut * ut }, r.clone()))
                .collect(),
        }
    }

    pub fn wedge(&self, o: &Form) -> Form {
        self.check(o);
        let mut out = Form::zero(&self.gens);
        for (k1, r1) in self.terms.iter() {
            for (k2, r2) in o.terms.iter() {
                if k1.wedge & k2.wedge != 0 {
                    continue;
                }
                let mut c = r1.mul(r2);
                if wedge_sign(k1.wedge, k2.wedge) {
                    c = c.neg();
                }
                out.insert(FormKey { wedge: k1.wedge | k2.wedge, ut: k1.ut * k2.ut }, c);
            }
        }
        out
    }

    /// Exterior derivative: `Σ_i g_i ∂/∂(coord_i)` as an odd derivation.
    pub fn d(&self) -> Form {
        let mut out = Form::zero(&self.gens);
        for (k, r) in self.terms.iter() {
            for (i, g) in self.gens.gens.iter().enumerate() {
                let bit = 1u32 << i;
                if k.wedge & bit != 0 || !r.contains_var(&g.coord) {
                    continue;
                }
                let mut c = r.derivative(&g.coord);
                if (k.wedge & (bit - 1)).count_ones() % 2 == 1 {
                    c = c.neg();
                }
                out.insert(FormKey { wedge: k.wedge | bit, ut: k.ut }, c);
            }
        }
        out
    }

    /// Form degree if homogeneous (zero form reports `None`).
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|k| k.wedge.count_ones());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.wedge.count_ones()).min()
    }

    /// Part with `u^p`, with `u` removed.
    pub fn u_part(&self, p: u32) -> Form {
        Form {
            gens: self.gens.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.ut.u == p)
                .map(|(k, r)| (FormKey { wedge: k.wedge, ut: UTau::new(0, k.ut.tau) }, r.clone()))
                .collect(),
        }
    }

    pub fn u_powers(&self) -> std::collections::BTreeSet<u32> {
        self.terms.keys().map(|k| k.ut.u).collect()
    }

    /// Sets `u = 1`.
    pub fn strip_u(&self) -> Form {
        let mut out = Form::zero(&self.gens);
        for (k, r) in self.terms.iter() {
            out.insert(FormKey { wedge: k.wedge, ut: UTau::new(0, k.ut.tau) }, r.clone());
        }
        out
    }

    /// Part of form degree `p`.
    pub fn degree_part(&self, p: u32) -> Form {
        Form {
            gens: self.gens.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.wedge.count_ones() == p)
                .map(|(k, r)| (*k, r.clone()))
                .collect(),
        }
    }

    /// Coefficient of a wedge monomial.
    pub fn coefficient(&self, w: Wedge) -> ScalarExpr {
        let mut s = ScalarExpr::zero();
        for (k, r) in self.terms.iter().filter(|(k, _)| k.wedge == w) {
            s = s.add(&ScalarExpr::term(k.ut, r.clone()));
        }
        s
    }

    pub fn contains_var(&self, s: &Symbol) -> bool {
        self.terms.values().any(|r| r.contains_var(s))
    }

    /// Reinterprets the form over a generator set with the same leading generators.
    pub fn with_generators(&self, gens: &Arc<GeneratorSet>) -> Result<Form> {
        let width = self.gens.len().min(gens.len());
        let mask: Wedge = if width >= 32 { u32::MAX } else { (1u32 << width) - 1 };
        if gens.extends(&self.gens) {
            return Ok(Form { gens: gens.clone(), terms: self.terms.clone() });
        }
        if self.gens.extends(gens) && self.terms.keys().all(|k| k.wedge & !mask == 0) {
            return Ok(Form { gens: gens.clone(), terms: self.terms.clone() });
        }
        Err(Error::GeneratorMismatch)
    }

    /// Pullback along a coordinate map: coefficients are substituted and
    /// each generator `d c` becomes `d(map(c))` over `target`.
    pub fn pullback(&self, map: &CoordMap, target: &Arc<GeneratorSet>) -> Result<Form> {
        let mut images: Vec<Option<Form>> = vec![None; self.gens.len()];
        let mut out = Form::zero(target);
        for (k, r) in self.terms.iter() {
            let mut f = Form::function(target, r.substitute(map)?);
            if f.is_zero() {
                continue;
            }
            let mut bits = k.wedge;
            while bits != 0 {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if images[i].is_none() {
                    images[i] = Some(self.generator_image(i, map, target)?);
                }
                f = f.wedge(images[i].as_ref().unwrap());
                if f.is_zero() {
                    break;
                }
            }
            out = out.add(&f.shift(k.ut));
        }
        Ok(out)
    }

    fn generator_image(&self, i: usize, map: &CoordMap, target: &Arc<GeneratorSet>) -> Result<Form> {
        let g = &self.gens.gens[i];
        match map.get(&g.coord) {
            Some(img) => Ok(Form::function(target, img.clone()).d()),
            None => match target.index_of_coord(&g.coord) {
                Some(j) => Ok(Form::generator(target, j)),
                None => Err(Error::MissingGenerator(g.name.clone())),
            },
        }
    }

    /// Substitutes in coefficients only, leaving generators alone.
    pub fn substitute_coefficients(&self, map: &CoordMap) -> Result<Form> {
        let mut out = Form::zero(&self.gens);
        for (k, r) in self.terms.iter() {
            out.insert(*k, r.substitute(map)?);
        }
        Ok(out)
    }

    /// Parses `Σ coeff * d<coord>` with one generator per term.
    pub fn parse_one_form(text: &str, gens: &Arc<GeneratorSet>, coords: &[Symbol]) -> Result<Form> {
        let gen_syms: Vec<Symbol> = gens.gens.iter().map(|g| Symbol::new(&g.name)).collect();
        let mut all = coords.to_vec();
        all.extend(gen_syms.iter().cloned());
        let e = parse_expr(text, &all)?;
        let mut out = Form::zero(gens);
        for (k, r) in e.terms() {
            if gen_syms.iter().any(|g| r.denom().contains_var(g)) {
                return Err(Error::Degree(format!("generator in a denominator: {}", text)));
            }
            for (m, c) in r.numer().terms() {
                let mut which = None;
                let mut rest = Vec::new();
                for (s, e) in m.factors() {
                    match gen_syms.iter().position(|g| g == s) {
                        Some(i) if *e == 1 && which.is_none() => which = Some(i),
                        Some(_) => {
                            return Err(Error::Degree(format!("not a 1-form: {}", text)));
                        }
                        None => rest.push((*s, *e)),
                    }
                }
                let i = which.ok_or_else(|| Error::Degree(format!("not a 1-form: {}", text)))?;
                let coeff = RationalFunction::new(
                    crate::scalar::Poly::term(crate::scalar::Monomial::from_pairs(rest), c.clone()),
                    r.denom().clone(),
                )?;
                out.insert(FormKey { wedge: 1 << i, ut: *k }, coeff);
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut by_wedge: BTreeMap<Wedge, ScalarExpr> = BTreeMap::new();
        for (k, r) in self.terms.iter() {
            let e = by_wedge.entry(k.wedge).or_default();
            *e = e.add(&ScalarExpr::term(k.ut, r.clone()));
        }
        for (i, (w, s)) in by_wedge.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let names = self.gens.names(*w);
            if names.is_empty() {
                write!(f, "({})", s)?;
            } else {
                write!(f, "({})*{}", s, names.join("^"))?;
            }
        }
        Ok(())
    }
}

/// Square matrix of forms over one generator set.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixForm {
    rank: usize,
    gens: Arc<GeneratorSet>,
    entries: Vec<Form>,
}

impl MatrixForm {
    pub fn zero(rank: usize, gens: &Arc<GeneratorSet>) -> Self {
        MatrixForm { rank, gens: gens.clone(), entries: vec![Form::zero(gens); rank * rank] }
    }

    pub fn identity(rank: usize, gens: &Arc<GeneratorSet>) -> Self {
        let mut m = Self::zero(rank, gens);
        for i in 0..rank {
            m.entries[i * rank + i] = Form::constant(gens, Q::one());
        }
        m
    }

    pub fn from_entries(rank: usize, gens: &Arc<GeneratorSet>, entries: Vec<Form>) -> Result<Self> {
        if entries.len() != rank * rank {
            return Err(Error::Rank(rank * rank, entries.len()));
        }
        if entries.iter().any(|e| !same(&e.gens, gens)) {
            return Err(Error::GeneratorMismatch);
        }
        Ok(MatrixForm { rank, gens: gens.clone(), entries })
    }

    pub fn from_functions(rank: usize, gens: &Arc<GeneratorSet>, f: Vec<RationalFunction>) -> Result<Self> {
        let entries = f.into_iter().map(|r| Form::function(gens, r)).collect();
        Self::from_entries(rank, gens, entries)
    }

    /// Requires every entry to have form degree `p` (zero entries allowed).
    pub fn expect_degree(self, p: u32) -> Result<Self> {
        for e in self.entries.iter() {
            if e.terms.keys().any(|k| k.wedge.count_ones() != p) {
                return Err(Error::Degree(format!("expected a matrix of {}-forms", p)));
            }
        }
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn get(&self, i: usize, j: usize) -> &Form {
        &self.entries[i * self.rank + j]
    }

    pub fn set(&mut self, i: usize, j: usize, f: Form) {
        assert!(same(&self.gens, &f.gens), "{}", Error::GeneratorMismatch);
        self.entries[i * self.rank + j] = f;
    }

    pub fn entries(&self) -> &[Form] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    fn zip(&self, o: &Self, f: impl Fn(&Form, &Form) -> Form) -> Self {
        assert_eq!(self.rank, o.rank, "{}", Error::Rank(self.rank, o.rank));
        MatrixForm {
            rank: self.rank,
            gens: self.gens.clone(),
            entries: self.entries.iter().zip(o.entries.iter()).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&Form) -> Form) -> Self {
        MatrixForm { rank: self.rank, gens: self.gens.clone(), entries: self.entries.iter().map(f).collect() }
    }

    pub fn try_map(&self, gens: &Arc<GeneratorSet>, f: impl Fn(&Form) -> Result<Form>) -> Result<Self> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(MatrixForm { rank: self.rank, gens: gens.clone(), entries })
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, Form::add)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, Form::sub)
    }

    pub fn neg(&self) -> Self {
        self.map(Form::neg)
    }

    pub fn scale(&self, c: &Q) -> Self {
        self.map(|e| e.scale(c))
    }

    /// Left multiplication by a scalar form, `ω ∧ A`.
    pub fn left_wedge(&self, w: &Form) -> Self {
        self.map(|e| w.wedge(e))
    }

    pub fn mul_function(&self, f: &RationalFunction) -> Self {
        self.map(|e| e.mul_function(f))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.rank, o.rank, "{}", Error::Rank(self.rank, o.rank));
        let r = self.rank;
        let mut entries = Vec::with_capacity(r * r);
        for i in 0..r {
            for k in 0..r {
                let mut acc = Form::zero(&self.gens);
                for j in 0..r {
                    let a = &self.entries[i * r + j];
                    let b = &o.entries[j * r + k];
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.wedge(b));
                }
                entries.push(acc);
            }
        }
        MatrixForm { rank: r, gens: self.gens.clone(), entries }
    }

    /// `tr(self · o)` without forming the off-diagonal entries.
    pub fn trace_mul(&self, o: &Self) -> Form {
        assert_eq!(self.rank, o.rank, "{}", Error::Rank(self.rank, o.rank));
        let r = self.rank;
        let mut acc = Form::zero(&self.gens);
        for i in 0..r {
            for j in 0..r {
                let a = &self.entries[i * r + j];
                let b = &o.entries[j * r + i];
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.wedge(b));
                }
            }
        }
        acc
    }

    pub fn trace(&self) -> Form {
        let mut acc = Form::zero(&self.gens);
        for i in 0..self.rank {
            acc = acc.add(&self.entries[i * self.rank + i]);
        }
        acc
    }

    pub fn d(&self) -> Self {
        self.map(Form::d)
    }

    pub fn with_generators(&self, gens: &Arc<GeneratorSet>) -> Result<Self> {
        self.try_map(gens, |e| e.with_generators(gens))
    }

    pub fn pullback(&self, map: &CoordMap, target: &Arc<GeneratorSet>) -> Result<Self> {
        self.try_map(target, |e| e.pullback(map, target))
    }

    pub fn substitute_coefficients(&self, map: &CoordMap) -> Result<Self> {
        let gens = self.gens.clone();
        self.try_map(&gens, |e| e.substitute_coefficients(map))
    }

    /// Entries as functions when all are 0-forms free of `u`, `τ`.
    pub fn functions(&self) -> Result<Vec<RationalFunction>> {
        self.entries
            .iter()
            .map(|e| {
                let mut out = RationalFunction::zero();
                for (k, r) in e.terms.iter() {
                    if k.wedge != 0 || k.ut != UTau::ONE {
                        return Err(Error::Degree("expected a matrix of functions".into()));
                    }
                    out = r.clone();
                }
                Ok(out)
            })
            .collect()
    }

    pub fn determinant(&self) -> Result<RationalFunction> {
        let (_, det) = gauss_jordan(self.rank, self.functions()?)?;
        Ok(det)
    }

    /// Inverse of a matrix of functions.
    pub fn inverse(&self) -> Result<Self> {
        let (inv, _) = gauss_jordan(self.rank, self.functions()?)?;
        Self::from_functions(self.rank, &self.gens, inv)
    }
}

/// Inverse and determinant over the field of rational functions.
fn gauss_jordan(n: usize, mut a: Vec<RationalFunction>) -> Result<(Vec<RationalFunction>, RationalFunction)> {
    let mut inv: Vec<RationalFunction> = (0..n * n)
        .map(|k| if k / n == k % n { RationalFunction::one() } else { RationalFunction::zero() })
        .collect();
    let mut det = RationalFunction::one();
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !a[r * n + col].is_zero())
            .min_by_key(|&r| {
                let e = &a[r * n + col];
                (!e.as_constant().is_some(), e.numer().len() + e.denom().len())
            })
            .ok_or(Error::Singular)?;
        if pivot != col {
            for k in 0..n {
                a.swap(pivot * n + k, col * n + k);
                inv.swap(pivot * n + k, col * n + k);
            }
            det = det.neg();
        }
        let p = a[col * n + col].clone();
        det = det.mul(&p);
        let pinv = p.inv()?;
        for k in 0..n {
            a[col * n + k] = a[col * n + k].mul(&pinv);
            inv[col * n + k] = inv[col * n + k].mul(&pinv);
        }
        for r in 0..n {
            if r == col || a[r * n + col].is_zero() {
                continue;
            }
            let f = a[r * n + col].clone();
            for k in 0..n {
                let t = a[col * n + k].mul(&f);
                a[r * n + k] = a[r * n + k].sub(&t);
                let t = inv[col * n + k].mul(&f);
                inv[r * n + k] = inv[r * n + k].sub(&t);
            }
        }
    }
    Ok((inv, det))
}

impl fmt::Debug for MatrixForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rank {
            let row: Vec<String> = (0..self.rank).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens() -> Arc<GeneratorSet> {
        GeneratorSet::from_coords(&[Symbol::new("x"), Symbol::new("y")])
            .unwrap()
            .with_simplex(1)
    }

    #[test]
    fn antisymmetry() {
        let g = gens();
        let dx = Form::generator(&g, 0);
        let dy = Form::generator(&g, 1);
        assert_eq!(dx.wedge(&dy), dy.wedge(&dx).neg());
        let dt = Form::generator(&g, 2);
        let s = dx.add(&dt);
        assert!(s.wedge(&s).is_zero());
    }

    #[test]
    fn d_of_simplex_function() {
        let g = gens();
        let t = RationalFunction::var(simplex_coord(1));
        let f = Form::function(&g, t.mul(&t).sub(&t));
        let df = f.d();
        assert_eq!(df.coefficient(1 << 2).as_rational_function().unwrap(), t.scale(&Q::from_integer(2.into())).sub(&RationalFunction::one()));
        assert!(df.d().is_zero());
    }

    #[test]
    fn inverse_of_monomial() {
        let g = GeneratorSet::from_coords(&[Symbol::new("z")]).unwrap();
        let z = RationalFunction::var(Symbol::new("z"));
        let m = MatrixForm::from_functions(1, &g, vec![z.clone()]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(inv.functions().unwrap()[0], z.inv().unwrap());
        assert!(MatrixForm::zero(2, &g).inverse().is_err());
    }
}
