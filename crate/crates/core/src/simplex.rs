//! Faces, degeneracies and subcells of the geometric simplex
//! `{0 ≤ t_1 ≤ … ≤ t_n ≤ 1}`, and exact fiber integration over it.
//!
//! Coordinate maps are pullback substitutions: the map for `φ: Δ^m → Δ^n`
//! sends each coordinate `t_k` of `Δ^n` to its expression in the
//! coordinates of `Δ^m`. Both sides use the names `_t1, _t2, …`; the
//! substitution is simultaneous, so the overlap is harmless.

use std::sync::Arc;


use crate::error::{Error, Result};
use crate::forms::{Form, FormKey, GeneratorSet};
use crate::scalar::{CoordMap, Poly, RationalFunction, Q};

pub use crate::forms::simplex_coord;

/// The subcell `e_{i_0 … i_ℓ}` of `Δ^n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subcell {
    n: usize,
    vertices: Vec<usize>,
}

impl Subcell {
    pub fn new(n: usize, vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty()
            || vertices.windows(2).any(|w| w[0] >= w[1])
            || *vertices.last().unwrap() > n
        {
            return Err(Error::Index(format!("invalid subcell {:?} of Δ^{}", vertices, n)));
        }
        Ok(Subcell { n, vertices })
    }

    pub fn full(n: usize) -> Self {
        Subcell { n, vertices: (0..=n).collect() }
    }

    pub fn vertex(n: usize, i: usize) -> Self {
        Subcell { n, vertices: vec![i] }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// `∂_j e`: drop the j-th vertex.
    pub fn face(&self, j: usize) -> Self {
        let mut v = self.vertices.clone();
        v.remove(j);
        Subcell { n: self.n, vertices: v }
    }

    /// All subcells of `Δ^n`, by dimension then lexicographically.
    pub fn all(n: usize) -> Vec<Subcell> {
        let mut out: Vec<Subcell> = (1u32..(1 << (n + 1)))
            .map(|mask| Subcell {
                n,
                vertices: (0..=n).filter(|i| mask & (1 << i) != 0).collect(),
            })
            .collect();
        out.sort_by(|a, b| a.dim().cmp(&b.dim()).then(a.vertices.cmp(&b.vertices)));
        out
    }

    pub fn of_dim(n: usize, l: usize) -> Vec<Subcell> {
        Self::all(n).into_iter().filter(|c| c.dim() == l).collect()
    }
}

fn t(k: usize) -> RationalFunction {
    RationalFunction::var(simplex_coord(k))
}

/// Pullback along `δ_j: Δ^{n-1} → Δ^n`.
pub fn face_substitution(j: usize, n: usize) -> Result<CoordMap> {
    if n == 0 || j > n {
        return Err(Error::Index(format!("face δ_{} of Δ^{}", j, n)));
    }
    let mut m = CoordMap::new();
    for k in 1..=n {
        let img = if j == 0 {
            if k == 1 { RationalFunction::zero() } else { t(k - 1) }
        } else if j == n {
            if k == n { RationalFunction::one() } else { t(k) }
        } else if k <= j {
            t(k)
        } else {
            t(k - 1)
        };
        m.insert(simplex_coord(k), img);
    }
    Ok(m)
}

/// Pullback along `σ_j: Δ^{n} → Δ^{n-1}`, which forgets `t_{j+1}`.
pub fn degeneracy_substitution(j: usize, n: usize) -> Result<CoordMap> {
    if n == 0 || j >= n {
        return Err(Error::Index(format!("degeneracy σ_{} of Δ^{}", j, n)));
    }
    let mut m = CoordMap::new();
    for k in 1..n {
        m.insert(simplex_coord(k), if k <= j { t(k) } else { t(k + 1) });
    }
    Ok(m)
}

/// Pullback along the inclusion of `e_{i_0 … i_ℓ}` with its own coordinates.
pub fn subcell_substitution(c: &Subcell) -> CoordMap {
    let v = &c.vertices;
    let mut m = CoordMap::new();
    for k in 1..=c.n {
        let img = if k <= v[0] {
            RationalFunction::zero()
        } else if k > *v.last().unwrap() {
            RationalFunction::one()
        } else {
            let j = v.iter().position(|&i| k <= i).unwrap();
            t(j)
        };
        m.insert(simplex_coord(k), img);
    }
    m
}

/// Fiber integral over `Δ^ℓ`, the simplex generators being the last `ℓ`
/// generators. Returns the form over the base generators.
pub fn integrate(w: &Form, l: usize) -> Result<Form> {
    let gens = w.generators();
    if gens.simplex_len() != l {
        return Err(Error::Degree(format!(
            "integrand lives on Δ^{}, not Δ^{}",
            gens.simplex_len(),
            l
        )));
    }
    let base = gens.base();
    let b = gens.base_len();
    let fiber: u32 = ((1u32 << l) - 1) << b;
    let fiber_syms: Vec<_> = (1..=l).map(simplex_coord).collect();
    let mut out = Form::zero(&base);
    for (k, r) in w.terms() {
        if k.wedge & fiber != fiber {
            continue;
        }
        if let Some(s) = fiber_syms.iter().find(|s| r.denom().contains_var(s)) {
            return Err(Error::NonPolynomialFiber(s.to_string()));
        }
        let mut p = r.numer().clone();
        for i in 1..=l {
            let s = simplex_coord(i);
            p = p.antiderivative(&s);
            p = if i < l {
                p.rename(&s, &simplex_coord(i + 1))
            } else {
                p.eval_at(&s, &Q::one())
            };
        }
        let val = RationalFunction::new(p, r.denom().clone())?;
        out.insert(FormKey { wedge: k.wedge & !fiber, ut: k.ut }, val);
    }
    Ok(out)
}

/// Generator set of `base × Δ^n`.
pub fn simplex_generators(base: &Arc<GeneratorSet>, n: usize) -> Arc<GeneratorSet> {
    base.with_simplex(n)
}

/// `t_k` as a polynomial.
pub fn coordinate(k: usize) -> Poly {
    Poly::var(simplex_coord(k))
}
