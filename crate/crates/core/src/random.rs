//! Seeded random polynomial data for the identity suites.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cech::{Chart, CoverModel, Mode};
use crate::connect::NerveElement;
use crate::error::Result;
use crate::forms::{Form, FormKey, GeneratorSet, MatrixForm};
use crate::scalar::{CoordMap, Monomial, Poly, RationalFunction, Symbol, UTau, Q};

pub struct RandomData {
    rng: ChaCha8Rng,
    coords: Vec<Symbol>,
    gens: Arc<GeneratorSet>,
    /// Probability that a given monomial appears.
    pub density: f64,
    /// Largest total degree of generated polynomials, 1 or 2.
    pub max_degree: u32,
}

impl RandomData {
    pub fn new(seed: u64, coords: &[&str]) -> Self {
        let coords: Vec<Symbol> = coords.iter().map(|c| Symbol::new(c)).collect();
        let gens = GeneratorSet::from_coords(&coords).expect("distinct coordinates");
        RandomData { rng: ChaCha8Rng::seed_from_u64(seed), coords, gens, density: 0.4, max_degree: 2 }
    }

    pub fn generators(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn coords(&self) -> &[Symbol] {
        &self.coords
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn coefficient(&mut self) -> i64 {
        *[-3i64, -2, -1, 1, 2, 3].choose(&mut self.rng).unwrap()
    }

    fn monomials(&self) -> Vec<Monomial> {
        let mut out = vec![Monomial::one()];
        for (i, a) in self.coords.iter().enumerate() {
            out.push(Monomial::var(*a));
            if self.max_degree < 2 {
                continue;
            }
            for b in &self.coords[i..] {
                out.push(Monomial::from_pairs(vec![(*a, 1), (*b, 1)]));
            }
        }
        out
    }

    /// Polynomial of degree ≤ `max_degree` with coefficients in `{-3..3} \ {0}`.
    pub fn poly(&mut self) -> Poly {
        let mut p = Poly::zero();
        for m in self.monomials() {
            if self.rng.gen_bool(self.density) {
                let c = self.coefficient();
                p.add_term(m, Q::from_integer(c));
            }
        }
        p
    }

    pub fn nonzero_poly(&mut self) -> Poly {
        loop {
            let p = self.poly();
            if !p.is_zero() {
                return p;
            }
        }
    }

    pub fn one_form(&mut self) -> Form {
        let mut f = Form::zero(&self.gens);
        for i in 0..self.gens.len() {
            let p = self.poly();
            f.insert(FormKey { wedge: 1 << i, ut: UTau::ONE }, p.into());
        }
        f
    }

    pub fn connection(&mut self, rank: usize) -> MatrixForm {
        let entries = (0..rank * rank).map(|_| self.one_form()).collect();
        MatrixForm::from_entries(rank, &self.gens, entries).unwrap()
    }

    /// `Id` plus a random strictly upper triangular matrix.
    pub fn unitriangular(&mut self, rank: usize) -> MatrixForm {
        let mut v = Vec::with_capacity(rank * rank);
        for i in 0..rank {
            for j in 0..rank {
                let r = match i.cmp(&j) {
                    std::cmp::Ordering::Equal => RationalFunction::one(),
                    std::cmp::Ordering::Less => self.poly().into(),
                    std::cmp::Ordering::Greater => RationalFunction::zero(),
                };
                v.push(r);
            }
        }
        MatrixForm::from_functions(rank, &self.gens, v).unwrap()
    }

    /// Flat connection `h⁻¹ D h + h⁻¹ dh` with `D = diag(dp_1, …, dp_r)` and
    /// `h` unitriangular. Its trace `Σ dp_i` is generically nonzero.
    pub fn flat_connection(&mut self, rank: usize) -> MatrixForm {
        let mut dmat = MatrixForm::zero(rank, &self.gens);
        for i in 0..rank {
            let p = self.poly();
            dmat.set(i, i, Form::function(&self.gens, p.into()).d());
        }
        let h = self.unitriangular(rank);
        let hinv = h.inverse().unwrap();
        hinv.mul(&dmat.mul(&h)).add(&hinv.mul(&h.d()))
    }

    pub fn nerve_element(&mut self, rank: usize, n: usize) -> Result<NerveElement> {
        let a = (0..=n).map(|_| self.connection(rank)).collect();
        let f = (0..n).map(|_| self.unitriangular(rank)).collect();
        NerveElement::new(a, f)
    }

    /// All connections flat, so every vertex curvature vanishes.
    pub fn flat_nerve_element(&mut self, rank: usize, n: usize) -> Result<NerveElement> {
        let a = (0..=n).map(|_| self.flat_connection(rank)).collect();
        let f = (0..n).map(|_| self.unitriangular(rank)).collect();
        NerveElement::new(a, f)
    }

    /// Matrix of random 1-forms with constant coefficients.
    pub fn constant_one_forms(&mut self, rank: usize) -> MatrixForm {
        let mut entries = Vec::new();
        for _ in 0..rank * rank {
            let mut f = Form::zero(&self.gens);
            for i in 0..self.gens.len() {
                if self.rng.gen_bool(0.6) {
                    let c = self.coefficient();
                    f.insert(FormKey { wedge: 1 << i, ut: UTau::ONE }, RationalFunction::integer(c));
                }
            }
            entries.push(f);
        }
        MatrixForm::from_entries(rank, &self.gens, entries).unwrap()
    }

    /// Cover of `charts` copies of the coordinate chart glued by the identity
    /// maps, every intersection up to Čech degree `depth` present.
    /// Transitions are `g_{ij} = h_i^{-1} h_j` with unitriangular `h_i`, so
    /// the cocycle condition holds; family `random` carries general connections.
    pub fn cover_model(&mut self, charts: usize, rank: usize, depth: usize) -> Result<CoverModel> {
        let list = (0..charts)
            .map(|i| Chart::new(&format!("U{}", i), self.coords.clone(), Vec::new(), Mode::Smooth))
            .collect::<Result<Vec<_>>>()?;
        let mut model = CoverModel::new(Mode::Smooth, list, rank)?;
        let identity: CoordMap = self.coords.iter().map(|c| (*c, RationalFunction::var(*c))).collect();
        for size in 2..=(depth + 1).min(charts) {
            for index in subsets(charts, size) {
                let r = index[1..].iter().map(|&i| (i, identity.clone())).collect();
                model.add_intersection(index.clone(), index[0], r)?;
            }
        }
        let h: Vec<MatrixForm> = (0..charts).map(|_| self.unitriangular(rank)).collect();
        let hinv = h.iter().map(|m| m.inverse()).collect::<Result<Vec<_>>>()?;
        if depth >= 1 {
            for (i, hi) in hinv.iter().enumerate() {
                for (j, hj) in h.iter().enumerate().skip(i + 1) {
                    model.set_transition(i, j, hi.mul(hj))?;
                }
            }
        }
        let conns = (0..charts).map(|_| self.connection(rank)).collect();
        model.add_family("random", conns)?;
        model.validate()?;
        Ok(model)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}
