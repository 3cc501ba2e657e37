//! Chern character of the simplex connection, integrated over subcells.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::connect::{curvature_formula, restrict_to_subcell, NerveElement, SimplexConnectionData};
use crate::error::Result;
use crate::forms::{Form, MatrixForm};
use crate::scalar::{q, UTau, Q};
use crate::simplex::{integrate, Subcell};

/// `Σ_k u^k τ^k tr(R^k) / k!`, stopping once `R^k` vanishes.
pub fn ch_u(r: &MatrixForm) -> Form {
    let gens = r.generators();
    let mut out = Form::constant(gens, Q::from_integer(r.rank() as i64));
    let mut power = r.clone();
    let mut fact = 1i64;
    for k in 1.. {
        if power.is_zero() || 2 * k > gens.len() as u32 {
            break;
        }
        fact *= k as i64;
        let tr = power.trace();
        out = out.add(&tr.scale(&q(1, fact)).shift(UTau::new(k, k)));
        power = power.mul(r);
    }
    out
}

/// Component of `ch_u(R)` containing every simplex generator of an ℓ-cell,
/// the only part seen by the fiber integral. `R` is split by the number of
/// simplex generators in each term and only the words of `R^k` that can
/// still reach fiber degree ℓ are multiplied out.
pub fn ch_u_fiber_top(r: &MatrixForm, l: usize) -> Form {
    let gens = r.generators();
    let b = gens.base_len();
    if l == 0 {
        return ch_u(r);
    }
    let fiber_mask: u32 = ((1u32 << gens.simplex_len()) - 1) << b;
    let mut parts: Vec<MatrixForm> = Vec::new();
    for m in 0..=2u32 {
        parts.push(r.map(|f| {
            let mut out = Form::zero(gens);
            for (k, c) in f.terms() {
                if (k.wedge & fiber_mask).count_ones() == m {
                    out.insert(*k, c.clone());
                }
            }
            out
        }));
    }
    let kmax = gens.len() / 2;
    // P_k[m]: fiber degree m, base degree 2k - m.
    let needed = |k: usize, m: usize| m <= l && l - m <= 2 * (kmax - k) && m <= 2 * k && 2 * k - m <= b;
    let mut out = Form::zero(gens);
    let mut prev: Vec<Option<MatrixForm>> = vec![None; l + 1];
    for (m, p) in parts.iter().enumerate() {
        if m <= l && needed(1, m) && !p.is_zero() {
            prev[m] = Some(p.clone());
        }
    }
    let mut fact = 1i64;
    for k in 1..=kmax {
        fact *= k as i64;
        if let Some(p) = &prev[l] {
            out = out.add(&p.trace().scale(&q(1, fact)).shift(UTau::new(k as u32, k as u32)));
        }
        if k == kmax {
            break;
        }
        if k + 1 == kmax || (0..=l).all(|m| !needed(k + 2, m)) {
            if !needed(k + 1, l) {
                break;
            }
            // Only the trace of the fiber-top block is still needed.
            let mut tr = Form::zero(gens);
            for (a, part) in parts.iter().enumerate() {
                if a > l || part.is_zero() {
                    continue;
                }
                if let Some(p) = &prev[l - a] {
                    tr = tr.add(&p.trace_mul(part));
                }
            }
            fact *= (k + 1) as i64;
            out = out.add(&tr.scale(&q(1, fact)).shift(UTau::new(k as u32 + 1, k as u32 + 1)));
            break;
        }
        let mut next: Vec<Option<MatrixForm>> = vec![None; l + 1];
        for (m, slot) in next.iter_mut().enumerate() {
            if !needed(k + 1, m) {
                continue;
            }
            let mut acc: Option<MatrixForm> = None;
            for (a, part) in parts.iter().enumerate() {
                if a > m || part.is_zero() {
                    continue;
                }
                if let Some(p) = &prev[m - a] {
                    let t = p.mul(part);
                    acc = Some(match acc {
                        Some(x) => x.add(&t),
                        None => t,
                    });
                }
            }
            *slot = acc.filter(|x| !x.is_zero());
        }
        if next.iter().all(|x| x.is_none()) {
            break;
        }
        prev = next;
    }
    out
}

/// Sign relating the positively oriented fiber integral to the
/// orientation `dt_ℓ ∧ … ∧ dt_1` of an ℓ-cell, `(-1)^{ℓ(ℓ-1)/2}`.
pub fn cell_orientation(l: usize) -> Q {
    if (l * l.saturating_sub(1) / 2).is_multiple_of(2) {
        Q::from_integer(1.into())
    } else {
        Q::from_integer((-1).into())
    }
}

/// Label of the subcell `c` given the data of the whole chain.
pub fn ch_delta_eval_data(data: &SimplexConnectionData, c: &Subcell) -> Result<Form> {
    let tilde = restrict_to_subcell(data, c);
    let l = c.dim();
    let r = curvature_formula(&tilde)?;
    let ch = ch_u_fiber_top(&r, l);
    Ok(integrate(&ch, l)?.scale(&cell_orientation(l)))
}

pub fn ch_delta_eval(e: &NerveElement, c: &Subcell) -> Result<Form> {
    let data = SimplexConnectionData::new(e)?;
    ch_delta_eval_data(&data, c)
}

/// A form on every subcell of `Δ^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct DKLabeling {
    pub n: usize,
    pub labels: BTreeMap<Subcell, Form>,
}

impl DKLabeling {
    pub fn label(&self, c: &Subcell) -> &Form {
        &self.labels[c]
    }

    pub fn top(&self) -> &Form {
        &self.labels[&Subcell::full(self.n)]
    }

    pub fn add(&self, o: &DKLabeling) -> DKLabeling {
        let labels = self
            .labels
            .iter()
            .map(|(c, f)| (c.clone(), f.add(&o.labels[c])))
            .collect();
        DKLabeling { n: self.n, labels }
    }

    pub fn sub(&self, o: &DKLabeling) -> DKLabeling {
        let labels = self
            .labels
            .iter()
            .map(|(c, f)| (c.clone(), f.sub(&o.labels[c])))
            .collect();
        DKLabeling { n: self.n, labels }
    }

    /// `d L(e) - Σ_j (-1)^j L(∂_j e)` for one cell.
    pub fn chain_defect(&self, c: &Subcell) -> Form {
        let mut rhs = Form::zero(self.labels[c].generators());
        if c.dim() > 0 {
            for j in 0..=c.dim() {
                let f = &self.labels[&c.face(j)];
                rhs = if j % 2 == 0 { rhs.add(f) } else { rhs.sub(f) };
            }
        }
        self.labels[c].d().sub(&rhs)
    }

    /// First cell violating `d L(e) = Σ_j (-1)^j L(∂_j e)`.
    pub fn check_chain_map(&self) -> std::result::Result<(), Subcell> {
        let bad: Vec<Subcell> = self
            .labels
            .par_iter()
            .filter(|(c, _)| !self.chain_defect(c).is_zero())
            .map(|(c, _)| c.clone())
            .collect();
        match bad.into_iter().min_by(|a, b| a.dim().cmp(&b.dim()).then(a.cmp(b))) {
            Some(c) => Err(c),
            None => Ok(()),
        }
    }

    /// First cell with a term of form degree below its dimension.
    pub fn check_degree_bound(&self) -> std::result::Result<(), Subcell> {
        for (c, f) in self.labels.iter() {
            if f.min_degree().map(|d| (d as usize) < c.dim()).unwrap_or(false) {
                return Err(c.clone());
            }
        }
        Ok(())
    }

    /// First ℓ-cell with a nonzero `u^p`, `p ≤ ⌊(ℓ-1)/2⌋`.
    pub fn check_u_truncation(&self) -> std::result::Result<(), Subcell> {
        for (c, f) in self.labels.iter() {
            let l = c.dim();
            if l == 0 {
                continue;
            }
            if f.u_powers().iter().any(|&p| (p as usize) <= (l - 1) / 2) {
                return Err(c.clone());
            }
        }
        Ok(())
    }
}

pub fn ch_labeling_data(data: &SimplexConnectionData) -> Result<DKLabeling> {
    let n = data.len();
    let cells = Subcell::all(n);
    let labels = cells
        .par_iter()
        .map(|c| ch_delta_eval_data(data, c).map(|f| (c.clone(), f)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(DKLabeling { n, labels })
}

pub fn ch_labeling(e: &NerveElement) -> Result<DKLabeling> {
    ch_labeling_data(&SimplexConnectionData::new(e)?)
}

/// All permutations of `1..=k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut v = p.clone();
            v.insert(pos, k);
            out.push(v);
        }
    }
    out.sort();
    out
}

pub fn sign(p: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 { 1 } else { -1 }
}

/// `tr(M_{w_1} ⋯ M_{w_k})` for a word in 1-based indices.
pub fn trace_word(ms: &[MatrixForm], word: &[usize]) -> Form {
    let mut p = ms[word[0] - 1].clone();
    for &i in &word[1..] {
        p = p.mul(&ms[i - 1]);
    }
    p.trace()
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

/// Lowest `u`-term on an ℓ-cell of a chain with flat transferred connections:
/// `(-1)^ℓ u^ℓ τ^ℓ / ℓ! · Σ_σ sgn(σ)/ℓ! tr(θ̃_σ(1) ⋯ θ̃_σ(ℓ))`.
/// The factor `(-1)^ℓ` is the orientation of the cell relative to the
/// increasing vertex order.
pub fn lowest_term_symmetrized(data: &SimplexConnectionData, c: &Subcell) -> Form {
    let tilde = restrict_to_subcell(data, c);
    let l = c.dim();
    let mut out = Form::zero(data.generators());
    for s in permutations(l) {
        let t = trace_word(&tilde.thetas, &s);
        out = out.add(&t.scale(&Q::from_integer(sign(&s))));
    }
    let f = factorial(l);
    let orient = if l.is_multiple_of(2) { 1 } else { -1 };
    out.scale(&q(orient, f * f)).shift(UTau::new(l as u32, l as u32))
}

/// Edge label for flat transferred connections:
/// `-Σ_p u^p τ^p (-1)^{p-1} (p-1)!/(2p-1)! tr(θ̃^{2p-1})`.
pub fn edge_chern_simons(theta: &MatrixForm) -> Form {
    let gens = theta.generators();
    let mut out = Form::zero(gens);
    let mut power = theta.clone();
    let sq = theta.mul(theta);
    for p in 1.. {
        if power.is_zero() || 2 * p - 1 > gens.len() {
            break;
        }
        let sgn = if p % 2 == 1 { 1 } else { -1 };
        let c = q(-sgn * factorial(p - 1), factorial(2 * p - 1));
        out = out.add(&power.trace().scale(&c).shift(UTau::new(p as u32, p as u32)));
        power = power.mul(&sq);
    }
    out
}
