//! Corrections `b_ν` and the un-symmetrized labeling `Ch↘ = Ch + b`.
//!
//! A word `ν` is a map `{1..ℓ+1} → {1..ℓ}`, stored as the list of its values.
//! The formal `τ^{ℓ+1}` sits in the outer coefficient; `b_ν` itself only
//! carries `u^{ℓ+1}`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::chern::{ch_labeling_data, permutations, sign, trace_word, DKLabeling};
use crate::connect::{restrict_to_subcell, NerveElement, SimplexConnectionData};
use crate::error::Result;
use crate::forms::{Form, MatrixForm};
use crate::scalar::{q, UTau, Q};
use crate::simplex::Subcell;

/// `σ_j(k) = σ(k)` if `σ(k) ≤ j`, else `σ(k) - 1`.
pub fn sigma_j_map(sigma: &[usize], j: usize) -> Vec<usize> {
    sigma.iter().map(|&v| if v <= j { v } else { v - 1 }).collect()
}

/// Path of value transpositions from `σ` to the reversal `(ℓ+1, …, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranspositionPath {
    pub sigma: Vec<usize>,
    /// `(σ^{(k-1)}, j(σ,k))`: the permutation before step `k` and the
    /// swapped values `j, j+1`.
    pub steps: Vec<(Vec<usize>, usize)>,
}

impl TranspositionPath {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The permutation after the last step.
    pub fn end(&self) -> Vec<usize> {
        match self.steps.last() {
            Some((p, j)) => swap_values(p, *j),
            None => self.sigma.clone(),
        }
    }
}

/// Exchanges the values `j` and `j+1`.
pub fn swap_values(p: &[usize], j: usize) -> Vec<usize> {
    p.iter()
        .map(|&v| if v == j { j + 1 } else if v == j + 1 { j } else { v })
        .collect()
}

/// Puts the value 1 in the last slot, then 2 in the one before, and so on.
/// Each step lowers the value in the target slot by one.
pub fn transposition_path(sigma: &[usize]) -> TranspositionPath {
    let m = sigma.len();
    let mut cur = sigma.to_vec();
    let mut steps = Vec::new();
    for v in 1..m {
        let pos = m - v;
        while cur[pos] != v {
            let j = cur[pos] - 1;
            let next = swap_values(&cur, j);
            steps.push((cur, j));
            cur = next;
        }
    }
    TranspositionPath { sigma: sigma.to_vec(), steps }
}

/// `f(θ_2,…) + Σ_i (-1)^i f(…, θ_i+θ_{i+1}, …) + (-1)^{ℓ+1} f(θ_1,…,θ_ℓ)`
/// for `ℓ+1` input forms.
pub fn coboundary_with(thetas: &[MatrixForm], f: impl Fn(&[MatrixForm]) -> Form) -> Form {
    let m = thetas.len();
    let mut out = f(&thetas[1..]);
    for i in 1..m {
        let mut merged: Vec<MatrixForm> = thetas[..i - 1].to_vec();
        merged.push(thetas[i - 1].add(&thetas[i]));
        merged.extend_from_slice(&thetas[i + 1..]);
        let t = f(&merged);
        out = if i % 2 == 0 { out.add(&t) } else { out.sub(&t) };
    }
    let t = f(&thetas[..m - 1]);
    if m.is_multiple_of(2) { out.add(&t) } else { out.sub(&t) }
}

/// The alternating sum for a single word `ν`, without `u`.
pub fn b_coboundary(thetas: &[MatrixForm], nu: &[usize]) -> Form {
    coboundary_with(thetas, |phi| trace_word(phi, nu))
}

/// `(-1)^j (tr(θ_σ) + tr(θ_σ'))`, `σ'` being `σ` with values `j, j+1` swapped.
pub fn swapped_pair(thetas: &[MatrixForm], sigma: &[usize], j: usize) -> Form {
    let a = trace_word(thetas, sigma);
    let b = trace_word(thetas, &swap_values(sigma, j));
    let s = a.add(&b);
    if j.is_multiple_of(2) { s } else { s.neg() }
}

/// Labels ℓ-cells by `d(u^{ℓ+1} tr(θ̃_ν))`, (ℓ+1)-cells by the alternating
/// sum, everything else by zero.
pub fn b_nu_labeling(data: &SimplexConnectionData, nu: &[usize]) -> DKLabeling {
    let l = nu.len() - 1;
    let gens = data.generators();
    let ut = UTau::new(l as u32 + 1, 0);
    let labels = Subcell::all(data.len())
        .into_par_iter()
        .map(|c| {
            let tilde = restrict_to_subcell(data, &c).thetas;
            let f = if c.dim() == l {
                trace_word(&tilde, nu).d().shift(ut)
            } else if c.dim() == l + 1 {
                b_coboundary(&tilde, nu).shift(ut)
            } else {
                Form::zero(gens)
            };
            (c, f)
        })
        .collect();
    DKLabeling { n: data.len(), labels }
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

/// Coefficient of `τ^{ℓ+1} b_ν` in `b`, summed over all `(σ, k)` with
/// `σ^{(k-1)}_{j(σ,k)} = ν`, `σ ∈ S_{ℓ+1}`.
pub fn arrow_coefficients(l: usize) -> BTreeMap<Vec<usize>, Q> {
    let big = l + 1;
    let f = factorial(big);
    let outer = if big.is_multiple_of(2) { 1 } else { -1 };
    let mut out: BTreeMap<Vec<usize>, Q> = BTreeMap::new();
    for s in permutations(big) {
        for (prev, j) in transposition_path(&s).steps {
            let c = outer * sign(&prev) * if j % 2 == 1 { 1 } else { -1 };
            let e = out.entry(sigma_j_map(&prev, j)).or_default();
            *e = &*e + &q(c, f * f);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn combined_word(thetas: &[MatrixForm], coeffs: &BTreeMap<Vec<usize>, Q>) -> Form {
    let gens = thetas[0].generators();
    let mut out = Form::zero(gens);
    for (nu, c) in coeffs {
        if nu.len() > gens.len() {
            continue;
        }
        out = out.add(&trace_word(thetas, nu).scale(c));
    }
    out
}

/// `b` evaluated on one cell.
pub fn arrow_correction_eval(
    data: &SimplexConnectionData,
    c: &Subcell,
    coeffs: &[BTreeMap<Vec<usize>, Q>],
) -> Form {
    let m = c.dim();
    let mut out = Form::zero(data.generators());
    if m == 0 {
        return out;
    }
    let tilde = restrict_to_subcell(data, c).thetas;
    let room = data.generators().len();
    if let Some(cm) = coeffs.get(m).filter(|_| m + 2 <= room) {
        let w = combined_word(&tilde, cm).d();
        out = out.add(&w.shift(UTau::new(m as u32 + 1, m as u32 + 1)));
    }
    if m >= 2 && m <= room {
        let cm = &coeffs[m - 1];
        let w = coboundary_with(&tilde, |phi| combined_word(phi, cm));
        out = out.add(&w.shift(UTau::new(m as u32, m as u32)));
    }
    out
}

/// `b` on every cell of the chain.
pub fn arrow_correction(data: &SimplexConnectionData) -> DKLabeling {
    let n = data.len();
    let coeffs: Vec<BTreeMap<Vec<usize>, Q>> = (0..=n)
        .map(|l| if l == 0 { BTreeMap::new() } else { arrow_coefficients(l) })
        .collect();
    let labels = Subcell::all(n)
        .into_par_iter()
        .map(|c| {
            let f = arrow_correction_eval(data, &c, &coeffs);
            (c, f)
        })
        .collect();
    DKLabeling { n, labels }
}

/// `Ch↘` on one cell.
pub fn ch_arrow_eval_data(data: &SimplexConnectionData, c: &Subcell) -> Result<Form> {
    let coeffs: Vec<BTreeMap<Vec<usize>, Q>> = (0..=c.dim())
        .map(|l| if l == 0 { BTreeMap::new() } else { arrow_coefficients(l) })
        .collect();
    let ch = crate::chern::ch_delta_eval_data(data, c)?;
    Ok(ch.add(&arrow_correction_eval(data, c, &coeffs)))
}

pub fn ch_arrow_labeling_data(data: &SimplexConnectionData) -> Result<DKLabeling> {
    Ok(ch_labeling_data(data)?.add(&arrow_correction(data)))
}

pub fn ch_arrow_labeling(e: &NerveElement) -> Result<DKLabeling> {
    ch_arrow_labeling_data(&SimplexConnectionData::new(e)?)
}

/// Expected lowest term of `Ch↘` on an ℓ-cell for flat transferred
/// connections: `(-1)^ℓ (-1)^{ℓ(ℓ-1)/2} u^ℓ τ^ℓ / ℓ! · tr(θ̃_ℓ ⋯ θ̃_1)`,
/// the first sign being the cell orientation.
pub fn arrow_lowest_term(data: &SimplexConnectionData, c: &Subcell) -> Form {
    let l = c.dim();
    let tilde = restrict_to_subcell(data, c).thetas;
    let rev: Vec<usize> = (1..=l).rev().collect();
    let s = if l.is_multiple_of(2) { 1 } else { -1 } * sign(&rev);
    trace_word(&tilde, &rev)
        .scale(&q(s, factorial(l)))
        .shift(UTau::new(l as u32, l as u32))
}
