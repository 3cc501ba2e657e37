//! Čech cochains on a finite cover, the totalized Chern cocycles and the
//! checks run on them.
//!
//! Every intersection `U_I` is written in the coordinates of one member
//! chart, its *ambient* chart; data living on a smaller intersection is moved
//! there with the user supplied restriction maps. A transition `g_{ab}` maps
//! the trivialization of chart `b` to that of chart `a`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chern::ch_delta_eval_data;
use crate::connect::{covariant_derivative, transferred_connection, NerveElement, SimplexConnectionData};
use crate::error::{Error, Result};
use crate::forms::{Form, GeneratorSet, MatrixForm};
use crate::scalar::{q, CoordMap, Symbol, UTau, Q};
use crate::simplex::Subcell;
use crate::unsym::ch_arrow_eval_data;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Smooth,
    Holomorphic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Standard,
    Arrow,
}

/// A coordinate chart. `conj` lists antiholomorphic coordinates; they get
/// generators in smooth mode only.
#[derive(Clone, Debug)]
pub struct Chart {
    pub name: String,
    pub coords: Vec<Symbol>,
    pub conj: Vec<Symbol>,
    gens: Arc<GeneratorSet>,
    all_gens: Arc<GeneratorSet>,
}

impl Chart {
    pub fn new(name: &str, coords: Vec<Symbol>, conj: Vec<Symbol>, mode: Mode) -> Result<Chart> {
        let mut all = coords.clone();
        all.extend(conj.iter().cloned());
        let all_gens = GeneratorSet::from_coords(&all)?;
        let gens = match mode {
            Mode::Smooth => all_gens.clone(),
            Mode::Holomorphic => GeneratorSet::from_coords(&coords)?,
        };
        Ok(Chart { name: name.to_string(), coords, conj, gens, all_gens })
    }

    pub fn generators(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    /// Generators for every declared coordinate, holomorphic or not.
    pub fn all_generators(&self) -> &Arc<GeneratorSet> {
        &self.all_gens
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        let mut s = self.coords.clone();
        s.extend(self.conj.iter().cloned());
        s
    }
}

/// Ambient chart of an intersection and, for the other members, maps from
/// their coordinates to ambient expressions.
#[derive(Clone, Debug)]
pub struct Intersection {
    pub ambient: usize,
    pub restrictions: BTreeMap<usize, CoordMap>,
}

#[derive(Clone, Debug)]
pub struct CoverModel {
    mode: Mode,
    charts: Vec<Chart>,
    intersections: BTreeMap<Vec<usize>, Intersection>,
    rank: usize,
    transitions: BTreeMap<(usize, usize), MatrixForm>,
    families: BTreeMap<String, Vec<MatrixForm>>,
}

fn fmt_index(i: &[usize]) -> String {
    i.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",")
}

/// All strictly increasing sublists of `v` with one entry removed.
fn faces(v: &[usize]) -> Vec<Vec<usize>> {
    (0..v.len())
        .map(|j| {
            let mut w = v.to_vec();
            w.remove(j);
            w
        })
        .collect()
}

impl CoverModel {
    pub fn new(mode: Mode, charts: Vec<Chart>, rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidArgument("rank must be positive".into()));
        }
        for (i, c) in charts.iter().enumerate() {
            if charts[..i].iter().any(|d| d.name == c.name) {
                return Err(Error::Manifest(format!("duplicate chart `{}`", c.name)));
            }
        }
        Ok(CoverModel {
            mode,
            charts,
            intersections: BTreeMap::new(),
            rank,
            transitions: BTreeMap::new(),
            families: BTreeMap::new(),
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    pub fn chart_index(&self, name: &str) -> Option<usize> {
        self.charts.iter().position(|c| c.name == name)
    }

    pub fn family_names(&self) -> impl Iterator<Item = &String> {
        self.families.keys()
    }

    pub fn has_family(&self, name: &str) -> bool {
        self.families.contains_key(name)
    }

    pub fn add_intersection(
        &mut self,
        index: Vec<usize>,
        ambient: usize,
        restrictions: BTreeMap<usize, CoordMap>,
    ) -> Result<()> {
        let name = fmt_index(&index);
        if index.len() < 2 || index.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Manifest(format!("intersection [{}] is not strictly increasing", name)));
        }
        if index.iter().any(|&i| i >= self.charts.len()) {
            return Err(Error::Manifest(format!("intersection [{}] names an unknown chart", name)));
        }
        if !index.contains(&ambient) {
            return Err(Error::Manifest(format!("ambient chart of [{}] is not a member", name)));
        }
        if let Some(k) = restrictions.keys().find(|k| !index.contains(k)) {
            return Err(Error::Manifest(format!("restriction for chart {} on [{}]", k, name)));
        }
        self.intersections.insert(index, Intersection { ambient, restrictions });
        Ok(())
    }

    /// `g_{ij}`, given on `U_{ij}` in its ambient coordinates.
    pub fn set_transition(&mut self, i: usize, j: usize, g: MatrixForm) -> Result<()> {
        if i == j {
            return Err(Error::Manifest(format!("transition {},{} is always the identity", i, j)));
        }
        let key = if i < j { vec![i, j] } else { vec![j, i] };
        let gens = self.generators(&key)?;
        if g.rank() != self.rank {
            return Err(Error::Rank(self.rank, g.rank()));
        }
        if **g.generators() != *gens {
            return Err(Error::GeneratorMismatch);
        }
        g.functions()?;
        self.transitions.insert((i, j), g);
        Ok(())
    }

    /// Local connection matrices `A_i`, one per chart in its own coordinates.
    pub fn add_family(&mut self, name: &str, a: Vec<MatrixForm>) -> Result<()> {
        if a.len() != self.charts.len() {
            return Err(Error::Manifest(format!(
                "family `{}` has {} matrices for {} charts",
                name,
                a.len(),
                self.charts.len()
            )));
        }
        for (i, m) in a.iter().enumerate() {
            if m.rank() != self.rank {
                return Err(Error::Rank(self.rank, m.rank()));
            }
            if **m.generators() != **self.charts[i].generators() {
                return Err(Error::GeneratorMismatch);
            }
            m.clone().expect_degree(1)?;
        }
        self.families.insert(name.to_string(), a);
        Ok(())
    }

    /// Checks faces, restrictions, invertibility, holomorphy and the cocycle
    /// condition; fills in the missing directions of the transitions.
    pub fn validate(&mut self) -> Result<()> {
        for (idx, x) in self.intersections.iter() {
            for f in faces(idx) {
                if f.len() >= 2 && !self.intersections.contains_key(&f) {
                    return Err(Error::MissingRestriction(format!(
                        "[{}] is listed but its face [{}] is not",
                        fmt_index(idx),
                        fmt_index(&f)
                    )));
                }
            }
            let amb = &self.charts[x.ambient];
            for &c in idx.iter() {
                if c == x.ambient {
                    continue;
                }
                let map = x.restrictions.get(&c).ok_or_else(|| {
                    Error::MissingRestriction(format!("chart {} on [{}]", c, fmt_index(idx)))
                })?;
                let needed = self.charts[c].symbols();
                if let Some(s) = needed.iter().find(|s| !map.contains_key(s)) {
                    return Err(Error::MissingRestriction(format!(
                        "coordinate `{}` of chart {} on [{}]",
                        s,
                        c,
                        fmt_index(idx)
                    )));
                }
                if self.mode == Mode::Holomorphic {
                    for s in self.charts[c].coords.iter() {
                        if amb.conj.iter().any(|z| map[s].contains_var(z)) {
                            return Err(Error::Holomorphic(format!(
                                "restriction of `{}` on [{}] is not holomorphic",
                                s,
                                fmt_index(idx)
                            )));
                        }
                    }
                }
            }
        }
        let pairs: Vec<Vec<usize>> = self.intersections.keys().filter(|k| k.len() == 2).cloned().collect();
        for p in pairs.iter() {
            let (i, j) = (p[0], p[1]);
            match (self.transitions.get(&(i, j)).cloned(), self.transitions.get(&(j, i)).cloned()) {
                (None, None) => {
                    return Err(Error::Manifest(format!("no transition for [{}]", fmt_index(p))));
                }
                (Some(g), None) => {
                    let inv = g.inverse().map_err(|_| Error::Singular)?;
                    self.transitions.insert((j, i), inv);
                }
                (None, Some(g)) => {
                    let inv = g.inverse().map_err(|_| Error::Singular)?;
                    self.transitions.insert((i, j), inv);
                }
                (Some(a), Some(b)) => {
                    if !a.mul(&b).sub(&MatrixForm::identity(self.rank, a.generators())).is_zero() {
                        return Err(Error::CocycleCondition(format!(
                            "g_{{{i}{j}}} g_{{{j}{i}}} is not the identity"
                        )));
                    }
                }
            }
        }
        if let Some((i, j)) = self.transitions.keys().find(|(i, j)| {
            let k = if i < j { vec![*i, *j] } else { vec![*j, *i] };
            !self.intersections.contains_key(&k)
        }) {
            return Err(Error::Manifest(format!("transition {},{} without an intersection", i, j)));
        }
        if self.mode == Mode::Holomorphic {
            self.check_holomorphic()?;
        }
        let triples: Vec<Vec<usize>> = self.intersections.keys().filter(|k| k.len() == 3).cloned().collect();
        for t in triples.iter() {
            let (i, j, k) = (t[0], t[1], t[2]);
            let lhs = self.transition(i, j, t)?.mul(&self.transition(j, k, t)?);
            if lhs != self.transition(i, k, t)? {
                return Err(Error::CocycleCondition(format!("[{}]", fmt_index(t))));
            }
        }
        Ok(())
    }

    fn check_holomorphic(&self) -> Result<()> {
        let bad = |m: &MatrixForm, conj: &[Symbol]| m.entries().iter().any(|e| conj.iter().any(|z| e.contains_var(z)));
        for ((i, j), g) in self.transitions.iter() {
            let k = if i < j { vec![*i, *j] } else { vec![*j, *i] };
            let amb = &self.charts[self.intersections[&k].ambient];
            if bad(g, &amb.conj) {
                return Err(Error::Holomorphic(format!("transition {},{} depends on a conjugate coordinate", i, j)));
            }
        }
        for (name, fam) in self.families.iter() {
            for (i, a) in fam.iter().enumerate() {
                if bad(a, &self.charts[i].conj) {
                    return Err(Error::Holomorphic(format!("connection `{}` on chart {}", name, i)));
                }
            }
        }
        Ok(())
    }

    /// Whether `U_I` is part of the model (single charts always are).
    pub fn contains(&self, index: &[usize]) -> bool {
        match index.len() {
            0 => false,
            1 => index[0] < self.charts.len(),
            _ => self.intersections.contains_key(index),
        }
    }

    pub fn ambient(&self, index: &[usize]) -> Result<usize> {
        match index.len() {
            1 if index[0] < self.charts.len() => Ok(index[0]),
            _ => self
                .intersections
                .get(index)
                .map(|x| x.ambient)
                .ok_or_else(|| Error::MissingRestriction(format!("no intersection [{}]", fmt_index(index)))),
        }
    }

    pub fn generators(&self, index: &[usize]) -> Result<Arc<GeneratorSet>> {
        Ok(self.charts[self.ambient(index)?].generators().clone())
    }

    /// Multi-indices of Čech degree `n` present in the model.
    pub fn multi_indices(&self, n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return (0..self.charts.len()).map(|i| vec![i]).collect();
        }
        self.intersections.keys().filter(|k| k.len() == n + 1).cloned().collect()
    }

    /// Largest Čech degree with a nonempty intersection.
    pub fn max_degree(&self) -> usize {
        self.intersections.keys().map(|k| k.len() - 1).max().unwrap_or(0)
    }

    /// Moves a form from `U_from` to the smaller open set `U_to`.
    pub fn restrict(&self, w: &Form, from: &[usize], to: &[usize]) -> Result<Form> {
        let a = self.ambient(from)?;
        let b = self.ambient(to)?;
        let target = self.charts[b].generators();
        if a == b {
            return w.with_generators(target);
        }
        let map = self
            .intersections
            .get(to)
            .and_then(|x| x.restrictions.get(&a))
            .ok_or_else(|| Error::MissingRestriction(format!("chart {} on [{}]", a, fmt_index(to))))?;
        w.pullback(map, target)
    }

    pub fn restrict_matrix(&self, m: &MatrixForm, from: &[usize], to: &[usize]) -> Result<MatrixForm> {
        let gens = self.generators(to)?;
        m.try_map(&gens, |e| self.restrict(e, from, to))
    }

    /// `g_{ab}` on `U_I`, for `a, b ∈ I`.
    pub fn transition(&self, a: usize, b: usize, index: &[usize]) -> Result<MatrixForm> {
        if a == b {
            return Ok(MatrixForm::identity(self.rank, &self.generators(index)?));
        }
        let g = self
            .transitions
            .get(&(a, b))
            .ok_or_else(|| Error::Manifest(format!("no transition {},{}", a, b)))?;
        let pair = if a < b { vec![a, b] } else { vec![b, a] };
        self.restrict_matrix(g, &pair, index)
    }

    /// `A_i` of a family on `U_I`.
    pub fn connection(&self, family: &str, i: usize, index: &[usize]) -> Result<MatrixForm> {
        let fam = self.families.get(family).ok_or_else(|| Error::UnknownFamily(family.to_string()))?;
        self.restrict_matrix(&fam[i], &[i], index)
    }

    /// `(E_{i_0}, A_{i_0}) → … → (E_{i_n}, A_{i_n})` with `f_j = g_{i_j i_{j-1}}`.
    pub fn nerve_element(&self, family: &str, index: &[usize]) -> Result<NerveElement> {
        let a = index
            .iter()
            .map(|&i| self.connection(family, i, index))
            .collect::<Result<Vec<_>>>()?;
        let f = index
            .windows(2)
            .map(|w| self.transition(w[1], w[0], index))
            .collect::<Result<Vec<_>>>()?;
        NerveElement::new(a, f)
    }
}

/// Forms indexed by strictly increasing multi-indices of Čech degree `≤ depth`.
#[derive(Clone, Debug, PartialEq)]
pub struct CechCochain {
    pub depth: usize,
    pub entries: BTreeMap<Vec<usize>, Form>,
}

impl CechCochain {
    pub fn get(&self, index: &[usize]) -> Option<&Form> {
        self.entries.get(index)
    }

    /// Sets `u = 1` everywhere.
    pub fn strip_u(&self) -> CechCochain {
        self.map(|f| f.strip_u())
    }

    pub fn map(&self, f: impl Fn(&Form) -> Form) -> CechCochain {
        CechCochain { depth: self.depth, entries: self.entries.iter().map(|(k, v)| (k.clone(), f(v))).collect() }
    }

    pub fn sub(&self, o: &CechCochain) -> Result<CechCochain> {
        let mut entries = self.entries.clone();
        for (k, v) in o.entries.iter() {
            let e = match entries.get(k) {
                Some(w) => w.sub(v),
                None => v.neg(),
            };
            entries.insert(k.clone(), e);
        }
        Ok(CechCochain { depth: self.depth.max(o.depth), entries })
    }

    /// First multi-index, by degree then lexicographically, with a nonzero entry.
    pub fn first_nonzero(&self) -> Option<Vec<usize>> {
        let mut keys: Vec<&Vec<usize>> = self.entries.iter().filter(|(_, v)| !v.is_zero()).map(|(k, _)| k).collect();
        keys.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        keys.first().map(|k| (*k).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(|v| v.is_zero())
    }

    /// Every entry of Čech degree `n` has form degree `≥ n`.
    pub fn staircase(&self) -> bool {
        self.entries
            .iter()
            .all(|(k, v)| v.min_degree().map(|d| d as usize >= k.len() - 1).unwrap_or(true))
    }

    /// Only Čech degree 0 carries nonzero entries.
    pub fn concentrated_in_degree_zero(&self) -> bool {
        self.entries.iter().all(|(k, v)| k.len() == 1 || v.is_zero())
    }
}

fn alternating(n: usize) -> Q {
    if n.is_multiple_of(2) { Q::one() } else { -Q::one() }
}

/// Sign attached to the Čech degree `n` part of the exported cocycle,
/// `(-1)^{n(n-1)/2}`; it turns the simplicial chain-map law into
/// closedness for `δ + (-1)^n d`.
pub fn export_sign(n: usize) -> Q {
    alternating(n * n.saturating_sub(1) / 2)
}

/// `(-1)^{n(n+1)/2}`, the matching sign for odd cochains.
pub fn primitive_sign(n: usize) -> Q {
    alternating(n * (n + 1) / 2)
}

/// `(δc)_{i_0…i_{m}} = Σ_j (-1)^j c_{…î_j…}|`, for every multi-index of
/// degree `1..=depth+1` in the model.
pub fn cech_delta(model: &CoverModel, c: &CechCochain) -> Result<CechCochain> {
    let mut idx = Vec::new();
    for m in 1..=c.depth + 1 {
        idx.extend(model.multi_indices(m));
    }
    let entries = idx
        .par_iter()
        .map(|i| delta_entry(model, c, i).map(|f| (i.clone(), f)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(CechCochain { depth: c.depth + 1, entries })
}

fn delta_entry(model: &CoverModel, c: &CechCochain, index: &[usize]) -> Result<Form> {
    let mut out = Form::zero(&model.generators(index)?);
    for (j, face) in faces(index).iter().enumerate() {
        if let Some(w) = c.get(face) {
            let r = model.restrict(w, face, index)?;
            out = if j % 2 == 0 { out.add(&r) } else { out.sub(&r) };
        }
    }
    Ok(out)
}

/// `δ + (-1)^n d` on the degrees `0..=depth` of `c`; `d` is `∂` in
/// holomorphic mode because only holomorphic generators exist there.
pub fn total_diff(model: &CoverModel, c: &CechCochain) -> Result<CechCochain> {
    let mut idx = Vec::new();
    for m in 0..=c.depth {
        idx.extend(model.multi_indices(m));
    }
    let entries = idx
        .par_iter()
        .map(|i| {
            let n = i.len() - 1;
            let mut f = if n > 0 { delta_entry(model, c, i)? } else { Form::zero(&model.generators(i)?) };
            if let Some(w) = c.get(i) {
                let dw = w.d();
                f = if n % 2 == 0 { f.add(&dw) } else { f.sub(&dw) };
            }
            Ok((i.clone(), f))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(CechCochain { depth: c.depth, entries })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedReport {
    pub closed: bool,
    pub first_violation: Option<Vec<usize>>,
}

pub fn check_closed(model: &CoverModel, c: &CechCochain) -> Result<ClosedReport> {
    let first_violation = total_diff(model, c)?.first_nonzero();
    Ok(ClosedReport { closed: first_violation.is_none(), first_violation })
}

/// Label of the top cell of a chain given by its transferred connections.
pub fn top_label(data: &SimplexConnectionData, variant: Variant) -> Result<Form> {
    let top = Subcell::full(data.len());
    match variant {
        Variant::Standard => ch_delta_eval_data(data, &top),
        Variant::Arrow => ch_arrow_eval_data(data, &top),
    }
}

/// A totalized Chern cocycle, `u` kept.
#[derive(Clone, Debug, PartialEq)]
pub struct Cocycle {
    pub variant: Variant,
    pub family: String,
    pub graded: CechCochain,
}

impl Cocycle {
    /// The even form obtained by setting `u = 1`.
    pub fn exported(&self) -> CechCochain {
        self.graded.strip_u()
    }
}

fn indices_up_to(model: &CoverModel, depth: usize) -> Vec<Vec<usize>> {
    (0..=depth).flat_map(|m| model.multi_indices(m)).collect()
}

pub fn assemble_cocycle(model: &CoverModel, family: &str, variant: Variant, depth: usize) -> Result<Cocycle> {
    if !model.has_family(family) {
        return Err(Error::UnknownFamily(family.to_string()));
    }
    let entries = indices_up_to(model, depth)
        .par_iter()
        .map(|i| {
            let e = model.nerve_element(family, i)?;
            let data = SimplexConnectionData::new(&e)?;
            let n = i.len() - 1;
            Ok((i.clone(), top_label(&data, variant)?.scale(&export_sign(n))))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(Cocycle { variant, family: family.to_string(), graded: CechCochain { depth, entries } })
}

/// Odd cochain `β` with `(δ ± d)β = α₁ - α₀`, together with both cocycles.
#[derive(Clone, Debug)]
pub struct Transgression {
    pub alpha0: Cocycle,
    pub alpha1: Cocycle,
    pub beta: CechCochain,
    /// First multi-index where `(δ ± d)β ≠ α₁ - α₀`.
    pub defect: Option<Vec<usize>>,
}

/// Vertex lists of the shuffle simplices of `Δ^n × [0,1]`: the `k`-th one is
/// `(0,0) … (k,0) (k,1) … (n,1)`.
pub fn prism_simplices(n: usize) -> Vec<Vec<(usize, usize)>> {
    (0..=n)
        .map(|k| {
            let mut v: Vec<(usize, usize)> = (0..=k).map(|j| (j, 0)).collect();
            v.extend((k..=n).map(|j| (j, 1)));
            v
        })
        .collect()
}

pub fn transgression_primitive(
    model: &CoverModel,
    family0: &str,
    family1: &str,
    variant: Variant,
    depth: usize,
) -> Result<Transgression> {
    let alpha0 = assemble_cocycle(model, family0, variant, depth)?;
    let alpha1 = assemble_cocycle(model, family1, variant, depth)?;
    let entries = indices_up_to(model, depth)
        .par_iter()
        .map(|i| {
            let n = i.len() - 1;
            let t: Vec<Vec<MatrixForm>> = [family0, family1]
                .iter()
                .map(|f| {
                    let e = model.nerve_element(f, i)?;
                    (0..=n).map(|j| transferred_connection(&e, j)).collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?;
            let mut b = Form::zero(&model.generators(i)?);
            for (k, verts) in prism_simplices(n).iter().enumerate() {
                let conns = verts.iter().map(|&(j, s)| t[s][j].clone()).collect();
                let l = top_label(&SimplexConnectionData::from_transferred(conns), variant)?;
                b = if k % 2 == 0 { b.add(&l) } else { b.sub(&l) };
            }
            Ok((i.clone(), b.scale(&primitive_sign(n))))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    let beta = CechCochain { depth, entries };
    let lhs = total_diff(model, &beta)?;
    let rhs = alpha1.graded.sub(&alpha0.graded)?;
    let defect = lhs.sub(&rhs)?.first_nonzero();
    Ok(Transgression { alpha0, alpha1, beta, defect })
}

/// Diagonal of a holomorphic `Ch↘` cocycle against the closed formula.
#[derive(Clone, Debug)]
pub struct AtiyahReport {
    /// `u^n`-coefficient on Čech degree `n`, `τ` kept.
    pub diagonal: CechCochain,
    pub expected: CechCochain,
    pub mismatch: Option<Vec<usize>>,
}

/// `(-1)^n τ^n / n! · tr(g_{i_0 i_n} ∇(g_{i_n i_{n-1}}) ⋯ ∇(g_{i_1 i_0}))`.
pub fn atiyah_expected(model: &CoverModel, family: &str, index: &[usize]) -> Result<Form> {
    let n = index.len() - 1;
    let gens = model.generators(index)?;
    let mut p = model.transition(index[0], index[n], index)?;
    for j in (1..=n).rev() {
        let g = model.transition(index[j], index[j - 1], index)?;
        let a_src = model.connection(family, index[j - 1], index)?;
        let a_dst = model.connection(family, index[j], index)?;
        p = p.mul(&covariant_derivative(&g, &a_src, &a_dst));
    }
    let fact: i64 = (1..=n as i64).product();
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    let tr = p.trace().with_generators(&gens)?;
    Ok(tr.scale(&q(sign, fact)).shift(UTau::new(0, n as u32)))
}

pub fn atiyah_lowest(model: &CoverModel, c: &Cocycle) -> Result<AtiyahReport> {
    if model.mode() != Mode::Holomorphic || c.variant != Variant::Arrow {
        return Err(Error::InvalidArgument(
            "the Atiyah diagonal needs an arrow cocycle in holomorphic mode".into(),
        ));
    }
    let diagonal = CechCochain {
        depth: c.graded.depth,
        entries: c
            .graded
            .entries
            .iter()
            .map(|(k, f)| (k.clone(), f.u_part(k.len() as u32 - 1)))
            .collect(),
    };
    let expected = CechCochain {
        depth: c.graded.depth,
        entries: c
            .graded
            .entries
            .keys()
            .map(|k| atiyah_expected(model, &c.family, k).map(|f| (k.clone(), f)))
            .collect::<Result<_>>()?,
    };
    let mismatch = diagonal.sub(&expected)?.first_nonzero();
    Ok(AtiyahReport { diagonal, expected, mismatch })
}
