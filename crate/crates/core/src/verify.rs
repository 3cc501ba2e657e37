//! Randomized identity suite behind `chern verify`.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::cech::{assemble_cocycle, check_closed, Variant};
use crate::chern::{
    ch_labeling_data, ch_u, edge_chern_simons, lowest_term_symmetrized, permutations, DKLabeling,
};
use crate::connect::{
    curvature_direct, curvature_formula, maurer_cartan, restrict_to_subcell, simplex_connection_from,
    SimplexConnectionData,
};
use crate::error::{Error, Result};
use crate::forms::MatrixForm;
use crate::random::RandomData;
use crate::scalar::UTau;
use crate::simplex::{subcell_substitution, Subcell};
use crate::unsym::{arrow_lowest_term, b_coboundary, ch_arrow_labeling_data, sigma_j_map, swapped_pair};

pub const MAX_RANK: usize = 3;
pub const MAX_DEPTH: usize = 4;
pub const MAX_CHARTS: usize = 5;

/// Base coordinates of the generated data.
pub const COORDS: [&str; 3] = ["x", "y", "z"];

/// Polynomial degree of the generated entries: 2 while `rank·n ≤ 6`, then 1,
/// which keeps the largest bounds within seconds.
pub fn data_degree(rank: usize, n: usize) -> u32 {
    if rank * n <= 6 { 2 } else { 1 }
}

pub type CurvatureFn = fn(&SimplexConnectionData) -> Result<MatrixForm>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub rank: usize,
    pub charts: usize,
    pub depth: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 1, rank: 2, charts: 3, depth: 2 }
    }
}

impl VerifyConfig {
    pub fn check_bounds(&self) -> Result<()> {
        if self.rank == 0 || self.rank > MAX_RANK {
            return Err(Error::InvalidArgument(format!("rank must be in 1..={}", MAX_RANK)));
        }
        if self.depth == 0 || self.depth > MAX_DEPTH {
            return Err(Error::InvalidArgument(format!("depth must be in 1..={}", MAX_DEPTH)));
        }
        if self.charts == 0 || self.charts > MAX_CHARTS {
            return Err(Error::InvalidArgument(format!("charts must be in 1..={}", MAX_CHARTS)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub tool: String,
    pub version: String,
    #[serde(flatten)]
    pub config: VerifyConfig,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Default)]
struct Tally {
    order: Vec<String>,
    checks: BTreeMap<String, Check>,
}

impl Tally {
    fn record(&mut self, name: &str, ok: bool, what: impl FnOnce() -> String) {
        let c = self.checks.entry(name.to_string()).or_insert_with(|| {
            self.order.push(name.to_string());
            Check { name: name.to_string(), passed: true, cases: 0, failure: None }
        });
        c.cases += 1;
        if !ok && c.passed {
            c.passed = false;
            c.failure = Some(what());
        }
    }

    fn record_result(&mut self, name: &str, r: Result<bool>, what: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.record(name, ok, what),
            Err(e) => {
                let msg = format!("{}: {}", what(), e);
                self.record(name, false, || msg)
            }
        }
    }

    fn finish(mut self) -> Vec<Check> {
        self.order.iter().map(|n| self.checks.remove(n).unwrap()).collect()
    }
}

fn cell_name(c: &Subcell) -> String {
    let v: Vec<String> = c.vertices().iter().map(|i| i.to_string()).collect();
    format!("e_{{{}}} of Δ^{}", v.join(","), c.ambient())
}

pub fn run(cfg: &VerifyConfig) -> Result<VerifyReport> {
    run_with(cfg, curvature_formula)
}

/// Runs the suite with a replacement for the closed curvature formula.
pub fn run_with(cfg: &VerifyConfig, curvature: CurvatureFn) -> Result<VerifyReport> {
    cfg.check_bounds()?;
    let mut t = Tally::default();
    let mut rd = RandomData::new(cfg.seed, &COORDS);
    for n in 1..=cfg.depth {
        rd.max_degree = data_degree(cfg.rank, n);
        general_checks(&mut t, &mut rd, cfg.rank, n, curvature);
        flat_checks(&mut t, &mut rd, cfg.rank, n);
    }
    telescoping_checks(&mut t, &mut rd, cfg.rank, (cfg.depth + 1).min(4));
    cech_checks(&mut t, &mut rd, cfg);
    let checks = t.finish();
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        tool: "chern".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        config: *cfg,
        checks,
        passed,
    })
}

fn labeling_checks(t: &mut Tally, what: &str, lab: &Result<DKLabeling>, n: usize) {
    match lab {
        Ok(l) => {
            t.record(&format!("chain map ({})", what), l.check_chain_map().is_ok(), || {
                format!("n={}: d(label) != label(boundary) on {}", n, cell_name(&l.check_chain_map().unwrap_err()))
            });
            t.record("degree bound", l.check_degree_bound().is_ok(), || {
                format!("{} labeling, n={}: {}", what, n, cell_name(&l.check_degree_bound().unwrap_err()))
            });
            t.record("u truncation", l.check_u_truncation().is_ok(), || {
                format!("{} labeling, n={}: {}", what, n, cell_name(&l.check_u_truncation().unwrap_err()))
            });
        }
        Err(e) => t.record(&format!("chain map ({})", what), false, || format!("n={}: {}", n, e)),
    }
}

fn general_checks(t: &mut Tally, rd: &mut RandomData, rank: usize, n: usize, curvature: CurvatureFn) {
    let e = match rd.nerve_element(rank, n) {
        Ok(e) => e,
        Err(err) => return t.record("random data", false, || err.to_string()),
    };
    let data = match SimplexConnectionData::new(&e) {
        Ok(d) => d,
        Err(err) => return t.record("random data", false, || err.to_string()),
    };
    for j in 1..=n {
        let r = maurer_cartan(&e, j).map(|m| m == data.thetas[j - 1]);
        t.record_result("maurer-cartan", r, || format!("n={}, j={}", n, j));
    }
    let r = simplex_connection_from(&data)
        .and_then(|a| Ok(curvature_direct(&a) == curvature(&data)?));
    t.record_result("curvature formula", r, || format!("rank {}, n={}", rank, n));

    let cells: Vec<Subcell> = Subcell::all(n).into_iter().filter(|c| c.dim() >= 1 && c.dim() < n).collect();
    if let Some(c) = cells.choose(rd.rng()).cloned() {
        let r = (|| {
            let full = curvature(&data)?;
            let target = data.generators().with_simplex(c.dim());
            let pulled = full.pullback(&subcell_substitution(&c), &target)?;
            Ok(pulled == curvature(&restrict_to_subcell(&data, &c))?)
        })();
        t.record_result("restriction lemma", r, || cell_name(&c));
    }

    let a = e.connection(n);
    let rn = curvature_direct(a);
    let mut power = rn.clone();
    for k in 1..=3 {
        let ok = power.trace().d().is_zero();
        t.record("bianchi", ok, || format!("d tr(R^{}) != 0", k));
        power = power.mul(&rn);
    }
    t.record("chern character closed", ch_u(&rn).d().is_zero(), || format!("rank {}", rank));

    labeling_checks(t, "standard", &ch_labeling_data(&data), n);
    labeling_checks(t, "arrow", &ch_arrow_labeling_data(&data), n);
}

fn flat_checks(t: &mut Tally, rd: &mut RandomData, rank: usize, n: usize) {
    let data = match rd.flat_nerve_element(rank, n).and_then(|e| SimplexConnectionData::new(&e)) {
        Ok(d) => d,
        Err(err) => return t.record("random data", false, || err.to_string()),
    };
    let flat = data.curvatures.iter().all(|r| r.is_zero());
    t.record("flat data", flat, || format!("rank {}, n={}", rank, n));
    let (ch, arrow) = match (ch_labeling_data(&data), ch_arrow_labeling_data(&data)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return t.record("flat labelings", false, || e.to_string()),
    };
    for c in Subcell::all(n) {
        let l = c.dim();
        if l == 0 {
            continue;
        }
        let shift = UTau::new(l as u32, 0);
        let low = ch.label(&c).u_part(l as u32).shift(shift);
        t.record("symmetrized lowest term", low == lowest_term_symmetrized(&data, &c), || cell_name(&c));
        let alow = arrow.label(&c).u_part(l as u32).shift(shift);
        t.record("arrow lowest term", alow == arrow_lowest_term(&data, &c), || cell_name(&c));
        let diff = arrow.label(&c).sub(ch.label(&c));
        let support_ok = diff.u_powers().iter().all(|&p| p == l as u32 || p == l as u32 + 1);
        t.record("arrow correction support", support_ok, || cell_name(&c));
        if l == 1 {
            let cs = edge_chern_simons(&restrict_to_subcell(&data, &c).thetas[0]);
            t.record("edge chern-simons", cs == *ch.label(&c), || cell_name(&c));
        }
    }
}

/// The alternating sum of a collapsed word only sees the two swapped slots.
fn telescoping_checks(t: &mut Tally, rd: &mut RandomData, rank: usize, max_len: usize) {
    let mut wide = RandomData::new(rd.rng().gen(), &["a1", "a2", "a3", "a4", "a5"]);
    for m in 2..=max_len {
        let thetas: Vec<MatrixForm> = (0..m).map(|_| wide.constant_one_forms(rank)).collect();
        for s in permutations(m) {
            for j in 1..m {
                let lhs = b_coboundary(&thetas, &sigma_j_map(&s, j));
                let ok = lhs == swapped_pair(&thetas, &s, j);
                t.record("telescoping", ok, || format!("σ={:?}, j={}", s, j));
            }
        }
    }
}

fn cech_checks(t: &mut Tally, rd: &mut RandomData, cfg: &VerifyConfig) {
    let depth = cfg.depth.min(cfg.charts - 1);
    rd.max_degree = data_degree(cfg.rank, depth.max(1));
    let model = match rd.cover_model(cfg.charts, cfg.rank, depth) {
        Ok(m) => m,
        Err(err) => return t.record("cech closedness", false, || err.to_string()),
    };
    for (v, name) in [(Variant::Standard, "standard"), (Variant::Arrow, "arrow")] {
        let r = assemble_cocycle(&model, "random", v, depth).and_then(|c| check_closed(&model, &c.graded));
        match r {
            Ok(rep) => t.record("cech closedness", rep.closed, || {
                format!("{} cocycle, first violation at {:?}", name, rep.first_violation)
            }),
            Err(e) => t.record("cech closedness", false, || format!("{} cocycle: {}", name, e)),
        }
    }
}
