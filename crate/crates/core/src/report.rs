//! JSON reports written by the command line tool.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::cech::{
    assemble_cocycle, atiyah_lowest, check_closed, transgression_primitive, CechCochain, CoverModel, Mode,
    Variant,
};
use crate::error::{Error, Result};
use crate::forms::Form;

pub const TOOL: &str = "chern";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub monomial: Vec<String>,
    pub coeff: String,
}

/// `"i0,…,in" → "u^p" → terms`.
pub type CochainJson = BTreeMap<String, BTreeMap<String, Vec<Term>>>;

pub fn form_json(f: &Form) -> BTreeMap<String, Vec<Term>> {
    let mut out = BTreeMap::new();
    for p in f.u_powers() {
        let part = f.u_part(p);
        let mut wedges: Vec<u32> = part.terms().map(|(k, _)| k.wedge).collect::<BTreeSet<_>>().into_iter().collect();
        wedges.sort_by_key(|w| (w.count_ones(), *w));
        let terms = wedges
            .into_iter()
            .map(|w| Term { monomial: part.generators().names(w), coeff: part.coefficient(w).to_string() })
            .collect();
        out.insert(format!("u^{}", p), terms);
    }
    out
}

pub fn index_key(index: &[usize]) -> String {
    index.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

pub fn cochain_json(c: &CechCochain) -> CochainJson {
    c.entries.iter().map(|(k, f)| (index_key(k), form_json(f))).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct AtiyahSection {
    pub matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<String>,
    pub diagonal: CochainJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct CocycleReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub mode: Mode,
    pub variant: Variant,
    pub family: String,
    pub depth: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub closed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_violation: Option<String>,
    pub staircase: bool,
    pub concentrated_in_degree_zero: bool,
    pub cocycle: CochainJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub atiyah: Option<AtiyahSection>,
}

impl CocycleReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }
}

pub fn cocycle_report(
    model: &CoverModel,
    family: &str,
    variant: Variant,
    depth: usize,
    seed: Option<u64>,
) -> Result<CocycleReport> {
    let c = assemble_cocycle(model, family, variant, depth)?;
    let closed = check_closed(model, &c.graded)?;
    let atiyah = if model.mode() == Mode::Holomorphic && variant == Variant::Arrow {
        let a = atiyah_lowest(model, &c)?;
        Some(AtiyahSection {
            matches: a.mismatch.is_none(),
            mismatch: a.mismatch.as_deref().map(index_key),
            diagonal: cochain_json(&a.diagonal),
        })
    } else {
        None
    };
    Ok(CocycleReport {
        tool: TOOL,
        version: VERSION,
        mode: model.mode(),
        variant,
        family: family.to_string(),
        depth,
        seed,
        closed: closed.closed,
        first_violation: closed.first_violation.as_deref().map(index_key),
        staircase: c.graded.staircase(),
        concentrated_in_degree_zero: c.graded.concentrated_in_degree_zero(),
        cocycle: cochain_json(&c.graded),
        atiyah,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub mode: Mode,
    pub variant: Variant,
    pub family_a: String,
    pub family_b: String,
    pub depth: usize,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect: Option<String>,
    pub alpha_a: CochainJson,
    pub alpha_b: CochainJson,
    pub beta: CochainJson,
}

impl CompareReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }
}

/// Transgression from family `a` to family `b`, `(δ ± d)β = α_b - α_a`
/// checked after the fact.
pub fn compare_report(model: &CoverModel, a: &str, b: &str, depth: usize) -> Result<CompareReport> {
    for f in [a, b] {
        if !model.has_family(f) {
            return Err(Error::UnknownFamily(f.to_string()));
        }
    }
    let variant = Variant::Standard;
    let t = transgression_primitive(model, a, b, variant, depth)?;
    Ok(CompareReport {
        tool: TOOL,
        version: VERSION,
        mode: model.mode(),
        variant,
        family_a: a.to_string(),
        family_b: b.to_string(),
        depth,
        verified: t.defect.is_none(),
        defect: t.defect.as_deref().map(index_key),
        alpha_a: cochain_json(&t.alpha0.graded),
        alpha_b: cochain_json(&t.alpha1.graded),
        beta: cochain_json(&t.beta),
    })
}
