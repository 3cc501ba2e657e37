//! JSON manifests describing a cover, a bundle and connection families.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cech::{Chart, CoverModel, Mode};
use crate::error::{Error, Result};
use crate::forms::{Form, MatrixForm};
use crate::scalar::{parse_expr, CoordMap, RationalFunction, Symbol, UTau};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartSpec {
    pub name: String,
    pub coords: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub conj: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntersectionSpec {
    pub index: Vec<usize>,
    pub ambient: String,
    #[serde(default)]
    pub restrictions: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub mode: Mode,
    pub charts: Vec<ChartSpec>,
    #[serde(default)]
    pub intersections: Vec<IntersectionSpec>,
    pub rank: usize,
    #[serde(default)]
    pub transitions: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default)]
    pub connections: BTreeMap<String, BTreeMap<String, Vec<Vec<String>>>>,
    #[serde(default)]
    pub options: Options,
}

fn at(path: &str, e: Error) -> Error {
    match e {
        Error::CocycleCondition(_) | Error::Contract(_) => e,
        e => Error::Manifest(format!("{}: {}", path, e)),
    }
}

fn symbols(names: &[String], path: &str) -> Result<Vec<Symbol>> {
    names
        .iter()
        .map(|n| {
            let ok = n.chars().next().map(|c| c.is_ascii_alphabetic()).unwrap_or(false)
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::Manifest(format!("{}: `{}` is not an identifier", path, n)));
            }
            if n == "u" || n == "tau" {
                return Err(Error::Manifest(format!("{}: `{}` is reserved", path, n)));
            }
            Ok(Symbol::new(n))
        })
        .collect()
}

fn function(text: &str, syms: &[Symbol], path: &str) -> Result<RationalFunction> {
    let e = parse_expr(text, syms).map_err(|e| at(path, e))?;
    e.as_rational_function()
        .ok_or_else(|| Error::Manifest(format!("{}: `u` and `tau` are not allowed here", path)))
}

fn square<'a>(rows: &'a [Vec<String>], rank: usize, path: &str) -> Result<Vec<(String, &'a String)>> {
    if rows.len() != rank || rows.iter().any(|r| r.len() != rank) {
        return Err(Error::Manifest(format!("{}: expected a {}x{} matrix", path, rank, rank)));
    }
    Ok(rows
        .iter()
        .enumerate()
        .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, e)| (format!("{}[{}][{}]", path, i, j), e)))
        .collect())
}

impl Manifest {
    pub fn from_json(text: &str) -> Result<Manifest> {
        serde_json::from_str(text).map_err(|e| Error::Manifest(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Builds and validates the cover model.
    pub fn build(&self) -> Result<CoverModel> {
        let mut charts = Vec::new();
        for (k, c) in self.charts.iter().enumerate() {
            let path = format!("charts[{}]", k);
            let coords = symbols(&c.coords, &path)?;
            let conj = symbols(&c.conj, &path)?;
            charts.push(Chart::new(&c.name, coords, conj, self.mode).map_err(|e| at(&path, e))?);
        }
        let mut model = CoverModel::new(self.mode, charts, self.rank)?;
        let chart = |name: &str, path: &str| {
            model
                .chart_index(name)
                .ok_or_else(|| Error::Manifest(format!("{}: unknown chart `{}`", path, name)))
        };
        let mut pending = Vec::new();
        for (k, x) in self.intersections.iter().enumerate() {
            let path = format!("intersections[{}]", k);
            let amb = chart(&x.ambient, &path)?;
            let amb_syms = model.charts()[amb].symbols();
            let mut restrictions = BTreeMap::new();
            for (name, map) in x.restrictions.iter() {
                let c = chart(name, &path)?;
                let own = model.charts()[c].symbols();
                let mut m = CoordMap::new();
                for (s, text) in map.iter() {
                    let p = format!("{}.restrictions.{}.{}", path, name, s);
                    let sym = own
                        .iter()
                        .find(|o| o.as_str() == s)
                        .ok_or_else(|| Error::Manifest(format!("{}: `{}` is not a coordinate of `{}`", p, s, name)))?;
                    m.insert(*sym, function(text, &amb_syms, &p)?);
                }
                restrictions.insert(c, m);
            }
            pending.push((x.index.clone(), amb, restrictions, path));
        }
        for (index, amb, r, path) in pending {
            model.add_intersection(index, amb, r).map_err(|e| at(&path, e))?;
        }
        for (key, rows) in self.transitions.iter() {
            let path = format!("transitions[\"{}\"]", key);
            let ij: Vec<usize> = key
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Manifest(format!("{}: key must be `i,j`", path)))?;
            if ij.len() != 2 {
                return Err(Error::Manifest(format!("{}: key must be `i,j`", path)));
            }
            let pair = if ij[0] < ij[1] { vec![ij[0], ij[1]] } else { vec![ij[1], ij[0]] };
            let amb = model.ambient(&pair).map_err(|e| at(&path, e))?;
            let syms = model.charts()[amb].symbols();
            let gens = model.charts()[amb].generators().clone();
            let entries = square(rows, self.rank, &path)?
                .into_iter()
                .map(|(p, t)| function(t, &syms, &p))
                .collect::<Result<Vec<_>>>()?;
            let g = MatrixForm::from_functions(self.rank, &gens, entries)?;
            model.set_transition(ij[0], ij[1], g).map_err(|e| at(&path, e))?;
        }
        for (fname, per_chart) in self.connections.iter() {
            let path = format!("connections.{}", fname);
            if let Some(extra) = per_chart.keys().find(|n| model.chart_index(n).is_none()) {
                return Err(Error::Manifest(format!("{}: unknown chart `{}`", path, extra)));
            }
            let mut mats = Vec::new();
            for c in model.charts().iter() {
                let p = format!("{}.{}", path, c.name);
                let rows = per_chart
                    .get(&c.name)
                    .ok_or_else(|| Error::Manifest(format!("{}: missing", p)))?;
                let entries = square(rows, self.rank, &p)?
                    .into_iter()
                    .map(|(p, t)| one_form(t, c, self.mode, &p))
                    .collect::<Result<Vec<_>>>()?;
                mats.push(MatrixForm::from_entries(self.rank, c.generators(), entries)?);
            }
            model.add_family(fname, mats).map_err(|e| at(&path, e))?;
        }
        model.validate()?;
        Ok(model)
    }

    /// Depth requested in the options, capped by the cover.
    pub fn depth(&self, model: &CoverModel) -> usize {
        self.options.depth.unwrap_or(usize::MAX).min(model.max_degree())
    }
}

fn one_form(text: &str, c: &Chart, mode: Mode, path: &str) -> Result<Form> {
    let f = Form::parse_one_form(text, c.all_generators(), &c.symbols()).map_err(|e| at(path, e))?;
    if f.terms().any(|(k, _)| k.ut != UTau::ONE) {
        return Err(Error::Manifest(format!("{}: `u` and `tau` are not allowed here", path)));
    }
    if mode == Mode::Holomorphic {
        let holo_bits = (1u32 << c.coords.len()) - 1;
        if f.terms().any(|(k, _)| k.wedge & !holo_bits != 0) || c.conj.iter().any(|z| f.contains_var(z)) {
            return Err(Error::Holomorphic(format!("{}: connection is not holomorphic", path)));
        }
    }
    f.with_generators(c.generators()).map_err(|e| at(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(mode: &str, conn: &str) -> String {
        format!(
            r#"{{"mode": "{}", "rank": 1,
                "charts": [{{"name": "U0", "coords": ["z"], "conj": ["zb"]}},
                           {{"name": "U1", "coords": ["w"], "conj": ["wb"]}}],
                "intersections": [{{"index": [0, 1], "ambient": "U0",
                                    "restrictions": {{"U1": {{"w": "1/z", "wb": "1/zb"}}}}}}],
                "transitions": {{"0,1": [["z"]]}},
                "connections": {{"f": {{"U0": [["{}"]], "U1": [["0"]]}}}}}}"#,
            mode, conn
        )
    }

    fn build(text: &str) -> Result<CoverModel> {
        Manifest::from_json(text)?.build()
    }

    #[test]
    fn builds_and_round_trips() {
        let m = Manifest::from_json(&base("holomorphic", "dz")).unwrap();
        let again = Manifest::from_json(&m.to_json()).unwrap();
        assert_eq!(again.to_json(), m.to_json());
        let model = m.build().unwrap();
        assert_eq!(model.max_degree(), 1);
        assert_eq!(m.depth(&model), 1);
    }

    #[test]
    fn rejects_antiholomorphic_connections() {
        assert!(matches!(build(&base("holomorphic", "dzb")), Err(Error::Holomorphic(_))));
        assert!(matches!(build(&base("holomorphic", "zb*dz")), Err(Error::Holomorphic(_))));
        assert!(build(&base("smooth", "zb*dz")).is_ok());
    }

    #[test]
    fn reports_paths() {
        let e = build(&base("smooth", "dq")).unwrap_err();
        assert!(e.to_string().contains("connections.f.U0"), "{}", e);
        let e = build(&base("smooth", "0").replace("\"w\": \"1/z\"", "\"v\": \"1/z\"")).unwrap_err();
        assert!(e.to_string().contains("not a coordinate"), "{}", e);
        let e = build(&base("smooth", "0").replace("\"coords\": [\"z\"]", "\"coords\": [\"tau\"]")).unwrap_err();
        assert!(e.to_string().contains("reserved"), "{}", e);
        assert!(Manifest::from_json(r#"{"mode": "smooth", "charts": [], "rank": 1, "extra": 1}"#).is_err());
    }
}
