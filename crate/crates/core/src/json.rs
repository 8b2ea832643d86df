//! File formats. Rationals travel as `p/q` strings so every value
//! round-trips exactly; JSON objects use sorted keys, so identical inputs
//! serialize to identical bytes.
//!
//! - polynomial: `{"n", "params", "terms": [{"x", "y", "coeff": [{"exp",
//!   "val"}]}]}`
//! - chain: `{"n", "Q", "b", "d"}`
//! - tree: `{"n", "r", "parent", "colors"}`
//! - distributions: CSV `state,probability`
//! - diagram arcs: CSV `i,j,side`

use crate::markov::{ChainSpec, Distribution};
use crate::params::{ParamPoly, ParamSet};
use crate::rational::{format_rat, parse_rat, Rat};
use crate::sitepoly::SitePoly;
use crate::tree::{AltTree, ArcSide};
use crate::word::OccupancyWord;
use crate::analysis::{StabilityReport, StabilityVerdict};
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError(pub String);

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "format error: {}", self.0)
    }
}

impl std::error::Error for FormatError {}

fn err(msg: impl Into<String>) -> FormatError {
    FormatError(msg.into())
}

fn rat_from(v: &Value) -> Result<Rat, FormatError> {
    let s = v.as_str().ok_or_else(|| err("expected a p/q string"))?;
    parse_rat(s).map_err(|e| err(e.to_string()))
}

// ---------------------------------------------------------------------
// Polynomials
// ---------------------------------------------------------------------

pub fn param_poly_to_json(p: &ParamPoly) -> Value {
    let coeffs: Vec<Value> = p
        .terms()
        .map(|(exps, c)| {
            json!({
                "exp": exps,
                "val": format_rat(c),
            })
        })
        .collect();
    Value::Array(coeffs)
}

pub fn param_poly_from_json(
    v: &Value,
    params: &std::sync::Arc<ParamSet>,
) -> Result<ParamPoly, FormatError> {
    let arr = v.as_array().ok_or_else(|| err("coeff must be an array"))?;
    let mut p = ParamPoly::zero(params.clone());
    for item in arr {
        let exps: Vec<u32> = item
            .get("exp")
            .and_then(Value::as_array)
            .ok_or_else(|| err("coeff entry needs exp"))?
            .iter()
            .map(|e| e.as_u64().map(|x| x as u32).ok_or_else(|| err("bad exponent")))
            .collect::<Result<_, _>>()?;
        if exps.len() != params.len() {
            return Err(err("exponent arity does not match params"));
        }
        let val = rat_from(item.get("val").ok_or_else(|| err("coeff entry needs val"))?)?;
        p.add_term(exps, val);
    }
    Ok(p)
}

fn mask_to_indices(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()
}

fn indices_to_mask(v: &Value, n: usize) -> Result<u64, FormatError> {
    let arr = v.as_array().ok_or_else(|| err("index list expected"))?;
    let mut mask = 0u64;
    for idx in arr {
        let i = idx.as_u64().ok_or_else(|| err("bad index"))? as usize;
        if i == 0 || i > n {
            return Err(err(format!("site index {i} out of range")));
        }
        mask |= 1 << (i - 1);
    }
    Ok(mask)
}

pub fn site_poly_to_json(p: &SitePoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(&(xm, ym), c)| {
            json!({
                "x": mask_to_indices(xm, p.n()),
                "y": mask_to_indices(ym, p.n()),
                "coeff": param_poly_to_json(c),
            })
        })
        .collect();
    json!({
        "n": p.n(),
        "params": p.params().names(),
        "terms": terms,
    })
}

pub fn site_poly_from_json(v: &Value) -> Result<SitePoly, FormatError> {
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| err("polynomial needs n"))? as usize;
    let names: Vec<String> = v
        .get("params")
        .and_then(Value::as_array)
        .ok_or_else(|| err("polynomial needs params"))?
        .iter()
        .map(|s| s.as_str().map(String::from).ok_or_else(|| err("bad name")))
        .collect::<Result<_, _>>()?;
    let params = ParamSet::new(names);
    let mut poly = SitePoly::zero(n, params.clone());
    for term in v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| err("polynomial needs terms"))?
    {
        let xm = indices_to_mask(term.get("x").unwrap_or(&json!([])), n)?;
        let ym = indices_to_mask(term.get("y").unwrap_or(&json!([])), n)?;
        let coeff = param_poly_from_json(
            term.get("coeff").ok_or_else(|| err("term needs coeff"))?,
            &params,
        )?;
        poly.add_term(xm, ym, coeff);
    }
    Ok(poly)
}

// ---------------------------------------------------------------------
// Chains and distributions
// ---------------------------------------------------------------------

pub fn chain_spec_to_json(spec: &ChainSpec) -> Value {
    json!({
        "n": spec.n(),
        "Q": spec
            .jump()
            .iter()
            .map(|row| row.iter().map(format_rat).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "b": spec.birth().iter().map(format_rat).collect::<Vec<_>>(),
        "d": spec.death().iter().map(format_rat).collect::<Vec<_>>(),
    })
}

pub fn chain_spec_from_json(v: &Value) -> Result<ChainSpec, FormatError> {
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| err("chain needs n"))? as usize;
    let row_from = |row: &Value| -> Result<Vec<Rat>, FormatError> {
        row.as_array()
            .ok_or_else(|| err("rate row must be an array"))?
            .iter()
            .map(rat_from)
            .collect()
    };
    let q: Vec<Vec<Rat>> = v
        .get("Q")
        .and_then(Value::as_array)
        .ok_or_else(|| err("chain needs Q"))?
        .iter()
        .map(row_from)
        .collect::<Result<_, _>>()?;
    let b = row_from(v.get("b").ok_or_else(|| err("chain needs b"))?)?;
    let d = row_from(v.get("d").ok_or_else(|| err("chain needs d"))?)?;
    if q.len() != n || b.len() != n || d.len() != n {
        return Err(err("rate dimensions do not match n"));
    }
    ChainSpec::new(q, b, d).map_err(|e| err(e.to_string()))
}

pub fn distribution_to_csv(d: &Distribution) -> String {
    let mut out = String::from("state,probability\n");
    for s in 0..d.weights().len() as u64 {
        out.push_str(&format!(
            "{},{}\n",
            OccupancyWord::from_mask(s, d.n()),
            format_rat(d.weight(s))
        ));
    }
    out
}

pub fn distribution_to_json(d: &Distribution) -> Value {
    let mut map = Map::new();
    for s in 0..d.weights().len() as u64 {
        map.insert(
            OccupancyWord::from_mask(s, d.n()).to_string(),
            Value::String(format_rat(d.weight(s))),
        );
    }
    json!({ "n": d.n(), "weights": Value::Object(map) })
}

// ---------------------------------------------------------------------
// Trees and diagrams
// ---------------------------------------------------------------------

pub fn tree_to_json(t: &AltTree) -> Value {
    let support = t.support();
    let top = *support.iter().last().unwrap() as usize;
    let parent: Map<String, Value> = t
        .parent_map()
        .iter()
        .map(|(&v, &p)| (v.to_string(), json!(p)))
        .collect();
    let mut obj = Map::new();
    obj.insert("n".into(), json!(top.saturating_sub(1)));
    obj.insert("r".into(), json!(t.r()));
    obj.insert("parent".into(), Value::Object(parent));
    if let Some(colors) = t.colors() {
        let colors: Map<String, Value> = colors
            .iter()
            .map(|(&v, &c)| (v.to_string(), json!(c)))
            .collect();
        obj.insert("colors".into(), Value::Object(colors));
    }
    Value::Object(obj)
}

pub fn tree_from_json(v: &Value) -> Result<AltTree, FormatError> {
    let r = v.get("r").and_then(Value::as_u64).unwrap_or(1) as u32;
    let parent_obj = v
        .get("parent")
        .and_then(Value::as_object)
        .ok_or_else(|| err("tree needs a parent map"))?;
    let mut parent = BTreeMap::new();
    for (k, val) in parent_obj {
        let vertex: u32 = k.parse().map_err(|_| err("bad vertex label"))?;
        let p = val.as_u64().ok_or_else(|| err("bad parent label"))? as u32;
        parent.insert(vertex, p);
    }
    let colors = match v.get("colors").and_then(Value::as_object) {
        None => None,
        Some(obj) => {
            let mut colors = BTreeMap::new();
            for (k, val) in obj {
                let vertex: u32 = k.parse().map_err(|_| err("bad vertex label"))?;
                let c = val.as_u64().ok_or_else(|| err("bad color"))? as u32;
                colors.insert(vertex, c);
            }
            Some(colors)
        }
    };
    // the root is the unique supported vertex without a parent entry
    let mut support: std::collections::BTreeSet<u32> = parent.keys().copied().collect();
    support.extend(parent.values().copied());
    let roots: Vec<u32> = support
        .iter()
        .copied()
        .filter(|v| !parent.contains_key(v))
        .collect();
    if roots.len() != 1 {
        return Err(err("parent map must have exactly one root"));
    }
    Ok(AltTree::from_parts(roots[0], parent, colors, r))
}

pub fn arcs_to_csv(arcs: &[(u32, u32, ArcSide)]) -> String {
    let mut out = String::from("i,j,side\n");
    for (i, j, side) in arcs {
        out.push_str(&format!("{i},{j},{side}\n"));
    }
    out
}

// ---------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------

pub fn stability_report_to_json(r: &StabilityReport) -> Value {
    let witness = r.witness.as_ref().map(|w| {
        json!({
            "x": w.xs.iter().map(|z| vec![format_rat(&z.re), format_rat(&z.im)]).collect::<Vec<_>>(),
            "y": w.ys.iter().map(|z| vec![format_rat(&z.re), format_rat(&z.im)]).collect::<Vec<_>>(),
        })
    });
    json!({
        "verdict": match r.verdict {
            StabilityVerdict::Refuted => "refuted",
            StabilityVerdict::NoCounterexample => "no-counterexample",
        },
        "witness": witness,
        "samples_run": r.samples_run,
        "seed": r.seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_permutation;
    use crate::rational::{int, rat};
    use crate::sitepoly::SiteVar;
    use crate::tree::AltTree;

    #[test]
    fn site_poly_round_trip() {
        let ps = ParamSet::new(["a", "q"]);
        let a = ParamPoly::var_named(ps.clone(), "a");
        let mut p = SitePoly::zero(3, ps.clone());
        p.add_term(0b101, 0, a.scale(&rat(3, 7)));
        p.add_term(0, 0b010, ParamPoly::one(ps));
        let v = site_poly_to_json(&p);
        let back = site_poly_from_json(&v).unwrap();
        assert_eq!(back, p);
        // byte-identical serialization
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            serde_json::to_string(&site_poly_to_json(&back)).unwrap()
        );
    }

    #[test]
    fn chain_spec_round_trip() {
        let spec = ChainSpec::asep_line(3, &rat(2, 3), &int(1), &rat(5, 4), &int(0), &int(0))
            .unwrap();
        let v = chain_spec_to_json(&spec);
        let back = chain_spec_from_json(&v).unwrap();
        assert_eq!(back, spec);
    }

    #[test]
    fn tree_round_trip() {
        let pi = parse_permutation("(3^0)(4^2 5^0 7^4 6^1 2^2 1^8)", 9, 0).unwrap();
        let t = AltTree::from_colored_permutation(&pi).unwrap();
        let v = tree_to_json(&t);
        assert_eq!(v["n"], json!(7));
        let back = tree_from_json(&v).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn distribution_csv_shape() {
        let d = Distribution::point_mass(2, 0b01);
        let csv = distribution_to_csv(&d);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "state,probability");
        assert_eq!(lines[1], "00,0");
        assert_eq!(lines[2], "10,1"); // site 1 occupied
        assert_eq!(lines.len(), 5);
    }

    #[test]
    fn poly_var_example() {
        let p = SitePoly::var(2, ParamSet::empty(), SiteVar::X(2));
        let v = site_poly_to_json(&p);
        assert_eq!(v["terms"][0]["x"], json!([2]));
    }
}
