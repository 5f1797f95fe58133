//! Browser bindings: build a family with a drawing layout, test Hamiltonian
//! transitivity, and explore zigzag cycles. Every call returns JSON.

use std::f64::consts::TAU;

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use hamsym::abelian::{AbelianGroup, GeneratingSet};
use hamsym::construct::{group_induced_layers, ProductView};
use hamsym::factor::classify_by_theorems;
use hamsym::family::parse_family;
use hamsym::hamilton::{is_ham_transitive, zigzag_cycle, ClassCount, SearchLimits, ZigzagSpec};
use hamsym::{Error, Graph};

/// Largest graph the page will lay out.
pub const MAX_DEMO_VERTICES: usize = 81;

fn circle(n: usize) -> Vec<[f64; 2]> {
    (0..n)
        .map(|i| {
            let t = TAU * i as f64 / n as f64 - TAU / 4.0;
            [0.5 + 0.45 * t.cos(), 0.5 + 0.45 * t.sin()]
        })
        .collect()
}

/// Concentric rings: the first factor goes around, the second outward.
fn rings(pv: &ProductView) -> Vec<[f64; 2]> {
    let a = pv.factors[0].n();
    let b: usize = pv.factors[1..].iter().map(|f| f.n()).product();
    (0..pv.graph.n())
        .map(|v| {
            let (i, j) = (v / b, v % b);
            let t = TAU * i as f64 / a as f64 - TAU / 4.0;
            let r = if b == 1 { 0.45 } else { 0.15 + 0.3 * j as f64 / (b - 1) as f64 };
            [0.5 + r * t.cos(), 0.5 + r * t.sin()]
        })
        .collect()
}

fn graph_json(g: &Graph, positions: &[[f64; 2]]) -> Value {
    let labels: Option<Vec<String>> =
        g.labels().map(|ls| ls.iter().map(|l| String::from_utf8_lossy(l).into_owned()).collect());
    json!({
        "n": g.n(),
        "edges": g.edges().map(|e| [e.0, e.1]).collect::<Vec<_>>(),
        "labels": labels,
        "positions": positions,
    })
}

/// The graph of a family expression with vertex positions in the unit square.
pub fn construct_value(expr: &str) -> Result<Value, Error> {
    let built = parse_family(expr)?.build()?;
    let n = built.graph.n();
    if n > MAX_DEMO_VERTICES {
        return Err(Error::CapExceeded { requested: n, cap: MAX_DEMO_VERTICES });
    }
    let positions = match &built.product {
        Some(pv) => rings(pv),
        None => circle(n),
    };
    Ok(graph_json(&built.graph, &positions))
}

/// Transitivity report plus the theorem-based prediction.
pub fn transitivity_value(expr: &str, cycle_cap: usize) -> Result<Value, Error> {
    let built = parse_family(expr)?.build()?;
    let prediction = classify_by_theorems(&built.graph, built.cayley.as_ref());
    let limits = SearchLimits { cycle_cap: cycle_cap.max(1), ..SearchLimits::default() };
    let mut out = json!({ "prediction": prediction });
    match is_ham_transitive(&built.graph, &limits) {
        Ok(r) => {
            let (count, exact) = match r.class_count {
                ClassCount::Exact(c) => (c, true),
                ClassCount::LowerBound(c) => (c, false),
            };
            out["transitive"] = json!(r.is_transitive());
            out["class_count"] = json!(count);
            out["class_count_exact"] = json!(exact);
            out["total_cycles"] = json!(r.total_cycles.map(|t| t.to_string()));
            out["aut_order"] = json!(r.aut_order.to_string());
            out["representatives"] = json!(r.representatives);
        }
        Err(Error::Inconclusive(why)) => {
            out["transitive"] = Value::Null;
            out["inconclusive"] = json!(why);
        }
        Err(e) => return Err(e),
    }
    Ok(out)
}

/// Zigzag cycle in the `l`-layer grid `C_l □ C_k`, laid out with layers as
/// rows.
pub fn zigzag_value(k: usize, l: usize, a: &[usize]) -> Result<Value, Error> {
    if k * l > MAX_DEMO_VERTICES {
        return Err(Error::CapExceeded { requested: k * l, cap: MAX_DEMO_VERTICES });
    }
    let group = AbelianGroup::new(vec![l, k])?;
    let s = [[1, 0], [-1, 0], [0, 1], [0, -1]].iter().map(|x| group.elem_mod(x)).collect::<Result<Vec<_>, _>>()?;
    let s = GeneratingSet::new(&group, s)?;
    let sub = vec![group.elem_mod(&[0, 1])?, group.elem_mod(&[0, -1])?];
    let lv = group_induced_layers(&group, &s, &sub)?;
    let (cycle, mu) = zigzag_cycle(&lv, &ZigzagSpec::new(a.to_vec()))?;
    let order = lv.k_cycle.seq();
    let mut positions = vec![[0.0; 2]; lv.graph.n()];
    for (j, layer) in lv.layers.iter().enumerate() {
        for (i, &pos) in order.iter().enumerate() {
            let x = 0.05 + 0.9 * i as f64 / (k - 1) as f64;
            let y = 0.05 + 0.9 * j as f64 / (l - 1) as f64;
            positions[layer[pos]] = [x, y];
        }
    }
    let closed = 2 * k - 1 + 2 * a.iter().map(|x| x + 1).sum::<usize>();
    Ok(json!({
        "graph": graph_json(&lv.graph, &positions),
        "cycle": cycle,
        "mu": mu,
        "closed_form": closed,
    }))
}

fn to_js(r: Result<Value, Error>) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&format!("error[E{:03}]: {e}", e.code())))
}

#[wasm_bindgen]
pub fn construct(expr: &str) -> Result<String, JsError> {
    to_js(construct_value(expr))
}

#[wasm_bindgen]
pub fn transitivity(expr: &str, cycle_cap: usize) -> Result<String, JsError> {
    to_js(transitivity_value(expr, cycle_cap))
}

#[wasm_bindgen]
pub fn zigzag(k: usize, l: usize, a: Vec<u32>) -> Result<String, JsError> {
    let a: Vec<usize> = a.into_iter().map(|x| x as usize).collect();
    to_js(zigzag_value(k, l, &a))
}
