//! Browser bindings. Each export takes a group spec string and returns JSON;
//! the plain functions below do the work so they can be tested natively.

use std::collections::BTreeMap;

use epg_core::verify::{Analysis, ClaimId, VerdictReport};
use epg_core::{build_epg, parse_spec, GroupTable};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest group the page will analyze.
pub const STATS_CAP: usize = 1024;
/// Largest group the page will draw.
pub const GRAPH_CAP: usize = 256;

#[derive(Debug, Serialize)]
pub struct Stats {
    pub label: String,
    pub order: usize,
    pub exp: usize,
    #[serde(rename = "nG")]
    pub n_g: usize,
    pub components: usize,
    pub largest_component: usize,
    pub universal: usize,
    /// `[size, multiplicity]`, ascending by size.
    pub neighborhood_sizes: Vec<[usize; 2]>,
}

#[derive(Debug, Serialize)]
pub struct Node {
    pub id: u32,
    pub order: usize,
    pub component: u32,
    pub neighborhood: usize,
}

#[derive(Debug, Serialize)]
pub struct Graph {
    pub label: String,
    pub nodes: Vec<Node>,
    pub edges: Vec<[u32; 2]>,
}

fn group(spec: &str, cap: usize) -> Result<GroupTable, String> {
    let spec = parse_spec(spec.trim()).map_err(|e| e.to_string())?;
    spec.build(cap).map_err(|e| e.to_string())
}

pub fn stats(spec: &str) -> Result<Stats, String> {
    let g = group(spec, STATS_CAP)?;
    let epg = build_epg(&g).map_err(|e| e.to_string())?;
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for x in g.nontrivial() {
        *sizes.entry(epg.neighborhood_size(x)).or_default() += 1;
    }
    Ok(Stats {
        label: g.label().to_string(),
        order: g.order(),
        exp: g.exponent(),
        n_g: epg.n_g(),
        components: epg.components().len(),
        largest_component: epg.largest_component(),
        universal: epg.universal_vertices().len(),
        neighborhood_sizes: sizes.into_iter().map(|(s, m)| [s, m]).collect(),
    })
}

pub fn graph(spec: &str) -> Result<Graph, String> {
    let g = group(spec, GRAPH_CAP)?;
    let epg = build_epg(&g).map_err(|e| e.to_string())?;
    let nodes = g
        .nontrivial()
        .map(|x| Node {
            id: x.0,
            order: g.element_order(x),
            component: epg.component_label(x).0,
            neighborhood: epg.neighborhood_size(x),
        })
        .collect();
    let edges = epg.edges().map(|(x, y)| [x.0, y.0]).collect();
    Ok(Graph {
        label: g.label().to_string(),
        nodes,
        edges,
    })
}

pub fn verdicts(spec: &str) -> Result<Vec<VerdictReport>, String> {
    let g = group(spec, STATS_CAP)?;
    let a = Analysis::new(&g);
    Ok(ClaimId::ALL.iter().map(|&c| a.run(c)).collect())
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsValue> {
    r.and_then(|v| serde_json::to_string(&v).map_err(|e| e.to_string()))
        .map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = groupStats)]
pub fn group_stats(spec: &str) -> Result<String, JsValue> {
    to_js(stats(spec))
}

#[wasm_bindgen(js_name = groupGraph)]
pub fn group_graph(spec: &str) -> Result<String, JsValue> {
    to_js(graph(spec))
}

#[wasm_bindgen(js_name = checkClaims)]
pub fn check_claims(spec: &str) -> Result<String, JsValue> {
    to_js(verdicts(spec))
}
