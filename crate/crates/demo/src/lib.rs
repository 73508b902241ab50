use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use hypervol::cuts::PointSet;
use hypervol::discrepancy::{build_initial_sampling_set, sparsify_sampling_set};
use hypervol::l1cone::{bounded_cells, l1_metric_to_cuts};
use hypervol::randcx::{analyze, ExpansionMode, DEFAULT_SAMPLES};
use hypervol::sparsify::{factorize, sparsify_spectral, sparsify_strength, ColumnSystem, SpectralMode, StrengthOptions};
use hypervol::volumes::{euclidean_volume, DEFAULT_SEARCH_NODES};

/// Cap on lightest-cap searches so the page stays responsive.
const DEMO_SEARCH_NODES: usize = DEFAULT_SEARCH_NODES / 20;

fn err(e: impl ToString) -> String {
    e.to_string()
}

/// Arrangement cells of a planar point set, the area-weighted sampling set
/// and its sparsified version, with the worst triangle error of each.
pub fn arrangement(points: &[[f64; 2]], epsilon: f64, seed: u64) -> Result<Value, String> {
    let s = PointSet::new(2, points.iter().map(|p| p.to_vec()).collect()).map_err(err)?;
    let cells = bounded_cells(&s).map_err(err)?;
    let p0 = build_initial_sampling_set(&s).map_err(err)?;
    let (p, report) = sparsify_sampling_set(&s, &p0, epsilon, seed, SpectralMode::default()).map_err(err)?;
    let areas = euclidean_volume(&s, 2).map_err(err)?;
    let masses = p.mass_volume(&s).map_err(err)?;
    let worst = masses
        .values()
        .iter()
        .zip(areas.values())
        .map(|(m, a)| (m / a - 1.0).abs())
        .fold(0.0, f64::max);
    Ok(json!({
        "cells": cells.iter().map(|c| json!({ "polygon": c.polygon, "area": c.area })).collect::<Vec<_>>(),
        "initial": p0,
        "sparse": p,
        "max_rel_error": worst,
        "support": report.support_size,
    }))
}

/// Strength or spectral sparsification of the l1 metric of random points.
pub fn sparsify_l1(n: usize, dim: usize, epsilon: f64, seed: u64, engine: &str) -> Result<Value, String> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<Vec<f64>> = (0..n).map(|_| (0..dim).map(|_| rng.random::<f64>()).collect()).collect();
    let dec = l1_metric_to_cuts(&pts).map_err(err)?;
    let sys = ColumnSystem::from_decomposition(&dec).map_err(err)?;
    let report = match engine {
        "strength" => sparsify_strength(&sys, &StrengthOptions::new(epsilon, seed)).map_err(err)?.0,
        "spectral" | "spectral-det" => {
            let mode = if engine == "spectral" {
                SpectralMode::default()
            } else {
                SpectralMode::Deterministic
            };
            sparsify_spectral(&sys, &factorize(&dec).map_err(err)?, epsilon, seed, mode).map_err(err)?
        }
        other => return Err(format!("unknown engine {other}")),
    };
    Ok(json!({
        "engine": report.engine,
        "cuts": sys.len(),
        "support": report.support_size,
        "max_rel_error": report.max_rel_error,
        "rho": report.rho,
        "samples": report.samples,
    }))
}

/// Face expansion of `K(n, p)`: exact up to seven vertices, sampled beyond.
pub fn random_complex(n: usize, p: f64, seed: u64) -> Result<Value, String> {
    let mode = if n <= hypervol::randcx::EXACT_MAX_N {
        ExpansionMode::Exact
    } else {
        ExpansionMode::Sampled {
            samples: DEFAULT_SAMPLES,
            seed,
        }
    };
    let r = analyze(n, p, seed, &mode, DEMO_SEARCH_NODES).map_err(err)?;
    serde_json::to_value(r).map_err(err)
}

fn to_js(v: Result<Value, String>) -> Result<String, JsValue> {
    v.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

/// `coords` is a flat `[x0, y0, x1, y1, ...]` array.
#[wasm_bindgen(js_name = arrangement)]
pub fn arrangement_js(coords: &[f64], epsilon: f64, seed: u32) -> Result<String, JsValue> {
    if !coords.len().is_multiple_of(2) {
        return Err(JsValue::from_str("odd number of coordinates"));
    }
    let pts: Vec<[f64; 2]> = coords.chunks(2).map(|c| [c[0], c[1]]).collect();
    to_js(arrangement(&pts, epsilon, seed as u64))
}

#[wasm_bindgen(js_name = sparsifyL1)]
pub fn sparsify_l1_js(n: u32, dim: u32, epsilon: f64, seed: u32, engine: &str) -> Result<String, JsValue> {
    to_js(sparsify_l1(n as usize, dim as usize, epsilon, seed as u64, engine))
}

#[wasm_bindgen(js_name = randomComplex)]
pub fn random_complex_js(n: u32, p: f64, seed: u32) -> Result<String, JsValue> {
    to_js(random_complex(n as usize, p, seed as u64))
}
