//! Browser bindings. Each exported function takes the same text inputs as
//! the CLI and returns a JSON string.

use cartcode::codes::{self, EnumerationOptions};
use cartcode::sweep::parse_sets;
use cartcode::{CodeSpec, Field, FieldElement};
use serde::Serialize;
use wasm_bindgen::prelude::*;

fn spec(field: &str, sets: &str, degree: u32) -> Result<CodeSpec, String> {
    let field = Field::parse(field, None).map_err(|e| e.to_string())?;
    let sets = parse_sets(sets).map_err(|e| e.to_string())?;
    CodeSpec::from_indices(&field, &sets, u64::from(degree)).map_err(|e| e.to_string())
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data")
}

#[derive(Serialize)]
struct Params {
    sizes: Vec<u64>,
    length: u64,
    dimension: u64,
    min_distance: u64,
    min_distance_regime: String,
    second_weight: Option<u64>,
    second_weight_regime: Option<String>,
    t_th_weights: Option<Vec<u64>>,
}

pub fn params(field: &str, sets: &str, degree: u32) -> Result<String, String> {
    let spec = spec(field, sets, degree)?;
    let dmin = spec.min_distance();
    let second = spec.second_weight().ok();
    let t_th_weights = cartcode::formulas::t_th_weight_count(&spec.sizes(), spec.degree())
        .map(|count| (1..=count).filter_map(|t| spec.t_th_weight(t).ok()).map(|w| w.value).collect());
    Ok(to_json(&Params {
        sizes: spec.sizes(),
        length: spec.length(),
        dimension: spec.dimension(),
        min_distance: dmin.value,
        min_distance_regime: dmin.regime.to_string(),
        second_weight: second.map(|w| w.value),
        second_weight_regime: second.map(|w| w.regime.to_string()),
        t_th_weights,
    }))
}

#[derive(Serialize)]
struct Spectrum {
    counts: Vec<(u64, u64)>,
    min_distance: Option<u64>,
    second_weight: Option<u64>,
    formula_min_distance: u64,
    formula_second_weight: Option<u64>,
}

pub fn spectrum(field: &str, sets: &str, degree: u32, budget: u32) -> Result<String, String> {
    let spec = spec(field, sets, degree)?;
    codes::check_budget(&spec, u64::from(budget)).map_err(|e| e.to_string())?;
    let matrix = codes::generator_matrix(&spec);
    let opts = EnumerationOptions { scalar_classes: true, ..EnumerationOptions::with_budget(u64::from(budget)) };
    let result = codes::enumerate_code(&matrix, &opts).map_err(|e| e.to_string())?.spectrum;
    Ok(to_json(&Spectrum {
        min_distance: result.nth_weight(1),
        second_weight: result.nth_weight(2),
        formula_min_distance: spec.min_distance().value,
        formula_second_weight: spec.second_weight().ok().map(|w| w.value),
        counts: result.counts,
    }))
}

#[derive(Serialize)]
struct Witness {
    kind: &'static str,
    polynomial: String,
    codeword: Vec<u64>,
    weight: u64,
    formula: u64,
}

pub fn witness(field: &str, sets: &str, degree: u32) -> Result<String, String> {
    let spec = spec(field, sets, degree)?;
    let matrix = codes::generator_matrix(&spec);
    let encode = |kind, poly: cartcode::MultiPoly, formula| -> Result<Witness, String> {
        let word = matrix.encode_poly(&poly).map_err(|e| e.to_string())?;
        Ok(Witness {
            kind,
            polynomial: poly.to_string(),
            weight: codes::codeword_weight(&word) as u64,
            codeword: word.iter().map(FieldElement::to_index).collect(),
            formula,
        })
    };
    let g = codes::min_weight_witness(&spec).map_err(|e| e.to_string())?;
    let mut out = vec![encode("min_weight", g, spec.min_distance().value)?];
    if let (Ok(f), Ok(w2)) = (codes::second_weight_witness(&spec), spec.second_weight()) {
        out.push(encode("second_weight", f, w2.value)?);
    }
    Ok(to_json(&out))
}

#[wasm_bindgen(js_name = params)]
pub fn params_js(field: &str, sets: &str, degree: u32) -> Result<String, JsError> {
    params(field, sets, degree).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = spectrum)]
pub fn spectrum_js(field: &str, sets: &str, degree: u32, budget: u32) -> Result<String, JsError> {
    spectrum(field, sets, degree, budget).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = witness)]
pub fn witness_js(field: &str, sets: &str, degree: u32) -> Result<String, JsError> {
    witness(field, sets, degree).map_err(|e| JsError::new(&e))
}
