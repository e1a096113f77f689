//! Browser demo bindings: three interactive operations over the exact
//! Nevanlinna machinery, each returning a JSON string for the static page
//! in `www/` to plot. The math is in the core crate and the [`api`] module;
//! this file is only the `wasm_bindgen` surface.

pub mod api;

use wasm_bindgen::prelude::*;

/// Tight configuration explorer: exact equality curves for `(n, d, p)`.
#[wasm_bindgen]
pub fn sharpness_report(n: usize, d: u32, p: u64) -> Result<String, JsError> {
    api::sharpness_report(n, d, p).map_err(|e| JsError::new(&e))
}

/// Newton polygon and Gauss norm of a polynomial with exact fraction
/// coefficients, e.g. `"1, 1, 3"`.
#[wasm_bindgen]
pub fn series_report(coeffs_csv: &str, p: u64) -> Result<String, JsError> {
    api::series_report(coeffs_csv, p).map_err(|e| JsError::new(&e))
}

/// Run a scenario document through `fmt-check`, `smt-report`, `defect`, or
/// `polygon`.
#[wasm_bindgen]
pub fn scenario_report(toml_text: &str, subcommand: &str) -> Result<String, JsError> {
    api::scenario_report(toml_text, subcommand).map_err(|e| JsError::new(&e))
}
