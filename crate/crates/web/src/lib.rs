//! Browser bindings for the multisection library.
//!
//! The exported functions take vector literals such as `"-2,11"` and return
//! text or SVG. The same logic is available natively through [`demo`].

use wasm_bindgen::prelude::*;

pub mod demo;

/// SVG fan for the chain `c0, c1` extended by `steps` reflections.
#[wasm_bindgen]
pub fn fan_svg(c0: &str, c1: &str, steps: usize, labels: bool) -> Result<String, JsValue> {
    demo::fan_svg(c0, c1, steps, labels).map_err(|e| JsValue::from_str(&e))
}

/// Human-readable `m`-sectability report for the angle between `a` and `b`.
#[wasm_bindgen]
pub fn sectable(m: u32, a: &str, b: &str) -> Result<String, JsValue> {
    demo::sectable(m, a, b).map_err(|e| JsValue::from_str(&e))
}

/// Half-angle cosine chain deciding `2^e`-sectability.
#[wasm_bindgen]
pub fn cosine_chain(e: u32, a: &str, b: &str) -> Result<String, JsValue> {
    demo::cosine_chain(e, a, b).map_err(|e| JsValue::from_str(&e))
}
