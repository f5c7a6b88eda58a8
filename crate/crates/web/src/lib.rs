//! Browser bindings: each export takes plain strings and returns a
//! `sturmkit/1` JSON document, or `{"error": ...}` on bad input.

use serde_json::{json, Value};
use sturmkit::realnum::{parse_values, DEFAULT_MAX_DIGITS};
use sturmkit::sturmian::{self, SturmianParams};
use sturmkit::{cfrac, decide, json as sj, Result};
use wasm_bindgen::prelude::wasm_bindgen;

fn respond(r: Result<Value>) -> String {
    match r {
        Ok(v) => sj::document(v).to_string(),
        Err(e) => sj::error(&e).to_string(),
    }
}

fn real(text: &str) -> Result<sturmkit::RealValue> {
    Ok(parse_values(&[text], DEFAULT_MAX_DIGITS)?.remove(0))
}

/// Exact periodic expansion, plus the value re-read from it.
#[wasm_bindgen]
pub fn cf_expand(x: &str) -> String {
    respond((|| {
        let e = cfrac::expand_periodic(&real(x)?)?;
        let mut v = sj::cf(&e);
        v["value"] = sj::real(&cfrac::from_cf(&e)?);
        Ok(v)
    })())
}

/// Coding of the rotation by `alpha` on positions `i..j`, with the count of
/// distinct factors of each length up to 8.
#[wasm_bindgen]
pub fn sturmian_window(alpha: &str, i: i32, j: i32) -> String {
    respond((|| {
        let p = SturmianParams::new(real(alpha)?)?;
        let mut v = sj::word(&sturmian::sturmian_window(&p, i.into(), j.into())?);
        let counts = (1..=8).map(|n| Ok(sturmian::factors(&p, n)?.len())).collect::<Result<Vec<_>>>()?;
        v["factor_counts"] = json!(counts);
        Ok(v)
    })())
}

#[wasm_bindgen]
pub fn flow_decide(alpha: &str, beta: &str) -> String {
    respond((|| Ok(sj::decision(&decide::sturmian_flow_equivalent(&real(alpha)?, &real(beta)?)?)))())
}
