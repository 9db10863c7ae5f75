//! WebAssembly bindings for the static page in `www/`.
//!
//! Every entry point takes a construction request as JSON, for example
//! `{"name":"four_class","ell":2}` or
//! `{"name":"chain","q":2,"m":2,"ell":2,"chain":[2,1],"form":"hyperbolic"}`,
//! and returns JSON.

use std::collections::BTreeMap;

use amorphic::group::all_character_sums;
use amorphic::pds::{classify_latin_type, verify_pds_by_differences};
use amorphic::scheme::DEFAULT_FUSION_CAP;
use amorphic::{Constructed, Construction};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Larger groups make the page unresponsive.
pub const MAX_ORDER: usize = 6561;

fn build(request: &str) -> Result<Constructed, String> {
    let c: Construction = serde_json::from_str(request).map_err(|e| format!("bad request: {e}"))?;
    let built = c.build().map_err(|e| e.to_string())?;
    let v = built.scheme.group().order();
    if v > MAX_ORDER {
        return Err(format!("group order {v} is above the demo limit of {MAX_ORDER}"));
    }
    Ok(built)
}

#[derive(Serialize)]
struct ClassSummary {
    size: usize,
    params: Option<String>,
    latin: Option<String>,
}

#[derive(Serialize)]
struct Summary {
    construction: String,
    group: Vec<u32>,
    order: usize,
    classes: Vec<ClassSummary>,
    warnings: Vec<String>,
}

/// Class sizes, PDS parameters and Latin type of every class.
pub fn summary_json(request: &str) -> Result<String, String> {
    let c = build(request)?;
    let classes = c
        .scheme
        .classes()
        .iter()
        .map(|s| {
            let params = verify_pds_by_differences(s).ok().map(|cert| cert.params);
            ClassSummary {
                size: s.cardinality(),
                params: params.map(|p| p.to_string()),
                latin: params.as_ref().and_then(classify_latin_type).map(|t| t.to_string()),
            }
        })
        .collect();
    let s = Summary {
        construction: c.descriptor.to_string(),
        group: c.scheme.group().factors().to_vec(),
        order: c.scheme.group().order(),
        classes,
        warnings: c.warnings,
    };
    Ok(serde_json::to_string(&s).expect("summary serializes"))
}

#[derive(Serialize)]
struct SpectrumSummary {
    class: usize,
    size: usize,
    /// Distinct nonprincipal character sums and how often each occurs.
    histogram: BTreeMap<String, usize>,
    /// Whether every sum is a rational integer.
    integral: bool,
}

/// Histogram of the nonprincipal character sums over class `class` (1-based).
pub fn spectrum_json(request: &str, class: usize) -> Result<String, String> {
    let c = build(request)?;
    let d = c.scheme.class_count();
    if class == 0 || class > d {
        return Err(format!("class {class} out of range 1..={d}"));
    }
    let s = &c.scheme.classes()[class - 1];
    let sums = all_character_sums(s);
    let mut histogram = BTreeMap::new();
    let mut integral = true;
    for z in &sums[1..] {
        integral &= z.as_integer().is_some();
        *histogram.entry(z.to_string()).or_insert(0) += 1;
    }
    let out = SpectrumSummary { class, size: s.cardinality(), histogram, integral };
    Ok(serde_json::to_string(&out).expect("spectrum serializes"))
}

#[derive(Serialize)]
struct FusionRow {
    partition: String,
    ok: bool,
    witness: Option<String>,
}

#[derive(Serialize)]
struct FusionSummary {
    classes: usize,
    checked: usize,
    passed: usize,
    amorphic: bool,
    fusions: Vec<FusionRow>,
}

/// Check the scheme axioms on every fusion of the classes.
pub fn fusions_json(request: &str) -> Result<String, String> {
    let c = build(request)?;
    let cert = c.scheme.verify_amorphic(DEFAULT_FUSION_CAP).map_err(|e| e.to_string())?;
    let out = FusionSummary {
        classes: cert.classes,
        checked: cert.fusions_checked,
        passed: cert.passed(),
        amorphic: cert.amorphic,
        fusions: cert
            .results
            .iter()
            .map(|r| FusionRow {
                partition: r.partition.to_string(),
                ok: r.failure.is_none(),
                witness: r.failure.as_ref().map(|w| w.to_string()),
            })
            .collect(),
    };
    Ok(serde_json::to_string(&out).expect("certificate serializes"))
}

#[wasm_bindgen]
pub fn construct_summary(request: &str) -> Result<String, JsError> {
    summary_json(request).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn character_spectrum(request: &str, class: usize) -> Result<String, JsError> {
    spectrum_json(request, class).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn fusion_certificate(request: &str) -> Result<String, JsError> {
    fusions_json(request).map_err(|e| JsError::new(&e))
}
