//! WebAssembly bindings behind `www/index.html`.
//!
//! Each exported function wraps a plain Rust function of the same name
//! (without the `js_` prefix) so the logic can be tested natively.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use conical_core::decompose::decompose_traced;
use conical_core::synth::stopword;
use conical_core::{ne_score, ConicalModel, Epsilon, TrainOptions, WordFrequencyTable};

/// NE score against each of `points` evenly spaced document rates in [0, 1].
pub fn ne_curve(word_freq: f64, epsilon: f64, points: usize) -> Result<Vec<f64>, String> {
    let eps = Epsilon::new(epsilon).map_err(|e| e.to_string())?;
    if !(0.0..=1.0).contains(&word_freq) {
        return Err(format!("word frequency must lie in [0, 1], got {word_freq}"));
    }
    let n = points.max(2);
    Ok((0..n)
        .map(|i| ne_score(i as f64 / (n - 1) as f64, word_freq, eps))
        .collect())
}

// Built-in lexicon: common English function words with Zipf counts.
fn demo_lexicon() -> WordFrequencyTable {
    WordFrequencyTable::from_counts(
        (0..100).map(|r| (stopword(r), (1_000_000.0 / (r + 1) as f64).round() as u64)),
    )
}

#[derive(Debug, Serialize)]
pub struct Classification {
    pub label: String,
    pub dims_checked: usize,
    pub vocabulary: usize,
    pub required_dims: usize,
    /// Query terms known to the model with their NE weights, heaviest first.
    pub terms: Vec<(String, f64)>,
}

/// Trains on the non-blank lines of `training` and classifies `query`.
pub fn classify(training: &str, query: &str) -> Result<Classification, String> {
    let docs: Vec<&str> = training.lines().filter(|l| !l.trim().is_empty()).collect();
    let model = ConicalModel::train(&docs, Some(&demo_lexicon()), TrainOptions::default())
        .map_err(|e| e.to_string())?;
    let prediction = model.predict_text(query);
    let vocab = model.vocabulary();
    let mut terms: Vec<(String, f64)> = conical_core::tokenize(query)
        .into_iter()
        .filter_map(|t| vocab.lookup(&t).map(|i| (t, model.weights().get(i))))
        .collect();
    terms.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    terms.dedup();
    Ok(Classification {
        label: prediction.label.to_string(),
        dims_checked: prediction.dims_checked,
        vocabulary: vocab.len(),
        required_dims: model.bounds().required_dims(),
        terms,
    })
}

#[derive(Debug, Serialize)]
pub struct PlaneDecomposition {
    pub lambda_x: f64,
    pub lambda_y: f64,
    pub iterations: usize,
    /// Every `λx` visited by the bisection.
    pub trace: Vec<f64>,
}

fn unit(angle_deg: f64) -> [f64; 2] {
    let a = angle_deg.to_radians();
    [a.cos(), a.sin()]
}

/// Decomposes the unit vector at `target_deg` between those at `x_deg` and
/// `y_deg`, all measured in degrees from the horizontal axis.
pub fn decompose_plane(
    x_deg: f64,
    y_deg: f64,
    target_deg: f64,
    tol: f64,
) -> Result<PlaneDecomposition, String> {
    let mut trace = Vec::new();
    let r = decompose_traced(&unit(x_deg), &unit(y_deg), &unit(target_deg), tol, &mut trace)
        .map_err(|e| e.to_string())?;
    Ok(PlaneDecomposition {
        lambda_x: r.lambda_x,
        lambda_y: r.lambda_y,
        iterations: r.iterations,
        trace,
    })
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsError> {
    r.map(|v| serde_json::to_string(&v).expect("plain data serializes"))
        .map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = neCurve)]
pub fn js_ne_curve(word_freq: f64, epsilon: f64, points: usize) -> Result<Vec<f64>, JsError> {
    ne_curve(word_freq, epsilon, points).map_err(|e| JsError::new(&e))
}

/// JSON-encoded [`Classification`].
#[wasm_bindgen(js_name = classify)]
pub fn js_classify(training: &str, query: &str) -> Result<String, JsError> {
    to_js(classify(training, query))
}

/// JSON-encoded [`PlaneDecomposition`].
#[wasm_bindgen(js_name = decomposePlane)]
pub fn js_decompose_plane(
    x_deg: f64,
    y_deg: f64,
    target_deg: f64,
    tol: f64,
) -> Result<String, JsError> {
    to_js(decompose_plane(x_deg, y_deg, target_deg, tol))
}
