//! Browser bindings for the demo page in `www/`.
//!
//! Every export takes and returns plain values (numbers, strings, JSON text)
//! so the same functions are testable natively.

use serde_json::json;
use wasm_bindgen::prelude::*;

use topic_sentiment::corpus::{tokenize, Stopwords};
use topic_sentiment::fuzzy::{aggregate_topic, conformity};
use topic_sentiment::pipeline::{render_tfn_svg, TfnSeries};
use topic_sentiment::sentiment::Scorer;
use topic_sentiment::{Lexicon, Tfn};

fn to_js(msg: String) -> JsValue {
    JsValue::from_str(&msg)
}

/// Tokens and lexicon polarity of one post, as JSON.
#[wasm_bindgen]
pub fn analyze_post(text: &str) -> String {
    let tokens = tokenize(text, &Stopwords::english());
    let lexicon = Lexicon::english();
    let polarity = Scorer::new(&lexicon).score_tokens(&tokens);
    let hits: Vec<&String> = tokens.iter().filter(|t| lexicon.polarity(t).is_some()).collect();
    json!({ "tokens": tokens, "hits": hits, "polarity": polarity }).to_string()
}

fn aggregate_json(polarities: &[f64], weights: &[f64], scale: f64, ramp: f64) -> Result<String, String> {
    if !(scale > 0.0 && ramp > 0.0 && ramp <= 1.0) {
        return Err(format!("need scale > 0 and 0 < ramp <= 1, got s={scale}, p={ramp}"));
    }
    let ones = vec![1.0; polarities.len()];
    let r = aggregate_topic(polarities, weights, &ones, scale, ramp).map_err(|e| e.to_string())?;
    Ok(json!({
        "tfn": [r.tfn.a, r.tfn.m, r.tfn.b],
        "sigma": r.sigma,
        "positivity": r.conformity.positivity,
        "negativity": r.conformity.negativity,
        "svg": render_tfn_svg(&[TfnSeries { label: "topic".into(), tfn: r.tfn }], ramp),
    })
    .to_string())
}

/// Weighted topic sentiment: TFN, spread, conformity and an SVG plot.
#[wasm_bindgen]
pub fn aggregate(polarities: &[f64], weights: &[f64], scale: f64, ramp: f64) -> Result<String, JsValue> {
    aggregate_json(polarities, weights, scale, ramp).map_err(to_js)
}

fn tfn_json(a: f64, m: f64, b: f64, ramp: f64) -> Result<String, String> {
    let tfn = Tfn::new(a, m, b).map_err(|e| e.to_string())?;
    if !(ramp > 0.0 && ramp <= 1.0) {
        return Err(format!("ramp must lie in (0, 1], got {ramp}"));
    }
    let c = conformity(&tfn, ramp);
    let label = format!("({a:.2}, {m:.2}, {b:.2})");
    Ok(json!({
        "positivity": c.positivity,
        "negativity": c.negativity,
        "svg": render_tfn_svg(&[TfnSeries { label, tfn }], ramp),
    })
    .to_string())
}

/// Conformity of a hand-set TFN against both opinion concepts.
#[wasm_bindgen]
pub fn tfn_conformity(a: f64, m: f64, b: f64, ramp: f64) -> Result<String, JsValue> {
    tfn_json(a, m, b, ramp).map_err(to_js)
}
