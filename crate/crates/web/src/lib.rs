//! Browser bindings. Every export takes text and returns a JSON string, so
//! the page only needs `JSON.parse`.

use a2kt::cktwo::k_theory_a2;
use a2kt::presentation::{builtin_text, parse_presentation, validate};
use a2kt::report::{GroupReport, KTheoryDocument};
use a2kt::transition::{build_check, build_hat};
use a2kt::zmat::{read_matrix, snf};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// K-theory report for presentation text. The timing field is left at zero.
pub fn ktheory_json(text: &str) -> Result<String, String> {
    let vp = validate(&parse_presentation(text).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let report = k_theory_a2(&vp).map_err(|e| e.to_string())?;
    Ok(KTheoryDocument::new(&report, text, 0.0).to_json())
}

/// Invariant factors and cokernel of a matrix in the sparse text format.
pub fn smith_json(matrix_text: &str) -> Result<String, String> {
    let a = read_matrix(matrix_text).map_err(|e| e.to_string())?;
    let f = snf(&a, false);
    let factors: Vec<String> = f.invariant_factors.iter().map(|d| d.to_string()).collect();
    Ok(json!({
        "rows": a.rows(),
        "cols": a.cols(),
        "rank": f.rank,
        "invariant_factors": factors,
        "cokernel": GroupReport::from(&f.cokernel()),
    })
    .to_string())
}

/// One transition matrix as its letters and the list of nonzero cells.
pub fn transition_json(text: &str, which: &str) -> Result<String, String> {
    let vp = validate(&parse_presentation(text).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let pair = match which {
        "hat1" | "hat2" => build_hat(&vp),
        "check1" | "check2" => build_check(&vp),
        other => return Err(format!("unknown matrix `{other}`")),
    }
    .map_err(|e| e.to_string())?;
    let m = if which.ends_with('1') {
        pair.m1
    } else {
        pair.m2
    };
    let letters: Vec<String> = vp.closure().iter().map(|&t| vp.display_triple(t)).collect();
    let cells: Vec<[usize; 2]> = m.nonzeros().into_iter().map(|(i, j, _)| [i, j]).collect();
    Ok(json!({ "size": m.rows(), "letters": letters, "cells": cells }).to_string())
}

#[wasm_bindgen]
pub fn builtin(name: &str) -> Result<String, JsError> {
    builtin_text(name)
        .map(str::to_string)
        .map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn ktheory(text: &str) -> Result<String, JsError> {
    ktheory_json(text).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn smith(matrix_text: &str) -> Result<String, JsError> {
    smith_json(matrix_text).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn transition(text: &str, which: &str) -> Result<String, JsError> {
    transition_json(text, which).map_err(|e| JsError::new(&e))
}
