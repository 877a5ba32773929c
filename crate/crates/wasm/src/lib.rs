//! Browser bindings: evaluate `F[v]`, list highest weight vectors and
//! compute the cyclic constant. Each export has a plain Rust twin that
//! returns `Result<_, String>` so it can be tested natively.

use wasm_bindgen::prelude::*;

use qcg::coulomb::QuadratureSpec;
use qcg::correspondence::f_hwv;
use qcg::uqsl2::{cyclic_constant, hwv_space_basis, TensorSpace, TensorVector};

fn parse_dims(dims: &str) -> Result<TensorSpace, String> {
    let d = dims
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| format!("bad dimension '{s}'")))
        .collect::<Result<Vec<_>, _>>()?;
    TensorSpace::new(d).map_err(|e| e.to_string())
}

/// `trivial:k` / `hwv:d:k` pick from the normalized basis; anything else is
/// parsed as an explicit vector.
fn parse_vector(space: &TensorSpace, spec: &str) -> Result<TensorVector, String> {
    let spec = spec.trim();
    let pick = |d: &str, k: &str| -> Result<TensorVector, String> {
        let d: usize = d.parse().map_err(|_| format!("bad dimension '{d}'"))?;
        let k: usize = k.parse().map_err(|_| format!("bad index '{k}'"))?;
        let basis = hwv_space_basis(space, d).map_err(|e| e.to_string())?;
        let n = basis.len();
        basis.into_iter().nth(k).ok_or_else(|| format!("only {n} highest weight vectors of dimension {d}"))
    };
    if let Some(k) = spec.strip_prefix("trivial:") {
        return pick("1", k);
    }
    if let Some(rest) = spec.strip_prefix("hwv:") {
        let (d, k) = rest.split_once(':').ok_or("expected hwv:d:k")?;
        return pick(d, k);
    }
    TensorVector::parse(space.clone(), spec).map_err(|e| e.to_string())
}

/// `[re, im, err]` of `F[v]` at the points `xs` (comma separated).
pub fn evaluate_impl(dims: &str, vector: &str, xs: &str, kappa: f64) -> Result<Vec<f64>, String> {
    let space = parse_dims(dims)?;
    let v = parse_vector(&space, vector)?;
    let xs = xs
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| format!("bad point '{s}'")))
        .collect::<Result<Vec<_>, _>>()?;
    let est = f_hwv(&v, &xs, kappa, &QuadratureSpec::default()).map_err(|e| e.to_string())?;
    Ok(vec![est.value.re, est.value.im, est.err])
}

/// One vector per line.
pub fn hwv_basis_impl(dims: &str, d: usize) -> Result<String, String> {
    let basis = hwv_space_basis(&parse_dims(dims)?, d).map_err(|e| e.to_string())?;
    Ok(basis.iter().map(|v| format!("{v}\n")).collect())
}

pub fn cyclic_impl(dims: &str) -> Result<String, String> {
    cyclic_constant(&parse_dims(dims)?).map(|c| c.to_string()).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn evaluate(dims: &str, vector: &str, xs: &str, kappa: f64) -> Result<Vec<f64>, JsValue> {
    evaluate_impl(dims, vector, xs, kappa).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn hwv_basis(dims: &str, d: usize) -> Result<String, JsValue> {
    hwv_basis_impl(dims, d).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn cyclic(dims: &str) -> Result<String, JsValue> {
    cyclic_impl(dims).map_err(|e| JsValue::from_str(&e))
}
