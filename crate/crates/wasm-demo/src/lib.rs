//! Browser bindings for three views: Husimi densities of coherent and basis
//! states, monopole harmonics on a plane grid, and Kravchuk functions with
//! the oscillator spectrum.
//!
//! The `*_values` functions are plain Rust and carry the logic; the exported
//! wrappers only convert errors into JavaScript exceptions.

use monopole_cs::grid::PlaneGrid;
use monopole_cs::gscs::{gscs_coefficients, husimi_density};
use monopole_cs::kravchuk::{function_table, oscillator_matrix};
use monopole_cs::monopole::monopole_harmonic;
use monopole_cs::{Complex64, KravchukModel, PlanePoint, SpinLevel, StateVector};
use wasm_bindgen::prelude::*;

/// Largest grid side the page may request.
pub const MAX_RESOLUTION: usize = 400;

/// Largest `N` for the Kravchuk view.
pub const MAX_N: u32 = 128;

fn plane(half_width: f64, resolution: usize) -> Result<PlaneGrid, String> {
    if resolution > MAX_RESOLUTION {
        return Err(format!("resolution is capped at {MAX_RESOLUTION}"));
    }
    PlaneGrid::new(Complex64::new(0.0, 0.0), half_width, resolution).map_err(|e| e.to_string())
}

/// Row-major `|⟨z|φ⟩|²` over the centred grid. `state` is `"gscs"` (at
/// `z0_re + i z0_im`) or `"basis"` (index `j`).
#[allow(clippy::too_many_arguments)]
pub fn husimi_values(
    two_nu: u32,
    m: u32,
    state: &str,
    j: i32,
    z0_re: f64,
    z0_im: f64,
    half_width: f64,
    resolution: usize,
) -> Result<Vec<f64>, String> {
    let level = SpinLevel::new(two_nu, m).map_err(|e| e.to_string())?;
    let phi = match state {
        "gscs" => {
            let z0 = PlanePoint::new(z0_re, z0_im).map_err(|e| e.to_string())?;
            gscs_coefficients(level, z0)
        }
        "basis" => StateVector::basis(level, j as i64).map_err(|e| e.to_string())?,
        other => return Err(format!("unknown state kind {other:?}")),
    };
    Ok(plane(half_width, resolution)?
        .points()
        .map(|z| husimi_density(&phi, z))
        .collect())
}

/// Row-major `(|Φ̃_j|, arg Φ̃_j)` pairs, flattened.
pub fn harmonic_values(
    two_nu: u32,
    m: u32,
    j: i32,
    half_width: f64,
    resolution: usize,
) -> Result<Vec<f64>, String> {
    let level = SpinLevel::new(two_nu, m).map_err(|e| e.to_string())?;
    let mut out = Vec::with_capacity(2 * resolution * resolution);
    for z in plane(half_width, resolution)?.points() {
        let v = monopole_harmonic(level, j as i64, z).map_err(|e| e.to_string())?;
        out.push(v.norm());
        out.push(v.arg());
    }
    Ok(out)
}

fn model(n: u32, p: &str) -> Result<KravchukModel, String> {
    if n > MAX_N {
        return Err(format!("N is capped at {MAX_N}"));
    }
    KravchukModel::parse(n, p).map_err(|e| e.to_string())
}

/// `φ_k(x_j)` flattened with `k` as the row index, `(N+1)²` values.
pub fn kravchuk_function_values(n: u32, p: &str) -> Result<Vec<f64>, String> {
    let t = function_table(&model(n, p)?);
    Ok((0..t.nrows())
        .flat_map(|k| t.row(k).iter().copied().collect::<Vec<_>>())
        .collect())
}

pub fn kravchuk_grid_values(n: u32, p: &str) -> Result<Vec<f64>, String> {
    Ok(model(n, p)?.grid())
}

pub fn kravchuk_spectrum_values(n: u32, p: &str) -> Result<Vec<f64>, String> {
    Ok(oscillator_matrix(&model(n, p)?).eigenvalues())
}

fn js(e: String) -> JsValue {
    JsValue::from_str(&e)
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn husimi_grid(
    two_nu: u32,
    m: u32,
    state: &str,
    j: i32,
    z0_re: f64,
    z0_im: f64,
    half_width: f64,
    resolution: usize,
) -> Result<Vec<f64>, JsValue> {
    husimi_values(two_nu, m, state, j, z0_re, z0_im, half_width, resolution).map_err(js)
}

#[wasm_bindgen]
pub fn harmonic_grid(
    two_nu: u32,
    m: u32,
    j: i32,
    half_width: f64,
    resolution: usize,
) -> Result<Vec<f64>, JsValue> {
    harmonic_values(two_nu, m, j, half_width, resolution).map_err(js)
}

#[wasm_bindgen]
pub fn kravchuk_functions(n: u32, p: &str) -> Result<Vec<f64>, JsValue> {
    kravchuk_function_values(n, p).map_err(js)
}

#[wasm_bindgen]
pub fn kravchuk_grid(n: u32, p: &str) -> Result<Vec<f64>, JsValue> {
    kravchuk_grid_values(n, p).map_err(js)
}

#[wasm_bindgen]
pub fn kravchuk_spectrum(n: u32, p: &str) -> Result<Vec<f64>, JsValue> {
    kravchuk_spectrum_values(n, p).map_err(js)
}
