//! Browser demo exports. Plain C-ABI functions returning length-prefixed
//! UTF-8 buffers, so the static page needs no generated bindings: the
//! loader reads a little-endian u32 length followed by the bytes and then
//! hands the buffer back to `demo_free`.
//!
//! Build: `cargo build -p weilspec-wasm --target wasm32-unknown-unknown --release`,
//! then serve `static/` next to the produced `weilspec_wasm.wasm`.

use std::io::Cursor;
use weilspec_core::metrics::PairingMode;
use weilspec_core::plot::{error_curve_svg, rug_svg, xi_profile_svg};
use weilspec_core::scan::{local_extrema, run_point, ScanConfig, ScanRow};
use weilspec_core::specfun::MangoldtTable;
use weilspec_core::weil::{build_xi, XiMethod};
use weilspec_core::zeros::ZerosTable;

/// The first 1000 zero ordinates ship inside the module.
const ZEROS_TEXT: &str = include_str!("../../../data/zeros1000.txt");

/// Keep interactive requests at sizes a browser tab solves in well under
/// a second.
const MAX_KAPPA: u64 = 400;
const MAX_RADIUS: u64 = 3;

fn zeros() -> ZerosTable {
    ZerosTable::read(Cursor::new(ZEROS_TEXT), "embedded").expect("embedded zero table")
}

/// Length-prefixed heap buffer handed to the host; capacity equals length.
fn encode(text: String) -> *mut u8 {
    let bytes = text.into_bytes();
    let mut buf = Vec::with_capacity(4 + bytes.len());
    buf.extend_from_slice(&(bytes.len() as u32).to_le_bytes());
    buf.extend_from_slice(&bytes);
    let boxed = buf.into_boxed_slice();
    Box::into_raw(boxed) as *mut u8
}

/// Release a buffer produced by any of the render functions.
///
/// # Safety
/// `ptr` must come from this module's `encode` and be freed exactly once.
#[no_mangle]
pub unsafe extern "C" fn demo_free(ptr: *mut u8) {
    if ptr.is_null() {
        return;
    }
    let len = u32::from_le_bytes(*(ptr as *const [u8; 4])) as usize;
    drop(Box::from_raw(std::ptr::slice_from_raw_parts_mut(
        ptr,
        4 + len,
    )));
}

fn error_svg(message: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"120\">\
         <rect width=\"900\" height=\"120\" fill=\"#fff0f0\"/>\
         <text x=\"20\" y=\"60\" font-size=\"15\" fill=\"#a00\">{message}</text></svg>"
    )
}

/// Spectrum-vs-zeros rug over `[lo, hi]` at `kappa = N = lambda`.
#[no_mangle]
pub extern "C" fn render_spectrum_rug(kappa: u32, lo: f64, hi: f64) -> *mut u8 {
    let kappa = (kappa as u64).clamp(2, MAX_KAPPA);
    let (lo, hi) = if hi > lo { (lo, hi) } else { (0.0, 60.0) };
    let table = zeros();
    let svg = match run_point(kappa, &ScanConfig::default(), &table) {
        Ok(point) => rug_svg(table.ordinates(), point.spectrum.eigenvalues(), lo, hi),
        Err(err) => error_svg(&format!("kappa = {kappa}: {err}")),
    };
    encode(svg)
}

/// Uniform-error extremum curves for `kappa = 50..kappa_to` with the
/// inverse-log reference fit.
#[no_mangle]
pub extern "C" fn render_error_curve(kappa_to: u32, step: u32, radius: u32) -> *mut u8 {
    let kappa_to = (kappa_to as u64).clamp(60, MAX_KAPPA);
    let step = (step as u64).max(10);
    let radius = (radius as u64).min(MAX_RADIUS);
    let cfg = ScanConfig {
        kappa_from: 50,
        kappa_to,
        kappa_step: step,
        scan_radius: radius,
        ..ScanConfig::default()
    };
    let table = zeros();
    let mut rows: Vec<ScanRow> = Vec::new();
    for kappa in cfg.sweep_points() {
        let point = match run_point(kappa, &cfg, &table) {
            Ok(p) => p,
            Err(err) => return encode(error_svg(&format!("kappa = {kappa}: {err}"))),
        };
        let (kappa_min, e_min, kappa_max, e_max) = if radius == 0 {
            let e = point.uniform(PairingMode::NearestEigenvalue);
            (kappa, e, kappa, e)
        } else {
            match local_extrema(kappa, radius, &cfg, &table) {
                Ok(v) => v,
                Err(err) => return encode(error_svg(&format!("scan near {kappa}: {err}"))),
            }
        };
        rows.push(ScanRow {
            kappa,
            dimension: point.spectrum.dimension(),
            epsilon_sorted: point.sorted.epsilon,
            epsilon_nearest: point.nearest.epsilon,
            uniform_sorted: point.sorted.uniform,
            uniform_nearest: point.nearest.uniform,
            bound: 0.25 / (kappa as f64).ln(),
            product: point.nearest.uniform * (kappa as f64).ln(),
            kappa_min,
            e_min,
            kappa_max,
            e_max,
            secular_fallback: point.secular_fallback,
            wall_time_ms: 0.0,
        });
    }
    encode(error_curve_svg(&rows))
}

/// Component profile of the truncated Weil vector.
#[no_mangle]
pub extern "C" fn render_xi_profile(lambda: f64, n_max: u32) -> *mut u8 {
    if !lambda.is_finite() || lambda <= 1.0 {
        return encode(error_svg("lambda must exceed 1"));
    }
    let lambda = lambda.min(MAX_KAPPA as f64);
    let n_max = (n_max as usize).clamp(1, MAX_KAPPA as usize);
    let mangoldt = MangoldtTable::sieve(lambda.ceil() as u64);
    let svg = match build_xi(lambda.ln(), n_max, &mangoldt, 1e-8, XiMethod::Riesz) {
        Ok(xi) => xi_profile_svg(xi.components(), n_max),
        Err(err) => error_svg(&format!("xi(lambda = {lambda}, N = {n_max}): {err}")),
    };
    encode(svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn decode(ptr: *mut u8) -> String {
        unsafe {
            let len = u32::from_le_bytes(*(ptr as *const [u8; 4])) as usize;
            let bytes = std::slice::from_raw_parts(ptr.add(4), len);
            let text = String::from_utf8(bytes.to_vec()).unwrap();
            demo_free(ptr);
            text
        }
    }

    #[test]
    fn embedded_table_parses() {
        let t = zeros();
        assert_eq!(t.count(), 1000);
        assert!((t.gamma(1) - 14.134725141734694).abs() < 1e-12);
    }

    #[test]
    fn rug_export_round_trips() {
        let svg = decode(render_spectrum_rug(30, 0.0, 40.0));
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("id=\"zeros\""));
        assert!(svg.contains("id=\"eigenvalues\""));
    }

    #[test]
    fn error_curve_export_round_trips() {
        let svg = decode(render_error_curve(150, 50, 0));
        assert!(svg.contains("fit:"));
    }

    #[test]
    fn xi_profile_export_round_trips() {
        let svg = decode(render_xi_profile(50.0, 25));
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("xi_k"));
    }

    #[test]
    fn invalid_input_yields_error_panel() {
        let svg = decode(render_xi_profile(0.5, 10));
        assert!(svg.contains("lambda must exceed 1"));
    }

    #[test]
    fn outputs_are_deterministic() {
        let a = decode(render_spectrum_rug(25, 0.0, 50.0));
        let b = decode(render_spectrum_rug(25, 0.0, 50.0));
        assert_eq!(a, b);
    }
}
