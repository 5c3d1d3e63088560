//! Static SVG figures: the error-vs-kappa curve with an inverse-log
//! reference fit, and spectrum/zero rug plots.

use crate::scan::ScanRow;
use std::fmt::Write;

const WIDTH: f64 = 900.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;

/// Least-squares constant for `E ~ c / ln kappa` on the reciprocal-log
/// scale: regress `E` on `x = 1/ln kappa` through the origin.
pub fn fit_inverse_log(points: &[(f64, f64)]) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for &(kappa, e) in points {
        let x = 1.0 / kappa.ln();
        num += x * e;
        den += x * x;
    }
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

struct Frame {
    x_lo: f64,
    x_hi: f64,
    y_lo: f64,
    y_hi: f64,
}

impl Frame {
    fn x(&self, v: f64) -> f64 {
        MARGIN + (v - self.x_lo) / (self.x_hi - self.x_lo) * (WIDTH - 2.0 * MARGIN)
    }
    fn y(&self, v: f64) -> f64 {
        HEIGHT - MARGIN - (v - self.y_lo) / (self.y_hi - self.y_lo) * (HEIGHT - 2.0 * MARGIN)
    }
}

fn svg_open(out: &mut String) {
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n\
         <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>"
    );
}

fn axes(out: &mut String, frame: &Frame, x_label: &str, y_label: &str) {
    let x0 = frame.x(frame.x_lo);
    let x1 = frame.x(frame.x_hi);
    let y0 = frame.y(frame.y_lo);
    let y1 = frame.y(frame.y_hi);
    let _ = writeln!(
        out,
        "<line x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x1:.2}\" y2=\"{y0:.2}\" stroke=\"black\"/>\n\
         <line x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x0:.2}\" y2=\"{y1:.2}\" stroke=\"black\"/>\n\
         <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"14\" text-anchor=\"middle\">{x_label}</text>\n\
         <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"14\" text-anchor=\"middle\" \
         transform=\"rotate(-90 {:.2} {:.2})\">{y_label}</text>",
        0.5 * (x0 + x1),
        HEIGHT - 16.0,
        18.0,
        0.5 * (y0 + y1),
        18.0,
        0.5 * (y0 + y1),
    );
    // Simple tick labels at the corners of the data range.
    let _ = writeln!(
        out,
        "<text x=\"{x0:.2}\" y=\"{:.2}\" font-size=\"11\" text-anchor=\"middle\">{:.4}</text>\n\
         <text x=\"{x1:.2}\" y=\"{:.2}\" font-size=\"11\" text-anchor=\"middle\">{:.4}</text>\n\
         <text x=\"{:.2}\" y=\"{y0:.2}\" font-size=\"11\" text-anchor=\"end\">{:.4}</text>\n\
         <text x=\"{:.2}\" y=\"{y1:.2}\" font-size=\"11\" text-anchor=\"end\">{:.4}</text>",
        HEIGHT - MARGIN + 16.0,
        frame.x_lo,
        HEIGHT - MARGIN + 16.0,
        frame.x_hi,
        MARGIN - 6.0,
        frame.y_lo,
        MARGIN - 6.0,
        frame.y_hi,
    );
}

fn polyline(out: &mut String, frame: &Frame, pts: &[(f64, f64)], color: &str, dash: &str) {
    if pts.is_empty() {
        return;
    }
    let mut path = String::new();
    for &(x, y) in pts {
        let _ = write!(path, "{:.2},{:.2} ", frame.x(x), frame.y(y));
    }
    let dash_attr = if dash.is_empty() {
        String::new()
    } else {
        format!(" stroke-dasharray=\"{dash}\"")
    };
    let _ = writeln!(
        out,
        "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"{dash_attr}/>",
        path.trim_end()
    );
}

/// Figure in the style of an extremum sweep: `e_min` and `e_max` against
/// kappa, with the fitted reference curve `c / ln kappa` overlaid. The
/// reference is always labelled as a fit, never as external ground truth.
pub fn error_curve_svg(rows: &[ScanRow]) -> String {
    let mut out = String::new();
    svg_open(&mut out);
    if rows.is_empty() {
        out.push_str("</svg>\n");
        return out;
    }
    let x_lo = rows.first().unwrap().kappa as f64;
    let x_hi = rows.last().unwrap().kappa as f64;
    let y_hi = rows
        .iter()
        .map(|r| r.e_max)
        .fold(f64::NEG_INFINITY, f64::max)
        * 1.1;
    let frame = Frame {
        x_lo,
        x_hi: x_hi.max(x_lo + 1.0),
        y_lo: 0.0,
        y_hi: y_hi.max(1e-12),
    };
    axes(&mut out, &frame, "kappa", "uniform error");

    let min_pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.kappa as f64, r.e_min)).collect();
    let max_pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.kappa as f64, r.e_max)).collect();
    polyline(&mut out, &frame, &min_pts, "#1f77b4", "");
    polyline(&mut out, &frame, &max_pts, "#d62728", "");
    for &(x, y) in min_pts.iter().chain(&max_pts) {
        let _ = writeln!(
            out,
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.2\" fill=\"#333\"/>",
            frame.x(x),
            frame.y(y)
        );
    }

    // Reference fit on the max curve.
    let c = fit_inverse_log(&max_pts);
    let fit_pts: Vec<(f64, f64)> = (0..=120)
        .map(|i| {
            let k = x_lo + (x_hi - x_lo) * i as f64 / 120.0;
            (k, c / k.ln())
        })
        .collect();
    polyline(&mut out, &frame, &fit_pts, "#2ca02c", "6 4");
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"13\" fill=\"#2ca02c\">fit: {c:.4}/ln kappa</text>\n\
         <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"13\" fill=\"#1f77b4\">E_min</text>\n\
         <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"13\" fill=\"#d62728\">E_max</text>",
        WIDTH - 260.0,
        MARGIN + 18.0,
        WIDTH - 260.0,
        MARGIN + 36.0,
        WIDTH - 260.0,
        MARGIN + 54.0,
    );
    out.push_str("</svg>\n");
    out
}

/// Rug plot over `[lo, hi]`: zero ordinates as ticks on the upper row,
/// eigenvalues on the lower row.
pub fn rug_svg(zeros: &[f64], eigenvalues: &[f64], lo: f64, hi: f64) -> String {
    let mut out = String::new();
    svg_open(&mut out);
    let frame = Frame {
        x_lo: lo,
        x_hi: hi.max(lo + 1e-9),
        y_lo: 0.0,
        y_hi: 1.0,
    };
    axes(&mut out, &frame, "ordinate", "");
    let y_mid = frame.y(0.5);
    let _ = writeln!(
        out,
        "<line x1=\"{:.2}\" y1=\"{y_mid:.2}\" x2=\"{:.2}\" y2=\"{y_mid:.2}\" \
         stroke=\"#bbb\" stroke-width=\"0.7\"/>",
        frame.x(lo),
        frame.x(hi)
    );
    out.push_str("<g id=\"zeros\" stroke=\"#d62728\" stroke-width=\"1.2\">\n");
    for &z in zeros.iter().filter(|&&z| z >= lo && z <= hi) {
        let x = frame.x(z);
        let _ = writeln!(
            out,
            "<line x1=\"{x:.2}\" y1=\"{:.2}\" x2=\"{x:.2}\" y2=\"{y_mid:.2}\"/>",
            frame.y(0.92)
        );
    }
    out.push_str(
        "</g>\n<g id=\"eigenvalues\" stroke=\"#1f77b4\" stroke-width=\"1.2\" \
                  stroke-dasharray=\"3 2\">\n",
    );
    for &v in eigenvalues.iter().filter(|&&v| v >= lo && v <= hi) {
        let x = frame.x(v);
        let _ = writeln!(
            out,
            "<line x1=\"{x:.2}\" y1=\"{y_mid:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\"/>",
            frame.y(0.08)
        );
    }
    out.push_str("</g>\n");
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"13\" fill=\"#d62728\">zeros</text>\n\
         <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"13\" fill=\"#1f77b4\">eigenvalues</text>",
        WIDTH - 150.0,
        MARGIN + 18.0,
        WIDTH - 150.0,
        MARGIN + 36.0,
    );
    out.push_str("</svg>\n");
    out
}

/// Profile of the Weil-vector components against the mode index.
pub fn xi_profile_svg(components: &[f64], n_max: usize) -> String {
    let mut out = String::new();
    svg_open(&mut out);
    if components.is_empty() {
        out.push_str("</svg>\n");
        return out;
    }
    let y_lo = components.iter().cloned().fold(f64::INFINITY, f64::min);
    let y_hi = components.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let pad = 0.1 * (y_hi - y_lo).max(1e-12);
    let frame = Frame {
        x_lo: -(n_max as f64),
        x_hi: n_max as f64,
        y_lo: y_lo - pad,
        y_hi: y_hi + pad,
    };
    axes(&mut out, &frame, "mode index k", "xi_k");
    let pts: Vec<(f64, f64)> = components
        .iter()
        .enumerate()
        .map(|(i, &v)| (i as f64 - n_max as f64, v))
        .collect();
    polyline(&mut out, &frame, &pts, "#1f77b4", "");
    out.push_str("</svg>\n");
    out
}
