//! Minimal SVG line plots: one polyline with axes, nothing load-bearing.

use lagline_response::ResponseCurve;

const W: f64 = 640.0;
const H: f64 = 400.0;
const MARGIN: f64 = 48.0;

pub fn curve_svg(curve: &ResponseCurve, title: &str) -> String {
    let values: Vec<(i32, f64)> = ResponseCurve::lags().map(|k| (k, curve.value(k))).collect();
    let v_min = values
        .iter()
        .map(|&(_, v)| v)
        .fold(f64::INFINITY, f64::min)
        .min(0.0);
    let v_max = values
        .iter()
        .map(|&(_, v)| v)
        .fold(f64::NEG_INFINITY, f64::max)
        .max(v_min + 1e-9);

    let x = |lag: i32| MARGIN + (lag + 30) as f64 / 60.0 * (W - 2.0 * MARGIN);
    let y = |v: f64| H - MARGIN - (v - v_min) / (v_max - v_min) * (H - 2.0 * MARGIN);

    let points: Vec<String> = values
        .iter()
        .map(|&(k, v)| format!("{:.2},{:.2}", x(k), y(v)))
        .collect();

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n"
    ));
    svg.push_str(&format!(
        "<text x=\"{:.0}\" y=\"20\" font-size=\"14\">{title}</text>\n",
        MARGIN
    ));
    // Axes: x at value zero, y at lag zero.
    svg.push_str(&format!(
        "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#888\"/>\n",
        x(-30),
        y(0.0),
        x(30),
        y(0.0)
    ));
    svg.push_str(&format!(
        "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#888\"/>\n",
        x(0),
        MARGIN,
        x(0),
        H - MARGIN
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\">lag ms</text>\n",
        W - MARGIN,
        y(0.0) - 6.0
    ));
    svg.push_str(&format!(
        "<polyline fill=\"none\" stroke=\"#1763a6\" stroke-width=\"1.5\" points=\"{}\"/>\n",
        points.join(" ")
    ));
    svg.push_str("</svg>\n");
    svg
}
