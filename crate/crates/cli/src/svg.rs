//! Static SVG: the arc (dashed) and the approximant on the left, the signed
//! error `ψ(t)` on the right.

use std::fmt::Write;

use arcfit::metrics::psi;
use arcfit::{ArcSpec, BezierCurve};

/// Unit circle radius in SVG units.
pub const RADIUS: f64 = 400.0;

const WIDTH: f64 = 1400.0;
const HEIGHT: f64 = 900.0;
const MARGIN: f64 = 50.0;
const PLOT_LEFT: f64 = 900.0;
const PLOT_RIGHT: f64 = 1350.0;
const PLOT_TOP: f64 = 150.0;
const PLOT_BOTTOM: f64 = 750.0;

fn sci(v: f64) -> String {
    format!("{v:.2e}")
}

pub fn render(curve: &BezierCurve<f64>, arc: ArcSpec, samples: usize) -> String {
    let samples = samples.clamp(64, 2000);
    let phi = arc.half_angle();
    // Circle center on the left margin; the arc spans x in [cos φ, 1] ⊂ [0, 1].
    let oy = HEIGHT / 2.0;
    let to_svg = |x: f64, y: f64| (MARGIN + RADIUS * x, oy - RADIUS * y);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );

    let (x0, y0) = to_svg(phi.cos(), -phi.sin());
    let (x1, y1) = to_svg(phi.cos(), phi.sin());
    let _ = writeln!(
        s,
        r#"<path d="M {x0:.4} {y0:.4} A {RADIUS} {RADIUS} 0 0 0 {x1:.4} {y1:.4}" fill="none" stroke="gray" stroke-width="2" stroke-dasharray="8 6"/>"#
    );

    let ts: Vec<f64> = (0..samples)
        .map(|i| -1.0 + 2.0 * i as f64 / (samples - 1) as f64)
        .collect();
    let mut d = String::new();
    for (i, &t) in ts.iter().enumerate() {
        let p = curve.eval(t).expect("t in [-1, 1]");
        let (x, y) = to_svg(p.x, p.y);
        let _ = write!(d, "{}{x:.4} {y:.4} ", if i == 0 { "M " } else { "L " });
    }
    let _ = writeln!(
        s,
        r#"<path d="{}" fill="none" stroke="black" stroke-width="1.5"/>"#,
        d.trim_end()
    );
    for p in curve.control_points() {
        let (x, y) = to_svg(p.x, p.y);
        let _ = writeln!(
            s,
            r#"<circle cx="{x:.4}" cy="{y:.4}" r="4" fill="steelblue"/>"#
        );
    }

    // Error subplot.
    let errs: Vec<f64> = ts
        .iter()
        .map(|&t| psi(curve, t).expect("t in [-1, 1]"))
        .collect();
    let m = errs.iter().fold(0.0f64, |a, e| a.max(e.abs()));
    let scale = if m > 0.0 { m } else { 1.0 };
    let mid = (PLOT_TOP + PLOT_BOTTOM) / 2.0;
    let px = |t: f64| PLOT_LEFT + (t + 1.0) / 2.0 * (PLOT_RIGHT - PLOT_LEFT);
    let py = |v: f64| mid - v / scale * (PLOT_BOTTOM - PLOT_TOP) / 2.0;
    let _ = writeln!(
        s,
        r#"<line x1="{PLOT_LEFT}" y1="{mid}" x2="{PLOT_RIGHT}" y2="{mid}" stroke="gray" stroke-width="1"/>"#
    );
    let _ = writeln!(
        s,
        r#"<line x1="{PLOT_LEFT}" y1="{PLOT_TOP}" x2="{PLOT_LEFT}" y2="{PLOT_BOTTOM}" stroke="gray" stroke-width="1"/>"#
    );
    let pts: Vec<String> = ts
        .iter()
        .zip(&errs)
        .map(|(&t, &e)| format!("{:.4},{:.4}", px(t), py(e)))
        .collect();
    let _ = writeln!(
        s,
        r#"<polyline points="{}" fill="none" stroke="firebrick" stroke-width="1.5"/>"#,
        pts.join(" ")
    );
    let label_x = PLOT_LEFT - 8.0;
    for (v, y) in [(scale, PLOT_TOP), (0.0, mid), (-scale, PLOT_BOTTOM)] {
        let _ = writeln!(
            s,
            r#"<text x="{label_x}" y="{:.1}" font-family="sans-serif" font-size="14" text-anchor="end">{}</text>"#,
            y + 5.0,
            sci(v)
        );
    }
    for t in [-1.0, 0.0, 1.0] {
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="14" text-anchor="middle">{t}</text>"#,
            px(t),
            PLOT_BOTTOM + 24.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="16" text-anchor="middle">psi(t), max {}</text>"#,
        (PLOT_LEFT + PLOT_RIGHT) / 2.0,
        PLOT_TOP - 20.0,
        sci(m)
    );
    s.push_str("</svg>\n");
    s
}
