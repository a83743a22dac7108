use std::fmt::Write as _;

use fieldscope::C64;

use crate::docs::clean;

/// Fixed notation with ten significant digits.
pub fn fixed10(x: f64) -> String {
    let x = clean(x);
    if x == 0.0 || !x.is_finite() {
        return format!("{x:.9}");
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (9 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // rounding up may add a leading digit
    let rounded: f64 = s.parse().expect("formatted float");
    if decimals > 0 && rounded.abs().log10().floor() as i32 > mag {
        let decimals = decimals - 1;
        return format!("{x:.decimals$}");
    }
    s
}

/// `t,re,im` rows.
pub fn curve_csv(params: &[f64], points: &[C64]) -> String {
    let mut out = String::from("t,re,im\n");
    for (t, p) in params.iter().zip(points) {
        let _ = writeln!(out, "{},{},{}", fixed10(*t), fixed10(p.re), fixed10(p.im));
    }
    out
}

/// Rows indexed `0, 1, 2, ...`.
pub fn indexed_csv(points: &[C64]) -> String {
    let params: Vec<f64> = (0..points.len()).map(|k| k as f64).collect();
    curve_csv(&params, points)
}

/// Closed polyline for `boundary` plus a dot per entry of `dots`, fitted to
/// the view box with a 5% margin. The imaginary axis points up.
pub fn svg(boundary: &[C64], dots: &[C64]) -> String {
    let all = boundary.iter().chain(dots);
    let (mut lo_x, mut hi_x, mut lo_y, mut hi_y) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in all {
        lo_x = lo_x.min(p.re);
        hi_x = hi_x.max(p.re);
        lo_y = lo_y.min(-p.im);
        hi_y = hi_y.max(-p.im);
    }
    if lo_x > hi_x {
        (lo_x, hi_x, lo_y, hi_y) = (-1.0, 1.0, -1.0, 1.0);
    }
    let extent = (hi_x - lo_x).max(hi_y - lo_y).max(1e-9);
    let (w, h) = (
        (hi_x - lo_x).max(extent * 1e-3),
        (hi_y - lo_y).max(extent * 1e-3),
    );
    let (mx, my) = (0.05 * w, 0.05 * h);
    let (vx, vy, vw, vh) = (lo_x - mx, lo_y - my, w + 2.0 * mx, h + 2.0 * my);
    let stroke = fixed10(0.004 * extent);
    let radius = fixed10(0.003 * extent);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="512" height="{}">"#,
        fixed10(vx),
        fixed10(vy),
        fixed10(vw),
        fixed10(vh),
        (512.0 * vh / vw).round().max(1.0)
    );
    if !boundary.is_empty() {
        let mut pts: Vec<String> = boundary
            .iter()
            .map(|p| format!("{},{}", fixed10(p.re), fixed10(-p.im)))
            .collect();
        pts.push(pts[0].clone());
        let _ = writeln!(
            out,
            r#"  <polyline fill="none" stroke="black" stroke-width="{stroke}" points="{}"/>"#,
            pts.join(" ")
        );
    }
    for p in dots {
        let _ = writeln!(
            out,
            r#"  <circle cx="{}" cy="{}" r="{radius}" fill="steelblue"/>"#,
            fixed10(p.re),
            fixed10(-p.im)
        );
    }
    out.push_str("</svg>\n");
    out
}
