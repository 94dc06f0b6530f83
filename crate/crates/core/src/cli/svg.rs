//! Self-contained SVG plots on a fixed 800×600 canvas.

use std::fmt::Write as _;

use crate::model_operator::PseudospectrumField;
use crate::region::{sector_angle, ParabolicRegion};
use crate::ComplexPoint;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 60.0;
const CURVE_COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

/// Affine map from a window of the spectral plane to the plot area.
#[derive(Debug, Clone, Copy)]
struct Frame {
    re_min: f64,
    re_max: f64,
    im_min: f64,
    im_max: f64,
}

impl Frame {
    /// Smallest window holding `points` and the origin, padded and widened
    /// so that both axes share one scale.
    fn fitting(points: impl Iterator<Item = ComplexPoint>) -> Self {
        let (mut re_min, mut re_max, mut im_min, mut im_max) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
        for z in points.filter(|z| z.re.is_finite() && z.im.is_finite()) {
            re_min = re_min.min(z.re);
            re_max = re_max.max(z.re);
            im_min = im_min.min(z.im);
            im_max = im_max.max(z.im);
        }
        let pad = 0.08 * (re_max - re_min).max(im_max - im_min).max(1.0);
        let (mut re_min, mut re_max, mut im_min, mut im_max) =
            (re_min - pad, re_max + pad, im_min - pad, im_max + pad);
        let plot_aspect = (WIDTH - 2.0 * MARGIN) / (HEIGHT - 2.0 * MARGIN);
        let (w, h) = (re_max - re_min, im_max - im_min);
        if w / h > plot_aspect {
            let grow = (w / plot_aspect - h) / 2.0;
            im_min -= grow;
            im_max += grow;
        } else {
            let grow = (h * plot_aspect - w) / 2.0;
            re_min -= grow;
            re_max += grow;
        }
        Self {
            re_min,
            re_max,
            im_min,
            im_max,
        }
    }

    fn x(&self, re: f64) -> f64 {
        MARGIN + (re - self.re_min) / (self.re_max - self.re_min) * (WIDTH - 2.0 * MARGIN)
    }

    fn y(&self, im: f64) -> f64 {
        HEIGHT - MARGIN - (im - self.im_min) / (self.im_max - self.im_min) * (HEIGHT - 2.0 * MARGIN)
    }

    fn diagonal(&self) -> f64 {
        (self.re_max - self.re_min).hypot(self.im_max - self.im_min)
            + self.re_min.abs().max(self.re_max.abs())
    }
}

fn open(out: &mut String, title: &str) {
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(out, "<title>{}</title>", escape(title)).unwrap();
    writeln!(
        out,
        r##"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>"##
    )
    .unwrap();
    writeln!(
        out,
        r#"<defs><clipPath id="plot"><rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}"/></clipPath></defs>"#,
        WIDTH - 2.0 * MARGIN,
        HEIGHT - 2.0 * MARGIN
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{MARGIN}" y="{}" font-size="14">{}</text>"#,
        MARGIN - 24.0,
        escape(title)
    )
    .unwrap();
}

fn close(out: &mut String) {
    out.push_str("</svg>\n");
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn axes(out: &mut String, frame: &Frame) {
    writeln!(
        out,
        r##"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="#444444"/>"##,
        WIDTH - 2.0 * MARGIN,
        HEIGHT - 2.0 * MARGIN
    )
    .unwrap();
    out.push_str(r##"<g clip-path="url(#plot)" stroke="#888888" stroke-width="1">"##);
    out.push('\n');
    if frame.im_min <= 0.0 && frame.im_max >= 0.0 {
        let y = frame.y(0.0);
        writeln!(
            out,
            r#"<line x1="{MARGIN}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}"/>"#,
            WIDTH - MARGIN
        )
        .unwrap();
    }
    if frame.re_min <= 0.0 && frame.re_max >= 0.0 {
        let x = frame.x(0.0);
        writeln!(
            out,
            r#"<line x1="{x:.2}" y1="{MARGIN}" x2="{x:.2}" y2="{:.2}"/>"#,
            HEIGHT - MARGIN
        )
        .unwrap();
    }
    out.push_str("</g>\n");
    let bottom = HEIGHT - MARGIN + 16.0;
    writeln!(
        out,
        r#"<text x="{MARGIN}" y="{bottom}">{:.4}</text>"#,
        frame.re_min
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{:.2}" y="{bottom}" text-anchor="end">{:.4}</text>"#,
        WIDTH - MARGIN,
        frame.re_max
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{:.2}" y="{bottom}" text-anchor="middle">Re z</text>"#,
        WIDTH / 2.0
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{:.4}</text>"#,
        MARGIN - 4.0,
        HEIGHT - MARGIN,
        frame.im_min
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{:.4}</text>"#,
        MARGIN - 4.0,
        MARGIN + 10.0,
        frame.im_max
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="end">Im z</text>"#,
        MARGIN - 4.0,
        HEIGHT / 2.0
    )
    .unwrap();
}

fn sector_rays(out: &mut String, frame: &Frame, p: f64) {
    let Ok(theta) = sector_angle(p) else { return };
    let reach = frame.diagonal();
    let (x0, y0) = (frame.x(0.0), frame.y(0.0));
    out.push_str(
        r##"<g clip-path="url(#plot)" stroke="#ff7f0e" stroke-width="1" stroke-dasharray="6 4">"##,
    );
    out.push('\n');
    for sign in [1.0, -1.0] {
        let end = ComplexPoint::from_polar(reach, sign * theta);
        writeln!(
            out,
            r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{:.2}" y2="{:.2}"/>"#,
            frame.x(end.re),
            frame.y(end.im)
        )
        .unwrap();
    }
    out.push_str("</g>\n");
    writeln!(
        out,
        r##"<text x="{:.2}" y="{:.2}" fill="#ff7f0e">sector ±{:.6} rad</text>"##,
        WIDTH - MARGIN - 4.0,
        MARGIN + 14.0,
        theta
    )
    .unwrap();
}

fn polyline(out: &mut String, frame: &Frame, points: &[ComplexPoint], color: &str) {
    let mut coords = String::new();
    for (k, z) in points.iter().enumerate() {
        if k > 0 {
            coords.push(' ');
        }
        write!(coords, "{:.2},{:.2}", frame.x(z.re), frame.y(z.im)).unwrap();
    }
    writeln!(
        out,
        r#"<polyline clip-path="url(#plot)" fill="none" stroke="{color}" stroke-width="2" points="{coords}"/>"#
    )
    .unwrap();
}

fn vertex_marker(
    out: &mut String,
    frame: &Frame,
    region: &ParabolicRegion,
    color: &str,
    slot: usize,
) {
    let (x, y) = (frame.x(region.vertex()), frame.y(0.0));
    writeln!(
        out,
        r#"<circle cx="{x:.2}" cy="{y:.2}" r="3.5" fill="{color}"/>"#
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" fill="{color}">vertex {:.6} (rho {:.6})</text>"#,
        x + 6.0,
        y + 16.0 + 14.0 * slot as f64,
        region.vertex(),
        region.rho()
    )
    .unwrap();
}

fn eigenvalue_markers(out: &mut String, frame: &Frame, eigenvalues: &[f64]) {
    out.push_str(r##"<g clip-path="url(#plot)" stroke="#000000" stroke-width="1.5">"##);
    out.push('\n');
    let y = frame.y(0.0);
    for &lambda in eigenvalues {
        let x = frame.x(lambda);
        writeln!(
            out,
            r#"<path d="M{:.2},{:.2} L{:.2},{:.2} M{:.2},{:.2} L{:.2},{:.2}"><title>eigenvalue {lambda}</title></path>"#,
            x - 5.0,
            y - 5.0,
            x + 5.0,
            y + 5.0,
            x - 5.0,
            y + 5.0,
            x + 5.0,
            y - 5.0
        )
        .unwrap();
    }
    out.push_str("</g>\n");
}

/// Boundary curves of one or more regions sharing an exponent, with sector
/// rays, vertex labels and eigenvalue markers.
pub(super) fn region_plot(
    curves: &[(ParabolicRegion, Vec<(f64, ComplexPoint)>)],
    eigenvalues: &[f64],
) -> String {
    let frame = Frame::fitting(
        curves
            .iter()
            .flat_map(|(_, pts)| pts.iter().map(|(_, z)| *z))
            .chain(eigenvalues.iter().map(|&l| ComplexPoint::new(l, 0.0))),
    );
    let p = curves.first().map_or(f64::NAN, |(r, _)| r.p());
    let mut out = String::new();
    open(&mut out, &format!("Parabolic regions P_p, p = {p}"));
    axes(&mut out, &frame);
    sector_rays(&mut out, &frame, p);
    for (k, (region, pts)) in curves.iter().enumerate() {
        let color = CURVE_COLORS[k % CURVE_COLORS.len()];
        let points: Vec<ComplexPoint> = pts.iter().map(|(_, z)| *z).collect();
        polyline(&mut out, &frame, &points, color);
        vertex_marker(&mut out, &frame, region, color, k);
    }
    eigenvalue_markers(&mut out, &frame, eigenvalues);
    close(&mut out);
    out
}

/// Piecewise-linear map of `t ∈ [0, 1]` onto a perceptually ordered ramp.
fn heat_color(t: f64) -> String {
    const STOPS: [(f64, f64, f64); 5] = [
        (68.0, 1.0, 84.0),
        (59.0, 82.0, 139.0),
        (33.0, 145.0, 140.0),
        (94.0, 201.0, 98.0),
        (253.0, 231.0, 37.0),
    ];
    let t = if t.is_finite() {
        t.clamp(0.0, 1.0)
    } else {
        0.0
    };
    let pos = t * (STOPS.len() - 1) as f64;
    let k = (pos.floor() as usize).min(STOPS.len() - 2);
    let w = pos - k as f64;
    let lerp = |a: f64, b: f64| (a + (b - a) * w).round() as u8;
    let (a, b) = (STOPS[k], STOPS[k + 1]);
    format!(
        "#{:02x}{:02x}{:02x}",
        lerp(a.0, b.0),
        lerp(a.1, b.1),
        lerp(a.2, b.2)
    )
}

/// Heat tiles of `log10 σ_min` over the field's box, overlaid with the
/// boundary of `region` and its sector rays.
pub(super) fn pseudospectrum_plot(field: &PseudospectrumField, region: &ParabolicRegion) -> String {
    let b = field.bbox;
    let frame = Frame {
        re_min: b.re_min,
        re_max: b.re_max,
        im_min: b.im_min,
        im_max: b.im_max,
    };
    let floor = field
        .values
        .iter()
        .copied()
        .filter(|v| *v > 0.0)
        .fold(f64::INFINITY, f64::min);
    let floor = if floor.is_finite() { floor } else { 1e-300 };
    let logs: Vec<f64> = field.values.iter().map(|v| v.max(floor).log10()).collect();
    let lo = logs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = if hi > lo { hi - lo } else { 1.0 };

    let mut out = String::new();
    open(
        &mut out,
        &format!(
            "log10 sigma_min(A_h - z), p = {}, rho = {}",
            region.p(),
            region.rho()
        ),
    );
    let cell_w = (WIDTH - 2.0 * MARGIN) / (field.nx - 1) as f64;
    let cell_h = (HEIGHT - 2.0 * MARGIN) / (field.ny - 1) as f64;
    out.push_str(r#"<g clip-path="url(#plot)" shape-rendering="crispEdges">"#);
    out.push('\n');
    for j in 0..field.ny {
        for i in 0..field.nx {
            let z = field.point(i, j);
            let t = (logs[j * field.nx + i] - lo) / span;
            writeln!(
                out,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
                frame.x(z.re) - cell_w / 2.0,
                frame.y(z.im) - cell_h / 2.0,
                cell_w,
                cell_h,
                heat_color(t)
            )
            .unwrap();
        }
    }
    out.push_str("</g>\n");
    axes(&mut out, &frame);
    sector_rays(&mut out, &frame, region.p());
    let s_max = (b.re_max - region.vertex()).max(0.0).sqrt() + 1.0;
    if let Ok(samples) = region.sample_boundary(s_max, 401) {
        let points: Vec<ComplexPoint> = samples.into_iter().map(|(_, z)| z).collect();
        polyline(&mut out, &frame, &points, "#ffffff");
    }
    if frame.im_min <= 0.0
        && frame.im_max >= 0.0
        && frame.re_min <= region.vertex()
        && region.vertex() <= frame.re_max
    {
        vertex_marker(&mut out, &frame, region, "#ffffff", 0);
    }
    writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="end">log10 sigma_min in [{lo:.4}, {hi:.4}]</text>"#,
        WIDTH - MARGIN,
        HEIGHT - MARGIN + 32.0
    )
    .unwrap();
    close(&mut out);
    out
}
