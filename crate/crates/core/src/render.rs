//! SVG drawings of plat diagrams.

use std::fmt::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::plat::PlatPresentation;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RenderError {
    #[error("render setting `{0}` must be positive and finite")]
    NonPositive(&'static str),
}

/// Pixel dimensions of the drawing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RenderSpec {
    pub strand_spacing: f64,
    pub crossing_height: f64,
    pub stroke_width: f64,
    pub cap_radius: f64,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec { strand_spacing: 40.0, crossing_height: 40.0, stroke_width: 3.0, cap_radius: 20.0 }
    }
}

impl RenderSpec {
    fn check(&self) -> Result<(), RenderError> {
        for (name, v) in [
            ("strand_spacing", self.strand_spacing),
            ("crossing_height", self.crossing_height),
            ("stroke_width", self.stroke_width),
            ("cap_radius", self.cap_radius),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(RenderError::NonPositive(name));
            }
        }
        Ok(())
    }
}

/// One `<g class="crossing">` per letter and one `<path class="cap">` per
/// cap or cup. Output depends only on the plat and the spec.
pub fn render_svg(p: &PlatPresentation, spec: &RenderSpec) -> Result<String, RenderError> {
    spec.check()?;
    let m = p.strands();
    let s = spec.strand_spacing;
    let h = spec.crossing_height;
    let r = spec.cap_radius;
    let margin = s / 2.0;
    let x = |strand: usize| margin + s * (strand as f64 - 1.0);
    let top = margin + r;
    let rows = p.word().len();
    let bottom = top + h * rows as f64;
    let width = 2.0 * margin + s * (m as f64 - 1.0);
    let height = bottom + r + margin;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        out,
        r#"<g fill="none" stroke="black" stroke-width="{}" stroke-linecap="round">"#,
        spec.stroke_width
    );
    for k in 0..p.bridge_index() {
        let (a, b) = (x(2 * k + 1), x(2 * k + 2));
        let rx = (b - a) / 2.0;
        let _ = writeln!(out, r#"<path class="cap" d="M {a} {top} A {rx} {r} 0 0 1 {b} {top}"/>"#);
    }
    // the under-strand stops short of the over-strand by this fraction of a row
    let gap = 0.3;
    for (row, l) in p.word().letters().iter().enumerate() {
        let y0 = top + h * row as f64;
        let y1 = y0 + h;
        let (xl, xr) = (x(l.index), x(l.index + 1));
        // a positive letter carries the top-left strand over
        let (over, under) = if l.positive { ((xl, xr), (xr, xl)) } else { ((xr, xl), (xl, xr)) };
        let _ = writeln!(out, r#"<g class="crossing">"#);
        let _ = writeln!(out, r#"<path d="M {} {y0} L {} {y1}"/>"#, over.0, over.1);
        let (ux0, ux1) = under;
        let lerp = |t: f64| (ux0 + (ux1 - ux0) * t, y0 + h * t);
        let (ax, ay) = lerp(0.5 - gap / 2.0);
        let (bx, by) = lerp(0.5 + gap / 2.0);
        let _ = writeln!(out, r#"<path d="M {ux0} {y0} L {ax} {ay}"/>"#);
        let _ = writeln!(out, r#"<path d="M {bx} {by} L {ux1} {y1}"/>"#);
        let _ = writeln!(out, "</g>");
        for strand in (1..=m).filter(|&j| j != l.index && j != l.index + 1) {
            let _ = writeln!(out, r#"<path class="strand" d="M {0} {y0} L {0} {y1}"/>"#, x(strand));
        }
    }
    for k in 0..p.bridge_index() {
        let (a, b) = (x(2 * k + 1), x(2 * k + 2));
        let rx = (b - a) / 2.0;
        let _ = writeln!(out, r#"<path class="cap" d="M {a} {bottom} A {rx} {r} 0 0 0 {b} {bottom}"/>"#);
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}
