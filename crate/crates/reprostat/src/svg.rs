//! Minimal deterministic SVG 1.1 emission for contour plots.
//!
//! Coordinates are formatted with fixed precision so reruns are
//! byte-identical; styling stays at the bare minimum the plots need.

use crate::contour::{march, Polyline};
use crate::power::PowerSurface;

/// An SVG document under construction.
#[derive(Debug, Clone)]
pub struct SvgDocument {
    width: f64,
    height: f64,
    body: Vec<String>,
}

impl SvgDocument {
    pub fn new(width: f64, height: f64) -> Self {
        SvgDocument {
            width,
            height,
            body: Vec::new(),
        }
    }

    pub fn push_raw(&mut self, element: String) {
        self.body.push(element);
    }

    pub fn polyline(&mut self, points: &[(f64, f64)], stroke: &str, dashed: bool) {
        if points.len() < 2 {
            return;
        }
        let pts: Vec<String> = points
            .iter()
            .map(|&(x, y)| format!("{x:.2},{y:.2}"))
            .collect();
        let dash = if dashed {
            " stroke-dasharray=\"6,4\""
        } else {
            ""
        };
        self.body.push(format!(
            "<polyline fill=\"none\" stroke=\"{stroke}\" stroke-width=\"1\"{dash} points=\"{}\"/>",
            pts.join(" ")
        ));
    }

    pub fn line(&mut self, a: (f64, f64), b: (f64, f64), stroke: &str, dashed: bool) {
        let dash = if dashed {
            " stroke-dasharray=\"6,4\""
        } else {
            ""
        };
        self.body.push(format!(
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{stroke}\" stroke-width=\"1\"{dash}/>",
            a.0, a.1, b.0, b.1
        ));
    }

    pub fn text(&mut self, at: (f64, f64), content: &str, size: u32) {
        self.body.push(format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"monospace\" font-size=\"{size}\">{}</text>",
            at.0,
            at.1,
            escape(content)
        ));
    }

    pub fn rect(&mut self, at: (f64, f64), w: f64, h: f64, stroke: &str) {
        self.body.push(format!(
            "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{w:.2}\" height=\"{h:.2}\" fill=\"none\" stroke=\"{stroke}\"/>",
            at.0, at.1
        ));
    }

    pub fn finish(self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{:.0}\" height=\"{:.0}\" viewBox=\"0 0 {:.0} {:.0}\">\n",
            self.width, self.height, self.width, self.height
        ));
        for el in &self.body {
            out.push_str(el);
            out.push('\n');
        }
        out.push_str("</svg>\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

const MARGIN: f64 = 50.0;
const PLOT_W: f64 = 500.0;
const PLOT_H: f64 = 400.0;

struct Projection {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Projection {
    fn to_screen(&self, p: (f64, f64)) -> (f64, f64) {
        let fx = (p.0 - self.x0) / (self.x1 - self.x0);
        let fy = (p.1 - self.y0) / (self.y1 - self.y0);
        (MARGIN + fx * PLOT_W, MARGIN + (1.0 - fy) * PLOT_H)
    }
}

/// Rendered contour plot plus warnings about skipped levels.
#[derive(Debug, Clone)]
pub struct ContourPlot {
    pub svg: String,
    pub warnings: Vec<String>,
}

fn surface_paths(surface: &PowerSurface, level: f64) -> Vec<Polyline> {
    march(
        &surface.eta_axis,
        &surface.t_axis,
        |ix, iy| surface.value(ix, iy),
        level,
    )
}

/// Render the level sets of a surface as an SVG contour plot.
///
/// Levels outside the data range are skipped with a warning. When an
/// `overlay` surface is given, its unit level set is superimposed dashed
/// (the conventional "future sample size equals preliminary" reference);
/// the marker axes stored on the surface are drawn dotted either way.
pub fn render_contours(
    surface: &PowerSurface,
    levels: &[f64],
    overlay: Option<&PowerSurface>,
) -> ContourPlot {
    let mut warnings = Vec::new();
    let proj = Projection {
        x0: surface.eta_axis[0],
        x1: *surface.eta_axis.last().expect("nonempty axis"),
        y0: surface.t_axis[0],
        y1: *surface.t_axis.last().expect("nonempty axis"),
    };
    let mut doc = SvgDocument::new(PLOT_W + 2.0 * MARGIN, PLOT_H + 2.0 * MARGIN);
    doc.rect((MARGIN, MARGIN), PLOT_W, PLOT_H, "black");
    doc.text(
        (MARGIN + PLOT_W / 2.0 - 10.0, MARGIN + PLOT_H + 35.0),
        "eta",
        12,
    );
    doc.text((8.0, MARGIN + PLOT_H / 2.0), "t", 12);
    doc.text((MARGIN, MARGIN - 12.0), surface.metric.as_str(), 12);

    let (lo, hi) = (surface.min_value(), surface.max_value());
    for &level in levels {
        if !(lo..=hi).contains(&level) {
            warnings.push(format!(
                "level {level} outside data range [{lo:.4}, {hi:.4}]; omitted"
            ));
            continue;
        }
        for path in surface_paths(surface, level) {
            let pts: Vec<(f64, f64)> = path.points.iter().map(|&p| proj.to_screen(p)).collect();
            doc.polyline(&pts, "black", false);
            if !pts.is_empty() {
                let (x, y) = pts[pts.len() / 2];
                doc.text((x + 2.0, y - 2.0), &format!("{level:.3}"), 9);
            }
        }
    }

    if let Some(ratio) = overlay {
        for path in surface_paths(ratio, 1.0) {
            let pts: Vec<(f64, f64)> = path.points.iter().map(|&p| proj.to_screen(p)).collect();
            doc.polyline(&pts, "black", true);
        }
    }

    // marker axes of the conventional planning point
    if (proj.y0..=proj.y1).contains(&surface.marker_t) {
        let a = proj.to_screen((proj.x0, surface.marker_t));
        let b = proj.to_screen((proj.x1, surface.marker_t));
        doc.line(a, b, "gray", true);
    }
    if (proj.x0..=proj.x1).contains(&surface.marker_eta) {
        let a = proj.to_screen((surface.marker_eta, proj.y0));
        let b = proj.to_screen((surface.marker_eta, proj.y1));
        doc.line(a, b, "gray", true);
    }

    ContourPlot {
        svg: doc.finish(),
        warnings,
    }
}

/// Default contour levels: interior deciles of the surface's value range.
pub fn decile_levels(surface: &PowerSurface) -> Vec<f64> {
    let (lo, hi) = (surface.min_value(), surface.max_value());
    (1..10).map(|i| lo + (hi - lo) * i as f64 / 10.0).collect()
}

/// Likelihood-profile plot: a single curve of (eta, log-likelihood).
pub fn render_profile(points: &[(f64, f64)], title: &str) -> String {
    let mut doc = SvgDocument::new(PLOT_W + 2.0 * MARGIN, PLOT_H + 2.0 * MARGIN);
    doc.rect((MARGIN, MARGIN), PLOT_W, PLOT_H, "black");
    doc.text((MARGIN, MARGIN - 12.0), title, 12);
    if points.len() >= 2 {
        let finite: Vec<(f64, f64)> = points
            .iter()
            .copied()
            .filter(|p| p.0.is_finite() && p.1.is_finite())
            .collect();
        if finite.len() >= 2 {
            let x0 = finite.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
            let x1 = finite.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
            let y0 = finite.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
            let y1 = finite.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
            let proj = Projection { x0, x1, y0, y1 };
            let pts: Vec<(f64, f64)> = finite.iter().map(|&p| proj.to_screen(p)).collect();
            doc.polyline(&pts, "black", false);
        }
    }
    doc.finish()
}
