//! Deterministic SVG figures: the polygon, the region seen from `q` and its
//! pockets, link distance partitions, overlay cells and the chosen path.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use clap::ValueEnum;
use qlink::overlay::representative_point;
use qlink::planner::{plan, Plan};
use qlink::visibility::visibility_polygon;
use qlink::{Path, Point, Polygon, Segment, Spm};

use crate::scene::Scene;
use crate::CliError;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Layer {
    Vis,
    SpmS,
    SpmT,
    Cells,
    Path,
}

impl Layer {
    pub const ALL: [Layer; 5] = [Layer::Vis, Layer::SpmS, Layer::SpmT, Layer::Cells, Layer::Path];

    pub fn name(self) -> &'static str {
        match self {
            Layer::Vis => "vis",
            Layer::SpmS => "spm-s",
            Layer::SpmT => "spm-t",
            Layer::Cells => "cells",
            Layer::Path => "path",
        }
    }
}

const DEPTH_COLORS: [&str; 6] = ["#cfe8fc", "#d5f5d0", "#fde9c8", "#f4d0ea", "#e0d8f8", "#d0f0ee"];

/// Maps polygon coordinates to SVG user units, flipping `y` so the figure
/// reads with `y` pointing up.
struct Frame {
    flip: f64,
    unit: f64,
    view_box: String,
}

impl Frame {
    fn new(poly: &Polygon) -> Frame {
        let (x0, y0, x1, y1) = poly.bbox();
        let (w, h) = (x1 - x0, y1 - y0);
        let (mx, my) = (0.05 * w, 0.05 * h);
        Frame {
            flip: y0 + y1,
            unit: w.max(h) / 400.0,
            view_box: format!("{} {} {} {}", num(x0 - mx), num(y0 - my), num(w + 2.0 * mx), num(h + 2.0 * my)),
        }
    }

    fn xy(&self, p: &Point) -> (String, String) {
        let (x, y) = p.to_f64();
        (num(x), num(self.flip - y))
    }

    fn points(&self, ps: &[Point]) -> String {
        ps.iter()
            .map(|p| {
                let (x, y) = self.xy(p);
                format!("{x},{y}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn w(&self, k: f64) -> String {
        num(k * self.unit)
    }
}

/// Fixed-precision number text with `-0` normalized.
fn num(v: f64) -> String {
    let s = format!("{v:.4}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.0000".to_string()
    } else {
        s
    }
}

struct Svg {
    frame: Frame,
    body: String,
}

impl Svg {
    fn polygon(&mut self, poly: &Polygon, attrs: &str) {
        let pts = self.frame.points(poly.vertices());
        writeln!(self.body, r##"  <polygon points="{pts}" {attrs}/>"##).unwrap();
    }

    fn chord(&mut self, seg: &Segment, class: &str, color: &str) {
        let (x1, y1) = self.frame.xy(seg.a());
        let (x2, y2) = self.frame.xy(seg.b());
        let (w, dash) = (self.frame.w(1.5), self.frame.w(6.0));
        writeln!(
            self.body,
            r##"  <line class="window {class}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{color}" stroke-width="{w}" stroke-dasharray="{dash}"/>"##
        )
        .unwrap();
    }

    fn label(&mut self, at: &Point, text: &str, class: &str) {
        let (x, y) = self.frame.xy(at);
        let size = self.frame.w(12.0);
        writeln!(
            self.body,
            r##"  <text class="{class}" x="{x}" y="{y}" font-size="{size}" text-anchor="middle" dominant-baseline="middle">{text}</text>"##
        )
        .unwrap();
    }

    fn marker(&mut self, at: &Point, name: &str, color: &str) {
        let (x, y) = self.frame.xy(at);
        let r = self.frame.w(4.0);
        writeln!(self.body, r##"  <circle class="marker {name}" cx="{x}" cy="{y}" r="{r}" fill="{color}"/>"##).unwrap();
        let (dx, size) = (self.frame.w(6.0), self.frame.w(12.0));
        writeln!(
            self.body,
            r##"  <text class="marker-label" x="{x}" y="{y}" dx="{dx}" dy="-{dx}" font-size="{size}">{name}</text>"##
        )
        .unwrap();
    }

    fn path(&mut self, path: &Path) {
        let pts = self.frame.points(path.vertices());
        let w = self.frame.w(3.5);
        writeln!(
            self.body,
            r##"  <polyline class="path" points="{pts}" fill="none" stroke="#c0392b" stroke-width="{w}" stroke-linejoin="round"/>"##
        )
        .unwrap();
    }

    fn spm(&mut self, spm: &Spm, class: &str, color: &str) -> Result<(), CliError> {
        writeln!(self.body, r##"  <g class="{class}">"##).unwrap();
        for face in spm.faces() {
            let fill = DEPTH_COLORS[(face.depth as usize - 1) % DEPTH_COLORS.len()];
            self.polygon(&face.polygon, &format!(r##"class="face depth-{}" fill="{fill}" fill-opacity="0.6" stroke="none""##, face.depth));
            self.label(&representative_point(&face.polygon)?, &face.depth.to_string(), "depth-label");
        }
        for w in spm.windows() {
            self.chord(&w.chord, class, color);
        }
        writeln!(self.body, "  </g>").unwrap();
        Ok(())
    }
}

/// Renders the requested layers; returns the document and the layers drawn,
/// in drawing order.
pub fn render_svg(scene: &Scene, layers: &[Layer]) -> Result<(String, Vec<Layer>), CliError> {
    let layers: BTreeSet<Layer> = layers.iter().copied().collect();
    let poly = &scene.polygon;
    let need_q = layers.contains(&Layer::Vis) || layers.contains(&Layer::Cells);
    if need_q && scene.q.is_none() {
        return Err(CliError::Usage("layers vis and cells need a scene with \"q\"".into()));
    }
    let planned: Option<Plan> = match &scene.q {
        Some(q) if layers.contains(&Layer::Cells) || layers.contains(&Layer::Path) => {
            Some(plan(poly, &scene.s, &scene.t, q)?)
        }
        _ => None,
    };

    let frame = Frame::new(poly);
    let mut svg = Svg { frame, body: String::new() };
    svg.polygon(poly, r##"class="interior" fill="#ffffff" stroke="none""##);

    if layers.contains(&Layer::SpmS) {
        let spm = match &planned {
            Some(p) => p.spm_s.clone(),
            None => Spm::build(poly, &scene.s)?,
        };
        svg.spm(&spm, "spm-s", "#1f5fa8")?;
    }
    if layers.contains(&Layer::SpmT) {
        let spm = match &planned {
            Some(p) => p.spm_t().clone(),
            None => Spm::build(poly, &scene.t)?,
        };
        svg.spm(&spm, "spm-t", "#1e8449")?;
    }
    if layers.contains(&Layer::Vis) {
        let q = scene.q.as_ref().expect("checked above");
        let vis = visibility_polygon(poly, q)?;
        writeln!(svg.body, r##"  <g class="vis">"##).unwrap();
        svg.polygon(&vis.region, r##"class="visible" fill="#f7dc6f" fill-opacity="0.45" stroke="none""##);
        for pocket in &vis.pockets {
            svg.polygon(&pocket.region, r##"class="pocket" fill="url(#hatch)" stroke="none""##);
        }
        for w in &vis.windows {
            svg.chord(&w.chord, "vis", "#9a7d0a");
        }
        writeln!(svg.body, "  </g>").unwrap();
    }
    if layers.contains(&Layer::Cells) {
        if let Some(complex) = planned.as_ref().and_then(|p| p.complex.as_ref()) {
            writeln!(svg.body, r##"  <g class="cells">"##).unwrap();
            let w = svg.frame.w(1.0);
            svg.polygon(&complex.p, &format!(r##"class="subpolygon" fill="none" stroke="#7d3c98" stroke-width="{w}""##));
            for cell in &complex.cells {
                svg.polygon(&cell.polygon, &format!(r##"class="cell" fill="none" stroke="#7d3c98" stroke-width="{w}""##));
                let text = format!("{}+{}={}", cell.s_depth, cell.t_depth, cell.value);
                svg.label(&cell.representative, &text, "cell-label");
            }
            for chord in &complex.s_chords {
                svg.chord(chord, "cell-chord s", "#1f5fa8");
            }
            for chord in &complex.t_chords {
                svg.chord(chord, "cell-chord t", "#1e8449");
            }
            writeln!(svg.body, "  </g>").unwrap();
        }
    }

    let w = svg.frame.w(2.0);
    svg.polygon(poly, &format!(r##"class="boundary" fill="none" stroke="#000000" stroke-width="{w}" stroke-linejoin="round""##));

    if layers.contains(&Layer::Path) {
        match &planned {
            Some(p) => {
                svg.path(&p.result.path);
                svg.marker(&p.result.witness, "witness", "#c0392b");
            }
            None => svg.path(&Spm::build(poly, &scene.s)?.min_link_path(&scene.t)?),
        }
    }
    svg.marker(&scene.s, "s", "#1f5fa8");
    svg.marker(&scene.t, "t", "#1e8449");
    if let Some(q) = &scene.q {
        svg.marker(q, "q", "#9a7d0a");
    }

    let hatch = svg.frame.w(8.0);
    let hatch_w = svg.frame.w(1.0);
    let mut doc = String::new();
    writeln!(doc, r##"<?xml version="1.0" encoding="UTF-8"?>"##).unwrap();
    writeln!(
        doc,
        r##"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{}" width="800" height="800">"##,
        svg.frame.view_box
    )
    .unwrap();
    writeln!(doc, "  <title>{}</title>", escape(&scene.name)).unwrap();
    writeln!(
        doc,
        r##"  <defs><pattern id="hatch" patternUnits="userSpaceOnUse" width="{hatch}" height="{hatch}" patternTransform="rotate(45)"><line x1="0" y1="0" x2="0" y2="{hatch}" stroke="#7f8c8d" stroke-width="{hatch_w}"/></pattern></defs>"##
    )
    .unwrap();
    doc.push_str(&svg.body);
    doc.push_str("</svg>\n");
    Ok((doc, layers.into_iter().collect()))
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
