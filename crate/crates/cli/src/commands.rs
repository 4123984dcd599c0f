//! Argument parsing and command dispatch. Every command prints one JSON
//! document; coordinates are decimal strings rounded half-to-even to nine
//! fractional digits.

use std::ffi::OsString;
use std::path::{Path as FsPath, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use qlink::oracle::{oracle_link_distance, oracle_q_visible_distance};
use qlink::overlay::CellComplex;
use qlink::planner::plan;
use qlink::{Location, Path, Point, Polygon, Scalar, Spm};
use serde_json::{json, Value};

use crate::render::{render_svg, Layer};
use crate::scene::{parse_scene, Scene};
use crate::CliError;

/// Decimal places for coordinates in command output.
pub const OUTPUT_PLACES: usize = 9;

#[derive(Parser, Debug)]
#[command(name = "qlink", version, about = "Minimum link paths that must see a target point")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a scene and summarize it.
    Check { scene: PathBuf },
    /// Minimum link path from s to t.
    Linkpath { scene: PathBuf },
    /// Minimum link path from s to t that meets the region seen from q.
    Qpath { scene: PathBuf },
    /// Faces of the link distance partition from one scene point.
    Spm {
        scene: PathBuf,
        #[arg(long, value_enum)]
        source: SourceArg,
    },
    /// Cells of the overlay used when s and t share a pocket of q.
    Overlay { scene: PathBuf },
    /// Brute-force grid link distance from s to t.
    Oracle {
        scene: PathBuf,
        #[arg(long)]
        resolution: String,
        /// Only count walks that meet the region seen from q.
        #[arg(long)]
        q_visible: bool,
    },
    /// Write an SVG figure of the scene.
    Render {
        scene: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = Layer::ALL)]
        layers: Vec<Layer>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SourceArg {
    S,
    T,
    Q,
}

/// Runs one command and returns its standard output.
pub fn run<I, T>(argv: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => return Ok(e.to_string()),
        Err(e) => return Err(CliError::Usage(e.to_string())),
    };
    let value = match cli.command {
        Command::Check { scene } => check(&load(&scene)?),
        Command::Linkpath { scene } => linkpath(&load(&scene)?)?,
        Command::Qpath { scene } => qpath(&load(&scene)?)?,
        Command::Spm { scene, source } => spm(&load(&scene)?, source)?,
        Command::Overlay { scene } => overlay(&load(&scene)?)?,
        Command::Oracle { scene, resolution, q_visible } => oracle(&load(&scene)?, &resolution, q_visible)?,
        Command::Render { scene, layers, out } => render(&load(&scene)?, &layers, &out)?,
    };
    let mut text = serde_json::to_string_pretty(&value).expect("JSON output serializes");
    text.push('\n');
    Ok(text)
}

fn load(path: &FsPath) -> Result<Scene, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_scene(&text)
}

pub fn coord(v: &Scalar) -> Value {
    Value::String(v.to_decimal(OUTPUT_PLACES))
}

pub fn point(p: &Point) -> Value {
    json!([coord(p.x()), coord(p.y())])
}

fn points(ps: &[Point]) -> Value {
    Value::Array(ps.iter().map(point).collect())
}

fn path_json(path: &Path) -> Value {
    points(path.vertices())
}

fn location(loc: Location) -> &'static str {
    match loc {
        Location::Interior => "interior",
        Location::Boundary => "boundary",
        Location::Exterior => "exterior",
    }
}

fn check(scene: &Scene) -> Value {
    let poly = &scene.polygon;
    let reflex = (0..poly.len()).filter(|&i| poly.is_reflex(i)).count();
    let mut located = serde_json::Map::new();
    for (key, p) in [("s", Some(&scene.s)), ("t", Some(&scene.t)), ("q", scene.q.as_ref())] {
        if let Some(p) = p {
            located.insert(key.into(), json!(location(poly.locate(p))));
        }
    }
    json!({
        "name": scene.name,
        "valid": true,
        "vertices": poly.len(),
        "reflex_vertices": reflex,
        "area": coord(&poly.area()),
        "points": located,
    })
}

fn linkpath(scene: &Scene) -> Result<Value, CliError> {
    let spm = Spm::build(&scene.polygon, &scene.s)?;
    let path = spm.min_link_path(&scene.t)?;
    Ok(json!({ "distance": path.link_count(), "path": path_json(&path) }))
}

fn qpath(scene: &Scene) -> Result<Value, CliError> {
    let q = scene.require_q("qpath")?;
    let r = qlink::q_visible_path(&scene.polygon, &scene.s, &scene.t, q)?;
    if !qlink::verify(&scene.polygon, q, &r) {
        return Err(CliError::Internal("planner output failed verification".into()));
    }
    Ok(json!({
        "case": r.case.as_str(),
        "distance": r.distance,
        "path": path_json(&r.path),
        "witness": point(&r.witness),
        "cell_value": r.cell_value,
    }))
}

fn spm(scene: &Scene, source: SourceArg) -> Result<Value, CliError> {
    let x = match source {
        SourceArg::S => &scene.s,
        SourceArg::T => &scene.t,
        SourceArg::Q => scene.require_q("spm --source q")?,
    };
    let spm = Spm::build(&scene.polygon, x)?;
    let faces: Vec<Value> = spm
        .faces()
        .iter()
        .map(|f| {
            json!({
                "id": f.id,
                "depth": f.depth,
                "parent": f.parent_face,
                "window": f.parent_window.as_ref().map(|w| json!([point(&w.anchor), point(&w.far_end)])),
                "polygon": points(f.polygon.vertices()),
            })
        })
        .collect();
    Ok(json!({ "source": point(x), "max_depth": spm.max_depth(), "faces": faces }))
}

fn complex_json(complex: &CellComplex) -> Value {
    let cells: Vec<Value> = complex
        .cells
        .iter()
        .map(|c| {
            json!({
                "id": c.id,
                "s_depth": c.s_depth,
                "t_depth": c.t_depth,
                "value": c.value,
                "representative": point(&c.representative),
                "polygon": points(c.polygon.vertices()),
            })
        })
        .collect();
    let best = qlink::overlay::min_cell(complex).map(|(id, value)| json!({ "id": id, "value": value }));
    json!({
        "subpolygon": points(complex.p.vertices()),
        "k1": complex.k1,
        "k2": complex.k2,
        "crossing_count": complex.crossing_count,
        "max_window_crossings": complex.max_window_crossings,
        "euler_bound": complex.euler_bound(),
        "nine_quarters_bound": complex.nine_quarters_bound(),
        "cells": cells,
        "min_cell": best,
    })
}

fn overlay(scene: &Scene) -> Result<Value, CliError> {
    let q = scene.require_q("overlay")?;
    let plan = plan(&scene.polygon, &scene.s, &scene.t, q)?;
    Ok(json!({
        "case": plan.result.case.as_str(),
        "complex": plan.complex.as_ref().map(complex_json),
    }))
}

fn oracle(scene: &Scene, resolution: &str, q_visible: bool) -> Result<Value, CliError> {
    let res = Scalar::parse(resolution).map_err(|e| CliError::Usage(format!("--resolution: {e}")))?;
    if !res.is_positive() {
        return Err(CliError::Usage("--resolution must be positive".into()));
    }
    let poly: &Polygon = &scene.polygon;
    let distance = if q_visible {
        let q = scene.require_q("oracle --q-visible")?;
        oracle_q_visible_distance(poly, &scene.s, &scene.t, q, &res)?
    } else {
        oracle_link_distance(poly, &scene.s, &scene.t, &res)?
    };
    Ok(json!({
        "resolution": res.to_exact_string(),
        "q_visible": q_visible,
        "distance": distance,
    }))
}

fn render(scene: &Scene, layers: &[Layer], out: &FsPath) -> Result<Value, CliError> {
    let (svg, used) = render_svg(scene, layers)?;
    std::fs::write(out, &svg).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", out.display())))?;
    Ok(json!({
        "out": out.display().to_string(),
        "layers": used.iter().map(|l| l.name()).collect::<Vec<_>>(),
        "bytes": svg.len(),
    }))
}
