//! Scene files: a polygon and the query points `s`, `t` and optionally `q`.
//!
//! Coordinates are JSON numbers or strings holding a decimal (at most 12
//! fractional digits) or an explicit fraction `p/q`. Both are read as exact
//! rationals; serialization writes exact strings so a scene survives a round
//! trip unchanged.

use qlink::{Point, Polygon, Scalar};
use serde_json::{json, Map, Value};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scene {
    pub name: String,
    pub polygon: Polygon,
    pub s: Point,
    pub t: Point,
    pub q: Option<Point>,
}

impl Scene {
    pub fn require_q(&self, command: &str) -> Result<&Point, CliError> {
        self.q.as_ref().ok_or_else(|| CliError::Usage(format!("`{command}` needs a scene with \"q\"")))
    }
}

pub fn parse_scene(text: &str) -> Result<Scene, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let obj = value.as_object().ok_or_else(|| CliError::Parse("scene must be a JSON object".into()))?;
    for key in obj.keys() {
        if !["name", "polygon", "s", "t", "q"].contains(&key.as_str()) {
            return Err(CliError::Parse(format!("unknown scene field \"{key}\"")));
        }
    }
    let name = match obj.get("name") {
        None => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err(CliError::Parse("\"name\" must be a string".into())),
    };
    let raw = obj
        .get("polygon")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::Parse("\"polygon\" must be an array of points".into()))?;
    let vertices = raw.iter().map(|v| point(v, "polygon")).collect::<Result<Vec<_>, _>>()?;
    let required = |key: &str| -> Result<Point, CliError> {
        point(obj.get(key).ok_or_else(|| CliError::Parse(format!("missing \"{key}\"")))?, key)
    };
    let s = required("s")?;
    let t = required("t")?;
    let q = obj.get("q").map(|v| point(v, "q")).transpose()?;

    let polygon = Polygon::new(vertices)?;
    for p in [Some(&s), Some(&t), q.as_ref()].into_iter().flatten() {
        if !polygon.locate(p).is_inside() {
            return Err(qlink::Error::PointOutside(Box::new(p.clone())).into());
        }
    }
    Ok(Scene { name, polygon, s, t, q })
}

fn point(value: &Value, field: &str) -> Result<Point, CliError> {
    match value.as_array().map(Vec::as_slice) {
        Some([x, y]) => Ok(Point::new(scalar(x, field)?, scalar(y, field)?)),
        _ => Err(CliError::Parse(format!("\"{field}\" needs [x, y] pairs"))),
    }
}

fn scalar(value: &Value, field: &str) -> Result<Scalar, CliError> {
    let text = match value {
        // Numbers keep their source text, so `0.1` is read as exactly 1/10.
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(CliError::Parse(format!("\"{field}\" coordinates must be numbers or strings"))),
    };
    Scalar::parse(&text).map_err(|e| CliError::Parse(format!("\"{field}\": {e}")))
}

pub fn exact_point(p: &Point) -> Value {
    json!([p.x().to_exact_string(), p.y().to_exact_string()])
}

/// Exact JSON text of a scene, parseable by [`parse_scene`].
pub fn serialize_scene(scene: &Scene) -> String {
    let mut obj = Map::new();
    obj.insert("name".into(), Value::String(scene.name.clone()));
    obj.insert("polygon".into(), Value::Array(scene.polygon.vertices().iter().map(exact_point).collect()));
    obj.insert("s".into(), exact_point(&scene.s));
    obj.insert("t".into(), exact_point(&scene.t));
    if let Some(q) = &scene.q {
        obj.insert("q".into(), exact_point(q));
    }
    let mut text = serde_json::to_string_pretty(&Value::Object(obj)).expect("scene serializes");
    text.push('\n');
    text
}
