use serde_json::{json, Value};

use super::{GeometryError, MetricGraph, PathDescriptor, Point, Side, Space, WedgeSpace};

fn malformed(msg: impl Into<String>) -> GeometryError {
    GeometryError::Malformed(msg.into())
}

fn get_usize(v: &Value, key: &str) -> Result<usize, GeometryError> {
    v.get(key)
        .and_then(Value::as_u64)
        .map(|n| n as usize)
        .ok_or_else(|| malformed(format!("missing non-negative integer field `{key}`")))
}

/// Parses `{"type": "sphere", "n": 2}` and friends.
pub fn space_from_json(v: &Value) -> Result<Space, GeometryError> {
    let kind = v.get("type").and_then(Value::as_str).ok_or_else(|| malformed("space needs a `type`"))?;
    let space = match kind {
        "circle" => Space::Circle,
        "sphere" => Space::Sphere(get_usize(v, "n")?),
        "projective" => Space::RealProjective(get_usize(v, "n")?),
        "torus" => Space::Torus(get_usize(v, "m")?),
        "graph" => {
            let raw = v.get("edges").and_then(Value::as_array).ok_or_else(|| malformed("graph needs `edges`"))?;
            let mut edges = Vec::with_capacity(raw.len());
            for e in raw {
                let parts = e.as_array().filter(|a| a.len() == 3).ok_or_else(|| malformed("edge must be [u, v, len]"))?;
                let u = parts[0].as_u64().ok_or_else(|| malformed("edge endpoint must be an integer"))? as usize;
                let w = parts[1].as_u64().ok_or_else(|| malformed("edge endpoint must be an integer"))? as usize;
                let len = parts[2].as_f64().ok_or_else(|| malformed("edge length must be a number"))?;
                edges.push((u, w, len));
            }
            let inferred = edges.iter().map(|e| e.0.max(e.1) + 1).max().unwrap_or(0);
            let vertices = match v.get("vertices") {
                Some(n) => n.as_u64().ok_or_else(|| malformed("`vertices` must be an integer"))? as usize,
                None => inferred,
            };
            Space::MetricGraph(MetricGraph::new(vertices, edges)?)
        }
        "product" => {
            let raw = v.get("factors").and_then(Value::as_array).ok_or_else(|| malformed("product needs `factors`"))?;
            Space::Product(raw.iter().map(space_from_json).collect::<Result<_, _>>()?)
        }
        "wedge" => {
            let left = space_from_json(v.get("left").ok_or_else(|| malformed("wedge needs `left`"))?)?;
            let right = space_from_json(v.get("right").ok_or_else(|| malformed("wedge needs `right`"))?)?;
            let left_base = match v.get("left_base") {
                Some(p) => point_from_json(&left, p)?,
                None => left.basepoint(),
            };
            let right_base = match v.get("right_base") {
                Some(p) => point_from_json(&right, p)?,
                None => right.basepoint(),
            };
            Space::Wedge(Box::new(WedgeSpace { left, right, left_base, right_base }))
        }
        other => return Err(malformed(format!("unknown space type `{other}`"))),
    };
    space.validate()?;
    Ok(space)
}

pub fn space_to_json(space: &Space) -> Value {
    match space {
        Space::Circle => json!({"type": "circle"}),
        Space::Sphere(n) => json!({"type": "sphere", "n": n}),
        Space::RealProjective(n) => json!({"type": "projective", "n": n}),
        Space::Torus(m) => json!({"type": "torus", "m": m}),
        Space::MetricGraph(g) => json!({
            "type": "graph",
            "vertices": g.vertex_count(),
            "edges": g.edges().iter().map(|&(u, v, l)| json!([u, v, l])).collect::<Vec<_>>(),
        }),
        Space::Product(f) => json!({"type": "product", "factors": f.iter().map(space_to_json).collect::<Vec<_>>()}),
        Space::Wedge(w) => json!({
            "type": "wedge",
            "left": space_to_json(&w.left),
            "right": space_to_json(&w.right),
            "left_base": point_to_json(&w.left_base),
            "right_base": point_to_json(&w.right_base),
        }),
    }
}

fn numbers(v: &Value) -> Result<Vec<f64>, GeometryError> {
    v.as_array()
        .ok_or_else(|| malformed("expected an array of numbers"))?
        .iter()
        .map(|x| x.as_f64().ok_or_else(|| malformed("expected a number")))
        .collect()
}

/// Parses a point for `space` and brings it to canonical form.
///
/// Vector-valued spaces and tori take a coordinate array (vectors are
/// normalized), graphs take `{"edge": e, "t": t}` or `{"vertex": v}`, products
/// an array of factor points and wedges `{"side": "left", "point": ...}`.
pub fn point_from_json(space: &Space, v: &Value) -> Result<Point, GeometryError> {
    let raw = match space {
        Space::Circle | Space::Sphere(_) | Space::RealProjective(_) => Point::Vector(numbers(v)?),
        Space::Torus(_) => Point::Torus(numbers(v)?),
        Space::MetricGraph(g) => {
            if let Some(vertex) = v.get("vertex") {
                let vertex = vertex.as_u64().ok_or_else(|| malformed("`vertex` must be an integer"))? as usize;
                if vertex >= g.vertex_count() {
                    return Err(GeometryError::MismatchedSpace(format!("no vertex {vertex}")));
                }
                g.vertex_point(vertex)
            } else {
                let edge = get_usize(v, "edge")?;
                let t = v.get("t").and_then(Value::as_f64).ok_or_else(|| malformed("graph point needs `t`"))?;
                Point::Graph { edge, t }
            }
        }
        Space::Product(factors) => {
            let parts = v.as_array().ok_or_else(|| malformed("product point must be an array"))?;
            if parts.len() != factors.len() {
                return Err(GeometryError::MismatchedSpace("wrong number of product coordinates".into()));
            }
            Point::Tuple(factors.iter().zip(parts).map(|(s, p)| point_from_json(s, p)).collect::<Result<_, _>>()?)
        }
        Space::Wedge(w) => {
            let side = match v.get("side").and_then(Value::as_str) {
                Some("left") => Side::Left,
                Some("right") => Side::Right,
                _ => return Err(malformed("wedge point needs `side` left|right")),
            };
            let (factor, _) = w.factor(side);
            let inner = point_from_json(factor, v.get("point").ok_or_else(|| malformed("wedge point needs `point`"))?)?;
            Point::Wedge { side, point: Box::new(inner) }
        }
    };
    space.normalize(&raw)
}

pub fn point_to_json(p: &Point) -> Value {
    match p {
        Point::Vector(v) | Point::Torus(v) => json!(v),
        Point::Graph { edge, t } => json!({"edge": edge, "t": t}),
        Point::Tuple(ps) => Value::Array(ps.iter().map(point_to_json).collect()),
        Point::Wedge { side, point } => json!({
            "side": if *side == Side::Left { "left" } else { "right" },
            "point": point_to_json(point),
        }),
    }
}

/// `{"t": [...], "points": [...]}` on an equally spaced grid.
pub fn sampled_path_json(path: &PathDescriptor, samples: usize) -> Result<Value, GeometryError> {
    let n = samples.max(2);
    let mut ts = Vec::with_capacity(n);
    let mut points = Vec::with_capacity(n);
    for k in 0..n {
        let t = k as f64 / (n - 1) as f64;
        ts.push(json!(t));
        points.push(point_to_json(&path.eval(t)?));
    }
    Ok(json!({"t": ts, "points": points}))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_spaces() {
        for text in [
            r#"{"type":"sphere","n":2}"#,
            r#"{"type":"graph","edges":[[0,1,1.0],[1,2,0.5]]}"#,
            r#"{"type":"product","factors":[{"type":"circle"},{"type":"torus","m":2}]}"#,
            r#"{"type":"wedge","left":{"type":"circle"},"right":{"type":"sphere","n":2}}"#,
        ] {
            let v: Value = serde_json::from_str(text).unwrap();
            let s = space_from_json(&v).unwrap();
            assert_eq!(space_from_json(&space_to_json(&s)).unwrap(), s);
        }
    }

    #[test]
    fn bad_spaces() {
        for text in [r#"{"type":"sphere","n":0}"#, r#"{"type":"blob"}"#, r#"{"type":"graph","edges":[[0,1]]}"#] {
            let v: Value = serde_json::from_str(text).unwrap();
            assert!(space_from_json(&v).is_err(), "{text}");
        }
    }

    #[test]
    fn points_are_normalized() {
        let s = Space::RealProjective(2);
        let p = point_from_json(&s, &json!([0.0, -2.0, 0.0])).unwrap();
        assert_eq!(p, Point::Vector(vec![0.0, 1.0, 0.0]));
        assert!(point_from_json(&s, &json!([1.0, 0.0])).is_err());
    }

    #[test]
    fn sampled_export() {
        let p = PathDescriptor::torus_linear(vec![0.0], vec![0.5]);
        let v = sampled_path_json(&p, 3).unwrap();
        assert_eq!(v["t"], json!([0.0, 0.5, 1.0]));
        assert_eq!(v["points"][2], json!([0.5]));
    }
}
