//! Model metric spaces, path descriptors and distributed paths.

mod distributed;
mod graph;
mod json;
mod path;

use std::f64::consts::PI;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::measure::{MeasureError, MetricOracle};

pub use distributed::{path_sup_distance, DistributedPath, DEFAULT_SUP_SAMPLES, ENDPOINT_TOLERANCE};
pub use graph::{EdgeSegment, MetricGraph};
pub use json::{point_from_json, point_to_json, sampled_path_json, space_from_json, space_to_json};
pub use path::{Covering, PathDescriptor, PointMap, LIFT_STEPS};

/// Points closer than this are the same atom.
pub const MERGE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("point does not belong to the space ({0})")]
    MismatchedSpace(String),
    #[error("path parameter {0} outside [0,1]")]
    ParameterOutOfRange(f64),
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("path lifting step too coarse: {0}")]
    LiftStepTooCoarse(String),
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A point of one of the model spaces. Coordinates are matched to the space
/// variant: unit vectors for circles, spheres and projective spaces (the
/// projective representative has its first nonzero coordinate positive),
/// coordinates in [0,1)^m for tori, an edge position for graphs, tuples for
/// products, and a tagged factor point for wedges.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Point {
    Vector(Vec<f64>),
    Torus(Vec<f64>),
    Graph { edge: usize, t: f64 },
    Tuple(Vec<Point>),
    Wedge { side: Side, point: Box<Point> },
}

impl Point {
    pub fn vector(&self) -> Option<&[f64]> {
        match self {
            Point::Vector(v) => Some(v),
            _ => None,
        }
    }

    pub fn torus(&self) -> Option<&[f64]> {
        match self {
            Point::Torus(v) => Some(v),
            _ => None,
        }
    }

    pub fn unit(dim: usize, axis: usize) -> Point {
        let mut v = vec![0.0; dim];
        v[axis] = 1.0;
        Point::Vector(v)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WedgeSpace {
    pub left: Space,
    pub right: Space,
    pub left_base: Point,
    pub right_base: Point,
}

/// Model metric spaces. Products carry the max metric; wedges the path metric
/// through the wedge point.
#[derive(Clone, Debug, PartialEq)]
pub enum Space {
    /// Unit circle in R², arc-length metric.
    Circle,
    Sphere(usize),
    RealProjective(usize),
    /// R^m/Z^m with the max of the per-coordinate quotient distances.
    Torus(usize),
    MetricGraph(MetricGraph),
    Product(Vec<Space>),
    Wedge(Box<WedgeSpace>),
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn normalized(a: &[f64]) -> Vec<f64> {
    let n = norm(a);
    a.iter().map(|x| x / n).collect()
}

/// Angle between unit vectors, accurate near 0 and near π.
pub fn angle_between(a: &[f64], b: &[f64]) -> f64 {
    let diff: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt();
    let sum: f64 = a.iter().zip(b).map(|(x, y)| (x + y) * (x + y)).sum::<f64>().sqrt();
    2.0 * diff.atan2(sum)
}

/// Sign-normalizes a projective representative: first coordinate with
/// |v_i| > 1e-12 is made positive.
pub fn canonical_line(v: &[f64]) -> Vec<f64> {
    let sign = v.iter().find(|x| x.abs() > 1e-12).map_or(1.0, |x| x.signum());
    v.iter().map(|x| x * sign).collect()
}

pub fn wrap_unit(x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    // Box-Muller
    let u1: f64 = rng.gen::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
}

fn random_unit<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| gaussian(rng)).collect();
        let n = norm(&v);
        if n > 1e-6 {
            return v.iter().map(|x| x / n).collect();
        }
    }
}

/// Unit tangent vector at `p` in a uniformly random direction.
fn random_tangent<R: Rng + ?Sized>(p: &[f64], rng: &mut R) -> Vec<f64> {
    loop {
        let g: Vec<f64> = (0..p.len()).map(|_| gaussian(rng)).collect();
        let c = dot(&g, p);
        let t: Vec<f64> = g.iter().zip(p).map(|(x, y)| x - c * y).collect();
        let n = norm(&t);
        if n > 1e-6 {
            return t.iter().map(|x| x / n).collect();
        }
    }
}

impl Space {
    /// Validates the structural invariants of the space.
    pub fn validate(&self) -> Result<(), GeometryError> {
        match self {
            Space::Sphere(n) | Space::RealProjective(n) if *n < 1 => {
                Err(GeometryError::InvalidSpace("dimension must be at least 1".into()))
            }
            Space::Torus(0) => Err(GeometryError::InvalidSpace("torus dimension must be at least 1".into())),
            Space::Product(factors) if factors.is_empty() => Err(GeometryError::InvalidSpace("empty product".into())),
            Space::Product(factors) => factors.iter().try_for_each(Space::validate),
            Space::Wedge(w) => {
                w.left.validate()?;
                w.right.validate()?;
                w.left.check(&w.left_base)?;
                w.right.check(&w.right_base)
            }
            _ => Ok(()),
        }
    }

    /// Ambient dimension of the coordinate vector, for vector-valued spaces.
    pub fn ambient_dim(&self) -> Option<usize> {
        match self {
            Space::Circle => Some(2),
            Space::Sphere(n) | Space::RealProjective(n) => Some(n + 1),
            _ => None,
        }
    }

    pub fn basepoint(&self) -> Point {
        match self {
            Space::Circle => Point::unit(2, 0),
            Space::Sphere(n) | Space::RealProjective(n) => Point::unit(n + 1, 0),
            Space::Torus(m) => Point::Torus(vec![0.0; *m]),
            Space::MetricGraph(g) => g.vertex_point(0),
            Space::Product(f) => Point::Tuple(f.iter().map(Space::basepoint).collect()),
            Space::Wedge(w) => Point::Wedge { side: Side::Left, point: Box::new(w.left_base.clone()) },
        }
    }

    /// Checks that `p` has the right shape for this space.
    pub fn check(&self, p: &Point) -> Result<(), GeometryError> {
        let bad = |what: &str| Err(GeometryError::MismatchedSpace(what.to_string()));
        match (self, p) {
            (Space::Circle | Space::Sphere(_) | Space::RealProjective(_), Point::Vector(v)) => {
                if Some(v.len()) != self.ambient_dim() {
                    return bad("wrong ambient dimension");
                }
                if (norm(v) - 1.0).abs() > 1e-9 {
                    return bad("not a unit vector");
                }
                Ok(())
            }
            (Space::Torus(m), Point::Torus(v)) if v.len() == *m => Ok(()),
            (Space::MetricGraph(g), Point::Graph { edge, t }) => {
                if *edge >= g.edge_count() || !(0.0..=1.0).contains(t) {
                    return bad("edge position out of range");
                }
                Ok(())
            }
            (Space::Product(f), Point::Tuple(ps)) if f.len() == ps.len() => {
                f.iter().zip(ps).try_for_each(|(s, p)| s.check(p))
            }
            (Space::Wedge(w), Point::Wedge { side, point }) => match side {
                Side::Left => w.left.check(point),
                Side::Right => w.right.check(point),
            },
            _ => bad("point variant does not match space"),
        }
    }

    /// Brings a point to canonical coordinates (unit norm, projective sign,
    /// torus coordinates mod 1, wedge basepoint on the left).
    pub fn normalize(&self, p: &Point) -> Result<Point, GeometryError> {
        let out = match (self, p) {
            (Space::Circle | Space::Sphere(_), Point::Vector(v)) => Point::Vector(normalized(v)),
            (Space::RealProjective(_), Point::Vector(v)) => Point::Vector(canonical_line(&normalized(v))),
            (Space::Torus(_), Point::Torus(v)) => Point::Torus(v.iter().map(|x| wrap_unit(*x)).collect()),
            (Space::MetricGraph(_), Point::Graph { edge, t }) => Point::Graph { edge: *edge, t: t.clamp(0.0, 1.0) },
            (Space::Product(f), Point::Tuple(ps)) if f.len() == ps.len() => {
                Point::Tuple(f.iter().zip(ps).map(|(s, p)| s.normalize(p)).collect::<Result<_, _>>()?)
            }
            (Space::Wedge(w), Point::Wedge { side, point }) => {
                let factor = if *side == Side::Left { &w.left } else { &w.right };
                let point = factor.normalize(point)?;
                if *side == Side::Right && w.right.distance(&point, &w.right_base)? <= MERGE_TOLERANCE {
                    Point::Wedge { side: Side::Left, point: Box::new(w.left_base.clone()) }
                } else {
                    Point::Wedge { side: *side, point: Box::new(point) }
                }
            }
            _ => return Err(GeometryError::MismatchedSpace("point variant does not match space".into())),
        };
        self.check(&out)?;
        Ok(out)
    }

    pub fn distance(&self, p: &Point, q: &Point) -> Result<f64, GeometryError> {
        let mismatch = || GeometryError::MismatchedSpace("point variant does not match space".into());
        match (self, p, q) {
            (Space::Circle | Space::Sphere(_), Point::Vector(a), Point::Vector(b)) if a.len() == b.len() => {
                Ok(angle_between(a, b))
            }
            (Space::RealProjective(_), Point::Vector(a), Point::Vector(b)) if a.len() == b.len() => {
                let theta = angle_between(a, b);
                Ok(theta.min(PI - theta).max(0.0))
            }
            (Space::Torus(_), Point::Torus(a), Point::Torus(b)) if a.len() == b.len() => Ok(a
                .iter()
                .zip(b)
                .map(|(x, y)| {
                    let d = (x - y).rem_euclid(1.0);
                    d.min(1.0 - d)
                })
                .fold(0.0, f64::max)),
            (Space::MetricGraph(g), Point::Graph { edge: e1, t: t1 }, Point::Graph { edge: e2, t: t2 }) => {
                g.point_distance((*e1, *t1), (*e2, *t2))
            }
            (Space::Product(f), Point::Tuple(a), Point::Tuple(b)) if f.len() == a.len() && f.len() == b.len() => {
                let mut best: f64 = 0.0;
                for ((s, x), y) in f.iter().zip(a).zip(b) {
                    best = best.max(s.distance(x, y)?);
                }
                Ok(best)
            }
            (Space::Wedge(w), Point::Wedge { side: s1, point: a }, Point::Wedge { side: s2, point: b }) => {
                let (fa, ba) = w.factor(*s1);
                if s1 == s2 {
                    fa.distance(a, b)
                } else {
                    let (fb, bb) = w.factor(*s2);
                    Ok(fa.distance(a, ba)? + fb.distance(bb, b)?)
                }
            }
            _ => Err(mismatch()),
        }
    }

    pub fn same_point(&self, p: &Point, q: &Point) -> bool {
        self.distance(p, q).map(|d| d <= MERGE_TOLERANCE).unwrap_or(false)
    }

    /// Upper bound on the diameter.
    pub fn diameter(&self) -> f64 {
        match self {
            Space::Circle | Space::Sphere(_) => PI,
            Space::RealProjective(_) => PI / 2.0,
            Space::Torus(_) => 0.5,
            Space::MetricGraph(g) => g.diameter(),
            Space::Product(f) => f.iter().map(Space::diameter).fold(0.0, f64::max),
            Space::Wedge(w) => w.left.diameter() + w.right.diameter(),
        }
    }

    /// Random point, roughly uniform in the natural parameterization.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        match self {
            Space::Circle => Point::Vector(random_unit(2, rng)),
            Space::Sphere(n) => Point::Vector(random_unit(n + 1, rng)),
            Space::RealProjective(n) => Point::Vector(canonical_line(&random_unit(n + 1, rng))),
            Space::Torus(m) => Point::Torus((0..*m).map(|_| rng.gen::<f64>()).collect()),
            Space::MetricGraph(g) => g.sample(rng),
            Space::Product(f) => Point::Tuple(f.iter().map(|s| s.sample(rng)).collect()),
            Space::Wedge(w) => {
                let side = if rng.gen_bool(0.5) { Side::Left } else { Side::Right };
                let (factor, _) = w.factor(side);
                let p = Point::Wedge { side, point: Box::new(factor.sample(rng)) };
                self.normalize(&p).expect("sampled point")
            }
        }
    }

    /// Random point within distance `delta` of `p`.
    pub fn perturb<R: Rng + ?Sized>(&self, p: &Point, delta: f64, rng: &mut R) -> Result<Point, GeometryError> {
        let r = delta * rng.gen::<f64>() * (1.0 - 1e-9);
        let out = match (self, p) {
            (Space::Circle | Space::Sphere(_) | Space::RealProjective(_), Point::Vector(v)) => {
                let t = random_tangent(v, rng);
                let moved: Vec<f64> = v.iter().zip(&t).map(|(a, b)| r.cos() * a + r.sin() * b).collect();
                Point::Vector(moved)
            }
            (Space::Torus(_), Point::Torus(v)) => {
                Point::Torus(v.iter().map(|x| x + delta * (1.0 - 1e-9) * (2.0 * rng.gen::<f64>() - 1.0)).collect())
            }
            (Space::MetricGraph(g), Point::Graph { edge, t }) => {
                let len = g.edge_length(*edge);
                let s = (2.0 * rng.gen::<f64>() - 1.0) * r / len;
                Point::Graph { edge: *edge, t: (t + s).clamp(0.0, 1.0) }
            }
            (Space::Product(f), Point::Tuple(ps)) if f.len() == ps.len() => {
                Point::Tuple(f.iter().zip(ps).map(|(s, q)| s.perturb(q, delta, rng)).collect::<Result<_, _>>()?)
            }
            (Space::Wedge(w), Point::Wedge { side, point }) => {
                let (factor, _) = w.factor(*side);
                Point::Wedge { side: *side, point: Box::new(factor.perturb(point, delta, rng)?) }
            }
            _ => return Err(GeometryError::MismatchedSpace("point variant does not match space".into())),
        };
        self.normalize(&out)
    }
}

impl WedgeSpace {
    pub fn factor(&self, side: Side) -> (&Space, &Point) {
        match side {
            Side::Left => (&self.left, &self.left_base),
            Side::Right => (&self.right, &self.right_base),
        }
    }
}

impl MetricOracle<Point> for Space {
    type Distance = f64;

    fn distance(&self, a: &Point, b: &Point) -> f64 {
        Space::distance(self, a, b).expect("points of the carrier space")
    }

    fn diameter_bound(&self) -> Option<f64> {
        Some(self.diameter())
    }
}
