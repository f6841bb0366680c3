use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::graph::{EdgeSegment, MetricGraph};
use super::{angle_between, canonical_line, dot, normalized, wrap_unit, GeometryError, Point, Side, Space};

/// Grid resolution used when tracking a covering lift.
pub const LIFT_STEPS: usize = 256;

/// Maps between model spaces that path descriptors can be pushed through.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "map", rename_all = "snake_case")]
pub enum PointMap {
    Identity,
    /// S^n → RP^n
    ProjectiveQuotient,
    /// z ↦ z^k on the unit circle
    CircleCover { degree: u32 },
    /// group translation on a torus
    Translate { offset: Vec<f64> },
    /// R/Z → unit circle, t ↦ e^{2πit}
    TorusToCircle,
    /// inverse of `TorusToCircle`
    CircleToTorus,
    WedgeInclude { side: Side },
    /// Collapses the other wedge summand onto `base`, the wedge point of `side`.
    WedgeRetract { side: Side, base: Point },
}

impl PointMap {
    pub fn lipschitz(&self) -> f64 {
        match self {
            PointMap::CircleCover { degree } => *degree as f64,
            PointMap::TorusToCircle => 2.0 * PI,
            PointMap::CircleToTorus => 1.0 / (2.0 * PI),
            _ => 1.0,
        }
    }

    pub fn apply(&self, p: &Point) -> Result<Point, GeometryError> {
        let mismatch = |what: &str| Err(GeometryError::MismatchedSpace(format!("{what} applied to {p:?}")));
        match (self, p) {
            (PointMap::Identity, _) => Ok(p.clone()),
            (PointMap::ProjectiveQuotient, Point::Vector(v)) => Ok(Point::Vector(canonical_line(v))),
            (PointMap::CircleCover { degree }, Point::Vector(v)) if v.len() == 2 => {
                let a = v[1].atan2(v[0]) * *degree as f64;
                Ok(Point::Vector(vec![a.cos(), a.sin()]))
            }
            (PointMap::Translate { offset }, Point::Torus(v)) if v.len() == offset.len() => {
                Ok(Point::Torus(v.iter().zip(offset).map(|(a, b)| wrap_unit(a + b)).collect()))
            }
            (PointMap::TorusToCircle, Point::Torus(v)) if v.len() == 1 => {
                let a = 2.0 * PI * v[0];
                Ok(Point::Vector(vec![a.cos(), a.sin()]))
            }
            (PointMap::CircleToTorus, Point::Vector(v)) if v.len() == 2 => {
                Ok(Point::Torus(vec![wrap_unit(v[1].atan2(v[0]) / (2.0 * PI))]))
            }
            (PointMap::WedgeInclude { side }, _) => Ok(Point::Wedge { side: *side, point: Box::new(p.clone()) }),
            (PointMap::WedgeRetract { side, base }, Point::Wedge { side: s, point }) => {
                Ok(if s == side { (**point).clone() } else { base.clone() })
            }
            (PointMap::ProjectiveQuotient, _) => mismatch("projective quotient"),
            (PointMap::CircleCover { .. }, _) => mismatch("circle cover"),
            (PointMap::Translate { .. }, _) => mismatch("translation"),
            (PointMap::TorusToCircle, _) => mismatch("torus-to-circle"),
            (PointMap::CircleToTorus, _) => mismatch("circle-to-torus"),
            (PointMap::WedgeRetract { .. }, _) => mismatch("wedge retraction"),
        }
    }
}

/// Covering maps along which paths can be lifted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "cover", rename_all = "snake_case")]
pub enum Covering {
    SphereOverProjective,
    CircleDegree { degree: u32 },
}

impl Covering {
    pub fn project(&self) -> PointMap {
        match self {
            Covering::SphereOverProjective => PointMap::ProjectiveQuotient,
            Covering::CircleDegree { degree } => PointMap::CircleCover { degree: *degree },
        }
    }

    /// Half the injectivity radius of the base space.
    fn max_step(&self) -> f64 {
        match self {
            Covering::SphereOverProjective => PI / 4.0,
            Covering::CircleDegree { .. } => PI / 2.0,
        }
    }

    fn speed_factor(&self) -> f64 {
        match self {
            Covering::SphereOverProjective => 1.0,
            Covering::CircleDegree { degree } => 1.0 / *degree as f64,
        }
    }

    /// Preimage of `base` nearest to `prev`.
    fn nearest_preimage(&self, prev: &[f64], base: &[f64]) -> Vec<f64> {
        match self {
            Covering::SphereOverProjective => {
                let s = if dot(prev, base) < 0.0 { -1.0 } else { 1.0 };
                base.iter().map(|x| s * x).collect()
            }
            Covering::CircleDegree { degree } => {
                let k = *degree as f64;
                let alpha = prev[1].atan2(prev[0]);
                let phi = base[1].atan2(base[0]);
                let mut delta = (phi - k * alpha).rem_euclid(2.0 * PI);
                if delta > PI {
                    delta -= 2.0 * PI;
                }
                let a = alpha + delta / k;
                vec![a.cos(), a.sin()]
            }
        }
    }
}

/// Algebraic description of a path [0,1] → X.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PathDescriptor {
    Constant {
        point: Point,
    },
    /// t ↦ cos(θt)·start + sin(θt)·direction, optionally read as a line.
    GreatCircleArc {
        start: Vec<f64>,
        direction: Vec<f64>,
        angle: f64,
        projective: bool,
    },
    TorusLinear {
        start: Vec<f64>,
        displacement: Vec<f64>,
    },
    EdgeWalk {
        segments: Vec<EdgeSegment>,
        length: f64,
    },
    Concat {
        left: Box<PathDescriptor>,
        right: Box<PathDescriptor>,
    },
    Reverse {
        inner: Box<PathDescriptor>,
    },
    ProductPath {
        factors: Vec<PathDescriptor>,
    },
    Mapped {
        map: PointMap,
        inner: Box<PathDescriptor>,
    },
    /// Lift of a base path through a covering, tracked on a fixed grid.
    Lifted {
        covering: Covering,
        start: Vec<f64>,
        inner: Box<PathDescriptor>,
    },
}

fn check_t(t: f64) -> Result<(), GeometryError> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(GeometryError::ParameterOutOfRange(t))
    }
}

impl PathDescriptor {
    pub fn constant(point: Point) -> Self {
        PathDescriptor::Constant { point }
    }

    /// Arc from `start` in the unit tangent direction `direction` through `angle`.
    pub fn arc(start: Vec<f64>, direction: Vec<f64>, angle: f64) -> Self {
        PathDescriptor::GreatCircleArc { start, direction, angle, projective: false }
    }

    /// Same arc read in projective space.
    pub fn projective_arc(start: Vec<f64>, direction: Vec<f64>, angle: f64) -> Self {
        PathDescriptor::GreatCircleArc { start, direction, angle, projective: true }
    }

    /// Minimal geodesic between non-antipodal unit vectors.
    pub fn geodesic(x: &[f64], y: &[f64]) -> Result<Self, GeometryError> {
        let angle = angle_between(x, y);
        if angle <= 1e-15 {
            return Ok(PathDescriptor::constant(Point::Vector(x.to_vec())));
        }
        let c = dot(x, y);
        let tangent: Vec<f64> = y.iter().zip(x).map(|(b, a)| b - c * a).collect();
        if super::norm(&tangent) < 1e-12 {
            return Err(GeometryError::EndpointMismatch("geodesic between antipodal points is not unique".into()));
        }
        Ok(PathDescriptor::arc(x.to_vec(), normalized(&tangent), angle))
    }

    /// Straight line t ↦ start + t·displacement on the torus.
    pub fn torus_linear(start: Vec<f64>, displacement: Vec<f64>) -> Self {
        PathDescriptor::TorusLinear { start, displacement }
    }

    /// Shortest walk between two graph positions.
    pub fn edge_walk(graph: &MetricGraph, from: (usize, f64), to: (usize, f64)) -> Self {
        let (segments, length) = graph.route(from, to);
        if segments.is_empty() {
            return PathDescriptor::constant(Point::Graph { edge: from.0, t: from.1 });
        }
        PathDescriptor::EdgeWalk { segments, length }
    }

    /// φ·ψ: run `left` then `right`, each at double speed.
    pub fn concat(space: &Space, left: PathDescriptor, right: PathDescriptor) -> Result<Self, GeometryError> {
        let (a, b) = (left.target()?, right.source()?);
        let gap = space.distance(&a, &b)?;
        if gap > super::distributed::ENDPOINT_TOLERANCE {
            return Err(GeometryError::EndpointMismatch(format!("concatenation gap {gap:e}")));
        }
        Ok(PathDescriptor::Concat { left: Box::new(left), right: Box::new(right) })
    }

    /// Concatenation of several paths, left-nested.
    pub fn concat_all(space: &Space, parts: Vec<PathDescriptor>) -> Result<Self, GeometryError> {
        let mut it = parts.into_iter();
        let first = it.next().ok_or_else(|| GeometryError::Malformed("empty concatenation".into()))?;
        it.try_fold(first, |acc, p| PathDescriptor::concat(space, acc, p))
    }

    pub fn reverse(self) -> Self {
        match self {
            PathDescriptor::Constant { .. } => self,
            PathDescriptor::Reverse { inner } => *inner,
            other => PathDescriptor::Reverse { inner: Box::new(other) },
        }
    }

    pub fn product(factors: Vec<PathDescriptor>) -> Self {
        if factors.iter().all(|f| matches!(f, PathDescriptor::Constant { .. })) {
            let points = factors
                .into_iter()
                .map(|f| match f {
                    PathDescriptor::Constant { point } => point,
                    _ => unreachable!(),
                })
                .collect();
            return PathDescriptor::constant(Point::Tuple(points));
        }
        PathDescriptor::ProductPath { factors }
    }

    pub fn mapped(map: PointMap, inner: PathDescriptor) -> Self {
        if map == PointMap::Identity {
            return inner;
        }
        PathDescriptor::Mapped { map, inner: Box::new(inner) }
    }

    /// Lifts a base path through `covering`, starting at `start` in the total space.
    pub fn lift(covering: Covering, start: Vec<f64>, inner: PathDescriptor) -> Result<Self, GeometryError> {
        let base0 = inner.source()?;
        let image = covering.project().apply(&Point::Vector(start.clone()))?;
        let (Point::Vector(b), Point::Vector(i)) = (&base0, &image) else {
            return Err(GeometryError::MismatchedSpace("lift needs vector points".into()));
        };
        let gap = match covering {
            Covering::SphereOverProjective => {
                let a = angle_between(b, i);
                a.min(PI - a)
            }
            Covering::CircleDegree { .. } => angle_between(b, i),
        };
        if gap > super::distributed::ENDPOINT_TOLERANCE {
            return Err(GeometryError::EndpointMismatch(format!("lift start is {gap:e} away from the fibre")));
        }
        let step = inner.lipschitz() / LIFT_STEPS as f64;
        if step > covering.max_step() {
            return Err(GeometryError::LiftStepTooCoarse(format!(
                "base step {step:.4} exceeds {:.4}",
                covering.max_step()
            )));
        }
        Ok(PathDescriptor::Lifted { covering, start, inner: Box::new(inner) })
    }

    /// Certified Lipschitz constant.
    pub fn lipschitz(&self) -> f64 {
        match self {
            PathDescriptor::Constant { .. } => 0.0,
            PathDescriptor::GreatCircleArc { angle, .. } => angle.abs(),
            PathDescriptor::TorusLinear { displacement, .. } => displacement.iter().map(|d| d.abs()).fold(0.0, f64::max),
            PathDescriptor::EdgeWalk { length, .. } => *length,
            PathDescriptor::Concat { left, right } => 2.0 * left.lipschitz().max(right.lipschitz()),
            PathDescriptor::Reverse { inner } => inner.lipschitz(),
            PathDescriptor::ProductPath { factors } => factors.iter().map(|f| f.lipschitz()).fold(0.0, f64::max),
            PathDescriptor::Mapped { map, inner } => map.lipschitz() * inner.lipschitz(),
            PathDescriptor::Lifted { covering, inner, .. } => covering.speed_factor() * inner.lipschitz(),
        }
    }

    pub fn eval(&self, t: f64) -> Result<Point, GeometryError> {
        check_t(t)?;
        Ok(match self {
            PathDescriptor::Constant { point } => point.clone(),
            PathDescriptor::GreatCircleArc { start, direction, angle, projective } => {
                let (s, c) = (angle * t).sin_cos();
                let v: Vec<f64> = start.iter().zip(direction).map(|(a, b)| c * a + s * b).collect();
                let v = normalized(&v);
                Point::Vector(if *projective { canonical_line(&v) } else { v })
            }
            PathDescriptor::TorusLinear { start, displacement } => {
                Point::Torus(start.iter().zip(displacement).map(|(a, d)| wrap_unit(a + t * d)).collect())
            }
            PathDescriptor::EdgeWalk { segments, length } => {
                let mut remaining = t * length;
                let last = segments.len() - 1;
                for (i, seg) in segments.iter().enumerate() {
                    if remaining <= seg.length || i == last {
                        let f = (remaining / seg.length).clamp(0.0, 1.0);
                        return Ok(Point::Graph { edge: seg.edge, t: seg.t0 + f * (seg.t1 - seg.t0) });
                    }
                    remaining -= seg.length;
                }
                unreachable!("edge walks have at least one segment")
            }
            PathDescriptor::Concat { left, right } => {
                if t <= 0.5 {
                    left.eval(2.0 * t)?
                } else {
                    right.eval((2.0 * t - 1.0).min(1.0))?
                }
            }
            PathDescriptor::Reverse { inner } => inner.eval(1.0 - t)?,
            PathDescriptor::ProductPath { factors } => {
                Point::Tuple(factors.iter().map(|f| f.eval(t)).collect::<Result<_, _>>()?)
            }
            PathDescriptor::Mapped { map, inner } => map.apply(&inner.eval(t)?)?,
            PathDescriptor::Lifted { covering, start, inner } => {
                let vec_of = |p: Point| match p {
                    Point::Vector(v) => Ok(v),
                    other => Err(GeometryError::MismatchedSpace(format!("lift through non-vector point {other:?}"))),
                };
                let mut cur = start.clone();
                let full = (t * LIFT_STEPS as f64).floor() as usize;
                for k in 0..=full.min(LIFT_STEPS) {
                    let b = vec_of(inner.eval(k as f64 / LIFT_STEPS as f64)?)?;
                    cur = covering.nearest_preimage(&cur, &b);
                }
                let b = vec_of(inner.eval(t)?)?;
                Point::Vector(covering.nearest_preimage(&cur, &b))
            }
        })
    }

    pub fn source(&self) -> Result<Point, GeometryError> {
        self.eval(0.0)
    }

    pub fn target(&self) -> Result<Point, GeometryError> {
        self.eval(1.0)
    }
}
