use std::f64::consts::PI;
use std::sync::Arc;

use serde_json::json;

use super::{assemble, Contraction, Planner, PlannerError};
use crate::geometry::{
    angle_between, dot, normalized, wrap_unit, Covering, DistributedPath, GeometryError, PathDescriptor, Point,
    PointMap, Side, Space,
};
use crate::rational::{self, Weight};

fn pieces_of(d: &DistributedPath) -> impl Iterator<Item = (&PathDescriptor, &Weight)> {
    d.measure().atoms().iter().map(|a| (&a.elem, &a.weight))
}

/// Contraction of the circle to (1, 0): clockwise back by θ with weight
/// 1 − θ/2π, counter-clockwise forward by 2π − θ with weight θ/2π.
pub fn circle_contraction() -> Contraction {
    let space = Space::Circle;
    let sp = space.clone();
    let base = space.basepoint();
    let b = base.clone();
    Contraction::new("circle_contraction", space, base, 2, move |x| {
        let v = x.vector().expect("checked");
        if angle_between(v, &[1.0, 0.0]) <= 1e-12 {
            return assemble(&sp, x, &b, vec![(PathDescriptor::constant(x.clone()), 1.0)]);
        }
        let mut theta = v[1].atan2(v[0]);
        if theta < 0.0 {
            theta += 2.0 * PI;
        }
        let j = vec![-v[1], v[0]];
        let back = vec![v[1], -v[0]];
        let cw = PathDescriptor::arc(v.to_vec(), back, theta);
        let ccw = PathDescriptor::arc(v.to_vec(), j, 2.0 * PI - theta);
        assemble(&sp, x, &b, vec![(cw, 1.0 - theta / (2.0 * PI)), (ccw, theta / (2.0 * PI))])
    })
}

/// Product of m circle contractions on R^m/Z^m, 2^m pieces. Coordinate θ
/// goes down to 0 with weight 1 − θ and up to 1 with weight θ.
pub fn torus_contraction(m: usize) -> Contraction {
    let space = Space::Torus(m);
    let sp = space.clone();
    let base = space.basepoint();
    let b = base.clone();
    Contraction::new(format!("torus_contraction({m})"), space, base, 1 << m, move |x| {
        let coords = x.torus().expect("checked");
        let mut pieces: Vec<(PathDescriptor, Weight)> = vec![(PathDescriptor::torus_linear(coords.to_vec(), vec![]), rational::one())];
        for &theta in coords {
            let up = rational::from_f64(theta);
            let down = rational::one() - &up;
            let mut next = Vec::with_capacity(pieces.len() * 2);
            for (path, w) in pieces {
                let PathDescriptor::TorusLinear { start, displacement } = path else { unreachable!() };
                for (d, wd) in [(-theta, &down), (1.0 - theta, &up)] {
                    if wd == &rational::zero() {
                        continue;
                    }
                    let mut disp = displacement.clone();
                    disp.push(d);
                    next.push((PathDescriptor::torus_linear(start.clone(), disp), &w * wd));
                }
            }
            pieces = next;
        }
        let pieces = pieces
            .into_iter()
            .map(|(p, w)| match &p {
                PathDescriptor::TorusLinear { displacement, .. } if displacement.iter().all(|d| *d == 0.0) => {
                    (PathDescriptor::constant(x.clone()), w)
                }
                _ => (p, w),
            })
            .collect();
        Ok(DistributedPath::new(&sp, x.clone(), b.clone(), pieces)?)
    })
}

/// s(x, y) = y·H(y⁻¹x) for a contraction H of a torus to 0.
pub fn group_translation_planner(h: &Contraction) -> Result<Planner, PlannerError> {
    let Space::Torus(m) = *h.space() else {
        return Err(PlannerError::SpaceNotGroup(format!("{} is not on a torus", h.name())));
    };
    if h.basepoint().torus().is_none_or(|b| b.iter().any(|c| *c != 0.0)) {
        return Err(PlannerError::SpaceNotGroup("contraction must end at the identity".into()));
    }
    let space = h.space().clone();
    let sp = space.clone();
    let h = h.clone();
    Ok(Planner::new(format!("group_translation(T{m})"), space, h.pieces(), json!({"contraction": h.name()}), move |x, y| {
        let (xv, yv) = (x.torus().expect("checked"), y.torus().expect("checked"));
        let z = Point::Torus(xv.iter().zip(yv).map(|(a, b)| wrap_unit(a - b)).collect());
        let hz = h.contract(&z)?;
        let shift = PointMap::Translate { offset: yv.to_vec() };
        let pieces = pieces_of(&hz).map(|(p, w)| (PathDescriptor::mapped(shift.clone(), p.clone()), w.clone())).collect();
        Ok(DistributedPath::new(&sp, x.clone(), y.clone(), pieces)?)
    }))
}

fn split_pair(p: &Point) -> (&Point, &Point) {
    match p {
        Point::Tuple(v) if v.len() == 2 => (&v[0], &v[1]),
        _ => unreachable!("checked by Planner::plan"),
    }
}

/// Product measure of two planners, paths paired coordinatewise.
pub fn product_planner(p: &Planner, q: &Planner) -> Planner {
    let space = Space::Product(vec![p.space().clone(), q.space().clone()]);
    let sp = space.clone();
    let (p, q) = (p.clone(), q.clone());
    let name = format!("product({},{})", p.name(), q.name());
    Planner::new(name, space, p.pieces() * q.pieces(), json!({}), move |x, y| {
        let ((x1, x2), (y1, y2)) = (split_pair(x), split_pair(y));
        let (d1, d2) = (p.plan(x1, y1)?, q.plan(x2, y2)?);
        let mut pieces = Vec::with_capacity(d1.support_size() * d2.support_size());
        for (a, wa) in pieces_of(&d1) {
            for (b, wb) in pieces_of(&d2) {
                pieces.push((PathDescriptor::product(vec![a.clone(), b.clone()]), wa * wb));
            }
        }
        Ok(DistributedPath::new(&sp, x.clone(), y.clone(), pieces)?)
    })
}

/// H(x) = s(x, x₀).
pub fn contraction_from_planner(s: &Planner, x0: &Point) -> Result<Contraction, PlannerError> {
    let x0 = s.space().normalize(x0)?;
    let s = s.clone();
    let b = x0.clone();
    Ok(Contraction::new(format!("contraction({})", s.name()), s.space().clone(), x0, s.pieces(), move |x| s.plan(x, &b)))
}

/// Unit vector orthogonal to `v`, built from the least aligned axis.
fn orthogonal_unit(v: &[f64]) -> Vec<f64> {
    let axis = (0..v.len()).min_by(|&i, &j| v[i].abs().total_cmp(&v[j].abs())).expect("nonempty");
    let mut e = vec![0.0; v.len()];
    e[axis] = 1.0;
    let c = dot(&e, v);
    normalized(&e.iter().zip(v).map(|(a, b)| a - c * b).collect::<Vec<_>>())
}

/// Lifts a contraction of the base of a covering to one of the total space:
/// each path of H(p(x)) is lifted from x and followed by a fixed reference
/// path from the fibre point where the lift ends to `total_base`.
pub fn covering_lift_contraction(
    h: &Contraction,
    covering: Covering,
    total_base: &[f64],
) -> Result<Contraction, PlannerError> {
    let total = match (covering, h.space()) {
        (Covering::SphereOverProjective, Space::RealProjective(n)) => Space::Sphere(*n),
        (Covering::CircleDegree { degree }, Space::Circle) if degree >= 1 => Space::Circle,
        _ => return Err(PlannerError::Unsupported(format!("no covering of {:?} of that kind", h.space()))),
    };
    let x0 = total.normalize(&Point::Vector(total_base.to_vec()))?;
    let x0v = x0.vector().expect("vector").to_vec();
    let image = covering.project().apply(&x0)?;
    if h.space().distance(&image, h.basepoint())? > 1e-12 {
        return Err(GeometryError::EndpointMismatch("total basepoint is not over the contraction basepoint".into()).into());
    }
    // fibre over the basepoint, each with a reference path back to x0
    let fibre: Vec<(Vec<f64>, PathDescriptor)> = match covering {
        Covering::SphereOverProjective => {
            let minus: Vec<f64> = x0v.iter().map(|c| -c).collect();
            let back = PathDescriptor::arc(minus.clone(), orthogonal_unit(&x0v), PI);
            vec![(x0v.clone(), PathDescriptor::constant(x0.clone())), (minus, back)]
        }
        Covering::CircleDegree { degree } => (0..degree)
            .map(|j| {
                let a = 2.0 * PI * j as f64 / degree as f64;
                let (s, c) = a.sin_cos();
                let p = vec![c * x0v[0] - s * x0v[1], s * x0v[0] + c * x0v[1]];
                let back = if j == 0 {
                    PathDescriptor::constant(x0.clone())
                } else {
                    PathDescriptor::arc(p.clone(), vec![p[1], -p[0]], a)
                };
                (p, back)
            })
            .collect(),
    };
    let h = h.clone();
    let sp = total.clone();
    let b = x0.clone();
    let name = format!("lift({})", h.name());
    Ok(Contraction::new(name, total, x0, h.pieces(), move |x| {
        let xv = x.vector().expect("checked");
        let hx = h.contract(&covering.project().apply(x)?)?;
        let mut pieces = Vec::with_capacity(hx.support_size());
        for (phi, w) in pieces_of(&hx) {
            let lifted = PathDescriptor::lift(covering, xv.to_vec(), phi.clone())?;
            let end = lifted.target()?;
            let (_, back) = fibre
                .iter()
                .min_by(|a, b| {
                    let da = angle_between(&a.0, end.vector().expect("vector"));
                    let db = angle_between(&b.0, end.vector().expect("vector"));
                    da.total_cmp(&db)
                })
                .expect("nonempty fibre");
            let path = match back {
                PathDescriptor::Constant { .. } => lifted,
                _ => PathDescriptor::concat(&sp, lifted, back.clone())?,
            };
            pieces.push((path, w.clone()));
        }
        Ok(DistributedPath::new(&sp, x.clone(), b.clone(), pieces)?)
    }))
}

type HomotopyPath = dyn Fn(&Point) -> Result<PathDescriptor, PlannerError> + Send + Sync;

/// Maps f: X → Y, g: Y → X and a homotopy given by its tracks
/// y ↦ path from y to f(g(y)).
#[derive(Clone)]
pub struct HomotopyData {
    pub f: PointMap,
    pub g: PointMap,
    pub track: Arc<HomotopyPath>,
}

impl HomotopyData {
    /// For f∘g equal to the identity: every track is constant.
    pub fn inverse_pair(f: PointMap, g: PointMap) -> Self {
        HomotopyData { f, g, track: Arc::new(|y| Ok(PathDescriptor::constant(y.clone()))) }
    }
}

/// σ(y, y') = Σ λ_φ h_y · fφ · h̄_{y'} for φ in s(g y, g y').
pub fn homotopy_transfer_planner(s: &Planner, target: Space, data: HomotopyData) -> Planner {
    let s = s.clone();
    let sp = target.clone();
    let name = format!("transfer({})", s.name());
    Planner::new(name, target, s.pieces(), json!({}), move |y, y2| {
        let (gy, gy2) = (data.g.apply(y)?, data.g.apply(y2)?);
        let d = s.plan(&s.space().normalize(&gy)?, &s.space().normalize(&gy2)?)?;
        let (h1, h2) = ((data.track)(y)?, (data.track)(y2)?);
        let mut pieces = Vec::with_capacity(d.support_size());
        for (phi, w) in pieces_of(&d) {
            let image = PathDescriptor::mapped(data.f.clone(), phi.clone());
            let path = PathDescriptor::concat_all(&sp, vec![h1.clone(), image, h2.clone().reverse()])?;
            pieces.push((path, w.clone()));
        }
        Ok(DistributedPath::new(&sp, y.clone(), y2.clone(), pieces)?)
    })
}

/// Contraction of X × Y to (v, v) from a planner on X ∨ Y:
/// H(x, y) = Σ λ_φ (r_X φ, r_Y φ̄) with φ in s(x, y).
pub fn wedge_to_product_contraction(s: &Planner) -> Result<Contraction, PlannerError> {
    let Space::Wedge(w) = s.space() else {
        return Err(PlannerError::Unsupported(format!("{} is not a wedge planner", s.name())));
    };
    let w = (**w).clone();
    let space = Space::Product(vec![w.left.clone(), w.right.clone()]);
    let base = Point::Tuple(vec![w.left_base.clone(), w.right_base.clone()]);
    let (sp, b, s2) = (space.clone(), base.clone(), s.clone());
    let name = format!("wedge_to_product({})", s.name());
    Ok(Contraction::new(name, space, base, s.pieces(), move |xy| {
        let (x, y) = split_pair(xy);
        let wedge = s2.space();
        let xw = wedge.normalize(&Point::Wedge { side: Side::Left, point: Box::new(x.clone()) })?;
        let yw = wedge.normalize(&Point::Wedge { side: Side::Right, point: Box::new(y.clone()) })?;
        let d = s2.plan(&xw, &yw)?;
        let r_x = PointMap::WedgeRetract { side: Side::Left, base: w.left_base.clone() };
        let r_y = PointMap::WedgeRetract { side: Side::Right, base: w.right_base.clone() };
        let mut pieces = Vec::with_capacity(d.support_size());
        for (phi, wt) in pieces_of(&d) {
            let a = PathDescriptor::mapped(r_x.clone(), phi.clone());
            let c = PathDescriptor::mapped(r_y.clone(), phi.clone().reverse());
            pieces.push((PathDescriptor::product(vec![a, c]), wt.clone()));
        }
        Ok(DistributedPath::new(&sp, xy.clone(), b.clone(), pieces)?)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planners::{circle_planner, rpn_planner};
    use crate::rational::ratio;

    #[test]
    fn torus_contraction_half_half() {
        let h = torus_contraction(2);
        let d = h.contract(&Point::Torus(vec![0.5, 0.5])).unwrap();
        assert_eq!(d.support_size(), 4);
        assert!(d.measure().atoms().iter().all(|a| a.weight == ratio(1, 4)));
        let d0 = h.contract(&Point::Torus(vec![0.0, 0.0])).unwrap();
        assert!(d0.measure().is_dirac());
        assert!(matches!(d0.measure().atoms()[0].elem, PathDescriptor::Constant { .. }));
    }

    #[test]
    fn group_translation_needs_torus() {
        assert!(matches!(group_translation_planner(&circle_contraction()), Err(PlannerError::SpaceNotGroup(_))));
    }

    #[test]
    fn group_translation_diagonal_is_dirac() {
        let s = group_translation_planner(&torus_contraction(2)).unwrap();
        let x = Point::Torus(vec![0.3, 0.7]);
        let d = s.plan(&x, &x).unwrap();
        assert!(d.measure().is_dirac());
    }

    #[test]
    fn contraction_from_rpn() {
        let s = rpn_planner(2);
        let h = contraction_from_planner(&s, &Point::unit(3, 0)).unwrap();
        assert_eq!(h.pieces(), 2);
        assert!(h.contract(&Point::unit(3, 0)).unwrap().measure().is_dirac());
    }

    #[test]
    fn product_of_dirac_is_dirac() {
        let p = product_planner(&circle_planner(), &circle_planner());
        let x = Point::Tuple(vec![Point::unit(2, 0), Point::unit(2, 1)]);
        assert!(p.plan(&x, &x).unwrap().measure().is_dirac());
    }

    #[test]
    fn lift_of_fibre_point_ends_at_base() {
        let h = contraction_from_planner(&rpn_planner(2), &Point::unit(3, 0)).unwrap();
        let g = covering_lift_contraction(&h, Covering::SphereOverProjective, &[1.0, 0.0, 0.0]).unwrap();
        let minus = Point::Vector(vec![-1.0, 0.0, 0.0]);
        let d = g.contract(&minus).unwrap();
        for a in d.measure().atoms() {
            assert!(Space::Sphere(2).distance(&a.elem.target().unwrap(), &Point::unit(3, 0)).unwrap() < 1e-9);
        }
    }

    #[test]
    fn malformed_homotopy_is_rejected() {
        let s = group_translation_planner(&torus_contraction(1)).unwrap();
        let bad = HomotopyData {
            f: PointMap::TorusToCircle,
            g: PointMap::CircleToTorus,
            track: Arc::new(|_| Ok(PathDescriptor::constant(Point::Vector(vec![0.0, 1.0])))),
        };
        let t = homotopy_transfer_planner(&s, Space::Circle, bad);
        let r = t.plan(&Point::unit(2, 0), &Point::Vector(vec![-1.0, 0.0]));
        assert!(matches!(r, Err(PlannerError::Geometry(GeometryError::EndpointMismatch(_)))));
    }
}
