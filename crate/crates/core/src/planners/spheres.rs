use std::f64::consts::PI;

use serde::Serialize;
use serde_json::json;

use super::{assemble, Planner, PlannerError};
use crate::geometry::{angle_between, dot, normalized, PathDescriptor, Point, Space};

/// Linear clamp ramp: 0 below `lo`, 1 above `hi`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Ramp {
    pub lo: f64,
    pub hi: f64,
}

impl Ramp {
    pub fn at(&self, v: f64) -> f64 {
        ((v - self.lo) / (self.hi - self.lo)).clamp(0.0, 1.0)
    }

    /// Ramp of half-width `half` centred at `mid`.
    pub fn centred(mid: f64, half: f64) -> Ramp {
        Ramp { lo: mid - half, hi: mid + half }
    }
}

/// Thresholds of the sphere planners.
///
/// `antipodal` ramps in the angle θ = d(x, y) and moves weight from the
/// geodesic piece to the pieces through −x.
/// `polar` ramps in |⟨x, e₁⟩| and moves weight from the tangent-field piece to
/// the fixed reference semicircle (even spheres only).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SphereRamps {
    pub antipodal: Ramp,
    pub polar: Ramp,
}

impl Default for SphereRamps {
    fn default() -> Self {
        SphereRamps { antipodal: Ramp { lo: 1.3, hi: 2.2 }, polar: Ramp { lo: 0.2, hi: 0.9 } }
    }
}

fn vec_of(p: &Point) -> &[f64] {
    p.vector().expect("checked by Planner::plan")
}

/// Two-piece planner on RP^n: weight β/π on the rotation by α and α/π on the
/// rotation by β = π − α the other way round, in the plane of the two lines.
pub fn rpn_planner(n: usize) -> Planner {
    let space = Space::RealProjective(n);
    let sp = space.clone();
    Planner::new(format!("rpn({n})"), space, 2, json!({}), move |x, y| {
        let xv = vec_of(x);
        let mut yv = vec_of(y).to_vec();
        if dot(xv, &yv) < 0.0 {
            yv.iter_mut().for_each(|c| *c = -*c);
        }
        let alpha = angle_between(xv, &yv);
        if alpha <= 1e-12 {
            return assemble(&sp, x, y, vec![(PathDescriptor::constant(x.clone()), 1.0)]);
        }
        let c = dot(xv, &yv);
        let u = normalized(&yv.iter().zip(xv).map(|(b, a)| b - c * a).collect::<Vec<_>>());
        let minus_u: Vec<f64> = u.iter().map(|c| -c).collect();
        let beta = PI - alpha;
        let r_alpha = PathDescriptor::projective_arc(xv.to_vec(), u, alpha);
        let r_beta = PathDescriptor::projective_arc(xv.to_vec(), minus_u, beta);
        assemble(&sp, x, y, vec![(r_alpha, beta / PI), (r_beta, alpha / PI)])
    })
}

/// Counter-clockwise angle from `x` to `y` in [0, 2π).
fn ccw_angle(x: &[f64], y: &[f64]) -> f64 {
    let a = (x[0] * y[1] - x[1] * y[0]).atan2(dot(x, y));
    if a < 0.0 {
        a + 2.0 * PI
    } else {
        a
    }
}

fn rot90(x: &[f64]) -> Vec<f64> {
    vec![-x[1], x[0]]
}

/// Two arcs around the circle with weights proportional to the other arc's length.
pub fn circle_planner() -> Planner {
    let space = Space::Circle;
    let sp = space.clone();
    Planner::new("circle", space, 2, json!({}), move |x, y| {
        let (xv, yv) = (vec_of(x), vec_of(y));
        let theta = ccw_angle(xv, yv);
        if angle_between(xv, yv) <= 1e-12 {
            return assemble(&sp, x, y, vec![(PathDescriptor::constant(x.clone()), 1.0)]);
        }
        let j = rot90(xv);
        let back: Vec<f64> = j.iter().map(|c| -c).collect();
        let ccw = PathDescriptor::arc(xv.to_vec(), j, theta);
        let cw = PathDescriptor::arc(xv.to_vec(), back, 2.0 * PI - theta);
        assemble(&sp, x, y, vec![(ccw, (2.0 * PI - theta) / (2.0 * PI)), (cw, theta / (2.0 * PI))])
    })
}

fn neg(v: &[f64]) -> Vec<f64> {
    v.iter().map(|c| -c).collect()
}

/// Semicircle x → −x in the direction `tangent`, then the geodesic −x → y.
fn through_antipode(space: &Space, x: &[f64], tangent: Vec<f64>, y: &[f64]) -> Result<PathDescriptor, PlannerError> {
    let half = PathDescriptor::arc(x.to_vec(), tangent, PI);
    let rest = PathDescriptor::geodesic(&neg(x), y)?;
    Ok(PathDescriptor::concat(space, half, rest)?)
}

fn sphere_config(ramps: &SphereRamps) -> serde_json::Value {
    serde_json::to_value(ramps).expect("plain numbers")
}

/// Two-piece planner on odd spheres built from the nowhere-vanishing tangent
/// field v(x) = (−x₂, x₁, −x₄, x₃, …).
pub fn odd_sphere_planner(n: usize) -> Result<Planner, PlannerError> {
    odd_sphere_planner_with(n, SphereRamps::default())
}

pub fn odd_sphere_planner_with(n: usize, ramps: SphereRamps) -> Result<Planner, PlannerError> {
    if n.is_multiple_of(2) {
        return Err(PlannerError::Unsupported(format!("odd_sphere_planner needs odd n, got {n}")));
    }
    let space = Space::Sphere(n);
    let sp = space.clone();
    Ok(Planner::new(format!("odd_sphere({n})"), space, 2, sphere_config(&ramps), move |x, y| {
        let (xv, yv) = (vec_of(x), vec_of(y));
        let theta = angle_between(xv, yv);
        if theta <= 1e-12 {
            return assemble(&sp, x, y, vec![(PathDescriptor::constant(x.clone()), 1.0)]);
        }
        let w_b = ramps.antipodal.at(theta);
        let mut pieces = Vec::new();
        if w_b < 1.0 {
            // geodesic piece lives where y ≠ −x
            pieces.push((PathDescriptor::geodesic(xv, yv)?, 1.0 - w_b));
        }
        if w_b > 0.0 {
            let v: Vec<f64> = xv.chunks(2).flat_map(|p| [-p[1], p[0]]).collect();
            pieces.push((through_antipode(&sp, xv, v, yv)?, w_b));
        }
        assemble(&sp, x, y, pieces)
    }))
}

/// Three-piece planner on even spheres. Pieces B and C both go to −x along
/// a semicircle and then take the geodesic to y. B turns towards the
/// tangent field of e = e₁, which vanishes at ±e; C uses the field of e₂,
/// which vanishes at ±e₂, where |⟨x, e⟩| = 0 and C carries no weight.
/// At x = e, piece C is the semicircle from e to −e through e₂.
pub fn even_sphere_planner(n: usize) -> Result<Planner, PlannerError> {
    even_sphere_planner_with(n, SphereRamps::default())
}

pub fn even_sphere_planner_with(n: usize, ramps: SphereRamps) -> Result<Planner, PlannerError> {
    if n % 2 == 1 {
        return Err(PlannerError::Unsupported(format!("even_sphere_planner needs even n, got {n}")));
    }
    let space = Space::Sphere(n);
    let sp = space.clone();
    let e = Point::unit(n + 1, 0).vector().expect("vector").to_vec();
    let e2 = Point::unit(n + 1, 1).vector().expect("vector").to_vec();
    Ok(Planner::new(format!("even_sphere({n})"), space, 3, sphere_config(&ramps), move |x, y| {
        let (xv, yv) = (vec_of(x), vec_of(y));
        let theta = angle_between(xv, yv);
        if theta <= 1e-12 {
            return assemble(&sp, x, y, vec![(PathDescriptor::constant(x.clone()), 1.0)]);
        }
        let r = ramps.antipodal.at(theta);
        let h_signed = dot(xv, &e);
        let q = ramps.polar.at(h_signed.abs());
        let (w_a, w_b, w_c) = (1.0 - r, r * (1.0 - q), r * q);
        let mut pieces = Vec::new();
        if w_a > 0.0 {
            pieces.push((PathDescriptor::geodesic(xv, yv)?, w_a));
        }
        if w_b > 0.0 {
            let w = normalized(&e.iter().zip(xv).map(|(a, b)| a - h_signed * b).collect::<Vec<_>>());
            pieces.push((through_antipode(&sp, xv, w, yv)?, w_b));
        }
        if w_c > 0.0 {
            let h2 = dot(xv, &e2);
            let w = normalized(&e2.iter().zip(xv).map(|(a, b)| a - h2 * b).collect::<Vec<_>>());
            pieces.push((through_antipode(&sp, xv, w, yv)?, w_c));
        }
        assemble(&sp, x, y, pieces)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{self, ratio};

    fn weights(d: &crate::geometry::DistributedPath) -> Vec<f64> {
        d.measure().atoms().iter().map(|a| rational::to_f64(&a.weight)).collect()
    }

    #[test]
    fn rpn_equal_points_give_dirac_constant() {
        let p = rpn_planner(2);
        let x = Point::Vector(vec![0.6, 0.8, 0.0]);
        let d = p.plan(&x, &x).unwrap();
        assert_eq!(d.support_size(), 1);
        assert_eq!(d.measure().atoms()[0].elem, PathDescriptor::constant(x));
    }

    #[test]
    fn rpn_weights() {
        let p = rpn_planner(2);
        let x = Point::unit(3, 0);
        let d = p.plan(&x, &Point::unit(3, 1)).unwrap();
        let w = weights(&d);
        assert!((w[0] - 0.5).abs() < 1e-15 && (w[1] - 0.5).abs() < 1e-15);
        let y = Point::Vector(vec![0.5, 3f64.sqrt() / 2.0, 0.0]);
        let d = p.plan(&x, &y).unwrap();
        let w = weights(&d);
        assert!((w[0] - 2.0 / 3.0).abs() < 1e-12 && (w[1] - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(d.measure().total_mass(), rational::one());
    }

    #[test]
    fn circle_weights() {
        let p = circle_planner();
        let d = p.plan(&Point::unit(2, 0), &Point::Vector(vec![-1.0, 0.0])).unwrap();
        assert_eq!(d.measure().atoms()[0].weight, ratio(1, 2));
        assert_eq!(d.measure().atoms()[1].weight, ratio(1, 2));
        let x = Point::unit(2, 0);
        assert!(p.plan(&x, &x).unwrap().measure().is_dirac());
    }

    #[test]
    fn odd_sphere_examples() {
        let p = odd_sphere_planner(3).unwrap();
        let x = Point::unit(4, 0);
        let anti = Point::Vector(vec![-1.0, 0.0, 0.0, 0.0]);
        let d = p.plan(&x, &anti).unwrap();
        assert_eq!(d.support_size(), 1);
        // midpoint of the semicircle is v(x) = e₂
        let mid = d.measure().atoms()[0].elem.eval(0.25).unwrap();
        assert!(Space::Sphere(3).distance(&mid, &Point::unit(4, 1)).unwrap() < 1e-12);
        let at = |theta: f64| Point::Vector(vec![theta.cos(), theta.sin(), 0.0, 0.0]);
        let w = weights(&p.plan(&x, &at(1.75)).unwrap());
        assert!((w[0] - 0.5).abs() < 1e-12 && (w[1] - 0.5).abs() < 1e-12, "{w:?}");
        assert_eq!(p.plan(&x, &at(1.2)).unwrap().support_size(), 1);
        assert_eq!(p.plan(&x, &at(2.3)).unwrap().support_size(), 1);
        assert!(odd_sphere_planner(2).is_err());
    }

    #[test]
    fn even_sphere_examples() {
        let p = even_sphere_planner(2).unwrap();
        let s2 = Space::Sphere(2);
        // x ⊥ e, antipodal: B only
        let x = Point::unit(3, 2);
        let d = p.plan(&x, &Point::Vector(vec![0.0, 0.0, -1.0])).unwrap();
        assert_eq!(d.support_size(), 1);
        let mid = d.measure().atoms()[0].elem.eval(0.25).unwrap();
        assert!(s2.distance(&mid, &Point::unit(3, 0)).unwrap() < 1e-12);
        // (e, −e): C only, the semicircle through e₂ over t ∈ [0, 1/2]
        let e = Point::unit(3, 0);
        let d = p.plan(&e, &Point::Vector(vec![-1.0, 0.0, 0.0])).unwrap();
        assert_eq!(d.support_size(), 1);
        let mid = d.measure().atoms()[0].elem.eval(0.25).unwrap();
        assert!(s2.distance(&mid, &Point::unit(3, 1)).unwrap() < 1e-12);
        assert!(p.plan(&e, &e).unwrap().measure().is_dirac());
        assert!(even_sphere_planner(3).is_err());
    }
}
