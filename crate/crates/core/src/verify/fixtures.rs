//! Deliberately broken planners and metrics used as negative controls.

use std::f64::consts::PI;

use serde_json::json;

use crate::geometry::{DistributedPath, MetricGraph, PathDescriptor, Space};
use crate::measure::{FiniteMetric, FiniteSupportMeasure};
use crate::planners::{circle_planner, Planner};
use crate::rational::ratio;

/// Circle planner whose paths run from y to x while claiming x → y.
pub fn swapped_endpoint_planner() -> Planner {
    let inner = circle_planner();
    Planner::new("swapped_endpoints", Space::Circle, 2, json!({}), move |x, y| {
        let d = inner.plan(y, x)?;
        Ok(DistributedPath::unchecked(x.clone(), y.clone(), d.measure().clone()))
    })
}

/// Dirac planner along the shorter arc, counter-clockwise at antipodes:
/// jumps across the antipodal branch cut.
pub fn branch_cut_circle_planner() -> Planner {
    Planner::new("branch_cut_geodesic", Space::Circle, 1, json!({}), move |x, y| {
        let (a, b) = (x.vector().expect("checked"), y.vector().expect("checked"));
        let mut theta = (a[0] * b[1] - a[1] * b[0]).atan2(a[0] * b[0] + a[1] * b[1]);
        if theta <= -PI + 1e-15 {
            theta = PI;
        }
        let dir = if theta >= 0.0 { vec![-a[1], a[0]] } else { vec![a[1], -a[0]] };
        let path = PathDescriptor::arc(a.to_vec(), dir, theta.abs());
        Ok(DistributedPath::unchecked(x.clone(), y.clone(), FiniteSupportMeasure::dirac(path)))
    })
}

/// Ignores its input and always returns the constant path at one vertex.
pub fn constant_output_planner() -> Planner {
    let g = MetricGraph::new(2, vec![(0, 1, 1.0)]).expect("one edge");
    let anchor = g.vertex_point(0);
    Planner::new("constant_output", Space::MetricGraph(g), 1, json!({}), move |x, y| {
        let path = PathDescriptor::constant(anchor.clone());
        Ok(DistributedPath::unchecked(x.clone(), y.clone(), FiniteSupportMeasure::dirac(path)))
    })
}

/// Four points with d(0,2) = 3 > d(0,1) + d(1,2) = 2.
pub fn non_metric_fixture() -> FiniteMetric {
    let d = |v: i64| ratio(v, 1);
    FiniteMetric::new(vec![
        vec![d(0), d(1), d(3), d(1)],
        vec![d(1), d(0), d(1), d(1)],
        vec![d(3), d(1), d(0), d(1)],
        vec![d(1), d(1), d(1), d(0)],
    ])
}
