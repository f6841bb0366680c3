use serde_json::json;

use super::{assemble, Planner, PlannerError};
use crate::geometry::{MetricGraph, PathDescriptor, Point, PointMap, Side, Space, WedgeSpace};

fn position(p: &Point) -> (usize, f64) {
    match p {
        Point::Graph { edge, t } => (*edge, *t),
        _ => unreachable!("checked by Planner::plan"),
    }
}

fn require_tree(g: &MetricGraph) -> Result<(), PlannerError> {
    // connectivity is a MetricGraph invariant
    if g.edge_count() + 1 != g.vertex_count() {
        return Err(PlannerError::Unsupported("graph is not a tree".into()));
    }
    Ok(())
}

/// Dirac planner along the unique geodesic of a metric tree.
pub fn tree_geodesic_planner(graph: MetricGraph) -> Result<Planner, PlannerError> {
    require_tree(&graph)?;
    let space = Space::MetricGraph(graph.clone());
    let sp = space.clone();
    Ok(Planner::new("tree_geodesic", space, 1, json!({}), move |x, y| {
        let path = PathDescriptor::edge_walk(&graph, position(x), position(y));
        assemble(&sp, x, y, vec![(path, 1.0)])
    }))
}

/// Dirac geodesic planner on a wedge of two metric trees; paths between the
/// two sides run through the wedge point.
pub fn wedge_of_trees_planner(
    left: MetricGraph,
    right: MetricGraph,
    left_vertex: usize,
    right_vertex: usize,
) -> Result<Planner, PlannerError> {
    require_tree(&left)?;
    require_tree(&right)?;
    let wedge = WedgeSpace {
        left_base: left.vertex_point(left_vertex),
        right_base: right.vertex_point(right_vertex),
        left: Space::MetricGraph(left.clone()),
        right: Space::MetricGraph(right.clone()),
    };
    let space = Space::Wedge(Box::new(wedge.clone()));
    space.validate()?;
    let sp = space.clone();
    Ok(Planner::new("wedge_of_trees", space, 1, json!({}), move |x, y| {
        let (Point::Wedge { side: sx, point: px }, Point::Wedge { side: sy, point: py }) = (x, y) else {
            unreachable!("checked by Planner::plan")
        };
        let graph = |s: Side| if s == Side::Left { &left } else { &right };
        let walk = |s: Side, a: &Point, b: &Point| {
            PathDescriptor::mapped(PointMap::WedgeInclude { side: s }, PathDescriptor::edge_walk(graph(s), position(a), position(b)))
        };
        let path = if sx == sy {
            walk(*sx, px, py)
        } else {
            let (_, bx) = wedge.factor(*sx);
            let (_, by) = wedge.factor(*sy);
            PathDescriptor::concat(&sp, walk(*sx, px, bx), walk(*sy, by, py))?
        };
        assemble(&sp, x, y, vec![(path, 1.0)])
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_is_not_a_tree() {
        let g = MetricGraph::new(3, vec![(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)]).unwrap();
        assert!(tree_geodesic_planner(g).is_err());
    }

    #[test]
    fn wedge_paths_cross_the_basepoint() {
        let a = MetricGraph::new(2, vec![(0, 1, 1.0)]).unwrap();
        let p = wedge_of_trees_planner(a.clone(), a, 0, 0).unwrap();
        let x = Point::Wedge { side: Side::Left, point: Box::new(Point::Graph { edge: 0, t: 1.0 }) };
        let y = Point::Wedge { side: Side::Right, point: Box::new(Point::Graph { edge: 0, t: 0.5 }) };
        let d = p.plan(&x, &y).unwrap();
        let mid = d.measure().atoms()[0].elem.eval(0.5).unwrap();
        assert!(p.space().distance(&mid, &p.space().basepoint()).unwrap() < 1e-12);
    }
}
