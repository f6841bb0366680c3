use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{GeometryError, Point};

/// Connected metric graph. Points are positions `(edge, t)` with `t` running
/// from the first endpoint (t = 0) to the second (t = 1).
#[derive(Clone, Debug, PartialEq)]
pub struct MetricGraph {
    vertices: usize,
    edges: Vec<(usize, usize, f64)>,
    /// all-pairs shortest vertex distances
    dist: Vec<Vec<f64>>,
    /// next hop on a shortest route: (neighbour vertex, edge id)
    next: Vec<Vec<Option<(usize, usize)>>>,
}

/// A straight piece of an edge walk, from `t0` to `t1` along `edge`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeSegment {
    pub edge: usize,
    pub t0: f64,
    pub t1: f64,
    /// metric length of the piece
    pub length: f64,
}

impl MetricGraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self, GeometryError> {
        if vertices == 0 || edges.is_empty() {
            return Err(GeometryError::InvalidSpace("graph needs at least one edge".into()));
        }
        for &(u, v, len) in &edges {
            if u >= vertices || v >= vertices {
                return Err(GeometryError::InvalidSpace(format!("edge ({u},{v}) references a missing vertex")));
            }
            if !(len > 0.0 && len.is_finite()) {
                return Err(GeometryError::InvalidSpace(format!("edge ({u},{v}) has non-positive length")));
            }
        }
        let mut dist = vec![vec![f64::INFINITY; vertices]; vertices];
        let mut next = vec![vec![None; vertices]; vertices];
        for s in 0..vertices {
            // Dijkstra, dense version; graphs here are small
            let (d, first) = dijkstra(vertices, &edges, s);
            dist[s] = d;
            next[s] = first;
        }
        if dist[0].iter().any(|d| d.is_infinite()) {
            return Err(GeometryError::InvalidSpace("graph is not connected".into()));
        }
        Ok(MetricGraph { vertices, edges, dist, next })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn edge_length(&self, e: usize) -> f64 {
        self.edges[e].2
    }

    pub fn vertex_distance(&self, u: usize, v: usize) -> f64 {
        self.dist[u][v]
    }

    /// Canonical point at a vertex: lowest incident edge.
    pub fn vertex_point(&self, v: usize) -> Point {
        let (e, &(a, _, _)) = self
            .edges
            .iter()
            .enumerate()
            .find(|(_, &(a, b, _))| a == v || b == v)
            .expect("connected graph has incident edges");
        Point::Graph { edge: e, t: if a == v { 0.0 } else { 1.0 } }
    }

    pub fn diameter(&self) -> f64 {
        // farthest pair of points can sit inside edges
        let mut best: f64 = 0.0;
        for e in 0..self.edges.len() {
            for f in 0..self.edges.len() {
                let (a, b, la) = self.edges[e];
                let (c, d, lb) = self.edges[f];
                let far = [a, b]
                    .iter()
                    .flat_map(|&x| [c, d].map(|y| self.dist[x][y]))
                    .fold(0.0, f64::max);
                best = best.max(far + la + lb);
            }
        }
        best
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        let total: f64 = self.edges.iter().map(|e| e.2).sum();
        let mut x = rng.gen::<f64>() * total;
        for (i, e) in self.edges.iter().enumerate() {
            if x < e.2 || i + 1 == self.edges.len() {
                return Point::Graph { edge: i, t: rng.gen() };
            }
            x -= e.2;
        }
        unreachable!()
    }

    fn check_position(&self, (e, t): (usize, f64)) -> Result<(), GeometryError> {
        if e >= self.edges.len() || !(0.0..=1.0).contains(&t) {
            return Err(GeometryError::MismatchedSpace(format!("edge position ({e},{t}) out of range")));
        }
        Ok(())
    }

    pub fn point_distance(&self, p: (usize, f64), q: (usize, f64)) -> Result<f64, GeometryError> {
        self.check_position(p)?;
        self.check_position(q)?;
        Ok(self.route(p, q).1)
    }

    /// Shortest route between edge positions: segments and total length.
    pub fn route(&self, (e1, t1): (usize, f64), (e2, t2): (usize, f64)) -> (Vec<EdgeSegment>, f64) {
        let (a, b, l1) = self.edges[e1];
        let (c, d, l2) = self.edges[e2];
        let mut best: (f64, Option<(usize, usize)>) = (f64::INFINITY, None);
        if e1 == e2 {
            best = ((t1 - t2).abs() * l1, None);
        }
        // leave through an endpoint of e1, enter through an endpoint of e2
        let exits = [(a, t1 * l1, 0.0), (b, (1.0 - t1) * l1, 1.0)];
        let entries = [(c, t2 * l2, 0.0), (d, (1.0 - t2) * l2, 1.0)];
        for (i, &(u, lu, _)) in exits.iter().enumerate() {
            for (j, &(v, lv, _)) in entries.iter().enumerate() {
                let total = lu + self.dist[u][v] + lv;
                if total < best.0 - 1e-15 {
                    best = (total, Some((i, j)));
                }
            }
        }
        let mut segs = Vec::new();
        match best.1 {
            None => segs.push(EdgeSegment { edge: e1, t0: t1, t1: t2, length: best.0 }),
            Some((i, j)) => {
                let (u, lu, tu) = exits[i];
                let (v, lv, tv) = entries[j];
                segs.push(EdgeSegment { edge: e1, t0: t1, t1: tu, length: lu });
                segs.extend(self.vertex_route(u, v));
                segs.push(EdgeSegment { edge: e2, t0: tv, t1: t2, length: lv });
            }
        }
        segs.retain(|s| s.length > 0.0);
        (segs, best.0)
    }

    /// Full edges traversed on a shortest route between two vertices.
    fn vertex_route(&self, mut u: usize, v: usize) -> Vec<EdgeSegment> {
        let mut out = Vec::new();
        while u != v {
            let (w, e) = self.next[u][v].expect("connected");
            let (a, _, len) = self.edges[e];
            let (t0, t1) = if a == u { (0.0, 1.0) } else { (1.0, 0.0) };
            out.push(EdgeSegment { edge: e, t0, t1, length: len });
            u = w;
        }
        out
    }
}

type Hops = Vec<Option<(usize, usize)>>;

/// Single-source distances plus, for each target, the first hop from `s`
/// on a shortest route to it.
fn dijkstra(n: usize, edges: &[(usize, usize, f64)], s: usize) -> (Vec<f64>, Hops) {
    let mut dist = vec![f64::INFINITY; n];
    let mut first: Hops = vec![None; n];
    let mut done = vec![false; n];
    dist[s] = 0.0;
    for _ in 0..n {
        let Some(u) = (0..n).filter(|&u| !done[u] && dist[u].is_finite()).min_by(|&x, &y| dist[x].total_cmp(&dist[y]))
        else {
            break;
        };
        done[u] = true;
        for (id, &(a, b, len)) in edges.iter().enumerate() {
            let w = if a == u {
                b
            } else if b == u {
                a
            } else {
                continue;
            };
            if dist[u] + len < dist[w] {
                dist[w] = dist[u] + len;
                first[w] = if u == s { Some((w, id)) } else { first[u] };
            }
        }
    }
    (dist, first)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_distances() {
        let g = MetricGraph::new(3, vec![(0, 1, 1.0), (1, 2, 1.0), (2, 0, 3.0)]).unwrap();
        assert_eq!(g.vertex_distance(0, 2), 2.0);
        // midpoint of the long edge to vertex 1
        let d = g.point_distance((2, 0.5), (0, 1.0)).unwrap();
        assert!((d - 2.5).abs() < 1e-12);
        let (segs, len) = g.route((0, 0.0), (1, 1.0));
        assert!((len - 2.0).abs() < 1e-12);
        assert_eq!(segs.len(), 2);
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(MetricGraph::new(3, vec![(0, 1, 1.0)]).is_err());
        assert!(MetricGraph::new(2, vec![(0, 1, 0.0)]).is_err());
        assert!(MetricGraph::new(2, vec![(0, 5, 1.0)]).is_err());
    }
}
