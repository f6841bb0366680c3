use crate::measure::{lp_distance_bounds_from_intervals, FiniteSupportMeasure, Interval, MeasureError};
use crate::rational::Weight;

use super::{GeometryError, PathDescriptor, Point, Space};

/// Endpoints of every atom must match the declared ones this closely.
pub const ENDPOINT_TOLERANCE: f64 = 1e-9;

pub const DEFAULT_SUP_SAMPLES: usize = 64;

/// Enclosure of sup_t d(φ(t), ψ(t)) from `samples` equally spaced evaluations.
///
/// Between grid points the distance moves by at most (L_φ + L_ψ)·|Δt|, and the
/// farthest point from a grid node is half a step away.
pub fn path_sup_distance(
    space: &Space,
    phi: &PathDescriptor,
    psi: &PathDescriptor,
    samples: usize,
) -> Result<Interval, GeometryError> {
    if samples < 2 {
        return Err(GeometryError::Malformed("sup distance needs at least two samples".into()));
    }
    let mut lo: f64 = 0.0;
    for k in 0..samples {
        let t = k as f64 / (samples - 1) as f64;
        lo = lo.max(space.distance(&phi.eval(t)?, &psi.eval(t)?)?);
    }
    let slack = (phi.lipschitz() + psi.lipschitz()) / (2.0 * (samples - 1) as f64);
    Ok(Interval { lo, hi: lo + slack })
}

/// A finitely supported probability measure on paths sharing source and target.
#[derive(Clone, Debug, PartialEq)]
pub struct DistributedPath {
    source: Point,
    target: Point,
    measure: FiniteSupportMeasure<PathDescriptor>,
}

impl DistributedPath {
    /// Builds and validates: weights must sum to one and every piece must run
    /// from `source` to `target`.
    pub fn new(
        space: &Space,
        source: Point,
        target: Point,
        pieces: Vec<(PathDescriptor, Weight)>,
    ) -> Result<Self, GeometryError> {
        let measure = FiniteSupportMeasure::from_pairs(pieces, false).map_err(measure_err)?;
        let out = DistributedPath { source, target, measure };
        out.validate(space)?;
        Ok(out)
    }

    /// No endpoint check; used by fixtures that are deliberately broken.
    pub fn unchecked(source: Point, target: Point, measure: FiniteSupportMeasure<PathDescriptor>) -> Self {
        DistributedPath { source, target, measure }
    }

    pub fn dirac(space: &Space, path: PathDescriptor) -> Result<Self, GeometryError> {
        let (s, t) = (path.source()?, path.target()?);
        DistributedPath::new(space, s, t, vec![(path, crate::rational::one())])
    }

    pub fn source(&self) -> &Point {
        &self.source
    }

    pub fn target(&self) -> &Point {
        &self.target
    }

    pub fn measure(&self) -> &FiniteSupportMeasure<PathDescriptor> {
        &self.measure
    }

    pub fn support_size(&self) -> usize {
        self.measure.len()
    }

    /// Largest endpoint defect over all pieces.
    pub fn endpoint_defect(&self, space: &Space) -> Result<f64, GeometryError> {
        let mut worst: f64 = 0.0;
        for atom in self.measure.atoms() {
            worst = worst.max(space.distance(&atom.elem.source()?, &self.source)?);
            worst = worst.max(space.distance(&atom.elem.target()?, &self.target)?);
        }
        Ok(worst)
    }

    pub fn validate(&self, space: &Space) -> Result<(), GeometryError> {
        space.check(&self.source)?;
        space.check(&self.target)?;
        let defect = self.endpoint_defect(space)?;
        if defect > ENDPOINT_TOLERANCE {
            return Err(GeometryError::EndpointMismatch(format!("piece endpoint off by {defect:e}")));
        }
        Ok(())
    }

    /// Φ(Δ)(t) = Σ λ_φ δ_{φ(t)}; coincident points are merged.
    pub fn flatten_at(&self, space: &Space, t: f64) -> Result<FiniteSupportMeasure<Point>, GeometryError> {
        self.measure.try_pushforward_by(|p| p.eval(t), |a, b| space.same_point(a, b))
    }

    /// Φ(Δ) on an equally spaced grid of `samples` parameters.
    pub fn flatten(&self, space: &Space, samples: usize) -> Result<Vec<(f64, FiniteSupportMeasure<Point>)>, GeometryError> {
        let n = samples.max(2);
        (0..n)
            .map(|k| {
                let t = k as f64 / (n - 1) as f64;
                Ok((t, self.flatten_at(space, t)?))
            })
            .collect()
    }

    /// Lévy-Prokhorov distance to another distributed path over the
    /// sup-metric on paths, enclosed from sampled sup distances.
    pub fn lp_distance_bounds(&self, other: &DistributedPath, space: &Space, samples: usize) -> Result<Interval, GeometryError> {
        let mut table = Vec::with_capacity(self.measure.len());
        for a in self.measure.atoms() {
            let mut row = Vec::with_capacity(other.measure.len());
            for b in other.measure.atoms() {
                row.push(path_sup_distance(space, &a.elem, &b.elem, samples)?);
            }
            table.push(row);
        }
        lp_distance_bounds_from_intervals(&self.measure, &other.measure, &table).map_err(measure_err)
    }
}

fn measure_err(e: MeasureError) -> GeometryError {
    GeometryError::Measure(e)
}
