use serde::Serialize;

use super::{rng_from_seed, sample_pair};
use crate::geometry::{path_sup_distance, DistributedPath, GeometryError, Space};
use crate::measure::{lp_distance_bounds_from_intervals, Interval};
use crate::planners::{Planner, PlannerError};

pub const DEFAULT_SCALES: [f64; 4] = [0.2, 0.1, 0.05, 0.025];

/// Sup-distance grid used to screen a pair. While a pair's upper bound could
/// raise the running maximum, the table entries that can still lower it are
/// re-measured on a 4× finer grid, up to `sup_samples`.
const COARSE_SUP_SAMPLES: usize = 65;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContinuitySettings {
    pub scales: Vec<f64>,
    pub pairs_per_scale: usize,
    pub sup_samples: usize,
    pub seed: u64,
}

impl Default for ContinuitySettings {
    fn default() -> Self {
        ContinuitySettings { scales: DEFAULT_SCALES.to_vec(), pairs_per_scale: 2000, sup_samples: 4097, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContinuityProfile {
    pub name: String,
    pub scales: Vec<f64>,
    /// max over sampled pairs of the certified upper bound on the
    /// Lévy-Prokhorov distance between the two outputs
    pub moduli: Vec<f64>,
    pub pairs_per_scale: usize,
    pub sup_samples: usize,
    pub seed: u64,
}

impl ContinuityProfile {
    pub fn non_increasing(&self) -> bool {
        self.moduli.windows(2).all(|w| w[1] <= w[0])
    }

    pub fn finest(&self) -> f64 {
        *self.moduli.last().expect("at least one scale")
    }
}

/// Empirical modulus of continuity of a planner: for each δ, the largest LP
/// distance between s(x, y) and s(x', y') over sampled pairs with
/// d(x, x'), d(y, y') ≤ δ, measured with the sup metric on paths.
pub fn continuity_profile(planner: &Planner, settings: &ContinuitySettings) -> Result<ContinuityProfile, PlannerError> {
    if settings.scales.is_empty() || settings.scales.windows(2).any(|w| w[1] >= w[0]) {
        return Err(PlannerError::Unsupported("scales must be non-empty and strictly decreasing".into()));
    }
    let space = planner.space();
    let mut moduli = Vec::with_capacity(settings.scales.len());
    for (i, &delta) in settings.scales.iter().enumerate() {
        let mut rng = rng_from_seed(settings.seed.wrapping_add(i as u64));
        let mut worst: f64 = 0.0;
        for _ in 0..settings.pairs_per_scale {
            let (x, y) = sample_pair(space, &mut rng);
            let x2 = space.perturb(&x, delta, &mut rng)?;
            let y2 = space.perturb(&y, delta, &mut rng)?;
            let a = planner.plan(&x, &y)?;
            let b = planner.plan(&x2, &y2)?;
            worst = worst.max(refined_upper_bound(space, &a, &b, worst, settings.sup_samples)?);
        }
        moduli.push(worst);
    }
    Ok(ContinuityProfile {
        name: planner.name().to_string(),
        scales: settings.scales.clone(),
        moduli,
        pairs_per_scale: settings.pairs_per_scale,
        sup_samples: settings.sup_samples,
        seed: settings.seed,
    })
}

/// Upper bound on the LP distance, refined only as far as needed to decide
/// whether it exceeds `floor`. An entry with lo ≥ the current bound cannot
/// lower it, so only the others are re-measured.
fn refined_upper_bound(
    space: &Space,
    a: &DistributedPath,
    b: &DistributedPath,
    floor: f64,
    max_samples: usize,
) -> Result<f64, PlannerError> {
    let mut samples = COARSE_SUP_SAMPLES.min(max_samples);
    let (pa, pb) = (a.measure().atoms(), b.measure().atoms());
    let mut table = Vec::with_capacity(pa.len());
    for x in pa {
        table.push(pb.iter().map(|y| path_sup_distance(space, &x.elem, &y.elem, samples)).collect::<Result<Vec<_>, _>>()?);
    }
    let bound = |t: &[Vec<Interval>]| lp_distance_bounds_from_intervals(a.measure(), b.measure(), t).map(|i| i.hi);
    let mut hi = bound(&table).map_err(GeometryError::from)?;
    while hi > floor && samples < max_samples {
        samples = ((samples - 1) * 4 + 1).min(max_samples);
        for (i, row) in table.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                if cell.lo < hi && cell.hi > cell.lo {
                    let fine = path_sup_distance(space, &pa[i].elem, &pb[j].elem, samples)?;
                    *cell = Interval { lo: cell.lo.max(fine.lo), hi: cell.hi.min(fine.hi) };
                }
            }
        }
        hi = hi.min(bound(&table).map_err(GeometryError::from)?);
    }
    Ok(hi)
}
