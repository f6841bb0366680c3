//! Batch checks of planners, contractions and Lévy-Prokhorov metrics.

mod continuity;
mod fixtures;
mod metric_suite;

use num::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::geometry::{point_to_json, DistributedPath, Point, Space, ENDPOINT_TOLERANCE};
use crate::planners::{Contraction, Planner, PlannerError};
use crate::rational::{self, format_fraction};

pub use continuity::{continuity_profile, ContinuityProfile, ContinuitySettings, DEFAULT_SCALES};
pub use fixtures::{branch_cut_circle_planner, constant_output_planner, non_metric_fixture, swapped_endpoint_planner};
pub use metric_suite::{metric_axiom_suite, random_rational_metric, MetricSource, MetricSuiteReport};

/// Stored violation examples are capped; the count is always exact.
pub const MAX_VIOLATION_EXAMPLES: usize = 50;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Violation {
    pub input: Value,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct AuditReport {
    pub name: String,
    pub samples: usize,
    pub seed: u64,
    pub declared_pieces: usize,
    pub max_endpoint_error: f64,
    /// largest |total mass − 1|, as a fraction
    pub mass_defect: String,
    pub max_support: usize,
    pub violation_count: usize,
    pub violations: Vec<Violation>,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.violation_count == 0
    }
}

/// Seeded RNG used by every harness.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

struct Tally {
    report: AuditReport,
    worst_mass: BigRational,
}

impl Tally {
    fn new(name: &str, samples: usize, seed: u64, pieces: usize) -> Self {
        Tally {
            report: AuditReport {
                name: name.to_string(),
                samples,
                seed,
                declared_pieces: pieces,
                max_endpoint_error: 0.0,
                mass_defect: String::new(),
                max_support: 0,
                violation_count: 0,
                violations: Vec::new(),
            },
            worst_mass: rational::zero(),
        }
    }

    fn violate(&mut self, input: Value, reason: String) {
        self.report.violation_count += 1;
        if self.report.violations.len() < MAX_VIOLATION_EXAMPLES {
            self.report.violations.push(Violation { input, reason });
        }
    }

    fn check(&mut self, space: &Space, input: Value, x: &Point, y: &Point, out: Result<DistributedPath, PlannerError>) {
        let d = match out {
            Ok(d) => d,
            Err(e) => return self.violate(input, format!("rule failed: {e}")),
        };
        let mut reasons = Vec::new();
        let err = match endpoint_error(space, &d, x, y) {
            Ok(e) => e,
            Err(e) => {
                reasons.push(format!("evaluation failed: {e}"));
                f64::INFINITY
            }
        };
        self.report.max_endpoint_error = self.report.max_endpoint_error.max(err);
        if err > ENDPOINT_TOLERANCE {
            reasons.push(format!("endpoint error {err:e}"));
        }
        let defect = num::Signed::abs(&(d.measure().total_mass() - rational::one()));
        if defect > self.worst_mass {
            self.worst_mass = defect.clone();
        }
        if defect != rational::zero() {
            reasons.push(format!("mass defect {}", format_fraction(&defect)));
        }
        let support = d.support_size();
        self.report.max_support = self.report.max_support.max(support);
        if support > self.report.declared_pieces {
            reasons.push(format!("support {support} exceeds {}", self.report.declared_pieces));
        }
        if !reasons.is_empty() {
            self.violate(input, reasons.join("; "));
        }
    }

    fn finish(mut self) -> AuditReport {
        self.report.mass_defect = format_fraction(&self.worst_mass);
        self.report
    }
}

/// Largest distance of any piece endpoint, or of the declared endpoints,
/// from the requested (x, y).
fn endpoint_error(space: &Space, d: &DistributedPath, x: &Point, y: &Point) -> Result<f64, PlannerError> {
    let mut err = space.distance(d.source(), x)?.max(space.distance(d.target(), y)?);
    for a in d.measure().atoms() {
        err = err.max(space.distance(&a.elem.source()?, x)?);
        err = err.max(space.distance(&a.elem.target()?, y)?);
    }
    Ok(err)
}

/// Independent uniform draws on the space's natural parameterization.
pub(crate) fn sample_pair<R: rand::Rng>(space: &Space, rng: &mut R) -> (Point, Point) {
    let x = space.sample(rng);
    let y = space.sample(rng);
    (x, y)
}

pub fn audit_planner(planner: &Planner, samples: usize, seed: u64) -> AuditReport {
    let space = planner.space();
    let mut rng = rng_from_seed(seed);
    let mut tally = Tally::new(planner.name(), samples, seed, planner.pieces());
    for _ in 0..samples {
        let (x, y) = sample_pair(space, &mut rng);
        let input = serde_json::json!([point_to_json(&x), point_to_json(&y)]);
        let out = planner.plan(&x, &y);
        tally.check(space, input, &x, &y, out);
    }
    tally.finish()
}

pub fn audit_contraction(h: &Contraction, samples: usize, seed: u64) -> AuditReport {
    let space = h.space();
    let mut rng = rng_from_seed(seed);
    let mut tally = Tally::new(h.name(), samples, seed, h.pieces());
    for k in 0..samples {
        let x = if k % 8 == 0 { h.basepoint().clone() } else { space.sample(&mut rng) };
        let input = serde_json::json!([point_to_json(&x)]);
        let out = h.contract(&x);
        tally.check(space, input, &x, h.basepoint(), out);
    }
    tally.finish()
}
