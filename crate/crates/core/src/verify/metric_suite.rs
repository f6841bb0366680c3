use num::{BigRational, One, Zero};
use rand::seq::index::sample;
use rand::Rng;
use serde::Serialize;

use super::{rng_from_seed, MAX_VIOLATION_EXAMPLES};
use crate::measure::{lp_distance, FiniteMetric, FiniteSupportMeasure};
use crate::rational::{format_fraction, ratio};

/// Where the ground metric of each trial comes from.
#[derive(Clone, Debug)]
pub enum MetricSource {
    /// fresh random rational metric on this many points per trial
    RandomRational { points: usize },
    Fixed(FiniteMetric),
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct MetricSuiteReport {
    pub trials: usize,
    pub seed: u64,
    pub max_support: usize,
    /// ground-metric axiom failures (identity, symmetry, triangle)
    pub oracle_violations: usize,
    /// Lévy-Prokhorov axiom failures and Dirac-formula mismatches
    pub lp_violations: usize,
    pub examples: Vec<String>,
}

impl MetricSuiteReport {
    pub fn is_clean(&self) -> bool {
        self.oracle_violations == 0 && self.lp_violations == 0
    }
}

/// Random metric on `n` points: rational edge weights p/q with p ≤ 12, q ≤ 6,
/// closed under shortest paths so the triangle inequality holds exactly.
pub fn random_rational_metric<R: Rng + ?Sized>(n: usize, rng: &mut R) -> FiniteMetric {
    let mut d = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let w = ratio(rng.gen_range(1..=12), rng.gen_range(1..=6));
            d[i][j] = w.clone();
            d[j][i] = w;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = &d[i][k] + &d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    FiniteMetric::new(d)
}

fn random_measure<R: Rng + ?Sized>(n: usize, max_support: usize, rng: &mut R) -> FiniteSupportMeasure<usize> {
    let k = rng.gen_range(1..=max_support.min(n));
    let pairs: Vec<(usize, BigRational)> =
        sample(rng, n, k).into_iter().map(|i| (i, ratio(rng.gen_range(1..=9), 1))).collect();
    FiniteSupportMeasure::from_pairs(pairs, true).expect("positive weights")
}

fn oracle_failures(m: &FiniteMetric) -> Vec<String> {
    let d = m.matrix();
    let n = m.len();
    let mut out = Vec::new();
    for i in 0..n {
        if !d[i][i].is_zero() {
            out.push(format!("d({i},{i}) ≠ 0"));
        }
        for j in 0..n {
            if d[i][j] != d[j][i] {
                out.push(format!("d({i},{j}) ≠ d({j},{i})"));
            }
            if i != j && d[i][j] <= BigRational::zero() {
                out.push(format!("d({i},{j}) not positive"));
            }
            for k in 0..n {
                if d[i][k] > &d[i][j] + &d[j][k] {
                    out.push(format!("triangle fails: d({i},{k}) > d({i},{j}) + d({j},{k})"));
                }
            }
        }
    }
    out
}

fn lp(a: &FiniteSupportMeasure<usize>, b: &FiniteSupportMeasure<usize>, m: &FiniteMetric) -> BigRational {
    lp_distance(a, b, m).expect("supports are below the cap")
}

/// Exact axiom checks of the Lévy-Prokhorov metric over random measures.
pub fn metric_axiom_suite(source: &MetricSource, trials: usize, max_support: usize, seed: u64) -> MetricSuiteReport {
    let mut rng = rng_from_seed(seed);
    let mut report = MetricSuiteReport {
        trials,
        seed,
        max_support,
        oracle_violations: 0,
        lp_violations: 0,
        examples: Vec::new(),
    };
    let note = |report: &mut MetricSuiteReport, msg: String| {
        if report.examples.len() < MAX_VIOLATION_EXAMPLES {
            report.examples.push(msg);
        }
    };
    for trial in 0..trials {
        let metric = match source {
            MetricSource::RandomRational { points } => random_rational_metric(*points, &mut rng),
            MetricSource::Fixed(m) => m.clone(),
        };
        let n = metric.len();
        let bad = oracle_failures(&metric);
        if !bad.is_empty() {
            report.oracle_violations += 1;
            note(&mut report, format!("trial {trial}: {}", bad.join(", ")));
        }
        let (mu, nu, xi) = (
            random_measure(n, max_support, &mut rng),
            random_measure(n, max_support, &mut rng),
            random_measure(n, max_support, &mut rng),
        );
        let (mn, nm, nx, mx) = (lp(&mu, &nu, &metric), lp(&nu, &mu, &metric), lp(&nu, &xi, &metric), lp(&mu, &xi, &metric));
        let mut fails = Vec::new();
        if !lp(&mu, &mu, &metric).is_zero() {
            fails.push("ρ(μ,μ) ≠ 0".to_string());
        }
        if mn != nm {
            fails.push(format!("asymmetric: {} vs {}", format_fraction(&mn), format_fraction(&nm)));
        }
        if mx > &mn + &nx {
            fails.push(format!("triangle: {} > {} + {}", format_fraction(&mx), format_fraction(&mn), format_fraction(&nx)));
        }
        if mn > BigRational::one() {
            fails.push("distance above 1".to_string());
        }
        if mn.is_zero() && mu != nu {
            fails.push("distinct measures at distance 0".to_string());
        }
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let dirac = lp(&FiniteSupportMeasure::dirac(i), &FiniteSupportMeasure::dirac(j), &metric);
        let expected = metric.matrix()[i][j].clone().min(BigRational::one());
        if dirac != expected {
            fails.push(format!("ρ(δ{i},δ{j}) = {} ≠ {}", format_fraction(&dirac), format_fraction(&expected)));
        }
        if !fails.is_empty() {
            report.lp_violations += 1;
            note(&mut report, format!("trial {trial}: {}", fails.join(", ")));
        }
    }
    report
}
