//! Finitely supported probability measures and the Lévy-Prokhorov metric.
//!
//! A measure is a list of atoms with exact rational weights summing to one.
//! Element identity is decided by the caller (an equality predicate), so the
//! same type carries measures over finite metric spaces, geometric points and
//! path descriptors.

use std::cmp::Ordering;
use std::fmt::Debug;

use num::{BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{self, format_fraction, parse_fraction, Weight};

/// Largest support accepted by the exact Lévy-Prokhorov computation (2^15 subsets).
pub const MAX_LP_SUPPORT: usize = 15;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeasureError {
    #[error("measure has no atom with positive weight")]
    EmptySupport,
    #[error("weights sum to {sum}, expected 1")]
    NonUnitMass { sum: String },
    #[error("negative weight {weight}")]
    NegativeWeight { weight: String },
    #[error("support of size {size} exceeds the enumeration cap {cap}")]
    SupportTooLarge { size: usize, cap: usize },
    #[error("epsilon {epsilon} is not below half the minimal atom separation ({half_separation})")]
    EpsilonTooLarge { epsilon: f64, half_separation: f64 },
    #[error("malformed measure: {0}")]
    Malformed(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Atom<E> {
    pub elem: E,
    pub weight: Weight,
}

/// Probability measure supported on finitely many elements.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteSupportMeasure<E> {
    atoms: Vec<Atom<E>>,
}

impl<E> FiniteSupportMeasure<E> {
    pub fn atoms(&self) -> &[Atom<E>] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn is_dirac(&self) -> bool {
        self.atoms.len() == 1
    }

    pub fn total_mass(&self) -> BigRational {
        self.atoms.iter().map(|a| &a.weight).sum()
    }

    pub fn support(&self) -> impl Iterator<Item = &E> {
        self.atoms.iter().map(|a| &a.elem)
    }
}

impl<E: Clone> FiniteSupportMeasure<E> {
    pub fn dirac(elem: E) -> Self {
        FiniteSupportMeasure { atoms: vec![Atom { elem, weight: rational::one() }] }
    }

    /// Builds a measure from (element, weight) pairs.
    ///
    /// Zero weights are dropped and atoms judged equal by `same` are merged,
    /// keeping the first representative. Without `renormalize` the weights
    /// must already sum to exactly one.
    pub fn from_pairs_by(
        pairs: impl IntoIterator<Item = (E, Weight)>,
        same: impl Fn(&E, &E) -> bool,
        renormalize: bool,
    ) -> Result<Self, MeasureError> {
        let mut atoms: Vec<Atom<E>> = Vec::new();
        for (elem, weight) in pairs {
            if weight.is_negative() {
                return Err(MeasureError::NegativeWeight { weight: format_fraction(&weight) });
            }
            if weight.is_zero() {
                continue;
            }
            match atoms.iter_mut().find(|a| same(&a.elem, &elem)) {
                Some(a) => a.weight += weight,
                None => atoms.push(Atom { elem, weight }),
            }
        }
        if atoms.is_empty() {
            return Err(MeasureError::EmptySupport);
        }
        let sum: BigRational = atoms.iter().map(|a| &a.weight).sum();
        if !sum.is_one() {
            if !renormalize {
                return Err(MeasureError::NonUnitMass { sum: format_fraction(&sum) });
            }
            for a in &mut atoms {
                a.weight = &a.weight / &sum;
            }
        }
        Ok(FiniteSupportMeasure { atoms })
    }


    /// Push-forward along `f`; atoms with `same` images are summed.
    pub fn pushforward_by<G: Clone>(&self, f: impl Fn(&E) -> G, same: impl Fn(&G, &G) -> bool) -> FiniteSupportMeasure<G> {
        let pairs = self.atoms.iter().map(|a| (f(&a.elem), a.weight.clone()));
        FiniteSupportMeasure::from_pairs_by(pairs, same, false).expect("push-forward preserves mass")
    }

    /// Fallible push-forward, for element maps that can fail.
    pub fn try_pushforward_by<G: Clone, Err>(
        &self,
        f: impl Fn(&E) -> Result<G, Err>,
        same: impl Fn(&G, &G) -> bool,
    ) -> Result<FiniteSupportMeasure<G>, Err> {
        let mut pairs = Vec::with_capacity(self.atoms.len());
        for a in &self.atoms {
            pairs.push((f(&a.elem)?, a.weight.clone()));
        }
        Ok(FiniteSupportMeasure::from_pairs_by(pairs, same, false).expect("push-forward preserves mass"))
    }

    /// Convex combination `t·self + (1−t)·other`.
    pub fn mix_by(&self, t: &BigRational, other: &Self, same: impl Fn(&E, &E) -> bool) -> Result<Self, MeasureError> {
        if t.is_negative() || *t > rational::one() {
            return Err(MeasureError::Malformed(format!("mixing parameter {} outside [0,1]", format_fraction(t))));
        }
        let s = rational::one() - t;
        let pairs = self
            .atoms
            .iter()
            .map(|a| (a.elem.clone(), &a.weight * t))
            .chain(other.atoms.iter().map(|a| (a.elem.clone(), &a.weight * &s)));
        Self::from_pairs_by(pairs, same, false)
    }

    /// Product measure; `combine` builds the paired element.
    pub fn product_with<G: Clone, H: Clone>(
        &self,
        other: &FiniteSupportMeasure<G>,
        combine: impl Fn(&E, &G) -> H,
        same: impl Fn(&H, &H) -> bool,
    ) -> FiniteSupportMeasure<H> {
        let mut pairs = Vec::with_capacity(self.len() * other.len());
        for a in &self.atoms {
            for b in other.atoms() {
                pairs.push((combine(&a.elem, &b.elem), &a.weight * &b.weight));
            }
        }
        FiniteSupportMeasure::from_pairs_by(pairs, same, false).expect("product of probability measures")
    }
}

impl<E: Clone + PartialEq> FiniteSupportMeasure<E> {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (E, Weight)>, renormalize: bool) -> Result<Self, MeasureError> {
        Self::from_pairs_by(pairs, |a, b| a == b, renormalize)
    }

    pub fn pushforward<G: Clone + PartialEq>(&self, f: impl Fn(&E) -> G) -> FiniteSupportMeasure<G> {
        self.pushforward_by(f, |a, b| a == b)
    }

    pub fn mix(&self, t: &BigRational, other: &Self) -> Result<Self, MeasureError> {
        self.mix_by(t, other, |a, b| a == b)
    }

    pub fn weight_of(&self, elem: &E) -> Weight {
        self.atoms.iter().find(|a| a.elem == *elem).map(|a| a.weight.clone()).unwrap_or_else(rational::zero)
    }
}

/// Numeric type in which Lévy-Prokhorov values are computed: exact rationals
/// for synthetic metrics, floats for geometric carriers.
pub trait LpScalar: Clone + PartialOrd + Debug {
    fn zero() -> Self;
    fn from_weight(w: &Weight) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn half(&self) -> Self;
    fn div_usize(&self, n: usize) -> Self;
    fn to_f64(&self) -> f64;
}

impl LpScalar for BigRational {
    fn zero() -> Self {
        rational::zero()
    }
    fn from_weight(w: &Weight) -> Self {
        w.clone()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn half(&self) -> Self {
        self / BigRational::from_integer(2.into())
    }
    fn div_usize(&self, n: usize) -> Self {
        self / BigRational::from_integer(n.into())
    }
    fn to_f64(&self) -> f64 {
        rational::to_f64(self)
    }
}

impl LpScalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn from_weight(w: &Weight) -> Self {
        rational::to_f64(w)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn half(&self) -> Self {
        self / 2.0
    }
    fn div_usize(&self, n: usize) -> Self {
        self / n as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

/// A metric on elements of type `E`. The axioms are not checked at call time;
/// see `verify::metric_axiom_suite`.
pub trait MetricOracle<E> {
    type Distance: LpScalar;
    fn distance(&self, a: &E, b: &E) -> Self::Distance;
    fn diameter_bound(&self) -> Option<f64> {
        None
    }
}

impl<E, T: LpScalar, F: Fn(&E, &E) -> T> MetricOracle<E> for F {
    type Distance = T;
    fn distance(&self, a: &E, b: &E) -> T {
        self(a, b)
    }
}

/// Finite metric space on points `0..n` with exact rational distances.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteMetric {
    d: Vec<Vec<BigRational>>,
}

impl FiniteMetric {
    /// Wraps a distance matrix; only the shape is checked here.
    pub fn new(d: Vec<Vec<BigRational>>) -> Self {
        let n = d.len();
        assert!(d.iter().all(|row| row.len() == n), "distance matrix must be square");
        FiniteMetric { d }
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    pub fn matrix(&self) -> &[Vec<BigRational>] {
        &self.d
    }
}

impl MetricOracle<usize> for FiniteMetric {
    type Distance = BigRational;
    fn distance(&self, a: &usize, b: &usize) -> BigRational {
        self.d[*a][*b].clone()
    }
    fn diameter_bound(&self) -> Option<f64> {
        self.d.iter().flatten().map(rational::to_f64).fold(None, |acc, x| Some(acc.map_or(x, |a: f64| a.max(x))))
    }
}

fn partial_max<T: LpScalar>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}

fn check_support<E>(mu: &FiniteSupportMeasure<E>) -> Result<(), MeasureError> {
    if mu.len() > MAX_LP_SUPPORT {
        return Err(MeasureError::SupportTooLarge { size: mu.len(), cap: MAX_LP_SUPPORT });
    }
    Ok(())
}

/// Core of the semidistance on a precomputed distance table `d[i][j] = d(x_i, y_j)`.
///
/// For ε in an interval (b_k, b_{k+1}] between consecutive breakpoints, y_j lies in
/// the open ε-neighbourhood of C exactly when d(y_j, C) ≤ b_k, so ν(C^ε) is constant
/// there and the smallest feasible ε is max_C(μ(C) − ν(C^ε)) clipped below by b_k.
fn semidistance_table<T: LpScalar>(mu_w: &[T], nu_w: &[T], d: &[Vec<T>]) -> T {
    let n = mu_w.len();
    let m = nu_w.len();
    let mut breaks: Vec<T> = vec![T::zero()];
    breaks.extend(d.iter().flatten().cloned());
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    breaks.dedup_by(|a, b| a == b);

    let mu_sum = subset_sums(mu_w);
    let nu_sum = subset_sums(nu_w);
    // dist[mask][j] = d(y_j, C) for the subset C encoded by mask
    let mut dist: Vec<Vec<T>> = vec![Vec::new(); 1 << n];
    for mask in 1usize..(1 << n) {
        let i = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        dist[mask] = if rest == 0 {
            d[i].clone()
        } else {
            (0..m).map(|j| if d[i][j] < dist[rest][j] { d[i][j].clone() } else { dist[rest][j].clone() }).collect()
        };
    }
    for k in 0..breaks.len() {
        let b = &breaks[k];
        let mut excess = T::zero();
        for (mask, row) in dist.iter().enumerate().skip(1) {
            let covered = (0..m).filter(|&j| row[j] <= *b).fold(0usize, |acc, j| acc | 1 << j);
            let cand = mu_sum[mask].sub(&nu_sum[covered]);
            if cand > excess {
                excess = cand;
            }
        }
        let value = partial_max(excess, b.clone());
        match breaks.get(k + 1) {
            Some(next) if value > *next => continue,
            _ => return value,
        }
    }
    unreachable!("the last interval is unbounded")
}

fn subset_sums<T: LpScalar>(w: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); 1 << w.len()];
    for mask in 1usize..out.len() {
        let i = mask.trailing_zeros() as usize;
        out[mask] = out[mask & (mask - 1)].add(&w[i]);
    }
    out
}

fn weights_as<T: LpScalar, E>(mu: &FiniteSupportMeasure<E>) -> Vec<T> {
    mu.atoms().iter().map(|a| T::from_weight(&a.weight)).collect()
}

fn distance_table<E, M: MetricOracle<E>>(mu: &FiniteSupportMeasure<E>, nu: &FiniteSupportMeasure<E>, metric: &M) -> Vec<Vec<M::Distance>> {
    mu.atoms()
        .iter()
        .map(|a| nu.atoms().iter().map(|b| metric.distance(&a.elem, &b.elem)).collect())
        .collect()
}

/// ρ^ℓ(μ,ν) = inf{ε > 0 : μ(C) ≤ ν(C^ε) + ε for every C ⊆ supp μ}.
pub fn lp_semidistance<E, M: MetricOracle<E>>(
    mu: &FiniteSupportMeasure<E>,
    nu: &FiniteSupportMeasure<E>,
    metric: &M,
) -> Result<M::Distance, MeasureError> {
    check_support(mu)?;
    let d = distance_table(mu, nu, metric);
    Ok(semidistance_table(&weights_as(mu), &weights_as(nu), &d))
}

/// Lévy-Prokhorov distance max(ρ^ℓ(μ,ν), ρ^ℓ(ν,μ)).
pub fn lp_distance<E, M: MetricOracle<E>>(
    mu: &FiniteSupportMeasure<E>,
    nu: &FiniteSupportMeasure<E>,
    metric: &M,
) -> Result<M::Distance, MeasureError> {
    check_support(mu)?;
    check_support(nu)?;
    let left = lp_semidistance(mu, nu, metric)?;
    let right = lp_semidistance(nu, mu, metric)?;
    Ok(partial_max(left, right))
}

/// Certified enclosure of a distance computed from floating-point inputs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Lévy-Prokhorov distance over a carrier whose distances are only known up to
/// `distance_slack`. ρ is monotone in the pairwise distances, so evaluating with
/// all distances shifted down (resp. up) by the slack brackets the true value.
pub fn lp_distance_bounds<E, M: MetricOracle<E, Distance = f64>>(
    mu: &FiniteSupportMeasure<E>,
    nu: &FiniteSupportMeasure<E>,
    metric: &M,
    distance_slack: f64,
) -> Result<Interval, MeasureError> {
    let table: Vec<Vec<Interval>> = distance_table(mu, nu, metric)
        .into_iter()
        .map(|r| r.into_iter().map(|x| Interval { lo: x - distance_slack, hi: x + distance_slack }).collect())
        .collect();
    lp_distance_bounds_from_intervals(mu, nu, &table)
}

/// Same as [`lp_distance_bounds`] with a caller-supplied table of distance
/// enclosures `[lo_ij, hi_ij]` (used for path spaces under the sup metric).
/// The weights stay exact; only the final endpoints are rounded outward.
pub fn lp_distance_bounds_from_intervals<E>(
    mu: &FiniteSupportMeasure<E>,
    nu: &FiniteSupportMeasure<E>,
    table: &[Vec<Interval>],
) -> Result<Interval, MeasureError> {
    check_support(mu)?;
    check_support(nu)?;
    let exact = |f: &dyn Fn(&Interval) -> f64| -> Vec<Vec<BigRational>> {
        table.iter().map(|r| r.iter().map(|iv| rational::from_f64(f(iv).max(0.0))).collect()).collect()
    };
    let lo_t = exact(&|iv| iv.lo);
    let hi_t = exact(&|iv| iv.hi);
    let (mw, nw): (Vec<BigRational>, Vec<BigRational>) = (weights_as(mu), weights_as(nu));
    let lo = partial_max(semidistance_table(&mw, &nw, &lo_t), semidistance_table(&nw, &mw, &transpose(&lo_t)));
    let hi = partial_max(semidistance_table(&mw, &nw, &hi_t), semidistance_table(&nw, &mw, &transpose(&hi_t)));
    Ok(Interval { lo: round_down(&lo), hi: round_up(&hi) })
}

fn round_down(x: &BigRational) -> f64 {
    let f = rational::to_f64(x);
    if rational::from_f64(f) > *x {
        f.next_down()
    } else {
        f
    }
}

fn round_up(x: &BigRational) -> f64 {
    let f = rational::to_f64(x);
    if rational::from_f64(f) < *x {
        f.next_up()
    } else {
        f
    }
}

fn transpose<T: Clone>(d: &[Vec<T>]) -> Vec<Vec<T>> {
    if d.is_empty() {
        return Vec::new();
    }
    (0..d[0].len()).map(|j| d.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Feasibility of ε for the left semidistance: μ(C) ≤ ν(C^ε) + ε for all C ⊆ supp μ,
/// with the open neighbourhood C^ε = {y : d(y, C) < ε}.
pub fn lp_feasible<E, M: MetricOracle<E>>(
    mu: &FiniteSupportMeasure<E>,
    nu: &FiniteSupportMeasure<E>,
    metric: &M,
    epsilon: &M::Distance,
) -> Result<bool, MeasureError> {
    check_support(mu)?;
    let d = distance_table(mu, nu, metric);
    let (mw, nw): (Vec<M::Distance>, Vec<M::Distance>) = (weights_as(mu), weights_as(nu));
    for mask in 1usize..(1 << mu.len()) {
        let mut mu_c = M::Distance::zero();
        for i in (0..mu.len()).filter(|i| mask >> i & 1 == 1) {
            mu_c = mu_c.add(&mw[i]);
        }
        let mut covered = M::Distance::zero();
        for (j, w) in nw.iter().enumerate() {
            if (0..mu.len()).any(|i| mask >> i & 1 == 1 && d[i][j] < *epsilon) {
                covered = covered.add(w);
            }
        }
        if mu_c > covered.add(epsilon) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership of ν in the basic neighbourhood U(μ,ε): for every atom z of μ,
/// λ_z < Σ_{x ∈ B(z,ε)} λ'_x + ε/n with n = |supp μ|.
///
/// Only defined for ε below half the minimal separation of supp μ.
pub fn in_basis_neighborhood<E, M: MetricOracle<E>>(
    nu: &FiniteSupportMeasure<E>,
    mu: &FiniteSupportMeasure<E>,
    epsilon: &M::Distance,
    metric: &M,
) -> Result<bool, MeasureError> {
    if let Some(half) = half_separation(mu, metric) {
        if *epsilon >= half {
            return Err(MeasureError::EpsilonTooLarge { epsilon: epsilon.to_f64(), half_separation: half.to_f64() });
        }
    }
    let n = mu.len();
    let slack = epsilon.div_usize(n);
    for z in mu.atoms() {
        let mut near = M::Distance::zero();
        for x in nu.atoms() {
            if metric.distance(&z.elem, &x.elem) < *epsilon {
                near = near.add(&M::Distance::from_weight(&x.weight));
            }
        }
        if M::Distance::from_weight(&z.weight) >= near.add(&slack) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// δ/2 where δ is the minimal distance between distinct atoms of μ (`None` for a Dirac).
pub fn half_separation<E, M: MetricOracle<E>>(mu: &FiniteSupportMeasure<E>, metric: &M) -> Option<M::Distance> {
    let atoms = mu.atoms();
    let mut best: Option<M::Distance> = None;
    for i in 0..atoms.len() {
        for j in (i + 1)..atoms.len() {
            let d = metric.distance(&atoms[i].elem, &atoms[j].elem);
            best = Some(match best {
                Some(b) if b <= d => b,
                _ => d,
            });
        }
    }
    best.map(|b| b.half())
}

#[derive(Serialize, Deserialize)]
struct AtomJson {
    id: String,
    w: String,
}

#[derive(Serialize, Deserialize)]
struct MeasureJson {
    atoms: Vec<AtomJson>,
}

impl FiniteSupportMeasure<String> {
    /// `{"atoms":[{"id":"a","w":"1/2"},...]}`
    pub fn to_json(&self) -> serde_json::Value {
        let doc = MeasureJson {
            atoms: self.atoms.iter().map(|a| AtomJson { id: a.elem.clone(), w: format_fraction(&a.weight) }).collect(),
        };
        serde_json::to_value(doc).expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, MeasureError> {
        let doc: MeasureJson = serde_json::from_value(value.clone()).map_err(|e| MeasureError::Malformed(e.to_string()))?;
        let mut pairs = Vec::with_capacity(doc.atoms.len());
        for a in doc.atoms {
            pairs.push((a.id, parse_fraction(&a.w).map_err(MeasureError::Malformed)?));
        }
        Self::from_pairs(pairs, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn two_point(d: BigRational) -> FiniteMetric {
        FiniteMetric::new(vec![vec![rational::zero(), d.clone()], vec![d, rational::zero()]])
    }

    #[test]
    fn make_measure_examples() {
        let dirac = FiniteSupportMeasure::from_pairs([("a", rational::one())], false).unwrap();
        assert!(dirac.is_dirac());
        let merged = FiniteSupportMeasure::from_pairs([("a", ratio(1, 2)), ("a", ratio(1, 4)), ("b", ratio(1, 4))], false).unwrap();
        assert_eq!(merged.weight_of(&"a"), ratio(3, 4));
        assert_eq!(merged.weight_of(&"b"), ratio(1, 4));
        let dropped = FiniteSupportMeasure::from_pairs([("a", rational::zero()), ("b", rational::one())], false).unwrap();
        assert_eq!(dropped.atoms().len(), 1);
        assert_eq!(dropped.atoms()[0].elem, "b");
    }

    #[test]
    fn make_measure_errors() {
        assert_eq!(FiniteSupportMeasure::<u8>::from_pairs([(0, rational::zero())], false), Err(MeasureError::EmptySupport));
        assert!(matches!(
            FiniteSupportMeasure::from_pairs([(0u8, ratio(1, 3))], false),
            Err(MeasureError::NonUnitMass { .. })
        ));
        assert!(matches!(
            FiniteSupportMeasure::from_pairs([(0u8, ratio(-1, 3)), (1, ratio(4, 3))], false),
            Err(MeasureError::NegativeWeight { .. })
        ));
        let renorm = FiniteSupportMeasure::from_pairs([(0u8, ratio(1, 3)), (1, ratio(1, 3))], true).unwrap();
        assert_eq!(renorm.weight_of(&0), ratio(1, 2));
    }

    #[test]
    fn pushforward_examples() {
        let mu = FiniteSupportMeasure::from_pairs([(0u8, ratio(1, 3)), (1, ratio(1, 3)), (2, ratio(1, 3))], false).unwrap();
        let constant = mu.pushforward(|_| 9u8);
        assert_eq!(constant, FiniteSupportMeasure::dirac(9u8));
        let relabeled = mu.pushforward(|x| x + 10);
        assert_eq!(relabeled.weight_of(&11), ratio(1, 3));
        let merged = mu.pushforward(|x| if *x < 2 { 0u8 } else { 2 });
        assert_eq!(merged.weight_of(&0), ratio(2, 3));
        assert_eq!(merged.len(), 2);
    }

    #[test]
    fn mix_examples() {
        let a = FiniteSupportMeasure::dirac("a");
        let b = FiniteSupportMeasure::dirac("b");
        assert_eq!(a.mix(&rational::one(), &b).unwrap(), a);
        assert_eq!(a.mix(&rational::zero(), &b).unwrap(), b);
        let half = a.mix(&ratio(1, 2), &b).unwrap();
        assert_eq!(half.weight_of(&"a"), ratio(1, 2));
        assert_eq!(half.weight_of(&"b"), ratio(1, 2));
        assert!(a.mix(&ratio(3, 2), &b).is_err());
    }

    #[test]
    fn dirac_distances() {
        let x = FiniteSupportMeasure::dirac(0usize);
        let y = FiniteSupportMeasure::dirac(1usize);
        let near = two_point(ratio(3, 10));
        let far = two_point(ratio(2, 1));
        assert_eq!(lp_semidistance(&x, &y, &near).unwrap(), ratio(3, 10));
        assert_eq!(lp_semidistance(&x, &y, &far).unwrap(), rational::one());
        assert_eq!(lp_distance(&x, &y, &near).unwrap(), ratio(3, 10));
        assert_eq!(lp_distance(&x, &x, &near).unwrap(), rational::zero());
    }

    #[test]
    fn half_split_against_dirac() {
        let metric = two_point(rational::one());
        let mu = FiniteSupportMeasure::from_pairs([(0usize, ratio(1, 2)), (1, ratio(1, 2))], false).unwrap();
        let nu = FiniteSupportMeasure::dirac(0usize);
        assert_eq!(lp_semidistance(&mu, &nu, &metric).unwrap(), ratio(1, 2));
        assert_eq!(lp_semidistance(&nu, &mu, &metric).unwrap(), ratio(1, 2));
    }

    #[test]
    fn support_cap() {
        let n = MAX_LP_SUPPORT + 1;
        let metric = |a: &usize, b: &usize| if a == b { 0.0 } else { 1.0 };
        let mu = FiniteSupportMeasure::from_pairs((0..n).map(|i| (i, ratio(1, n as i64))), false).unwrap();
        assert!(matches!(lp_distance(&mu, &mu, &metric), Err(MeasureError::SupportTooLarge { .. })));
    }

    #[test]
    fn basis_neighborhood() {
        let metric = |a: &f64, b: &f64| (a - b).abs();
        let mu = FiniteSupportMeasure::from_pairs([(0.0f64, ratio(1, 2)), (1.0, ratio(1, 2))], false).unwrap();
        assert!(in_basis_neighborhood(&mu, &mu, &0.1, &metric).unwrap());
        let far = FiniteSupportMeasure::dirac(5.0f64);
        assert!(!in_basis_neighborhood(&far, &mu, &0.1, &metric).unwrap());
        assert!(matches!(
            in_basis_neighborhood(&mu, &mu, &0.5, &metric),
            Err(MeasureError::EpsilonTooLarge { .. })
        ));
    }

    #[test]
    fn bounds_bracket_exact_value() {
        let metric = |a: &f64, b: &f64| (a - b).abs();
        let x = FiniteSupportMeasure::dirac(0.0f64);
        let y = FiniteSupportMeasure::dirac(0.25f64);
        let iv = lp_distance_bounds(&x, &y, &metric, 1e-9).unwrap();
        assert!(iv.contains(0.25));
        assert!(iv.width() < 1e-8);
    }

    #[test]
    fn json_round_trip() {
        let mu = FiniteSupportMeasure::from_pairs([("a".to_string(), ratio(1, 3)), ("b".to_string(), ratio(2, 3))], false).unwrap();
        let v = mu.to_json();
        assert_eq!(v, serde_json::json!({"atoms":[{"id":"a","w":"1/3"},{"id":"b","w":"2/3"}]}));
        assert_eq!(FiniteSupportMeasure::from_json(&v).unwrap(), mu);
        assert!(FiniteSupportMeasure::from_json(&serde_json::json!({"atoms":[{"id":"a","w":"1/2"}]})).is_err());
    }
}
