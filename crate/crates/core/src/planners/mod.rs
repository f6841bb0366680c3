//! Distributed navigation algorithms (planners), distributed contractions and
//! the combinators that build new ones from old.

mod combinators;
mod graph;
mod spheres;

use std::fmt;
use std::sync::Arc;

use serde_json::Value;
use thiserror::Error;

use crate::geometry::{DistributedPath, GeometryError, PathDescriptor, Point, Space};
use crate::rational::{self, Weight};

pub use combinators::{
    circle_contraction, contraction_from_planner, covering_lift_contraction, group_translation_planner,
    homotopy_transfer_planner, product_planner, torus_contraction, wedge_to_product_contraction, HomotopyData,
};
pub use graph::{tree_geodesic_planner, wedge_of_trees_planner};
pub use spheres::{
    circle_planner, even_sphere_planner, even_sphere_planner_with, odd_sphere_planner, odd_sphere_planner_with, rpn_planner, Ramp,
    SphereRamps,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PlannerError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("space is not a group model: {0}")]
    SpaceNotGroup(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

type PlanRule = dyn Fn(&Point, &Point) -> Result<DistributedPath, PlannerError> + Send + Sync;
type ContractRule = dyn Fn(&Point) -> Result<DistributedPath, PlannerError> + Send + Sync;

/// Continuous rule (x, y) ↦ distributed path from x to y with at most
/// `pieces` atoms.
#[derive(Clone)]
pub struct Planner {
    name: String,
    space: Space,
    pieces: usize,
    config: Value,
    rule: Arc<PlanRule>,
}

impl fmt::Debug for Planner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Planner").field("name", &self.name).field("pieces", &self.pieces).finish()
    }
}

impl Planner {
    pub fn new(
        name: impl Into<String>,
        space: Space,
        pieces: usize,
        config: Value,
        rule: impl Fn(&Point, &Point) -> Result<DistributedPath, PlannerError> + Send + Sync + 'static,
    ) -> Self {
        Planner { name: name.into(), space, pieces, config, rule: Arc::new(rule) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    /// Declared bound on the support size.
    pub fn pieces(&self) -> usize {
        self.pieces
    }

    /// Thresholds and other constants the rule depends on.
    pub fn config(&self) -> &Value {
        &self.config
    }

    pub fn plan(&self, x: &Point, y: &Point) -> Result<DistributedPath, PlannerError> {
        self.space.check(x)?;
        self.space.check(y)?;
        (self.rule)(x, y)
    }
}

/// Continuous rule x ↦ distributed path from x to a fixed basepoint.
#[derive(Clone)]
pub struct Contraction {
    name: String,
    space: Space,
    basepoint: Point,
    pieces: usize,
    rule: Arc<ContractRule>,
}

impl fmt::Debug for Contraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Contraction").field("name", &self.name).field("pieces", &self.pieces).finish()
    }
}

impl Contraction {
    pub fn new(
        name: impl Into<String>,
        space: Space,
        basepoint: Point,
        pieces: usize,
        rule: impl Fn(&Point) -> Result<DistributedPath, PlannerError> + Send + Sync + 'static,
    ) -> Self {
        Contraction { name: name.into(), space, basepoint, pieces, rule: Arc::new(rule) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn basepoint(&self) -> &Point {
        &self.basepoint
    }

    pub fn pieces(&self) -> usize {
        self.pieces
    }

    pub fn contract(&self, x: &Point) -> Result<DistributedPath, PlannerError> {
        self.space.check(x)?;
        (self.rule)(x)
    }
}

/// Assembles a distributed path from float weights. Pieces with weight ≤ 0
/// are dropped; the heaviest piece takes the exact complement of the others
/// so the total is exactly one.
pub(crate) fn assemble(
    space: &Space,
    source: &Point,
    target: &Point,
    pieces: Vec<(PathDescriptor, f64)>,
) -> Result<DistributedPath, PlannerError> {
    let live: Vec<(PathDescriptor, f64)> = pieces.into_iter().filter(|(_, w)| *w > 0.0).collect();
    if live.is_empty() {
        return Err(PlannerError::Unsupported("all piece weights vanished".into()));
    }
    let heaviest = live
        .iter()
        .enumerate()
        .fold(0, |best, (i, (_, w))| if *w > live[best].1 { i } else { best });
    let mut rest = rational::zero();
    let mut exact: Vec<(PathDescriptor, Weight)> = Vec::with_capacity(live.len());
    for (i, (p, w)) in live.iter().enumerate() {
        let w = if i == heaviest { rational::zero() } else { rational::from_f64(*w) };
        rest += &w;
        exact.push((p.clone(), w));
    }
    exact[heaviest].1 = rational::one() - rest;
    Ok(DistributedPath::new(space, source.clone(), target.clone(), exact)?)
}

/// All registered planner names with their constructors, in a fixed order.
pub fn shipped_planners() -> Vec<Planner> {
    vec![
        rpn_planner(2),
        rpn_planner(3),
        circle_planner(),
        odd_sphere_planner(3).expect("3 is odd"),
        even_sphere_planner(2).expect("2 is even"),
        group_translation_planner(&torus_contraction(2)).expect("torus"),
        product_planner(&circle_planner(), &circle_planner()),
    ]
}

/// Looks a planner up by its registered name, e.g. `rpn(2)` or `even_sphere(2)`.
pub fn planner_by_name(name: &str) -> Option<Planner> {
    let name = name.trim();
    let (head, arg) = match name.split_once('(') {
        Some((h, rest)) => (h, rest.strip_suffix(')')?.trim()),
        None => (name, ""),
    };
    let n = || arg.parse::<usize>().ok();
    match head {
        "rpn" => n().filter(|n| *n >= 1).map(rpn_planner),
        "circle" if arg.is_empty() => Some(circle_planner()),
        "odd_sphere" => odd_sphere_planner(n()?).ok(),
        "even_sphere" => even_sphere_planner(n()?).ok(),
        "group_translation" => {
            let m = match arg {
                "T2" | "T²" => 2,
                other => other.strip_prefix('T').unwrap_or(other).parse().ok()?,
            };
            (m >= 1).then(|| group_translation_planner(&torus_contraction(m)).expect("torus"))
        }
        "product" if arg.replace(' ', "") == "circle,circle" => Some(product_planner(&circle_planner(), &circle_planner())),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names_round_trip() {
        for p in shipped_planners() {
            let again = planner_by_name(p.name()).unwrap_or_else(|| panic!("{} not registered", p.name()));
            assert_eq!(again.name(), p.name());
            assert_eq!(again.pieces(), p.pieces());
        }
        assert!(planner_by_name("rpn(0)").is_none());
        assert!(planner_by_name("odd_sphere(2)").is_none());
        assert!(planner_by_name("nope").is_none());
    }
}
