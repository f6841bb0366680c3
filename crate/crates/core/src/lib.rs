//! Distributed navigation algorithms, Lévy-Prokhorov metrics on finitely
//! supported measures, and exact cohomological lower bounds for the
//! distributional LS-category (dcat) and topological complexity (dTC).

pub mod algebra;
pub mod cli;
pub mod geometry;
pub mod homology;
pub mod measure;
pub mod planners;
pub mod verify;
pub mod rational;
pub mod symsquare;
