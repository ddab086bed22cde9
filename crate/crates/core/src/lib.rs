//! Generalized Haagerup categories over finite abelian groups.
//!
//! The central object is [`solution::SolutionTriple`], the data (ε, η, A)
//! of such a category. Around it sit the equation residuals, the symmetry
//! group action, a numerical solver, a formal Cuntz-algebra rewriting engine
//! and a few derived constructions.

pub mod catalog;
mod lm;
pub mod cohomology;
pub mod constructions;
pub mod cuntz_formal;
pub mod group;
pub mod phase;
pub mod solution;
pub mod solver;
pub mod symmetry;

pub use catalog::{catalog_get, catalog_list, catalog_solution, CatalogEntry};
pub use group::{construct_group, Elem, GroupMap, GroupSpec};
pub use solution::{evaluate_residuals, check_qsystem, x_table, ResidualReport, SolutionTriple, XTable};
