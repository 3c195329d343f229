//! Genus expansion on the ℙ¹ Frobenius manifold at the dessin initial data:
//! θ-functions, two-point functions, the hodograph solution, the genus-zero and
//! genus-one free energies, the genus-one loop equation and the initial-data catalog.

pub mod catalog;
pub mod frobenius;
pub mod logseries;
pub mod loop_equation;
pub mod solution;

pub use catalog::{catalog, catalog_check, lue_v_from_one_point, CatalogReport, CatalogRow};
pub use frobenius::{frobenius_identities, g_fn, omega0, omega_fn, phi, theta1, theta2, FrobeniusFunction};
pub use logseries::LogSeries;
pub use loop_equation::{loop_equation_check_genus1, LoopReport};
pub use solution::{
    f0_assemble, f1_evaluate, genus_one_check, genus_zero_check, hodograph_solve, GenusOneReport,
    GenusZeroReport, HodographSolution,
};
