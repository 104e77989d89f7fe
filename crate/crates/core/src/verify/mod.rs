//! Verification harness: manufactured solutions, refinement studies, fuzz
//! suites for the discrete inequalities, and the stability sweep.

pub mod convergence;
pub mod lemmas;
pub mod manufactured;
pub mod random;
pub mod stability;

pub use convergence::{convergence_study, error_norms, observed_orders, ConvergenceReport, StudyTemplate};
pub use lemmas::LemmaReport;
pub use manufactured::ManufacturedSolution;
pub use stability::{stability_comparison, Outcome, StabilityRow};
