//! Seeded verification harness: replicated estimation studies, the
//! identity suite and figure data.

pub mod csv;
pub mod figures;
pub mod identity;
pub mod study;

pub use csv::{fmt_f64, write_csv};
pub use figures::{figure_data, FigureKind, FigureParams, FigureTable, GridSpec, MIN_GRID_POINTS};
pub use identity::{run_identity_suite, standard_grid, Check, FamilySummary, Identity, IdentityReport, Status};
pub use study::{random_pairs, run_study, run_sweep, SimRow, SimTable, StudyConfig, SweepPoint};
