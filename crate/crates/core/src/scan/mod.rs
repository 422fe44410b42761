//! Simplex scans over diagonal qutrit (or qudit) states and the decay-chain
//! experiment, with deterministic CSV output.
//!
//! Points are evaluated in parallel on the ambient rayon pool and gathered in
//! grid order, so output never depends on the thread count.

pub mod config;
pub mod grid;
pub mod output;
pub mod run;

pub use config::{ExperimentConfig, GridConfig, HamiltonianTemplate, ObservableTemplate, ScanConfig};
pub use grid::SimplexGrid;
pub use output::{experiment_csv, ScanOutput, ScanSummary};
pub use run::{run_experiment, scan_energy_bounds, scan_fast_h, scan_xi, ScanKind, ScanRow};
