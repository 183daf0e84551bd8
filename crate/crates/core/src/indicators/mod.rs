//! Quality indicators and run records.

mod hv;
mod igd;
mod record;

pub use hv::{hv_exact, hv_monte_carlo, normalized_hv};
pub use igd::igd;
pub use record::{
    dispersion, insensitive_hv, insensitive_igd, quartiles, BatchManifest, Quartiles, RunRecord, RunStatus, TracePoint,
};
