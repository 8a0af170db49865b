//! Dataset generation on top of [`mixent`]: per-state records, seeded sampling
//! campaigns for the figure datasets, parameter grids for the MEMMS surface
//! and the extremal LPTPS line, and a bound fuzzer.
//!
//! Every state `id` of a run with seed `s` is drawn from its own ChaCha8
//! stream (`seed_from_u64(s)`, stream `id`), so output does not depend on how
//! work is spread over threads.

pub mod campaign;
pub mod dataset;
pub mod error;
pub mod fuzz;
pub mod grids;
pub mod input;
pub mod record;
pub mod svg;

pub use campaign::{generate, run_campaign, CampaignConfig, CampaignOutput, Figure, Summary, Violation};
pub use dataset::{Cell, Dataset, Format, Metadata, ParsedTable};
pub use error::CliError;
pub use fuzz::{fuzz_bounds, FuzzReport, SampleKind};
pub use grids::{lptps_line, memms_grid};
pub use record::{analyze, verify_row, Bundle, BundleMeasure, StateRecord, FULL_COLUMNS};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const TOOL: &str = concat!("mixent ", env!("CARGO_PKG_VERSION"));
pub const RNG_NAME: &str = "ChaCha8Rng (rand_chacha 0.9; seed_from_u64(seed); stream = state id)";

/// The random stream of state `id` in a run seeded with `seed`.
pub fn state_rng(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}
