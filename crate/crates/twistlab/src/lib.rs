//! File formats, element literals and the experiment runner behind the
//! `twistlab` command.

pub mod commands;
pub mod config;
pub mod formats;
pub mod literal;
pub mod verify;

pub const VERSION: &str = concat!("twistlab ", env!("CARGO_PKG_VERSION"));

pub use commands::Outcome;
pub use config::{ConfigFile, ExperimentConfig, Format};

use twistlab_core::Error;

/// Exit status for an error: 1 when a computation contradicted an
/// invariant, 2 for anything the caller can fix by changing the request.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InternalConsistency(_) => 1,
        _ => 2,
    }
}
