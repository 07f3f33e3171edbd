//! Scenario runner behind the `finpar` binary.

pub mod config;
pub mod emit;
mod limit;
pub mod run;
mod sweep;

pub use config::{Command, Format, ScenarioConfig, SCHEMA_VERSION};
pub use emit::emit_report;
pub use run::{run_scenario, Report};

/// Process exit status for an error: 2 for internal-consistency failures,
/// 1 for everything the caller can fix.
pub fn exit_status(e: &finpar::Error) -> u8 {
    match e {
        finpar::Error::Internal(_) => 2,
        _ => 1,
    }
}
