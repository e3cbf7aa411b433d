//! File formats, presets and command dispatch for the `gkz` command line
//! tool.

pub mod emit;
pub mod error;
pub mod input;
pub mod presets;
pub mod report;
pub mod run;

pub use emit::{emit, from_json, to_json, Format};
pub use error::CliError;
pub use input::{parse_input, read_input, resolve, Problem, ProblemFile};
pub use presets::{expand, expand_preset};
pub use report::Report;
pub use run::{run, Command, RunOptions};
