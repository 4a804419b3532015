//! Batch front end for the `netcurv` library: curvature reports, measure
//! comparison, network generation and histograms.

mod cli;
mod commands;
mod error;
mod report;

pub use cli::Cli;
pub use error::CliError;
pub use report::format_g12;

use cli::Command;

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Curvature(args) => commands::curvature(args),
        Command::Compare(args) => commands::compare(args),
        Command::Generate(args) => commands::generate(args),
        Command::Histogram(args) => commands::histogram(args),
    }
}
