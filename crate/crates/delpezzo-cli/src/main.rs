//! `delpezzo`: Brauer groups of singular del Pezzo surfaces over an
//! algebraically closed field, from Picard-lattice combinatorics.
//!
//! Exit codes: 0 success, 1 validation failure, 2 usage or parse error.

mod check;
mod render;
mod typeexpr;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use delpezzo::brauer_table;

use render::TableOptions;

#[derive(Parser)]
#[command(
    name = "delpezzo",
    version,
    about = "Brauer groups of singular del Pezzo surfaces, computed from the Picard lattice"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the singularity-type / Brauer-group table for one degree
    Tables {
        /// Degree of the del Pezzo surface, 1 through 7
        #[arg(long)]
        degree: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Also list types whose Brauer group is trivial
        #[arg(long)]
        include_trivial: bool,
        /// Hide configurations that do not occur on actual surfaces
        #[arg(long)]
        hide_excluded: bool,
    },
    /// Report every embedding class of one singularity type
    Brauer {
        /// Degree of the del Pezzo surface, 1 through 7
        #[arg(long)]
        degree: u32,
        /// Singularity type, e.g. "2A1+A3"
        #[arg(long, value_name = "TYPE")]
        r#type: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the self-validation suite
    Check {
        /// Lowest degree for the exhaustive-oracle comparison (degrees below
        /// 3 are expensive)
        #[arg(long, default_value_t = 3)]
        oracle_floor: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Tables {
            degree,
            format,
            include_trivial,
            hide_excluded,
        } => {
            let all = match brauer_table(degree) {
                Ok(t) => t,
                Err(e) => return usage_error(&e.to_string()),
            };
            let rows = render::table_rows(
                &all,
                TableOptions {
                    include_trivial,
                    hide_excluded,
                },
            );
            let out = match format {
                Format::Text => render::render_text(degree, &rows),
                Format::Json => render::render_json(degree, &rows),
                Format::Csv => render::render_csv(&rows),
            };
            print!("{out}");
            ExitCode::SUCCESS
        }
        Command::Brauer {
            degree,
            r#type,
            format,
        } => {
            let ty = match typeexpr::parse_type(&r#type) {
                Ok(t) => t,
                Err(e) => {
                    return usage_error(&format!("cannot parse type '{type}': {e}", type = r#type))
                }
            };
            let all = match brauer_table(degree) {
                Ok(t) => t,
                Err(e) => return usage_error(&e.to_string()),
            };
            let label = ty.to_string();
            let matches: Vec<_> = all.iter().filter(|r| r.dynkin == ty).collect();
            let out = match format {
                Format::Text => render::render_embeddings_text(degree, &label, &matches),
                Format::Json => render::render_embeddings_json(degree, &label, &matches),
                Format::Csv => return usage_error("csv output is only available for 'tables'"),
            };
            print!("{out}");
            ExitCode::SUCCESS
        }
        Command::Check {
            oracle_floor,
            format,
        } => {
            if !(1..=7).contains(&oracle_floor) {
                return usage_error("--oracle-floor must be between 1 and 7");
            }
            let report = check::run_checks(oracle_floor);
            let out = match format {
                Format::Text => check::render_report_text(&report),
                Format::Json => check::render_report_json(&report),
                Format::Csv => return usage_error("csv output is only available for 'tables'"),
            };
            print!("{out}");
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}
