//! Text front end: expression parser, canonical printer, setup files and the
//! command-line driver.

mod cli;
mod format;
mod parse;
mod setup;

pub use cli::{run_command, CommandOutput};
pub use format::{canonical_order, format_poly, format_rational};
pub use parse::parse_expression;
pub use setup::Setup;
