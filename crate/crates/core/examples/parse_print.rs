//! Parsing and canonical printing, and the command-line driver run in
//! process against a fixture.

use std::sync::Arc;

use bigbracket::frontend::{format_poly, parse_expression, run_command};
use bigbracket::graded_algebra::GeneratorTable;

fn main() {
    let table = Arc::new(GeneratorTable::standard(2, 2));
    for text in ["1/2 * th1*th2", "th2*th1", "xi1*xi1", "x2*x1 + 2/4*p1*x1^2", "xi2*th2 + th1*xi1", "x1^"] {
        match parse_expression(&table, text) {
            Ok(p) => println!("{text:>22}  ->  {}", format_poly(&p)),
            Err(e) => println!("{text:>22}  ->  error: {e}"),
        }
    }

    let setup = format!("{}/fixtures/heis3.bb", env!("CARGO_MANIFEST_DIR"));
    for argv in [
        vec!["bigbracket", "check-poisson", "--setup", &setup, "--sigma", "sigma"],
        vec!["bigbracket", "check-poisson", "--setup", &setup, "--sigma", "witness"],
        vec!["bigbracket", "bracket", "--setup", &setup, "x1", "p1"],
    ] {
        let out = run_command(&argv);
        println!("$ {}\n{}[exit {}]", argv[1..].join(" "), out.stdout, out.exit_code);
    }
}
