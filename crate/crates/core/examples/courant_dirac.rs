//! The Courant double of the tangent structure: Dorfman brackets, the axioms
//! on a family of sections, and graphs of bivectors as Dirac structures.

use std::sync::Arc;

use bigbracket::courant::{courant_axioms_check, dirac_graph_check, dorfman, pairing, DoubleSection};
use bigbracket::frontend::parse_expression;
use bigbracket::graded_algebra::GeneratorTable;
use bigbracket::structures::{tangent_mu, Structure};
use bigbracket::twisting::TwistFunction;

fn main() -> bigbracket::Result<()> {
    let r3 = Arc::new(GeneratorTable::standard(3, 3));
    let s = Structure::from_total(&tangent_mu(&r3)?)?;
    let sec = |t: &str| parse_expression(&r3, t).and_then(DoubleSection::new);

    let (u, v) = (sec("x2*th1 + x1*xi3")?, sec("x1*th2 + x3^2*xi1")?);
    println!("(u, v) = {}", pairing(&u, &v));
    println!("[u, v] = {}", dorfman(&s, &u, &v)?.poly());

    let sections = ["th1", "x1*th2", "xi3", "x2*xi1 + th3"].map(sec).into_iter().collect::<Result<Vec<_>, _>>()?;
    let report = courant_axioms_check(&s, &sections);
    println!("{} triples, {} violations", report.triples, report.violations.len());

    for text in ["x3*th1*th2", "x3*th1*th2 + x2*th2*th3"] {
        let v = dirac_graph_check(&s, &TwistFunction::bivector(parse_expression(&r3, text)?)?)?;
        println!(
            "graph of {text}: isotropic {}, closed {}, MC residual {}",
            v.isotropic, v.closed, v.residual
        );
    }
    Ok(())
}
