//! Twisting by a bivector: Poisson functions, the Heisenberg Lie-Poisson
//! bivector, a non-Jacobi witness, and the reduced Yang-Baxter conditions.

use std::sync::Arc;

use bigbracket::frontend::parse_expression;
use bigbracket::graded_algebra::{int, GeneratorTable};
use bigbracket::structures::{encode_lie_structure, tangent_mu, Structure, StructureConstants};
use bigbracket::twisting::{poisson_residual, special_case_residuals, twist_components, TwistFunction};

fn main() -> bigbracket::Result<()> {
    let r3 = Arc::new(GeneratorTable::standard(3, 3));
    let s = Structure::from_total(&tangent_mu(&r3)?)?;
    for text in ["x3*th1*th2", "x3*th1*th2 + x2*th2*th3"] {
        let sigma = TwistFunction::bivector(parse_expression(&r3, text)?)?;
        println!("sigma = {text}");
        println!("  MC residual: {}", poisson_residual(&s, &sigma)?);
        let t = twist_components(&s, &sigma);
        println!("  gamma_sigma: {}", t.gamma());
    }

    // aff(1): [e1, e2] = e2 with r = th1*th2.
    let point = Arc::new(GeneratorTable::standard(0, 2));
    let c = StructureConstants::from_entries(2, &[(2, 1, 2, int(1))])?;
    let s = Structure::from_total(&encode_lie_structure(&point, &c, "th", "xi")?)?;
    let r = TwistFunction::bivector(parse_expression(&point, "th1*th2")?)?;
    for rep in special_case_residuals(&s, &r) {
        println!("aff(1) {}: reduced {} (consistent: {})", rep.case.label(), rep.reduced, rep.consistent());
    }
    Ok(())
}
