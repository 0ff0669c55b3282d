//! Inverting a non-degenerate constant bivector, the scaling identity, and
//! the Poisson / symplectic correspondence on R⁴.

use std::sync::Arc;

use bigbracket::duality::{invert_bivector, proof_identities_check, scaling_identity_check, symplectic_correspondence};
use bigbracket::frontend::parse_expression;
use bigbracket::graded_algebra::GeneratorTable;
use bigbracket::structures::{tangent_mu, Structure};
use bigbracket::twisting::TwistFunction;

fn main() -> bigbracket::Result<()> {
    let r4 = Arc::new(GeneratorTable::standard(4, 4));
    let s = Structure::from_total(&tangent_mu(&r4)?)?;
    let sigma = TwistFunction::bivector(parse_expression(&r4, "th1*th2 + 2*th3*th4")?)?;

    let pair = invert_bivector(&sigma)?;
    println!("sigma: {}", pair.sigma.body());
    println!("tau:   {}", pair.tau.body());
    println!("{{sigma, tau}} = {}", pair.identity());

    let probe = parse_expression(&r4, "x1*th2*xi3*xi4")?;
    println!("scaling defect on {probe}: {}", scaling_identity_check(&pair, &probe)?);

    for check in proof_identities_check(&s, &pair) {
        println!("{}: {}", check.label, if check.holds() { "holds" } else { "fails" });
    }

    let c = symplectic_correspondence(&s, &sigma)?;
    println!("Poisson: {}, -tau symplectic: {}", c.poisson(), c.symplectic());

    let singular = TwistFunction::bivector(parse_expression(&r4, "th1*th2")?)?;
    println!("degenerate input: {}", invert_bivector(&singular).unwrap_err());
    Ok(())
}
