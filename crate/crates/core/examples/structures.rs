//! Structures S = phi + gamma + mu + psi: component equations of {S,S} = 0,
//! Lie algebras as structures on a point, and classification.

use std::sync::Arc;

use bigbracket::frontend::parse_expression;
use bigbracket::graded_algebra::{int, GeneratorTable, Polynomial};
use bigbracket::structures::{
    encode_lie_structure, extract_structure_constants, tangent_mu, Structure, StructureConstants,
};

fn report(name: &str, s: &Structure) {
    println!("{name}");
    for (label, r) in s.residuals().labeled() {
        println!("  {label}: {r}");
    }
    match s.classify() {
        Ok(class) => println!("  class: {class}"),
        Err(e) => println!("  not a structure ({e})"),
    }
}

fn main() -> bigbracket::Result<()> {
    let r3 = Arc::new(GeneratorTable::standard(3, 3));
    let tangent = Structure::from_total(&tangent_mu(&r3)?)?;
    report("tangent structure on R³", &tangent);

    let point = Arc::new(GeneratorTable::standard(0, 3));
    let so3 = StructureConstants::from_entries(3, &[(3, 1, 2, int(1)), (1, 2, 3, int(1)), (2, 3, 1, int(1))])?;
    let mu = encode_lie_structure(&point, &so3, "th", "xi")?;
    println!("so(3) encoded: {mu}");
    assert_eq!(extract_structure_constants(&point, &mu, "th", "xi")?, so3);
    let cartan = parse_expression(&point, "xi1*xi2*xi3")?;
    let zero = Polynomial::zero(&point);
    report("so(3) with its Cartan 3-form", &Structure::new(zero.clone(), zero, mu.clone(), cartan)?);

    let bad = StructureConstants::from_entries(3, &[(2, 1, 2, int(1)), (3, 2, 3, int(1))])?;
    let mu_bad = encode_lie_structure(&point, &bad, "th", "xi")?;
    report("a bracket failing Jacobi", &Structure::from_total(&mu_bad)?);
    Ok(())
}
