//! Actions of Lie-quasi bialgebras on manifolds: conditions (A)-(D), the
//! Maurer-Cartan decomposition, the algebroid differential and its blocks.

use bigbracket::action_models::{
    bracket_case, condition_residuals, gamma_sigma, mc_decomposition, square_blocks, twisted_differential,
};
use bigbracket::frontend::{parse_expression, Setup};

fn fixture(name: &str) -> bigbracket::Result<Setup> {
    Setup::load(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR")).as_ref())
}

fn main() -> bigbracket::Result<()> {
    for name in ["aff1.bb", "aff1_broken.bb", "so3.bb", "twisted_poisson_r3.bb"] {
        let setup = fixture(name)?;
        let a = setup.action.as_ref().expect("action fixture");
        println!("{name}");
        for (label, r) in condition_residuals(a).labeled() {
            println!("  {label}: {r}");
        }
        println!("  MC split matches: {}", mc_decomposition(a).holds());
        if let Ok(case) = bracket_case(a) {
            println!("  bracket: {}", case.label());
        }
        let Ok(g) = gamma_sigma(a) else { continue };
        println!("  gamma_sigma has {} terms", g.len());
        let f = parse_expression(a.table(), "x1^2")?;
        let split = twisted_differential(a, &f)?;
        println!("  d(x1^2) = {}", split.total);
        let nonzero = square_blocks(a, &f)?.into_iter().filter(|(_, p)| !p.is_zero()).count();
        println!("  nonzero blocks of d²(x1^2): {nonzero}");
    }
    Ok(())
}
