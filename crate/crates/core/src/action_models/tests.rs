use super::*;
use crate::graded_algebra::int;

pub(crate) fn aff1(broken: bool) -> ActionSetup {
    let mut inputs = ActionInputs::new(1, 2).unwrap();
    inputs.lie = StructureConstants::from_entries(2, &[(2, 1, 2, int(1))]).unwrap();
    inputs.rho = vec![
        inputs.parse("x1*th1").unwrap(),
        inputs.parse(if broken { "x1*th1" } else { "th1" }).unwrap(),
    ];
    build_setup(inputs).unwrap()
}

fn so3_constants() -> StructureConstants {
    StructureConstants::from_entries(3, &[(3, 1, 2, int(1)), (1, 2, 3, int(1)), (2, 3, 1, int(1))]).unwrap()
}

fn rotations(inputs: &ActionInputs) -> Vec<Polynomial> {
    ["x2*th3 - x3*th2", "x3*th1 - x1*th3", "x1*th2 - x2*th1"]
        .iter()
        .map(|r| inputs.parse(r).unwrap())
        .collect()
}

/// Rotations of R³ with an invariant Lie-Poisson bivector and the Cartan
/// trivector: a quasi-Poisson so(3)-manifold.
fn so3_quasi_poisson() -> ActionSetup {
    let mut inputs = ActionInputs::new(3, 3).unwrap();
    inputs.lie = so3_constants();
    inputs.psi_g = inputs.parse("e1*e2*e3").unwrap();
    inputs.rho = rotations(&inputs);
    inputs.pi = inputs.parse("x1*th2*th3 - x2*th1*th3 + x3*th1*th2").unwrap();
    build_setup(inputs).unwrap()
}

/// Arbitrary data violating (A)–(D); every identity of the expansion must
/// still hold.
fn generic_su2() -> ActionSetup {
    let mut inputs = ActionInputs::new(3, 3).unwrap();
    inputs.lie = so3_constants();
    inputs.psi_g = inputs.parse("e1*e2*e3").unwrap();
    inputs.psi_m = inputs.parse("x1*xi1*xi2*xi3").unwrap();
    inputs.rho = vec![
        inputs.parse("x2*th3 - x3*th2").unwrap(),
        inputs.parse("x3*th1 - x1*th3 + x2^2*th1").unwrap(),
        inputs.parse("x1*th2 - x2*th1").unwrap(),
    ];
    inputs.pi = inputs.parse("x3*th1*th2 + x1^2*th2*th3").unwrap();
    build_setup(inputs).unwrap()
}

/// `Ψ_M = 0`, abelian `g` with `g* = aff(1) ⊕ R`, and the Cartan trivector.
fn bcs_generic() -> ActionSetup {
    let mut inputs = ActionInputs::new(3, 3).unwrap();
    inputs.cobracket = StructureConstants::from_entries(3, &[(2, 1, 2, int(1))]).unwrap();
    inputs.psi_g = inputs.parse("e1*e2*e3").unwrap();
    inputs.rho = vec![
        inputs.parse("x2*th3 - x3*th2").unwrap(),
        inputs.parse("x3*th1 + x2^2*th1").unwrap(),
        inputs.parse("x1*th2").unwrap(),
    ];
    inputs.pi = inputs.parse("x3*th1*th2 + x1^2*th2*th3").unwrap();
    build_setup(inputs).unwrap()
}

fn twisted_poisson_r3() -> ActionSetup {
    let mut inputs = ActionInputs::new(3, 2).unwrap();
    inputs.pi = inputs.parse("th1*th2").unwrap();
    inputs.psi_m = inputs.parse("xi1*xi2*xi3").unwrap();
    build_setup(inputs).unwrap()
}

fn p(s: &ActionSetup, text: &str) -> Polynomial {
    crate::frontend::parse_expression(s.table(), text).unwrap()
}

#[test]
fn trivial_setup_is_the_tangent_structure() {
    let s = build_setup(ActionInputs::new(2, 2).unwrap()).unwrap();
    assert_eq!(s.structure().total(), p(&s, "p1*xi1 + p2*xi2"));
    assert!(condition_residuals(&s).all_zero());
}

#[test]
fn validation_failures() {
    let mut inputs = ActionInputs::new(4, 1).unwrap();
    inputs.psi_m = inputs.parse("x4*xi1*xi2*xi3").unwrap();
    assert!(matches!(build_setup(inputs), Err(Error::NotAStructure(m)) if m.contains("closed")));

    let mut inputs = ActionInputs::new(1, 3).unwrap();
    inputs.lie = StructureConstants::from_entries(3, &[(2, 1, 2, int(1))]).unwrap();
    inputs.psi_g = inputs.parse("e1*e2*e3").unwrap();
    assert!(matches!(build_setup(inputs), Err(Error::NotAStructure(m)) if m.contains("Lie-quasi")));

    let mut inputs = ActionInputs::new(2, 1).unwrap();
    inputs.rho = vec![inputs.parse("xi1").unwrap()];
    assert!(matches!(build_setup(inputs), Err(Error::InvalidSetup(_))));

    let mut inputs = ActionInputs::new(2, 1).unwrap();
    inputs.pi = inputs.parse("p1*th1*th2").unwrap();
    assert!(build_setup(inputs).is_err());

    let mut inputs = ActionInputs::new(2, 2).unwrap();
    inputs.rho.pop();
    assert!(build_setup(inputs).is_err());
}

#[test]
fn aff1_action_satisfies_all_conditions() {
    let s = aff1(false);
    assert!(condition_residuals(&s).all_zero());
    assert!(action_residual(&s).is_zero());
    for c in action_homomorphism_check(&s) {
        assert!(c.holds());
        assert_eq!(c.lhs, p(&s, "th1"));
    }
    let g = gamma_sigma(&s).unwrap();
    assert!(g.bracket(&g).is_zero());
}

#[test]
fn broken_action_fails_only_b() {
    let s = aff1(true);
    let r = condition_residuals(&s);
    assert_eq!(r.failing(), vec!["(B)"]);
    assert!(action_homomorphism_check(&s).iter().any(|c| !c.holds()));
    assert!(matches!(gamma_sigma(&s), Err(Error::Hypothesis(m)) if m.contains("(B)")));
}

#[test]
fn decomposition_of_the_generic_residual() {
    for s in [aff1(false), aff1(true), generic_su2(), bcs_generic(), so3_quasi_poisson(), twisted_poisson_r3()] {
        let d = mc_decomposition(&s);
        assert!(d.holds(), "{:?}", d.components);
    }
    let d = mc_decomposition(&generic_su2());
    assert!(d.components.iter().all(|c| !c.is_zero()));
}

#[test]
fn twisted_action_pairing() {
    for s in [generic_su2(), aff1(true), so3_quasi_poisson()] {
        for c in twisted_action_check(&s) {
            assert!(c.holds(), "({}, {}): {} vs {}", c.a, c.b, c.lhs, c.rhs);
        }
    }
}

#[test]
fn gamma_display_matches_generic_twist() {
    for s in [aff1(true), generic_su2(), bcs_generic(), so3_quasi_poisson()] {
        let generic = twist_components(s.structure(), s.sigma()).gamma().clone();
        assert_eq!(gamma_sigma_display(&s), generic);
        let sum = differential_block_generators(&s)
            .into_iter()
            .fold(Polynomial::zero(s.table()), |a, b| a + b);
        assert_eq!(sum, generic);
    }
}

#[test]
fn rho_zero_reduces_to_twisted_poisson() {
    let mut inputs = ActionInputs::new(3, 1).unwrap();
    inputs.pi = inputs.parse("x3*th1*th2 + x2*th2*th3").unwrap();
    inputs.psi_m = inputs.parse("x1*xi1*xi2*xi3").unwrap();
    let s = build_setup(inputs).unwrap();
    let r = condition_residuals(&s);
    assert!(r.0[..3].iter().all(Polynomial::is_zero));
    let case = crate::twisting::special_case(s.structure(), s.sigma(), crate::twisting::SpecialCase::TwistedPoisson).unwrap();
    assert!(!case.reduced.is_zero());
    assert_eq!(r.0[3], case.reduced.scale_int(-2));
}

#[test]
fn rho_zero_gamma_is_koszul_plus_pointwise() {
    let mut inputs = ActionInputs::new(3, 2).unwrap();
    inputs.lie = StructureConstants::from_entries(2, &[(2, 1, 2, int(1))]).unwrap();
    inputs.pi = inputs.parse("x3*th1*th2").unwrap();
    let s = build_setup(inputs).unwrap();
    let g = gamma_sigma(&s).unwrap();
    assert_eq!(g, s.s_g() - &s.s_m().bracket(s.pi()));
    assert!(g.bracket(&g).is_zero());
}

#[test]
fn quasi_poisson_fixture_satisfies_conditions() {
    let s = so3_quasi_poisson();
    assert!(condition_residuals(&s).all_zero(), "{:?}", condition_residuals(&s).failing());
    assert!(!s.psi_g().bracket(s.rho()).bracket(s.rho()).is_zero());
}

fn sample_sections(s: &ActionSetup) -> Vec<Polynomial> {
    let candidates = if s.n() == 1 {
        vec!["x1", "x1^2*th1", "x1*eps1 + eps2", "th1*eps1", "eps1*eps2", "x1^3*th1*eps1*eps2"]
    } else {
        vec!["x1*x2 + x3", "x1*th1 + x2^2*th3", "x3*eps1", "th1*th2*eps1", "x2*eps1*eps2", "x1*th1*th2*th3"]
    };
    candidates.into_iter().map(|t| p(s, t)).collect()
}

#[test]
fn differential_squares_to_zero_blockwise() {
    for s in [aff1(false), twisted_poisson_r3(), so3_quasi_poisson()] {
        for a in sample_sections(&s) {
            let split = twisted_differential(&s, &a).unwrap();
            assert!(split.sums_to_total());
            assert!(blocks_match_multidegree(&s, &a, &split), "{a}");
            let g = gamma_sigma(&s).unwrap();
            assert!(g.bracket(&split.total).is_zero());
            for (shift, piece) in square_blocks(&s, &a).unwrap() {
                assert!(piece.is_zero(), "shift {shift} on {a}: {piece}");
            }
        }
    }
}

#[test]
fn differential_closed_forms() {
    for (s, f, x, eta) in [
        (aff1(false), "x1^3", "x1^2*th1", "x1*eps1 + x1^2*eps2"),
        (twisted_poisson_r3(), "x1*x2^2 + x3", "x3*th1 + x1*th2", "x2*eps1"),
        (so3_quasi_poisson(), "x1*x2^2 + x3", "x3*th1 + x1^2*th2", "x2*eps1 - x1*x3*eps3"),
    ] {
        for c in differential_closed_forms_check(&s, &p(&s, f), &p(&s, x), &p(&s, eta)).unwrap() {
            assert!(c.holds(), "{}: {} vs {}", c.label, c.lhs, c.rhs);
        }
    }
}

#[test]
fn function_differential_on_aff1_only_hits_eps() {
    let s = aff1(false);
    let d = twisted_differential(&s, &p(&s, "x1")).unwrap();
    assert_eq!(d.total, p(&s, "x1*eps1 + eps2").scale_int(audit().de_rham));
}

#[test]
fn invariant_field_sees_only_pi() {
    let s = so3_quasi_poisson();
    let radial = p(&s, "x1*th1 + x2*th2 + x3*th3");
    let split = twisted_differential(&s, &radial).unwrap();
    assert!(split.blocks[1].is_zero());
    assert_eq!(split.total, s.bracket_m(s.pi(), &radial));
    assert!(!split.total.is_zero());
}

#[test]
fn named_brackets_match_derived() {
    let s = bcs_generic();
    assert_eq!(bracket_case(&s).unwrap(), BracketCase::BursztynCrainicSevera);
    let forms = [p(&s, "x2*xi1 + x1*x3*xi3"), p(&s, "x3^2*xi2 - xi1")];
    let algebra = [p(&s, "x1*e1 + x2*x3*e3"), p(&s, "e2 - x3^2*e1"), p(&s, "e1 + e2")];
    let all: Vec<_> = forms.iter().chain(&algebra).cloned().collect();
    for a in &all {
        for b in &all {
            let c = case_bracket(&s, a, b).unwrap();
            assert!(c.holds(), "[{a}, {b}]: {} vs {}", c.closed, c.derived);
        }
    }
    for c in building_block_identities(&s, &forms[0], &forms[1], &algebra[0], &algebra[1]).unwrap() {
        assert!(c.holds(), "{}: {} vs {}", c.label, c.lhs, c.rhs);
    }
}

#[test]
fn lu_case_constant_sections() {
    let mut inputs = ActionInputs::new(3, 3).unwrap();
    inputs.lie = so3_constants();
    inputs.rho = rotations(&inputs);
    inputs.pi = inputs.parse("th1*th2").unwrap();
    let s = build_setup(inputs).unwrap();
    assert_eq!(bracket_case(&s).unwrap(), BracketCase::LuAndBursztynCrainic);
    let (u, v) = (p(&s, "e1"), p(&s, "e2"));
    let c = case_bracket(&s, &u, &v).unwrap();
    assert!(c.holds());
    assert_eq!(c.derived, classical::algebra_bracket(&s, &u, &v));
    assert_eq!(c.derived, p(&s, "e3"));
    let c = case_bracket(&s, &p(&s, "xi1"), &p(&s, "xi3 + 2*xi2")).unwrap();
    assert!(c.holds());
    assert!(c.derived.is_zero());
}

#[test]
fn named_brackets_need_flat_psi_m() {
    assert!(matches!(bracket_case(&generic_su2()), Err(Error::Hypothesis(_))));
}

#[test]
fn vector_bracket_orientation() {
    let s = generic_su2();
    let (x, y) = (p(&s, "x1*x3*th1 + x2^2*th2 + th3"), p(&s, "x3*th1 - x1^2*x2*th3"));
    assert_eq!(s.bracket_m(&x, &y), classical::vector_bracket(&s, &x, &y).scale_int(audit().de_rham));
}
