//! Property tests for identities that must hold on arbitrary input data,
//! whether or not the data solves the structure equations.

mod common;

use std::sync::Arc;

use bigbracket::action_models::{
    action_homomorphism_check, action_residual, build_setup, gamma_sigma_display, mc_decomposition,
    twisted_action_check, ActionInputs,
};
use bigbracket::courant::conjugation_defect;
use bigbracket::graded_algebra::{int, GeneratorTable, Polynomial};
use bigbracket::structures::{tangent_mu, Structure, StructureConstants};
use bigbracket::twisting::{twist_components, TwistFunction};
use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `Σ_i c_i x_j^e th_i` with small random coefficients and exponents.
fn random_field(rng: &mut ChaCha8Rng, inputs: &ActionInputs) -> Polynomial {
    let n = inputs.n();
    let mut out = Polynomial::zero(&inputs.table);
    for i in 1..=n {
        let c = rng.gen_range(-2i64..=2);
        let x = inputs.parse(&format!("x{}", rng.gen_range(1..=n))).unwrap();
        let th = inputs.parse(&format!("th{i}")).unwrap();
        out += &x.pow(rng.gen_range(0..=2)).mul(&th).scale(&int(c));
    }
    out
}

fn lie_algebra(choice: usize) -> StructureConstants {
    let entries: &[(usize, usize, usize, i64)] = match choice {
        0 => &[],
        1 => &[(2, 1, 2, 1)],
        _ => &[(3, 1, 2, 1), (1, 2, 3, 1), (2, 3, 1, 1)],
    };
    let m = if choice == 1 { 2 } else { 3 };
    let e: Vec<_> = entries.iter().map(|&(k, i, j, v)| (k, i, j, int(v))).collect();
    StructureConstants::from_entries(m, &e).unwrap()
}

fn random_inputs(seed: u64, with_pi_and_psi: bool) -> ActionInputs {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let choice = rng.gen_range(0..3);
    let lie = lie_algebra(choice);
    let mut inputs = ActionInputs::new(3, lie.dim()).unwrap();
    inputs.lie = lie;
    inputs.rho = (0..inputs.m()).map(|_| random_field(&mut rng, &inputs)).collect();
    if with_pi_and_psi {
        let a = random_field(&mut rng, &inputs);
        let b = random_field(&mut rng, &inputs);
        inputs.pi = a.mul(&b);
        let c = rng.gen_range(-2i64..=2);
        inputs.psi_m = inputs.parse(&format!("{c}*xi1*xi2*xi3")).unwrap();
    }
    inputs
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn mc_residual_splits_into_the_four_conditions(seed in any::<u64>()) {
        let setup = build_setup(random_inputs(seed, true)).unwrap();
        prop_assert!(mc_decomposition(&setup).holds());
    }

    #[test]
    fn second_condition_is_the_twisted_action_defect(seed in any::<u64>()) {
        let setup = build_setup(random_inputs(seed, true)).unwrap();
        for c in twisted_action_check(&setup) {
            prop_assert!(c.holds(), "pair ({}, {})", c.a, c.b);
        }
    }

    #[test]
    fn displayed_gamma_is_the_twist_component(seed in any::<u64>()) {
        let setup = build_setup(random_inputs(seed, true)).unwrap();
        let generic = twist_components(setup.structure(), setup.sigma());
        prop_assert_eq!(&gamma_sigma_display(&setup), generic.gamma());
    }

    #[test]
    fn action_residual_vanishes_iff_homomorphism(seed in any::<u64>()) {
        let setup = build_setup(random_inputs(seed, false)).unwrap();
        let hom = action_homomorphism_check(&setup).iter().all(|c| c.holds());
        prop_assert_eq!(action_residual(&setup).is_zero(), hom);
    }

    #[test]
    fn dorfman_bracket_is_conjugation_equivariant(seed in any::<u64>()) {
        let t = Arc::new(GeneratorTable::standard(2, 2));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = Structure::from_total(&tangent_mu(&t).unwrap()).unwrap();
        let body = random_of_bidegree(&mut rng, &t, if seed % 2 == 0 { 2 } else { 0 }, if seed % 2 == 0 { 0 } else { 2 }, 2, 2);
        let tw = if seed % 2 == 0 { TwistFunction::bivector(body) } else { TwistFunction::two_form(body) }.unwrap();
        let u = random_of_bidegree(&mut rng, &t, 1, 0, 2, 2) + random_of_bidegree(&mut rng, &t, 0, 1, 2, 2);
        let v = random_of_bidegree(&mut rng, &t, 1, 0, 2, 2) + random_of_bidegree(&mut rng, &t, 0, 1, 2, 2);
        prop_assert!(conjugation_defect(&s, &tw, &u, &v).is_zero());
    }
}
