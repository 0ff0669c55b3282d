//! Non-degenerate bivectors and their inverse 2-forms; the Poisson ⟺
//! symplectic correspondence and the identities behind it.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graded_algebra::{int, GeneratorKind, GeneratorTable, Polynomial, Rational};
use crate::linalg::solve_unique;
use crate::structures::{identity_v, Structure};
use crate::twisting::{
    poisson_residual, presymplectic_residual, twist_components, TwistFunction, TwistKind,
};

/// A bivector `σ` and a 2-form `τ` with `{σ, τ} = Id_V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InversePair {
    pub sigma: TwistFunction,
    pub tau: TwistFunction,
    /// `σ^{ab}` with `σ = ½ σ^{ab} θ_a θ_b`, indexed over all fiber directions.
    pub sigma_matrix: Vec<Vec<Rational>>,
    /// `τ_{ab}` with `τ = ½ τ_{ab} ξ^a ξ^b`.
    pub tau_matrix: Vec<Vec<Rational>>,
}

fn generators_of(table: &Arc<GeneratorTable>, kind: GeneratorKind) -> Vec<Polynomial> {
    table
        .generators()
        .filter(|g| g.kind == kind)
        .map(|g| Polynomial::slot(table, g.slot))
        .collect()
}

/// Antisymmetric matrix `c^{ab}` of a quadratic `½ c^{ab} g_a g_b`.
pub fn quadratic_matrix(p: &Polynomial, gens: &[Polynomial]) -> Vec<Vec<Rational>> {
    let n = gens.len();
    let mut out = vec![vec![Rational::zero(); n]; n];
    for a in 0..n {
        for b in (a + 1)..n {
            let prod = gens[a].mul(&gens[b]);
            let (key, sign) = prod.terms().next().expect("distinct odd generators");
            let c = p.coefficient(key) / sign;
            out[b][a] = -c.clone();
            out[a][b] = c;
        }
    }
    out
}

fn check_constant(p: &Polynomial) -> Result<()> {
    if p.terms().any(|(m, _)| m.even_exponents().iter().any(|&e| e > 0)) {
        return Err(Error::NonConstant(p.to_string()));
    }
    Ok(())
}

/// Solves `{σ, X} = Id_V` for `X` quadratic in `unknown` generators, or
/// `{X, τ} = Id_V` when `known_on_left` is false.
fn solve_partner(known: &Polynomial, unknown: &[Polynomial], known_on_left: bool) -> Result<Polynomial> {
    let table = known.table();
    let id = identity_v(table);
    let mut basis = Vec::new();
    let mut images = Vec::new();
    for a in 0..unknown.len() {
        for b in (a + 1)..unknown.len() {
            let q = unknown[a].mul(&unknown[b]);
            images.push(if known_on_left { known.bracket(&q) } else { q.bracket(known) });
            basis.push(q);
        }
    }
    let mut keys: Vec<_> = id.terms().map(|(m, _)| m.clone()).collect();
    for img in &images {
        keys.extend(img.terms().map(|(m, _)| m.clone()));
    }
    keys.sort();
    keys.dedup();
    let a: Vec<Vec<Rational>> = keys
        .iter()
        .map(|k| images.iter().map(|img| img.coefficient(k)).collect())
        .collect();
    let rhs: Vec<Rational> = keys.iter().map(|k| id.coefficient(k)).collect();
    let x = solve_unique(&a, &rhs).ok_or(Error::Singular)?;
    Ok(basis
        .iter()
        .zip(&x)
        .fold(Polynomial::zero(table), |acc, (q, c)| acc + q.scale(c)))
}

fn pair(sigma: Polynomial, tau: Polynomial) -> Result<InversePair> {
    let table = Arc::clone(sigma.table());
    let thetas = generators_of(&table, GeneratorKind::FiberConjugate);
    let xis = generators_of(&table, GeneratorKind::Fiber);
    Ok(InversePair {
        sigma_matrix: quadratic_matrix(&sigma, &thetas),
        tau_matrix: quadratic_matrix(&tau, &xis),
        sigma: TwistFunction::bivector(sigma)?,
        tau: TwistFunction::two_form(tau)?,
    })
}

/// The unique 2-form `τ` with `{σ, τ} = Id_V`, for a constant bivector `σ`.
pub fn invert_bivector(sigma: &TwistFunction) -> Result<InversePair> {
    if sigma.kind() != TwistKind::Bivector {
        return Err(Error::Hypothesis("invert_bivector needs a bivector".into()));
    }
    check_constant(sigma.body())?;
    let table = sigma.body().table();
    let xis = generators_of(table, GeneratorKind::Fiber);
    let tau = solve_partner(sigma.body(), &xis, true)?;
    pair(sigma.body().clone(), tau)
}

/// The unique bivector `σ` with `{σ, τ} = Id_V`, for a constant 2-form `τ`.
pub fn invert_two_form(tau: &TwistFunction) -> Result<InversePair> {
    if tau.kind() != TwistKind::TwoForm {
        return Err(Error::Hypothesis("invert_two_form needs a 2-form".into()));
    }
    check_constant(tau.body())?;
    let table = tau.body().table();
    let thetas = generators_of(table, GeneratorKind::FiberConjugate);
    let sigma = solve_partner(tau.body(), &thetas, false)?;
    pair(sigma, tau.body().clone())
}

impl InversePair {
    /// `{σ, τ}`, equal to `Id_V` by construction.
    pub fn identity(&self) -> Polynomial {
        self.sigma.body().bracket(self.tau.body())
    }

    pub fn identity_holds(&self) -> bool {
        let id = identity_v(self.sigma.body().table());
        self.identity() == id && self.tau.body().bracket(self.sigma.body()) == -id
    }
}

/// `{{σ,τ}, S} - (q-p) S` for `S` of shifted bidegree `(p,q)`; zero when
/// the scaling identity holds.
pub fn scaling_identity_check(pair: &InversePair, s: &Polynomial) -> Result<Polynomial> {
    if s.is_zero() {
        return Ok(s.clone());
    }
    let sb = s
        .bidegree()
        .ok_or_else(|| Error::NotHomogeneous(s.to_string()))?
        .shifted();
    Ok(pair.identity().bracket(s) - s.scale_int(i64::from(sb.1 - sb.0)))
}

/// One identity `lhs = rhs` of the correspondence proof.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub label: &'static str,
    pub lhs: Polynomial,
    pub rhs: Polynomial,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn ad(a: &Polynomial, t: &Polynomial, times: usize) -> Polynomial {
    crate::graded_algebra::ad_pow(a, t, times)
}

/// The six identities relating iterated brackets with `σ` and `τ`.
pub fn proof_identities_check(s: &Structure, pair: &InversePair) -> Vec<IdentityCheck> {
    let (sg, tau) = (pair.sigma.body(), pair.tau.body());
    let (phi, gamma, mu) = (s.phi(), s.gamma(), s.mu());
    let psi_tau = twist_components(s, &pair.tau).psi().clone();
    let phi_sigma = twist_components(s, &pair.sigma).phi().clone();
    let phi_minus_sigma = twist_components(s, &pair.sigma.negated()).phi().clone();
    let psi_minus_tau = twist_components(s, &pair.tau.negated()).psi().clone();
    vec![
        IdentityCheck {
            label: "{{{mu,tau},sigma},sigma} = {{{mu,sigma},sigma},tau}",
            lhs: ad(&mu.bracket(tau), sg, 2),
            rhs: ad(mu, sg, 2).bracket(tau),
        },
        IdentityCheck {
            label: "{{{{mu,tau},sigma},sigma},sigma} = -3{{mu,sigma},sigma}",
            lhs: ad(&mu.bracket(tau), sg, 3),
            rhs: ad(mu, sg, 2).scale_int(-3),
        },
        IdentityCheck {
            label: "{{{{{gamma,tau},tau},sigma},sigma},sigma} = 12{gamma,sigma}",
            lhs: ad(&ad(gamma, tau, 2), sg, 3),
            rhs: gamma.bracket(sg).scale_int(12),
        },
        IdentityCheck {
            label: "{{{{{{phi,tau},tau},tau},sigma},sigma},sigma} = -36phi",
            lhs: ad(&ad(phi, tau, 3), sg, 3),
            rhs: phi.scale_int(-36),
        },
        IdentityCheck {
            label: "{{{psi_tau,sigma},sigma},sigma} = 6phi_(-sigma)",
            lhs: ad(&psi_tau, sg, 3),
            rhs: phi_minus_sigma.scale(&int(6)),
        },
        IdentityCheck {
            label: "{{{phi_sigma,tau},tau},tau} = 6psi_(-tau)",
            lhs: ad(&phi_sigma, tau, 3),
            rhs: psi_minus_tau.scale(&int(6)),
        },
    ]
}

/// Residuals of `σ` (Poisson) and of `-τ` (pre-symplectic) side by side.
#[derive(Debug, Clone)]
pub struct Correspondence {
    pub pair: InversePair,
    pub poisson_residual: Polynomial,
    pub symplectic_residual: Polynomial,
}

impl Correspondence {
    pub fn poisson(&self) -> bool {
        self.poisson_residual.is_zero()
    }

    pub fn symplectic(&self) -> bool {
        self.symplectic_residual.is_zero()
    }

    /// `σ` Poisson ⟺ `-τ` symplectic.
    pub fn agree(&self) -> bool {
        self.poisson() == self.symplectic()
    }
}

pub fn symplectic_correspondence(s: &Structure, sigma: &TwistFunction) -> Result<Correspondence> {
    let pair = invert_bivector(sigma)?;
    let poisson_residual = poisson_residual(s, &pair.sigma)?;
    let symplectic_residual = presymplectic_residual(s, &pair.tau.negated())?;
    Ok(Correspondence {
        pair,
        poisson_residual,
        symplectic_residual,
    })
}
