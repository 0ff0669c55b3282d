//! Twisting `S ↦ e^{-t} S` by a bivector or a 2-form, Poisson and
//! pre-symplectic functions, and the named reduced conditions.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graded_algebra::{int, rat, Bidegree, Polynomial, Rational};
use crate::structures::Structure;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistKind {
    /// `σ = ½ σ^{ab} θ_a θ_b`, bidegree (2,0).
    Bivector,
    /// `τ = ½ τ_{ab} ξ^a ξ^b`, bidegree (0,2).
    TwoForm,
}

impl TwistKind {
    pub fn bidegree(self) -> Bidegree {
        match self {
            TwistKind::Bivector => Bidegree::new(2, 0),
            TwistKind::TwoForm => Bidegree::new(0, 2),
        }
    }
}

impl fmt::Display for TwistKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TwistKind::Bivector => "bivector",
            TwistKind::TwoForm => "2-form",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistFunction {
    kind: TwistKind,
    body: Polynomial,
}

impl TwistFunction {
    pub fn new(kind: TwistKind, body: Polynomial) -> Result<Self> {
        let bd = kind.bidegree();
        if !body.is_zero() && body.bidegree() != Some(bd) {
            return Err(Error::WrongBidegree {
                what: format!("{kind} {body}"),
                expected: bd.shifted(),
                found: body
                    .bidegree()
                    .map_or("a mixed polynomial".into(), |b| b.shifted().to_string()),
            });
        }
        Ok(TwistFunction { kind, body })
    }

    pub fn bivector(body: Polynomial) -> Result<Self> {
        TwistFunction::new(TwistKind::Bivector, body)
    }

    pub fn two_form(body: Polynomial) -> Result<Self> {
        TwistFunction::new(TwistKind::TwoForm, body)
    }

    pub fn kind(&self) -> TwistKind {
        self.kind
    }

    pub fn body(&self) -> &Polynomial {
        &self.body
    }

    pub fn negated(&self) -> Self {
        TwistFunction {
            kind: self.kind,
            body: -&self.body,
        }
    }

    fn expect(&self, kind: TwistKind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::Hypothesis(format!(
                "expected a {kind}, got a {}",
                self.kind
            )))
        }
    }
}

/// `e^t a = a + {a,t} + ½{{a,t},t} + ...`. Each step moves the bidegree by
/// `(1,-1)` (bivector) or `(-1,1)` (2-form), so the series stops after at
/// most `ℓ_max + 1` resp. `k_max + 1` terms.
pub fn exp_adjoint(t: &TwistFunction, a: &Polynomial) -> Polynomial {
    let (k, l) = a.max_bidegree();
    let bound = match t.kind {
        TwistKind::Bivector => l,
        TwistKind::TwoForm => k,
    } as usize;
    let mut out = a.clone();
    let mut term = a.clone();
    let mut factorial = BigInt::from(1);
    for n in 1..=bound + 1 {
        term = term.bracket(&t.body);
        if term.is_zero() {
            return out;
        }
        factorial *= n;
        out += &term.scale(&Rational::new(BigInt::from(1), factorial.clone()));
    }
    panic!("adjoint series of {} on {a} did not terminate after {bound} steps", t.body);
}

/// `e^{-t} S` as a single polynomial.
pub fn twist_total(s: &Structure, t: &TwistFunction) -> Polynomial {
    exp_adjoint(&t.negated(), &s.total())
}

/// Components of `e^{-t} S` by the closed formulas.
pub fn twist_components(s: &Structure, t: &TwistFunction) -> Structure {
    let (phi, gamma, mu, psi) = (s.phi(), s.gamma(), s.mu(), s.psi());
    let x = t.body();
    let half = rat(1, 2);
    let sixth = rat(1, 6);
    let b = |a: &Polynomial| a.bracket(x);
    let (phi_t, gamma_t, mu_t, psi_t) = match t.kind {
        TwistKind::Bivector => (
            phi - b(gamma) + b(&b(mu)).scale(&half) - b(&b(&b(psi))).scale(&sixth),
            gamma - b(mu) + b(&b(psi)).scale(&half),
            mu - b(psi),
            psi.clone(),
        ),
        TwistKind::TwoForm => (
            phi.clone(),
            gamma - b(phi),
            mu - b(gamma) + b(&b(phi)).scale(&half),
            psi - b(mu) + b(&b(gamma)).scale(&half) - b(&b(&b(phi))).scale(&sixth),
        ),
    };
    Structure::new(phi_t, gamma_t, mu_t, psi_t).expect("twisting preserves component bidegrees")
}

/// `φ_σ`; `σ` is a Poisson function iff this vanishes.
pub fn poisson_residual(s: &Structure, sigma: &TwistFunction) -> Result<Polynomial> {
    sigma.expect(TwistKind::Bivector)?;
    Ok(twist_components(s, sigma).phi().clone())
}

/// `ψ_τ`; `τ` is a pre-symplectic function iff this vanishes.
pub fn presymplectic_residual(s: &Structure, tau: &TwistFunction) -> Result<Polynomial> {
    tau.expect(TwistKind::TwoForm)?;
    Ok(twist_components(s, tau).psi().clone())
}

/// `[σ,σ]_μ = {{σ,μ},σ}`.
pub fn schouten_square(mu: &Polynomial, sigma: &Polynomial) -> Polynomial {
    sigma.bracket(mu).bracket(sigma)
}

/// `(∧³σ♯)ψ = (1/6){σ,{σ,{σ,ψ}}}`.
pub fn wedge3_sharp(sigma: &Polynomial, psi: &Polynomial) -> Polynomial {
    sigma
        .bracket(&sigma.bracket(&sigma.bracket(psi)))
        .scale(&rat(1, 6))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialCase {
    /// `ψ = 0`: `½[σ,σ]_μ + d_γσ - φ`.
    DrinfeldTwist,
    /// `φ = γ = ψ = 0`: `[σ,σ]_μ`.
    ClassicalYangBaxter,
    /// `φ = γ = ψ = 0`, `{μ,μ} = 0`: `{μ,{{μ,σ},σ}}`, compared with the
    /// Jacobi defect `{γ_σ,γ_σ}` of the twisted cobracket.
    GeneralizedYangBaxter,
    /// `φ = γ = 0`: `½[σ,σ]_μ - (∧³σ♯)ψ`.
    TwistedPoisson,
    /// `φ = γ = 0`: `d_μτ - ψ`.
    TwistedPresymplectic,
}

impl SpecialCase {
    pub const ALL: [SpecialCase; 5] = [
        SpecialCase::DrinfeldTwist,
        SpecialCase::ClassicalYangBaxter,
        SpecialCase::GeneralizedYangBaxter,
        SpecialCase::TwistedPoisson,
        SpecialCase::TwistedPresymplectic,
    ];

    pub fn label(self) -> &'static str {
        match self {
            SpecialCase::DrinfeldTwist => "Drinfeld twist",
            SpecialCase::ClassicalYangBaxter => "CYBE",
            SpecialCase::GeneralizedYangBaxter => "generalized CYBE",
            SpecialCase::TwistedPoisson => "twisted Poisson",
            SpecialCase::TwistedPresymplectic => "twisted pre-symplectic",
        }
    }

    fn kind(self) -> TwistKind {
        match self {
            SpecialCase::TwistedPresymplectic => TwistKind::TwoForm,
            _ => TwistKind::Bivector,
        }
    }

    /// Components that must vanish.
    fn vanishing(self) -> &'static [&'static str] {
        match self {
            SpecialCase::DrinfeldTwist => &["psi"],
            SpecialCase::ClassicalYangBaxter | SpecialCase::GeneralizedYangBaxter => {
                &["phi", "gamma", "psi"]
            }
            SpecialCase::TwistedPoisson | SpecialCase::TwistedPresymplectic => &["phi", "gamma"],
        }
    }
}

/// A reduced condition next to the general residual it must reproduce:
/// `reduced = factor · general` identically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseReport {
    pub case: SpecialCase,
    pub reduced: Polynomial,
    pub general: Polynomial,
    pub factor: Rational,
}

impl CaseReport {
    pub fn consistent(&self) -> bool {
        self.reduced == self.general.scale(&self.factor)
    }
}

fn component<'a>(s: &'a Structure, name: &str) -> &'a Polynomial {
    match name {
        "phi" => s.phi(),
        "gamma" => s.gamma(),
        "mu" => s.mu(),
        _ => s.psi(),
    }
}

/// Evaluates one named condition after checking its hypotheses.
pub fn special_case(s: &Structure, t: &TwistFunction, case: SpecialCase) -> Result<CaseReport> {
    t.expect(case.kind())?;
    for name in case.vanishing() {
        let c = component(s, name);
        if !c.is_zero() {
            return Err(Error::Hypothesis(format!(
                "{}: {name} must vanish, found {c}",
                case.label()
            )));
        }
    }
    let (gamma, mu, psi, phi) = (s.gamma(), s.mu(), s.psi(), s.phi());
    let x = t.body();
    let half = rat(1, 2);
    let twisted = twist_components(s, t);
    let report = |reduced, general, factor| CaseReport {
        case,
        reduced,
        general,
        factor,
    };
    Ok(match case {
        SpecialCase::DrinfeldTwist => report(
            schouten_square(mu, x).scale(&half) + gamma.bracket(x) - phi,
            twisted.phi().clone(),
            int(-1),
        ),
        SpecialCase::ClassicalYangBaxter => {
            report(schouten_square(mu, x), twisted.phi().clone(), int(-2))
        }
        SpecialCase::GeneralizedYangBaxter => {
            if !mu.bracket(mu).is_zero() {
                return Err(Error::Hypothesis(format!(
                    "{}: {{mu,mu}} must vanish",
                    case.label()
                )));
            }
            let g = twisted.gamma();
            report(mu.bracket(&mu.bracket(x).bracket(x)), g.bracket(g), int(-1))
        }
        SpecialCase::TwistedPoisson => report(
            schouten_square(mu, x).scale(&half) - wedge3_sharp(x, psi),
            twisted.phi().clone(),
            int(-1),
        ),
        SpecialCase::TwistedPresymplectic => {
            report(mu.bracket(x) - psi, twisted.psi().clone(), int(-1))
        }
    })
}

/// Every named condition whose hypotheses `(S, t)` satisfy.
pub fn special_case_residuals(s: &Structure, t: &TwistFunction) -> Vec<CaseReport> {
    SpecialCase::ALL
        .iter()
        .filter_map(|&c| special_case(s, t, c).ok())
        .collect()
}

/// `d_{γσ} = {γ_σ, ·}` and `d_{μσ} = {μ_σ, ·}` for a Poisson function `σ`.
#[derive(Debug, Clone)]
pub struct TwistedDifferentials {
    pub sigma: Polynomial,
    pub gamma_sigma: Polynomial,
    pub mu_sigma: Polynomial,
    pub psi: Polynomial,
}

pub fn twisted_differential_ops(s: &Structure, sigma: &TwistFunction) -> Result<TwistedDifferentials> {
    let phi_sigma = poisson_residual(s, sigma)?;
    if !phi_sigma.is_zero() {
        return Err(Error::NotPoisson(format!("MC residual: {phi_sigma}")));
    }
    let twisted = twist_components(s, sigma);
    Ok(TwistedDifferentials {
        sigma: sigma.body().clone(),
        gamma_sigma: twisted.gamma().clone(),
        mu_sigma: twisted.mu().clone(),
        psi: twisted.psi().clone(),
    })
}

impl TwistedDifferentials {
    pub fn d_gamma(&self, a: &Polynomial) -> Polynomial {
        self.gamma_sigma.bracket(a)
    }

    pub fn d_mu(&self, a: &Polynomial) -> Polynomial {
        self.mu_sigma.bracket(a)
    }

    /// `(d_{μσ})² a` predicted from `{S_σ,S_σ} = 0`: `-{{ψ, γ_σ}, a}`.
    pub fn d_mu_defect(&self, a: &Polynomial) -> Polynomial {
        -self.psi.bracket(&self.gamma_sigma).bracket(a)
    }

    /// `[σ, a]_μ = {{σ, μ}, a}`.
    pub fn lichnerowicz(&self, mu: &Polynomial, a: &Polynomial) -> Polynomial {
        self.sigma.bracket(mu).bracket(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_expression;
    use crate::graded_algebra::GeneratorTable;
    use crate::structures::{encode_lie_structure, tangent_mu, StructureClass, StructureConstants};
    use std::sync::Arc;

    fn p(t: &Arc<GeneratorTable>, s: &str) -> Polynomial {
        parse_expression(t, s).unwrap()
    }

    fn tangent(t: &Arc<GeneratorTable>) -> Structure {
        Structure::from_total(&tangent_mu(t).unwrap()).unwrap()
    }

    #[test]
    fn exp_of_two_form_on_a_vector() {
        let t = Arc::new(GeneratorTable::standard(2, 2));
        let tau = TwistFunction::two_form(p(&t, "x1*xi1*xi2")).unwrap();
        let x = p(&t, "th1 + x2*th2");
        assert_eq!(exp_adjoint(&tau, &x), &x + x.bracket(tau.body()));
        let f = p(&t, "x1^2");
        let sigma = TwistFunction::bivector(p(&t, "x1*th1*th2")).unwrap();
        assert_eq!(exp_adjoint(&sigma, &f), f);
    }

    #[test]
    fn wrong_kind_is_rejected() {
        let t = Arc::new(GeneratorTable::standard(1, 2));
        assert!(TwistFunction::bivector(p(&t, "xi1*xi2")).is_err());
        let tau = TwistFunction::two_form(p(&t, "xi1*xi2")).unwrap();
        let s = Structure::zero(&t);
        assert!(poisson_residual(&s, &tau).is_err());
    }

    #[test]
    fn mu_only_twist() {
        let t = Arc::new(GeneratorTable::standard(3, 3));
        let s = tangent(&t);
        let sigma = TwistFunction::bivector(p(&t, "x3*th1*th2")).unwrap();
        let tw = twist_components(&s, &sigma);
        let mu = s.mu();
        assert_eq!(tw.mu(), mu);
        assert_eq!(tw.gamma(), &-mu.bracket(sigma.body()));
        assert_eq!(
            tw.phi(),
            &mu.bracket(sigma.body()).bracket(sigma.body()).scale(&rat(1, 2))
        );
    }

    #[test]
    fn heisenberg_lie_poisson_and_witness() {
        let t = Arc::new(GeneratorTable::standard(3, 3));
        let s = tangent(&t);
        let lp = TwistFunction::bivector(p(&t, "x3*th1*th2")).unwrap();
        assert!(poisson_residual(&s, &lp).unwrap().is_zero());
        let tw = twist_components(&s, &lp);
        assert_eq!(tw.classify().unwrap(), StructureClass::LieBialgebroid);
        let bad = TwistFunction::bivector(p(&t, "x3*th1*th2 + x2*th2*th3")).unwrap();
        let r = poisson_residual(&s, &bad).unwrap();
        let cube = p(&t, "x3*th1*th2*th3");
        assert!(r == cube || r == -&cube, "{r}");
    }

    #[test]
    fn closed_two_forms() {
        let t = Arc::new(GeneratorTable::standard(2, 2));
        let tau = TwistFunction::two_form(p(&t, "xi1*xi2")).unwrap();
        assert!(presymplectic_residual(&tangent(&t), &tau).unwrap().is_zero());
        let t = Arc::new(GeneratorTable::standard(3, 3));
        let tau = TwistFunction::two_form(p(&t, "x1*xi2*xi3")).unwrap();
        let r = presymplectic_residual(&tangent(&t), &tau).unwrap();
        let vol = p(&t, "xi1*xi2*xi3");
        assert!(r == vol || r == -&vol, "{r}");
    }

    #[test]
    fn twisted_poisson_case_on_r3() {
        let t = Arc::new(GeneratorTable::standard(3, 3));
        let z = Polynomial::zero(&t);
        let s = Structure::new(z.clone(), z, tangent_mu(&t).unwrap(), p(&t, "xi1*xi2*xi3")).unwrap();
        let sigma = TwistFunction::bivector(p(&t, "th1*th2")).unwrap();
        let rep = special_case(&s, &sigma, SpecialCase::TwistedPoisson).unwrap();
        assert!(rep.consistent());
        assert!(rep.reduced.is_zero());
        assert!(schouten_square(s.mu(), sigma.body()).is_zero());
        assert!(wedge3_sharp(sigma.body(), s.psi()).is_zero());
        assert!(special_case(&s, &sigma, SpecialCase::ClassicalYangBaxter).is_err());
    }

    #[test]
    fn aff1_cybe() {
        let t = Arc::new(GeneratorTable::standard(0, 2));
        let c = StructureConstants::from_entries(2, &[(2, 1, 2, int(1))]).unwrap();
        let mu = encode_lie_structure(&t, &c, "th", "xi").unwrap();
        let s = Structure::from_total(&mu).unwrap();
        let r = TwistFunction::bivector(p(&t, "th1*th2")).unwrap();
        let reports = special_case_residuals(&s, &r);
        assert_eq!(reports.len(), 4);
        for rep in &reports {
            assert!(rep.consistent(), "{:?}", rep.case);
            assert!(rep.reduced.is_zero());
        }
    }

    #[test]
    fn poisson_differentials() {
        let t = Arc::new(GeneratorTable::standard(3, 3));
        let s = tangent(&t);
        let sigma = TwistFunction::bivector(p(&t, "x3*th1*th2")).unwrap();
        let d = twisted_differential_ops(&s, &sigma).unwrap();
        let f = p(&t, "x1*x2 + x3^2");
        assert_eq!(d.d_gamma(&f), d.lichnerowicz(s.mu(), &f));
        assert!(d.d_gamma(&d.d_gamma(&f)).is_zero());
        let bad = TwistFunction::bivector(p(&t, "x3*th1*th2 + x2*th2*th3")).unwrap();
        assert!(matches!(twisted_differential_ops(&s, &bad), Err(Error::NotPoisson(_))));
    }

    #[test]
    fn twisted_defect_is_detected() {
        let t = Arc::new(GeneratorTable::standard(3, 3));
        let z = Polynomial::zero(&t);
        let s = Structure::new(z.clone(), z, tangent_mu(&t).unwrap(), p(&t, "xi1*xi2*xi3")).unwrap();
        let sigma = TwistFunction::bivector(p(&t, "th1*th2")).unwrap();
        let d = twisted_differential_ops(&s, &sigma).unwrap();
        let a = p(&t, "x1");
        let twice = d.d_mu(&d.d_mu(&a));
        assert!(!twice.is_zero());
        assert_eq!(twice, d.d_mu_defect(&a));
    }
}
