//! The double `V ⊕ V*` with pairing `{u,v}` and Dorfman bracket
//! `{{u,S},v}`; Courant axioms and Dirac graphs of twist functions.

use crate::error::{Error, Result};
use crate::graded_algebra::{GeneratorKind, Polynomial};
use crate::structures::Structure;
use crate::twisting::{
    exp_adjoint, poisson_residual, presymplectic_residual, twist_components, TwistFunction,
    TwistKind,
};

/// `X + α`: linear in the odd generators, coefficients polynomial in `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleSection(Polynomial);

impl DoubleSection {
    pub fn new(p: Polynomial) -> Result<Self> {
        let table = p.table().clone();
        for (m, _) in p.terms() {
            let p_free = (table.base_dim()..table.n_even()).all(|i| m.even_exponent(i) == 0);
            if m.odd_count() != 1 || !p_free {
                return Err(Error::InvalidSection(format!(
                    "{p} is not linear in the odd generators with x-coefficients"
                )));
            }
        }
        Ok(DoubleSection(p))
    }

    pub fn poly(&self) -> &Polynomial {
        &self.0
    }

    /// The `V` part (fiber-conjugate generators).
    pub fn vector_part(&self) -> Polynomial {
        part_of_kind(&self.0, GeneratorKind::FiberConjugate)
    }

    /// The `V*` part (fiber generators).
    pub fn form_part(&self) -> Polynomial {
        part_of_kind(&self.0, GeneratorKind::Fiber)
    }
}

fn part_of_kind(p: &Polynomial, kind: GeneratorKind) -> Polynomial {
    let table = p.table().clone();
    p.filter(|m| m.odd_slots().all(|i| table.odd_info(i).kind == kind))
}

/// `(u, v) = {u, v}`.
pub fn pairing(u: &DoubleSection, v: &DoubleSection) -> Polynomial {
    u.0.bracket(&v.0)
}

/// `a_E(u)·f = {{u, S}, f}`.
pub fn anchor(s: &Structure, u: &DoubleSection, f: &Polynomial) -> Polynomial {
    u.0.bracket(&s.total()).bracket(f)
}

fn raw_dorfman(s: &Polynomial, u: &Polynomial, v: &Polynomial) -> Polynomial {
    u.bracket(s).bracket(v)
}

/// `[u, v]_S = {{u, S}, v}`; requires `{S,S} = 0`.
pub fn dorfman(s: &Structure, u: &DoubleSection, v: &DoubleSection) -> Result<DoubleSection> {
    if !s.is_structure() {
        return Err(Error::NotAStructure("Dorfman bracket needs a structure".into()));
    }
    Ok(DoubleSection(raw_dorfman(&s.total(), &u.0, &v.0)))
}

/// A failing instance of an axiom on a triple of sample indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub indices: (usize, usize, usize),
    pub residual: Polynomial,
}

#[derive(Debug, Clone, Default)]
pub struct AxiomReport {
    pub triples: usize,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, axiom: &str) -> usize {
        self.violations.iter().filter(|v| v.axiom == axiom).count()
    }
}

pub const LODAY: &str = "Loday";
pub const METRIC_SYMMETRIC: &str = "a(x)(u,v) = (x,[u,v]+[v,u])";
pub const METRIC_INVARIANT: &str = "a(x)(u,v) = ([x,u],v) + (u,[x,v])";

/// Checks the Loday identity and both metric identities on every ordered
/// triple of `sections`. Violations are listed, not raised.
pub fn courant_axioms_check(s: &Structure, sections: &[DoubleSection]) -> AxiomReport {
    let total = s.total();
    let br = |a: &Polynomial, b: &Polynomial| raw_dorfman(&total, a, b);
    let anchor = |x: &Polynomial, f: &Polynomial| x.bracket(&total).bracket(f);
    let mut report = AxiomReport::default();
    for (i, x) in sections.iter().enumerate() {
        for (j, u) in sections.iter().enumerate() {
            for (k, v) in sections.iter().enumerate() {
                report.triples += 1;
                let (x, u, v) = (&x.0, &u.0, &v.0);
                let loday = br(x, &br(u, v)) - br(&br(x, u), v) - br(u, &br(x, v));
                let a = anchor(x, &u.bracket(v));
                let sym = &a - x.bracket(&(br(u, v) + br(v, u)));
                let inv = &a - br(x, u).bracket(v) - u.bracket(&br(x, v));
                for (axiom, residual) in [(LODAY, loday), (METRIC_SYMMETRIC, sym), (METRIC_INVARIANT, inv)] {
                    if !residual.is_zero() {
                        report.violations.push(Violation {
                            axiom,
                            indices: (i, j, k),
                            residual,
                        });
                    }
                }
            }
        }
    }
    report
}

/// Generators of the graph of `t` as a sub-bundle of `V ⊕ V*`:
/// `e^σ ξ^a` for a bivector, `e^τ θ_a` for a 2-form.
pub fn graph_basis(t: &TwistFunction) -> Vec<Polynomial> {
    let table = t.body().table();
    let kind = match t.kind() {
        TwistKind::Bivector => GeneratorKind::Fiber,
        TwistKind::TwoForm => GeneratorKind::FiberConjugate,
    };
    table
        .generators()
        .filter(|g| g.kind == kind)
        .map(|g| exp_adjoint(t, &Polynomial::slot(table, g.slot)))
        .collect()
}

/// Membership in the graph: `X = {α, σ}` resp. `α = {X, τ}`.
pub fn in_graph(t: &TwistFunction, u: &Polynomial) -> bool {
    let Ok(sec) = DoubleSection::new(u.clone()) else {
        return u.is_zero();
    };
    match t.kind() {
        TwistKind::Bivector => sec.vector_part() == sec.form_part().bracket(t.body()),
        TwistKind::TwoForm => sec.form_part() == sec.vector_part().bracket(t.body()),
    }
}

#[derive(Debug, Clone)]
pub struct DiracVerdict {
    pub isotropic: bool,
    pub closed: bool,
    /// Brackets of basis sections that leave the graph.
    pub escapes: Vec<(usize, usize, Polynomial)>,
    /// Poisson residual (bivector) or pre-symplectic residual (2-form).
    pub residual: Polynomial,
}

impl DiracVerdict {
    pub fn is_dirac(&self) -> bool {
        self.isotropic && self.closed
    }

    /// Dirac exactly when the residual vanishes.
    pub fn consistent(&self) -> bool {
        self.is_dirac() == self.residual.is_zero()
    }
}

pub fn dirac_graph_check(s: &Structure, t: &TwistFunction) -> Result<DiracVerdict> {
    if !s.is_structure() {
        return Err(Error::NotAStructure("Dirac check needs a structure".into()));
    }
    let basis = graph_basis(t);
    let total = s.total();
    let mut isotropic = true;
    let mut escapes = Vec::new();
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            if !a.bracket(b).is_zero() {
                isotropic = false;
            }
            let c = raw_dorfman(&total, a, b);
            if !in_graph(t, &c) {
                escapes.push((i, j, c));
            }
        }
    }
    let residual = match t.kind() {
        TwistKind::Bivector => poisson_residual(s, t)?,
        TwistKind::TwoForm => presymplectic_residual(s, t)?,
    };
    Ok(DiracVerdict {
        isotropic,
        closed: escapes.is_empty(),
        escapes,
        residual,
    })
}

/// `[e^t u, e^t v]_S - e^t [u, v]_{e^{-t}S}`, zero for every `t`.
pub fn conjugation_defect(s: &Structure, t: &TwistFunction, u: &Polynomial, v: &Polynomial) -> Polynomial {
    let twisted = twist_components(s, t).total();
    let lhs = raw_dorfman(&s.total(), &exp_adjoint(t, u), &exp_adjoint(t, v));
    let rhs = exp_adjoint(t, &raw_dorfman(&twisted, u, v));
    lhs - rhs
}

/// Projected graph bracket next to the twisted derived bracket.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionCheck {
    pub lhs: Polynomial,
    pub rhs: Polynomial,
}

impl ProjectionCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// For a pre-symplectic `τ` and vector pairs `(X, Y)`: the `V` part of
/// `[e^τX, e^τY]_S` against `{{X, μ_τ}, Y}`. For a Poisson `σ` and form
/// pairs `(α, β)`: the `V*` part of `[e^σα, e^σβ]_S` against
/// `{{α, γ_σ}, β}`.
pub fn projection_morphism_check(
    s: &Structure,
    t: &TwistFunction,
    pairs: &[(Polynomial, Polynomial)],
) -> Result<Vec<ProjectionCheck>> {
    let twisted = twist_components(s, t);
    let (component, residual) = match t.kind() {
        TwistKind::TwoForm => (twisted.mu().clone(), twisted.psi().clone()),
        TwistKind::Bivector => (twisted.gamma().clone(), twisted.phi().clone()),
    };
    if !residual.is_zero() {
        return Err(match t.kind() {
            TwistKind::TwoForm => Error::NotPresymplectic(format!("presymplectic residual: {residual}")),
            TwistKind::Bivector => Error::NotPoisson(format!("MC residual: {residual}")),
        });
    }
    let total = s.total();
    pairs
        .iter()
        .map(|(a, b)| {
            let image = DoubleSection::new(raw_dorfman(&total, &exp_adjoint(t, a), &exp_adjoint(t, b)))?;
            let lhs = match t.kind() {
                TwistKind::TwoForm => image.vector_part(),
                TwistKind::Bivector => image.form_part(),
            };
            Ok(ProjectionCheck {
                lhs,
                rhs: a.bracket(&component).bracket(b),
            })
        })
        .collect()
}
