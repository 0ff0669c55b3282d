//! Coordinate formulas on `M × g`, written with partial derivatives and
//! structure constants only. They serve as independent oracles for the
//! derived brackets and carry no orientation sign.

use num_traits::Zero;

use super::{e, eps, theta, xi, ActionSetup};
use crate::graded_algebra::Polynomial;
use crate::structures::StructureConstants;

/// Coefficient of the odd generator `g` in `p`, taken as a left derivative.
pub fn component(p: &Polynomial, g: &Polynomial) -> Polynomial {
    let (m, _) = g.terms().next().expect("a generator");
    let slot = m.odd_slots().next().expect("an odd generator");
    p.odd_partial(slot)
}

fn sum(p: &Polynomial, items: impl IntoIterator<Item = Polynomial>) -> Polynomial {
    items.into_iter().fold(Polynomial::zero(p.table()), |acc, t| acc + t)
}

/// Base coordinate index `i` (1-based) to its even slot.
fn d(f: &Polynomial, i: usize) -> Polynomial {
    f.partial(i - 1)
}

/// `X·f = Σ X^i ∂_i f`.
pub fn apply(s: &ActionSetup, x: &Polynomial, f: &Polynomial) -> Polynomial {
    let t = s.table();
    sum(f, (1..=s.n()).map(|i| component(x, &theta(t, i)).mul(&d(f, i))))
}

/// `df = Σ ∂_j f ξ^j`.
pub fn de_rham(s: &ActionSetup, f: &Polynomial) -> Polynomial {
    let t = s.table();
    sum(f, (1..=s.n()).map(|j| d(f, j).mul(&xi(t, j))))
}

/// `[X, Y]^j = X·Y^j - Y·X^j`.
pub fn vector_bracket(s: &ActionSetup, x: &Polynomial, y: &Polynomial) -> Polynomial {
    let t = s.table();
    sum(x, (1..=s.n()).map(|j| {
        let th = theta(t, j);
        (apply(s, x, &component(y, &th)) - apply(s, y, &component(x, &th))).mul(&th)
    }))
}

/// Componentwise Lie derivative of a `g`- or `g*`-valued function.
pub fn lie_valued(s: &ActionSetup, x: &Polynomial, v: &Polynomial) -> Polynomial {
    let t = s.table();
    sum(v, (1..=s.m()).flat_map(|a| [e(t, a), eps(t, a)]).map(|g| apply(s, x, &component(v, &g)).mul(&g)))
}

/// `(L_X α)_j = X·α_j + Σ_i α_i ∂_j X^i`.
pub fn lie_form(s: &ActionSetup, x: &Polynomial, alpha: &Polynomial) -> Polynomial {
    let t = s.table();
    sum(alpha, (1..=s.n()).map(|j| {
        let mut c = apply(s, x, &component(alpha, &xi(t, j)));
        for i in 1..=s.n() {
            c += &component(alpha, &xi(t, i)).mul(&d(&component(x, &theta(t, i)), j));
        }
        c.mul(&xi(t, j))
    }))
}

/// `π^{ij}` with `π = Σ_{i<j} π^{ij} θ_i θ_j`.
pub fn bivector_entry(s: &ActionSetup, pi: &Polynomial, i: usize, j: usize) -> Polynomial {
    let t = s.table();
    component(&component(pi, &theta(t, i)), &theta(t, j))
}

/// `π♯α = Σ α_i π^{ij} ∂_j`.
pub fn sharp(s: &ActionSetup, alpha: &Polynomial) -> Polynomial {
    let t = s.table();
    let mut out = Polynomial::zero(t);
    for i in 1..=s.n() {
        let ai = component(alpha, &xi(t, i));
        for j in 1..=s.n() {
            out += &ai.mul(&bivector_entry(s, s.pi(), i, j)).mul(&theta(t, j));
        }
    }
    out
}

/// `⟨α, X⟩ = Σ α_i X^i`.
pub fn contract(s: &ActionSetup, alpha: &Polynomial, x: &Polynomial) -> Polynomial {
    let t = s.table();
    sum(x, (1..=s.n()).map(|i| component(alpha, &xi(t, i)).mul(&component(x, &theta(t, i)))))
}

/// `[α, β]_π = L_{π♯α} β - L_{π♯β} α - d⟨β, π♯α⟩`.
pub fn koszul(s: &ActionSetup, alpha: &Polynomial, beta: &Polynomial) -> Polynomial {
    lie_form(s, &sharp(s, alpha), beta) - lie_form(s, &sharp(s, beta), alpha)
        - de_rham(s, &contract(s, beta, &sharp(s, alpha)))
}

/// Pointwise `[u, v]_g = Σ C^D_{AB} u^A v^B e_D`.
pub fn algebra_bracket(s: &ActionSetup, u: &Polynomial, v: &Polynomial) -> Polynomial {
    structure_bracket(s, s.lie(), u, v, e)
}

/// Pointwise `[ζ, η]_{g*} = Σ Γ^{AB}_C ζ_A η_B ε^C`.
pub fn coalgebra_bracket(s: &ActionSetup, zeta: &Polynomial, eta: &Polynomial) -> Polynomial {
    structure_bracket(s, s.cobracket(), zeta, eta, eps)
}

fn structure_bracket(
    s: &ActionSetup,
    c: &StructureConstants,
    u: &Polynomial,
    v: &Polynomial,
    basis: fn(&std::sync::Arc<crate::graded_algebra::GeneratorTable>, usize) -> Polynomial,
) -> Polynomial {
    let t = s.table();
    let mut out = Polynomial::zero(t);
    for a in 1..=s.m() {
        for b in 1..=s.m() {
            let coeff = component(u, &basis(t, a)).mul(&component(v, &basis(t, b)));
            for k in 1..=s.m() {
                let ck = c.get(k, a, b);
                if !ck.is_zero() && !coeff.is_zero() {
                    out += &coeff.scale(ck).mul(&basis(t, k));
                }
            }
        }
    }
    out
}

/// `ρ*(α) = Σ_A ⟨α, ρ(e_A)⟩ ε^A`.
pub fn rho_star(s: &ActionSetup, alpha: &Polynomial) -> Polynomial {
    let t = s.table();
    sum(alpha, (1..=s.m()).map(|a| contract(s, alpha, s.rho_field(a)).mul(&eps(t, a))))
}

/// `ad*_ζ u` defined by `⟨ad*_ζ u, η⟩ = -⟨u, [ζ, η]_{g*}⟩`.
pub fn coadjoint(s: &ActionSetup, zeta: &Polynomial, u: &Polynomial) -> Polynomial {
    let t = s.table();
    sum(u, (1..=s.m()).map(|b| {
        let bracket = coalgebra_bracket(s, zeta, &eps(t, b));
        -pair_algebra(s, u, &bracket).mul(&e(t, b))
    }))
}

/// `⟨u, η⟩ = Σ u^A η_A`.
pub fn pair_algebra(s: &ActionSetup, u: &Polynomial, eta: &Polynomial) -> Polynomial {
    let t = s.table();
    sum(u, (1..=s.m()).map(|a| component(u, &e(t, a)).mul(&component(eta, &eps(t, a)))))
}

/// `Ψ^{ABC}` with `Ψ_g = Σ_{A<B<C} Ψ^{ABC} e_A e_B e_C`.
pub fn trivector_entry(s: &ActionSetup, a: usize, b: usize, c: usize) -> Polynomial {
    let t = s.table();
    component(&component(&component(s.psi_g(), &e(t, a)), &e(t, b)), &e(t, c))
}

/// `Ψ_g(ζ, η, ·) = Σ ζ_A η_B Ψ^{ABC} e_C`.
pub fn contract_trivector(s: &ActionSetup, zeta: &Polynomial, eta: &Polynomial) -> Polynomial {
    let t = s.table();
    let mut out = Polynomial::zero(t);
    for a in 1..=s.m() {
        for b in 1..=s.m() {
            let coeff = component(zeta, &eps(t, a)).mul(&component(eta, &eps(t, b)));
            if coeff.is_zero() {
                continue;
            }
            for c in 1..=s.m() {
                out += &coeff.mul(&trivector_entry(s, a, b, c)).mul(&e(t, c));
            }
        }
    }
    out
}

/// `(∧ρ)` on a polynomial in `e`: every `e_A` is replaced by `ρ(e_A)`.
pub fn wedge_rho(s: &ActionSetup, w: &Polynomial) -> Polynomial {
    let t = s.table();
    let mut out = w.clone();
    for a in 1..=s.m() {
        let generator = e(t, a);
        let slot = generator.terms().next().and_then(|(m, _)| m.odd_slots().next()).expect("odd generator");
        out = out.substitute_odd(slot, s.rho_field(a));
    }
    out
}

/// `i_ζ Ψ_g = Ψ_g(ζ, ·, ·)` as a quadratic in `e`.
pub fn contract_trivector_once(s: &ActionSetup, zeta: &Polynomial) -> Polynomial {
    let t = s.table();
    let mut out = Polynomial::zero(t);
    for a in 1..=s.m() {
        let za = component(zeta, &eps(t, a));
        if !za.is_zero() {
            out += &za.mul(&component(s.psi_g(), &e(t, a)));
        }
    }
    out
}
