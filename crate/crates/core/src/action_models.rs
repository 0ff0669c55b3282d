//! Structures on `V = TM × g*` built from a Lie algebra `g`, a cobracket,
//! 3-forms `Ψ_g`, `Ψ_M`, an action `ρ` and a bivector `π`, and the Lie
//! algebroid on `T*M × g` obtained by twisting with `σ = π + ρ`.
//!
//! The generator families are `x/p` (base), `xi/th` (`T*M`/`TM`) and `e/eps`
//! (`g`/`g*`). An element `u ∈ g` is a function linear in `e`, a vector field
//! is linear in `th`, and `ρ = Σ_A ε^A ρ(e_A)`.

use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graded_algebra::{int, rat, Family, GeneratorInfo, GeneratorKind, GeneratorTable, Monomial, Polynomial};
use crate::structures::{encode_lie_structure, tangent_mu, StructureConstants, Structure, MU};
use crate::duality::IdentityCheck;
use crate::orientation::audit;
use crate::twisting::{twist_components, TwistFunction};

pub mod classical;

/// Family index of `xi/th` and `e/eps` in [`action_table`].
const TANGENT: usize = 1;
const ALGEBRA: usize = 2;

/// The six-family table for `dim M = n`, `dim g = m`.
pub fn action_table(n: usize, m: usize) -> Result<Arc<GeneratorTable>> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidSetup("dim M and dim g must be positive".into()));
    }
    Ok(Arc::new(GeneratorTable::new(
        Family::new("x", "p", n),
        vec![Family::new("xi", "th", n), Family::new("e", "eps", m)],
    )?))
}

/// Raw inputs; polynomials live on [`ActionInputs::table`].
#[derive(Debug, Clone)]
pub struct ActionInputs {
    pub table: Arc<GeneratorTable>,
    /// `C^D_{AB}` as `get(D, A, B)`.
    pub lie: StructureConstants,
    /// `Γ^{AB}_C` as `get(C, A, B)`.
    pub cobracket: StructureConstants,
    /// Constant cubic in `e`.
    pub psi_g: Polynomial,
    /// Cubic in `xi` with `x`-coefficients.
    pub psi_m: Polynomial,
    /// `ρ(e_A)` for `A = 1..m`, each linear in `th`.
    pub rho: Vec<Polynomial>,
    /// Quadratic in `th` with `x`-coefficients.
    pub pi: Polynomial,
    /// Replaces `p_i ξ^i`; any `μ` of shifted bidegree (0,1) on `xi/th`.
    pub mu_m: Option<Polynomial>,
}

impl ActionInputs {
    /// All data zero: abelian `g` acting trivially.
    pub fn new(n: usize, m: usize) -> Result<Self> {
        let table = action_table(n, m)?;
        let zero = Polynomial::zero(&table);
        Ok(ActionInputs {
            lie: StructureConstants::zero(m),
            cobracket: StructureConstants::zero(m),
            psi_g: zero.clone(),
            psi_m: zero.clone(),
            rho: vec![zero.clone(); m],
            pi: zero,
            mu_m: None,
            table,
        })
    }

    pub fn n(&self) -> usize {
        self.table.base_dim()
    }

    pub fn m(&self) -> usize {
        self.table.fibers()[1].size
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        crate::frontend::parse_expression(&self.table, text)
    }
}

/// A validated setup with `S` and `σ = π + ρ` assembled.
#[derive(Debug, Clone)]
pub struct ActionSetup {
    table: Arc<GeneratorTable>,
    lie: StructureConstants,
    cobracket: StructureConstants,
    s_g: Polynomial,
    s_gstar: Polynomial,
    s_m: Polynomial,
    psi_g: Polynomial,
    psi_m: Polynomial,
    rho_fields: Vec<Polynomial>,
    rho: Polynomial,
    pi: Polynomial,
    structure: Structure,
    sigma: TwistFunction,
}

fn check_support(what: &str, p: &Polynomial, allowed: impl Fn(&GeneratorInfo) -> bool, odd: Option<u32>) -> Result<()> {
    let table = p.table().clone();
    for (m, _) in p.terms() {
        let even_ok = m
            .even_exponents()
            .iter()
            .enumerate()
            .all(|(i, &e)| e == 0 || allowed(table.even_info(i)));
        let odd_ok = m.odd_slots().all(|i| allowed(table.odd_info(i)));
        let count_ok = odd.is_none_or(|k| m.odd_count() == k);
        if !(even_ok && odd_ok && count_ok) {
            return Err(Error::InvalidSetup(format!("{what}: term outside the allowed generators in {p}")));
        }
    }
    Ok(())
}

fn is_x(g: &GeneratorInfo) -> bool {
    g.kind == GeneratorKind::Base
}

fn is_theta(g: &GeneratorInfo) -> bool {
    g.family == TANGENT && g.kind == GeneratorKind::FiberConjugate
}

fn is_xi(g: &GeneratorInfo) -> bool {
    g.family == TANGENT && g.kind == GeneratorKind::Fiber
}

fn is_e(g: &GeneratorInfo) -> bool {
    g.family == ALGEBRA && g.kind == GeneratorKind::Fiber
}

fn is_eps(g: &GeneratorInfo) -> bool {
    g.family == ALGEBRA && g.kind == GeneratorKind::FiberConjugate
}

/// `Σ_A ε^A X_A`.
fn assemble_rho(table: &Arc<GeneratorTable>, fields: &[Polynomial]) -> Polynomial {
    let mut out = Polynomial::zero(table);
    for (a, field) in fields.iter().enumerate() {
        out += &eps(table, a + 1).mul(field);
    }
    out
}

fn named(table: &Arc<GeneratorTable>, prefix: &str, i: usize) -> Polynomial {
    Polynomial::generator(table, &format!("{prefix}{i}")).expect("generator of the action table")
}

pub(crate) fn eps(table: &Arc<GeneratorTable>, a: usize) -> Polynomial {
    named(table, "eps", a)
}

pub(crate) fn e(table: &Arc<GeneratorTable>, a: usize) -> Polynomial {
    named(table, "e", a)
}

pub(crate) fn theta(table: &Arc<GeneratorTable>, i: usize) -> Polynomial {
    named(table, "th", i)
}

pub(crate) fn xi(table: &Arc<GeneratorTable>, i: usize) -> Polynomial {
    named(table, "xi", i)
}

pub fn build_setup(inputs: ActionInputs) -> Result<ActionSetup> {
    let table = inputs.table.clone();
    let (n, m) = (inputs.n(), inputs.m());
    let is_action_table = *table == *action_table(n, m)?;
    if !is_action_table {
        return Err(Error::InvalidSetup("inputs must live on the action table".into()));
    }
    for (what, c) in [("C", &inputs.lie), ("Gamma", &inputs.cobracket)] {
        if c.dim() != m {
            return Err(Error::InvalidSetup(format!("{what} has dimension {} but dim g = {m}", c.dim())));
        }
    }
    if inputs.rho.len() != m {
        return Err(Error::InvalidSetup(format!("rho needs {m} vector fields, got {}", inputs.rho.len())));
    }
    for (a, field) in inputs.rho.iter().enumerate() {
        check_support(&format!("rho(e{})", a + 1), field, |g| is_x(g) || is_theta(g), Some(1))?;
    }
    check_support("pi", &inputs.pi, |g| is_x(g) || is_theta(g), Some(2))?;
    check_support("PsiM", &inputs.psi_m, |g| is_x(g) || is_xi(g), Some(3))?;
    check_support("PsiG", &inputs.psi_g, is_e, Some(3))?;
    let s_m = match inputs.mu_m {
        Some(mu) => {
            check_support("muM", &mu, |g| g.family <= TANGENT, None)?;
            if !mu.is_zero() && !mu.has_shifted_bidegree(MU) {
                return Err(Error::WrongBidegree {
                    what: "muM".into(),
                    expected: MU,
                    found: format!("{:?}", mu.bidegree()),
                });
            }
            let sq = mu.bracket(&mu);
            if !sq.is_zero() {
                return Err(Error::NotAStructure(format!("{{muM,muM}} = {sq}")));
            }
            mu
        }
        None => tangent_mu(&table)?,
    };

    let closed = s_m.bracket(&inputs.psi_m);
    if !closed.is_zero() {
        return Err(Error::NotAStructure(format!("PsiM is not closed: {{S_M,PsiM}} = {closed}")));
    }
    let s_g = encode_lie_structure(&table, &inputs.lie, "e", "eps")?;
    let s_gstar = encode_lie_structure(&table, &inputs.cobracket, "eps", "e")?;
    let algebra = &s_g + &s_gstar + inputs.psi_g.clone();
    let quasi = algebra.bracket(&algebra);
    if !quasi.is_zero() {
        return Err(Error::NotAStructure(format!(
            "(g, g*) is not a Lie-quasi bialgebra: {{S_g+S_g*+PsiG, S_g+S_g*+PsiG}} = {quasi}"
        )));
    }

    let structure = Structure::new(
        Polynomial::zero(&table),
        s_g.clone(),
        &s_gstar + &s_m,
        &inputs.psi_g + &inputs.psi_m,
    )?;
    debug_assert!(structure.is_structure());
    let rho = assemble_rho(&table, &inputs.rho);
    let sigma = TwistFunction::bivector(&inputs.pi + &rho)?;
    Ok(ActionSetup {
        table,
        lie: inputs.lie,
        cobracket: inputs.cobracket,
        s_g,
        s_gstar,
        s_m,
        psi_g: inputs.psi_g,
        psi_m: inputs.psi_m,
        rho_fields: inputs.rho,
        rho,
        pi: inputs.pi,
        structure,
        sigma,
    })
}

impl ActionSetup {
    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn n(&self) -> usize {
        self.table.base_dim()
    }

    pub fn m(&self) -> usize {
        self.lie.dim()
    }

    pub fn lie(&self) -> &StructureConstants {
        &self.lie
    }

    pub fn cobracket(&self) -> &StructureConstants {
        &self.cobracket
    }

    pub fn s_g(&self) -> &Polynomial {
        &self.s_g
    }

    pub fn s_gstar(&self) -> &Polynomial {
        &self.s_gstar
    }

    pub fn s_m(&self) -> &Polynomial {
        &self.s_m
    }

    pub fn psi_g(&self) -> &Polynomial {
        &self.psi_g
    }

    pub fn psi_m(&self) -> &Polynomial {
        &self.psi_m
    }

    pub fn rho(&self) -> &Polynomial {
        &self.rho
    }

    /// `ρ(e_A)`, 1-based.
    pub fn rho_field(&self, a: usize) -> &Polynomial {
        &self.rho_fields[a - 1]
    }

    pub fn pi(&self) -> &Polynomial {
        &self.pi
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn sigma(&self) -> &TwistFunction {
        &self.sigma
    }

    /// `ρ(u) = Σ_A u^A ρ(e_A)` for `u` linear in `e`.
    pub fn rho_of(&self, u: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(&self.table);
        for a in 1..=self.m() {
            let ua = classical::component(u, &e(&self.table, a));
            out += &ua.mul(self.rho_field(a));
        }
        out
    }

    /// `[X, Y]_M = {{X, S_M}, Y}`.
    pub fn bracket_m(&self, x: &Polynomial, y: &Polynomial) -> Polynomial {
        x.bracket(&self.s_m).bracket(y)
    }

    /// `(θ-count, ε-count)` of a monomial.
    pub fn multidegree(&self, m: &Monomial) -> (usize, usize) {
        let mut out = (0, 0);
        for i in m.odd_slots() {
            let g = self.table.odd_info(i);
            if is_theta(g) {
                out.0 += 1;
            } else if is_eps(g) {
                out.1 += 1;
            }
        }
        out
    }

    pub fn multidegree_part(&self, p: &Polynomial, k: usize, l: usize) -> Polynomial {
        p.filter(|m| self.multidegree(m) == (k, l))
    }
}

/// Left-hand sides of (A)–(D).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionResiduals(pub [Polynomial; 4]);

impl ConditionResiduals {
    pub const LABELS: [&'static str; 4] = ["(A)", "(B)", "(C)", "(D)"];

    pub fn all_zero(&self) -> bool {
        self.0.iter().all(Polynomial::is_zero)
    }

    pub fn labeled(&self) -> impl Iterator<Item = (&'static str, &Polynomial)> {
        Self::LABELS.into_iter().zip(self.0.iter())
    }

    pub fn failing(&self) -> Vec<&'static str> {
        self.labeled().filter(|(_, p)| !p.is_zero()).map(|(l, _)| l).collect()
    }
}

fn b3(a: &Polynomial, x: &Polynomial, y: &Polynomial, z: &Polynomial) -> Polynomial {
    a.bracket(x).bracket(y).bracket(z)
}

pub fn condition_residuals(setup: &ActionSetup) -> ConditionResiduals {
    let (s_g, s_gs, s_m) = (&setup.s_g, &setup.s_gstar, &setup.s_m);
    let (psi_g, psi_m, rho, pi) = (&setup.psi_g, &setup.psi_m, &setup.rho, &setup.pi);
    let half = rat(1, 2);
    let third = rat(1, 3);
    let a = b3(psi_m, rho, rho, rho);
    let b = -s_g.bracket(rho) + s_m.bracket(rho).bracket(rho).scale(&half)
        - b3(psi_m, rho, rho, pi).scale(&half);
    let c = s_m.bracket(pi).bracket(rho) + s_gs.bracket(rho).bracket(rho).scale(&half)
        - b3(psi_m, rho, pi, pi).scale(&half);
    let d = s_m.bracket(pi).bracket(pi) - b3(psi_g, rho, rho, rho).scale(&third) - b3(psi_m, pi, pi, pi).scale(&third);
    ConditionResiduals([a, b, c, d])
}

/// The generic residual `φ_{π+ρ}` split by `θ`-count `k = 0..3` next to
/// `-(1/6)(A)`, `(B)`, `(C)`, `½(D)`.
#[derive(Debug, Clone)]
pub struct McDecomposition {
    pub generic: Polynomial,
    pub components: [Polynomial; 4],
    pub predicted: [Polynomial; 4],
}

impl McDecomposition {
    pub const FACTORS: [(i64, i64); 4] = [(-1, 6), (1, 1), (1, 1), (1, 2)];

    pub fn holds(&self) -> bool {
        self.components == self.predicted
            && self.components.iter().cloned().fold(Polynomial::zero(self.generic.table()), |acc, c| acc + c)
                == self.generic
    }
}

pub fn mc_decomposition(setup: &ActionSetup) -> McDecomposition {
    let generic = twist_components(&setup.structure, &setup.sigma).phi().clone();
    let components = std::array::from_fn(|k| setup.multidegree_part(&generic, k, 3 - k));
    let residuals = condition_residuals(setup);
    let predicted = std::array::from_fn(|k| {
        let (num, den) = McDecomposition::FACTORS[k];
        residuals.0[k].scale(&rat(num, den))
    });
    McDecomposition {
        generic,
        components,
        predicted,
    }
}

/// One basis pair `(e_a, e_b)`, `a < b`, with the two sides of an identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCheck {
    pub a: usize,
    pub b: usize,
    pub lhs: Polynomial,
    pub rhs: Polynomial,
}

impl PairCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `ρ([e_a, e_b]_g)` against `[ρ(e_a), ρ(e_b)]_M`.
pub fn action_homomorphism_check(setup: &ActionSetup) -> Vec<PairCheck> {
    let mut out = Vec::new();
    for a in 1..=setup.m() {
        for b in (a + 1)..=setup.m() {
            let mut lhs = Polynomial::zero(&setup.table);
            for d in 1..=setup.m() {
                let c = setup.lie.get(d, a, b);
                if !c.is_zero() {
                    lhs += &setup.rho_field(d).scale(c);
                }
            }
            let rhs = setup.bracket_m(setup.rho_field(a), setup.rho_field(b));
            out.push(PairCheck { a, b, lhs, rhs });
        }
    }
    out
}

/// `-{S_g, ρ} + ½{{S_M, ρ}, ρ}`, zero iff `ρ` is a Lie algebra action.
pub fn action_residual(setup: &ActionSetup) -> Polynomial {
    -setup.s_g.bracket(&setup.rho) + setup.s_m.bracket(&setup.rho).bracket(&setup.rho).scale(&rat(1, 2))
}

/// `(B)` paired with `(e_a, e_b)` against
/// `ρ([e_a,e_b]_g) - [ρ(e_a), ρ(e_b)]_M - π♯(i_{ρ(e_a)∧ρ(e_b)} Ψ_M)`.
///
/// The pairing is `{{R, e_b}, e_a}`; `i_{X∧Y}Ψ = {Y, {X, Ψ}}` and
/// `π♯α = {α, π}`.
pub fn twisted_action_check(setup: &ActionSetup) -> Vec<PairCheck> {
    let b_res = condition_residuals(setup).0[1].clone();
    action_homomorphism_check(setup)
        .into_iter()
        .map(|h| {
            let (ua, ub) = (e(&setup.table, h.a), e(&setup.table, h.b));
            let lhs = b_res.bracket(&ub).bracket(&ua);
            let (xa, xb) = (setup.rho_field(h.a), setup.rho_field(h.b));
            let contraction = xb.bracket(&xa.bracket(&setup.psi_m));
            let rhs = h.lhs - h.rhs - contraction.bracket(&setup.pi);
            PairCheck { lhs, rhs, ..h }
        })
        .collect()
}

/// `γ_σ` assembled term by term from `S_g, S_g*, S_M, Ψ_g, Ψ_M, π, ρ`.
pub fn gamma_sigma_display(setup: &ActionSetup) -> Polynomial {
    let (s_g, s_gs, s_m) = (&setup.s_g, &setup.s_gstar, &setup.s_m);
    let (psi_g, psi_m, rho, pi) = (&setup.psi_g, &setup.psi_m, &setup.rho, &setup.pi);
    let half = rat(1, 2);
    s_g.clone() - s_gs.bracket(rho) - s_m.bracket(pi) - s_m.bracket(rho)
        + psi_g.bracket(rho).bracket(rho).scale(&half)
        + psi_m.bracket(pi).bracket(pi).scale(&half)
        + psi_m.bracket(pi).bracket(rho)
        + psi_m.bracket(rho).bracket(rho).scale(&half)
}

fn require_conditions(setup: &ActionSetup) -> Result<()> {
    let r = condition_residuals(setup);
    if r.all_zero() {
        Ok(())
    } else {
        Err(Error::Hypothesis(format!("conditions {} fail", r.failing().join(", "))))
    }
}

/// The Lie algebroid generator on `T*M × g`; requires (A)–(D).
pub fn gamma_sigma(setup: &ActionSetup) -> Result<Polynomial> {
    require_conditions(setup)?;
    Ok(gamma_sigma_display(setup))
}

/// `(θ-shift, ε-shift)` of the blocks `d_{(j,1-j)}`, `j = -1..2`.
pub const BLOCKS: [(i32, i32); 4] = [(-1, 2), (0, 1), (1, 0), (2, -1)];

/// Generators of the four blocks; they sum to `γ_σ`.
pub fn differential_block_generators(setup: &ActionSetup) -> [Polynomial; 4] {
    let (s_g, s_gs, s_m) = (&setup.s_g, &setup.s_gstar, &setup.s_m);
    let (psi_g, psi_m, rho, pi) = (&setup.psi_g, &setup.psi_m, &setup.rho, &setup.pi);
    let half = rat(1, 2);
    [
        psi_m.bracket(rho).bracket(rho).scale(&half),
        -s_m.bracket(rho) + psi_m.bracket(pi).bracket(rho) + s_g.clone(),
        -s_m.bracket(pi) + psi_m.bracket(pi).bracket(pi).scale(&half) - s_gs.bracket(rho),
        psi_g.bracket(rho).bracket(rho).scale(&half),
    ]
}

/// `d_{γσ} a` with its four bigraded pieces.
#[derive(Debug, Clone)]
pub struct DifferentialSplit {
    pub total: Polynomial,
    pub blocks: [Polynomial; 4],
}

impl DifferentialSplit {
    pub fn sums_to_total(&self) -> bool {
        self.blocks.iter().cloned().fold(Polynomial::zero(self.total.table()), |acc, b| acc + b) == self.total
    }
}

pub fn twisted_differential(setup: &ActionSetup, a: &Polynomial) -> Result<DifferentialSplit> {
    let gamma = gamma_sigma(setup)?;
    let blocks = differential_block_generators(setup).map(|g| g.bracket(a));
    Ok(DifferentialSplit {
        total: gamma.bracket(a),
        blocks,
    })
}

/// For `a` of multidegree `(k, ℓ)`, block `j` lands in `(k+j, ℓ+1-j)` and
/// equals that component of the total.
pub fn blocks_match_multidegree(setup: &ActionSetup, a: &Polynomial, split: &DifferentialSplit) -> bool {
    let degrees: Vec<_> = a.terms().map(|(m, _)| setup.multidegree(m)).collect();
    let Some(&(k, l)) = degrees.first() else {
        return split.total.is_zero();
    };
    if degrees.iter().any(|&d| d != (k, l)) {
        return false;
    }
    BLOCKS.iter().zip(&split.blocks).all(|(&(dk, dl), block)| {
        let (tk, tl) = (k as i32 + dk, l as i32 + dl);
        if tk < 0 || tl < 0 {
            return block.is_zero();
        }
        let (tk, tl) = (tk as usize, tl as usize);
        block.terms().all(|(m, _)| setup.multidegree(m) == (tk, tl))
            && *block == setup.multidegree_part(&split.total, tk, tl)
    })
}

/// The pieces `Σ_{i+j=s} d_i d_j a` of `d² a` by `θ`-shift `s`; each
/// vanishes separately when `d² = 0`.
pub fn square_blocks(setup: &ActionSetup, a: &Polynomial) -> Result<Vec<(i32, Polynomial)>> {
    require_conditions(setup)?;
    let gens = differential_block_generators(setup);
    let mut out: Vec<(i32, Polynomial)> = (-2..=4).map(|s| (s, Polynomial::zero(&setup.table))).collect();
    for (i, gi) in gens.iter().enumerate() {
        for (j, gj) in gens.iter().enumerate() {
            let s = BLOCKS[i].0 + BLOCKS[j].0;
            out[(s + 2) as usize].1 += &gi.bracket(&gj.bracket(a));
        }
    }
    Ok(out)
}

/// Values of `d_{γσ}` on a function `f`, a vector field `X` and an
/// element `η` of `Γ(g*)`, each as the four blocks
/// `[d_{(-1,2)}, d_{(0,1)}, d_{(1,0)}, d_{(2,-1)}]` next to closed forms.
///
/// Terms built from one de Rham derivative carry the measured orientation
/// sign. For `X`, the operators `[·,·]_M`, interior products `i_XΨ = {X, Ψ}`
/// and `(∧²π♯)ω = ½{{ω, π}, π}`, `(π♯∧ρ)ω = {{ω, π}, ρ}`,
/// `(∧²ρ)ω = ½{{ω, ρ}, ρ}` are taken inside the algebra.
pub fn differential_closed_forms_check(
    setup: &ActionSetup,
    f: &Polynomial,
    x: &Polynomial,
    eta: &Polynomial,
) -> Result<Vec<IdentityCheck>> {
    require_conditions(setup)?;
    let t = &setup.table;
    let sign = int(audit().de_rham);
    let zero = Polynomial::zero(t);
    let gens = differential_block_generators(setup);
    let blocks = |a: &Polynomial| gens.clone().map(|g| g.bracket(a));
    let mut out = Vec::new();
    let mut push = |label: &'static str, lhs: Polynomial, rhs: Polynomial| out.push(IdentityCheck { label, lhs, rhs });

    // (d f)(α + u) = (π♯α + ρ(u))·f, paired against each basis covector
    let df = blocks(f);
    let mut anchor_pi = zero.clone();
    let mut anchor_rho = zero.clone();
    for i in 1..=setup.n() {
        let xi_i = xi(t, i);
        anchor_pi += &theta(t, i).mul(&classical::apply(setup, &classical::sharp(setup, &xi_i), f));
    }
    for a in 1..=setup.m() {
        anchor_rho += &eps(t, a).mul(&classical::apply(setup, setup.rho_field(a), f));
    }
    push("d f (0,1): rho(.)·f", df[1].clone(), anchor_rho.scale(&sign));
    push("d f (1,0): pi#(.)·f", df[2].clone(), anchor_pi.scale(&sign));
    push("d f (-1,2) + (2,-1)", &df[0] + &df[3], zero.clone());

    let dx = blocks(x);
    let (pi, rho) = (&setup.pi, &setup.rho);
    let ix = x.bracket(&setup.psi_m);
    let half = rat(1, 2);
    let mut schouten_rho = zero.clone();
    for a in 1..=setup.m() {
        schouten_rho += &eps(t, a).mul(&setup.bracket_m(setup.rho_field(a), x));
    }
    push("d X (-1,2): (^2 rho)(i_X PsiM)", dx[0].clone(), ix.bracket(rho).bracket(rho).scale(&half));
    push(
        "d X (0,1): [rho(.),X]_M + (pi# ^ rho)(i_X PsiM)",
        dx[1].clone(),
        schouten_rho + ix.bracket(pi).bracket(rho),
    );
    push(
        "d X (1,0): [pi,X]_M + (^2 pi#)(i_X PsiM)",
        dx[2].clone(),
        setup.bracket_m(pi, x) + ix.bracket(pi).bracket(pi).scale(&half),
    );
    push("d X (2,-1)", dx[3].clone(), zero.clone());

    let de = blocks(eta);
    let mut d_g = zero.clone();
    let mut lie_pairs = zero.clone();
    let mut coadjoint = zero.clone();
    let mut lie_sharp = zero.clone();
    for a in 1..=setup.m() {
        coadjoint += &eps(t, a).mul(&setup.rho_of(&classical::coadjoint(setup, eta, &e(t, a))));
        for b in (a + 1)..=setup.m() {
            let pair = eps(t, a).mul(&eps(t, b));
            let bracket = classical::algebra_bracket(setup, &e(t, a), &e(t, b));
            d_g -= &classical::pair_algebra(setup, &bracket, eta).mul(&pair);
            let l = classical::pair_algebra(setup, &e(t, b), &classical::lie_valued(setup, setup.rho_field(a), eta))
                - classical::pair_algebra(setup, &e(t, a), &classical::lie_valued(setup, setup.rho_field(b), eta));
            lie_pairs += &l.mul(&pair);
        }
    }
    for i in 1..=setup.n() {
        let field = classical::sharp(setup, &xi(t, i));
        lie_sharp += &theta(t, i).mul(&classical::lie_valued(setup, &field, eta));
    }
    let i_eta = classical::contract_trivector_once(setup, eta);
    push("d eta (-1,2)", de[0].clone(), zero.clone());
    push("d eta (0,1): d_g eta + <<L_rho(.) eta, .>>", de[1].clone(), d_g + lie_pairs.scale(&sign));
    push(
        "d eta (1,0): rho(ad*_eta(.)) + L_pi#(.) eta",
        de[2].clone(),
        coadjoint + lie_sharp.scale(&sign),
    );
    push("d eta (2,-1): (^2 rho)(i_eta PsiG)", de[3].clone(), classical::wedge_rho(setup, &i_eta));
    Ok(out)
}

/// Which of the named brackets on `T*M × g` the setup realizes; all need
/// `Ψ_M = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketCase {
    /// `Ψ_M = 0`.
    BursztynCrainicSevera,
    /// `Ψ_M = 0`, `Γ = 0`.
    BursztynCrainic,
    /// `Ψ_M = Ψ_g = 0`.
    Lu,
    /// `Ψ_M = Ψ_g = 0`, `Γ = 0`.
    LuAndBursztynCrainic,
}

impl BracketCase {
    pub fn label(self) -> &'static str {
        match self {
            BracketCase::BursztynCrainicSevera => "Bursztyn-Crainic-Severa",
            BracketCase::BursztynCrainic => "Bursztyn-Crainic",
            BracketCase::Lu => "Lu",
            BracketCase::LuAndBursztynCrainic => "Lu / Bursztyn-Crainic",
        }
    }
}

pub fn bracket_case(setup: &ActionSetup) -> Result<BracketCase> {
    if !setup.psi_m.is_zero() {
        return Err(Error::Hypothesis(format!("named brackets need PsiM = 0, found {}", setup.psi_m)));
    }
    Ok(match (setup.psi_g.is_zero(), setup.cobracket.is_zero()) {
        (false, false) => BracketCase::BursztynCrainicSevera,
        (false, true) => BracketCase::BursztynCrainic,
        (true, false) => BracketCase::Lu,
        (true, true) => BracketCase::LuAndBursztynCrainic,
    })
}

/// Section of `T*M × g`: a 1-form (`xi`) or a `g`-valued function (`e`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectionKind {
    Form,
    Algebra,
}

fn section_kind(setup: &ActionSetup, a: &Polynomial) -> Result<SectionKind> {
    if check_support("section", a, |g| is_x(g) || is_xi(g), Some(1)).is_ok() {
        Ok(SectionKind::Form)
    } else if check_support("section", a, |g| is_x(g) || is_e(g), Some(1)).is_ok() {
        Ok(SectionKind::Algebra)
    } else {
        Err(Error::InvalidSection(format!(
            "{a} is neither a 1-form on M nor a section of M × g (dim M = {})",
            setup.n()
        )))
    }
}

/// The named bracket in closed form next to `{{a, γ_σ}, b}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseBracket {
    pub case: BracketCase,
    pub closed: Polynomial,
    pub derived: Polynomial,
}

impl CaseBracket {
    pub fn holds(&self) -> bool {
        self.closed == self.derived
    }
}

/// `[u,v] = [u,v]_g + L_{ρ(u)}v - L_{ρ(v)}u`,
/// `[α,u] = L_{π♯α}u - Σ_A u^A L_{ρ(e_A)}α - ad*_{ρ*α}u`,
/// `[α,β] = [α,β]_π - Ψ_g(ρ*α, ρ*β, ·)`,
/// with Lie derivatives and the Koszul bracket scaled by the orientation
/// sign. Does not require (A)–(D).
pub fn case_bracket(setup: &ActionSetup, a: &Polynomial, b: &Polynomial) -> Result<CaseBracket> {
    let case = bracket_case(setup)?;
    let sign = int(audit().de_rham);
    let derived = a.bracket(&gamma_sigma_display(setup)).bracket(b);
    let mixed = |alpha: &Polynomial, u: &Polynomial| {
        let t = &setup.table;
        let mut pointwise = Polynomial::zero(t);
        for k in 1..=setup.m() {
            let uk = classical::component(u, &e(t, k));
            pointwise += &uk.mul(&classical::lie_form(setup, setup.rho_field(k), alpha));
        }
        (classical::lie_valued(setup, &classical::sharp(setup, alpha), u) - pointwise).scale(&sign)
            - classical::coadjoint(setup, &classical::rho_star(setup, alpha), u)
    };
    let closed = match (section_kind(setup, a)?, section_kind(setup, b)?) {
        (SectionKind::Algebra, SectionKind::Algebra) => {
            let lie = classical::lie_valued(setup, &setup.rho_of(a), b) - classical::lie_valued(setup, &setup.rho_of(b), a);
            classical::algebra_bracket(setup, a, b) + lie.scale(&sign)
        }
        (SectionKind::Form, SectionKind::Algebra) => mixed(a, b),
        (SectionKind::Algebra, SectionKind::Form) => -mixed(b, a),
        (SectionKind::Form, SectionKind::Form) => {
            let (ra, rb) = (classical::rho_star(setup, a), classical::rho_star(setup, b));
            classical::koszul(setup, a, b).scale(&sign) - classical::contract_trivector(setup, &ra, &rb)
        }
    };
    Ok(CaseBracket { case, closed, derived })
}

/// The six building-block identities behind [`case_bracket`], for 1-forms
/// `α, β` and sections `u, v` of `M × g`.
pub fn building_block_identities(
    setup: &ActionSetup,
    alpha: &Polynomial,
    beta: &Polynomial,
    u: &Polynomial,
    v: &Polynomial,
) -> Result<Vec<IdentityCheck>> {
    bracket_case(setup)?;
    for (p, kind) in [(alpha, SectionKind::Form), (beta, SectionKind::Form), (u, SectionKind::Algebra), (v, SectionKind::Algebra)] {
        if section_kind(setup, p)? != kind {
            return Err(Error::InvalidSection(format!("{p} has the wrong kind")));
        }
    }
    let sign = int(audit().de_rham);
    let t = &setup.table;
    let s_m_rho = setup.s_m.bracket(&setup.rho);
    let s_m_pi = setup.s_m.bracket(&setup.pi);
    let (ra, rb) = (classical::rho_star(setup, alpha), classical::rho_star(setup, beta));
    let mut pointwise = Polynomial::zero(t);
    for k in 1..=setup.m() {
        pointwise += &classical::component(u, &e(t, k)).mul(&classical::lie_form(setup, setup.rho_field(k), alpha));
    }
    let lie_uv = classical::lie_valued(setup, &setup.rho_of(u), v) - classical::lie_valued(setup, &setup.rho_of(v), u);
    Ok(vec![
        IdentityCheck {
            label: "{{u, S_g - {S_M,rho}}, v} = [u,v]_g + L_rho(u) v - L_rho(v) u",
            lhs: u.bracket(&(&setup.s_g - &s_m_rho)).bracket(v),
            rhs: classical::algebra_bracket(setup, u, v) + lie_uv.scale(&sign),
        },
        IdentityCheck {
            label: "{{alpha, {S_g*,rho}}, u} = ad*_rho*(alpha) u",
            lhs: alpha.bracket(&setup.s_gstar.bracket(&setup.rho)).bracket(u),
            rhs: classical::coadjoint(setup, &ra, u),
        },
        IdentityCheck {
            label: "{{alpha, {S_M,pi}}, u} = -L_pi#(alpha) u",
            lhs: alpha.bracket(&s_m_pi).bracket(u),
            rhs: -classical::lie_valued(setup, &classical::sharp(setup, alpha), u).scale(&sign),
        },
        IdentityCheck {
            label: "{{alpha, {S_M,rho}}, u} = L_rho(u) alpha",
            lhs: alpha.bracket(&s_m_rho).bracket(u),
            rhs: pointwise.scale(&sign),
        },
        IdentityCheck {
            label: "{{alpha, {S_M,pi}}, beta} = -[alpha,beta]_pi",
            lhs: alpha.bracket(&s_m_pi).bracket(beta),
            rhs: -classical::koszul(setup, alpha, beta).scale(&sign),
        },
        IdentityCheck {
            label: "1/2 {{alpha, {{PsiG,rho},rho}}, beta} = i_(rho* alpha ^ rho* beta) PsiG",
            lhs: alpha
                .bracket(&setup.psi_g.bracket(&setup.rho).bracket(&setup.rho))
                .bracket(beta)
                .scale(&rat(1, 2)),
            rhs: -classical::contract_trivector(setup, &ra, &rb),
        },
    ])
}

#[cfg(test)]
mod tests;
