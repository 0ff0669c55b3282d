//! Structures `S = φ + γ + μ + ψ` on `(V, V*)`: component equations,
//! classification, derived brackets and the differential `d_S = {S, ·}`.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graded_algebra::{
    derived, int, rat, GeneratorKind, GeneratorTable, Polynomial, Rational, ShiftedBidegree,
};

pub const PHI: ShiftedBidegree = ShiftedBidegree(2, -1);
pub const GAMMA: ShiftedBidegree = ShiftedBidegree(1, 0);
pub const MU: ShiftedBidegree = ShiftedBidegree(0, 1);
pub const PSI: ShiftedBidegree = ShiftedBidegree(-1, 2);

fn check_component(what: &str, p: &Polynomial, sb: ShiftedBidegree) -> Result<()> {
    if p.has_shifted_bidegree(sb) {
        return Ok(());
    }
    let found = match p.bidegree() {
        Some(b) => b.shifted().to_string(),
        None => "a mixed polynomial".to_string(),
    };
    Err(Error::WrongBidegree {
        what: what.to_string(),
        expected: sb,
        found,
    })
}

/// A degree-3 function split by shifted bidegree. Need not satisfy
/// `{S,S} = 0`.
#[derive(Clone, PartialEq, Eq)]
pub struct Structure {
    table: Arc<GeneratorTable>,
    phi: Polynomial,
    gamma: Polynomial,
    mu: Polynomial,
    psi: Polynomial,
}

impl fmt::Debug for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Structure")
            .field("phi", &self.phi)
            .field("gamma", &self.gamma)
            .field("mu", &self.mu)
            .field("psi", &self.psi)
            .finish()
    }
}

/// Assembles `φ + γ + μ + ψ`, checking each component's shifted bidegree.
pub fn make_structure(
    phi: Polynomial,
    gamma: Polynomial,
    mu: Polynomial,
    psi: Polynomial,
) -> Result<Structure> {
    Structure::new(phi, gamma, mu, psi)
}

impl Structure {
    pub fn new(phi: Polynomial, gamma: Polynomial, mu: Polynomial, psi: Polynomial) -> Result<Self> {
        let table = Arc::clone(phi.table());
        for p in [&gamma, &mu, &psi] {
            if !phi.same_table_as(p) {
                return Err(Error::TableMismatch);
            }
        }
        check_component("phi", &phi, PHI)?;
        check_component("gamma", &gamma, GAMMA)?;
        check_component("mu", &mu, MU)?;
        check_component("psi", &psi, PSI)?;
        Ok(Structure {
            table,
            phi,
            gamma,
            mu,
            psi,
        })
    }

    /// Splits a degree-3 function into its four components.
    pub fn from_total(s: &Polynomial) -> Result<Self> {
        let stray = s.filter(|m| m.bidegree(s.table()).total() != 3);
        if !stray.is_zero() {
            return Err(Error::WrongBidegree {
                what: "S".into(),
                expected: MU,
                found: format!("terms of total degree != 3 ({stray})"),
            });
        }
        Structure::new(
            s.shifted_part(PHI),
            s.shifted_part(GAMMA),
            s.shifted_part(MU),
            s.shifted_part(PSI),
        )
    }

    pub fn zero(table: &Arc<GeneratorTable>) -> Self {
        let z = Polynomial::zero(table);
        Structure {
            table: Arc::clone(table),
            phi: z.clone(),
            gamma: z.clone(),
            mu: z.clone(),
            psi: z,
        }
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn phi(&self) -> &Polynomial {
        &self.phi
    }

    pub fn gamma(&self) -> &Polynomial {
        &self.gamma
    }

    pub fn mu(&self) -> &Polynomial {
        &self.mu
    }

    pub fn psi(&self) -> &Polynomial {
        &self.psi
    }

    /// `φ + γ + μ + ψ`.
    pub fn total(&self) -> Polynomial {
        &self.phi + &self.gamma + &self.mu + &self.psi
    }

    /// `{S, S}`.
    pub fn square(&self) -> Polynomial {
        let s = self.total();
        s.bracket(&s)
    }

    pub fn residuals(&self) -> Residuals {
        let (phi, gamma, mu, psi) = (&self.phi, &self.gamma, &self.mu, &self.psi);
        let half = rat(1, 2);
        Residuals([
            mu.bracket(mu).scale(&half) + gamma.bracket(psi),
            mu.bracket(gamma) + phi.bracket(psi),
            gamma.bracket(gamma).scale(&half) + mu.bracket(phi),
            mu.bracket(psi),
            gamma.bracket(phi),
        ])
    }

    pub fn is_structure(&self) -> bool {
        self.residuals().all_zero()
    }

    /// Class by vanishing of `φ` and `ψ`; an error unless `{S,S} = 0`.
    pub fn classify(&self) -> Result<StructureClass> {
        let r = self.residuals();
        if let Some((label, value)) = r.labeled().find(|(_, v)| !v.is_zero()) {
            return Err(Error::NotAStructure(format!("{label} = {value}")));
        }
        Ok(match (self.phi.is_zero(), self.psi.is_zero()) {
            (true, true) => StructureClass::LieBialgebroid,
            (false, true) => StructureClass::LieQuasiBialgebroid,
            (true, false) => StructureClass::QuasiLieBialgebroid,
            (false, false) => StructureClass::ProtoBialgebroid,
        })
    }

    /// `d_S a = {S, a}`.
    pub fn differential(&self, a: &Polynomial) -> Polynomial {
        self.total().bracket(a)
    }
}

/// The five component equations of `{S,S} = 0`, in the order
/// `(1,3), (2,2), (3,1), (0,4), (4,0)` of the bidegree of `{S,S}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residuals(pub [Polynomial; 5]);

impl Residuals {
    pub const LABELS: [&'static str; 5] = [
        "1/2{mu,mu} + {gamma,psi}",
        "{mu,gamma} + {phi,psi}",
        "1/2{gamma,gamma} + {mu,phi}",
        "{mu,psi}",
        "{gamma,phi}",
    ];

    /// Bidegree in `{S,S}` at which `2·R_i` appears.
    pub const BIDEGREES: [(u32, u32); 5] = [(1, 3), (2, 2), (3, 1), (0, 4), (4, 0)];

    pub fn all_zero(&self) -> bool {
        self.0.iter().all(Polynomial::is_zero)
    }

    pub fn labeled(&self) -> impl Iterator<Item = (&'static str, &Polynomial)> {
        Self::LABELS.into_iter().zip(self.0.iter())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructureClass {
    ProtoBialgebroid,
    LieQuasiBialgebroid,
    QuasiLieBialgebroid,
    LieBialgebroid,
}

impl fmt::Display for StructureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StructureClass::ProtoBialgebroid => "proto-bialgebroid",
            StructureClass::LieQuasiBialgebroid => "Lie-quasi bialgebroid",
            StructureClass::QuasiLieBialgebroid => "quasi-Lie bialgebroid",
            StructureClass::LieBialgebroid => "Lie bialgebroid",
        })
    }
}

/// Derived bracket `{{a, s}, b}`: anchors when `b` is a base function,
/// section brackets when `a`, `b` are linear in the odd generators.
pub fn derived_bracket(s: &Polynomial, a: &Polynomial, b: &Polynomial) -> Polynomial {
    derived(s, a, b)
}

/// Constants `c(k; i, j)` of a bracket `[e_i, e_j] = Σ_k c(k; i, j) e_k`,
/// antisymmetric in `i, j`. Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    dim: usize,
    values: Vec<Rational>,
}

impl StructureConstants {
    pub fn zero(dim: usize) -> Self {
        StructureConstants {
            dim,
            values: vec![Rational::zero(); dim * dim * dim],
        }
    }

    fn at(&self, k: usize, i: usize, j: usize) -> usize {
        ((k - 1) * self.dim + (i - 1)) * self.dim + (j - 1)
    }

    /// Builds from `(k, i, j, value)` entries meaning `c(k; i, j) = value`;
    /// `c(k; j, i) = -value` is filled in. Conflicting entries are rejected.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, usize, Rational)]) -> Result<Self> {
        let mut out = StructureConstants::zero(dim);
        let mut seen = vec![false; dim * dim * dim];
        for (k, i, j, v) in entries {
            let (k, i, j) = (*k, *i, *j);
            if [k, i, j].iter().any(|&x| x == 0 || x > dim) {
                return Err(Error::NotAntisymmetric(format!(
                    "index ({k},{i},{j}) out of range 1..={dim}"
                )));
            }
            if i == j && !v.is_zero() {
                return Err(Error::NotAntisymmetric(format!(
                    "c({k};{i},{j}) = {v} on the diagonal"
                )));
            }
            for (a, b, val) in [(i, j, v.clone()), (j, i, -v.clone())] {
                let idx = out.at(k, a, b);
                if seen[idx] && out.values[idx] != val {
                    return Err(Error::NotAntisymmetric(format!(
                        "c({k};{a},{b}) given as both {} and {val}",
                        out.values[idx]
                    )));
                }
                seen[idx] = true;
                out.values[idx] = val;
            }
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, k: usize, i: usize, j: usize) -> &Rational {
        &self.values[self.at(k, i, j)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// Nonzero entries with `i < j`.
    pub fn entries(&self) -> Vec<(usize, usize, usize, Rational)> {
        let mut out = Vec::new();
        for k in 1..=self.dim {
            for i in 1..=self.dim {
                for j in (i + 1)..=self.dim {
                    let v = self.get(k, i, j);
                    if !v.is_zero() {
                        out.push((k, i, j, v.clone()));
                    }
                }
            }
        }
        out
    }
}

fn family_size(table: &GeneratorTable, prefix: &str) -> Result<usize> {
    let base = table.base();
    if prefix == base.name || prefix == base.conjugate {
        return Err(Error::InvalidSetup(format!(
            "`{prefix}` is the base family; sections must be odd"
        )));
    }
    table
        .fibers()
        .iter()
        .find(|f| f.name == prefix || f.conjugate == prefix)
        .map(|f| f.size)
        .ok_or_else(|| Error::UnknownGenerator(format!("{prefix}*")))
}

fn gen(table: &Arc<GeneratorTable>, prefix: &str, i: usize) -> Result<Polynomial> {
    Polynomial::generator(table, &format!("{prefix}{i}"))
}

fn check_pair(table: &GeneratorTable, sections: &str, duals: &str) -> Result<usize> {
    let n = family_size(table, sections)?;
    let paired = table
        .fibers()
        .iter()
        .any(|f| (f.name == sections && f.conjugate == duals) || (f.conjugate == sections && f.name == duals));
    if !paired {
        return Err(Error::InvalidSetup(format!(
            "`{sections}` and `{duals}` are not a conjugate pair of families"
        )));
    }
    Ok(n)
}

/// Sign `s` for which `s·S_1 D_1 D_2` has derived bracket
/// `{{S_1, ·}, S_2} = S_1`, where `S` are the section generators and `D`
/// their duals.
pub fn encoding_sign(table: &Arc<GeneratorTable>, sections: &str, duals: &str) -> Result<i64> {
    let n = check_pair(table, sections, duals)?;
    if n < 2 {
        return Ok(1);
    }
    let s1 = gen(table, sections, 1)?;
    let s2 = gen(table, sections, 2)?;
    let probe = s1.mul(&gen(table, duals, 1)?).mul(&gen(table, duals, 2)?);
    let out = derived(&probe, &s1, &s2);
    if out == s1 {
        Ok(1)
    } else if out == -&s1 {
        Ok(-1)
    } else {
        unreachable!("encoding probe gave {out}")
    }
}

/// The function `½ c(k; i, j) S_k D_i D_j`, up to the sign fixed by
/// [`encoding_sign`], so that `{{S_i, ·}, S_j} = Σ_k c(k; i, j) S_k`.
///
/// For `μ` on `V` use sections `th`, duals `xi`; for `γ` on `V*` use
/// sections `xi`, duals `th`.
pub fn encode_lie_structure(
    table: &Arc<GeneratorTable>,
    c: &StructureConstants,
    sections: &str,
    duals: &str,
) -> Result<Polynomial> {
    let n = check_pair(table, sections, duals)?;
    if n != c.dim() {
        return Err(Error::InvalidSetup(format!(
            "constants of dimension {} for a family of size {n}",
            c.dim()
        )));
    }
    let s = int(encoding_sign(table, sections, duals)?);
    let mut out = Polynomial::zero(table);
    for (k, i, j, v) in c.entries() {
        let term = gen(table, sections, k)?
            .mul(&gen(table, duals, i)?)
            .mul(&gen(table, duals, j)?);
        out += &term.scale(&(&v * &s));
    }
    Ok(out)
}

/// Reads constants back from derived brackets of section generators.
pub fn extract_structure_constants(
    table: &Arc<GeneratorTable>,
    bracket: &Polynomial,
    sections: &str,
    duals: &str,
) -> Result<StructureConstants> {
    let n = check_pair(table, sections, duals)?;
    let gens = (1..=n)
        .map(|i| gen(table, sections, i))
        .collect::<Result<Vec<_>>>()?;
    let mut entries = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            let mut value = derived(bracket, &gens[i - 1], &gens[j - 1]);
            for k in 1..=n {
                let key = gens[k - 1].terms().next().unwrap().0.clone();
                let ck = value.coefficient(&key);
                if !ck.is_zero() {
                    value -= &gens[k - 1].scale(&ck);
                    entries.push((k, i, j, ck));
                }
            }
            if !value.is_zero() {
                return Err(Error::NonConstant(format!(
                    "derived bracket of {sections}{i}, {sections}{j} has non-constant part {value}"
                )));
            }
        }
    }
    StructureConstants::from_entries(n, &entries)
}

/// `Σ_i p_i ξ^i` over the base family and the first fiber family; requires
/// their sizes to agree.
pub fn tangent_mu(table: &Arc<GeneratorTable>) -> Result<Polynomial> {
    let fam = table
        .fibers()
        .first()
        .ok_or_else(|| Error::InvalidSetup("no fiber family".into()))?;
    if fam.size != table.base_dim() {
        return Err(Error::InvalidSetup(format!(
            "tangent structure needs fiber rank {} = base dimension {}",
            fam.size,
            table.base_dim()
        )));
    }
    let mut out = Polynomial::zero(table);
    for i in 1..=fam.size {
        out += &gen(table, &table.base().conjugate, i)?.mul(&gen(table, &fam.name, i)?);
    }
    Ok(out)
}

/// `Id_V = Σ ξ^a θ_a` over every fiber family.
pub fn identity_v(table: &Arc<GeneratorTable>) -> Polynomial {
    let mut out = Polynomial::zero(table);
    for g in table.generators().filter(|g| g.kind == GeneratorKind::Fiber) {
        out += &Polynomial::slot(table, g.slot).mul(&Polynomial::slot(table, g.partner));
    }
    out
}
