//! Setup files (TOML). Every section is optional:
//!
//! ```toml
//! [generators]
//! base = { size = 3 }                      # x1..x3, p1..p3
//! fibers = [{ name = "xi", conjugate = "th", size = 3 }]
//!
//! [define]
//! sigma = "x3*th1*th2"
//!
//! [structure]
//! mu = "p1*xi1 + p2*xi2 + p3*xi3"         # also phi, gamma, psi
//!
//! [twist]
//! sigma = "sigma"                          # a [define] name or an expression
//!
//! [action]                                 # replaces [generators]
//! n = 1
//! m = 2
//! C = [[2, 1, 2, 1]]                       # C^D_{AB} as [D, A, B, value]
//! Gamma = []                               # Γ^{AB}_C as [C, A, B, value]
//! rho = ["x1*th1", "th1"]                  # ρ(e_A)
//! pi = "0"
//! PsiG = "0"
//! PsiM = "0"
//! # muM = "..."                            # default p_i xi^i
//! ```
//!
//! Values may be integers or rationals written as strings (`"1/2"`).

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use crate::action_models::{build_setup, ActionInputs, ActionSetup};
use crate::error::{Error, Result};
use crate::frontend::parse_expression;
use crate::graded_algebra::{Family, GeneratorTable, Polynomial, Rational};
use crate::structures::{StructureConstants, Structure};
use crate::twisting::TwistFunction;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    generators: Option<RawGenerators>,
    #[serde(default)]
    define: BTreeMap<String, String>,
    structure: Option<RawStructure>,
    twist: Option<RawTwist>,
    action: Option<RawAction>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    name: Option<String>,
    conjugate: Option<String>,
    size: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGenerators {
    base: RawFamily,
    fibers: Option<Vec<RawFamily>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStructure {
    phi: Option<String>,
    gamma: Option<String>,
    mu: Option<String>,
    psi: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTwist {
    sigma: Option<String>,
    tau: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAction {
    n: usize,
    m: usize,
    #[serde(rename = "C", default)]
    c: Vec<Vec<toml::Value>>,
    #[serde(rename = "Gamma", default)]
    gamma: Vec<Vec<toml::Value>>,
    #[serde(rename = "PsiG")]
    psi_g: Option<String>,
    #[serde(rename = "PsiM")]
    psi_m: Option<String>,
    #[serde(default)]
    rho: Vec<String>,
    pi: Option<String>,
    #[serde(rename = "muM")]
    mu_m: Option<String>,
}

/// A loaded and validated setup file.
#[derive(Debug, Clone)]
pub struct Setup {
    pub table: Arc<GeneratorTable>,
    pub defines: BTreeMap<String, Polynomial>,
    pub structure: Option<Structure>,
    pub sigma: Option<TwistFunction>,
    pub tau: Option<TwistFunction>,
    pub action: Option<ActionSetup>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidSetup(msg.into())
}

fn rational(v: &toml::Value) -> Result<Rational> {
    match v {
        toml::Value::Integer(i) => Ok(Rational::from_integer((*i).into())),
        toml::Value::String(s) => {
            let (n, d) = s.split_once('/').unwrap_or((s, "1"));
            let parse = |t: &str| t.trim().parse::<num_bigint::BigInt>().map_err(|_| invalid(format!("bad rational `{s}`")));
            let d = parse(d)?;
            if d == 0.into() {
                return Err(invalid(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(parse(n)?, d))
        }
        other => Err(invalid(format!("expected a number, found {other}"))),
    }
}

fn index(v: &toml::Value) -> Result<usize> {
    v.as_integer()
        .and_then(|i| usize::try_from(i).ok())
        .filter(|&i| i > 0)
        .ok_or_else(|| invalid(format!("expected a positive index, found {v}")))
}

fn constants(what: &str, dim: usize, rows: &[Vec<toml::Value>]) -> Result<StructureConstants> {
    let entries = rows
        .iter()
        .map(|row| match row.as_slice() {
            [k, i, j, v] => Ok((index(k)?, index(i)?, index(j)?, rational(v)?)),
            _ => Err(invalid(format!("{what} entries are [k, i, j, value]"))),
        })
        .collect::<Result<Vec<_>>>()?;
    StructureConstants::from_entries(dim, &entries)
}

impl Setup {
    pub fn load(path: &Path) -> Result<Setup> {
        let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
        Setup::from_str(&text)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn from_str(text: &str) -> Result<Setup> {
        let raw: RawFile = toml::from_str(text).map_err(|e| invalid(e.to_string()))?;
        let mut inputs = None;
        let table = match (&raw.generators, &raw.action) {
            (Some(_), Some(_)) => return Err(invalid("[action] fixes the generators; drop [generators]")),
            (None, None) => return Err(invalid("either [generators] or [action] is required")),
            (Some(g), None) => {
                let base = Family::new(
                    g.base.name.clone().unwrap_or_else(|| "x".into()),
                    g.base.conjugate.clone().unwrap_or_else(|| "p".into()),
                    g.base.size,
                );
                let fibers = match &g.fibers {
                    Some(fs) => fs
                        .iter()
                        .map(|f| {
                            Family::new(
                                f.name.clone().unwrap_or_else(|| "xi".into()),
                                f.conjugate.clone().unwrap_or_else(|| "th".into()),
                                f.size,
                            )
                        })
                        .collect(),
                    None => vec![Family::new("xi", "th", g.base.size)],
                };
                Arc::new(GeneratorTable::new(base, fibers)?)
            }
            (None, Some(a)) => {
                let i = ActionInputs::new(a.n, a.m)?;
                let table = i.table.clone();
                inputs = Some(i);
                table
            }
        };

        let mut setup = Setup {
            table: table.clone(),
            defines: BTreeMap::new(),
            structure: None,
            sigma: None,
            tau: None,
            action: None,
        };
        for (name, expr) in &raw.define {
            if table.lookup(name).is_ok() {
                return Err(invalid(format!("define `{name}` shadows a generator")));
            }
            let p = setup.resolve(expr)?;
            setup.defines.insert(name.clone(), p);
        }

        if let (Some(a), Some(mut i)) = (raw.action, inputs) {
            i.lie = constants("C", a.m, &a.c)?;
            i.cobracket = constants("Gamma", a.m, &a.gamma)?;
            let opt = |s: &Option<String>| s.as_deref().map(|t| setup.resolve(t)).transpose();
            let zero = Polynomial::zero(&table);
            i.psi_g = opt(&a.psi_g)?.unwrap_or_else(|| zero.clone());
            i.psi_m = opt(&a.psi_m)?.unwrap_or_else(|| zero.clone());
            i.pi = opt(&a.pi)?.unwrap_or_else(|| zero.clone());
            i.mu_m = opt(&a.mu_m)?;
            if !a.rho.is_empty() {
                i.rho = a.rho.iter().map(|r| setup.resolve(r)).collect::<Result<_>>()?;
            }
            let action = build_setup(i)?;
            setup.structure = Some(action.structure().clone());
            setup.sigma = Some(action.sigma().clone());
            setup.action = Some(action);
        }

        if let Some(s) = raw.structure {
            if setup.action.is_some() {
                return Err(invalid("[action] builds the structure; drop [structure]"));
            }
            let get = |c: &Option<String>| -> Result<Polynomial> {
                c.as_deref().map_or_else(|| Ok(Polynomial::zero(&table)), |t| setup.resolve(t))
            };
            setup.structure = Some(Structure::new(get(&s.phi)?, get(&s.gamma)?, get(&s.mu)?, get(&s.psi)?)?);
        }
        if let Some(t) = raw.twist {
            if let Some(s) = t.sigma {
                setup.sigma = Some(TwistFunction::bivector(setup.resolve(&s)?)?);
            }
            if let Some(s) = t.tau {
                setup.tau = Some(TwistFunction::two_form(setup.resolve(&s)?)?);
            }
        }
        Ok(setup)
    }

    /// A `[define]` name, or else an inline expression.
    pub fn resolve(&self, text: &str) -> Result<Polynomial> {
        match self.defines.get(text.trim()) {
            Some(p) => Ok(p.clone()),
            None => parse_expression(&self.table, text),
        }
    }

    pub fn structure(&self) -> Result<&Structure> {
        self.structure.as_ref().ok_or_else(|| invalid("the setup has no [structure] or [action]"))
    }
}
