//! Command-line driver. Every report line reads `<label>: <value>` where the
//! value is a canonical polynomial, `PASS` or `FAIL`. Exit codes: 0 when all
//! checks pass, 1 when a residual is nonzero, 2 on usage or input errors.

use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::action_models::{
    bracket_case, condition_residuals, gamma_sigma, mc_decomposition, twisted_action_check, twisted_differential,
    action_residual, BLOCKS,
};
use crate::courant::{courant_axioms_check, dirac_graph_check, DoubleSection, LODAY, METRIC_INVARIANT, METRIC_SYMMETRIC};
use crate::duality::{invert_bivector, invert_two_form};
use crate::error::{Error, Result};
use crate::frontend::setup::Setup;
use crate::graded_algebra::{GeneratorKind, Polynomial};
use crate::twisting::{
    poisson_residual, presymplectic_residual, special_case, twist_components, SpecialCase, TwistFunction, TwistKind,
};

#[derive(Debug, Parser)]
#[command(name = "bigbracket", version, about = "Exact big-bracket checks driven by a setup file")]
struct Cli {
    /// Setup file (TOML) declaring generators, definitions and data.
    #[arg(long, global = true)]
    setup: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Big bracket `{a, b}`.
    Bracket { a: String, b: String },
    /// Components of `e^{-t} S` for a bivector or a 2-form `t`.
    Twist {
        #[arg(long, conflicts_with = "tau")]
        sigma: Option<String>,
        #[arg(long)]
        tau: Option<String>,
    },
    /// The five component equations of `{S, S} = 0`.
    CheckStructure,
    /// Maurer-Cartan residual of a bivector and the reduced forms that apply.
    CheckPoisson {
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Pre-symplectic residual of a 2-form.
    CheckPresymplectic {
        #[arg(long)]
        tau: Option<String>,
    },
    /// Inverse of a constant non-degenerate bivector or 2-form.
    Invert {
        #[arg(long, conflicts_with = "two_form", required_unless_present = "two_form")]
        bivector: Option<String>,
        #[arg(long)]
        two_form: Option<String>,
    },
    /// Proto-, Lie-quasi, quasi-Lie or Lie bialgebroid.
    Classify,
    /// `d_S a = {S, a}`, optionally after twisting or for `γ_σ` blockwise.
    Diff {
        a: String,
        #[arg(long, conflicts_with_all = ["tau", "gamma_sigma"])]
        sigma: Option<String>,
        #[arg(long, conflicts_with = "gamma_sigma")]
        tau: Option<String>,
        /// Use `γ_σ` of the `[action]` section and print the four blocks.
        #[arg(long)]
        gamma_sigma: bool,
    },
    /// Loday and metric identities on sections of the double.
    CourantCheck {
        /// Sections to test; defaults to the constant basis `th_a`, `xi^a`.
        #[arg(long = "section")]
        sections: Vec<String>,
    },
    /// Whether the graph of a bivector or 2-form is a Dirac structure.
    DiracCheck {
        #[arg(long, conflicts_with = "tau")]
        sigma: Option<String>,
        #[arg(long)]
        tau: Option<String>,
    },
    /// Conditions (A)-(D) for the `[action]` section.
    ActionCheck,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Default)]
struct Report {
    lines: Vec<String>,
    failed: bool,
}

impl Report {
    fn value(&mut self, label: &str, p: &Polynomial) {
        self.lines.push(format!("{label}: {p}"));
    }

    fn text(&mut self, label: &str, text: impl std::fmt::Display) {
        self.lines.push(format!("{label}: {text}"));
    }

    /// A residual that must vanish.
    fn residual(&mut self, label: &str, p: &Polynomial) {
        self.failed |= !p.is_zero();
        self.value(label, p);
    }

    fn verdict(&mut self, label: &str, ok: bool) {
        self.failed |= !ok;
        self.text(label, if ok { "PASS" } else { "FAIL" });
    }
}

fn twist_arg(setup: &Setup, sigma: Option<&str>, tau: Option<&str>) -> Result<TwistFunction> {
    match (sigma, tau) {
        (Some(s), _) => TwistFunction::bivector(setup.resolve(s)?),
        (None, Some(t)) => TwistFunction::two_form(setup.resolve(t)?),
        (None, None) => setup
            .sigma
            .clone()
            .or_else(|| setup.tau.clone())
            .ok_or_else(|| Error::InvalidSetup("no --sigma/--tau given and no [twist] in the setup".into())),
    }
}

fn default_sections(setup: &Setup) -> Vec<Polynomial> {
    let t = &setup.table;
    let of = |kind| t.generators().filter(move |g| g.kind == kind).map(|g| Polynomial::slot(t, g.slot));
    of(GeneratorKind::FiberConjugate).chain(of(GeneratorKind::Fiber)).collect()
}

fn execute(cli: Cli) -> Result<Report> {
    let path = cli.setup.ok_or_else(|| Error::InvalidSetup("--setup <file> is required".into()))?;
    let setup = Setup::load(&path)?;
    let mut r = Report::default();
    match cli.command {
        Command::Bracket { a, b } => {
            let value = setup.resolve(&a)?.try_bracket(&setup.resolve(&b)?)?;
            r.value("bracket", &value);
        }
        Command::Twist { sigma, tau } => {
            let t = twist_arg(&setup, sigma.as_deref(), tau.as_deref())?;
            let twisted = twist_components(setup.structure()?, &t);
            for (label, p) in [("phi", twisted.phi()), ("gamma", twisted.gamma()), ("mu", twisted.mu()), ("psi", twisted.psi())] {
                r.value(label, p);
            }
        }
        Command::CheckStructure => {
            let residuals = setup.structure()?.residuals();
            for (label, p) in residuals.labeled() {
                r.residual(label, p);
            }
            r.verdict("{S,S} = 0", residuals.all_zero());
        }
        Command::CheckPoisson { sigma } => {
            let s = setup.structure()?;
            let t = twist_arg(&setup, sigma.as_deref(), None)?;
            if t.kind() != TwistKind::Bivector {
                return Err(Error::Hypothesis("check-poisson needs a bivector".into()));
            }
            r.residual("MC residual", &poisson_residual(s, &t)?);
            for case in SpecialCase::ALL {
                if let Ok(c) = special_case(s, &t, case) {
                    r.value(&format!("{} residual", case.label()), &c.reduced);
                }
            }
        }
        Command::CheckPresymplectic { tau } => {
            let s = setup.structure()?;
            let t = match tau {
                Some(text) => TwistFunction::two_form(setup.resolve(&text)?)?,
                None => setup.tau.clone().ok_or_else(|| Error::InvalidSetup("no --tau given and no tau in [twist]".into()))?,
            };
            r.residual("presymplectic residual", &presymplectic_residual(s, &t)?);
            if let Ok(c) = special_case(s, &t, SpecialCase::TwistedPresymplectic) {
                r.value(&format!("{} residual", c.case.label()), &c.reduced);
            }
        }
        Command::Invert { bivector, two_form } => {
            let pair = match (bivector, two_form) {
                (Some(b), _) => {
                    let pair = invert_bivector(&TwistFunction::bivector(setup.resolve(&b)?)?)?;
                    r.value("tau", pair.tau.body());
                    pair
                }
                (None, Some(f)) => {
                    let pair = invert_two_form(&TwistFunction::two_form(setup.resolve(&f)?)?)?;
                    r.value("sigma", pair.sigma.body());
                    pair
                }
                (None, None) => unreachable!("clap requires one of --bivector/--two-form"),
            };
            r.verdict("Id check", pair.identity_holds());
        }
        Command::Classify => {
            let s = setup.structure()?;
            match s.classify() {
                Ok(class) => r.text("class", class),
                Err(Error::NotAStructure(_)) => {
                    for (label, p) in s.residuals().labeled() {
                        r.residual(label, p);
                    }
                    r.verdict("class", false);
                }
                Err(e) => return Err(e),
            }
        }
        Command::Diff { a, sigma, tau, gamma_sigma: blocks } => {
            let a = setup.resolve(&a)?;
            if blocks {
                let action = setup.action.as_ref().ok_or_else(|| Error::InvalidSetup("--gamma-sigma needs an [action] section".into()))?;
                let split = twisted_differential(action, &a)?;
                r.value("d", &split.total);
                for ((j, k), p) in BLOCKS.iter().zip(&split.blocks) {
                    r.value(&format!("d({j},{k})"), p);
                }
            } else if sigma.is_some() || tau.is_some() {
                let t = twist_arg(&setup, sigma.as_deref(), tau.as_deref())?;
                r.value("d", &twist_components(setup.structure()?, &t).differential(&a));
            } else {
                r.value("d", &setup.structure()?.differential(&a));
            }
        }
        Command::CourantCheck { sections } => {
            let s = setup.structure()?;
            let polys = if sections.is_empty() {
                default_sections(&setup)
            } else {
                sections.iter().map(|t| setup.resolve(t)).collect::<Result<_>>()?
            };
            let sections = polys.into_iter().map(DoubleSection::new).collect::<Result<Vec<_>>>()?;
            let report = courant_axioms_check(s, &sections);
            r.text("triples", report.triples);
            for (label, axiom) in [("Loday", LODAY), ("metric symmetric", METRIC_SYMMETRIC), ("metric invariant", METRIC_INVARIANT)] {
                r.verdict(label, report.count(axiom) == 0);
            }
            if let Some(v) = report.violations.first() {
                let (i, j, k) = v.indices;
                r.value(&format!("first violation {} ({},{},{})", v.axiom, i + 1, j + 1, k + 1), &v.residual);
            }
        }
        Command::DiracCheck { sigma, tau } => {
            let t = twist_arg(&setup, sigma.as_deref(), tau.as_deref())?;
            let v = dirac_graph_check(setup.structure()?, &t)?;
            let label = match t.kind() {
                TwistKind::Bivector => "MC residual",
                TwistKind::TwoForm => "presymplectic residual",
            };
            r.value(label, &v.residual);
            r.verdict("isotropic", v.isotropic);
            r.verdict("closed", v.closed);
            r.verdict("Dirac", v.is_dirac());
            r.verdict("verdict matches residual", v.consistent());
        }
        Command::ActionCheck => {
            let a = setup.action.as_ref().ok_or_else(|| Error::InvalidSetup("action-check needs an [action] section".into()))?;
            let conditions = condition_residuals(a);
            for (label, p) in conditions.labeled() {
                r.residual(label, p);
            }
            r.value("action residual", &action_residual(a));
            let decomposition = mc_decomposition(a);
            r.value("MC residual", &decomposition.generic);
            r.verdict("MC = -1/6(A) + (B) + (C) + 1/2(D)", decomposition.holds());
            r.verdict("(B) is the twisted action defect", twisted_action_check(a).iter().all(|c| c.holds()));
            if conditions.all_zero() {
                let g = gamma_sigma(a)?;
                r.value("gamma_sigma", &g);
                r.residual("{gamma_sigma,gamma_sigma}", &g.bracket(&g));
            }
            if let Ok(case) = bracket_case(a) {
                r.text("bracket case", case.label());
            }
        }
    }
    Ok(r)
}

/// Runs one command. `argv[0]` is the program name.
pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandOutput {
                    exit_code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => CommandOutput {
                    exit_code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match execute(cli) {
        Ok(report) => {
            let mut stdout = report.lines.join("\n");
            stdout.push('\n');
            CommandOutput {
                exit_code: i32::from(report.failed),
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => CommandOutput {
            exit_code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn with_setup(text: &str, args: &[&str]) -> CommandOutput {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        file.write_all(text.as_bytes()).unwrap();
        let path = file.path().to_str().unwrap().to_owned();
        let mut argv = vec!["bigbracket", args[0], "--setup", &path];
        argv.extend_from_slice(&args[1..]);
        run_command(argv)
    }

    const HEIS: &str = "[generators]\nbase = { size = 3 }\n[define]\nsigma = \"x3*th1*th2\"\n[structure]\nmu = \"p1*xi1 + p2*xi2 + p3*xi3\"\n";
    const R2: &str = "[generators]\nbase = { size = 2 }\n[structure]\nmu = \"p1*xi1 + p2*xi2\"\n";

    #[test]
    fn bracket_of_coordinates() {
        let out = with_setup(R2, &["bracket", "x1", "p1"]);
        assert_eq!((out.exit_code, out.stdout.as_str()), (0, "bracket: 1\n"));
    }

    #[test]
    fn poisson_verdicts() {
        let out = with_setup(HEIS, &["check-poisson", "--sigma", "sigma"]);
        assert_eq!(out.exit_code, 0, "{out:?}");
        assert!(out.stdout.starts_with("MC residual: 0\n"));
        let out = with_setup(HEIS, &["check-poisson", "--sigma", "x3*th1*th2 + x2*th2*th3"]);
        assert_eq!(out.exit_code, 1);
        assert!(!out.stdout.starts_with("MC residual: 0\n"));
    }

    #[test]
    fn invert_both_ways() {
        let out = with_setup(R2, &["invert", "--bivector", "th1*th2"]);
        assert_eq!((out.exit_code, out.stdout.as_str()), (0, "tau: xi1*xi2\nId check: PASS\n"));
        let out = with_setup(R2, &["invert", "--two-form", "xi1*xi2"]);
        assert_eq!((out.exit_code, out.stdout.as_str()), (0, "sigma: th1*th2\nId check: PASS\n"));
        assert_eq!(with_setup(R2, &["invert", "--bivector", "x1*th1*th2"]).exit_code, 2);
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_command(["bigbracket", "classify"]).exit_code, 2);
        assert_eq!(run_command(["bigbracket", "frobnicate"]).exit_code, 2);
        assert_eq!(with_setup(R2, &["bracket", "x1", "q7"]).exit_code, 2);
        assert_eq!(with_setup("nonsense", &["classify"]).exit_code, 2);
        let help = run_command(["bigbracket", "--help"]);
        assert_eq!(help.exit_code, 0);
        assert!(help.stdout.contains("action-check"));
    }

    #[test]
    fn classify_and_structure() {
        let out = with_setup(R2, &["classify"]);
        assert_eq!(out.stdout, "class: Lie bialgebroid\n");
        let out = with_setup(R2, &["check-structure"]);
        assert_eq!(out.exit_code, 0);
        assert!(out.stdout.ends_with("{S,S} = 0: PASS\n"));
    }

    #[test]
    fn courant_and_dirac() {
        let out = with_setup(R2, &["courant-check"]);
        assert_eq!(out.exit_code, 0, "{}", out.stdout);
        assert!(out.stdout.starts_with("triples: 64\n"));
        let out = with_setup(HEIS, &["dirac-check", "--sigma", "x3*th1*th2 + x2*th2*th3"]);
        assert_eq!(out.exit_code, 1);
        assert!(out.stdout.contains("Dirac: FAIL\nverdict matches residual: PASS\n"));
    }

    #[test]
    fn deterministic_reports() {
        let a = with_setup(HEIS, &["twist", "--sigma", "sigma"]);
        let b = with_setup(HEIS, &["twist", "--sigma", "sigma"]);
        assert_eq!(a, b);
        assert_eq!(a.stdout.lines().count(), 4);
    }
}
