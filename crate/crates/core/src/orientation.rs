//! One-time measurement of the global signs realized by the generator
//! relations. Nothing downstream depends on the values; they are reported.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use crate::graded_algebra::{Family, GeneratorTable, Polynomial, Rational};
use crate::structures::encoding_sign;

/// Signs measured against the generator relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrientationAudit {
    /// `ε` with `{p_i ξ^i, f} = ε (∂_i f) ξ^i`.
    pub de_rham: i64,
    /// Sign `s` such that `½ s c^a_{bc} θ_a ξ^b ξ^c` has derived brackets
    /// `{{θ_b, μ}, θ_c} = c^a_{bc} θ_a`.
    pub lie_encoding: i64,
}

fn unit_sign(c: &Rational) -> i64 {
    if c.is_one() {
        1
    } else if (-c).is_one() {
        -1
    } else {
        panic!("orientation probe returned {c}, expected ±1")
    }
}

fn measure() -> OrientationAudit {
    let table = Arc::new(
        GeneratorTable::new(Family::new("x", "p", 1), vec![Family::new("xi", "th", 3)])
            .expect("probe table"),
    );
    let mu = Polynomial::normalize(&table, Rational::one(), &["p1", "xi1"]).unwrap();
    let x = Polynomial::generator(&table, "x1").unwrap();
    let xi = Polynomial::generator(&table, "xi1").unwrap();
    let d = mu.bracket(&x);
    let eps = d.coefficient(xi.terms().next().unwrap().0);
    assert!(!eps.is_zero() && d.len() == 1, "de Rham probe gave {d}");
    OrientationAudit {
        de_rham: unit_sign(&eps),
        lie_encoding: encoding_sign(&table, "th", "xi").expect("probe families"),
    }
}

/// The audit, measured on first use.
pub fn audit() -> &'static OrientationAudit {
    static AUDIT: OnceLock<OrientationAudit> = OnceLock::new();
    AUDIT.get_or_init(measure)
}

impl fmt::Display for OrientationAudit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "de Rham sign: {}\nLie encoding sign: {}",
            self.de_rham, self.lie_encoding
        )
    }
}
