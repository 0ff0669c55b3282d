use std::cmp::Ordering;

use num_traits::{One, Signed};

use crate::graded_algebra::{GeneratorTable, Monomial, Polynomial, Rational};

/// Factor sequence used for the printing order: even slots first, then odd
/// slots, each repeated by its exponent.
fn factor_sequence(table: &GeneratorTable, m: &Monomial) -> Vec<usize> {
    let mut seq = Vec::new();
    for (i, &e) in m.even_exponents().iter().enumerate() {
        seq.extend(std::iter::repeat_n(i, e as usize));
    }
    seq.extend(m.odd_slots().map(|i| table.n_even() + i));
    seq
}

/// Canonical term order: by number of factors, then lexicographically by
/// factor sequence.
pub fn canonical_order(table: &GeneratorTable, a: &Monomial, b: &Monomial) -> Ordering {
    let (sa, sb) = (factor_sequence(table, a), factor_sequence(table, b));
    sa.len().cmp(&sb.len()).then_with(|| sa.cmp(&sb))
}

pub fn format_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn format_monomial(table: &GeneratorTable, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.even_exponents().iter().enumerate() {
        let name = &table.even_info(i).name;
        match e {
            0 => {}
            1 => parts.push(name.clone()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.extend(m.odd_slots().map(|i| table.odd_info(i).name.clone()));
    parts.join("*")
}

/// Canonical, deterministic, re-parseable text for `p`; zero prints as `0`.
pub fn format_poly(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let table = p.table();
    let mut terms: Vec<(&Monomial, &Rational)> = p.terms().collect();
    terms.sort_by(|a, b| canonical_order(table, a.0, b.0));

    let mut out = String::new();
    for (idx, (m, c)) in terms.into_iter().enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        let body = if m.is_one() {
            format_rational(&abs)
        } else if abs.is_one() {
            format_monomial(table, m)
        } else {
            format!("{}*{}", format_rational(&abs), format_monomial(table, m))
        };
        match (idx, negative) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    out
}
