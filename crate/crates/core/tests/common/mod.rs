//! Shared fixtures and independent oracles for the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use bigbracket::graded_algebra::{
    int, rat, GeneratorKind, GeneratorTable, Polynomial, Rational, Slot,
};
use rand::Rng;

pub fn all_slots(table: &GeneratorTable) -> Vec<Slot> {
    table.generators().map(|g| g.slot).collect()
}

/// A random monomial with at most `max_factors` generator factors, as an
/// unnormalized factor list.
pub fn random_factors(rng: &mut impl Rng, table: &GeneratorTable, max_factors: usize) -> Vec<Slot> {
    let slots = all_slots(table);
    let n = rng.gen_range(0..=max_factors);
    (0..n).map(|_| slots[rng.gen_range(0..slots.len())]).collect()
}

pub fn random_coefficient(rng: &mut impl Rng) -> Rational {
    let mut num = rng.gen_range(-4i64..=4);
    if num == 0 {
        num = 1;
    }
    rat(num, rng.gen_range(1..=3))
}

/// A random bidegree-homogeneous polynomial with up to `max_terms` terms, each
/// of at most `max_factors` factors. Never zero.
pub fn random_homogeneous(
    rng: &mut impl Rng,
    table: &Arc<GeneratorTable>,
    max_terms: usize,
    max_factors: usize,
) -> Polynomial {
    let first = loop {
        let f = random_factors(rng, table, max_factors);
        let p = Polynomial::from_slots(table, random_coefficient(rng), &f);
        if !p.is_zero() {
            break p;
        }
    };
    let bd = first.bidegree().unwrap();
    let mut out = first;
    let want = rng.gen_range(1..=max_terms);
    let mut tries = 0;
    while out.len() < want && tries < 200 {
        tries += 1;
        let f = random_factors(rng, table, max_factors);
        let p = Polynomial::from_slots(table, random_coefficient(rng), &f);
        if p.bidegree() == Some(bd) {
            out += &p;
        }
    }
    if out.is_zero() {
        random_homogeneous(rng, table, max_terms, max_factors)
    } else {
        out
    }
}

/// Random homogeneous polynomial of a prescribed bidegree `(k, l)` built from
/// the given generator kinds only.
pub fn random_of_bidegree(
    rng: &mut impl Rng,
    table: &Arc<GeneratorTable>,
    k: u32,
    l: u32,
    max_terms: usize,
    max_x_degree: usize,
) -> Polynomial {
    let kinds_of = |kind: GeneratorKind| -> Vec<Slot> {
        table
            .generators()
            .filter(|g| g.kind == kind)
            .map(|g| g.slot)
            .collect()
    };
    let xs = kinds_of(GeneratorKind::Base);
    let ps = kinds_of(GeneratorKind::BaseConjugate);
    let fib = kinds_of(GeneratorKind::Fiber);
    let conj = kinds_of(GeneratorKind::FiberConjugate);
    let mut out = Polynomial::zero(table);
    let mut tries = 0;
    while out.is_zero() || (out.len() < max_terms && tries < 100) {
        tries += 1;
        // p count j contributes (j,j); remaining from θ (k-j) and ξ (l-j)
        let j = rng.gen_range(0..=k.min(l)) as usize;
        let j = if ps.is_empty() { 0 } else { j };
        let mut f = Vec::new();
        for _ in 0..j {
            f.push(ps[rng.gen_range(0..ps.len())]);
        }
        for _ in 0..(k as usize - j) {
            if conj.is_empty() {
                break;
            }
            f.push(conj[rng.gen_range(0..conj.len())]);
        }
        for _ in 0..(l as usize - j) {
            if fib.is_empty() {
                break;
            }
            f.push(fib[rng.gen_range(0..fib.len())]);
        }
        if !xs.is_empty() {
            for _ in 0..rng.gen_range(0..=max_x_degree) {
                f.push(xs[rng.gen_range(0..xs.len())]);
            }
        }
        let p = Polynomial::from_slots(table, random_coefficient(rng), &f);
        if p.bidegree() == Some(bigbracket::graded_algebra::Bidegree::new(k, l)) {
            out += &p;
        }
        if tries > 10_000 {
            panic!("cannot build bidegree ({k},{l}) over this table");
        }
    }
    out
}

/// Value of the big bracket on two generators, read off the relations
/// `{x,p} = 1 = -{p,x}` and `{ξ,θ} = 1 = {θ,ξ}`.
fn generator_bracket(table: &GeneratorTable, a: Slot, b: Slot) -> i64 {
    let ga = table.info(a);
    if ga.partner != b {
        return 0;
    }
    match ga.kind {
        GeneratorKind::Base => 1,
        GeneratorKind::BaseConjugate => -1,
        GeneratorKind::Fiber | GeneratorKind::FiberConjugate => 1,
    }
}

fn parity(table: &GeneratorTable, f: &[Slot]) -> usize {
    f.iter().filter(|s| table.info(**s).kind.is_odd()).count() % 2
}

/// Reference big bracket on factor lists, by literal recursive application of
///   {uv, w} = u{v,w} + (-1)^{|v||w|} {u,w} v
///   {g, vw} = {g,v} w + (-1)^{|g||v|} v {g,w}
/// with no closed-form shortcuts.
pub fn reference_bracket_factors(
    table: &Arc<GeneratorTable>,
    u: &[Slot],
    w: &[Slot],
) -> Polynomial {
    if u.is_empty() || w.is_empty() {
        return Polynomial::zero(table);
    }
    if u.len() > 1 {
        let (head, rest) = (&u[..1], &u[1..]);
        let first = Polynomial::from_slots(table, int(1), head)
            .mul(&reference_bracket_factors(table, rest, w));
        let sign = if parity(table, rest) * parity(table, w) % 2 == 1 { -1 } else { 1 };
        let second = reference_bracket_factors(table, head, w)
            .mul(&Polynomial::from_slots(table, int(sign), rest));
        return first + second;
    }
    if w.len() > 1 {
        let (head, rest) = (&w[..1], &w[1..]);
        let first = reference_bracket_factors(table, u, head)
            .mul(&Polynomial::from_slots(table, int(1), rest));
        let sign = if parity(table, u) * parity(table, head) % 2 == 1 { -1 } else { 1 };
        let second = Polynomial::from_slots(table, int(sign), head)
            .mul(&reference_bracket_factors(table, u, rest));
        return first + second;
    }
    Polynomial::constant(table, int(generator_bracket(table, u[0], w[0])))
}

/// Factor list of a canonical monomial (even factors, then odd in slot order).
pub fn factors_of(m: &bigbracket::graded_algebra::Monomial) -> Vec<Slot> {
    let mut f = Vec::new();
    for (i, &e) in m.even_exponents().iter().enumerate() {
        f.extend(std::iter::repeat_n(Slot::Even(i), e as usize));
    }
    f.extend(m.odd_slots().map(Slot::Odd));
    f
}

pub fn reference_bracket(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let table = a.table();
    let mut out = Polynomial::zero(table);
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let r = reference_bracket_factors(table, &factors_of(ma), &factors_of(mb));
            out += &r.scale(&(ca * cb));
        }
    }
    out
}

pub fn shifted_degree(p: &Polynomial) -> i32 {
    p.bidegree().expect("homogeneous").shifted_total()
}

pub fn degree(p: &Polynomial) -> u32 {
    p.bidegree().expect("homogeneous").total()
}

pub fn sign(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        int(1)
    } else {
        int(-1)
    }
}

pub fn g(table: &Arc<GeneratorTable>, name: &str) -> Polynomial {
    Polynomial::generator(table, name).unwrap()
}

pub fn parse(table: &Arc<GeneratorTable>, text: &str) -> Polynomial {
    bigbracket::frontend::parse_expression(table, text).unwrap()
}
