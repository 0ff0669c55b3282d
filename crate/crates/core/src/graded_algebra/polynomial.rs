use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graded_algebra::{Bidegree, GeneratorTable, Monomial, ShiftedBidegree, Slot};

pub type Rational = BigRational;

/// `n / d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Sparse exact-rational polynomial in the graded coordinates of a
/// [`GeneratorTable`]. Keys are canonical and coefficients are never zero.
#[derive(Clone)]
pub struct Polynomial {
    table: Arc<GeneratorTable>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.table, &other.table) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

pub(crate) fn same_table(a: &Arc<GeneratorTable>, b: &Arc<GeneratorTable>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Polynomial {
    pub fn zero(table: &Arc<GeneratorTable>) -> Self {
        Polynomial {
            table: Arc::clone(table),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(table: &Arc<GeneratorTable>, c: Rational) -> Self {
        let mut p = Polynomial::zero(table);
        p.add_term(Monomial::one(table), c);
        p
    }

    pub fn one(table: &Arc<GeneratorTable>) -> Self {
        Polynomial::constant(table, Rational::one())
    }

    pub fn from_term(table: &Arc<GeneratorTable>, m: Monomial, c: Rational) -> Self {
        let mut p = Polynomial::zero(table);
        p.add_term(m, c);
        p
    }

    /// A single generator, looked up by name (`x1`, `th2`, ...).
    pub fn generator(table: &Arc<GeneratorTable>, name: &str) -> Result<Self> {
        Polynomial::normalize(table, Rational::one(), &[name])
    }

    pub fn slot(table: &Arc<GeneratorTable>, slot: Slot) -> Self {
        let mut m = Monomial::one(table);
        match slot {
            Slot::Even(i) => m.even[i] = 1,
            Slot::Odd(i) => m.odd = 1 << i,
        }
        Polynomial::from_term(table, m, Rational::one())
    }

    /// Canonical form of `coef * g_1 * ... * g_n`, with the Koszul sign of the
    /// reordering folded into the coefficient. Zero if an odd generator
    /// repeats.
    pub fn normalize(table: &Arc<GeneratorTable>, coef: Rational, names: &[&str]) -> Result<Self> {
        let slots = names
            .iter()
            .map(|n| table.lookup(n))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::from_slots(table, coef, &slots))
    }

    pub fn from_slots(table: &Arc<GeneratorTable>, coef: Rational, slots: &[Slot]) -> Self {
        let mut m = Monomial::one(table);
        let mut odd = Vec::new();
        for s in slots {
            match *s {
                Slot::Even(i) => m.even[i] += 1,
                Slot::Odd(i) => odd.push(i),
            }
        }
        // insertion sort, counting transpositions
        let mut swaps = 0usize;
        for i in 1..odd.len() {
            let mut j = i;
            while j > 0 && odd[j - 1] > odd[j] {
                odd.swap(j - 1, j);
                swaps += 1;
                j -= 1;
            }
        }
        if odd.windows(2).any(|w| w[0] == w[1]) {
            return Polynomial::zero(table);
        }
        for i in odd {
            m.odd |= 1 << i;
        }
        let c = if swaps % 2 == 1 { -coef } else { coef };
        Polynomial::from_term(table, m, c)
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    /// Whether `self` and `other` live over the same generator table.
    pub fn same_table_as(&self, other: &Polynomial) -> bool {
        same_table(&self.table, &other.table)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(&self.table))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_table(&self, other: &Polynomial) -> Result<()> {
        if same_table(&self.table, &other.table) {
            Ok(())
        } else {
            Err(Error::TableMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_table(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.table);
        }
        Polynomial {
            table: Arc::clone(&self.table),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Polynomial {
        self.scale(&int(n))
    }

    /// Supercommutative product.
    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_table(other)?;
        let mut out = Polynomial::zero(&self.table);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, negative)) = ma.mul(mb) {
                    let c = ca * cb;
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Supercommutative product; panics if the tables differ (see [`try_mul`](Self::try_mul)).
    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.try_mul(other).expect("multiply: generator tables differ")
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        (0..n).fold(Polynomial::one(&self.table), |acc, _| acc.mul(self))
    }

    /// Keeps the terms whose monomial satisfies `pred`.
    pub fn filter(&self, pred: impl Fn(&Monomial) -> bool) -> Polynomial {
        Polynomial {
            table: Arc::clone(&self.table),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| pred(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Splits into homogeneous parts; the parts sum back to `self`.
    pub fn bidegree_decompose(&self) -> BTreeMap<Bidegree, Polynomial> {
        let mut out: BTreeMap<Bidegree, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.bidegree(&self.table))
                .or_insert_with(|| Polynomial::zero(&self.table))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Part of bidegree `bd` (possibly zero).
    pub fn part(&self, bd: Bidegree) -> Polynomial {
        let table = Arc::clone(&self.table);
        self.filter(|m| m.bidegree(&table) == bd)
    }

    pub fn shifted_part(&self, sb: ShiftedBidegree) -> Polynomial {
        match sb.unshifted() {
            Some(bd) => self.part(bd),
            None => Polynomial::zero(&self.table),
        }
    }

    /// The common bidegree of all terms; `None` for zero or mixed polynomials.
    pub fn bidegree(&self) -> Option<Bidegree> {
        let mut it = self.terms.keys().map(|m| m.bidegree(&self.table));
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.bidegree().is_some()
    }

    /// `true` when zero or homogeneous of shifted bidegree `sb`.
    pub fn has_shifted_bidegree(&self, sb: ShiftedBidegree) -> bool {
        self.is_zero() || self.bidegree().map(Bidegree::shifted) == Some(sb)
    }

    /// Common parity (`0`/`1`) of all terms; `None` for zero or mixed parity.
    pub fn parity(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::parity);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// Partial derivative with respect to the even generator in slot `i`.
    pub fn partial(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.table);
        for (m, c) in &self.terms {
            let e = m.even[i];
            if e > 0 {
                let mut d = m.clone();
                d.even[i] -= 1;
                out.add_term(d, c * int(e as i64));
            }
        }
        out
    }

    /// Largest `k` and `ℓ` over all terms.
    pub fn max_bidegree(&self) -> (u32, u32) {
        self.terms.keys().fold((0, 0), |(k, l), m| {
            let b = m.bidegree(&self.table);
            (k.max(b.k), l.max(b.l))
        })
    }

    /// Substitutes the polynomial `value` for odd generator `slot` in every
    /// term where it appears linearly (odd generators appear at most once).
    /// The generator is first moved to the front of each monomial.
    pub fn substitute_odd(&self, slot: usize, value: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(&self.table);
        for (m, c) in &self.terms {
            if !m.has_odd(slot) {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            let mut rest = m.clone();
            rest.odd &= !(1 << slot);
            // moving the generator to the front passes the odd factors below it
            let passes = (m.odd & super::monomial::below(slot)).count_ones();
            let sign = if passes % 2 == 1 { -c.clone() } else { c.clone() };
            let rest = Polynomial::from_term(&self.table, rest, sign);
            out += &value.mul(&rest);
        }
        out
    }

    /// Left derivative by odd generator `slot`: the generator is moved to the
    /// front of each monomial containing it and then removed.
    pub fn odd_partial(&self, slot: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.table);
        for (m, c) in &self.terms {
            if m.has_odd(slot) {
                let mut rest = m.clone();
                rest.odd &= !(1 << slot);
                let passes = (m.odd & super::monomial::below(slot)).count_ones();
                out.add_term(rest, if passes % 2 == 1 { -c.clone() } else { c.clone() });
            }
        }
        out
    }

    /// Largest absolute value among numerators and denominators; used for
    /// diagnostics only.
    pub fn height(&self) -> BigInt {
        self.terms
            .values()
            .flat_map(|c| [c.numer().abs(), c.denom().abs()])
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::frontend::format_poly(self))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::frontend::format_poly(self))
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            table: Arc::clone(&self.table),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        self.check_table(rhs).expect("add: generator tables differ");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        self.check_table(rhs).expect("sub: generator tables differ");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $assign:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                let mut out = self.clone();
                out.$assign(rhs);
                out
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(mut self, rhs: Polynomial) -> Polynomial {
                self.$assign(&rhs);
                self
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(mut self, rhs: &Polynomial) -> Polynomial {
                self.$assign(rhs);
                self
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                let mut out = self.clone();
                out.$assign(&rhs);
                out
            }
        }
    };
}

binop!(Add, add, add_assign);
binop!(Sub, sub, sub_assign);

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::mul(self, rhs)
    }
}

impl Mul<&Rational> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Rational) -> Polynomial {
        self.scale(rhs)
    }
}

impl std::iter::Sum for Polynomial {
    /// Panics on an empty iterator, which has no table to build zero from.
    fn sum<I: Iterator<Item = Polynomial>>(mut iter: I) -> Polynomial {
        let first = iter.next().expect("sum of an empty polynomial iterator");
        iter.fold(first, |acc, p| acc + p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Arc<GeneratorTable> {
        Arc::new(GeneratorTable::standard(3, 3))
    }

    fn g(t: &Arc<GeneratorTable>, n: &str) -> Polynomial {
        Polynomial::generator(t, n).unwrap()
    }

    #[test]
    fn normalize_folds_koszul_sign() {
        let t = t();
        let p = Polynomial::normalize(&t, int(1), &["th1", "xi1"]).unwrap();
        let expected = -&Polynomial::normalize(&t, int(1), &["xi1", "th1"]).unwrap();
        assert_eq!(p, expected);
        assert_eq!(p.terms().next().unwrap().1, &int(-1));
    }

    #[test]
    fn normalize_odd_square_vanishes() {
        let t = t();
        assert!(Polynomial::normalize(&t, int(1), &["xi1", "xi1"]).unwrap().is_zero());
    }

    #[test]
    fn normalize_even_generators_commute() {
        let t = t();
        let p = Polynomial::normalize(&t, int(3), &["x1", "x1"]).unwrap();
        assert_eq!(p, g(&t, "x1").pow(2).scale_int(3));
    }

    #[test]
    fn normalize_unknown_generator() {
        let t = t();
        assert_eq!(
            Polynomial::normalize(&t, int(1), &["y1"]),
            Err(Error::UnknownGenerator("y1".into()))
        );
    }

    #[test]
    fn multiply_examples() {
        let t = t();
        let xi = g(&t, "xi1");
        let th = g(&t, "th1");
        assert_eq!(xi.mul(&th), Polynomial::normalize(&t, int(1), &["xi1", "th1"]).unwrap());
        let s = &xi + &th;
        assert!(s.mul(&s).is_zero());
        let lhs = g(&t, "x1").scale_int(2).mul(&g(&t, "p1").scale_int(3));
        assert_eq!(lhs, Polynomial::normalize(&t, int(6), &["x1", "p1"]).unwrap());
    }

    #[test]
    fn multiply_mismatched_tables() {
        let a = g(&t(), "x1");
        let other = Arc::new(GeneratorTable::standard(2, 1));
        let b = g(&other, "x1");
        assert_eq!(a.try_mul(&b), Err(Error::TableMismatch));
    }

    #[test]
    fn decompose_examples() {
        let t = t();
        let a = g(&t, "p1").mul(&g(&t, "xi1"));
        let b = g(&t, "xi1").mul(&g(&t, "xi2")).mul(&g(&t, "xi3"));
        let parts = (&a + &b).bidegree_decompose();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&Bidegree::new(1, 2)], a);
        assert_eq!(parts[&Bidegree::new(0, 3)], b);
        assert!(Polynomial::zero(&t).bidegree_decompose().is_empty());
        let c = g(&t, "x1").mul(&g(&t, "th1")).mul(&g(&t, "th2"));
        assert_eq!(c.bidegree(), Some(Bidegree::new(2, 0)));
    }

    #[test]
    fn substitute_odd_matches_direct_product() {
        let t = t();
        // xi1*xi2 with xi2 -> th3 gives xi1*th3
        let p = g(&t, "xi1").mul(&g(&t, "xi2"));
        let slot = match t.lookup("xi2").unwrap() {
            Slot::Odd(i) => i,
            _ => unreachable!(),
        };
        let q = p.substitute_odd(slot, &g(&t, "th3"));
        assert_eq!(q, g(&t, "xi1").mul(&g(&t, "th3")));
    }

    #[test]
    fn odd_partial_is_a_left_derivative() {
        let t = t();
        let slot = match t.lookup("xi2").unwrap() {
            Slot::Odd(i) => i,
            _ => unreachable!(),
        };
        let p = g(&t, "x1").mul(&g(&t, "xi1")).mul(&g(&t, "xi2")) + g(&t, "th1");
        assert_eq!(p.odd_partial(slot), -g(&t, "x1").mul(&g(&t, "xi1")));
        let round = g(&t, "xi2").mul(&p.odd_partial(slot));
        assert_eq!(round, p.filter(|m| m.has_odd(slot)));
    }
}
