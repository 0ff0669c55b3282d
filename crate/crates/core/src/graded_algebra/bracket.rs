//! The big bracket: the canonical even Poisson bracket on `T*ΠV`.
//!
//! On generators `{x_i, p_j} = δ_ij = -{p_j, x_i}` and `{ξ_a, θ_b} = δ_ab =
//! {θ_b, ξ_a}` (likewise for every extra fiber family); every other pair of
//! generators brackets to zero. The bracket is extended to monomials by
//!
//! ```text
//! {u, vw} = {u,v} w + (-1)^{|u||v|} v {u,w}
//! {uv, w} = u {v,w} + (-1)^{|v||w|} {u,w} v
//! ```
//!
//! which for monomials `A = a_1..a_n`, `B = b_1..b_m` (even factors first)
//! unfolds to a sum over conjugate pairs `(a_k, b_j)` of
//!
//! ```text
//! (-1)^{|a_{k+1}..a_n| |B|} (-1)^{|a_k| |b_1..b_{j-1}|} {a_k,b_j} a_1..a_{k-1} b_1..^b_j..b_m a_{k+1}..a_n
//! ```

use crate::error::Result;
use crate::graded_algebra::monomial::{above, below, inversions};
use crate::graded_algebra::{Monomial, Polynomial, Rational};

use num_traits::Zero;

use super::polynomial::int;

fn bracket_monomials(
    table: &crate::graded_algebra::GeneratorTable,
    a: &Monomial,
    b: &Monomial,
    coef: &Rational,
    out: &mut Polynomial,
) {
    let n = table.base_dim();

    // even pairs: the sign reduces to the Koszul sign of A' B'
    if a.odd & b.odd == 0 {
        for i in 0..n {
            for (ai, bi, value) in [(i, n + i, 1i64), (n + i, i, -1i64)] {
                let (ea, eb) = (a.even[ai], b.even[bi]);
                if ea == 0 || eb == 0 {
                    continue;
                }
                let mut m = Monomial {
                    even: a.even.iter().zip(&b.even).map(|(x, y)| x + y).collect(),
                    odd: a.odd | b.odd,
                };
                m.even[ai] -= 1;
                m.even[bi] -= 1;
                let mut c = coef * int(value * ea as i64 * eb as i64);
                if inversions(a.odd, b.odd) % 2 == 1 {
                    c = -c;
                }
                out.add_term(m, c);
            }
        }
    }

    // odd pairs
    let b_parity = b.odd.count_ones() % 2;
    let mut am = a.odd;
    while am != 0 {
        let k = am.trailing_zeros() as usize;
        am &= am - 1;
        let partner = match table.odd_info(k).partner {
            crate::graded_algebra::Slot::Odd(j) => j,
            _ => unreachable!(),
        };
        if b.odd & (1 << partner) == 0 {
            continue;
        }
        let value = table.odd_pairing(k, partner);
        if value == 0 {
            continue;
        }
        let before = a.odd & below(k);
        let after = a.odd & above(k);
        let rest_b = b.odd & !(1 << partner);
        if (before | after) & rest_b != 0 {
            continue;
        }
        let mut exponent = after.count_ones() * b_parity;
        exponent += (b.odd & below(partner)).count_ones();
        exponent += inversions(before, rest_b) + inversions(rest_b, after);
        let m = Monomial {
            even: a.even.iter().zip(&b.even).map(|(x, y)| x + y).collect(),
            odd: before | after | rest_b,
        };
        let mut c = coef * int(value);
        if exponent % 2 == 1 {
            c = -c;
        }
        out.add_term(m, c);
    }
}

impl Polynomial {
    /// The big bracket `{self, other}`; errors when the tables differ.
    pub fn try_bracket(&self, other: &Polynomial) -> Result<Polynomial> {
        if !super::polynomial::same_table(self.table(), other.table()) {
            return Err(crate::error::Error::TableMismatch);
        }
        let table = self.table();
        let mut out = Polynomial::zero(table);
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                let c = ca * cb;
                if !c.is_zero() {
                    bracket_monomials(table, ma, mb, &c, &mut out);
                }
            }
        }
        Ok(out)
    }

    /// The big bracket `{self, other}`; panics when the tables differ.
    pub fn bracket(&self, other: &Polynomial) -> Polynomial {
        self.try_bracket(other).expect("big bracket: generator tables differ")
    }
}

/// `{a, b}`, the free-function spelling of [`Polynomial::bracket`].
pub fn br(a: &Polynomial, b: &Polynomial) -> Polynomial {
    a.bracket(b)
}

/// Derived bracket `{{a, s}, b}`.
pub fn derived(s: &Polynomial, a: &Polynomial, b: &Polynomial) -> Polynomial {
    a.bracket(s).bracket(b)
}

/// `{...{{a, t}, t}..., t}` with `t` applied `times` times.
pub fn ad_pow(a: &Polynomial, t: &Polynomial, times: usize) -> Polynomial {
    (0..times).fold(a.clone(), |acc, _| acc.bracket(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded_algebra::GeneratorTable;
    use std::sync::Arc;

    fn g(t: &Arc<GeneratorTable>, n: &str) -> Polynomial {
        Polynomial::generator(t, n).unwrap()
    }

    #[test]
    fn generator_relations() {
        let t = Arc::new(GeneratorTable::standard(2, 2));
        let one = Polynomial::one(&t);
        assert_eq!(br(&g(&t, "x1"), &g(&t, "p1")), one);
        assert_eq!(br(&g(&t, "p1"), &g(&t, "x1")), -&one);
        assert_eq!(br(&g(&t, "xi1"), &g(&t, "th1")), one);
        assert_eq!(br(&g(&t, "th1"), &g(&t, "xi1")), one);
        assert!(br(&g(&t, "x1"), &g(&t, "p2")).is_zero());
        assert!(br(&g(&t, "xi1"), &g(&t, "th2")).is_zero());
        assert!(br(&g(&t, "xi1"), &g(&t, "xi1")).is_zero());
        assert!(br(&g(&t, "x1"), &g(&t, "th1")).is_zero());
    }

    #[test]
    fn p_against_square() {
        let t = Arc::new(GeneratorTable::standard(1, 1));
        let x = g(&t, "x1");
        let lhs = br(&g(&t, "p1"), &x.mul(&x));
        assert_eq!(lhs, x.scale_int(-2));
    }

    #[test]
    fn theta_pair_against_xi_pair_is_identity_of_v() {
        let t = Arc::new(GeneratorTable::standard(0, 2));
        let a = g(&t, "th1").mul(&g(&t, "th2"));
        let b = g(&t, "xi1").mul(&g(&t, "xi2"));
        let id = g(&t, "xi1").mul(&g(&t, "th1")) + g(&t, "xi2").mul(&g(&t, "th2"));
        assert_eq!(br(&a, &b), id);
    }

    #[test]
    fn extra_fiber_family_pairs() {
        let t = Arc::new(
            GeneratorTable::new(
                crate::graded_algebra::Family::new("x", "p", 1),
                vec![
                    crate::graded_algebra::Family::new("xi", "th", 1),
                    crate::graded_algebra::Family::new("e", "eps", 2),
                ],
            )
            .unwrap(),
        );
        let one = Polynomial::one(&t);
        assert_eq!(br(&g(&t, "e2"), &g(&t, "eps2")), one);
        assert_eq!(br(&g(&t, "eps2"), &g(&t, "e2")), one);
        assert!(br(&g(&t, "e1"), &g(&t, "th1")).is_zero());
        assert!(br(&g(&t, "eps1"), &g(&t, "th1")).is_zero());
    }
}
