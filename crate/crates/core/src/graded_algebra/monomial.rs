use crate::graded_algebra::{Bidegree, GeneratorKind, GeneratorTable};

/// Canonical monomial key: exponents of the even generators (`x` then `p`)
/// and the set of odd generators as a bit mask. Odd factors are implicitly
/// ordered by slot index; any coefficient sign from reordering has already
/// been folded into the owning polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub(crate) even: Vec<u16>,
    pub(crate) odd: u64,
}

/// Bits strictly above position `i`.
#[inline]
pub(crate) fn above(i: usize) -> u64 {
    if i >= 63 {
        0
    } else {
        !((1u64 << (i + 1)) - 1)
    }
}

/// Bits strictly below position `i`.
#[inline]
pub(crate) fn below(i: usize) -> u64 {
    (1u64 << i) - 1
}

/// Number of pairs `(a, b)` with `a` in `left`, `b` in `right` and `a > b`:
/// the transpositions needed to sort the concatenation `left ++ right`.
#[inline]
pub(crate) fn inversions(left: u64, right: u64) -> u32 {
    let mut count = 0;
    let mut r = right;
    while r != 0 {
        let b = r.trailing_zeros() as usize;
        count += (left & above(b)).count_ones();
        r &= r - 1;
    }
    count
}

impl Monomial {
    pub fn one(table: &GeneratorTable) -> Self {
        Monomial {
            even: vec![0; table.n_even()],
            odd: 0,
        }
    }

    pub fn even_exponent(&self, i: usize) -> u16 {
        self.even[i]
    }

    pub fn even_exponents(&self) -> &[u16] {
        &self.even
    }

    pub fn odd_mask(&self) -> u64 {
        self.odd
    }

    pub fn has_odd(&self, i: usize) -> bool {
        self.odd & (1 << i) != 0
    }

    /// Odd slots in canonical order.
    pub fn odd_slots(&self) -> impl Iterator<Item = usize> + '_ {
        let mut m = self.odd;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(i)
            }
        })
    }

    pub fn odd_count(&self) -> u32 {
        self.odd.count_ones()
    }

    /// Parity: `0` even, `1` odd.
    pub fn parity(&self) -> u32 {
        self.odd_count() % 2
    }

    /// Number of generator factors, counted with multiplicity.
    pub fn factor_count(&self) -> u32 {
        self.even.iter().map(|&e| e as u32).sum::<u32>() + self.odd_count()
    }

    pub fn is_one(&self) -> bool {
        self.odd == 0 && self.even.iter().all(|&e| e == 0)
    }

    pub fn bidegree(&self, table: &GeneratorTable) -> Bidegree {
        let n = table.base_dim();
        // x contributes (0,0), p contributes (1,1)
        let p: u32 = self.even[n..].iter().map(|&e| e as u32).sum();
        let mut bd = Bidegree::new(p, p);
        for i in self.odd_slots() {
            bd = bd + table.odd_info(i).kind.bidegree();
        }
        bd
    }

    /// Count of odd factors per (family, kind).
    pub fn count_odd_where(
        &self,
        table: &GeneratorTable,
        pred: impl Fn(usize, GeneratorKind) -> bool,
    ) -> u32 {
        self.odd_slots()
            .filter(|&i| {
                let g = table.odd_info(i);
                pred(g.family, g.kind)
            })
            .count() as u32
    }

    /// Product of two monomial keys; `None` when an odd generator repeats.
    /// The returned sign is the Koszul sign of sorting `self ++ other`.
    pub fn mul(&self, other: &Monomial) -> Option<(Monomial, bool)> {
        if self.odd & other.odd != 0 {
            return None;
        }
        let even = self
            .even
            .iter()
            .zip(&other.even)
            .map(|(a, b)| a + b)
            .collect();
        let negative = inversions(self.odd, other.odd) % 2 == 1;
        Some((
            Monomial {
                even,
                odd: self.odd | other.odd,
            },
            negative,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inversion_counts() {
        // [1] ++ [0] needs one swap
        assert_eq!(inversions(0b10, 0b01), 1);
        assert_eq!(inversions(0b01, 0b10), 0);
        // [1,2] ++ [0] needs two swaps
        assert_eq!(inversions(0b110, 0b001), 2);
        assert_eq!(inversions(1 << 63, 1), 1);
    }

    #[test]
    fn masks() {
        assert_eq!(above(63), 0);
        assert_eq!(above(0), !1);
        assert_eq!(below(3), 0b111);
    }
}
