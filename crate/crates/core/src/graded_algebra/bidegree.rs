use std::fmt;
use std::ops::{Add, Sub};

/// Bidegree `(k, ℓ)` of a homogeneous element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Bidegree {
    pub k: u32,
    pub l: u32,
}

/// Shifted bidegree `(k-1, ℓ-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShiftedBidegree(pub i32, pub i32);

impl Bidegree {
    pub const fn new(k: u32, l: u32) -> Self {
        Bidegree { k, l }
    }

    pub fn total(self) -> u32 {
        self.k + self.l
    }

    pub fn shifted(self) -> ShiftedBidegree {
        ShiftedBidegree(self.k as i32 - 1, self.l as i32 - 1)
    }

    pub fn shifted_total(self) -> i32 {
        self.total() as i32 - 2
    }

    /// Bidegree of `{a, b}` for homogeneous `a` of bidegree `self` and `b` of
    /// bidegree `other`; `None` when the bracket is necessarily zero.
    pub fn bracket(self, other: Bidegree) -> Option<Bidegree> {
        let k = (self.k + other.k).checked_sub(1)?;
        let l = (self.l + other.l).checked_sub(1)?;
        Some(Bidegree::new(k, l))
    }
}

impl ShiftedBidegree {
    pub fn unshifted(self) -> Option<Bidegree> {
        let k = u32::try_from(self.0 + 1).ok()?;
        let l = u32::try_from(self.1 + 1).ok()?;
        Some(Bidegree::new(k, l))
    }

    pub fn total(self) -> i32 {
        self.0 + self.1
    }
}

impl Add for Bidegree {
    type Output = Bidegree;
    fn add(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.k + rhs.k, self.l + rhs.l)
    }
}

impl Sub for Bidegree {
    type Output = Bidegree;
    fn sub(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.k - rhs.k, self.l - rhs.l)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.l)
    }
}

impl fmt::Display for ShiftedBidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_roundtrip() {
        let b = Bidegree::new(3, 0);
        assert_eq!(b.shifted(), ShiftedBidegree(2, -1));
        assert_eq!(b.shifted().unshifted(), Some(b));
        assert_eq!(ShiftedBidegree(-2, 0).unshifted(), None);
        assert_eq!(b.shifted_total(), 1);
    }

    #[test]
    fn bracket_bidegree_subtracts_one_one() {
        assert_eq!(
            Bidegree::new(1, 2).bracket(Bidegree::new(2, 1)),
            Some(Bidegree::new(2, 2))
        );
        assert_eq!(Bidegree::new(0, 0).bracket(Bidegree::new(0, 1)), None);
    }
}
