//! Exact sparse polynomials over the graded coordinates of `T*ΠV` and the
//! big bracket.

mod bidegree;
mod bracket;
mod monomial;
mod polynomial;
mod table;

pub use bidegree::{Bidegree, ShiftedBidegree};
pub use bracket::{ad_pow, br, derived};
pub use monomial::Monomial;
pub use polynomial::{int, rat, Polynomial, Rational};
pub use table::{
    Family, GeneratorInfo, GeneratorKind, GeneratorTable, Slot, MAX_ODD_GENERATORS,
};
