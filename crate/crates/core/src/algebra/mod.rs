//! Exact coefficient arithmetic.
//!
//! Everything in the crate is computed over the rationals: truncated power
//! series in one variable ([`Series`]), series whose coefficients are
//! themselves series ([`BiSeries`]), and rational functions in λ
//! ([`RatFunc`]).  Truncated coefficients are *unknown*, never implicitly
//! zero, and every operation reports the exact order to which its result is
//! determined.

mod biseries;
mod poly;
mod quadratic;
mod ratfunc;
mod series;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

pub use biseries::BiSeries;
pub use poly::Poly;
pub use quadratic::{solve_quadratic, QuadraticRing};
pub use ratfunc::RatFunc;
pub use series::Series;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rat = num_rational::BigRational;

/// Builds a [`Rat`] from machine integers.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Builds an integral [`Rat`].
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rat_sqrt(q: &Rat) -> Option<Rat> {
    if q.is_negative() {
        return None;
    }
    if q.is_zero() {
        return Some(Rat::zero());
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

/// Series variable tags.
///
/// `G` is the face weight of general triangulations and `GSimple` the face
/// weight of simple ones; the remaining tags are the auxiliary variables of
/// the kernel parametrization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    G,
    GSimple,
    X,
    T,
    Lambda,
    Theta,
    Sigma,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Var::G => "g",
            Var::GSimple => "G",
            Var::X => "x",
            Var::T => "t",
            Var::Lambda => "λ",
            Var::Theta => "θ",
            Var::Sigma => "σ",
        };
        f.write_str(s)
    }
}

pub(crate) fn fmt_monomial(f: &mut fmt::Formatter<'_>, c: &Rat, var: Var, n: usize) -> fmt::Result {
    match n {
        0 => write!(f, "{c}"),
        1 => write!(f, "{c}*{var}"),
        _ => write!(f, "{c}*{var}^{n}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_square_roots() {
        assert_eq!(rat_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rat_sqrt(&rat(0, 1)), Some(int(0)));
        assert_eq!(rat_sqrt(&rat(2, 1)), None);
        assert_eq!(rat_sqrt(&rat(-1, 1)), None);
    }

    #[test]
    fn rat_is_canonical() {
        let q = rat(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
    }
}
