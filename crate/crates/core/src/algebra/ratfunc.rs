use std::fmt;

use num_traits::{One, Zero};

use super::{Poly, Rat, Series};
use crate::error::{Error, Result};

/// Rational function in λ, kept in canonical form: numerator and
/// denominator coprime, denominator monic. Structural equality is
/// therefore mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroRationalFunction);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        };
        let lead = den.leading().expect("nonzero denominator").recip();
        Ok(RatFunc {
            num: num.scale(&lead),
            den: den.scale(&lead),
        })
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn zero() -> Self {
        RatFunc::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    pub fn constant(c: Rat) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    /// The variable λ itself.
    pub fn lambda() -> Self {
        RatFunc::from_poly(Poly::monomial(1))
    }

    /// `λ^k`.
    pub fn lambda_pow(k: usize) -> Self {
        RatFunc::from_poly(Poly::monomial(k))
    }

    /// Polynomial from integer coefficients, lowest degree first.
    pub fn poly(coeffs: &[i64]) -> Self {
        RatFunc::from_poly(Poly::from_ints(coeffs))
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Order of vanishing at `λ = 0` (negative for a pole); `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        let ord = |p: &Poly| p.coeffs().iter().position(|c| !c.is_zero()).map(|i| i as i64);
        Some(ord(&self.num)? - ord(&self.den).expect("nonzero denominator"))
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.den == other.den {
            return RatFunc::new(self.num.add(&other.num), self.den.clone()).expect("nonzero denominator");
        }
        RatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
        .expect("nonzero denominator")
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        // cross-cancel first to keep degrees small
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = other.den.div_exact(&g1).expect("gcd divides");
        let n2 = other.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let num = n1.mul(&n2);
        let den = d1.mul(&d2);
        if num.is_zero() {
            return RatFunc::zero();
        }
        let lead = den.leading().expect("nonzero denominator").recip();
        RatFunc {
            num: num.scale(&lead),
            den: den.scale(&lead),
        }
    }

    pub fn recip(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn scale(&self, k: &Rat) -> RatFunc {
        if k.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(k),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, k: i32) -> Result<RatFunc> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        Ok((0..k.unsigned_abs()).fold(RatFunc::one(), |acc, _| acc.mul(&base)))
    }

    /// Value at a rational point; `None` at a pole.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    /// Substitutes a series for λ.
    pub fn expand(&self, lam: &Series) -> Result<Series> {
        let n = self.num.eval_series(lam);
        let d = self.den.eval_series(lam);
        n.div(&d).map_err(|e| match e {
            Error::NotDivisible { .. } | Error::DivisionByZero => Error::PoleNotCancelled { var: lam.var() },
            other => other,
        })
    }

    /// Square root within ℚ(λ), when numerator and denominator are both
    /// squares up to a rational square factor.
    pub fn sqrt(&self) -> Option<RatFunc> {
        let lead = self.num.leading()?.clone();
        let scale = super::rat_sqrt(&lead.abs_sign_fix())?;
        let n = self.num.scale(&lead.recip()).sqrt()?;
        let d = self.den.sqrt()?;
        let r = RatFunc::new(n.scale(&scale), d).ok()?;
        // positive constant term on the root, matching the series branch
        let c0 = r.num.coeffs().iter().find(|c| !c.is_zero()).cloned().unwrap_or_else(Rat::one);
        if c0 < Rat::zero() {
            Some(r.neg())
        } else {
            Some(r)
        }
    }
}

trait AbsSignFix {
    fn abs_sign_fix(&self) -> Rat;
}

impl AbsSignFix for Rat {
    // a negative leading coefficient can never be a square
    fn abs_sign_fix(&self) -> Rat {
        if *self < Rat::zero() {
            -Rat::one()
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) && self.den.leading().is_some_and(One::is_one) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Var};

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_ints(n), Poly::from_ints(d)).unwrap()
    }

    #[test]
    fn reduces_to_lowest_terms() {
        assert_eq!(rf(&[1, 0, -1], &[1, -1]), RatFunc::poly(&[1, 1]));
        let a = rf(&[3, 1, 4], &[1, 5, 9, 2]);
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.sub(&a), RatFunc::zero());
    }

    #[test]
    fn cyclotomic_quotient() {
        // (1-λ)(1-λ^3) / (1-λ^2)^2 = (1+λ+λ^2)/(1+λ)^2
        let num = Poly::one_minus_power(1).mul(&Poly::one_minus_power(3));
        let den = Poly::one_minus_power(2).pow(2);
        let lhs = RatFunc::new(num, den).unwrap();
        let rhs = rf(&[1, 1, 1], &[1, 2, 1]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn denominator_is_monic() {
        let a = rf(&[2], &[4, 6]);
        assert_eq!(a.denom().leading(), Some(&int(1)));
        assert_eq!(a.numer(), &Poly::new(vec![Rat::new(1.into(), 3.into())]));
    }

    #[test]
    fn division_by_zero_function() {
        assert_eq!(RatFunc::one().div(&RatFunc::zero()), Err(Error::ZeroRationalFunction));
        assert_eq!(
            RatFunc::new(Poly::one(), Poly::zero()),
            Err(Error::ZeroRationalFunction)
        );
    }

    #[test]
    fn expansion_in_a_series() {
        let g = Series::monomial(Var::G, 1, 6);
        assert_eq!(rf(&[1], &[1, -1]).expand(&g).unwrap(), Series::from_ints(Var::G, &[1; 7]));
        assert_eq!(RatFunc::lambda().expand(&g).unwrap(), g);
        let zero = Series::zero(Var::G, 3);
        assert_eq!(RatFunc::poly(&[1, 2, 1]).expand(&zero).unwrap(), Series::one(Var::G, 3));
        let pole = rf(&[1], &[0, 1]);
        assert!(matches!(pole.expand(&g), Err(Error::PoleNotCancelled { .. })));
    }

    #[test]
    fn evaluation_and_poles() {
        let a = rf(&[1, 1], &[1, -1]);
        assert_eq!(a.eval(&int(3)), Some(int(-2)));
        assert_eq!(a.eval(&int(1)), None);
    }

    #[test]
    fn square_roots_in_the_field() {
        let a = rf(&[1, -2, 1], &[4, 4, 1]);
        assert_eq!(a.sqrt(), Some(rf(&[1, -1], &[2, 1])));
        assert_eq!(rf(&[1, 10, 1], &[1]).sqrt(), None);
    }
}
