//! Power-series roots of `A Z^2 + B Z + C = 0`.
//!
//! The outer constant term is solved one level down (rationals for
//! [`Series`], inner series for [`BiSeries`]), picking the root that agrees
//! with the seed; Newton iteration on the full quadratic then doubles the
//! number of correct outer orders per step.

use num_traits::Zero;

use super::{int, rat_sqrt, BiSeries, Rat, Series};
use crate::error::{Error, Result};

/// A truncated power-series ring over which quadratics can be solved.
pub trait QuadraticRing: Clone + PartialEq + Sized {
    /// Coefficient ring of the outer variable.
    type Base: Clone + PartialEq + std::fmt::Debug;

    fn outer_trunc(&self) -> usize;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Result<Self>;
    fn sub(&self, other: &Self) -> Result<Self>;
    fn mul(&self, other: &Self) -> Result<Self>;
    fn div(&self, other: &Self) -> Result<Self>;
    fn scale(&self, k: &Rat) -> Self;
    fn truncated(&self, n: usize) -> Self;
    fn padded(&self, n: usize) -> Self;
    fn constant_term(&self) -> Self::Base;
    /// `c` as the outer constant term, known to outer order `n`.
    fn from_constant(c: Self::Base, like: &Self, n: usize) -> Self;
    /// Root of `a z^2 + b z + c = 0` in the base ring agreeing with `seed`.
    fn solve_base(a: &Self::Base, b: &Self::Base, c: &Self::Base, seed: &Self::Base) -> Result<Self::Base>;
    /// Lowest nonzero term, as a flat index path and its coefficient.
    fn leading(&self) -> Option<(Vec<usize>, Rat)>;
}

impl QuadraticRing for Series {
    type Base = Rat;

    fn outer_trunc(&self) -> usize {
        self.trunc()
    }
    fn is_zero(&self) -> bool {
        Series::is_zero(self)
    }
    fn add(&self, o: &Self) -> Result<Self> {
        Series::add(self, o)
    }
    fn sub(&self, o: &Self) -> Result<Self> {
        Series::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        Series::mul(self, o)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        Series::div(self, o)
    }
    fn scale(&self, k: &Rat) -> Self {
        Series::scale(self, k)
    }
    fn truncated(&self, n: usize) -> Self {
        self.truncate(n)
    }
    fn padded(&self, n: usize) -> Self {
        Series::padded(self, n)
    }
    fn constant_term(&self) -> Rat {
        self.coeffs()[0].clone()
    }
    fn from_constant(c: Rat, like: &Self, n: usize) -> Self {
        Series::constant(like.var(), c, n)
    }
    fn solve_base(a: &Rat, b: &Rat, c: &Rat, seed: &Rat) -> Result<Rat> {
        if a.is_zero() {
            if b.is_zero() {
                return Err(Error::DegenerateQuadratic);
            }
            return Ok(-c / b);
        }
        let disc = b * b - a * c * int(4);
        let root = rat_sqrt(&disc)
            .ok_or_else(|| Error::NoSeededRoot(format!("discriminant {disc} is not a rational square")))?;
        let two_a = a * int(2);
        [(-b + &root) / &two_a, (-b - &root) / &two_a]
            .into_iter()
            .find(|z| z == seed)
            .ok_or_else(|| Error::NoSeededRoot(format!("no rational root equals {seed}")))
    }
    fn leading(&self) -> Option<(Vec<usize>, Rat)> {
        let v = self.valuation();
        self.coeff(v).map(|c| (vec![v], c.clone()))
    }
}

impl QuadraticRing for BiSeries {
    type Base = Series;

    fn outer_trunc(&self) -> usize {
        BiSeries::outer_trunc(self)
    }
    fn is_zero(&self) -> bool {
        BiSeries::is_zero(self)
    }
    fn add(&self, o: &Self) -> Result<Self> {
        BiSeries::add(self, o)
    }
    fn sub(&self, o: &Self) -> Result<Self> {
        BiSeries::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        BiSeries::mul(self, o)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        BiSeries::div(self, o)
    }
    fn scale(&self, k: &Rat) -> Self {
        BiSeries::scale(self, k)
    }
    fn truncated(&self, n: usize) -> Self {
        self.truncate(n, self.inner_trunc())
    }
    fn padded(&self, n: usize) -> Self {
        BiSeries::padded(self, n)
    }
    fn constant_term(&self) -> Series {
        self.coeffs()[0].clone()
    }
    fn from_constant(c: Series, like: &Self, n: usize) -> Self {
        BiSeries::from_inner(like.outer_var(), &c, n)
    }
    fn solve_base(a: &Series, b: &Series, c: &Series, seed: &Series) -> Result<Series> {
        // linear case: b may be a non-unit, so divide exactly
        if a.is_zero() && !b.is_zero() {
            return c.neg().div(b);
        }
        solve_quadratic(a, b, c, seed)
    }
    fn leading(&self) -> Option<(Vec<usize>, Rat)> {
        self.leading_term().map(|((i, j), c)| (vec![i, j], c))
    }
}

/// Solves `a Z^2 + b Z + c = 0` for the power-series root whose leading
/// behaviour matches `seed`. The residual of the returned root vanishes to
/// its truncation order.
pub fn solve_quadratic<T: QuadraticRing>(a: &T, b: &T, c: &T, seed: &T) -> Result<T> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::DegenerateQuadratic);
    }
    let n = a.outer_trunc().min(b.outer_trunc()).min(c.outer_trunc());
    let z0 = T::solve_base(&a.constant_term(), &b.constant_term(), &c.constant_term(), &seed.constant_term())?;
    let mut z = T::from_constant(z0, c, 0);
    let two = int(2);
    let mut p = 0;
    while p < n {
        p = (2 * p + 1).min(n);
        let (ap, bp, cp) = (a.truncated(p), b.truncated(p), c.truncated(p));
        let zp = z.padded(p);
        let residual = ap.mul(&zp)?.add(&bp)?.mul(&zp)?.add(&cp)?;
        let slope = ap.mul(&zp)?.scale(&two).add(&bp)?;
        z = zp.sub(&residual.div(&slope)?)?.truncated(p);
    }
    let residual = a.mul(&z)?.add(b)?.mul(&z)?.add(c)?;
    if !residual.is_zero() {
        return Err(Error::NoSeededRoot("Newton iteration left a nonzero residual".into()));
    }
    if let Some(want) = seed.leading() {
        if z.leading() != Some(want.clone()) {
            return Err(Error::NoSeededRoot(format!(
                "root's leading term {:?} differs from seed {:?}",
                z.leading(),
                want
            )));
        }
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Var};

    #[test]
    fn linear_degeneration() {
        let a = Series::zero(Var::G, 6);
        let b = Series::from_ints(Var::G, &[1, -1, 0, 0, 0, 0, 0]);
        let c = Series::from_ints(Var::G, &[-1, 0, 0, 0, 0, 0, 0]);
        let z = solve_quadratic(&a, &b, &c, &Series::one(Var::G, 0)).unwrap();
        assert_eq!(z, Series::from_ints(Var::G, &[1; 7]));
    }

    #[test]
    fn catalan_branch() {
        // g Z^2 - Z + 1 = 0, Z = 1 + g + 2g^2 + 5g^3 + ...
        let n = 12;
        let a = Series::monomial(Var::G, 1, n);
        let b = Series::constant(Var::G, int(-1), n);
        let c = Series::one(Var::G, n);
        let z = solve_quadratic(&a, &b, &c, &Series::one(Var::G, 0)).unwrap();
        assert_eq!(&z.coeffs()[..6], &[int(1), int(1), int(2), int(5), int(14), int(42)]);
    }

    #[test]
    fn branch_selected_by_seed() {
        // Z^2 - (1 + g) Z + g = 0 has roots 1 and g
        let n = 5;
        let a = Series::one(Var::G, n);
        let b = Series::from_ints(Var::G, &[-1, -1]).padded(n);
        let c = Series::monomial(Var::G, 1, n);
        let z = solve_quadratic(&a, &b, &c, &Series::monomial(Var::G, 1, 1)).unwrap();
        assert_eq!(z, Series::monomial(Var::G, 1, n));
        let z = solve_quadratic(&a, &b, &c, &Series::one(Var::G, 0)).unwrap();
        assert_eq!(z, Series::one(Var::G, n));
        let err = solve_quadratic(&a, &b, &c, &Series::constant(Var::G, rat(1, 2), 0));
        assert!(matches!(err, Err(Error::NoSeededRoot(_))));
    }

    #[test]
    fn irrational_or_degenerate() {
        let n = 3;
        let one = Series::one(Var::G, n);
        let zero = Series::zero(Var::G, n);
        let minus_two = Series::constant(Var::G, int(-2), n);
        assert!(matches!(
            solve_quadratic(&one, &zero, &minus_two, &one),
            Err(Error::NoSeededRoot(_))
        ));
        assert_eq!(solve_quadratic(&zero, &zero, &one, &one), Err(Error::DegenerateQuadratic));
    }

    #[test]
    fn tutte_y_equation() {
        // Y^2 + (1 - σ + θσ) Y + θσ = 0 with Y ~ -θσ
        let (ns, nt) = (6, 6);
        let th = Series::monomial(Var::Theta, 1, nt);
        let one = Series::one(Var::Theta, nt);
        let a = BiSeries::from_inner(Var::Sigma, &one, ns);
        let sigma = BiSeries::outer_monomial(Var::Sigma, Var::Theta, 1, ns, nt);
        let b = a.sub(&sigma).unwrap().add(&sigma.mul_inner(&th).unwrap()).unwrap();
        let c = sigma.mul_inner(&th).unwrap();
        let seed = c.neg();
        let y = solve_quadratic(&a, &b, &c, &seed).unwrap();
        assert_eq!(y.get(1, 1), Some(&int(-1)));
        assert_eq!(y.get(0, 0), Some(&int(0)));
        assert_eq!(y.get(1, 0), Some(&int(0)));
        // second order in (θ, σ) jointly vanishes
        assert_eq!(y.get(2, 0), Some(&int(0)));
        assert_eq!(y.get(0, 2), Some(&int(0)));
        let residual = y.mul(&y).unwrap().add(&b.mul(&y).unwrap()).unwrap().add(&c).unwrap();
        assert!(residual.is_zero());
    }
}
