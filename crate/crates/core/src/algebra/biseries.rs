use std::fmt;

use num_traits::Zero;

use super::{Rat, Series, Var};
use crate::error::{Error, Result};

/// Power series in an outer variable whose coefficients are truncated series
/// in an inner variable. All coefficient series share the inner variable
/// and the inner truncation order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BiSeries {
    outer: Var,
    inner: Var,
    coeffs: Vec<Series>,
}

impl BiSeries {
    /// Builds from outer coefficients, lowering every inner truncation to the
    /// smallest one present.
    ///
    /// # Panics
    /// If `coeffs` is empty or the coefficients disagree on the inner variable.
    pub fn new(outer: Var, coeffs: Vec<Series>) -> Self {
        assert!(!coeffs.is_empty(), "a bivariate series needs its outer constant term");
        let inner = coeffs[0].var();
        assert!(coeffs.iter().all(|c| c.var() == inner), "inner variables disagree");
        assert_ne!(outer, inner, "outer and inner variables must differ");
        let n = coeffs.iter().map(Series::trunc).min().unwrap_or(0);
        let coeffs = if coeffs.iter().all(|c| c.trunc() == n) {
            coeffs
        } else {
            coeffs.iter().map(|c| c.truncate(n)).collect()
        };
        BiSeries { outer, inner, coeffs }
    }

    pub fn zero(outer: Var, inner: Var, outer_trunc: usize, inner_trunc: usize) -> Self {
        BiSeries::new(outer, vec![Series::zero(inner, inner_trunc); outer_trunc + 1])
    }

    /// Embeds an inner series as the outer constant term.
    pub fn from_inner(outer: Var, c: &Series, outer_trunc: usize) -> Self {
        let mut coeffs = vec![Series::zero(c.var(), c.trunc()); outer_trunc + 1];
        coeffs[0] = c.clone();
        BiSeries::new(outer, coeffs)
    }

    /// `outer^k` with coefficient 1.
    pub fn outer_monomial(outer: Var, inner: Var, k: usize, outer_trunc: usize, inner_trunc: usize) -> Self {
        let mut b = BiSeries::zero(outer, inner, outer_trunc, inner_trunc);
        if k <= outer_trunc {
            b.coeffs[k] = Series::one(inner, inner_trunc);
        }
        b
    }

    pub fn outer_var(&self) -> Var {
        self.outer
    }

    pub fn inner_var(&self) -> Var {
        self.inner
    }

    pub fn outer_trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn inner_trunc(&self) -> usize {
        self.coeffs[0].trunc()
    }

    pub fn coeffs(&self) -> &[Series] {
        &self.coeffs
    }

    /// Inner series multiplying `outer^m`.
    pub fn coeff(&self, m: usize) -> Option<&Series> {
        self.coeffs.get(m)
    }

    /// Coefficient of `outer^m inner^n`, if known.
    pub fn get(&self, m: usize, n: usize) -> Option<&Rat> {
        self.coeffs.get(m).and_then(|s| s.coeff(n))
    }

    /// First outer index whose coefficient is not zero to inner truncation.
    pub fn outer_valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Series::is_zero)
    }

    pub fn truncate(&self, outer_trunc: usize, inner_trunc: usize) -> BiSeries {
        let m = outer_trunc.min(self.outer_trunc());
        BiSeries::new(
            self.outer,
            self.coeffs[..=m].iter().map(|c| c.truncate(inner_trunc)).collect(),
        )
    }

    pub(crate) fn padded(&self, outer_trunc: usize) -> BiSeries {
        let mut c = self.coeffs.clone();
        c.resize(outer_trunc + 1, Series::zero(self.inner, self.inner_trunc()));
        c.truncate(outer_trunc + 1);
        BiSeries::new(self.outer, c)
    }

    fn check(&self, other: &BiSeries) -> Result<()> {
        if self.outer != other.outer {
            return Err(Error::VarMismatch {
                left: self.outer,
                right: other.outer,
            });
        }
        if self.inner != other.inner {
            return Err(Error::VarMismatch {
                left: self.inner,
                right: other.inner,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &BiSeries) -> Result<BiSeries> {
        self.check(other)?;
        let c = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(BiSeries::new(self.outer, c))
    }

    pub fn sub(&self, other: &BiSeries) -> Result<BiSeries> {
        self.check(other)?;
        let c = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<_>>()?;
        Ok(BiSeries::new(self.outer, c))
    }

    pub fn neg(&self) -> BiSeries {
        BiSeries::new(self.outer, self.coeffs.iter().map(Series::neg).collect())
    }

    pub fn scale(&self, k: &Rat) -> BiSeries {
        BiSeries::new(self.outer, self.coeffs.iter().map(|c| c.scale(k)).collect())
    }

    /// Multiplies every outer coefficient by an inner series.
    pub fn mul_inner(&self, s: &Series) -> Result<BiSeries> {
        let c = self.coeffs.iter().map(|c| c.mul(s)).collect::<Result<_>>()?;
        Ok(BiSeries::new(self.outer, c))
    }

    pub fn mul(&self, other: &BiSeries) -> Result<BiSeries> {
        self.check(other)?;
        let (na, nb) = (self.outer_trunc(), other.outer_trunc());
        let (va, vb) = (self.outer_valuation(), other.outer_valuation());
        let n = (na + vb).min(nb + va);
        let inner_n = self.inner_trunc().max(other.inner_trunc());
        let mut out: Vec<Option<Series>> = vec![None; n + 1];
        for i in va..=na.min(n) {
            let a = &self.coeffs[i];
            for j in vb..=(n - i).min(nb) {
                let p = a.mul(&other.coeffs[j])?;
                let slot = &mut out[i + j];
                *slot = Some(match slot.take() {
                    Some(acc) => acc.add(&p)?,
                    None => p,
                });
            }
        }
        let coeffs = out
            .into_iter()
            .map(|c| c.unwrap_or_else(|| Series::zero(self.inner, inner_n)))
            .collect();
        Ok(BiSeries::new(self.outer, coeffs))
    }

    pub fn square(&self) -> BiSeries {
        self.mul(self).expect("same variables")
    }

    /// Multiplies by `outer^m`.
    pub fn shift(&self, m: usize) -> BiSeries {
        let mut c = vec![Series::zero(self.inner, self.inner_trunc()); m];
        c.extend(self.coeffs.iter().cloned());
        BiSeries::new(self.outer, c)
    }

    /// Exact division by `outer^m`.
    pub fn div_outer_power(&self, m: usize) -> Result<BiSeries> {
        if m > self.outer_trunc() || self.coeffs[..m].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible { order: m });
        }
        Ok(BiSeries::new(self.outer, self.coeffs[m..].to_vec()))
    }

    /// Exact quotient, solved one outer order at a time. The divisor's
    /// leading outer coefficient need not be a unit in the inner ring; each
    /// step is an exact inner division and fails if a Laurent term appears.
    pub fn div(&self, other: &BiSeries) -> Result<BiSeries> {
        self.check(other)?;
        let vb = other.outer_valuation();
        if vb > other.outer_trunc() {
            return Err(Error::DivisionByZero);
        }
        let a = self.div_outer_power(vb)?;
        let d = other.div_outer_power(vb)?;
        let (na, nd) = (a.outer_trunc(), d.outer_trunc());
        let n = na.min(nd + a.outer_valuation());
        let d0 = &d.coeffs[0];
        let mut q: Vec<Series> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = a.coeffs[k].clone();
            for i in 1..=k.min(nd) {
                if q[k - i].is_zero() && d.coeffs[i].is_zero() {
                    continue;
                }
                acc = acc.sub(&d.coeffs[i].mul(&q[k - i])?)?;
            }
            q.push(acc.div(d0)?);
        }
        Ok(BiSeries::new(self.outer, q))
    }

    /// Square root for a series whose outer constant term has a square root
    /// that is a unit of the inner ring.
    pub fn sqrt(&self) -> Result<BiSeries> {
        let s0 = self.coeffs[0].sqrt()?;
        let two_s0 = s0.scale(&super::int(2));
        let n = self.outer_trunc();
        let mut s: Vec<Series> = Vec::with_capacity(n + 1);
        s.push(s0);
        for k in 1..=n {
            let mut acc = self.coeffs[k].clone();
            for i in 1..k {
                acc = acc.sub(&s[i].mul(&s[k - i])?)?;
            }
            s.push(acc.div(&two_s0)?);
        }
        Ok(BiSeries::new(self.outer, s))
    }

    /// Substitutes a series in the inner variable for the outer variable:
    /// `Σ_m c_m(y) s(y)^m`. Requires `s(0) = 0`.
    pub fn eval_outer(&self, s: &Series) -> Result<Series> {
        if s.var() != self.inner {
            return Err(Error::VarMismatch {
                left: self.inner,
                right: s.var(),
            });
        }
        self.eval_both(s, &Series::monomial(self.inner, 1, s.trunc()))
    }

    /// Full substitution: outer variable := `outer_val`, inner variable :=
    /// `inner_val`, both series in a common third variable with zero
    /// constant terms (the inner one may be the identity).
    pub fn eval_both(&self, outer_val: &Series, inner_val: &Series) -> Result<Series> {
        if outer_val.var() != inner_val.var() {
            return Err(Error::VarMismatch {
                left: outer_val.var(),
                right: inner_val.var(),
            });
        }
        if !outer_val.coeffs()[0].is_zero() {
            return Err(Error::NonZeroConstant);
        }
        let v = outer_val.valuation();
        let n = outer_val
            .trunc()
            .min(inner_val.trunc())
            .min(v * (self.outer_trunc() + 1) - 1);
        let outer_val = outer_val.truncate(n);
        let top = (n / v).min(self.outer_trunc());
        let mut acc = self.coeffs[top].compose(inner_val)?.truncate(n);
        for j in (0..top).rev() {
            acc = acc
                .mul(&outer_val)?
                .truncate(n)
                .add(&self.coeffs[j].compose(inner_val)?)?;
        }
        Ok(acc)
    }

    /// Applies a map to every outer coefficient.
    pub fn map_inner(&self, f: impl Fn(&Series) -> Result<Series>) -> Result<BiSeries> {
        let c = self.coeffs.iter().map(f).collect::<Result<_>>()?;
        Ok(BiSeries::new(self.outer, c))
    }

    /// Swaps the roles of the two variables, keeping every known coefficient.
    pub fn transpose(&self) -> BiSeries {
        let coeffs = (0..=self.inner_trunc())
            .map(|n| {
                Series::new(
                    self.outer,
                    self.coeffs.iter().map(|c| c.coeffs()[n].clone()).collect(),
                )
            })
            .collect();
        BiSeries::new(self.inner, coeffs)
    }

    /// First `(outer, inner)` index where two series differ on the common
    /// range.
    pub fn first_difference(&self, other: &BiSeries) -> Option<(usize, usize)> {
        let m = self.outer_trunc().min(other.outer_trunc());
        (0..=m).find_map(|i| self.coeffs[i].first_difference(&other.coeffs[i]).map(|j| (i, j)))
    }

    /// Leading term in the (outer, inner) lexicographic order.
    pub fn leading_term(&self) -> Option<((usize, usize), Rat)> {
        self.coeffs.iter().enumerate().find_map(|(i, c)| {
            let v = c.valuation();
            c.coeff(v).map(|x| ((i, v), x.clone()))
        })
    }
}

impl fmt::Display for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.coeffs().iter().all(Zero::is_zero) {
                continue;
            }
            writeln!(f, "[{}^{m}] {c}", self.outer)?;
        }
        write!(f, "O({}^{})", self.outer, self.outer_trunc() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn geometric(outer: Var, inner: Var, n: usize, m: usize) -> BiSeries {
        // 1 / (1 - t*G)
        let coeffs = (0..=n).map(|k| Series::monomial(inner, k, m)).collect();
        BiSeries::new(outer, coeffs)
    }

    #[test]
    fn inverse_of_one_minus_product() {
        let t = BiSeries::outer_monomial(Var::T, Var::GSimple, 1, 6, 6);
        let tg = t.mul_inner(&Series::monomial(Var::GSimple, 1, 6)).unwrap();
        let one = BiSeries::from_inner(Var::T, &Series::one(Var::GSimple, 6), 6);
        let q = one.div(&one.sub(&tg).unwrap()).unwrap();
        assert_eq!(q, geometric(Var::T, Var::GSimple, 6, 6));
    }

    #[test]
    fn division_by_non_unit_leading_coefficient() {
        // (G^3 + G^3 t) / (G^3) = 1 + t, inner precision drops by 3
        let g3 = Series::monomial(Var::GSimple, 3, 8);
        let a = BiSeries::new(Var::T, vec![g3.clone(), g3.clone(), Series::zero(Var::GSimple, 8)]);
        let b = BiSeries::from_inner(Var::T, &g3, 2);
        let q = a.div(&b).unwrap();
        assert_eq!(q.inner_trunc(), 5);
        assert_eq!(q.get(0, 0), Some(&int(1)));
        assert_eq!(q.get(1, 0), Some(&int(1)));
        // G / G^3 is a Laurent series
        let g1 = Series::monomial(Var::GSimple, 1, 8);
        let c = BiSeries::from_inner(Var::T, &g1, 2);
        assert!(c.div(&b).is_err());
    }

    #[test]
    fn sqrt_squares_back() {
        let mut c: Vec<Series> = (0..5)
            .map(|k| Series::from_ints(Var::GSimple, &[k, 1, -2, 0, 3]))
            .collect();
        c[0] = Series::from_ints(Var::GSimple, &[1, 0, 4, 0, 0]);
        let f = BiSeries::new(Var::T, c);
        let r = f.sqrt().unwrap();
        assert_eq!(r.square(), f);
    }

    #[test]
    fn evaluation_at_series() {
        // 1/(1 - tG) at t = G gives 1/(1 - G^2)
        let f = geometric(Var::T, Var::GSimple, 8, 8);
        let s = Series::monomial(Var::GSimple, 1, 8);
        let r = f.eval_outer(&s).unwrap();
        assert_eq!(r, Series::from_ints(Var::GSimple, &[1, 0, 1, 0, 1, 0, 1, 0, 1]));
    }

    #[test]
    fn transpose_round_trip() {
        let c = (0..4).map(|k| Series::from_ints(Var::GSimple, &[k, 2 * k, 7])).collect();
        let f = BiSeries::new(Var::T, c);
        assert_eq!(f.transpose().transpose(), f);
        assert_eq!(f.transpose().get(1, 3), f.get(3, 1));
    }
}
