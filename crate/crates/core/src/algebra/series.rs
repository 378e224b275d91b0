use std::fmt;

use num_traits::{One, Zero};

use super::{fmt_monomial, int, rat_sqrt, Rat, Var};
use crate::error::{Error, Result};

/// Truncated univariate power series with rational coefficients.
///
/// `coeffs[n]` is the coefficient of `var^n` for `n <= trunc`; coefficients
/// past the truncation order are unknown.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Series {
    var: Var,
    coeffs: Vec<Rat>,
}

impl Series {
    /// The truncation order is `coeffs.len() - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn new(var: Var, coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least its constant term");
        Series { var, coeffs }
    }

    pub fn from_ints(var: Var, coeffs: &[i64]) -> Self {
        Series::new(var, coeffs.iter().map(|&c| int(c)).collect())
    }

    /// Polynomial coefficients, zero-padded (or cut) to `trunc`.
    pub fn from_poly(var: Var, coeffs: &[Rat], trunc: usize) -> Self {
        let mut v: Vec<Rat> = coeffs.iter().take(trunc + 1).cloned().collect();
        v.resize(trunc + 1, Rat::zero());
        Series::new(var, v)
    }

    pub fn zero(var: Var, trunc: usize) -> Self {
        Series::new(var, vec![Rat::zero(); trunc + 1])
    }

    pub fn one(var: Var, trunc: usize) -> Self {
        Series::constant(var, Rat::one(), trunc)
    }

    pub fn constant(var: Var, c: Rat, trunc: usize) -> Self {
        let mut s = Series::zero(var, trunc);
        s.coeffs[0] = c;
        s
    }

    /// `var^k` known to order `trunc`.
    pub fn monomial(var: Var, k: usize, trunc: usize) -> Self {
        let mut s = Series::zero(var, trunc);
        if k <= trunc {
            s.coeffs[k] = Rat::one();
        }
        s
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// `None` past the truncation order.
    pub fn coeff(&self, n: usize) -> Option<&Rat> {
        self.coeffs.get(n)
    }

    /// Index of the first nonzero coefficient, or `trunc + 1` when every
    /// known coefficient vanishes.
    pub fn valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len())
    }

    /// True when every known coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Lowers the truncation order to `min(n, trunc)`.
    pub fn truncate(&self, n: usize) -> Series {
        let n = n.min(self.trunc());
        Series::new(self.var, self.coeffs[..=n].to_vec())
    }

    /// Treats `self` as a polynomial approximation and zero-pads it to order
    /// `n`. Only sound where the padded tail is about to be corrected.
    pub(crate) fn padded(&self, n: usize) -> Series {
        let mut c = self.coeffs.clone();
        c.resize(n + 1, Rat::zero());
        c.truncate(n + 1);
        Series::new(self.var, c)
    }

    fn check_var(&self, other: &Series) -> Result<()> {
        if self.var != other.var {
            return Err(Error::VarMismatch {
                left: self.var,
                right: other.var,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_var(other)?;
        let n = self.trunc().min(other.trunc());
        let c = (0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        Ok(Series::new(self.var, c))
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.check_var(other)?;
        let n = self.trunc().min(other.trunc());
        let c = (0..=n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect();
        Ok(Series::new(self.var, c))
    }

    pub fn neg(&self) -> Series {
        Series::new(self.var, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, k: &Rat) -> Series {
        Series::new(self.var, self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Product; known to order `min(Na + vb, Nb + va)` where `N` are the
    /// operands' truncations and `v` their valuations.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_var(other)?;
        let (na, nb) = (self.trunc(), other.trunc());
        let (va, vb) = (self.valuation(), other.valuation());
        let n = (na + vb).min(nb + va);
        let mut c = vec![Rat::zero(); n + 1];
        for i in va..=na.min(n) {
            let a = &self.coeffs[i];
            if a.is_zero() {
                continue;
            }
            let hi = (n - i).min(nb);
            for j in vb..=hi {
                let b = &other.coeffs[j];
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        Ok(Series::new(self.var, c))
    }

    pub fn square(&self) -> Series {
        self.mul(self).expect("same variable")
    }

    pub fn pow(&self, k: u32) -> Series {
        let mut acc = Series::one(self.var, self.trunc());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same variable");
            }
            k >>= 1;
            if k > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Multiplies by `var^m`.
    pub fn shift(&self, m: usize) -> Series {
        let mut c = vec![Rat::zero(); m];
        c.extend(self.coeffs.iter().cloned());
        Series::new(self.var, c)
    }

    /// Exact division by `var^m`; the first `m` coefficients must vanish.
    pub fn div_var_power(&self, m: usize) -> Result<Series> {
        if m > self.trunc() || self.coeffs[..m].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible { order: m });
        }
        Ok(Series::new(self.var, self.coeffs[m..].to_vec()))
    }

    /// Exact quotient.
    ///
    /// When the divisor has valuation `v > 0`, the dividend must vanish to
    /// order `v` (the `var^v` factor cancels); Laurent results are rejected.
    pub fn div(&self, other: &Series) -> Result<Series> {
        self.check_var(other)?;
        let vb = other.valuation();
        if vb > other.trunc() {
            return Err(Error::DivisionByZero);
        }
        let a = self.div_var_power(vb)?;
        let u = other.div_var_power(vb)?;
        let (na, nu) = (a.trunc(), u.trunc());
        let va = a.valuation();
        let n = na.min(nu + va);
        let inv0 = u.coeffs[0].recip();
        let mut q: Vec<Rat> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = a.coeffs[k].clone();
            for i in 1..=k.min(nu) {
                let ui = &u.coeffs[i];
                if !ui.is_zero() && !q[k - i].is_zero() {
                    acc -= ui * &q[k - i];
                }
            }
            q.push(acc * &inv0);
        }
        Ok(Series::new(self.var, q))
    }

    pub fn inverse(&self) -> Result<Series> {
        Series::one(self.var, self.trunc()).div(self)
    }

    /// Known to order `trunc - 1`.
    ///
    /// # Panics
    /// If only the constant term is known.
    pub fn derivative(&self) -> Series {
        assert!(self.trunc() > 0, "derivative of a series known only to order 0");
        let c = (1..=self.trunc())
            .map(|i| &self.coeffs[i] * int(i as i64))
            .collect();
        Series::new(self.var, c)
    }

    /// `self(inner)`: substitutes `inner` for this series' variable. The
    /// result carries `inner`'s variable.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstant);
        }
        let v = inner.valuation();
        let n = inner.trunc().min(v * (self.trunc() + 1) - 1);
        let inner = inner.truncate(n);
        // Horner over the coefficients that can reach order n.
        let top = (n / v).min(self.trunc());
        let mut acc = Series::constant(inner.var, self.coeffs[top].clone(), n);
        for j in (0..top).rev() {
            acc = acc.mul(&inner)?.truncate(n);
            acc.coeffs[0] += &self.coeffs[j];
        }
        Ok(acc)
    }

    /// Compositional inverse: returns `h` (in `result_var`) with
    /// `self(h) = result_var` to the truncation order. Newton iteration,
    /// doubling the number of correct coefficients at each step.
    pub fn reversion(&self, result_var: Var) -> Result<Series> {
        let n = self.trunc();
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstant);
        }
        if n < 1 {
            return Err(Error::Truncation {
                needed: 1,
                available: n,
            });
        }
        if self.coeffs[1].is_zero() {
            return Err(Error::ZeroLinearCoefficient);
        }
        let x = Series::monomial(result_var, 1, n);
        let deriv = self.derivative();
        let mut h = Series::new(result_var, vec![Rat::zero(), self.coeffs[1].recip()]);
        let mut p = 1;
        while p < n {
            p = (2 * p).min(n);
            let hp = h.padded(p);
            let residual = self.compose(&hp)?.sub(&x.truncate(p))?;
            let slope = deriv.compose(&hp)?;
            h = hp.sub(&residual.div(&slope)?)?.truncate(p);
        }
        let h = h.truncate(n);
        debug_assert_eq!(self.compose(&h)?, x);
        Ok(h)
    }

    /// Square root of `var^(2m) * u` with `u(0)` a rational square; the branch
    /// with positive leading coefficient is returned.
    pub fn sqrt(&self) -> Result<Series> {
        let n = self.trunc();
        let v = self.valuation();
        if v > n {
            return Ok(Series::zero(self.var, n / 2));
        }
        if v % 2 == 1 {
            return Err(Error::OddValuation(v));
        }
        let u = self.div_var_power(v)?;
        let root0 = rat_sqrt(&u.coeffs[0]).ok_or_else(|| Error::NotASquare(u.coeffs[0].to_string()))?;
        let two_root0_inv = (&root0 * int(2)).recip();
        let m = u.trunc();
        let mut s: Vec<Rat> = Vec::with_capacity(m + 1);
        s.push(root0);
        for k in 1..=m {
            let mut acc = u.coeffs[k].clone();
            for i in 1..k {
                acc -= &s[i] * &s[k - i];
            }
            s.push(acc * &two_root0_inv);
        }
        Ok(Series::new(self.var, s).shift(v / 2))
    }

    /// True when all coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// True when all coefficients are nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| c >= &Rat::zero())
    }

    /// First index at which two series differ, within the common truncation.
    pub fn first_difference(&self, other: &Series) -> Option<usize> {
        let n = self.trunc().min(other.trunc());
        (0..=n).find(|&i| self.coeffs[i] != other.coeffs[i])
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            fmt_monomial(f, c, self.var, n)?;
        }
        if !first {
            f.write_str(" + ")?;
        }
        write!(f, "O({}^{})", self.var, self.trunc() + 1)
    }
}
