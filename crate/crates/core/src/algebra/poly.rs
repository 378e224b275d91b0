use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{fmt_monomial, int, Rat, Series, Var};
use crate::error::{Error, Result};

/// Dense univariate polynomial over the rationals, lowest degree first,
/// without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![Rat::zero(); k + 1];
        c[k] = Rat::one();
        Poly { coeffs: c }
    }

    /// `1 - x^k`.
    pub fn one_minus_power(k: usize) -> Self {
        Poly::one().sub(&Poly::monomial(k))
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = Rat::zero();
        Poly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        Poly::new(c)
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.coeffs[db].recip();
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut q = vec![Rat::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = &r[k + db] * &lead_inv;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    if !d.is_zero() {
                        r[k + j] -= &c * d;
                    }
                }
            }
            q[k] = c;
        }
        r.truncate(db);
        Ok((Poly::new(q), Poly::new(r)))
    }

    /// Exact quotient; fails when the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::NotDivisible { order: 0 });
        }
        Ok(q)
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor (zero if both are zero).
    ///
    /// Runs a primitive pseudo-remainder sequence over the integers, which
    /// keeps coefficient growth in check compared to Euclid over the
    /// rationals.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let mut a = primitive_int(self);
        let mut b = primitive_int(other);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            if b.len() == 1 {
                return Poly::one();
            }
            let r = primitive(pseudo_rem(&a, &b));
            a = b;
            b = r;
        }
        Poly::new(a.into_iter().map(Rat::from_integer).collect()).monic()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    /// Evaluates at a truncated series; the result has the series'
    /// variable and truncation.
    pub fn eval_series(&self, s: &Series) -> Series {
        let mut acc = Series::zero(s.var(), s.trunc());
        for c in self.coeffs.iter().rev() {
            acc = acc
                .mul(s)
                .expect("same variable")
                .truncate(s.trunc())
                .add(&Series::constant(s.var(), c.clone(), s.trunc()))
                .expect("same variable");
        }
        acc
    }

    /// Square root when `self` is the square of a rational polynomial; the
    /// root with positive lowest-order coefficient is returned.
    pub fn sqrt(&self) -> Option<Poly> {
        let deg = match self.degree() {
            None => return Some(Poly::zero()),
            Some(d) => d,
        };
        let v = self.coeffs.iter().position(|c| !c.is_zero())?;
        if deg % 2 == 1 || v % 2 == 1 {
            return None;
        }
        let shifted = Series::new(Var::Lambda, self.coeffs[v..].to_vec());
        let root = shifted.sqrt().ok()?;
        let half = (deg - v) / 2;
        let mut c = vec![Rat::zero(); v / 2];
        c.extend(root.coeffs()[..=half].iter().cloned());
        let p = Poly::new(c);
        (p.mul(&p) == *self).then_some(p)
    }
}

/// Integer multiple with coprime coefficients and positive leading term.
fn primitive_int(p: &Poly) -> Vec<BigInt> {
    let lcm = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = p
        .coeffs
        .iter()
        .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
        .collect();
    primitive(ints)
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return v;
    }
    let g = if v.last().is_some_and(|l| l.is_negative()) { -g } else { g };
    v.iter().map(|c| c / &g).collect()
}

/// Remainder of `lc(b)^k * a` by `b`, over the integers.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let top = r.len() - 1;
        let lr = r[top].clone();
        if lr.is_zero() {
            r.pop();
            continue;
        }
        let k = top - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, d) in b.iter().enumerate() {
            r[k + j] -= &lr * d;
        }
        r.pop();
        // keep the working remainder primitive
        r = primitive_keep_len(r);
    }
    r
}

fn primitive_keep_len(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.iter().map(|c| c / &g).collect()
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            fmt_monomial(f, c, Var::Lambda, n)?;
        }
        Ok(())
    }
}
