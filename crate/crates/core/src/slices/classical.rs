use crate::algebra::{int, Series, Var};
use crate::error::{Error, Result};

use super::{expect_equal, expect_zero, Family, FamilyKind};

/// `k → ∞` limits of the slice families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    pub r_inf: Series,
    pub s_inf: Series,
}

/// Solves `R = 1 + 2gRS`, `S = g(S² + 2R)` order by order and checks
/// `R² = 1 + 8g²R³`.
pub fn limits(trunc: usize) -> Result<Limits> {
    let g = Series::monomial(Var::G, 1, trunc);
    let one = Series::one(Var::G, trunc);
    let two = int(2);
    let mut r = one.clone();
    let mut s = Series::zero(Var::G, trunc);
    // each pass fixes one more order, since both right-hand sides carry a g
    for _ in 0..=trunc {
        let r_next = one.add(&g.mul(&r)?.mul(&s)?.scale(&two))?;
        let s_next = g.mul(&s.square().add(&r.scale(&two))?)?;
        r = r_next;
        s = s_next;
    }
    let lim = Limits { r_inf: r, s_inf: s };
    lim.check()?;
    Ok(lim)
}

impl Limits {
    pub fn trunc(&self) -> usize {
        self.r_inf.trunc()
    }

    pub fn check(&self) -> Result<()> {
        let (r, s) = (&self.r_inf, &self.s_inf);
        let n = r.trunc();
        let g = Series::monomial(Var::G, 1, n);
        let one = Series::one(Var::G, n);
        let two = int(2);
        let rhs = one.add(&g.mul(r)?.mul(s)?.scale(&two))?;
        expect_equal("limit-system", "R line", r, &rhs)?;
        let rhs = g.mul(&s.square().add(&r.scale(&two))?)?;
        expect_equal("limit-system", "S line", s, &rhs)?;
        let rhs = one.add(&g.square().mul(&r.pow(3))?.scale(&int(8)))?;
        expect_equal("limit-system", "R² = 1 + 8g²R³", &r.square(), &rhs)
    }
}

/// `R_k` and `S_k` from the classical system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalSolution {
    /// `R_0 = 0, R_1, …`
    pub r: Family,
    /// `S_0, S_1, …`
    pub s: Family,
}

/// Solves
///
/// ```text
/// R_k = 1 + g R_k (S_{k-1} + S_k),   k ≥ 1
/// S_k = g (S_k² + R_k + R_{k+1}),    k ≥ 0
/// ```
///
/// with `R_0 = 0`, order by order in `g`. The infinite ladder in `k` is cut
/// at `K = max(k_max + 1, trunc) + 1` by setting `R_{K+1} = R_K`; the cut is
/// accepted only if every `[gⁿ]R_k` and `[gⁿ]S_k` with `n ≤ k ≤ K` agrees
/// with the limits, which otherwise raises [`Error::Stabilization`].
///
/// Levels `0..=k_max + 1` are returned.
pub fn classical_solve(k_max: usize, trunc: usize) -> Result<ClassicalSolution> {
    let big_k = (k_max + 1).max(trunc) + 1;
    let g = Series::monomial(Var::G, 1, trunc);
    let one = Series::one(Var::G, trunc);
    let zero = Series::zero(Var::G, trunc);
    let mut r = vec![one.clone(); big_k + 1];
    r[0] = zero.clone();
    let mut s = vec![zero; big_k + 1];
    for _ in 0..=trunc {
        let mut r_next = r.clone();
        let mut s_next = s.clone();
        for k in 0..=big_k {
            if k >= 1 {
                r_next[k] = one.add(&g.mul(&r[k])?.mul(&s[k - 1].add(&s[k])?)?)?;
            }
            let above = &r[(k + 1).min(big_k)];
            s_next[k] = g.mul(&s[k].square().add(&r[k])?.add(above)?)?;
        }
        r = r_next;
        s = s_next;
    }
    let lim = limits(trunc)?;
    let r_fam = Family::new(FamilyKind::R, 0, r);
    let s_fam = Family::new(FamilyKind::S, 0, s);
    let r_tail = Family::new(FamilyKind::R, 1, r_fam.iter().skip(1).map(|(_, x)| x.clone()).collect());
    if let Some((k, n)) = r_tail.first_unstabilized(&lim.r_inf) {
        return Err(Error::Stabilization(format!("[g^{n}]R_{k} differs from R_∞ with the ladder cut at {big_k}")));
    }
    if let Some((k, n)) = s_fam.first_unstabilized(&lim.s_inf) {
        return Err(Error::Stabilization(format!("[g^{n}]S_{k} differs from S_∞ with the ladder cut at {big_k}")));
    }
    Ok(ClassicalSolution {
        r: r_fam.up_to(k_max + 1),
        s: s_fam.up_to(k_max + 1),
    })
}

/// Residuals of both lines of the classical system for `k ≤ k_max`, given
/// `R_0..=R_{k_max+1}` and `S_0..=S_{k_max}`.
pub(crate) fn check_classical(r: &Family, s: &Family, k_max: usize) -> Result<()> {
    let n = s.at(0).trunc();
    let g = Series::monomial(Var::G, 1, n);
    let one = Series::one(Var::G, n);
    for k in 0..=k_max {
        if k >= 1 {
            let res = r
                .at(k)
                .sub(&one)?
                .sub(&g.mul(r.at(k))?.mul(&s.at(k - 1).add(s.at(k))?)?)?;
            expect_zero("classical-system", &format!("R line, k = {k}"), &res)?;
        }
        let res = s
            .at(k)
            .sub(&g.mul(&s.at(k).square().add(r.at(k))?.add(r.at(k + 1))?)?)?;
        expect_zero("classical-system", &format!("S line, k = {k}"), &res)?;
    }
    Ok(())
}

impl ClassicalSolution {
    pub fn check(&self, k_max: usize) -> Result<()> {
        check_classical(&self.r, &self.s, k_max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limits_low_orders() {
        let l = limits(5).unwrap();
        assert_eq!(l.r_inf, Series::from_ints(Var::G, &[1, 0, 4, 0, 40, 0]));
        assert_eq!(&l.s_inf.coeffs()[..4], &[int(0), int(2), int(0), int(12)]);
        assert_eq!(limits(0).unwrap().r_inf, Series::one(Var::G, 0));
    }

    #[test]
    fn classical_initial_terms() {
        let c = classical_solve(4, 9).unwrap();
        assert!(c.r.at(0).is_zero());
        for k in 1..=5 {
            assert_eq!(c.r.at(k).coeff(0), Some(&int(1)));
        }
        assert_eq!(&c.s.at(0).coeffs()[..4], &[int(0), int(1), int(0), int(4)]);
        assert_eq!(c.r.at(1).coeff(2), Some(&int(3)));
        c.check(4).unwrap();
    }
}
