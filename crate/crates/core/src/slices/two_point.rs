use crate::algebra::{int, Rat, Series, Var};
use crate::error::{Error, Result};

use super::{Family, FamilyKind};

/// `G_0 = S_0² + R_1 − 1` and
/// `G_k = S_k² − S_{k−1}² + R_{k+1} − R_{k−1} − δ_{k,1}` (with `R_0 = 0`)
/// for `k ≤ k_max`; needs `R` up to `k_max + 1`.
pub fn two_point(r: &Family, s: &Family, k_max: usize) -> Result<Family> {
    let n = s.at(0).trunc();
    let one = Series::one(Var::G, n);
    let mut out = Vec::with_capacity(k_max + 1);
    out.push(s.at(0).square().add(r.at(1))?.sub(&one)?);
    for k in 1..=k_max {
        let mut gk = s
            .at(k)
            .square()
            .sub(&s.at(k - 1).square())?
            .add(r.at(k + 1))?
            .sub(r.at(k - 1))?;
        if k == 1 {
            gk = gk.sub(&one)?;
        }
        out.push(gk);
    }
    let fam = Family::new(FamilyKind::Gk, 0, out);
    if let Some((k, i)) = fam.first_non_count() {
        return Err(Error::inconsistent(
            "two-point-assembly",
            format!("[g^{i}]G_{k} = {} is not a count", fam.at(k).coeffs()[i]),
        ));
    }
    Ok(fam)
}

/// First even `F` at which `Σ_k [g^F]G_k ≠ (F/2 + 2)[g^F]G_0`, looking only
/// at orders where every pointed map is captured by `k ≤ k_max` (a map with
/// `F` faces has `F/2 + 2` vertices, so distances stay below that).
pub fn sum_rule_violation(gk: &Family) -> Option<usize> {
    let n = gk.at(0).trunc();
    (0..=n).step_by(2).find(|&f| {
        if f / 2 + 1 > gk.k_max() {
            return false;
        }
        let total: Rat = gk.iter().map(|(_, s)| s.coeffs()[f].clone()).sum();
        let expect = gk.at(0).coeffs()[f].clone() * int(f as i64 / 2 + 2);
        total != expect
    })
}

#[cfg(test)]
mod tests {
    use num_traits::Zero;

    use super::*;
    use crate::slices::classical_solve;

    #[test]
    fn low_order_two_point() {
        let c = classical_solve(6, 8).unwrap();
        let g = two_point(&c.r, &c.s, 5).unwrap();
        for (_, s) in g.iter() {
            assert_eq!(s.coeff(0), Some(&int(0)));
            assert!(s.coeffs().iter().skip(1).step_by(2).all(Zero::is_zero));
        }
        assert_eq!(g.at(0).coeff(2), Some(&int(4)));
        assert_eq!(sum_rule_violation(&g), None);
    }
}
