//! Tutte's kernel for simple triangulations.
//!
//! `h̃_i(G)` counts simple, chord-free near-triangulations with a boundary of
//! length `i`, weighted by `G` per inner face; `Φ̃(t; G) = Σ_i h̃_i t^{i-3}`.
//! Three independent constructions are provided:
//!
//! * the decomposition recurrence for `h̃_i`, organised by face weight;
//! * the quadratic equation satisfied by `Φ̃`, fed with `h̃_3`;
//! * the explicit parametrized solution through `θ`, `C` and `Y`.
//!
//! All three must agree coefficient by coefficient.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{int, solve_quadratic, BiSeries, Rat, Series, Var};
use crate::error::{Error, Result};

/// `[G^f] h̃_i` for every `i ≥ 3` that is nonzero below `G^(g_trunc+1)`;
/// entry `m` of the result is `h̃_{m+3}`, known to order `g_trunc`.
///
/// At face weight `f` the decomposition gives
/// `[G^f] h̃_i = δ_{i,3} δ_{f,1} + [G^(f-1)] [t^(i-1)] Q` with
/// `Q = H/(1-H)` and `H = Σ_i h̃_i t^(i-2)`; `Q = H + H Q` is extended one
/// weight at a time, so each layer uses only lighter ones.
pub fn htilde_by_recurrence(g_trunc: usize) -> Vec<Series> {
    // h̃_i = O(G^(i-2)), so boundary lengths above g_trunc + 2 vanish
    let i_max = (g_trunc + 2).max(3);
    // h[e][f] = [G^f] h̃_{e+2}; q[e][f] = [t^e G^f] Q
    let mut h = vec![vec![BigInt::zero(); g_trunc + 1]; i_max - 1];
    let mut q = vec![vec![BigInt::zero(); g_trunc + 1]; i_max];
    for f in 1..=g_trunc {
        for i in 3..=i_max {
            let mut c = q[i - 1][f - 1].clone();
            if i == 3 && f == 1 {
                c += 1;
            }
            h[i - 2][f] = c;
        }
        for e in 1..i_max {
            let mut c = h.get(e).map_or_else(BigInt::zero, |row| row[f].clone());
            // H_a = O(G^a) and Q_b = O(G^b)
            for a in 1..e {
                let b = e - a;
                if a + b > f {
                    continue;
                }
                for f1 in a..=f - b {
                    let (x, y) = (&h[a][f1], &q[b][f - f1]);
                    if !x.is_zero() && !y.is_zero() {
                        c += x * y;
                    }
                }
            }
            q[e][f] = c;
        }
    }
    h.into_iter()
        .skip(1)
        .map(|row| Series::new(Var::GSimple, row.into_iter().map(Rat::from_integer).collect()))
        .collect()
}

/// Assembles `Φ̃(t; G)` from the `h̃_i`, to outer order `t_trunc`.
pub fn phi_tilde_from_htilde(htilde: &[Series], t_trunc: usize) -> BiSeries {
    let n = htilde[0].trunc();
    let coeffs = (0..=t_trunc)
        .map(|m| htilde.get(m).cloned().unwrap_or_else(|| Series::zero(Var::GSimple, n)))
        .collect();
    BiSeries::new(Var::T, coeffs)
}

/// `Φ̃` by the decomposition recurrence, known to `(t_trunc, g_trunc)`.
pub fn phi_tilde_by_recurrence(t_trunc: usize, g_trunc: usize) -> BiSeries {
    phi_tilde_from_htilde(&htilde_by_recurrence(g_trunc), t_trunc)
}

/// Root of `t² Φ̃² + (G + G h̃₃ t − t − G t²) Φ̃ + (G t − G h̃₃) = 0` with
/// `Φ̃(0) = h̃₃`.
///
/// The `t⁰` coefficient of the linear term is `G`, so every outer order
/// costs inner precision (about three orders per Newton-refined outer
/// order); the result is known only as far as that allows.
pub fn phi_tilde_by_quadratic(h3: &Series, t_trunc: usize) -> Result<BiSeries> {
    let n = h3.trunc();
    let g = Series::monomial(Var::GSimple, 1, n);
    let g_h3 = g.mul(h3)?;
    let t = |k: usize| BiSeries::outer_monomial(Var::T, Var::GSimple, k, t_trunc, n);
    let a = t(2);
    let b = BiSeries::from_inner(Var::T, &g, t_trunc)
        .add(&t(1).mul_inner(&g_h3)?)?
        .sub(&t(1))?
        .sub(&t(2).mul_inner(&g)?)?;
    let c = t(1)
        .mul_inner(&g)?
        .sub(&BiSeries::from_inner(Var::T, &g_h3, t_trunc))?;
    let seed = BiSeries::from_inner(Var::T, h3, 0);
    solve_quadratic(&a, &b, &c, &seed)
}

/// The `θ` parametrization of the kernel: `x = θ(1−θ)³` and
/// `C(G) = sqrt(θ/(1−θ))` at `x = G²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaParam {
    /// `θ(x)`, known to order `x_trunc`.
    pub theta_of_x: Series,
    /// `C(G)`, known to order `2 x_trunc`.
    pub c_of_g: Series,
}

pub fn theta_c_param(x_trunc: usize) -> Result<ThetaParam> {
    let th = Series::monomial(Var::Theta, 1, x_trunc);
    let one = Series::one(Var::Theta, x_trunc);
    let f = th.mul(&one.sub(&th)?.pow(3))?;
    let theta_of_x = f.reversion(Var::X)?;
    let g2 = Series::monomial(Var::GSimple, 2, 2 * x_trunc + 1);
    let theta_g = theta_of_x.compose(&g2)?;
    let ratio = theta_g.div(&Series::one(Var::GSimple, theta_g.trunc()).sub(&theta_g)?)?;
    let c_of_g = ratio.sqrt()?;
    Ok(ThetaParam { theta_of_x, c_of_g })
}

impl ThetaParam {
    /// Residuals of `θ(1−θ)³ = x` and `C²(1−θ(G²)) = θ(G²)`.
    pub fn check(&self) -> Result<()> {
        let th = &self.theta_of_x;
        let n = th.trunc();
        let one = Series::one(Var::X, n);
        let back = th.mul(&one.sub(th)?.pow(3))?;
        if back != Series::monomial(Var::X, 1, n) {
            return Err(Error::inconsistent("theta parametrization", format!("θ(1−θ)³ = {back}")));
        }
        let m = self.c_of_g.trunc();
        let theta_g = th.compose(&Series::monomial(Var::GSimple, 2, m))?;
        let lhs = self
            .c_of_g
            .square()
            .mul(&Series::one(Var::GSimple, m).sub(&theta_g)?)?;
        if let Some(i) = lhs.first_difference(&theta_g) {
            return Err(Error::inconsistent("C series", format!("C²(1−θ) ≠ θ at G^{i}")));
        }
        Ok(())
    }

    /// `θ(1−2θ)`, which must equal `x·g₃(x)`.
    pub fn x_g3(&self) -> Result<Series> {
        let th = &self.theta_of_x;
        let one = Series::one(Var::X, th.trunc());
        th.mul(&one.sub(&th.scale(&int(2)))?)
    }
}

/// `2/(3n+2) · binom(4n+1, n)`, the coefficient of `G^(2n+1)` in `C(G)`.
pub fn c_coefficient(n: u64) -> Rat {
    let mut b = BigInt::one();
    for j in 0..n {
        b = b * BigInt::from(4 * n + 1 - j) / BigInt::from(j + 1);
    }
    Rat::new(b * 2, BigInt::from(3 * n + 2))
}

/// `Y(t; G) = ½(Ct − 1 + sqrt((Ct−1)² − 4C³t))`, the root vanishing at
/// `t = 0`.
pub fn y_of_t(c: &Series, t_trunc: usize) -> Result<BiSeries> {
    let n = c.trunc();
    let one = BiSeries::from_inner(Var::T, &Series::one(Var::GSimple, n), t_trunc);
    let t = BiSeries::outer_monomial(Var::T, Var::GSimple, 1, t_trunc, n);
    let ct_minus_one = t.mul_inner(c)?.sub(&one)?;
    let c3t = t.mul_inner(&c.pow(3))?;
    let disc = ct_minus_one.square().sub(&c3t.scale(&int(4)))?;
    ct_minus_one.add(&disc.sqrt()?).map(|s| s.scale(&Rat::new(1.into(), 2.into())))
}

/// `Φ̃(t) = C³/(Y(1+Y)²) + 1/t`. The pole at `t = 0` must cancel: the
/// numerator `N = C³t/(Y(1+Y)²) + 1` is checked to vanish at `t = 0` before
/// dividing by `t`.
///
/// Dividing by `Y ~ −C³t` costs three inner orders.
pub fn phi_tilde_explicit(c: &Series, t_trunc: usize) -> Result<BiSeries> {
    let n = c.trunc();
    // the division by Y and the final division by t each consume an outer order
    let tt = t_trunc + 2;
    let y = y_of_t(c, tt)?;
    let one = BiSeries::from_inner(Var::T, &Series::one(Var::GSimple, n), tt);
    let t = BiSeries::outer_monomial(Var::T, Var::GSimple, 1, tt, n);
    let c3t = t.mul_inner(&c.pow(3))?;
    let den = y.mul(&one.add(&y)?.square())?;
    let num = c3t.div(&den)?.add(&one)?;
    if !num.coeffs()[0].is_zero() {
        return Err(Error::PoleNotCancelled { var: Var::T });
    }
    num.div_outer_power(1)
}

/// Runs `build` with the inner precision raised until its result is known
/// to `g_trunc`, then truncates.
fn with_inner_margin(
    t_trunc: usize,
    g_trunc: usize,
    per_order: usize,
    build: impl Fn(usize) -> Result<BiSeries>,
) -> Result<BiSeries> {
    let mut margin = per_order * (t_trunc + 1) + 2;
    for _ in 0..6 {
        match build(g_trunc + margin) {
            Ok(phi) if phi.outer_trunc() < t_trunc => {
                return Err(Error::Truncation {
                    needed: t_trunc,
                    available: phi.outer_trunc(),
                })
            }
            Ok(phi) if phi.inner_trunc() >= g_trunc => return Ok(phi.truncate(t_trunc, g_trunc)),
            // too little inner precision shows up as a failed exact division
            Ok(_) | Err(Error::NotDivisible { .. }) => margin *= 2,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Truncation {
        needed: g_trunc,
        available: 0,
    })
}

/// Quadratic route to `Φ̃`, with `h̃₃` from the recurrence, known to
/// `(t_trunc, g_trunc)`.
pub fn phi_tilde_quadratic_route(t_trunc: usize, g_trunc: usize) -> Result<BiSeries> {
    with_inner_margin(t_trunc, g_trunc, 3, |n| {
        let h3 = htilde_by_recurrence(n).swap_remove(0);
        phi_tilde_by_quadratic(&h3, t_trunc)
    })
}

/// Explicit route to `Φ̃` through `θ`, `C` and `Y`, known to
/// `(t_trunc, g_trunc)`.
pub fn phi_tilde_explicit_route(t_trunc: usize, g_trunc: usize) -> Result<BiSeries> {
    with_inner_margin(t_trunc, g_trunc, 1, |n| {
        let param = theta_c_param(n.div_ceil(2))?;
        phi_tilde_explicit(&param.c_of_g.truncate(n), t_trunc)
    })
}

/// `ψ_{m,n} = [G^(2n+m+1)] h̃_{m+3}` for `m ≤ m_max`, `n ≤ n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelTable {
    psi: Vec<Vec<Rat>>,
}

impl KernelTable {
    /// Reads the table off `Φ̃(t; G)`.
    pub fn from_phi(phi: &BiSeries, m_max: usize, n_max: usize) -> Result<Self> {
        let need = 2 * n_max + m_max + 1;
        if phi.outer_trunc() < m_max || phi.inner_trunc() < need {
            return Err(Error::Truncation {
                needed: need,
                available: phi.inner_trunc(),
            });
        }
        let psi = (0..=m_max)
            .map(|m| (0..=n_max).map(|n| phi.get(m, 2 * n + m + 1).cloned().unwrap_or_default()).collect())
            .collect();
        Ok(KernelTable { psi })
    }

    /// Table from the decomposition recurrence.
    pub fn by_recurrence(m_max: usize, n_max: usize) -> Self {
        let phi = phi_tilde_by_recurrence(m_max, 2 * n_max + m_max + 1);
        KernelTable::from_phi(&phi, m_max, n_max).expect("recurrence meets its own bounds")
    }

    pub fn m_max(&self) -> usize {
        self.psi.len() - 1
    }

    pub fn n_max(&self) -> usize {
        self.psi[0].len() - 1
    }

    pub fn psi(&self, m: usize, n: usize) -> &Rat {
        &self.psi[m][n]
    }

    /// Row `m = 0` as the series `g₃(x) = Σ_n ψ_{0,n} xⁿ`.
    pub fn g3(&self) -> Series {
        Series::new(Var::X, self.psi[0].clone())
    }

    /// First `(m, n)` at which two tables differ on their common range.
    pub fn first_difference(&self, other: &KernelTable) -> Option<(usize, usize)> {
        let mm = self.m_max().min(other.m_max());
        let nn = self.n_max().min(other.n_max());
        (0..=mm).find_map(|m| (0..=nn).find(|&n| self.psi[m][n] != other.psi[m][n]).map(|n| (m, n)))
    }

    /// First entry that is not a nonnegative integer.
    pub fn first_non_count(&self) -> Option<(usize, usize)> {
        self.psi.iter().enumerate().find_map(|(m, row)| {
            row.iter()
                .position(|c| !c.is_integer() || c < &Rat::zero())
                .map(|n| (m, n))
        })
    }

    /// Adds one to `ψ_{m,n}`. Fault-injection hook for the verification
    /// suite.
    pub fn corrupt(&mut self, m: usize, n: usize) {
        if let Some(c) = self.psi.get_mut(m).and_then(|row| row.get_mut(n)) {
            *c += Rat::one();
        }
    }
}

/// First `[t^m G^j]` coefficient of `Φ̃` that is nonzero although
/// `j ≢ m + 1 (mod 2)`.
pub fn parity_violation(phi: &BiSeries) -> Option<(usize, usize)> {
    phi.coeffs().iter().enumerate().find_map(|(m, s)| {
        s.coeffs()
            .iter()
            .enumerate()
            .find(|(j, c)| (j + m) % 2 == 0 && !c.is_zero())
            .map(|(j, _)| (m, j))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h3_leading_terms() {
        let h = htilde_by_recurrence(7);
        assert_eq!(h[0], Series::from_ints(Var::GSimple, &[0, 1, 0, 1, 0, 3, 0, 13]));
        // the only boundary-4 map with two faces has a chord
        assert_eq!(h[1].coeff(2), Some(&int(0)));
        assert_eq!(h[1].coeff(4), Some(&int(1)));
    }

    #[test]
    fn table_shape() {
        let t = KernelTable::by_recurrence(5, 3);
        assert_eq!(t.psi(0, 0), &int(1));
        for m in 1..=5 {
            assert_eq!(t.psi(m, 0), &int(0), "m = {m}");
        }
        assert_eq!([t.psi(0, 1), t.psi(0, 2), t.psi(0, 3)], [&int(1), &int(3), &int(13)]);
        assert_eq!(t.first_non_count(), None);
    }

    #[test]
    fn theta_and_c() {
        let p = theta_c_param(6).unwrap();
        assert_eq!(&p.theta_of_x.coeffs()[..4], &[int(0), int(1), int(3), int(15)]);
        for n in 0..6 {
            assert_eq!(p.c_of_g.coeff(2 * n as usize + 1), Some(&c_coefficient(n)));
        }
        assert_eq!([c_coefficient(0), c_coefficient(1), c_coefficient(2)], [int(1), int(2), int(9)]);
        p.check().unwrap();
    }

    #[test]
    fn g3_from_parametrization() {
        let p = theta_c_param(8).unwrap();
        let g3 = KernelTable::by_recurrence(0, 7).g3();
        assert_eq!(g3.shift(1), p.x_g3().unwrap());
    }

    #[test]
    fn y_leading_term() {
        let c = theta_c_param(5).unwrap().c_of_g;
        let y = y_of_t(&c, 3).unwrap();
        assert!(y.coeffs()[0].is_zero());
        assert_eq!(y.coeffs()[1].first_difference(&c.pow(3).neg()), None);
    }

    #[test]
    fn three_routes_agree() {
        let (tt, gt) = (5, 12);
        let rec = phi_tilde_by_recurrence(tt, gt);
        let quad = phi_tilde_quadratic_route(tt, gt).unwrap();
        let expl = phi_tilde_explicit_route(tt, gt).unwrap();
        assert_eq!(rec, quad);
        assert_eq!(rec, expl);
        assert_eq!(parity_violation(&rec), None);
    }

    #[test]
    fn quadratic_with_wrong_h3_fails() {
        let mut h3 = htilde_by_recurrence(8).swap_remove(0);
        h3 = h3.add(&Series::monomial(Var::GSimple, 3, 8)).unwrap();
        // a perturbed h̃₃ still gives a root; it just disagrees with the recurrence
        let phi = phi_tilde_by_quadratic(&h3, 3).unwrap();
        assert_ne!(phi.truncate(3, 4), phi_tilde_by_recurrence(3, 4));
    }
}
