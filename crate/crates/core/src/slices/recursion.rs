use crate::algebra::{BiSeries, Series, Var};
use crate::error::{Error, Result};

use super::classical::check_classical;
use super::{expect_equal, expect_zero, limits, Family, FamilyKind, Limits};

/// `r_k` (from `k = 1`) and `t_k` (from `k = 0`) for simple triangulations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleFamilies {
    pub r: Family,
    pub t: Family,
}

fn require_phi(phi: &BiSeries, g_trunc: usize) -> Result<()> {
    // t_{k-1} = O(G), so outer order g_trunc reaches every known G-order
    let have = phi.outer_trunc().min(phi.inner_trunc());
    if have < g_trunc {
        return Err(Error::Truncation {
            needed: g_trunc,
            available: have,
        });
    }
    if phi.outer_var() != Var::T || phi.inner_var() != Var::GSimple {
        return Err(Error::VarMismatch {
            left: phi.inner_var(),
            right: Var::GSimple,
        });
    }
    Ok(())
}

/// One step: `(r_k, t_k)` from `t_{k-1}`, with
/// `r_k = 1/(1 − t_{k−1}Φ̃(t_{k−1}))` and `t_k = Φ̃(t_{k−1}) r_k`.
fn step(phi: &BiSeries, t_prev: &Series) -> Result<(Series, Series)> {
    let n = t_prev.trunc();
    let p = phi.eval_outer(t_prev)?.truncate(n);
    let r = Series::one(Var::GSimple, n).sub(&t_prev.mul(&p)?)?.inverse()?;
    let t = p.mul(&r)?;
    Ok((r, t))
}

/// Runs the simple recursion from `t_0 = 0` up to `k_max`, at `G`-order
/// `g_trunc`.
pub fn new_recursion_simple(phi: &BiSeries, k_max: usize, g_trunc: usize) -> Result<SimpleFamilies> {
    require_phi(phi, g_trunc)?;
    let mut t = vec![Series::zero(Var::GSimple, g_trunc)];
    let mut r = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let (rk, tk) = step(phi, &t[k - 1])?;
        r.push(rk);
        t.push(tk);
    }
    Ok(SimpleFamilies {
        r: Family::new(FamilyKind::SmallR, 1, r),
        t: Family::new(FamilyKind::SmallT, 0, t),
    })
}

/// `(r_∞, t_∞)`: iterates the simple recursion until both stop changing.
pub fn simple_limits(phi: &BiSeries, g_trunc: usize) -> Result<(Series, Series)> {
    require_phi(phi, g_trunc)?;
    let mut t = Series::zero(Var::GSimple, g_trunc);
    let mut r = Series::one(Var::GSimple, g_trunc);
    for _ in 0..4 * (g_trunc + 2) {
        let (rn, tn) = step(phi, &t)?;
        if rn == r && tn == t {
            return Ok((r, t));
        }
        r = rn;
        t = tn;
    }
    Err(Error::Stabilization(format!("t_k did not settle to order {g_trunc}")))
}

impl SimpleFamilies {
    /// `r_k = 1 + t_{k−1} t_k` for every `k` present.
    pub fn check_r_t_relation(&self) -> Result<()> {
        for (k, r) in self.r.iter() {
            let rhs = Series::one(Var::GSimple, r.trunc()).add(&self.t.at(k - 1).mul(self.t.at(k))?)?;
            expect_equal("simple-r-t-relation", &format!("k = {k}"), r, &rhs)?;
        }
        Ok(())
    }

    /// `t_k = G r_k r_{k+1}` wherever `r_{k+1}` is present.
    pub fn check_t_g_r_r(&self) -> Result<()> {
        for (k, t) in self.t.iter().skip(1) {
            let Some(r_next) = self.r.get(k + 1) else { break };
            let g = Series::monomial(Var::GSimple, 1, t.trunc());
            let rhs = g.mul(self.r.at(k))?.mul(r_next)?;
            expect_equal("t-equals-G-r-r", &format!("k = {k}"), t, &rhs)?;
        }
        Ok(())
    }

    /// Both lines of the simple recursion, recomputed from scratch.
    pub fn check_recursion(&self, phi: &BiSeries) -> Result<()> {
        if !self.t.at(0).is_zero() {
            return Err(Error::inconsistent("new-recursion-simple", "t_0 is not zero"));
        }
        for (k, r) in self.r.iter() {
            let t_prev = self.t.at(k - 1);
            let p = phi.eval_outer(t_prev)?;
            let one = Series::one(Var::GSimple, r.trunc());
            // r_k (1 − t_{k−1}Φ̃) = 1 and t_k (1 − t_{k−1}Φ̃) = Φ̃
            let d = one.sub(&t_prev.mul(&p)?)?;
            expect_equal("new-recursion-simple", &format!("r line, k = {k}"), &r.mul(&d)?, &one)?;
            let t = self.t.at(k);
            expect_equal("new-recursion-simple", &format!("t line, k = {k}"), &t.mul(&d)?, &p)?;
        }
        Ok(())
    }
}

/// Scalars tying simple triangulations to general ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarBridge {
    pub limits: Limits,
    /// `R_1(g)`
    pub r1: Series,
    /// `S_0(g)`
    pub s0: Series,
    /// `G(g) = g R_1^{3/2}`
    pub g_of_g: Series,
    /// `r_∞(G)`
    pub r_inf: Series,
    /// `t_∞(G)`
    pub t_inf: Series,
}

fn face_weight(r1: &Series) -> Result<Series> {
    let g = Series::monomial(Var::G, 1, r1.trunc());
    g.mul(r1)?.mul(&r1.sqrt()?)
}

/// Solves for `R_1` by the contraction `R_1 ← R_∞ / r_∞(g R_1^{3/2})`, which
/// gains one order per pass since `r_∞ = 1 + O(G²)`, then sets
/// `S_0 = S_∞ − R_1^{1/2} t_∞(G)`.
pub fn bridge_to_general(phi: &BiSeries, trunc: usize) -> Result<ScalarBridge> {
    let lim = limits(trunc)?;
    let (r_inf, t_inf) = simple_limits(phi, trunc)?;
    let mut r1 = Series::one(Var::G, trunc);
    for _ in 0..=trunc {
        r1 = lim.r_inf.div(&r_inf.compose(&face_weight(&r1)?)?)?;
    }
    let again = lim.r_inf.div(&r_inf.compose(&face_weight(&r1)?)?)?;
    if again != r1 {
        return Err(Error::inconsistent("simple-general-bridge", "R_1 contraction did not settle"));
    }
    let g_of_g = face_weight(&r1)?;
    let s0 = lim.s_inf.sub(&r1.sqrt()?.mul(&t_inf.compose(&g_of_g)?)?)?;
    let b = ScalarBridge {
        limits: lim,
        r1,
        s0,
        g_of_g,
        r_inf,
        t_inf,
    };
    b.check()?;
    Ok(b)
}

impl ScalarBridge {
    pub fn trunc(&self) -> usize {
        self.r1.trunc()
    }

    pub fn check(&self) -> Result<()> {
        let lim = &self.limits;
        let rhs = self.r1.mul(&self.r_inf.compose(&self.g_of_g)?)?;
        expect_equal("simple-general-bridge", "R_∞ = R_1 r_∞(G)", &lim.r_inf, &rhs)?;
        let lhs = lim.s_inf.sub(&self.s0)?;
        let rhs = self.r1.sqrt()?.mul(&self.t_inf.compose(&self.g_of_g)?)?;
        expect_equal("simple-general-bridge", "S_∞ − S_0 = R_1^{1/2} t_∞(G)", &lhs, &rhs)?;
        let g = Series::monomial(Var::G, 1, self.trunc());
        let rhs = lim.s_inf.sub(&g.mul(&lim.r_inf.square())?)?;
        expect_equal("simple-general-bridge", "S_0 = S_∞ − g R_∞²", &self.s0, &rhs)
    }

    /// `R_1^{-1/2}`
    fn r1_inv_sqrt(&self) -> Result<Series> {
        self.r1.sqrt()?.inverse()
    }

    /// `h_{j+3}(g) = R_1^{−(j+3)/2} h̃_{j+3}(G(g))` for `j ≤ t_trunc`, as the
    /// series `Φ(T; g) = Σ_j h_{j+3} T^j`.
    pub fn phi_general(&self, phi_tilde: &BiSeries, t_trunc: usize) -> Result<BiSeries> {
        let s = self.r1_inv_sqrt()?;
        let mut factor = s.pow(3);
        let mut coeffs = Vec::with_capacity(t_trunc + 1);
        for j in 0..=t_trunc {
            let h = match phi_tilde.coeff(j) {
                Some(c) => c.compose(&self.g_of_g)?,
                None => {
                    return Err(Error::Truncation {
                        needed: t_trunc,
                        available: phi_tilde.outer_trunc(),
                    })
                }
            };
            coeffs.push(factor.mul(&h)?);
            factor = factor.mul(&s)?;
        }
        Ok(BiSeries::new(Var::T, coeffs))
    }
}

/// `R_k`, `S_k`, `T_k` in `g` from the simple families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralFamilies {
    /// `R_0 = 0, R_1, …`
    pub r: Family,
    pub s: Family,
    pub t: Family,
}

/// `R_k = R_1 r_k(G)`, `T_k = R_1^{1/2} t_k(G)`, `S_k = T_k + S_0`, for every
/// index the simple families provide.
pub fn general_families(bridge: &ScalarBridge, simple: &SimpleFamilies) -> Result<GeneralFamilies> {
    let n = bridge.trunc();
    let sq = bridge.r1.sqrt()?;
    let mut r = vec![Series::zero(Var::G, n)];
    for (_, rk) in simple.r.iter() {
        r.push(bridge.r1.mul(&rk.compose(&bridge.g_of_g)?)?);
    }
    let mut t = Vec::new();
    let mut s = Vec::new();
    for (_, tk) in simple.t.iter() {
        let tg = sq.mul(&tk.compose(&bridge.g_of_g)?)?;
        s.push(tg.add(&bridge.s0)?);
        t.push(tg);
    }
    Ok(GeneralFamilies {
        r: Family::new(FamilyKind::R, 0, r),
        s: Family::new(FamilyKind::S, 0, s),
        t: Family::new(FamilyKind::T, 0, t),
    })
}

impl GeneralFamilies {
    pub fn k_max(&self) -> usize {
        self.r.k_max().min(self.s.k_max())
    }

    /// `R_k − R_1 = T_{k−1} T_k`.
    pub fn check_bundle_relation(&self) -> Result<()> {
        for k in 1..=self.k_max() {
            let lhs = self.r.at(k).sub(self.r.at(1))?;
            let rhs = self.t.at(k - 1).mul(self.t.at(k))?;
            expect_equal("bundle-relation", &format!("k = {k}"), &lhs, &rhs)?;
        }
        Ok(())
    }

    /// `T_1 = h_3 R_1²` and both lines of the general recursion
    /// `R_k = R_1/(1 − R_1 T_{k−1}Φ(T_{k−1}))`,
    /// `T_k = R_1²Φ(T_{k−1})/(1 − R_1 T_{k−1}Φ(T_{k−1}))`, with
    /// `Φ(T) = R_1^{−3/2} Φ̃(R_1^{−1/2} T)`.
    pub fn check_new_recursion(&self, bridge: &ScalarBridge, phi_tilde: &BiSeries) -> Result<()> {
        let r1 = &bridge.r1;
        let s = bridge.r1_inv_sqrt()?;
        let s3 = s.pow(3);
        let h3 = s3.mul(&phi_tilde.coeffs()[0].compose(&bridge.g_of_g)?)?;
        expect_equal("new-recursion-general", "T_1 = h_3 R_1²", self.t.at(1), &h3.mul(&r1.square())?)?;
        let one = Series::one(Var::G, r1.trunc());
        for k in 1..=self.k_max() {
            let t_prev = self.t.at(k - 1);
            let p = s3.mul(&phi_tilde.eval_both(&s.mul(t_prev)?, &bridge.g_of_g)?)?;
            let d = one.sub(&r1.mul(t_prev)?.mul(&p)?)?;
            let at = format!("k = {k}");
            expect_equal("new-recursion-general", &at, &self.r.at(k).mul(&d)?, r1)?;
            expect_equal("new-recursion-general", &at, &self.t.at(k).mul(&d)?, &r1.square().mul(&p)?)?;
        }
        Ok(())
    }

    pub fn check_classical(&self) -> Result<()> {
        check_classical(&self.r, &self.s, self.k_max() - 1)
    }
}

/// Residual of
/// `R_1 T²Φ² + (gR_1² + gR_1³h_3 T − T − gR_1T²)Φ + (gT − gR_1²h_3) = 0`
/// for `Φ(T; g)` built from the `h_i`.
pub fn check_kernel_quadratic_general(bridge: &ScalarBridge, phi: &BiSeries) -> Result<()> {
    let (tt, n) = (phi.outer_trunc(), phi.inner_trunc());
    let r1 = bridge.r1.truncate(n);
    let g = Series::monomial(Var::G, 1, n);
    let h3 = &phi.coeffs()[0];
    let t = |k| BiSeries::outer_monomial(Var::T, Var::G, k, tt, n);
    let c0 = |s: &Series| BiSeries::from_inner(Var::T, s, tt);
    let g_r1 = g.mul(&r1)?;
    let a = t(2).mul_inner(&r1)?;
    let b = c0(&g_r1.mul(&r1)?)
        .add(&t(1).mul_inner(&g_r1.mul(&r1.square())?.mul(h3)?)?)?
        .sub(&t(1))?
        .sub(&t(2).mul_inner(&g_r1)?)?;
    let c = t(1).mul_inner(&g)?.sub(&c0(&g_r1.mul(&r1)?.mul(h3)?))?;
    let res = a.mul(&phi.square())?.add(&b.mul(phi)?)?.add(&c)?;
    match res.first_difference(&BiSeries::zero(Var::T, Var::G, res.outer_trunc(), res.inner_trunc())) {
        None => Ok(()),
        Some((m, j)) => Err(Error::inconsistent(
            "kernel-quadratic-general",
            format!("residual nonzero at T^{m} g^{j}"),
        )),
    }
}

/// Residual of `t²Φ̃² + (G + G h̃₃ t − t − G t²)Φ̃ + (G t − G h̃₃) = 0`.
pub fn check_kernel_quadratic_simple(phi: &BiSeries) -> Result<()> {
    let (tt, n) = (phi.outer_trunc(), phi.inner_trunc());
    let g = Series::monomial(Var::GSimple, 1, n);
    let gh3 = g.mul(&phi.coeffs()[0])?;
    let t = |k| BiSeries::outer_monomial(Var::T, Var::GSimple, k, tt, n);
    let b = BiSeries::from_inner(Var::T, &g, tt)
        .add(&t(1).mul_inner(&gh3)?)?
        .sub(&t(1))?
        .sub(&t(2).mul_inner(&g)?)?;
    let c = t(1).mul_inner(&g)?.sub(&BiSeries::from_inner(Var::T, &gh3, tt))?;
    let res = t(2).mul(&phi.square())?.add(&b.mul(phi)?)?.add(&c)?;
    for (m, s) in res.coeffs().iter().enumerate() {
        expect_zero("kernel-quadratic-simple", &format!("t^{m}"), s)?;
    }
    Ok(())
}
