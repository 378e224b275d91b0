//! Closed forms in the parameter `λ`.
//!
//! `λ` parametrizes the simple face weight through `θ = λ/(1+λ)²`,
//! `G² = θ(1−θ)³`, and the general one through
//! `λ/(1+λ)² = g²R_∞³`. Quantities involving a single square root are kept
//! as [`Surd`]s `a + b√D` with `a, b, D ∈ ℚ(λ)`, so every identity is
//! checked exactly.

use crate::algebra::{int, rat, Poly, Rat, RatFunc, Series, Var};
use crate::error::{Error, Result};
use crate::slices::{Family, FamilyKind, Limits, SimpleFamilies};

/// `a + b√D` over ℚ(λ), with `D` not a square in ℚ(λ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surd {
    a: RatFunc,
    b: RatFunc,
    d: RatFunc,
}

impl Surd {
    /// # Panics
    /// If `d` is a square, in which case the representation is not unique.
    pub fn new(a: RatFunc, b: RatFunc, d: RatFunc) -> Self {
        assert!(d.sqrt().is_none(), "radicand {d} is a square");
        Surd { a, b, d }
    }

    pub fn rational(a: RatFunc, d: &RatFunc) -> Self {
        Surd::new(a, RatFunc::zero(), d.clone())
    }

    /// `b√D`
    pub fn radical(b: RatFunc, d: &RatFunc) -> Self {
        Surd::new(RatFunc::zero(), b, d.clone())
    }

    pub fn rational_part(&self) -> &RatFunc {
        &self.a
    }

    pub fn radical_part(&self) -> &RatFunc {
        &self.b
    }

    pub fn radicand(&self) -> &RatFunc {
        &self.d
    }

    /// The value when the radical part vanishes.
    pub fn as_rational(&self) -> Option<&RatFunc> {
        self.b.is_zero().then_some(&self.a)
    }

    fn same_field(&self, o: &Surd) -> Result<()> {
        if self.d != o.d {
            return Err(Error::inconsistent(
                "surd arithmetic",
                format!("radicands {} and {} differ", self.d, o.d),
            ));
        }
        Ok(())
    }

    pub fn add(&self, o: &Surd) -> Result<Surd> {
        self.same_field(o)?;
        Ok(Surd {
            a: self.a.add(&o.a),
            b: self.b.add(&o.b),
            d: self.d.clone(),
        })
    }

    pub fn sub(&self, o: &Surd) -> Result<Surd> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Surd {
        Surd {
            a: self.a.neg(),
            b: self.b.neg(),
            d: self.d.clone(),
        }
    }

    pub fn mul(&self, o: &Surd) -> Result<Surd> {
        self.same_field(o)?;
        Ok(Surd {
            a: self.a.mul(&o.a).add(&self.b.mul(&o.b).mul(&self.d)),
            b: self.a.mul(&o.b).add(&self.b.mul(&o.a)),
            d: self.d.clone(),
        })
    }

    pub fn scale(&self, k: &RatFunc) -> Surd {
        Surd {
            a: self.a.mul(k),
            b: self.b.mul(k),
            d: self.d.clone(),
        }
    }

    pub fn square(&self) -> Surd {
        self.mul(self).expect("same radicand")
    }

    /// Value at a rational `λ`, as `(a, b, D)`; `None` at a pole.
    pub fn eval(&self, x: &Rat) -> Option<(Rat, Rat, Rat)> {
        Some((self.a.eval(x)?, self.b.eval(x)?, self.d.eval(x)?))
    }

    /// Substitutes a series for `λ`; `D(lam)` must have a rational square
    /// root as a series.
    pub fn expand(&self, lam: &Series) -> Result<Series> {
        let a = self.a.expand(lam)?;
        if self.b.is_zero() {
            return Ok(a);
        }
        let root = self.d.expand(lam)?.sqrt()?;
        a.add(&self.b.expand(lam)?.mul(&root)?)
    }
}

fn lam() -> RatFunc {
    RatFunc::lambda()
}

/// `1 − λ^k`
fn om(k: usize) -> RatFunc {
    RatFunc::from_poly(Poly::one_minus_power(k))
}

fn quot(num: RatFunc, den: RatFunc) -> RatFunc {
    num.div(&den).expect("nonzero denominator")
}

/// `1 + λ + λ²`
fn q3() -> RatFunc {
    RatFunc::poly(&[1, 1, 1])
}

/// `1 + 10λ + λ²`
pub fn p_poly() -> RatFunc {
    RatFunc::poly(&[1, 10, 1])
}

/// `θ = λ/(1+λ)²`
pub fn theta() -> RatFunc {
    quot(lam(), RatFunc::poly(&[1, 2, 1]))
}

/// The map `f(Y) = (aY + b)/(cY + d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Moebius {
    pub a: RatFunc,
    pub b: RatFunc,
    pub c: RatFunc,
    pub d: RatFunc,
}

impl Moebius {
    pub fn apply(&self, y: &RatFunc) -> Result<RatFunc> {
        self.a.mul(y).add(&self.b).div(&self.c.mul(y).add(&self.d))
    }

    /// The map of the `Y_k` recursion:
    /// `Y_k = −θ/(1−θ)² · (θ − (1−θ)Y_{k−1})/(1 + Y_{k−1})`.
    pub fn y_recursion() -> Moebius {
        let th = theta();
        let one_m = RatFunc::one().sub(&th);
        Moebius {
            a: quot(th.clone(), one_m.clone()),
            b: quot(th.mul(&th), one_m.mul(&one_m)).neg(),
            c: RatFunc::one(),
            d: RatFunc::one(),
        }
    }
}

/// Iterates of a Möbius map in closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoebiusSolution {
    pub map: Moebius,
    /// Attracting fixed point.
    pub alpha: RatFunc,
    pub beta: RatFunc,
    /// `(cβ + d)/(cα + d)`
    pub lambda_ratio: RatFunc,
    /// `W_0 = (Y_0 − α)/(Y_0 − β)`
    pub w0: RatFunc,
}

/// Fixed points from `cY² + (d − a)Y − b = 0`, labelled so that
/// `W_k = (Y_k − α)/(Y_k − β)` shrinks geometrically near `λ = 0`; then
/// `Y_k = (α − βW_k)/(1 − W_k)` with `W_k = λ_ratio^k W_0`.
pub fn moebius_solve(map: Moebius, y0: &RatFunc) -> Result<MoebiusSolution> {
    let Moebius { a, b, c, d } = &map;
    if a.mul(d).sub(&b.mul(c)).is_zero() {
        return Err(Error::DegenerateMoebius("ad − bc = 0".into()));
    }
    if c.is_zero() {
        return Err(Error::DegenerateMoebius("affine map has a single finite fixed point".into()));
    }
    let lin = d.sub(a);
    let disc = lin.mul(&lin).add(&b.mul(c).scale(&int(4)));
    if disc.is_zero() {
        return Err(Error::DegenerateMoebius("coincident fixed points".into()));
    }
    let root = disc
        .sqrt()
        .ok_or_else(|| Error::DegenerateMoebius(format!("discriminant {disc} is not a square")))?;
    let two_c = c.scale(&int(2));
    let y1 = lin.neg().add(&root).div(&two_c)?;
    let y2 = lin.neg().sub(&root).div(&two_c)?;
    let ratio = |al: &RatFunc, be: &RatFunc| c.mul(be).add(d).div(&c.mul(al).add(d));
    let r12 = ratio(&y1, &y2)?;
    let (alpha, beta, lambda_ratio) = if r12.valuation().is_some_and(|v| v > 0) {
        (y1, y2, r12)
    } else {
        let r21 = ratio(&y2, &y1)?;
        if !r21.valuation().is_some_and(|v| v > 0) {
            return Err(Error::DegenerateMoebius("neither fixed point attracts near λ = 0".into()));
        }
        (y2, y1, r21)
    };
    let w0 = y0.sub(&alpha).div(&y0.sub(&beta))?;
    Ok(MoebiusSolution {
        map,
        alpha,
        beta,
        lambda_ratio,
        w0,
    })
}

impl MoebiusSolution {
    pub fn w(&self, k: u32) -> RatFunc {
        self.lambda_ratio.pow(k as i32).expect("nonnegative power").mul(&self.w0)
    }

    pub fn y(&self, k: u32) -> Result<RatFunc> {
        let w = self.w(k);
        self.alpha.sub(&self.beta.mul(&w)).div(&RatFunc::one().sub(&w))
    }

    /// `f(α) = α`, `f(β) = β` and `W_k = λ W_{k−1}` for `1 ≤ k ≤ k_max`,
    /// with `W_k` recomputed from `Y_k`.
    pub fn check(&self, k_max: u32) -> Result<()> {
        for (name, p) in [("α", &self.alpha), ("β", &self.beta)] {
            if self.map.apply(p)? != *p {
                return Err(Error::inconsistent("y-recursion", format!("{name} is not a fixed point")));
            }
        }
        let w_of = |y: &RatFunc| y.sub(&self.alpha).div(&y.sub(&self.beta));
        let mut prev = w_of(&self.y(0)?)?;
        for k in 1..=k_max {
            let w = w_of(&self.y(k)?)?;
            if w != self.lambda_ratio.mul(&prev) {
                return Err(Error::inconsistent("y-recursion", format!("W_{k} ≠ λ W_{}", k - 1)));
            }
            prev = w;
        }
        Ok(())
    }
}

/// `Y_k = −λ²/(1+λ+λ²) · (1−λ^k)/(1−λ^{k+2})`
pub fn closed_y(k: usize) -> RatFunc {
    let pre = quot(RatFunc::lambda_pow(2), q3()).neg();
    pre.mul(&quot(om(k), om(k + 2)))
}

/// Checks the closed `Y_k` against the recursion for `1 ≤ k ≤ k_max`, and
/// against the Möbius solution.
pub fn verify_y_recursion(k_max: usize) -> Result<()> {
    let map = Moebius::y_recursion();
    if !closed_y(0).is_zero() {
        return Err(Error::inconsistent("y-recursion", "Y_0 ≠ 0"));
    }
    let mut prev = closed_y(0);
    for k in 1..=k_max {
        let y = closed_y(k);
        if map.apply(&prev)? != y {
            return Err(Error::inconsistent("y-recursion", format!("closed Y_{k} fails the recursion")));
        }
        prev = y;
    }
    let sol = moebius_solve(map, &RatFunc::zero())?;
    if sol.lambda_ratio != lam() {
        return Err(Error::inconsistent("y-recursion", format!("λ ratio is {}", sol.lambda_ratio)));
    }
    for k in 0..=k_max.min(8) {
        if sol.y(k as u32)? != closed_y(k) {
            return Err(Error::inconsistent("y-recursion", format!("Möbius Y_{k} differs")));
        }
    }
    sol.check(5)
}

/// `λ/(1+λ+λ²)`, the radicand of `t_k` and `G`.
pub fn simple_radicand() -> RatFunc {
    quot(lam(), q3())
}

/// `r_k = (1+λ)²/(1+λ+λ²) · (1−λ^k)(1−λ^{k+2})/(1−λ^{k+1})²`, `k ≥ 1`.
pub fn closed_r(k: usize) -> RatFunc {
    let pre = quot(RatFunc::poly(&[1, 2, 1]), q3());
    pre.mul(&quot(om(k).mul(&om(k + 2)), om(k + 1).mul(&om(k + 1))))
}

/// `t_k = √(λ/(1+λ+λ²)) · (1−λ^k)(1−λ^{k+3})/((1−λ^{k+1})(1−λ^{k+2}))`.
pub fn closed_t(k: usize) -> Surd {
    let q = quot(om(k).mul(&om(k + 3)), om(k + 1).mul(&om(k + 2)));
    Surd::radical(q, &simple_radicand())
}

/// `G = √(λ(1+λ+λ²)³)/(1+λ)⁴`.
pub fn closed_big_g() -> Surd {
    let b = quot(q3().mul(&q3()), RatFunc::poly(&[1, 2, 1]).mul(&RatFunc::poly(&[1, 2, 1])));
    Surd::radical(b, &simple_radicand())
}

/// `t_k` recomputed from `Y_k` through
/// `t_k = √((1−θ)³/θ) · Y_k(1+Y_k)/((1−θ)Y_k − θ)`.
pub fn t_from_y(k: usize) -> Result<Surd> {
    let th = theta();
    let one_m = RatFunc::one().sub(&th);
    let y = closed_y(k);
    let sigma = y.mul(&RatFunc::one().add(&y)).div(&one_m.mul(&y).sub(&th))?;
    // √((1−θ)³/θ) = (1+λ+λ²)/((1+λ)² D) · √D with D = λ/(1+λ+λ²)
    let d = simple_radicand();
    let pre = q3().div(&RatFunc::poly(&[1, 2, 1]).mul(&d))?;
    Ok(Surd::radical(pre.mul(&sigma), &d))
}

/// Radical-free identities of the simple family for `k ≤ k_max`:
/// `t_0 = 0`, `r_1 = 1`, `t_k` from `Y_k`, `r_k = 1 + t_{k−1}t_k`,
/// `t_k = G r_k r_{k+1}`, and `G² = θ(1−θ)³`.
pub fn verify_simple_closed(k_max: usize) -> Result<()> {
    let fail = |d: String| Error::inconsistent("closed-vs-recursion", d);
    if !closed_t(0).radical_part().is_zero() || closed_r(1) != RatFunc::one() {
        return Err(fail("t_0 ≠ 0 or r_1 ≠ 1".into()));
    }
    let g = closed_big_g();
    let th = theta();
    let g2 = RatFunc::one().sub(&th).pow(3)?.mul(&th);
    if g.square().as_rational() != Some(&g2) {
        return Err(fail("G² ≠ θ(1−θ)³".into()));
    }
    for k in 0..=k_max {
        if t_from_y(k)? != closed_t(k) {
            return Err(fail(format!("t_{k} from Y_{k} differs")));
        }
        if k >= 1 {
            let prod = closed_t(k - 1).mul(&closed_t(k))?;
            if prod.as_rational().map(|p| RatFunc::one().add(p)) != Some(closed_r(k)) {
                return Err(Error::inconsistent("simple-r-t-relation", format!("closed r_{k} ≠ 1 + t_{}t_{k}", k - 1)));
            }
            let rhs = g.scale(&closed_r(k).mul(&closed_r(k + 1)));
            if rhs != closed_t(k) {
                return Err(Error::inconsistent("t-equals-G-r-r", format!("closed t_{k} ≠ G r_{k} r_{}", k + 1)));
            }
        }
    }
    Ok(())
}

/// Scalar closed forms in ℚ(λ)(√P), `P = 1 + 10λ + λ²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scalars {
    /// `R_∞ = √P/(1+λ)`
    pub r_inf: Surd,
    /// `g² = λ(1+λ)/P^{3/2}`
    pub g2: Surd,
    /// `g S_∞ = (R_∞ − 1)/(2R_∞)`
    pub g_s_inf: Surd,
}

pub fn closed_scalars() -> Scalars {
    let p = p_poly();
    let one_l = RatFunc::poly(&[1, 1]);
    let r_inf = Surd::radical(RatFunc::one().div(&one_l).expect("nonzero"), &p);
    let g2 = Surd::radical(quot(lam().mul(&one_l), p.mul(&p)), &p);
    let g_s_inf = Surd::new(rat_half(), quot(one_l, p.scale(&int(-2))), p);
    Scalars { r_inf, g2, g_s_inf }
}

fn rat_half() -> RatFunc {
    RatFunc::constant(rat(1, 2))
}

impl Scalars {
    /// `g²R_∞³ = λ/(1+λ)²`, i.e. `λ + 1/λ + 2 = 1/(g²R_∞³)`.
    pub fn g2_r3(&self) -> Result<RatFunc> {
        let v = self.g2.mul(&self.r_inf.square())?.mul(&self.r_inf)?;
        v.as_rational()
            .cloned()
            .ok_or_else(|| Error::inconsistent("lambda-characterization", "g²R_∞³ is not rational"))
    }

    /// `g⁴`, rational in λ.
    pub fn g4(&self) -> Result<RatFunc> {
        self.g2
            .square()
            .as_rational()
            .cloned()
            .ok_or_else(|| Error::inconsistent("lambda-characterization", "g⁴ is not rational"))
    }

    /// `G²`, rational in λ.
    pub fn big_g2(&self) -> RatFunc {
        closed_big_g().square().as_rational().cloned().expect("single radical squares to ℚ(λ)")
    }

    pub fn check(&self) -> Result<()> {
        let fail = |d: &str| Error::inconsistent("lambda-characterization", d.to_string());
        let p = p_poly();
        let one_l = RatFunc::poly(&[1, 1]);
        let g2r3 = self.g2_r3()?;
        if g2r3 != theta() {
            return Err(fail("g²R_∞³ ≠ λ/(1+λ)²"));
        }
        // g²R_∞³ (λ + 1/λ + 2) = 1
        let lhs = g2r3.mul(&lam().add(&lam().recip()?).add(&RatFunc::constant(int(2))));
        if lhs != RatFunc::one() {
            return Err(fail("g²R_∞³ (λ + 1/λ + 2) ≠ 1"));
        }
        let r2 = self.r_inf.square();
        if r2.as_rational() != Some(&p.div(&one_l.mul(&one_l))?) {
            return Err(fail("R_∞² ≠ P/(1+λ)²"));
        }
        if r2.as_rational() != Some(&RatFunc::one().add(&g2r3.scale(&int(8)))) {
            return Err(fail("R_∞² ≠ 1 + 8g²R_∞³"));
        }
        let g4 = quot(lam().mul(&lam()).mul(&one_l).mul(&one_l), p.pow(3)?);
        if self.g4()? != g4 {
            return Err(fail("g⁴ ≠ λ²(1+λ)²/P³"));
        }
        // R_∞ = 1 + 2R_∞·(gS_∞) and gS_∞ = (gS_∞)² + 2g²R_∞
        let one = Surd::rational(RatFunc::one(), &p);
        let u = &self.g_s_inf;
        if one.add(&self.r_inf.mul(u)?.scale(&RatFunc::constant(int(2))))? != self.r_inf {
            return Err(Error::inconsistent("limit-system", "closed R_∞ ≠ 1 + 2gR_∞S_∞"));
        }
        let g2r = self.g2.mul(&self.r_inf)?;
        if u.square().add(&g2r.scale(&RatFunc::constant(int(2))))? != *u {
            return Err(Error::inconsistent("limit-system", "closed S_∞ ≠ g(S_∞² + 2R_∞)"));
        }
        Ok(())
    }
}

/// `R_k / R_∞ = (1−λ^k)(1−λ^{k+2})/(1−λ^{k+1})²`
pub fn r_ratio(k: usize) -> RatFunc {
    quot(om(k).mul(&om(k + 2)), om(k + 1).mul(&om(k + 1)))
}

/// `(S_∞ − S_k)/(g R_∞²) = λ^k (1−λ)(1−λ²)/((1−λ^{k+1})(1−λ^{k+2}))`
pub fn s_ratio(k: usize) -> RatFunc {
    quot(
        RatFunc::lambda_pow(k).mul(&om(1)).mul(&om(2)),
        om(k + 1).mul(&om(k + 2)),
    )
}

/// `G_k = (1−λ)³P/(1+λ) · λ^{k−1}(1+λ^{k+1})/((1−λ^k)(1−λ^{k+1})(1−λ^{k+2})) − δ_{k,1}`,
/// `k ≥ 1`.
pub fn closed_gk(k: usize) -> RatFunc {
    assert!(k >= 1, "closed two-point form starts at k = 1");
    let pre = quot(om(1).pow(3).expect("positive power").mul(&p_poly()), RatFunc::poly(&[1, 1]));
    let one_plus = RatFunc::one().add(&RatFunc::lambda_pow(k + 1));
    let body = quot(
        RatFunc::lambda_pow(k - 1).mul(&one_plus),
        om(k).mul(&om(k + 1)).mul(&om(k + 2)),
    );
    let v = pre.mul(&body);
    if k == 1 {
        v.sub(&RatFunc::one())
    } else {
        v
    }
}

/// `G_k` assembled from the closed `R_k`, `S_k` in ℚ(λ)(√P) through
/// `G_k = S_k² − S_{k−1}² + R_{k+1} − R_{k−1} − δ_{k,1}`; errors if the
/// radical part survives.
pub fn assembled_gk(k: usize) -> Result<RatFunc> {
    assert!(k >= 1, "assembly starts at k = 1");
    let p = p_poly();
    let sc = closed_scalars();
    let r_inf = &sc.r_inf;
    // S_j = S_∞ − gR_∞² ρ_j, so with (gR_∞²)² = θR_∞ and S_∞·gR_∞² = (gS_∞)R_∞²:
    // S_k² − S_{k−1}² = θR_∞(ρ_k² − ρ_{k−1}²) − 2(gS_∞)R_∞²(ρ_k − ρ_{k−1})
    let (rho, rho_prev) = (s_ratio(k), s_ratio(k - 1));
    let sq = r_inf.scale(&theta().mul(&rho.mul(&rho).sub(&rho_prev.mul(&rho_prev))));
    let cross = sc.g_s_inf.mul(&r_inf.square())?.scale(&rho.sub(&rho_prev).scale(&int(2)));
    let r_at = |j: usize| {
        if j == 0 {
            Surd::rational(RatFunc::zero(), &p)
        } else {
            r_inf.scale(&r_ratio(j))
        }
    };
    let mut gk = sq.sub(&cross)?.add(&r_at(k + 1))?.sub(&r_at(k - 1))?;
    if k == 1 {
        gk = gk.sub(&Surd::rational(RatFunc::one(), &p))?;
    }
    gk.as_rational()
        .cloned()
        .ok_or_else(|| Error::inconsistent("closed-vs-recursion", format!("assembled G_{k} keeps a radical part")))
}

/// `λ(g)` by reverting `λ/(1+λ)²` and substituting `g²R_∞(g)³`.
pub fn lambda_of_g(lim: &Limits) -> Result<Series> {
    let n = lim.trunc();
    let th = theta().expand(&Series::monomial(Var::Lambda, 1, n))?;
    let inv = th.reversion(Var::X)?;
    let g = Series::monomial(Var::G, 1, n);
    inv.compose(&g.square().mul(&lim.r_inf.pow(3))?)
}

/// `λ(g)` from the closed `g² = λ(1+λ)/P^{3/2}` alone.
pub fn lambda_of_g_closed(trunc: usize) -> Result<Series> {
    let l = Series::monomial(Var::Lambda, 1, trunc);
    let g2 = closed_scalars().g2.expand(&l)?;
    g2.reversion(Var::X)?.compose(&Series::monomial(Var::G, 2, trunc))
}

/// `λ(G)` from `θ(G²)`: reverts `θ = λ/(1+λ)²` and substitutes.
pub fn lambda_of_big_g(theta_of_x: &Series, trunc: usize) -> Result<Series> {
    let th = theta().expand(&Series::monomial(Var::Lambda, 1, trunc))?;
    let inv = th.reversion(Var::Theta)?;
    let theta_g = theta_of_x.compose(&Series::monomial(Var::GSimple, 2, trunc))?;
    inv.compose(&theta_g)
}

/// Closed forms expanded as series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpandedGeneral {
    pub r: Family,
    pub s: Family,
    pub gk: Family,
}

/// `R_k`, `S_k` (`k ≤ k_max`) and `G_k` (`1 ≤ k ≤ k_max`) in `g`, from the
/// closed forms at `λ = λ(g)`. `R_∞` and `S_∞` come from the closed scalars,
/// expanded through the same `λ(g)`.
pub fn expand_general(lambda: &Series, k_max: usize) -> Result<ExpandedGeneral> {
    let n = lambda.trunc();
    let sc = closed_scalars();
    let r_inf = sc.r_inf.expand(lambda)?;
    let g = Series::monomial(Var::G, 1, n);
    // S_∞ = (gS_∞)/g; gS_∞ = O(g²)
    let s_inf = sc.g_s_inf.expand(lambda)?.div(&g)?;
    let g_r2 = g.mul(&r_inf.square())?;
    let mut r = vec![Series::zero(Var::G, n)];
    let mut s = Vec::new();
    let mut gk = vec![];
    for k in 0..=k_max {
        if k >= 1 {
            r.push(r_inf.mul(&r_ratio(k).expand(lambda)?)?);
            gk.push(closed_gk(k).expand(lambda)?);
        }
        s.push(s_inf.sub(&g_r2.mul(&s_ratio(k).expand(lambda)?)?)?);
    }
    Ok(ExpandedGeneral {
        r: Family::new(FamilyKind::R, 0, r),
        s: Family::new(FamilyKind::S, 0, s),
        gk: Family::new(FamilyKind::Gk, 1, gk),
    })
}

/// `r_k` (`1 ≤ k ≤ k_max`) and `t_k` (`k ≤ k_max`) in `G`, at `λ = λ(G)`.
pub fn expand_simple(lambda: &Series, k_max: usize) -> Result<SimpleFamilies> {
    let mut r = Vec::new();
    let mut t = Vec::new();
    for k in 0..=k_max {
        if k >= 1 {
            r.push(closed_r(k).expand(lambda)?);
        }
        t.push(closed_t(k).expand(lambda)?);
    }
    Ok(SimpleFamilies {
        r: Family::new(FamilyKind::SmallR, 1, r),
        t: Family::new(FamilyKind::SmallT, 0, t),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slices::limits;

    #[test]
    fn moebius_instance_with_known_data() {
        let sol = moebius_solve(Moebius::y_recursion(), &RatFunc::zero()).unwrap();
        assert_eq!(sol.alpha, quot(RatFunc::lambda_pow(2), q3()).neg());
        assert_eq!(sol.beta, quot(RatFunc::one(), q3()).neg());
        assert_eq!(sol.lambda_ratio, lam());
        assert_eq!(sol.w0, RatFunc::lambda_pow(2));
        sol.check(5).unwrap();
    }

    #[test]
    fn first_y_values() {
        assert!(closed_y(0).is_zero());
        let y1 = quot(RatFunc::lambda_pow(2), q3().mul(&q3())).neg();
        assert_eq!(closed_y(1), y1);
        verify_y_recursion(12).unwrap();
    }

    #[test]
    fn degenerate_maps() {
        let one = RatFunc::one();
        let m = Moebius {
            a: one.clone(),
            b: one.clone(),
            c: one.clone(),
            d: one.clone(),
        };
        assert!(matches!(moebius_solve(m, &RatFunc::zero()), Err(Error::DegenerateMoebius(_))));
    }

    #[test]
    fn simple_closed_identities() {
        assert_eq!(closed_r(1), RatFunc::one());
        verify_simple_closed(10).unwrap();
    }

    #[test]
    fn scalars_and_critical_point() {
        let sc = closed_scalars();
        sc.check().unwrap();
        assert_eq!(sc.big_g2().eval(&int(1)), Some(rat(27, 256)));
        assert_eq!(sc.g4().unwrap().eval(&int(1)), Some(rat(1, 432)));
        let (_, b, d) = sc.r_inf.eval(&int(0)).unwrap();
        assert_eq!(&b * &b * d, int(1));
    }

    #[test]
    fn lambda_series() {
        let lim = limits(8).unwrap();
        let l = lambda_of_g(&lim).unwrap();
        assert_eq!(&l.coeffs()[..6], &[int(0), int(0), int(1), int(0), int(14), int(0)]);
        assert_eq!(l.first_difference(&lambda_of_g_closed(8).unwrap()), None);
    }

    #[test]
    fn s_at_zero() {
        assert_eq!(s_ratio(0), RatFunc::one());
    }

    #[test]
    fn closed_matches_classical() {
        let (k_max, n) = (6, 14);
        let c = crate::slices::classical_solve(k_max, n).unwrap();
        let gk = crate::slices::two_point(&c.r, &c.s, k_max).unwrap();
        let lam = lambda_of_g(&limits(n).unwrap()).unwrap();
        let e = expand_general(&lam, k_max).unwrap();
        assert_eq!(e.r.first_difference(&c.r.up_to(k_max)), None);
        assert_eq!(e.s.first_difference(&c.s.up_to(k_max)), None);
        let gk_tail = Family::new(FamilyKind::Gk, 1, gk.iter().skip(1).map(|(_, x)| x.clone()).collect());
        assert_eq!(e.gk.first_difference(&gk_tail), None);
    }

    #[test]
    fn closed_matches_simple_recursion() {
        let (k_max, n) = (5, 12);
        let phi = crate::kernel::phi_tilde_by_recurrence(n, n);
        let rec = crate::slices::new_recursion_simple(&phi, k_max, n).unwrap();
        let p = crate::kernel::theta_c_param(n / 2).unwrap();
        let lam = lambda_of_big_g(&p.theta_of_x, n).unwrap();
        let e = expand_simple(&lam, k_max).unwrap();
        assert_eq!(e.r.first_difference(&rec.r), None);
        assert_eq!(e.t.first_difference(&rec.t), None);
    }

    #[test]
    fn assembled_two_point_is_compact() {
        for k in 1..=6 {
            assert_eq!(assembled_gk(k).unwrap(), closed_gk(k), "k = {k}");
        }
        // the variant with (1−λ³) in place of (1−λ)³ fails already at k = 2
        let wrong = closed_gk(2).mul(&quot(om(3), om(1).pow(3).unwrap()));
        assert_ne!(assembled_gk(2).unwrap(), wrong);
    }
}
