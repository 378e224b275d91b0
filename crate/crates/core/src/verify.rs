//! Named residual and cross-route checks, run as one suite.

use crate::algebra::{int, rat};
use crate::closedform::{
    assembled_gk, closed_gk, closed_scalars, expand_general, expand_simple, lambda_of_big_g, lambda_of_g,
    lambda_of_g_closed, verify_simple_closed, verify_y_recursion,
};
use crate::error::{Error, Result};
use crate::io::{CheckResult, Status};
use crate::kernel::{
    c_coefficient, phi_tilde_explicit_route, phi_tilde_quadratic_route, theta_c_param, KernelTable,
};
use crate::oracle::{enumerate_near, oracle_two_point, NearFlags, OracleConfig};
use crate::pipeline::{run_general, GeneralRun};
use crate::slices::{
    check_kernel_quadratic_general, check_kernel_quadratic_simple, classical_solve, limits, sum_rule_violation,
    two_point, ClassicalSolution, Family,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Truncation order in `g` and `G`.
    pub order: usize,
    pub k_max: usize,
    /// Kernel entries `ψ_{m,n}` with `m, n ≤ kernel_bound`.
    pub kernel_bound: usize,
    /// Largest `k` for the exact `Y_k` recursion in ℚ(λ).
    pub y_k_max: usize,
    /// Largest even face count for the oracle comparison.
    pub oracle_f_max: usize,
    /// Adds one to this `ψ_{m,n}` of the recurrence table before comparing.
    pub corrupt_psi: Option<(usize, usize)>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            order: 12,
            k_max: 5,
            kernel_bound: 4,
            y_k_max: 50,
            oracle_f_max: 4,
            corrupt_psi: None,
        }
    }
}

/// Every check name, in report order.
pub const CHECKS: [&str; 21] = [
    "two-point-assembly",
    "classical-system",
    "new-recursion-general",
    "bundle-relation",
    "kernel-quadratic-general",
    "kernel-quadratic-simple",
    "new-recursion-simple",
    "simple-r-t-relation",
    "y-recursion",
    "simple-general-bridge",
    "limit-system",
    "lambda-characterization",
    "t-equals-G-r-r",
    "sum-rule",
    "stabilization",
    "kernel-three-route",
    "closed-vs-recursion",
    "c-series",
    "critical-points",
    "counting-integrality",
    "oracle-equivalence",
];

fn fail(check: &str, detail: impl Into<String>) -> Error {
    Error::inconsistent(check, detail)
}

fn same_family(check: &str, a: &Family, b: &Family) -> Result<()> {
    match a.first_difference(b) {
        None => Ok(()),
        Some((k, n)) => Err(fail(check, format!("{}_{k} differs at order {n}", a.kind()))),
    }
}

fn tail(fam: &Family, from: usize) -> Family {
    let series = fam.iter().filter(|(k, _)| *k >= from).map(|(_, s)| s.clone()).collect();
    Family::new(fam.kind(), from, series)
}

struct Suite<'a> {
    cfg: &'a VerifyConfig,
    general: Result<GeneralRun>,
    classical: Result<ClassicalSolution>,
}

impl Suite<'_> {
    fn general(&self) -> Result<&GeneralRun> {
        self.general.as_ref().map_err(Clone::clone)
    }

    fn classical(&self) -> Result<&ClassicalSolution> {
        self.classical.as_ref().map_err(Clone::clone)
    }

    fn run(&self, name: &str) -> Result<()> {
        let cfg = self.cfg;
        let (n, k_max) = (cfg.order, cfg.k_max);
        match name {
            "two-point-assembly" => {
                let run = self.general()?;
                let cl = self.classical()?;
                let gk = two_point(&cl.r, &cl.s, k_max)?;
                same_family(name, &run.gk, &gk)
            }
            "classical-system" => {
                self.classical()?.check(k_max)?;
                self.general()?.families.check_classical()
            }
            "new-recursion-general" => {
                let run = self.general()?;
                run.families.check_new_recursion(&run.bridge, &run.simple.phi)?;
                let cl = self.classical()?;
                same_family(name, &run.families.r.up_to(k_max + 1), &cl.r)?;
                same_family(name, &run.families.s.up_to(k_max), &cl.s)
            }
            "bundle-relation" => self.general()?.families.check_bundle_relation(),
            "kernel-quadratic-general" => {
                let run = self.general()?;
                let phi = run.bridge.phi_general(&run.simple.phi, n)?;
                check_kernel_quadratic_general(&run.bridge, &phi)
            }
            "kernel-quadratic-simple" => check_kernel_quadratic_simple(&self.general()?.simple.phi),
            "new-recursion-simple" => {
                let run = self.general()?;
                run.simple.families.check_recursion(&run.simple.phi)
            }
            "simple-r-t-relation" => self.general()?.simple.families.check_r_t_relation(),
            "y-recursion" => verify_y_recursion(cfg.y_k_max),
            "simple-general-bridge" => self.general()?.bridge.check(),
            "limit-system" => {
                limits(n)?.check()?;
                closed_scalars().check()
            }
            "lambda-characterization" => {
                closed_scalars().check()?;
                if n < 2 {
                    return Ok(());
                }
                let a = lambda_of_g(&limits(n)?)?;
                let b = lambda_of_g_closed(n)?;
                match a.first_difference(&b) {
                    None => Ok(()),
                    Some(i) => Err(fail(name, format!("λ(g) routes differ at g^{i}"))),
                }
            }
            "t-equals-G-r-r" => {
                self.general()?.simple.families.check_t_g_r_r()?;
                verify_simple_closed(k_max + 1)
            }
            "sum-rule" => match sum_rule_violation(&self.general()?.gk) {
                None => Ok(()),
                Some(f) => Err(fail(name, format!("Σ_k [g^{f}]G_k ≠ ({}/2 + 2)[g^{f}]G_0", f))),
            },
            "stabilization" => {
                let lim = limits(n)?;
                let fam = &self.general()?.families;
                if let Some((k, i)) = fam.s.first_unstabilized(&lim.s_inf) {
                    return Err(fail(name, format!("[g^{i}]S_{k} ≠ [g^{i}]S_∞")));
                }
                if let Some((k, i)) = tail(&fam.r, 1).first_unstabilized(&lim.r_inf) {
                    return Err(fail(name, format!("[g^{i}]R_{k} ≠ [g^{i}]R_∞")));
                }
                Ok(())
            }
            "kernel-three-route" => self.kernel_three_route(),
            "closed-vs-recursion" => self.closed_vs_recursion(),
            "c-series" => {
                let param = theta_c_param(n.div_ceil(2).max(1))?;
                param.check()?;
                let c = &param.c_of_g;
                for j in 0..=c.trunc() {
                    let expect = if j % 2 == 1 { c_coefficient(j as u64 / 2) } else { int(0) };
                    if c.coeffs()[j] != expect {
                        return Err(fail(name, format!("[G^{j}]C = {} , expected {expect}", c.coeffs()[j])));
                    }
                }
                Ok(())
            }
            "critical-points" => {
                let sc = closed_scalars();
                let one = int(1);
                if sc.big_g2().eval(&one) != Some(rat(27, 256)) {
                    return Err(fail(name, "G² at λ = 1 is not 27/256"));
                }
                if sc.g4()?.eval(&one) != Some(rat(1, 432)) {
                    return Err(fail(name, "g⁴ at λ = 1 is not 1/432"));
                }
                Ok(())
            }
            "counting-integrality" => {
                let run = self.general()?;
                let fams = [
                    &run.families.r,
                    &run.families.s,
                    &run.families.t,
                    &run.gk,
                    &run.simple.families.r,
                    &run.simple.families.t,
                ];
                for fam in fams {
                    if let Some((k, i)) = fam.first_non_count() {
                        return Err(fail(name, format!("[{}^{i}]{}_{k} is not a count", fam.kind().weight_var(), fam.kind())));
                    }
                }
                Ok(())
            }
            "oracle-equivalence" => self.oracle_equivalence(),
            other => Err(Error::InvalidConfig(format!("unknown check {other:?}"))),
        }
    }

    fn kernel_three_route(&self) -> Result<()> {
        let name = "kernel-three-route";
        let b = self.cfg.kernel_bound;
        let need = 3 * b + 1;
        let mut rec = KernelTable::by_recurrence(b, b);
        if let Some((m, n)) = self.cfg.corrupt_psi {
            rec.corrupt(m, n);
        }
        let quad = KernelTable::from_phi(&phi_tilde_quadratic_route(b, need)?, b, b)?;
        let expl = KernelTable::from_phi(&phi_tilde_explicit_route(b, need)?, b, b)?;
        for (label, other) in [("quadratic", &quad), ("explicit", &expl)] {
            if let Some((m, n)) = rec.first_difference(other) {
                return Err(fail(
                    name,
                    format!("ψ_{{{m},{n}}}: recurrence {} vs {label} {}", rec.psi(m, n), other.psi(m, n)),
                ));
            }
        }
        if let Some((m, n)) = rec.first_non_count() {
            return Err(fail(name, format!("ψ_{{{m},{n}}} is not a count")));
        }
        Ok(())
    }

    fn closed_vs_recursion(&self) -> Result<()> {
        let name = "closed-vs-recursion";
        let (n, k_max) = (self.cfg.order, self.cfg.k_max);
        for k in 1..=k_max.max(1) {
            if assembled_gk(k)? != closed_gk(k) {
                return Err(fail(name, format!("assembled G_{k} differs from the compact form")));
            }
        }
        if n < 2 {
            return Ok(());
        }
        let run = self.general()?;
        let lam = lambda_of_g(&limits(n)?)?;
        let closed = expand_general(&lam, k_max)?;
        same_family(name, &closed.r, &run.families.r.up_to(k_max))?;
        same_family(name, &closed.s, &run.families.s.up_to(k_max))?;
        if k_max >= 1 {
            same_family(name, &closed.gk, &tail(&run.gk, 1))?;
        }
        let param = theta_c_param(n.div_ceil(2))?;
        let lam_simple = lambda_of_big_g(&param.theta_of_x, n)?;
        let simple = expand_simple(&lam_simple, k_max)?;
        same_family(name, &simple.r, &run.simple.families.r)?;
        same_family(name, &simple.t, &run.simple.families.t)
    }

    fn oracle_equivalence(&self) -> Result<()> {
        let name = "oracle-equivalence";
        let f_max = self.cfg.oracle_f_max.min(self.cfg.order) / 2 * 2;
        let run = self.general()?;
        let table = oracle_two_point(f_max, &OracleConfig::default())?;
        for (f, k, count) in table.rows() {
            if let Some(s) = run.gk.get(k) {
                if s.coeffs()[f] != int(count as i64) {
                    return Err(fail(name, format!("[g^{f}]G_{k} = {} but the oracle counts {count}", s.coeffs()[f])));
                }
            }
        }
        // ψ_{0,n} counts simple, chord-free maps with a triangular boundary
        let b = self.cfg.kernel_bound.min(2);
        let near = enumerate_near(
            3,
            2 * b + 1,
            NearFlags {
                simple: true,
                chord_free: true,
            },
            &OracleConfig::default(),
        )?;
        let rec = KernelTable::by_recurrence(0, b);
        for j in 0..=b {
            let count = near.get(2 * j + 1, 3);
            if *rec.psi(0, j) != int(count as i64) {
                return Err(fail(name, format!("ψ_{{0,{j}}} = {} but the oracle counts {count}", rec.psi(0, j))));
            }
        }
        Ok(())
    }
}

/// Runs every check in [`CHECKS`] order. Failures, including computation
/// errors, become report rows; nothing here panics on bad configuration.
pub fn run_checks(cfg: &VerifyConfig) -> Vec<CheckResult> {
    let suite = Suite {
        cfg,
        general: run_general(cfg.k_max, cfg.order),
        classical: classical_solve(cfg.k_max, cfg.order),
    };
    CHECKS
        .iter()
        .map(|&name| {
            let (status, detail) = match suite.run(name) {
                Ok(()) => (Status::Pass, String::new()),
                Err(e) => (Status::Fail, e.to_string()),
            };
            CheckResult {
                check: name.to_string(),
                status,
                detail,
            }
        })
        .collect()
}

/// First failing check, if any.
pub fn first_failure(report: &[CheckResult]) -> Option<&CheckResult> {
    report.iter().find(|r| r.status == Status::Fail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes() {
        let report = run_checks(&VerifyConfig::default());
        assert_eq!(report.len(), CHECKS.len());
        assert_eq!(first_failure(&report), None, "{report:#?}");
    }

    #[test]
    fn order_zero_is_vacuous() {
        let cfg = VerifyConfig {
            order: 0,
            k_max: 2,
            kernel_bound: 1,
            y_k_max: 3,
            ..VerifyConfig::default()
        };
        let report = run_checks(&cfg);
        assert_eq!(first_failure(&report), None, "{report:#?}");
    }

    #[test]
    fn corrupted_kernel_entry_is_named() {
        let cfg = VerifyConfig {
            order: 4,
            k_max: 2,
            kernel_bound: 3,
            y_k_max: 3,
            corrupt_psi: Some((1, 2)),
            ..VerifyConfig::default()
        };
        let report = run_checks(&cfg);
        let bad: Vec<_> = report.iter().filter(|r| r.status == Status::Fail).collect();
        assert_eq!(bad.len(), 1, "{bad:#?}");
        assert_eq!(bad[0].check, "kernel-three-route");
        assert!(bad[0].detail.contains("ψ_{1,2}"), "{}", bad[0].detail);
    }
}
