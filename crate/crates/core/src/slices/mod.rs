//! Slice generating functions and the two-point function.
//!
//! General triangulations carry the face weight `g` ([`Var::G`]); simple
//! ones carry `G` ([`Var::GSimple`]). The families are
//!
//! * `R_k`, `S_k`, `T_k = S_k − S_0` in `g`, with limits `R_∞`, `S_∞`;
//! * `r_k`, `t_k` in `G`, the simple counterparts;
//! * `G_k` in `g`, the two-point function.

mod classical;
mod recursion;
mod two_point;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{Rat, Series, Var};
use crate::error::{Error, Result};

pub use classical::{classical_solve, limits, ClassicalSolution, Limits};
pub use recursion::{
    bridge_to_general, check_kernel_quadratic_general, check_kernel_quadratic_simple, general_families, new_recursion_simple, simple_limits, GeneralFamilies, ScalarBridge,
    SimpleFamilies,
};
pub use two_point::{sum_rule_violation, two_point};

/// Which slice family a table holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyKind {
    /// `R_k`
    R,
    /// `S_k`
    S,
    /// `T_k`
    T,
    /// `r_k`
    #[serde(rename = "r")]
    SmallR,
    /// `t_k`
    #[serde(rename = "t")]
    SmallT,
    /// `G_k`
    Gk,
}

impl FamilyKind {
    pub fn weight_var(self) -> Var {
        match self {
            FamilyKind::SmallR | FamilyKind::SmallT => Var::GSimple,
            _ => Var::G,
        }
    }

    pub fn parse(s: &str) -> Option<FamilyKind> {
        Some(match s {
            "R" => FamilyKind::R,
            "S" => FamilyKind::S,
            "T" => FamilyKind::T,
            "r" => FamilyKind::SmallR,
            "t" => FamilyKind::SmallT,
            "Gk" => FamilyKind::Gk,
            _ => return None,
        })
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::R => "R",
            FamilyKind::S => "S",
            FamilyKind::T => "T",
            FamilyKind::SmallR => "r",
            FamilyKind::SmallT => "t",
            FamilyKind::Gk => "Gk",
        })
    }
}

/// A family of series indexed by `k = start, start+1, …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    kind: FamilyKind,
    start: usize,
    series: Vec<Series>,
}

impl Family {
    pub fn new(kind: FamilyKind, start: usize, series: Vec<Series>) -> Self {
        debug_assert!(series.iter().all(|s| s.var() == kind.weight_var()));
        Family { kind, start, series }
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn start(&self) -> usize {
        self.start
    }

    /// Largest index present.
    pub fn k_max(&self) -> usize {
        self.start + self.series.len() - 1
    }

    pub fn get(&self, k: usize) -> Option<&Series> {
        k.checked_sub(self.start).and_then(|i| self.series.get(i))
    }

    /// `self.get(k)` for an index known to be present.
    ///
    /// # Panics
    /// If `k` is out of range.
    pub fn at(&self, k: usize) -> &Series {
        self.get(k)
            .unwrap_or_else(|| panic!("{}_{k} outside {}..={}", self.kind, self.start, self.k_max()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Series)> {
        self.series.iter().enumerate().map(move |(i, s)| (i + self.start, s))
    }

    /// Keeps `k ≤ k_max` only.
    pub fn up_to(&self, k_max: usize) -> Family {
        let n = (k_max + 1).saturating_sub(self.start).min(self.series.len());
        Family::new(self.kind, self.start, self.series[..n].to_vec())
    }

    /// First `(k, n)` whose coefficient is negative or not an integer.
    pub fn first_non_count(&self) -> Option<(usize, usize)> {
        self.iter().find_map(|(k, s)| {
            s.coeffs()
                .iter()
                .position(|c| !c.is_integer() || c < &Rat::default())
                .map(|n| (k, n))
        })
    }

    /// First `(k, n)` with `[var^n] X_k > [var^n] X_{k+1}`.
    pub fn first_decrease(&self) -> Option<(usize, usize)> {
        self.iter().zip(self.iter().skip(1)).find_map(|((k, a), (_, b))| {
            let n = a.trunc().min(b.trunc());
            (0..=n).find(|&i| a.coeffs()[i] > b.coeffs()[i]).map(|i| (k, i))
        })
    }

    /// First `(k, n)` with `n ≤ k` where `[var^n] X_k` differs from the
    /// limit.
    pub fn first_unstabilized(&self, limit: &Series) -> Option<(usize, usize)> {
        self.iter().find_map(|(k, s)| {
            let n = k.min(s.trunc()).min(limit.trunc());
            (0..=n).find(|&i| s.coeffs()[i] != limit.coeffs()[i]).map(|i| (k, i))
        })
    }

    /// First `(k, n)` where two families differ on their common range.
    pub fn first_difference(&self, other: &Family) -> Option<(usize, usize)> {
        self.iter()
            .filter_map(|(k, s)| other.get(k).map(|o| (k, s, o)))
            .find_map(|(k, s, o)| s.first_difference(o).map(|n| (k, n)))
    }
}

/// `Ok` when `lhs = rhs` to the common truncation; otherwise names the
/// first differing coefficient.
pub(crate) fn expect_equal(check: &str, at: &str, lhs: &Series, rhs: &Series) -> Result<()> {
    match lhs.first_difference(rhs) {
        None => Ok(()),
        Some(n) => Err(Error::inconsistent(
            check,
            format!(
                "{at}: coefficient of {}^{n} is {} on one side and {} on the other",
                lhs.var(),
                lhs.coeffs()[n],
                rhs.coeffs()[n]
            ),
        )),
    }
}

/// `Ok` when `s` vanishes to its truncation.
pub(crate) fn expect_zero(check: &str, at: &str, s: &Series) -> Result<()> {
    expect_equal(check, at, s, &Series::zero(s.var(), s.trunc()))
}
