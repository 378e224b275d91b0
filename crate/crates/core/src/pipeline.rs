//! End-to-end computation of the slice families through the new recursion.

use crate::algebra::BiSeries;
use crate::error::Result;
use crate::kernel::phi_tilde_by_recurrence;
use crate::slices::{
    bridge_to_general, general_families, new_recursion_simple, two_point, Family, GeneralFamilies, ScalarBridge,
    SimpleFamilies,
};

/// `r_k`, `t_k` for `k ≤ k_max` at `G`-order `order`.
#[derive(Debug, Clone)]
pub struct SimpleRun {
    pub phi: BiSeries,
    pub families: SimpleFamilies,
}

pub fn run_simple(k_max: usize, order: usize) -> Result<SimpleRun> {
    let phi = phi_tilde_by_recurrence(order, order);
    let families = new_recursion_simple(&phi, k_max, order)?;
    Ok(SimpleRun { phi, families })
}

/// `R_k`, `S_k`, `T_k` for `k ≤ k_max + 1` and `G_k` for `k ≤ k_max`, at
/// `g`-order `order`.
#[derive(Debug, Clone)]
pub struct GeneralRun {
    pub simple: SimpleRun,
    pub bridge: ScalarBridge,
    pub families: GeneralFamilies,
    pub gk: Family,
}

pub fn run_general(k_max: usize, order: usize) -> Result<GeneralRun> {
    let simple = run_simple(k_max + 1, order)?;
    let bridge = bridge_to_general(&simple.phi, order)?;
    let families = general_families(&bridge, &simple.families)?;
    let gk = two_point(&families.r, &families.s, k_max)?;
    Ok(GeneralRun {
        simple,
        bridge,
        families,
        gk,
    })
}
