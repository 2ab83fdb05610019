//! Quantitative screening of Courant-sharp candidates on the cube.
//!
//! If `λ_k` is Courant sharp then every one of its `k` nodal domains has first eigenvalue
//! `λ_k`, and Faber–Krahn in dimension three forces `λ_k^{3/2} / k ≥ 4π/3`. Combining this
//! with a lattice-point lower bound on `N(λ)` gives a cubic inequality in `μ = √λ` whose
//! only real root caps Courant-sharp eigenvalues at `λ < 48.7`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::{enumerate_groups, BoxSpec, EigenvalueGroup};

/// `4π/3`, the Faber–Krahn constant for the cube, `λ^{3/2}/k` must reach it.
pub const FABER_KRAHN_RATIO: f64 = 4.0 * PI / 3.0;

const CUTOFF_BRACKET: (f64, f64) = (1.0, 20.0);
const CUTOFF_TOLERANCE: f64 = 1e-6;

/// `λ^{3/2} / k`.
pub fn fk_ratio(lambda: f64, k: u64) -> f64 {
    lambda.powf(1.5) / k as f64
}

/// Necessary condition for `λ_k` to be Courant sharp: `λ^{3/2} / k ≥ 4π/3`.
///
/// Non-positive `lambda` or `k = 0` never pass.
pub fn faber_krahn_threshold(lambda: f64, k: u64) -> bool {
    if !(lambda > 0.0) || k == 0 {
        return false;
    }
    fk_ratio(lambda, k) >= FABER_KRAHN_RATIO
}

/// Lower bound on the counting function of the cube:
/// `N(λ) > (π/6) λ^{3/2} − (3π/4) λ + 3 √(λ − 2) − 1` for `λ ≥ 3`.
pub fn lattice_lower_bound(lambda: f64) -> Result<f64> {
    if !(lambda >= 3.0) || !lambda.is_finite() {
        return Err(Error::Domain(format!("lattice bound needs lambda >= 3, got {lambda}")));
    }
    Ok(PI / 6.0 * lambda.powf(1.5) - 0.75 * PI * lambda + 3.0 * (lambda - 2.0).sqrt() - 1.0)
}

/// `(3/(4π) − π/6) μ³ + (3π/4) μ² − 3μ + 3`; positive exactly on the μ range where a
/// Courant-sharp eigenvalue `λ = μ²` is not yet ruled out.
pub fn pleijel_polynomial(mu: f64) -> f64 {
    let c3 = 3.0 / (4.0 * PI) - PI / 6.0;
    ((c3 * mu + 0.75 * PI) * mu - 3.0) * mu + 3.0
}

fn pleijel_derivative(mu: f64) -> f64 {
    let c3 = 3.0 / (4.0 * PI) - PI / 6.0;
    (3.0 * c3 * mu + 1.5 * PI) * mu - 3.0
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PleijelCutoff {
    pub mu_root: f64,
    /// `mu_root²`; Courant-sharp eigenvalues lie strictly below it.
    pub lambda_cutoff: f64,
}

/// Root of [`pleijel_polynomial`] on `[1, 20]`: bisection to `1e-6`, then one Newton step.
pub fn pleijel_cutoff() -> Result<PleijelCutoff> {
    let (mut lo, mut hi) = CUTOFF_BRACKET;
    let (f_lo, f_hi) = (pleijel_polynomial(lo), pleijel_polynomial(hi));
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoConvergence(format!(
            "no sign change on [{lo}, {hi}]: f = {f_lo}, {f_hi}"
        )));
    }
    let mut iterations = 0;
    while hi - lo > CUTOFF_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if pleijel_polynomial(mid).signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
        if iterations > 200 {
            return Err(Error::NoConvergence("bisection did not shrink the bracket".into()));
        }
    }
    let mid = 0.5 * (lo + hi);
    let slope = pleijel_derivative(mid);
    let mut mu = mid;
    if slope != 0.0 {
        let polished = mid - pleijel_polynomial(mid) / slope;
        if (lo..=hi).contains(&polished) {
            mu = polished;
        }
    }
    Ok(PleijelCutoff { mu_root: mu, lambda_cutoff: mu * mu })
}

/// Asymptotic bound `9 / (2π²)` on `μ_k / k` from Faber–Krahn and Weyl's law in 3D.
pub fn pleijel_asymptotic_ratio() -> f64 {
    9.0 / (2.0 * PI * PI)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScreeningRecord {
    pub group: EigenvalueGroup,
    /// `λ^{3/2} / k_min`.
    pub ratio: f64,
    pub fk_pass: bool,
    /// `λ_{k_min − 1} < λ_{k_min}`; holds for the first index of every group.
    pub simple_start: bool,
    pub candidate: bool,
}

impl ScreeningRecord {
    pub fn from_group(group: EigenvalueGroup) -> Self {
        let ratio = fk_ratio(group.value, group.k_min);
        let fk_pass = faber_krahn_threshold(group.value, group.k_min);
        ScreeningRecord { group, ratio, fk_pass, simple_start: true, candidate: fk_pass }
    }
}

/// Screens every group up to `lambda_max`.
///
/// Only `k_min` of a group can be Courant sharp, since `λ_{k−1} < λ_k` is necessary.
/// Groups past the cutoff of [`pleijel_cutoff`] are reported but never pass on the cube.
pub fn screen_candidates(bx: &BoxSpec, lambda_max: f64) -> Result<Vec<ScreeningRecord>> {
    Ok(enumerate_groups(bx, lambda_max)?
        .into_iter()
        .map(ScreeningRecord::from_group)
        .collect())
}

/// Whether screening up to `lambda_max` covers every eigenvalue below the cutoff.
pub fn covers_cutoff(bx: &BoxSpec, lambda_max: f64, cutoff: &PleijelCutoff) -> Result<bool> {
    if lambda_max >= cutoff.lambda_cutoff {
        return Ok(true);
    }
    let beyond = enumerate_groups(bx, cutoff.lambda_cutoff.max(bx.ground_state()))?;
    Ok(beyond.iter().all(|g| g.value <= lambda_max || g.value >= cutoff.lambda_cutoff))
}
