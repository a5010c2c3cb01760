//! Correlation measures of the two-detector state: mutual information,
//! logarithmic negativity, and Gaussian quantum discord. All in bits.
//!
//! The symbols alpha/beta/gamma/delta name the four determinants of the
//! two-mode state; they are kept strictly separate from the inverse
//! temperature and the detector-field correlation block that reuse the
//! same letters elsewhere.

use serde::{Deserialize, Serialize};

use crate::decomposition::beam_split;
use crate::error::{HarvestError, Result};
use crate::evolution::TwoModeState;
use crate::gaussian::entropy_f;

/// Unified "numerically zero" threshold for clamps.
const ZERO_TOL: f64 = 1e-12;

fn single_mode_nu(det: f64) -> Result<f64> {
    if det < (1.0 - 1e-9) * (1.0 - 1e-9) {
        return Err(HarvestError::Unphysical(format!(
            "single-mode determinant {det} below 1"
        )));
    }
    Ok(det.max(1.0).sqrt())
}

/// Mutual information `I = S(sigma1) + S(sigma2) - S(sigma_d)`.
pub fn mutual_information(state: &TwoModeState) -> Result<f64> {
    let (alpha, beta, _, _) = state.determinants();
    let local = entropy_f(single_mode_nu(alpha)?)? + entropy_f(single_mode_nu(beta)?)?;
    let (nu1, nu2) = state.symplectic_eigenvalues()?;
    let joint = entropy_f(nu1)? + entropy_f(nu2)?;
    let i = local - joint;
    Ok(if i.abs() < ZERO_TOL { 0.0 } else { i })
}

/// The smaller partially-transposed symplectic eigenvalue,
/// `2 nu~_-^2 = Delta~ - sqrt(Delta~^2 - 4 delta)` with
/// `Delta~ = alpha + beta - 2 gamma`.
pub fn ppt_symplectic_eigenvalue(state: &TwoModeState) -> Result<f64> {
    let (alpha, beta, gamma, delta) = state.determinants();
    let delta_tilde = alpha + beta - 2.0 * gamma;
    let scale = delta_tilde.abs().max(delta.abs()).max(1.0);
    let radicand = delta_tilde * delta_tilde - 4.0 * delta;
    if radicand < -ZERO_TOL * scale * scale {
        return Err(HarvestError::Unphysical(format!(
            "partial-transpose discriminant {radicand:e} negative"
        )));
    }
    let nu_sq = 0.5 * (delta_tilde - radicand.max(0.0).sqrt());
    if nu_sq < -ZERO_TOL * scale {
        return Err(HarvestError::Unphysical(format!(
            "negative squared PPT eigenvalue {nu_sq:e}"
        )));
    }
    Ok(nu_sq.max(0.0).sqrt())
}

/// Logarithmic negativity `E_N = max(0, -log2 nu~_-)`.
pub fn logarithmic_negativity(state: &TwoModeState) -> Result<f64> {
    let nu = ppt_symplectic_eigenvalue(state)?;
    Ok((-nu.log2()).max(0.0))
}

/// Gaussian discord `D(1:2)` (Gaussian measurement on detector 2),
/// from the closed two-branch form.
pub fn gaussian_discord(state: &TwoModeState) -> Result<f64> {
    let (alpha, beta, gamma, delta) = state.determinants();
    let (nu1, nu2) = state.symplectic_eigenvalues()?;
    let e = measured_residual_determinant(alpha, beta, gamma, delta)?;
    let d = entropy_f(single_mode_nu(beta)?)? - entropy_f(nu1)? - entropy_f(nu2)?
        + entropy_f(e.sqrt().max(1.0))?;
    Ok(if d.abs() < ZERO_TOL { 0.0 } else { d.max(0.0) })
}

/// Same measure with the detector roles swapped, `D(2:1)`; used to verify
/// the exchange symmetry `D(1:2) = D(2:1)` of this artifact's states.
pub fn gaussian_discord_swapped(state: &TwoModeState) -> Result<f64> {
    let swapped = TwoModeState::from_blocks(
        state.sigma2().clone(),
        state.sigma1().clone(),
        state.gamma12().transpose().to_owned(),
    );
    gaussian_discord(&swapped)
}

/// The determinant `E` of the post-measurement conditional state, piecewise
/// by `(delta - alpha beta)^2 <= (1 + beta) gamma^2 (alpha + delta)`.
fn measured_residual_determinant(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Result<f64> {
    let lhs = (delta - alpha * beta).powi(2);
    let rhs = (1.0 + beta) * gamma * gamma * (alpha + delta);

    let first = || {
        let inner = gamma * gamma + (beta - 1.0) * (delta - alpha);
        let numer =
            2.0 * gamma * gamma + (beta - 1.0) * (delta - alpha) + 2.0 * gamma.abs() * inner.max(0.0).sqrt();
        numer / ((beta - 1.0) * (beta - 1.0))
    };
    let second = || {
        let radicand = gamma.powi(4) + (alpha * beta - delta).powi(2)
            - 2.0 * gamma * gamma * (alpha * beta + delta);
        (alpha * beta - gamma * gamma + delta - radicand.max(0.0).sqrt()) / (2.0 * beta)
    };

    // The two expressions coincide on the boundary, so the selection can be
    // a strict comparison; the first branch degenerates as beta -> 1, in
    // which case the second takes over.
    let e = if lhs <= rhs {
        let e1 = first();
        if e1.is_finite() {
            e1
        } else {
            second()
        }
    } else {
        second()
    };

    if e < -ZERO_TOL {
        return Err(HarvestError::Numerical(format!(
            "negative conditional determinant {e:e}"
        )));
    }
    Ok(e.max(0.0))
}

/// Sweep coordinates of one report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub t: f64,
    pub r: f64,
    pub temperature: f64,
}

/// Extra per-point diagnostics not part of the emitted record.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ReportDiagnostics {
    pub nu_tilde_minus: f64,
    pub det_alpha: f64,
    pub det_beta: f64,
    pub det_gamma: f64,
    pub det_delta: f64,
}

/// One row of sweep output: all three measures plus eigenvalue diagnostics
/// at a `(t, r, T)` point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub t: f64,
    pub r: f64,
    #[serde(rename = "T")]
    pub temperature: f64,
    #[serde(rename = "E_N")]
    pub log_negativity: f64,
    #[serde(rename = "I")]
    pub mutual_information: f64,
    #[serde(rename = "D")]
    pub discord: f64,
    pub nu1: f64,
    pub nu2: f64,
    pub nu_plus: f64,
    pub nu_minus: f64,
    #[serde(skip)]
    pub diagnostics: ReportDiagnostics,
}

/// Computes every measure of one evolved two-mode state.
pub fn correlation_report(state: &TwoModeState, coords: SweepPoint) -> Result<CorrelationReport> {
    let (nu1, nu2) = state.symplectic_eigenvalues()?;
    let split = beam_split(state)?;
    let (det_alpha, det_beta, det_gamma, det_delta) = state.determinants();
    Ok(CorrelationReport {
        t: coords.t,
        r: coords.r,
        temperature: coords.temperature,
        log_negativity: logarithmic_negativity(state)?,
        mutual_information: mutual_information(state)?,
        discord: gaussian_discord(state)?,
        nu1,
        nu2,
        nu_plus: split.nu_plus(),
        nu_minus: split.nu_minus(),
        diagnostics: ReportDiagnostics {
            nu_tilde_minus: ppt_symplectic_eigenvalue(state)?,
            det_alpha,
            det_beta,
            det_gamma,
            det_delta,
        },
    })
}
