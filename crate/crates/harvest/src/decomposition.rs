//! The sum/difference (+/-) mode analysis: a 50:50 beam splitter turns the
//! exchange-symmetric detector pair into a product of two single-mode
//! states, whose effective couplings and eigenvalues predict when and how
//! strongly correlations are harvested.

use faer::Mat;

use crate::cavity::{mode_table, CavityConfig};
use crate::error::{HarvestError, Result};
use crate::evolution::TwoModeState;
use crate::gaussian::entropy_f;

/// The fixed 50:50 beam splitter `(1/sqrt 2) [[-I2, I2], [I2, I2]]`.
/// Symmetric, orthogonal, its own inverse, and symplectic.
pub fn beam_splitter_matrix() -> Mat<f64> {
    let c = std::f64::consts::FRAC_1_SQRT_2;
    Mat::from_fn(4, 4, |i, j| {
        let on_diag_block = (i < 2) == (j < 2);
        if i % 2 != j % 2 {
            0.0
        } else if on_diag_block && i < 2 {
            -c
        } else {
            c
        }
    })
}

/// Outcome of splitting an exchange-symmetric two-mode state into its
/// decoupled (-) and (+) modes, `sigma_-+ = sigma1 -+ gamma12`,
/// with the (-) mode first.
#[derive(Debug, Clone)]
pub struct PlusMinusDecomposition {
    sigma_minus: Mat<f64>,
    sigma_plus: Mat<f64>,
    nu_minus: f64,
    nu_plus: f64,
    off_block_residual: f64,
}

impl PlusMinusDecomposition {
    pub fn sigma_minus(&self) -> &Mat<f64> {
        &self.sigma_minus
    }

    pub fn sigma_plus(&self) -> &Mat<f64> {
        &self.sigma_plus
    }

    pub fn nu_minus(&self) -> f64 {
        self.nu_minus
    }

    pub fn nu_plus(&self) -> f64 {
        self.nu_plus
    }

    /// Max-norm of the off-diagonal block after the beam splitter; below
    /// 1e-8 for exchange-symmetric inputs.
    pub fn off_block_residual(&self) -> f64 {
        self.off_block_residual
    }

    /// Reassembles the detector-detector state:
    /// `sigma1 = (sigma_+ + sigma_-)/2`, `gamma12 = (sigma_+ - sigma_-)/2`.
    pub fn reassemble(&self) -> TwoModeState {
        let sigma1 = Mat::from_fn(2, 2, |i, j| {
            0.5 * (self.sigma_plus[(i, j)] + self.sigma_minus[(i, j)])
        });
        let gamma12 = Mat::from_fn(2, 2, |i, j| {
            0.5 * (self.sigma_plus[(i, j)] - self.sigma_minus[(i, j)])
        });
        TwoModeState::from_blocks(sigma1.clone(), sigma1, gamma12)
    }
}

/// Applies the 50:50 beam splitter to an exchange-symmetric state.
/// Errors if `sigma1 != sigma2` or `gamma12` is asymmetric beyond 1e-8.
pub fn beam_split(state: &TwoModeState) -> Result<PlusMinusDecomposition> {
    let asym = state.exchange_asymmetry();
    if asym > 1e-8 {
        return Err(HarvestError::AsymmetricState(asym));
    }
    let sigma_minus = Mat::from_fn(2, 2, |i, j| state.sigma1()[(i, j)] - state.gamma12()[(i, j)]);
    let sigma_plus = Mat::from_fn(2, 2, |i, j| state.sigma1()[(i, j)] + state.gamma12()[(i, j)]);

    let bs = beam_splitter_matrix();
    let transformed = &bs * state.matrix() * bs.transpose().to_owned();
    let mut off: f64 = 0.0;
    for i in 0..2 {
        for j in 2..4 {
            off = off.max(transformed[(i, j)].abs());
            off = off.max(transformed[(j, i)].abs());
        }
    }

    let nu_of = |m: &Mat<f64>| -> Result<f64> {
        let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
        if det < (1.0 - 1e-9) * (1.0 - 1e-9) {
            return Err(HarvestError::Unphysical(format!(
                "single-mode determinant {det} below 1"
            )));
        }
        Ok(det.max(1.0).sqrt())
    };
    let nu_minus = nu_of(&sigma_minus)?;
    let nu_plus = nu_of(&sigma_plus)?;

    Ok(PlusMinusDecomposition {
        sigma_minus,
        sigma_plus,
        nu_minus,
        nu_plus,
        off_block_residual: off,
    })
}

/// Effective coupling magnitudes of each field mode to the (+)/(-) modes:
/// `c_+ = sqrt 2 |cos(k_n r / 2)|`, `c_- = sqrt 2 |sin(k_n r / 2)|`
/// (the overall phase is dropped; `c_+^2 + c_-^2 = 2` per mode).
#[derive(Debug, Clone, Copy)]
pub struct ModeCoupling {
    pub n: i64,
    pub frequency: f64,
    pub c_plus: f64,
    pub c_minus: f64,
}

pub fn mode_function_couplings(r: f64, cfg: &CavityConfig) -> Vec<ModeCoupling> {
    let sqrt2 = std::f64::consts::SQRT_2;
    mode_table(cfg)
        .iter()
        .map(|mode| {
            let half = 0.5 * mode.wavenumber * r;
            ModeCoupling {
                n: mode.n,
                frequency: mode.frequency,
                c_plus: sqrt2 * half.cos().abs(),
                c_minus: sqrt2 * half.sin().abs(),
            }
        })
        .collect()
}

/// Mutual information of an exchange-symmetric state whose (+)/(-) modes
/// are exactly thermal: `I = 2 f((nu1 + nu2)/2) - f(nu1) - f(nu2)`.
pub fn thermal_approx_mutual_information(nu1: f64, nu2: f64) -> Result<f64> {
    let mid = entropy_f(0.5 * (nu1 + nu2))?;
    Ok((2.0 * mid - entropy_f(nu1)? - entropy_f(nu2)?).max(0.0))
}

/// Whether any passive (energy-preserving) operation can entangle the
/// product `sigma_- (+) sigma_+`: true iff the product of the two smallest
/// ordinary eigenvalues is below 1. Returns `(entangling_possible, product)`.
pub fn passive_entanglement_criterion(d: &PlusMinusDecomposition) -> (bool, f64) {
    let eigs2 = |m: &Mat<f64>| {
        // closed-form symmetric 2x2 eigenvalues
        let half_trace = 0.5 * (m[(0, 0)] + m[(1, 1)]);
        let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
        let disc = (half_trace * half_trace - det).max(0.0).sqrt();
        [half_trace - disc, half_trace + disc]
    };
    let mut all: Vec<f64> = eigs2(&d.sigma_minus).into_iter().collect();
    all.extend(eigs2(&d.sigma_plus));
    all.sort_by(f64::total_cmp);
    let product = all[0] * all[1];
    (product < 1.0, product)
}
