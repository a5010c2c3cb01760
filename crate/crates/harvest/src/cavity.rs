//! The physical scenario: two oscillator detectors in a massless scalar
//! field on a periodic cavity, with a UV cutoff of `N` left- and
//! right-moving modes each (no zero mode).

use faer::Mat;
use serde::{Deserialize, Serialize};

use crate::error::{HarvestError, Result};
use crate::gaussian::{CovarianceMatrix, PhaseSpaceLayout};

/// One cavity geometry: lengths in natural units (`c = hbar = k_B = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CavityConfig {
    /// Cavity length `L`.
    pub length: f64,
    /// Number of right-moving (= left-moving) field modes kept, `N >= 1`.
    pub n_field_modes: usize,
    /// Detector frequency (both detectors).
    pub detector_frequency: f64,
    /// Coupling strength (equal for both detectors).
    pub coupling: f64,
    /// Detector positions.
    pub x1: f64,
    pub x2: f64,
}

impl CavityConfig {
    pub fn new(
        length: f64,
        n_field_modes: usize,
        detector_frequency: f64,
        coupling: f64,
        x1: f64,
        x2: f64,
    ) -> Result<Self> {
        let cfg = Self {
            length,
            n_field_modes,
            detector_frequency,
            coupling,
            x1,
            x2,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.length > 0.0) {
            return Err(HarvestError::InvalidConfig("cavity length must be > 0".into()));
        }
        if self.n_field_modes == 0 {
            return Err(HarvestError::InvalidConfig("need at least one field mode".into()));
        }
        if !(self.detector_frequency > 0.0) {
            return Err(HarvestError::InvalidConfig(
                "detector frequency must be > 0".into(),
            ));
        }
        if !(self.coupling >= 0.0) {
            return Err(HarvestError::InvalidConfig("coupling must be >= 0".into()));
        }
        if !self.x1.is_finite() || !self.x2.is_finite() {
            return Err(HarvestError::InvalidConfig("positions must be finite".into()));
        }
        Ok(())
    }

    /// The parameter set used throughout the reference results:
    /// `L = 100`, `lambda = 0.05`, `Omega = 40 pi / L`, `N = 80`,
    /// detectors at distance `r` (placed at `x1 = 0`, `x2 = r`).
    pub fn reference(r: f64) -> Self {
        Self::reference_with_modes(r, 80)
    }

    /// Same as [`CavityConfig::reference`] with an explicit UV cutoff,
    /// for convergence checks.
    pub fn reference_with_modes(r: f64, n_field_modes: usize) -> Self {
        let length = 100.0;
        Self {
            length,
            n_field_modes,
            detector_frequency: 40.0 * std::f64::consts::PI / length,
            coupling: 0.05,
            x1: 0.0,
            x2: r,
        }
    }

    /// Detector separation `r = |x1 - x2|`.
    pub fn distance(&self) -> f64 {
        (self.x1 - self.x2).abs()
    }

    /// Total mode count: 2 detectors + 2N field modes.
    pub fn n_modes(&self) -> usize {
        2 + 2 * self.n_field_modes
    }

    pub fn layout(&self) -> PhaseSpaceLayout {
        PhaseSpaceLayout::new(self.n_modes()).expect("at least the detectors")
    }

    /// Phase-space dimension `4N + 4`.
    pub fn dim(&self) -> usize {
        2 * self.n_modes()
    }
}

/// Field temperature with `T = 0` meaning the vacuum (`beta = infinity`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldTemperature(f64);

impl FieldTemperature {
    pub fn new(t: f64) -> Result<Self> {
        if !(t >= 0.0) {
            return Err(HarvestError::InvalidConfig(format!(
                "temperature must be >= 0, got {t}"
            )));
        }
        Ok(Self(t))
    }

    pub const ZERO: FieldTemperature = FieldTemperature(0.0);

    pub fn value(&self) -> f64 {
        self.0
    }

    pub fn is_vacuum(&self) -> bool {
        self.0 == 0.0
    }

    /// Symplectic eigenvalue of a thermal mode of frequency `omega`:
    /// `nu = (e^{omega/T} + 1) / (e^{omega/T} - 1) = coth(omega / 2T)`,
    /// evaluated through `exp_m1` so small `omega/T` stays accurate.
    pub fn thermal_nu(&self, omega: f64) -> f64 {
        if self.is_vacuum() {
            return 1.0;
        }
        let x = omega / self.0;
        // 2/expm1(x) underflows to 0 for large x, giving nu -> 1
        1.0 + 2.0 / x.exp_m1()
    }
}

/// One retained field mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldMode {
    /// Mode label `n` (negative: left-moving).
    pub n: i64,
    /// Wavenumber `k_n = 2 pi n / L`.
    pub wavenumber: f64,
    /// Frequency `omega_n = |k_n|`.
    pub frequency: f64,
}

/// The `2N` field modes in layout order `n = -N, ..., -1, 1, ..., N`.
pub fn mode_table(cfg: &CavityConfig) -> Vec<FieldMode> {
    let n = cfg.n_field_modes as i64;
    (-n..=n)
        .filter(|&m| m != 0)
        .map(|m| {
            let k = 2.0 * std::f64::consts::PI * m as f64 / cfg.length;
            FieldMode {
                n: m,
                wavenumber: k,
                frequency: k.abs(),
            }
        })
        .collect()
}

/// Diagonal free-Hamiltonian matrix: the detector frequency on the first
/// four slots, then each mode frequency twice, in layout order.
pub fn free_hamiltonian_matrix(cfg: &CavityConfig) -> Mat<f64> {
    let dim = cfg.dim();
    let modes = mode_table(cfg);
    let mut diag = Vec::with_capacity(dim);
    diag.extend([cfg.detector_frequency; 4]);
    for mode in &modes {
        diag.push(mode.frequency);
        diag.push(mode.frequency);
    }
    Mat::from_fn(dim, dim, |i, j| if i == j { diag[i] } else { 0.0 })
}

/// Off-diagonal interaction matrix `2 lambda [[0, X], [X^T, 0]]`: detector
/// position quadratures couple to each field mode with strength
/// `cos(k_n x) / sqrt(4 pi |n|)` (q column) and `-sin(k_n x) / sqrt(4 pi |n|)`
/// (p column); the momentum rows vanish.
pub fn interaction_matrix(cfg: &CavityConfig) -> Mat<f64> {
    let dim = cfg.dim();
    let modes = mode_table(cfg);
    let mut m = Mat::<f64>::zeros(dim, dim);
    for (row, x) in [(0, cfg.x1), (2, cfg.x2)] {
        for (idx, mode) in modes.iter().enumerate() {
            let norm = (4.0 * std::f64::consts::PI * mode.n.unsigned_abs() as f64).sqrt();
            let phase = mode.wavenumber * x;
            let qcol = 4 + 2 * idx;
            let q = 2.0 * cfg.coupling * phase.cos() / norm;
            let p = -2.0 * cfg.coupling * phase.sin() / norm;
            m[(row, qcol)] = q;
            m[(row, qcol + 1)] = p;
            m[(qcol, row)] = q;
            m[(qcol + 1, row)] = p;
        }
    }
    m
}

/// `F_free + F_int`, the full symmetrized Hamiltonian matrix.
pub fn hamiltonian_matrix(cfg: &CavityConfig) -> Mat<f64> {
    let mut m = free_hamiltonian_matrix(cfg);
    let int = interaction_matrix(cfg);
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            m[(i, j)] += int[(i, j)];
        }
    }
    m
}

/// Thermal covariance of the field alone: `diag(nu_n, nu_n)` per mode.
/// At `T = 0` this is exactly the identity.
pub fn thermal_field_state(cfg: &CavityConfig, temperature: FieldTemperature) -> CovarianceMatrix {
    let modes = mode_table(cfg);
    let mut diag = Vec::with_capacity(4 * cfg.n_field_modes);
    for mode in &modes {
        let nu = temperature.thermal_nu(mode.frequency);
        diag.push(nu);
        diag.push(nu);
    }
    CovarianceMatrix::from_diagonal(&diag).expect("even length by construction")
}

/// Initial global state: detector ground states (+) thermal field.
pub fn initial_state(cfg: &CavityConfig, temperature: FieldTemperature) -> CovarianceMatrix {
    let mut diag = Vec::with_capacity(cfg.dim());
    diag.extend([1.0; 4]);
    let modes = mode_table(cfg);
    for mode in &modes {
        let nu = temperature.thermal_nu(mode.frequency);
        diag.push(nu);
        diag.push(nu);
    }
    CovarianceMatrix::from_diagonal(&diag).expect("even length by construction")
}

/// Equal-time field correlation function of the periodic cavity,
/// `C(r) = (1/L) sum_{n>0} (nu_n / omega_n) cos(omega_n r)`.
pub fn cavity_correlation_function(
    r: f64,
    temperature: FieldTemperature,
    cfg: &CavityConfig,
) -> f64 {
    let mut total = 0.0;
    for n in 1..=cfg.n_field_modes {
        let omega = 2.0 * std::f64::consts::PI * n as f64 / cfg.length;
        total += temperature.thermal_nu(omega) / omega * (omega * r).cos();
    }
    total / cfg.length
}

/// Free-space 3D reference curve `C_free(r) = (T / 4 pi r) coth(pi T r)`;
/// defined for `r > 0`, `T > 0` only.
pub fn free_space_correlation(r: f64, temperature: f64) -> Result<f64> {
    if !(r > 0.0) || !(temperature > 0.0) {
        return Err(HarvestError::Unphysical(format!(
            "free-space correlation needs r > 0 and T > 0, got r={r}, T={temperature}"
        )));
    }
    let x = std::f64::consts::PI * temperature * r;
    let coth = 1.0 + 2.0 / (2.0 * x).exp_m1();
    Ok(temperature / (4.0 * std::f64::consts::PI * r) * coth)
}
