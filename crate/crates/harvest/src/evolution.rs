//! Symplectic time evolution: the generator `K = Omega F_sym`, its cached
//! spectral decomposition, propagators `S(t) = exp(K t)`, and extraction of
//! the two-detector reduced state.
//!
//! A fixed-step RK4 integrator of `dS/dt = K S` is kept as an independent
//! cross-check of the spectral route.

use faer::linalg::solvers::DenseSolveCore;
use faer::{c64, Mat};

use crate::cavity::{hamiltonian_matrix, CavityConfig};
use crate::error::{HarvestError, Result};
use crate::gaussian::{max_norm, omega_times, CovarianceMatrix, PhaseSpaceLayout};

/// Tolerance on the leftover imaginary part when a propagator is assembled
/// from conjugate eigenpairs.
const REALIFICATION_TOL: f64 = 1e-8;

/// The evolution generator of one geometry, with its eigendecomposition
/// computed once and reused for every time and every initial state.
#[derive(Debug, Clone)]
pub struct PropagatorGenerator {
    cfg: CavityConfig,
    dim: usize,
    eigenvalues: Vec<c64>,
    vectors: Mat<c64>,
    inverse_vectors: Mat<c64>,
}

impl PropagatorGenerator {
    /// Assembles `K = Omega (F_free + F_int)` and diagonalizes it.
    pub fn build(cfg: &CavityConfig) -> Result<Self> {
        cfg.validate()?;
        let k = generator_matrix(cfg);
        let dim = k.nrows();
        let evd = k
            .eigen()
            .map_err(|e| HarvestError::Numerical(format!("eigensolver failed for {cfg:?}: {e:?}")))?;
        let eigenvalues: Vec<c64> = (0..dim).map(|i| evd.S()[i]).collect();
        let vectors = evd.U().to_owned();
        let inverse_vectors = vectors.partial_piv_lu().inverse();

        let gen = Self {
            cfg: *cfg,
            dim,
            eigenvalues,
            vectors,
            inverse_vectors,
        };
        gen.check_reconstruction(&k)?;
        Ok(gen)
    }

    fn check_reconstruction(&self, k: &Mat<f64>) -> Result<()> {
        let scale = max_norm(k);
        let recon = &scale_columns(&self.vectors, &self.eigenvalues) * &self.inverse_vectors;
        let mut worst: f64 = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let d = recon[(i, j)] - c64::new(k[(i, j)], 0.0);
                worst = worst.max(d.norm());
            }
        }
        if worst > 1e-9 * scale.max(1.0) {
            return Err(HarvestError::Numerical(format!(
                "eigendecomposition reconstruction error {worst:e} exceeds 1e-9 * {scale:e}"
            )));
        }
        Ok(())
    }

    /// Rebuilds a generator from cached spectral data; the caller vouches
    /// for the data (the disk cache stores exact bits).
    pub fn from_raw_parts(
        cfg: CavityConfig,
        eigenvalues: Vec<c64>,
        vectors: Mat<c64>,
        inverse_vectors: Mat<c64>,
    ) -> Result<Self> {
        let dim = cfg.dim();
        if eigenvalues.len() != dim || vectors.nrows() != dim || inverse_vectors.nrows() != dim {
            return Err(HarvestError::Dimension {
                expected: dim,
                got: eigenvalues.len(),
            });
        }
        Ok(Self {
            cfg,
            dim,
            eigenvalues,
            vectors,
            inverse_vectors,
        })
    }

    pub fn config(&self) -> &CavityConfig {
        &self.cfg
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eigenvalues(&self) -> &[c64] {
        &self.eigenvalues
    }

    pub fn vectors(&self) -> &Mat<c64> {
        &self.vectors
    }

    pub fn inverse_vectors(&self) -> &Mat<c64> {
        &self.inverse_vectors
    }

    /// The full propagator `S(t) = P exp(D t) P^{-1}`, realified from its
    /// conjugate eigenpairs. Negative `t` gives the inverse evolution.
    pub fn propagator(&self, t: f64) -> Result<Mat<f64>> {
        if t == 0.0 {
            return Ok(Mat::identity(self.dim, self.dim));
        }
        let coeffs: Vec<c64> = self.eigenvalues.iter().map(|l| (l * t).exp()).collect();
        let product = &scale_columns(&self.vectors, &coeffs) * &self.inverse_vectors;
        realify(&product)
    }

    /// Only the first four rows of `S(t)` — all that the detector block of
    /// an evolved diagonal initial state needs. Much cheaper than the full
    /// matrix on large systems.
    pub fn detector_rows(&self, t: f64) -> Result<Mat<f64>> {
        if t == 0.0 {
            return Ok(Mat::from_fn(4, self.dim, |i, j| if i == j { 1.0 } else { 0.0 }));
        }
        let coeffs: Vec<c64> = self.eigenvalues.iter().map(|l| (l * t).exp()).collect();
        let top = Mat::from_fn(4, self.dim, |i, j| self.vectors[(i, j)] * coeffs[j]);
        let product = &top * &self.inverse_vectors;
        realify(&product)
    }
}

/// `K = Omega F_sym` for a geometry.
pub fn generator_matrix(cfg: &CavityConfig) -> Mat<f64> {
    omega_times(&hamiltonian_matrix(cfg))
}

fn scale_columns(m: &Mat<c64>, coeffs: &[c64]) -> Mat<c64> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)] * coeffs[j])
}

fn realify(m: &Mat<c64>) -> Result<Mat<f64>> {
    let mut worst_imag: f64 = 0.0;
    let mut scale: f64 = 1.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            worst_imag = worst_imag.max(m[(i, j)].im.abs());
            scale = scale.max(m[(i, j)].re.abs());
        }
    }
    if worst_imag > REALIFICATION_TOL * scale {
        return Err(HarvestError::Numerical(format!(
            "residual imaginary part {worst_imag:e} after realification (scale {scale:e})"
        )));
    }
    Ok(Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)].re))
}

/// Classic fixed-step RK4 integration of `dS/dt = K S` from the identity;
/// validation oracle for [`PropagatorGenerator::propagator`].
pub fn integrate_propagator(cfg: &CavityConfig, t: f64, dt: f64) -> Result<Mat<f64>> {
    if !(dt > 0.0) {
        return Err(HarvestError::InvalidConfig("dt must be > 0".into()));
    }
    if !(t >= 0.0) {
        return Err(HarvestError::InvalidConfig(
            "oracle integration requires t >= 0".into(),
        ));
    }
    let k = generator_matrix(cfg);
    let dim = k.nrows();
    let steps = (t / dt).ceil().max(1.0) as usize;
    let h = t / steps as f64;

    let mut s = Mat::<f64>::identity(dim, dim);
    for _ in 0..steps {
        let k1 = &k * &s;
        let k2 = &k * &(&s + &k1 * (h / 2.0));
        let k3 = &k * &(&s + &k2 * (h / 2.0));
        let k4 = &k * &(&s + &k3 * h);
        s = &s + &(&(&k1 + &(&k2 * 2.0)) + &(&(&k3 * 2.0) + &k4)) * (h / 6.0);
    }
    Ok(s)
}

/// Congruence transform `S sigma S^T`, symmetrized to suppress roundoff.
pub fn evolve(sigma0: &CovarianceMatrix, s: &Mat<f64>) -> Result<CovarianceMatrix> {
    let dim = sigma0.dim();
    if s.nrows() != dim || s.ncols() != dim {
        return Err(HarvestError::Dimension {
            expected: dim,
            got: s.nrows(),
        });
    }
    let raw = s * sigma0.matrix() * s.transpose().to_owned();
    let sym = Mat::from_fn(dim, dim, |i, j| 0.5 * (raw[(i, j)] + raw[(j, i)]));
    CovarianceMatrix::new(sym, sigma0.layout())
}

/// The 4x4 detector-detector block of a two-mode state, split into the
/// reduced blocks `sigma1`, `sigma2` and the cross block `gamma12`.
#[derive(Debug, Clone)]
pub struct TwoModeState {
    sigma1: Mat<f64>,
    sigma2: Mat<f64>,
    gamma12: Mat<f64>,
}

impl TwoModeState {
    /// Builds from an assembled 4x4 covariance matrix.
    pub fn from_matrix(m: &Mat<f64>) -> Result<Self> {
        if m.nrows() != 4 || m.ncols() != 4 {
            return Err(HarvestError::Dimension {
                expected: 4,
                got: m.nrows(),
            });
        }
        let residual = crate::gaussian::symmetry_residual(m);
        if residual > 1e-8 {
            return Err(HarvestError::NotSymmetric {
                residual,
                tol: 1e-8,
            });
        }
        let block = |r0: usize, c0: usize| Mat::from_fn(2, 2, |i, j| m[(r0 + i, c0 + j)]);
        Ok(Self {
            sigma1: block(0, 0),
            sigma2: block(2, 2),
            gamma12: Mat::from_fn(2, 2, |i, j| 0.5 * (m[(i, 2 + j)] + m[(2 + j, i)])),
        })
    }

    pub fn from_blocks(sigma1: Mat<f64>, sigma2: Mat<f64>, gamma12: Mat<f64>) -> Self {
        Self {
            sigma1,
            sigma2,
            gamma12,
        }
    }

    pub fn sigma1(&self) -> &Mat<f64> {
        &self.sigma1
    }

    pub fn sigma2(&self) -> &Mat<f64> {
        &self.sigma2
    }

    pub fn gamma12(&self) -> &Mat<f64> {
        &self.gamma12
    }

    /// The assembled 4x4 matrix `[[sigma1, gamma12], [gamma12^T, sigma2]]`.
    pub fn matrix(&self) -> Mat<f64> {
        Mat::from_fn(4, 4, |i, j| match (i < 2, j < 2) {
            (true, true) => self.sigma1[(i, j)],
            (true, false) => self.gamma12[(i, j - 2)],
            (false, true) => self.gamma12[(j, i - 2)],
            (false, false) => self.sigma2[(i - 2, j - 2)],
        })
    }

    pub fn covariance(&self) -> Result<CovarianceMatrix> {
        CovarianceMatrix::new(self.matrix(), PhaseSpaceLayout::new(2)?)
    }

    /// Symplectic eigenvalues `(nu1, nu2)` of the 4x4 state, ascending.
    pub fn symplectic_eigenvalues(&self) -> Result<(f64, f64)> {
        let nus = self.covariance()?.symplectic_eigenvalues()?;
        Ok((nus[0], nus[1]))
    }

    /// The four determinants `(det sigma1, det sigma2, det gamma12, det sigma_d)`.
    pub fn determinants(&self) -> (f64, f64, f64, f64) {
        let det2 = |m: &Mat<f64>| m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
        (
            det2(&self.sigma1),
            det2(&self.sigma2),
            det2(&self.gamma12),
            self.matrix().determinant(),
        )
    }

    /// Max-norm of `sigma1 - sigma2` and of `gamma12 - gamma12^T` combined:
    /// how far the state is from exchange symmetry.
    pub fn exchange_asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.sigma1[(i, j)] - self.sigma2[(i, j)]).abs());
                worst = worst.max((self.gamma12[(i, j)] - self.gamma12[(j, i)]).abs());
            }
        }
        worst
    }
}

/// Extracts the two-detector reduced state: the top-left 4x4 block.
pub fn detector_state(sigma: &CovarianceMatrix) -> Result<TwoModeState> {
    if sigma.dim() < 4 {
        return Err(HarvestError::Dimension {
            expected: 4,
            got: sigma.dim(),
        });
    }
    let m = Mat::from_fn(4, 4, |i, j| sigma.matrix()[(i, j)]);
    TwoModeState::from_matrix(&m)
}

/// Detector block of `S sigma0 S^T` for a diagonal initial state, computed
/// from the four detector rows of `S` only.
pub fn detector_state_from_rows(rows: &Mat<f64>, initial_diag: &[f64]) -> Result<TwoModeState> {
    if rows.nrows() != 4 || rows.ncols() != initial_diag.len() {
        return Err(HarvestError::Dimension {
            expected: initial_diag.len(),
            got: rows.ncols(),
        });
    }
    let mut block = Mat::<f64>::zeros(4, 4);
    for i in 0..4 {
        for j in i..4 {
            let mut acc = 0.0;
            for k in 0..initial_diag.len() {
                acc += rows[(i, k)] * initial_diag[k] * rows[(j, k)];
            }
            block[(i, j)] = acc;
            block[(j, i)] = acc;
        }
    }
    TwoModeState::from_matrix(&block)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cavity::{initial_state, FieldTemperature};
    use crate::gaussian::{is_symplectic, von_neumann_entropy};
    use std::f64::consts::PI;

    fn toy_config() -> CavityConfig {
        CavityConfig::new(100.0, 10, 40.0 * PI / 100.0, 0.05, 0.0, 4.0).unwrap()
    }

    fn decoupled_config() -> CavityConfig {
        CavityConfig::new(100.0, 3, 2.0, 0.0, 0.0, 4.0).unwrap()
    }

    #[test]
    fn generator_shape_and_trace() {
        let cfg = CavityConfig::reference(4.0);
        let k = generator_matrix(&cfg);
        assert_eq!(k.nrows(), 324);
        let trace: f64 = (0..324).map(|i| k[(i, i)]).sum();
        assert!(trace.abs() < 1e-12);
    }

    #[test]
    fn decoupled_generator_spectrum() {
        let cfg = decoupled_config();
        let gen = PropagatorGenerator::build(&cfg).unwrap();
        // detector-block eigenvalues +/- i Omega_det appear (multiplicity 2)
        let hits = gen
            .eigenvalues()
            .iter()
            .filter(|l| l.re.abs() < 1e-10 && (l.im.abs() - 2.0).abs() < 1e-10)
            .count();
        assert_eq!(hits, 4);
    }

    #[test]
    fn propagator_at_zero_is_identity() {
        let gen = PropagatorGenerator::build(&toy_config()).unwrap();
        let s = gen.propagator(0.0).unwrap();
        for i in 0..s.nrows() {
            for j in 0..s.ncols() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((s[(i, j)] - want).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn decoupled_evolution_is_rotation() {
        let cfg = decoupled_config();
        let gen = PropagatorGenerator::build(&cfg).unwrap();
        let t = 0.7;
        let s = gen.propagator(t).unwrap();
        let theta = cfg.detector_frequency * t;
        let want = [[theta.cos(), theta.sin()], [-theta.sin(), theta.cos()]];
        for mode in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    assert!(
                        (s[(2 * mode + i, 2 * mode + j)] - want[i][j]).abs() < 1e-10,
                        "detector rotation block mismatch"
                    );
                }
            }
        }
        // no detector-field mixing at zero coupling
        for i in 0..4 {
            for j in 4..s.ncols() {
                assert!(s[(i, j)].abs() < 1e-12);
            }
        }
    }

    #[test]
    fn propagator_is_symplectic_and_forms_a_group() {
        let gen = PropagatorGenerator::build(&toy_config()).unwrap();
        for (t1, t2) in [(0.5, 1.3), (2.0, -0.7), (10.0, 3.9)] {
            let s1 = gen.propagator(t1).unwrap();
            let s2 = gen.propagator(t2).unwrap();
            let s12 = gen.propagator(t1 + t2).unwrap();
            assert!(is_symplectic(&s1, 1e-9).unwrap());
            let product = &s1 * &s2;
            let mut worst: f64 = 0.0;
            for i in 0..product.nrows() {
                for j in 0..product.ncols() {
                    worst = worst.max((product[(i, j)] - s12[(i, j)]).abs());
                }
            }
            assert!(worst < 1e-8, "group defect {worst:e} at ({t1}, {t2})");
        }
    }

    #[test]
    fn rk4_matches_closed_form_rotation() {
        let cfg = decoupled_config();
        let s = integrate_propagator(&cfg, 1.0, 1e-4).unwrap();
        let theta = cfg.detector_frequency;
        assert!((s[(0, 0)] - theta.cos()).abs() < 1e-10);
        assert!((s[(0, 1)] - theta.sin()).abs() < 1e-10);
    }

    #[test]
    fn rk4_matches_spectral_propagator() {
        let cfg = toy_config();
        let gen = PropagatorGenerator::build(&cfg).unwrap();
        let spectral = gen.propagator(2.0).unwrap();
        let rk4 = integrate_propagator(&cfg, 2.0, 1e-3).unwrap();
        let mut worst: f64 = 0.0;
        for i in 0..spectral.nrows() {
            for j in 0..spectral.ncols() {
                worst = worst.max((spectral[(i, j)] - rk4[(i, j)]).abs());
            }
        }
        assert!(worst < 1e-6, "oracle deviation {worst:e}");
    }

    #[test]
    fn rk4_is_fourth_order() {
        let cfg = toy_config();
        let gen = PropagatorGenerator::build(&cfg).unwrap();
        let reference = gen.propagator(2.0).unwrap();
        let deviation = |dt: f64| {
            let s = integrate_propagator(&cfg, 2.0, dt).unwrap();
            let mut worst: f64 = 0.0;
            for i in 0..s.nrows() {
                for j in 0..s.ncols() {
                    worst = worst.max((s[(i, j)] - reference[(i, j)]).abs());
                }
            }
            worst
        };
        let coarse = deviation(0.02);
        let fine = deviation(0.01);
        let ratio = coarse / fine;
        assert!(
            (8.0..32.0).contains(&ratio),
            "expected ~16x shrink, got {ratio} ({coarse:e} -> {fine:e})"
        );
    }

    #[test]
    fn evolve_identity_and_purity() {
        let cfg = toy_config();
        let sigma0 = initial_state(&cfg, FieldTemperature::ZERO);
        let gen = PropagatorGenerator::build(&cfg).unwrap();

        let unchanged = evolve(&sigma0, &Mat::identity(sigma0.dim(), sigma0.dim())).unwrap();
        assert_eq!(unchanged.matrix(), sigma0.matrix());

        for t in [0.5, 2.0, 20.0] {
            let s = gen.propagator(t).unwrap();
            let sigma = evolve(&sigma0, &s).unwrap();
            assert!(von_neumann_entropy(&sigma).unwrap() < 1e-6);
        }
    }

    #[test]
    fn propagator_is_state_independent() {
        let cfg = toy_config();
        let gen = PropagatorGenerator::build(&cfg).unwrap();
        let s = gen.propagator(2.0).unwrap();
        let cold = evolve(&initial_state(&cfg, FieldTemperature::ZERO), &s).unwrap();
        let hot = evolve(
            &initial_state(&cfg, FieldTemperature::new(10.0).unwrap()),
            &s,
        )
        .unwrap();
        // same S, different detector blocks
        let mut diff: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                diff = diff.max((cold.matrix()[(i, j)] - hot.matrix()[(i, j)]).abs());
            }
        }
        assert!(diff > 1e-3);
    }

    #[test]
    fn detector_state_of_initial_state() {
        let cfg = toy_config();
        let sigma0 = initial_state(&cfg, FieldTemperature::new(5.0).unwrap());
        let s = detector_state(&sigma0).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert_eq!(s.sigma1()[(i, j)], want);
                assert_eq!(s.sigma2()[(i, j)], want);
                assert_eq!(s.gamma12()[(i, j)], 0.0);
            }
        }
    }

    #[test]
    fn cross_block_grows_quadratically() {
        let cfg = toy_config();
        let gen = PropagatorGenerator::build(&cfg).unwrap();
        let sigma0 = initial_state(&cfg, FieldTemperature::ZERO);
        let block = |t: f64| {
            let s = gen.propagator(t).unwrap();
            detector_state(&evolve(&sigma0, &s).unwrap()).unwrap()
        };
        let full = block(0.05);
        let half = block(0.025);
        // The interaction drives the momenta, so the cross block is born in
        // its pp entry; that dominant entry (and the max norm) scale as t^2.
        // The qq entry only fills in at t^4 through free rotation.
        let norm = |s: &TwoModeState| {
            let mut worst: f64 = 0.0;
            for i in 0..2 {
                for j in 0..2 {
                    worst = worst.max(s.gamma12()[(i, j)].abs());
                }
            }
            worst
        };
        let ratio = norm(&full) / norm(&half);
        assert!((3.8..=4.2).contains(&ratio), "max-norm ratio {ratio}");
        let pp = full.gamma12()[(1, 1)] / half.gamma12()[(1, 1)];
        assert!((3.8..=4.2).contains(&pp), "pp ratio {pp}");
        let qq = full.gamma12()[(0, 0)] / half.gamma12()[(0, 0)];
        assert!((14.0..=18.0).contains(&qq), "qq ratio {qq}");
    }

    #[test]
    fn exchange_symmetry_of_evolved_state() {
        let cfg = toy_config();
        let gen = PropagatorGenerator::build(&cfg).unwrap();
        let sigma0 = initial_state(&cfg, FieldTemperature::ZERO);
        let s = gen.propagator(2.0).unwrap();
        let two = detector_state(&evolve(&sigma0, &s).unwrap()).unwrap();
        assert!(two.exchange_asymmetry() < 1e-8);
    }

    #[test]
    fn detector_rows_match_full_propagator() {
        let cfg = toy_config();
        let gen = PropagatorGenerator::build(&cfg).unwrap();
        let sigma0 = initial_state(&cfg, FieldTemperature::new(2.0).unwrap());
        let diag: Vec<f64> = (0..sigma0.dim()).map(|i| sigma0.matrix()[(i, i)]).collect();

        let s = gen.propagator(1.7).unwrap();
        let slow = detector_state(&evolve(&sigma0, &s).unwrap()).unwrap();
        let rows = gen.detector_rows(1.7).unwrap();
        let fast = detector_state_from_rows(&rows, &diag).unwrap();

        for i in 0..4 {
            for j in 0..4 {
                assert!((slow.matrix()[(i, j)] - fast.matrix()[(i, j)]).abs() < 1e-10);
            }
        }
    }
}
