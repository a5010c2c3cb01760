//! Phase-space foundations: the symplectic form, symplectic eigenvalues,
//! entropies, and covariance-matrix bookkeeping.
//!
//! All matrices use the qp-interleaved layout `(q_1, p_1, q_2, p_2, ...)`.
//! Entropies are in bits (base-2 logarithms throughout).

use faer::Mat;

use crate::error::{HarvestError, Result};

/// Slack below 1 within which a symplectic eigenvalue is treated as roundoff
/// and clamped; anything lower is reported as unphysical.
pub const PHYSICAL_SLACK: f64 = 1e-9;

/// Symmetry tolerance for covariance matrices.
pub const SYMMETRY_TOL: f64 = 1e-10;

/// Ordering of modes in phase space: `n_modes` modes, two slots `(q, p)` each.
///
/// When detectors are present they occupy modes 0 and 1 (slots 0..4); field
/// modes follow in the order `n = -N, ..., -1, 1, ..., N` (no zero mode).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhaseSpaceLayout {
    n_modes: usize,
}

impl PhaseSpaceLayout {
    pub fn new(n_modes: usize) -> Result<Self> {
        if n_modes == 0 {
            return Err(HarvestError::InvalidConfig(
                "phase space needs at least one mode".into(),
            ));
        }
        Ok(Self { n_modes })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    /// Full phase-space dimension, `2 * n_modes`.
    pub fn dim(&self) -> usize {
        2 * self.n_modes
    }
}

/// A real symmetric covariance matrix over a [`PhaseSpaceLayout`]
/// (zero-mean convention; no displacement vector is stored).
#[derive(Debug, Clone)]
pub struct CovarianceMatrix {
    entries: Mat<f64>,
    layout: PhaseSpaceLayout,
}

impl CovarianceMatrix {
    /// Wraps a matrix, checking its shape and symmetry (tolerance 1e-10).
    pub fn new(entries: Mat<f64>, layout: PhaseSpaceLayout) -> Result<Self> {
        let dim = layout.dim();
        if entries.nrows() != dim || entries.ncols() != dim {
            return Err(HarvestError::Dimension {
                expected: dim,
                got: entries.nrows(),
            });
        }
        let residual = symmetry_residual(&entries);
        if residual > SYMMETRY_TOL {
            return Err(HarvestError::NotSymmetric {
                residual,
                tol: SYMMETRY_TOL,
            });
        }
        Ok(Self { entries, layout })
    }

    /// Identity covariance: every mode in its ground state.
    pub fn vacuum(layout: PhaseSpaceLayout) -> Self {
        let dim = layout.dim();
        Self {
            entries: Mat::identity(dim, dim),
            layout,
        }
    }

    /// Diagonal covariance from per-slot entries.
    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        if diag.len() % 2 != 0 {
            return Err(HarvestError::OddDimension(diag.len()));
        }
        let layout = PhaseSpaceLayout::new(diag.len() / 2)?;
        let dim = diag.len();
        let entries = Mat::from_fn(dim, dim, |i, j| if i == j { diag[i] } else { 0.0 });
        Ok(Self { entries, layout })
    }

    pub fn layout(&self) -> PhaseSpaceLayout {
        self.layout
    }

    pub fn dim(&self) -> usize {
        self.layout.dim()
    }

    pub fn matrix(&self) -> &Mat<f64> {
        &self.entries
    }

    /// Symplectic eigenvalues of this state, ascending; see
    /// [`symplectic_eigenvalues`].
    pub fn symplectic_eigenvalues(&self) -> Result<Vec<f64>> {
        symplectic_eigenvalues(self)
    }
}

/// Max-norm of `A - A^T`.
pub fn symmetry_residual(m: &Mat<f64>) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in (i + 1)..m.ncols() {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    worst
}

/// Max-norm of all entries.
pub fn max_norm(m: &Mat<f64>) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            worst = worst.max(m[(i, j)].abs());
        }
    }
    worst
}

/// The symplectic form: block-diagonal copies of `[[0, 1], [-1, 0]]`,
/// one per mode.
pub fn symplectic_form(layout: PhaseSpaceLayout) -> Mat<f64> {
    let dim = layout.dim();
    Mat::from_fn(dim, dim, |i, j| {
        if i % 2 == 0 && j == i + 1 {
            1.0
        } else if i % 2 == 1 && j + 1 == i {
            -1.0
        } else {
            0.0
        }
    })
}

/// Left-multiplication by the symplectic form without forming it:
/// row `2k` of the result is row `2k+1` of `m`, row `2k+1` is `-row 2k`.
pub fn omega_times(m: &Mat<f64>) -> Mat<f64> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| {
        if i % 2 == 0 {
            m[(i + 1, j)]
        } else {
            -m[(i - 1, j)]
        }
    })
}

/// Checks the defining relation `S Omega S^T = Omega` to max-norm `tol`.
pub fn is_symplectic(s: &Mat<f64>, tol: f64) -> Result<bool> {
    if s.nrows() != s.ncols() {
        return Err(HarvestError::Dimension {
            expected: s.nrows(),
            got: s.ncols(),
        });
    }
    if s.nrows() % 2 != 0 {
        return Err(HarvestError::OddDimension(s.nrows()));
    }
    Ok(symplectic_defect(s) <= tol)
}

/// Max-norm of `S Omega S^T - Omega`.
pub fn symplectic_defect(s: &Mat<f64>) -> f64 {
    let layout = PhaseSpaceLayout { n_modes: s.nrows() / 2 };
    let omega = symplectic_form(layout);
    let product = s * omega_times(&s.transpose().to_owned());
    let mut worst: f64 = 0.0;
    for i in 0..product.nrows() {
        for j in 0..product.ncols() {
            worst = worst.max((product[(i, j)] - omega[(i, j)]).abs());
        }
    }
    worst
}

/// Symplectic eigenvalues of a covariance matrix, ascending.
///
/// Computed as the moduli of the imaginary parts of the eigenvalues of
/// `Omega sigma`, with each `+/-` conjugate pair reported once. For a
/// physical state every value is `>= 1` up to roundoff.
pub fn symplectic_eigenvalues(sigma: &CovarianceMatrix) -> Result<Vec<f64>> {
    let product = omega_times(sigma.matrix());
    let eigenvalues = product
        .eigenvalues()
        .map_err(|e| HarvestError::Numerical(format!("eigensolver failed: {e:?}")))?;

    let scale = max_norm(sigma.matrix()).max(1.0);
    let mut moduli: Vec<f64> = Vec::with_capacity(eigenvalues.len());
    for ev in &eigenvalues {
        if ev.re.abs() > 1e-8 * scale {
            return Err(HarvestError::Numerical(format!(
                "eigenvalue of Omega*sigma has non-negligible real part {:e} (scale {:e})",
                ev.re, scale
            )));
        }
        moduli.push(ev.im.abs());
    }
    moduli.sort_by(f64::total_cmp);

    // Values come in +/- pairs; average each adjacent pair.
    let mut nus = Vec::with_capacity(moduli.len() / 2);
    for pair in moduli.chunks_exact(2) {
        nus.push(0.5 * (pair[0] + pair[1]));
    }
    Ok(nus)
}

/// The entropy kernel `f(x)` in bits:
/// `f(x) = ((x+1)/2) log2((x+1)/2) - ((x-1)/2) log2((x-1)/2)`, with
/// `f(1) = 0` by the `0 log 0 = 0` convention.
///
/// Arguments within `1e-9` below 1 are clamped to 1; lower values are
/// rejected as unphysical.
pub fn entropy_f(x: f64) -> Result<f64> {
    if x < 1.0 - PHYSICAL_SLACK {
        return Err(HarvestError::Unphysical(format!(
            "entropy argument {x} below 1"
        )));
    }
    let x = x.max(1.0);
    let plus = 0.5 * (x + 1.0);
    let minus = 0.5 * (x - 1.0);
    let head = plus * plus.log2();
    let tail = if minus > 0.0 { minus * minus.log2() } else { 0.0 };
    Ok(head - tail)
}

/// Von Neumann entropy in bits: the sum of `f` over the symplectic
/// eigenvalues. Zero exactly when the state is pure.
pub fn von_neumann_entropy(sigma: &CovarianceMatrix) -> Result<f64> {
    let mut total = 0.0;
    for nu in symplectic_eigenvalues(sigma)? {
        total += entropy_f(nu)?;
    }
    Ok(total)
}

/// Reduced state of the selected modes: the rows and columns of their
/// `(q, p)` pairs, in the order given.
pub fn partial_state(sigma: &CovarianceMatrix, mode_indices: &[usize]) -> Result<CovarianceMatrix> {
    let n_modes = sigma.layout().n_modes();
    let mut seen = vec![false; n_modes];
    for &m in mode_indices {
        if m >= n_modes {
            return Err(HarvestError::InvalidIndices(format!(
                "mode {m} out of range (have {n_modes})"
            )));
        }
        if seen[m] {
            return Err(HarvestError::InvalidIndices(format!("mode {m} repeated")));
        }
        seen[m] = true;
    }
    let slots: Vec<usize> = mode_indices
        .iter()
        .flat_map(|&m| [2 * m, 2 * m + 1])
        .collect();
    let dim = slots.len();
    let entries = Mat::from_fn(dim, dim, |i, j| sigma.matrix()[(slots[i], slots[j])]);
    CovarianceMatrix::new(entries, PhaseSpaceLayout::new(mode_indices.len())?)
}

/// Direct sum of two square matrices.
pub fn direct_sum(a: &Mat<f64>, b: &Mat<f64>) -> Mat<f64> {
    let (na, nb) = (a.nrows(), b.nrows());
    Mat::from_fn(na + nb, na + nb, |i, j| {
        if i < na && j < na {
            a[(i, j)]
        } else if i >= na && j >= na {
            b[(i - na, j - na)]
        } else {
            0.0
        }
    })
}
