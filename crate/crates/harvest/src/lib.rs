//! Correlation harvesting between two oscillator detectors in a thermal
//! scalar field, computed non-perturbatively with Gaussian (covariance
//! matrix) quantum mechanics.
//!
//! The model is a massless scalar field in a periodic cavity of length `L`
//! with `N` left- and right-moving modes kept, plus two harmonic-oscillator
//! detectors coupled linearly to the field at fixed positions. Everything is
//! quadratic, so a state is a covariance matrix and time evolution is a
//! symplectic matrix acting on it. The crate computes the entanglement
//! (logarithmic negativity), mutual information, and Gaussian quantum
//! discord the detectors harvest from the field as functions of time,
//! detector separation, and field temperature.
//!
//! ```
//! use harvest::cavity::{initial_state, CavityConfig, FieldTemperature};
//! use harvest::correlations::{correlation_report, SweepPoint};
//! use harvest::evolution::{detector_state, evolve, PropagatorGenerator};
//!
//! // a small cavity so the doc test stays fast
//! let cfg = CavityConfig::new(100.0, 12, 0.4 * std::f64::consts::PI, 0.05, 0.0, 4.0)?;
//! let generator = PropagatorGenerator::build(&cfg)?;
//!
//! let vacuum = initial_state(&cfg, FieldTemperature::ZERO);
//! let thermal = initial_state(&cfg, FieldTemperature::new(5.0)?);
//!
//! // one propagator serves every initial temperature
//! let s = generator.propagator(2.0)?;
//! let cold = correlation_report(
//!     &detector_state(&evolve(&vacuum, &s)?)?,
//!     SweepPoint { t: 2.0, r: 4.0, temperature: 0.0 },
//! )?;
//! let hot = correlation_report(
//!     &detector_state(&evolve(&thermal, &s)?)?,
//!     SweepPoint { t: 2.0, r: 4.0, temperature: 5.0 },
//! )?;
//!
//! // thermal amplification: the hot field hands over more correlation
//! assert!(hot.mutual_information > cold.mutual_information);
//! # Ok::<(), harvest::error::HarvestError>(())
//! ```

pub mod cache;
pub mod cavity;
pub mod correlations;
pub mod decomposition;
pub mod error;
pub mod evolution;
pub mod gaussian;
pub mod sweep;

pub use cavity::{CavityConfig, FieldTemperature};
pub use correlations::{
    correlation_report, gaussian_discord, logarithmic_negativity, mutual_information,
    CorrelationReport, SweepPoint,
};
pub use decomposition::{beam_split, PlusMinusDecomposition};
pub use error::{HarvestError, Result};
pub use evolution::{detector_state, evolve, PropagatorGenerator, TwoModeState};
pub use gaussian::CovarianceMatrix;
pub use sweep::{run_sweep, RunOptions, SweepSpec};

// Keep the guide's code snippets compiling: every chapter runs as a doc test.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }

    chapter!(states, "../../../book/src/gaussian-states.md");
    chapter!(cavity, "../../../book/src/cavity-model.md");
    chapter!(evolution, "../../../book/src/time-evolution.md");
    chapter!(measures, "../../../book/src/correlation-measures.md");
    chapter!(amplification, "../../../book/src/thermal-amplification.md");
    chapter!(modes, "../../../book/src/plus-minus-modes.md");
    chapter!(harness, "../../../book/src/sweeps-and-cli.md");
}
