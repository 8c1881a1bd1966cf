//! Poisson-distributed spectra measured by detectors of finite resolution.
//!
//! The crate answers one question: given one or two observables whose
//! spectra look like randomly relabelled fragments of a Poisson process,
//! and detectors that cannot resolve values closer than `ΔI`, how likely is
//! it that the measured values still identify every state uniquely (i.e.
//! that the observables form a complete set of commuting observables)?
//!
//! Modules, bottom-up:
//!
//! * [`spectra`]: seeded generation of sorted and permuted spectra.
//! * [`degeneracy`]: degenerate pairs, clusters and the CSCO predicates.
//! * [`analytics`]: closed-form probabilities, exact and asymptotic.
//! * [`montecarlo`]: reproducible, parallel trial harness and sweeps.
//! * [`experiments`]: figure presets with CSV / plot-script output.
//!
//! Everything below `montecarlo` is generic over the floating point type
//! through [`Scalar`]; the aliases at the crate root fix it to `f64`.

pub mod analytics;
pub mod degeneracy;
mod error;
pub mod experiments;
pub mod montecarlo;
pub mod scalar;
pub mod spectra;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use analytics::{PairCounts, Prediction};
pub use degeneracy::{CscoVerdict, DegeneratePair};
pub use montecarlo::{Estimate, EstimatorKind, SweepTable};
pub use spectra::{Seed, SpectrumModel};

/// Sorted spectrum over `f64`.
pub type SortedSpectrum = spectra::SortedSpectrum<f64>;
/// Permuted (state-index order) spectrum over `f64`.
pub type PermutedSpectrum = spectra::PermutedSpectrum<f64>;
/// Pair of independently permuted spectra over `f64`.
pub type SpectrumPair = spectra::SpectrumPair<f64>;
/// Generator configuration over `f64`.
pub type GeneratorConfig = spectra::GeneratorConfig<f64>;
/// Detector model over `f64`.
pub type DetectorModel = degeneracy::DetectorModel<f64>;
/// Monte Carlo plan over `f64` spectra.
pub type TrialPlan = montecarlo::TrialPlan<f64>;

/// Single-precision variants, mostly useful for checking that results do not
/// hinge on `f64` rounding.
pub mod f32 {
    pub type SortedSpectrum = crate::spectra::SortedSpectrum<f32>;
    pub type PermutedSpectrum = crate::spectra::PermutedSpectrum<f32>;
    pub type SpectrumPair = crate::spectra::SpectrumPair<f32>;
    pub type GeneratorConfig = crate::spectra::GeneratorConfig<f32>;
    pub type DetectorModel = crate::degeneracy::DetectorModel<f32>;
    pub type TrialPlan = crate::montecarlo::TrialPlan<f32>;
}
