//! Seeded generation of Poisson spectra.
//!
//! A spectrum exists in two orders. [`SortedSpectrum`] is the monotonically
//! increasing sequence, a fragment of a Poisson process. [`PermutedSpectrum`]
//! lists the same values in state-index order, which for a Poisson model is a
//! uniformly random permutation of the sorted one.
//!
//! Generation is a pure function of `(GeneratorConfig, Seed)`: every trial
//! owns a counter-derived RNG stream, so trials may run in any order or on
//! any number of threads and still reproduce bit for bit.

use std::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

use crate::{Error, Result, Scalar};

/// How a length-`N` fragment of a Poisson process is modelled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SpectrumModel {
    /// `N` independent uniform draws on `[0, (N+1)·δ̄I]`. Draw order is the
    /// permuted order; sorting gives the Poisson sequence.
    #[default]
    UniformInterval,
    /// Cumulative sums of `N` exponential variates with mean `δ̄I` (the first
    /// one is the offset from zero); the permuted order is a Fisher–Yates
    /// shuffle of the sorted values.
    ExponentialGaps,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratorConfig<T> {
    n_levels: usize,
    mean_spacing: T,
    model: SpectrumModel,
}

impl<T: Scalar> GeneratorConfig<T> {
    pub fn new(n_levels: usize, mean_spacing: T, model: SpectrumModel) -> Result<Self> {
        if n_levels == 0 {
            return Err(Error::InvalidConfig("n_levels must be at least 1".into()));
        }
        if !(mean_spacing.is_finite() && mean_spacing > T::zero()) {
            return Err(Error::InvalidConfig(format!(
                "mean_spacing must be positive and finite, got {mean_spacing}"
            )));
        }
        Ok(Self {
            n_levels,
            mean_spacing,
            model,
        })
    }

    /// `N` levels with unit mean spacing, uniform-interval model.
    pub fn unit(n_levels: usize) -> Result<Self> {
        Self::new(n_levels, T::one(), SpectrumModel::UniformInterval)
    }

    pub fn n_levels(&self) -> usize {
        self.n_levels
    }

    pub fn mean_spacing(&self) -> T {
        self.mean_spacing
    }

    pub fn model(&self) -> SpectrumModel {
        self.model
    }

    pub fn with_n_levels(self, n_levels: usize) -> Result<Self> {
        Self::new(n_levels, self.mean_spacing, self.model)
    }

    /// Upper end of the uniform-interval support, `(N+1)·δ̄I`.
    pub fn interval_length(&self) -> T {
        T::from_count(self.n_levels + 1) * self.mean_spacing
    }
}

/// Stream tags separating the independent random sequences used in one trial.
pub mod stream {
    /// First (or only) observable.
    pub const FIRST: u64 = 1;
    /// Second observable of a [`SpectrumPair`](super::SpectrumPair).
    pub const SECOND: u64 = 2;
    /// Per-row master seeds of a sweep.
    pub const SWEEP_ROW: u64 = 0x5157_4545_5000_0000;
}

/// Coordinates of one random stream: `(master, trial, stream)`.
///
/// The RNG seed is a stateless mix of the three, so the draws of a trial do
/// not depend on which other trials ran before it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Seed {
    pub master: u64,
    pub trial: u64,
    pub stream: u64,
}

impl Seed {
    pub const fn new(master: u64) -> Self {
        Self {
            master,
            trial: 0,
            stream: stream::FIRST,
        }
    }

    pub const fn with_trial(self, trial: u64) -> Self {
        Self { trial, ..self }
    }

    pub const fn with_stream(self, stream: u64) -> Self {
        Self { stream, ..self }
    }

    /// 64-bit digest of `(master, trial, stream)`.
    pub fn mixed(&self) -> u64 {
        let h = splitmix64(self.master);
        let h = splitmix64(h ^ self.trial);
        splitmix64(h ^ self.stream.rotate_left(29))
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.mixed())
    }
}

impl From<u64> for Seed {
    fn from(master: u64) -> Self {
        Seed::new(master)
    }
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Monotonically increasing spectrum.
///
/// Generated spectra are strictly increasing. A spectrum obtained by
/// [`sort`]ing user-supplied values keeps exact duplicates, so it is only
/// guaranteed to be non-decreasing.
#[derive(Clone, Debug, PartialEq)]
pub struct SortedSpectrum<T> {
    values: Vec<T>,
}

impl<T: Scalar> SortedSpectrum<T> {
    /// Wraps values that must be finite and strictly increasing.
    pub fn new(values: Vec<T>) -> Result<Self> {
        check_finite(&values)?;
        if let Some(k) = values.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::InvalidArgument(format!(
                "values must be strictly increasing (violated at index {})",
                k + 1
            )));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The sorted values viewed as a state-ordered spectrum.
    pub fn to_permuted(&self) -> PermutedSpectrum<T> {
        PermutedSpectrum {
            values: self.values.clone(),
        }
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }
}

/// Spectrum in state-index order `n = 0..N`.
#[derive(Clone, Debug, PartialEq)]
pub struct PermutedSpectrum<T> {
    values: Vec<T>,
}

impl<T: Scalar> PermutedSpectrum<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        check_finite(&values)?;
        Ok(Self { values })
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Applies a relabelling of states: entry `k` of the result is
    /// `values[order[k]]`. `order` must be a permutation of `0..N`.
    pub fn relabel(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.len() {
            return Err(Error::LengthMismatch {
                first: self.len(),
                second: order.len(),
            });
        }
        let mut seen = vec![false; order.len()];
        for &i in order {
            if i >= seen.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidArgument("order is not a permutation".into()));
            }
        }
        Ok(Self {
            values: order.iter().map(|&i| self.values[i]).collect(),
        })
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }
}

/// Two observables of the same `N` states.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumPair<T> {
    first: PermutedSpectrum<T>,
    second: PermutedSpectrum<T>,
}

impl<T: Scalar> SpectrumPair<T> {
    pub fn new(first: PermutedSpectrum<T>, second: PermutedSpectrum<T>) -> Result<Self> {
        if first.len() != second.len() {
            return Err(Error::LengthMismatch {
                first: first.len(),
                second: second.len(),
            });
        }
        Ok(Self { first, second })
    }

    /// Generates both observables from one trial seed, on the
    /// [`stream::FIRST`] and [`stream::SECOND`] streams.
    pub fn generate(
        first: &GeneratorConfig<T>,
        second: &GeneratorConfig<T>,
        seed: Seed,
    ) -> Result<Self> {
        Self::new(
            generate_permuted(first, seed.with_stream(stream::FIRST)),
            generate_permuted(second, seed.with_stream(stream::SECOND)),
        )
    }

    pub fn first(&self) -> &PermutedSpectrum<T> {
        &self.first
    }

    pub fn second(&self) -> &PermutedSpectrum<T> {
        &self.second
    }

    pub fn len(&self) -> usize {
        self.first.len()
    }

    pub fn is_empty(&self) -> bool {
        self.first.is_empty()
    }

    pub fn swapped(&self) -> Self {
        Self {
            first: self.second.clone(),
            second: self.first.clone(),
        }
    }
}

fn check_finite<T: Scalar>(values: &[T]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(k) => Err(Error::InvalidArgument(format!(
            "non-finite value at index {k}"
        ))),
        None => Ok(()),
    }
}

fn ascending<T: Scalar>(a: &T, b: &T) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

/// Raw draws in generation order with exact ties removed: a value equal to
/// (or below) its predecessor in sorted order is moved one ulp above it.
fn uniform_draws<T: Scalar>(config: &GeneratorConfig<T>, rng: &mut ChaCha8Rng) -> Vec<T> {
    let upper = config.interval_length();
    let mut draws: Vec<T> = (0..config.n_levels)
        .map(|_| T::lit(rng.random::<f64>()) * upper)
        .collect();
    let mut order: Vec<usize> = (0..draws.len()).collect();
    order.sort_by(|&i, &j| ascending(&draws[i], &draws[j]).then(i.cmp(&j)));
    for k in 1..order.len() {
        let (prev, cur) = (draws[order[k - 1]], draws[order[k]]);
        if cur <= prev {
            draws[order[k]] = prev.next_up();
        }
    }
    draws
}

fn exponential_levels<T: Scalar>(config: &GeneratorConfig<T>, rng: &mut ChaCha8Rng) -> Vec<T> {
    let mut levels = Vec::with_capacity(config.n_levels);
    let mut acc = T::zero();
    for _ in 0..config.n_levels {
        let gap: f64 = rng.sample(Exp1);
        let next = acc + T::lit(gap) * config.mean_spacing;
        acc = if levels.is_empty() || next > acc {
            next
        } else {
            acc.next_up()
        };
        levels.push(acc);
    }
    levels
}

/// Sorted realization of an `N`-level Poisson spectrum.
pub fn generate_sorted<T: Scalar>(config: &GeneratorConfig<T>, seed: Seed) -> SortedSpectrum<T> {
    let mut rng = seed.rng();
    let values = match config.model {
        SpectrumModel::UniformInterval => {
            let mut draws = uniform_draws(config, &mut rng);
            draws.sort_by(ascending);
            draws
        }
        SpectrumModel::ExponentialGaps => exponential_levels(config, &mut rng),
    };
    SortedSpectrum { values }
}

/// The same realization as [`generate_sorted`] for the same seed, listed in
/// state-index order.
pub fn generate_permuted<T: Scalar>(
    config: &GeneratorConfig<T>,
    seed: Seed,
) -> PermutedSpectrum<T> {
    let mut rng = seed.rng();
    let values = match config.model {
        SpectrumModel::UniformInterval => uniform_draws(config, &mut rng),
        SpectrumModel::ExponentialGaps => {
            let mut levels = exponential_levels(config, &mut rng);
            levels.shuffle(&mut rng);
            levels
        }
    };
    PermutedSpectrum { values }
}

/// Ascending rearrangement, stable with respect to exact ties.
pub fn sort<T: Scalar>(spectrum: &PermutedSpectrum<T>) -> SortedSpectrum<T> {
    let mut values = spectrum.values.clone();
    values.sort_by(ascending);
    SortedSpectrum { values }
}

/// Consecutive spacings `values[k+1] - values[k]`.
pub fn gaps<T: Scalar>(spectrum: &SortedSpectrum<T>) -> Result<Vec<T>> {
    if spectrum.len() < 2 {
        return Err(Error::NoGaps(spectrum.len()));
    }
    Ok(spectrum.values.windows(2).map(|w| w[1] - w[0]).collect())
}
