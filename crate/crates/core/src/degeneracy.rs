//! Degenerate pairs, clusters and the CSCO predicates.
//!
//! Two values of one observable are degenerate when they are closer than
//! the detector error, `|a - b| < ΔI` (strict). A single observable
//! identifies every state iff it has no degenerate pair; two observables do
//! iff no pair of states is degenerate under both detectors.
//!
//! State indices in [`DegeneratePair`] are zero-based positions in the
//! permuted spectrum.

use std::cmp::Ordering;
use std::ops::ControlFlow;

use crate::spectra::{gaps, PermutedSpectrum, SortedSpectrum, SpectrumPair};
use crate::{Error, Result, Scalar};

/// Resolution of a detector: values closer than `delta` cannot be told apart.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DetectorModel<T> {
    delta: T,
}

impl<T: Scalar> DetectorModel<T> {
    pub fn new(delta: T) -> Result<Self> {
        if !(delta.is_finite() && delta >= T::zero()) {
            return Err(Error::InvalidArgument(format!(
                "detector error must be finite and non-negative, got {delta}"
            )));
        }
        Ok(Self { delta })
    }

    pub fn delta(&self) -> T {
        self.delta
    }

    #[inline]
    pub fn resolves(&self, a: T, b: T) -> bool {
        (a - b).abs() >= self.delta
    }
}

/// Two states `first < second` whose values the detector cannot separate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DegeneratePair {
    pub first: usize,
    pub second: usize,
}

impl DegeneratePair {
    pub fn new(a: usize, b: usize) -> Self {
        Self {
            first: a.min(b),
            second: a.max(b),
        }
    }
}

/// Outcome of a CSCO check: the set of unresolvable state pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CscoVerdict {
    witnesses: Vec<DegeneratePair>,
}

impl CscoVerdict {
    pub fn from_witnesses(mut witnesses: Vec<DegeneratePair>) -> Self {
        witnesses.sort_unstable();
        Self { witnesses }
    }

    pub fn is_csco(&self) -> bool {
        self.witnesses.is_empty()
    }

    /// Offending pairs in lexicographic order.
    pub fn witnesses(&self) -> &[DegeneratePair] {
        &self.witnesses
    }
}

/// `flag[k] = gap[k] < ΔI` for the consecutive gaps of a sorted spectrum.
pub fn degenerate_gap_flags<T: Scalar>(
    spectrum: &SortedSpectrum<T>,
    det: &DetectorModel<T>,
) -> Result<Vec<bool>> {
    Ok(gaps(spectrum)?.into_iter().map(|g| g < det.delta).collect())
}

/// Visits every degenerate pair of a permuted spectrum.
///
/// Values are sorted together with their state indices and scanned with a
/// window of width `ΔI`, so the cost is `O(N log N + M)` for `M` pairs.
/// The visiting order is unspecified; stops early on `ControlFlow::Break`.
fn for_each_degenerate_pair<T, F>(values: &[T], det: &DetectorModel<T>, mut visit: F) -> bool
where
    T: Scalar,
    F: FnMut(usize, usize) -> ControlFlow<()>,
{
    if det.delta <= T::zero() || values.len() < 2 {
        return false;
    }
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| {
        values[i]
            .partial_cmp(&values[j])
            .unwrap_or(Ordering::Equal)
            .then(i.cmp(&j))
    });
    for (k, &i) in order.iter().enumerate() {
        for &j in &order[k + 1..] {
            if (values[j] - values[i]).abs() >= det.delta {
                break;
            }
            if visit(i, j).is_break() {
                return true;
            }
        }
    }
    false
}

/// All state pairs `(n1 < n2)` with `|I[n1] - I[n2]| < ΔI`, in
/// lexicographic order.
pub fn enumerate_degenerate_pairs<T: Scalar>(
    spectrum: &PermutedSpectrum<T>,
    det: &DetectorModel<T>,
) -> Vec<DegeneratePair> {
    let mut pairs = Vec::new();
    for_each_degenerate_pair(spectrum.values(), det, |i, j| {
        pairs.push(DegeneratePair::new(i, j));
        ControlFlow::Continue(())
    });
    pairs.sort_unstable();
    pairs
}

/// Whether two consecutive gaps are both degenerate, i.e. some degenerate
/// pairs share an element. Always `false` below three levels.
pub fn has_clusters<T: Scalar>(spectrum: &SortedSpectrum<T>, det: &DetectorModel<T>) -> bool {
    spectrum
        .values()
        .windows(3)
        .any(|w| w[1] - w[0] < det.delta && w[2] - w[1] < det.delta)
}

/// Occurrences of the left edge of a cluster.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClusterStartCount {
    /// Interior sites with `gap[n-1] > ΔI`, `gap[n] < ΔI`, `gap[n+1] < ΔI`.
    pub hits: u64,
    /// Interior sites where gaps `n-1`, `n`, `n+1` all exist: `N - 3`.
    pub sites: u64,
}

pub fn count_cluster_start_pattern<T: Scalar>(
    spectrum: &SortedSpectrum<T>,
    det: &DetectorModel<T>,
) -> Result<ClusterStartCount> {
    if spectrum.len() < 4 {
        return Err(Error::TooFewLevels {
            need: 4,
            got: spectrum.len(),
        });
    }
    let g = gaps(spectrum)?;
    let delta = det.delta;
    let hits = g
        .windows(3)
        .filter(|w| w[0] > delta && w[1] < delta && w[2] < delta)
        .count();
    Ok(ClusterStartCount {
        hits: hits as u64,
        sites: (g.len() - 2) as u64,
    })
}

/// Number of adjacent state indices `(n, n+1)` whose values are degenerate.
pub fn count_adjacent_degenerate<T: Scalar>(
    spectrum: &PermutedSpectrum<T>,
    det: &DetectorModel<T>,
) -> usize {
    spectrum
        .values()
        .windows(2)
        .filter(|w| (w[1] - w[0]).abs() < det.delta)
        .count()
}

/// A single observable is a CSCO iff it has no degenerate pair.
pub fn is_csco_single<T: Scalar>(
    spectrum: &PermutedSpectrum<T>,
    det: &DetectorModel<T>,
) -> CscoVerdict {
    CscoVerdict {
        witnesses: enumerate_degenerate_pairs(spectrum, det),
    }
}

/// Two observables form a CSCO iff no state pair is degenerate under both.
///
/// Candidates come from the window scan of the first observable and are
/// filtered by the second detector.
pub fn is_csco_pair<T: Scalar>(
    pair: &SpectrumPair<T>,
    det1: &DetectorModel<T>,
    det2: &DetectorModel<T>,
) -> CscoVerdict {
    let second = pair.second().values();
    let mut witnesses = Vec::new();
    for_each_degenerate_pair(pair.first().values(), det1, |i, j| {
        if !det2.resolves(second[i], second[j]) {
            witnesses.push(DegeneratePair::new(i, j));
        }
        ControlFlow::Continue(())
    });
    CscoVerdict::from_witnesses(witnesses)
}

/// Short-circuiting form of `is_csco_single(..).is_csco()`.
pub fn identifies_all_states<T: Scalar>(
    spectrum: &PermutedSpectrum<T>,
    det: &DetectorModel<T>,
) -> bool {
    !for_each_degenerate_pair(spectrum.values(), det, |_, _| ControlFlow::Break(()))
}

/// Short-circuiting form of `is_csco_pair(..).is_csco()`.
pub fn jointly_identify_all_states<T: Scalar>(
    pair: &SpectrumPair<T>,
    det1: &DetectorModel<T>,
    det2: &DetectorModel<T>,
) -> bool {
    let second = pair.second().values();
    !for_each_degenerate_pair(pair.first().values(), det1, |i, j| {
        if det2.resolves(second[i], second[j]) {
            ControlFlow::Continue(())
        } else {
            ControlFlow::Break(())
        }
    })
}
