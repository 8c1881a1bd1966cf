//! Closed-form probabilities for Poisson spectra seen through a detector.
//!
//! Notation used in the docs: `p = 1 - exp(-ΔI/δ̄I)` is the probability that
//! two neighbours of the sorted spectrum are degenerate, `N_p = N - 1` the
//! number of neighbouring pairs, `𝒩_p = N(N-1)/2` the number of all pairs
//! and `M̄ = p·N_p` the mean number of degenerate neighbours.
//!
//! Factorial ratios are evaluated as sums of [`ln_gamma`] values, which
//! also extends them to the non-integer `M̄` the formulas produce.

use crate::{Error, Result, Scalar};

/// Finite-`N` expression together with its large-`N` / small-`p` limit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Prediction<T> {
    pub exact: T,
    pub asymptotic: T,
}

/// How a non-integer `M̄` enters a factorial.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MeanPairs {
    /// `x! = Γ(x + 1)` for real `x`.
    #[default]
    Continuous,
    /// `M̄` rounded to the nearest integer first.
    Rounded,
}

/// Pair bookkeeping for a spectrum of `N` levels.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairCounts<T> {
    pub n_levels: usize,
    /// `N_p = N - 1`
    pub consecutive_pairs: usize,
    /// `𝒩_p = N(N-1)/2`
    pub all_pairs: usize,
    /// `M̄ = p·N_p`
    pub expected_degenerate: T,
}

impl<T: Scalar> PairCounts<T> {
    pub fn new(p: T, n_levels: usize) -> Result<Self> {
        check_probability(p)?;
        check_levels(n_levels)?;
        Ok(Self {
            n_levels,
            consecutive_pairs: n_levels - 1,
            all_pairs: n_levels * (n_levels - 1) / 2,
            expected_degenerate: p * T::from_count(n_levels - 1),
        })
    }
}

fn check_probability<T: Scalar>(p: T) -> Result<()> {
    if p >= T::zero() && p <= T::one() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "probability must lie in [0, 1], got {p}"
        )))
    }
}

fn check_levels(n: usize) -> Result<()> {
    if n >= 2 {
        Ok(())
    } else {
        Err(Error::TooFewLevels { need: 2, got: n })
    }
}

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln |Γ(x)|` by the Lanczos approximation (`g = 7`, nine terms), with the
/// reflection formula below `x = 1/2`. Infinite at the poles `x = 0, -1, ...`.
pub fn ln_gamma<T: Scalar>(x: T) -> T {
    let half = T::lit(0.5);
    if x < half {
        if x == x.floor() {
            return T::infinity();
        }
        let pi = T::lit(std::f64::consts::PI);
        // Γ(x)Γ(1-x) = π / sin(πx)
        return (pi / (pi * x).sin().abs()).ln() - ln_gamma(T::one() - x);
    }
    let x = x - T::one();
    let t = x + T::lit(LANCZOS_G) + half;
    T::lit(0.5 * (2.0 * std::f64::consts::PI).ln()) + (x + half) * t.ln() - t + lanczos_sum(x).ln()
}

fn lanczos_sum<T: Scalar>(x: T) -> T {
    let mut a = T::lit(LANCZOS_COEF[0]);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        a = a + T::lit(c) / (x + T::from_count(i));
    }
    a
}

/// `ln Γ(x) - ln Γ(y)` without the cancellation of subtracting two large
/// log-gamma values. Both arguments must be at least `1/2` for the direct
/// form; otherwise falls back to the plain difference.
pub fn ln_gamma_ratio<T: Scalar>(x: T, y: T) -> T {
    let half = T::lit(0.5);
    if x < half || y < half {
        return ln_gamma(x) - ln_gamma(y);
    }
    let (xs, ys) = (x - T::one(), y - T::one());
    let shift = T::lit(LANCZOS_G) + half;
    let (tx, ty) = (xs + shift, ys + shift);
    let d = x - y;
    // (xs + ½) ln tx - (ys + ½) ln ty - (tx - ty), regrouped around ln(tx/ty)
    d * tx.ln() + (ys + half) * (d / ty).ln_1p() - d + (lanczos_sum(xs) / lanczos_sum(ys)).ln()
}

/// `ln x! - ln y!`.
pub fn ln_factorial_ratio<T: Scalar>(x: T, y: T) -> T {
    ln_gamma_ratio(x + T::one(), y + T::one())
}

/// `ln x! = ln Γ(x + 1)`.
pub fn ln_factorial<T: Scalar>(x: T) -> T {
    ln_gamma(x + T::one())
}

fn mean_pairs<T: Scalar>(m: T, mode: MeanPairs) -> T {
    match mode {
        MeanPairs::Continuous => m,
        MeanPairs::Rounded => m.round(),
    }
}

/// Probability that two sorted neighbours are degenerate,
/// `p = 1 - exp(-ΔI/δ̄I)`.
pub fn pair_degeneracy_prob<T: Scalar>(delta: T, mean_spacing: T) -> Result<T> {
    if !(mean_spacing.is_finite() && mean_spacing > T::zero()) {
        return Err(Error::InvalidArgument(format!(
            "mean spacing must be positive, got {mean_spacing}"
        )));
    }
    if !(delta.is_finite() && delta >= T::zero()) {
        return Err(Error::InvalidArgument(format!(
            "detector error must be non-negative, got {delta}"
        )));
    }
    Ok(-(-delta / mean_spacing).exp_m1())
}

/// `M̄ = p·(N - 1)`.
pub fn expected_degenerate_pairs<T: Scalar>(p: T, n_levels: usize) -> Result<T> {
    Ok(PairCounts::new(p, n_levels)?.expected_degenerate)
}

/// Probability that site `n` is the left end of a cluster, `(1 - p)p²`.
pub fn cluster_start_prob<T: Scalar>(p: T) -> Result<T> {
    check_probability(p)?;
    Ok((T::one() - p) * p * p)
}

/// No two consecutive degenerate gaps anywhere: exact `(1 - p_c)^(N-1)`,
/// asymptotic `exp(-p²N)`.
pub fn prob_no_clusters<T: Scalar>(p: T, n_levels: usize) -> Result<Prediction<T>> {
    let counts = PairCounts::new(p, n_levels)?;
    let pc = cluster_start_prob(p)?;
    let n = T::from_count(n_levels);
    Ok(Prediction {
        exact: (T::from_count(counts.consecutive_pairs) * (-pc).ln_1p()).exp(),
        asymptotic: (-p * p * n).exp(),
    })
}

/// Naive combinatorial model for the absence of clusters: `M̄` pairs drawn
/// uniformly from the `𝒩_p` pairs share no element.
///
/// exact `= N! (𝒩_p - M̄)! / (2^M̄ 𝒩_p! (N - 2M̄)!)`,
/// asymptotic `= exp(-2p²N)`.
pub fn prob_no_clusters_conjecture<T: Scalar>(
    p: T,
    n_levels: usize,
    mode: MeanPairs,
) -> Result<Prediction<T>> {
    let counts = PairCounts::new(p, n_levels)?;
    let m = mean_pairs(counts.expected_degenerate, mode);
    let n = T::from_count(n_levels);
    let all = T::from_count(counts.all_pairs);
    let free = n - m - m;
    if free <= -T::one() {
        return Err(Error::ConjectureDomain(format!(
            "N - 2M̄ = {free} must exceed -1"
        )));
    }
    let ln_ratio = ln_factorial_ratio(n, free) + ln_factorial_ratio(all - m, all)
        - m * T::lit(std::f64::consts::LN_2);
    Ok(Prediction {
        exact: ln_ratio.exp(),
        asymptotic: (-(p * p * n) * T::lit(2.0)).exp(),
    })
}

/// Probability that two adjacent state indices of the permuted spectrum are
/// degenerate: exact `2p/(N-1)`, asymptotic `2p/N`, both capped at 1
/// (only reached for very short spectra).
pub fn randomized_pair_degeneracy_prob<T: Scalar>(p: T, n_levels: usize) -> Result<Prediction<T>> {
    let counts = PairCounts::new(p, n_levels)?;
    let two_p = p + p;
    Ok(Prediction {
        exact: (two_p / T::from_count(counts.consecutive_pairs)).min(T::one()),
        asymptotic: (two_p / T::from_count(n_levels)).min(T::one()),
    })
}

/// Single observable is a CSCO: exact `(1-p)^(N-1)`, asymptotic `exp(-pN)`.
pub fn prob_csco_single<T: Scalar>(p: T, n_levels: usize) -> Result<Prediction<T>> {
    let counts = PairCounts::new(p, n_levels)?;
    Ok(Prediction {
        exact: (T::from_count(counts.consecutive_pairs) * (-p).ln_1p()).exp(),
        asymptotic: (-p * T::from_count(n_levels)).exp(),
    })
}

/// Two independently permuted observables form a CSCO:
/// exact `(1 - p_r¹ p_r²)^𝒩_p` with `p_r = 2p/(N-1)`,
/// asymptotic `exp(-2 p¹ p²)`, independent of `N`.
pub fn prob_csco_two<T: Scalar>(p1: T, p2: T, n_levels: usize) -> Result<Prediction<T>> {
    let r1 = randomized_pair_degeneracy_prob(p1, n_levels)?.exact;
    let r2 = randomized_pair_degeneracy_prob(p2, n_levels)?.exact;
    let all = T::from_count(PairCounts::new(p1, n_levels)?.all_pairs);
    Ok(Prediction {
        exact: (all * (-(r1 * r2)).ln_1p()).exp(),
        asymptotic: (-(p1 * p2) * T::lit(2.0)).exp(),
    })
}

/// Naive combinatorial model for two observables: the `M̄¹` and `M̄²`
/// degenerate pairs, drawn from the `𝒩_p` pairs, never coincide.
///
/// exact `= (𝒩_p - M̄¹)! (𝒩_p - M̄²)! / (𝒩_p! (𝒩_p - M̄¹ - M̄²)!)`,
/// asymptotic `= exp(-2 p¹ p²)`.
pub fn prob_csco_two_conjecture<T: Scalar>(
    p1: T,
    p2: T,
    n_levels: usize,
    mode: MeanPairs,
) -> Result<Prediction<T>> {
    let c1 = PairCounts::new(p1, n_levels)?;
    let c2 = PairCounts::new(p2, n_levels)?;
    let m1 = mean_pairs(c1.expected_degenerate, mode);
    let m2 = mean_pairs(c2.expected_degenerate, mode);
    let all = T::from_count(c1.all_pairs);
    let free = all - m1 - m2;
    if free <= -T::one() {
        return Err(Error::ConjectureDomain(format!(
            "𝒩_p - M̄¹ - M̄² = {free} must exceed -1"
        )));
    }
    let ln_ratio = ln_factorial_ratio(all - m1, all) + ln_factorial_ratio(all - m2, free);
    Ok(Prediction {
        exact: ln_ratio.exp(),
        asymptotic: (-(p1 * p2) * T::lit(2.0)).exp(),
    })
}

/// Probability that a large set of patterns carrying two Poisson-distributed
/// identifiers contains at least one unidentifiable pattern,
/// `1 - exp(-2 p¹ p²)`.
pub fn pattern_ambiguity<T: Scalar>(p1: T, p2: T) -> Result<T> {
    check_probability(p1)?;
    check_probability(p2)?;
    Ok(-(-(p1 * p2) * T::lit(2.0)).exp_m1())
}
