//! Log-gamma factorial ratios against exact rational arithmetic.

use csco::analytics::{prob_csco_two_conjecture, prob_no_clusters_conjecture, MeanPairs};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

/// `hi! / lo!` as an exact integer.
fn falling(hi: u64, lo: u64) -> BigInt {
    (lo + 1..=hi).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `N! (𝒩 - M)! / (2^M 𝒩! (N - 2M)!)`
fn no_clusters_exact(n: u64, m: u64) -> BigRational {
    let all = n * (n - 1) / 2;
    BigRational::new(
        falling(n, n - 2 * m),
        falling(all, all - m) * (BigInt::one() << m),
    )
}

/// `(𝒩 - M1)! (𝒩 - M2)! / (𝒩! (𝒩 - M1 - M2)!)`
fn csco_two_exact(n: u64, m1: u64, m2: u64) -> BigRational {
    let all = n * (n - 1) / 2;
    BigRational::new(falling(all - m2, all - m1 - m2), falling(all, all - m1))
}

fn rel_err(got: f64, want: &BigRational) -> f64 {
    let want = want.to_f64().unwrap();
    ((got - want) / want).abs()
}

#[test]
fn worked_values() {
    assert_eq!(
        no_clusters_exact(10, 2),
        BigRational::new(7.into(), 11.into())
    );
    assert_eq!(
        csco_two_exact(5, 2, 3),
        BigRational::new(7.into(), 15.into())
    );
    let c = prob_no_clusters_conjecture(2.0 / 9.0, 10, MeanPairs::Continuous).unwrap();
    assert!(rel_err(c.exact, &no_clusters_exact(10, 2)) <= 1e-10);
    let c = prob_csco_two_conjecture(0.5, 0.75, 5, MeanPairs::Continuous).unwrap();
    assert!(rel_err(c.exact, &csco_two_exact(5, 2, 3)) <= 1e-10);
}

#[test]
fn no_clusters_conjecture_matches_rationals() {
    let mut worst = 0.0f64;
    for n in 2..=50u64 {
        for m in (0..=20u64).filter(|&m| m < n && 2 * m <= n) {
            let p = m as f64 / (n - 1) as f64;
            for mode in [MeanPairs::Continuous, MeanPairs::Rounded] {
                let got = prob_no_clusters_conjecture(p, n as usize, mode)
                    .unwrap()
                    .exact;
                let err = rel_err(got, &no_clusters_exact(n, m));
                assert!(err <= 1e-10, "N={n} M={m}: rel err {err:e}");
                worst = worst.max(err);
            }
        }
    }
    assert!(worst < 1e-10);
}

#[test]
fn csco_two_conjecture_matches_rationals() {
    for n in 2..=50u64 {
        let all = n * (n - 1) / 2;
        let top = 20.min(n - 1);
        for m1 in 0..=top {
            for m2 in (0..=top).filter(|&m2| m1 + m2 <= all) {
                let (p1, p2) = (m1 as f64 / (n - 1) as f64, m2 as f64 / (n - 1) as f64);
                let got = prob_csco_two_conjecture(p1, p2, n as usize, MeanPairs::Continuous)
                    .unwrap()
                    .exact;
                let err = rel_err(got, &csco_two_exact(n, m1, m2));
                assert!(err <= 1e-10, "N={n} M1={m1} M2={m2}: rel err {err:e}");
            }
        }
    }
}
