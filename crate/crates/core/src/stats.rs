//! Small statistical helpers shared by the test suites and the harness:
//! mean/standard-error summaries and a two-sample chi-square test on
//! count histograms.

use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Sample mean and standard error of the mean.
pub fn mean_and_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, f64::NAN);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
    (mean, (var / n as f64).sqrt())
}

/// Proportion estimate with its binomial standard error.
pub fn binomial_proportion(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (f64::NAN, f64::NAN);
    }
    let p = successes as f64 / trials as f64;
    (p, (p * (1.0 - p) / trials as f64).sqrt())
}

#[derive(Debug, Clone, Copy)]
pub struct ChiSquareOutcome {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Two-sample chi-square homogeneity test on aligned count histograms.
///
/// Adjacent bins are pooled until each pooled bin holds at least
/// `min_pooled` combined observations, which keeps the asymptotic
/// chi-square approximation honest in the tails.
pub fn chi_square_two_sample(a: &[u64], b: &[u64], min_pooled: u64) -> ChiSquareOutcome {
    assert_eq!(a.len(), b.len(), "histograms must share binning");
    let mut pooled: Vec<(u64, u64)> = Vec::new();
    let (mut acc_a, mut acc_b) = (0u64, 0u64);
    for i in 0..a.len() {
        acc_a += a[i];
        acc_b += b[i];
        if acc_a + acc_b >= min_pooled {
            pooled.push((acc_a, acc_b));
            acc_a = 0;
            acc_b = 0;
        }
    }
    if acc_a + acc_b > 0 {
        if let Some(last) = pooled.last_mut() {
            last.0 += acc_a;
            last.1 += acc_b;
        } else {
            pooled.push((acc_a, acc_b));
        }
    }
    let total_a: u64 = pooled.iter().map(|p| p.0).sum();
    let total_b: u64 = pooled.iter().map(|p| p.1).sum();
    if pooled.len() < 2 || total_a == 0 || total_b == 0 {
        return ChiSquareOutcome { statistic: 0.0, dof: 0, p_value: 1.0 };
    }
    let (na, nb) = (total_a as f64, total_b as f64);
    let mut stat = 0.0;
    for &(ca, cb) in &pooled {
        let (ca, cb) = (ca as f64, cb as f64);
        // expected counts under homogeneity, conditional on bin totals
        let ea = na * (ca + cb) / (na + nb);
        let eb = nb * (ca + cb) / (na + nb);
        stat += (ca - ea).powi(2) / ea + (cb - eb).powi(2) / eb;
    }
    let dof = pooled.len() - 1;
    let dist = ChiSquared::new(dof as f64).expect("dof >= 1");
    let p_value = 1.0 - dist.cdf(stat);
    ChiSquareOutcome { statistic: stat, dof, p_value }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_and_stderr_basics() {
        let (m, se) = mean_and_stderr(&[1.0, 2.0, 3.0, 4.0]);
        assert!((m - 2.5).abs() < 1e-12);
        // sample sd = sqrt(5/3), se = sd/2
        assert!((se - (5.0f64 / 3.0).sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn proportion_se() {
        let (p, se) = binomial_proportion(25, 100);
        assert_eq!(p, 0.25);
        assert!((se - (0.25f64 * 0.75 / 100.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn chi_square_identical_histograms_accept() {
        let a = vec![100, 200, 300, 150, 50];
        let out = chi_square_two_sample(&a, &a, 10);
        assert!(out.statistic < 1e-9);
        assert!(out.p_value > 0.999);
    }

    #[test]
    fn chi_square_detects_gross_mismatch() {
        let a = vec![500, 100, 10, 5];
        let b = vec![10, 100, 500, 5];
        let out = chi_square_two_sample(&a, &b, 10);
        assert!(out.p_value < 1e-6, "p={}", out.p_value);
    }
}
