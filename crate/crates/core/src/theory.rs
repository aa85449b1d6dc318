//! Closed-form and numeric theory: the critical edge probability, the
//! recursive degree-bound constants, the extinction fixed point of the
//! offspring law, and size predictions used as oracles by the experiment
//! suites.

use serde::{Deserialize, Serialize};

use crate::combinat::{binom, binom_f64, binom_u64};
use crate::explorer::{ExploreMode, StopParams};
use crate::{Error, Result};

/// Critical edge probability `1 / ((C(k,j) - 1) * C(n, k-j))` at which the
/// giant `j`-component emerges.
pub fn critical_p(n: u32, k: u8, j: u8) -> Result<f64> {
    check_kj(k, j)?;
    if n < k as u32 {
        return Err(Error::BadParameter(format!("need n >= k, got n={n}, k={k}")));
    }
    let c = binom(k as u64, j as u64)? - 1;
    let outside = binom(n as u64, (k - j) as u64)?;
    Ok(1.0 / (c as f64 * outside as f64))
}

fn check_kj(k: u8, j: u8) -> Result<()> {
    if k < 2 || j == 0 || j >= k {
        return Err(Error::BadParameter(format!("need 1 <= j <= k-1, got j={j}, k={k}")));
    }
    Ok(())
}

/// Per-level constants of the recursive degree bound, `1 <= ell <= j-1`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EllConstants {
    pub ell: u8,
    /// `C(k-ell, j-ell) - 1`
    pub c_ell: u64,
    /// `max(0, j + ell - k)`
    pub w0: u8,
    /// `c_ell / c`
    pub r: f64,
    /// `(1 + alpha)(1 + eps) * r`, guaranteed `< 1`
    pub r_prime: f64,
    pub c_prime: f64,
    /// the degree-bound constant `C_ell`
    pub big: f64,
}

/// The constants family governing generation degree bounds.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TheoryConstants {
    pub k: u8,
    pub j: u8,
    pub eps: f64,
    pub alpha: f64,
    /// `C(k,j) - 1`: new j-sets revealed by one edge, and the branching
    /// multiplier.
    pub c: u64,
    pub levels: Vec<EllConstants>,
}

impl TheoryConstants {
    /// `C_ell`, with `C_0 = 1`.
    pub fn big_c(&self, ell: u8) -> f64 {
        if ell == 0 {
            1.0
        } else {
            self.levels[ell as usize - 1].big
        }
    }

    pub fn c_ell(&self, ell: u8) -> u64 {
        if ell == 0 {
            self.c
        } else {
            self.levels[ell as usize - 1].c_ell
        }
    }
}

/// Builds the constants family for `(k, j, eps)`.
///
/// When `alpha` is omitted it is set to half the headroom below the
/// `r'_ell < 1` boundary: `alpha = ((1+eps) * max_ell r_ell)^-1 / 2 - 1/2`.
pub fn build_constants(k: u8, j: u8, eps: f64, alpha: Option<f64>) -> Result<TheoryConstants> {
    check_kj(k, j)?;
    if !(0.0..1.0).contains(&eps) || eps <= 0.0 {
        return Err(Error::BadParameter(format!("need eps in (0,1), got {eps}")));
    }
    let c = binom_u64(k as u64, j as u64)? - 1;
    let r_max = (1..j)
        .map(|ell| {
            let c_ell = binom_u64((k - ell) as u64, (j - ell) as u64).unwrap() - 1;
            c_ell as f64 / c as f64
        })
        .fold(0.0f64, f64::max);
    let alpha = match alpha {
        Some(a) => {
            if a <= 0.0 {
                return Err(Error::BadParameter(format!("need alpha > 0, got {a}")));
            }
            a
        }
        None => {
            if j == 1 {
                1.0 // no levels to constrain; value is unused
            } else {
                0.5 * (1.0 / ((1.0 + eps) * r_max) - 1.0)
            }
        }
    };
    if j > 1 && (1.0 + alpha) * (1.0 + eps) * r_max >= 1.0 {
        return Err(Error::BadParameter(format!(
            "alpha={alpha} makes r'_ell >= 1 (max r_ell = {r_max}, eps = {eps})"
        )));
    }

    let mut levels: Vec<EllConstants> = Vec::new();
    let factorial = |m: u64| -> f64 { (1..=m).map(|x| x as f64).product::<f64>().max(1.0) };
    for ell in 1..j {
        let c_ell = binom_u64((k - ell) as u64, (j - ell) as u64)? - 1;
        let w0 = (j + ell).saturating_sub(k);
        let r = c_ell as f64 / c as f64;
        let r_prime = (1.0 + alpha) * (1.0 + eps) * r;
        // sum over w of C(ell, w) * C_w / (k-j-ell+w)!
        let mut sum = 0.0;
        for w in w0..ell {
            let big_w = if w == 0 { 1.0 } else { levels[w as usize - 1].big };
            let fall = (k - j) as i64 - ell as i64 + w as i64;
            debug_assert!(fall >= 0, "w0 keeps the factorial argument nonnegative");
            sum += binom_f64(ell as u64, w as u64) * big_w / factorial(fall as u64);
        }
        let inner = (1.0 + alpha) * (1.0 + eps) * factorial((k - j) as u64) / c as f64 * sum;
        let c_prime = binom_f64((k - ell) as u64, (j - ell) as u64) * inner.max(3.0);
        let big = (c_prime + 2.0 * c_ell as f64 + 1.0) / (1.0 - r_prime);
        levels.push(EllConstants { ell, c_ell, w0, r, r_prime, c_prime, big });
    }
    Ok(TheoryConstants { k, j, eps, alpha, c, levels })
}

/// Solution of the extinction equation
/// `rho = (1 - p * (1 - rho^c))^((1-zeta) * N)`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FixedPointResult {
    /// Death probability of the process (vertices represent `j`-sets), i.e.
    /// the per-start extinction probability; `survival` is already the
    /// per-`j`-set survival probability.
    pub extinction: f64,
    pub survival: f64,
    pub residual: f64,
    pub iterations: u64,
}

/// Minimal fixed point of the extinction equation, found by iterating
/// from `rho = 0` (which converges to the true extinction probability;
/// starting from 1 would return the trivial fixed point).
pub fn extinction_fixed_point(n_trials: f64, p: f64, c: u64, zeta: f64) -> Result<FixedPointResult> {
    extinction_fixed_point_damped(n_trials, p, c, zeta, 1.0)
}

/// Same as [`extinction_fixed_point`] with an explicit damping factor in
/// `(0, 1]`; all dampings converge to the same minimal fixed point.
pub fn extinction_fixed_point_damped(
    n_trials: f64,
    p: f64,
    c: u64,
    zeta: f64,
    damping: f64,
) -> Result<FixedPointResult> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::BadProbability(p));
    }
    if !(0.0..1.0).contains(&zeta) {
        return Err(Error::BadParameter(format!("need zeta in [0,1), got {zeta}")));
    }
    if !(0.0..=1.0).contains(&damping) || damping == 0.0 {
        return Err(Error::BadParameter(format!("need damping in (0,1], got {damping}")));
    }
    if n_trials <= 0.0 || c == 0 {
        return Err(Error::BadParameter("need N > 0 and c >= 1".into()));
    }
    let exponent = (1.0 - zeta) * n_trials;
    let mean = exponent * c as f64 * p;
    if mean <= 1.0 {
        return Ok(FixedPointResult { extinction: 1.0, survival: 0.0, residual: 0.0, iterations: 0 });
    }
    // 1 - p(1-rho^c) raised to a huge exponent: go through ln_1p for
    // precision.
    let step = |rho: f64| -> f64 { (exponent * (-p * (1.0 - rho.powi(c as i32))).ln_1p()).exp() };
    let mut rho = 0.0f64;
    let max_iter = 1_000_000u64;
    for it in 1..=max_iter {
        let next = step(rho);
        let new_rho = (1.0 - damping) * rho + damping * next;
        let residual = (step(new_rho) - new_rho).abs();
        rho = new_rho;
        if residual < 1e-12 {
            return Ok(FixedPointResult {
                extinction: rho,
                survival: 1.0 - rho,
                residual,
                iterations: it,
            });
        }
    }
    Err(Error::NoConvergence { residual: (step(rho) - rho).abs(), iterations: max_iter })
}

/// Predicted size of the giant `j`-component at `p = (1+eps) * p_hat`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GiantPrediction {
    pub p_hat: f64,
    pub p: f64,
    /// `(2 eps / c) * C(n, j)`: the first-order asymptotic size.
    pub asymptotic_size: f64,
    /// survival of the offspring-law fixed point times `C(n, j)`.
    pub solver_size: f64,
    pub survival: f64,
}

pub fn giant_prediction(n: u32, k: u8, j: u8, eps: f64) -> Result<GiantPrediction> {
    check_kj(k, j)?;
    if !(0.0..1.0).contains(&eps) || eps <= 0.0 {
        return Err(Error::BadParameter(format!("need eps in (0,1), got {eps}")));
    }
    let p_hat = critical_p(n, k, j)?;
    let p = (1.0 + eps) * p_hat;
    let c = binom_u64(k as u64, j as u64)? - 1;
    let n_trials = binom_f64(n as u64, (k - j) as u64);
    let fp = extinction_fixed_point(n_trials, p, c, 0.0)?;
    let jsets = binom_f64(n as u64, j as u64);
    Ok(GiantPrediction {
        p_hat,
        p,
        asymptotic_size: 2.0 * eps / c as f64 * jsets,
        solver_size: fp.survival * jsets,
        survival: fp.survival,
    })
}

/// Margin constant for the subcritical size bound, frozen from a
/// brute-force census sweep at n=200, k=3, j=2, eps=0.15 (1000 samples,
/// observed max ratio 1.80, margin 3x): see tests/calibration.rs.
pub const SUBCRITICAL_SIZE_MARGIN: f64 = 5.5;

/// Concrete subcritical size bound: `c_sub * eps^-2 * ln C(n, j)`.
/// All components should stay below this whp at `p = (1-eps) * p_hat`.
pub fn subcritical_bound(n: u32, j: u8, eps: f64, c_sub: f64) -> f64 {
    c_sub * eps.powi(-2) * binom_f64(n as u64, j as u64).ln()
}

/// Defaults for the exploration stopping rules and the lower-coupling
/// slack, instantiated for finite `(n, k, j, eps)`.
#[derive(Debug, Clone)]
pub struct ParamSet {
    pub stop: StopParams,
    /// lower-coupling slack, `gamma^2 = lambda * eps`
    pub gamma: f64,
    pub warnings: Vec<String>,
}

/// Builds default stopping parameters.
///
/// `delta = 0.15`. `lambda` is
/// `max(n^(-1/2+delta/2), n^(-j/3), (eps^-1 n^min(j,1-delta))^-1/2) * sqrt(eps)`
/// clamped to `[n^-j, eps/10]`: the `eps/10` ceiling keeps the size cutoff
/// `lambda n^j` well below the giant (~ `2 eps/c * C(n,j)`), so the escape
/// event tracks survival at finite `n` even though the asymptotic window
/// floor `max(n^(-1/2+delta/2), n^(-j/3))` is not yet below `eps` at desk
/// scale. `xi = (ln C(n,j))^1.5`; `gamma = sqrt(lambda * eps)`.
pub fn default_params(n: u32, k: u8, j: u8, eps: f64) -> Result<ParamSet> {
    check_kj(k, j)?;
    if !(0.0..1.0).contains(&eps) || eps <= 0.0 {
        return Err(Error::BadParameter(format!("need eps in (0,1), got {eps}")));
    }
    let delta = 0.15;
    let nf = n as f64;
    let mut warnings = Vec::new();
    let floor = nf.powf(-0.5 + delta / 2.0).max(nf.powf(-(j as f64) / 3.0));
    if floor >= eps {
        warnings.push(format!(
            "asymptotic lambda window (max(n^(-1/2+d/2), n^(-j/3)) = {floor:.4}, eps = {eps}) is empty at this scale"
        ));
    }
    let third = 1.0 / (nf.powf((j as f64).min(1.0 - delta)) / eps).sqrt();
    let mut lambda = (floor.max(third) * eps.sqrt()).clamp(nf.powi(-(j as i32)), eps / 10.0);
    let njf = nf.powi(j as i32);
    if lambda * njf < 1.0 {
        lambda = 2.0 / njf;
        warnings.push(format!("lambda raised to 2/n^j = {lambda:.3e} so the size cutoff is >= 1"));
    }
    if eps.powi(3) * njf < 50.0 {
        warnings.push(format!("eps^3 n^j = {:.2} is small; asymptotic predictions are rough", eps.powi(3) * njf));
    }
    if eps.powi(2) * nf.powf(1.0 - delta) < 50.0 {
        warnings.push(format!(
            "eps^2 n^(1-delta) = {:.2} is small; asymptotic predictions are rough",
            eps.powi(2) * nf.powf(1.0 - delta)
        ));
    }
    let xi = binom_f64(n as u64, j as u64).ln().powf(1.5);
    let stop = StopParams::new(n, j, lambda, delta, xi, ExploreMode::ToStop)?;
    Ok(ParamSet { stop, gamma: (lambda * eps).sqrt(), warnings })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn critical_p_values() {
        // graph case: 1/n
        assert!((critical_p(100, 2, 1).unwrap() - 0.01).abs() < 1e-16);
        // k=3, j=2: 1/(2 C(10,1))
        assert!((critical_p(10, 3, 2).unwrap() - 1.0 / 20.0).abs() < 1e-16);
        // k=3, j=1: 1/(2 C(10,2)) = 1/90
        assert!((critical_p(10, 3, 1).unwrap() - 1.0 / 90.0).abs() < 1e-16);
        assert!(critical_p(10, 3, 3).is_err());
        assert!(critical_p(10, 1, 0).is_err());
    }

    #[test]
    fn critical_p_graph_scaling() {
        for n in [100u32, 10_000, 1_000_000] {
            let p = critical_p(n, 2, 1).unwrap();
            assert!((p * n as f64 - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn constants_hand_example() {
        // k=3, j=2, eps=0.01, alpha=0.1:
        // c=2, c_1=1, w0=0, sum = C(1,0)*C_0/0! = 1,
        // inner = 1.1*1.01*1/2 = 0.5555 < 3 so C'_1 = 2*3 = 6,
        // r'_1 = 0.5555, C_1 = 9/0.4445.
        let tc = build_constants(3, 2, 0.01, Some(0.1)).unwrap();
        assert_eq!(tc.c, 2);
        let l = &tc.levels[0];
        assert_eq!(l.c_ell, 1);
        assert_eq!(l.w0, 0);
        assert!((l.r - 0.5).abs() < 1e-15);
        assert!((l.r_prime - 1.1 * 1.01 * 0.5).abs() < 1e-15);
        assert!((l.c_prime - 6.0).abs() < 1e-12);
        let expect = 9.0 / (1.0 - 1.1 * 1.01 * 0.5);
        assert!((l.big - expect).abs() < 1e-10);
        assert!((expect - 20.25).abs() < 0.01);
        assert!((tc.big_c(0) - 1.0).abs() == 0.0);
    }

    #[test]
    fn constants_j1_trivial() {
        let tc = build_constants(3, 1, 0.1, None).unwrap();
        assert!(tc.levels.is_empty());
        assert_eq!(tc.big_c(0), 1.0);
    }

    #[test]
    fn constants_reject_bad_alpha() {
        // r_max = 1/2 at k=3, j=2; alpha = 1.0 gives r' = 2*1.1*0.5 >= 1.
        assert!(build_constants(3, 2, 0.1, Some(1.0)).is_err());
        assert!(build_constants(3, 2, 0.1, Some(-0.5)).is_err());
    }

    #[test]
    fn constants_monotone_in_eps_and_alpha() {
        for (k, j) in [(3u8, 2u8), (4, 3), (5, 3)] {
            let mut prev: Option<Vec<f64>> = None;
            for eps in [0.01, 0.05, 0.1, 0.2] {
                let tc = build_constants(k, j, eps, Some(0.05)).unwrap();
                let bigs: Vec<f64> = (0..j).map(|l| tc.big_c(l)).collect();
                if let Some(p) = &prev {
                    for (a, b) in p.iter().zip(&bigs) {
                        assert!(b >= a, "C_ell decreased in eps at k={k}, j={j}");
                    }
                }
                prev = Some(bigs);
            }
            let lo = build_constants(k, j, 0.1, Some(0.01)).unwrap();
            let hi = build_constants(k, j, 0.1, Some(0.05)).unwrap();
            for l in 0..j {
                assert!(hi.big_c(l) >= lo.big_c(l), "C_ell decreased in alpha");
            }
        }
    }

    #[test]
    fn fixed_point_graph_case() {
        // c=1, N*p = 1.1: survival of the Poisson-limit process. The
        // independent oracle iterates s = 1 - exp(-1.1 s) directly.
        let mut s_oracle = 0.5f64;
        for _ in 0..10_000 {
            s_oracle = -(-1.1 * s_oracle).exp_m1();
        }
        let fp = extinction_fixed_point(1e5, 1.1e-5, 1, 0.0).unwrap();
        assert!(fp.residual < 1e-12);
        assert!(
            (fp.survival - s_oracle).abs() < 1e-4,
            "solver {} vs oracle {s_oracle}",
            fp.survival
        );
        assert!((fp.survival - 0.17615).abs() < 2e-4);
    }

    #[test]
    fn fixed_point_subcritical_is_zero() {
        for eps in [0.01, 0.1, 0.3] {
            let p = (1.0 - eps) / (2.0 * 700.0);
            let fp = extinction_fixed_point(700.0, p, 2, 0.0).unwrap();
            assert_eq!(fp.survival, 0.0);
        }
        // exactly critical also dies out
        let fp = extinction_fixed_point(700.0, 1.0 / 1400.0, 2, 0.0).unwrap();
        assert_eq!(fp.survival, 0.0);
    }

    #[test]
    fn fixed_point_damping_agrees() {
        let a = extinction_fixed_point_damped(700.0, 1.15 / 1400.0, 2, 0.0, 1.0).unwrap();
        let b = extinction_fixed_point_damped(700.0, 1.15 / 1400.0, 2, 0.0, 0.5).unwrap();
        assert!((a.extinction - b.extinction).abs() < 1e-10);
    }

    #[test]
    fn fixed_point_small_eps_matches_2eps_over_c() {
        // near criticality survival ~ 2 eps / c
        for (c, n_tr) in [(1u64, 1e6f64), (2, 1e6)] {
            for eps in [0.02f64, 0.01] {
                let p = (1.0 + eps) / (c as f64 * n_tr);
                let fp = extinction_fixed_point(n_tr, p, c, 0.0).unwrap();
                let target = 2.0 * eps / c as f64;
                assert!(
                    (fp.survival - target).abs() / target < 0.1,
                    "c={c} eps={eps}: survival {} vs {target}",
                    fp.survival
                );
            }
        }
    }

    #[test]
    fn giant_prediction_shapes() {
        // graph case: asymptotic 2 eps n
        let g = giant_prediction(100_000, 2, 1, 0.1).unwrap();
        assert!((g.asymptotic_size - 2.0 * 0.1 * 100_000.0).abs() < 1e-6);
        assert!((g.survival - 0.17615).abs() < 2e-4);
        // solver/asymptotic ratio tends to 1 as eps -> 0
        let mut last_gap = f64::INFINITY;
        for eps in [0.1, 0.05, 0.01] {
            let g = giant_prediction(1000, 3, 2, eps).unwrap();
            let ratio = g.solver_size / g.asymptotic_size;
            let gap = (ratio - 1.0).abs();
            assert!(gap < 2.0 * eps, "eps={eps}: ratio {ratio}");
            assert!(gap < last_gap);
            last_gap = gap;
        }
    }

    #[test]
    fn subcritical_bound_scales() {
        let b1 = subcritical_bound(700, 2, 0.15, 1.0);
        let b2 = subcritical_bound(700, 2, 0.15 / 2f64.sqrt(), 1.0);
        assert!((b2 / b1 - 2.0).abs() < 1e-12, "halving eps^2 doubles the bound");
        assert!((subcritical_bound(700, 2, 0.15, 2.0) / b1 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn default_params_keep_cutoffs_usable() {
        for (n, k, j, eps) in
            [(500u32, 3u8, 2u8, 0.2f64), (500, 3, 2, 0.1), (700, 3, 2, 0.15), (100_000, 2, 1, 0.1)]
        {
            let ps = default_params(n, k, j, eps).unwrap();
            let lambda = ps.stop.lambda;
            assert!(lambda < eps, "lambda {lambda} not below eps {eps}");
            let njf = (n as f64).powi(j as i32);
            assert!(lambda * njf >= 1.0, "size cutoff below one j-set");
            // the escape cutoff must sit below the predicted giant, or
            // surviving explorations could exhaust their component first
            let giant = giant_prediction(n, k, j, eps).unwrap().solver_size;
            assert!(
                lambda * njf < 0.5 * giant,
                "cutoff {} not below giant {giant}",
                lambda * njf
            );
            assert!(ps.stop.delta > 0.0 && ps.stop.delta < 1.0 / 6.0);
            assert!((ps.gamma * ps.gamma - lambda * eps).abs() < 1e-15);
        }
    }
}
