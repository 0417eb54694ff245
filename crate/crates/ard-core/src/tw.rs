//! Largest-eigenvalue test for residual group correlation.
//!
//! Under no group correlation the randomized quantile residual matrix R has
//! asymptotically independent standard-normal columns, so the largest
//! eigenvalue of R'R, centered and scaled by the Johnstone constants, follows
//! the Tracy-Widom TW1 law. Large T means one direction of group space
//! carries more variance than white noise allows.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{ArdError, Result};
use crate::residual::{ResidualKind, ResidualMatrix};
use crate::tw1_table::{TW1_CDF, TW1_GRID_HI, TW1_GRID_LO, TW1_GRID_STEP};

/// Finite-sample centering/scaling variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Correction {
    /// mu = (sqrt(n-1) + sqrt(K))^2.
    None,
    /// Second-order-accurate variant with n - 1/2 and K - 1/2.
    Half,
}

impl std::fmt::Display for Correction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Correction::None => write!(f, "none"),
            Correction::Half => write!(f, "half"),
        }
    }
}

impl std::str::FromStr for Correction {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "none" => Ok(Correction::None),
            "half" | "1/2" => Ok(Correction::Half),
            other => Err(format!(
                "unknown correction '{other}' (expected none or half)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TwConstants {
    pub mu_n: f64,
    pub sigma_n: f64,
    pub correction: Correction,
}

/// Centering and scaling constants for an n x K residual matrix.
pub fn tw_constants(n: usize, k: usize, correction: Correction) -> TwConstants {
    let (a, b) = match correction {
        Correction::None => (n as f64 - 1.0, k as f64),
        Correction::Half => (n as f64 - 0.5, k as f64 - 0.5),
    };
    let (sa, sb) = (a.sqrt(), b.sqrt());
    let mu_n = (sa + sb) * (sa + sb);
    let sigma_n = (sa + sb) * (1.0 / sa + 1.0 / sb).cbrt();
    TwConstants {
        mu_n,
        sigma_n,
        correction,
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TwTestResult {
    /// Largest eigenvalue of S = R'R / (n-1).
    pub lambda1: f64,
    /// Centered and scaled statistic T = ((n-1) lambda1 - mu_n) / sigma_n.
    pub statistic: f64,
    /// TW1 upper-tail probability of T (NaN until `tw_test` fills it).
    pub p_value: f64,
    pub constants: TwConstants,
    pub n: usize,
    pub k: usize,
    pub reject_at_05: bool,
    /// All eigenvalues of S, descending, for spectrum plots.
    pub spectrum: Vec<f64>,
}

/// Computes lambda1 and the centered statistic without a p-value.
///
/// Requires randomized quantile residuals (Pearson residuals keep the count
/// discreteness that distorts the null spectrum) and n > K.
pub fn tw_statistic(residuals: &ResidualMatrix, correction: Correction) -> Result<TwTestResult> {
    if residuals.kind != ResidualKind::RandomizedQuantile {
        return Err(ArdError::InvalidArgument(
            "the correlation test needs randomized quantile residuals".into(),
        ));
    }
    let (n, k) = residuals.values.dim();
    if n <= k {
        return Err(ArdError::InvalidArgument(format!(
            "need more respondents than groups (n = {n}, K = {k})"
        )));
    }
    if residuals.values.iter().any(|v| !v.is_finite()) {
        return Err(ArdError::InvalidArgument(
            "residual matrix has non-finite entries".into(),
        ));
    }

    // S = R'R/(n-1): K x K symmetric
    let r = &residuals.values;
    let mut s = nalgebra::DMatrix::zeros(k, k);
    for a in 0..k {
        for b in a..k {
            let mut dot = 0.0;
            for i in 0..n {
                dot += r[[i, a]] * r[[i, b]];
            }
            let v = dot / (n as f64 - 1.0);
            s[(a, b)] = v;
            s[(b, a)] = v;
        }
    }
    let mut spectrum: Vec<f64> = s.symmetric_eigenvalues().iter().copied().collect();
    spectrum.sort_by(|x, y| y.partial_cmp(x).unwrap());
    let lambda1 = spectrum[0];

    let constants = tw_constants(n, k, correction);
    let statistic = ((n as f64 - 1.0) * lambda1 - constants.mu_n) / constants.sigma_n;
    Ok(TwTestResult {
        lambda1,
        statistic,
        p_value: f64::NAN,
        constants,
        n,
        k,
        reject_at_05: false,
        spectrum,
    })
}

/// The full test: statistic plus TW1 p-value and rejection flags.
pub fn tw_test(
    residuals: &ResidualMatrix,
    alpha: f64,
    correction: Correction,
) -> Result<TwTestResult> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(ArdError::InvalidArgument(format!(
            "alpha = {alpha} outside (0, 1)"
        )));
    }
    let mut result = tw_statistic(residuals, correction)?;
    result.p_value = tw1_sf(result.statistic);
    result.reject_at_05 = result.p_value < 0.05;
    Ok(result)
}

impl TwTestResult {
    pub fn rejects_at(&self, alpha: f64) -> bool {
        self.p_value < alpha
    }
}

/// TW1 survival function 1 - F1(t), by monotone cubic interpolation of the
/// bundled grid, with exponential tail extrapolation beyond it.
pub fn tw1_sf(t: f64) -> f64 {
    1.0 - tw1_cdf(t)
}

/// TW1 distribution function F1(t).
pub fn tw1_cdf(t: f64) -> f64 {
    let m = TW1_CDF.len();
    if t <= TW1_GRID_LO {
        // left tail: log F1 decays ~ |t|^3/24; extend with the local log-slope
        let slope = (TW1_CDF[1].ln() - TW1_CDF[0].ln()) / TW1_GRID_STEP;
        return (TW1_CDF[0].ln() + slope * (t - TW1_GRID_LO)).exp().min(1.0);
    }
    if t >= TW1_GRID_HI {
        let sf_last = 1.0 - TW1_CDF[m - 1];
        let sf_prev = 1.0 - TW1_CDF[m - 2];
        let slope = (sf_last.ln() - sf_prev.ln()) / TW1_GRID_STEP;
        let sf = (sf_last.ln() + slope * (t - TW1_GRID_HI)).exp();
        return 1.0 - sf.clamp(0.0, 1.0);
    }
    let slopes = pchip_slopes();
    let x = (t - TW1_GRID_LO) / TW1_GRID_STEP;
    let idx = (x.floor() as usize).min(m - 2);
    let u = x - idx as f64;
    let h = TW1_GRID_STEP;
    let (y0, y1) = (TW1_CDF[idx], TW1_CDF[idx + 1]);
    let (d0, d1) = (slopes[idx], slopes[idx + 1]);
    // cubic Hermite on [0, 1]
    let u2 = u * u;
    let u3 = u2 * u;
    let val = y0 * (2.0 * u3 - 3.0 * u2 + 1.0)
        + h * d0 * (u3 - 2.0 * u2 + u)
        + y1 * (-2.0 * u3 + 3.0 * u2)
        + h * d1 * (u3 - u2);
    val.clamp(0.0, 1.0)
}

/// Fritsch-Carlson slopes: a C1 interpolant that preserves monotonicity.
fn pchip_slopes() -> &'static Vec<f64> {
    static SLOPES: OnceLock<Vec<f64>> = OnceLock::new();
    SLOPES.get_or_init(|| {
        let m = TW1_CDF.len();
        let h = TW1_GRID_STEP;
        let secants: Vec<f64> = (0..m - 1)
            .map(|i| (TW1_CDF[i + 1] - TW1_CDF[i]) / h)
            .collect();
        let mut d = vec![0.0; m];
        d[0] = secants[0];
        d[m - 1] = secants[m - 2];
        for i in 1..m - 1 {
            let (s0, s1) = (secants[i - 1], secants[i]);
            d[i] = if s0 * s1 <= 0.0 {
                0.0
            } else {
                2.0 * s0 * s1 / (s0 + s1)
            };
        }
        // limit to 3x the adjacent secants (sufficient for monotonicity)
        for i in 0..m - 1 {
            let s = secants[i];
            if s == 0.0 {
                d[i] = 0.0;
                d[i + 1] = 0.0;
            } else {
                d[i] = d[i].clamp(0.0, 3.0 * s);
                d[i + 1] = d[i + 1].clamp(0.0, 3.0 * s);
            }
        }
        d
    })
}
