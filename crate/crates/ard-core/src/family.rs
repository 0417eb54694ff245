//! Count-distribution kernels shared by fitting, residuals, and rootograms.
//!
//! The negative binomial uses the mean/size parameterization: mean mu,
//! overdispersion omega, variance mu + mu^2/omega, so omega -> infinity
//! recovers the Poisson.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

/// Response distribution of the count model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Poisson,
    NegBinomial,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Poisson => write!(f, "poisson"),
            Family::NegBinomial => write!(f, "negbinomial"),
        }
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "poisson" | "pois" => Ok(Family::Poisson),
            "negbinomial" | "neg_binomial" | "nb" | "negbin" => Ok(Family::NegBinomial),
            other => Err(format!(
                "unknown family '{other}' (expected poisson or negbinomial)"
            )),
        }
    }
}

/// log P(Y = y) for the given family. `omega` is ignored for Poisson.
///
/// For the negative binomial, lgamma(y+omega) - lgamma(omega) is evaluated as
/// an explicit product for small y; the naive difference loses ~9 digits when
/// omega is near its upper clamp.
pub(crate) fn log_pmf(family: Family, y: u64, mu: f64, omega: f64) -> f64 {
    let mu = mu.max(f64::MIN_POSITIVE);
    let yf = y as f64;
    match family {
        Family::Poisson => yf * mu.ln() - mu - ln_gamma(yf + 1.0),
        Family::NegBinomial => {
            let lg_ratio = if y <= 64 {
                (0..y).map(|j| (omega + j as f64).ln()).sum::<f64>()
            } else {
                ln_gamma(yf + omega) - ln_gamma(omega)
            };
            lg_ratio - ln_gamma(yf + 1.0) - omega * (mu / omega).ln_1p()
                + yf * (mu.ln() - (omega + mu).ln())
        }
    }
}

pub(crate) fn pmf(family: Family, y: u64, mu: f64, omega: f64) -> f64 {
    log_pmf(family, y, mu, omega).exp()
}

/// P(Y <= y). Negative y gives 0. Accumulates the pmf through a log-space
/// recurrence, so F(y) - F(y-1) equals the pmf by construction and the
/// result is nondecreasing in y.
pub(crate) fn cdf(family: Family, y: i64, mu: f64, omega: f64) -> f64 {
    if y < 0 {
        return 0.0;
    }
    let mu = mu.max(f64::MIN_POSITIVE);
    let y = y as u64;
    let mut lp = match family {
        Family::Poisson => -mu,
        Family::NegBinomial => -omega * (mu / omega).ln_1p(),
    };
    let mut acc = lp.exp();
    for j in 0..y {
        let jf = j as f64;
        lp += match family {
            Family::Poisson => mu.ln() - (jf + 1.0).ln(),
            Family::NegBinomial => {
                (omega + jf).ln() + mu.ln() - (jf + 1.0).ln() - (omega + mu).ln()
            }
        };
        acc += lp.exp();
        if acc >= 1.0 {
            return 1.0;
        }
    }
    acc.min(1.0)
}

/// Score dl/deta and Fisher weight -E[d2l/deta2] for one cell under the log
/// link. Poisson: (y - mu, mu). Negative binomial: scores shrink by
/// omega/(omega+mu).
#[inline]
pub(crate) fn score_weight(family: Family, y: f64, mu: f64, omega: f64) -> (f64, f64) {
    match family {
        Family::Poisson => (y - mu, mu),
        Family::NegBinomial => {
            let shrink = omega / (omega + mu);
            ((y - mu) * shrink, mu * shrink)
        }
    }
}
