//! Synthetic ARD generator with known ground truth.
//!
//! Covers the standard model classes: Binomial (degree/prevalence only),
//! Poisson and negative-binomial log-linear models with local/global
//! covariates, and the Poisson models with multivariate-normal random
//! effects that induce group correlation (b_i ~ MVN_K) or degree correlation
//! ((alpha_i, b_i) ~ MVN_{K+1}).

use std::collections::BTreeMap;

use ndarray::Array2;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Gamma, Poisson, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::dataset::ArdDataset;
use crate::error::{ArdError, Result};
use crate::family::Family;
use crate::rng::derive_key;

/// Response family of the generator. Binomial is generated for completeness
/// but never fitted (the fitted null models are Poisson and negative
/// binomial).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SimFamily {
    Binomial,
    Poisson,
    NegBinomial,
}

impl From<Family> for SimFamily {
    fn from(f: Family) -> Self {
        match f {
            Family::Poisson => SimFamily::Poisson,
            Family::NegBinomial => SimFamily::NegBinomial,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrelationMode {
    None,
    /// b_i ~ MVN_K(0, Sigma): correlated group-level deviations.
    Group,
    /// (alpha_i, b_i) ~ MVN_{K+1}(0, Sigma): log-degrees correlated with the
    /// deviations.
    Degree,
}

/// Complete description of one synthetic dataset.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimulationSpec {
    pub n: usize,
    pub k: usize,
    pub family: SimFamily,
    pub correlation: CorrelationMode,
    /// Number of candidate covariate columns (X1..Xp); the first half are
    /// standard normal, the rest Bernoulli(0.5).
    pub p_total: usize,
    /// Active local covariates: column index -> per-group slopes (length K).
    pub active_local: BTreeMap<usize, Vec<f64>>,
    /// Active global covariates: column index -> shared coefficient.
    pub active_global: BTreeMap<usize, f64>,
    pub alpha_mean: f64,
    pub alpha_sd: f64,
    /// Group intercepts (length K).
    pub beta_values: Vec<f64>,
    /// Per-group overdispersion (required for NegBinomial).
    pub omega: Option<Vec<f64>>,
    /// Random-effect covariance: K x K for Group, (K+1) x (K+1) for Degree
    /// with the alpha row first.
    #[serde(with = "crate::dataset::array2_opt_serde")]
    pub sigma: Option<Array2<f64>>,
    pub seed: u64,
}

/// Ground truth retained for oracle checks.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimulationTruth {
    pub family: SimFamily,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub global_coef: BTreeMap<usize, f64>,
    pub local_coef: BTreeMap<usize, Vec<f64>>,
    pub omega: Option<Vec<f64>>,
    /// Realized random effects (n x K; zero when correlation = None).
    #[serde(skip, default)]
    pub b: Array2<f64>,
    /// True cell means.
    #[serde(skip, default)]
    pub mu: Array2<f64>,
}

impl SimulationSpec {
    fn validate(&self) -> Result<()> {
        if self.n < 2 || self.k < 2 {
            return Err(ArdError::InvalidArgument("need n >= 2 and K >= 2".into()));
        }
        if self.beta_values.len() != self.k {
            return Err(ArdError::DimensionMismatch(format!(
                "{} beta values for K = {}",
                self.beta_values.len(),
                self.k
            )));
        }
        for (&c, slopes) in &self.active_local {
            if c >= self.p_total {
                return Err(ArdError::InvalidArgument(format!(
                    "local covariate index {c} out of range (p = {})",
                    self.p_total
                )));
            }
            if slopes.len() != self.k {
                return Err(ArdError::DimensionMismatch(format!(
                    "local slopes for X{} have length {}, expected K = {}",
                    c + 1,
                    slopes.len(),
                    self.k
                )));
            }
            if self.active_global.contains_key(&c) {
                return Err(ArdError::InvalidArgument(format!(
                    "covariate X{} is both local and global",
                    c + 1
                )));
            }
        }
        if let Some(&c) = self.active_global.keys().find(|&&c| c >= self.p_total) {
            return Err(ArdError::InvalidArgument(format!(
                "global covariate index {c} out of range (p = {})",
                self.p_total
            )));
        }
        match self.family {
            SimFamily::NegBinomial => {
                let omega = self.omega.as_ref().ok_or_else(|| {
                    ArdError::InvalidArgument("negative binomial spec needs omega".into())
                })?;
                if omega.len() != self.k || omega.iter().any(|&w| !(w > 0.0)) {
                    return Err(ArdError::InvalidArgument(
                        "omega must have length K with positive entries".into(),
                    ));
                }
            }
            SimFamily::Binomial => {
                if self.beta_values.iter().any(|&b| b >= 0.0) {
                    return Err(ArdError::InvalidArgument(
                        "binomial mode needs exp(beta) in (0, 1), i.e. beta < 0".into(),
                    ));
                }
            }
            SimFamily::Poisson => {}
        }
        if self.correlation != CorrelationMode::None {
            let sigma = self
                .sigma
                .as_ref()
                .ok_or_else(|| ArdError::InvalidArgument("correlated mode needs Sigma".into()))?;
            let want = match self.correlation {
                CorrelationMode::Group => self.k,
                CorrelationMode::Degree => self.k + 1,
                CorrelationMode::None => unreachable!(),
            };
            if sigma.dim() != (want, want) {
                return Err(ArdError::DimensionMismatch(format!(
                    "Sigma is {:?}, expected {want}x{want}",
                    sigma.dim()
                )));
            }
        }
        Ok(())
    }
}

/// Generates one dataset plus its ground truth. Deterministic in `spec.seed`;
/// every cell and covariate has its own derived stream, so the output does
/// not depend on evaluation order.
pub fn simulate(spec: &SimulationSpec) -> Result<(ArdDataset, SimulationTruth)> {
    spec.validate()?;
    let (n, k, p) = (spec.n, spec.k, spec.p_total);

    // covariates: first half continuous N(0,1), second half Bernoulli(0.5)
    let n_continuous = p.div_ceil(2);
    let mut z = Array2::zeros((n, p));
    for j in 0..p {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_key(spec.seed, &[1, j as u64]));
        for i in 0..n {
            z[[i, j]] = if j < n_continuous {
                rng.sample::<f64, _>(StandardNormal)
            } else {
                f64::from(rng.gen_bool(0.5))
            };
        }
    }

    // random effects and log-degrees
    let mut alpha = vec![0.0; n];
    let mut b = Array2::zeros((n, k));
    match spec.correlation {
        CorrelationMode::None => {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_key(spec.seed, &[2]));
            for a in alpha.iter_mut() {
                *a = spec.alpha_mean + spec.alpha_sd * rng.sample::<f64, _>(StandardNormal);
            }
        }
        CorrelationMode::Group => {
            let root = psd_sqrt(spec.sigma.as_ref().unwrap())?;
            let mut rng = ChaCha8Rng::seed_from_u64(derive_key(spec.seed, &[2]));
            for i in 0..n {
                alpha[i] = spec.alpha_mean + spec.alpha_sd * rng.sample::<f64, _>(StandardNormal);
                let u: Vec<f64> = (0..k)
                    .map(|_| rng.sample::<f64, _>(StandardNormal))
                    .collect();
                for g in 0..k {
                    b[[i, g]] = (0..k).map(|j| root[[g, j]] * u[j]).sum();
                }
            }
        }
        CorrelationMode::Degree => {
            // Sigma already carries the alpha variance in its first row/column
            let root = psd_sqrt(spec.sigma.as_ref().unwrap())?;
            let mut rng = ChaCha8Rng::seed_from_u64(derive_key(spec.seed, &[2]));
            let d = k + 1;
            for i in 0..n {
                let u: Vec<f64> = (0..d)
                    .map(|_| rng.sample::<f64, _>(StandardNormal))
                    .collect();
                let draw: Vec<f64> = (0..d)
                    .map(|g| (0..d).map(|j| root[[g, j]] * u[j]).sum())
                    .collect();
                alpha[i] = spec.alpha_mean + draw[0];
                for g in 0..k {
                    b[[i, g]] = draw[1 + g];
                }
            }
        }
    }

    // cell means and counts
    let mut mu = Array2::zeros((n, k));
    let mut y = Array2::zeros((n, k));
    for i in 0..n {
        for g in 0..k {
            let mut rng =
                ChaCha8Rng::seed_from_u64(derive_key(spec.seed, &[3, i as u64, g as u64]));
            let count =
                match spec.family {
                    SimFamily::Binomial => {
                        // degree/prevalence thinning; covariates are not part of
                        // this model class
                        let size = alpha[i].exp().round().max(1.0);
                        let prob = spec.beta_values[g].exp();
                        mu[[i, g]] = size * prob;
                        rng.sample(Binomial::new(size as u64, prob).map_err(|e| {
                            ArdError::InvalidArgument(format!("binomial draw: {e}"))
                        })?)
                    }
                    SimFamily::Poisson | SimFamily::NegBinomial => {
                        let mut eta = alpha[i] + spec.beta_values[g] + b[[i, g]];
                        for (&c, coef) in &spec.active_global {
                            eta += coef * z[[i, c]];
                        }
                        for (&c, slopes) in &spec.active_local {
                            eta += slopes[g] * z[[i, c]];
                        }
                        let mean = eta.exp();
                        if !(mean <= 1e9) {
                            return Err(ArdError::InvalidArgument(format!(
                                "cell mean {mean:.3e} exceeds 1e9 at ({i}, {g}); check magnitudes"
                            )));
                        }
                        mu[[i, g]] = mean;
                        let lambda = match spec.family {
                            SimFamily::Poisson => mean,
                            SimFamily::NegBinomial => {
                                // gamma-Poisson mixture: lambda = mean * Gamma(omega, 1/omega)
                                let omega = spec.omega.as_ref().unwrap()[g];
                                let gamma = Gamma::new(omega, 1.0 / omega).map_err(|e| {
                                    ArdError::InvalidArgument(format!("gamma draw: {e}"))
                                })?;
                                mean * rng.sample(gamma)
                            }
                            SimFamily::Binomial => unreachable!(),
                        };
                        if lambda <= 0.0 {
                            0
                        } else {
                            rng.sample(Poisson::new(lambda).map_err(|e| {
                                ArdError::InvalidArgument(format!("poisson draw: {e}"))
                            })?) as u64
                        }
                    }
                };
            y[[i, g]] = count;
        }
    }

    let width = (n as f64).log10().ceil() as usize + 1;
    let dataset = ArdDataset::new(
        y,
        (0..n).map(|i| format!("r{:0width$}", i + 1)).collect(),
        z,
        (1..=p).map(|j| format!("X{j}")).collect(),
        (1..=k).map(|g| format!("G{g:02}")).collect(),
    )?;
    let truth = SimulationTruth {
        family: spec.family,
        alpha,
        beta: spec.beta_values.clone(),
        global_coef: spec.active_global.clone(),
        local_coef: spec.active_local.clone(),
        omega: spec.omega.clone(),
        b,
        mu,
    };
    Ok((dataset, truth))
}

/// Symmetric PSD square root via eigendecomposition; rejects matrices with
/// meaningfully negative eigenvalues.
fn psd_sqrt(sigma: &Array2<f64>) -> Result<Array2<f64>> {
    let d = sigma.nrows();
    if sigma.ncols() != d {
        return Err(ArdError::DimensionMismatch("Sigma must be square".into()));
    }
    let m = nalgebra::DMatrix::from_fn(d, d, |i, j| sigma[[i, j]]);
    if (&m - m.transpose()).amax() > 1e-10 {
        return Err(ArdError::InvalidArgument("Sigma must be symmetric".into()));
    }
    let eig = nalgebra::SymmetricEigen::new(m);
    let max_eig = eig.eigenvalues.amax().max(1e-300);
    let mut root = Array2::zeros((d, d));
    for (idx, &lam) in eig.eigenvalues.iter().enumerate() {
        if lam < -1e-8 * max_eig {
            return Err(ArdError::InvalidArgument(format!(
                "Sigma is not positive semidefinite (eigenvalue {lam:.3e})"
            )));
        }
        let s = lam.max(0.0).sqrt();
        for i in 0..d {
            for j in 0..d {
                root[[i, j]] += s * eig.eigenvectors[(i, idx)] * eig.eigenvectors[(j, idx)];
            }
        }
    }
    Ok(root)
}

/// Named scenarios: four workflow demonstrations plus the no-structure null
/// used for type-I-error calibration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Poisson, no correlation; X3 and X6 local, X5 global.
    Sim1,
    /// Negative binomial, group correlation, no covariates.
    Sim2,
    /// Negative binomial, degree correlation; X1 local, X5 and X6 global.
    Sim3,
    /// Poisson, group correlation; X1 and X5 local, X4 and X6 global.
    Sim4,
    /// Null data: no covariates, no correlation, omega = 1 for NB.
    TypeI { n: usize, k: usize, family: Family },
}

impl std::str::FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sim1" => Ok(Preset::Sim1),
            "sim2" => Ok(Preset::Sim2),
            "sim3" => Ok(Preset::Sim3),
            "sim4" => Ok(Preset::Sim4),
            other => Err(format!("unknown preset '{other}' (expected sim1..sim4)")),
        }
    }
}

const PRESET_N: usize = 500;
const PRESET_K: usize = 20;
const PRESET_P: usize = 6;
const COEF_MAGNITUDE: f64 = 0.5;
const SIGMA_VARIANCE: f64 = 0.25;
const SIGMA_CORRELATION: f64 = 0.5;
const PRESET_ALPHA_SD: f64 = 0.5;

/// Builds the fully populated spec for a named scenario.
pub fn preset(name: Preset, seed: u64) -> SimulationSpec {
    let (n, k, family) = match name {
        Preset::TypeI { n, k, family } => (n, k, SimFamily::from(family)),
        Preset::Sim1 | Preset::Sim4 => (PRESET_N, PRESET_K, SimFamily::Poisson),
        Preset::Sim2 | Preset::Sim3 => (PRESET_N, PRESET_K, SimFamily::NegBinomial),
    };

    // group mean counts spaced over roughly 0.5 to 8
    let (lo, hi) = (0.5f64.ln(), 8f64.ln());
    let beta_values: Vec<f64> = (0..k)
        .map(|g| lo + (hi - lo) * g as f64 / (k - 1) as f64)
        .collect();

    // alternate slope signs across groups, flipping the phase per covariate
    let local_slopes = |phase: usize| -> Vec<f64> {
        (0..k)
            .map(|g| {
                if (g + phase) % 2 == 0 {
                    COEF_MAGNITUDE
                } else {
                    -COEF_MAGNITUDE
                }
            })
            .collect()
    };

    let mut active_local = BTreeMap::new();
    let mut active_global = BTreeMap::new();
    let mut correlation = CorrelationMode::None;
    match name {
        Preset::Sim1 => {
            active_local.insert(2, local_slopes(0)); // X3
            active_local.insert(5, local_slopes(1)); // X6
            active_global.insert(4, COEF_MAGNITUDE); // X5
        }
        Preset::Sim2 => {
            correlation = CorrelationMode::Group;
        }
        Preset::Sim3 => {
            active_local.insert(0, local_slopes(0)); // X1
            active_global.insert(4, COEF_MAGNITUDE); // X5
            active_global.insert(5, -COEF_MAGNITUDE); // X6
            correlation = CorrelationMode::Degree;
        }
        Preset::Sim4 => {
            active_local.insert(0, local_slopes(0)); // X1
            active_local.insert(4, local_slopes(1)); // X5
            active_global.insert(3, COEF_MAGNITUDE); // X4
            active_global.insert(5, -COEF_MAGNITUDE); // X6
            correlation = CorrelationMode::Group;
        }
        Preset::TypeI { .. } => {}
    }

    // Exchangeable magnitude (variance 0.25, |correlation| 0.5) with signs
    // alternating across groups. A same-sign exchangeable structure is a
    // respondent-level common factor, which the free alpha_i absorb exactly;
    // alternating signs keep the group-level factor out of the respondent
    // effects so the correlation survives fitting, as in the reported
    // workflow outcomes.
    let sigma = match correlation {
        CorrelationMode::None => None,
        CorrelationMode::Group => {
            let base = exchangeable_cov(k, SIGMA_VARIANCE, SIGMA_CORRELATION);
            Some(alternate_signs(&base, 0))
        }
        CorrelationMode::Degree => {
            // exchangeable correlation over (alpha, b_1..b_K) with
            // sd(alpha) = PRESET_ALPHA_SD and sd(b) = sqrt(SIGMA_VARIANCE)
            let d = k + 1;
            let mut sds = vec![SIGMA_VARIANCE.sqrt(); d];
            sds[0] = PRESET_ALPHA_SD;
            let mut m = Array2::zeros((d, d));
            for i in 0..d {
                for j in 0..d {
                    let corr = if i == j { 1.0 } else { SIGMA_CORRELATION };
                    m[[i, j]] = corr * sds[i] * sds[j];
                }
            }
            // leave the alpha row's sign alone; flip every other group
            Some(alternate_signs(&m, 1))
        }
    };

    let omega = match family {
        SimFamily::NegBinomial => Some(match name {
            Preset::TypeI { .. } => vec![1.0; k],
            _ => vec![5.0; k],
        }),
        _ => None,
    };

    SimulationSpec {
        n,
        k,
        family,
        correlation,
        p_total: if matches!(name, Preset::TypeI { .. }) {
            0
        } else {
            PRESET_P
        },
        active_local,
        active_global,
        alpha_mean: 0.0,
        alpha_sd: PRESET_ALPHA_SD,
        beta_values,
        omega,
        sigma,
        seed,
    }
}

fn exchangeable_cov(k: usize, variance: f64, correlation: f64) -> Array2<f64> {
    Array2::from_shape_fn((k, k), |(i, j)| {
        if i == j {
            variance
        } else {
            variance * correlation
        }
    })
}

/// Conjugates a covariance by diag(s) with s alternating +-1 from `start`
/// (indices below `start` keep sign +1). Preserves variances, PSD-ness, and
/// correlation magnitudes.
fn alternate_signs(sigma: &Array2<f64>, start: usize) -> Array2<f64> {
    let d = sigma.nrows();
    let sign = |i: usize| -> f64 {
        if i < start {
            1.0
        } else if (i - start) % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    };
    Array2::from_shape_fn((d, d), |(i, j)| sign(i) * sign(j) * sigma[[i, j]])
}

/// Per-group empirical moments next to the family-implied variance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupMoments {
    pub group: usize,
    pub emp_mean: f64,
    pub emp_var: f64,
    /// Family-implied variance averaged over the group's true cell means.
    pub model_var: f64,
}

/// Simulator self-check: compares each group's sample variance with what the
/// generating family implies.
pub fn empirical_moments(dataset: &ArdDataset, truth: &SimulationTruth) -> Vec<GroupMoments> {
    let y = dataset.counts();
    let (n, k) = y.dim();
    (0..k)
        .map(|g| {
            let mean = y.column(g).iter().map(|&v| v as f64).sum::<f64>() / n as f64;
            let var = y
                .column(g)
                .iter()
                .map(|&v| {
                    let d = v as f64 - mean;
                    d * d
                })
                .sum::<f64>()
                / (n as f64 - 1.0);
            let model_var = (0..n)
                .map(|i| {
                    let mu = truth.mu[[i, g]];
                    match truth.family {
                        SimFamily::Poisson => mu,
                        SimFamily::NegBinomial => mu + mu * mu / truth.omega.as_ref().unwrap()[g],
                        SimFamily::Binomial => {
                            // size * p * (1-p) = mu * (1 - p)
                            mu * (1.0 - truth.beta[g].exp())
                        }
                    }
                })
                .sum::<f64>()
                / n as f64;
            GroupMoments {
                group: g,
                emp_mean: mean,
                emp_var: var,
                model_var,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn constant_spec(n: usize, family: SimFamily) -> SimulationSpec {
        SimulationSpec {
            n,
            k: 2,
            family,
            correlation: CorrelationMode::None,
            p_total: 0,
            active_local: BTreeMap::new(),
            active_global: BTreeMap::new(),
            alpha_mean: 5f64.ln(),
            alpha_sd: 0.0,
            beta_values: vec![0.2f64.ln(); 2],
            omega: matches!(family, SimFamily::NegBinomial).then(|| vec![1.0; 2]),
            sigma: None,
            seed: 9,
        }
    }

    #[test]
    fn zero_structure_gives_unit_means() {
        // exp(log 5 + log 0.2) = 1 in every cell
        let (_, truth) = simulate(&constant_spec(10, SimFamily::Poisson)).unwrap();
        for &m in truth.mu.iter() {
            assert_abs_diff_eq!(m, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn same_seed_bit_identical() {
        let spec = preset(Preset::Sim1, 17);
        let (a, _) = simulate(&spec).unwrap();
        let (b, _) = simulate(&spec).unwrap();
        assert_eq!(a, b);
        let other = preset(Preset::Sim1, 18);
        let (c, _) = simulate(&other).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn poisson_moments_check() {
        let mut spec = constant_spec(100_000, SimFamily::Poisson);
        spec.alpha_mean = 20f64.ln(); // mu = 4
        let (ds, truth) = simulate(&spec).unwrap();
        for m in empirical_moments(&ds, &truth) {
            assert_abs_diff_eq!(m.model_var, 4.0, epsilon = 1e-9);
            assert_abs_diff_eq!(m.emp_var, 4.0, epsilon = 0.1);
            assert_abs_diff_eq!(m.emp_mean, 4.0, epsilon = 0.05);
        }
    }

    #[test]
    fn nb_moments_check() {
        let mut spec = constant_spec(100_000, SimFamily::NegBinomial);
        spec.alpha_mean = 20f64.ln(); // mu = 4, omega = 1 -> var = 20
        let (ds, truth) = simulate(&spec).unwrap();
        for m in empirical_moments(&ds, &truth) {
            assert_abs_diff_eq!(m.model_var, 20.0, epsilon = 1e-9);
            assert_abs_diff_eq!(m.emp_var, 20.0, epsilon = 1.0);
        }
    }

    #[test]
    fn group_correlation_matches_sigma() {
        let mut spec = preset(Preset::Sim2, 33);
        spec.n = 10_000;
        let (_, truth) = simulate(&spec).unwrap();
        let b = &truth.b;
        let n = spec.n as f64;
        // empirical correlation of two b columns should be near 0.5
        let col = |j: usize| -> Vec<f64> { (0..spec.n).map(|i| b[[i, j]]).collect() };
        let (x, y) = (col(0), col(7));
        let mx = x.iter().sum::<f64>() / n;
        let my = y.iter().sum::<f64>() / n;
        let cov = x
            .iter()
            .zip(&y)
            .map(|(a, b)| (a - mx) * (b - my))
            .sum::<f64>()
            / n;
        let vx = x.iter().map(|a| (a - mx) * (a - mx)).sum::<f64>() / n;
        let vy = y.iter().map(|a| (a - my) * (a - my)).sum::<f64>() / n;
        let corr = cov / (vx * vy).sqrt();
        let sigma = spec.sigma.as_ref().unwrap();
        let expected = sigma[[0, 7]] / (sigma[[0, 0]] * sigma[[7, 7]]).sqrt();
        assert_abs_diff_eq!(corr, expected, epsilon = 0.05);
        assert_abs_diff_eq!(corr.abs(), 0.5, epsilon = 0.05);
        assert_abs_diff_eq!(vx, 0.25, epsilon = 0.02);
    }

    #[test]
    fn degree_correlation_matches_sigma() {
        let mut spec = preset(Preset::Sim3, 41);
        spec.n = 10_000;
        spec.active_local.clear();
        spec.active_global.clear();
        let (_, truth) = simulate(&spec).unwrap();
        let n = spec.n as f64;
        let a: Vec<f64> = truth.alpha.clone();
        let bcol: Vec<f64> = (0..spec.n).map(|i| truth.b[[i, 3]]).collect();
        let ma = a.iter().sum::<f64>() / n;
        let mb = bcol.iter().sum::<f64>() / n;
        let cov = a
            .iter()
            .zip(&bcol)
            .map(|(x, y)| (x - ma) * (y - mb))
            .sum::<f64>()
            / n;
        let va = a.iter().map(|x| (x - ma) * (x - ma)).sum::<f64>() / n;
        let vb = bcol.iter().map(|x| (x - mb) * (x - mb)).sum::<f64>() / n;
        let sigma = spec.sigma.as_ref().unwrap();
        // b_3 sits at row 4 of the (alpha, b_1..b_K) covariance
        let expected = sigma[[0, 4]] / (sigma[[0, 0]] * sigma[[4, 4]]).sqrt();
        assert_abs_diff_eq!(cov / (va * vb).sqrt(), expected, epsilon = 0.05);
        assert_abs_diff_eq!((cov / (va * vb).sqrt()).abs(), 0.5, epsilon = 0.05);
    }

    #[test]
    fn preset_shapes() {
        let s3 = preset(Preset::Sim3, 0);
        assert_eq!(s3.family, SimFamily::NegBinomial);
        assert_eq!(s3.correlation, CorrelationMode::Degree);
        assert_eq!(s3.active_local.len(), 1);
        assert_eq!(s3.active_global.len(), 2);

        let s4 = preset(Preset::Sim4, 0);
        assert_eq!(s4.family, SimFamily::Poisson);
        assert_eq!(s4.correlation, CorrelationMode::Group);
        assert_eq!(s4.active_local.len() + s4.active_global.len(), 4);

        let t = preset(
            Preset::TypeI {
                n: 100,
                k: 10,
                family: Family::Poisson,
            },
            0,
        );
        assert_eq!((t.n, t.k), (100, 10));
        assert_eq!(t.p_total, 0);
        assert_eq!(t.correlation, CorrelationMode::None);
    }

    #[test]
    fn non_psd_sigma_rejected() {
        let mut spec = preset(Preset::Sim2, 0);
        let k = spec.k;
        let mut bad = Array2::zeros((k, k));
        for i in 0..k {
            bad[[i, i]] = -1.0;
        }
        spec.sigma = Some(bad);
        assert!(simulate(&spec).is_err());
    }

    #[test]
    fn overflow_mean_rejected() {
        let mut spec = constant_spec(10, SimFamily::Poisson);
        spec.alpha_mean = 50.0;
        assert!(simulate(&spec).is_err());
    }

    #[test]
    fn binomial_mode_counts_bounded_by_degree() {
        let spec = SimulationSpec {
            n: 200,
            k: 3,
            family: SimFamily::Binomial,
            correlation: CorrelationMode::None,
            p_total: 0,
            active_local: BTreeMap::new(),
            active_global: BTreeMap::new(),
            alpha_mean: 30f64.ln(),
            alpha_sd: 0.3,
            beta_values: vec![0.1f64.ln(), 0.2f64.ln(), 0.05f64.ln()],
            omega: None,
            sigma: None,
            seed: 5,
        };
        let (ds, truth) = simulate(&spec).unwrap();
        for i in 0..200 {
            let size = truth.alpha[i].exp().round().max(1.0) as u64;
            for g in 0..3 {
                assert!(ds.counts()[[i, g]] <= size);
            }
        }
    }
}
