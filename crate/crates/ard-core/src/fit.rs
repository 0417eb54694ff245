//! Maximum-likelihood (optionally MAP via quadratic penalty) fitting of the
//! count models
//!
//!   Y[i,k] ~ Family(mu[i,k]),
//!   mu[i,k] = exp(alpha_i + beta_k + global . z_i + local[k] . z_i + rg_k x[i,k])
//!
//! by block-coordinate Newton ascent: respondent effects, then per-group
//! parameter blocks (intercept, local slopes, rg slope, overdispersion), then
//! the global coefficients, with step-halving line searches so the penalized
//! objective never decreases. Subproblems within a block are separable, so
//! parallel execution cannot change the result.

use ndarray::Array2;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::{array2_serde, ArdDataset, CovariateSpec};
use crate::error::{ArdError, Result};
use crate::family::{log_pmf, score_weight, Family};

/// Respondent effects of all-zero rows are pinned here under MLE.
const ALPHA_CLAMP: f64 = -20.0;
/// Linear predictors beyond this are treated as infeasible by line searches.
const ETA_MAX: f64 = 500.0;
const MAX_HALVINGS: u32 = 30;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitConfig {
    pub family: Family,
    pub covariates: CovariateSpec,
    /// Quadratic penalty weight on global, local, and rg coefficients
    /// (never on alpha or beta). 0 gives the MLE; > 0 a Gaussian-prior MAP.
    pub penalty_weight: f64,
    pub max_iter: usize,
    /// Relative change in the penalized objective that counts as converged.
    pub tol: f64,
    /// Clamp range for each group's overdispersion omega_k.
    pub omega_bounds: (f64, f64),
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            family: Family::Poisson,
            covariates: CovariateSpec::none(),
            penalty_weight: 0.0,
            max_iter: 500,
            tol: 1e-8,
            omega_bounds: (1e-3, 1e8),
        }
    }
}

impl FitConfig {
    pub fn poisson() -> Self {
        Self::default()
    }

    pub fn neg_binomial() -> Self {
        Self {
            family: Family::NegBinomial,
            ..Self::default()
        }
    }

    pub fn with_covariates(mut self, covariates: CovariateSpec) -> Self {
        self.covariates = covariates;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(ArdError::InvalidArgument("tol must be > 0".into()));
        }
        if self.max_iter < 1 {
            return Err(ArdError::InvalidArgument("max_iter must be >= 1".into()));
        }
        if !(self.penalty_weight >= 0.0) {
            return Err(ArdError::InvalidArgument(
                "penalty_weight must be >= 0".into(),
            ));
        }
        let (lo, hi) = self.omega_bounds;
        if !(lo > 0.0 && lo < hi) {
            return Err(ArdError::InvalidArgument(
                "omega_bounds must satisfy 0 < low < high".into(),
            ));
        }
        Ok(())
    }
}

/// A fitted count model. `mu_hat` and `objective_trace` are recomputable and
/// excluded from serialization; use [`FittedModel::rehydrate`] after loading.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FittedModel {
    pub family: Family,
    /// Respondent log-degree effects (length n).
    pub alpha: Vec<f64>,
    /// Group intercepts (length K), anchored so mean(beta) matches the
    /// known-size prevalence mean when sizes are available, else 0.
    pub beta: Vec<f64>,
    /// Coefficients of the global covariate columns, in name order.
    pub global_coef: Vec<f64>,
    /// K x |local| matrix of group-specific slopes, columns in name order.
    #[serde(with = "array2_serde")]
    pub local_coef: Array2<f64>,
    /// Per-group slopes on the respondent/group covariate (empty if unused).
    pub rg_coef: Vec<f64>,
    /// Per-group overdispersion (empty for Poisson).
    pub omega: Vec<f64>,
    #[serde(skip, default = "empty_matrix")]
    pub mu_hat: Array2<f64>,
    /// Unpenalized log-likelihood at the solution.
    pub loglik: f64,
    pub penalty_weight: f64,
    pub converged: bool,
    pub iterations: usize,
    pub config: FitConfig,
    pub warnings: Vec<String>,
    /// Penalized objective after each outer sweep (first entry: at init).
    #[serde(skip, default)]
    pub objective_trace: Vec<f64>,
}

fn empty_matrix() -> Array2<f64> {
    Array2::zeros((0, 0))
}

impl FittedModel {
    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn k(&self) -> usize {
        self.beta.len()
    }

    pub fn is_hydrated(&self) -> bool {
        self.mu_hat.nrows() == self.n() && self.mu_hat.ncols() == self.k()
    }

    /// Recomputes `mu_hat` from the stored parameters (needed after
    /// deserialization).
    pub fn rehydrate(&mut self, dataset: &ArdDataset) -> Result<()> {
        self.mu_hat = predict_mu(self, dataset)?;
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self)
            .map_err(|e| ArdError::InvalidArgument(format!("serialize model: {e}")))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| ArdError::InvalidArgument(format!("parse model json: {e}")))
    }

    /// FNV-1a hash of the serialized parameters; ties residual files to the
    /// model that produced them.
    pub fn fingerprint(&self) -> String {
        let json = self.to_json().unwrap_or_default();
        let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
        for b in json.as_bytes() {
            hash ^= u64::from(*b);
            hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
        }
        format!("{hash:016x}")
    }
}

/// Column indices of the covariate matrix used by a fit, in the deterministic
/// (sorted-name) order that coefficient vectors follow.
pub(crate) struct DesignColumns {
    pub global: Vec<usize>,
    pub local: Vec<usize>,
    pub include_rg: bool,
}

pub(crate) fn design_columns(dataset: &ArdDataset, spec: &CovariateSpec) -> Result<DesignColumns> {
    spec.validate_against(dataset)?;
    let resolve = |names: &std::collections::BTreeSet<String>| -> Vec<usize> {
        names
            .iter()
            .map(|n| dataset.covariate_index(n).unwrap())
            .collect()
    };
    Ok(DesignColumns {
        global: resolve(&spec.global),
        local: resolve(&spec.local),
        include_rg: spec.include_rg,
    })
}

/// Fits the configured model. Returns `converged = false` (never an error)
/// when `max_iter` sweeps do not reach `tol`.
pub fn fit(dataset: &ArdDataset, config: &FitConfig) -> Result<FittedModel> {
    config.validate()?;
    let cols = design_columns(dataset, &config.covariates)?;
    for &c in cols.global.iter().chain(cols.local.iter()) {
        let col = dataset.covariates().column(c);
        let first = col[0];
        if col.iter().all(|&v| v == first) {
            return Err(ArdError::InvalidArgument(format!(
                "covariate '{}' is constant and aliased with the intercepts",
                dataset.covariate_names()[c]
            )));
        }
    }

    let mut warnings = Vec::new();
    let state = Optimizer::new(dataset, config, cols, &mut warnings)?.run(&mut warnings);
    state.into_model(dataset, config, warnings)
}

/// Replaces a negative-binomial model's ML dispersion estimates with
/// leverage-corrected Pearson-moment estimates on the fixed fitted means:
/// omega_k solves sum_i (y - mu)^2 / (mu + mu^2/omega) = n - p_k, where p_k
/// counts the group's own parameters plus the share of the respondent
/// effects absorbed by column k (its Fisher-weight leverage).
///
/// The ML dispersion is biased upward here: n respondent effects overfit the
/// cell noise, the fitted variance comes out too small, and residual-based
/// checks then see every column as slightly overdispersed. The moment
/// recalibration removes that bias, which matters for the correlation test's
/// null calibration. Mu and all other parameters are untouched.
pub fn recalibrate_dispersion(model: &mut FittedModel, dataset: &ArdDataset) -> Result<()> {
    if model.family != Family::NegBinomial {
        return Err(ArdError::InvalidArgument(
            "dispersion recalibration applies to negative binomial models".into(),
        ));
    }
    check_dims(model, dataset)?;
    if !model.is_hydrated() {
        return Err(ArdError::InvalidArgument(
            "model has no fitted means; call rehydrate() first".into(),
        ));
    }
    let y = dataset.counts();
    let (n, k) = y.dim();
    let (lo, hi) = model.config.omega_bounds;
    let fixed_params = 1.0
        + model.config.covariates.local.len() as f64
        + f64::from(model.config.covariates.include_rg);

    // the leverage terms depend on omega through the Fisher weights; iterate
    // the (weights -> targets -> omegas) map to its fixed point
    for _ in 0..40 {
        let previous = model.omega.clone();
        let mut row_weight = vec![0.0; n];
        for i in 0..n {
            for g in 0..k {
                let mu = model.mu_hat[[i, g]];
                let w = model.omega[g];
                row_weight[i] += mu * w / (w + mu);
            }
        }
        for g in 0..k {
            let w_cur = model.omega[g];
            let mut alpha_leverage = 0.0;
            for i in 0..n {
                let mu = model.mu_hat[[i, g]];
                alpha_leverage += (mu * w_cur / (w_cur + mu)) / row_weight[i].max(1e-300);
            }
            let target = (n as f64 - fixed_params - alpha_leverage).max(1.0);
            let pearson = |w: f64| -> f64 {
                (0..n)
                    .map(|i| {
                        let mu = model.mu_hat[[i, g]];
                        let d = y[[i, g]] as f64 - mu;
                        d * d / (mu + mu * mu / w)
                    })
                    .sum::<f64>()
            };
            // the statistic is increasing in omega; pin at a bound when no
            // root exists inside
            model.omega[g] = if pearson(hi) <= target {
                hi
            } else if pearson(lo) >= target {
                lo
            } else {
                let (mut a, mut b) = (lo.ln(), hi.ln());
                for _ in 0..60 {
                    let mid = 0.5 * (a + b);
                    if pearson(mid.exp()) < target {
                        a = mid;
                    } else {
                        b = mid;
                    }
                }
                (0.5 * (a + b)).exp()
            };
        }
        let drift = model
            .omega
            .iter()
            .zip(&previous)
            .map(|(a, b)| (a.ln() - b.ln()).abs())
            .fold(0.0f64, f64::max);
        if drift < 1e-9 {
            break;
        }
    }
    model.loglik = log_likelihood(model, dataset)?;
    Ok(())
}

/// Exact log-likelihood of the data under the model's fitted means (penalty
/// excluded).
pub fn log_likelihood(model: &FittedModel, dataset: &ArdDataset) -> Result<f64> {
    check_dims(model, dataset)?;
    if !model.is_hydrated() {
        return Err(ArdError::InvalidArgument(
            "model has no fitted means; call rehydrate() first".into(),
        ));
    }
    let y = dataset.counts();
    let mut total = 0.0;
    for i in 0..model.n() {
        for k in 0..model.k() {
            let omega = model.omega.get(k).copied().unwrap_or(f64::INFINITY);
            total += log_pmf(model.family, y[[i, k]], model.mu_hat[[i, k]], omega);
        }
    }
    Ok(total)
}

/// Recomputes exp(linear predictor) from the stored parameters.
pub fn predict_mu(model: &FittedModel, dataset: &ArdDataset) -> Result<Array2<f64>> {
    check_dims(model, dataset)?;
    let cols = design_columns(dataset, &model.config.covariates)?;
    if cols.global.len() != model.global_coef.len() || cols.local.len() != model.local_coef.ncols()
    {
        return Err(ArdError::DimensionMismatch(
            "coefficient vectors do not match the covariate spec".into(),
        ));
    }
    let z = dataset.covariates();
    let rg = dataset.rg();
    let n = model.n();
    let k = model.k();
    let mut mu = Array2::zeros((n, k));
    for i in 0..n {
        let mut row_base = model.alpha[i];
        for (j, &c) in cols.global.iter().enumerate() {
            row_base += model.global_coef[j] * z[[i, c]];
        }
        for g in 0..k {
            let mut eta = row_base + model.beta[g];
            for (j, &c) in cols.local.iter().enumerate() {
                eta += model.local_coef[[g, j]] * z[[i, c]];
            }
            if cols.include_rg {
                eta += model.rg_coef[g] * rg.expect("validated")[[i, g]];
            }
            mu[[i, g]] = eta.exp();
        }
    }
    Ok(mu)
}

fn check_dims(model: &FittedModel, dataset: &ArdDataset) -> Result<()> {
    if model.n() != dataset.n() || model.k() != dataset.k() {
        return Err(ArdError::DimensionMismatch(format!(
            "model is {}x{}, dataset is {}x{}",
            model.n(),
            model.k(),
            dataset.n(),
            dataset.k()
        )));
    }
    Ok(())
}

struct Optimizer<'a> {
    dataset: &'a ArdDataset,
    config: &'a FitConfig,
    cols: DesignColumns,
    n: usize,
    k: usize,
    row_sums: Vec<f64>,
    anchor: f64,
    alpha: Vec<f64>,
    beta: Vec<f64>,
    global_coef: Vec<f64>,
    local_coef: Array2<f64>,
    rg_coef: Vec<f64>,
    omega: Vec<f64>,
    eta: Array2<f64>,
    trace: Vec<f64>,
    iterations: usize,
    converged: bool,
    clamped_rows: Vec<usize>,
    dead_groups: Vec<usize>,
}

impl<'a> Optimizer<'a> {
    fn new(
        dataset: &'a ArdDataset,
        config: &'a FitConfig,
        cols: DesignColumns,
        warnings: &mut Vec<String>,
    ) -> Result<Self> {
        let y = dataset.counts();
        let (n, k) = y.dim();
        let row_sums: Vec<f64> = (0..n)
            .map(|i| y.row(i).iter().map(|&v| v as f64).sum())
            .collect();
        let col_sums: Vec<f64> = (0..k)
            .map(|j| y.column(j).iter().map(|&v| v as f64).sum())
            .collect();

        let anchor = match (dataset.known_group_sizes(), dataset.total_population()) {
            (Some(sizes), Some(total)) => {
                sizes.iter().map(|&s| (s / total).ln()).sum::<f64>() / k as f64
            }
            _ => 0.0,
        };

        // margin-based warm start: column means for beta, row totals for alpha
        let beta: Vec<f64> = col_sums
            .iter()
            .map(|&s| (s / n as f64).max(1e-8).ln())
            .collect();
        let beta_mean = beta.iter().sum::<f64>() / k as f64;
        let alpha: Vec<f64> = row_sums
            .iter()
            .map(|&s| (s.max(1.0) / k as f64).ln() - beta_mean)
            .collect();

        let omega = match config.family {
            Family::Poisson => Vec::new(),
            Family::NegBinomial => {
                let (lo, hi) = config.omega_bounds;
                (0..k)
                    .map(|j| {
                        let m = col_sums[j] / n as f64;
                        if m <= 0.0 {
                            return hi;
                        }
                        let var = y
                            .column(j)
                            .iter()
                            .map(|&v| {
                                let d = v as f64 - m;
                                d * d
                            })
                            .sum::<f64>()
                            / n as f64;
                        let excess = (var - m).max(m * 1e-2);
                        (m * m / excess).clamp(lo, hi)
                    })
                    .collect()
            }
        };

        let dead_groups: Vec<usize> = (0..k).filter(|&j| col_sums[j] == 0.0).collect();
        if !dead_groups.is_empty() {
            warnings.push(match config.family {
                Family::NegBinomial => format!(
                    "{} group(s) have no positive counts; omega pinned to the upper bound",
                    dead_groups.len()
                ),
                Family::Poisson => format!(
                    "{} group(s) have no positive counts; beta clamped at {ALPHA_CLAMP}",
                    dead_groups.len()
                ),
            });
        }

        let clamped_rows: Vec<usize> = (0..n).filter(|&i| row_sums[i] == 0.0).collect();
        if !clamped_rows.is_empty() {
            warnings.push(format!(
                "{} all-zero respondent row(s); alpha clamped at {ALPHA_CLAMP}",
                clamped_rows.len()
            ));
        }

        let mut opt = Self {
            dataset,
            config,
            cols,
            n,
            k,
            row_sums,
            anchor,
            alpha,
            beta,
            global_coef: vec![0.0; 0],
            local_coef: Array2::zeros((k, 0)),
            rg_coef: Vec::new(),
            omega,
            eta: Array2::zeros((n, k)),
            trace: Vec::new(),
            iterations: 0,
            converged: false,
            clamped_rows,
            dead_groups,
        };
        opt.global_coef = vec![0.0; opt.cols.global.len()];
        opt.local_coef = Array2::zeros((k, opt.cols.local.len()));
        if opt.cols.include_rg {
            opt.rg_coef = vec![0.0; k];
        }
        for &i in &opt.clamped_rows {
            opt.alpha[i] = ALPHA_CLAMP;
        }
        opt.recompute_eta();
        Ok(opt)
    }

    fn recompute_eta(&mut self) {
        let z = self.dataset.covariates();
        let rg = self.dataset.rg();
        for i in 0..self.n {
            let mut base = self.alpha[i];
            for (j, &c) in self.cols.global.iter().enumerate() {
                base += self.global_coef[j] * z[[i, c]];
            }
            for k in 0..self.k {
                let mut eta = base + self.beta[k];
                for (j, &c) in self.cols.local.iter().enumerate() {
                    eta += self.local_coef[[k, j]] * z[[i, c]];
                }
                if self.cols.include_rg {
                    eta += self.rg_coef[k] * rg.expect("validated")[[i, k]];
                }
                self.eta[[i, k]] = eta;
            }
        }
    }

    fn omega_for(&self, k: usize) -> f64 {
        self.omega.get(k).copied().unwrap_or(f64::INFINITY)
    }

    /// Penalized objective: log-likelihood minus the quadratic penalty on
    /// global/local/rg coefficients.
    fn objective(&self) -> f64 {
        let y = self.dataset.counts();
        let mut total = 0.0;
        for i in 0..self.n {
            for k in 0..self.k {
                let eta = self.eta[[i, k]];
                if eta > ETA_MAX {
                    return f64::NEG_INFINITY;
                }
                total += log_pmf(self.config.family, y[[i, k]], eta.exp(), self.omega_for(k));
            }
        }
        total - self.penalty()
    }

    fn penalty(&self) -> f64 {
        if self.config.penalty_weight == 0.0 {
            return 0.0;
        }
        let sq: f64 = self.global_coef.iter().map(|v| v * v).sum::<f64>()
            + self.local_coef.iter().map(|v| v * v).sum::<f64>()
            + self.rg_coef.iter().map(|v| v * v).sum::<f64>();
        0.5 * self.config.penalty_weight * sq
    }

    fn run(mut self, warnings: &mut Vec<String>) -> Self {
        let mut obj = self.objective();
        self.trace.push(obj);
        for it in 1..=self.config.max_iter {
            self.update_alpha_block();
            self.update_group_block();
            self.update_global_block();
            self.reanchor();
            let new_obj = self.objective();
            self.trace.push(new_obj);
            self.iterations = it;
            let rel = (new_obj - obj).abs() / obj.abs().max(1.0);
            obj = new_obj;
            if rel < self.config.tol {
                self.converged = true;
                break;
            }
        }
        if !self.converged {
            warnings.push(format!(
                "fit did not converge within {} sweeps (tol {})",
                self.config.max_iter, self.config.tol
            ));
        }
        self
    }

    /// Shift beta to the identification anchor; mu is unchanged because alpha
    /// absorbs the opposite shift.
    fn reanchor(&mut self) {
        let mean = self.beta.iter().sum::<f64>() / self.k as f64;
        let delta = self.anchor - mean;
        if delta == 0.0 {
            return;
        }
        for b in &mut self.beta {
            *b += delta;
        }
        for a in &mut self.alpha {
            *a -= delta;
        }
    }

    fn update_alpha_block(&mut self) {
        let y = self.dataset.counts();
        let family = self.config.family;
        let deltas: Vec<f64> = (0..self.n)
            .into_par_iter()
            .map(|i| {
                if self.row_sums[i] == 0.0 {
                    return ALPHA_CLAMP - self.alpha[i];
                }
                match family {
                    Family::Poisson => {
                        // closed-form row optimum: alpha += log(y_i. / sum_k mu_ik)
                        let mu_sum: f64 = (0..self.k).map(|k| self.eta[[i, k]].exp()).sum();
                        (self.row_sums[i] / mu_sum).ln()
                    }
                    Family::NegBinomial => self.newton_alpha_row(i, y),
                }
            })
            .collect();
        for i in 0..self.n {
            if deltas[i] != 0.0 {
                self.alpha[i] += deltas[i];
                for k in 0..self.k {
                    self.eta[[i, k]] += deltas[i];
                }
            }
        }
    }

    /// 1-D Newton with step halving on the row log-likelihood; returns the
    /// accepted shift of alpha_i.
    fn newton_alpha_row(&self, i: usize, y: &Array2<u64>) -> f64 {
        let family = self.config.family;
        let row_obj = |d: f64| -> f64 {
            let mut total = 0.0;
            for k in 0..self.k {
                let eta = self.eta[[i, k]] + d;
                if eta > ETA_MAX {
                    return f64::NEG_INFINITY;
                }
                total += log_pmf(family, y[[i, k]], eta.exp(), self.omega_for(k));
            }
            total
        };
        let mut delta = 0.0;
        let mut cur = row_obj(0.0);
        for _ in 0..8 {
            let mut grad = 0.0;
            let mut info = 0.0;
            for k in 0..self.k {
                let mu = (self.eta[[i, k]] + delta).exp();
                let (s, w) = score_weight(family, y[[i, k]] as f64, mu, self.omega_for(k));
                grad += s;
                info += w;
            }
            if info <= 0.0 || grad.abs() < 1e-12 * (1.0 + self.row_sums[i]) {
                break;
            }
            let mut step = (grad / info).clamp(-10.0, 10.0);
            let mut accepted = false;
            for _ in 0..MAX_HALVINGS {
                let cand = row_obj(delta + step);
                if cand.is_finite() && cand >= cur - 1e-12 * (1.0 + cur.abs()) {
                    delta += step;
                    cur = cand;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if !accepted || step.abs() < 1e-13 {
                break;
            }
        }
        delta
    }

    fn update_group_block(&mut self) {
        let updates: Vec<GroupUpdate> = (0..self.k)
            .into_par_iter()
            .map(|k| self.solve_group(k))
            .collect();
        let z = self.dataset.covariates();
        let rg = self.dataset.rg();
        for (k, up) in updates.into_iter().enumerate() {
            let beta_delta = up.beta - self.beta[k];
            let local_deltas: Vec<f64> = (0..self.cols.local.len())
                .map(|j| up.local[j] - self.local_coef[[k, j]])
                .collect();
            let rg_delta = if self.cols.include_rg {
                up.rg - self.rg_coef[k]
            } else {
                0.0
            };
            self.beta[k] = up.beta;
            for (j, &v) in up.local.iter().enumerate() {
                self.local_coef[[k, j]] = v;
            }
            if self.cols.include_rg {
                self.rg_coef[k] = up.rg;
            }
            if let Some(om) = up.omega {
                self.omega[k] = om;
            }
            if beta_delta != 0.0 || local_deltas.iter().any(|&d| d != 0.0) || rg_delta != 0.0 {
                for i in 0..self.n {
                    let mut d = beta_delta;
                    for (j, &c) in self.cols.local.iter().enumerate() {
                        d += local_deltas[j] * z[[i, c]];
                    }
                    if self.cols.include_rg {
                        d += rg_delta * rg.expect("validated")[[i, k]];
                    }
                    self.eta[[i, k]] += d;
                }
            }
        }
    }

    /// Newton update for one group's (beta_k, local slopes, rg slope) block,
    /// followed by the omega_k profile update for the negative binomial.
    fn solve_group(&self, k: usize) -> GroupUpdate {
        let y = self.dataset.counts();
        let z = self.dataset.covariates();
        let rg = self.dataset.rg();
        let family = self.config.family;
        let pw = self.config.penalty_weight;
        let n_local = self.cols.local.len();
        let dim = 1 + n_local + usize::from(self.cols.include_rg);
        let omega_k = self.omega_for(k);

        // current block parameters: [beta_k, local slopes..., rg slope]
        let mut base = Vec::with_capacity(dim);
        base.push(self.beta[k]);
        for j in 0..n_local {
            base.push(self.local_coef[[k, j]]);
        }
        if self.cols.include_rg {
            base.push(self.rg_coef[k]);
        }

        if self.dead_groups.contains(&k) {
            return GroupUpdate {
                beta: ALPHA_CLAMP,
                local: vec![0.0; n_local],
                rg: 0.0,
                omega: (family == Family::NegBinomial).then_some(self.config.omega_bounds.1),
            };
        }

        // design row for cell (i, k): [1, z_local..., x_rg]
        let design = |i: usize, out: &mut Vec<f64>| {
            out.clear();
            out.push(1.0);
            for &c in &self.cols.local {
                out.push(z[[i, c]]);
            }
            if self.cols.include_rg {
                out.push(rg.expect("validated")[[i, k]]);
            }
        };

        // penalized column objective at parameter offsets `dparams`
        let col_obj = |dparams: &[f64]| -> f64 {
            let mut total = 0.0;
            let mut x = Vec::with_capacity(dim);
            for i in 0..self.n {
                design(i, &mut x);
                let mut eta = self.eta[[i, k]];
                for (j, &xv) in x.iter().enumerate() {
                    eta += dparams[j] * xv;
                }
                if eta > ETA_MAX {
                    return f64::NEG_INFINITY;
                }
                total += log_pmf(family, y[[i, k]], eta.exp(), omega_k);
            }
            if pw > 0.0 {
                // intercept is unpenalized
                for j in 1..dim {
                    let v = base[j] + dparams[j];
                    total -= 0.5 * pw * v * v;
                }
            }
            total
        };

        let mut dparams = vec![0.0; dim];
        let mut cur = col_obj(&dparams);
        for _ in 0..2 {
            // score and Fisher information at the current offset
            let mut grad = nalgebra::DVector::zeros(dim);
            let mut hess = nalgebra::DMatrix::zeros(dim, dim);
            let mut x = Vec::with_capacity(dim);
            for i in 0..self.n {
                design(i, &mut x);
                let mut eta = self.eta[[i, k]];
                for (j, &xv) in x.iter().enumerate() {
                    eta += dparams[j] * xv;
                }
                let mu = eta.min(ETA_MAX).exp();
                let (s, w) = score_weight(family, y[[i, k]] as f64, mu, omega_k);
                for a in 0..dim {
                    grad[a] += s * x[a];
                    for b in a..dim {
                        hess[(a, b)] += w * x[a] * x[b];
                    }
                }
            }
            if pw > 0.0 {
                for j in 1..dim {
                    grad[j] -= pw * (base[j] + dparams[j]);
                    hess[(j, j)] += pw;
                }
            }
            for a in 0..dim {
                for b in 0..a {
                    hess[(a, b)] = hess[(b, a)];
                }
            }
            let Some(mut step) = solve_spd(&hess, &grad) else {
                break;
            };
            for v in step.iter_mut() {
                *v = v.clamp(-10.0, 10.0);
            }
            if step.amax() < 1e-13 {
                break;
            }
            let mut factor = 1.0;
            let mut accepted = false;
            for _ in 0..MAX_HALVINGS {
                let cand: Vec<f64> = (0..dim).map(|j| dparams[j] + factor * step[j]).collect();
                let val = col_obj(&cand);
                if val.is_finite() && val >= cur - 1e-12 * (1.0 + cur.abs()) {
                    dparams = cand;
                    cur = val;
                    accepted = true;
                    break;
                }
                factor *= 0.5;
            }
            if !accepted {
                break;
            }
        }

        let omega =
            (family == Family::NegBinomial).then(|| self.update_omega(k, &dparams, omega_k));

        GroupUpdate {
            beta: base[0] + dparams[0],
            local: (0..n_local).map(|j| base[1 + j] + dparams[1 + j]).collect(),
            rg: if self.cols.include_rg {
                base[dim - 1] + dparams[dim - 1]
            } else {
                0.0
            },
            omega,
        }
    }

    /// Profile update of omega_k on the log scale: pin to a bound when the
    /// score does not change sign inside it, else safeguarded Newton /
    /// bisection on the score root. Reverts if the column log-likelihood
    /// drops.
    fn update_omega(&self, k: usize, dparams: &[f64], omega_cur: f64) -> f64 {
        let y = self.dataset.counts();
        let z = self.dataset.covariates();
        let rg = self.dataset.rg();
        let n_local = self.cols.local.len();

        // column means under the just-updated block parameters
        let mut mu_col = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let mut eta = self.eta[[i, k]] + dparams[0];
            for (j, &c) in self.cols.local.iter().enumerate() {
                eta += dparams[1 + j] * z[[i, c]];
            }
            if self.cols.include_rg {
                eta += dparams[1 + n_local] * rg.expect("validated")[[i, k]];
            }
            mu_col.push(eta.min(ETA_MAX).exp());
        }
        // d (column loglik) / d (log omega)
        let score = |theta: f64| -> f64 {
            let omega = theta.exp();
            let mut g = 0.0;
            for i in 0..self.n {
                let yf = y[[i, k]] as f64;
                let mu = mu_col[i];
                g += statrs::function::gamma::digamma(yf + omega)
                    - statrs::function::gamma::digamma(omega)
                    - (mu / omega).ln_1p()
                    + (mu - yf) / (omega + mu);
            }
            omega * g
        };

        let (lo, hi) = self.config.omega_bounds;
        let (tlo, thi) = (lo.ln(), hi.ln());
        let theta_new = if score(thi) >= 0.0 {
            thi
        } else if score(tlo) <= 0.0 {
            tlo
        } else {
            // the score crosses zero inside the bracket
            let mut a = tlo;
            let mut b = thi;
            let mut theta = omega_cur.ln().clamp(tlo, thi);
            for _ in 0..6 {
                let g = score(theta);
                if g.abs() < 1e-10 * self.n as f64 {
                    break;
                }
                if g > 0.0 {
                    a = theta;
                } else {
                    b = theta;
                }
                let h = 1e-5;
                let dg = (score(theta + h) - score(theta - h)) / (2.0 * h);
                let newton = if dg < 0.0 { theta - g / dg } else { f64::NAN };
                theta = if newton.is_finite() && newton > a && newton < b {
                    newton
                } else {
                    0.5 * (a + b)
                };
            }
            theta
        };

        let omega_new = theta_new.exp().clamp(lo, hi);
        if omega_new == omega_cur {
            return omega_cur;
        }
        let col_ll = |omega: f64| -> f64 {
            (0..self.n)
                .map(|i| log_pmf(Family::NegBinomial, y[[i, k]], mu_col[i], omega))
                .sum()
        };
        let old = col_ll(omega_cur);
        if col_ll(omega_new) >= old - 1e-10 * (1.0 + old.abs()) {
            omega_new
        } else {
            omega_cur
        }
    }

    fn update_global_block(&mut self) {
        let g_dim = self.cols.global.len();
        if g_dim == 0 {
            return;
        }
        let y = self.dataset.counts();
        let z = self.dataset.covariates();
        let family = self.config.family;
        let pw = self.config.penalty_weight;

        // row-collapsed scores and weights (global columns are row effects)
        let mut srow = vec![0.0; self.n];
        let mut wrow = vec![0.0; self.n];
        for i in 0..self.n {
            for k in 0..self.k {
                let mu = self.eta[[i, k]].min(ETA_MAX).exp();
                let (s, w) = score_weight(family, y[[i, k]] as f64, mu, self.omega_for(k));
                srow[i] += s;
                wrow[i] += w;
            }
        }
        let mut grad = nalgebra::DVector::zeros(g_dim);
        let mut hess = nalgebra::DMatrix::zeros(g_dim, g_dim);
        for i in 0..self.n {
            for a in 0..g_dim {
                let za = z[[i, self.cols.global[a]]];
                grad[a] += srow[i] * za;
                for b in a..g_dim {
                    hess[(a, b)] += wrow[i] * za * z[[i, self.cols.global[b]]];
                }
            }
        }
        for a in 0..g_dim {
            grad[a] -= pw * self.global_coef[a];
            hess[(a, a)] += pw;
            for b in 0..a {
                hess[(a, b)] = hess[(b, a)];
            }
        }
        let Some(mut step) = solve_spd(&hess, &grad) else {
            return;
        };
        for v in step.iter_mut() {
            *v = v.clamp(-5.0, 5.0);
        }
        if step.amax() < 1e-13 {
            return;
        }

        let cur = self.objective();
        let mut factor = 1.0;
        for _ in 0..MAX_HALVINGS {
            let delta: Vec<f64> = (0..g_dim).map(|j| factor * step[j]).collect();
            let (val, shifts) = self.global_trial(&delta);
            if val.is_finite() && val >= cur - 1e-12 * (1.0 + cur.abs()) {
                for (j, d) in delta.iter().enumerate() {
                    self.global_coef[j] += d;
                }
                for i in 0..self.n {
                    for k in 0..self.k {
                        self.eta[[i, k]] += shifts[i];
                    }
                }
                return;
            }
            factor *= 0.5;
        }
    }

    /// Evaluates the penalized objective under a trial global-coefficient
    /// shift without mutating state; returns (objective, per-row eta shifts).
    fn global_trial(&self, delta: &[f64]) -> (f64, Vec<f64>) {
        let y = self.dataset.counts();
        let z = self.dataset.covariates();
        let shifts: Vec<f64> = (0..self.n)
            .map(|i| {
                delta
                    .iter()
                    .enumerate()
                    .map(|(j, d)| d * z[[i, self.cols.global[j]]])
                    .sum()
            })
            .collect();
        let mut total = 0.0;
        for i in 0..self.n {
            for k in 0..self.k {
                let eta = self.eta[[i, k]] + shifts[i];
                if eta > ETA_MAX {
                    return (f64::NEG_INFINITY, shifts);
                }
                total += log_pmf(self.config.family, y[[i, k]], eta.exp(), self.omega_for(k));
            }
        }
        let pw = self.config.penalty_weight;
        if pw > 0.0 {
            for (j, d) in delta.iter().enumerate() {
                let v = self.global_coef[j] + d;
                total -= 0.5 * pw * v * v;
            }
            total -= 0.5
                * pw
                * (self.local_coef.iter().map(|v| v * v).sum::<f64>()
                    + self.rg_coef.iter().map(|v| v * v).sum::<f64>());
        }
        (total, shifts)
    }

    fn into_model(
        self,
        dataset: &ArdDataset,
        config: &FitConfig,
        mut warnings: Vec<String>,
    ) -> Result<FittedModel> {
        if !self.clamped_rows.is_empty() && config.penalty_weight > 0.0 {
            warnings
                .push("all-zero rows remain clamped under MAP because alpha is unpenalized".into());
        }
        let mut model = FittedModel {
            family: config.family,
            alpha: self.alpha,
            beta: self.beta,
            global_coef: self.global_coef,
            local_coef: self.local_coef,
            rg_coef: self.rg_coef,
            omega: self.omega,
            mu_hat: empty_matrix(),
            loglik: 0.0,
            penalty_weight: config.penalty_weight,
            converged: self.converged,
            iterations: self.iterations,
            config: config.clone(),
            warnings,
            objective_trace: self.trace,
        };
        model.mu_hat = predict_mu(&model, dataset)?;
        model.loglik = log_likelihood(&model, dataset)?;
        Ok(model)
    }
}

struct GroupUpdate {
    beta: f64,
    local: Vec<f64>,
    rg: f64,
    omega: Option<f64>,
}

/// Solves H x = g for symmetric positive-definite H, escalating a ridge when
/// the factorization fails (near-collinear designs).
fn solve_spd(
    hess: &nalgebra::DMatrix<f64>,
    grad: &nalgebra::DVector<f64>,
) -> Option<nalgebra::DVector<f64>> {
    let mut ridge = 0.0;
    let scale = hess.diagonal().amax().max(1e-12);
    for _ in 0..6 {
        let mut h = hess.clone();
        if ridge > 0.0 {
            for j in 0..h.nrows() {
                h[(j, j)] += ridge * scale;
            }
        }
        if let Some(chol) = nalgebra::Cholesky::new(h) {
            return Some(chol.solve(grad));
        }
        ridge = if ridge == 0.0 { 1e-10 } else { ridge * 100.0 };
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use ndarray::array;

    fn dataset_from_counts(y: Array2<u64>) -> ArdDataset {
        let (n, k) = y.dim();
        ArdDataset::new(
            y,
            (0..n).map(|i| format!("r{i}")).collect(),
            Array2::zeros((n, 0)),
            vec![],
            (0..k).map(|j| format!("g{j}")).collect(),
        )
        .unwrap()
    }

    /// Independence-model closed form mu[i,k] = y_i. * y_.k / y_..
    fn closed_form_mu(y: &Array2<u64>) -> Array2<f64> {
        let (n, k) = y.dim();
        let total: f64 = y.iter().map(|&v| v as f64).sum();
        let mut mu = Array2::zeros((n, k));
        for i in 0..n {
            let ri: f64 = y.row(i).iter().map(|&v| v as f64).sum();
            for j in 0..k {
                let cj: f64 = y.column(j).iter().map(|&v| v as f64).sum();
                mu[[i, j]] = ri * cj / total;
            }
        }
        mu
    }

    #[test]
    fn poisson_no_covariate_fit_matches_closed_form() {
        let y = array![[1u64, 2], [3, 4]];
        let ds = dataset_from_counts(y.clone());
        let model = fit(&ds, &FitConfig::poisson()).unwrap();
        assert!(model.converged);
        let expected = closed_form_mu(&y);
        for (m, e) in model.mu_hat.iter().zip(expected.iter()) {
            assert_abs_diff_eq!(m, e, epsilon = 1e-8);
        }
        // spot-check the spec values
        assert_abs_diff_eq!(model.mu_hat[[0, 0]], 1.2, epsilon = 1e-8);
        assert_abs_diff_eq!(model.mu_hat[[1, 1]], 4.2, epsilon = 1e-8);
    }

    #[test]
    fn constant_counts_give_constant_mu() {
        let ds = dataset_from_counts(Array2::from_elem((4, 3), 7u64));
        let model = fit(&ds, &FitConfig::poisson()).unwrap();
        for &m in model.mu_hat.iter() {
            assert_abs_diff_eq!(m, 7.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn margins_match_for_poisson_mle() {
        let y = array![[0u64, 5, 2], [7, 1, 0], [2, 2, 9], [1, 0, 3]];
        let ds = dataset_from_counts(y.clone());
        let model = fit(&ds, &FitConfig::poisson()).unwrap();
        for i in 0..ds.n() {
            let fitted: f64 = model.mu_hat.row(i).sum();
            let observed: f64 = y.row(i).iter().map(|&v| v as f64).sum();
            assert_abs_diff_eq!(fitted, observed, epsilon = 1e-6 * observed.max(1.0));
        }
        for k in 0..ds.k() {
            let fitted: f64 = model.mu_hat.column(k).sum();
            let observed: f64 = y.column(k).iter().map(|&v| v as f64).sum();
            assert_abs_diff_eq!(fitted, observed, epsilon = 1e-6 * observed.max(1.0));
        }
    }

    #[test]
    fn objective_trace_is_monotone() {
        let y = array![[0u64, 5, 2], [7, 1, 0], [2, 2, 9], [1, 0, 3]];
        let ds = dataset_from_counts(y);
        for config in [FitConfig::poisson(), FitConfig::neg_binomial()] {
            let model = fit(&ds, &config).unwrap();
            for w in model.objective_trace.windows(2) {
                assert!(
                    w[1] >= w[0] - 1e-7 * (1.0 + w[0].abs()),
                    "{:?}: {} -> {}",
                    config.family,
                    w[0],
                    w[1]
                );
            }
        }
    }

    #[test]
    fn beta_anchor_holds() {
        let y = array![[1u64, 2, 3], [4, 5, 6], [7, 8, 9]];
        let ds = dataset_from_counts(y);
        let model = fit(&ds, &FitConfig::poisson()).unwrap();
        let mean: f64 = model.beta.iter().sum::<f64>() / model.k() as f64;
        assert_abs_diff_eq!(mean, 0.0, epsilon = 1e-10);

        let ds = dataset_from_counts(array![[1u64, 2, 3], [4, 5, 6], [7, 8, 9]])
            .with_total_population(1000.0)
            .unwrap()
            .with_known_group_sizes(vec![10.0, 20.0, 40.0])
            .unwrap();
        let model = fit(&ds, &FitConfig::poisson()).unwrap();
        let anchor = ((10f64 / 1000.0).ln() + (20f64 / 1000.0).ln() + (40f64 / 1000.0).ln()) / 3.0;
        let mean: f64 = model.beta.iter().sum::<f64>() / model.k() as f64;
        assert_abs_diff_eq!(mean, anchor, epsilon = 1e-10);
        // the anchor only relabels (alpha, beta); mu is unchanged
        let free = fit(
            &dataset_from_counts(array![[1u64, 2, 3], [4, 5, 6], [7, 8, 9]]),
            &FitConfig::poisson(),
        )
        .unwrap();
        for (a, b) in model.mu_hat.iter().zip(free.mu_hat.iter()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-8);
        }
    }

    #[test]
    fn aliasing_shift_leaves_mu_invariant() {
        let y = array![[0u64, 5, 2], [7, 1, 0], [2, 2, 9], [1, 0, 3]];
        let ds = dataset_from_counts(y);
        let model = fit(&ds, &FitConfig::poisson()).unwrap();
        let mut shifted = model.clone();
        let c = 0.73;
        for a in &mut shifted.alpha {
            *a += c;
        }
        for b in &mut shifted.beta {
            *b -= c;
        }
        let mu = predict_mu(&shifted, &ds).unwrap();
        for (a, b) in mu.iter().zip(model.mu_hat.iter()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-8 * b.abs().max(1.0));
        }
    }

    #[test]
    fn all_zero_row_is_clamped_and_flagged() {
        let y = array![[0u64, 0], [3, 4], [1, 2]];
        let ds = dataset_from_counts(y);
        let model = fit(&ds, &FitConfig::poisson()).unwrap();
        assert!(model.alpha[0] < -15.0, "alpha[0] = {}", model.alpha[0]);
        assert!(model.warnings.iter().any(|w| w.contains("all-zero")));
        assert!(model.mu_hat.iter().all(|&m| m > 0.0 && m.is_finite()));
    }

    #[test]
    fn single_cell_loglik_values() {
        // y=0, mu=1 Poisson -> -1; y=2, mu=2 -> log 2 - 2
        let y = array![[0u64, 2], [2, 0]];
        let ds = dataset_from_counts(y);
        let mut model = fit(&ds, &FitConfig::poisson()).unwrap();
        model.mu_hat = array![[1.0, 2.0], [2.0, 1.0]];
        let ll = log_likelihood(&model, &ds).unwrap();
        let expected = 2.0 * (-1.0) + 2.0 * (2f64.ln() - 2.0);
        assert_abs_diff_eq!(ll, expected, epsilon = 1e-10);
    }

    #[test]
    fn nb_with_pinned_large_omega_matches_poisson() {
        let y = array![[0u64, 5, 2], [7, 1, 0], [2, 2, 9], [1, 0, 3]];
        let ds = dataset_from_counts(y);
        let poisson = fit(&ds, &FitConfig::poisson()).unwrap();
        let mut config = FitConfig::neg_binomial();
        config.omega_bounds = (1e8, 1e8 + 1.0);
        let nb = fit(&ds, &config).unwrap();
        for (a, b) in nb.mu_hat.iter().zip(poisson.mu_hat.iter()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-4 * b.abs().max(1e-4));
        }
    }

    #[test]
    fn predict_mu_consistent_with_stored() {
        let y = array![[0u64, 5, 2], [7, 1, 0], [2, 2, 9], [1, 0, 3]];
        let ds = dataset_from_counts(y);
        let model = fit(&ds, &FitConfig::neg_binomial()).unwrap();
        let recomputed = predict_mu(&model, &ds).unwrap();
        for (a, b) in recomputed.iter().zip(model.mu_hat.iter()) {
            let rel = (a - b).abs() / b.abs().max(1e-300);
            assert!(rel < 1e-12, "rel = {rel}");
        }
    }

    #[test]
    fn predict_mu_hand_values() {
        let ds = dataset_from_counts(array![[1u64, 2], [3, 4]]);
        let mut model = fit(&ds, &FitConfig::poisson()).unwrap();
        // all parameters zero -> mu = 1 everywhere
        model.alpha = vec![0.0; 2];
        model.beta = vec![0.0; 2];
        let mu = predict_mu(&model, &ds).unwrap();
        assert!(mu.iter().all(|&m| (m - 1.0).abs() < 1e-15));
        // alpha = log 2, beta = log 3 -> mu = 6
        model.alpha = vec![2f64.ln(); 2];
        model.beta = vec![3f64.ln(); 2];
        let mu = predict_mu(&model, &ds).unwrap();
        assert!(mu.iter().all(|&m| (m - 6.0).abs() < 1e-12));
    }

    #[test]
    fn model_json_round_trip() {
        let y = array![[1u64, 2], [3, 4], [5, 6]];
        let ds = dataset_from_counts(y);
        let model = fit(&ds, &FitConfig::poisson()).unwrap();
        let json = model.to_json().unwrap();
        let mut back = FittedModel::from_json(&json).unwrap();
        assert!(!back.is_hydrated());
        back.rehydrate(&ds).unwrap();
        assert_eq!(back.alpha, model.alpha);
        assert_eq!(back.beta, model.beta);
        assert_eq!(back.mu_hat, model.mu_hat);
        assert_eq!(back.fingerprint(), model.fingerprint());
    }

    #[test]
    fn recalibrated_dispersion_centers_pearson() {
        let y = Array2::from_shape_fn((40, 3), |(i, j)| ((i * 7 + j * 11) % 9) as u64);
        let ds = dataset_from_counts(y.clone());
        let mut model = fit(&ds, &FitConfig::neg_binomial()).unwrap();
        recalibrate_dispersion(&mut model, &ds).unwrap();
        // each unpinned group's Pearson statistic sits at its
        // leverage-corrected target n - 1 - sum_i w_ig / w_i.
        let weight = |mu: f64, w: f64| mu * w / (w + mu);
        for g in 0..3 {
            let w = model.omega[g];
            if w >= 1e8 || w <= 1e-3 {
                continue; // pinned at a bound: no interior root
            }
            let mut pearson = 0.0;
            let mut leverage = 0.0;
            for i in 0..40 {
                let mu = model.mu_hat[[i, g]];
                let d = y[[i, g]] as f64 - mu;
                pearson += d * d / (mu + mu * mu / w);
                let row_total: f64 = (0..3)
                    .map(|j| weight(model.mu_hat[[i, j]], model.omega[j]))
                    .sum();
                leverage += weight(mu, w) / row_total;
            }
            let target = 40.0 - 1.0 - leverage;
            assert_abs_diff_eq!(pearson, target, epsilon = 1e-4 * target);
        }
        // mu and the other parameters are untouched
        let refit = fit(&ds, &FitConfig::neg_binomial()).unwrap();
        assert_eq!(model.mu_hat, refit.mu_hat);
        assert_eq!(model.alpha, refit.alpha);
        // Poisson models are rejected
        let mut poisson = fit(&ds, &FitConfig::poisson()).unwrap();
        assert!(recalibrate_dispersion(&mut poisson, &ds).is_err());
    }

    #[test]
    fn constant_covariate_is_rejected() {
        let y = array![[1u64, 2], [3, 4], [5, 6]];
        let ds = ArdDataset::new(
            y,
            vec!["a".into(), "b".into(), "c".into()],
            array![[1.0], [1.0], [1.0]],
            vec!["flat".into()],
            vec!["g0".into(), "g1".into()],
        )
        .unwrap();
        let config = FitConfig::poisson().with_covariates(CovariateSpec::new(
            ["flat"],
            [] as [&str; 0],
            false,
        ));
        assert!(fit(&ds, &config).is_err());
    }
}
