//! Per-group dispersion index: the Pearson statistic of a Poisson fit
//! against its chi-square reference. Ratios near 1 say the Poisson variance
//! assumption holds for that group; ratios well above 1 say overdispersion.

use std::path::Path;

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};
use statrs::function::gamma::gamma_ur;

use crate::dataset::ArdDataset;
use crate::error::{ArdError, Result};
use crate::family::Family;
use crate::fit::FittedModel;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DispersionResult {
    pub group: usize,
    /// Pearson statistic (divided by the group's mean count when the
    /// prefactor flag is set).
    pub d: f64,
    /// Effective degrees of freedom: n minus the per-group parameter count
    /// minus the amortized share of respondent effects (round(n/K)).
    pub dof: usize,
    pub ratio: f64,
    /// Upper-tail chi-square probability of the unprefixed Pearson statistic.
    pub p_value: f64,
    /// One-sided normal-approximation p-value from the auxiliary regression
    /// of ((y - mu)^2 - y)/mu on an intercept.
    pub p_normal: f64,
}

/// Dispersion index for one group. The model must be a Poisson fit, since
/// the statistic measures overdispersion relative to the Poisson variance.
///
/// `include_ybar_prefactor` divides the reported statistic by the group's
/// mean count; the chi-square p-value always comes from the unprefixed
/// statistic, which is what the chi-square reference calibrates.
pub fn dispersion_index(
    dataset: &ArdDataset,
    model: &FittedModel,
    group: usize,
    include_ybar_prefactor: bool,
) -> Result<DispersionResult> {
    if model.family != Family::Poisson {
        return Err(ArdError::InvalidArgument(
            "dispersion index needs a Poisson fit (it measures overdispersion relative to Poisson)"
                .into(),
        ));
    }
    if model.n() != dataset.n() || model.k() != dataset.k() {
        return Err(ArdError::DimensionMismatch(
            "model does not match the dataset".into(),
        ));
    }
    if !model.is_hydrated() {
        return Err(ArdError::InvalidArgument(
            "model has no fitted means; call rehydrate() first".into(),
        ));
    }
    if group >= dataset.k() {
        return Err(ArdError::InvalidArgument(format!(
            "group index {group} out of range (K = {})",
            dataset.k()
        )));
    }

    let y = dataset.counts();
    let n = dataset.n();
    let mut pearson = 0.0;
    let mut aux = Vec::with_capacity(n);
    for i in 0..n {
        let lambda = model.mu_hat[[i, group]];
        if !(lambda > 0.0) {
            return Err(ArdError::InvalidArgument(format!(
                "fitted mean at ({i}, {group}) is {lambda}; must be positive"
            )));
        }
        let yv = y[[i, group]] as f64;
        let d = yv - lambda;
        pearson += d * d / lambda;
        aux.push((d * d - yv) / lambda);
    }

    let dof = effective_dof(model, n, dataset.k());
    let ratio = pearson / dof as f64;
    // upper tail of chi^2_dof at the Pearson statistic
    let p_value = if pearson > 0.0 {
        gamma_ur(dof as f64 / 2.0, pearson / 2.0)
    } else {
        1.0
    };

    // normal-approximation variant: one-sided t on the auxiliary intercept
    let mean = aux.iter().sum::<f64>() / n as f64;
    let var = aux.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n as f64 - 1.0);
    let p_normal = if var > 0.0 {
        let t = mean / (var / n as f64).sqrt();
        1.0 - Normal::standard().cdf(t)
    } else {
        1.0
    };

    let ybar = y.column(group).iter().map(|&v| v as f64).sum::<f64>() / n as f64;
    let d_out = if include_ybar_prefactor && ybar > 0.0 {
        pearson / ybar
    } else {
        pearson
    };
    let ratio_out = if include_ybar_prefactor && ybar > 0.0 {
        ratio / ybar
    } else {
        ratio
    };

    Ok(DispersionResult {
        group,
        d: d_out,
        dof,
        ratio: ratio_out,
        p_value,
        p_normal,
    })
}

/// dof = n - (intercept + local slopes + rg slope) - round(n/K); the last
/// term amortizes the n respondent effects over the K groups. Never below 1.
fn effective_dof(model: &FittedModel, n: usize, k: usize) -> usize {
    let per_group =
        1 + model.config.covariates.local.len() + usize::from(model.config.covariates.include_rg);
    let alpha_share = ((n as f64) / (k as f64)).round() as usize;
    n.saturating_sub(per_group + alpha_share).max(1)
}

/// Maps `dispersion_index` over every group (prefactor off).
pub fn dispersion_panel(
    dataset: &ArdDataset,
    model: &FittedModel,
) -> Result<Vec<DispersionResult>> {
    (0..dataset.k())
        .map(|g| dispersion_index(dataset, model, g, false))
        .collect()
}

/// CSV emission: group, D, dof, ratio, p_chisq, p_normal.
pub fn write_dispersion_csv(
    results: &[DispersionResult],
    group_names: &[String],
    path: &Path,
) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["group", "name", "D", "dof", "ratio", "p_chisq", "p_normal"])?;
    for r in results {
        w.write_record([
            r.group.to_string(),
            group_names.get(r.group).cloned().unwrap_or_default(),
            format!("{}", r.d),
            r.dof.to_string(),
            format!("{}", r.ratio),
            format!("{}", r.p_value),
            format!("{}", r.p_normal),
        ])?;
    }
    w.flush()?;
    Ok(())
}
