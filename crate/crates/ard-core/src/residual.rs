//! Pearson and randomized quantile residuals, the shared input of every
//! diagnostic.

use std::path::Path;

use ndarray::Array2;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::dataset::ArdDataset;
use crate::error::{ArdError, Result};
use crate::family::{self, Family};
use crate::fit::FittedModel;
use crate::rng::{derive_key, splitmix64, unit_open};

/// Uniform draws are clamped to [EPS, 1-EPS] before the normal quantile so
/// extreme tail cells stay finite.
const RQR_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidualKind {
    Pearson,
    RandomizedQuantile,
}

/// An n x K residual matrix tagged with how it was produced.
#[derive(Debug, Clone)]
pub struct ResidualMatrix {
    pub values: Array2<f64>,
    pub kind: ResidualKind,
    /// Seed of the randomized-quantile draw (None for Pearson).
    pub seed: Option<u64>,
    pub model_family: Family,
}

/// r = (y - mu) / sqrt(V) with V = mu (Poisson) or mu + mu^2/omega (NB).
pub fn pearson_residuals(model: &FittedModel, dataset: &ArdDataset) -> Result<ResidualMatrix> {
    check_model(model, dataset)?;
    let y = dataset.counts();
    let (n, k) = y.dim();
    let mut values = Array2::zeros((n, k));
    for i in 0..n {
        for j in 0..k {
            let mu = model.mu_hat[[i, j]];
            if !(mu > 0.0) {
                return Err(ArdError::InvalidArgument(format!(
                    "fitted mean at ({i}, {j}) is {mu}; must be positive"
                )));
            }
            let var = match model.family {
                Family::Poisson => mu,
                Family::NegBinomial => mu + mu * mu / model.omega[j],
            };
            values[[i, j]] = (y[[i, j]] as f64 - mu) / var.sqrt();
        }
    }
    Ok(ResidualMatrix {
        values,
        kind: ResidualKind::Pearson,
        seed: None,
        model_family: model.family,
    })
}

/// Randomized quantile residuals: Phi^{-1} of a uniform draw between the
/// fitted CDF at y-1 and at y. Each cell has its own (seed, i, k) stream, so
/// the result is independent of evaluation order.
pub fn rqr_residuals(
    model: &FittedModel,
    dataset: &ArdDataset,
    seed: u64,
) -> Result<ResidualMatrix> {
    check_model(model, dataset)?;
    let y = dataset.counts();
    let (n, k) = y.dim();
    let mut values = Array2::zeros((n, k));
    for i in 0..n {
        for j in 0..k {
            let mut state = derive_key(seed, &[i as u64, j as u64]);
            let u_raw = unit_open(splitmix64(&mut state));
            let omega = model.omega.get(j).copied().unwrap_or(f64::INFINITY);
            values[[i, j]] = rqr_cell(model.family, y[[i, j]], model.mu_hat[[i, j]], omega, u_raw);
        }
    }
    Ok(ResidualMatrix {
        values,
        kind: ResidualKind::RandomizedQuantile,
        seed: Some(seed),
        model_family: model.family,
    })
}

/// Transforms one cell: u = F(y-1) + u_raw * pmf(y), clamped, then the
/// standard-normal quantile.
pub(crate) fn rqr_cell(family: Family, y: u64, mu: f64, omega: f64, u_raw: f64) -> f64 {
    let lo = family::cdf(family, y as i64 - 1, mu, omega);
    let pmf = family::pmf(family, y, mu, omega);
    let u = (lo + u_raw * pmf).clamp(RQR_EPS, 1.0 - RQR_EPS);
    Normal::standard().inverse_cdf(u)
}

/// Fitted-count CDF P(Y <= y). `omega` is required for the negative binomial.
///
/// F(-1) = 0; nondecreasing in y; differences recover the pmf.
pub fn count_cdf(family: Family, y: i64, mu: f64, omega: Option<f64>) -> Result<f64> {
    if y < -1 {
        return Err(ArdError::InvalidArgument(format!(
            "count_cdf: y = {y} < -1"
        )));
    }
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(ArdError::InvalidArgument(format!(
            "count_cdf: mu = {mu} must be positive"
        )));
    }
    let omega = match (family, omega) {
        (Family::Poisson, _) => f64::INFINITY,
        (Family::NegBinomial, Some(w)) if w > 0.0 && w.is_finite() => w,
        (Family::NegBinomial, other) => {
            return Err(ArdError::InvalidArgument(format!(
                "count_cdf: negative binomial needs positive omega, got {other:?}"
            )));
        }
    };
    Ok(family::cdf(family, y, mu, omega))
}

impl ResidualMatrix {
    /// Writes the matrix in the ARD CSV shape plus a JSON sidecar recording
    /// kind, seed, and the fingerprint of the model that produced it.
    pub fn write_csv(&self, path: &Path, dataset: &ArdDataset, model: &FittedModel) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        let mut header = vec!["respondent_id".to_string()];
        header.extend(dataset.group_names().iter().cloned());
        w.write_record(&header)?;
        for (i, id) in dataset.respondent_ids().iter().enumerate() {
            let mut rec = vec![id.clone()];
            rec.extend(self.values.row(i).iter().map(|v| format!("{v}")));
            w.write_record(&rec)?;
        }
        w.flush()?;

        let sidecar = serde_json::json!({
            "kind": self.kind,
            "seed": self.seed,
            "model_fingerprint": model.fingerprint(),
            "model_family": self.model_family,
        });
        let sidecar_path = path.with_extension("meta.json");
        std::fs::write(
            sidecar_path,
            serde_json::to_string_pretty(&sidecar).unwrap(),
        )?;
        Ok(())
    }
}

fn check_model(model: &FittedModel, dataset: &ArdDataset) -> Result<()> {
    if model.n() != dataset.n() || model.k() != dataset.k() {
        return Err(ArdError::DimensionMismatch(format!(
            "model is {}x{}, dataset is {}x{}",
            model.n(),
            model.k(),
            dataset.n(),
            dataset.k()
        )));
    }
    if !model.is_hydrated() {
        return Err(ArdError::InvalidArgument(
            "model has no fitted means; call rehydrate() first".into(),
        ));
    }
    if model.family == Family::NegBinomial && model.omega.len() != model.k() {
        return Err(ArdError::DimensionMismatch(
            "negative binomial model lacks omega".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fit::{fit, FitConfig};
    use approx::assert_abs_diff_eq;
    use ndarray::array;

    fn toy_model() -> (ArdDataset, FittedModel) {
        let ds = ArdDataset::new(
            array![[3u64, 1], [2, 4], [1, 2]],
            vec!["a".into(), "b".into(), "c".into()],
            Array2::zeros((3, 0)),
            vec![],
            vec!["g0".into(), "g1".into()],
        )
        .unwrap();
        let model = fit(&ds, &FitConfig::poisson()).unwrap();
        (ds, model)
    }

    #[test]
    fn pearson_formula() {
        let (ds, mut model) = toy_model();
        model.mu_hat.fill(2.8);
        let res = pearson_residuals(&model, &ds).unwrap();
        // y=3, mu=2.8 -> 0.2/sqrt(2.8)
        assert_abs_diff_eq!(res.values[[0, 0]], 0.2 / 2.8f64.sqrt(), epsilon = 1e-10);
        assert_abs_diff_eq!(res.values[[0, 0]], 0.1195, epsilon = 1e-4);
    }

    #[test]
    fn pearson_zero_when_y_equals_mu() {
        let (ds, mut model) = toy_model();
        for i in 0..3 {
            for j in 0..2 {
                model.mu_hat[[i, j]] = ds.counts()[[i, j]] as f64;
            }
        }
        // exact zeros need positive mu; bump the one zero-count cell
        let res = pearson_residuals(&model, &ds).unwrap();
        for ((i, j), &r) in res.values.indexed_iter() {
            if ds.counts()[[i, j]] > 0 {
                assert_eq!(r, 0.0);
            }
        }
    }

    #[test]
    fn pearson_nb_large_omega_matches_poisson() {
        let (ds, mut model) = toy_model();
        model.mu_hat.fill(2.8);
        let poisson = pearson_residuals(&model, &ds).unwrap();
        model.family = Family::NegBinomial;
        model.omega = vec![1e8, 1e8];
        let nb = pearson_residuals(&model, &ds).unwrap();
        for (a, b) in nb.values.iter().zip(poisson.values.iter()) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-4);
        }
    }

    #[test]
    fn rqr_midpoint_of_zero_cell() {
        // y=0, mu=1, Poisson: u at the midpoint of (0, e^{-1}), i.e.
        // Phi^{-1}(0.18394) = -0.90045 (scipy norm.ppf cross-check)
        let r = rqr_cell(Family::Poisson, 0, 1.0, f64::INFINITY, 0.5);
        let expected = Normal::standard().inverse_cdf((-1f64).exp() / 2.0);
        assert_abs_diff_eq!(r, expected, epsilon = 1e-10);
        assert_abs_diff_eq!(r, -0.900_452_596_637_790_2, epsilon = 1e-9);
    }

    #[test]
    fn rqr_median_draw_is_zero() {
        // u lands exactly at 0.5 when F(y-1) + u_raw*pmf = 0.5
        let mu = 2.0;
        let lo = count_cdf(Family::Poisson, 1, mu, None).unwrap();
        let pmf = count_cdf(Family::Poisson, 2, mu, None).unwrap() - lo;
        let u_raw = (0.5 - lo) / pmf;
        let r = rqr_cell(Family::Poisson, 2, mu, f64::INFINITY, u_raw);
        assert_abs_diff_eq!(r, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn rqr_deterministic_given_seed() {
        let (ds, model) = toy_model();
        let a = rqr_residuals(&model, &ds, 42).unwrap();
        let b = rqr_residuals(&model, &ds, 42).unwrap();
        assert_eq!(a.values, b.values);
        let c = rqr_residuals(&model, &ds, 43).unwrap();
        assert_ne!(a.values, c.values);
    }

    #[test]
    fn rqr_always_finite() {
        let (ds, mut model) = toy_model();
        // grossly wrong means push u into the clamped tails
        model.mu_hat.fill(1e6);
        let res = rqr_residuals(&model, &ds, 7).unwrap();
        assert!(res.values.iter().all(|v| v.is_finite()));
    }

    #[test]
    fn count_cdf_contract() {
        assert_eq!(count_cdf(Family::Poisson, -1, 1.0, None).unwrap(), 0.0);
        assert_abs_diff_eq!(
            count_cdf(Family::Poisson, 0, 1.0, None).unwrap(),
            0.36788,
            epsilon = 1e-5
        );
        assert_abs_diff_eq!(
            count_cdf(Family::NegBinomial, 0, 1.0, Some(1.0)).unwrap(),
            0.5,
            epsilon = 1e-12
        );
        assert!(count_cdf(Family::Poisson, 0, -1.0, None).is_err());
        assert!(count_cdf(Family::NegBinomial, 0, 1.0, None).is_err());
        assert!(count_cdf(Family::Poisson, -2, 1.0, None).is_err());
    }

    #[test]
    fn pearson_margin_identity_for_poisson_fit() {
        // sum_i r_ik * sqrt(mu_ik) = column sum of (y - mu) = 0 per group
        let (ds, model) = toy_model();
        let res = pearson_residuals(&model, &ds).unwrap();
        for k in 0..ds.k() {
            let s: f64 = (0..ds.n())
                .map(|i| res.values[[i, k]] * model.mu_hat[[i, k]].sqrt())
                .sum();
            assert_abs_diff_eq!(s, 0.0, epsilon = 1e-6);
        }
    }
}
