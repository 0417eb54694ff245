//! Covariate screens: residuals vs. covariate per group (local effects) and
//! estimated log-degrees vs. covariate (global effects), reduced to slope
//! t-statistics with a reproducible classification rule.
//!
//! The t-rule replaces eyeballing the faceted panels; the raw points are
//! still emitted so a human can override the call.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::dataset::{ArdDataset, CovariateSpec};
use crate::error::{ArdError, Result};
use crate::fit::FittedModel;
use crate::residual::ResidualMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScreenScope {
    /// Residual column for one group regressed on the covariate.
    Local(usize),
    /// Estimated alpha regressed on the covariate.
    Global,
}

/// One least-squares screen: slope, its standard error, and the t-values of
/// the linear and quadratic terms (curvature flags nonlinear relationships).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SlopeScreen {
    pub covariate: String,
    pub scope: ScreenScope,
    pub slope: f64,
    pub std_error: f64,
    pub t_value: f64,
    pub quad_t: f64,
    pub n_points: usize,
}

/// Classification of every covariate column into local / global / inert.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CovariateSuggestion {
    pub local: BTreeSet<String>,
    pub global: BTreeSet<String>,
    pub inert: BTreeSet<String>,
    pub threshold_used: f64,
}

impl CovariateSuggestion {
    /// The suggestion as a fit-ready covariate spec.
    pub fn to_spec(&self, include_rg: bool) -> CovariateSpec {
        CovariateSpec {
            global: self.global.clone(),
            local: self.local.clone(),
            include_rg,
        }
    }
}

/// Regresses each residual column on each covariate. Returns screens in
/// covariate-major, group-minor order.
pub fn local_screen(residuals: &ResidualMatrix, dataset: &ArdDataset) -> Result<Vec<SlopeScreen>> {
    let (n, k) = residuals.values.dim();
    if n != dataset.n() || k != dataset.k() {
        return Err(ArdError::DimensionMismatch(
            "residual matrix does not match the dataset".into(),
        ));
    }
    if n < 3 {
        return Err(ArdError::InvalidArgument(
            "need at least 3 respondents to screen".into(),
        ));
    }
    let mut screens = Vec::with_capacity(dataset.p() * k);
    for (c, name) in dataset.covariate_names().iter().enumerate() {
        let x: Vec<f64> = dataset.covariates().column(c).to_vec();
        for g in 0..k {
            let y: Vec<f64> = residuals.values.column(g).to_vec();
            let (slope, std_error, t_value) = linear_screen(&x, &y);
            screens.push(SlopeScreen {
                covariate: name.clone(),
                scope: ScreenScope::Local(g),
                slope,
                std_error,
                t_value,
                quad_t: quadratic_t(&x, &y),
                n_points: n,
            });
        }
    }
    Ok(screens)
}

/// Regresses the fitted log-degrees on each covariate not already classified
/// local.
pub fn global_screen(
    model: &FittedModel,
    dataset: &ArdDataset,
    exclude: &BTreeSet<String>,
) -> Result<Vec<SlopeScreen>> {
    if model.n() != dataset.n() {
        return Err(ArdError::DimensionMismatch(
            "model does not match the dataset".into(),
        ));
    }
    if model.n() < 3 {
        return Err(ArdError::InvalidArgument(
            "need at least 3 respondents to screen".into(),
        ));
    }
    let mut screens = Vec::new();
    for (c, name) in dataset.covariate_names().iter().enumerate() {
        if exclude.contains(name) {
            continue;
        }
        let x: Vec<f64> = dataset.covariates().column(c).to_vec();
        let (slope, std_error, t_value) = linear_screen(&x, &model.alpha);
        screens.push(SlopeScreen {
            covariate: name.clone(),
            scope: ScreenScope::Global,
            slope,
            std_error,
            t_value,
            quad_t: quadratic_t(&x, &model.alpha),
            n_points: model.n(),
        });
    }
    Ok(screens)
}

/// Applies the classification rule: a covariate is local when at least
/// ceil(0.1 K) groups show |t| >= threshold; otherwise global when its
/// alpha-screen |t| >= threshold; otherwise inert.
pub fn suggest_spec(
    local_screens: &[SlopeScreen],
    global_screens: &[SlopeScreen],
    t_threshold: f64,
) -> CovariateSuggestion {
    let k = local_screens
        .iter()
        .filter_map(|s| match s.scope {
            ScreenScope::Local(g) => Some(g + 1),
            ScreenScope::Global => None,
        })
        .max()
        .unwrap_or(0);
    let needed = ((0.1 * k as f64).ceil() as usize).max(1);

    let mut names: BTreeSet<String> = BTreeSet::new();
    for s in local_screens.iter().chain(global_screens.iter()) {
        names.insert(s.covariate.clone());
    }

    let mut local = BTreeSet::new();
    let mut global = BTreeSet::new();
    let mut inert = BTreeSet::new();
    for name in names {
        let strong_groups = local_screens
            .iter()
            .filter(|s| s.covariate == name && s.t_value.abs() >= t_threshold)
            .count();
        if strong_groups >= needed {
            local.insert(name);
            continue;
        }
        let is_global = global_screens
            .iter()
            .any(|s| s.covariate == name && s.t_value.abs() >= t_threshold);
        if is_global {
            global.insert(name);
        } else {
            inert.insert(name);
        }
    }
    CovariateSuggestion {
        local,
        global,
        inert,
        threshold_used: t_threshold,
    }
}

/// Simple regression y = a + b x; returns (slope, se(slope), t). A constant x
/// gets the infinite-se marker and t = 0.
fn linear_screen(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx) * (v - mx)).sum();
    if sxx <= 0.0 {
        return (0.0, f64::INFINITY, 0.0);
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| {
            let e = b - intercept - slope * a;
            e * e
        })
        .sum();
    let dof = (n - 2.0).max(1.0);
    let se = (rss / dof / sxx).sqrt();
    let t = if se > 0.0 { slope / se } else { 0.0 };
    (slope, se, t)
}

/// t-value of the quadratic coefficient in y = a + b x + c x^2. Returns 0
/// when the design is singular (e.g. binary covariates, where x^2 = x).
fn quadratic_t(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len();
    if n < 4 {
        return 0.0;
    }
    let mut xtx = nalgebra::DMatrix::<f64>::zeros(3, 3);
    let mut xty = nalgebra::DVector::<f64>::zeros(3);
    for (&xi, &yi) in x.iter().zip(y) {
        let row = [1.0, xi, xi * xi];
        for a in 0..3 {
            xty[a] += row[a] * yi;
            for b in 0..3 {
                xtx[(a, b)] += row[a] * row[b];
            }
        }
    }
    let Some(chol) = nalgebra::Cholesky::new(xtx.clone()) else {
        return 0.0;
    };
    let coef = chol.solve(&xty);
    let rss: f64 = x
        .iter()
        .zip(y)
        .map(|(&xi, &yi)| {
            let e = yi - coef[0] - coef[1] * xi - coef[2] * xi * xi;
            e * e
        })
        .sum();
    let sigma2 = rss / (n as f64 - 3.0).max(1.0);
    let Some(inv) = xtx.try_inverse() else {
        return 0.0;
    };
    let var_c: f64 = sigma2 * inv[(2, 2)];
    if var_c > 0.0 {
        coef[2] / var_c.sqrt()
    } else {
        0.0
    }
}

/// CSV emission: covariate, group (empty for global scope), slope, se, t,
/// quad_t, n_points.
pub fn write_screens_csv(screens: &[SlopeScreen], path: &std::path::Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record([
        "covariate",
        "group",
        "slope",
        "se",
        "t",
        "quad_t",
        "n_points",
    ])?;
    for s in screens {
        let group = match s.scope {
            ScreenScope::Local(g) => g.to_string(),
            ScreenScope::Global => String::new(),
        };
        w.write_record([
            s.covariate.as_str(),
            group.as_str(),
            &format!("{}", s.slope),
            &format!("{}", s.std_error),
            &format!("{}", s.t_value),
            &format!("{}", s.quad_t),
            &format!("{}", s.n_points),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::Family;
    use crate::residual::ResidualKind;
    use approx::assert_abs_diff_eq;
    use ndarray::Array2;

    fn dataset_with_covariate(x: Vec<f64>) -> ArdDataset {
        let n = x.len();
        let cov = Array2::from_shape_vec((n, 1), x).unwrap();
        ArdDataset::new(
            Array2::ones((n, 2)),
            (0..n).map(|i| format!("r{i}")).collect(),
            cov,
            vec!["c".into()],
            vec!["g0".into(), "g1".into()],
        )
        .unwrap()
    }

    fn residuals_from(values: Array2<f64>) -> ResidualMatrix {
        ResidualMatrix {
            values,
            kind: ResidualKind::RandomizedQuantile,
            seed: Some(0),
            model_family: Family::Poisson,
        }
    }

    #[test]
    fn exact_linear_recovery() {
        let x: Vec<f64> = (0..20).map(|i| i as f64 / 19.0).collect();
        let ds = dataset_with_covariate(x.clone());
        let mut values = Array2::zeros((20, 2));
        for i in 0..20 {
            values[[i, 0]] = 2.0 * x[i]; // exact slope 2 in group 0
            values[[i, 1]] = 0.5;
        }
        let screens = local_screen(&residuals_from(values), &ds).unwrap();
        let g0 = &screens[0];
        assert_abs_diff_eq!(g0.slope, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(g0.std_error, 0.0, epsilon = 1e-9);
        let g1 = &screens[1];
        assert_abs_diff_eq!(g1.slope, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn constant_covariate_marked_infinite_se() {
        let ds = dataset_with_covariate(vec![3.0; 10]);
        let values = Array2::from_shape_fn((10, 2), |(i, _)| i as f64);
        let screens = local_screen(&residuals_from(values), &ds).unwrap();
        assert!(screens[0].std_error.is_infinite());
        assert_eq!(screens[0].t_value, 0.0);
    }

    #[test]
    fn global_screen_recovers_synthetic_slope() {
        // alpha = 0.5 * c + noise(sd 0.01)
        let n = 200;
        let x: Vec<f64> = (0..n).map(|i| (i as f64 / n as f64) * 4.0 - 2.0).collect();
        let ds = dataset_with_covariate(x.clone());
        let mut model = crate::fit::fit(&ds, &crate::fit::FitConfig::poisson()).unwrap();
        let mut s = 99u64;
        model.alpha = x
            .iter()
            .map(|&c| {
                let noise =
                    (crate::rng::splitmix64(&mut s) >> 11) as f64 / 9_007_199_254_740_992.0 - 0.5;
                0.5 * c + 0.01 * noise
            })
            .collect();
        let screens = global_screen(&model, &ds, &BTreeSet::new()).unwrap();
        assert_abs_diff_eq!(screens[0].slope, 0.5, epsilon = 0.02);
    }

    #[test]
    fn global_screen_constant_response_zero_slope() {
        let mut x = vec![0.0; 50];
        x[7] = 1.0;
        let ds = dataset_with_covariate(x);
        let mut model = crate::fit::fit(&ds, &crate::fit::FitConfig::poisson()).unwrap();
        model.alpha = vec![1.3; 50];
        let screens = global_screen(&model, &ds, &BTreeSet::new()).unwrap();
        assert_abs_diff_eq!(screens[0].slope, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn all_zero_t_means_everything_inert() {
        let mk = |cov: &str, scope, t| SlopeScreen {
            covariate: cov.into(),
            scope,
            slope: 0.0,
            std_error: 1.0,
            t_value: t,
            quad_t: 0.0,
            n_points: 100,
        };
        let locals: Vec<SlopeScreen> = (0..20)
            .map(|g| mk("a", ScreenScope::Local(g), 0.0))
            .collect();
        let globals = vec![mk("a", ScreenScope::Global, 0.0)];
        let s = suggest_spec(&locals, &globals, 4.0);
        assert!(s.local.is_empty() && s.global.is_empty());
        assert_eq!(s.inert.len(), 1);
    }

    #[test]
    fn five_strong_groups_of_twenty_is_local() {
        let mk = |scope, t| SlopeScreen {
            covariate: "a".into(),
            scope,
            slope: 0.0,
            std_error: 1.0,
            t_value: t,
            quad_t: 0.0,
            n_points: 100,
        };
        let locals: Vec<SlopeScreen> = (0..20)
            .map(|g| mk(ScreenScope::Local(g), if g < 5 { 10.0 } else { 0.0 }))
            .collect();
        let s = suggest_spec(&locals, &[], 4.0);
        assert!(s.local.contains("a"));
    }

    #[test]
    fn partition_property() {
        let mk = |cov: &str, scope, t| SlopeScreen {
            covariate: cov.into(),
            scope,
            slope: 0.0,
            std_error: 1.0,
            t_value: t,
            quad_t: 0.0,
            n_points: 100,
        };
        let mut locals = Vec::new();
        for cov in ["a", "b", "c"] {
            for g in 0..10 {
                locals.push(mk(
                    cov,
                    ScreenScope::Local(g),
                    if cov == "a" { 9.0 } else { 1.0 },
                ));
            }
        }
        let globals = vec![
            mk("b", ScreenScope::Global, 8.0),
            mk("c", ScreenScope::Global, 0.5),
        ];
        let s = suggest_spec(&locals, &globals, 4.0);
        let mut union: BTreeSet<String> = s.local.clone();
        union.extend(s.global.iter().cloned());
        union.extend(s.inert.iter().cloned());
        assert_eq!(union.len(), s.local.len() + s.global.len() + s.inert.len());
        assert_eq!(
            union,
            ["a", "b", "c"].iter().map(|s| s.to_string()).collect()
        );
        assert!(s.local.contains("a") && s.global.contains("b") && s.inert.contains("c"));
    }

    #[test]
    fn classification_invariant_to_affine_covariate_rescale() {
        let n = 60;
        let x: Vec<f64> = (0..n).map(|i| i as f64).collect();
        let ds = dataset_with_covariate(x.clone());
        let mut values = Array2::zeros((n, 2));
        let mut s = 3u64;
        for i in 0..n {
            let noise =
                (crate::rng::splitmix64(&mut s) >> 11) as f64 / 9_007_199_254_740_992.0 - 0.5;
            values[[i, 0]] = 0.3 * x[i] + noise;
            values[[i, 1]] = noise;
        }
        let t_raw = local_screen(&residuals_from(values.clone()), &ds).unwrap();

        let rescaled = ds.rescale_unit("c").unwrap();
        let t_scaled = local_screen(&residuals_from(values), &rescaled).unwrap();
        for (a, b) in t_raw.iter().zip(t_scaled.iter()) {
            // slopes change with the scale; t-values do not
            assert_abs_diff_eq!(a.t_value, b.t_value, epsilon = 1e-6);
        }
    }
}
