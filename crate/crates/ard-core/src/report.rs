//! Workflow orchestrator: fit the no-covariate Poisson null, screen
//! covariates, fit covariate-adjusted Poisson and negative-binomial nulls,
//! run the correlation and distribution diagnostics against them, and emit a
//! structured report with an advisory model recommendation.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::calibrate::prelim_locals;
use crate::dataset::{ArdDataset, ValidationReport};
use crate::dispersion::{dispersion_panel, write_dispersion_csv, DispersionResult};
use crate::error::{ArdError, Result};
use crate::family::Family;
use crate::fit::{fit, FitConfig, FittedModel};
use crate::residual::{rqr_residuals, ResidualMatrix};
use crate::rng::derive_key;
use crate::rootogram::{rootogram, Rootogram, RootogramScope, RootogramStyle};
use crate::screen::{
    global_screen, local_screen, suggest_spec, write_screens_csv, CovariateSuggestion, SlopeScreen,
};
use crate::tw::{tw1_cdf, tw_test, Correction, TwTestResult};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Points shown in one scatter facet (thinned for plotting; the full
/// resolution lives in the per-facet CSV artifacts).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FacetPoints {
    pub covariate: String,
    /// Group index for local facets; None for the global (alpha) facets.
    pub group: Option<usize>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

/// Everything the plot renderer needs, embedded in the report so plots are
/// pure views of reported numbers.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlotData {
    pub local_facets: Vec<FacetPoints>,
    pub global_facets: Vec<FacetPoints>,
    /// (t, density) samples of the TW1 reference law.
    pub tw_density: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Recommendation {
    Poisson,
    NegBinomial,
    CorrelatedModel,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DatasetSummary {
    pub n: usize,
    pub k: usize,
    pub p: usize,
    pub covariate_names: Vec<String>,
    pub group_names: Vec<String>,
    pub validation: ValidationReport,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RootogramSet {
    pub poisson_overall: Rootogram,
    pub neg_binomial_overall: Rootogram,
    pub poisson_groups: Vec<Rootogram>,
    pub neg_binomial_groups: Vec<Rootogram>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagnosticReport {
    pub schema_version: u32,
    pub dataset_summary: DatasetSummary,
    pub covariate_suggestion: CovariateSuggestion,
    pub local_screens: Vec<SlopeScreen>,
    pub global_screens: Vec<SlopeScreen>,
    /// Correlation test from the covariate-adjusted negative-binomial null.
    pub tw_result: TwTestResult,
    /// Dispersion panel from the covariate-adjusted Poisson null.
    pub dispersion_panel: Vec<DispersionResult>,
    pub rootograms: RootogramSet,
    pub recommendation: Recommendation,
    pub rationale: String,
    pub seed: u64,
    pub alpha: f64,
    pub correction: Correction,
    pub t_threshold: f64,
    pub plot_data: PlotData,
}

#[derive(Debug, Clone)]
pub struct WorkflowOptions {
    pub seed: u64,
    /// Test level shared by the correlation test and the (Bonferroni-
    /// adjusted) dispersion decision.
    pub alpha: f64,
    pub correction: Correction,
    pub t_threshold: f64,
    pub penalty_weight: f64,
    /// Include the respondent/group covariate in the adjusted nulls when the
    /// dataset provides one.
    pub use_rg: bool,
    /// Write intermediate artifacts here as stages complete.
    pub out_dir: Option<PathBuf>,
}

impl Default for WorkflowOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            alpha: 0.05,
            correction: Correction::Half,
            t_threshold: 4.0,
            penalty_weight: 0.0,
            use_rg: false,
            out_dir: None,
        }
    }
}

/// The advisory model choice: a correlated model when the correlation test
/// rejects; otherwise negative binomial when any group's dispersion p-value
/// survives a Bonferroni correction over K; otherwise Poisson.
pub fn recommend(
    tw: &TwTestResult,
    dispersion: &[DispersionResult],
    level: f64,
) -> (Recommendation, String) {
    if tw.p_value < level {
        let note = if dispersion.iter().any(|d| d.ratio > 1.5) {
            " A negative binomial also absorbs part of the overdispersion, but the eigenvalue \
             structure says correlation remains."
        } else {
            ""
        };
        return (
            Recommendation::CorrelatedModel,
            format!(
                "Correlation test rejects (T = {:.2}, p = {:.4} < {level}); residual group \
                 correlation needs explicit modeling.{note}",
                tw.statistic, tw.p_value
            ),
        );
    }
    let k = dispersion.len().max(1);
    let bonferroni = level / k as f64;
    let worst = dispersion
        .iter()
        .min_by(|a, b| a.p_value.partial_cmp(&b.p_value).unwrap());
    if let Some(worst) = worst {
        if worst.p_value < bonferroni {
            return (
                Recommendation::NegBinomial,
                format!(
                    "No residual correlation (T = {:.2}, p = {:.4}), but group {} is overdispersed \
                     (ratio {:.2}, p = {:.2e} < {level}/{k}); use a negative binomial likelihood.",
                    tw.statistic, tw.p_value, worst.group, worst.ratio, worst.p_value
                ),
            );
        }
    }
    (
        Recommendation::Poisson,
        format!(
            "No residual correlation (T = {:.2}, p = {:.4}) and no group rejects the Poisson \
             dispersion check after a Bonferroni correction; the Poisson model is adequate.",
            tw.statistic, tw.p_value
        ),
    )
}

/// Runs the full diagnostic sequence. Any stage error aborts with the stage
/// name; artifacts already written stay in place.
pub fn run_workflow(dataset: &ArdDataset, options: &WorkflowOptions) -> Result<DiagnosticReport> {
    let out = options.out_dir.as_deref();
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| ArdError::Stage {
            stage: "prepare-output",
            source: Box::new(e.into()),
        })?;
        fs::create_dir_all(dir.join("plots")).map_err(|e| ArdError::Stage {
            stage: "prepare-output",
            source: Box::new(e.into()),
        })?;
    }

    // 1. validation
    let validation = dataset.validate();
    let summary = DatasetSummary {
        n: dataset.n(),
        k: dataset.k(),
        p: dataset.p(),
        covariate_names: dataset.covariate_names().to_vec(),
        group_names: dataset.group_names().to_vec(),
        validation,
    };

    // 2. no-covariate Poisson null
    let null = fit(dataset, &null_config(Family::Poisson, options))
        .map_err(ArdError::stage("fit-null"))?;
    write_model(out, "model_poisson_null.json", &null)?;

    // 3. covariate screens from the null's residuals and log-degrees
    let null_rqr = rqr_residuals(&null, dataset, derive_key(options.seed, &[1]))
        .map_err(ArdError::stage("screen"))?;
    let local_screens = local_screen(&null_rqr, dataset).map_err(ArdError::stage("screen"))?;
    let exclude = prelim_locals(&local_screens, options.t_threshold);
    let global_screens =
        global_screen(&null, dataset, &exclude).map_err(ArdError::stage("screen"))?;
    let suggestion = suggest_spec(&local_screens, &global_screens, options.t_threshold);
    if let Some(dir) = out {
        write_screens_csv(&local_screens, &dir.join("local_screen.csv"))?;
        write_screens_csv(&global_screens, &dir.join("global_screen.csv"))?;
        write_facet_points(dir, dataset, &null, &null_rqr)?;
    }

    // 4. covariate-adjusted nulls
    let use_rg = options.use_rg && dataset.rg().is_some();
    let spec = suggestion.to_spec(use_rg);
    let adj_poisson = fit(
        dataset,
        &null_config(Family::Poisson, options).with_covariates(spec.clone()),
    )
    .map_err(ArdError::stage("fit-adjusted"))?;
    let mut adj_nb = fit(
        dataset,
        &null_config(Family::NegBinomial, options).with_covariates(spec),
    )
    .map_err(ArdError::stage("fit-adjusted"))?;
    write_model(out, "model_poisson_adjusted.json", &adj_poisson)?;

    // 5. correlation test on the adjusted negative-binomial residuals; the
    // null's dispersion is moment-recalibrated so respondent-effect
    // overfitting does not masquerade as spectrum structure
    crate::fit::recalibrate_dispersion(&mut adj_nb, dataset).map_err(ArdError::stage("tw-test"))?;
    write_model(out, "model_negbinomial_adjusted.json", &adj_nb)?;
    let tw_rqr = rqr_residuals(&adj_nb, dataset, derive_key(options.seed, &[2]))
        .map_err(ArdError::stage("tw-test"))?;
    let tw_result =
        tw_test(&tw_rqr, options.alpha, options.correction).map_err(ArdError::stage("tw-test"))?;
    if let Some(dir) = out {
        fs::write(
            dir.join("tw_test.json"),
            serde_json::to_string_pretty(&tw_result)
                .map_err(|e| ArdError::InvalidArgument(e.to_string()))?,
        )?;
        write_tw_histogram_csv(&dir.join("tw_histogram.csv"), &tw_result)?;
    }

    // 6. dispersion panel on the adjusted Poisson null
    let dispersion =
        dispersion_panel(dataset, &adj_poisson).map_err(ArdError::stage("dispersion"))?;
    if let Some(dir) = out {
        write_dispersion_csv(
            &dispersion,
            dataset.group_names(),
            &dir.join("dispersion.csv"),
        )?;
    }

    // 7. rootograms for both adjusted families, overall and per group
    let rootograms = build_rootograms(dataset, &adj_poisson, &adj_nb, out)
        .map_err(ArdError::stage("rootograms"))?;

    // 8. recommendation
    let (recommendation, rationale) = recommend(&tw_result, &dispersion, options.alpha);

    let plot_data = build_plot_data(dataset, &null, &null_rqr, &tw_result);
    let report = DiagnosticReport {
        schema_version: REPORT_SCHEMA_VERSION,
        dataset_summary: summary,
        covariate_suggestion: suggestion,
        local_screens,
        global_screens,
        tw_result,
        dispersion_panel: dispersion,
        rootograms,
        recommendation,
        rationale,
        seed: options.seed,
        alpha: options.alpha,
        correction: options.correction,
        t_threshold: options.t_threshold,
        plot_data,
    };
    if let Some(dir) = out {
        write_report_json(&report, dir)?;
    }
    Ok(report)
}

fn null_config(family: Family, options: &WorkflowOptions) -> FitConfig {
    let mut config = match family {
        Family::Poisson => FitConfig::poisson(),
        Family::NegBinomial => FitConfig::neg_binomial(),
    };
    config.penalty_weight = options.penalty_weight;
    config
}

fn write_model(out: Option<&Path>, name: &str, model: &FittedModel) -> Result<()> {
    if let Some(dir) = out {
        fs::write(dir.join(name), model.to_json()?)?;
    }
    Ok(())
}

pub fn write_report_json(report: &DiagnosticReport, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    let json = serde_json::to_string_pretty(report)
        .map_err(|e| ArdError::InvalidArgument(format!("serialize report: {e}")))?;
    fs::write(dir.join("report.json"), json)?;
    Ok(())
}

fn build_rootograms(
    dataset: &ArdDataset,
    adj_poisson: &FittedModel,
    adj_nb: &FittedModel,
    out: Option<&Path>,
) -> Result<RootogramSet> {
    let style = RootogramStyle::Hanging;
    let mk_overall = |m: &FittedModel| rootogram(dataset, m, style, RootogramScope::Overall, None);
    let mk_groups = |m: &FittedModel| -> Result<Vec<Rootogram>> {
        (0..dataset.k())
            .map(|g| rootogram(dataset, m, style, RootogramScope::Group(g), None))
            .collect()
    };
    let set = RootogramSet {
        poisson_overall: mk_overall(adj_poisson)?,
        neg_binomial_overall: mk_overall(adj_nb)?,
        poisson_groups: mk_groups(adj_poisson)?,
        neg_binomial_groups: mk_groups(adj_nb)?,
    };
    if let Some(dir) = out {
        set.poisson_overall
            .write_csv(&dir.join("rootogram_overall_poisson.csv"))?;
        set.neg_binomial_overall
            .write_csv(&dir.join("rootogram_overall_negbinomial.csv"))?;
        for (g, r) in set.poisson_groups.iter().enumerate() {
            r.write_csv(&dir.join(format!("rootogram_group{g}_poisson.csv")))?;
        }
        for (g, r) in set.neg_binomial_groups.iter().enumerate() {
            r.write_csv(&dir.join(format!("rootogram_group{g}_negbinomial.csv")))?;
        }
    }
    Ok(set)
}

/// Full-resolution (covariate, residual) and (covariate, alpha) point files,
/// one CSV per facet, under plots/.
fn write_facet_points(
    dir: &Path,
    dataset: &ArdDataset,
    null: &FittedModel,
    rqr: &ResidualMatrix,
) -> Result<()> {
    let plots = dir.join("plots");
    for (c, name) in dataset.covariate_names().iter().enumerate() {
        for g in 0..dataset.k() {
            let mut w =
                csv::Writer::from_path(plots.join(format!("points_local_{name}_group{g}.csv")))?;
            w.write_record([name.as_str(), "residual"])?;
            for i in 0..dataset.n() {
                w.write_record([
                    format!("{}", dataset.covariates()[[i, c]]),
                    format!("{}", rqr.values[[i, g]]),
                ])?;
            }
            w.flush()?;
        }
        let mut w = csv::Writer::from_path(plots.join(format!("points_global_{name}.csv")))?;
        w.write_record([name.as_str(), "alpha_hat"])?;
        for i in 0..dataset.n() {
            w.write_record([
                format!("{}", dataset.covariates()[[i, c]]),
                format!("{}", null.alpha[i]),
            ])?;
        }
        w.flush()?;
    }
    Ok(())
}

fn write_tw_histogram_csv(path: &Path, tw: &TwTestResult) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["t", "density", "observed_t"])?;
    for (t, d) in tw_density_curve(tw.statistic) {
        w.write_record([format!("{t}"), format!("{d}"), String::new()])?;
    }
    w.write_record([String::new(), String::new(), format!("{}", tw.statistic)])?;
    w.flush()?;
    Ok(())
}

/// Samples the TW1 density by differencing the CDF grid, extending the range
/// to keep an extreme observed statistic on the plot.
pub(crate) fn tw_density_curve(observed: f64) -> Vec<(f64, f64)> {
    let hi: f64 = 6f64.max((observed + 1.0).min(200.0));
    let lo = -6.0;
    let steps = 240;
    let h = (hi - lo) / steps as f64;
    (0..=steps)
        .map(|i| {
            let t = lo + i as f64 * h;
            let d = (tw1_cdf(t + 0.5 * h) - tw1_cdf(t - 0.5 * h)) / h;
            (t, d.max(0.0))
        })
        .collect()
}

const FACET_POINT_CAP: usize = 200;

fn build_plot_data(
    dataset: &ArdDataset,
    null: &FittedModel,
    rqr: &ResidualMatrix,
    tw: &TwTestResult,
) -> PlotData {
    let n = dataset.n();
    let stride = n.div_ceil(FACET_POINT_CAP);
    let idx: Vec<usize> = (0..n).step_by(stride.max(1)).collect();

    let mut local_facets = Vec::new();
    let mut global_facets = Vec::new();
    for (c, name) in dataset.covariate_names().iter().enumerate() {
        let xs: Vec<f64> = idx.iter().map(|&i| dataset.covariates()[[i, c]]).collect();
        for g in 0..dataset.k() {
            local_facets.push(FacetPoints {
                covariate: name.clone(),
                group: Some(g),
                x: xs.clone(),
                y: idx.iter().map(|&i| rqr.values[[i, g]]).collect(),
            });
        }
        global_facets.push(FacetPoints {
            covariate: name.clone(),
            group: None,
            x: xs,
            y: idx.iter().map(|&i| null.alpha[i]).collect(),
        });
    }
    PlotData {
        local_facets,
        global_facets,
        tw_density: tw_density_curve(tw.statistic),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tw::TwConstants;

    fn fake_tw(p: f64) -> TwTestResult {
        TwTestResult {
            lambda1: 1.0,
            statistic: 0.0,
            p_value: p,
            constants: TwConstants {
                mu_n: 1.0,
                sigma_n: 1.0,
                correction: Correction::Half,
            },
            n: 100,
            k: 10,
            reject_at_05: p < 0.05,
            spectrum: vec![1.0],
        }
    }

    fn fake_dispersion(p_values: &[f64]) -> Vec<DispersionResult> {
        p_values
            .iter()
            .enumerate()
            .map(|(g, &p)| DispersionResult {
                group: g,
                d: 1.0,
                dof: 10,
                ratio: 1.0,
                p_value: p,
                p_normal: p,
            })
            .collect()
    }

    #[test]
    fn recommendation_rule_matches_invariant() {
        // correlated iff tw rejects; else NB iff any p < level/K; else Poisson
        let disp = fake_dispersion(&[0.5, 0.001, 0.9]);
        let (rec, _) = recommend(&fake_tw(0.01), &disp, 0.05);
        assert_eq!(rec, Recommendation::CorrelatedModel);
        let (rec, _) = recommend(&fake_tw(0.5), &disp, 0.05);
        assert_eq!(rec, Recommendation::NegBinomial); // 0.001 < 0.05/3
        let disp = fake_dispersion(&[0.5, 0.3, 0.9]);
        let (rec, _) = recommend(&fake_tw(0.5), &disp, 0.05);
        assert_eq!(rec, Recommendation::Poisson);
    }

    #[test]
    fn recommendation_rule_randomized_consistency() {
        // pure function of (tw, dispersion); matches the stated rule on
        // randomized inputs
        let mut state = 7u64;
        let mut unit =
            || (crate::rng::splitmix64(&mut state) >> 12) as f64 / 4_503_599_627_370_496.0;
        for _ in 0..10_000 {
            let tw_p = unit();
            let k = 1 + (unit() * 10.0) as usize;
            let ps: Vec<f64> = (0..k).map(|_| unit()).collect();
            let disp = fake_dispersion(&ps);
            let (rec, _) = recommend(&fake_tw(tw_p), &disp, 0.05);
            let expected = if tw_p < 0.05 {
                Recommendation::CorrelatedModel
            } else if ps.iter().any(|&p| p < 0.05 / k as f64) {
                Recommendation::NegBinomial
            } else {
                Recommendation::Poisson
            };
            assert_eq!(rec, expected);
        }
    }

    #[test]
    fn density_curve_integrates_to_one() {
        let curve = tw_density_curve(0.0);
        let h = curve[1].0 - curve[0].0;
        let mass: f64 = curve.iter().map(|&(_, d)| d * h).sum();
        assert!((mass - 1.0).abs() < 0.01, "mass = {mass}");
    }
}
