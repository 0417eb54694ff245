//! Acceptance suite: one test per release criterion, each printing a
//! `[PASS]`/`[FAIL]` line with the measured numbers.
//!
//! Monte Carlo criteria run at a reduced CI scale by default; set
//! `ARD_ACCEPTANCE_FULL=1` for the full desk-scale replicate counts.

use std::collections::BTreeMap;
use std::time::Instant;

use ard_core::calibrate::{run_calibration, run_power, run_wrong_order, CalibrationGrid};
use ard_core::dispersion::dispersion_panel;
use ard_core::plot::render_plots;
use ard_core::report::{run_workflow, WorkflowOptions};
use ard_core::rootogram::{rootogram, Rootogram, RootogramScope, RootogramStyle};
use ard_core::screen::{global_screen, local_screen, suggest_spec};
use ard_core::sim::{preset, simulate, CorrelationMode, Preset, SimFamily, SimulationSpec};
use ard_core::*;
use ndarray::Array2;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

fn full_scale() -> bool {
    std::env::var("ARD_ACCEPTANCE_FULL").is_ok()
}

/// Criteria run one at a time so the stated runtime budgets measure the
/// criterion, not scheduler contention with the other Monte Carlo tests.
fn exclusive() -> std::sync::MutexGuard<'static, ()> {
    static LOCK: std::sync::Mutex<()> = std::sync::Mutex::new(());
    LOCK.lock().unwrap_or_else(|poisoned| poisoned.into_inner())
}

fn verdict(criterion: &str, pass: bool, detail: &str) -> bool {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[{tag}] {criterion}: {detail}");
    pass
}

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Criterion 1: on 200 random small datasets the no-covariate Poisson fit
/// reproduces the closed-form independence solution mu = y_i. y_.k / y_..
/// to 1e-6 relative, in under 10 seconds.
#[test]
fn c01_closed_form_oracle() {
    let _serial = exclusive();
    let started = Instant::now();
    let mut state = 0xABCDu64;
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let n = 2 + (splitmix(&mut state) % 29) as usize;
        let k = 2 + (splitmix(&mut state) % 7) as usize;
        let mut y = Array2::<u64>::zeros((n, k));
        for i in 0..n {
            for j in 0..k {
                // mostly small counts with occasional zeros
                y[[i, j]] = splitmix(&mut state) % 6;
            }
        }
        // the closed form needs positive margins
        for i in 0..n {
            if y.row(i).sum() == 0 {
                y[[i, i % k]] = 1;
            }
        }
        for j in 0..k {
            if y.column(j).sum() == 0 {
                y[[j % n, j]] += 1;
            }
        }
        let ds = ArdDataset::new(
            y.clone(),
            (0..n).map(|i| format!("r{i}")).collect(),
            Array2::zeros((n, 0)),
            vec![],
            (0..k).map(|j| format!("g{j}")).collect(),
        )
        .unwrap();
        let model = fit(&ds, &FitConfig::poisson()).unwrap();
        let total: f64 = y.iter().map(|&v| v as f64).sum();
        for i in 0..n {
            let ri: f64 = y.row(i).iter().map(|&v| v as f64).sum();
            for j in 0..k {
                let cj: f64 = y.column(j).iter().map(|&v| v as f64).sum();
                let oracle = ri * cj / total;
                let rel = (model.mu_hat[[i, j]] - oracle).abs() / oracle;
                worst = worst.max(rel);
            }
        }
    }
    let elapsed = started.elapsed();
    let pass = worst < 1e-6 && elapsed.as_secs_f64() < 10.0;
    assert!(verdict(
        "criterion 1 (closed-form oracle)",
        pass,
        &format!("worst relative error {worst:.2e} over 200 datasets in {elapsed:.2?}")
    ));
}

/// Criterion 2: randomized quantile residuals from a correctly specified fit
/// are standard normal: pooled |mean| < 0.05, |sd - 1| < 0.05, KS < 0.03
/// averaged over 20 seeds, in under a minute.
#[test]
fn c02_rqr_normality() {
    let _serial = exclusive();
    let started = Instant::now();
    let stats: Vec<(f64, f64, f64)> = (0..20u64)
        .into_par_iter()
        .map(|seed| {
            let family = if seed % 2 == 0 {
                Family::Poisson
            } else {
                Family::NegBinomial
            };
            let spec = preset(
                Preset::TypeI {
                    n: 500,
                    k: 20,
                    family,
                },
                1_234 + seed,
            );
            let (ds, _) = simulate(&spec).unwrap();
            let config = match family {
                Family::Poisson => FitConfig::poisson(),
                Family::NegBinomial => FitConfig::neg_binomial(),
            };
            let model = fit(&ds, &config).unwrap();
            let rqr = rqr_residuals(&model, &ds, 31 + seed).unwrap();
            let mut values: Vec<f64> = rqr.values.iter().copied().collect();
            values.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let m = values.iter().sum::<f64>() / values.len() as f64;
            let sd = (values.iter().map(|v| (v - m) * (v - m)).sum::<f64>()
                / (values.len() as f64 - 1.0))
                .sqrt();
            let normal = statrs::distribution::Normal::standard();
            let mut ks: f64 = 0.0;
            for (idx, v) in values.iter().enumerate() {
                let f = statrs::distribution::ContinuousCDF::cdf(&normal, *v);
                let hi = (idx as f64 + 1.0) / values.len() as f64;
                let lo = idx as f64 / values.len() as f64;
                ks = ks.max((f - hi).abs().max((f - lo).abs()));
            }
            (m, sd, ks)
        })
        .collect();
    let mean_abs = stats.iter().map(|s| s.0.abs()).sum::<f64>() / stats.len() as f64;
    let sd_err = stats.iter().map(|s| (s.1 - 1.0).abs()).sum::<f64>() / stats.len() as f64;
    let ks_avg = stats.iter().map(|s| s.2).sum::<f64>() / stats.len() as f64;
    let elapsed = started.elapsed();
    let pass = mean_abs < 0.05 && sd_err < 0.05 && ks_avg < 0.03 && elapsed.as_secs_f64() < 60.0;
    assert!(verdict(
        "criterion 2 (RQR normality)",
        pass,
        &format!(
            "avg |mean| = {mean_abs:.4}, avg |sd-1| = {sd_err:.4}, avg KS = {ks_avg:.4} in {elapsed:.2?}"
        )
    ));
}

/// Criterion 3: type-I-error pattern of the correlation test at level 0.05
/// over (100,10) and (500,20): (Poisson, Poisson) within the nominal bound,
/// (any data, NB model) at or below 0.01, (NB data, Poisson model) at 1.00
/// within 0.02. CI scale: 25 replicates with the Poisson/Poisson bound
/// relaxed to 0.12.
#[test]
fn c03_type_i_calibration() {
    let _serial = exclusive();
    let started = Instant::now();
    let (replicates, pp_bound) = if full_scale() {
        (100, 0.05)
    } else {
        (25, 0.12)
    };
    let mut failures = Vec::new();
    for (n, k) in [(100usize, 10usize), (500, 20)] {
        let grid = CalibrationGrid {
            n_values: vec![n],
            k_values: vec![k],
            data_families: vec![Family::Poisson, Family::NegBinomial],
            model_families: vec![Family::Poisson, Family::NegBinomial],
            corrections: vec![Correction::Half],
            replicates,
            base_seed: 20250401,
        };
        let table = run_calibration(&grid).unwrap();
        for row in &table.rows {
            let (bound_ok, bound_desc) = match (row.data_family, row.model_family) {
                (Family::Poisson, Family::Poisson) => {
                    (row.rejection_rate <= pp_bound, format!("<= {pp_bound}"))
                }
                (_, Family::NegBinomial) => (row.rejection_rate <= 0.01, "<= 0.01".to_string()),
                (Family::NegBinomial, Family::Poisson) => {
                    (row.rejection_rate >= 0.98, ">= 0.98".to_string())
                }
            };
            let line = format!(
                "({n},{k}) {}/{}: rate = {:.3} (need {bound_desc}, {} reps, {} non-converged)",
                row.data_family,
                row.model_family,
                row.rejection_rate,
                row.replicates,
                row.non_converged
            );
            println!("    {line}");
            if !bound_ok {
                failures.push(line);
            }
        }
    }
    let elapsed = started.elapsed();
    let pass = failures.is_empty() && elapsed.as_secs_f64() < 900.0;
    assert!(verdict(
        "criterion 3 (type-I calibration)",
        pass,
        &format!(
            "{} cell(s) out of bounds in {elapsed:.2?}: {failures:?}",
            failures.len()
        )
    ));
}

/// Criterion 4: the correlated presets are rejected by the correlation test
/// in at least 95 of 100 replicates.
#[test]
fn c04_power() {
    let _serial = exclusive();
    let started = Instant::now();
    let replicates = 100;
    let sim2 = run_power(Preset::Sim2, replicates, 555).unwrap();
    let sim4 = run_power(Preset::Sim4, replicates, 777).unwrap();
    let elapsed = started.elapsed();
    let pass = sim2.rejections >= 95 && sim4.rejections >= 95 && elapsed.as_secs_f64() < 900.0;
    assert!(verdict(
        "criterion 4 (power on correlated presets)",
        pass,
        &format!(
            "sim2 {}/{} rejected, sim4 {}/{} rejected in {elapsed:.2?}",
            sim2.rejections, sim2.replicates, sim4.rejections, sim4.replicates
        )
    ));
}

/// Criterion 5: the covariate screens recover the generating local/global
/// partition in at least 80% of seeds for the covariate-driven presets.
#[test]
fn c05_covariate_recovery() {
    let _serial = exclusive();
    let started = Instant::now();
    let run = |name: Preset, truth_local: &[&str], truth_global: &[&str], base: u64| -> usize {
        (0..50u64)
            .into_par_iter()
            .map(|seed| {
                let (ds, _) = simulate(&preset(name, base + seed)).unwrap();
                let null = fit(&ds, &FitConfig::poisson()).unwrap();
                let rqr = rqr_residuals(&null, &ds, base + 900 + seed).unwrap();
                let locals = local_screen(&rqr, &ds).unwrap();
                let exclude = suggest_spec(&locals, &[], 4.0).local;
                let globals = global_screen(&null, &ds, &exclude).unwrap();
                let got = suggest_spec(&locals, &globals, 4.0);
                let want_local: std::collections::BTreeSet<String> =
                    truth_local.iter().map(|s| s.to_string()).collect();
                let want_global: std::collections::BTreeSet<String> =
                    truth_global.iter().map(|s| s.to_string()).collect();
                usize::from(got.local == want_local && got.global == want_global)
            })
            .sum()
    };
    let sim1_hits = run(Preset::Sim1, &["X3", "X6"], &["X5"], 10_000);
    let sim4_hits = run(Preset::Sim4, &["X1", "X5"], &["X4", "X6"], 20_000);
    let elapsed = started.elapsed();
    let pass = sim1_hits >= 40 && sim4_hits >= 40;
    assert!(verdict(
        "criterion 5 (covariate recovery)",
        pass,
        &format!("sim1 {sim1_hits}/50 exact, sim4 {sim4_hits}/50 exact in {elapsed:.2?}")
    ));
}

/// Criterion 6: dispersion calibration. Poisson-null data: mean ratio across
/// groups within [0.9, 1.1]. NB(omega=1) data under a Poisson fit: every
/// group ratio above 1.5.
#[test]
fn c06_dispersion_calibration() {
    let _serial = exclusive();
    let started = Instant::now();
    let mut ok = true;
    let mut details = Vec::new();
    for seed in [1u64, 2, 3, 4, 5] {
        let spec = preset(
            Preset::TypeI {
                n: 500,
                k: 20,
                family: Family::Poisson,
            },
            60_000 + seed,
        );
        let (ds, _) = simulate(&spec).unwrap();
        let model = fit(&ds, &FitConfig::poisson()).unwrap();
        let panel = dispersion_panel(&ds, &model).unwrap();
        let mean = panel.iter().map(|r| r.ratio).sum::<f64>() / panel.len() as f64;
        if !(0.9..=1.1).contains(&mean) {
            ok = false;
        }
        details.push(format!("{mean:.3}"));
    }
    let mut worst_min: f64 = f64::INFINITY;
    for seed in [1u64, 2, 3, 4, 5] {
        let spec = SimulationSpec {
            n: 500,
            k: 20,
            family: SimFamily::NegBinomial,
            correlation: CorrelationMode::None,
            p_total: 0,
            active_local: BTreeMap::new(),
            active_global: BTreeMap::new(),
            alpha_mean: 0.0,
            alpha_sd: 0.3,
            beta_values: vec![4f64.ln(); 20],
            omega: Some(vec![1.0; 20]),
            sigma: None,
            seed: 61_000 + seed,
        };
        let (ds, _) = simulate(&spec).unwrap();
        let model = fit(&ds, &FitConfig::poisson()).unwrap();
        let panel = dispersion_panel(&ds, &model).unwrap();
        let min = panel.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
        worst_min = worst_min.min(min);
        if min <= 1.5 {
            ok = false;
        }
    }
    let elapsed = started.elapsed();
    assert!(verdict(
        "criterion 6 (dispersion calibration)",
        ok,
        &format!(
            "null mean ratios [{}], smallest overdispersed ratio {worst_min:.2} in {elapsed:.2?}",
            details.join(", ")
        )
    ));
}

/// Criterion 7: rootogram mass conservation to 1e-8 on every emitted
/// rootogram, and the overall rootogram equals the sum of the per-group
/// rootograms exactly.
#[test]
fn c07_rootogram_conservation() {
    let _serial = exclusive();
    let (ds, _) = simulate(&preset(Preset::Sim1, 3_141)).unwrap();
    let mut pass = true;
    let mut detail = String::new();
    for family in [Family::Poisson, Family::NegBinomial] {
        let config = match family {
            Family::Poisson => FitConfig::poisson(),
            Family::NegBinomial => FitConfig::neg_binomial(),
        };
        let model = fit(&ds, &config).unwrap();
        let conserved = |r: &Rootogram| -> bool {
            let total = r.expc.iter().sum::<f64>() + r.tail_mass;
            (total - r.cells as f64).abs() < 1e-8
                && (r.obs.iter().sum::<f64>() + r.tail_obs) as usize == r.cells
        };
        let overall = rootogram(
            &ds,
            &model,
            RootogramStyle::Hanging,
            RootogramScope::Overall,
            None,
        )
        .unwrap();
        pass &= conserved(&overall);
        let j_max = *overall.support.last().unwrap();
        let mut sum_obs = vec![0.0; overall.support.len()];
        let mut sum_exp = vec![0.0; overall.support.len()];
        for g in 0..ds.k() {
            let r = rootogram(
                &ds,
                &model,
                RootogramStyle::Hanging,
                RootogramScope::Group(g),
                Some(j_max),
            )
            .unwrap();
            pass &= conserved(&r);
            for j in 0..r.support.len() {
                sum_obs[j] += r.obs[j];
                sum_exp[j] += r.expc[j];
            }
            // per-group default truncation must conserve mass too
            let default = rootogram(
                &ds,
                &model,
                RootogramStyle::Hanging,
                RootogramScope::Group(g),
                None,
            )
            .unwrap();
            pass &= conserved(&default);
        }
        let exact = overall.obs == sum_obs && overall.expc == sum_exp;
        pass &= exact;
        detail.push_str(&format!(
            "{family}: conservation ok, overall==sum(groups) bitwise = {exact}; "
        ));
    }
    assert!(verdict(
        "criterion 7 (rootogram conservation)",
        pass,
        &detail
    ));
}

/// Criterion 8: on uncorrelated covariate-driven draws, the naive-order
/// correlation test rejects while the covariate-adjusted one does not, in at
/// least 90 of 100 seeds.
#[test]
fn c08_wrong_order() {
    let _serial = exclusive();
    let started = Instant::now();
    let hits: usize = (0..100u64)
        .into_par_iter()
        .map(|seed| {
            let report = run_wrong_order(90_000 + seed).unwrap();
            usize::from(report.naive_tw.rejects_at(0.05) && !report.adjusted_tw.rejects_at(0.05))
        })
        .sum();
    let elapsed = started.elapsed();
    let pass = hits >= 90;
    assert!(verdict(
        "criterion 8 (wrong-order demonstration)",
        pass,
        &format!("naive rejects and adjusted accepts in {hits}/100 seeds in {elapsed:.2?}")
    ));
}

/// Criterion 9: the TW1 tail kernel matches the published quantiles and an
/// independent Monte Carlo GOE oracle.
#[test]
fn c09_tw1_kernel() {
    let _serial = exclusive();
    let sf95 = tw1_sf(0.9793);
    let sf99 = tw1_sf(2.0234);
    let anchors_ok = (0.045..=0.055).contains(&sf95) && (0.008..=0.012).contains(&sf99);

    // oracle: largest eigenvalues of GOE matrices, centered by 2 sqrt(M) and
    // scaled by M^{1/6}
    let m_dim = 300usize;
    let reps = 400u64;
    let samples: Vec<f64> = (0..reps)
        .into_par_iter()
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(777_000 + seed);
            let mut h = nalgebra::DMatrix::<f64>::zeros(m_dim, m_dim);
            for i in 0..m_dim {
                h[(i, i)] = rng.sample::<f64, _>(StandardNormal) * 2f64.sqrt();
                for j in (i + 1)..m_dim {
                    let v: f64 = rng.sample(StandardNormal);
                    h[(i, j)] = v;
                    h[(j, i)] = v;
                }
            }
            let lam = h
                .symmetric_eigenvalues()
                .iter()
                .cloned()
                .fold(f64::NEG_INFINITY, f64::max);
            (lam - 2.0 * (m_dim as f64).sqrt()) * (m_dim as f64).powf(1.0 / 6.0)
        })
        .collect();
    let ecdf = |t: f64| samples.iter().filter(|&&s| s <= t).count() as f64 / reps as f64;
    let goe_ok = (ecdf(0.9793) - 0.95).abs() < 0.035 && (ecdf(2.0234) - 0.99).abs() < 0.02;

    let pass = anchors_ok && goe_ok;
    assert!(verdict(
        "criterion 9 (TW1 kernel)",
        pass,
        &format!(
            "sf(0.9793) = {sf95:.4}, sf(2.0234) = {sf99:.4}; GOE oracle CDF at anchors = {:.3}/{:.3}",
            ecdf(0.9793),
            ecdf(2.0234)
        )
    ));
}

/// Criterion 10: a survey-scale dataset (n = 9241, K = 15) runs through the
/// full diagnose workflow in under 15 minutes. The published survey itself
/// is proprietary and not bundled, so this runs on synthetic data of the
/// same shape.
#[test]
fn c10_survey_scale() {
    let _serial = exclusive();
    let started = Instant::now();
    let k = 15;
    let spec = SimulationSpec {
        n: 9241,
        k,
        family: SimFamily::NegBinomial,
        correlation: CorrelationMode::Group,
        p_total: 8,
        active_local: BTreeMap::from([(0, alternating(k, 0.4)), (5, alternating(k, -0.4))]),
        active_global: BTreeMap::from([(3, 0.5)]),
        alpha_mean: 0.5,
        alpha_sd: 0.6,
        beta_values: (0..k).map(|g| 0.5f64.ln() + g as f64 * 0.2).collect(),
        omega: Some((0..k).map(|g| 1.0 + g as f64).collect()),
        sigma: Some(signed_exchangeable(k, 0.2, 0.5)),
        seed: 424_242,
    };
    let (ds, _) = simulate(&spec).unwrap();

    let dir = tempfile::tempdir().unwrap();
    ds.write_csvs(dir.path()).unwrap();
    let loaded = ArdDataset::load(
        &dir.path().join("ard.csv"),
        Some(&dir.path().join("covariates.csv")),
        Some(&dir.path().join("groups.csv")),
        None,
    )
    .unwrap();
    assert_eq!(loaded.n(), 9241);
    assert_eq!(loaded.k(), 15);

    let out = dir.path().join("diagnosis");
    let options = WorkflowOptions {
        seed: 5,
        out_dir: Some(out.clone()),
        ..WorkflowOptions::default()
    };
    let report = run_workflow(&loaded, &options).unwrap();
    let manifest = render_plots(&report, &out).unwrap();
    let elapsed = started.elapsed();
    let pass =
        elapsed.as_secs_f64() < 900.0 && out.join("report.json").exists() && manifest.len() >= 5;
    assert!(verdict(
        "criterion 10 (survey-scale runtime)",
        pass,
        &format!(
            "diagnose over 9241 x 15 finished in {elapsed:.2?} ({} plot files); recommendation {:?}",
            manifest.len(),
            report.recommendation
        )
    ));
}

fn alternating(k: usize, magnitude: f64) -> Vec<f64> {
    (0..k)
        .map(|g| if g % 2 == 0 { magnitude } else { -magnitude })
        .collect()
}

fn signed_exchangeable(k: usize, variance: f64, correlation: f64) -> Array2<f64> {
    Array2::from_shape_fn((k, k), |(i, j)| {
        let sign = |x: usize| if x % 2 == 0 { 1.0 } else { -1.0 };
        if i == j {
            variance
        } else {
            sign(i) * sign(j) * variance * correlation
        }
    })
}
