//! Rootograms: observed vs. model-expected count frequencies on the
//! square-root scale, overall or per group.
//!
//! obs_j counts cells with y = j in scope; exp_j sums the fitted pmf at j
//! over the same cells. Hanging bars drop from sqrt(exp) by sqrt(obs), so a
//! bar that misses the axis flags misfit at that count.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::dataset::ArdDataset;
use crate::error::{ArdError, Result};
use crate::family;
use crate::fit::FittedModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootogramStyle {
    /// Bars from sqrt(exp) down to sqrt(exp) - sqrt(obs).
    Hanging,
    /// Bars from 0 up to sqrt(obs).
    Standing,
    /// Bars spanning 0 to sqrt(exp) - sqrt(obs).
    Suspended,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootogramScope {
    Overall,
    Group(usize),
}

/// Rootogram data: raw frequencies plus the style-dependent plotted extents.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Rootogram {
    pub style: RootogramStyle,
    pub scope: RootogramScope,
    /// Count values j = 0..=j_max.
    pub support: Vec<u64>,
    /// Raw observed frequencies per j.
    pub obs: Vec<f64>,
    /// Raw expected frequencies per j.
    pub expc: Vec<f64>,
    /// Plotted bar extents on the sqrt scale.
    pub bar_low: Vec<f64>,
    pub bar_high: Vec<f64>,
    /// Expected mass beyond j_max.
    pub tail_mass: f64,
    /// Observed cells beyond j_max.
    pub tail_obs: f64,
    /// Number of cells in scope.
    pub cells: usize,
}

/// Builds a rootogram for the requested scope and style.
///
/// Default j_max: the smallest j whose cumulative expected mass reaches
/// 99.9% of the cells, capped at the largest observed count.
pub fn rootogram(
    dataset: &ArdDataset,
    model: &FittedModel,
    style: RootogramStyle,
    scope: RootogramScope,
    j_max: Option<u64>,
) -> Result<Rootogram> {
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
    let groups: Vec<usize> = match scope {
        RootogramScope::Overall => (0..dataset.k()).collect(),
        RootogramScope::Group(g) => {
            if g >= dataset.k() {
                return Err(ArdError::InvalidArgument(format!(
                    "group index {g} out of range (K = {})",
                    dataset.k()
                )));
            }
            vec![g]
        }
    };
    if dataset.n() == 0 || groups.is_empty() {
        return Err(ArdError::InvalidArgument("empty rootogram scope".into()));
    }

    let y = dataset.counts();
    let max_y = groups
        .iter()
        .flat_map(|&g| y.column(g).iter().copied().collect::<Vec<u64>>())
        .max()
        .unwrap_or(0);
    let cells = dataset.n() * groups.len();

    let j_max = match j_max {
        Some(j) => j,
        None => default_j_max(dataset, model, &groups, max_y, cells),
    };

    // build each group's arrays separately, then fold in ascending group
    // order: the overall rootogram is bit-for-bit the sum of the group
    // rootograms
    let len = j_max as usize + 1;
    let mut obs = vec![0.0; len];
    let mut expc = vec![0.0; len];
    let mut tail_mass = 0.0;
    let mut tail_obs = 0.0;
    for &g in &groups {
        let (g_obs, g_expc, g_tail_mass, g_tail_obs) = group_arrays(dataset, model, g, j_max);
        for j in 0..len {
            obs[j] += g_obs[j];
            expc[j] += g_expc[j];
        }
        tail_mass += g_tail_mass;
        tail_obs += g_tail_obs;
    }

    let support: Vec<u64> = (0..=j_max).collect();
    let (bar_low, bar_high) = bar_extents(style, &obs, &expc);
    Ok(Rootogram {
        style,
        scope,
        support,
        obs,
        expc,
        bar_low,
        bar_high,
        tail_mass,
        tail_obs,
        cells,
    })
}

fn group_arrays(
    dataset: &ArdDataset,
    model: &FittedModel,
    g: usize,
    j_max: u64,
) -> (Vec<f64>, Vec<f64>, f64, f64) {
    let y = dataset.counts();
    let len = j_max as usize + 1;
    let mut obs = vec![0.0; len];
    let mut expc = vec![0.0; len];
    let mut tail_mass = 0.0;
    let mut tail_obs = 0.0;
    let omega = model.omega.get(g).copied().unwrap_or(f64::INFINITY);
    for i in 0..dataset.n() {
        let mu = model.mu_hat[[i, g]];
        let mut cum = 0.0;
        let mut lp = pmf_seed(model, mu, omega);
        for (j, e) in expc.iter_mut().enumerate() {
            let p = lp.exp();
            *e += p;
            cum += p;
            lp += pmf_step(model, j as u64, mu, omega);
        }
        tail_mass += 1.0 - cum.min(1.0);
        let yv = y[[i, g]];
        if yv <= j_max {
            obs[yv as usize] += 1.0;
        } else {
            tail_obs += 1.0;
        }
    }
    (obs, expc, tail_mass, tail_obs)
}

fn pmf_seed(model: &FittedModel, mu: f64, omega: f64) -> f64 {
    family::log_pmf(model.family, 0, mu, omega)
}

/// log pmf(j+1) - log pmf(j) for the model family.
fn pmf_step(model: &FittedModel, j: u64, mu: f64, omega: f64) -> f64 {
    let jf = j as f64;
    match model.family {
        crate::family::Family::Poisson => mu.ln() - (jf + 1.0).ln(),
        crate::family::Family::NegBinomial => {
            (omega + jf).ln() + mu.ln() - (jf + 1.0).ln() - (omega + mu).ln()
        }
    }
}

fn default_j_max(
    dataset: &ArdDataset,
    model: &FittedModel,
    groups: &[usize],
    max_y: u64,
    cells: usize,
) -> u64 {
    // cumulative expected mass per j until 99.9% of the cells are covered
    let target = 0.999 * cells as f64;
    let mut cum = vec![0.0; max_y as usize + 1];
    for &g in groups {
        let omega = model.omega.get(g).copied().unwrap_or(f64::INFINITY);
        for i in 0..dataset.n() {
            let mu = model.mu_hat[[i, g]];
            let mut lp = pmf_seed(model, mu, omega);
            let mut acc = 0.0;
            for (j, c) in cum.iter_mut().enumerate() {
                acc += lp.exp();
                *c += acc;
                lp += pmf_step(model, j as u64, mu, omega);
            }
        }
    }
    for (j, &c) in cum.iter().enumerate() {
        if c >= target {
            return j as u64;
        }
    }
    max_y
}

fn bar_extents(style: RootogramStyle, obs: &[f64], expc: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut low = Vec::with_capacity(obs.len());
    let mut high = Vec::with_capacity(obs.len());
    for (&o, &e) in obs.iter().zip(expc) {
        let (so, se) = (o.sqrt(), e.sqrt());
        let (l, h) = match style {
            RootogramStyle::Hanging => (se - so, se),
            RootogramStyle::Standing => (0.0, so),
            RootogramStyle::Suspended => {
                let d = se - so;
                (d.min(0.0), d.max(0.0))
            }
        };
        low.push(l);
        high.push(h);
    }
    (low, high)
}

impl Rootogram {
    /// CSV emission: j, obs, exp, bar_low, bar_high, is_multiple_of_5 (the
    /// shading flag for heaping-prone counts).
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["j", "obs", "exp", "bar_low", "bar_high", "is_multiple_of_5"])?;
        for (idx, &j) in self.support.iter().enumerate() {
            w.write_record([
                j.to_string(),
                format!("{}", self.obs[idx]),
                format!("{}", self.expc[idx]),
                format!("{}", self.bar_low[idx]),
                format!("{}", self.bar_high[idx]),
                format!("{}", u8::from(j > 0 && j % 5 == 0)),
            ])?;
        }
        w.write_record([
            "tail".to_string(),
            format!("{}", self.tail_obs),
            format!("{}", self.tail_mass),
            String::new(),
            String::new(),
            String::new(),
        ])?;
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::ArdDataset;
    use crate::fit::{fit, FitConfig};
    use approx::assert_abs_diff_eq;
    use ndarray::{array, Array2};

    fn toy() -> (ArdDataset, FittedModel) {
        let ds = ArdDataset::new(
            array![[0u64, 1], [2, 1], [1, 3]],
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
    fn poisson_unit_mean_expected_frequencies() {
        let (ds, mut model) = toy();
        model.mu_hat.fill(1.0);
        let r = rootogram(
            &ds,
            &model,
            RootogramStyle::Hanging,
            RootogramScope::Group(0),
            Some(2),
        )
        .unwrap();
        // single-cell pmf values scaled by 3 cells in the column
        let e = (-1f64).exp();
        assert_abs_diff_eq!(r.expc[0] / 3.0, e, epsilon = 1e-12);
        assert_abs_diff_eq!(r.expc[1] / 3.0, e, epsilon = 1e-12);
        assert_abs_diff_eq!(r.expc[2] / 3.0, e / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn mass_conservation() {
        let (ds, model) = toy();
        for scope in [RootogramScope::Overall, RootogramScope::Group(1)] {
            let r = rootogram(&ds, &model, RootogramStyle::Hanging, scope, None).unwrap();
            let total_exp: f64 = r.expc.iter().sum::<f64>() + r.tail_mass;
            assert_abs_diff_eq!(total_exp, r.cells as f64, epsilon = 1e-8);
            let total_obs: f64 = r.obs.iter().sum::<f64>() + r.tail_obs;
            assert_eq!(total_obs as usize, r.cells);
        }
    }

    #[test]
    fn overall_is_sum_of_groups() {
        let (ds, model) = toy();
        let overall = rootogram(
            &ds,
            &model,
            RootogramStyle::Hanging,
            RootogramScope::Overall,
            Some(6),
        )
        .unwrap();
        let mut sum_obs = vec![0.0; 7];
        let mut sum_exp = vec![0.0; 7];
        for g in 0..ds.k() {
            let r = rootogram(
                &ds,
                &model,
                RootogramStyle::Hanging,
                RootogramScope::Group(g),
                Some(6),
            )
            .unwrap();
            for j in 0..7 {
                sum_obs[j] += r.obs[j];
                sum_exp[j] += r.expc[j];
            }
        }
        assert_eq!(overall.obs, sum_obs);
        assert_eq!(overall.expc, sum_exp);
    }

    #[test]
    fn hanging_bars_touch_axis_on_perfect_fit() {
        // obs_j == exp_j makes bar_low = 0 in the hanging style
        let obs = vec![4.0, 9.0, 1.0];
        let (low, high) = bar_extents(RootogramStyle::Hanging, &obs, &obs);
        for (l, (h, o)) in low.iter().zip(high.iter().zip(&obs)) {
            assert_abs_diff_eq!(*l, 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(*h, o.sqrt(), epsilon = 1e-12);
        }
    }

    #[test]
    fn style_extents() {
        let obs = vec![4.0];
        let exp = vec![9.0];
        let (l, h) = bar_extents(RootogramStyle::Hanging, &obs, &exp);
        assert_eq!((l[0], h[0]), (1.0, 3.0));
        let (l, h) = bar_extents(RootogramStyle::Standing, &obs, &exp);
        assert_eq!((l[0], h[0]), (0.0, 2.0));
        let (l, h) = bar_extents(RootogramStyle::Suspended, &obs, &exp);
        assert_eq!((l[0], h[0]), (0.0, 1.0));
        let (l, h) = bar_extents(RootogramStyle::Suspended, &exp, &obs);
        assert_eq!((l[0], h[0]), (-1.0, 0.0));
    }

    #[test]
    fn group_out_of_range_errors() {
        let (ds, model) = toy();
        assert!(rootogram(
            &ds,
            &model,
            RootogramStyle::Hanging,
            RootogramScope::Group(5),
            None
        )
        .is_err());
    }

    #[test]
    fn default_jmax_capped_at_max_observed() {
        let (ds, mut model) = toy();
        // tiny means concentrate expected mass at 0, but observations reach 3
        model.mu_hat.fill(0.01);
        let r = rootogram(
            &ds,
            &model,
            RootogramStyle::Hanging,
            RootogramScope::Overall,
            None,
        )
        .unwrap();
        assert!(*r.support.last().unwrap() <= 3);
    }
}
