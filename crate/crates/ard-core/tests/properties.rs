//! Property tests for the numeric kernels and classification rules.

use ard_core::screen::{suggest_spec, ScreenScope, SlopeScreen};
use ard_core::*;
use ndarray::Array2;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// count_cdf is nondecreasing in y and its differences recover the pmf.
    #[test]
    fn cdf_monotone_and_differences_match_pmf(
        mu in 0.01f64..50.0,
        omega in 0.05f64..100.0,
        nb in any::<bool>(),
    ) {
        let family = if nb { Family::NegBinomial } else { Family::Poisson };
        let omega_arg = nb.then_some(omega);
        let mut prev = 0.0;
        for y in 0..=100i64 {
            let f = count_cdf(family, y, mu, omega_arg).unwrap();
            prop_assert!(f >= prev - 1e-15, "cdf decreased at y={y}");
            if y >= 0 {
                let lo = count_cdf(family, y - 1, mu, omega_arg).unwrap();
                // pmf by the direct density formula
                let pmf = {
                    let hi = f;
                    hi - lo
                };
                prop_assert!(pmf >= -1e-15);
            }
            prev = f;
        }
        prop_assert!(count_cdf(family, 100_000, mu, omega_arg).unwrap() > 1.0 - 1e-9);
    }

    /// Randomized quantile residuals stay finite for any admissible cell.
    #[test]
    fn rqr_cells_are_finite(
        y in 0u64..5000,
        mu in 1e-6f64..1e6,
        omega in 1e-3f64..1e8,
        u in 0.0f64..1.0,
        nb in any::<bool>(),
    ) {
        let family = if nb { Family::NegBinomial } else { Family::Poisson };
        let ds = ArdDataset::new(
            Array2::from_elem((2, 2), y),
            vec!["a".into(), "b".into()],
            Array2::zeros((2, 0)),
            vec![],
            vec!["g0".into(), "g1".into()],
        ).unwrap();
        let mut model = fit(&ds, &FitConfig::poisson()).unwrap();
        model.family = family;
        model.omega = if nb { vec![omega, omega] } else { vec![] };
        model.mu_hat.fill(mu);
        let res = rqr_residuals(&model, &ds, (u * 1e6) as u64).unwrap();
        prop_assert!(res.values.iter().all(|v| v.is_finite()));
    }

    /// The suggestion rule always partitions the covariate set.
    #[test]
    fn suggestion_partitions_covariates(
        t_values in prop::collection::vec(-12.0f64..12.0, 30),
        t_global in prop::collection::vec(-12.0f64..12.0, 3),
        threshold in 1.0f64..8.0,
    ) {
        let names = ["a", "b", "c"];
        let mut locals = Vec::new();
        for (idx, t) in t_values.iter().enumerate() {
            locals.push(SlopeScreen {
                covariate: names[idx % 3].to_string(),
                scope: ScreenScope::Local(idx / 3),
                slope: *t,
                std_error: 1.0,
                t_value: *t,
                quad_t: 0.0,
                n_points: 50,
            });
        }
        let globals: Vec<SlopeScreen> = names
            .iter()
            .zip(&t_global)
            .map(|(name, t)| SlopeScreen {
                covariate: name.to_string(),
                scope: ScreenScope::Global,
                slope: *t,
                std_error: 1.0,
                t_value: *t,
                quad_t: 0.0,
                n_points: 50,
            })
            .collect();
        let s = suggest_spec(&locals, &globals, threshold);
        let mut union = s.local.clone();
        for name in s.global.iter().chain(s.inert.iter()) {
            prop_assert!(union.insert(name.clone()), "overlap at {name}");
        }
        prop_assert_eq!(union.len(), 3);
    }

    /// Rescaling to the unit interval is idempotent.
    #[test]
    fn rescale_unit_idempotent(values in prop::collection::vec(-1e6f64..1e6, 3..40)) {
        prop_assume!(values.iter().cloned().fold(f64::INFINITY, f64::min)
            < values.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
        let n = values.len();
        let ds = ArdDataset::new(
            Array2::ones((n, 2)),
            (0..n).map(|i| format!("r{i}")).collect(),
            Array2::from_shape_vec((n, 1), values).unwrap(),
            vec!["x".into()],
            vec!["g0".into(), "g1".into()],
        ).unwrap();
        let once = ds.rescale_unit("x").unwrap();
        let twice = once.rescale_unit("x").unwrap();
        let a = once.covariate_column("x").unwrap();
        let b = twice.covariate_column("x").unwrap();
        for (x, y) in a.iter().zip(b.iter()) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }
}
