//! Diagnostics for aggregated relational data (ARD) count models.
//!
//! ARD surveys ask "how many people do you know in group k?", giving an
//! n x K count matrix. This crate fits the Poisson and negative-binomial
//! null models used as diagnostic baselines, computes Pearson and randomized
//! quantile residuals, screens respondent covariates for local (per-group)
//! and global effects, tests for residual group correlation via the largest
//! eigenvalue of the residual covariance (Tracy-Widom reference), and checks
//! the count distribution with rootograms and per-group dispersion indices.
//! A simulator for the standard ARD model classes and a Monte Carlo
//! calibration harness support power and type-I-error studies, and a
//! workflow orchestrator runs the whole sequence and emits a structured
//! report with plot data.

pub mod calibrate;
pub mod dataset;
pub mod dispersion;
mod error;
mod family;
pub mod fit;
pub mod plot;
pub mod report;
pub mod residual;
mod rng;
pub mod rootogram;
pub mod screen;
pub mod sim;
pub mod tw;
mod tw1_table;

pub use dataset::{ArdDataset, CovariateSpec, ValidationReport};
pub use error::{ArdError, Result};
pub use family::Family;
pub use fit::{fit, log_likelihood, predict_mu, FitConfig, FittedModel};
pub use residual::{count_cdf, pearson_residuals, rqr_residuals, ResidualKind, ResidualMatrix};
pub use tw::{
    tw1_cdf, tw1_sf, tw_constants, tw_statistic, tw_test, Correction, TwConstants, TwTestResult,
};
