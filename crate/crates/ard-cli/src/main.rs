//! Command-line diagnostics for aggregated relational data.
//!
//! Exit codes: 0 success, 2 computation/stage failure, 3 input validation
//! failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use ard_core::calibrate::{run_calibration, run_power, run_wrong_order, CalibrationGrid};
use ard_core::dispersion::{dispersion_panel, write_dispersion_csv};
use ard_core::plot::render_plots;
use ard_core::report::{run_workflow, WorkflowOptions};
use ard_core::rootogram::{rootogram, RootogramScope, RootogramStyle};
use ard_core::sim::{preset, simulate, Preset};
use ard_core::{
    fit, pearson_residuals, rqr_residuals, tw_test, ArdDataset, ArdError, Correction,
    CovariateSpec, Family, FitConfig, FittedModel, ResidualKind,
};

#[derive(Parser)]
#[command(
    name = "ard",
    version,
    about = "Diagnostics for aggregated relational data count models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct DataArgs {
    /// Counts CSV: respondent_id,<group_1>,...,<group_K>
    #[arg(long)]
    ard: PathBuf,
    /// Covariates CSV: respondent_id,<cov_1>,...,<cov_p>
    #[arg(long)]
    covariates: Option<PathBuf>,
    /// Groups CSV: name,known_size
    #[arg(long)]
    groups: Option<PathBuf>,
    /// Respondent/group covariate CSV (same shape as the counts file)
    #[arg(long)]
    rg: Option<PathBuf>,
    /// Total population size (enables the known-size prevalence anchor)
    #[arg(long)]
    total_population: Option<f64>,
}

impl DataArgs {
    fn load(&self) -> Result<ArdDataset, ArdError> {
        let mut ds = ArdDataset::load(
            &self.ard,
            self.covariates.as_deref(),
            self.groups.as_deref(),
            self.rg.as_deref(),
        )?;
        if let Some(total) = self.total_population {
            ds = ds.with_total_population(total)?;
        }
        Ok(ds)
    }
}

#[derive(Args, Clone)]
struct FitArgs {
    /// Model family: poisson or negbinomial
    #[arg(long, default_value = "poisson")]
    family: String,
    /// Comma-separated covariate names with one shared coefficient
    #[arg(long, value_delimiter = ',')]
    global: Vec<String>,
    /// Comma-separated covariate names with per-group coefficients
    #[arg(long, value_delimiter = ',')]
    local: Vec<String>,
    /// Include the respondent/group covariate
    #[arg(long)]
    include_rg: bool,
    /// Quadratic penalty weight on coefficients (0 = maximum likelihood)
    #[arg(long, default_value_t = 0.0)]
    penalty: f64,
}

impl FitArgs {
    fn config(&self) -> Result<FitConfig, ArdError> {
        let family = Family::from_str(&self.family).map_err(ArdError::InvalidArgument)?;
        let mut config = match family {
            Family::Poisson => FitConfig::poisson(),
            Family::NegBinomial => FitConfig::neg_binomial(),
        };
        config.covariates = CovariateSpec::new(
            self.global.iter().filter(|s| !s.is_empty()).cloned(),
            self.local.iter().filter(|s| !s.is_empty()).cloned(),
            self.include_rg,
        );
        config.penalty_weight = self.penalty;
        Ok(config)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the full diagnostic workflow and write report.json plus plots
    Diagnose {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Level for the correlation test and dispersion decision
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        /// Centering constants: none or half
        #[arg(long, default_value = "half")]
        correction: String,
        /// |t| threshold of the covariate screens
        #[arg(long, default_value_t = 4.0)]
        t_threshold: f64,
        #[arg(long, default_value_t = 0.0)]
        penalty: f64,
        /// Include the respondent/group covariate in the adjusted nulls
        #[arg(long)]
        use_rg: bool,
        /// Skip SVG rendering (CSV artifacts are always written)
        #[arg(long)]
        no_plots: bool,
    },
    /// Fit one null model and write model.json
    Fit {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        fit: FitArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compute residuals from a fitted model
    Residuals {
        #[command(flatten)]
        data: DataArgs,
        /// model.json from `ard fit`
        #[arg(long)]
        model: PathBuf,
        /// pearson or rqr
        #[arg(long, default_value = "rqr")]
        kind: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Largest-eigenvalue group-correlation test on model residuals
    TwTest {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[arg(long, default_value = "half")]
        correction: String,
        /// Keep the model's ML dispersion instead of the moment-recalibrated
        /// dispersion the test is calibrated for
        #[arg(long)]
        no_recalibrate: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Observed vs expected count frequencies under a fitted model
    Rootogram {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        model: PathBuf,
        /// hanging, standing, or suspended
        #[arg(long, default_value = "hanging")]
        style: String,
        /// "overall" or a group index
        #[arg(long, default_value = "overall")]
        scope: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Per-group dispersion indices of a Poisson fit
    Dispersion {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate synthetic data from a named scenario
    Simulate {
        /// sim1, sim2, sim3, sim4, or type1
        #[arg(long, default_value = "sim1")]
        preset: String,
        /// Respondents for --preset type1
        #[arg(long, default_value_t = 500)]
        n: usize,
        /// Groups for --preset type1
        #[arg(long, default_value_t = 20)]
        k: usize,
        /// Family for --preset type1: poisson or negbinomial
        #[arg(long, default_value = "poisson")]
        family: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Type-I-error calibration of the correlation test over a grid
    Calibrate {
        #[arg(long, value_delimiter = ',', default_value = "100,500,1000")]
        n_values: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "10,20")]
        k_values: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        replicates: usize,
        #[arg(long, default_value_t = 20240501)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Power of the correlation test on a correlated preset
    Power {
        /// sim2 or sim4
        #[arg(long)]
        preset: String,
        #[arg(long, default_value_t = 100)]
        replicates: usize,
        #[arg(long, default_value_t = 20240501)]
        seed: u64,
    },
    /// Diagnostics in the wrong order vs the right order on one draw
    WrongOrder {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            if err.is_input_error() {
                ExitCode::from(3)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn load_model(path: &Path, dataset: &ArdDataset) -> Result<FittedModel, ArdError> {
    let text = fs::read_to_string(path)?;
    let mut model = FittedModel::from_json(&text)?;
    model.rehydrate(dataset)?;
    Ok(model)
}

fn run(command: Command) -> Result<(), ArdError> {
    match command {
        Command::Diagnose {
            data,
            out,
            seed,
            alpha,
            correction,
            t_threshold,
            penalty,
            use_rg,
            no_plots,
        } => {
            let dataset = data.load()?;
            let options = WorkflowOptions {
                seed,
                alpha,
                correction: Correction::from_str(&correction).map_err(ArdError::InvalidArgument)?,
                t_threshold,
                penalty_weight: penalty,
                use_rg,
                out_dir: Some(out.clone()),
            };
            let report = run_workflow(&dataset, &options)?;
            if !no_plots {
                let manifest = render_plots(&report, &out)?;
                println!(
                    "wrote {} plot files under {}",
                    manifest.len(),
                    out.display()
                );
            }
            println!("recommendation: {:?}", report.recommendation);
            println!("{}", report.rationale);
            println!(
                "suggested local covariates: {:?}",
                report.covariate_suggestion.local
            );
            println!(
                "suggested global covariates: {:?}",
                report.covariate_suggestion.global
            );
            println!(
                "correlation test: T = {:.3}, p = {:.4}",
                report.tw_result.statistic, report.tw_result.p_value
            );
            println!("report: {}", out.join("report.json").display());
            Ok(())
        }
        Command::Fit {
            data,
            fit: fit_args,
            out,
        } => {
            let dataset = data.load()?;
            let config = fit_args.config()?;
            let model = fit(&dataset, &config)?;
            fs::create_dir_all(&out)?;
            let path = out.join("model.json");
            fs::write(&path, model.to_json()?)?;
            println!(
                "fit {}: loglik = {:.4}, converged = {}, iterations = {}",
                model.family, model.loglik, model.converged, model.iterations
            );
            for w in &model.warnings {
                eprintln!("warning: {w}");
            }
            println!("model: {}", path.display());
            Ok(())
        }
        Command::Residuals {
            data,
            model,
            kind,
            seed,
            out,
        } => {
            let dataset = data.load()?;
            let model = load_model(&model, &dataset)?;
            let residuals = match kind.to_ascii_lowercase().as_str() {
                "pearson" => pearson_residuals(&model, &dataset)?,
                "rqr" | "randomized-quantile" | "quantile" => {
                    rqr_residuals(&model, &dataset, seed)?
                }
                other => {
                    return Err(ArdError::InvalidArgument(format!(
                        "unknown residual kind '{other}' (expected pearson or rqr)"
                    )))
                }
            };
            fs::create_dir_all(&out)?;
            let name = match residuals.kind {
                ResidualKind::Pearson => "residuals_pearson.csv",
                ResidualKind::RandomizedQuantile => "residuals_rqr.csv",
            };
            let path = out.join(name);
            residuals.write_csv(&path, &dataset, &model)?;
            println!("residuals: {}", path.display());
            Ok(())
        }
        Command::TwTest {
            data,
            model,
            seed,
            alpha,
            correction,
            no_recalibrate,
            out,
        } => {
            let dataset = data.load()?;
            let mut model = load_model(&model, &dataset)?;
            if model.family == Family::NegBinomial && !no_recalibrate {
                ard_core::fit::recalibrate_dispersion(&mut model, &dataset)?;
            }
            let rqr = rqr_residuals(&model, &dataset, seed)?;
            let correction =
                Correction::from_str(&correction).map_err(ArdError::InvalidArgument)?;
            let result = tw_test(&rqr, alpha, correction)?;
            fs::create_dir_all(&out)?;
            let path = out.join("tw_test.json");
            fs::write(
                &path,
                serde_json::to_string_pretty(&result)
                    .map_err(|e| ArdError::InvalidArgument(e.to_string()))?,
            )?;
            println!(
                "T = {:.4}, p = {:.4}, reject at {} = {}",
                result.statistic,
                result.p_value,
                alpha,
                result.rejects_at(alpha)
            );
            println!("result: {}", path.display());
            Ok(())
        }
        Command::Rootogram {
            data,
            model,
            style,
            scope,
            out,
        } => {
            let dataset = data.load()?;
            let model = load_model(&model, &dataset)?;
            let style = match style.to_ascii_lowercase().as_str() {
                "hanging" => RootogramStyle::Hanging,
                "standing" => RootogramStyle::Standing,
                "suspended" => RootogramStyle::Suspended,
                other => {
                    return Err(ArdError::InvalidArgument(format!(
                        "unknown rootogram style '{other}'"
                    )))
                }
            };
            let (scope, label) = match scope.to_ascii_lowercase().as_str() {
                "overall" => (RootogramScope::Overall, "overall".to_string()),
                g => {
                    let idx: usize = g.parse().map_err(|_| {
                        ArdError::InvalidArgument(format!(
                            "scope must be 'overall' or a group index, got '{g}'"
                        ))
                    })?;
                    (RootogramScope::Group(idx), format!("group{idx}"))
                }
            };
            let root = rootogram(&dataset, &model, style, scope, None)?;
            fs::create_dir_all(&out)?;
            let path = out.join(format!("rootogram_{label}.csv"));
            root.write_csv(&path)?;
            println!(
                "rootogram over {} cells, support 0..={}, tail mass {:.4}",
                root.cells,
                root.support.last().unwrap(),
                root.tail_mass
            );
            println!("rootogram: {}", path.display());
            Ok(())
        }
        Command::Dispersion { data, model, out } => {
            let dataset = data.load()?;
            let model = load_model(&model, &dataset)?;
            let panel = dispersion_panel(&dataset, &model)?;
            fs::create_dir_all(&out)?;
            let path = out.join("dispersion.csv");
            write_dispersion_csv(&panel, dataset.group_names(), &path)?;
            for r in &panel {
                println!(
                    "group {:>2} ({}): ratio = {:.3}, p = {:.4}",
                    r.group,
                    dataset.group_names()[r.group],
                    r.ratio,
                    r.p_value
                );
            }
            println!("dispersion: {}", path.display());
            Ok(())
        }
        Command::Simulate {
            preset: name,
            n,
            k,
            family,
            seed,
            out,
        } => {
            let spec = match name.to_ascii_lowercase().as_str() {
                "type1" | "typei" => {
                    let family = Family::from_str(&family).map_err(ArdError::InvalidArgument)?;
                    preset(Preset::TypeI { n, k, family }, seed)
                }
                other => {
                    let p = Preset::from_str(other).map_err(ArdError::InvalidArgument)?;
                    preset(p, seed)
                }
            };
            let (dataset, truth) = simulate(&spec)?;
            dataset.write_csvs(&out)?;
            fs::write(
                out.join("truth.json"),
                serde_json::to_string_pretty(&truth)
                    .map_err(|e| ArdError::InvalidArgument(e.to_string()))?,
            )?;
            println!(
                "simulated {} respondents x {} groups ({:?}, {:?}) into {}",
                dataset.n(),
                dataset.k(),
                spec.family,
                spec.correlation,
                out.display()
            );
            Ok(())
        }
        Command::Calibrate {
            n_values,
            k_values,
            replicates,
            seed,
            out,
        } => {
            let grid = CalibrationGrid {
                n_values,
                k_values,
                replicates,
                base_seed: seed,
                ..CalibrationGrid::default()
            };
            let table = run_calibration(&grid)?;
            fs::create_dir_all(&out)?;
            table.write_csv(&out.join("calibration_table.csv"))?;
            let md = table.to_markdown();
            fs::write(out.join("calibration_table.md"), &md)?;
            println!("{md}");
            println!("table: {}", out.join("calibration_table.csv").display());
            Ok(())
        }
        Command::Power {
            preset: name,
            replicates,
            seed,
        } => {
            let p = Preset::from_str(&name).map_err(ArdError::InvalidArgument)?;
            let result = run_power(p, replicates, seed)?;
            println!(
                "{name}: rejected {}/{} ({:.2}), non-converged {}",
                result.rejections, result.replicates, result.rejection_rate, result.non_converged
            );
            Ok(())
        }
        Command::WrongOrder { seed, out } => {
            let report = run_wrong_order(seed)?;
            println!(
                "naive order:    T = {:>8.2} (p = {:.4}), mean dispersion ratio = {:.2}",
                report.naive_tw.statistic, report.naive_tw.p_value, report.naive_mean_ratio
            );
            println!(
                "adjusted order: T = {:>8.2} (p = {:.4}), mean dispersion ratio = {:.2}",
                report.adjusted_tw.statistic,
                report.adjusted_tw.p_value,
                report.adjusted_mean_ratio
            );
            println!(
                "suggested covariates: local {:?}, global {:?}",
                report.suggestion.local, report.suggestion.global
            );
            if let Some(dir) = out {
                fs::create_dir_all(&dir)?;
                fs::write(
                    dir.join("wrong_order.json"),
                    serde_json::to_string_pretty(&report)
                        .map_err(|e| ArdError::InvalidArgument(e.to_string()))?,
                )?;
                println!("report: {}", dir.join("wrong_order.json").display());
            }
            Ok(())
        }
    }
}
