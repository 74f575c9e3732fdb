//! Scenario runner: samples pressure and solution fields on grids, writes
//! density profiles, and runs the verification suites.

pub mod config;
pub mod error;
pub mod scenario;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use schwarz_core::heleshaw::{flux_balance, interfocal_density};
use schwarz_core::numerics::DEFAULT_TOLERANCE;
use schwarz_core::verify::{run_suite, Suite, VerificationReport};
use schwarz_core::{CurveKind, Error, FamilyShape};
use serde::Serialize;

pub use config::{OutputKind, ScenarioConfig, ScenarioKind};
pub use error::{CliError, CliResult};
use scenario::Field;

/// Largest fraction of grid points that may fail before a run is rejected.
pub const MAX_ERROR_FRACTION: f64 = 0.1;

/// Points of the density profile, sine-spaced over the inter-focal segment.
pub const DENSITY_POINTS: usize = 512;

/// Environment variable that caps the worker thread count.
pub const THREADS_VAR: &str = "SCHWARZ_THREADS";

const ERROR_SAMPLE_LIMIT: usize = 10;

/// Sizes the global thread pool from [`THREADS_VAR`] when it is set.
pub fn configure_threads() -> CliResult<Option<usize>> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(None);
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| CliError::invalid(THREADS_VAR, format!("expected a positive integer, got {raw:?}")))?;
    // a second initialisation in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(Some(n))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointError {
    pub x: f64,
    pub y: f64,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Snapshot {
    pub t: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field_csv: Option<PathBuf>,
    pub points: usize,
    pub masked_singular: usize,
    pub masked_error: usize,
    pub error_fraction: f64,
    /// The first few failures, in grid order.
    pub errors: Vec<PointError>,
    pub elapsed_ms: f64,
    pub verifications: Vec<VerificationReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub version: &'static str,
    pub started_unix_s: u64,
    pub threads: usize,
    pub quadrature_tolerance: f64,
    pub config: ScenarioConfig,
    pub snapshots: Vec<Snapshot>,
    pub passed: bool,
}

/// One sampled value; `None` when masked.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldRow {
    pub x: f64,
    pub y: f64,
    pub value: Option<f64>,
}

fn unix_now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

fn create_dir(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

fn write_json(path: &Path, value: &impl Serialize) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn indexed(stem: &str, ext: &str, index: usize, count: usize) -> String {
    if count == 1 {
        format!("{stem}.{ext}")
    } else {
        format!("{stem}_t{index}.{ext}")
    }
}

pub fn write_field_csv(path: &Path, rows: &[FieldRow]) -> CliResult<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["x", "y", "value", "masked"])?;
    for row in rows {
        let (value, masked) = match row.value {
            Some(v) => (v.to_string(), "0"),
            None => (String::new(), "1"),
        };
        w.write_record([row.x.to_string(), row.y.to_string(), value, masked.to_string()])?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

/// Evaluates `field` at every grid point in parallel, masking the singular
/// support and recording failures.
fn sample(field: &Field, config: &ScenarioConfig) -> (Vec<FieldRow>, usize, Vec<PointError>) {
    let grid = config.grid.expect("run needs a grid");
    let results: Vec<(FieldRow, bool, Option<PointError>)> = grid
        .points()
        .into_par_iter()
        .map(|(x, y)| {
            if field.support.distance(x, y) <= config.exclusion_radius {
                return (FieldRow { x, y, value: None }, true, None);
            }
            match (field.eval)(x, y) {
                Ok(v) => (FieldRow { x, y, value: Some(v) }, false, None),
                Err(e) => (
                    FieldRow { x, y, value: None },
                    false,
                    Some(PointError {
                        x,
                        y,
                        message: e.to_string(),
                    }),
                ),
            }
        })
        .collect();
    let singular = results.iter().filter(|r| r.1).count();
    let mut rows = Vec::with_capacity(results.len());
    let mut errors = Vec::new();
    for (row, _, err) in results {
        rows.push(row);
        errors.extend(err);
    }
    (rows, singular, errors)
}

/// Samples the configured field at every requested time and writes the
/// requested artifacts into `out_dir`.
///
/// The returned report says whether the run passed: fewer than
/// [`MAX_ERROR_FRACTION`] of the points failed and every attached
/// verification held.
pub fn run_scenario(config: &ScenarioConfig, out_dir: &Path) -> CliResult<RunReport> {
    config.validate()?;
    if config.grid.is_none() {
        return Err(CliError::invalid("grid", "required by run"));
    }
    create_dir(out_dir)?;
    let started_unix_s = unix_now();
    let times = config.time_list();
    let mut snapshots = Vec::with_capacity(times.len());
    let mut passed = true;

    for (index, &t) in times.iter().enumerate() {
        let clock = Instant::now();
        let field = Field::build(config, t)?;
        let (rows, masked_singular, errors) = sample(&field, config);
        let error_fraction = errors.len() as f64 / rows.len() as f64;
        let field_csv = if config.outputs.contains(&OutputKind::FieldCsv) {
            let path = out_dir.join(indexed("field", "csv", index, times.len()));
            write_field_csv(&path, &rows)?;
            Some(path)
        } else {
            None
        };
        let verifications: Vec<VerificationReport> = config
            .verifications
            .iter()
            .map(|&kind| field.verify(kind, config.tolerance))
            .collect();
        passed &= error_fraction <= MAX_ERROR_FRACTION && verifications.iter().all(|r| r.passed);
        snapshots.push(Snapshot {
            t,
            field_csv,
            points: rows.len(),
            masked_singular,
            masked_error: errors.len(),
            error_fraction,
            errors: errors.into_iter().take(ERROR_SAMPLE_LIMIT).collect(),
            elapsed_ms: clock.elapsed().as_secs_f64() * 1e3,
            verifications,
        });
    }

    let report = RunReport {
        version: env!("CARGO_PKG_VERSION"),
        started_unix_s,
        threads: rayon::current_num_threads(),
        quadrature_tolerance: DEFAULT_TOLERANCE,
        config: config.clone(),
        snapshots,
        passed,
    };
    if config.outputs.contains(&OutputKind::ReportJson) {
        write_json(&out_dir.join("report.json"), &report)?;
    }
    Ok(report)
}

/// Flux and area rate written next to a density profile.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensitySummary {
    pub t: f64,
    pub d: f64,
    pub flux: f64,
    pub area_rate: f64,
    /// `flux / area_rate`, absent when the area is steady.
    pub ratio: Option<f64>,
    pub density_csv: Option<PathBuf>,
}

/// `x_j = −d cos(π (j + ½) / n)`, clustered towards the foci.
pub fn sine_spaced(d: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|j| -d * (std::f64::consts::PI * (j as f64 + 0.5) / n as f64).cos())
        .collect()
}

/// Writes the inter-focal source density of an ellipse family, one CSV per
/// time, and a JSON line per time with the flux balance.
pub fn sample_density(config: &ScenarioConfig, out_dir: &Path) -> CliResult<Vec<DensitySummary>> {
    config.validate()?;
    let family = config.family()?;
    if !matches!(family.shape, FamilyShape::Ellipse { .. } | FamilyShape::ConfocalEllipse { .. }) {
        return Err(Error::ScenarioMismatch("the density lives on the inter-focal segment of an ellipse".into()).into());
    }
    create_dir(out_dir)?;
    let params = config.params()?;
    let times = config.time_list();
    let mut lines = String::new();
    let mut summaries = Vec::new();
    for (index, &t) in times.iter().enumerate() {
        let CurveKind::Ellipse { a, b } = family.state(t)?.curve.kind() else {
            return Err(Error::ScenarioMismatch(format!("family is not an ellipse at t = {t}")).into());
        };
        let d = (a * a - b * b).sqrt();
        let rows = sine_spaced(d, DENSITY_POINTS)
            .into_par_iter()
            .map(|x| interfocal_density(&family, t, &params, x).map(|mu| (x, mu)))
            .collect::<Result<Vec<_>, _>>()?;
        let density_csv = if config.outputs.contains(&OutputKind::DensityCsv) || config.outputs.is_empty() {
            let path = out_dir.join(indexed("density", "csv", index, times.len()));
            let mut w = csv::Writer::from_path(&path)?;
            w.write_record(["x", "density"])?;
            for (x, mu) in rows {
                w.write_record([x.to_string(), mu.to_string()])?;
            }
            w.flush().map_err(|e| CliError::io(&path, e))?;
            Some(path)
        } else {
            None
        };
        let (flux, area_rate) = flux_balance(&family, t, &params)?;
        let summary = DensitySummary {
            t,
            d,
            flux,
            area_rate,
            ratio: (area_rate != 0.0).then(|| flux / area_rate),
            density_csv,
        };
        lines.push_str(&serde_json::to_string(&summary)?);
        lines.push('\n');
        summaries.push(summary);
    }
    let path = out_dir.join("density.json");
    fs::write(&path, lines).map_err(|e| CliError::io(&path, e))?;
    Ok(summaries)
}

/// Runs a verification suite, writing one JSON report per check.
pub fn verify_suite(suite: Suite, out_dir: &Path) -> CliResult<Vec<VerificationReport>> {
    create_dir(out_dir)?;
    let reports = run_suite(suite);
    for report in &reports {
        write_json(&out_dir.join(format!("{}.json", report.check_name)), report)?;
    }
    Ok(reports)
}
