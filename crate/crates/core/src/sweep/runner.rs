use std::sync::atomic::{AtomicUsize, Ordering};

use crate::dynamics::{build_diffusion, build_drift, stability, steady_covariance, StabilityReport};
use crate::error::Result;
use crate::measures::{default_measures, full_report_with, Measure, MeasureReport, ReportOptions};
use crate::model::EffectiveParams;

use super::region::{classify, RegionCodes};
use super::{Axis, SweepSpec};

/// How grid points are scheduled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    /// Rayon work stealing on the current thread pool.
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

/// Full pipeline at one operating point. Solver errors are recorded in the
/// report rather than returned.
pub fn evaluate_point(p: &EffectiveParams, options: &ReportOptions) -> MeasureReport {
    let drift = build_drift(p);
    let report = match stability(&drift) {
        Ok(r) => r,
        Err(e) => return MeasureReport::sentinel(None, &options.measures, Some(e.to_string())),
    };
    if !report.stable {
        return full_report_with(None, &report, options);
    }
    match steady_covariance(&drift, &build_diffusion(p)) {
        Ok(v) => full_report_with(Some(&v), &report, options),
        Err(e) => MeasureReport::sentinel(Some(&report), &options.measures, Some(e.to_string())),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    /// Axis values in file units.
    pub axis_values: Vec<f64>,
    pub report: MeasureReport,
    pub codes: Option<RegionCodes>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub axes: Vec<Axis>,
    /// Columns selected for output.
    pub measures: Vec<Measure>,
    /// Row-major over the axes.
    pub rows: Vec<SweepRow>,
}

fn map_points<T, F>(n: usize, exec: Execution, progress: Option<&(dyn Fn(usize, usize) + Sync)>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    let done = AtomicUsize::new(0);
    let tick = |i: usize| {
        let out = f(i);
        if let Some(cb) = progress {
            cb(done.fetch_add(1, Ordering::Relaxed) + 1, n);
        }
        out
    };
    match exec {
        Execution::Sequential => (0..n).map(tick).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..n).into_par_iter().map(tick).collect()
        }
    }
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    run_sweep_with(spec, Execution::default(), None)
}

/// Evaluates every grid point. The default measure list is always computed
/// so region codes are available; `spec.measures` selects output columns.
pub fn run_sweep_with(
    spec: &SweepSpec,
    exec: Execution,
    progress: Option<&(dyn Fn(usize, usize) + Sync)>,
) -> Result<SweepResult> {
    spec.validate()?;
    let mut measures = default_measures();
    for m in &spec.measures {
        if !measures.contains(m) {
            measures.push(m.clone());
        }
    }
    let options = ReportOptions {
        measures,
        steering_form: spec.steering_form,
    };
    let points = spec.points();
    let rows = map_points(points.len(), exec, progress, |i| {
        let values = &points[i];
        let report = match spec.params_at(values) {
            Ok(p) => evaluate_point(&p, &options),
            Err(e) => MeasureReport::sentinel(None, &options.measures, Some(e.to_string())),
        };
        SweepRow {
            axis_values: values.clone(),
            codes: classify(&report),
            report,
        }
    });
    Ok(SweepResult {
        axes: spec.axes.clone(),
        measures: spec.measures.clone(),
        rows,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityRow {
    pub axis_values: Vec<f64>,
    pub report: Option<StabilityReport>,
    pub error: Option<String>,
}

/// Drift stability over the grid, without solving for covariances.
pub fn run_stability_map(spec: &SweepSpec, exec: Execution) -> Result<Vec<StabilityRow>> {
    spec.validate()?;
    let points = spec.points();
    Ok(map_points(points.len(), exec, None, |i| {
        let values = points[i].clone();
        match spec.params_at(&values).and_then(|p| stability(&build_drift(&p))) {
            Ok(r) => StabilityRow { axis_values: values, report: Some(r), error: None },
            Err(e) => StabilityRow { axis_values: values, report: None, error: Some(e.to_string()) },
        }
    }))
}
