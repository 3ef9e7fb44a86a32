//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage, configuration or I/O error, 2 unstable
//! operating point (`point` only).

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::measures::{default_measures, Measure, ReportOptions, SteeringForm};
use crate::model::config::{load_point, ParamMode};
use crate::sweep::{
    classify, connected_regions, evaluate_point, grid_groups, preset, reproduction, run_stability_map,
    run_sweep_with, write_panel_csv, write_stability_csv, write_sweep, Execution, SweepResult, SweepRow,
    SweepSpec,
};
use crate::EPS_POS;

#[derive(Debug, Parser)]
#[command(name = "omm-qcorr", version, about = "Steady-state entanglement and steering of a five-mode optomagnomechanical system")]
pub struct Cli {
    /// Worker threads for grid evaluation (default: all cores).
    #[arg(long, global = true, env = "OMM_QCORR_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate every measure at one operating point.
    Point {
        /// Parameter file (TOML, or JSON by extension).
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Override the file's parameterization mode.
        #[arg(long, value_enum)]
        mode: Option<ParamMode>,
        #[arg(long, value_enum)]
        steering_form: Option<SteeringForm>,
        /// Write here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a 1D/2D sweep and write a CSV table.
    #[command(group(ArgGroup::new("source").required(true).args(["config", "preset"])))]
    Sweep {
        /// Sweep file (TOML, or JSON by extension).
        #[arg(long)]
        config: Option<PathBuf>,
        /// Built-in figure preset id instead of a sweep file.
        #[arg(long)]
        preset: Option<String>,
        /// Output CSV (default: the file's `output`).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Points per axis, overriding the sweep's counts.
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, value_enum)]
        steering_form: Option<SteeringForm>,
    },
    /// Write one CSV per panel of a figure and summarize its features.
    Reproduce {
        /// Figure id: fig2 … fig8.
        figure: String,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, value_enum)]
        steering_form: Option<SteeringForm>,
    },
    /// Map the largest real part of the drift spectrum over a sweep grid.
    #[command(group(ArgGroup::new("source").required(true).args(["config", "preset"])))]
    Stability {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        grid: Option<usize>,
    },
}

/// Parses the process arguments and runs the command.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    ExitCode::from(run(cli))
}

/// Runs a parsed command and returns its exit code.
pub fn run(cli: Cli) -> u8 {
    match with_threads(cli.threads, || dispatch(cli.command)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

#[cfg(feature = "parallel")]
fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n == 0 {
            return Err(Error::invalid("threads", "must be ≥ 1"));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::invalid("threads", e.to_string()))?;
    pool.install(f)
}

#[cfg(not(feature = "parallel"))]
fn with_threads<T>(threads: Option<usize>, f: impl FnOnce() -> Result<T>) -> Result<T> {
    if threads == Some(0) {
        return Err(Error::invalid("threads", "must be ≥ 1"));
    }
    f()
}

fn dispatch(command: Command) -> Result<u8> {
    match command {
        Command::Point { config, format, mode, steering_form, out } => {
            cmd_point(&config, format, mode, steering_form.unwrap_or_default(), out.as_deref())
        }
        Command::Sweep { config, preset, out, grid, steering_form } => {
            let spec = load_spec(config.as_deref(), preset.as_deref(), grid, steering_form)?;
            let out = out
                .or_else(|| spec.output.clone())
                .ok_or_else(|| Error::InvalidSweep("no output path: pass --out or set `output`".into()))?;
            cmd_sweep(&spec, &out).map(|_| 0)
        }
        Command::Reproduce { figure, out, grid, steering_form } => {
            cmd_reproduce(&figure, &out, grid, steering_form).map(|_| 0)
        }
        Command::Stability { config, preset, out, grid } => {
            let spec = load_spec(config.as_deref(), preset.as_deref(), grid, None)?;
            let out = out
                .or_else(|| spec.output.clone())
                .ok_or_else(|| Error::InvalidSweep("no output path: pass --out or set `output`".into()))?;
            let rows = run_stability_map(&spec, Execution::default())?;
            write_stability_csv(&out, &spec.axes, &rows)?;
            let unstable = rows.iter().filter(|r| !r.report.as_ref().is_some_and(|s| s.stable)).count();
            eprintln!("{} points, {unstable} unstable → {}", rows.len(), out.display());
            Ok(0)
        }
    }
}

fn load_spec(
    config: Option<&Path>,
    preset_id: Option<&str>,
    grid: Option<usize>,
    steering_form: Option<SteeringForm>,
) -> Result<SweepSpec> {
    let mut spec = match (config, preset_id) {
        (Some(path), _) => SweepSpec::from_file(path)?,
        (None, Some(id)) => preset(id)?,
        (None, None) => unreachable!("clap requires one source"),
    };
    if let Some(n) = grid {
        spec = spec.with_grid(n);
    }
    if let Some(form) = steering_form {
        spec.steering_form = form;
    }
    spec.validate()?;
    Ok(spec)
}

fn cmd_point(
    config: &Path,
    format: Format,
    mode: Option<ParamMode>,
    steering_form: SteeringForm,
    out: Option<&Path>,
) -> Result<u8> {
    let params = load_point(config, mode)?.effective()?;
    let options = ReportOptions {
        measures: default_measures(),
        steering_form,
    };
    let report = evaluate_point(&params, &options);
    let mut buf = Vec::new();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut buf, &report).expect("report serializes");
            buf.push(b'\n');
        }
        Format::Csv => {
            let result = SweepResult {
                axes: Vec::new(),
                measures: options.measures.clone(),
                rows: vec![SweepRow {
                    axis_values: Vec::new(),
                    codes: classify(&report),
                    report: report.clone(),
                }],
            };
            write_sweep(&mut buf, &result, &options.measures)?;
        }
    }
    match out {
        Some(path) => std::fs::write(path, &buf).map_err(|source| Error::Io { path: path.into(), source })?,
        None => std::io::stdout().write_all(&buf).map_err(|source| Error::Io { path: "<stdout>".into(), source })?,
    }
    if let Some(e) = &report.error {
        eprintln!("warning: {e}");
    }
    Ok(if report.stable { 0 } else { 2 })
}

fn progress(label: String) -> impl Fn(usize, usize) + Sync {
    move |done, total| {
        let step = (total / 20).max(1);
        if done % step == 0 || done == total {
            eprint!("\r{label}: {done}/{total}");
            if done == total {
                eprintln!();
            }
        }
    }
}

fn cmd_sweep(spec: &SweepSpec, out: &Path) -> Result<SweepResult> {
    let cb = progress(out.display().to_string());
    let result = run_sweep_with(spec, Execution::default(), Some(&cb))?;
    write_panel_csv(out, &result, &spec.measures)?;
    Ok(result)
}

fn cmd_reproduce(
    figure: &str,
    out: &Path,
    grid: Option<usize>,
    steering_form: Option<SteeringForm>,
) -> Result<()> {
    let mut panels = reproduction(figure)?;
    for p in &mut panels {
        if let Some(n) = grid {
            p.spec = p.spec.clone().with_grid(n);
        }
        if let Some(form) = steering_form {
            p.spec.steering_form = form;
        }
    }
    for group in grid_groups(&panels) {
        let mut spec = group[0].spec.clone();
        for p in &group[1..] {
            for m in &p.spec.measures {
                if !spec.measures.contains(m) {
                    spec.measures.push(m.clone());
                }
            }
        }
        let names: Vec<_> = group.iter().map(|p| p.name.as_str()).collect();
        let cb = progress(names.join(","));
        let result = run_sweep_with(&spec, Execution::default(), Some(&cb))?;
        for p in &group {
            write_panel_csv(&out.join(p.file_name()), &result, &p.spec.measures)?;
        }
        println!("{}", names.join(", "));
        for line in summarize(&result, &spec.measures) {
            println!("  {line}");
        }
    }
    Ok(())
}

fn describe_point(result: &SweepResult, row: &SweepRow) -> String {
    result
        .axes
        .iter()
        .zip(&row.axis_values)
        .map(|(a, v)| format!("{}={v:.4e}", a.field.key()))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Human-readable features of a sweep: maxima per measure, instability and
/// region counts.
pub fn summarize(result: &SweepResult, measures: &[Measure]) -> Vec<String> {
    let mut lines = Vec::new();
    let unstable = result.rows.iter().filter(|r| !r.report.stable).count();
    lines.push(format!("{} points, {unstable} unstable", result.rows.len()));
    for m in measures {
        let best = result
            .rows
            .iter()
            .filter_map(|r| r.report.get(m).map(|v| (v, r)))
            .max_by(|a, b| a.0.total_cmp(&b.0));
        let present = result.rows.iter().filter(|r| r.report.get(m).is_some_and(|v| v > EPS_POS)).count();
        match best {
            Some((v, row)) if v > EPS_POS => {
                let mut line = format!(
                    "{}: max {v:.4e} at {}, present at {present} points",
                    m.name(),
                    describe_point(result, row)
                );
                if result.axes.len() == 2 {
                    let mask: Vec<bool> =
                        result.rows.iter().map(|r| r.report.get(m).is_some_and(|v| v > EPS_POS)).collect();
                    let n = connected_regions(&mask, result.axes[0].count, result.axes[1].count).len();
                    line.push_str(&format!(" in {n} connected regions"));
                }
                lines.push(line);
            }
            _ => lines.push(format!("{}: absent", m.name())),
        }
    }
    let mut combos: BTreeMap<String, usize> = BTreeMap::new();
    for codes in result.rows.iter().filter_map(|r| r.codes.as_ref()) {
        for (kind, code) in [("ent", &codes.entanglement), ("tri", &codes.tripartite), ("steer", &codes.steering)] {
            *combos.entry(format!("{kind} {}", code.label)).or_default() += 1;
        }
    }
    for (label, n) in combos {
        lines.push(format!("region {label}: {n}"));
    }
    lines
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn sweep_needs_a_source() {
        assert!(Cli::try_parse_from(["omm-qcorr", "sweep", "--out", "x.csv"]).is_err());
        let cli = Cli::try_parse_from(["omm-qcorr", "--threads", "2", "sweep", "--preset", "fig4"]).unwrap();
        assert_eq!(cli.threads, Some(2));
    }

    #[test]
    fn flags_parse() {
        let cli = Cli::try_parse_from([
            "omm-qcorr", "point", "--config", "p.toml", "--format", "csv", "--mode", "microscopic",
            "--steering-form", "symplectic",
        ])
        .unwrap();
        match cli.command {
            Command::Point { format, mode, steering_form, .. } => {
                assert_eq!(format, Format::Csv);
                assert_eq!(mode, Some(ParamMode::Microscopic));
                assert_eq!(steering_form, Some(SteeringForm::Symplectic));
            }
            _ => panic!("expected point"),
        }
    }

    #[test]
    fn summary_mentions_maxima() {
        let spec = preset("fig2d").unwrap().with_grid(11);
        let result = run_sweep_with(&spec, Execution::Sequential, None).unwrap();
        let lines = summarize(&result, &spec.measures);
        assert!(lines[0].starts_with("11 points"));
        assert!(lines.iter().any(|l| l.starts_with("E_am: max")), "{lines:?}");
    }
}
