//! The lifting and reporting subcommands.

use std::fs;
use std::path::{Path, PathBuf};

use hyperlift::io::{to_json, write_branches_csv};
use hyperlift::lift::LocalLip;
use hyperlift::norms::DEFAULT_SUP_SAMPLES;
use hyperlift::{
    compute_bounds_with, eigen_lift, lift_c1, lift_grid_2d, lift_sorted, sqrt_lift, Curve64, CurveFile, FunctionFile,
    Grid2d64, LiftError, LiftMode, MatrixFile,
};
use serde::Serialize;

use crate::{Args, CliError, CliResult, Mode};

pub fn read_input(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| LiftError::Io(format!("{}: {e}", path.display())).into())
}

/// Writes `json` to `out`, or to standard output.
pub fn emit_json(out: Option<&Path>, json: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, json).map_err(|e| LiftError::Io(format!("{}: {e}", path.display())).into()),
        None => {
            print!("{json}");
            Ok(())
        }
    }
}

fn out_dir(args: &Args) -> CliResult<PathBuf> {
    let dir = args.out.clone().unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir).map_err(|e| LiftError::Io(format!("{}: {e}", dir.display())))?;
    Ok(dir)
}

pub fn check_grid(args: &Args) -> CliResult<()> {
    if args.grid < 2 {
        return Err(CliError::Usage(format!("--grid must be at least 2, got {}", args.grid)));
    }
    Ok(())
}

fn load_curve(args: &Args) -> CliResult<Curve64> {
    let curve: Curve64 = CurveFile::from_json(&read_input(&args.input)?)?.into_curve()?;
    Ok(match args.tol {
        Some(tol) if tol > 0.0 && tol.is_finite() => curve.with_tol(tol),
        Some(tol) => return Err(CliError::Usage(format!("--tol must be positive, got {tol}"))),
        None => curve,
    })
}

fn write_csv(dir: &Path, lift: &hyperlift::Lift64) -> CliResult<()> {
    let path = dir.join("branches.csv");
    let file = fs::File::create(&path).map_err(|e| LiftError::Io(format!("{}: {e}", path.display())))?;
    write_branches_csv(lift, std::io::BufWriter::new(file))?;
    Ok(())
}

#[derive(Serialize)]
struct LiftSummary<'a> {
    mode: LiftMode,
    n: usize,
    grid_points: usize,
    empirical_lip: f64,
    max_jump: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_derivative_jump: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    collisions: Option<&'a [f64]>,
    local_lips: &'a [LocalLip<f64>],
    warnings: &'a [String],
}

pub fn lift(args: &Args) -> CliResult<()> {
    check_grid(args)?;
    let curve = load_curve(args)?;
    let lift = match args.mode {
        Mode::C0 => lift_sorted(&curve, args.grid)?,
        Mode::C1 => lift_c1(&curve, args.grid)?,
    };
    let dir = out_dir(args)?;
    write_csv(&dir, &lift)?;
    let summary = LiftSummary {
        mode: lift.mode,
        n: lift.n(),
        grid_points: lift.len(),
        empirical_lip: lift.empirical_lip,
        max_jump: lift.max_jump,
        max_derivative_jump: lift.derivative_data.as_ref().map(|d| d.max_jump),
        collisions: lift.derivative_data.as_ref().map(|d| d.collisions.as_slice()),
        local_lips: &lift.local_lips,
        warnings: &lift.warnings,
    };
    emit_json(Some(&dir.join("lift.json")), &to_json(&summary)?)
}

pub fn bounds(args: &Args) -> CliResult<()> {
    check_grid(args)?;
    let (Some(i0), Some(i1)) = (args.i0, args.i1) else {
        return Err(CliError::Usage("bounds needs both --i0 a,b and --i1 a,b".into()));
    };
    let curve = load_curve(args)?;
    let report = compute_bounds_with(&curve, i0, i1, args.grid, DEFAULT_SUP_SAMPLES)?;
    emit_json(args.out.as_deref(), &to_json(&report)?)
}

#[derive(Serialize)]
struct MatrixSummary<'a> {
    m: usize,
    grid_points: usize,
    empirical_lip: f64,
    weyl_bound: f64,
    weyl_ok: bool,
    warnings: &'a [String],
}

pub fn matrix(args: &Args) -> CliResult<()> {
    check_grid(args)?;
    let a = MatrixFile::from_json(&read_input(&args.input)?)?.into_curve::<f64>()?;
    let result = eigen_lift(&a, args.grid)?;
    let dir = out_dir(args)?;
    write_csv(&dir, &result.lift)?;
    let summary = MatrixSummary {
        m: a.dim(),
        grid_points: result.lift.len(),
        empirical_lip: result.lift.empirical_lip,
        weyl_bound: result.weyl_bound,
        weyl_ok: result.weyl_ok,
        warnings: &result.lift.warnings,
    };
    emit_json(Some(&dir.join("matrix.json")), &to_json(&summary)?)
}

pub fn sos(args: &Args) -> CliResult<()> {
    check_grid(args)?;
    let f = FunctionFile::from_json(&read_input(&args.input)?)?.into_function::<f64>();
    let g = sqrt_lift(&f, args.grid)?;
    emit_json(args.out.as_deref(), &to_json(&g)?)
}

pub fn grid2d(args: &Args) -> CliResult<()> {
    let f: Grid2d64 = serde_json::from_str(&read_input(&args.input)?)
        .map_err(|e| LiftError::InvalidInput(format!("grid JSON: {e}")))?;
    let result = lift_grid_2d(&f)?;
    emit_json(args.out.as_deref(), &to_json(&result)?)
}
