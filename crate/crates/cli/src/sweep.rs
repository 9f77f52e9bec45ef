//! Distance sweeps over an ensemble and their CSV serialization.

use std::io::Write;

use casimir_core::casimir::force_with;
use casimir_core::species::ratios_from_forces;
use casimir_core::units::HBAR_C_MEV_FM;
use casimir_core::{Ensemble, ForceMethod, PlateSeparation, Tolerance};
use rayon::prelude::*;

use crate::error::{CliError, Result};

pub const THREADS_ENV: &str = "CASIMIR_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Log,
    Linear,
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub a_min: PlateSeparation,
    pub a_max: PlateSeparation,
    pub points: usize,
    pub spacing: Spacing,
    pub ensemble: Ensemble,
    pub tolerance: Tolerance,
    pub method: ForceMethod,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.points < 2 {
            return Err(CliError::Usage(format!(
                "a sweep needs at least 2 points, got {}",
                self.points
            )));
        }
        if self.a_min >= self.a_max {
            return Err(CliError::Usage(
                "sweep range must satisfy a_min < a_max".to_owned(),
            ));
        }
        Ok(())
    }

    /// Grid of separations, endpoints included, strictly increasing.
    pub fn grid(&self) -> Vec<PlateSeparation> {
        let lo = self.a_min.value();
        let hi = self.a_max.value();
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                let t = i as f64 / last;
                let v = if i == self.points - 1 {
                    hi
                } else {
                    match self.spacing {
                        Spacing::Log => lo * (hi / lo).powf(t),
                        Spacing::Linear => lo + (hi - lo) * t,
                    }
                };
                PlateSeparation::new(v).expect("grid point inside a valid range")
            })
            .collect()
    }
}

/// One evaluated row: force magnitudes in MeV⁴ and shares of the total.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub a_fm: f64,
    pub forces: Vec<f64>,
    pub total: f64,
    pub ratios: Vec<f64>,
}

pub fn evaluate_point(
    a: PlateSeparation,
    ensemble: &Ensemble,
    method: ForceMethod,
    tol: Tolerance,
) -> Result<CurvePoint> {
    let forces = ensemble
        .species()
        .iter()
        .map(|s| force_with(method, a, s.mass(), tol).map(|r| r.force))
        .collect::<casimir_core::Result<Vec<_>>>()?;
    let ratios = ratios_from_forces(&forces)?;
    let magnitudes: Vec<f64> = forces.iter().map(|f| f.magnitude()).collect();
    let total = magnitudes.iter().sum();
    Ok(CurvePoint {
        a_fm: a.value() * HBAR_C_MEV_FM,
        forces: magnitudes,
        total,
        ratios,
    })
}

/// Thread count from `CASIMIR_THREADS`, or `None` for rayon's default.
pub fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!(
                "{THREADS_ENV} must be a positive integer, got {v:?}"
            ))),
        },
    }
}

/// Evaluates every grid point, in parallel, returning rows in grid order.
pub fn run_sweep(spec: &SweepSpec, threads: Option<usize>) -> Result<Vec<CurvePoint>> {
    spec.validate()?;
    let grid = spec.grid();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker threads: {e}")))?;
    pool.install(|| {
        grid.par_iter()
            .map(|&a| evaluate_point(a, &spec.ensemble, spec.method, spec.tolerance))
            .collect()
    })
}

fn fmt_value(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn csv_header(ensemble: &Ensemble) -> String {
    let mut cols = vec!["a_fm".to_owned()];
    cols.extend(
        ensemble
            .species()
            .iter()
            .map(|s| format!("force_{}_mev4", s.name())),
    );
    cols.push("force_total_mev4".to_owned());
    cols.extend(
        ensemble
            .species()
            .iter()
            .map(|s| format!("ratio_{}", s.name())),
    );
    cols.join(",")
}

/// Writes `# ` comment lines, the header and one row per point. Numbers use
/// 17 significant digits and lines end in `\n`.
pub fn write_csv<W: Write>(
    mut out: W,
    ensemble: &Ensemble,
    points: &[CurvePoint],
    comments: &[String],
) -> std::io::Result<()> {
    for c in comments {
        writeln!(out, "# {c}")?;
    }
    writeln!(out, "{}", csv_header(ensemble))?;
    for p in points {
        let mut row = Vec::with_capacity(2 + 2 * p.forces.len());
        row.push(fmt_value(p.a_fm));
        row.extend(p.forces.iter().map(|&v| fmt_value(v)));
        row.push(fmt_value(p.total));
        row.extend(p.ratios.iter().map(|&v| fmt_value(v)));
        writeln!(out, "{}", row.join(","))?;
    }
    out.flush()
}

pub fn csv_string(ensemble: &Ensemble, points: &[CurvePoint], comments: &[String]) -> String {
    let mut buf = Vec::new();
    write_csv(&mut buf, ensemble, points, comments).expect("writing to memory");
    String::from_utf8(buf).expect("CSV is ASCII")
}
