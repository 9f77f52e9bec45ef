use std::ffi::OsString;
use std::fs;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use casimir_core::casimir::{energy_renormalized, force_with};
use casimir_core::species::builtin_registry;
use casimir_core::units::natural_force_to_pascal;
use casimir_core::{Ensemble, ForceMethod, ForceStatus, ParticleMass, Tolerance};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::args::{parse_distance, parse_mass, parse_species};
use crate::error::{CliError, Result};
use crate::reproduce::{reproduce, write_reproduction, Figure};
use crate::svg;
use crate::sweep::{run_sweep, threads_from_env, write_csv, Spacing, SweepSpec};

/// Casimir force between parallel plates for massless and massive fields.
#[derive(Debug, Parser)]
#[command(name = "casimir", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Force per unit area at one separation.
    Force(PointArgs),
    /// Renormalized vacuum energy per unit area at one separation.
    Energy(PointArgs),
    /// Sweep the separation and write one CSV row per grid point.
    Sweep(SweepArgs),
    /// Regenerate one of the reference figures as CSV + SVG.
    Reproduce(ReproduceArgs),
    /// List the built-in species.
    Species(SpeciesArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Integral,
    Bessel,
    Direct,
}

impl From<MethodArg> for ForceMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Integral => ForceMethod::ReducedIntegral,
            MethodArg::Bessel => ForceMethod::BesselSeries,
            MethodArg::Direct => ForceMethod::DirectLiteral,
        }
    }
}

#[derive(Debug, Args)]
struct PointArgs {
    /// Plate separation with unit suffix: `100fm` or `0.5nat` (MeV^-1).
    #[arg(long = "a", allow_hyphen_values = true)]
    a: String,
    /// Field mass: `135`, `135MeV` or `3GeV`.
    #[arg(long, conflicts_with = "species", required_unless_present = "species")]
    mass: Option<String>,
    /// Built-in species name or `name=mass`.
    #[arg(long)]
    species: Option<String>,
    #[arg(long, value_enum, default_value = "integral")]
    method: MethodArg,
    /// Relative quadrature tolerance.
    #[arg(long, default_value_t = Tolerance::DEFAULT_REL)]
    tol: f64,
    /// Use measured masses instead of the rounded defaults.
    #[arg(long)]
    precise: bool,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, allow_hyphen_values = true)]
    a_min: String,
    #[arg(long, allow_hyphen_values = true)]
    a_max: String,
    #[arg(long, default_value_t = 50)]
    points: usize,
    /// Logarithmic spacing (default).
    #[arg(long, conflicts_with = "linear")]
    log: bool,
    #[arg(long)]
    linear: bool,
    /// Species to include, repeatable; defaults to the built-in registry.
    #[arg(long)]
    species: Vec<String>,
    #[arg(long, value_enum, default_value = "integral")]
    method: MethodArg,
    #[arg(long, default_value_t = Tolerance::DEFAULT_REL)]
    tol: f64,
    #[arg(long)]
    precise: bool,
    /// CSV output path.
    #[arg(long)]
    out: PathBuf,
    /// Optional SVG chart path.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ReproduceArgs {
    /// fig1, fig2 or fig3.
    figure: String,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long, default_value_t = Tolerance::DEFAULT_REL)]
    tol: f64,
    #[arg(long)]
    precise: bool,
}

#[derive(Debug, Args)]
struct SpeciesArgs {
    #[arg(long)]
    precise: bool,
}

fn tolerance(rel: f64) -> Result<Tolerance> {
    Tolerance::relative(rel).map_err(|e| CliError::Usage(e.to_string()))
}

fn point_mass(args: &PointArgs) -> Result<(String, ParticleMass)> {
    match (&args.mass, &args.species) {
        (Some(m), _) => Ok(("custom".to_owned(), parse_mass(m)?)),
        (None, Some(s)) => {
            let s = parse_species(s, args.precise)?;
            Ok((s.name().to_owned(), s.mass()))
        }
        (None, None) => Err(CliError::Usage(
            "either --mass or --species is required".into(),
        )),
    }
}

fn cmd_force(args: PointArgs) -> Result<()> {
    let a = parse_distance(&args.a)?;
    let (name, m) = point_mass(&args)?;
    let tol = tolerance(args.tol)?;
    let r = force_with(args.method.into(), a, m, tol)?;
    println!("a_fm = {:.16e}", a.to_fm());
    println!("a_natural_mev_inv = {:.16e}", a.value());
    println!("species = {name}");
    println!("mass_mev = {}", m.value());
    println!("method = {}", r.method);
    println!("force_magnitude_mev4 = {:.16e}", r.magnitude());
    println!(
        "force_magnitude_pa = {:.16e}",
        natural_force_to_pascal(r.force).abs()
    );
    println!("sign = attractive (signed force per area is negative)");
    println!("error_estimate_mev4 = {:.3e}", r.error_estimate);
    let status = match r.status {
        ForceStatus::Converged => "converged",
        ForceStatus::Underflow => "underflow (2am > 700, reported as exact zero)",
    };
    println!("status = {status}");
    Ok(())
}

fn cmd_energy(args: PointArgs) -> Result<()> {
    let a = parse_distance(&args.a)?;
    let (name, m) = point_mass(&args)?;
    let e = energy_renormalized(a, m, tolerance(args.tol)?)?;
    println!("a_fm = {:.16e}", a.to_fm());
    println!("species = {name}");
    println!("mass_mev = {}", m.value());
    println!("energy_per_area_mev3 = {:.16e}", e.value());
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> Result<()> {
    let ensemble = if args.species.is_empty() {
        builtin_registry(args.precise)
    } else {
        let list = args
            .species
            .iter()
            .map(|s| parse_species(s, args.precise))
            .collect::<Result<Vec<_>>>()?;
        Ensemble::new(list)?
    };
    let spec = SweepSpec {
        a_min: parse_distance(&args.a_min)?,
        a_max: parse_distance(&args.a_max)?,
        points: args.points,
        spacing: if args.linear {
            Spacing::Linear
        } else {
            Spacing::Log
        },
        ensemble,
        tolerance: tolerance(args.tol)?,
        method: args.method.into(),
    };
    let threads = threads_from_env()?;
    let points = run_sweep(&spec, threads)?;

    let file = fs::File::create(&args.out).map_err(|e| CliError::io(&args.out, e))?;
    write_csv(BufWriter::new(file), &spec.ensemble, &points, &[])
        .map_err(|e| CliError::io(&args.out, e))?;
    eprintln!("wrote {} rows to {}", points.len(), args.out.display());

    if let Some(path) = args.svg {
        let x_scale = match spec.spacing {
            Spacing::Log => svg::Scale::Log,
            Spacing::Linear => svg::Scale::Linear,
        };
        let mut series: Vec<svg::Series> = spec
            .ensemble
            .species()
            .iter()
            .enumerate()
            .map(|(i, s)| svg::Series {
                label: s.name().to_owned(),
                points: points.iter().map(|p| (p.a_fm, p.forces[i])).collect(),
            })
            .collect();
        if spec.ensemble.len() > 1 {
            series.push(svg::Series {
                label: "total".into(),
                points: points.iter().map(|p| (p.a_fm, p.total)).collect(),
            });
        }
        let panel = svg::Panel {
            title: "Casimir force per area".into(),
            x_label: "plate separation a [fm]".into(),
            y_label: "|F|/S [MeV^4]".into(),
            x_scale,
            y_scale: svg::Scale::Log,
            series,
        };
        fs::write(&path, svg::render(&[panel])).map_err(|e| CliError::io(&path, e))?;
        eprintln!("wrote chart to {}", path.display());
    }
    Ok(())
}

fn cmd_reproduce(args: ReproduceArgs) -> Result<()> {
    let figure: Figure = args.figure.parse()?;
    let threads = threads_from_env()?;
    let r = reproduce(figure, args.precise, tolerance(args.tol)?, threads)?;
    let (csv, svg) = write_reproduction(&r, &args.out)?;
    for c in &r.comments {
        println!("{c}");
    }
    println!("wrote {} and {}", csv.display(), svg.display());
    Ok(())
}

fn cmd_species(args: SpeciesArgs) -> Result<()> {
    println!(
        "{:<12} {:>12} {:>18}",
        "name", "mass_MeV", "compton_length_fm"
    );
    for s in builtin_registry(args.precise).species() {
        let m = s.mass();
        let compton = if m.is_massless() {
            "inf".to_owned()
        } else {
            format!("{:.6}", m.compton_length_fm())
        };
        println!("{:<12} {:>12} {:>18}", s.name(), m.value(), compton);
    }
    Ok(())
}

/// Runs the command line given by `args` (program name first).
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let outcome = match cli.command {
        Command::Force(a) => cmd_force(a),
        Command::Energy(a) => cmd_energy(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Reproduce(a) => cmd_reproduce(a),
        Command::Species(a) => cmd_species(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
