//! Canned sweeps for the three reference figures.

use std::fs;
use std::path::{Path, PathBuf};

use casimir_core::species::{builtin_registry, crossover_distance};
use casimir_core::units::HBAR_C_MEV_FM;
use casimir_core::{Ensemble, ForceMethod, ParticleMass, PlateSeparation, Species, Tolerance};

use crate::error::{CliError, Result};
use crate::svg::{self, Panel, Scale, Series};
use crate::sweep::{csv_string, run_sweep, CurvePoint, Spacing, SweepSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// Force vs distance for masses 0, 1, 2, 3 GeV.
    Fig1,
    /// Photon + positronium.
    Fig2,
    /// Photon + positronium + pi0.
    Fig3,
}

impl Figure {
    pub const ALL: [Figure; 3] = [Figure::Fig1, Figure::Fig2, Figure::Fig3];

    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
        }
    }

    /// Distance range in fm and number of log-spaced points.
    fn range_fm(self) -> (f64, f64, usize) {
        match self {
            Figure::Fig1 => (1e-2, 1.0, 61),
            Figure::Fig2 => (1.0, 1e5, 101),
            Figure::Fig3 => (0.1, 1e3, 81),
        }
    }

    pub fn ensemble(self, precise: bool) -> Ensemble {
        match self {
            Figure::Fig1 => {
                let species = [0.0, 1.0, 2.0, 3.0]
                    .iter()
                    .map(|gev| {
                        Species::new(
                            format!("m{gev}GeV"),
                            ParticleMass::new(gev * 1e3).expect("fixed mass"),
                        )
                        .expect("fixed name")
                    })
                    .collect();
                Ensemble::new(species).expect("distinct names")
            }
            Figure::Fig2 => builtin_registry(precise)
                .select(&["photon", "positronium"])
                .expect("registry species"),
            Figure::Fig3 => builtin_registry(precise),
        }
    }

    pub fn sweep_spec(self, precise: bool, tolerance: Tolerance) -> SweepSpec {
        let (lo, hi, points) = self.range_fm();
        SweepSpec {
            a_min: PlateSeparation::from_fm(lo).expect("fixed range"),
            a_max: PlateSeparation::from_fm(hi).expect("fixed range"),
            points,
            spacing: Spacing::Log,
            ensemble: self.ensemble(precise),
            tolerance,
            method: ForceMethod::ReducedIntegral,
        }
    }

    /// Species whose share the figure tracks.
    fn focus(self) -> Option<&'static str> {
        match self {
            Figure::Fig1 => None,
            Figure::Fig2 => Some("positronium"),
            Figure::Fig3 => Some("pi0"),
        }
    }
}

impl std::str::FromStr for Figure {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Figure::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                CliError::Usage(format!("unknown figure {s:?}; expected fig1, fig2 or fig3"))
            })
    }
}

#[derive(Debug, Clone)]
pub struct Reproduction {
    pub figure: Figure,
    pub ensemble: Ensemble,
    pub points: Vec<CurvePoint>,
    pub comments: Vec<String>,
}

impl Reproduction {
    pub fn csv(&self) -> String {
        csv_string(&self.ensemble, &self.points, &self.comments)
    }

    pub fn svg(&self) -> String {
        svg::render(&panels(self))
    }

    fn column(&self, species: &str) -> usize {
        self.ensemble
            .species()
            .iter()
            .position(|s| s.name() == species)
            .expect("species present")
    }
}

fn panels(r: &Reproduction) -> Vec<Panel> {
    let x_label = "plate separation a [fm]".to_owned();
    let y_label = "|F|/S [MeV^4]".to_owned();
    match r.figure.focus() {
        None => vec![Panel {
            title: "Casimir force per area vs separation".into(),
            x_label,
            y_label,
            x_scale: Scale::Log,
            y_scale: Scale::Log,
            series: r
                .ensemble
                .species()
                .iter()
                .enumerate()
                .map(|(i, s)| Series {
                    label: format!("m = {} GeV", s.mass().value() / 1e3),
                    points: r.points.iter().map(|p| (p.a_fm, p.forces[i])).collect(),
                })
                .collect(),
        }],
        Some(name) => {
            let idx = r.column(name);
            let others: Vec<&str> = r.ensemble.species().iter().map(|s| s.name()).collect();
            vec![
                Panel {
                    title: format!("{name} contribution and ensemble total"),
                    x_label: x_label.clone(),
                    y_label,
                    x_scale: Scale::Log,
                    y_scale: Scale::Log,
                    series: vec![
                        Series {
                            label: name.to_owned(),
                            points: r.points.iter().map(|p| (p.a_fm, p.forces[idx])).collect(),
                        },
                        Series {
                            label: others.join("+"),
                            points: r.points.iter().map(|p| (p.a_fm, p.total)).collect(),
                        },
                    ],
                },
                Panel {
                    title: format!("share of {name} in the total force"),
                    x_label,
                    y_label: "ratio".into(),
                    x_scale: Scale::Log,
                    y_scale: Scale::Linear,
                    series: vec![Series {
                        label: format!("{name} / total"),
                        points: r.points.iter().map(|p| (p.a_fm, p.ratios[idx])).collect(),
                    }],
                },
            ]
        }
    }
}

/// Evaluates a figure's sweep and assembles its metadata.
pub fn reproduce(
    figure: Figure,
    precise: bool,
    tolerance: Tolerance,
    threads: Option<usize>,
) -> Result<Reproduction> {
    let spec = figure.sweep_spec(precise, tolerance);
    let points = run_sweep(&spec, threads)?;
    let masses: Vec<String> = spec
        .ensemble
        .species()
        .iter()
        .map(|s| format!("{}={} MeV", s.name(), s.mass().value()))
        .collect();
    let mut comments = vec![format!(
        "{}: species {}; hbar*c = {} MeV fm",
        figure.name(),
        masses.join(", "),
        HBAR_C_MEV_FM
    )];
    match figure.focus() {
        None => comments.push(
            "mass set 0, 1, 2, 3 GeV; the alternative set 1, 2, 3, 4 GeV can be run with `sweep`"
                .to_owned(),
        ),
        Some(name) => {
            let c = crossover_distance(name, &spec.ensemble, tolerance)?;
            comments.push(format!(
                "crossover: ratio_{name} = {} (half its small-a limit {}) at a* = {:.6e} fm, 2am = {:.6}",
                0.5 * c.limit,
                c.limit,
                c.separation.to_fm(),
                c.reduced_gap
            ));
        }
    }
    Ok(Reproduction {
        figure,
        ensemble: spec.ensemble,
        points,
        comments,
    })
}

/// Writes `<fig>.csv` and `<fig>.svg` into `dir`, returning both paths.
pub fn write_reproduction(r: &Reproduction, dir: &Path) -> Result<(PathBuf, PathBuf)> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let csv_path = dir.join(format!("{}.csv", r.figure.name()));
    let svg_path = dir.join(format!("{}.svg", r.figure.name()));
    fs::write(&csv_path, r.csv()).map_err(|e| CliError::io(&csv_path, e))?;
    fs::write(&svg_path, r.svg()).map_err(|e| CliError::io(&svg_path, e))?;
    Ok((csv_path, svg_path))
}
