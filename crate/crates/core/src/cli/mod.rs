//! Command-line front end.
//!
//! Subcommands: `convert`, `fit`, `generate`, `hamiltonian`, `sensitivity`
//! and `presets list`. Every subcommand accepts `--format text|json|csv`.
//! Exit codes: 0 success, 2 input/validation, 3 symmetry/consistency,
//! 4 numerical failure.

mod commands;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::sensitivity::BetaConvention;

pub use commands::run;

#[derive(Debug, Parser)]
#[command(name = "spinstress", version, about = "Spin-strain / spin-stress coupling toolkit for C3v spin-1 defects")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    /// Print the coefficient map, beta convention and preset self-checks to stderr.
    #[arg(short, long, global = true)]
    pub verbose: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convert strain couplings to stress couplings (or back) for a material.
    Convert(ConvertArgs),
    /// Extract strain couplings from a (strain, D matrix) dataset.
    Fit(FitArgs),
    /// Write a synthetic dataset generated from a preset's strain couplings.
    Generate(GenerateArgs),
    /// Evaluate the spin Hamiltonian for a given strain or stress.
    Hamiltonian(HamiltonianArgs),
    /// Tabulate shot-noise-limited stress sensitivities.
    Sensitivity(SensitivityArgs),
    /// Inspect the preset library.
    Presets {
        #[command(subcommand)]
        command: PresetsCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum PresetsCommand {
    /// List material presets and scenario sets.
    List,
}

#[derive(Debug, Clone, Args)]
pub struct MaterialArgs {
    /// Name of a material preset.
    #[arg(long, conflicts_with = "config")]
    pub preset: Option<String>,

    /// Material TOML file.
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Override the defect z axis (crystal coordinates, e.g. 1,1,1).
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub frame_z: Option<[f64; 3]>,

    /// Override the defect x axis (crystal coordinates, e.g. -1,-1,2).
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub frame_x: Option<[f64; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    StrainToStress,
    StressToStrain,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    #[command(flatten)]
    pub material: MaterialArgs,

    #[arg(long, value_enum, default_value_t = Direction::StrainToStress)]
    pub direction: Direction,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Dataset JSON file.
    pub dataset: PathBuf,

    /// Compare the fit with the strain couplings of this preset.
    #[arg(long)]
    pub reference_preset: Option<String>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub material: MaterialArgs,

    /// Gaussian noise RMS per channel, MHz.
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Strain magnitudes; each is applied with both signs.
    #[arg(long, value_delimiter = ',', default_values_t = [0.001, 0.002])]
    pub magnitudes: Vec<f64>,

    /// Strain directions (exx, eyy, ezz, eyz, ezx, exy).
    #[arg(long, value_delimiter = ',', default_values_t = ["exx".to_string(), "eyy".into(), "ezz".into(), "eyz".into(), "ezx".into(), "exy".into()])]
    pub directions: Vec<String>,

    /// Repeat the battery this many times (with fresh noise).
    #[arg(long, default_value_t = 1)]
    pub repeat: usize,

    /// Write the dataset here instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HamiltonianArgs {
    #[command(flatten)]
    pub material: MaterialArgs,

    /// Defect-frame strain components, e.g. ezz=1e-3,exy=5e-4.
    #[arg(long, value_delimiter = ',', conflicts_with = "stress", allow_hyphen_values = true)]
    pub strain: Vec<String>,

    /// Defect-frame stress components in GPa, e.g. szz=1.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub stress: Vec<String>,

    /// Unperturbed axial splitting D0 in MHz; enables transition shifts.
    #[arg(long)]
    pub base_splitting: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SensitivityArgs {
    /// Scenario TOML file.
    #[arg(long, conflicts_with = "set")]
    pub scenarios: Option<PathBuf>,

    /// Named scenario set from the preset library.
    #[arg(long)]
    pub set: Option<String>,

    #[arg(long, value_parser = parse_convention, default_value = "photons-per-readout")]
    pub beta_convention: BetaConvention,
}

fn parse_vec3(s: &str) -> std::result::Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated numbers, got '{s}'"));
    }
    let mut out = [0.0; 3];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.parse().map_err(|_| format!("'{p}' is not a number"))?;
    }
    Ok(out)
}

fn parse_convention(s: &str) -> std::result::Result<BetaConvention, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Parses `key=value` components into Cartesian `(xx, yy, zz, yz, zx, xy)`
/// with the given key prefix (`e` for strain, `s` for stress).
pub(crate) fn parse_components(items: &[String], prefix: char) -> Result<[f64; 6]> {
    const SUFFIXES: [&str; 6] = ["xx", "yy", "zz", "yz", "zx", "xy"];
    let mut out = [0.0; 6];
    for item in items.iter().filter(|s| !s.trim().is_empty()) {
        let (key, value) = item.split_once('=').ok_or_else(|| {
            Error::Input(format!("expected key=value, got '{item}'"))
        })?;
        let key = key.trim();
        let idx = key
            .strip_prefix(prefix)
            .and_then(|suffix| {
                SUFFIXES.iter().position(|s| {
                    *s == suffix || s.chars().rev().collect::<String>() == suffix
                })
            })
            .ok_or_else(|| {
                Error::Input(format!(
                    "unknown component '{key}' (expected {prefix}xx, {prefix}yy, {prefix}zz, {prefix}yz, {prefix}zx, {prefix}xy)"
                ))
            })?;
        out[idx] = value
            .trim()
            .parse()
            .map_err(|_| Error::Input(format!("'{value}' is not a number")))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_accept_either_index_order() {
        let c = parse_components(&["ezz=1e-3".into(), "exz=2".into(), "eyx=3".into()], 'e').unwrap();
        assert_eq!(c, [0.0, 0.0, 1e-3, 0.0, 2.0, 3.0]);
        assert!(parse_components(&["sxx=1".into()], 'e').is_err());
        assert!(parse_components(&["exx".into()], 'e').is_err());
        assert!(parse_components(&["exx=abc".into()], 'e').is_err());
    }

    #[test]
    fn vec3_parsing() {
        assert_eq!(parse_vec3("-1,-1, 2").unwrap(), [-1.0, -1.0, 2.0]);
        assert!(parse_vec3("1,2").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
