use std::fmt::Write as _;

use serde::Serialize;

use super::{
    parse_components, Cli, Command, ConvertArgs, Direction, FitArgs, GenerateArgs,
    HamiltonianArgs, MaterialArgs, OutputFormat, PresetsCommand, SensitivityArgs,
};
use crate::conversion::{strain_to_stress_couplings, stress_to_strain_couplings};
use crate::coupling::{CouplingKind, CouplingParam, CouplingSet};
use crate::elasticity::{DefectFrame, StiffnessMatrix};
use crate::error::{Error, Result};
use crate::presets::{load_scenarios, MaterialPreset, PresetLibrary, DEFAULT_SCENARIO_SET};
use crate::regression::{battery, generate_synthetic, Dataset};
use crate::sensitivity::scenario_table;
use crate::spin::{
    build_hamiltonian, strain_hamiltonian_coefficients, stress_hamiltonian_coefficients,
    transition_shifts, ChannelCoefficients,
};
use crate::tensor::{StrainTensor, StressTensor};

/// What a command produced: the report for stdout and diagnostics for stderr.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
}

pub fn run(cli: &Cli) -> Result<Output> {
    let lib = PresetLibrary::load()?;
    let mut out = Output::default();
    match &cli.command {
        Command::Convert(args) => convert(cli, &lib, args, &mut out)?,
        Command::Fit(args) => fit(cli, &lib, args, &mut out)?,
        Command::Generate(args) => generate(cli, &lib, args, &mut out)?,
        Command::Hamiltonian(args) => hamiltonian(cli, &lib, args, &mut out)?,
        Command::Sensitivity(args) => sensitivity(cli, &lib, args, &mut out)?,
        Command::Presets {
            command: PresetsCommand::List,
        } => presets_list(cli, &lib, &mut out)?,
    }
    Ok(out)
}

fn resolve_material(args: &MaterialArgs, lib: &PresetLibrary) -> Result<MaterialPreset> {
    let base = match (&args.preset, &args.config) {
        (Some(name), _) => lib.material(name)?.clone(),
        (None, Some(path)) => MaterialPreset::load(path)?,
        (None, None) => {
            return Err(Error::Input(
                "a material is required: pass --preset NAME or --config FILE".into(),
            ))
        }
    };
    if args.frame_z.is_none() && args.frame_x.is_none() {
        return Ok(base);
    }
    let z = args.frame_z.unwrap_or(base.frame.z);
    let x = args.frame_x.unwrap_or(base.frame.x);
    Ok(base.with_frame(DefectFrame::new(z, x)?))
}

fn verbose_material(out: &mut Output, m: &MaterialPreset, c: &StiffnessMatrix) {
    let f = &m.frame;
    let _ = writeln!(out.stderr, "material: {} ({:?})", m.name, m.elastic.symmetry_class());
    let _ = writeln!(
        out.stderr,
        "defect frame (crystal coordinates): x = {}, y = {}, z = {}",
        fmt_vec(&f.x),
        fmt_vec(&f.y),
        fmt_vec(&f.z)
    );
    let _ = writeln!(out.stderr, "defect-frame stiffness (GPa), class {:?}:", c.symmetry_class());
    for i in 0..6 {
        let row: Vec<String> = (0..6).map(|j| format!("{:9.3}", c.matrix()[(i, j)])).collect();
        let _ = writeln!(out.stderr, "  {}", row.join(" "));
    }
    let _ = writeln!(out.stderr, "coefficient map (p = h for strain, g for stress):");
    for line in [
        "  c_z  [Sz^2]      = p41 (xx + yy) + p43 zz",
        "  c_xz [{Sx,Sz}]   = 1/2 [p26 zx - 1/2 p25 (xx - yy)]",
        "  c_yz [{Sy,Sz}]   = 1/2 (p26 yz + p25 xy)",
        "  c_d  [Sy^2-Sx^2] = 1/2 [p16 zx - 1/2 p15 (xx - yy)]",
        "  c_xy [{Sx,Sy}]   = 1/2 (p16 yz + p15 xy)",
    ] {
        let _ = writeln!(out.stderr, "{line}");
    }
    if m.strain_couplings.is_some() && m.stress_couplings.is_some() {
        match m.self_check() {
            Ok(lines) => {
                let _ = writeln!(out.stderr, "self-check against tabulated stress couplings:");
                for l in lines {
                    let _ = writeln!(
                        out.stderr,
                        "  {} converted {:8.3}  tabulated {:8.3} ± {:5.3}  {}",
                        l.parameter,
                        l.converted,
                        l.reference,
                        l.reference_error,
                        if l.pass { "ok" } else { "MISMATCH" }
                    );
                }
            }
            Err(e) => {
                let _ = writeln!(out.stderr, "self-check failed: {e}");
            }
        }
    }
}

fn fmt_vec(v: &[f64; 3]) -> String {
    format!("[{:.6}, {:.6}, {:.6}]", v[0], v[1], v[2])
}

#[derive(Serialize)]
struct CouplingEntry {
    parameter: String,
    value: f64,
    error: f64,
    unit: &'static str,
}

fn coupling_entries(set: &CouplingSet) -> Vec<CouplingEntry> {
    CouplingParam::ALL
        .iter()
        .map(|&p| CouplingEntry {
            parameter: p.label(set.kind()),
            value: set.value(p),
            error: set.error(p),
            unit: set.kind().unit(),
        })
        .collect()
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn csv_string(write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> Result<()>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    write(&mut w)?;
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(std::io::Error::other(e)))
}

#[derive(Serialize)]
struct ConvertReport<'a> {
    material: &'a str,
    direction: &'static str,
    frame: DefectFrame,
    input: Vec<CouplingEntry>,
    output: Vec<CouplingEntry>,
    linear_map: Vec<[f64; 6]>,
    residual: f64,
}

fn convert(cli: &Cli, lib: &PresetLibrary, args: &ConvertArgs, out: &mut Output) -> Result<()> {
    let material = resolve_material(&args.material, lib)?;
    let c = material.stiffness_defect()?;
    if cli.verbose {
        verbose_material(out, &material, &c);
    }
    let (input, report, direction) = match args.direction {
        Direction::StrainToStress => {
            let h = *material.couplings(CouplingKind::Strain)?;
            (h, strain_to_stress_couplings(&h, &c)?, "strain-to-stress")
        }
        Direction::StressToStrain => {
            let g = *material.couplings(CouplingKind::Stress)?;
            (g, stress_to_strain_couplings(&g, &c)?, "stress-to-strain")
        }
    };
    let output = report.couplings;
    let linear_map: Vec<[f64; 6]> = (0..6)
        .map(|i| std::array::from_fn(|j| report.linear_map[(i, j)]))
        .collect();

    out.stdout = match cli.format {
        OutputFormat::Json => json(&ConvertReport {
            material: &material.name,
            direction,
            frame: material.frame,
            input: coupling_entries(&input),
            output: coupling_entries(&output),
            linear_map,
            residual: report.residual,
        })?,
        OutputFormat::Csv => csv_string(|w| {
            w.write_record([
                "parameter",
                "input_value",
                "input_error",
                "input_unit",
                "output_parameter",
                "output_value",
                "output_error",
                "output_unit",
            ])?;
            for p in CouplingParam::ALL {
                w.write_record([
                    p.label(input.kind()),
                    input.value(p).to_string(),
                    input.error(p).to_string(),
                    input.kind().unit().to_string(),
                    p.label(output.kind()),
                    output.value(p).to_string(),
                    output.error(p).to_string(),
                    output.kind().unit().to_string(),
                ])?;
            }
            Ok(())
        })?,
        OutputFormat::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "material: {}", material.name);
            let _ = writeln!(s, "direction: {direction}");
            let _ = writeln!(
                s,
                "{:<10} {:>24} {:>24}",
                "parameter",
                format!("input ({})", input.kind().unit()),
                format!("output ({})", output.kind().unit())
            );
            for p in CouplingParam::ALL {
                let _ = writeln!(
                    s,
                    "{:<10} {:>24} {:>24}",
                    format!("{}/{}", p.label(input.kind()), p.label(output.kind())),
                    format!("{:.4} ± {:.4}", input.value(p), input.error(p)),
                    format!("{:.4} ± {:.4}", output.value(p), output.error(p)),
                );
            }
            let _ = writeln!(s, "residual (relative): {:.3e}", report.residual);
            let _ = writeln!(
                s,
                "linear map ({} per {}):",
                output.kind().unit(),
                input.kind().unit()
            );
            for row in &linear_map {
                let cells: Vec<String> = row
                    .iter()
                    .map(|&x| if x.abs() < 1e-15 { 0.0 } else { x })
                    .map(|x| format!("{x:13.6e}"))
                    .collect();
                let _ = writeln!(s, "  {}", cells.join(" "));
            }
            s
        }
    };
    Ok(())
}

#[derive(Serialize)]
struct FitReport {
    sample_count: usize,
    condition_number: f64,
    couplings: Vec<CouplingEntry>,
    residual_rms_mhz: Vec<(&'static str, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reference: Option<Vec<CouplingEntry>>,
}

fn fit(cli: &Cli, lib: &PresetLibrary, args: &FitArgs, out: &mut Output) -> Result<()> {
    let dataset = Dataset::load(&args.dataset)?;
    let result = dataset.fit()?;
    let reference = args
        .reference_preset
        .as_deref()
        .map(|name| lib.material(name).and_then(|m| m.couplings(CouplingKind::Strain).copied()))
        .transpose()?;
    if cli.verbose {
        let _ = writeln!(
            out.stderr,
            "fitted {} samples ({} equations, 6 unknowns) after baseline subtraction",
            result.sample_count,
            5 * result.sample_count
        );
    }
    let h = result.couplings;
    out.stdout = match cli.format {
        OutputFormat::Json => json(&FitReport {
            sample_count: result.sample_count,
            condition_number: result.condition_number,
            couplings: coupling_entries(&h),
            residual_rms_mhz: ChannelCoefficients::LABELS
                .iter()
                .copied()
                .zip(result.residual_rms)
                .collect(),
            reference: reference.as_ref().map(coupling_entries),
        })?,
        OutputFormat::Csv => csv_string(|w| {
            w.write_record(["parameter", "value_MHz_per_strain", "error_MHz_per_strain"])?;
            for p in CouplingParam::ALL {
                w.write_record([p.strain_label(), h.value(p).to_string(), h.error(p).to_string()])?;
            }
            Ok(())
        })?,
        OutputFormat::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "samples: {}", result.sample_count);
            let _ = writeln!(s, "normal-matrix condition number: {:.4e}", result.condition_number);
            let _ = writeln!(s, "{:<10} {:>30}", "parameter", "h (MHz/strain)");
            for p in CouplingParam::ALL {
                let mut line = format!(
                    "{:<10} {:>30}",
                    p.strain_label(),
                    format!("{:.6} ± {:.6}", h.value(p), h.error(p))
                );
                if let Some(r) = &reference {
                    let _ = write!(line, "   reference {:.1} ± {:.1}", r.value(p), r.error(p));
                }
                let _ = writeln!(s, "{line}");
            }
            let _ = writeln!(s, "residual RMS per channel (MHz):");
            for (label, v) in ChannelCoefficients::LABELS.iter().zip(result.residual_rms) {
                let _ = writeln!(s, "  {label:<5} {v:.6e}");
            }
            s
        }
    };
    Ok(())
}

fn parse_directions(names: &[String]) -> Result<Vec<usize>> {
    const NAMES: [&str; 6] = ["exx", "eyy", "ezz", "eyz", "ezx", "exy"];
    names
        .iter()
        .map(|n| {
            NAMES.iter().position(|k| *k == n.trim()).ok_or_else(|| {
                Error::Input(format!("unknown strain direction '{n}' (expected one of {})", NAMES.join(", ")))
            })
        })
        .collect()
}

fn generate(cli: &Cli, lib: &PresetLibrary, args: &GenerateArgs, out: &mut Output) -> Result<()> {
    let material = resolve_material(&args.material, lib)?;
    let h = material.couplings(CouplingKind::Strain)?;
    if args.repeat == 0 {
        return Err(Error::Input("--repeat must be at least 1".into()));
    }
    let directions = parse_directions(&args.directions)?;
    let strains: Vec<StrainTensor> = std::iter::repeat_n(battery(&args.magnitudes, &directions), args.repeat)
        .flatten()
        .collect();
    let samples = generate_synthetic(h, &strains, args.noise, args.seed)?;
    if cli.verbose {
        let _ = writeln!(
            out.stderr,
            "generated {} samples from '{}' (noise {} MHz, seed {})",
            samples.len(),
            material.name,
            args.noise,
            args.seed
        );
    }
    let dataset = Dataset {
        baseline: crate::spin::ZfsMatrix::zero(),
        samples,
    };
    let body = match cli.format {
        OutputFormat::Csv => csv_string(|w| {
            let mut header = vec!["label".to_string()];
            header.extend(["exx", "eyy", "ezz", "eyz", "ezx", "exy"].map(String::from));
            header.extend((0..9).map(|k| format!("d{}{}_MHz", k / 3 + 1, k % 3 + 1)));
            w.write_record(&header)?;
            for s in &dataset.samples {
                let mut row = vec![s.label.clone().unwrap_or_default()];
                row.extend(s.strain.components().iter().map(f64::to_string));
                row.extend(s.d_matrix.to_row_major().iter().map(f64::to_string));
                w.write_record(&row)?;
            }
            Ok(())
        })?,
        _ => {
            let mut s = dataset.to_json()?;
            s.push('\n');
            s
        }
    };
    match &args.output {
        Some(path) => {
            std::fs::write(path, body)?;
            out.stdout = format!(
                "wrote {} samples to {}\n",
                dataset.samples.len(),
                path.display()
            );
        }
        None => out.stdout = body,
    }
    Ok(())
}

#[derive(Serialize)]
struct HamiltonianReport {
    material: String,
    input_kind: CouplingKind,
    input_components: [f64; 6],
    channels_mhz: ChannelCoefficients,
    hamiltonian_mhz: Vec<Vec<[f64; 2]>>,
    eigenvalues_mhz: [f64; 3],
    #[serde(skip_serializing_if = "Option::is_none")]
    transitions_mhz: Option<crate::spin::TransitionShifts>,
}

fn hamiltonian(cli: &Cli, lib: &PresetLibrary, args: &HamiltonianArgs, out: &mut Output) -> Result<()> {
    let material = resolve_material(&args.material, lib)?;
    let (kind, components, channels) = if !args.stress.is_empty() {
        let comps = parse_components(&args.stress, 's')?;
        let g = material.convert()?.couplings;
        let c = stress_hamiltonian_coefficients(&g, &StressTensor::from_components(comps))?;
        (CouplingKind::Stress, comps, c)
    } else {
        let comps = parse_components(&args.strain, 'e')?;
        let h = material.couplings(CouplingKind::Strain)?;
        let c = strain_hamiltonian_coefficients(h, &StrainTensor::from_components(comps))?;
        (CouplingKind::Strain, comps, c)
    };
    if cli.verbose {
        let c = material.stiffness_defect()?;
        verbose_material(out, &material, &c);
    }
    let h = build_hamiltonian(&channels);
    let eigenvalues = h.eigenvalues();
    let transitions = args
        .base_splitting
        .map(|d0| transition_shifts(d0, &channels))
        .transpose()?;
    let matrix: Vec<Vec<[f64; 2]>> = (0..3)
        .map(|i| (0..3).map(|j| [h.0[(i, j)].re, h.0[(i, j)].im]).collect())
        .collect();

    out.stdout = match cli.format {
        OutputFormat::Json => json(&HamiltonianReport {
            material: material.name.clone(),
            input_kind: kind,
            input_components: components,
            channels_mhz: channels,
            hamiltonian_mhz: matrix,
            eigenvalues_mhz: eigenvalues,
            transitions_mhz: transitions,
        })?,
        OutputFormat::Csv => csv_string(|w| {
            w.write_record(["quantity", "value_MHz"])?;
            for (label, v) in ChannelCoefficients::LABELS.iter().zip(channels.to_vector().iter()) {
                w.write_record([label.to_string(), v.to_string()])?;
            }
            for (k, v) in eigenvalues.iter().enumerate() {
                w.write_record([format!("eigenvalue_{}", k + 1), v.to_string()])?;
            }
            if let Some(t) = transitions {
                w.write_record(["f_plus".to_string(), t.f_plus.to_string()])?;
                w.write_record(["f_minus".to_string(), t.f_minus.to_string()])?;
            }
            Ok(())
        })?,
        OutputFormat::Text => {
            let mut s = String::new();
            let unit = match kind {
                CouplingKind::Strain => "strain",
                CouplingKind::Stress => "GPa",
            };
            let _ = writeln!(s, "material: {}", material.name);
            let _ = writeln!(
                s,
                "{kind} (defect frame, {unit}): xx={} yy={} zz={} yz={} zx={} xy={}",
                components[0], components[1], components[2], components[3], components[4], components[5]
            );
            let _ = writeln!(s, "channel amplitudes (MHz):");
            for ((label, op), v) in ChannelCoefficients::LABELS
                .iter()
                .zip(ChannelCoefficients::OPERATORS)
                .zip(channels.to_vector().iter())
            {
                let _ = writeln!(s, "  {label:<5} {op:<10} {v:14.6}");
            }
            let _ = writeln!(s, "H/h (MHz), basis |+1>, |0>, |-1>:");
            for row in &matrix {
                let cells: Vec<String> = row
                    .iter()
                    .map(|[re, im]| format!("{re:11.6}{im:+11.6}i"))
                    .collect();
                let _ = writeln!(s, "  {}", cells.join("  "));
            }
            let _ = writeln!(
                s,
                "eigenvalues (MHz): {:.6} {:.6} {:.6}",
                eigenvalues[0], eigenvalues[1], eigenvalues[2]
            );
            if let Some(t) = transitions {
                let _ = writeln!(
                    s,
                    "transitions from m=0 (MHz): f+ = {:.6}, f- = {:.6}",
                    t.f_plus, t.f_minus
                );
            }
            s
        }
    };
    Ok(())
}

fn sensitivity(cli: &Cli, lib: &PresetLibrary, args: &SensitivityArgs, out: &mut Output) -> Result<()> {
    let scenarios = match (&args.scenarios, &args.set) {
        (Some(path), _) => load_scenarios(path)?,
        (None, Some(name)) => lib.scenario_set(name)?.to_vec(),
        (None, None) => lib.scenario_set(DEFAULT_SCENARIO_SET)?.to_vec(),
    };
    let rows = scenario_table(&scenarios, args.beta_convention)?;
    if cli.verbose {
        if let Some(r) = scenarios
            .first()
            .map(|s| crate::sensitivity::eta(s, args.beta_convention))
            .and_then(|s| s.result().cloned())
        {
            let _ = writeln!(out.stderr, "beta convention: {} ({})", r.convention, r.assumptions);
        }
    }
    out.stdout = match cli.format {
        OutputFormat::Json => json(&rows)?,
        OutputFormat::Csv => csv_string(|w| {
            w.write_record([
                "label",
                "g_MHz_per_GPa",
                "contrast",
                "beta",
                "beta_convention",
                "T2_s",
                "eta",
                "inverse_eta",
            ])?;
            for r in &rows {
                w.write_record([
                    r.label.clone(),
                    r.coupling.to_string(),
                    r.contrast.to_string(),
                    r.beta.to_string(),
                    r.beta_convention.to_string(),
                    r.t2.to_string(),
                    r.eta.map_or_else(|| "insensitive".to_string(), |e| e.to_string()),
                    r.inverse_eta.to_string(),
                ])?;
            }
            Ok(())
        })?,
        OutputFormat::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "beta convention: {}", args.beta_convention);
            let _ = writeln!(
                s,
                "{:<22} {:>12} {:>8} {:>12} {:>9} {:>16} {:>20}",
                "label", "g (MHz/GPa)", "C", "beta", "T2 (ms)", "eta (GPa/√Hz)", "1/eta (√Hz/GPa)"
            );
            for r in &rows {
                let eta = r.eta.map_or_else(|| "insensitive".to_string(), |e| format!("{e:.4e}"));
                let _ = writeln!(
                    s,
                    "{:<22} {:>12.3} {:>8.3} {:>12.5e} {:>9.3} {:>16} {:>20.2}",
                    r.label,
                    r.coupling,
                    r.contrast,
                    r.beta,
                    r.t2 * 1e3,
                    eta,
                    r.inverse_eta
                );
            }
            s
        }
    };
    Ok(())
}

#[derive(Serialize)]
struct PresetEntry<'a> {
    name: &'a str,
    class: crate::elasticity::SymmetryClass,
    description: &'a str,
    has_strain_couplings: bool,
    has_stress_couplings: bool,
}

fn presets_list(cli: &Cli, lib: &PresetLibrary, out: &mut Output) -> Result<()> {
    let entries: Vec<PresetEntry> = lib
        .materials()
        .map(|m| PresetEntry {
            name: &m.name,
            class: m.elastic.symmetry_class(),
            description: &m.description,
            has_strain_couplings: m.strain_couplings.is_some(),
            has_stress_couplings: m.stress_couplings.is_some(),
        })
        .collect();
    let sets: Vec<(&str, usize)> = lib.scenario_sets().map(|(n, s)| (n, s.len())).collect();
    out.stdout = match cli.format {
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Listing<'a> {
                materials: Vec<PresetEntry<'a>>,
                scenario_sets: Vec<(&'a str, usize)>,
            }
            json(&Listing {
                materials: entries,
                scenario_sets: sets,
            })?
        }
        OutputFormat::Csv => csv_string(|w| {
            w.write_record(["type", "name", "class", "description"])?;
            for e in &entries {
                w.write_record(["material", e.name, &format!("{:?}", e.class).to_lowercase(), e.description])?;
            }
            for (n, count) in &sets {
                w.write_record(["scenario-set", n, "", &format!("{count} scenarios")])?;
            }
            Ok(())
        })?,
        OutputFormat::Text => {
            let mut s = String::from("materials:\n");
            for e in &entries {
                let _ = writeln!(s, "  {:<24} {:<10} {}", e.name, format!("{:?}", e.class).to_lowercase(), e.description);
            }
            s.push_str("scenario sets:\n");
            for (n, count) in &sets {
                let _ = writeln!(s, "  {n:<24} {count} scenarios");
            }
            s
        }
    };
    Ok(())
}
