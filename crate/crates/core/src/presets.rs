//! Material and scenario presets stored as TOML.
//!
//! Built-in presets are compiled in from `presets/`. A directory named by
//! [`PRESET_DIR_ENV`] may add or replace presets; it mirrors the built-in
//! layout (`materials/*.toml`, `scenarios/*.toml`).

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::conversion::{strain_to_stress_couplings, ConversionReport};
use crate::coupling::{CouplingKind, CouplingParam, CouplingSet};
use crate::elasticity::{
    rotate_stiffness, stiffness_cubic, stiffness_hexagonal, DefectFrame, StiffnessMatrix,
    SymmetryClass,
};
use crate::error::{Error, Result};
use crate::sensitivity::ReadoutScenario;

pub const PRESET_DIR_ENV: &str = "SPINSTRESS_PRESET_DIR";

/// Slack added to tabulated error bars when checking rounded values.
pub const ROUNDING_SLACK: f64 = 0.005;

const BUILTIN_MATERIALS: [&str; 2] = [
    include_str!("../presets/materials/3c-sic-divacancy.toml"),
    include_str!("../presets/materials/4h-sic-divacancy-hh.toml"),
];

const BUILTIN_SCENARIOS: [(&str, &str); 1] = [(
    "divacancy-vs-nv",
    include_str!("../presets/scenarios/divacancy-vs-nv.toml"),
)];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "lowercase", deny_unknown_fields)]
pub enum ElasticConstants {
    Cubic {
        c11: f64,
        c12: f64,
        c44: f64,
    },
    Hexagonal {
        c11: f64,
        c12: f64,
        c13: f64,
        c33: f64,
        c44: f64,
    },
}

impl ElasticConstants {
    pub fn symmetry_class(&self) -> SymmetryClass {
        match self {
            ElasticConstants::Cubic { .. } => SymmetryClass::Cubic,
            ElasticConstants::Hexagonal { .. } => SymmetryClass::Hexagonal,
        }
    }

    pub fn stiffness(&self) -> Result<StiffnessMatrix> {
        match *self {
            ElasticConstants::Cubic { c11, c12, c44 } => stiffness_cubic(c11, c12, c44),
            ElasticConstants::Hexagonal {
                c11,
                c12,
                c13,
                c33,
                c44,
            } => stiffness_hexagonal(c11, c12, c13, c33, c44),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FrameSpec {
    z: [f64; 3],
    x: [f64; 3],
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StrainCouplingSpec {
    h41: [f64; 2],
    h43: [f64; 2],
    h25: [f64; 2],
    h26: [f64; 2],
    h15: [f64; 2],
    h16: [f64; 2],
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StressCouplingSpec {
    g41: [f64; 2],
    g43: [f64; 2],
    g25: [f64; 2],
    g26: [f64; 2],
    g15: [f64; 2],
    g16: [f64; 2],
}

fn coupling_set(kind: CouplingKind, pairs: [[f64; 2]; 6]) -> Result<CouplingSet> {
    CouplingSet::new(kind, pairs.map(|p| p[0]), pairs.map(|p| p[1]))
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct MaterialFile {
    name: String,
    #[serde(default)]
    description: String,
    elastic: ElasticConstants,
    frame: FrameSpec,
    strain_couplings: Option<StrainCouplingSpec>,
    stress_couplings: Option<StressCouplingSpec>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaterialPreset {
    pub name: String,
    pub description: String,
    pub elastic: ElasticConstants,
    pub frame: DefectFrame,
    pub strain_couplings: Option<CouplingSet>,
    /// Tabulated stress couplings, used as the self-check reference.
    pub stress_couplings: Option<CouplingSet>,
}

/// One line of a preset self-check.
#[derive(Debug, Clone, Serialize)]
pub struct SelfCheckLine {
    pub parameter: String,
    pub converted: f64,
    pub reference: f64,
    pub reference_error: f64,
    pub pass: bool,
}

impl MaterialPreset {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let f: MaterialFile = toml::from_str(text)?;
        let frame = DefectFrame::new(f.frame.z, f.frame.x)?;
        let strain_couplings = f
            .strain_couplings
            .map(|s| {
                coupling_set(
                    CouplingKind::Strain,
                    [s.h41, s.h43, s.h25, s.h26, s.h15, s.h16],
                )
            })
            .transpose()?;
        let stress_couplings = f
            .stress_couplings
            .map(|s| {
                coupling_set(
                    CouplingKind::Stress,
                    [s.g41, s.g43, s.g25, s.g26, s.g15, s.g16],
                )
            })
            .transpose()?;
        // fail early on unstable constants
        f.elastic.stiffness()?;
        Ok(Self {
            name: f.name,
            description: f.description,
            elastic: f.elastic,
            frame,
            strain_couplings,
            stress_couplings,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn with_frame(&self, frame: DefectFrame) -> Self {
        Self {
            frame,
            ..self.clone()
        }
    }

    pub fn stiffness_crystal(&self) -> Result<StiffnessMatrix> {
        self.elastic.stiffness()
    }

    pub fn stiffness_defect(&self) -> Result<StiffnessMatrix> {
        rotate_stiffness(&self.stiffness_crystal()?, &self.frame)
    }

    pub fn couplings(&self, kind: CouplingKind) -> Result<&CouplingSet> {
        let c = match kind {
            CouplingKind::Strain => self.strain_couplings.as_ref(),
            CouplingKind::Stress => self.stress_couplings.as_ref(),
        };
        c.ok_or_else(|| {
            Error::Input(format!(
                "preset '{}' has no {kind} couplings",
                self.name
            ))
        })
    }

    /// Strain couplings converted to stress couplings in the preset frame.
    pub fn convert(&self) -> Result<ConversionReport> {
        strain_to_stress_couplings(self.couplings(CouplingKind::Strain)?, &self.stiffness_defect()?)
    }

    /// Compares converted stress couplings with the tabulated ones; each
    /// must agree within its quoted error plus [`ROUNDING_SLACK`].
    pub fn self_check(&self) -> Result<Vec<SelfCheckLine>> {
        let reference = *self.couplings(CouplingKind::Stress)?;
        let report = self.convert()?;
        Ok(CouplingParam::ALL
            .iter()
            .map(|&p| {
                let converted = report.couplings.value(p);
                let r = reference.value(p);
                let err = reference.error(p);
                SelfCheckLine {
                    parameter: p.stress_label(),
                    converted,
                    reference: r,
                    reference_error: err,
                    pass: (converted - r).abs() <= err + ROUNDING_SLACK,
                }
            })
            .collect())
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    #[serde(default)]
    #[allow(dead_code)]
    description: String,
    scenario: Vec<ReadoutScenario>,
}

pub fn scenarios_from_toml_str(text: &str) -> Result<Vec<ReadoutScenario>> {
    let f: ScenarioFile = toml::from_str(text)?;
    if f.scenario.is_empty() {
        return Err(Error::Input("scenario file lists no [[scenario]] entries".into()));
    }
    Ok(f.scenario)
}

pub fn load_scenarios(path: impl AsRef<Path>) -> Result<Vec<ReadoutScenario>> {
    scenarios_from_toml_str(&std::fs::read_to_string(path)?)
}

/// Name of the shipped scenario set used when none is given.
pub const DEFAULT_SCENARIO_SET: &str = "divacancy-vs-nv";

#[derive(Debug, Clone, Default)]
pub struct PresetLibrary {
    materials: BTreeMap<String, MaterialPreset>,
    scenario_sets: BTreeMap<String, Vec<ReadoutScenario>>,
}

impl PresetLibrary {
    pub fn builtin() -> Result<Self> {
        let mut lib = Self::default();
        for text in BUILTIN_MATERIALS {
            let m = MaterialPreset::from_toml_str(text)?;
            lib.materials.insert(m.name.clone(), m);
        }
        for (name, text) in BUILTIN_SCENARIOS {
            lib.scenario_sets
                .insert(name.to_string(), scenarios_from_toml_str(text)?);
        }
        Ok(lib)
    }

    /// Built-ins, overlaid by the directory in [`PRESET_DIR_ENV`] if set.
    pub fn load() -> Result<Self> {
        let mut lib = Self::builtin()?;
        if let Some(dir) = std::env::var_os(PRESET_DIR_ENV) {
            lib.overlay_dir(Path::new(&dir))?;
        }
        Ok(lib)
    }

    pub fn overlay_dir(&mut self, dir: &Path) -> Result<()> {
        if !dir.is_dir() {
            return Err(Error::Input(format!(
                "preset directory {} does not exist",
                dir.display()
            )));
        }
        for path in toml_files(&dir.join("materials"))? {
            let m = MaterialPreset::load(&path)?;
            self.materials.insert(m.name.clone(), m);
        }
        for path in toml_files(&dir.join("scenarios"))? {
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            self.scenario_sets.insert(name, load_scenarios(&path)?);
        }
        Ok(())
    }

    pub fn material(&self, name: &str) -> Result<&MaterialPreset> {
        self.materials.get(name).ok_or_else(|| {
            Error::Input(format!(
                "unknown preset '{name}' (available: {})",
                self.materials.keys().cloned().collect::<Vec<_>>().join(", ")
            ))
        })
    }

    pub fn scenario_set(&self, name: &str) -> Result<&[ReadoutScenario]> {
        self.scenario_sets
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::Input(format!("unknown scenario set '{name}'")))
    }

    pub fn materials(&self) -> impl Iterator<Item = &MaterialPreset> {
        self.materials.values()
    }

    pub fn scenario_sets(&self) -> impl Iterator<Item = (&str, &[ReadoutScenario])> {
        self.scenario_sets
            .iter()
            .map(|(k, v)| (k.as_str(), v.as_slice()))
    }
}

fn toml_files(dir: &Path) -> Result<Vec<std::path::PathBuf>> {
    if !dir.is_dir() {
        return Ok(Vec::new());
    }
    let mut files: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "toml"))
        .collect();
    files.sort();
    Ok(files)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_parse() {
        let lib = PresetLibrary::builtin().unwrap();
        let names: Vec<_> = lib.materials().map(|m| m.name.as_str()).collect();
        assert_eq!(names, ["3c-sic-divacancy", "4h-sic-divacancy-hh"]);
        assert_eq!(lib.scenario_set(DEFAULT_SCENARIO_SET).unwrap().len(), 8);
    }

    #[test]
    fn builtin_self_checks_pass() {
        let lib = PresetLibrary::builtin().unwrap();
        for m in lib.materials() {
            let lines = m.self_check().unwrap();
            assert!(lines.iter().all(|l| l.pass), "{}: {lines:?}", m.name);
        }
    }

    #[test]
    fn unknown_preset_lists_alternatives() {
        let lib = PresetLibrary::builtin().unwrap();
        let err = lib.material("diamond").unwrap_err();
        assert!(err.to_string().contains("3c-sic-divacancy"));
    }

    #[test]
    fn user_material_without_couplings() {
        let text = r#"
            name = "diamond-nv"
            [elastic]
            class = "cubic"
            c11 = 1076.0
            c12 = 125.0
            c44 = 577.0
            [frame]
            z = [1.0, 1.0, 1.0]
            x = [-1.0, -1.0, 2.0]
        "#;
        let m = MaterialPreset::from_toml_str(text).unwrap();
        assert!(m.stiffness_defect().is_ok());
        assert!(matches!(m.convert(), Err(Error::Input(_))));
    }

    #[test]
    fn unstable_constants_rejected_on_load() {
        let text = r#"
            name = "bad"
            [elastic]
            class = "cubic"
            c11 = 1.0
            c12 = 2.0
            c44 = 1.0
            [frame]
            z = [0.0, 0.0, 1.0]
            x = [1.0, 0.0, 0.0]
        "#;
        assert!(matches!(MaterialPreset::from_toml_str(text), Err(Error::Validation(_))));
    }
}
