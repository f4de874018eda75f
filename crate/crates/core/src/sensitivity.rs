//! Shot-noise-limited stress sensitivity of an ODMR Hahn-echo readout,
//!
//! ```text
//! η = 1 / (4 g C √(β T2))
//! ```
//!
//! with `g` the stress coupling (converted to Hz/GPa), `C` the readout
//! contrast, `β` the photon yield and `T2` the echo coherence time, which
//! also stands in for the measurement and free-precession times.
//!
//! How `β` is derived from a count rate and a readout window is a
//! convention; every result records which one was used.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const HZ_PER_MHZ: f64 = 1e6;

/// Readout contrast `(p0 − p1)/(p0 + p1)` from bright- and dark-state counts.
pub fn contrast(p0: f64, p1: f64) -> Result<f64> {
    if !(p0.is_finite() && p1.is_finite()) || p1 < 0.0 {
        return Err(Error::Input(format!(
            "photon counts must be finite and non-negative (p0 = {p0}, p1 = {p1})"
        )));
    }
    if p0 < p1 {
        return Err(Error::Input(format!(
            "bright-state count p0 = {p0} is below dark-state count p1 = {p1}; are they swapped?"
        )));
    }
    if p0 + p1 <= 0.0 {
        return Err(Error::Input("photon counts are both zero".into()));
    }
    Ok((p0 - p1) / (p0 + p1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BetaConvention {
    /// `β = count_rate · readout_duration`: photons collected per readout.
    /// Independent of `T2`.
    #[default]
    PhotonsPerReadout,
    /// `β = count_rate · readout_duration / T2`: photons per second averaged
    /// over one `T2`-long shot. Makes `β·T2`, and hence `η`, independent of
    /// `T2`.
    PerCoherenceWindow,
    /// `β = count_rate` in counts/s.
    RawRate,
}

impl BetaConvention {
    pub const ALL: [BetaConvention; 3] = [
        BetaConvention::PhotonsPerReadout,
        BetaConvention::PerCoherenceWindow,
        BetaConvention::RawRate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BetaConvention::PhotonsPerReadout => "photons-per-readout",
            BetaConvention::PerCoherenceWindow => "per-coherence-window",
            BetaConvention::RawRate => "raw-rate",
        }
    }

    fn description(self) -> &'static str {
        match self {
            BetaConvention::PhotonsPerReadout => {
                "beta = count_rate * readout_duration (photons per readout); T2 used as measurement and free-precession time"
            }
            BetaConvention::PerCoherenceWindow => {
                "beta = count_rate * readout_duration / T2 (photons/s over one T2-long shot); T2 used as measurement and free-precession time"
            }
            BetaConvention::RawRate => {
                "beta = count_rate (counts/s); T2 used as measurement and free-precession time"
            }
        }
    }

    pub fn beta(self, scenario: &ReadoutScenario) -> f64 {
        match self {
            BetaConvention::PhotonsPerReadout => scenario.count_rate * scenario.readout_duration,
            BetaConvention::PerCoherenceWindow => {
                scenario.count_rate * scenario.readout_duration / scenario.t2
            }
            BetaConvention::RawRate => scenario.count_rate,
        }
    }
}

impl fmt::Display for BetaConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BetaConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BetaConvention::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                Error::Input(format!(
                    "unknown beta convention '{s}' (expected photons-per-readout, per-coherence-window or raw-rate)"
                ))
            })
    }
}

/// Inputs of the sensitivity formula for one sensor configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawScenario")]
pub struct ReadoutScenario {
    pub label: String,
    /// Readout contrast, fraction in [0, 1].
    pub contrast: f64,
    /// Photon count rate, counts/s.
    pub count_rate: f64,
    /// Readout window, s.
    pub readout_duration: f64,
    /// Hahn-echo coherence time, s.
    pub t2: f64,
    /// Stress coupling, MHz/GPa; only its magnitude is used.
    pub coupling: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    label: String,
    contrast: f64,
    count_rate: f64,
    readout_duration: f64,
    t2: f64,
    coupling: f64,
}

impl TryFrom<RawScenario> for ReadoutScenario {
    type Error = Error;
    fn try_from(r: RawScenario) -> Result<Self> {
        ReadoutScenario::new(r.label, r.contrast, r.count_rate, r.readout_duration, r.t2, r.coupling)
    }
}

impl ReadoutScenario {
    pub fn new(
        label: impl Into<String>,
        contrast: f64,
        count_rate: f64,
        readout_duration: f64,
        t2: f64,
        coupling: f64,
    ) -> Result<Self> {
        let label = label.into();
        if !(0.0..=1.0).contains(&contrast) {
            return Err(Error::Validation(format!(
                "scenario '{label}': contrast must lie in [0, 1], got {contrast}"
            )));
        }
        for (name, v) in [
            ("count_rate", count_rate),
            ("readout_duration", readout_duration),
            ("t2", t2),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Validation(format!(
                    "scenario '{label}': {name} must be positive, got {v}"
                )));
            }
        }
        if !coupling.is_finite() {
            return Err(Error::Validation(format!(
                "scenario '{label}': coupling must be finite"
            )));
        }
        Ok(Self {
            label,
            contrast,
            count_rate,
            readout_duration,
            t2,
            coupling,
        })
    }

    pub fn with_t2(&self, t2: f64) -> Result<Self> {
        Self::new(self.label.clone(), self.contrast, self.count_rate, self.readout_duration, t2, self.coupling)
    }

    pub fn with_coupling(&self, coupling: f64) -> Result<Self> {
        Self::new(self.label.clone(), self.contrast, self.count_rate, self.readout_duration, self.t2, coupling)
    }

    pub fn with_contrast(&self, contrast: f64) -> Result<Self> {
        Self::new(self.label.clone(), contrast, self.count_rate, self.readout_duration, self.t2, self.coupling)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SensitivityResult {
    /// GPa·Hz^(-1/2)
    pub eta: f64,
    /// GPa^(-1)·Hz^(1/2)
    pub inverse_eta: f64,
    pub beta_used: f64,
    pub convention: BetaConvention,
    pub assumptions: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum Sensitivity {
    Sensitive(SensitivityResult),
    /// Zero coupling or zero contrast: the sensor does not respond.
    Insensitive { reason: String },
}

impl Sensitivity {
    pub fn result(&self) -> Option<&SensitivityResult> {
        match self {
            Sensitivity::Sensitive(r) => Some(r),
            Sensitivity::Insensitive { .. } => None,
        }
    }
}

pub fn eta(scenario: &ReadoutScenario, convention: BetaConvention) -> Sensitivity {
    if scenario.coupling == 0.0 {
        return Sensitivity::Insensitive {
            reason: format!("scenario '{}': zero coupling", scenario.label),
        };
    }
    if scenario.contrast == 0.0 {
        return Sensitivity::Insensitive {
            reason: format!("scenario '{}': zero readout contrast", scenario.label),
        };
    }
    let beta = convention.beta(scenario);
    let g_hz = scenario.coupling.abs() * HZ_PER_MHZ;
    let inverse_eta = 4.0 * g_hz * scenario.contrast * (beta * scenario.t2).sqrt();
    Sensitivity::Sensitive(SensitivityResult {
        eta: 1.0 / inverse_eta,
        inverse_eta,
        beta_used: beta,
        convention,
        assumptions: convention.description().to_string(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioRow {
    pub label: String,
    #[serde(rename = "g_MHz_per_GPa")]
    pub coupling: f64,
    pub contrast: f64,
    pub beta: f64,
    pub beta_convention: BetaConvention,
    #[serde(rename = "T2_s")]
    pub t2: f64,
    /// `None` for an insensitive scenario.
    pub eta: Option<f64>,
    /// Zero for an insensitive scenario.
    pub inverse_eta: f64,
}

/// One row per scenario, in input order.
pub fn scenario_table(scenarios: &[ReadoutScenario], convention: BetaConvention) -> Result<Vec<ScenarioRow>> {
    if scenarios.is_empty() {
        return Err(Error::Input("at least one scenario is required".into()));
    }
    Ok(scenarios
        .iter()
        .map(|s| {
            let out = eta(s, convention);
            let (eta, inverse_eta) = match out.result() {
                Some(r) => (Some(r.eta), r.inverse_eta),
                None => (None, 0.0),
            };
            ScenarioRow {
                label: s.label.clone(),
                coupling: s.coupling,
                contrast: s.contrast,
                beta: convention.beta(s),
                beta_convention: convention,
                t2: s.t2,
                eta,
                inverse_eta,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn divacancy() -> ReadoutScenario {
        ReadoutScenario::new("divacancy g43 nat", 0.15, 26e3, 350e-9, 1.2e-3, 6.01).unwrap()
    }

    #[test]
    fn contrast_edges() {
        assert_eq!(contrast(3.0, 3.0).unwrap(), 0.0);
        assert_eq!(contrast(5.0, 0.0).unwrap(), 1.0);
        assert!((contrast(1.15, 0.85).unwrap() - 0.15).abs() < 1e-15);
        assert!(contrast(0.85, 1.15).is_err());
        assert!(contrast(0.0, 0.0).is_err());
    }

    #[test]
    fn doubling_coupling_halves_eta() {
        let a = eta(&divacancy(), BetaConvention::default());
        let b = eta(&divacancy().with_coupling(12.02).unwrap(), BetaConvention::default());
        assert_eq!(a.result().unwrap().eta, 2.0 * b.result().unwrap().eta);
    }

    #[test]
    fn negative_coupling_uses_magnitude() {
        let a = eta(&divacancy(), BetaConvention::default());
        let b = eta(&divacancy().with_coupling(-6.01).unwrap(), BetaConvention::default());
        assert_eq!(a, b);
    }

    #[test]
    fn zero_coupling_or_contrast_is_insensitive() {
        let s = divacancy().with_coupling(0.0).unwrap();
        assert!(matches!(eta(&s, BetaConvention::RawRate), Sensitivity::Insensitive { .. }));
        let s = divacancy().with_contrast(0.0).unwrap();
        assert!(matches!(eta(&s, BetaConvention::RawRate), Sensitivity::Insensitive { .. }));
        let rows = scenario_table(&[s], BetaConvention::RawRate).unwrap();
        assert_eq!(rows[0].eta, None);
        assert_eq!(rows[0].inverse_eta, 0.0);
    }

    #[test]
    fn scenario_validation() {
        assert!(ReadoutScenario::new("x", 1.5, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(ReadoutScenario::new("x", 0.5, 0.0, 1.0, 1.0, 1.0).is_err());
        assert!(ReadoutScenario::new("x", 0.5, 1.0, -1.0, 1.0, 1.0).is_err());
        assert!(ReadoutScenario::new("x", 0.5, 1.0, 1.0, 0.0, 1.0).is_err());
        assert!(scenario_table(&[], BetaConvention::default()).is_err());
    }

    #[test]
    fn per_window_convention_cancels_t2() {
        let c = BetaConvention::PerCoherenceWindow;
        let a = eta(&divacancy(), c).result().unwrap().eta;
        let b = eta(&divacancy().with_t2(3.6e-3).unwrap(), c).result().unwrap().eta;
        assert!((a / b - 1.0).abs() < 1e-12);
    }

    #[test]
    fn convention_round_trips_through_name() {
        for c in BetaConvention::ALL {
            assert_eq!(c.name().parse::<BetaConvention>().unwrap(), c);
        }
        assert!("photons".parse::<BetaConvention>().is_err());
    }
}
