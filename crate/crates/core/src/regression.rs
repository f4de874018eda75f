//! Extraction of strain couplings from (strain, D matrix) samples by linear
//! least squares, plus a synthetic data generator standing in for
//! first-principles supercell calculations.
//!
//! Each sample contributes five equations (one per spin channel) through
//! the coefficient block of its strain; all samples are stacked into one
//! system so that parameters shared between channels are fitted jointly.

use std::path::Path;

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::coupling::{coefficient_block, CoefficientBlock, CouplingKind, CouplingParam, CouplingSet};
use crate::error::{Error, Result};
use crate::spin::{decompose_zfs, ChannelCoefficients, ZfsMatrix};
use crate::tensor::StrainTensor;

/// Strain components must stay below this magnitude.
pub const STRAIN_BOUND: f64 = 0.1;

/// Label identifying the unstrained reference record in dataset files.
pub const BASELINE_LABEL: &str = "baseline";

#[derive(Debug, Clone, PartialEq)]
pub struct ZfsSample {
    pub strain: StrainTensor,
    pub d_matrix: ZfsMatrix,
    pub label: Option<String>,
}

impl ZfsSample {
    pub fn new(strain: StrainTensor, d_matrix: ZfsMatrix, label: Option<String>) -> Result<Self> {
        if strain.components().iter().any(|c| !c.is_finite()) {
            return Err(Error::Validation("strain has non-finite components".into()));
        }
        if strain.max_abs() >= STRAIN_BOUND {
            return Err(Error::Validation(format!(
                "strain component {:.4} exceeds the sanity bound {STRAIN_BOUND}",
                strain.max_abs()
            )));
        }
        Ok(Self {
            strain,
            d_matrix,
            label,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FitResult {
    /// Fitted strain couplings with least-squares standard errors.
    pub couplings: CouplingSet,
    /// RMS residual per channel (MHz), in `c_z, c_d, c_xy, c_xz, c_yz` order.
    pub residual_rms: [f64; 5],
    /// Condition number of the normal matrix `XᵀX`.
    pub condition_number: f64,
    pub sample_count: usize,
}

/// Linear map from `h` to the channel amplitudes induced by `strain`.
pub fn design_row(strain: &StrainTensor) -> CoefficientBlock {
    coefficient_block(strain.components())
}

fn stacked_design(samples: &[ZfsSample]) -> DMatrix<f64> {
    let mut x = DMatrix::zeros(5 * samples.len(), 6);
    for (k, s) in samples.iter().enumerate() {
        x.view_mut((5 * k, 0), (5, 6)).copy_from(&design_row(&s.strain));
    }
    x
}

/// Ordinary least-squares fit of `h` to baseline-subtracted channels.
pub fn fit(samples: &[ZfsSample], baseline: &ZfsMatrix) -> Result<FitResult> {
    if samples.len() < 2 {
        return Err(Error::Input(format!(
            "at least 2 samples are needed for a fit, got {}",
            samples.len()
        )));
    }
    let x = stacked_design(samples);
    let rows = x.nrows();
    let mut y = DVector::zeros(rows);
    for (k, s) in samples.iter().enumerate() {
        let (_, c) = decompose_zfs(&(s.d_matrix - *baseline));
        y.rows_mut(5 * k, 5).copy_from(&c.to_vector());
    }

    let svd = x.clone().svd(true, true);
    let sv = &svd.singular_values;
    let max_sv = sv.max();
    let rank_tol = max_sv * 1e-10;
    let v_t = svd.v_t.as_ref().expect("requested V");
    let mut null_weight = [0.0f64; 6];
    for (i, &s) in sv.iter().enumerate() {
        if s <= rank_tol {
            for (j, w) in null_weight.iter_mut().enumerate() {
                *w += v_t[(i, j)].powi(2);
            }
        }
    }
    let unresolved: Vec<CouplingParam> = CouplingParam::ALL
        .into_iter()
        .filter(|p| null_weight[p.index()] > 1e-6)
        .collect();
    if max_sv == 0.0 || !unresolved.is_empty() {
        return Err(Error::Identifiability {
            unresolved: if max_sv == 0.0 {
                CouplingParam::ALL.to_vec()
            } else {
                unresolved
            },
        });
    }
    let min_sv = sv.min();
    let condition_number = (max_sv / min_sv).powi(2);

    let h = svd
        .solve(&y, 0.0)
        .map_err(|e| Error::Numerical(format!("least-squares solve failed: {e}")))?;
    let residual = &y - &x * &h;

    let dof = rows - 6;
    let rss = residual.norm_squared();
    let variance = rss / dof as f64;
    let normal_inv = (x.transpose() * &x)
        .try_inverse()
        .ok_or_else(|| Error::Numerical("normal matrix is singular".into()))?;
    let errors: [f64; 6] = std::array::from_fn(|j| (variance * normal_inv[(j, j)]).max(0.0).sqrt());

    let residual_rms: [f64; 5] = std::array::from_fn(|ch| {
        let sum: f64 = (0..samples.len()).map(|k| residual[5 * k + ch].powi(2)).sum();
        (sum / samples.len() as f64).sqrt()
    });

    let values: [f64; 6] = std::array::from_fn(|j| h[j]);
    Ok(FitResult {
        couplings: CouplingSet::new(CouplingKind::Strain, values, errors)?,
        residual_rms,
        condition_number,
        sample_count: samples.len(),
    })
}

/// Each Voigt direction at magnitudes ±0.001 and ±0.002 (24 strains).
pub fn default_battery() -> Vec<StrainTensor> {
    battery(&[0.001, 0.002], &[0, 1, 2, 3, 4, 5])
}

/// Strains along the given Voigt directions (tensor components) at `±m`
/// for each magnitude `m`.
pub fn battery(magnitudes: &[f64], directions: &[usize]) -> Vec<StrainTensor> {
    let mut out = Vec::with_capacity(2 * magnitudes.len() * directions.len());
    for &dir in directions {
        for &m in magnitudes {
            for sign in [1.0, -1.0] {
                out.push(StrainTensor::unit(dir).scaled(sign * m));
            }
        }
    }
    out
}

/// D matrices from the strain form of the Hamiltonian (zero baseline), with
/// i.i.d. Gaussian noise of RMS `noise_rms` (MHz) on every channel.
/// Deterministic for a given seed.
pub fn generate_synthetic(
    h: &CouplingSet,
    strain_battery: &[StrainTensor],
    noise_rms: f64,
    seed: u64,
) -> Result<Vec<ZfsSample>> {
    h.expect_kind(CouplingKind::Strain)?;
    if !(noise_rms >= 0.0 && noise_rms.is_finite()) {
        return Err(Error::Validation(format!(
            "noise RMS must be finite and non-negative, got {noise_rms}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, noise_rms)
        .map_err(|e| Error::Validation(format!("noise distribution: {e}")))?;
    let hv = h.value_vector();
    strain_battery
        .iter()
        .enumerate()
        .map(|(k, strain)| {
            let mut channels = design_row(strain) * hv;
            if noise_rms > 0.0 {
                for c in channels.iter_mut() {
                    *c += normal.sample(&mut rng);
                }
            }
            let d = ZfsMatrix::from_channels(&ChannelCoefficients::from_vector(&channels));
            ZfsSample::new(*strain, d, Some(format!("sample-{k:03}")))
        })
        .collect()
}

/// A baseline plus strained samples; the unit of dataset file I/O.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub baseline: ZfsMatrix,
    pub samples: Vec<ZfsSample>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StrainRecord {
    exx: f64,
    eyy: f64,
    ezz: f64,
    eyz: f64,
    ezx: f64,
    exy: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Record {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    strain: StrainRecord,
    d_matrix: [f64; 9],
}

impl Dataset {
    pub fn fit(&self) -> Result<FitResult> {
        fit(&self.samples, &self.baseline)
    }

    /// Parses a JSON array of `{strain, d_matrix, label?}` records. Exactly
    /// one record labelled `"baseline"` with zero strain is required.
    pub fn from_json(text: &str) -> Result<Self> {
        let records: Vec<Record> = serde_json::from_str(text)?;
        let mut baseline = None;
        let mut samples = Vec::with_capacity(records.len());
        for (i, r) in records.into_iter().enumerate() {
            let s = r.strain;
            let strain = StrainTensor::new(s.exx, s.eyy, s.ezz, s.eyz, s.ezx, s.exy);
            let d = ZfsMatrix::from_row_major(r.d_matrix)
                .map_err(|e| Error::Input(format!("record {i}: {e}")))?;
            if r.label.as_deref() == Some(BASELINE_LABEL) {
                if baseline.is_some() {
                    return Err(Error::Input("dataset has more than one baseline record".into()));
                }
                if strain.max_abs() != 0.0 {
                    return Err(Error::Input("baseline record must have zero strain".into()));
                }
                baseline = Some(d);
            } else {
                samples.push(
                    ZfsSample::new(strain, d, r.label)
                        .map_err(|e| Error::Input(format!("record {i}: {e}")))?,
                );
            }
        }
        let baseline = baseline.ok_or_else(|| {
            Error::Input(format!("dataset has no record labelled \"{BASELINE_LABEL}\""))
        })?;
        Ok(Self { baseline, samples })
    }

    pub fn to_json(&self) -> Result<String> {
        let record = |label: Option<String>, e: &StrainTensor, d: &ZfsMatrix| Record {
            label,
            strain: StrainRecord {
                exx: e.exx(),
                eyy: e.eyy(),
                ezz: e.ezz(),
                eyz: e.eyz(),
                ezx: e.ezx(),
                exy: e.exy(),
            },
            d_matrix: d.to_row_major(),
        };
        let mut records = vec![record(
            Some(BASELINE_LABEL.to_string()),
            &StrainTensor::zero(),
            &self.baseline,
        )];
        records.extend(
            self.samples
                .iter()
                .map(|s| record(s.label.clone(), &s.strain, &s.d_matrix)),
        );
        Ok(serde_json::to_string_pretty(&records)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubic_couplings() -> CouplingSet {
        CouplingSet::exact(
            CouplingKind::Strain,
            [-4700.0, 2530.0, -900.0, -1760.0, 3200.0, 1320.0],
        )
        .unwrap()
    }

    #[test]
    fn design_row_axial() {
        let b = design_row(&StrainTensor::new(0.0, 0.0, 0.004, 0.0, 0.0, 0.0));
        assert_eq!(b.row(0).iter().copied().collect::<Vec<_>>(), vec![0.0, 0.004, 0.0, 0.0, 0.0, 0.0]);
        assert!(b.rows(1, 4).iter().all(|x| *x == 0.0));
    }

    #[test]
    fn default_battery_has_24_strains() {
        let b = default_battery();
        assert_eq!(b.len(), 24);
        assert!(b.iter().all(|e| e.max_abs() == 0.001 || e.max_abs() == 0.002));
    }

    #[test]
    fn noiseless_samples_carry_exact_channels() {
        let h = cubic_couplings();
        let samples = generate_synthetic(&h, &default_battery(), 0.0, 1).unwrap();
        for s in &samples {
            let (_, c) = decompose_zfs(&s.d_matrix);
            let expected = design_row(&s.strain) * h.value_vector();
            assert!((c.to_vector() - expected).amax() < 1e-12);
        }
    }

    #[test]
    fn same_seed_same_dataset() {
        let h = cubic_couplings();
        let a = generate_synthetic(&h, &default_battery(), 0.01, 7).unwrap();
        let b = generate_synthetic(&h, &default_battery(), 0.01, 7).unwrap();
        assert_eq!(a, b);
        let c = generate_synthetic(&h, &default_battery(), 0.01, 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn negative_noise_rejected() {
        assert!(generate_synthetic(&cubic_couplings(), &default_battery(), -1.0, 0).is_err());
    }

    #[test]
    fn exx_only_battery_is_not_identifiable() {
        let samples = generate_synthetic(&cubic_couplings(), &battery(&[0.001, 0.002], &[0]), 0.0, 0).unwrap();
        match fit(&samples, &ZfsMatrix::zero()) {
            Err(Error::Identifiability { unresolved }) => assert_eq!(
                unresolved,
                vec![CouplingParam::P43, CouplingParam::P26, CouplingParam::P16]
            ),
            other => panic!("expected identifiability error, got {other:?}"),
        }
    }

    #[test]
    fn too_few_samples() {
        let samples = generate_synthetic(&cubic_couplings(), &default_battery()[..1], 0.0, 0).unwrap();
        assert!(matches!(fit(&samples, &ZfsMatrix::zero()), Err(Error::Input(_))));
    }

    #[test]
    fn sample_bound_enforced() {
        let e = StrainTensor::new(0.1, 0.0, 0.0, 0.0, 0.0, 0.0);
        assert!(ZfsSample::new(e, ZfsMatrix::zero(), None).is_err());
    }

    #[test]
    fn baseline_is_subtracted() {
        let h = cubic_couplings();
        let offset = ZfsMatrix::from_row_major([-400.0, 3.0, 1.0, 3.0, -400.0, 0.5, 1.0, 0.5, 800.0]).unwrap();
        let samples: Vec<ZfsSample> = generate_synthetic(&h, &default_battery(), 0.0, 0)
            .unwrap()
            .into_iter()
            .map(|s| ZfsSample {
                d_matrix: ZfsMatrix::new(s.d_matrix.matrix() + offset.matrix()).unwrap(),
                ..s
            })
            .collect();
        let r = fit(&samples, &offset).unwrap();
        for (a, b) in r.couplings.values().iter().zip(h.values()) {
            assert!((a - b).abs() <= 1e-9 * b.abs());
        }
    }

    #[test]
    fn dataset_requires_baseline() {
        let text = r#"[{"strain":{"exx":0.001,"eyy":0,"ezz":0,"eyz":0,"ezx":0,"exy":0},"d_matrix":[0,0,0,0,0,0,0,0,0]}]"#;
        assert!(matches!(Dataset::from_json(text), Err(Error::Input(_))));
        let strained_baseline = r#"[{"label":"baseline","strain":{"exx":0.001,"eyy":0,"ezz":0,"eyz":0,"ezx":0,"exy":0},"d_matrix":[0,0,0,0,0,0,0,0,0]}]"#;
        assert!(matches!(Dataset::from_json(strained_baseline), Err(Error::Input(_))));
    }
}
