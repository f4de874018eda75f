//! The six symmetry-allowed linear couplings of a C3v spin-1 center to
//! deformation, and the linear map from couplings to spin-operator channels.
//!
//! A [`CouplingSet`] holds either strain couplings `h` (MHz/strain) or
//! stress couplings `g` (MHz/GPa); both enter the Hamiltonian through the
//! same functional form, so one coefficient block serves both.

use std::fmt;

use nalgebra::{SMatrix, Vector6};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Linear map from the six couplings to the five channel amplitudes
/// (rows: `c_z, c_d, c_xy, c_xz, c_yz`; columns: [`CouplingParam::ALL`]).
pub type CoefficientBlock = SMatrix<f64, 5, 6>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CouplingParam {
    P41,
    P43,
    P25,
    P26,
    P15,
    P16,
}

impl CouplingParam {
    pub const ALL: [CouplingParam; 6] = [
        CouplingParam::P41,
        CouplingParam::P43,
        CouplingParam::P25,
        CouplingParam::P26,
        CouplingParam::P15,
        CouplingParam::P16,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    fn suffix(self) -> &'static str {
        match self {
            CouplingParam::P41 => "41",
            CouplingParam::P43 => "43",
            CouplingParam::P25 => "25",
            CouplingParam::P26 => "26",
            CouplingParam::P15 => "15",
            CouplingParam::P16 => "16",
        }
    }

    pub fn strain_label(self) -> String {
        format!("h{}", self.suffix())
    }

    pub fn stress_label(self) -> String {
        format!("g{}", self.suffix())
    }

    pub fn label(self, kind: CouplingKind) -> String {
        match kind {
            CouplingKind::Strain => self.strain_label(),
            CouplingKind::Stress => self.stress_label(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CouplingKind {
    /// `h` parameters, MHz per unit strain.
    Strain,
    /// `g` parameters, MHz per GPa.
    Stress,
}

impl CouplingKind {
    pub fn unit(self) -> &'static str {
        match self {
            CouplingKind::Strain => "MHz/strain",
            CouplingKind::Stress => "MHz/GPa",
        }
    }

    pub fn other(self) -> Self {
        match self {
            CouplingKind::Strain => CouplingKind::Stress,
            CouplingKind::Stress => CouplingKind::Strain,
        }
    }
}

impl fmt::Display for CouplingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CouplingKind::Strain => f.write_str("strain"),
            CouplingKind::Stress => f.write_str("stress"),
        }
    }
}

/// Six coupling constants with standard errors, ordered as
/// [`CouplingParam::ALL`] = `(41, 43, 25, 26, 15, 16)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingSet {
    kind: CouplingKind,
    values: [f64; 6],
    errors: [f64; 6],
}

impl CouplingSet {
    pub fn new(kind: CouplingKind, values: [f64; 6], errors: [f64; 6]) -> Result<Self> {
        if let Some(p) = CouplingParam::ALL.iter().find(|p| !values[p.index()].is_finite()) {
            return Err(Error::Validation(format!(
                "{} is not finite",
                p.label(kind)
            )));
        }
        if let Some(p) = CouplingParam::ALL
            .iter()
            .find(|p| !(errors[p.index()] >= 0.0 && errors[p.index()].is_finite()))
        {
            return Err(Error::Validation(format!(
                "standard error of {} must be finite and non-negative, got {}",
                p.label(kind),
                errors[p.index()]
            )));
        }
        Ok(Self { kind, values, errors })
    }

    /// Couplings without uncertainties.
    pub fn exact(kind: CouplingKind, values: [f64; 6]) -> Result<Self> {
        Self::new(kind, values, [0.0; 6])
    }

    pub fn zero(kind: CouplingKind) -> Self {
        Self {
            kind,
            values: [0.0; 6],
            errors: [0.0; 6],
        }
    }

    pub fn kind(&self) -> CouplingKind {
        self.kind
    }

    pub fn values(&self) -> [f64; 6] {
        self.values
    }

    pub fn errors(&self) -> [f64; 6] {
        self.errors
    }

    pub fn value(&self, p: CouplingParam) -> f64 {
        self.values[p.index()]
    }

    pub fn error(&self, p: CouplingParam) -> f64 {
        self.errors[p.index()]
    }

    pub fn value_vector(&self) -> Vector6<f64> {
        Vector6::from(self.values)
    }

    pub fn error_vector(&self) -> Vector6<f64> {
        Vector6::from(self.errors)
    }

    pub(crate) fn expect_kind(&self, kind: CouplingKind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::Contract(format!(
                "expected {kind} couplings, got {} couplings",
                self.kind
            )))
        }
    }
}

/// Coefficient block for a deformation given by its Cartesian components
/// `(xx, yy, zz, yz, zx, xy)` (strain or stress, tensor components).
///
/// ```text
/// c_z  = p41 (xx + yy) + p43 zz
/// c_xz = ½ [p26 zx − ½ p25 (xx − yy)]      c_yz = ½ (p26 yz + p25 xy)
/// c_d  = ½ [p16 zx − ½ p15 (xx − yy)]      c_xy = ½ (p16 yz + p15 xy)
/// ```
pub fn coefficient_block(components: [f64; 6]) -> CoefficientBlock {
    let [xx, yy, zz, yz, zx, xy] = components;
    let diff = xx - yy;
    let mut b = CoefficientBlock::zeros();
    // c_z
    b[(0, 0)] = xx + yy;
    b[(0, 1)] = zz;
    // c_d
    b[(1, 4)] = -0.25 * diff;
    b[(1, 5)] = 0.5 * zx;
    // c_xy
    b[(2, 4)] = 0.5 * xy;
    b[(2, 5)] = 0.5 * yz;
    // c_xz
    b[(3, 2)] = -0.25 * diff;
    b[(3, 3)] = 0.5 * zx;
    // c_yz
    b[(4, 2)] = 0.5 * xy;
    b[(4, 3)] = 0.5 * yz;
    b
}
