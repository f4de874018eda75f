//! Strain couplings `h` ↔ stress couplings `g` through the defect-frame
//! elastic tensor.
//!
//! For each of the six unit stresses the induced strain is pushed through
//! the strain form of the Hamiltonian; `g` is then the least-squares
//! solution matching those channel amplitudes to the stress form (30
//! equations, 6 unknowns). The fit residual is zero exactly when the
//! elastic tensor respects the C3v setting of the frame, so it doubles as
//! a frame validator.

use nalgebra::{DMatrix, Matrix6, SMatrix};
use serde::Serialize;

use crate::coupling::{coefficient_block, CouplingKind, CouplingSet};
use crate::elasticity::{compliance, StiffnessMatrix};
use crate::error::{Error, Result};
use crate::tensor::{Frame, StrainTensor, StressTensor};

/// Relative residual separating symmetry breaking from rounding noise.
pub const RESIDUAL_TOLERANCE: f64 = 1e-6;

type Stacked = SMatrix<f64, 30, 6>;

#[derive(Debug, Clone, Serialize)]
pub struct ConversionReport {
    /// Converted couplings with propagated standard errors.
    pub couplings: CouplingSet,
    /// Maps the input coupling vector onto the output coupling vector, in
    /// [`crate::coupling::CouplingParam::ALL`] order.
    #[serde(serialize_with = "serialize_matrix6")]
    pub linear_map: Matrix6<f64>,
    /// Residual of the pattern fit relative to the largest channel amplitude.
    pub residual: f64,
}

fn serialize_matrix6<S: serde::Serializer>(m: &Matrix6<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<[f64; 6]> = (0..6)
        .map(|i| std::array::from_fn(|j| m[(i, j)]))
        .collect();
    rows.serialize(s)
}

/// Stacks coefficient blocks of six deformations into a 30×6 matrix.
fn stack(deformations: &[[f64; 6]; 6]) -> Stacked {
    let mut out = Stacked::zeros();
    for (k, comps) in deformations.iter().enumerate() {
        out.fixed_view_mut::<5, 6>(5 * k, 0)
            .copy_from(&coefficient_block(*comps));
    }
    out
}

/// Solves `pattern · map = induced` in the least-squares sense and applies
/// the map to `input`.
fn convert(
    input: &CouplingSet,
    pattern: Stacked,
    induced: Stacked,
    target: CouplingKind,
) -> Result<ConversionReport> {
    let a = DMatrix::from_column_slice(30, 6, pattern.as_slice());
    let b = DMatrix::from_column_slice(30, 6, induced.as_slice());
    let svd = a.svd(true, true);
    let map = svd
        .solve(&b, 1e-14)
        .map_err(|e| Error::Numerical(format!("pattern fit failed: {e}")))?;
    let linear_map = Matrix6::from_column_slice(map.as_slice());

    let h = input.value_vector();
    let rhs = induced * h;
    let g = linear_map * h;
    let scale = rhs.amax();
    let residual = if scale > 0.0 {
        (pattern * g - rhs).amax() / scale
    } else {
        0.0
    };
    if residual > RESIDUAL_TOLERANCE {
        return Err(Error::Symmetry {
            residual,
            tolerance: RESIDUAL_TOLERANCE,
        });
    }

    let sigma_h = input.error_vector();
    let errors: [f64; 6] = std::array::from_fn(|i| {
        (0..6)
            .map(|j| (linear_map[(i, j)] * sigma_h[j]).powi(2))
            .sum::<f64>()
            .sqrt()
    });
    let couplings = CouplingSet::new(target, g.into(), errors)?;
    Ok(ConversionReport {
        couplings,
        linear_map,
        residual,
    })
}

fn expect_defect(c: &StiffnessMatrix) -> Result<()> {
    if c.frame() == Frame::Defect {
        Ok(())
    } else {
        Err(Error::Contract(
            "coupling conversion needs the stiffness matrix in the defect frame".into(),
        ))
    }
}

/// `h` (MHz/strain) → `g` (MHz/GPa) via `ε = C⁻¹σ`.
pub fn strain_to_stress_couplings(
    h: &CouplingSet,
    c_defect: &StiffnessMatrix,
) -> Result<ConversionReport> {
    h.expect_kind(CouplingKind::Strain)?;
    expect_defect(c_defect)?;
    let s = compliance(c_defect)?;
    let unit_stress: [[f64; 6]; 6] = std::array::from_fn(|k| StressTensor::unit(k).components());
    let induced_strain: [[f64; 6]; 6] = std::array::from_fn(|k| {
        let sigma = StressTensor::unit(k);
        StrainTensor::from_voigt(&(s.matrix() * sigma.voigt())).components()
    });
    convert(
        h,
        stack(&unit_stress),
        stack(&induced_strain),
        CouplingKind::Stress,
    )
}

/// `g` (MHz/GPa) → `h` (MHz/strain) via `σ = C ε`.
pub fn stress_to_strain_couplings(
    g: &CouplingSet,
    c_defect: &StiffnessMatrix,
) -> Result<ConversionReport> {
    g.expect_kind(CouplingKind::Stress)?;
    expect_defect(c_defect)?;
    let unit_strain: [[f64; 6]; 6] = std::array::from_fn(|k| StrainTensor::unit(k).components());
    let induced_stress: [[f64; 6]; 6] = std::array::from_fn(|k| {
        let eps = StrainTensor::unit(k);
        StressTensor::from_voigt(&(c_defect.matrix() * eps.voigt())).components()
    });
    convert(
        g,
        stack(&unit_strain),
        stack(&induced_stress),
        CouplingKind::Strain,
    )
}
