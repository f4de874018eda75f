//! Spin-strain and spin-stress coupling of C3v spin-1 defect qubits
//! (divacancy in 3C/4H SiC, NV in diamond).
//!
//! The crate is organized along the modelling pipeline:
//!
//! - [`spin`]: spin-1 operators, zero-field-splitting matrices and the
//!   deformation Hamiltonian in its six-parameter C3v form.
//! - [`elasticity`]: cubic and hexagonal stiffness, frame rotation,
//!   compliance and strain/stress conversion in Voigt notation.
//! - [`conversion`]: strain couplings `h` ↔ stress couplings `g`.
//! - [`regression`]: least-squares extraction of `h` from (strain, D) data.
//! - [`sensitivity`]: shot-noise-limited stress sensitivity.
//! - [`presets`]: shipped material and scenario presets.
//! - [`cli`]: the `spinstress` command-line front end.
//!
//! Runnable walkthroughs live in `examples/`; run e.g.
//! `cargo run -p spinstress --example stress_couplings`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod conversion;
pub mod coupling;
pub mod elasticity;
pub mod error;
pub mod presets;
pub mod regression;
pub mod sensitivity;
pub mod spin;
pub mod tensor;

pub use conversion::{strain_to_stress_couplings, stress_to_strain_couplings, ConversionReport};
pub use coupling::{CouplingKind, CouplingParam, CouplingSet};
pub use elasticity::{
    compliance, rotate_stiffness, stiffness_cubic, stiffness_hexagonal, strain_from_stress,
    stress_from_strain, ComplianceMatrix, DefectFrame, StiffnessMatrix, SymmetryClass,
};
pub use error::{Error, Result};
pub use regression::{design_row, fit, generate_synthetic, Dataset, FitResult, ZfsSample};
pub use sensitivity::{contrast, eta, scenario_table, BetaConvention, ReadoutScenario, Sensitivity};
pub use spin::{
    build_hamiltonian, decompose_zfs, spin_matrices, strain_hamiltonian_coefficients,
    stress_hamiltonian_coefficients, transition_shifts, ChannelCoefficients, SpinHamiltonian,
    ZfsMatrix,
};
pub use tensor::{Frame, StrainTensor, StressTensor};
