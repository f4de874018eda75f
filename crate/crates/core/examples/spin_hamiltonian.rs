//! Spin-1 Hamiltonian of a strained divacancy: channel amplitudes, the 3×3
//! matrix, its eigenvalues and the two ODMR transition frequencies.

use spinstress::presets::PresetLibrary;
use spinstress::{
    build_hamiltonian, strain_hamiltonian_coefficients, transition_shifts, ChannelCoefficients,
    CouplingKind, StrainTensor,
};

fn main() -> spinstress::Result<()> {
    let lib = PresetLibrary::builtin()?;
    let h = lib.material("4h-sic-divacancy-hh")?.couplings(CouplingKind::Strain)?;

    // 0.1 % uniaxial strain along z plus a small basal shear
    let strain = StrainTensor::new(0.0, 0.0, 1e-3, 0.0, 0.0, 2e-4);
    let c = strain_hamiltonian_coefficients(h, &strain)?;
    for (label, v) in ChannelCoefficients::LABELS.iter().zip(c.to_vector().iter()) {
        println!("{label:<5} {v:10.4} MHz");
    }

    let ham = build_hamiltonian(&c);
    println!("hermitian: {}", ham.is_hermitian());
    for row in ham.matrix().row_iter() {
        let cells: Vec<String> = row.iter().map(|z| format!("{:8.4}{:+8.4}i", z.re, z.im)).collect();
        println!("  {}", cells.join("  "));
    }
    println!("eigenvalues: {:?}", ham.eigenvalues());

    let t = transition_shifts(1336.0, &c)?;
    println!("f+ = {:.4} MHz, f- = {:.4} MHz", t.f_plus, t.f_minus);
    Ok(())
}
