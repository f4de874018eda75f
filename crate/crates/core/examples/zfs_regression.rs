//! Recovers strain couplings from synthetic D-tensor data, then shows what a
//! battery with a single strain direction can and cannot determine.

use spinstress::presets::PresetLibrary;
use spinstress::regression::{battery, default_battery};
use spinstress::{fit, generate_synthetic, CouplingKind, CouplingParam, Error, ZfsMatrix};

fn main() -> spinstress::Result<()> {
    let lib = PresetLibrary::builtin()?;
    let h = lib.material("4h-sic-divacancy-hh")?.couplings(CouplingKind::Strain)?;

    let samples = generate_synthetic(h, &default_battery(), 0.005, 11)?;
    let result = fit(&samples, &ZfsMatrix::zero())?;
    println!(
        "{} samples, condition number {:.2}",
        result.sample_count, result.condition_number
    );
    for p in CouplingParam::ALL {
        println!(
            "  {:>4}: fitted {:10.2} ± {:5.2}   true {:8.1}",
            p.strain_label(),
            result.couplings.value(p),
            result.couplings.error(p),
            h.value(p)
        );
    }

    let exx_only = generate_synthetic(h, &battery(&[0.001, 0.002], &[0]), 0.0, 0)?;
    match fit(&exx_only, &ZfsMatrix::zero()) {
        Err(Error::Identifiability { unresolved }) => {
            let names: Vec<String> = unresolved.iter().map(|p| p.strain_label()).collect();
            println!("exx-only battery leaves {} undetermined", names.join(", "));
        }
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
