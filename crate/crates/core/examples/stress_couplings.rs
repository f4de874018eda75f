//! Strain couplings h to stress couplings g for the shipped presets, with
//! propagated uncertainties and the tabulated values for comparison.

use spinstress::presets::PresetLibrary;
use spinstress::{CouplingKind, CouplingParam};

fn main() -> spinstress::Result<()> {
    let lib = PresetLibrary::builtin()?;
    for material in lib.materials() {
        let report = material.convert()?;
        let h = material.couplings(CouplingKind::Strain)?;
        let tabulated = material.couplings(CouplingKind::Stress).ok();
        println!("{} (residual {:.1e})", material.name, report.residual);
        for p in CouplingParam::ALL {
            let g = &report.couplings;
            let mut line = format!(
                "  {:>4} = {:8.0} ± {:4.0} MHz/strain  ->  {:>4} = {:7.3} ± {:5.3} MHz/GPa",
                p.strain_label(),
                h.value(p),
                h.error(p),
                p.stress_label(),
                g.value(p),
                g.error(p)
            );
            if let Some(t) = tabulated {
                line += &format!("   (tabulated {:.2} ± {:.2})", t.value(p), t.error(p));
            }
            println!("{line}");
        }
    }
    Ok(())
}
