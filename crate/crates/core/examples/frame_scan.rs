//! Scans the six mirror-plane x axes of a [111] defect in cubic SiC and a
//! frame that breaks the mirror symmetry.

use spinstress::presets::PresetLibrary;
use spinstress::{
    rotate_stiffness, strain_to_stress_couplings, CouplingKind, CouplingParam, DefectFrame, Error,
};

fn main() -> spinstress::Result<()> {
    let lib = PresetLibrary::builtin()?;
    let m = lib.material("3c-sic-divacancy")?;
    let h = m.couplings(CouplingKind::Strain)?;
    let crystal = m.stiffness_crystal()?;

    let mut frames = DefectFrame::cubic_111_mirror_settings().to_vec();
    frames.push(DefectFrame::new([1.0, 1.0, 1.0], [1.0, -1.0, 0.0])?);

    for frame in frames {
        let x: Vec<String> = frame.x.iter().map(|v| format!("{:+.3}", v)).collect();
        let c = rotate_stiffness(&crystal, &frame)?;
        match strain_to_stress_couplings(h, &c) {
            Ok(report) => {
                let g: Vec<String> = CouplingParam::ALL
                    .iter()
                    .map(|&p| format!("{:7.3}", report.couplings.value(p)))
                    .collect();
                println!("x = [{}]  g = {}", x.join(", "), g.join(" "));
            }
            Err(Error::Symmetry { residual, .. }) => {
                println!("x = [{}]  not a C3v setting (residual {residual:.3})", x.join(", "));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(())
}
