//! Cubic 3C-SiC stiffness expressed in the [111] defect frame, checked
//! against an explicit rank-4 rotation, plus a stress → strain round trip.

use spinstress::elasticity::ElasticTensor4;
use spinstress::{
    compliance, rotate_stiffness, stiffness_cubic, strain_from_stress, stress_from_strain,
    DefectFrame, StressTensor,
};

fn main() -> spinstress::Result<()> {
    let crystal = stiffness_cubic(390.0, 142.0, 256.0)?;
    let frame = DefectFrame::cubic_111();
    let defect = rotate_stiffness(&crystal, &frame)?;

    println!("defect-frame stiffness (GPa), class {:?}", defect.symmetry_class());
    for row in defect.matrix().row_iter() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:8.2}")).collect();
        println!("  {}", cells.join(" "));
    }

    let full = ElasticTensor4::from_voigt(crystal.matrix()).rotated(&frame.rotation());
    let diff = (full.to_voigt() - defect.matrix()).amax();
    println!("Bond matrix vs rank-4 sum: max difference {diff:.2e} GPa");

    let stress = StressTensor::new(0.0, 0.0, 1.0, 0.0, 0.0, 0.0);
    let strain = strain_from_stress(&compliance(&defect)?, &stress)?;
    println!("1 GPa along [111] gives strain {:?}", strain.components());
    let back = stress_from_strain(&defect, &strain)?;
    println!("and back: {:?}", back.components());
    Ok(())
}
