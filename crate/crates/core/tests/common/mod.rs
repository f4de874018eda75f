#![allow(dead_code)]

use nalgebra::{Matrix3, Rotation3, Unit, Vector3};
use nalgebra::Complex;
use proptest::prelude::*;
use spinstress::{CouplingKind, CouplingSet, StrainTensor, StressTensor};

pub type C64 = Complex<f64>;

pub fn rz(angle: f64) -> Matrix3<f64> {
    *Rotation3::from_axis_angle(&Vector3::z_axis(), angle).matrix()
}

pub fn rotation(axis: [f64; 3], angle: f64) -> Matrix3<f64> {
    let axis = Vector3::from(axis);
    let axis = if axis.norm() < 1e-6 { Vector3::z() } else { axis };
    *Rotation3::from_axis_angle(&Unit::new_normalize(axis), angle).matrix()
}

/// `exp(−iφSz)` in the (|+1⟩, |0⟩, |−1⟩) basis.
pub fn spin_rotation_z(angle: f64) -> Matrix3<C64> {
    Matrix3::from_diagonal(&Vector3::new(
        C64::from_polar(1.0, -angle),
        C64::new(1.0, 0.0),
        C64::from_polar(1.0, angle),
    ))
}

pub fn max_norm(m: &Matrix3<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn arb_rotation() -> impl Strategy<Value = Matrix3<f64>> {
    (prop::array::uniform3(-1.0f64..1.0), -std::f64::consts::PI..std::f64::consts::PI)
        .prop_map(|(axis, angle)| rotation(axis, angle))
}

pub fn arb_components(scale: f64) -> impl Strategy<Value = [f64; 6]> {
    prop::array::uniform6(-scale..scale)
}

pub fn arb_strain() -> impl Strategy<Value = StrainTensor> {
    arb_components(1e-3).prop_map(StrainTensor::from_components)
}

pub fn arb_stress() -> impl Strategy<Value = StressTensor> {
    arb_components(2.0).prop_map(StressTensor::from_components)
}

pub fn arb_strain_couplings() -> impl Strategy<Value = CouplingSet> {
    arb_components(10_000.0)
        .prop_map(|v| CouplingSet::exact(CouplingKind::Strain, v).unwrap())
}

pub fn arb_stress_couplings() -> impl Strategy<Value = CouplingSet> {
    arb_components(20.0).prop_map(|v| CouplingSet::exact(CouplingKind::Stress, v).unwrap())
}

pub fn assert_close(a: f64, b: f64, tol: f64, what: &str) {
    assert!((a - b).abs() <= tol, "{what}: {a} vs {b} (tolerance {tol})");
}
