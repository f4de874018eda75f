//! Symmetric rank-2 strain and stress tensors with Voigt views.
//!
//! Both tensors store their six independent Cartesian components in the
//! order `(xx, yy, zz, yz, zx, xy)`. The Voigt views differ: strain carries
//! engineering shears `(.., 2ε_yz, 2ε_zx, 2ε_xy)`, stress does not.
//!
//! Strain is dimensionless (negative = compressive); stress is in GPa.

use nalgebra::{Matrix3, Vector6};
use serde::{Deserialize, Serialize};

/// Reference frame a tensor or elastic matrix is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Frame {
    /// Lattice frame {XYZ} of the host crystal.
    Crystal,
    /// Local frame {xyz} of the defect, z along the C3 axis.
    Defect,
}

/// Index pairs of the Voigt ordering.
pub const VOIGT_PAIRS: [(usize, usize); 6] = [(0, 0), (1, 1), (2, 2), (1, 2), (2, 0), (0, 1)];

/// Voigt index of the Cartesian pair `(i, j)`.
pub fn voigt_index(i: usize, j: usize) -> usize {
    match (i.min(j), i.max(j)) {
        (0, 0) => 0,
        (1, 1) => 1,
        (2, 2) => 2,
        (1, 2) => 3,
        (0, 2) => 4,
        (0, 1) => 5,
        _ => panic!("cartesian index out of range: ({i}, {j})"),
    }
}

macro_rules! symmetric_tensor {
    ($name:ident, $shear_factor:expr, [$xx:ident, $yy:ident, $zz:ident, $yz:ident, $zx:ident, $xy:ident]) => {
        impl $name {
            pub fn new($xx: f64, $yy: f64, $zz: f64, $yz: f64, $zx: f64, $xy: f64) -> Self {
                Self {
                    components: [$xx, $yy, $zz, $yz, $zx, $xy],
                    frame: Frame::Defect,
                }
            }

            pub fn zero() -> Self {
                Self::from_components([0.0; 6])
            }

            /// Builds the tensor from Cartesian components `(xx, yy, zz, yz, zx, xy)`.
            pub fn from_components(components: [f64; 6]) -> Self {
                Self {
                    components,
                    frame: Frame::Defect,
                }
            }

            /// Unit tensor along one Voigt direction (Cartesian component = 1).
            pub fn unit(voigt: usize) -> Self {
                let mut c = [0.0; 6];
                c[voigt] = 1.0;
                Self::from_components(c)
            }

            /// Symmetrized 3×3 matrix. Asymmetric input is averaged with its
            /// transpose.
            pub fn from_matrix(m: &Matrix3<f64>) -> Self {
                let mut c = [0.0; 6];
                for (k, &(i, j)) in VOIGT_PAIRS.iter().enumerate() {
                    c[k] = 0.5 * (m[(i, j)] + m[(j, i)]);
                }
                Self::from_components(c)
            }

            pub fn from_voigt(v: &Vector6<f64>) -> Self {
                let mut c = [0.0; 6];
                for k in 0..6 {
                    c[k] = if k < 3 { v[k] } else { v[k] / $shear_factor };
                }
                Self::from_components(c)
            }

            pub fn in_frame(mut self, frame: Frame) -> Self {
                self.frame = frame;
                self
            }

            pub fn frame(&self) -> Frame {
                self.frame
            }

            /// Cartesian components `(xx, yy, zz, yz, zx, xy)`.
            pub fn components(&self) -> [f64; 6] {
                self.components
            }

            pub fn get(&self, i: usize, j: usize) -> f64 {
                self.components[voigt_index(i, j)]
            }

            pub fn $xx(&self) -> f64 {
                self.components[0]
            }
            pub fn $yy(&self) -> f64 {
                self.components[1]
            }
            pub fn $zz(&self) -> f64 {
                self.components[2]
            }
            pub fn $yz(&self) -> f64 {
                self.components[3]
            }
            pub fn $zx(&self) -> f64 {
                self.components[4]
            }
            pub fn $xy(&self) -> f64 {
                self.components[5]
            }

            pub fn matrix(&self) -> Matrix3<f64> {
                let c = &self.components;
                Matrix3::new(c[0], c[5], c[4], c[5], c[1], c[3], c[4], c[3], c[2])
            }

            pub fn voigt(&self) -> Vector6<f64> {
                let c = &self.components;
                Vector6::new(
                    c[0],
                    c[1],
                    c[2],
                    $shear_factor * c[3],
                    $shear_factor * c[4],
                    $shear_factor * c[5],
                )
            }

            /// Components in the frame reached by the orthogonal map `r`
            /// (`T' = R T Rᵀ`). The frame tag is left to the caller.
            pub fn rotated(&self, r: &Matrix3<f64>) -> Self {
                let m = r * self.matrix() * r.transpose();
                Self {
                    frame: self.frame,
                    ..Self::from_matrix(&m)
                }
            }

            pub fn max_abs(&self) -> f64 {
                self.components.iter().fold(0.0, |a, b| a.max(b.abs()))
            }

            pub fn scaled(&self, factor: f64) -> Self {
                Self {
                    components: self.components.map(|c| c * factor),
                    frame: self.frame,
                }
            }
        }
    };
}

/// Symmetric strain tensor (dimensionless).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrainTensor {
    components: [f64; 6],
    frame: Frame,
}

/// Symmetric stress tensor in GPa.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StressTensor {
    components: [f64; 6],
    frame: Frame,
}

symmetric_tensor!(StrainTensor, 2.0, [exx, eyy, ezz, eyz, ezx, exy]);
symmetric_tensor!(StressTensor, 1.0, [sxx, syy, szz, syz, szx, sxy]);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strain_voigt_doubles_shears() {
        let e = StrainTensor::new(1.0, 2.0, 3.0, 4.0, 5.0, 6.0);
        assert_eq!(
            e.voigt(),
            Vector6::new(1.0, 2.0, 3.0, 8.0, 10.0, 12.0)
        );
        assert_eq!(StrainTensor::from_voigt(&e.voigt()), e);
    }

    #[test]
    fn stress_voigt_is_plain() {
        let s = StressTensor::new(1.0, 2.0, 3.0, 4.0, 5.0, 6.0);
        assert_eq!(s.voigt(), Vector6::new(1.0, 2.0, 3.0, 4.0, 5.0, 6.0));
    }

    #[test]
    fn matrix_is_symmetric_and_indexed() {
        let e = StrainTensor::new(1.0, 2.0, 3.0, 4.0, 5.0, 6.0);
        let m = e.matrix();
        assert_eq!(m, m.transpose());
        assert_eq!(m[(1, 2)], 4.0);
        assert_eq!(m[(2, 0)], 5.0);
        assert_eq!(m[(0, 1)], 6.0);
        assert_eq!(e.get(2, 1), 4.0);
        assert_eq!(StrainTensor::from_matrix(&m), e);
    }

    #[test]
    fn rotation_about_z_by_quarter_turn_swaps_axes() {
        let e = StrainTensor::new(1.0, 0.0, 0.0, 0.0, 0.0, 0.0);
        let r = Matrix3::new(0.0, -1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0);
        let rotated = e.rotated(&r);
        assert!((rotated.eyy() - 1.0).abs() < 1e-15);
        assert!(rotated.exx().abs() < 1e-15);
    }
}
