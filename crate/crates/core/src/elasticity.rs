//! Elastic stiffness and compliance in Voigt notation, and their rotation
//! from the crystal frame {XYZ} into a defect frame {xyz}.
//!
//! Voigt ordering is `(xx, yy, zz, yz, zx, xy)`. Stress vectors are plain;
//! strain vectors carry engineering shears, so `σ = C ε` and `ε = S σ` with
//! `S = C⁻¹` hold directly on Voigt vectors.
//!
//! Two independent rotation routes are provided: the 6×6 Bond transform
//! ([`rotate_voigt`]) and a direct rank-4 index sum ([`ElasticTensor4`]).

use nalgebra::{Matrix3, Matrix6, SymmetricEigen, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{voigt_index, Frame, StrainTensor, StressTensor, VOIGT_PAIRS};

const FRAME_TOL: f64 = 1e-12;
const SYMMETRY_TOL: f64 = 1e-9;
const MAX_CONDITION: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymmetryClass {
    Cubic,
    Hexagonal,
    Trigonal,
    General,
}

/// 6×6 Voigt stiffness matrix in GPa.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StiffnessMatrix {
    matrix: Matrix6<f64>,
    frame: Frame,
    class: SymmetryClass,
}

impl StiffnessMatrix {
    /// Checks symmetry (1e-9 relative) and positive definiteness.
    pub fn new(matrix: Matrix6<f64>, frame: Frame, class: SymmetryClass) -> Result<Self> {
        if matrix.iter().any(|x| !x.is_finite()) {
            return Err(Error::Validation("stiffness matrix has non-finite entries".into()));
        }
        let scale = matrix.amax();
        if (matrix - matrix.transpose()).amax() > SYMMETRY_TOL * scale {
            return Err(Error::Validation("stiffness matrix is not symmetric".into()));
        }
        let matrix = 0.5 * (matrix + matrix.transpose());
        let min_eig = SymmetricEigen::new(matrix).eigenvalues.min();
        if min_eig <= 0.0 {
            return Err(Error::Validation(format!(
                "stiffness matrix is not positive definite (smallest eigenvalue {min_eig:.6} GPa)"
            )));
        }
        Ok(Self { matrix, frame, class })
    }

    pub fn matrix(&self) -> &Matrix6<f64> {
        &self.matrix
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn symmetry_class(&self) -> SymmetryClass {
        self.class
    }

    /// Entry by 1-based Voigt indices, as in `C11`, `C44`.
    pub fn c(&self, i: usize, j: usize) -> f64 {
        self.matrix[(i - 1, j - 1)]
    }

    /// Applies the orthogonal map `r` via the Bond transform, tagging the
    /// result with `frame`. The symmetry class is not tracked.
    pub fn transformed(&self, r: &Matrix3<f64>, frame: Frame) -> Self {
        Self {
            matrix: rotate_voigt(&self.matrix, r),
            frame,
            class: SymmetryClass::General,
        }
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.matrix * factor, self.frame, self.class)
    }

    pub fn eigenvalues(&self) -> [f64; 6] {
        let ev = SymmetricEigen::new(self.matrix).eigenvalues;
        let mut out: [f64; 6] = ev.as_slice().try_into().expect("six eigenvalues");
        out.sort_by(f64::total_cmp);
        out
    }
}

/// 6×6 Voigt compliance matrix in GPa⁻¹.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplianceMatrix {
    matrix: Matrix6<f64>,
    frame: Frame,
}

impl ComplianceMatrix {
    pub fn matrix(&self) -> &Matrix6<f64> {
        &self.matrix
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    /// Entry by 1-based Voigt indices, as in `S13`.
    pub fn s(&self, i: usize, j: usize) -> f64 {
        self.matrix[(i - 1, j - 1)]
    }
}

/// Right-handed orthonormal triad of the defect frame in crystal coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DefectFrame {
    pub x: [f64; 3],
    pub y: [f64; 3],
    pub z: [f64; 3],
}

impl DefectFrame {
    /// Frame with the given z and x directions (normalized here); `y = z × x`.
    pub fn new(z: [f64; 3], x: [f64; 3]) -> Result<Self> {
        let z = unit(z, "z axis")?;
        let x = unit(x, "x axis")?;
        let dot = x.dot(&z);
        if dot.abs() > FRAME_TOL {
            return Err(Error::Validation(format!(
                "frame x axis is not orthogonal to z axis (x·z = {dot:.3e})"
            )));
        }
        let y = z.cross(&x);
        Ok(Self {
            x: x.into(),
            y: y.into(),
            z: z.into(),
        })
    }

    /// Validates a fully specified triad: unit length, orthogonality and
    /// right-handedness to 1e-12.
    pub fn from_axes(x: [f64; 3], y: [f64; 3], z: [f64; 3]) -> Result<Self> {
        let frame = Self { x, y, z };
        frame.validate()?;
        Ok(frame)
    }

    /// Frame whose rows are the rows of `r`.
    pub fn from_rotation(r: &Matrix3<f64>) -> Result<Self> {
        let row = |i: usize| [r[(i, 0)], r[(i, 1)], r[(i, 2)]];
        Self::from_axes(row(0), row(1), row(2))
    }

    pub fn validate(&self) -> Result<()> {
        let r = self.rotation();
        let defect = (r * r.transpose() - Matrix3::identity()).amax();
        if defect > FRAME_TOL {
            return Err(Error::Validation(format!(
                "defect frame is not orthonormal (max |R Rᵀ - 1| = {defect:.3e})"
            )));
        }
        let det = r.determinant();
        if (det - 1.0).abs() > FRAME_TOL {
            return Err(Error::Validation(format!(
                "defect frame is not right-handed (det = {det:.6})"
            )));
        }
        Ok(())
    }

    pub fn identity() -> Self {
        Self {
            x: [1.0, 0.0, 0.0],
            y: [0.0, 1.0, 0.0],
            z: [0.0, 0.0, 1.0],
        }
    }

    /// 3C divacancy frame: z = [111], x = [1̄1̄2], y = [11̄0]. The mirror plane
    /// is xz.
    pub fn cubic_111() -> Self {
        Self::new([1.0, 1.0, 1.0], [-1.0, -1.0, 2.0]).expect("orthogonal by construction")
    }

    /// Hexagonal frame: z along the c axis, x along crystal X.
    pub fn hexagonal_c_axis() -> Self {
        Self::identity()
    }

    /// The six x-axis choices in the {11̄0} mirror planes containing [111],
    /// each giving a C3v-compatible setting.
    pub fn cubic_111_mirror_settings() -> [Self; 6] {
        let z = [1.0, 1.0, 1.0];
        [
            [-1.0, -1.0, 2.0],
            [-1.0, 2.0, -1.0],
            [2.0, -1.0, -1.0],
            [1.0, 1.0, -2.0],
            [1.0, -2.0, 1.0],
            [-2.0, 1.0, 1.0],
        ]
        .map(|x| Self::new(z, x).expect("orthogonal by construction"))
    }

    /// Maps crystal coordinates to defect coordinates (rows are x, y, z).
    pub fn rotation(&self) -> Matrix3<f64> {
        Matrix3::from_rows(&[
            Vector3::from(self.x).transpose(),
            Vector3::from(self.y).transpose(),
            Vector3::from(self.z).transpose(),
        ])
    }
}

fn unit(v: [f64; 3], what: &str) -> Result<Vector3<f64>> {
    let v = Vector3::from(v);
    let n = v.norm();
    if !(n > 0.0 && n.is_finite()) {
        return Err(Error::Validation(format!("{what} must be a non-zero finite vector")));
    }
    Ok(v / n)
}

/// Cubic stiffness in the crystal frame.
pub fn stiffness_cubic(c11: f64, c12: f64, c44: f64) -> Result<StiffnessMatrix> {
    if !(c11 - c12 > 0.0) {
        return Err(Error::Validation(format!(
            "cubic Born stability violated: C11 - C12 > 0 (C11 = {c11}, C12 = {c12})"
        )));
    }
    if !(c11 + 2.0 * c12 > 0.0) {
        return Err(Error::Validation(format!(
            "cubic Born stability violated: C11 + 2 C12 > 0 (C11 = {c11}, C12 = {c12})"
        )));
    }
    if !(c44 > 0.0) {
        return Err(Error::Validation(format!(
            "cubic Born stability violated: C44 > 0 (C44 = {c44})"
        )));
    }
    let mut m = Matrix6::zeros();
    for i in 0..3 {
        for j in 0..3 {
            m[(i, j)] = if i == j { c11 } else { c12 };
        }
        m[(i + 3, i + 3)] = c44;
    }
    StiffnessMatrix::new(m, Frame::Crystal, SymmetryClass::Cubic)
}

/// Hexagonal stiffness with z along the c axis; `C66 = (C11 − C12)/2`.
pub fn stiffness_hexagonal(
    c11: f64,
    c12: f64,
    c13: f64,
    c33: f64,
    c44: f64,
) -> Result<StiffnessMatrix> {
    if !(c44 > 0.0) {
        return Err(Error::Validation(format!(
            "hexagonal Born stability violated: C44 > 0 (C44 = {c44})"
        )));
    }
    if !(c11 > c12.abs()) {
        return Err(Error::Validation(format!(
            "hexagonal Born stability violated: C11 > |C12| (C11 = {c11}, C12 = {c12})"
        )));
    }
    if !(c33 * (c11 + c12) > 2.0 * c13 * c13) {
        return Err(Error::Validation(format!(
            "hexagonal Born stability violated: C33 (C11 + C12) > 2 C13^2 \
             ({} <= {})",
            c33 * (c11 + c12),
            2.0 * c13 * c13
        )));
    }
    let mut m = Matrix6::zeros();
    m[(0, 0)] = c11;
    m[(1, 1)] = c11;
    m[(2, 2)] = c33;
    m[(0, 1)] = c12;
    m[(1, 0)] = c12;
    m[(0, 2)] = c13;
    m[(2, 0)] = c13;
    m[(1, 2)] = c13;
    m[(2, 1)] = c13;
    m[(3, 3)] = c44;
    m[(4, 4)] = c44;
    m[(5, 5)] = 0.5 * (c11 - c12);
    StiffnessMatrix::new(m, Frame::Crystal, SymmetryClass::Hexagonal)
}

/// Bond matrix `M` with `σ'_voigt = M σ_voigt` for `σ' = R σ Rᵀ`.
///
/// Entry `(α, β)` for `α = (i, j)`, `β = (k, l)` is `R_ik R_jl`, plus
/// `R_il R_jk` when `k ≠ l` (both off-diagonal stress entries fold into one
/// Voigt slot).
pub fn bond_matrix(r: &Matrix3<f64>) -> Matrix6<f64> {
    let mut m = Matrix6::zeros();
    for (a, &(i, j)) in VOIGT_PAIRS.iter().enumerate() {
        for (b, &(k, l)) in VOIGT_PAIRS.iter().enumerate() {
            m[(a, b)] = r[(i, k)] * r[(j, l)];
            if k != l {
                m[(a, b)] += r[(i, l)] * r[(j, k)];
            }
        }
    }
    m
}

/// `C' = M C Mᵀ` with `M` the Bond matrix of `r`.
pub fn rotate_voigt(c: &Matrix6<f64>, r: &Matrix3<f64>) -> Matrix6<f64> {
    let m = bond_matrix(r);
    m * c * m.transpose()
}

/// Full rank-4 elastic tensor `C_ijkl`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElasticTensor4(pub [[[[f64; 3]; 3]; 3]; 3]);

impl ElasticTensor4 {
    pub fn from_voigt(c: &Matrix6<f64>) -> Self {
        let mut t = [[[[0.0; 3]; 3]; 3]; 3];
        for (i, ti) in t.iter_mut().enumerate() {
            for (j, tij) in ti.iter_mut().enumerate() {
                for (k, tijk) in tij.iter_mut().enumerate() {
                    for (l, v) in tijk.iter_mut().enumerate() {
                        *v = c[(voigt_index(i, j), voigt_index(k, l))];
                    }
                }
            }
        }
        Self(t)
    }

    pub fn to_voigt(&self) -> Matrix6<f64> {
        let mut c = Matrix6::zeros();
        for (a, &(i, j)) in VOIGT_PAIRS.iter().enumerate() {
            for (b, &(k, l)) in VOIGT_PAIRS.iter().enumerate() {
                c[(a, b)] = self.0[i][j][k][l];
            }
        }
        c
    }

    /// `C'_ijkl = R_ia R_jb R_kc R_ld C_abcd` by explicit summation.
    pub fn rotated(&self, r: &Matrix3<f64>) -> Self {
        let mut out = [[[[0.0; 3]; 3]; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let mut sum = 0.0;
                        for a in 0..3 {
                            for b in 0..3 {
                                for c in 0..3 {
                                    for d in 0..3 {
                                        sum += r[(i, a)]
                                            * r[(j, b)]
                                            * r[(k, c)]
                                            * r[(l, d)]
                                            * self.0[a][b][c][d];
                                    }
                                }
                            }
                        }
                        out[i][j][k][l] = sum;
                    }
                }
            }
        }
        Self(out)
    }

    /// `C_iijj` (summed).
    pub fn trace_iijj(&self) -> f64 {
        (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| self.0[i][i][j][j])
            .sum()
    }

    /// `C_ijij` (summed).
    pub fn trace_ijij(&self) -> f64 {
        (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| self.0[i][j][i][j])
            .sum()
    }
}

fn is_signed_permutation(r: &Matrix3<f64>) -> bool {
    r.iter()
        .all(|x| x.abs() < FRAME_TOL || (x.abs() - 1.0).abs() < FRAME_TOL)
}

fn rotated_class(class: SymmetryClass, r: &Matrix3<f64>) -> SymmetryClass {
    let z = Vector3::new(r[(2, 0)], r[(2, 1)], r[(2, 2)]);
    match class {
        SymmetryClass::Cubic if is_signed_permutation(r) => SymmetryClass::Cubic,
        SymmetryClass::Cubic
            if z.iter().all(|c| (c.abs() - 1.0 / 3f64.sqrt()).abs() < FRAME_TOL) =>
        {
            SymmetryClass::Trigonal
        }
        SymmetryClass::Hexagonal if (z[2].abs() - 1.0).abs() < FRAME_TOL => SymmetryClass::Hexagonal,
        _ => SymmetryClass::General,
    }
}

/// Crystal-frame stiffness expressed in the defect frame.
pub fn rotate_stiffness(c: &StiffnessMatrix, frame: &DefectFrame) -> Result<StiffnessMatrix> {
    if c.frame() != Frame::Crystal {
        return Err(Error::Contract(
            "rotate_stiffness expects a crystal-frame stiffness matrix".into(),
        ));
    }
    frame.validate()?;
    let r = frame.rotation();
    StiffnessMatrix::new(
        rotate_voigt(c.matrix(), &r),
        Frame::Defect,
        rotated_class(c.symmetry_class(), &r),
    )
}

/// Inverse of a stiffness matrix; fails above condition number 1e12.
pub fn compliance(c: &StiffnessMatrix) -> Result<ComplianceMatrix> {
    let ev = SymmetricEigen::new(*c.matrix()).eigenvalues;
    let (min, max) = (ev.min(), ev.max());
    if !(min > 0.0) || max / min > MAX_CONDITION {
        return Err(Error::Numerical(format!(
            "stiffness matrix is singular or ill-conditioned (eigenvalues {min:.3e} .. {max:.3e} GPa)"
        )));
    }
    let inv = c
        .matrix()
        .try_inverse()
        .ok_or_else(|| Error::Numerical("stiffness matrix inversion failed".into()))?;
    Ok(ComplianceMatrix {
        matrix: 0.5 * (inv + inv.transpose()),
        frame: c.frame(),
    })
}

/// `ε = S σ` on Voigt vectors; returned with tensor (half engineering) shears.
pub fn strain_from_stress(s: &ComplianceMatrix, stress: &StressTensor) -> Result<StrainTensor> {
    if s.frame() != stress.frame() {
        return Err(Error::Contract(format!(
            "compliance is in the {:?} frame but stress is in the {:?} frame",
            s.frame(),
            stress.frame()
        )));
    }
    Ok(StrainTensor::from_voigt(&(s.matrix() * stress.voigt())).in_frame(s.frame()))
}

/// `σ = C ε` on Voigt vectors.
pub fn stress_from_strain(c: &StiffnessMatrix, strain: &StrainTensor) -> Result<StressTensor> {
    if c.frame() != strain.frame() {
        return Err(Error::Contract(format!(
            "stiffness is in the {:?} frame but strain is in the {:?} frame",
            c.frame(),
            strain.frame()
        )));
    }
    Ok(StressTensor::from_voigt(&(c.matrix() * strain.voigt())).in_frame(c.frame()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sic_3c() -> StiffnessMatrix {
        stiffness_cubic(390.0, 142.0, 256.0).unwrap()
    }

    fn sic_4h() -> StiffnessMatrix {
        stiffness_hexagonal(507.0, 108.0, 52.0, 547.0, 159.0).unwrap()
    }

    #[test]
    fn cubic_entries() {
        let c = sic_3c();
        assert_eq!(c.c(1, 1), 390.0);
        assert_eq!(c.c(1, 2), 142.0);
        assert_eq!(c.c(4, 4), 256.0);
        assert_eq!(c.c(1, 4), 0.0);
        assert_eq!(c.frame(), Frame::Crystal);
    }

    #[test]
    fn cubic_stability_names_inequality() {
        let err = stiffness_cubic(1.0, 0.0, 0.0).unwrap_err();
        assert!(err.to_string().contains("C44 > 0"), "{err}");
        let err = stiffness_cubic(1.0, 2.0, 1.0).unwrap_err();
        assert!(err.to_string().contains("C11 - C12 > 0"), "{err}");
        let err = stiffness_cubic(1.0, -0.6, 1.0).unwrap_err();
        assert!(err.to_string().contains("C11 + 2 C12 > 0"), "{err}");
    }

    #[test]
    fn hexagonal_c66_and_stability() {
        assert_eq!(sic_4h().c(6, 6), 199.5);
        // 547·615 − 2·52² = 330997 GPa², stable
        assert_eq!(547.0 * (507.0 + 108.0) - 2.0 * 52.0 * 52.0, 330997.0);
        let err = stiffness_hexagonal(1.0, 1.0, 1.0, 1.0, 1.0).unwrap_err();
        assert!(err.to_string().contains("C11 > |C12|"), "{err}");
        let err = stiffness_hexagonal(2.0, 1.0, 5.0, 1.0, 1.0).unwrap_err();
        assert!(err.to_string().contains("2 C13^2"), "{err}");
    }

    #[test]
    fn identity_frame_leaves_stiffness_unchanged() {
        let rotated = rotate_stiffness(&sic_3c(), &DefectFrame::identity()).unwrap();
        assert_eq!(rotated.matrix(), sic_3c().matrix());
        assert_eq!(rotated.frame(), Frame::Defect);
        assert_eq!(rotated.symmetry_class(), SymmetryClass::Cubic);
    }

    #[test]
    fn cubic_quarter_turn_is_symmetry() {
        let frame = DefectFrame::new([0.0, 0.0, 1.0], [0.0, 1.0, 0.0]).unwrap();
        let rotated = rotate_stiffness(&sic_3c(), &frame).unwrap();
        assert!((rotated.matrix() - sic_3c().matrix()).amax() < 1e-10);
    }

    #[test]
    fn cubic_to_111_closed_forms() {
        let rotated = rotate_stiffness(&sic_3c(), &DefectFrame::cubic_111()).unwrap();
        assert!((rotated.c(3, 3) - 566.0).abs() < 1e-9);
        assert!((rotated.c(1, 1) - 522.0).abs() < 1e-9);
        assert_eq!(rotated.symmetry_class(), SymmetryClass::Trigonal);
        // mirror plane xz: no σ_zx → ε_xy coupling
        assert!(rotated.c(5, 6).abs() < 1e-9);
    }

    #[test]
    fn rotation_requires_crystal_frame_and_valid_axes() {
        let defect = rotate_stiffness(&sic_3c(), &DefectFrame::cubic_111()).unwrap();
        assert!(matches!(
            rotate_stiffness(&defect, &DefectFrame::identity()),
            Err(Error::Contract(_))
        ));
        let skew = DefectFrame {
            x: [1.0, 0.1, 0.0],
            y: [0.0, 1.0, 0.0],
            z: [0.0, 0.0, 1.0],
        };
        assert!(matches!(rotate_stiffness(&sic_3c(), &skew), Err(Error::Validation(_))));
        assert!(DefectFrame::new([0.0, 0.0, 1.0], [1.0, 0.0, 0.5]).is_err());
        let left = DefectFrame {
            x: [1.0, 0.0, 0.0],
            y: [0.0, -1.0, 0.0],
            z: [0.0, 0.0, 1.0],
        };
        assert!(left.validate().is_err());
    }

    #[test]
    fn hexagonal_compliance_closed_forms() {
        let s = compliance(&sic_4h()).unwrap();
        assert!((s.s(4, 4) - 1.0 / 159.0).abs() < 1e-15);
        assert!((s.s(3, 3) - 615.0 / 330997.0).abs() < 1e-15);
        assert!((s.s(1, 3) + 52.0 / 330997.0).abs() < 1e-15);
        assert!((s.matrix() * sic_4h().matrix() - Matrix6::identity()).amax() < 1e-9);
    }

    #[test]
    fn identity_stiffness_inverts_to_identity() {
        let c = StiffnessMatrix::new(Matrix6::identity(), Frame::Crystal, SymmetryClass::General).unwrap();
        assert_eq!(*compliance(&c).unwrap().matrix(), Matrix6::identity());
    }

    #[test]
    fn ill_conditioned_stiffness_is_numerical_error() {
        let mut m = Matrix6::identity();
        m[(5, 5)] = 1e-13;
        let c = StiffnessMatrix::new(m, Frame::Crystal, SymmetryClass::General).unwrap();
        assert!(matches!(compliance(&c), Err(Error::Numerical(_))));
    }

    #[test]
    fn non_positive_definite_rejected() {
        let mut m = Matrix6::identity();
        m[(0, 1)] = 2.0;
        m[(1, 0)] = 2.0;
        assert!(StiffnessMatrix::new(m, Frame::Crystal, SymmetryClass::General).is_err());
    }

    #[test]
    fn uniaxial_stress_on_hexagonal() {
        let s = compliance(&sic_4h()).unwrap();
        let e = strain_from_stress(&s, &StressTensor::new(0.0, 0.0, 1.0, 0.0, 0.0, 0.0).in_frame(Frame::Crystal)).unwrap();
        assert!((e.ezz() - 1.858e-3).abs() < 5e-7);
        assert!((e.exx() + 1.571e-4).abs() < 5e-8);
        assert_eq!(e.exx(), e.eyy());
        assert_eq!([e.eyz(), e.ezx(), e.exy()], [0.0; 3]);

        let e = strain_from_stress(&s, &StressTensor::new(0.0, 0.0, 0.0, 0.0, 1.0, 0.0).in_frame(Frame::Crystal)).unwrap();
        assert!((e.ezx() - 1.0 / 318.0).abs() < 1e-15);
        assert!((e.ezx() - 3.145e-3).abs() < 5e-7);
    }

    #[test]
    fn zero_stress_zero_strain_and_frame_mismatch() {
        let s = compliance(&sic_4h()).unwrap();
        let e = strain_from_stress(&s, &StressTensor::zero().in_frame(Frame::Crystal)).unwrap();
        assert_eq!(e.components(), [0.0; 6]);
        assert!(matches!(
            strain_from_stress(&s, &StressTensor::zero()),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn rank4_round_trip() {
        let c = rotate_stiffness(&sic_3c(), &DefectFrame::cubic_111()).unwrap();
        let t = ElasticTensor4::from_voigt(c.matrix());
        assert_eq!(t.to_voigt(), *c.matrix());
        assert_eq!(t.0[0][2][2][0], c.c(5, 5));
    }
}
