//! Spin-1 operator algebra and the deformation Hamiltonian of a C3v center.
//!
//! Basis order is fixed to `(|m=+1⟩, |0⟩, |−1⟩)`; the sign of the
//! off-diagonal entries of `Sy` depends on it. All Hamiltonians are stored
//! as `H/h` in MHz.
//!
//! A zero-field-splitting matrix `D` defines `H = Sᵀ·D·S`, which expands
//! over the operator basis as
//!
//! ```text
//! H = k·1 + c_z Sz² + c_d (Sy² − Sx²) + c_xy {Sx,Sy} + c_xz {Sx,Sz} + c_yz {Sy,Sz}
//! ```
//!
//! with `k = D_xx + D_yy`. The identity shift `k` is unobservable in
//! transition frequencies and is carried separately from the five channels.

use nalgebra::{Complex, Matrix3, SymmetricEigen, Vector5};
use serde::{Deserialize, Serialize};

use crate::coupling::{coefficient_block, CouplingKind, CouplingSet};
use crate::error::{Error, Result};
use crate::tensor::{Frame, StrainTensor, StressTensor};

pub type C64 = Complex<f64>;

const HERMITIAN_TOL: f64 = 1e-12;

/// 3×3 operator on the spin-1 space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinOperator(pub Matrix3<C64>);

impl SpinOperator {
    pub fn matrix(&self) -> &Matrix3<C64> {
        &self.0
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        is_hermitian(&self.0, tol)
    }

    /// Anticommutator `{A, B} = AB + BA`.
    pub fn anticommutator(&self, other: &SpinOperator) -> SpinOperator {
        SpinOperator(self.0 * other.0 + other.0 * self.0)
    }

    pub fn commutator(&self, other: &SpinOperator) -> SpinOperator {
        SpinOperator(self.0 * other.0 - other.0 * self.0)
    }

    pub fn squared(&self) -> SpinOperator {
        SpinOperator(self.0 * self.0)
    }
}

fn is_hermitian(m: &Matrix3<C64>, tol: f64) -> bool {
    (m - m.adjoint()).iter().all(|z| z.norm() <= tol)
}

/// `(Sx, Sy, Sz)` for S = 1 in the `(|+1⟩, |0⟩, |−1⟩)` basis.
pub fn spin_matrices() -> (SpinOperator, SpinOperator, SpinOperator) {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let z = C64::new(0.0, 0.0);
    let re = |x: f64| C64::new(x, 0.0);
    let im = |x: f64| C64::new(0.0, x);
    let sx = Matrix3::new(z, re(r), z, re(r), z, re(r), z, re(r), z);
    let sy = Matrix3::new(z, im(-r), z, im(r), z, im(-r), z, im(r), z);
    let sz = Matrix3::new(re(1.0), z, z, z, z, z, z, z, re(-1.0));
    (SpinOperator(sx), SpinOperator(sy), SpinOperator(sz))
}

/// The five channel operators, in the order of [`ChannelCoefficients::to_vector`]:
/// `Sz², Sy²−Sx², {Sx,Sy}, {Sx,Sz}, {Sy,Sz}`.
pub fn channel_operators() -> [SpinOperator; 5] {
    let (sx, sy, sz) = spin_matrices();
    [
        sz.squared(),
        SpinOperator(sy.squared().0 - sx.squared().0),
        sx.anticommutator(&sy),
        sx.anticommutator(&sz),
        sy.anticommutator(&sz),
    ]
}

/// Real symmetric zero-field-splitting matrix in MHz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 9]", into = "[f64; 9]")]
pub struct ZfsMatrix(Matrix3<f64>);

impl ZfsMatrix {
    /// Validates symmetry to 1e-12 relative to the largest entry.
    pub fn new(m: Matrix3<f64>) -> Result<Self> {
        if m.iter().any(|x| !x.is_finite()) {
            return Err(Error::Validation("D matrix has non-finite entries".into()));
        }
        let scale = m.amax().max(f64::MIN_POSITIVE);
        let asym = (m - m.transpose()).amax();
        if asym > 1e-12 * scale {
            return Err(Error::Validation(format!(
                "D matrix is not symmetric (max |D - Dᵀ| = {asym:.3e} MHz)"
            )));
        }
        Ok(Self(0.5 * (m + m.transpose())))
    }

    /// Row-major entries.
    pub fn from_row_major(entries: [f64; 9]) -> Result<Self> {
        Self::new(Matrix3::from_row_slice(&entries))
    }

    pub fn zero() -> Self {
        Self(Matrix3::zeros())
    }

    /// Traceless matrix whose Hamiltonian carries the given channels.
    pub fn from_channels(c: &ChannelCoefficients) -> Self {
        // trace = 3k/2 + c_z vanishes for k = -2 c_z / 3
        Self::from_parts(-2.0 * c.c_z / 3.0, c)
    }

    /// Inverse of [`decompose_zfs`]: the unique symmetric matrix with the
    /// given identity shift and channel amplitudes.
    pub fn from_parts(identity_shift: f64, c: &ChannelCoefficients) -> Self {
        let half = 0.5 * identity_shift;
        Self(Matrix3::new(
            half - c.c_d,
            c.c_xy,
            c.c_xz,
            c.c_xy,
            half + c.c_d,
            c.c_yz,
            c.c_xz,
            c.c_yz,
            half + c.c_z,
        ))
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    pub fn to_row_major(&self) -> [f64; 9] {
        let m = &self.0;
        [
            m[(0, 0)],
            m[(0, 1)],
            m[(0, 2)],
            m[(1, 0)],
            m[(1, 1)],
            m[(1, 2)],
            m[(2, 0)],
            m[(2, 1)],
            m[(2, 2)],
        ]
    }

    /// `Sᵀ·D·S` by direct contraction over Cartesian indices.
    pub fn hamiltonian(&self) -> SpinHamiltonian {
        let (sx, sy, sz) = spin_matrices();
        let s = [sx.0, sy.0, sz.0];
        let mut h = Matrix3::zeros();
        for i in 0..3 {
            for j in 0..3 {
                h += s[i] * s[j] * C64::new(self.0[(i, j)], 0.0);
            }
        }
        SpinHamiltonian(h)
    }
}

impl TryFrom<[f64; 9]> for ZfsMatrix {
    type Error = Error;
    fn try_from(v: [f64; 9]) -> Result<Self> {
        Self::from_row_major(v)
    }
}

impl From<ZfsMatrix> for [f64; 9] {
    fn from(d: ZfsMatrix) -> Self {
        d.to_row_major()
    }
}

impl std::ops::Sub for ZfsMatrix {
    type Output = ZfsMatrix;
    fn sub(self, rhs: ZfsMatrix) -> ZfsMatrix {
        ZfsMatrix(self.0 - rhs.0)
    }
}

/// Amplitudes (MHz) of the five spin-operator channels.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ChannelCoefficients {
    /// `Sz²`
    pub c_z: f64,
    /// `Sy² − Sx²`
    pub c_d: f64,
    /// `{Sx, Sy}`
    pub c_xy: f64,
    /// `{Sx, Sz}`
    pub c_xz: f64,
    /// `{Sy, Sz}`
    pub c_yz: f64,
}

impl ChannelCoefficients {
    pub const LABELS: [&'static str; 5] = ["c_z", "c_d", "c_xy", "c_xz", "c_yz"];
    pub const OPERATORS: [&'static str; 5] =
        ["Sz^2", "Sy^2-Sx^2", "{Sx,Sy}", "{Sx,Sz}", "{Sy,Sz}"];

    pub fn to_vector(&self) -> Vector5<f64> {
        Vector5::new(self.c_z, self.c_d, self.c_xy, self.c_xz, self.c_yz)
    }

    pub fn from_vector(v: &Vector5<f64>) -> Self {
        Self {
            c_z: v[0],
            c_d: v[1],
            c_xy: v[2],
            c_xz: v[3],
            c_yz: v[4],
        }
    }

    /// Channels after the mirror `y → −y`.
    pub fn mirrored_y(&self) -> Self {
        Self {
            c_xy: -self.c_xy,
            c_yz: -self.c_yz,
            ..*self
        }
    }

    /// Channels of `U H U†` with `U = exp(−i·angle·Sz)`: the `{Sx,Sz}`,
    /// `{Sy,Sz}` pair turns by `angle`, the quadrupolar pair by `2·angle`.
    pub fn rotated_about_z(&self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        let (s2, c2) = (2.0 * angle).sin_cos();
        Self {
            c_z: self.c_z,
            c_d: c2 * self.c_d + s2 * self.c_xy,
            c_xy: -s2 * self.c_d + c2 * self.c_xy,
            c_xz: c * self.c_xz - s * self.c_yz,
            c_yz: s * self.c_xz + c * self.c_yz,
        }
    }
}

/// Hermitian Hamiltonian `H/h` in MHz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinHamiltonian(pub Matrix3<C64>);

impl SpinHamiltonian {
    pub fn matrix(&self) -> &Matrix3<C64> {
        &self.0
    }

    pub fn is_hermitian(&self) -> bool {
        is_hermitian(&self.0, HERMITIAN_TOL)
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 3] {
        let eig = SymmetricEigen::new(self.0);
        let mut ev = [eig.eigenvalues[0], eig.eigenvalues[1], eig.eigenvalues[2]];
        ev.sort_by(f64::total_cmp);
        ev
    }
}

/// Splits `D` into the identity shift and the five channel amplitudes.
pub fn decompose_zfs(d: &ZfsMatrix) -> (f64, ChannelCoefficients) {
    let m = d.matrix();
    let shift = m[(0, 0)] + m[(1, 1)];
    let c = ChannelCoefficients {
        c_z: m[(2, 2)] - 0.5 * shift,
        c_d: 0.5 * (m[(1, 1)] - m[(0, 0)]),
        c_xy: m[(0, 1)],
        c_xz: m[(0, 2)],
        c_yz: m[(1, 2)],
    };
    (shift, c)
}

fn coefficients(couplings: &CouplingSet, components: [f64; 6]) -> ChannelCoefficients {
    ChannelCoefficients::from_vector(&(coefficient_block(components) * couplings.value_vector()))
}

fn expect_defect_frame(frame: Frame, what: &str) -> Result<()> {
    if frame == Frame::Defect {
        Ok(())
    } else {
        Err(Error::Contract(format!(
            "{what} must be expressed in the defect frame"
        )))
    }
}

/// Channel amplitudes of the spin-strain Hamiltonian for strain couplings
/// `h` and a defect-frame strain.
pub fn strain_hamiltonian_coefficients(
    h: &CouplingSet,
    strain: &StrainTensor,
) -> Result<ChannelCoefficients> {
    h.expect_kind(CouplingKind::Strain)?;
    expect_defect_frame(strain.frame(), "strain")?;
    Ok(coefficients(h, strain.components()))
}

/// Same functional form with stress couplings `g` and a defect-frame stress
/// in GPa.
pub fn stress_hamiltonian_coefficients(
    g: &CouplingSet,
    stress: &StressTensor,
) -> Result<ChannelCoefficients> {
    g.expect_kind(CouplingKind::Stress)?;
    expect_defect_frame(stress.frame(), "stress")?;
    Ok(coefficients(g, stress.components()))
}

pub fn build_hamiltonian(c: &ChannelCoefficients) -> SpinHamiltonian {
    let ops = channel_operators();
    let amps = c.to_vector();
    let h = ops
        .iter()
        .zip(amps.iter())
        .fold(Matrix3::zeros(), |acc, (op, &a)| acc + op.0 * C64::new(a, 0.0));
    SpinHamiltonian(h)
}

/// Transition frequencies from the `m = 0` level, upper first.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransitionShifts {
    pub f_plus: f64,
    pub f_minus: f64,
}

/// Exact transition frequencies of `base_splitting·Sz² + perturbation`.
///
/// The reference level is the eigenstate with the largest `|0⟩` weight.
pub fn transition_shifts(base_splitting: f64, c: &ChannelCoefficients) -> Result<TransitionShifts> {
    if !(base_splitting > 0.0 && base_splitting.is_finite()) {
        return Err(Error::Validation(format!(
            "base splitting must be positive, got {base_splitting} MHz"
        )));
    }
    let perturbed = ChannelCoefficients {
        c_z: c.c_z + base_splitting,
        ..*c
    };
    let eig = SymmetricEigen::new(build_hamiltonian(&perturbed).0);
    let zero_level = (0..3)
        .max_by(|&a, &b| {
            eig.eigenvectors[(1, a)]
                .norm_sqr()
                .total_cmp(&eig.eigenvectors[(1, b)].norm_sqr())
        })
        .expect("three eigenvectors");
    let e0 = eig.eigenvalues[zero_level];
    let mut others: Vec<f64> = (0..3)
        .filter(|&k| k != zero_level)
        .map(|k| eig.eigenvalues[k] - e0)
        .collect();
    others.sort_by(f64::total_cmp);
    Ok(TransitionShifts {
        f_plus: others[1],
        f_minus: others[0],
    })
}
