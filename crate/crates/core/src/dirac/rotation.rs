//! Rotation of the radial Dirac operator into the form with a single
//! `rho`-dependent matrix, and reassembly of full spinors `Psi(rho, phi, z)`.

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;

use super::{context, eigenfunction_chain, FamilyTag, SpinorFn};
use crate::error::{Error, Result};
use crate::params::{DiracParams, PhysicalParams};

pub type CMatrix4 = Matrix4<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

fn pauli2(k: usize) -> [[Complex64; 2]; 2] {
    match k {
        0 => [[ONE, ZERO], [ZERO, ONE]],
        1 => [[ZERO, ONE], [ONE, ZERO]],
        2 => [[ZERO, -I], [I, ZERO]],
        _ => [[ONE, ZERO], [ZERO, -ONE]],
    }
}

/// `alpha_k = [[0, s_k], [s_k, 0]]`.
pub fn alpha(k: usize) -> CMatrix4 {
    let s = pauli2(k);
    CMatrix4::from_fn(|r, c| {
        if (r < 2) != (c < 2) {
            s[r % 2][c % 2]
        } else {
            ZERO
        }
    })
}

/// `beta = diag(1, 1, -1, -1)`.
pub fn beta() -> CMatrix4 {
    CMatrix4::from_diagonal(&Vector4::new(ONE, ONE, -ONE, -ONE))
}

/// `Sigma_k = diag(s_k, s_k)`.
pub fn big_sigma(k: usize) -> CMatrix4 {
    let s = pauli2(k);
    CMatrix4::from_fn(|r, c| {
        if (r < 2) == (c < 2) {
            s[r % 2][c % 2]
        } else {
            ZERO
        }
    })
}

/// Angle with `tan(theta) = -k/ell` and `cos(theta) = ell/lambda`; for `ell = 0`
/// this is `-sign(k) pi/2`.
pub fn rotation_angle(phys: &PhysicalParams) -> f64 {
    (-phys.k).atan2(phys.ell)
}

/// `U_1 = cos(theta/2) 1 - i sin(theta/2) Sigma_1`.
pub fn rotation_matrix(phys: &PhysicalParams) -> CMatrix4 {
    let half = rotation_angle(phys) / 2.0;
    CMatrix4::identity() * Complex64::new(half.cos(), 0.0) - big_sigma(1) * (I * half.sin())
}

/// Coefficient matrices of an operator `D d/drho + P_1/rho + P_0` on 4-spinors.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialCoefficients {
    pub derivative: CMatrix4,
    pub inverse_rho: CMatrix4,
    pub constant: CMatrix4,
}

impl RadialCoefficients {
    pub fn conjugate_by(&self, u: &CMatrix4) -> Self {
        let ud = u.adjoint();
        Self {
            derivative: ud * self.derivative * u,
            inverse_rho: ud * self.inverse_rho * u,
            constant: ud * self.constant * u,
        }
    }

    /// Matrix part `P_1/rho + P_0` at `rho`.
    pub fn potential_at(&self, rho: f64) -> CMatrix4 {
        self.inverse_rho * Complex64::new(1.0 / rho, 0.0) + self.constant
    }
}

/// `H_rho = -i alpha_1 d + (ell/(hbar rho)) alpha_2 - (k/(hbar rho) - p_z/hbar) alpha_3 + (mc/hbar) beta`.
pub fn radial_hamiltonian(phys: &PhysicalParams) -> RadialCoefficients {
    let h = phys.hbar;
    let real = |x: f64| Complex64::new(x, 0.0);
    RadialCoefficients {
        derivative: alpha(1) * (-I),
        inverse_rho: alpha(2) * real(phys.ell / h) - alpha(3) * real(phys.k / h),
        constant: alpha(3) * real(phys.pz / h) + beta() * real(phys.m * phys.c / h),
    }
}

/// `H_0 = -i alpha_1 d + (a/rho - b/a) alpha_2 + d0 alpha_3 + mbar beta`.
pub fn rotated_hamiltonian(params: &DiracParams) -> RadialCoefficients {
    let real = |x: f64| Complex64::new(x, 0.0);
    RadialCoefficients {
        derivative: alpha(1) * (-I),
        inverse_rho: alpha(2) * real(params.a),
        constant: alpha(2) * real(-params.b / params.a)
            + alpha(3) * real(params.d0)
            + beta() * real(params.mbar),
    }
}

/// A normalized bound state `Psi_{fam,n}` of the full Dirac Hamiltonian, ready
/// for pointwise evaluation. `C` is fixed by `int_0^inf Phi^dagger Phi d rho = 1`.
#[derive(Debug, Clone)]
pub struct FullSpinor {
    phys: PhysicalParams,
    radial: SpinorFn,
    normalization: f64,
    rotation: CMatrix4,
    energy_index: (FamilyTag, u32),
}

impl FullSpinor {
    pub fn new(phys: &PhysicalParams, fam: FamilyTag, n: u32) -> Result<Self> {
        let params = phys.to_dirac()?;
        context(&params)?;
        let radial = eigenfunction_chain(&params, n, fam)?;
        let normalization = 1.0 / radial.norm_squared()?.sqrt();
        Ok(Self {
            phys: *phys,
            radial,
            normalization,
            rotation: rotation_matrix(phys),
            energy_index: (fam, n),
        })
    }

    /// Unnormalized radial spinor `Phi_{fam,n}` in the rotated frame.
    pub fn radial(&self) -> &SpinorFn {
        &self.radial
    }

    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    pub fn family(&self) -> FamilyTag {
        self.energy_index.0
    }

    pub fn level(&self) -> u32 {
        self.energy_index.1
    }

    /// `C e^{i p_z z/hbar} e^{i(ell - hbar Sigma_3/2) phi/hbar} U_1 rho^{-1/2} Phi(rho)`.
    pub fn at(&self, rho: f64, phi: f64, z: f64) -> Result<[Complex64; 4]> {
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(Error::Domain(rho));
        }
        let values = self.radial.eval(rho)?;
        let scale = self.normalization / rho.sqrt();
        let radial = Vector4::from_iterator(values.into_iter().map(|v| v * scale));
        let rotated = self.rotation * radial;
        let h = self.phys.hbar;
        let longitudinal = I * (self.phys.pz * z / h);
        let mut out = [ZERO; 4];
        for (i, slot) in out.iter_mut().enumerate() {
            // Sigma_3 = diag(1, -1, 1, -1)
            let spin = if i % 2 == 0 { 0.5 } else { -0.5 };
            let angular = I * ((self.phys.ell - h * spin) * phi / h);
            *slot = (longitudinal + angular).exp() * rotated[i];
        }
        Ok(out)
    }

    /// `|Psi|^2` at radius `rho`; independent of `phi` and `z`.
    pub fn density(&self, rho: f64) -> Result<f64> {
        Ok(self.at(rho, 0.0, 0.0)?.iter().map(|z| z.norm_sqr()).sum())
    }
}

pub fn assemble_full_spinor(
    phys: &PhysicalParams,
    fam: FamilyTag,
    n: u32,
    rho: f64,
    phi: f64,
    z: f64,
) -> Result<[Complex64; 4]> {
    FullSpinor::new(phys, fam, n)?.at(rho, phi, z)
}
