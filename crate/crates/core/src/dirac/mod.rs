//! Relativistic hierarchy for the rotated radial Dirac operator
//!
//! ```text
//! H_n = [[mbar s0, h_n], [h_n, -mbar s0]],
//! h_n = -i s1 d/drho + ((a+n)/rho - b/(a+n)) s2 + d_n s3,
//! ```
//!
//! intertwined by `A+_{n+1} = diag(B+_{n+1}, B+_{n+1})`.
//!
//! Functions here index intertwiners by the level they act on: `b_dagger(p, n)`
//! is `B+_{n+1}`, which maps eigenfunctions of `h_n` to those of `h_{n+1}`.

pub mod operator;
pub mod rotation;

use std::fmt;
use std::str::FromStr;

use nalgebra::Matrix4;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expalg::{Context, DecayIndex, ExpoPoly, ExpoTerm, Exponent};
use crate::params::{DiracParams, PhysicalParams};

pub use operator::{pauli, CMatrix, MatrixOp, SpinorFn};
pub use rotation::{assemble_full_spinor, rotation_angle, rotation_matrix, FullSpinor};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// The four eigenvector families seeded by the kernel of `A+_{n+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyTag {
    A,
    B,
    C,
    D,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 4] = [FamilyTag::A, FamilyTag::B, FamilyTag::C, FamilyTag::D];

    pub fn as_char(self) -> char {
        match self {
            FamilyTag::A => 'a',
            FamilyTag::B => 'b',
            FamilyTag::C => 'c',
            FamilyTag::D => 'd',
        }
    }

    /// Families `c` and `d` are built from `xi_n`, `a` and `b` from `chi_n`.
    pub fn uses_xi(self) -> bool {
        matches!(self, FamilyTag::C | FamilyTag::D)
    }

    pub fn is_positive(self) -> bool {
        matches!(self, FamilyTag::A | FamilyTag::C)
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl FromStr for FamilyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "a" => Ok(FamilyTag::A),
            "b" => Ok(FamilyTag::B),
            "c" => Ok(FamilyTag::C),
            "d" => Ok(FamilyTag::D),
            other => Err(Error::InvalidParameter(format!("unknown family '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergySign {
    Positive,
    Negative,
}

impl EnergySign {
    pub fn factor(self) -> f64 {
        match self {
            EnergySign::Positive => 1.0,
            EnergySign::Negative => -1.0,
        }
    }
}

pub fn context(params: &DiracParams) -> Result<Context> {
    Context::new(params.a, params.b)
}

/// `d_n^2 = d0^2 + n(2a+n) b^2 / (a^2 (a+n)^2)`.
pub fn dn_squared(params: &DiracParams, n: u32) -> f64 {
    let (a, b, n) = (params.a, params.b, n as f64);
    params.d0 * params.d0 + n * (2.0 * a + n) * b * b / (a * a * (a + n) * (a + n))
}

/// `d_n` carrying the sign of `d0` (positive when `d0 = 0`).
pub fn dn(params: &DiracParams, n: u32) -> f64 {
    if n == 0 {
        return params.d0;
    }
    let magnitude = dn_squared(params, n).sqrt();
    if params.d0 < 0.0 {
        -magnitude
    } else {
        magnitude
    }
}

fn level_energy(params: &DiracParams, n: u32) -> f64 {
    params.mbar.hypot(dn(params, n))
}

/// `h_n = -i s1 d/drho + ((a+n)/rho - b/(a+n)) s2 + d_n s3`.
pub fn h_operator(params: &DiracParams, n: u32) -> Result<MatrixOp> {
    let ctx = context(params)?;
    let an = params.a + n as f64;
    let w = ExpoPoly::laurent(ctx, an, -1).add(&ExpoPoly::constant(ctx, -params.b / an))?;
    let d = ExpoPoly::constant(ctx, dn(params, n));
    let potential = MatrixOp::pauli_combination(ctx, [None, None, Some(&w), Some(&d)])?;
    MatrixOp::new(pauli(1) * (-I), potential)
}

/// Block operator `H_n = [[mbar s0, h_n], [h_n, -mbar s0]]`.
pub fn big_hamiltonian(params: &DiracParams, n: u32) -> Result<MatrixOp> {
    let ctx = context(params)?;
    let h = h_operator(params, n)?;
    let mass = MatrixOp::identity_multiple(ctx, 2, params.mbar);
    let neg_mass = MatrixOp::identity_multiple(ctx, 2, -params.mbar);
    MatrixOp::from_blocks([[&mass, &h], [&h, &neg_mass]])
}

/// `B+_{n+1}`, intertwining `h_n` with `h_{n+1}`:
///
/// ```text
/// -s0 d + (2(a+n)+1)/2 [1/rho - b/((a+n)(a+n+1))] s0
///       - (d_{n+1} - d_n)/2 (i s1 - s2) - 1/2 [1/rho + b/((a+n)(a+n+1))] s3
/// ```
pub fn b_dagger(params: &DiracParams, n: u32) -> Result<MatrixOp> {
    let ctx = context(params)?;
    let an = params.a + n as f64;
    let q = params.b / (an * (an + 1.0));
    let half_gap = (dn(params, n + 1) - dn(params, n)) / 2.0;
    let s0 = ExpoPoly::laurent(ctx, an + 0.5, -1).add(&ExpoPoly::constant(ctx, -(an + 0.5) * q))?;
    let s1 = ExpoPoly::constant(ctx, -I * half_gap);
    let s2 = ExpoPoly::constant(ctx, half_gap);
    let s3 = ExpoPoly::laurent(ctx, -0.5, -1).add(&ExpoPoly::constant(ctx, -0.5 * q))?;
    let potential = MatrixOp::pauli_combination(ctx, [Some(&s0), Some(&s1), Some(&s2), Some(&s3)])?;
    MatrixOp::new(-pauli(0), potential)
}

/// `B_{n+1}`, the formal adjoint of [`b_dagger`].
pub fn b_op(params: &DiracParams, n: u32) -> Result<MatrixOp> {
    Ok(b_dagger(params, n)?.formal_adjoint())
}

/// `A+_{n+1} = diag(B+_{n+1}, B+_{n+1})`.
pub fn a_dagger(params: &DiracParams, n: u32) -> Result<MatrixOp> {
    MatrixOp::block_diagonal(&b_dagger(params, n)?)
}

/// `A_{n+1}`, mapping eigenvectors of `H_{n+1}` to `H_n`.
pub fn a_op(params: &DiracParams, n: u32) -> Result<MatrixOp> {
    Ok(a_dagger(params, n)?.formal_adjoint())
}

/// `chi_n = (1, 0) rho^(a+n) exp(-b rho/(a+n))`; satisfies `h_n chi_n = d_n chi_n`.
pub fn kernel_chi(params: &DiracParams, n: u32) -> Result<SpinorFn> {
    let ctx = context(params)?;
    let k = n as i32;
    let upper = ExpoPoly::monomial(ctx, 1.0, Exponent::shifted(k), DecayIndex::Indexed(k))?;
    SpinorFn::new(vec![upper, ExpoPoly::zero(ctx)])
}

/// `xi_n = (i g (1 - b rho/((a+n)(a+n+1))), rho) rho^(a+n) exp(-b rho/(a+n+1))`
/// with `g = (a+n)^2 (a+n+1)^2 (d_{n+1} - d_n) / b^2`; satisfies
/// `h_n xi_n = -d_{n+1} xi_n`.
pub fn kernel_xi(params: &DiracParams, n: u32) -> Result<SpinorFn> {
    let ctx = context(params)?;
    let (an, b) = (params.a + n as f64, params.b);
    let g = an * an * (an + 1.0) * (an + 1.0) * (dn(params, n + 1) - dn(params, n)) / (b * b);
    let k = n as i32;
    let decay = DecayIndex::Indexed(k + 1);
    let upper = ExpoPoly::from_terms(
        ctx,
        [
            ExpoTerm {
                coeff: I * g,
                exp: Exponent::shifted(k),
                decay,
            },
            ExpoTerm {
                coeff: -I * g * b / (an * (an + 1.0)),
                exp: Exponent::shifted(k + 1),
                decay,
            },
        ],
    )?;
    let lower = ExpoPoly::monomial(ctx, 1.0, Exponent::shifted(k + 1), decay)?;
    SpinorFn::new(vec![upper, lower])
}

/// Eigenvalue of `H_n` on the level-`n` vector of family `fam`.
pub fn eigenvalue(params: &DiracParams, n: u32, fam: FamilyTag) -> f64 {
    match fam {
        FamilyTag::A => level_energy(params, n),
        FamilyTag::B => -level_energy(params, n),
        FamilyTag::C => level_energy(params, n + 1),
        FamilyTag::D => -level_energy(params, n + 1),
    }
}

/// Eigenvector of `H_n` annihilated by `A+_{n+1}`, with its eigenvalue.
///
/// The lower block is the upper block times `kappa`, where
/// `kappa = d/(E + mbar)` for `E = +sqrt(mbar^2 + d^2)` and
/// `kappa = -(|E| + mbar)/d` for the negative branch (the same ratio as
/// `-d/(|E| - mbar)`, written without the cancellation).
pub fn eigenvector(params: &DiracParams, n: u32, fam: FamilyTag) -> Result<(SpinorFn, f64)> {
    let (seed, d_value, level) = if fam.uses_xi() {
        (kernel_xi(params, n)?, -dn(params, n + 1), n + 1)
    } else {
        (kernel_chi(params, n)?, dn(params, n), n)
    };
    let energy = level_energy(params, level);
    let degenerate = || Error::DegenerateDenominator {
        family: fam.as_char(),
        level: n,
    };
    let kappa = if fam.is_positive() {
        if energy + params.mbar == 0.0 {
            return Err(degenerate());
        }
        d_value / (energy + params.mbar)
    } else {
        if d_value == 0.0 {
            return Err(degenerate());
        }
        -(energy + params.mbar) / d_value
    };
    let spinor = SpinorFn::stack(&seed, &seed.scale(kappa))?;
    Ok((spinor, eigenvalue(params, n, fam)))
}

/// `Phi_{fam,n} = A_1 A_2 ... A_n phi_{fam,n}`, an eigenvector of `H_0`.
pub fn eigenfunction_chain(params: &DiracParams, n: u32, fam: FamilyTag) -> Result<SpinorFn> {
    let (mut phi, _) = eigenvector(params, n, fam)?;
    for k in (0..n).rev() {
        phi = a_op(params, k)?.apply(&phi)?;
    }
    Ok(phi)
}

/// Columns of `Xi_{n+1}`: the four level-`n` family vectors, in family order.
pub fn xi_columns(params: &DiracParams, n: u32) -> Result<Vec<SpinorFn>> {
    FamilyTag::ALL
        .iter()
        .map(|&f| eigenvector(params, n, f).map(|(s, _)| s))
        .collect()
}

fn column_matrix(columns: &[SpinorFn], rho: f64) -> Result<Matrix4<Complex64>> {
    let mut m = Matrix4::zeros();
    for (c, col) in columns.iter().enumerate() {
        for (r, v) in col.eval(rho)?.into_iter().enumerate() {
            m[(r, c)] = v;
        }
    }
    Ok(m)
}

/// `max_rho || W+_{n+1}(rho) - Xi'(rho) Xi(rho)^{-1} ||_F`, where `W+_{n+1}` is
/// the potential part of `A+_{n+1}`. Since `A+ Xi = -Xi' + W+ Xi = 0`, the
/// identity holds with a plus sign.
pub fn superpotential_matrix_residual(
    params: &DiracParams,
    n: u32,
    rho_samples: &[f64],
) -> Result<f64> {
    let columns = xi_columns(params, n)?;
    let derivatives: Vec<SpinorFn> = columns.iter().map(SpinorFn::differentiate).collect();
    let w = a_dagger(params, n)?;
    let mut worst: f64 = 0.0;
    for &rho in rho_samples {
        let xi = column_matrix(&columns, rho)?;
        let xi_prime = column_matrix(&derivatives, rho)?;
        let inverse = xi.try_inverse().ok_or(Error::SingularXi { rho })?;
        if inverse.iter().any(|z| !z.is_finite()) {
            return Err(Error::SingularXi { rho });
        }
        let wp = w.potential_at(rho)?;
        let w4 = Matrix4::from_fn(|r, c| wp[(r, c)]);
        worst = worst.max((w4 - xi_prime * inverse).norm());
    }
    Ok(worst)
}

/// Closed form `sign * m c^2 sqrt(1 + p^2/(m c)^2 - p^2 k^2 / (hbar^2 m^2 c^2 (lambda/hbar + n)^2))`.
pub fn spectrum_dirac(phys: &PhysicalParams, n: u32, sign: EnergySign) -> Result<f64> {
    phys.check_bound()?;
    let mc = phys.m * phys.c;
    let p = phys.pz / mc;
    let q = phys.lambda() / phys.hbar + n as f64;
    let bound = phys.pz * phys.k / (phys.hbar * mc * q);
    let radicand = 1.0 + p * p - bound * bound;
    if !(radicand >= 0.0) {
        return Err(Error::NegativeRadicand(radicand));
    }
    Ok(sign.factor() * mc * phys.c * radicand.sqrt())
}

/// The same energy through the hierarchy: `sign * c hbar sqrt(mbar^2 + d_n^2)`.
pub fn spectrum_dirac_via_levels(phys: &PhysicalParams, n: u32, sign: EnergySign) -> Result<f64> {
    let params = phys.to_dirac()?;
    Ok(sign.factor() * phys.c * phys.hbar * level_energy(&params, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig3() -> DiracParams {
        DiracParams::new(1.0, 2.0, 1.0, 0.1).unwrap()
    }

    #[test]
    fn dn_examples() {
        let p = fig3();
        assert_eq!(dn(&p, 0), 1.0);
        assert!((dn_squared(&p, 1) - 4.0).abs() < 1e-15);
        assert!((dn(&p, 1) - 2.0).abs() < 1e-15);
        assert!((dn_squared(&p, 2) - 41.0 / 9.0).abs() < 1e-14);
        let neg = DiracParams::new(1.0, 2.0, -1.0, 0.1).unwrap();
        assert!((dn(&neg, 1) + 2.0).abs() < 1e-15);
        let flat = DiracParams::new(1.0, 2.0, 0.0, 0.1).unwrap();
        assert!(dn(&flat, 1) > 0.0);
        for n in 0..10 {
            assert!(dn_squared(&p, n + 1) >= dn_squared(&p, n));
        }
    }

    #[test]
    fn h_operator_coefficients() {
        let h = h_operator(&fig3(), 1).unwrap();
        let v = h.potential_at(1.0).unwrap();
        let expected = pauli(2) + pauli(3) * Complex64::new(2.0, 0.0);
        assert!((v - expected).norm() < 1e-14);
        assert_eq!(h.dcoef(), &(pauli(1) * (-I)));

        let h0 = h_operator(&fig3(), 0).unwrap();
        let rho = 0.7;
        let expected = pauli(2) * Complex64::new(1.0 / rho - 2.0, 0.0) + pauli(3);
        assert!((h0.potential_at(rho).unwrap() - expected).norm() < 1e-14);
    }

    #[test]
    fn big_hamiltonian_blocks() {
        let p = fig3();
        let big = big_hamiltonian(&p, 2).unwrap();
        for r in 0..2 {
            for c in 0..2 {
                assert_eq!(big.potential_entry(r, c + 2), big.potential_entry(r + 2, c));
                assert_eq!(big.dcoef()[(r, c + 2)], big.dcoef()[(r + 2, c)]);
            }
        }
        let massless = DiracParams::new(1.0, 2.0, 1.0, 0.0).unwrap();
        let m0 = big_hamiltonian(&massless, 0).unwrap();
        for r in 0..2 {
            for c in 0..2 {
                assert!(m0.potential_entry(r, c).is_empty());
                assert!(m0.potential_entry(r + 2, c + 2).is_empty());
            }
        }
    }

    #[test]
    fn b_dagger_scalar_part_vanishes_at_unit_radius() {
        let b = b_dagger(&fig3(), 0).unwrap();
        let v = b.potential_at(1.0).unwrap();
        // the s0 component is the half-trace
        let s0 = (v[(0, 0)] + v[(1, 1)]) / 2.0;
        assert!(s0.norm() < 1e-15);
    }

    #[test]
    fn kernels_are_annihilated() {
        let p = fig3();
        for n in 0..4 {
            let b = b_dagger(&p, n).unwrap();
            assert!(b.apply(&kernel_chi(&p, n).unwrap()).unwrap().is_zero(1e-13));
            assert!(b.apply(&kernel_xi(&p, n).unwrap()).unwrap().is_zero(1e-13));
        }
    }

    #[test]
    fn kernels_are_independent() {
        let p = fig3();
        let chi = kernel_chi(&p, 0).unwrap().eval(1.0).unwrap();
        let xi = kernel_xi(&p, 0).unwrap().eval(1.0).unwrap();
        let det = chi[0] * xi[1] - chi[1] * xi[0];
        assert!(det.norm() > 1e-3);
    }

    #[test]
    fn fig3_eigenvalues_and_degeneracy() {
        let p = fig3();
        assert!((eigenvalue(&p, 0, FamilyTag::A) - 1.01f64.sqrt()).abs() < 1e-15);
        assert!((eigenvalue(&p, 0, FamilyTag::A) - 1.004_987_6).abs() < 1e-7);
        assert!((eigenvalue(&p, 0, FamilyTag::C) - 2.002_498_4).abs() < 1e-7);
        for n in 0..6 {
            assert_eq!(
                eigenvalue(&p, n, FamilyTag::C),
                eigenvalue(&p, n + 1, FamilyTag::A)
            );
            assert_eq!(
                eigenvalue(&p, n, FamilyTag::D),
                eigenvalue(&p, n + 1, FamilyTag::B)
            );
        }
    }

    #[test]
    fn massless_limit() {
        let p = DiracParams::new(1.3, 0.8, -0.6, 0.0).unwrap();
        for n in 0..3 {
            let (phi, e) = eigenvector(&p, n, FamilyTag::A).unwrap();
            assert!((e - dn(&p, n).abs()).abs() < 1e-15);
            let lower = phi.components()[2]
                .sub(&phi.components()[0].scale(dn(&p, n).signum()))
                .unwrap();
            assert!(lower.is_zero(1e-15));
            let (psi, f) = eigenvector(&p, n, FamilyTag::B).unwrap();
            assert_eq!(f, -e);
            let mirror = psi.components()[2].add(&phi.components()[2]).unwrap();
            assert!(mirror.is_zero(1e-15));
        }
    }

    #[test]
    fn degenerate_denominators_are_reported() {
        let p = DiracParams::new(1.0, 2.0, 0.0, 0.1).unwrap();
        assert_eq!(
            eigenvector(&p, 0, FamilyTag::B).map(|_| ()),
            Err(Error::DegenerateDenominator {
                family: 'b',
                level: 0
            })
        );
        assert!(eigenvector(&p, 0, FamilyTag::A).is_ok());
        assert!(eigenvector(&p, 0, FamilyTag::D).is_ok());
        assert!(matches!(
            superpotential_matrix_residual(&p, 0, &[1.0]),
            Err(Error::DegenerateDenominator { .. })
        ));
    }

    #[test]
    fn eigen_equations_hold_for_all_families() {
        let p = fig3();
        for n in 0..4 {
            let h = big_hamiltonian(&p, n).unwrap();
            for fam in FamilyTag::ALL {
                let (phi, e) = eigenvector(&p, n, fam).unwrap();
                let r = h.apply(&phi).unwrap().sub(&phi.scale(e)).unwrap();
                assert!(
                    r.is_zero(1e-12),
                    "family {fam} level {n}: {}",
                    r.relative_residual()
                );
                assert!(a_dagger(&p, n).unwrap().apply(&phi).unwrap().is_zero(1e-12));
            }
        }
    }

    #[test]
    fn chain_identity_at_level_zero() {
        let p = fig3();
        for fam in FamilyTag::ALL {
            assert_eq!(
                eigenfunction_chain(&p, 0, fam).unwrap(),
                eigenvector(&p, 0, fam).unwrap().0
            );
        }
    }

    #[test]
    fn xi_residual_small_and_column_scale_free() {
        let p = fig3();
        let r = superpotential_matrix_residual(&p, 0, &[0.5, 1.0, 2.0, 5.0]).unwrap();
        assert!(r <= 1e-8, "{r}");
    }

    #[test]
    fn spectrum_examples() {
        let phys = PhysicalParams::new(1.0, 0.1, 1.0, 1.0, 2.0, 1.0, 0.5).unwrap();
        for n in 0..5 {
            for sign in [EnergySign::Positive, EnergySign::Negative] {
                let x = spectrum_dirac(&phys, n, sign).unwrap();
                let y = spectrum_dirac_via_levels(&phys, n, sign).unwrap();
                assert!((x - y).abs() <= 1e-13 * x.abs());
            }
        }
        let unbound = PhysicalParams::new(1.0, 0.1, 1.0, 1.0, 2.0, -1.0, 0.5).unwrap();
        assert_eq!(
            spectrum_dirac(&unbound, 0, EnergySign::Positive),
            Err(Error::NoBoundStates)
        );
    }

    #[test]
    fn family_tags_parse() {
        for fam in FamilyTag::ALL {
            assert_eq!(fam.to_string().parse::<FamilyTag>().unwrap(), fam);
        }
        assert!("e".parse::<FamilyTag>().is_err());
    }
}
