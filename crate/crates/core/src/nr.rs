//! Nonrelativistic shape-invariant hierarchy.
//!
//! Level `n` is `H_n = -1/2 d^2/drho^2 + (a+n)(a+n+1)/(2 rho^2) - b/rho`, and
//! `A+_n = (-d/drho + W_n)/sqrt(2)` intertwines `H_{n-1}` with `H_n`.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::expalg::{Context, DecayIndex, ExpoPoly, Exponent};
use crate::params::{NRParams, PhysicalParams};

pub fn context(params: &NRParams) -> Result<Context> {
    Context::new(params.a, params.b)
}

fn require_level(n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidParameter(
            "ladder levels start at n = 1".into(),
        ))
    } else {
        Ok(())
    }
}

/// `W_n = (a+n)/rho - b/(a+n)`, `n >= 1`.
pub fn superpotential(params: &NRParams, n: u32) -> Result<ExpoPoly> {
    require_level(n)?;
    let ctx = context(params)?;
    let an = params.a + n as f64;
    ExpoPoly::laurent(ctx, an, -1).add(&ExpoPoly::constant(ctx, -params.b / an))
}

/// `eps_n = -b^2 / (2 (a+n)^2)`.
pub fn factorization_energy(params: &NRParams, n: u32) -> f64 {
    let an = params.a + n as f64;
    -params.b * params.b / (2.0 * an * an)
}

/// `V_n = (a+n)(a+n+1)/(2 rho^2) - b/rho`.
pub fn potential(params: &NRParams, n: u32) -> Result<ExpoPoly> {
    let ctx = context(params)?;
    let an = params.a + n as f64;
    ExpoPoly::laurent(ctx, an * (an + 1.0) / 2.0, -2).add(&ExpoPoly::laurent(ctx, -params.b, -1))
}

/// Ground state of `H_n`: `rho^(a+n+1) exp(-b rho/(a+n+1))`, eigenvalue `eps_{n+1}`.
pub fn ground_state(params: &NRParams, n: u32) -> Result<ExpoPoly> {
    if !params.has_bound_states() {
        return Err(Error::NoBoundStates);
    }
    let k = n as i32 + 1;
    ExpoPoly::monomial(
        context(params)?,
        1.0,
        Exponent::shifted(k),
        DecayIndex::Indexed(k),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderDirection {
    /// `A+_n = (-d + W_n)/sqrt(2)`, maps eigenfunctions of `H_{n-1}` to `H_n`.
    Creation,
    /// `A_n = (d + W_n)/sqrt(2)`, maps eigenfunctions of `H_n` to `H_{n-1}`.
    Annihilation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalarLadder {
    pub direction: LadderDirection,
    pub level: u32,
    pub superpotential: ExpoPoly,
}

impl ScalarLadder {
    pub fn creation(params: &NRParams, n: u32) -> Result<Self> {
        Ok(Self {
            direction: LadderDirection::Creation,
            level: n,
            superpotential: superpotential(params, n)?,
        })
    }

    pub fn annihilation(params: &NRParams, n: u32) -> Result<Self> {
        Ok(Self {
            direction: LadderDirection::Annihilation,
            level: n,
            superpotential: superpotential(params, n)?,
        })
    }

    pub fn adjoint(&self) -> Self {
        let direction = match self.direction {
            LadderDirection::Creation => LadderDirection::Annihilation,
            LadderDirection::Annihilation => LadderDirection::Creation,
        };
        Self {
            direction,
            ..self.clone()
        }
    }

    pub fn apply(&self, f: &ExpoPoly) -> Result<ExpoPoly> {
        let derivative = match self.direction {
            LadderDirection::Creation => f.differentiate().scale(-1.0),
            LadderDirection::Annihilation => f.differentiate(),
        };
        Ok(derivative
            .add(&self.superpotential.mul(f)?)?
            .scale(FRAC_1_SQRT_2))
    }
}

pub fn apply_ladder(op: &ScalarLadder, f: &ExpoPoly) -> Result<ExpoPoly> {
    op.apply(f)
}

/// `H_n f = -f''/2 + V_n f`.
pub fn apply_hamiltonian(params: &NRParams, n: u32, f: &ExpoPoly) -> Result<ExpoPoly> {
    let kinetic = f.differentiate().differentiate().scale(-0.5);
    kinetic.add(&potential(params, n)?.mul(f)?)
}

/// `W_n' + W_n^2 - 2 (V_{n-1} - eps_n)`, identically zero.
pub fn riccati_residual(params: &NRParams, n: u32) -> Result<ExpoPoly> {
    let w = superpotential(params, n)?;
    let ctx = w.context();
    let shifted = potential(params, n - 1)?
        .add(&ExpoPoly::constant(ctx, -factorization_energy(params, n)))?
        .scale(2.0);
    w.differentiate().add(&w.mul(&w)?)?.sub(&shifted)
}

/// Eigenfunction of `H_level` with eigenvalue `eps_{level+n+1}`:
/// `A_{level+1} ... A_{level+n} phi`, with `phi` the ground state of `H_{level+n}`.
pub fn hierarchy_eigenfunction(params: &NRParams, level: u32, n: u32) -> Result<ExpoPoly> {
    let top = level + n;
    let mut f = ground_state(params, top)?;
    for k in (level + 1..=top).rev() {
        f = ScalarLadder::annihilation(params, k)?.apply(&f)?;
    }
    Ok(f)
}

/// Unnormalized `G_n = A_1 A_2 ... A_n phi_{eps_{n+1}}` of `H_0`.
pub fn eigenfunction(params: &NRParams, n: u32) -> Result<ExpoPoly> {
    hierarchy_eigenfunction(params, 0, n)
}

/// n-th bound-state eigenvalue of `H_0`, `-b^2/(2 (a+n+1)^2)`.
pub fn spectrum_radial(params: &NRParams, n: u32) -> f64 {
    factorization_energy(params, n + 1)
}

/// Closed-form energy `p_z^2/(2m) [1 - k^2/(hbar^2 (lambda/hbar + n + 1/2)^2)]`.
pub fn spectrum_physical(phys: &PhysicalParams, n: u32) -> Result<f64> {
    phys.check_bound()?;
    let q = phys.lambda() / phys.hbar + n as f64 + 0.5;
    let ratio = phys.k / (phys.hbar * q);
    Ok(phys.pz * phys.pz / (2.0 * phys.m) * (1.0 - ratio * ratio))
}

/// Same energy through the radial eigenvalue: `E = (hbar^2/m) d + p_z^2/(2m)`.
pub fn spectrum_physical_via_radial(phys: &PhysicalParams, n: u32) -> Result<f64> {
    let params = phys.to_nr()?;
    let d = spectrum_radial(&params, n);
    Ok(phys.hbar * phys.hbar / phys.m * d + phys.pz * phys.pz / (2.0 * phys.m))
}

/// `|B| = |c k| / (e rho^2)`; the field is azimuthal.
pub fn field_magnitude(phys: &PhysicalParams, rho: f64) -> Result<f64> {
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::Domain(rho));
    }
    Ok((phys.c * phys.k).abs() / (phys.e * rho * rho))
}

pub fn normalize(f: &ExpoPoly) -> Result<ExpoPoly> {
    let norm = f.norm_squared()?.sqrt();
    Ok(f.scale(1.0 / norm))
}

/// Partner potentials in factorized normalization, `V_0 - eps_1` and `V_1 - eps_1`.
pub fn partner_potentials(params: &NRParams) -> Result<(ExpoPoly, ExpoPoly)> {
    let ctx = context(params)?;
    let shift = ExpoPoly::constant(ctx, -factorization_energy(params, 1));
    Ok((
        potential(params, 0)?.add(&shift)?,
        potential(params, 1)?.add(&shift)?,
    ))
}

/// Remainder `R(a) = eps_1(a+1) - eps_1(a)` in `V_+(rho; a) = V_-(rho; a+1) + R(a)`.
pub fn shape_invariance_remainder(params: &NRParams) -> f64 {
    factorization_energy(&params.shifted(1), 1) - factorization_energy(params, 1)
}

/// Sampling range used for node location: `40 (a+n+1)/b`.
pub fn node_search_extent(params: &NRParams, n: u32) -> f64 {
    40.0 * (params.a + n as f64 + 1.0) / params.b
}

/// Interior sign changes of `Re f` on `(0, rho_max]`, found on a 4096-step
/// grid and refined by bisection to `1e-10`.
pub fn locate_nodes(f: &ExpoPoly, rho_max: f64) -> Result<Vec<f64>> {
    const STEPS: usize = 4096;
    let step = rho_max / STEPS as f64;
    let value = |rho: f64| f.eval(rho).map(|z| z.re);
    let mut nodes = Vec::new();
    let mut left = step;
    let mut f_left = value(left)?;
    for i in 2..=STEPS {
        let right = step * i as f64;
        let f_right = value(right)?;
        if f_left != 0.0 && f_right != 0.0 && f_left.signum() != f_right.signum() {
            let (mut lo, mut hi, mut f_lo) = (left, right, f_left);
            while hi - lo > 1e-10 {
                let mid = 0.5 * (lo + hi);
                let f_mid = value(mid)?;
                if f_mid == 0.0 {
                    lo = mid;
                    hi = mid;
                } else if f_mid.signum() == f_lo.signum() {
                    lo = mid;
                    f_lo = f_mid;
                } else {
                    hi = mid;
                }
            }
            nodes.push(0.5 * (lo + hi));
        }
        if f_right != 0.0 {
            left = right;
            f_left = f_right;
        }
    }
    Ok(nodes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig2() -> NRParams {
        NRParams::new(1.5, 0.5).unwrap()
    }

    fn coeffs(p: &ExpoPoly) -> Vec<(i32, u8, f64)> {
        p.terms()
            .iter()
            .map(|t| (t.exp.offset(), t.exp.mu(), t.coeff.re))
            .collect()
    }

    fn close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() <= tol
    }

    #[test]
    fn superpotential_examples() {
        let w = superpotential(&fig2(), 1).unwrap();
        let c = coeffs(&w);
        assert_eq!(c.len(), 2);
        assert!(close(c[0].2, 2.5, 1e-15) && c[0].0 == -1);
        assert!(close(c[1].2, -0.2, 1e-15) && c[1].0 == 0);

        let flat = superpotential(&NRParams::new(1.0, 0.0).unwrap(), 1).unwrap();
        assert_eq!(coeffs(&flat), vec![(-1, 0, 2.0)]);

        let w2 = coeffs(&superpotential(&NRParams::new(1.0, 2.0).unwrap(), 2).unwrap());
        assert!(close(w2[0].2, 3.0, 1e-15) && close(w2[1].2, -2.0 / 3.0, 1e-15));
        assert!(superpotential(&fig2(), 0).is_err());
    }

    #[test]
    fn factorization_energy_examples() {
        assert!(close(factorization_energy(&fig2(), 1), -0.02, 1e-16));
        assert!(close(factorization_energy(&fig2(), 2), -0.25 / 24.5, 1e-16));
        assert!(close(factorization_energy(&fig2(), 2), -0.010_204_1, 1e-7));
        assert_eq!(
            factorization_energy(&NRParams::new(3.0, 0.0).unwrap(), 4),
            0.0
        );
        for n in 1..10 {
            let (e0, e1) = (
                factorization_energy(&fig2(), n),
                factorization_energy(&fig2(), n + 1),
            );
            assert!(e0 < e1 && e1 < 0.0);
        }
    }

    #[test]
    fn potential_examples() {
        let v0 = coeffs(&potential(&fig2(), 0).unwrap());
        assert_eq!(v0, vec![(-2, 0, 1.875), (-1, 0, -0.5)]);
        let v1 = coeffs(&potential(&fig2(), 1).unwrap());
        assert_eq!(v1, vec![(-2, 0, 4.375), (-1, 0, -0.5)]);
        let shifted = coeffs(&potential(&fig2().shifted(1), 0).unwrap());
        assert_eq!(v1, shifted);
    }

    #[test]
    fn ground_state_is_annihilated_and_an_eigenfunction() {
        let p = fig2();
        let g = ground_state(&p, 0).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.terms()[0].exp, Exponent::shifted(1));
        assert_eq!(g.terms()[0].decay, DecayIndex::Indexed(1));
        assert!(close(
            g.eval(2.0).unwrap().re,
            2f64.powf(2.5) * (-0.4f64).exp(),
            1e-14
        ));
        for n in 0..5 {
            let g = ground_state(&p, n).unwrap();
            let killed = ScalarLadder::creation(&p, n + 1)
                .unwrap()
                .apply(&g)
                .unwrap();
            assert!(killed.is_zero(1e-13), "{killed}");
            let hg = apply_hamiltonian(&p, n, &g).unwrap();
            let residual = hg.sub(&g.scale(factorization_energy(&p, n + 1))).unwrap();
            assert!(residual.is_zero(1e-13), "{residual}");
        }
        assert_eq!(
            ground_state(&NRParams::new(1.0, 0.0).unwrap(), 0),
            Err(Error::NoBoundStates)
        );
    }

    #[test]
    fn norm_identity_at_the_kernel() {
        let p = fig2();
        let g = ground_state(&p, 0).unwrap();
        let image = ScalarLadder::creation(&p, 1).unwrap().apply(&g).unwrap();
        assert!(image.is_empty() || image.norm_squared().unwrap().abs() < 1e-20);
    }

    #[test]
    fn first_excited_state_from_the_ladder() {
        let p = fig2();
        let g1 = eigenfunction(&p, 1).unwrap();
        let direct = ScalarLadder::annihilation(&p, 1)
            .unwrap()
            .apply(&ground_state(&p, 1).unwrap())
            .unwrap();
        assert_eq!(g1, direct);
        let residual = apply_hamiltonian(&p, 0, &g1)
            .unwrap()
            .sub(&g1.scale(factorization_energy(&p, 2)))
            .unwrap();
        assert!(residual.is_zero(1e-12));
    }

    #[test]
    fn hamiltonian_of_zero_is_zero() {
        let p = fig2();
        let z = ExpoPoly::zero(context(&p).unwrap());
        assert!(apply_hamiltonian(&p, 0, &z).unwrap().is_empty());
    }

    #[test]
    fn riccati_residual_vanishes() {
        assert!(riccati_residual(&fig2(), 1).unwrap().is_zero(1e-12));
        assert!(riccati_residual(&NRParams::new(1.0, 2.0).unwrap(), 3)
            .unwrap()
            .is_zero(1e-12));
    }

    #[test]
    fn superpotential_is_log_derivative_of_ground_state() {
        let p = fig2();
        for n in 0..4 {
            let g = ground_state(&p, n).unwrap();
            // g' = W_{n+1} g, so W_{n+1} = g'/g for the single-term g
            let lhs = g.differentiate();
            let rhs = superpotential(&p, n + 1).unwrap().mul(&g).unwrap();
            assert!(lhs.sub(&rhs).unwrap().is_zero(1e-14));
        }
    }

    #[test]
    fn eigenfunction_shape() {
        let p = fig2();
        assert_eq!(eigenfunction(&p, 0).unwrap(), ground_state(&p, 0).unwrap());
        for n in 0..6u32 {
            let g = eigenfunction(&p, n).unwrap();
            assert_eq!(g.len(), n as usize + 1);
            for (j, t) in g.terms().iter().enumerate() {
                assert_eq!(t.exp, Exponent::shifted(1 + j as i32));
                assert_eq!(t.decay, DecayIndex::Indexed(n as i32 + 1));
            }
        }
    }

    #[test]
    fn fig2_spectrum() {
        let p = fig2();
        let expected = [-0.02, -0.010_204_1, -0.006_172_8];
        for (n, e) in expected.iter().enumerate() {
            assert!(close(spectrum_radial(&p, n as u32), *e, 5e-8));
        }
        assert_eq!(spectrum_radial(&p, 3), factorization_energy(&p, 4));
    }

    #[test]
    fn node_counts_match_level() {
        let p = fig2();
        for n in 0..5 {
            let g = eigenfunction(&p, n).unwrap();
            let nodes = locate_nodes(&g, node_search_extent(&p, n)).unwrap();
            assert_eq!(nodes.len(), n as usize);
            for r in nodes {
                assert!(g.eval(r).unwrap().re.abs() < 1e-6 * g.max_abs_coeff());
            }
        }
    }

    #[test]
    fn physical_spectrum_examples() {
        let phys = PhysicalParams::new(1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.0).unwrap();
        let e0 = spectrum_physical(&phys, 0).unwrap();
        assert!(close(e0, 5.0 / 18.0, 1e-15));
        assert!(close(
            spectrum_physical_via_radial(&phys, 0).unwrap(),
            e0,
            1e-15
        ));

        let weak = PhysicalParams::new(1.0, 2.0, 1.0, 1.0, 1e-9, 1.5, 2.0).unwrap();
        assert!(close(
            spectrum_physical(&weak, 3).unwrap(),
            1.5 * 1.5 / 4.0,
            1e-15
        ));

        let unbound = PhysicalParams::new(1.0, 1.0, 1.0, 1.0, -1.0, 1.0, 0.0).unwrap();
        assert_eq!(spectrum_physical(&unbound, 0), Err(Error::NoBoundStates));
    }

    #[test]
    fn field_magnitude_examples() {
        let phys = PhysicalParams::new(1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.0).unwrap();
        assert_eq!(field_magnitude(&phys, 1.0).unwrap(), 1.0);
        assert_eq!(field_magnitude(&phys, 2.0).unwrap(), 0.25);
        let other = PhysicalParams::new(1.0, 1.0, 3.0, 0.7, -2.0, 1.0, 0.0).unwrap();
        let (b1, b2) = (
            field_magnitude(&other, 1.3).unwrap(),
            field_magnitude(&other, 2.6).unwrap(),
        );
        assert!(close(b1 / b2, 4.0, 1e-14));
        assert_eq!(field_magnitude(&phys, 0.0), Err(Error::Domain(0.0)));
    }

    #[test]
    fn shape_invariance() {
        let p = fig2();
        let (_, v_plus) = partner_potentials(&p).unwrap();
        let (v_minus_shifted, _) = partner_potentials(&p.shifted(1)).unwrap();
        let r = shape_invariance_remainder(&p);
        assert!(r > 0.0);
        let ctx = context(&p).unwrap();
        // the two partner sets live in different contexts; compare coefficients
        let rebuilt: Vec<_> = v_minus_shifted
            .terms()
            .iter()
            .map(|t| (t.exp, t.coeff))
            .collect();
        let lhs = ExpoPoly::from_terms(ctx, v_plus.terms().iter().copied())
            .unwrap()
            .sub(&ExpoPoly::constant(ctx, r))
            .unwrap();
        let lhs: Vec<_> = lhs.terms().iter().map(|t| (t.exp, t.coeff)).collect();
        assert_eq!(lhs.len(), rebuilt.len());
        for ((e1, c1), (e2, c2)) in lhs.iter().zip(&rebuilt) {
            assert_eq!(e1, e2);
            assert!((c1 - c2).norm() < 1e-15);
        }
    }
}
