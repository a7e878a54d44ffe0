//! Finite-difference reference solutions built only from raw parameters.
//!
//! Nothing here consults the exact construction; the oracle discretizes the
//! Hamiltonians directly and checks sampled functions against them.

mod quad;
mod tridiag;

pub use quad::{quad_inner, simpson, trapezoid};
pub use tridiag::SymTridiagonal;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{DiracParams, NRParams};

pub const DEFAULT_POINTS: usize = 8192;
pub const SCAN_POINTS: usize = 16384;
pub const MIN_POINTS: usize = 64;
/// Largest allowed lowest-eigenvalue shift under grid refinement.
pub const RICHARDSON_LIMIT: f64 = 1e-4;

/// Uniform grid `rho_i = rho_min + i h`, `i = 0..n_points`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    rho_min: f64,
    rho_max: f64,
    n_points: usize,
}

impl RadialGrid {
    pub fn new(rho_min: f64, rho_max: f64, n_points: usize) -> Result<Self> {
        if !(rho_min > 0.0 && rho_max.is_finite() && rho_min < rho_max) {
            return Err(Error::InvalidGrid(format!(
                "bad interval [{rho_min}, {rho_max}]"
            )));
        }
        if rho_min > 1e-3 * rho_max {
            return Err(Error::InvalidGrid(format!(
                "rho_min = {rho_min} exceeds 1e-3 rho_max"
            )));
        }
        if n_points < MIN_POINTS {
            return Err(Error::InvalidGrid(format!(
                "{n_points} points, need {MIN_POINTS}"
            )));
        }
        Ok(Self {
            rho_min,
            rho_max,
            n_points,
        })
    }

    /// `40 (a + n_max + 1) / b`, enough for levels up to `n_max` to decay.
    pub fn default_extent(a: f64, b: f64, n_max: u32) -> f64 {
        40.0 * (a + n_max as f64 + 1.0) / b
    }

    /// Grid used for eigenvalue solves.
    pub fn eigen_default(a: f64, b: f64, n_max: u32) -> Result<Self> {
        let rho_max = Self::default_extent(a, b, n_max);
        Self::new(1e-4 * rho_max, rho_max, DEFAULT_POINTS)
    }

    /// Grid used by the squared Dirac scan. The upper block is Coulomb-like
    /// with no centrifugal barrier when `a = 1`, so the wall sits almost at
    /// the origin.
    pub fn scan_default(a: f64, b: f64, n_max: u32) -> Result<Self> {
        let rho_max = Self::default_extent(a, b, n_max);
        Self::new(1e-8 * rho_max, rho_max, SCAN_POINTS)
    }

    /// Grid used for residual checks of exact eigenfunctions.
    pub fn residual_default(a: f64, b: f64, n_max: u32) -> Result<Self> {
        let rho_max = Self::default_extent(a, b, n_max);
        Self::new(1e-3 * rho_max, rho_max, DEFAULT_POINTS)
    }

    pub fn with_points(&self, n_points: usize) -> Result<Self> {
        Self::new(self.rho_min, self.rho_max, n_points)
    }

    /// Same interval with the spacing halved.
    pub fn refined(&self) -> Self {
        Self {
            n_points: 2 * self.n_points - 1,
            ..*self
        }
    }

    pub fn rho_min(&self) -> f64 {
        self.rho_min
    }

    pub fn rho_max(&self) -> f64 {
        self.rho_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> f64 {
        (self.rho_max - self.rho_min) / (self.n_points - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.n_points {
            self.rho_max
        } else {
            self.rho_min + i as f64 * self.spacing()
        }
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(|i| self.point(i))
    }

    pub fn sample<T>(&self, f: impl FnMut(f64) -> T) -> Vec<T> {
        self.points().map(f).collect()
    }
}

/// Which operator a residual was measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorTag {
    Schrodinger,
    Dirac,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub max_pointwise_residual: f64,
    pub l2_residual: f64,
    /// Discrete L2 norm of the sampled function over the same points.
    pub sample_norm: f64,
    pub grid: RadialGrid,
    pub operator: OperatorTag,
    pub eigenvalue: f64,
}

impl ResidualReport {
    pub fn relative_l2(&self) -> f64 {
        if self.sample_norm == 0.0 {
            self.l2_residual
        } else {
            self.l2_residual / self.sample_norm
        }
    }
}

fn schrodinger_potential(params: &NRParams, rho: f64) -> f64 {
    params.a * (params.a + 1.0) / (2.0 * rho * rho) - params.b / rho
}

/// `-1/2 d^2 + V_0` on the interior points with Dirichlet ends.
pub fn schrodinger_matrix(params: &NRParams, grid: &RadialGrid) -> SymTridiagonal {
    let h = grid.spacing();
    let inner = grid.n_points() - 2;
    let diag = (1..=inner)
        .map(|i| 1.0 / (h * h) + schrodinger_potential(params, grid.point(i)))
        .collect();
    SymTridiagonal::new(diag, vec![-0.5 / (h * h); inner - 1])
}

/// Lowest `count` eigenvalues of the discretized `H_0` without a refinement check.
pub fn schrodinger_eigs_on(params: &NRParams, count: usize, grid: &RadialGrid) -> Vec<f64> {
    schrodinger_matrix(params, grid).lowest(count)
}

/// Lowest `count` eigenvalues of `H_0`, rejecting grids whose ground level
/// still moves by more than [`RICHARDSON_LIMIT`] when the spacing is halved.
pub fn fd_schrodinger_eigs(params: &NRParams, count: usize, grid: &RadialGrid) -> Result<Vec<f64>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    if !(params.b > 0.0) {
        return Err(Error::NoBoundStates);
    }
    let needed = RadialGrid::default_extent(params.a, params.b, count as u32);
    if grid.rho_max() < needed {
        return Err(Error::InvalidGrid(format!(
            "rho_max = {} below {needed} for {count} levels",
            grid.rho_max()
        )));
    }
    let coarse = schrodinger_eigs_on(params, count, grid);
    let fine = schrodinger_eigs_on(params, 1, &grid.refined());
    let shift = (coarse[0] - fine[0]).abs();
    if shift > RICHARDSON_LIMIT {
        return Err(Error::GridTooCoarse { shift });
    }
    Ok(coarse)
}

fn check_len(len: usize, grid: &RadialGrid) -> Result<()> {
    if len == grid.n_points() {
        Ok(())
    } else {
        Err(Error::InvalidGrid(format!(
            "{len} samples on a {}-point grid",
            grid.n_points()
        )))
    }
}

/// Residual of `(H_0 - E) f` with a five-point second derivative, over interior
/// points whose radius lies in `[lo, hi]`.
pub fn residual_scalar_within(
    f: &[f64],
    e: f64,
    params: &NRParams,
    grid: &RadialGrid,
    lo: f64,
    hi: f64,
) -> Result<ResidualReport> {
    check_len(f.len(), grid)?;
    let h = grid.spacing();
    let mut max = 0.0f64;
    let mut r2 = 0.0;
    let mut f2 = 0.0;
    for i in 2..grid.n_points() - 2 {
        let rho = grid.point(i);
        if rho < lo || rho > hi {
            continue;
        }
        let d2 = (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2])
            / (12.0 * h * h);
        let r = -0.5 * d2 + (schrodinger_potential(params, rho) - e) * f[i];
        max = max.max(r.abs());
        r2 += r * r;
        f2 += f[i] * f[i];
    }
    Ok(ResidualReport {
        max_pointwise_residual: max,
        l2_residual: (h * r2).sqrt(),
        sample_norm: (h * f2).sqrt(),
        grid: *grid,
        operator: OperatorTag::Schrodinger,
        eigenvalue: e,
    })
}

pub fn residual_scalar(
    f: &[f64],
    e: f64,
    params: &NRParams,
    grid: &RadialGrid,
) -> Result<ResidualReport> {
    residual_scalar_within(f, e, params, grid, f64::NEG_INFINITY, f64::INFINITY)
}

type C2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);
const SIGMA1: C2 = [[ZERO, ONE], [ONE, ZERO]];
const SIGMA2: C2 = [[ZERO, Complex64::new(0.0, -1.0)], [I, ZERO]];
const SIGMA3: C2 = [[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]];

fn mat_mul(x: &C2, y: &C2) -> C2 {
    let mut out = [[ZERO; 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = x[r][0] * y[0][c] + x[r][1] * y[1][c];
        }
    }
    out
}

fn mat_comb(terms: &[(Complex64, &C2)]) -> C2 {
    let mut out = [[ZERO; 2]; 2];
    for (s, m) in terms {
        for r in 0..2 {
            for c in 0..2 {
                out[r][c] += s * m[r][c];
            }
        }
    }
    out
}

fn mat_vec(m: &C2, v: [Complex64; 2]) -> [Complex64; 2] {
    [
        m[0][0] * v[0] + m[0][1] * v[1],
        m[1][0] * v[0] + m[1][1] * v[1],
    ]
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `V(rho) = (a/rho - b/a) sigma_2 + d0 sigma_3`.
fn dirac_potential(params: &DiracParams, rho: f64) -> C2 {
    let w = params.a / rho - params.b / params.a;
    mat_comb(&[(real(w), &SIGMA2), (real(params.d0), &SIGMA3)])
}

pub fn residual_dirac(
    phi: &[[Complex64; 4]],
    e: f64,
    params: &DiracParams,
    grid: &RadialGrid,
) -> Result<ResidualReport> {
    residual_dirac_within(phi, e, params, grid, f64::NEG_INFINITY, f64::INFINITY)
}

/// Residual of `(H_0 - E) Phi` for a sampled 4-spinor, using a fourth-order
/// central first derivative, over interior points with radius in `[lo, hi]`.
pub fn residual_dirac_within(
    phi: &[[Complex64; 4]],
    e: f64,
    params: &DiracParams,
    grid: &RadialGrid,
    lo: f64,
    hi: f64,
) -> Result<ResidualReport> {
    check_len(phi.len(), grid)?;
    let h = grid.spacing();
    let m = params.mbar;
    let mut max = 0.0f64;
    let mut r2 = 0.0;
    let mut f2 = 0.0;
    for i in 2..grid.n_points() - 2 {
        let rho = grid.point(i);
        if rho < lo || rho > hi {
            continue;
        }
        let mut d = [ZERO; 4];
        for (j, slot) in d.iter_mut().enumerate() {
            *slot = (phi[i - 2][j] - phi[i - 1][j] * 8.0 + phi[i + 1][j] * 8.0 - phi[i + 2][j])
                / (12.0 * h);
        }
        let v = dirac_potential(params, rho);
        // h_0 f = -i sigma_1 f' + V f
        let apply_h = |f: [Complex64; 2], df: [Complex64; 2]| {
            let kinetic = mat_vec(&SIGMA1, df);
            let pot = mat_vec(&v, f);
            [-I * kinetic[0] + pot[0], -I * kinetic[1] + pot[1]]
        };
        let p = phi[i];
        let upper = [p[0], p[1]];
        let lower = [p[2], p[3]];
        let hl = apply_h(lower, [d[2], d[3]]);
        let hu = apply_h(upper, [d[0], d[1]]);
        let res = [
            upper[0] * (m - e) + hl[0],
            upper[1] * (m - e) + hl[1],
            hu[0] - lower[0] * (m + e),
            hu[1] - lower[1] * (m + e),
        ];
        let norm2: f64 = res.iter().map(|z| z.norm_sqr()).sum();
        max = max.max(norm2.sqrt());
        r2 += norm2;
        f2 += p.iter().map(|z| z.norm_sqr()).sum::<f64>();
    }
    Ok(ResidualReport {
        max_pointwise_residual: max,
        l2_residual: (h * r2).sqrt(),
        sample_norm: (h * f2).sqrt(),
        grid: *grid,
        operator: OperatorTag::Dirac,
        eigenvalue: e,
    })
}

/// Diagonal entries of `V^2 - i sigma_1 V'`, checking that the off-diagonal
/// entries vanish so the squared operator splits into two scalar problems.
fn squared_potential(params: &DiracParams, rho: f64) -> Result<[f64; 2]> {
    let v = dirac_potential(params, rho);
    let dv = mat_comb(&[(real(-params.a / (rho * rho)), &SIGMA2)]);
    let m = mat_comb(&[(ONE, &mat_mul(&v, &v)), (-I, &mat_mul(&SIGMA1, &dv))]);
    let scale = m[0][0].norm() + m[1][1].norm();
    if m[0][1].norm() > 1e-12 * scale || m[1][0].norm() > 1e-12 * scale {
        return Err(Error::InvalidParameter(format!(
            "squared Dirac operator does not decouple at rho = {rho}"
        )));
    }
    Ok([m[0][0].re, m[1][1].re])
}

fn squared_blocks(params: &DiracParams, grid: &RadialGrid) -> Result<[SymTridiagonal; 2]> {
    let h = grid.spacing();
    let inner = grid.n_points() - 2;
    let mut diags = [Vec::with_capacity(inner), Vec::with_capacity(inner)];
    for i in 1..=inner {
        let m = squared_potential(params, grid.point(i))?;
        for j in 0..2 {
            diags[j].push(2.0 / (h * h) + m[j]);
        }
    }
    let off = vec![-1.0 / (h * h); inner - 1];
    let [d0, d1] = diags;
    Ok([
        SymTridiagonal::new(d0, off.clone()),
        SymTridiagonal::new(d1, off),
    ])
}

/// Lowest positive energy of the discretized problem.
fn squared_ground(blocks: &[SymTridiagonal; 2], mbar: f64) -> f64 {
    let mu = blocks[0].eigenvalue(0).min(blocks[1].eigenvalue(0));
    (mbar * mbar + mu).max(0.0).sqrt()
}

/// Positive energies `E = sqrt(mbar^2 + mu)` in the open window, one entry per
/// eigenvalue `mu` of the discretized `h_0^2`, so degenerate levels repeat.
pub fn dirac_spectrum_scan(
    params: &DiracParams,
    window: (f64, f64),
    grid: &RadialGrid,
) -> Result<Vec<f64>> {
    let (lo, hi) = window;
    let a2 = params.a * params.a;
    let d3_sq = params.d0 * params.d0
        + 3.0 * (2.0 * params.a + 3.0) * params.b * params.b / (a2 * (params.a + 3.0).powi(2));
    let limit = 1.5 * (params.mbar + d3_sq.sqrt());
    if !(lo >= 0.0 && lo < hi && hi <= limit) {
        return Err(Error::InvalidParameter(format!(
            "window ({lo}, {hi}) outside [0, {limit}]"
        )));
    }
    let blocks = squared_blocks(params, grid)?;
    let fine = squared_blocks(params, &grid.refined())?;
    let shift = (squared_ground(&blocks, params.mbar) - squared_ground(&fine, params.mbar)).abs();
    if shift > RICHARDSON_LIMIT {
        return Err(Error::GridTooCoarse { shift });
    }
    let m2 = params.mbar * params.mbar;
    let mut energies: Vec<f64> = blocks
        .iter()
        .flat_map(|t| t.eigenvalues_in(lo * lo - m2, hi * hi - m2))
        .filter(|mu| m2 + mu > 0.0)
        .map(|mu| (m2 + mu).sqrt())
        .filter(|e| *e > lo && *e < hi)
        .collect();
    energies.sort_by(f64::total_cmp);
    Ok(energies)
}
