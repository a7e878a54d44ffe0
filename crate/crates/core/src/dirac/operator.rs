//! Spinor-valued functions and first-order matrix differential operators
//! `D d/drho + P(rho)` acting on them.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expalg::{Context, ExpoPoly};

pub type CMatrix = DMatrix<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Pauli matrix `sigma_k`, with `sigma_0` the identity.
pub fn pauli(k: usize) -> CMatrix {
    let entries = match k {
        0 => [ONE, ZERO, ZERO, ONE],
        1 => [ZERO, ONE, ONE, ZERO],
        2 => [ZERO, -I, I, ZERO],
        3 => [ONE, ZERO, ZERO, -ONE],
        _ => panic!("no Pauli matrix with index {k}"),
    };
    CMatrix::from_row_slice(2, 2, &entries)
}

/// Multi-component function whose entries share one [`Context`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorFn {
    components: Vec<ExpoPoly>,
}

impl SpinorFn {
    pub fn new(components: Vec<ExpoPoly>) -> Result<Self> {
        let first = components
            .first()
            .ok_or_else(|| Error::InvalidParameter("spinor without components".into()))?
            .context();
        if components.iter().any(|c| c.context() != first) {
            return Err(Error::ContextMismatch);
        }
        Ok(Self { components })
    }

    pub fn zero(ctx: Context, size: usize) -> Self {
        Self {
            components: vec![ExpoPoly::zero(ctx); size],
        }
    }

    /// `(upper, lower)` stacked into one spinor.
    pub fn stack(upper: &SpinorFn, lower: &SpinorFn) -> Result<Self> {
        Self::new(
            upper
                .components
                .iter()
                .chain(&lower.components)
                .cloned()
                .collect(),
        )
    }

    pub fn components(&self) -> &[ExpoPoly] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn context(&self) -> Context {
        self.components[0].context()
    }

    fn zip_with(
        &self,
        other: &SpinorFn,
        f: impl Fn(&ExpoPoly, &ExpoPoly) -> Result<ExpoPoly>,
    ) -> Result<SpinorFn> {
        if self.len() != other.len() {
            return Err(Error::InvalidParameter(format!(
                "spinor sizes differ: {} vs {}",
                self.len(),
                other.len()
            )));
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(x, y)| f(x, y))
            .collect::<Result<_>>()?;
        Ok(SpinorFn { components })
    }

    pub fn add(&self, other: &SpinorFn) -> Result<SpinorFn> {
        self.zip_with(other, |x, y| x.add(y))
    }

    pub fn sub(&self, other: &SpinorFn) -> Result<SpinorFn> {
        self.zip_with(other, |x, y| x.sub(y))
    }

    pub fn scale(&self, c: impl Into<Complex64>) -> SpinorFn {
        let c = c.into();
        SpinorFn {
            components: self.components.iter().map(|x| x.scale(c)).collect(),
        }
    }

    pub fn differentiate(&self) -> SpinorFn {
        SpinorFn {
            components: self
                .components
                .iter()
                .map(ExpoPoly::differentiate)
                .collect(),
        }
    }

    pub fn eval(&self, rho: f64) -> Result<Vec<Complex64>> {
        self.components.iter().map(|c| c.eval(rho)).collect()
    }

    pub fn inner_product(&self, other: &SpinorFn) -> Result<Complex64> {
        if self.len() != other.len() {
            return Err(Error::InvalidParameter("spinor sizes differ".into()));
        }
        self.components
            .iter()
            .zip(&other.components)
            .try_fold(ZERO, |acc, (x, y)| Ok(acc + x.inner_product(y)?))
    }

    pub fn norm_squared(&self) -> Result<f64> {
        Ok(self.inner_product(self)?.re)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.components.iter().all(|c| c.is_zero(tol))
    }

    pub fn relative_residual(&self) -> f64 {
        self.components
            .iter()
            .map(ExpoPoly::relative_residual)
            .fold(0.0, f64::max)
    }
}

/// `dcoef * d/drho + potential(rho)` on spinors of length `size`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixOp {
    size: usize,
    dcoef: CMatrix,
    potential: Vec<ExpoPoly>,
}

impl MatrixOp {
    /// `potential` is row-major with `size * size` entries.
    pub fn new(dcoef: CMatrix, potential: Vec<ExpoPoly>) -> Result<Self> {
        let size = dcoef.nrows();
        if dcoef.ncols() != size || potential.len() != size * size {
            return Err(Error::InvalidParameter(
                "matrix operator shape mismatch".into(),
            ));
        }
        SpinorFn::new(potential.clone())?;
        Ok(Self {
            size,
            dcoef,
            potential,
        })
    }

    /// Builds `sum_k coef_k sigma_k` entrywise, `k = 0..4`.
    pub fn pauli_combination(ctx: Context, coefs: [Option<&ExpoPoly>; 4]) -> Result<Vec<ExpoPoly>> {
        let mut entries = vec![ExpoPoly::zero(ctx); 4];
        for (k, coef) in coefs.iter().enumerate() {
            let Some(coef) = coef else { continue };
            let sigma = pauli(k);
            for r in 0..2 {
                for c in 0..2 {
                    let s = sigma[(r, c)];
                    if s != ZERO {
                        entries[2 * r + c] = entries[2 * r + c].add(&coef.scale(s))?;
                    }
                }
            }
        }
        Ok(entries)
    }

    /// Assembles a 4x4 operator from 2x2 blocks `[[tl, tr], [bl, br]]`.
    pub fn from_blocks(blocks: [[&MatrixOp; 2]; 2]) -> Result<Self> {
        let ctx = blocks[0][0].context();
        let mut dcoef = CMatrix::zeros(4, 4);
        let mut potential = vec![ExpoPoly::zero(ctx); 16];
        for (bi, row) in blocks.iter().enumerate() {
            for (bj, block) in row.iter().enumerate() {
                if block.size != 2 {
                    return Err(Error::InvalidParameter("blocks must be 2x2".into()));
                }
                for r in 0..2 {
                    for c in 0..2 {
                        let (gr, gc) = (2 * bi + r, 2 * bj + c);
                        dcoef[(gr, gc)] = block.dcoef[(r, c)];
                        potential[4 * gr + gc] = block.potential[2 * r + c].clone();
                    }
                }
            }
        }
        Self::new(dcoef, potential)
    }

    /// Constant multiple of the identity, `c * 1`.
    pub fn identity_multiple(ctx: Context, size: usize, c: f64) -> Self {
        let potential = (0..size * size)
            .map(|idx| {
                if idx / size == idx % size && c != 0.0 {
                    ExpoPoly::constant(ctx, c)
                } else {
                    ExpoPoly::zero(ctx)
                }
            })
            .collect();
        Self {
            size,
            dcoef: CMatrix::zeros(size, size),
            potential,
        }
    }

    pub fn block_diagonal(block: &MatrixOp) -> Result<Self> {
        let zero = MatrixOp::identity_multiple(block.context(), block.size, 0.0);
        Self::from_blocks([[block, &zero], [&zero, block]])
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn dcoef(&self) -> &CMatrix {
        &self.dcoef
    }

    pub fn potential(&self) -> &[ExpoPoly] {
        &self.potential
    }

    pub fn potential_entry(&self, row: usize, col: usize) -> &ExpoPoly {
        &self.potential[self.size * row + col]
    }

    pub fn context(&self) -> Context {
        self.potential[0].context()
    }

    pub fn apply(&self, f: &SpinorFn) -> Result<SpinorFn> {
        if f.len() != self.size {
            return Err(Error::InvalidParameter(format!(
                "operator of size {} applied to spinor of size {}",
                self.size,
                f.len()
            )));
        }
        let derivative = f.differentiate();
        let mut out = Vec::with_capacity(self.size);
        for r in 0..self.size {
            let mut acc = ExpoPoly::zero(f.context());
            for c in 0..self.size {
                let d = self.dcoef[(r, c)];
                if d != ZERO {
                    acc = acc.add(&derivative.components()[c].scale(d))?;
                }
                let p = self.potential_entry(r, c);
                if !p.is_empty() {
                    acc = acc.add(&p.mul(&f.components()[c])?)?;
                }
            }
            out.push(acc);
        }
        SpinorFn::new(out)
    }

    /// Formal adjoint on `L^2((0, inf), d rho)`: `-D^dagger d/drho + P^dagger`,
    /// boundary terms dropped.
    pub fn formal_adjoint(&self) -> Self {
        let n = self.size;
        let potential = (0..n * n)
            .map(|idx| self.potential[n * (idx % n) + idx / n].conj())
            .collect();
        Self {
            size: n,
            dcoef: -self.dcoef.adjoint(),
            potential,
        }
    }

    /// Potential matrix evaluated at `rho`.
    pub fn potential_at(&self, rho: f64) -> Result<CMatrix> {
        let values = self
            .potential
            .iter()
            .map(|p| p.eval(rho))
            .collect::<Result<Vec<_>>>()?;
        Ok(CMatrix::from_row_slice(self.size, self.size, &values))
    }
}
