//! Parameter records shared by the symbolic hierarchies and the oracle.

use crate::error::{Error, Result};

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}

/// Dimensionless parameters of the radial Schrodinger hierarchy
/// `H_n = -1/2 d^2 + (a+n)(a+n+1)/(2 rho^2) - b/rho`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NRParams {
    pub a: f64,
    pub b: f64,
}

impl NRParams {
    /// `b = 0` is accepted for formula-level use; bound-state operations reject it.
    pub fn new(a: f64, b: f64) -> Result<Self> {
        require(a.is_finite() && a > 0.0, || {
            format!("a must be positive, got {a}")
        })?;
        require(b.is_finite() && b >= 0.0, || {
            format!("b must be nonnegative, got {b}")
        })?;
        Ok(Self { a, b })
    }

    pub fn has_bound_states(&self) -> bool {
        self.b > 0.0
    }

    /// Same record with `a` shifted by an integer, i.e. level `n` of the hierarchy viewed as level 0.
    pub fn shifted(&self, by: u32) -> Self {
        Self {
            a: self.a + by as f64,
            b: self.b,
        }
    }
}

/// Dimensionless parameters of the rotated radial Dirac hierarchy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracParams {
    pub a: f64,
    pub b: f64,
    pub d0: f64,
    /// `m c / hbar`
    pub mbar: f64,
}

impl DiracParams {
    pub fn new(a: f64, b: f64, d0: f64, mbar: f64) -> Result<Self> {
        require(a.is_finite() && a > 0.0, || {
            format!("a must be positive, got {a}")
        })?;
        require(b.is_finite() && b > 0.0, || {
            format!("b must be positive, got {b}")
        })?;
        require(d0.is_finite(), || format!("d0 must be finite, got {d0}"))?;
        require(mbar.is_finite() && mbar >= 0.0, || {
            format!("mbar must be nonnegative, got {mbar}")
        })?;
        Ok(Self { a, b, d0, mbar })
    }
}

/// Physical constants and quantum numbers of a charged particle in the field of
/// the vector potential `A = (c k / (e rho)) e_z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub hbar: f64,
    pub m: f64,
    pub c: f64,
    pub e: f64,
    pub k: f64,
    pub pz: f64,
    pub ell: f64,
}

impl PhysicalParams {
    pub fn new(hbar: f64, m: f64, c: f64, e: f64, k: f64, pz: f64, ell: f64) -> Result<Self> {
        for (name, v) in [("hbar", hbar), ("m", m), ("c", c), ("e", e)] {
            require(v.is_finite() && v > 0.0, || {
                format!("{name} must be positive, got {v}")
            })?;
        }
        for (name, v) in [("k", k), ("pz", pz), ("ell", ell)] {
            require(v.is_finite(), || format!("{name} must be finite, got {v}"))?;
        }
        let p = Self {
            hbar,
            m,
            c,
            e,
            k,
            pz,
            ell,
        };
        require(p.lambda() > 0.0, || {
            "ell and k cannot both vanish".to_string()
        })?;
        Ok(p)
    }

    /// `lambda = sqrt(ell^2 + k^2)`
    pub fn lambda(&self) -> f64 {
        self.ell.hypot(self.k)
    }

    pub fn check_bound(&self) -> Result<()> {
        if self.pz * self.k > 0.0 {
            Ok(())
        } else {
            Err(Error::NoBoundStates)
        }
    }

    /// Positive root of `a(a+1) = lambda^2/hbar^2 - 1/4`, with `b = p_z k / hbar^2`.
    pub fn to_nr(&self) -> Result<NRParams> {
        self.check_bound()?;
        let a = self.lambda() / self.hbar - 0.5;
        NRParams::new(a, self.pz * self.k / (self.hbar * self.hbar))
    }

    pub fn to_dirac(&self) -> Result<DiracParams> {
        self.check_bound()?;
        let lambda = self.lambda();
        DiracParams::new(
            lambda / self.hbar,
            self.pz * self.k / (self.hbar * self.hbar),
            self.pz * self.ell / (self.hbar * lambda),
            self.m * self.c / self.hbar,
        )
    }
}
