//! Exact algebra of exponential-polynomial functions on `(0, inf)`.
//!
//! Every function produced by the hierarchies is a finite sum of terms
//! `c * rho^(mu*a + j) * exp(-beta * rho)` where `a` is the symbolic base
//! power of the active [`Context`] and `beta` is either zero or `b/(a+k)`.
//! Powers and decay rates are keyed by integers, so merging like terms is
//! exact even when `a` is irrational. Only the coefficients are floating point.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// Merged coefficients at or below this fraction of the largest contribution
/// to the same key are treated as exact cancellation and dropped.
pub const REL_TOL: f64 = 1e-13;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Realized power `mu * a + offset`, with `mu` restricted to `{0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent {
    mu: u8,
    offset: i32,
}

impl Exponent {
    pub fn new(mu: u8, offset: i32) -> Result<Self> {
        if mu > 1 {
            return Err(Error::OutsideAlgebra(format!(
                "exponent multiplier {mu} of a"
            )));
        }
        Ok(Self { mu, offset })
    }

    /// `rho^j`
    pub const fn integer(offset: i32) -> Self {
        Self { mu: 0, offset }
    }

    /// `rho^(a + j)`
    pub const fn shifted(offset: i32) -> Self {
        Self { mu: 1, offset }
    }

    pub fn mu(&self) -> u8 {
        self.mu
    }

    pub fn offset(&self) -> i32 {
        self.offset
    }

    pub fn realize(&self, a: f64) -> f64 {
        self.mu as f64 * a + self.offset as f64
    }

    fn shift(self, by: i32) -> Self {
        Self {
            mu: self.mu,
            offset: self.offset + by,
        }
    }
}

/// Decay rate of a term: zero, or `b/(a+k)` for `Indexed(k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DecayIndex {
    Zero,
    Indexed(i32),
}

impl DecayIndex {
    pub fn rate(&self, ctx: &Context) -> f64 {
        match *self {
            DecayIndex::Zero => 0.0,
            DecayIndex::Indexed(k) => ctx.b / (ctx.a + k as f64),
        }
    }

    fn combine(self, other: DecayIndex) -> Result<DecayIndex> {
        match (self, other) {
            (DecayIndex::Zero, d) | (d, DecayIndex::Zero) => Ok(d),
            (DecayIndex::Indexed(i), DecayIndex::Indexed(j)) => Err(Error::OutsideAlgebra(
                format!("product of decays b/(a+{i}) and b/(a+{j})"),
            )),
        }
    }
}

/// The symbolic base power `a` and the numerator `b` of every decay rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Context {
    a: f64,
    b: f64,
}

impl Context {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "context a must be positive, got {a}"
            )));
        }
        if !(b.is_finite() && b >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "context b must be nonnegative, got {b}"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    fn validate(&self, decay: DecayIndex) -> Result<()> {
        if let DecayIndex::Indexed(k) = decay {
            let rate = decay.rate(self);
            if !(self.a + k as f64 > 0.0 && rate > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "decay index {k} gives non-positive rate {rate}"
                )));
            }
        }
        Ok(())
    }

    fn same(&self, other: &Context) -> bool {
        self.a.to_bits() == other.a.to_bits() && self.b.to_bits() == other.b.to_bits()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpoTerm {
    pub coeff: Complex64,
    pub exp: Exponent,
    pub decay: DecayIndex,
}

type Key = (Exponent, DecayIndex);

#[derive(Default)]
struct Accumulator {
    map: BTreeMap<Key, (Complex64, f64)>,
}

impl Accumulator {
    fn push(&mut self, exp: Exponent, decay: DecayIndex, coeff: Complex64) {
        let slot = self.map.entry((exp, decay)).or_insert((ZERO, 0.0));
        slot.0 += coeff;
        slot.1 = slot.1.max(coeff.norm());
    }

    fn finish(self, ctx: Context, scale: f64) -> ExpoPoly {
        let terms: Vec<ExpoTerm> = self
            .map
            .into_iter()
            .filter(|(_, (sum, largest))| sum.norm() > REL_TOL * largest)
            .map(|((exp, decay), (coeff, _))| {
                debug_assert!(exp.mu <= 1);
                ExpoTerm { coeff, exp, decay }
            })
            .collect();
        let largest = terms.iter().map(|t| t.coeff.norm()).fold(0.0, f64::max);
        ExpoPoly {
            ctx,
            terms,
            scale: scale.max(largest),
        }
    }
}

/// A canonical finite sum of [`ExpoTerm`]s sharing one [`Context`].
///
/// Besides its terms, a value remembers the largest coefficient magnitude seen
/// while it was built. [`ExpoPoly::is_zero`] measures leftovers against that
/// reference, so the result of a cancelling computation is judged against its
/// inputs and not against its own roundoff.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpoPoly {
    ctx: Context,
    terms: Vec<ExpoTerm>,
    scale: f64,
}

impl ExpoPoly {
    pub fn zero(ctx: Context) -> Self {
        Self {
            ctx,
            terms: Vec::new(),
            scale: 0.0,
        }
    }

    pub fn constant(ctx: Context, c: impl Into<Complex64>) -> Self {
        Self::monomial(ctx, c, Exponent::integer(0), DecayIndex::Zero)
            .expect("zero decay is always admissible")
    }

    pub fn monomial(
        ctx: Context,
        c: impl Into<Complex64>,
        exp: Exponent,
        decay: DecayIndex,
    ) -> Result<Self> {
        Self::from_terms(
            ctx,
            [ExpoTerm {
                coeff: c.into(),
                exp,
                decay,
            }],
        )
    }

    /// Laurent monomial `c * rho^j` with no decay.
    pub fn laurent(ctx: Context, c: impl Into<Complex64>, j: i32) -> Self {
        Self::monomial(ctx, c, Exponent::integer(j), DecayIndex::Zero)
            .expect("zero decay is always admissible")
    }

    pub fn from_terms(ctx: Context, terms: impl IntoIterator<Item = ExpoTerm>) -> Result<Self> {
        let mut acc = Accumulator::default();
        for t in terms {
            ctx.validate(t.decay)?;
            acc.push(t.exp, t.decay, t.coeff);
        }
        Ok(acc.finish(ctx, 0.0))
    }

    pub fn context(&self) -> Context {
        self.ctx
    }

    pub fn terms(&self) -> &[ExpoTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest coefficient magnitude encountered while building this value.
    pub fn reference_magnitude(&self) -> f64 {
        self.scale
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coeff.norm())
            .fold(0.0, f64::max)
    }

    fn check_ctx(&self, other: &ExpoPoly) -> Result<()> {
        if self.ctx.same(&other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &ExpoPoly) -> Result<ExpoPoly> {
        self.check_ctx(other)?;
        let mut acc = Accumulator::default();
        for t in self.terms.iter().chain(&other.terms) {
            acc.push(t.exp, t.decay, t.coeff);
        }
        Ok(acc.finish(self.ctx, self.scale.max(other.scale)))
    }

    pub fn sub(&self, other: &ExpoPoly) -> Result<ExpoPoly> {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, c: impl Into<Complex64>) -> ExpoPoly {
        let c = c.into();
        let mut acc = Accumulator::default();
        for t in &self.terms {
            acc.push(t.exp, t.decay, c * t.coeff);
        }
        acc.finish(self.ctx, c.norm() * self.scale)
    }

    /// Multiplies by `rho^s`.
    pub fn mul_power(&self, s: i32) -> ExpoPoly {
        let terms = self
            .terms
            .iter()
            .map(|t| ExpoTerm {
                exp: t.exp.shift(s),
                ..*t
            })
            .collect();
        ExpoPoly {
            ctx: self.ctx,
            terms,
            scale: self.scale,
        }
    }

    /// Product of two values. Fails when the result would need `rho^(2a)` or a
    /// decay rate outside the indexed set; multiplying by a Laurent polynomial
    /// never fails.
    pub fn mul(&self, other: &ExpoPoly) -> Result<ExpoPoly> {
        self.check_ctx(other)?;
        let mut acc = Accumulator::default();
        for s in &self.terms {
            for t in &other.terms {
                let exp = Exponent::new(s.exp.mu + t.exp.mu, s.exp.offset + t.exp.offset)?;
                acc.push(exp, s.decay.combine(t.decay)?, s.coeff * t.coeff);
            }
        }
        Ok(acc.finish(self.ctx, self.scale * other.scale))
    }

    pub fn conj(&self) -> ExpoPoly {
        let terms = self
            .terms
            .iter()
            .map(|t| ExpoTerm {
                coeff: t.coeff.conj(),
                ..*t
            })
            .collect();
        ExpoPoly {
            ctx: self.ctx,
            terms,
            scale: self.scale,
        }
    }

    pub fn differentiate(&self) -> ExpoPoly {
        let mut acc = Accumulator::default();
        let mut gain: f64 = 0.0;
        for t in &self.terms {
            let p = t.exp.realize(self.ctx.a);
            let beta = t.decay.rate(&self.ctx);
            if p != 0.0 {
                acc.push(t.exp.shift(-1), t.decay, t.coeff * p);
            }
            if beta != 0.0 {
                acc.push(t.exp, t.decay, -t.coeff * beta);
            }
            gain = gain.max(p.abs()).max(beta);
        }
        let scale = if self.terms.is_empty() {
            self.scale
        } else {
            self.scale * gain
        };
        acc.finish(self.ctx, scale)
    }

    pub fn eval(&self, rho: f64) -> Result<Complex64> {
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(Error::Domain(rho));
        }
        let ln_rho = rho.ln();
        Ok(self.terms.iter().fold(ZERO, |sum, t| {
            let p = t.exp.realize(self.ctx.a);
            let beta = t.decay.rate(&self.ctx);
            sum + t.coeff * (p * ln_rho - beta * rho).exp()
        }))
    }

    /// `int_0^inf conj(self) * other d rho`, exactly via
    /// `int rho^s e^(-g rho) = Gamma(s+1) / g^(s+1)`.
    ///
    /// Terms sharing a total `mu` and decay pair differ in power by integers, so
    /// their Gamma factors are related by exact recurrence from one base value.
    /// The base value then multiplies the whole (possibly cancelling) group sum.
    pub fn inner_product(&self, other: &ExpoPoly) -> Result<Complex64> {
        self.check_ctx(other)?;
        let mut groups: BTreeMap<(u8, DecayIndex, DecayIndex), BTreeMap<i32, Complex64>> =
            BTreeMap::new();
        for s in &self.terms {
            for t in &other.terms {
                *groups
                    .entry((s.exp.mu + t.exp.mu, s.decay, t.decay))
                    .or_default()
                    .entry(s.exp.offset + t.exp.offset)
                    .or_insert(ZERO) += s.coeff.conj() * t.coeff;
            }
        }
        let a = self.ctx.a;
        let mut total = ZERO;
        for ((mu, d1, d2), by_offset) in groups {
            let rate = d1.rate(&self.ctx) + d2.rate(&self.ctx);
            let j_min = *by_offset.keys().next().expect("groups are never empty");
            let s_min = mu as f64 * a + j_min as f64;
            if !(s_min > -1.0 && rate > 0.0) {
                return Err(Error::DivergentIntegral { power: s_min, rate });
            }
            let mut group_sum = ZERO;
            let mut factor = 1.0;
            let mut current = j_min;
            for (j, c) in by_offset {
                while current < j {
                    current += 1;
                    factor *= (mu as f64 * a + current as f64) / rate;
                }
                group_sum += c * factor;
            }
            let base = (ln_gamma(s_min + 1.0) - (s_min + 1.0) * rate.ln()).exp();
            total += group_sum * base;
        }
        Ok(total)
    }

    pub fn norm_squared(&self) -> Result<f64> {
        Ok(self.inner_product(self)?.re)
    }

    /// True when every coefficient is at most `tol` times the reference
    /// magnitude (floored at 1).
    pub fn is_zero(&self, tol: f64) -> bool {
        let reference = self.scale.max(1.0);
        self.terms.iter().all(|t| t.coeff.norm() <= tol * reference)
    }

    /// Largest coefficient relative to the reference magnitude (floored at 1).
    pub fn relative_residual(&self) -> f64 {
        self.max_abs_coeff() / self.scale.max(1.0)
    }
}

impl fmt::Display for ExpoPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:.6e}{:+.6e}i)", t.coeff.re, t.coeff.im)?;
            match (t.exp.mu, t.exp.offset) {
                (0, 0) => {}
                (0, j) => write!(f, " rho^{j}")?,
                (_, 0) => write!(f, " rho^a")?,
                (_, j) => write!(f, " rho^(a{j:+})")?,
            }
            if let DecayIndex::Indexed(k) = t.decay {
                write!(f, " exp(-b rho/(a{k:+}))")?;
            }
        }
        Ok(())
    }
}
