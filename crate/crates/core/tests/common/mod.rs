#![allow(dead_code)]

use num_complex::Complex64;
use proptest::prelude::*;

use susy_ladder::dirac::SpinorFn;
use susy_ladder::{Context, DecayIndex, ExpoPoly, ExpoTerm, Exponent};

pub fn ctx_strategy() -> impl Strategy<Value = Context> {
    (0.3f64..3.0, 0.2f64..2.5).prop_map(|(a, b)| Context::new(a, b).unwrap())
}

fn coeff() -> impl Strategy<Value = Complex64> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(re, im)| Complex64::new(re, im))
}

/// Terms `c rho^(a + j) exp(-b rho/(a + k))` with `j >= 0`, so every inner
/// product converges.
pub fn decaying_terms() -> impl Strategy<Value = Vec<(Complex64, i32, i32)>> {
    prop::collection::vec((coeff(), 0i32..4, 0i32..3), 1..5)
}

/// Like [`decaying_terms`] but with `j >= 1`, so products are smooth enough at
/// the origin for uniform-grid quadrature.
pub fn smooth_terms() -> impl Strategy<Value = Vec<(Complex64, i32, i32)>> {
    prop::collection::vec((coeff(), 1i32..4, 0i32..3), 1..5)
}

pub fn build(ctx: Context, terms: &[(Complex64, i32, i32)]) -> ExpoPoly {
    ExpoPoly::from_terms(
        ctx,
        terms.iter().map(|&(coeff, j, k)| ExpoTerm {
            coeff,
            exp: Exponent::shifted(j),
            decay: DecayIndex::Indexed(k),
        }),
    )
    .unwrap()
}

pub fn decaying_poly() -> impl Strategy<Value = ExpoPoly> {
    (ctx_strategy(), decaying_terms()).prop_map(|(ctx, terms)| build(ctx, &terms))
}

pub fn spinor(ctx: Context, parts: &[Vec<(Complex64, i32, i32)>]) -> SpinorFn {
    SpinorFn::new(parts.iter().map(|t| build(ctx, t)).collect()).unwrap()
}

pub fn close(x: f64, y: f64, rel: f64) -> bool {
    (x - y).abs() <= rel * x.abs().max(y.abs()).max(f64::MIN_POSITIVE)
}
