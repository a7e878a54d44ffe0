//! Composite quadrature on uniform grids.

use num_complex::Complex64;

use super::RadialGrid;
use crate::error::{Error, Result};

/// Composite Simpson rule; an odd interval count finishes with Simpson's 3/8 rule.
pub fn simpson(values: &[Complex64], h: f64) -> Complex64 {
    let intervals = values.len().saturating_sub(1);
    assert!(
        intervals >= 2,
        "Simpson's rule needs at least three samples"
    );
    let (even_part, tail) = if intervals.is_multiple_of(2) {
        (intervals, None)
    } else {
        assert!(intervals >= 3);
        (intervals - 3, Some(intervals - 3))
    };
    let mut sum = Complex64::new(0.0, 0.0);
    if even_part > 0 {
        sum += values[0] + values[even_part];
        for (i, v) in values.iter().enumerate().take(even_part).skip(1) {
            sum += v * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        sum *= h / 3.0;
    }
    if let Some(s) = tail {
        let v = &values[s..s + 4];
        sum += (v[0] + v[1] * 3.0 + v[2] * 3.0 + v[3]) * (3.0 * h / 8.0);
    }
    sum
}

pub fn trapezoid(values: &[Complex64], h: f64) -> Complex64 {
    let n = values.len();
    assert!(n >= 2);
    let inner: Complex64 = values[1..n - 1].iter().sum();
    (inner + (values[0] + values[n - 1]) * 0.5) * h
}

/// `int conj(f) g d rho` over the grid by composite Simpson.
pub fn quad_inner(f: &[Complex64], g: &[Complex64], grid: &RadialGrid) -> Result<Complex64> {
    let n = grid.n_points();
    if f.len() != n || g.len() != n {
        return Err(Error::InvalidGrid(format!(
            "expected {n} samples, got {} and {}",
            f.len(),
            g.len()
        )));
    }
    let products: Vec<Complex64> = f.iter().zip(g).map(|(x, y)| x.conj() * y).collect();
    let peak = products.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if peak > 0.0 {
        let ratio = products[n - 1].norm() / peak;
        if ratio > 1e-16 {
            return Err(Error::TailNotDecayed { ratio });
        }
    }
    Ok(simpson(&products, grid.spacing()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn simpson_is_exact_on_cubics() {
        for n in [5usize, 6, 9, 10] {
            let h = 2.0 / (n - 1) as f64;
            let v: Vec<_> = (0..n).map(|i| c((i as f64 * h).powi(3))).collect();
            assert!((simpson(&v, h).re - 4.0).abs() < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn error_orders() {
        let f = |x: f64| (-x).exp() * x.sin();
        let exact = (1.0 - (-3.0f64).exp() * (3.0f64.sin() + 3.0f64.cos())) / 2.0;
        let err = |n: usize, rule: fn(&[Complex64], f64) -> Complex64| {
            let h = 3.0 / (n - 1) as f64;
            let v: Vec<_> = (0..n).map(|i| c(f(i as f64 * h))).collect();
            (rule(&v, h).re - exact).abs()
        };
        let simpson_ratio = err(65, simpson) / err(129, simpson);
        let trap_ratio = err(65, trapezoid) / err(129, trapezoid);
        assert!((14.0..18.0).contains(&simpson_ratio), "{simpson_ratio}");
        assert!((3.5..4.5).contains(&trap_ratio), "{trap_ratio}");
    }

    #[test]
    fn undecayed_tails_are_rejected() {
        let grid = RadialGrid::new(1e-3, 10.0, 101).unwrap();
        let ones = vec![c(1.0); 101];
        assert!(matches!(
            quad_inner(&ones, &ones, &grid),
            Err(Error::TailNotDecayed { .. })
        ));
        let short = vec![c(1.0); 3];
        assert!(matches!(
            quad_inner(&short, &ones, &grid),
            Err(Error::InvalidGrid(_))
        ));
    }

    #[test]
    fn self_inner_product_is_real_nonnegative() {
        let grid = RadialGrid::new(1e-4, 60.0, 2001).unwrap();
        let f: Vec<_> = grid
            .points()
            .map(|r| Complex64::new(r, -0.5 * r * r) * (-r).exp())
            .collect();
        let v = quad_inner(&f, &f, &grid).unwrap();
        assert!(v.re > 0.0 && v.im.abs() < 1e-15 * v.re);
    }
}
