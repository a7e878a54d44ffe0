use num_complex::Complex64;

use susy_ladder::dirac::{self, FamilyTag};
use susy_ladder::oracle::{self, OperatorTag, RadialGrid};
use susy_ladder::{nr, DiracParams, Error, NRParams};

#[test]
fn finite_differences_reproduce_the_nr_ladder() {
    for (a, b) in [(1.5, 0.5), (0.8, 1.4), (3.0, 2.0)] {
        let p = NRParams::new(a, b).unwrap();
        let grid = RadialGrid::eigen_default(a, b, 5).unwrap();
        let fd = oracle::fd_schrodinger_eigs(&p, 5, &grid).unwrap();
        for (n, value) in fd.iter().enumerate() {
            let exact = nr::spectrum_radial(&p, n as u32);
            assert!(
                (value - exact).abs() < 1e-4 * exact.abs(),
                "a={a} n={n}: {value} vs {exact}"
            );
        }
    }
}

#[test]
fn fd_eigenvalues_are_stable_under_refinement() {
    let p = NRParams::new(1.5, 0.5).unwrap();
    let grid = RadialGrid::eigen_default(1.5, 0.5, 3).unwrap();
    let coarse = oracle::schrodinger_eigs_on(&p, 3, &grid);
    let fine = oracle::schrodinger_eigs_on(&p, 3, &grid.refined());
    for (c, f) in coarse.iter().zip(&fine) {
        assert!((c - f).abs() < 1e-4);
    }
}

#[test]
fn exact_eigenfunctions_have_small_scalar_residuals() {
    let p = NRParams::new(1.5, 0.5).unwrap();
    let grid = RadialGrid::residual_default(1.5, 0.5, 4).unwrap();
    for n in 0..5 {
        let g = nr::normalize(&nr::eigenfunction(&p, n).unwrap()).unwrap();
        let samples: Vec<f64> = grid.points().map(|r| g.eval(r).unwrap().re).collect();
        let energy = nr::spectrum_radial(&p, n);
        let good = oracle::residual_scalar(&samples, energy, &p, &grid).unwrap();
        let bad = oracle::residual_scalar(&samples, energy * 1.01, &p, &grid).unwrap();
        assert_eq!(good.operator, OperatorTag::Schrodinger);
        assert_eq!(good.eigenvalue, energy);
        assert!(good.relative_l2() < 1e-7, "n={n}: {}", good.relative_l2());
        assert!(bad.relative_l2() > 100.0 * good.relative_l2());
    }
}

#[test]
fn exact_dirac_chains_have_small_residuals() {
    let p = DiracParams::new(1.4, 1.2, -0.6, 0.8).unwrap();
    let grid = RadialGrid::residual_default(p.a, p.b, 4).unwrap();
    for n in 0..4 {
        for fam in FamilyTag::ALL {
            let phi = dirac::eigenfunction_chain(&p, n, fam).unwrap();
            let scale = 1.0 / phi.norm_squared().unwrap().sqrt();
            let samples: Vec<[Complex64; 4]> = grid
                .points()
                .map(|r| {
                    let v = phi.eval(r).unwrap();
                    [v[0] * scale, v[1] * scale, v[2] * scale, v[3] * scale]
                })
                .collect();
            let e = dirac::eigenvalue(&p, n, fam);
            let good = oracle::residual_dirac(&samples, e, &p, &grid).unwrap();
            let bad = oracle::residual_dirac(&samples, e + 0.01, &p, &grid).unwrap();
            assert_eq!(good.operator, OperatorTag::Dirac);
            assert!(
                good.relative_l2() < 1e-5,
                "{fam}{n}: {}",
                good.relative_l2()
            );
            assert!(bad.relative_l2() > 100.0 * good.relative_l2());
        }
    }
}

#[test]
fn small_a_is_limited_by_the_wall() {
    // psi ~ rho^(a+1) near the origin; for small a the Dirichlet wall at
    // rho_min dominates and refinement in h alone does not reveal it.
    let p = NRParams::new(0.3, 1.0).unwrap();
    let grid = RadialGrid::eigen_default(0.3, 1.0, 1).unwrap();
    let fd = oracle::fd_schrodinger_eigs(&p, 1, &grid).unwrap();
    let exact = nr::spectrum_radial(&p, 0);
    assert!((fd[0] - exact).abs() > 1e-3 * exact.abs());
    let near_origin = RadialGrid::new(1e-8 * grid.rho_max(), grid.rho_max(), 16384).unwrap();
    let better = oracle::schrodinger_eigs_on(&p, 1, &near_origin);
    assert!((better[0] - exact).abs() < (fd[0] - exact).abs() / 10.0);
}

#[test]
fn scan_finds_levels_with_multiplicity() {
    let p = DiracParams::new(2.0, 1.0, 0.5, 0.3).unwrap();
    let window = (0.5, 0.74);
    let grid = RadialGrid::scan_default(p.a, p.b, 4).unwrap();
    let scan = oracle::dirac_spectrum_scan(&p, window, &grid).unwrap();
    let mut expected = Vec::new();
    for n in 0..50 {
        let e = dirac::eigenvalue(&p, n, FamilyTag::A);
        if e > window.0 && e < window.1 {
            expected.push(e);
            if n > 0 {
                expected.push(e);
            }
        }
    }
    assert_eq!(scan.len(), expected.len(), "{scan:?} vs {expected:?}");
    for (s, e) in scan.iter().zip(&expected) {
        assert!((s - e).abs() < 1e-3, "{s} vs {e}");
    }
}

#[test]
fn scan_rejects_coarse_grids() {
    let p = DiracParams::new(1.0, 2.0, 1.0, 0.1).unwrap();
    let grid = RadialGrid::scan_default(1.0, 2.0, 4)
        .unwrap()
        .with_points(256)
        .unwrap();
    assert!(matches!(
        oracle::dirac_spectrum_scan(&p, (0.9, 2.2), &grid),
        Err(Error::GridTooCoarse { .. })
    ));
}

#[test]
fn quadrature_matches_exact_inner_products() {
    let p = NRParams::new(1.5, 0.5).unwrap();
    let f = nr::eigenfunction(&p, 2).unwrap();
    let g = nr::eigenfunction(&p, 2).unwrap().mul_power(1);
    let rho_max = RadialGrid::default_extent(p.a, p.b, 4);
    let grid = RadialGrid::new(1e-9 * rho_max, rho_max, 1 << 15).unwrap();
    let fs: Vec<Complex64> = grid.points().map(|r| f.eval(r).unwrap()).collect();
    let gs: Vec<Complex64> = grid.points().map(|r| g.eval(r).unwrap()).collect();
    let exact = f.inner_product(&g).unwrap();
    let numeric = oracle::quad_inner(&fs, &gs, &grid).unwrap();
    assert!(
        (exact - numeric).norm() < 1e-9 * exact.norm(),
        "{exact} vs {numeric}"
    );
}

#[test]
fn oracle_does_not_need_the_exact_solution() {
    // The FD solve sees only (a, b); perturbing a shifts levels continuously.
    let base = NRParams::new(1.5, 0.5).unwrap();
    let nudged = NRParams::new(1.5 + 1e-3, 0.5).unwrap();
    let grid = RadialGrid::eigen_default(1.5 + 1e-3, 0.5, 2).unwrap();
    let a = oracle::fd_schrodinger_eigs(&base, 2, &grid).unwrap();
    let b = oracle::fd_schrodinger_eigs(&nudged, 2, &grid).unwrap();
    for n in 0..2 {
        let slope = (b[n] - a[n]) / 1e-3;
        let exact = 0.25 / (1.5 + n as f64 + 1.0).powi(3);
        assert!((slope - exact).abs() < 1e-3 * exact.abs() + 1e-5);
    }
}
