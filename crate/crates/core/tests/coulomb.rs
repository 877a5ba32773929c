use std::f64::consts::PI;

use num_complex::Complex64;
use qcg::coulomb::*;
use qcg::correspondence::phi;
use qcg::Error;

fn quad() -> QuadratureSpec {
    QuadratureSpec::default()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn simplex_integrals_match_selberg() {
    let c = ChamberPoint::new(0.0, vec![1.0]).unwrap();
    for (d, kappa) in [(2usize, 12.0), (2, 16.0), (3, 10.0), (3, 13.0)] {
        for ell in 1..=2usize {
            let got = rho(&c, &[d], &ScreeningConfig(vec![ell]), kappa, &quad()).unwrap().value;
            let beta = 1.0 - 4.0 * (d as f64 - 1.0) / kappa;
            let fact = if ell == 2 { 2.0 } else { 1.0 };
            let expect = selberg_oracle(ell, 1.0, beta, 4.0 / kappa).unwrap() / fact;
            assert!(rel(got, expect) < 1e-7, "d {d}, kappa {kappa}, l {ell}: {got} vs {expect}");
        }
    }
}

#[test]
fn beta_constant_closed_forms() {
    assert!((b_const(1, 2, 2, 8.0, &quad()).unwrap().value - PI).abs() < 1e-10);
    for kappa in [9.0, 11.5, 20.0] {
        for (d1, d2) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
            let q = b_const(d1 + d2 - 3, d1, d2, kappa, &quad()).unwrap().value;
            assert!(rel(q, b1_gamma_ratio(d1, d2, kappa).unwrap()) < 1e-10);
        }
    }
}

#[test]
fn divergent_integrals_are_refused() {
    let c = ChamberPoint::new(0.0, vec![1.0]).unwrap();
    let r = rho(&c, &[3], &ScreeningConfig(vec![1]), 8.0, &quad());
    assert!(matches!(r, Err(Error::Divergent { .. })));
    assert!(matches!(b_const(2, 2, 3, 7.0, &quad()), Err(Error::Divergent { .. })));
}

#[test]
fn scaling_and_translation_laws() {
    let dims = [2, 3];
    let m = ScreeningConfig(vec![1, 1]);
    let kappa = 10.0;
    let c = ChamberPoint::new(-0.5, vec![0.0, 1.2]).unwrap();
    let base = rho(&c, &dims, &m, kappa, &quad()).unwrap().value;
    let delta = delta_scaling(2, &dims, kappa);
    for lambda in [2.0, 1.0 / 3.0] {
        let scaled = rho(&c.map(|x| lambda * x).unwrap(), &dims, &m, kappa, &quad()).unwrap().value;
        assert!(rel(scaled, lambda.powf(delta) * base) < 1e-9, "lambda {lambda}");
    }
    let moved = rho(&c.map(|x| x + 7.25).unwrap(), &dims, &m, kappa, &quad()).unwrap().value;
    assert!(rel(moved, base) < 1e-9);
}

#[test]
fn branch_continuation_is_path_independent() {
    let c = ChamberPoint::new(-1.0, vec![0.0, 1.0]).unwrap();
    let dims = [2, 2];
    let kappa = 10.0;
    let z = |re: f64, im: f64| vec![Complex64::new(re, im)];
    let start = Complex64::from(integrand_real(&c, &dims, &[0.5], kappa).unwrap());
    let upper = ContourPath { vertices: vec![z(0.5, 0.0), z(0.5, 0.5), z(0.7, 0.0)], clearance: 1e-3 };
    let lower = ContourPath { vertices: vec![z(0.5, 0.0), z(0.6, 0.2), z(0.7, 0.0)], clearance: 1e-3 };
    let a = branch_continue(&c, &dims, kappa, &upper, start).unwrap();
    let b = branch_continue(&c, &dims, kappa, &lower, start).unwrap();
    assert!((a - b).norm() < 1e-12 * a.norm());
    let direct = integrand_real(&c, &dims, &[0.7], kappa).unwrap();
    assert!((a - direct).norm() < 1e-12 * direct);

    // a counterclockwise loop around x_1 = 0 picks up exp(2 pi i (-4/kappa))
    let around = ContourPath {
        vertices: vec![z(0.5, 0.0), z(0.5, 0.5), z(-0.5, 0.5), z(-0.5, -0.5), z(0.5, -0.5), z(0.5, 0.0)],
        clearance: 1e-3,
    };
    let w = branch_continue(&c, &dims, kappa, &around, start).unwrap();
    let phase = Complex64::from_polar(1.0, 2.0 * PI * (-4.0 / kappa));
    assert!((w - start * phase).norm() < 1e-12 * start.norm());

    let through = ContourPath { vertices: vec![z(0.5, 0.0), z(-0.5, 0.0)], clearance: 1e-3 };
    assert!(matches!(branch_continue(&c, &dims, kappa, &through, start), Err(Error::Clearance(_))));
}

#[test]
fn loop_integrals_at_another_kappa() {
    let c = ChamberPoint::new(-0.7, vec![0.0, 1.3]).unwrap();
    let (dims, l) = ([2, 3], ScreeningConfig(vec![1, 1]));
    let kappa = 12.5;
    let p = phi(&c, &dims, &l, kappa, &quad()).unwrap().value;
    let o = contour_phi_oracle(&c, &dims, &l, kappa, &OracleSpec::default()).unwrap().value.value;
    assert!((p - o).norm() < 1e-6 * o.norm(), "{p} vs {o}");
}

#[test]
fn chamber_validation() {
    assert!(ChamberPoint::new(0.5, vec![0.0, 1.0]).is_err());
    assert!(ChamberPoint::new(-1.0, vec![1.0, 0.0]).is_err());
    assert!(ChamberPoint::new(-1.0, vec![0.0, 0.0]).is_err());
    assert!(QuadratureSpec { nodes_per_panel: 2, ..quad() }.validate().is_err());
}
