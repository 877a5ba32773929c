use num_complex::Complex64;
use proptest::prelude::*;
use qcg::coulomb::{pair_prefactor, QuadratureSpec};
use qcg::correspondence::f_hwv;
use qcg::pde::*;
use qcg::uqsl2::{hwv_pair, hwv_space_basis, TensorSpace};
use qcg::Error;

fn quad() -> QuadratureSpec {
    QuadratureSpec::default()
}

#[test]
fn derivative_chains() {
    // (∂_1 + x_1)(∂_2) applied to x_1^2 x_2^3 is 3 x_2^2 (2 x_1 + x_1^3)
    let f = |x: &[f64]| Ok(Complex64::from(x[0] * x[0] * x[1].powi(3)));
    let d1 = FirstOrder { mult: Box::new(|x| x[0]), ..FirstOrder::partial(0) };
    let d2 = FirstOrder::partial(1);
    let x = [0.7, 1.9];
    let r = apply_chains(&[(1.0, vec![&d1, &d2])], &f, &x, &FdScheme::default()).unwrap();
    let expect = 3.0 * x[1] * x[1] * (2.0 * x[0] + x[0].powi(3));
    assert!((r.value.re - expect).abs() < 1e-9 * expect);
}

#[test]
fn second_order_equations_for_non_trivial_vectors() {
    let kappa = 10.0;
    let dims = [2, 2, 2];
    let x = [0.0, 1.0, 2.5];
    let v = hwv_space_basis(&TensorSpace::new(dims.to_vec()).unwrap(), 2).unwrap().remove(0);
    let f = |y: &[f64]| f_hwv(&v, y, kappa, &quad()).map(|e| e.value);
    for j in 1..=3 {
        let r = apply_bsa(&build_bsa(j, &dims, kappa).unwrap(), &f, &x, &FdScheme::default()).unwrap();
        assert!(r.relative() < 1e-6, "j = {j}: {}", r.relative());
    }
    let e = euler_check(&f, &x, &dims, 2, kappa, &FdScheme::default()).unwrap();
    assert!(e.relative() < 1e-8);
    assert!(translation_check(&f, &x, &FdScheme::default()).unwrap().relative() < 1e-8);
}

#[test]
fn third_order_equations_for_triplets() {
    let kappa = 13.0;
    let dims = [3, 3];
    let x = [0.0, 1.0];
    let v = hwv_pair(3, 3, 2).unwrap();
    let f = |y: &[f64]| f_hwv(&v, y, kappa, &quad()).map(|e| e.value);
    for j in 1..=2 {
        let r = apply_bsa(&build_bsa(j, &dims, kappa).unwrap(), &f, &x, &FdScheme::default()).unwrap();
        assert!(r.relative() < 1e-5, "j = {j}: {}", r.relative());
    }
}

#[test]
fn covariance_under_mobius_maps() {
    let kappa = 10.0;
    let v = hwv_pair(3, 3, 2).unwrap();
    let xs = [0.2, 1.1];
    for mu in [Mobius::translation(-4.0), Mobius::scaling(0.25), Mobius::special_conformal(0.1)] {
        assert!(mobius_check(&v, &mu, &xs, kappa, &quad()).unwrap().deviation < 1e-8);
    }
    assert!(matches!(
        mobius_check(&hwv_pair(2, 2, 0).unwrap(), &Mobius::IDENTITY, &xs, kappa, &quad()),
        Err(Error::NotTrivial)
    ));
    // the pole of x -> x / (1 - x) sits between the points
    assert!(mobius_check(&hwv_pair(2, 2, 1).unwrap(), &Mobius::special_conformal(-1.0), &[0.5, 1.5], kappa, &quad()).is_err());
}

#[test]
fn rational_identity_beyond_doublets() {
    for dims in [vec![3, 2, 2, 3], vec![2, 2, 2, 2], vec![3, 3, 3, 3]] {
        assert!(special_conformal_identity_check(&dims, 50, 7, 0.0).unwrap() < 1e-9, "{dims:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn vertex_correlators_are_null(
        dims in prop::collection::vec(1usize..=3, 3),
        gaps in prop::collection::vec(0.3f64..2.0, 2),
        kappa in 12.5f64..20.0,
    ) {
        let x = [0.0, gaps[0], gaps[0] + gaps[1]];
        let dv = dims.clone();
        let f = move |y: &[f64]| Ok(Complex64::from(pair_prefactor(y, &dv, kappa)));
        for j in 1..=3 {
            let r = apply_bsa(&build_bsa(j, &dims, kappa).unwrap(), &f, &x, &FdScheme::default()).unwrap();
            prop_assert!(r.relative() < 1e-6, "j = {}: {}", j, r.relative());
        }
    }

    #[test]
    fn bsa_is_proportional_to_the_sle_operator(
        p in prop::collection::vec(-1.0f64..1.0, 4),
        j in 1usize..=3,
        kappa in 4.5f64..16.0,
    ) {
        let f = move |y: &[f64]| {
            let (a, b) = (y[1] - y[0], y[2] - y[1]);
            Ok(Complex64::new(p[0] * a.powf(p[1]) + (p[2] * b).cos(), p[3] * (a * b).ln()))
        };
        let x = [0.0, 0.9, 2.1];
        let a = apply_bsa(&build_bsa(j, &[2, 2, 2], kappa).unwrap(), &f, &x, &FdScheme::default()).unwrap();
        let b = sle_pde_check(&f, &x, kappa, j, &FdScheme::default()).unwrap();
        let scale = a.scale.max(2.0 / kappa * b.scale);
        prop_assert!((a.value - 2.0 / kappa * b.value).norm() < 1e-8 * scale);
    }
}
