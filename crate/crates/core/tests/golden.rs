use kkw_core::engine::phi;
use kkw_core::gravity::{extrinsic_curvature, gravity_report};
use kkw_core::scalars::{GaussianRational, ScalarPoly};
use kkw_core::symbols::{f_dependent_q6, verify_f_independence, verify_inverse_leading};
use kkw_core::{Perturbation, PoleRational};

fn g(re_n: i64, re_d: i64, im_n: i64, im_d: i64) -> GaussianRational {
    GaussianRational::complex(re_n, re_d, im_n, im_d)
}

fn kappa_times(c: GaussianRational) -> ScalarPoly {
    ScalarPoly::kappa().scale(&c)
}

#[test]
fn six_dimensional_cases() {
    let r = phi(6, 1, 3, Perturbation::None).unwrap();
    let value = |label: &str| r.case(label).unwrap().integral.clone();
    assert!(value("aI").is_zero());
    assert!(r.case("aI").unwrap().vanished.is_some());
    assert_eq!(value("aII"), kappa_times(g(-15, 16, 0, 1)));
    assert_eq!(value("aIII"), kappa_times(g(25, 16, 0, 1)));
    assert_eq!(value("b"), kappa_times(g(-25, 8, -35, 16)));
    assert_eq!(value("c"), kappa_times(g(55, 16, 0, 1)));
    assert_eq!(r.total, kappa_times(g(15, 16, -35, 16)));
    assert_eq!((r.multiplier.pi_power, r.multiplier.omega_index), (1, 4));
    let sum = r.cases.iter().fold(ScalarPoly::zero(), |acc, c| &acc + &c.integral);
    assert_eq!(sum, r.total);
    assert!(r.all_match());
}

#[test]
fn five_dimensional_total() {
    let r = phi(5, 1, 3, Perturbation::None).unwrap();
    assert_eq!(r.cases.len(), 1);
    assert_eq!(r.total, ScalarPoly::constant(g(3, 4, 0, 1)));
    // the published value carries an extra factor of i
    assert_eq!(r.reference_total, Some(ScalarPoly::constant(g(0, 1, 3, 4))));
    assert_eq!(r.total_matches, Some(false));
}

#[test]
fn perturbed_square_cases() {
    let r = phi(6, 2, 2, Perturbation::LeftMultiplyF).unwrap();
    let value = |label: &str| r.case(label).unwrap().integral.clone();
    let kf0 = &ScalarPoly::kappa() * &ScalarPoly::f0();
    assert!(value("aI").is_zero());
    assert_eq!(value("aIII"), kf0.scale(&g(5, 8, 0, 1)));
    assert!((&value("b") + &value("c")).is_zero());
    assert_eq!(r.total, ScalarPoly::f1().scale(&g(1, 2, 0, 1)));
    assert_eq!(value("aII"), &kf0.scale(&g(-5, 8, 0, 1)) + &ScalarPoly::f1().scale(&g(1, 2, 0, 1)));
    assert!(r.group_checks.iter().all(|c| c.matches));
}

#[test]
fn unperturbed_square_vanishes() {
    assert!(phi(6, 2, 2, Perturbation::None).unwrap().total.is_zero());
}

#[test]
fn gravitational_constants() {
    let r = phi(6, 1, 3, Perturbation::None).unwrap();
    let k = extrinsic_curvature(6);
    assert_eq!(&ScalarPoly::constant(g(-3, 8, 7, 8)) * &k, r.total);
    let report = gravity_report(&r).unwrap();
    assert_eq!(report.coefficient_against_k, Some(g(-3, 8, 7, 8)));
    let expected = &GaussianRational::from_integer(16) / &g(-3, 1, 7, 1);
    assert_eq!(report.boundary_constant, ScalarPoly::constant(expected.clone()));
    assert_eq!(&report.boundary_constant * &r.total, k.scale(&GaussianRational::from_integer(2)));
    let interior = report.interior.unwrap();
    assert_eq!(&interior.wres_coefficient * &interior.gravity_constant, g(1, 16, 0, 1));
}

#[test]
fn five_dimensional_gravity_identity() {
    let report = gravity_report(&phi(5, 1, 3, Perturbation::None).unwrap()).unwrap();
    assert_eq!(report.reference_identity_holds, Some(true));
    assert_eq!(report.matches, Some(false));
}

#[test]
fn symbol_identities() {
    assert!(verify_inverse_leading(6).unwrap().pass);
    assert!(verify_f_independence(6).unwrap().pass());
    let q6 = f_dependent_q6().unwrap();
    assert_eq!(q6.symbol, PoleRational::inv_xi_norm_sq(3).scale(&-ScalarPoly::f0()));
    // integrating -8 f0 over the unit sphere S^5 gives the -8 f Omega_5 interior term
    assert_eq!(q6.trace_on_unit_cosphere, ScalarPoly::f0().scale(&GaussianRational::from_integer(-8)));
}
