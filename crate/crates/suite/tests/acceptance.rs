//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use kkw::expr::eval;
use kkw::oracle::{crosscheck_phi, CrosscheckOptions};
use kkw::report::PhiDocument;
use kkw_core::clifford::{CliffordElement, Monomial};
use kkw_core::engine::{phi, PhiReport};
use kkw_core::gravity::{extrinsic_curvature, gravity_report};
use kkw_core::scalars::{Assignment, GaussianRational, ScalarPoly, Var};
use kkw_core::symbols::{
    build_symbol, dinv1_subleading_parts, f_dependent_q6, verify_f_independence, verify_inverse_leading,
    verify_q_minus4,
};
use kkw_core::{Operator, Perturbation, PoleRational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = (bool, String);

fn g(re_n: i64, re_d: i64, im_n: i64, im_d: i64) -> GaussianRational {
    GaussianRational::complex(re_n, re_d, im_n, im_d)
}

fn kappa_times(c: GaussianRational) -> ScalarPoly {
    ScalarPoly::kappa().scale(&c)
}

fn parsed(src: &str) -> PoleRational {
    let v = eval(src, 6).unwrap_or_else(|e| panic!("{}: {}", src, e));
    assert_eq!(v.pi_power, 0);
    v.poly.on_unit_sphere()
}

fn all(items: &[(&str, bool)]) -> Check {
    let failed: Vec<&str> = items.iter().filter(|(_, ok)| !ok).map(|(name, _)| *name).collect();
    if failed.is_empty() {
        (true, format!("{} checks", items.len()))
    } else {
        (false, format!("failed: {}", failed.join(", ")))
    }
}

fn value(r: &PhiReport, label: &str) -> ScalarPoly {
    r.case(label).map(|c| c.integral.clone()).unwrap_or_else(|| panic!("no case {}", label))
}

fn criterion_1() -> Check {
    let r = phi(6, 1, 3, Perturbation::None).unwrap();
    let sum = r.cases.iter().fold(ScalarPoly::zero(), |acc, c| &acc + &c.integral);
    let c = r.case("c").unwrap();
    all(&[
        ("aI vanishes with a reason", value(&r, "aI").is_zero() && r.case("aI").unwrap().vanished.is_some()),
        ("aII", value(&r, "aII") == kappa_times(g(-15, 16, 0, 1))),
        ("aIII", value(&r, "aIII") == kappa_times(g(25, 16, 0, 1))),
        ("b", value(&r, "b") == kappa_times(g(-25, 8, -35, 16))),
        ("c matches", c.matches == Some(true) && c.integral == kappa_times(g(55, 16, 0, 1))),
        ("total", r.total == kappa_times(g(15, 16, -35, 16)) && r.total == sum),
    ])
}

fn criterion_2() -> Check {
    let six = phi(6, 1, 3, Perturbation::None).unwrap();
    let five = phi(5, 1, 3, Perturbation::None).unwrap();
    let perturbed = phi(6, 2, 2, Perturbation::LeftMultiplyF).unwrap();
    let trace = |r: &PhiReport, label: &str| r.case(label).unwrap().trace.on_unit_sphere();

    let (first, second) = dinv1_subleading_parts(6).unwrap();
    let ds3 = build_symbol(Operator::Dinv3, -3, 6).unwrap().value.diff_xi(1);
    let b1 = first.pi_plus().unwrap().mul(&ds3).unwrap().trace(6).on_unit_sphere();
    let b2 = second
        .pi_plus()
        .unwrap()
        .scale(&ScalarPoly::kappa())
        .mul(&ds3)
        .unwrap()
        .trace(6)
        .on_unit_sphere();

    let f1_only: Assignment = [(Var::F0, GaussianRational::zero()), (Var::F1, GaussianRational::one())]
        .into_iter()
        .collect();
    let f1_part = trace(&perturbed, "aII").subst(&f1_only);

    all(&[
        (
            "aII trace",
            trace(&six, "aII") == parsed("kappa*(-8-24*i*xi+40*xi^2+24*i*xi^3)/((xi-i)^6*(xi+i)^4)"),
        ),
        ("aIII trace", trace(&six, "aIII") == parsed("kappa*(8*i-32*xi-8*i*xi^2)/((xi-i)^5*(xi+i)^4)")),
        (
            "b trace",
            trace(&six, "b") == parsed("kappa*(7+6*i-(20-15*i)*xi+(7-6*i)*xi^2+15*i*xi^3)/((xi-i)^5*(xi+i)^4)"),
        ),
        ("B2 trace", b2 == parsed("kappa*(4*i-11*xi-6*i*xi^2+3*xi^3)/((xi-i)^5*(xi+i)^3)")),
        ("B1 trace", b1 == parsed("kappa*(3+12*i*xi+3*xi^2)/((xi-i)^4*(xi+i)^3)")),
        ("c trace", trace(&six, "c") == parsed("kappa*(-7*i+26*xi+15*i*xi^2)/((xi-i)^5*(xi+i)^3)")),
        ("f1 trace", f1_part == parsed("(8*i-24*i*xi^2)/((xi-i)^4*(xi+i)^3)")),
        ("n=5 trace", trace(&five, "a") == parsed("(2*i-6*xi)/((xi-i)^3*(xi+i)^3)")),
    ])
}

fn criterion_3() -> Check {
    let r = phi(5, 1, 3, Perturbation::None).unwrap();
    let published = ScalarPoly::constant(g(0, 1, 3, 4));
    let gravity = gravity_report(&r).unwrap();
    let total_ok = r.total == published;
    let identity_ok = gravity.reference_identity_holds == Some(true);
    let (pass, detail) = all(&[("total (3/4)*pi*i", total_ok), ("gravity identity", identity_ok)]);
    (
        pass,
        format!(
            "{}; computed total ({})*pi*Omega_3, published ({})*pi*Omega_3",
            detail, r.total, published
        ),
    )
}

fn criterion_4() -> Check {
    let r = phi(6, 2, 2, Perturbation::LeftMultiplyF).unwrap();
    let kf0 = &ScalarPoly::kappa() * &ScalarPoly::f0();
    let three_i_f1 = ScalarPoly::f1().scale(&g(0, 1, 3, 1));
    let a2_published = &kf0.scale(&g(-5, 8, 0, 1)) + &three_i_f1;
    let (pass, detail) = all(&[
        ("aI vanishes", value(&r, "aI").is_zero()),
        ("aII", value(&r, "aII") == a2_published),
        ("aIII", value(&r, "aIII") == kf0.scale(&g(5, 8, 0, 1))),
        ("b + c = 0", (&value(&r, "b") + &value(&r, "c")).is_zero()),
        ("total", r.total == three_i_f1),
    ]);
    (
        pass,
        format!(
            "{}; computed aII ({})*pi, total ({})*pi; published total ({})*pi",
            detail,
            value(&r, "aII"),
            r.total,
            three_i_f1
        ),
    )
}

fn criterion_5() -> Check {
    let d1 = build_symbol(Operator::Dinv1, -1, 6).unwrap();
    let pi_plus = d1.value.pi_plus().unwrap().on_unit_sphere();
    let pi_plus_dxn = d1.dxn().unwrap().pi_plus().unwrap().on_unit_sphere();
    let (first, second) = dinv1_subleading_parts(6).unwrap();
    let sub = build_symbol(Operator::Dinv1, -2, 6).unwrap().value;
    let b1 = parsed("(1/(4*(xi-i)^2))*((5/2)*kappa*B - (5/2)*i*kappa*A - (2+i*xi)*A*B*P + i*P)");
    let b2 = parsed(
        "(kappa/2)*(B/(4*i*(xi-i)) + (B-i*A)/(8*(xi-i)^2) + (3*xi-7*i)/(8*(xi-i)^3)*(i*A-B))",
    );
    let parts_ok = first.pi_plus().unwrap().on_unit_sphere() == b1
        && second.pi_plus().unwrap().scale(&ScalarPoly::kappa()).on_unit_sphere() == b2
        && sub.pi_plus().unwrap().on_unit_sphere() == &b1 - &b2;
    let q6 = f_dependent_q6().unwrap();
    let q6_ok = q6.symbol == PoleRational::inv_xi_norm_sq(3).scale(&-ScalarPoly::f0())
        && q6.trace_on_unit_cosphere == ScalarPoly::f0().scale(&GaussianRational::from_integer(-8));
    all(&[
        ("inverse leading", verify_inverse_leading(6).unwrap().pass),
        ("q_-4 recursion", verify_q_minus4(6).unwrap().verdict.pass),
        ("pi+ sigma_-1", pi_plus == parsed("(A+i*B)/(2*(xi-i))")),
        (
            "pi+ dxn sigma_-1",
            pi_plus_dxn == parsed("P/(2*(xi-i)) + i*kappa*(i*A/(4*(xi-i)) + (A+i*B)/(4*(xi-i)^2))"),
        ),
        ("pi+ sigma_-2 = B1 - B2", parts_ok),
        ("f-independence", verify_f_independence(6).unwrap().pass()),
        ("f-dependent q_-6", q6_ok),
    ])
}

fn criterion_6() -> Check {
    let r = phi(6, 1, 3, Perturbation::None).unwrap();
    let k = extrinsic_curvature(6);
    let report = gravity_report(&r).unwrap();
    let constant = &GaussianRational::from_integer(16) / &g(-3, 1, 7, 1);
    let interior = report.interior.clone().unwrap();
    all(&[
        ("K = -(5/2) kappa", k == kappa_times(g(-5, 2, 0, 1))),
        ("(7i/8 - 3/8) K = total", &ScalarPoly::constant(g(-3, 8, 7, 8)) * &k == r.total),
        ("boundary constant 16/(7i-3)", report.boundary_constant == ScalarPoly::constant(constant)),
        (
            "boundary constant inverts the total",
            &report.boundary_constant * &r.total == k.scale(&GaussianRational::from_integer(2)),
        ),
        (
            "interior constants",
            &interior.wres_coefficient * &interior.gravity_constant == g(1, 16, 0, 1),
        ),
    ])
}

fn random_clifford(rng: &mut ChaCha8Rng, monomials: &[Monomial]) -> CliffordElement {
    let mut x = CliffordElement::zero();
    for _ in 0..rng.random_range(0..=4) {
        let m = monomials[rng.random_range(0..monomials.len())];
        let c = g(rng.random_range(-5..=5), rng.random_range(1..=3), rng.random_range(-5..=5), rng.random_range(1..=3));
        let mut s = ScalarPoly::constant(c);
        for v in Var::ALL {
            if rng.random_bool(0.3) {
                s = &s * &ScalarPoly::var(v);
            }
        }
        x.add_term(m, &s);
    }
    x
}

fn random_rational(rng: &mut ChaCha8Rng, proper: bool) -> PoleRational {
    let a = rng.random_range(1..=4);
    let b = rng.random_range(0..=3);
    let len = if proper { rng.random_range(0..a + b) } else { rng.random_range(0..=a + b + 2) };
    let num = (0..len).map(|_| random_clifford(rng, &Monomial::ALL)).collect();
    PoleRational::new(num, a, b)
}

const P_FREE: [Monomial; 4] = [Monomial::One, Monomial::A, Monomial::B, Monomial::AB];

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    let cyclic = (0..1000).all(|_| {
        let x = random_clifford(&mut rng, &Monomial::ALL);
        let y = random_clifford(&mut rng, &P_FREE);
        [5, 6].iter().all(|&n| x.mul(&y).unwrap().trace(n) == y.mul(&x).unwrap().trace(n))
    });

    let projectors = (0..500).all(|_| {
        let f = random_rational(&mut rng, true);
        let plus = f.pi_plus().unwrap();
        let minus = f.pi_minus().unwrap();
        &plus + &minus == f
            && plus.pi_plus().unwrap() == plus
            && minus.pi_minus().unwrap() == minus
            && plus.pi_minus().unwrap().is_zero()
            && minus.pi_plus().unwrap().is_zero()
    });

    let recombine = (0..200).all(|_| {
        let f = random_rational(&mut rng, false);
        f.partial_fractions().recombine().unwrap() == f
    });

    let confluent = (0..200).all(|_| {
        let a = random_clifford(&mut rng, &P_FREE);
        let b = random_clifford(&mut rng, &Monomial::ALL);
        let c = random_clifford(&mut rng, &P_FREE);
        a.mul(&b).unwrap().mul(&c).unwrap() == a.mul(&b.mul(&c).unwrap()).unwrap()
    });

    let ring = (0..200).all(|_| {
        let x = random_clifford(&mut rng, &Monomial::ALL);
        let y = random_clifford(&mut rng, &P_FREE);
        let z = random_clifford(&mut rng, &P_FREE);
        &x + &y == &y + &x
            && x.mul(&(&y + &z)).unwrap() == &x.mul(&y).unwrap() + &x.mul(&z).unwrap()
            && y.mul(&z).unwrap().mul(&x).unwrap() == y.mul(&z.mul(&x).unwrap()).unwrap()
    });

    let json = CONFIGS.iter().all(|&(n, p1, p2, pert)| {
        let first = PhiDocument::new(&phi(n, p1, p2, pert).unwrap()).to_json().unwrap();
        let second = PhiDocument::new(&phi(n, p1, p2, pert).unwrap()).to_json().unwrap();
        let again = PhiDocument::from_json(&first).unwrap().to_json().unwrap();
        first == second && first == again
    });

    all(&[
        ("trace cyclicity x1000", cyclic),
        ("projector algebra x500", projectors),
        ("partial-fraction recombination x200", recombine),
        ("rewriting confluence x200", confluent),
        ("ring axioms x200", ring),
        ("JSON round trip", json),
    ])
}

const CONFIGS: [(u32, u32, u32, Perturbation); 4] = [
    (6, 1, 3, Perturbation::None),
    (5, 1, 3, Perturbation::None),
    (6, 2, 2, Perturbation::LeftMultiplyF),
    (6, 2, 2, Perturbation::None),
];

fn criterion_8() -> Check {
    let opts = CrosscheckOptions::default();
    let mut items = Vec::new();
    let mut worst: f64 = 0.0;
    let mut spread: f64 = 0.0;
    for (n, p1, p2, pert) in CONFIGS {
        let check = crosscheck_phi(&phi(n, p1, p2, pert).unwrap(), &opts).unwrap();
        for v in check.cases.iter().chain(std::iter::once(&check.total)) {
            worst = worst.max(v.relative_error);
            spread = spread.max(v.spread);
        }
        items.push((format!("n={} p=({},{}) {}", n, p1, p2, pert.tag()), check.pass()));
        items.push((format!("negative control n={} p=({},{})", n, p1, p2), check.detects_shift(1e-6)));
    }
    let named: Vec<(&str, bool)> = items.iter().map(|(s, b)| (s.as_str(), *b)).collect();
    let (pass, detail) = all(&named);
    (
        pass,
        format!(
            "{}; {} seeds x {} directions, max relative error {:.1e}, max spread {:.1e}",
            detail,
            opts.seeds.len(),
            opts.directions,
            worst,
            spread
        ),
    )
}

type Criterion = (&'static str, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("phi(6,1,3) per-case values", criterion_1),
        ("intermediate trace integrands", criterion_2),
        ("phi(5,1,3) and its gravitational constant", criterion_3),
        ("phi(6,2,2) with left multiplication by f", criterion_4),
        ("symbol-level identities", criterion_5),
        ("gravitational assembly identities", criterion_6),
        ("property suites", criterion_7),
        ("numeric oracle agreement at 1e-8, spread below 1e-9", criterion_8),
    ];
    let mut failures = 0;
    for (idx, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (pass, detail) = run();
        if !pass {
            failures += 1;
        }
        println!(
            "{} criterion {}: {} ({}) [{:.2}s]",
            if pass { "PASS" } else { "FAIL" },
            idx + 1,
            name,
            detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {} failed", criteria.len() - failures, failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
