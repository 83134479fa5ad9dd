use kkw_core::clifford::{CliffordElement, Monomial};
use kkw_core::scalars::{Exponents, GaussianRational, ScalarPoly};
use kkw_core::{Pole, PoleRational};
use proptest::prelude::*;

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(a, b, c, d)| GaussianRational::complex(a, b, c, d))
}

fn scalar() -> impl Strategy<Value = ScalarPoly> {
    prop::collection::vec((gaussian(), prop::array::uniform4(0u32..=2)), 0..=3).prop_map(|terms| {
        ScalarPoly::from_terms(terms.into_iter().map(|(c, e)| (Exponents(e), c)))
    })
}

fn clifford_from(monomials: &'static [Monomial]) -> impl Strategy<Value = CliffordElement> {
    prop::collection::vec((prop::sample::select(monomials), scalar()), 0..=4).prop_map(|terms| {
        let mut x = CliffordElement::zero();
        for (m, s) in terms {
            x.add_term(m, &s);
        }
        x
    })
}

const P_FREE: &[Monomial] = &[Monomial::One, Monomial::A, Monomial::B, Monomial::AB];

fn clifford() -> impl Strategy<Value = CliffordElement> {
    clifford_from(&Monomial::ALL)
}

fn p_free() -> impl Strategy<Value = CliffordElement> {
    clifford_from(P_FREE)
}

/// Constant-coefficient Clifford element, so that rational functions stay small.
fn simple_clifford() -> impl Strategy<Value = CliffordElement> {
    prop::collection::vec((prop::sample::select(&Monomial::ALL[..]), gaussian()), 0..=3).prop_map(|terms| {
        let mut x = CliffordElement::zero();
        for (m, c) in terms {
            x.add_term(m, &ScalarPoly::constant(c));
        }
        x
    })
}

fn rational_with(max_degree: usize) -> impl Strategy<Value = PoleRational> {
    (prop::collection::vec(simple_clifford(), 0..=max_degree), 0u32..=4, 0u32..=4)
        .prop_map(|(num, a, b)| PoleRational::new(num, a, b))
}

/// Numerator degree strictly below the denominator degree.
fn proper_rational() -> impl Strategy<Value = PoleRational> {
    (1u32..=4, 0u32..=3)
        .prop_flat_map(|(a, b)| (prop::collection::vec(simple_clifford(), 0..(a + b) as usize), Just(a), Just(b)))
        .prop_map(|(num, a, b)| PoleRational::new(num, a, b))
}

fn small_point() -> impl Strategy<Value = GaussianRational> {
    (-5i64..=5, 1i64..=3, -5i64..=5, 1i64..=3)
        .prop_map(|(a, b, c, d)| GaussianRational::complex(a, b, c, d))
        .prop_filter("avoid the poles", |x| {
            *x != GaussianRational::i() && *x != -GaussianRational::i()
        })
}

proptest! {
    #[test]
    fn scalar_ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &ScalarPoly::one(), a);
    }

    #[test]
    fn clifford_ring_axioms(x in clifford(), y in p_free(), z in p_free()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(x.mul(&(&y + &z)).unwrap(), &x.mul(&y).unwrap() + &x.mul(&z).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(x.mul(&CliffordElement::one()).unwrap(), x.clone());
    }

    /// Grouping a product of generators differently never changes its normal form.
    #[test]
    fn rewriting_is_confluent(a in p_free(), b in clifford(), c in p_free(), d in p_free()) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap().mul(&d).unwrap();
        let right = a.mul(&b.mul(&c.mul(&d).unwrap()).unwrap()).unwrap();
        let middle = a.mul(&b.mul(&c).unwrap()).unwrap().mul(&d).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(&left, &middle);
    }

    #[test]
    fn p_squared_is_rejected(x in p_free()) {
        let p = CliffordElement::p();
        let px = p.mul(&x).unwrap();
        prop_assert_eq!(p.mul(&px).is_err(), !x.is_zero());
    }

    #[test]
    fn pole_rational_ring_axioms(f in rational_with(3), g in rational_with(3), h in rational_with(3)) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert!((&f - &f).is_zero());
        if f.p_degree() + g.p_degree() <= 1 && g.p_degree() + h.p_degree() <= 1 && f.p_degree() + h.p_degree() <= 1 {
            prop_assert_eq!(f.mul(&(&g + &h)).unwrap(), &f.mul(&g).unwrap() + &f.mul(&h).unwrap());
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(f in rational_with(3), g in rational_with(3), x in small_point()) {
        prop_assume!(f.p_degree() + g.p_degree() <= 1);
        let fx = f.eval(&x).unwrap();
        let gx = g.eval(&x).unwrap();
        prop_assert_eq!((&f + &g).eval(&x).unwrap(), &fx + &gx);
        prop_assert_eq!(f.mul(&g).unwrap().eval(&x).unwrap(), fx.mul(&gx).unwrap());
    }

    /// Normal forms do not depend on how a fraction was built up.
    #[test]
    fn normalization_is_confluent(f in rational_with(3), a in 0u32..=2, b in 0u32..=2) {
        let poles = PoleRational::pole_power(Pole::Plus, a).mul(&PoleRational::pole_power(Pole::Minus, b)).unwrap();
        let factor = PoleRational::scalar_poly(&[-Pole::Plus.location(), GaussianRational::one()])
            .pow(a)
            .unwrap()
            .mul(&PoleRational::scalar_poly(&[-Pole::Minus.location(), GaussianRational::one()]).pow(b).unwrap())
            .unwrap();
        prop_assert_eq!(f.mul(&poles).unwrap().mul(&factor).unwrap(), f.clone());
        prop_assert_eq!(f.mul(&factor).unwrap().mul(&poles).unwrap(), f);
    }

    #[test]
    fn partial_fractions_recombine(f in rational_with(8)) {
        prop_assert_eq!(f.partial_fractions().recombine().unwrap(), f);
    }

    #[test]
    fn differentiation_commutes_with_partial_fractions(f in rational_with(6)) {
        let pf = f.partial_fractions();
        let mut termwise = PoleRational::polynomial(pf.polynomial.clone()).diff_xi(1);
        for (pole, m, c) in pf.pole_terms() {
            let term = PoleRational::pole_power(pole, m).scale_clifford_left(&c).unwrap();
            termwise = &termwise + &term.diff_xi(1);
        }
        prop_assert_eq!(termwise, f.diff_xi(1));
    }

    #[test]
    fn line_integral_sees_only_the_upper_projection(f in proper_rational(), g in proper_rational()) {
        let plus = f.pi_plus().unwrap();
        let minus = f.pi_minus().unwrap();
        prop_assert_eq!(plus.residue_plus(), f.residue_plus());
        prop_assert!(minus.residue_plus().is_zero());
        prop_assert_eq!((&f + &g).residue_plus(), &f.residue_plus() + &g.residue_plus());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn trace_is_cyclic(x in clifford(), y in p_free(), n in prop::sample::select(vec![5u32, 6])) {
        let xy = x.mul(&y).unwrap().trace(n);
        let yx = y.mul(&x).unwrap().trace(n);
        prop_assert_eq!(xy, yx);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn projectors_are_complementary_idempotents(f in proper_rational()) {
        let plus = f.pi_plus().unwrap();
        let minus = f.pi_minus().unwrap();
        prop_assert_eq!(&plus + &minus, f);
        prop_assert_eq!(plus.pi_plus().unwrap(), plus.clone());
        prop_assert_eq!(minus.pi_minus().unwrap(), minus.clone());
        prop_assert!(plus.pi_minus().unwrap().is_zero());
        prop_assert!(minus.pi_plus().unwrap().is_zero());
        prop_assert_eq!(plus.order_at(Pole::Minus), 0);
        prop_assert_eq!(minus.order_at(Pole::Plus), 0);
    }
}
