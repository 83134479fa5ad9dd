//! Exact coefficient ring: Gaussian rationals and commutative polynomials over
//! them in the formal constants `kappa` (normal derivative of the collar
//! function at the boundary), `u` (`|xi'|^2`), `f0` and `f1` (a smooth
//! function and its normal derivative at the boundary point).

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact complex number with rational real and imaginary parts.
///
/// `BigRational` keeps both components in lowest terms with a positive
/// denominator, so derived equality is structural equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        GaussianRational::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// `num/den` as a real Gaussian rational. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        GaussianRational::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    /// `(re_num/re_den) + (im_num/im_den) i`.
    pub fn complex(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        GaussianRational::new(
            BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
            BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
        )
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// `re^2 + im^2`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussianRational::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => Self::from_integer(-1),
            _ => -Self::i(),
        }
    }

    pub fn scale_real(&self, r: &BigRational) -> Self {
        GaussianRational::new(&self.re * r, &self.im * r)
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// Least common multiple of the denominators of both components.
    pub fn denominator_lcm(&self) -> BigInt {
        num_integer::Integer::lcm(self.re.denom(), self.im.denom())
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(r: BigRational) -> Self {
        GaussianRational::new(r, BigRational::zero())
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero, like the rational division it wraps.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self * &rhs.inv().expect("division by zero Gaussian rational")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

macro_rules! forward_owned_binop {
    ($ty:ty, $tr:ident, $m:ident) => {
        impl $tr for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned_binop!(GaussianRational, Add, add);
forward_owned_binop!(GaussianRational, Sub, sub);
forward_owned_binop!(GaussianRational, Mul, mul);
forward_owned_binop!(GaussianRational, Div, div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl fmt::Display for GaussianRational {
    /// `a/b`, `c/d*i` or `(a/b + c/d*i)`; parseable by the expression grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}*i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "({} {} {}*i)", self.re, sign, self.im.abs())
            }
        }
    }
}

/// The formal commuting constants of the coefficient ring.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Var {
    Kappa,
    U,
    F0,
    F1,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::Kappa, Var::U, Var::F0, Var::F1];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Kappa => "kappa",
            Var::U => "u",
            Var::F0 => "f0",
            Var::F1 => "f1",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == name)
    }
}

/// Exponent vector over `(kappa, u, f0, f1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Exponents(pub [u32; 4]);

impl Exponents {
    pub fn of(var: Var, power: u32) -> Self {
        let mut e = [0; 4];
        e[var.index()] = power;
        Exponents(e)
    }

    pub fn get(&self, var: Var) -> u32 {
        self.0[var.index()]
    }

    pub fn is_constant(&self) -> bool {
        self.0 == [0; 4]
    }

    fn add(&self, other: &Exponents) -> Exponents {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Exponents(e)
    }

    fn checked_sub(&self, other: &Exponents) -> Option<Exponents> {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(Exponents(e))
    }

    /// `kappa^a*u^b*...` with unit exponents omitted; empty for constants.
    pub fn render(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for v in Var::ALL {
            match self.get(v) {
                0 => {}
                1 => parts.push(v.name().into()),
                p => parts.push(alloc::format!("{}^{}", v.name(), p)),
            }
        }
        parts.join("*")
    }
}

/// Polynomial in `kappa, u, f0, f1` with Gaussian-rational coefficients.
/// Zero coefficients are never stored, so derived equality is canonical.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct ScalarPoly {
    terms: BTreeMap<Exponents, GaussianRational>,
}

/// Partial assignment of exact values to basis constants.
pub type Assignment = BTreeMap<Var, GaussianRational>;

impl ScalarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(c, Exponents::default())
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(GaussianRational::one(), Exponents::of(v, 1))
    }

    pub fn monomial(c: GaussianRational, e: Exponents) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn kappa() -> Self {
        Self::var(Var::Kappa)
    }

    pub fn u() -> Self {
        Self::var(Var::U)
    }

    pub fn f0() -> Self {
        Self::var(Var::F0)
    }

    pub fn f1() -> Self {
        Self::var(Var::F1)
    }

    /// Inserts `c * x^e`, merging with any existing term.
    pub fn add_term(&mut self, e: Exponents, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponents, GaussianRational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &Exponents) -> GaussianRational {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// The value if the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                e.is_constant().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn mentions(&self, v: Var) -> bool {
        self.terms.keys().any(|e| e.get(v) > 0)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ScalarPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes exact values for some basis constants.
    pub fn subst(&self, assignments: &Assignment) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = e.0;
            for (var, value) in assignments {
                let p = rest[var.index()];
                if p > 0 {
                    coeff = &coeff * &value.pow(p);
                    rest[var.index()] = 0;
                }
            }
            out.add_term(Exponents(rest), coeff);
        }
        out
    }

    /// Shorthand for the restriction `u := 1`.
    pub fn on_unit_sphere(&self) -> Self {
        let mut a = Assignment::new();
        a.insert(Var::U, GaussianRational::one());
        self.subst(&a)
    }

    /// Floating-point evaluation with every basis constant assigned.
    pub fn eval_f64(&self, values: &[f64; 4]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut m = c.to_complex64();
            for (p, x) in e.0.iter().zip(values.iter()) {
                for _ in 0..*p {
                    m *= *x;
                }
            }
            acc += m;
        }
        acc
    }

    /// Exact quotient by a single-term divisor, `None` when the divisor is not
    /// a monomial or does not divide every term.
    pub fn div_by_monomial(&self, divisor: &ScalarPoly) -> Option<ScalarPoly> {
        if divisor.terms.len() != 1 {
            return None;
        }
        let (de, dc) = divisor.terms.iter().next()?;
        let inv = dc.inv()?;
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(e.checked_sub(de)?, c * &inv);
        }
        Some(out)
    }
}

impl From<GaussianRational> for ScalarPoly {
    fn from(c: GaussianRational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for ScalarPoly {
    fn from(n: i64) -> Self {
        Self::constant(GaussianRational::from_integer(n))
    }
}

impl Add for &ScalarPoly {
    type Output = ScalarPoly;
    fn add(self, rhs: &ScalarPoly) -> ScalarPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&ScalarPoly> for ScalarPoly {
    fn add_assign(&mut self, rhs: &ScalarPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&ScalarPoly> for ScalarPoly {
    fn sub_assign(&mut self, rhs: &ScalarPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Sub for &ScalarPoly {
    type Output = ScalarPoly;
    fn sub(self, rhs: &ScalarPoly) -> ScalarPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &ScalarPoly {
    type Output = ScalarPoly;
    fn mul(self, rhs: &ScalarPoly) -> ScalarPoly {
        let mut out = ScalarPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &ScalarPoly {
    type Output = ScalarPoly;
    fn neg(self) -> ScalarPoly {
        ScalarPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for ScalarPoly {
    type Output = ScalarPoly;
    fn neg(self) -> ScalarPoly {
        -&self
    }
}

forward_owned_binop!(ScalarPoly, Add, add);
forward_owned_binop!(ScalarPoly, Sub, sub);
forward_owned_binop!(ScalarPoly, Mul, mul);

/// One rendered term: sign, coefficient, and the `*`-joined factor list.
pub(crate) fn render_term(out: &mut String, first: bool, c: &GaussianRational, factors: &str) {
    use core::fmt::Write;
    // Pure imaginary coefficients print as a real coefficient on `...*i`.
    let (real, factors) = if c.re().is_zero() && !c.im().is_zero() {
        let f = if factors.is_empty() {
            String::from("i")
        } else {
            alloc::format!("{}*i", factors)
        };
        (c.im().clone(), f)
    } else if c.im().is_zero() {
        (c.re().clone(), String::from(factors))
    } else {
        if !first {
            out.push_str(" + ");
        }
        if factors.is_empty() {
            let _ = write!(out, "{}", c);
        } else {
            let _ = write!(out, "{}*{}", c, factors);
        }
        return;
    };
    let negative = real.is_negative();
    let mag = real.abs();
    match (first, negative) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
    if factors.is_empty() {
        let _ = write!(out, "{}", mag);
    } else if mag.is_one() {
        out.push_str(&factors);
    } else if mag.is_integer() {
        let _ = write!(out, "{}*{}", mag, factors);
    } else {
        let _ = write!(out, "({})*{}", mag, factors);
    }
}

impl fmt::Display for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            render_term(&mut out, idx == 0, c, &e.render());
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
        GaussianRational::complex(re.0, re.1, im.0, im.1)
    }

    #[test]
    fn conjugate_product() {
        let a = g((1, 2), (1, 1));
        let b = g((1, 2), (-1, 1));
        assert_eq!(&a * &b, GaussianRational::ratio(5, 4));
    }

    #[test]
    fn like_terms_merge() {
        let ku = &ScalarPoly::kappa() * &ScalarPoly::u();
        let sum = &ku + &ku;
        assert_eq!(sum, ku.scale(&GaussianRational::from_integer(2)));
        assert_eq!(sum.num_terms(), 1);
    }

    #[test]
    fn minus_i_squared() {
        let m = ScalarPoly::constant(-GaussianRational::i());
        assert_eq!(&m * &m, ScalarPoly::from(-1));
    }

    #[test]
    fn substitution() {
        let one = GaussianRational::one();
        let ku = &ScalarPoly::kappa() * &ScalarPoly::u();
        assert_eq!(ku.on_unit_sphere(), ScalarPoly::kappa());
        assert_eq!(ScalarPoly::u().pow(2).on_unit_sphere(), ScalarPoly::one());
        let mut a = Assignment::new();
        a.insert(Var::F0, GaussianRational::zero());
        let f0k = &ScalarPoly::f0() * &ScalarPoly::kappa();
        assert!(f0k.subst(&a).is_zero());
        assert!(!ScalarPoly::u().on_unit_sphere().mentions(Var::U));
        assert_eq!(ScalarPoly::one().subst(&a), ScalarPoly::constant(one));
    }

    #[test]
    fn float_evaluation() {
        let p = ScalarPoly::kappa().scale(&GaussianRational::ratio(-15, 16));
        let v = p.eval_f64(&[0.3, 1.0, 0.0, 0.0]);
        assert!((v.re + 0.28125).abs() < 1e-15 && v.im == 0.0);

        let q = ScalarPoly::kappa().scale(&g((15, 16), (-35, 16)));
        let v = q.eval_f64(&[1.0, 1.0, 0.0, 0.0]);
        assert!((v.re - 0.9375).abs() < 1e-15 && (v.im + 2.1875).abs() < 1e-15);

        assert_eq!(ScalarPoly::zero().eval_f64(&[1.0; 4]), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn inverse_and_division() {
        let z = g((-3, 1), (7, 1));
        assert_eq!(&z * &z.inv().unwrap(), GaussianRational::one());
        assert!(GaussianRational::zero().inv().is_none());

        let p = ScalarPoly::kappa().scale(&g((15, 16), (-35, 16)));
        let k = ScalarPoly::kappa().scale(&GaussianRational::ratio(-5, 2));
        let q = p.div_by_monomial(&k).unwrap();
        assert_eq!(q, ScalarPoly::constant(g((-3, 8), (7, 8))));
        assert!(ScalarPoly::one().div_by_monomial(&ScalarPoly::kappa()).is_none());
    }

    #[test]
    fn rendering() {
        let p = (&ScalarPoly::kappa() * &ScalarPoly::u()).scale(&GaussianRational::from_integer(-4));
        assert_eq!(alloc::format!("{}", p), "-4*kappa*u");
        let q = ScalarPoly::constant(g((3, 4), (0, 1)));
        assert_eq!(alloc::format!("{}", q), "3/4");
        let r = ScalarPoly::kappa().scale(&g((15, 16), (-35, 16)));
        assert_eq!(alloc::format!("{}", r), "(15/16 - 35/16*i)*kappa");
        let s = ScalarPoly::f1().scale(&g((0, 1), (3, 1)));
        assert_eq!(alloc::format!("{}", s), "3*f1*i");
        assert_eq!(alloc::format!("{}", ScalarPoly::zero()), "0");
    }
}
