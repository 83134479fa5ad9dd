//! Rational functions of `xi_n` with Clifford-valued numerator coefficients
//! and denominator `(xi_n - i)^a (xi_n + i)^b`.
//!
//! After restriction to `|xi'| = 1`, `|xi|^2 = 1 + xi_n^2 = (xi_n - i)(xi_n + i)`,
//! so every symbol needed at the boundary point lives in this class.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::clifford::{CliffordElement, Monomial};
use crate::error::{Error, Result};
use crate::scalars::{render_term, Assignment, GaussianRational, ScalarPoly};

/// One of the two admissible pole locations.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Pole {
    /// `xi_n = +i`
    Plus,
    /// `xi_n = -i`
    Minus,
}

impl Pole {
    pub fn location(self) -> GaussianRational {
        match self {
            Pole::Plus => GaussianRational::i(),
            Pole::Minus => -GaussianRational::i(),
        }
    }

    pub fn other(self) -> Pole {
        match self {
            Pole::Plus => Pole::Minus,
            Pole::Minus => Pole::Plus,
        }
    }

    fn factor_text(self) -> &'static str {
        match self {
            Pole::Plus => "(xi-i)",
            Pole::Minus => "(xi+i)",
        }
    }
}

type Poly = Vec<CliffordElement>;

fn trim(p: &mut Poly) {
    while p.last().is_some_and(CliffordElement::is_zero) {
        p.pop();
    }
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![CliffordElement::zero(); a.len().max(b.len())];
    for (k, c) in a.iter().enumerate() {
        out[k] += c;
    }
    for (k, c) in b.iter().enumerate() {
        out[k] += c;
    }
    trim(&mut out);
    out
}

fn poly_mul(a: &Poly, b: &Poly) -> Result<Poly> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = vec![CliffordElement::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] += &x.mul(y)?;
        }
    }
    trim(&mut out);
    Ok(out)
}

fn poly_scale(a: &Poly, c: &GaussianRational) -> Poly {
    let mut out: Poly = a.iter().map(|x| x.scale_by(c)).collect();
    trim(&mut out);
    out
}

/// Multiplies by `(xi - r)`.
fn poly_mul_linear(a: &Poly, r: &GaussianRational) -> Poly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![CliffordElement::zero(); a.len() + 1];
    for (k, c) in a.iter().enumerate() {
        out[k + 1] += c;
        out[k] += &c.scale_by(&-r);
    }
    trim(&mut out);
    out
}

fn poly_mul_pole_power(a: &Poly, pole: Pole, e: u32) -> Poly {
    let r = pole.location();
    let mut out = a.clone();
    for _ in 0..e {
        out = poly_mul_linear(&out, &r);
    }
    out
}

fn poly_eval(a: &Poly, x: &GaussianRational) -> CliffordElement {
    let mut acc = CliffordElement::zero();
    for c in a.iter().rev() {
        acc = acc.scale_by(x);
        acc += c;
    }
    acc
}

/// Synthetic division by `(xi - r)`; returns `(quotient, remainder)`.
fn poly_div_linear(a: &Poly, r: &GaussianRational) -> (Poly, CliffordElement) {
    if a.is_empty() {
        return (Vec::new(), CliffordElement::zero());
    }
    let n = a.len();
    let mut q = vec![CliffordElement::zero(); n - 1];
    let mut carry = CliffordElement::zero();
    for k in (0..n).rev() {
        let v = &a[k] + &carry.scale_by(r);
        if k == 0 {
            carry = v;
        } else {
            q[k - 1] = v.clone();
            carry = v;
        }
    }
    trim(&mut q);
    (q, carry)
}

fn poly_diff(a: &Poly) -> Poly {
    let mut out: Poly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.scale_by(&GaussianRational::from_integer(k as i64)))
        .collect();
    trim(&mut out);
    out
}

/// Divides by the monic `(xi - i)^a (xi + i)^b`; returns `(quotient, remainder)`.
fn poly_divmod_monic(a: &Poly, divisor: &Poly) -> (Poly, Poly) {
    let dn = divisor.len() - 1;
    if a.len() <= dn {
        return (Vec::new(), a.clone());
    }
    let mut rem = a.clone();
    let mut q = vec![CliffordElement::zero(); a.len() - dn];
    for k in (0..q.len()).rev() {
        let lead = rem[k + dn].clone();
        if lead.is_zero() {
            continue;
        }
        for (j, d) in divisor.iter().enumerate() {
            let scalar = d.as_scalar().expect("denominator is scalar");
            rem[k + j] = &rem[k + j] - &lead.scale(&scalar);
        }
        q[k] = lead;
    }
    trim(&mut q);
    trim(&mut rem);
    (q, rem)
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn binomial(n: u32, k: u32) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `N(xi) / ((xi - i)^a (xi + i)^b)`, kept reduced: the numerator does not
/// vanish at a pole whose order is positive.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct PoleRational {
    numerator: Poly,
    plus_order: u32,
    minus_order: u32,
}

/// Result of [`PoleRational::partial_fractions`].
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PartialFractions {
    /// Coefficients of the polynomial part, lowest degree first.
    pub polynomial: Vec<CliffordElement>,
    /// `plus[m - 1]` is the coefficient of `1/(xi - i)^m`.
    pub plus: Vec<CliffordElement>,
    /// `minus[m - 1]` is the coefficient of `1/(xi + i)^m`.
    pub minus: Vec<CliffordElement>,
}

impl PartialFractions {
    /// `(pole, order, coefficient)` triples with nonzero coefficient.
    pub fn pole_terms(&self) -> Vec<(Pole, u32, CliffordElement)> {
        let mut out = Vec::new();
        for (pole, list) in [(Pole::Plus, &self.plus), (Pole::Minus, &self.minus)] {
            for (m, c) in list.iter().enumerate() {
                if !c.is_zero() {
                    out.push((pole, m as u32 + 1, c.clone()));
                }
            }
        }
        out
    }

    /// Sums the pieces back into one rational function.
    pub fn recombine(&self) -> Result<PoleRational> {
        let mut out = PoleRational::polynomial(self.polynomial.clone());
        for (pole, m, c) in self.pole_terms() {
            out = &out + &PoleRational::pole_power(pole, m).scale_clifford_left(&c)?;
        }
        Ok(out)
    }
}

/// Exact value of a real-line integral: `coefficient * pi`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LineIntegral {
    /// The value with the single owed factor of `pi` removed.
    pub coefficient: CliffordElement,
    pub pi_power: u32,
}

impl PoleRational {
    pub fn new(numerator: Vec<CliffordElement>, plus_order: u32, minus_order: u32) -> Self {
        let mut r = PoleRational {
            numerator,
            plus_order,
            minus_order,
        };
        r.reduce();
        r
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn polynomial(coeffs: Vec<CliffordElement>) -> Self {
        Self::new(coeffs, 0, 0)
    }

    pub fn constant(c: CliffordElement) -> Self {
        Self::polynomial(vec![c])
    }

    pub fn scalar(s: ScalarPoly) -> Self {
        Self::constant(CliffordElement::scalar(s))
    }

    pub fn one() -> Self {
        Self::scalar(ScalarPoly::one())
    }

    /// The variable `xi_n`.
    pub fn xi() -> Self {
        Self::polynomial(vec![CliffordElement::zero(), CliffordElement::one()])
    }

    /// Scalar polynomial in `xi_n` from Gaussian-rational coefficients, lowest first.
    pub fn scalar_poly(coeffs: &[GaussianRational]) -> Self {
        Self::polynomial(
            coeffs
                .iter()
                .map(|c| CliffordElement::scalar(ScalarPoly::constant(c.clone())))
                .collect(),
        )
    }

    /// `1 / (xi -+ i)^m`.
    pub fn pole_power(pole: Pole, m: u32) -> Self {
        match pole {
            Pole::Plus => Self::new(vec![CliffordElement::one()], m, 0),
            Pole::Minus => Self::new(vec![CliffordElement::one()], 0, m),
        }
    }

    /// `1 / (1 + xi_n^2)^m`, i.e. `|xi|^{-2m}` on the unit cosphere.
    pub fn inv_xi_norm_sq(m: u32) -> Self {
        Self::new(vec![CliffordElement::one()], m, m)
    }

    /// `(1 + xi_n^2)^m`.
    pub fn xi_norm_sq(m: u32) -> Self {
        let base = poly_mul_pole_power(&vec![CliffordElement::one()], Pole::Plus, m);
        Self::polynomial(poly_mul_pole_power(&base, Pole::Minus, m))
    }

    /// `c(xi) = A + xi_n B`.
    pub fn c_xi() -> Self {
        Self::polynomial(vec![CliffordElement::a(), CliffordElement::b()])
    }

    pub fn numerator(&self) -> &[CliffordElement] {
        &self.numerator
    }

    pub fn plus_order(&self) -> u32 {
        self.plus_order
    }

    pub fn minus_order(&self) -> u32 {
        self.minus_order
    }

    pub fn order_at(&self, pole: Pole) -> u32 {
        match pole {
            Pole::Plus => self.plus_order,
            Pole::Minus => self.minus_order,
        }
    }

    /// Degree of the numerator; `None` for the zero function.
    pub fn numerator_degree(&self) -> Option<usize> {
        self.numerator.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    pub fn is_polynomial(&self) -> bool {
        self.plus_order == 0 && self.minus_order == 0
    }

    /// Numerator degree strictly below the denominator degree.
    pub fn is_proper(&self) -> bool {
        self.numerator.len() <= (self.plus_order + self.minus_order) as usize
    }

    pub fn is_scalar(&self) -> bool {
        self.numerator.iter().all(CliffordElement::is_scalar)
    }

    pub fn p_degree(&self) -> u32 {
        self.numerator.iter().map(CliffordElement::p_degree).max().unwrap_or(0)
    }

    fn reduce(&mut self) {
        trim(&mut self.numerator);
        if self.numerator.is_empty() {
            self.plus_order = 0;
            self.minus_order = 0;
            return;
        }
        for pole in [Pole::Plus, Pole::Minus] {
            let r = pole.location();
            while self.order_at(pole) > 0 {
                let (q, rem) = poly_div_linear(&self.numerator, &r);
                if !rem.is_zero() {
                    break;
                }
                self.numerator = q;
                match pole {
                    Pole::Plus => self.plus_order -= 1,
                    Pole::Minus => self.minus_order -= 1,
                }
            }
        }
    }

    /// Numerator rewritten over the larger denominator `(xi-i)^a (xi+i)^b`.
    fn lifted_numerator(&self, a: u32, b: u32) -> Poly {
        let n = poly_mul_pole_power(&self.numerator, Pole::Plus, a - self.plus_order);
        poly_mul_pole_power(&n, Pole::Minus, b - self.minus_order)
    }

    /// Product; Clifford coefficients multiply in order `self * rhs`.
    pub fn mul(&self, rhs: &PoleRational) -> Result<PoleRational> {
        Ok(PoleRational::new(
            poly_mul(&self.numerator, &rhs.numerator)?,
            self.plus_order + rhs.plus_order,
            self.minus_order + rhs.minus_order,
        ))
    }

    pub fn scale(&self, s: &ScalarPoly) -> PoleRational {
        PoleRational::new(
            self.numerator.iter().map(|c| c.scale(s)).collect(),
            self.plus_order,
            self.minus_order,
        )
    }

    pub fn scale_by(&self, c: &GaussianRational) -> PoleRational {
        PoleRational::new(poly_scale(&self.numerator, c), self.plus_order, self.minus_order)
    }

    pub fn scale_clifford_left(&self, c: &CliffordElement) -> Result<PoleRational> {
        PoleRational::constant(c.clone()).mul(self)
    }

    pub fn scale_clifford_right(&self, c: &CliffordElement) -> Result<PoleRational> {
        self.mul(&PoleRational::constant(c.clone()))
    }

    pub fn pow(&self, e: u32) -> Result<PoleRational> {
        let mut acc = PoleRational::one();
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Applies `f` to every numerator coefficient and re-reduces.
    pub fn map_coefficients(&self, f: impl Fn(&CliffordElement) -> CliffordElement) -> PoleRational {
        PoleRational::new(
            self.numerator.iter().map(f).collect(),
            self.plus_order,
            self.minus_order,
        )
    }

    pub fn subst(&self, a: &Assignment) -> PoleRational {
        self.map_coefficients(|c| c.subst(a))
    }

    /// Restriction `u := 1`.
    pub fn on_unit_sphere(&self) -> PoleRational {
        self.map_coefficients(CliffordElement::on_unit_sphere)
    }

    /// Fiber trace of every coefficient; the result is scalar.
    pub fn trace(&self, n: u32) -> PoleRational {
        self.map_coefficients(|c| CliffordElement::scalar(c.trace(n)))
    }

    pub fn frame_identify_p(&self) -> PoleRational {
        self.map_coefficients(CliffordElement::frame_identify_p)
    }

    /// Derivative `d/dxi_n` of `N / ((xi-i)^a (xi+i)^b)`.
    fn diff_once(&self) -> PoleRational {
        if self.is_zero() {
            return PoleRational::zero();
        }
        let (a, b) = (self.plus_order, self.minus_order);
        // d/dxi [N (xi-i)^-a (xi+i)^-b]
        //   = [N' (xi-i)(xi+i) - a N (xi+i) - b N (xi-i)] / ((xi-i)^(a+1) (xi+i)^(b+1))
        let n = &self.numerator;
        let t1 = poly_mul_pole_power(&poly_mul_pole_power(&poly_diff(n), Pole::Plus, 1), Pole::Minus, 1);
        let t2 = poly_scale(
            &poly_mul_pole_power(n, Pole::Minus, 1),
            &GaussianRational::from_integer(-(a as i64)),
        );
        let t3 = poly_scale(
            &poly_mul_pole_power(n, Pole::Plus, 1),
            &GaussianRational::from_integer(-(b as i64)),
        );
        PoleRational::new(poly_add(&poly_add(&t1, &t2), &t3), a + 1, b + 1)
    }

    /// `k`-th derivative in `xi_n`.
    pub fn diff_xi(&self, k: u32) -> PoleRational {
        let mut out = self.clone();
        for _ in 0..k {
            out = out.diff_once();
        }
        out
    }

    pub fn eval(&self, x: &GaussianRational) -> Option<CliffordElement> {
        let n = poly_eval(&self.numerator, x);
        let d = (x - &GaussianRational::i()).pow(self.plus_order)
            * (x + &GaussianRational::i()).pow(self.minus_order);
        Some(n.scale_by(&d.inv()?))
    }

    /// Laurent coefficients of the principal part at `pole`:
    /// `out[m - 1]` multiplies `1/(xi - pole)^m`.
    ///
    /// Taylor-expands `N(xi) * (xi - other)^{-b}` about the pole.
    fn principal_part(&self, numerator: &Poly, pole: Pole) -> Vec<CliffordElement> {
        let order = self.order_at(pole);
        if order == 0 {
            return Vec::new();
        }
        let other_order = self.order_at(pole.other());
        let at = pole.location();
        // pole - other = +-2i
        let gap = &at - &pole.other().location();
        let gap_inv = gap.inv().expect("poles are distinct");

        // Taylor coefficients of N about the pole: N(at + t) = sum n_k t^k.
        let mut shifted = numerator.clone();
        let mut taylor = Vec::with_capacity(order as usize);
        for _ in 0..order {
            let (q, r) = poly_div_linear(&shifted, &at);
            taylor.push(r);
            shifted = q;
        }
        // (gap + t)^{-b} = gap^{-b} sum_m binom(-b, m) (t/gap)^m
        let mut series = Vec::with_capacity(order as usize);
        let base = gap_inv.pow(other_order);
        let mut binom = GaussianRational::one();
        for m in 0..order {
            series.push(&(&binom * &base) * &gap_inv.pow(m));
            let num = -(other_order as i64) - m as i64;
            binom = binom.scale_real(&BigRational::new(BigInt::from(num), BigInt::from(m as i64 + 1)));
        }
        // coefficient of t^j in the product, j < order; t^j / t^order = 1/(xi-at)^(order-j)
        let mut out = vec![CliffordElement::zero(); order as usize];
        for j in 0..order as usize {
            let mut acc = CliffordElement::zero();
            for k in 0..=j {
                acc += &taylor[k].scale_by(&series[j - k]);
            }
            out[order as usize - 1 - j] = acc;
        }
        out
    }

    /// Exact decomposition into a polynomial part and principal parts at `+-i`.
    pub fn partial_fractions(&self) -> PartialFractions {
        let mut den = vec![CliffordElement::one()];
        den = poly_mul_pole_power(&den, Pole::Plus, self.plus_order);
        den = poly_mul_pole_power(&den, Pole::Minus, self.minus_order);
        let (q, rem) = poly_divmod_monic(&self.numerator, &den);
        let mut plus = self.principal_part(&rem, Pole::Plus);
        let mut minus = self.principal_part(&rem, Pole::Minus);
        trim(&mut plus);
        trim(&mut minus);
        PartialFractions {
            polynomial: q,
            plus,
            minus,
        }
    }

    fn from_principal(pole: Pole, coeffs: &[CliffordElement]) -> PoleRational {
        // sum_m c_m / (xi - p)^m = [sum_m c_m (xi - p)^(M - m)] / (xi - p)^M
        let order = coeffs.len() as u32;
        let mut num: Poly = Vec::new();
        for (idx, c) in coeffs.iter().enumerate() {
            let m = idx as u32 + 1;
            let term = poly_mul_pole_power(&vec![c.clone()], pole, order - m);
            num = poly_add(&num, &term);
        }
        match pole {
            Pole::Plus => PoleRational::new(num, order, 0),
            Pole::Minus => PoleRational::new(num, 0, order),
        }
    }

    /// `pi^+` keeps the principal parts at `+i`, `pi^-` those at `-i`.
    /// Defined here only for proper functions.
    pub fn pi_half(&self, side: Pole) -> Result<PoleRational> {
        let pf = self.partial_fractions();
        if !pf.polynomial.is_empty() {
            return Err(Error::ImproperRational);
        }
        Ok(match side {
            Pole::Plus => Self::from_principal(Pole::Plus, &pf.plus),
            Pole::Minus => Self::from_principal(Pole::Minus, &pf.minus),
        })
    }

    pub fn pi_plus(&self) -> Result<PoleRational> {
        self.pi_half(Pole::Plus)
    }

    pub fn pi_minus(&self) -> Result<PoleRational> {
        self.pi_half(Pole::Minus)
    }

    /// Residue at `+i` by the derivative formula
    /// `1/(a-1)! d^{a-1}/dxi^{a-1} [N / (xi+i)^b] at xi = i`, expanded by Leibniz.
    pub fn residue_plus(&self) -> CliffordElement {
        let a = self.plus_order;
        if a == 0 {
            return CliffordElement::zero();
        }
        let b = self.minus_order as i64;
        let m = a - 1;
        let i = GaussianRational::i();
        let two_i = GaussianRational::from_integer(2) * &i;
        let mut acc = CliffordElement::zero();
        let mut deriv = self.numerator.clone();
        // sum_{k} C(m,k) N^{(k)}(i) * d^{m-k}/dxi^{m-k} (xi+i)^{-b} at i
        for k in 0..=m {
            let nk = poly_eval(&deriv, &i);
            let s = m - k;
            // d^s (xi+i)^{-b} = (-b)(-b-1)...(-b-s+1) (xi+i)^{-b-s}
            let mut falling = BigInt::one();
            for t in 0..s as i64 {
                falling *= BigInt::from(-b - t);
            }
            let power = two_i.inv().expect("nonzero").pow((b + s as i64) as u32);
            let factor = power.scale_real(&BigRational::from_integer(falling * binomial(m, k)));
            acc += &nk.scale_by(&factor);
            deriv = poly_diff(&deriv);
        }
        acc.scale_by(&GaussianRational::from(BigRational::new(BigInt::one(), factorial(m))))
    }

    /// `int_R f(xi_n) dxi_n = 2 pi i Res_{+i}`, returned as the coefficient of `pi`.
    pub fn integrate_line(&self) -> Result<LineIntegral> {
        let total = (self.plus_order + self.minus_order) as usize;
        if let Some(deg) = self.numerator_degree() {
            if deg + 2 > total {
                return Err(Error::NotIntegrable {
                    numerator_degree: deg,
                    max: total.saturating_sub(2),
                });
            }
        }
        let two_i = GaussianRational::from_integer(2) * GaussianRational::i();
        Ok(LineIntegral {
            coefficient: self.residue_plus().scale_by(&two_i),
            pi_power: 1,
        })
    }

    /// Scalar coefficients, or an error when Clifford content remains.
    pub fn scalar_numerator(&self) -> Result<Vec<ScalarPoly>> {
        self.numerator
            .iter()
            .map(|c| c.as_scalar().ok_or_else(|| Error::NotScalar(alloc::format!("{}", self))))
            .collect()
    }

    /// Positive least common multiple of every rational denominator in the numerator.
    fn content_denominator(&self) -> BigInt {
        let mut l = BigInt::one();
        for c in &self.numerator {
            for (_, s) in c.terms() {
                for (_, g) in s.terms() {
                    l = l.lcm(&g.denominator_lcm());
                }
            }
        }
        l
    }

    fn render_numerator(&self, scale: &GaussianRational, factor: &str) -> (String, usize) {
        let mut out = String::new();
        let mut count = 0;
        for (k, c) in self.numerator.iter().enumerate() {
            let power = match k {
                0 => String::new(),
                1 => String::from("xi"),
                _ => alloc::format!("xi^{}", k),
            };
            let xi = match (factor.is_empty(), power.is_empty()) {
                (true, _) => power,
                (false, true) => String::from(factor),
                (false, false) => alloc::format!("{}*{}", factor, power),
            };
            for (g, factors) in c.flat_terms(&xi) {
                render_term(&mut out, count == 0, &(&g * scale), &factors);
                count += 1;
            }
        }
        if count == 0 {
            out.push('0');
        }
        (out, count)
    }

    /// `<num>/(L*(xi-i)^a*(xi+i)^b)` with the integer content `L` pulled out of
    /// the numerator; parseable by the expression grammar.
    pub fn render(&self) -> String {
        self.render_times("")
    }

    /// Like [`render`](Self::render) with an extra commuting `factor` (such as
    /// `pi^2`) written into every numerator term.
    pub fn render_times(&self, factor: &str) -> String {
        if self.is_polynomial() {
            return self.render_numerator(&GaussianRational::one(), factor).0;
        }
        let l = self.content_denominator();
        let scale = GaussianRational::from(BigRational::from_integer(l.clone()));
        let (num, count) = self.render_numerator(&scale, factor);
        let mut factors: Vec<String> = Vec::new();
        if !l.is_one() {
            factors.push(alloc::format!("{}", l));
        }
        for pole in [Pole::Plus, Pole::Minus] {
            match self.order_at(pole) {
                0 => {}
                1 => factors.push(pole.factor_text().into()),
                m => factors.push(alloc::format!("{}^{}", pole.factor_text(), m)),
            }
        }
        let den = if factors.len() == 1 && l.is_one() {
            factors.remove(0)
        } else {
            alloc::format!("({})", factors.join("*"))
        };
        let single = count == 1 && !num.contains(" + ") && !num[1..].contains(" - ");
        if single {
            alloc::format!("{}/{}", num, den)
        } else {
            alloc::format!("({})/{}", num, den)
        }
    }
}

impl Add for &PoleRational {
    type Output = PoleRational;
    fn add(self, rhs: &PoleRational) -> PoleRational {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let a = self.plus_order.max(rhs.plus_order);
        let b = self.minus_order.max(rhs.minus_order);
        PoleRational::new(
            poly_add(&self.lifted_numerator(a, b), &rhs.lifted_numerator(a, b)),
            a,
            b,
        )
    }
}

impl Sub for &PoleRational {
    type Output = PoleRational;
    fn sub(self, rhs: &PoleRational) -> PoleRational {
        self + &-rhs
    }
}

impl Neg for &PoleRational {
    type Output = PoleRational;
    fn neg(self) -> PoleRational {
        self.scale_by(&GaussianRational::from_integer(-1))
    }
}

impl Neg for PoleRational {
    type Output = PoleRational;
    fn neg(self) -> PoleRational {
        -&self
    }
}

impl fmt::Display for PoleRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Scalar leading coefficient of the identity monomial, for quick checks.
pub fn identity_part(c: &CliffordElement) -> ScalarPoly {
    c.coefficient(Monomial::One)
}
