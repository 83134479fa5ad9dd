//! The symbol algebra at the boundary point.
//!
//! Generators: `A = c(xi')`, `B = c(dx_n)` and `P = d/dx_n c(xi')`, subject to
//!
//! ```text
//! A^2 = -u      B^2 = -1      AB + BA = 0
//! AP + PA = -kappa*u          BP + PB = 0
//! ```
//!
//! Words are rewritten to the canonical monomials `P? A? B?` (P first, then A,
//! then B). `P` is kept as an independent generator; products with two `P`
//! factors are rejected rather than guessed.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalars::{render_term, Assignment, GaussianRational, ScalarPoly};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Generator {
    P,
    A,
    B,
}

impl Generator {
    fn rank(self) -> u8 {
        self as u8
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::P => "P",
            Generator::A => "A",
            Generator::B => "B",
        }
    }
}

/// Canonical monomial; the declaration order is the display order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Monomial {
    One,
    A,
    B,
    AB,
    P,
    PA,
    PB,
    PAB,
}

impl Monomial {
    pub const ALL: [Monomial; 8] = [
        Monomial::One,
        Monomial::A,
        Monomial::B,
        Monomial::AB,
        Monomial::P,
        Monomial::PA,
        Monomial::PB,
        Monomial::PAB,
    ];

    pub fn letters(self) -> &'static [Generator] {
        use Generator::*;
        match self {
            Monomial::One => &[],
            Monomial::A => &[A],
            Monomial::B => &[B],
            Monomial::AB => &[A, B],
            Monomial::P => &[P],
            Monomial::PA => &[P, A],
            Monomial::PB => &[P, B],
            Monomial::PAB => &[P, A, B],
        }
    }

    /// The monomial spelled by `letters`, if that word is already canonical.
    pub fn from_letters(letters: &[Generator]) -> Option<Monomial> {
        Monomial::ALL.into_iter().find(|m| m.letters() == letters)
    }

    pub fn p_degree(self) -> u32 {
        matches!(self, Monomial::P | Monomial::PA | Monomial::PB | Monomial::PAB) as u32
    }

    /// `"1"`, `"A"`, `"A*B"`, `"P*A*B"`, ...
    pub fn name(self) -> &'static str {
        match self {
            Monomial::One => "1",
            Monomial::A => "A",
            Monomial::B => "B",
            Monomial::AB => "A*B",
            Monomial::P => "P",
            Monomial::PA => "P*A",
            Monomial::PB => "P*B",
            Monomial::PAB => "P*A*B",
        }
    }

    fn split_last(self) -> Option<(Monomial, Generator)> {
        let letters = self.letters();
        let (last, prefix) = letters.split_last()?;
        Some((Monomial::from_letters(prefix)?, *last))
    }

    fn push(self, g: Generator) -> Option<Monomial> {
        let mut word: Vec<Generator> = self.letters().into();
        word.push(g);
        Monomial::from_letters(&word)
    }
}

/// Element of the algebra: scalar-polynomial coefficients on canonical
/// monomials. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct CliffordElement {
    coeffs: BTreeMap<Monomial, ScalarPoly>,
}

impl CliffordElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(ScalarPoly::one())
    }

    pub fn scalar(s: ScalarPoly) -> Self {
        Self::term(s, Monomial::One)
    }

    pub fn term(s: ScalarPoly, m: Monomial) -> Self {
        let mut e = Self::zero();
        e.add_term(m, &s);
        e
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(ScalarPoly::one(), m)
    }

    pub fn gen(g: Generator) -> Self {
        Self::monomial(Monomial::from_letters(&[g]).expect("single letters are canonical"))
    }

    pub fn a() -> Self {
        Self::gen(Generator::A)
    }

    pub fn b() -> Self {
        Self::gen(Generator::B)
    }

    pub fn p() -> Self {
        Self::gen(Generator::P)
    }

    pub fn add_term(&mut self, m: Monomial, s: &ScalarPoly) {
        if s.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(m).or_default();
        *slot += s;
        if slot.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    pub fn coefficient(&self, m: Monomial) -> ScalarPoly {
        self.coeffs.get(&m).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ScalarPoly)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Only the identity monomial carries a coefficient.
    pub fn is_scalar(&self) -> bool {
        self.coeffs.keys().all(|m| *m == Monomial::One)
    }

    pub fn as_scalar(&self) -> Option<ScalarPoly> {
        self.is_scalar().then(|| self.coefficient(Monomial::One))
    }

    pub fn p_degree(&self) -> u32 {
        self.coeffs.keys().map(|m| m.p_degree()).max().unwrap_or(0)
    }

    pub fn scale(&self, s: &ScalarPoly) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.coeffs {
            out.add_term(*m, &(c * s));
        }
        out
    }

    pub fn scale_by(&self, c: &GaussianRational) -> Self {
        self.scale(&ScalarPoly::constant(c.clone()))
    }

    pub fn map_scalars(&self, f: impl Fn(&ScalarPoly) -> ScalarPoly) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.coeffs {
            out.add_term(*m, &f(c));
        }
        out
    }

    pub fn subst(&self, a: &Assignment) -> Self {
        self.map_scalars(|c| c.subst(a))
    }

    pub fn on_unit_sphere(&self) -> Self {
        self.map_scalars(ScalarPoly::on_unit_sphere)
    }

    /// Right multiplication by a single generator, rewritten to canonical form.
    fn mul_monomial_gen(m: Monomial, g: Generator) -> Result<CliffordElement> {
        let Some((prefix, last)) = m.split_last() else {
            return Ok(CliffordElement::gen(g));
        };
        if last.rank() < g.rank() {
            let next = m.push(g).ok_or(Error::PDegreeOverflow)?;
            return Ok(CliffordElement::monomial(next));
        }
        if last == g {
            let square = match g {
                Generator::A => -ScalarPoly::u(),
                Generator::B => ScalarPoly::from(-1),
                Generator::P => return Err(Error::PDegreeOverflow),
            };
            return Ok(CliffordElement::term(square, prefix));
        }
        // last > g: last*g = -g*last + anticommutator(last, g)
        let swapped = CliffordElement::monomial(prefix)
            .mul_gen(g)?
            .mul_gen(last)?;
        let mut out = -swapped;
        if last == Generator::A && g == Generator::P {
            let ku = &ScalarPoly::kappa() * &ScalarPoly::u();
            out.add_term(prefix, &-ku);
        }
        Ok(out)
    }

    pub fn mul_gen(&self, g: Generator) -> Result<CliffordElement> {
        let mut out = CliffordElement::zero();
        for (m, c) in &self.coeffs {
            out += &CliffordElement::mul_monomial_gen(*m, g)?.scale(c);
        }
        Ok(out)
    }

    /// The algebra product; fails when both factors carry `P`.
    pub fn mul(&self, rhs: &CliffordElement) -> Result<CliffordElement> {
        let mut out = CliffordElement::zero();
        for (m, c) in &rhs.coeffs {
            let mut partial = self.clone();
            for g in m.letters() {
                partial = partial.mul_gen(*g)?;
            }
            out += &partial.scale(c);
        }
        Ok(out)
    }

    /// Trace over the spinor fiber of dimension `2^(n/2)`:
    /// `d*coeff(1) - (kappa*u*d/2)*coeff(PA)`; every other monomial is traceless.
    pub fn trace(&self, n: u32) -> ScalarPoly {
        let d = ScalarPoly::from(spinor_dimension(n) as i64);
        let mut out = &d * &self.coefficient(Monomial::One);
        let pa = self.coefficient(Monomial::PA);
        if !pa.is_zero() {
            let half_ku = (&ScalarPoly::kappa() * &ScalarPoly::u())
                .scale(&GaussianRational::ratio(spinor_dimension(n) as i64, 2));
            out -= &(&half_ku * &pa);
        }
        out
    }

    /// Replaces `P` by `(kappa/2)*A`, the identification valid in the
    /// geodesic frame. Only scalar outputs may be compared after this.
    pub fn frame_identify_p(&self) -> CliffordElement {
        let half_kappa_a =
            CliffordElement::a().scale(&ScalarPoly::kappa().scale(&GaussianRational::ratio(1, 2)));
        let mut out = CliffordElement::zero();
        for (m, c) in &self.coeffs {
            let letters = m.letters();
            if letters.first() == Some(&Generator::P) {
                let mut t = half_kappa_a.clone();
                for g in &letters[1..] {
                    t = t.mul_gen(*g).expect("no P left after identification");
                }
                out += &t.scale(c);
            } else {
                out.add_term(*m, c);
            }
        }
        out
    }

    /// Flat `(coefficient, factor string)` terms for rendering, with the
    /// monomial appended after `prefix` factors.
    pub(crate) fn flat_terms(&self, suffix_before_monomial: &str) -> Vec<(GaussianRational, String)> {
        let mut out = Vec::new();
        for (m, c) in &self.coeffs {
            for (e, g) in c.terms() {
                let mut parts: Vec<String> = Vec::new();
                let vars = e.render();
                if !vars.is_empty() {
                    parts.push(vars);
                }
                if !suffix_before_monomial.is_empty() {
                    parts.push(suffix_before_monomial.into());
                }
                if *m != Monomial::One {
                    parts.push(m.name().into());
                }
                out.push((g.clone(), parts.join("*")));
            }
        }
        out
    }
}

/// `2^floor(n/2)`.
pub fn spinor_dimension(n: u32) -> u64 {
    1u64 << (n / 2)
}

impl From<ScalarPoly> for CliffordElement {
    fn from(s: ScalarPoly) -> Self {
        CliffordElement::scalar(s)
    }
}

impl AddAssign<&CliffordElement> for CliffordElement {
    fn add_assign(&mut self, rhs: &CliffordElement) {
        for (m, c) in &rhs.coeffs {
            self.add_term(*m, c);
        }
    }
}

impl Add for &CliffordElement {
    type Output = CliffordElement;
    fn add(self, rhs: &CliffordElement) -> CliffordElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &CliffordElement {
    type Output = CliffordElement;
    fn sub(self, rhs: &CliffordElement) -> CliffordElement {
        self + &-rhs
    }
}

impl Neg for &CliffordElement {
    type Output = CliffordElement;
    fn neg(self) -> CliffordElement {
        CliffordElement {
            coeffs: self.coeffs.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for CliffordElement {
    type Output = CliffordElement;
    fn neg(self) -> CliffordElement {
        -&self
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.flat_terms("");
        if terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (idx, (c, factors)) in terms.iter().enumerate() {
            render_term(&mut out, idx == 0, c, factors);
        }
        f.write_str(&out)
    }
}
