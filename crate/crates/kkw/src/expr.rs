//! A small expression language over Clifford-valued rational functions of `xi`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' ['-'] integer)?
//! atom   := integer | name | func '(' expr ')' | '(' expr ')'
//! name   := A | B | P | xi | kappa | u | f0 | f1 | i | pi
//! func   := tr | piplus | piminus | dxi | dxn | int
//! ```
//!
//! Divisors must reduce to `c (xi - i)^a (xi + i)^b` with `c` a nonzero number.

use std::fmt;

use kkw_core::clifford::{CliffordElement, Generator};
use kkw_core::scalars::{Exponents, GaussianRational, ScalarPoly, Var};
use kkw_core::{Pole, PoleRational};
use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ExprError {
    #[error("parse error at byte {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Engine(#[from] kkw_core::Error),
}

type Result<T> = std::result::Result<T, ExprError>;

/// `poly * pi^pi_power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Value {
    pub poly: PoleRational,
    pub pi_power: u32,
}

impl Value {
    pub fn new(poly: PoleRational) -> Self {
        Value { poly, pi_power: 0 }
    }

    fn with_pi(poly: PoleRational, pi_power: u32) -> Self {
        if poly.is_zero() {
            Value::new(poly)
        } else {
            Value { poly, pi_power }
        }
    }

    fn add(self, rhs: Value) -> Result<Value> {
        if self.poly.is_zero() {
            return Ok(rhs);
        }
        if rhs.poly.is_zero() {
            return Ok(self);
        }
        if self.pi_power != rhs.pi_power {
            return Err(ExprError::Unsupported(format!(
                "cannot add terms with pi^{} and pi^{}",
                self.pi_power, rhs.pi_power
            )));
        }
        Ok(Value::with_pi(&self.poly + &rhs.poly, self.pi_power))
    }

    fn mul(self, rhs: Value) -> Result<Value> {
        Ok(Value::with_pi(self.poly.mul(&rhs.poly)?, self.pi_power + rhs.pi_power))
    }

    fn div(self, rhs: Value) -> Result<Value> {
        if rhs.pi_power > self.pi_power {
            return Err(ExprError::Unsupported("division by pi leaves a negative power".into()));
        }
        let inverse = reciprocal(&rhs.poly)?;
        Ok(Value::with_pi(self.poly.mul(&inverse)?, self.pi_power - rhs.pi_power))
    }

    fn pow(self, e: i64) -> Result<Value> {
        let base = if e < 0 {
            Value::new(PoleRational::one()).div(self)?
        } else {
            self
        };
        let e = u32::try_from(e.unsigned_abs()).map_err(|_| ExprError::Unsupported("exponent too large".into()))?;
        Ok(Value::with_pi(base.poly.pow(e)?, base.pi_power * e))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factor = match self.pi_power {
            0 => String::new(),
            1 => "pi".into(),
            k => format!("pi^{}", k),
        };
        f.write_str(&self.poly.render_times(&factor))
    }
}

fn synthetic_division(coeffs: &[GaussianRational], root: &GaussianRational) -> Option<Vec<GaussianRational>> {
    // coeffs are lowest degree first
    let mut quotient = vec![GaussianRational::zero(); coeffs.len() - 1];
    let mut carry = GaussianRational::zero();
    for k in (0..coeffs.len()).rev() {
        let value = &coeffs[k] + &(&carry * root);
        if k == 0 {
            return value.is_zero().then_some(quotient);
        }
        quotient[k - 1] = value.clone();
        carry = value;
    }
    None
}

fn linear_power(pole: Pole, k: u32) -> Result<PoleRational> {
    let factor = PoleRational::scalar_poly(&[-pole.location(), GaussianRational::one()]);
    Ok(factor.pow(k)?)
}

/// `1 / d` when `d = c (xi - i)^a (xi + i)^b` up to the stored denominator.
fn reciprocal(d: &PoleRational) -> Result<PoleRational> {
    let not_invertible = || ExprError::Unsupported(format!("cannot divide by {}", d));
    let mut coeffs: Vec<GaussianRational> = d
        .numerator()
        .iter()
        .map(|c| c.as_scalar().and_then(|s| s.as_constant()).ok_or_else(not_invertible))
        .collect::<Result<_>>()?;
    if coeffs.is_empty() {
        return Err(ExprError::Unsupported("division by zero".into()));
    }
    let mut zeros = [0u32; 2];
    for (slot, pole) in [Pole::Plus, Pole::Minus].into_iter().enumerate() {
        while coeffs.len() > 1 {
            match synthetic_division(&coeffs, &pole.location()) {
                Some(q) => {
                    coeffs = q;
                    zeros[slot] += 1;
                }
                None => break,
            }
        }
    }
    if coeffs.len() != 1 {
        return Err(not_invertible());
    }
    let c = coeffs[0].inv().ok_or_else(not_invertible)?;
    let mut out = PoleRational::constant(CliffordElement::scalar(ScalarPoly::constant(c)));
    for (pole, zero_order) in [(Pole::Plus, zeros[0]), (Pole::Minus, zeros[1])] {
        let stored = d.order_at(pole);
        let factor = if stored >= zero_order {
            linear_power(pole, stored - zero_order)?
        } else {
            PoleRational::pole_power(pole, zero_order - stored)
        };
        out = out.mul(&factor)?;
    }
    Ok(out)
}

fn dxn_scalar(s: &ScalarPoly) -> Result<ScalarPoly> {
    let mut out = ScalarPoly::zero();
    for (e, c) in s.terms() {
        let ex = e.0;
        if ex[Var::Kappa.index()] > 0 || ex[Var::F1.index()] > 0 {
            return Err(ExprError::Unsupported(
                "dxn of kappa or f1 involves boundary data beyond first order".into(),
            ));
        }
        let u = ex[Var::U.index()];
        if u > 0 {
            // d/dx_n u = kappa u
            let mut next = ex;
            next[Var::Kappa.index()] += 1;
            let term = ScalarPoly::monomial(c.clone(), Exponents(next));
            out += &term.scale(&GaussianRational::from_integer(i64::from(u)));
        }
        let f0 = ex[Var::F0.index()];
        if f0 > 0 {
            let mut next = ex;
            next[Var::F0.index()] -= 1;
            next[Var::F1.index()] += 1;
            let term = ScalarPoly::monomial(c.clone(), Exponents(next));
            out += &term.scale(&GaussianRational::from_integer(i64::from(f0)));
        }
    }
    Ok(out)
}

fn word(letters: &[Generator]) -> Result<CliffordElement> {
    let mut out = CliffordElement::one();
    for g in letters {
        out = out.mul_gen(*g)?;
    }
    Ok(out)
}

fn dxn_clifford(x: &CliffordElement) -> Result<CliffordElement> {
    let mut out = CliffordElement::zero();
    for (m, s) in x.terms() {
        let letters = m.letters();
        out += &word(letters)?.scale(&dxn_scalar(s)?);
        for (pos, g) in letters.iter().enumerate() {
            let replaced = match g {
                Generator::A => Generator::P,
                Generator::B => continue,
                Generator::P => {
                    return Err(ExprError::Unsupported(
                        "dxn of P involves second-order boundary data".into(),
                    ))
                }
            };
            let mut changed = letters.to_vec();
            changed[pos] = replaced;
            out += &word(&changed)?.scale(s);
        }
    }
    Ok(out)
}

/// `d/dx_n` with `d A = P`, `d u = kappa u`, `d f0 = f1` and `B`, `xi` constant.
pub fn dxn(v: &PoleRational) -> Result<PoleRational> {
    if !v.is_polynomial() {
        return Err(ExprError::Unsupported(
            "dxn needs a polynomial in xi; the poles hide the dependence on u".into(),
        ));
    }
    let coeffs = v.numerator().iter().map(dxn_clifford).collect::<Result<Vec<_>>>()?;
    Ok(PoleRational::polynomial(coeffs))
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Name(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        let ch = bytes[pos] as char;
        if ch.is_ascii_whitespace() {
            pos += 1;
        } else if ch.is_ascii_digit() {
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let n = src[start..pos].parse().expect("digits");
            out.push((start, Token::Int(n)));
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = pos;
            while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                pos += 1;
            }
            out.push((start, Token::Name(src[start..pos].into())));
        } else if "+-*/^()".contains(ch) {
            out.push((pos, Token::Op(ch)));
            pos += 1;
        } else {
            return Err(ExprError::Parse {
                pos,
                message: format!("unexpected character `{}`", ch),
            });
        }
    }
    Ok(out)
}

/// Evaluates expressions with traces taken in spinor dimension `2^floor(n/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Evaluator {
    pub n: u32,
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator { n: 6 }
    }
}

impl Evaluator {
    pub fn new(n: u32) -> Self {
        Evaluator { n }
    }

    pub fn eval(&self, src: &str) -> Result<Value> {
        let tokens = tokenize(src)?;
        let mut parser = Parser {
            tokens,
            at: 0,
            end: src.len(),
            n: self.n,
        };
        let v = parser.expr()?;
        if parser.at < parser.tokens.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(v)
    }
}

/// Shorthand for `Evaluator::new(n).eval(src)`.
pub fn eval(src: &str, n: u32) -> Result<Value> {
    Evaluator::new(n).eval(src)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    at: usize,
    end: usize,
    n: u32,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(_, t)| t)
    }

    fn error(&self, message: &str) -> ExprError {
        ExprError::Parse {
            pos: self.tokens.get(self.at).map_or(self.end, |(p, _)| *p),
            message: message.into(),
        }
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<()> {
        if self.eat(op) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", op)))
        }
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(self.term()?)?;
            } else if self.eat('-') {
                let rhs = self.term()?;
                acc = acc.add(Value::with_pi(-rhs.poly, rhs.pi_power))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(self.unary()?)?;
            } else if self.eat('/') {
                acc = acc.div(self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Value> {
        if self.eat('-') {
            let v = self.unary()?;
            return Ok(Value::with_pi(-v.poly, v.pi_power));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Value> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let e = match self.peek() {
            Some(Token::Int(k)) => i64::try_from(k.clone()).map_err(|_| self.error("exponent too large"))?,
            _ => return Err(self.error("expected an integer exponent")),
        };
        self.at += 1;
        base.pow(if negative { -e } else { e })
    }

    fn atom(&mut self) -> Result<Value> {
        let token = self.peek().cloned().ok_or_else(|| self.error("unexpected end of input"))?;
        self.at += 1;
        match token {
            Token::Int(k) => Ok(Value::new(PoleRational::scalar(ScalarPoly::constant(
                GaussianRational::from(BigRational::from_integer(k)),
            )))),
            Token::Op('(') => {
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Token::Op(_) => {
                self.at -= 1;
                Err(self.error("expected a value"))
            }
            Token::Name(name) => self.name(&name),
        }
    }

    fn name(&mut self, name: &str) -> Result<Value> {
        let scalar = |s: ScalarPoly| Ok(Value::new(PoleRational::scalar(s)));
        let generator = |g| Ok(Value::new(PoleRational::constant(CliffordElement::gen(g))));
        match name {
            "A" => generator(Generator::A),
            "B" => generator(Generator::B),
            "P" => generator(Generator::P),
            "xi" => Ok(Value::new(PoleRational::xi())),
            "i" => scalar(ScalarPoly::constant(GaussianRational::i())),
            "pi" => Ok(Value::with_pi(PoleRational::one(), 1)),
            "tr" | "piplus" | "piminus" | "dxi" | "dxn" | "int" => {
                self.expect('(')?;
                let arg = self.expr()?;
                self.expect(')')?;
                self.apply(name, arg)
            }
            other => match Var::from_name(other) {
                Some(v) => scalar(ScalarPoly::var(v)),
                None => {
                    self.at -= 1;
                    Err(ExprError::UnknownName(other.into()))
                }
            },
        }
    }

    fn apply(&self, func: &str, arg: Value) -> Result<Value> {
        let Value { poly, pi_power } = arg;
        let poly = match func {
            "tr" => poly.trace(self.n),
            "piplus" => poly.pi_plus()?,
            "piminus" => poly.pi_minus()?,
            "dxi" => poly.diff_xi(1),
            "dxn" => dxn(&poly)?,
            "int" => {
                let line = poly.integrate_line()?;
                return Ok(Value::with_pi(PoleRational::constant(line.coefficient), pi_power + line.pi_power));
            }
            _ => unreachable!("function names are matched by the caller"),
        };
        Ok(Value::with_pi(poly, pi_power))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn show(src: &str) -> String {
        eval(src, 6).unwrap().to_string()
    }

    #[test]
    fn reference_expressions() {
        assert_eq!(show("tr(P*A)"), "-4*kappa*u");
        assert_eq!(show("piplus(1/((xi-i)*(xi+i)))"), "-i/(2*(xi-i))");
        assert_eq!(show("int((2*i-6*xi)/((xi-i)^3*(xi+i)^3))"), "(3/4)*pi*i");
    }

    #[test]
    fn division_cancels_common_factors() {
        assert_eq!(show("(xi^2+1)/(xi-i)"), "i + xi");
        assert_eq!(show("1/(xi^2+1)"), "1/((xi-i)*(xi+i))");
        assert!(eval("1/(xi-1)", 6).is_err());
        assert!(eval("1/A", 6).is_err());
    }

    #[test]
    fn dxn_chain_rule() {
        assert_eq!(show("dxn(A*B)"), show("P*B"));
        assert_eq!(show("dxn(u*f0)"), show("kappa*u*f0 + u*f1"));
        assert!(eval("dxn(kappa)", 6).is_err());
        assert!(eval("dxn(1/(xi-i))", 6).is_err());
    }

    #[test]
    fn parse_errors_point_at_input() {
        assert_eq!(
            eval("1 + ", 6),
            Err(ExprError::Parse {
                pos: 4,
                message: "unexpected end of input".into()
            })
        );
        assert_eq!(eval("foo", 6), Err(ExprError::UnknownName("foo".into())));
    }
}
