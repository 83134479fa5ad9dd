//! Floating-point recomputation of the boundary cases with explicit gamma
//! matrices, contour-integral projections and adaptive quadrature.
//!
//! Nothing here reuses the exact projection, differentiation or trace code:
//! symbols are rebuilt as matrix polynomials over powers of `1 + xi_n^2`,
//! `pi^+` is a trapezoid Cauchy integral around `+i`, `xi_n`-derivatives of the
//! right factor are Cauchy integrals around the quadrature node, and traces are
//! matrix traces. `P` is instantiated as `(kappa / 2) A`.

use std::f64::consts::PI;

use kkw_core::clifford::{spinor_dimension, CliffordElement, Generator};
use kkw_core::engine::{eval_case_with_form, CaseForm, CaseSpec, PhiReport};
use kkw_core::{Operator, PoleRational, ScalarPoly};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::quadrature::{numeric_integrate, TailBound};
use crate::OracleError;

pub type Mat = DMatrix<Complex64>;

const RELATION_TOL: f64 = 1e-12;
const LEFT_NODES: usize = 128;
const RIGHT_NODES: usize = 64;
const CONTOUR_RADIUS: f64 = 0.5;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pauli() -> [Mat; 4] {
    let one = c(1.0, 0.0);
    let zero = c(0.0, 0.0);
    let i = c(0.0, 1.0);
    [
        DMatrix::from_row_slice(2, 2, &[one, zero, zero, one]),
        DMatrix::from_row_slice(2, 2, &[zero, one, one, zero]),
        DMatrix::from_row_slice(2, 2, &[zero, -i, i, zero]),
        DMatrix::from_row_slice(2, 2, &[one, zero, zero, -one]),
    ]
}

fn kron_all(factors: &[&Mat]) -> Mat {
    let mut out = DMatrix::from_element(1, 1, c(1.0, 0.0));
    for f in factors {
        out = out.kronecker(f);
    }
    out
}

/// Anti-Hermitian `gamma_1..gamma_n` with `gamma_i gamma_j + gamma_j gamma_i = -2 delta_ij`,
/// built from Pauli strings (Jordan-Wigner).
pub fn gamma_matrices(n: u32) -> Vec<Mat> {
    let [id, x, y, z] = pauli();
    let qubits = (n / 2) as usize;
    let i = c(0.0, 1.0);
    let mut out = Vec::with_capacity(n as usize);
    for q in 0..qubits {
        for flip in [&x, &y] {
            let factors: Vec<&Mat> = (0..qubits)
                .map(|s| match s.cmp(&q) {
                    std::cmp::Ordering::Less => &z,
                    std::cmp::Ordering::Equal => flip,
                    std::cmp::Ordering::Greater => &id,
                })
                .collect();
            out.push(kron_all(&factors) * i);
        }
    }
    if n % 2 == 1 {
        let factors: Vec<&Mat> = (0..qubits).map(|_| &z).collect();
        out.push(kron_all(&factors) * i);
    }
    out
}

/// Largest deviation from the Clifford relations.
pub fn relation_defect(gamma: &[Mat]) -> f64 {
    let d = gamma[0].nrows();
    let id = Mat::identity(d, d);
    let mut worst: f64 = 0.0;
    for (a, ga) in gamma.iter().enumerate() {
        for (b, gb) in gamma.iter().enumerate() {
            let expected = if a == b { &id * c(-2.0, 0.0) } else { Mat::zeros(d, d) };
            worst = worst.max((ga * gb + gb * ga - expected).norm());
        }
    }
    worst
}

/// Unit directions in `R^{n-1}`, drawn deterministically from `seed`.
pub fn sphere_directions(n: u32, seed: u64, count: usize) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| loop {
            let v: Vec<f64> = (1..n).map(|_| StandardNormal.sample(&mut rng)).collect();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-6 {
                break v.into_iter().map(|x| x / norm).collect();
            }
        })
        .collect()
}

/// A concrete spinor representation at one cotangent direction.
#[derive(Clone, Debug)]
pub struct NumericContext {
    pub n: u32,
    pub d: usize,
    pub gamma: Vec<Mat>,
    pub xi_prime: Vec<f64>,
    pub kappa: f64,
    pub f0: f64,
    pub f1: f64,
    pub a: Mat,
    pub b: Mat,
    pub p: Mat,
}

impl NumericContext {
    /// Context at the first direction drawn from `seed`.
    pub fn new(n: u32, seed: u64, kappa: f64, f0: f64, f1: f64) -> Result<Self, OracleError> {
        let dir = sphere_directions(n, seed, 1).remove(0);
        Self::with_direction(n, dir, kappa, f0, f1)
    }

    pub fn with_direction(n: u32, xi_prime: Vec<f64>, kappa: f64, f0: f64, f1: f64) -> Result<Self, OracleError> {
        if !(2..=12).contains(&n) || xi_prime.len() != n as usize - 1 {
            return Err(OracleError::UnsupportedDimension(n));
        }
        let gamma = gamma_matrices(n);
        let defect = relation_defect(&gamma);
        let norm = xi_prime.iter().map(|x| x * x).sum::<f64>().sqrt();
        if defect > RELATION_TOL || (norm - 1.0).abs() > RELATION_TOL {
            return Err(OracleError::RelationCheckFailed(defect.max((norm - 1.0).abs())));
        }
        let d = gamma[0].nrows();
        let mut a = Mat::zeros(d, d);
        for (g, x) in gamma.iter().zip(&xi_prime) {
            a += g * c(*x, 0.0);
        }
        let b = gamma[n as usize - 1].clone();
        let p = &a * c(kappa / 2.0, 0.0);
        Ok(NumericContext {
            n,
            d,
            gamma,
            xi_prime,
            kappa,
            f0,
            f1,
            a,
            b,
            p,
        })
    }

    pub fn identity(&self) -> Mat {
        Mat::identity(self.d, self.d)
    }

    /// Scalar value at `u = 1` (unit `xi'`).
    pub fn scalar(&self, s: &ScalarPoly) -> Complex64 {
        s.eval_f64(&[self.kappa, 1.0, self.f0, self.f1])
    }

    pub fn instantiate(&self, x: &CliffordElement) -> Mat {
        let mut out = Mat::zeros(self.d, self.d);
        for (m, s) in x.terms() {
            let mut word = self.identity();
            for g in m.letters() {
                word *= match g {
                    Generator::P => &self.p,
                    Generator::A => &self.a,
                    Generator::B => &self.b,
                };
            }
            out += word * self.scalar(s);
        }
        out
    }

    pub fn numeric_trace(&self, x: &CliffordElement) -> Complex64 {
        self.instantiate(x).trace()
    }
}

/// `sum_k xi^k M_k / (1 + xi^2)^denom`.
#[derive(Clone, Debug)]
struct Piece {
    poly: Vec<Mat>,
    denom: u32,
}

/// A matrix-valued rational function of `xi_n` with poles only at `+-i`.
#[derive(Clone, Debug)]
pub struct MatExpr {
    d: usize,
    pieces: Vec<Piece>,
}

impl MatExpr {
    fn constant(m: Mat) -> Self {
        MatExpr {
            d: m.nrows(),
            pieces: vec![Piece {
                poly: vec![m],
                denom: 0,
            }],
        }
    }

    fn poly(coeffs: Vec<Mat>) -> Self {
        MatExpr {
            d: coeffs[0].nrows(),
            pieces: vec![Piece { poly: coeffs, denom: 0 }],
        }
    }

    fn inv_norm(d: usize, power: u32) -> Self {
        MatExpr {
            d,
            pieces: vec![Piece {
                poly: vec![Mat::identity(d, d)],
                denom: power,
            }],
        }
    }

    fn mul(&self, rhs: &MatExpr) -> MatExpr {
        let mut pieces = Vec::new();
        for x in &self.pieces {
            for y in &rhs.pieces {
                let mut poly = vec![Mat::zeros(self.d, self.d); x.poly.len() + y.poly.len() - 1];
                for (i, a) in x.poly.iter().enumerate() {
                    for (j, b) in y.poly.iter().enumerate() {
                        poly[i + j] += a * b;
                    }
                }
                pieces.push(Piece {
                    poly,
                    denom: x.denom + y.denom,
                });
            }
        }
        MatExpr { d: self.d, pieces }
    }

    fn add(&self, rhs: &MatExpr) -> MatExpr {
        let mut pieces = self.pieces.clone();
        pieces.extend(rhs.pieces.iter().cloned());
        MatExpr { d: self.d, pieces }
    }

    fn scale(&self, s: Complex64) -> MatExpr {
        MatExpr {
            d: self.d,
            pieces: self
                .pieces
                .iter()
                .map(|p| Piece {
                    poly: p.poly.iter().map(|m| m * s).collect(),
                    denom: p.denom,
                })
                .collect(),
        }
    }

    pub fn eval(&self, z: Complex64) -> Mat {
        let mut out = Mat::zeros(self.d, self.d);
        let norm = c(1.0, 0.0) + z * z;
        for p in &self.pieces {
            let mut acc = Mat::zeros(self.d, self.d);
            for m in p.poly.iter().rev() {
                acc = acc * z + m;
            }
            out += acc / norm.powu(p.denom);
        }
        out
    }

    /// `(power, denom, M)` with `M` the coefficient of `xi^power / (1+xi^2)^denom`,
    /// merged over equal basis functions and with zero matrices dropped.
    fn basis(&self) -> Vec<(u32, u32, Mat)> {
        let mut out: Vec<(u32, u32, Mat)> = Vec::new();
        for p in &self.pieces {
            for (k, m) in p.poly.iter().enumerate() {
                match out.iter_mut().find(|(a, b, _)| *a == k as u32 && *b == p.denom) {
                    Some(entry) => entry.2 += m,
                    None => out.push((k as u32, p.denom, m.clone())),
                }
            }
        }
        out.retain(|(_, _, m)| m.norm() > 0.0);
        out
    }
}

/// Which part of a symbol a case needs.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum JetPart {
    Value,
    Dxn,
}

/// Numeric symbol of `op` of the given order, rebuilt from its defining formula.
pub fn numeric_symbol(ctx: &NumericContext, op: Operator, order: i32, part: JetPart) -> Result<MatExpr, OracleError> {
    let d = ctx.d;
    let i = c(0.0, 1.0);
    let kappa = c(ctx.kappa, 0.0);
    let m = ctx.n as f64 - 1.0;
    let gamma_n = kappa * (m / 2.0);
    let sigma0 = MatExpr::constant(&ctx.b * (kappa * (-m / 4.0)));
    let cx = MatExpr::poly(vec![ctx.a.clone(), ctx.b.clone()]);
    let xi = MatExpr::poly(vec![Mat::zeros(d, d), ctx.identity()]);
    let norm = MatExpr::poly(vec![ctx.identity(), Mat::zeros(d, d), ctx.identity()]);
    let a = MatExpr::constant(ctx.a.clone());
    let b = MatExpr::constant(ctx.b.clone());
    let p = MatExpr::constant(ctx.p.clone());
    let ab = a.mul(&b);
    let inv = |k| MatExpr::inv_norm(d, k);
    let unsupported = || OracleError::Engine(kkw_core::Error::UnsupportedSymbol(format!("{} order {} {:?}", op, order, part)));

    let expr = match (op, order, part) {
        (Operator::Dinv1, -1, JetPart::Value) => cx.mul(&inv(1)).scale(i),
        (Operator::Dinv1, -1, JetPart::Dxn) => p.mul(&inv(1)).scale(i).add(&cx.mul(&inv(2)).scale(-i * kappa)),
        (Operator::Dinv1, -2, JetPart::Value) => {
            let first = cx.mul(&sigma0).mul(&cx).add(&cx.mul(&b).mul(&p)).mul(&inv(2));
            first.add(&cx.mul(&b).mul(&cx).mul(&inv(3)).scale(-kappa))
        }
        (Operator::Dinv3, -3, JetPart::Value) => cx.mul(&inv(2)).scale(i),
        (Operator::Dinv3, -3, JetPart::Dxn) => p
            .mul(&inv(2))
            .scale(i)
            .add(&cx.mul(&inv(3)).scale(-2.0 * i * kappa)),
        (Operator::Dinv3, -4, JetPart::Value) => {
            let sigma2 = cx
                .mul(&ab)
                .scale(kappa * 0.5)
                .add(&xi.mul(&cx).scale(-gamma_n))
                .add(&norm.mul(&sigma0));
            let bracket = norm
                .mul(&b)
                .mul(&p)
                .add(&b.mul(&cx).scale(-2.0 * kappa))
                .add(&xi.mul(&cx).mul(&p).scale(c(2.0, 0.0)))
                .add(&xi.scale(4.0 * kappa));
            cx.mul(&sigma2).mul(&cx).add(&cx.mul(&bracket).scale(i)).mul(&inv(4))
        }
        (Operator::Dinv2, -2, JetPart::Value) => inv(1),
        (Operator::Dinv2, -2, JetPart::Dxn) => inv(2).scale(-kappa),
        (Operator::Dinv2, -3, JetPart::Value) => {
            let inner = xi.scale(gamma_n).add(&ab.scale(-kappa * 0.5));
            inner
                .mul(&inv(2))
                .scale(-i)
                .add(&xi.mul(&inv(3)).scale(-2.0 * i * kappa))
        }
        (Operator::FDinv2, _, JetPart::Value) => {
            numeric_symbol(ctx, Operator::Dinv2, order, JetPart::Value)?.scale(c(ctx.f0, 0.0))
        }
        (Operator::FDinv2, _, JetPart::Dxn) => {
            let v = numeric_symbol(ctx, Operator::Dinv2, order, JetPart::Value)?;
            let dv = numeric_symbol(ctx, Operator::Dinv2, order, JetPart::Dxn)?;
            dv.scale(c(ctx.f0, 0.0)).add(&v.scale(c(ctx.f1, 0.0)))
        }
        _ => return Err(unsupported()),
    };
    Ok(expr)
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// `m`-th derivative of `xi^power / (1+xi^2)^denom` at real `x`, by a Cauchy integral
/// over the circle of radius one half.
fn basis_derivative(power: u32, denom: u32, x: f64, m: u32) -> Complex64 {
    let mut acc = c(0.0, 0.0);
    for q in 0..RIGHT_NODES {
        let theta = 2.0 * PI * q as f64 / RIGHT_NODES as f64;
        let step = Complex64::from_polar(CONTOUR_RADIUS, theta);
        let z = c(x, 0.0) + step;
        let phi = z.powu(power) / (c(1.0, 0.0) + z * z).powu(denom);
        acc += phi / step.powu(m);
    }
    acc * (factorial(m) / RIGHT_NODES as f64)
}

/// `(-i)^(alpha+j+k+1) / (alpha! (j+k+1)!)` in floating point.
fn case_coefficient(spec: &CaseSpec) -> Complex64 {
    let power = spec.alpha + spec.j + spec.k + 1;
    c(0.0, -1.0).powu(power) / (factorial(spec.alpha) * factorial(spec.j + spec.k + 1))
}

/// Tail bound for a scalar rational integrand at this context's parameter values.
pub fn tail_bound(ctx: &NumericContext, integrand: &PoleRational) -> Result<TailBound, OracleError> {
    let coeffs = integrand.scalar_numerator()?;
    let constant = coeffs.iter().map(|s| ctx.scalar(s).norm()).sum();
    let deg = coeffs.len().saturating_sub(1) as u32;
    let den = integrand.plus_order() + integrand.minus_order();
    Ok(TailBound {
        constant,
        decay: den.saturating_sub(deg),
    })
}

/// Numeric value of one case (without the `Omega` factor); `bound` controls the truncation.
pub fn numeric_case(
    ctx: &NumericContext,
    spec: &CaseSpec,
    left: Operator,
    right: Operator,
    bound: TailBound,
    tol: f64,
) -> Result<Complex64, OracleError> {
    if spec.alpha > 0 {
        return Ok(c(0.0, 0.0));
    }
    let left_part = if spec.j == 1 { JetPart::Dxn } else { JetPart::Value };
    let right_part = if spec.k == 1 { JetPart::Dxn } else { JetPart::Value };
    let g = numeric_symbol(ctx, left, spec.r, left_part)?;
    let right_basis = numeric_symbol(ctx, right, spec.l, right_part)?.basis();

    // pi^+ g(x) = (1/2 pi i) oint_{|eta - i| = rho} g(eta) / (x - eta) d eta
    let nodes: Vec<(Complex64, Mat)> = (0..LEFT_NODES)
        .map(|q| {
            let theta = 2.0 * PI * q as f64 / LEFT_NODES as f64;
            let step = Complex64::from_polar(CONTOUR_RADIUS, theta);
            let eta = c(0.0, 1.0) + step;
            (eta, g.eval(eta) * (step / LEFT_NODES as f64))
        })
        .collect();
    let traces: Vec<Vec<Complex64>> = nodes
        .iter()
        .map(|(_, h)| right_basis.iter().map(|(_, _, m)| (h * m).trace()).collect())
        .collect();

    let k = spec.k;
    let k_sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 } * factorial(k);
    let right_order = spec.j + 1;
    let coefficient = case_coefficient(spec);
    let integrand = |x: f64| {
        let phis: Vec<Complex64> = right_basis
            .iter()
            .map(|(a, b, _)| basis_derivative(*a, *b, x, right_order))
            .collect();
        let mut acc = c(0.0, 0.0);
        for ((eta, _), row) in nodes.iter().zip(&traces) {
            let kernel = k_sign / (c(x, 0.0) - eta).powu(k + 1);
            let inner: Complex64 = row.iter().zip(&phis).map(|(t, phi)| t * phi).sum();
            acc += kernel * inner;
        }
        acc * coefficient
    };
    numeric_integrate(integrand, bound, tol)
}

/// Settings for [`crosscheck_phi`].
#[derive(Clone, Debug, PartialEq)]
pub struct CrosscheckOptions {
    pub seeds: Vec<u64>,
    pub directions: usize,
    pub kappa: f64,
    pub f0: f64,
    pub f1: f64,
    /// Relative tolerance for exact-versus-numeric agreement.
    pub tol: f64,
    /// Absolute tolerance for the spread across sphere directions.
    pub spread_tol: f64,
}

impl Default for CrosscheckOptions {
    fn default() -> Self {
        CrosscheckOptions {
            seeds: vec![7, 8, 9],
            directions: 5,
            kappa: 0.3,
            f0: 0.7,
            f1: -1.1,
            tol: 1e-8,
            spread_tol: 1e-9,
        }
    }
}

impl CrosscheckOptions {
    /// Three consecutive seeds starting at `seed`.
    pub fn from_seed(seed: u64, tol: f64) -> Self {
        CrosscheckOptions {
            seeds: (seed..seed + 3).collect(),
            tol,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValueCheck {
    pub label: String,
    /// Exact value times `pi`, evaluated at the option values.
    pub exact: Complex64,
    /// One entry per (seed, direction).
    pub numeric: Vec<Complex64>,
    /// Largest `|numeric - exact| / max(|exact|, 1e-2)`.
    pub relative_error: f64,
    pub spread: f64,
    pub pass: bool,
}

impl ValueCheck {
    fn new(label: String, exact: Complex64, numeric: Vec<Complex64>, opts: &CrosscheckOptions) -> Self {
        let scale = exact.norm().max(1e-2);
        let relative_error = numeric.iter().map(|v| (v - exact).norm() / scale).fold(0.0, f64::max);
        let spread = numeric.iter().map(|v| (v - numeric[0]).norm()).fold(0.0, f64::max);
        ValueCheck {
            pass: relative_error <= opts.tol && spread <= opts.spread_tol,
            label,
            exact,
            numeric,
            relative_error,
            spread,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Crosscheck {
    pub cases: Vec<ValueCheck>,
    pub total: ValueCheck,
    pub options: CrosscheckOptions,
}

impl Crosscheck {
    pub fn pass(&self) -> bool {
        self.total.pass && self.cases.iter().all(|c| c.pass)
    }

    /// True when shifting each nonzero exact value by the relative amount
    /// `shift` makes its comparison fail, i.e. the check can tell them apart.
    pub fn detects_shift(&self, shift: f64) -> bool {
        self.cases
            .iter()
            .chain(std::iter::once(&self.total))
            .filter(|v| v.exact.norm() > 0.0)
            .all(|v| {
                let shifted = v.exact * (1.0 + shift);
                !ValueCheck::new(v.label.clone(), shifted, v.numeric.clone(), &self.options).pass
            })
    }
}

fn exact_value(ctx: &NumericContext, s: &ScalarPoly, pi_power: u32) -> Complex64 {
    ctx.scalar(s) * PI.powi(pi_power as i32)
}

/// Recomputes every case of `report` numerically and compares with its exact integrals.
pub fn crosscheck_phi(report: &PhiReport, opts: &CrosscheckOptions) -> Result<Crosscheck, OracleError> {
    let n = report.n;
    let mut contexts = Vec::new();
    for &seed in &opts.seeds {
        for dir in sphere_directions(n, seed, opts.directions) {
            contexts.push(NumericContext::with_direction(n, dir, opts.kappa, opts.f0, opts.f1)?);
        }
    }
    let quad_tol = opts.tol * 1e-4;
    let mut cases = Vec::with_capacity(report.cases.len());
    let mut totals = vec![c(0.0, 0.0); contexts.len()];
    for case in &report.cases {
        let exact = exact_value(&contexts[0], &case.integral, case.multiplier.pi_power);
        let direct = if case.vanished.is_some() {
            None
        } else {
            Some(eval_case_with_form(
                &case.spec,
                n,
                (report.p1, report.p2),
                case.left,
                case.right,
                CaseForm::Direct,
            )?)
        };
        let mut numeric = Vec::with_capacity(contexts.len());
        for (ctx, total) in contexts.iter().zip(totals.iter_mut()) {
            let v = match &direct {
                None => c(0.0, 0.0),
                Some(d) => {
                    let bound = tail_bound(ctx, &d.integrand)?;
                    numeric_case(ctx, &case.spec, case.left, case.right, bound, quad_tol)?
                }
            };
            *total += v;
            numeric.push(v);
        }
        cases.push(ValueCheck::new(case.label.clone(), exact, numeric, opts));
    }
    let exact_total = exact_value(&contexts[0], &report.total, report.multiplier.pi_power);
    Ok(Crosscheck {
        cases,
        total: ValueCheck::new("total".into(), exact_total, totals, opts),
        options: opts.clone(),
    })
}

/// Dimension of the instantiated spinor space, as a float for comparisons.
pub fn spinor_trace_of_identity(n: u32) -> f64 {
    spinor_dimension(n) as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_hold() {
        for n in [5, 6] {
            let g = gamma_matrices(n);
            assert_eq!(g.len(), n as usize);
            assert!(relation_defect(&g) < 1e-14);
            assert_eq!(g[0].nrows() as f64, spinor_trace_of_identity(n));
        }
    }

    #[test]
    fn directions_are_unit_and_deterministic() {
        let a = sphere_directions(6, 3, 4);
        assert_eq!(a, sphere_directions(6, 3, 4));
        for v in &a {
            let norm: f64 = v.iter().map(|x| x * x).sum();
            assert!((norm - 1.0).abs() < 1e-12);
        }
    }
}
