//! Global adaptive Gauss-Kronrod (7/15) quadrature for complex integrands on
//! the real line, with an analytic bound for the truncated tails.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::OracleError;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

/// Gauss weights for the nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_INTERVALS: usize = 20_000;

#[derive(Clone, Copy, Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut gauss = fc * WG[3];
    let mut kron = fc * WGK[7];
    for (idx, &x) in XGK.iter().enumerate().take(7) {
        let pair = f(center - half * x) + f(center + half * x);
        kron += pair * WGK[idx];
        if idx % 2 == 1 {
            gauss += pair * WG[idx / 2];
        }
    }
    let value = kron * half;
    let error = ((kron - gauss) * half).norm();
    let floor = 50.0 * f64::EPSILON * value.norm();
    Panel {
        a,
        b,
        value,
        error: error.max(floor),
    }
}

/// Integrates `f` over `[a, b]` split at `breaks` until the summed error
/// estimate is at most `tol`.
pub fn integrate_interval<F>(f: F, breaks: &[f64], tol: f64) -> Result<(Complex64, f64), OracleError>
where
    F: Fn(f64) -> Complex64,
{
    let mut heap: BinaryHeap<Panel> = breaks
        .windows(2)
        .map(|w| kronrod(&f, w[0], w[1]))
        .collect();
    loop {
        let total_error: f64 = heap.iter().map(|p| p.error).sum();
        if total_error <= tol {
            let value = heap.iter().map(|p| p.value).sum();
            return Ok((value, total_error));
        }
        if heap.len() >= MAX_INTERVALS {
            return Err(OracleError::ToleranceNotReached {
                tol,
                estimate: total_error,
            });
        }
        let worst = heap.pop().expect("at least one panel");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            return Err(OracleError::ToleranceNotReached {
                tol,
                estimate: total_error,
            });
        }
        heap.push(kronrod(&f, worst.a, mid));
        heap.push(kronrod(&f, mid, worst.b));
    }
}

/// `|f(xi)| <= constant * |xi|^{-decay}` for `|xi| >= 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailBound {
    pub constant: f64,
    pub decay: u32,
}

impl TailBound {
    /// Both tails beyond `|xi| = t`.
    pub fn tail(&self, t: f64) -> f64 {
        let m = self.decay as f64;
        2.0 * self.constant * t.powf(1.0 - m) / (m - 1.0)
    }

    /// Smallest power-of-two cutoff whose tail is below `budget`.
    pub fn cutoff(&self, budget: f64) -> f64 {
        let mut t = 4.0;
        while self.tail(t) > budget && t < 1e300 {
            t *= 2.0;
        }
        t
    }
}

/// `int_R f` for an integrand with the given decay: half the tolerance goes to
/// the tails, half to the quadrature on `[-T, T]`.
pub fn numeric_integrate<F>(f: F, bound: TailBound, tol: f64) -> Result<Complex64, OracleError>
where
    F: Fn(f64) -> Complex64,
{
    if bound.decay < 2 {
        return Err(OracleError::NotIntegrable(bound.decay));
    }
    let t = bound.cutoff(0.5 * tol);
    // geometric breakpoints keep panels short near the origin and long in the tails
    let mut positive = vec![0.0];
    let mut x = 0.5;
    while x < t {
        positive.push(x);
        x *= 2.0;
    }
    positive.push(t);
    let mut breaks: Vec<f64> = positive.iter().rev().skip(1).map(|v| -v).collect();
    breaks.extend(positive);
    let (value, _) = integrate_interval(f, &breaks, 0.5 * tol)?;
    Ok(value)
}
