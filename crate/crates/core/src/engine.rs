//! The boundary term `Phi`: enumeration of the admissible index tuples, the
//! per-case integrand, its trace and real-line integral, and the total.
//!
//! For operators `pi^+ D^{-p1} o pi^+ D^{-p2}` in dimension `n` the sum runs over
//! `r - k - alpha + l - j - 1 = -n` with `r <= -p1`, `l <= -p2`, and each term is
//!
//! ```text
//! (-i)^(alpha+j+k+1) / (alpha! (j+k+1)!) * int tr[ d_xn^j d_xi^k pi^+ sigma_r(left)
//!                                                  * d_xi^(j+1) d_xn^k sigma_l(right) ] dxi_n
//! ```
//!
//! integrated over `|xi'| = 1`, which contributes the factor `Omega_{n-2}`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::rational::PoleRational;
use crate::scalars::{GaussianRational, ScalarPoly};
use crate::symbols::{build_symbol, Operator, SymbolJet};

/// Optional modification of the left operator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum Perturbation {
    #[default]
    None,
    /// `D^{-p1}` becomes `f D^{-p1}`.
    LeftMultiplyF,
}

impl Perturbation {
    pub fn tag(self) -> &'static str {
        match self {
            Perturbation::None => "none",
            Perturbation::LeftMultiplyF => "left-multiply-f",
        }
    }

    pub fn from_tag(s: &str) -> Option<Perturbation> {
        match s {
            "none" => Some(Perturbation::None),
            "left-multiply-f" => Some(Perturbation::LeftMultiplyF),
            _ => None,
        }
    }
}

/// One admissible index tuple.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CaseSpec {
    pub r: i32,
    pub l: i32,
    pub k: u32,
    pub j: u32,
    /// Total tangential multi-order `|alpha|`.
    pub alpha: u32,
}

impl CaseSpec {
    /// `(-i)^(alpha+j+k+1) / (alpha! (j+k+1)!)`.
    pub fn coefficient(&self) -> GaussianRational {
        let power = (self.alpha + self.j + self.k + 1) as i64;
        let sign = GaussianRational::i_pow(-power);
        let den = factorial(self.alpha) * factorial(self.j + self.k + 1);
        &sign * &GaussianRational::ratio(1, den)
    }
}

impl fmt::Display for CaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "r={} l={} k={} j={} alpha={}",
            self.r, self.l, self.k, self.j, self.alpha
        )
    }
}

fn factorial(n: u32) -> i64 {
    (1..=n as i64).product()
}

/// Structural factor `pi^pi_power * Omega_{omega_index}` carried next to an exact value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Multiplier {
    pub pi_power: u32,
    pub omega_index: u32,
}

/// Which of the two equivalent integrands a case was evaluated with.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CaseForm {
    /// `coefficient * tr[pi^+ sigma_r * d_xi sigma_l]` and its derivative variants.
    Direct,
    /// `-coefficient * tr[d_xi pi^+ sigma_r * sigma_l]`, valid when `j = k = alpha = 0`.
    IntegrationByParts,
}

impl CaseForm {
    pub fn tag(self) -> &'static str {
        match self {
            CaseForm::Direct => "direct",
            CaseForm::IntegrationByParts => "by-parts",
        }
    }
}

/// Why a case contributes nothing without being computed.
pub const TANGENTIAL_VANISHING: &str =
    "tangential derivatives of the symbols vanish at the boundary point in normal coordinates";

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CaseResult {
    pub spec: CaseSpec,
    pub label: String,
    pub left: Operator,
    pub right: Operator,
    pub form: CaseForm,
    pub coefficient: GaussianRational,
    /// The bare fiber trace of the product of symbols.
    pub trace: PoleRational,
    /// `trace` times the signed coefficient; this is what gets integrated.
    pub integrand: PoleRational,
    /// Value with the multiplier stripped.
    pub integral: ScalarPoly,
    pub multiplier: Multiplier,
    pub vanished: Option<String>,
    pub reference: Option<ScalarPoly>,
    pub matches: Option<bool>,
}

/// A check on the sum of several cases (e.g. two cases that cancel).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupCheck {
    pub labels: Vec<String>,
    pub value: ScalarPoly,
    pub reference: ScalarPoly,
    pub matches: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PhiReport {
    pub n: u32,
    pub p1: u32,
    pub p2: u32,
    pub perturbation: Perturbation,
    pub cases: Vec<CaseResult>,
    pub total: ScalarPoly,
    pub multiplier: Multiplier,
    pub reference_total: Option<ScalarPoly>,
    pub total_matches: Option<bool>,
    pub group_checks: Vec<GroupCheck>,
}

impl PhiReport {
    /// `false` when any reference comparison disagrees.
    pub fn all_match(&self) -> bool {
        self.cases.iter().all(|c| c.matches != Some(false))
            && self.total_matches != Some(false)
            && self.group_checks.iter().all(|g| g.matches)
    }

    pub fn case(&self, label: &str) -> Option<&CaseResult> {
        self.cases.iter().find(|c| c.label == label)
    }
}

/// Left and right operators for `pi^+ D^{-p1} o pi^+ D^{-p2}`.
pub fn operators(p1: u32, p2: u32, perturbation: Perturbation) -> Result<(Operator, Operator)> {
    let unsupported = || Error::UnsupportedConfiguration(format!("p = ({}, {})", p1, p2));
    let left = Operator::inverse_power(p1).ok_or_else(unsupported)?;
    let right = Operator::inverse_power(p2).ok_or_else(unsupported)?;
    let left = match (perturbation, left) {
        (Perturbation::None, op) => op,
        (Perturbation::LeftMultiplyF, Operator::Dinv2) => Operator::FDinv2,
        (Perturbation::LeftMultiplyF, _) => {
            return Err(Error::UnsupportedConfiguration(format!(
                "left multiplication by f is only encoded for p1 = 2, got p1 = {}",
                p1
            )))
        }
    };
    Ok((left, right))
}

/// All admissible tuples: by increasing `-r-l`, then `r` from `-p1` downward,
/// then `alpha`, `j`, `k` with the higher index first.
pub fn enumerate_cases(n: u32, p1: u32, p2: u32) -> Result<Vec<CaseSpec>> {
    if p1 == 0 || p2 == 0 || p1 + p2 > n {
        return Err(Error::UnsupportedConfiguration(format!(
            "need p1, p2 >= 1 and p1 + p2 <= n, got p = ({}, {}), n = {}",
            p1, p2, n
        )));
    }
    let (left, right) = operators(p1, p2, Perturbation::None)?;
    let total = n as i32 - 1;
    let lead = (p1 + p2) as i32;
    let mut out = Vec::new();
    for depth in lead..=total {
        let rest = (total - depth) as u32;
        for dr in 0..=(depth - lead) {
            let r = -(p1 as i32) - dr;
            let l = -depth - r;
            for alpha in (0..=rest).rev() {
                for j in (0..=rest - alpha).rev() {
                    let k = rest - alpha - j;
                    let spec = CaseSpec { r, l, k, j, alpha };
                    check_available(&spec, left, right)?;
                    out.push(spec);
                }
            }
        }
    }
    Ok(out)
}

fn check_available(spec: &CaseSpec, left: Operator, right: Operator) -> Result<()> {
    let missing = |what: String| Err(Error::UnsupportedConfiguration(format!("{} needs {}", spec, what)));
    if !left.supported_orders().contains(&spec.r) {
        return missing(format!("order {} of {}", spec.r, left));
    }
    if !right.supported_orders().contains(&spec.l) {
        return missing(format!("order {} of {}", spec.l, right));
    }
    if spec.alpha > 0 {
        return Ok(());
    }
    if spec.j > 1 || spec.k > 1 {
        return missing(String::from("x_n-derivatives of order above one"));
    }
    if spec.j == 1 && spec.r != left.leading_order() {
        return missing(format!("d/dx_n of order {} of {}", spec.r, left));
    }
    if spec.k == 1 && spec.l != right.leading_order() {
        return missing(format!("d/dx_n of order {} of {}", spec.l, right));
    }
    Ok(())
}

/// Case name keyed by which index is one and which order is subleading.
pub fn case_label(spec: &CaseSpec, p1: u32, p2: u32) -> String {
    let lead_r = -(p1 as i32);
    let lead_l = -(p2 as i32);
    let label = match (spec.r - lead_r, spec.l - lead_l, spec.alpha, spec.j, spec.k) {
        (0, 0, 1, 0, 0) => "aI",
        (0, 0, 0, 1, 0) => "aII",
        (0, 0, 0, 0, 1) => "aIII",
        (0, 0, 0, 0, 0) => "a",
        (0, -1, 0, 0, 0) => "b",
        (-1, 0, 0, 0, 0) => "c",
        _ => {
            return format!(
                "r{}l{}k{}j{}a{}",
                spec.r, spec.l, spec.k, spec.j, spec.alpha
            )
        }
    };
    label.into()
}

fn jet(op: Operator, order: i32, n: u32) -> Result<SymbolJet> {
    build_symbol(op, order, n)
}

/// Scalar trace of a product, restricted to `|xi'| = 1`.
fn scalar_trace(x: &PoleRational, y: &PoleRational, n: u32) -> Result<PoleRational> {
    Ok(x.mul(y)?.on_unit_sphere().trace(n).on_unit_sphere())
}

fn integral_of(integrand: &PoleRational) -> Result<ScalarPoly> {
    let v = integrand.integrate_line()?;
    v.coefficient
        .as_scalar()
        .ok_or_else(|| Error::NotScalar(format!("{}", v.coefficient)))
}

/// Evaluates one case in the given form.
pub fn eval_case_with_form(
    spec: &CaseSpec,
    n: u32,
    p: (u32, u32),
    left: Operator,
    right: Operator,
    form: CaseForm,
) -> Result<CaseResult> {
    let label = case_label(spec, p.0, p.1);
    let coefficient = spec.coefficient();
    let multiplier = Multiplier {
        pi_power: 1,
        omega_index: n - 2,
    };
    if spec.alpha > 0 {
        return Ok(CaseResult {
            spec: *spec,
            label,
            left,
            right,
            form: CaseForm::Direct,
            coefficient,
            trace: PoleRational::zero(),
            integrand: PoleRational::zero(),
            integral: ScalarPoly::zero(),
            multiplier,
            vanished: Some(TANGENTIAL_VANISHING.into()),
            reference: None,
            matches: None,
        });
    }
    let lj = jet(left, spec.r, n)?;
    let rj = jet(right, spec.l, n)?;
    let left_factor = if spec.j == 1 { lj.dxn()? } else { &lj.value };
    let right_factor = if spec.k == 1 { rj.dxn()? } else { &rj.value };
    let projected = left_factor.pi_plus()?.diff_xi(spec.k);

    let (trace, signed) = match form {
        CaseForm::Direct => (
            scalar_trace(&projected, &right_factor.diff_xi(spec.j + 1), n)?,
            coefficient.clone(),
        ),
        CaseForm::IntegrationByParts => {
            if spec.j != 0 || spec.k != 0 {
                return Err(Error::UnsupportedConfiguration(format!(
                    "integration by parts form needs j = k = 0, got {}",
                    spec
                )));
            }
            (
                scalar_trace(&projected.diff_xi(1), right_factor, n)?,
                -coefficient.clone(),
            )
        }
    };
    let integrand = trace.scale_by(&signed);
    let integral = integral_of(&integrand)?;
    Ok(CaseResult {
        spec: *spec,
        label,
        left,
        right,
        form,
        coefficient,
        trace,
        integrand,
        integral,
        multiplier,
        vanished: None,
        reference: None,
        matches: None,
    })
}

/// Evaluates one case; case `b` (subleading right order, no derivatives) uses
/// the integration-by-parts form.
pub fn eval_case(spec: &CaseSpec, n: u32, p: (u32, u32), left: Operator, right: Operator) -> Result<CaseResult> {
    let by_parts = spec.alpha == 0
        && spec.j == 0
        && spec.k == 0
        && spec.r == -(p.0 as i32)
        && spec.l == -(p.1 as i32) - 1;
    let form = if by_parts {
        CaseForm::IntegrationByParts
    } else {
        CaseForm::Direct
    };
    eval_case_with_form(spec, n, p, left, right, form)
}

/// Published per-case values and totals for the configurations with a reference.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReferenceTable {
    pub cases: Vec<(&'static str, ScalarPoly)>,
    pub groups: Vec<(Vec<&'static str>, ScalarPoly)>,
    pub total: ScalarPoly,
}

fn kappa_times(re: (i64, i64), im: (i64, i64)) -> ScalarPoly {
    ScalarPoly::kappa().scale(&GaussianRational::complex(re.0, re.1, im.0, im.1))
}

pub fn reference_values(n: u32, p1: u32, p2: u32, perturbation: Perturbation) -> Option<ReferenceTable> {
    let c = |re: (i64, i64), im: (i64, i64)| ScalarPoly::constant(GaussianRational::complex(re.0, re.1, im.0, im.1));
    match (n, p1, p2, perturbation) {
        (6, 1, 3, Perturbation::None) => Some(ReferenceTable {
            cases: alloc::vec![
                ("aI", ScalarPoly::zero()),
                ("aII", kappa_times((-15, 16), (0, 1))),
                ("aIII", kappa_times((25, 16), (0, 1))),
                ("b", kappa_times((-25, 8), (-35, 16))),
                ("c", kappa_times((55, 16), (0, 1))),
            ],
            groups: Vec::new(),
            total: kappa_times((15, 16), (-35, 16)),
        }),
        (5, 1, 3, Perturbation::None) => Some(ReferenceTable {
            cases: alloc::vec![("a", c((0, 1), (3, 4)))],
            groups: Vec::new(),
            total: c((0, 1), (3, 4)),
        }),
        (6, 2, 2, Perturbation::LeftMultiplyF) => {
            let f0k = &ScalarPoly::f0() * &ScalarPoly::kappa();
            let three_i_f1 = ScalarPoly::f1().scale(&GaussianRational::complex(0, 1, 3, 1));
            Some(ReferenceTable {
                cases: alloc::vec![
                    ("aI", ScalarPoly::zero()),
                    ("aII", &f0k.scale(&GaussianRational::ratio(-5, 8)) + &three_i_f1),
                    ("aIII", f0k.scale(&GaussianRational::ratio(5, 8))),
                ],
                groups: alloc::vec![(alloc::vec!["b", "c"], ScalarPoly::zero())],
                total: three_i_f1,
            })
        }
        _ => None,
    }
}

/// Computes every case and the total, and attaches reference comparisons.
pub fn phi(n: u32, p1: u32, p2: u32, perturbation: Perturbation) -> Result<PhiReport> {
    let (left, right) = operators(p1, p2, perturbation)?;
    let specs = enumerate_cases(n, p1, p2)?;
    let mut cases = Vec::with_capacity(specs.len());
    for spec in &specs {
        cases.push(eval_case(spec, n, (p1, p2), left, right)?);
    }
    let mut total = ScalarPoly::zero();
    for c in &cases {
        total += &c.integral;
    }
    let reference = reference_values(n, p1, p2, perturbation);
    let mut group_checks = Vec::new();
    let mut reference_total = None;
    if let Some(table) = &reference {
        for case in cases.iter_mut() {
            if let Some((_, v)) = table.cases.iter().find(|(label, _)| *label == case.label) {
                case.matches = Some(*v == case.integral);
                case.reference = Some(v.clone());
            }
        }
        for (labels, v) in &table.groups {
            let mut sum = ScalarPoly::zero();
            for label in labels {
                if let Some(c) = cases.iter().find(|c| c.label == *label) {
                    sum += &c.integral;
                }
            }
            group_checks.push(GroupCheck {
                labels: labels.iter().map(|s| String::from(*s)).collect(),
                matches: sum == *v,
                value: sum,
                reference: v.clone(),
            });
        }
        reference_total = Some(table.total.clone());
    }
    Ok(PhiReport {
        n,
        p1,
        p2,
        perturbation,
        total_matches: reference_total.as_ref().map(|v| *v == total),
        reference_total,
        cases,
        total,
        multiplier: Multiplier {
            pi_power: 1,
            omega_index: n - 2,
        },
        group_checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(r: i32, l: i32, k: u32, j: u32, alpha: u32) -> CaseSpec {
        CaseSpec { r, l, k, j, alpha }
    }

    #[test]
    fn coefficients() {
        assert_eq!(spec(-1, -3, 0, 0, 0).coefficient(), -GaussianRational::i());
        assert_eq!(spec(-1, -3, 0, 1, 0).coefficient(), GaussianRational::ratio(-1, 2));
        assert_eq!(spec(-1, -3, 1, 0, 0).coefficient(), GaussianRational::ratio(-1, 2));
    }

    #[test]
    fn enumeration_shapes() {
        let six = enumerate_cases(6, 1, 3).unwrap();
        assert_eq!(
            six,
            alloc::vec![
                spec(-1, -3, 0, 0, 1),
                spec(-1, -3, 0, 1, 0),
                spec(-1, -3, 1, 0, 0),
                spec(-1, -4, 0, 0, 0),
                spec(-2, -3, 0, 0, 0),
            ]
        );
        assert_eq!(enumerate_cases(5, 1, 3).unwrap(), alloc::vec![spec(-1, -3, 0, 0, 0)]);
        let labels: Vec<String> = enumerate_cases(6, 2, 2)
            .unwrap()
            .iter()
            .map(|s| case_label(s, 2, 2))
            .collect();
        assert_eq!(labels, ["aI", "aII", "aIII", "b", "c"]);
    }

    #[test]
    fn unsupported_configurations() {
        assert!(matches!(enumerate_cases(6, 1, 2), Err(Error::UnsupportedConfiguration(_))));
        assert!(matches!(enumerate_cases(6, 0, 3), Err(Error::UnsupportedConfiguration(_))));
        assert!(matches!(
            phi(6, 1, 3, Perturbation::LeftMultiplyF),
            Err(Error::UnsupportedConfiguration(_))
        ));
    }

    #[test]
    fn six_dimensional_total() {
        let report = phi(6, 1, 3, Perturbation::None).unwrap();
        assert_eq!(report.total, kappa_times((15, 16), (-35, 16)));
        assert_eq!(report.total_matches, Some(true));
        assert!(report.all_match());
    }
}
