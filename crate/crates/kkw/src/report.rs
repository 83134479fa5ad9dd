//! JSON and Markdown output. Exact numbers are written as strings (`"a/b"`),
//! so a document survives a serialize, deserialize, serialize cycle unchanged.

use std::fmt::Write as _;

use kkw_core::engine::{CaseResult, GroupCheck, Multiplier, PhiReport};
use kkw_core::gravity::{GravityReport, InteriorConstants};
use kkw_core::scalars::{Exponents, GaussianRational, ScalarPoly, Var};
use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::oracle::{Crosscheck, ValueCheck};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("invalid rational `{0}`")]
    BadRational(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gaussian {
    pub re: String,
    pub im: String,
}

impl From<&GaussianRational> for Gaussian {
    fn from(g: &GaussianRational) -> Self {
        Gaussian {
            re: g.re().to_string(),
            im: g.im().to_string(),
        }
    }
}

impl TryFrom<&Gaussian> for GaussianRational {
    type Error = ReportError;

    fn try_from(g: &Gaussian) -> Result<Self, ReportError> {
        let parse = |s: &str| s.parse::<BigRational>().map_err(|_| ReportError::BadRational(s.into()));
        Ok(GaussianRational::new(parse(&g.re)?, parse(&g.im)?))
    }
}

fn is_zero(n: &u32) -> bool {
    *n == 0
}

/// `coeff * kappa^kappa * u^u * f0^f0 * f1^f1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: Gaussian,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub kappa: u32,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub u: u32,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub f0: u32,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub f1: u32,
}

pub fn terms(p: &ScalarPoly) -> Vec<Term> {
    p.terms()
        .map(|(e, c)| Term {
            coeff: c.into(),
            kappa: e.get(Var::Kappa),
            u: e.get(Var::U),
            f0: e.get(Var::F0),
            f1: e.get(Var::F1),
        })
        .collect()
}

pub fn scalar_from_terms(terms: &[Term]) -> Result<ScalarPoly, ReportError> {
    let mut out = ScalarPoly::zero();
    for t in terms {
        let e = Exponents([t.kappa, t.u, t.f0, t.f1]);
        out += &ScalarPoly::monomial(GaussianRational::try_from(&t.coeff)?, e);
    }
    Ok(out)
}

/// `(sum of terms) * pi^pi * Omega_omega`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Integral {
    pub terms: Vec<Term>,
    pub pi: u32,
    pub omega: u32,
}

impl Integral {
    pub fn new(p: &ScalarPoly, m: Multiplier) -> Self {
        Integral {
            terms: terms(p),
            pi: m.pi_power,
            omega: m.omega_index,
        }
    }

    pub fn value(&self) -> Result<ScalarPoly, ReportError> {
        scalar_from_terms(&self.terms)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseEntry {
    pub label: String,
    pub r: i32,
    pub l: i32,
    pub k: u32,
    pub j: u32,
    pub alpha: u32,
    pub left: String,
    pub right: String,
    pub form: String,
    pub coefficient: Gaussian,
    pub trace: String,
    pub integrand: String,
    pub integral: Integral,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vanished: Option<String>,
    /// Published value, when one exists.
    #[serde(rename = "paper", default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<Integral>,
    #[serde(rename = "match", default, skip_serializing_if = "Option::is_none")]
    pub matches: Option<bool>,
}

impl From<&CaseResult> for CaseEntry {
    fn from(c: &CaseResult) -> Self {
        CaseEntry {
            label: c.label.clone(),
            r: c.spec.r,
            l: c.spec.l,
            k: c.spec.k,
            j: c.spec.j,
            alpha: c.spec.alpha,
            left: c.left.tag().into(),
            right: c.right.tag().into(),
            form: c.form.tag().into(),
            coefficient: (&c.coefficient).into(),
            trace: c.trace.render(),
            integrand: c.integrand.render(),
            integral: Integral::new(&c.integral, c.multiplier),
            vanished: c.vanished.clone(),
            reference: c.reference.as_ref().map(|r| Integral::new(r, c.multiplier)),
            matches: c.matches,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupEntry {
    pub labels: Vec<String>,
    pub value: Integral,
    #[serde(rename = "paper")]
    pub reference: Integral,
    #[serde(rename = "match")]
    pub matches: bool,
}

impl GroupEntry {
    fn new(g: &GroupCheck, m: Multiplier) -> Self {
        GroupEntry {
            labels: g.labels.clone(),
            value: Integral::new(&g.value, m),
            reference: Integral::new(&g.reference, m),
            matches: g.matches,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NumericEntry {
    pub label: String,
    /// `[re, im]` of the exact value at the sample point.
    pub exact: [f64; 2],
    /// `[re, im]` per sampled direction.
    pub numeric: Vec<[f64; 2]>,
    pub relative_error: f64,
    pub spread: f64,
    pub pass: bool,
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

impl From<&ValueCheck> for NumericEntry {
    fn from(v: &ValueCheck) -> Self {
        NumericEntry {
            label: v.label.clone(),
            exact: pair(v.exact),
            numeric: v.numeric.iter().copied().map(pair).collect(),
            relative_error: v.relative_error,
            spread: v.spread,
            pass: v.pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleSection {
    pub kappa: f64,
    pub f0: f64,
    pub f1: f64,
    pub tol: f64,
    pub spread_tol: f64,
    pub seeds: Vec<u64>,
    pub directions: usize,
    pub cases: Vec<NumericEntry>,
    pub total: NumericEntry,
    pub pass: bool,
}

impl From<&Crosscheck> for OracleSection {
    fn from(c: &Crosscheck) -> Self {
        let o = &c.options;
        OracleSection {
            kappa: o.kappa,
            f0: o.f0,
            f1: o.f1,
            tol: o.tol,
            spread_tol: o.spread_tol,
            seeds: o.seeds.clone(),
            directions: o.directions,
            cases: c.cases.iter().map(NumericEntry::from).collect(),
            total: (&c.total).into(),
            pass: c.pass(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InteriorSection {
    pub wres_coefficient: Gaussian,
    pub omega: u32,
    pub gravity_constant: Gaussian,
    pub consistent: bool,
}

impl From<&InteriorConstants> for InteriorSection {
    fn from(i: &InteriorConstants) -> Self {
        InteriorSection {
            wres_coefficient: (&i.wres_coefficient).into(),
            omega: i.omega_index,
            gravity_constant: (&i.gravity_constant).into(),
            consistent: i.consistent,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GravitySection {
    pub extrinsic_curvature: Vec<Term>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficient_against_k: Option<Gaussian>,
    pub boundary_constant: Vec<Term>,
    #[serde(rename = "paper", default, skip_serializing_if = "Option::is_none")]
    pub reference_constant: Option<Vec<Term>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_identity_holds: Option<bool>,
    #[serde(rename = "match", default, skip_serializing_if = "Option::is_none")]
    pub matches: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interior: Option<InteriorSection>,
}

impl From<&GravityReport> for GravitySection {
    fn from(g: &GravityReport) -> Self {
        GravitySection {
            extrinsic_curvature: terms(&g.extrinsic_curvature),
            coefficient_against_k: g.coefficient_against_k.as_ref().map(Gaussian::from),
            boundary_constant: terms(&g.boundary_constant),
            reference_constant: g.reference_constant.as_ref().map(terms),
            reference_identity_holds: g.reference_identity_holds,
            matches: g.matches,
            interior: g.interior.as_ref().map(InteriorSection::from),
        }
    }
}

/// Everything the `phi` and `report` commands print.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhiDocument {
    pub n: u32,
    pub p: [u32; 2],
    pub perturbation: String,
    pub cases: Vec<CaseEntry>,
    pub total: Integral,
    #[serde(rename = "paper", default, skip_serializing_if = "Option::is_none")]
    pub reference_total: Option<Integral>,
    #[serde(rename = "match", default, skip_serializing_if = "Option::is_none")]
    pub matches: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub groups: Vec<GroupEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gravity: Option<GravitySection>,
}

impl PhiDocument {
    pub fn new(r: &PhiReport) -> Self {
        PhiDocument {
            n: r.n,
            p: [r.p1, r.p2],
            perturbation: r.perturbation.tag().into(),
            cases: r.cases.iter().map(CaseEntry::from).collect(),
            total: Integral::new(&r.total, r.multiplier),
            reference_total: r.reference_total.as_ref().map(|t| Integral::new(t, r.multiplier)),
            matches: r.total_matches,
            groups: r.group_checks.iter().map(|g| GroupEntry::new(g, r.multiplier)).collect(),
            oracle: None,
            gravity: None,
        }
    }

    pub fn with_oracle(mut self, c: &Crosscheck) -> Self {
        self.oracle = Some(c.into());
        self
    }

    pub fn with_gravity(mut self, g: &GravityReport) -> Self {
        self.gravity = Some(g.into());
        self
    }

    /// False if any exact or numeric comparison failed.
    pub fn all_match(&self) -> bool {
        self.cases.iter().all(|c| c.matches != Some(false))
            && self.matches != Some(false)
            && self.groups.iter().all(|g| g.matches)
            && self.oracle.as_ref().is_none_or(|o| o.pass)
            && self.gravity.as_ref().is_none_or(|g| g.matches != Some(false))
    }

    pub fn to_json(&self) -> Result<String, ReportError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self, ReportError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_markdown(&self) -> Result<String, ReportError> {
        let mut out = String::new();
        let w = &mut out;
        let _ = writeln!(
            w,
            "# Boundary term, n = {}, p = ({}, {}), perturbation: {}\n",
            self.n, self.p[0], self.p[1], self.perturbation
        );
        let _ = writeln!(w, "| case | (r, l, k, j, alpha) | form | value | reference | match |");
        let _ = writeln!(w, "|---|---|---|---|---|---|");
        for c in &self.cases {
            let value = match &c.vanished {
                Some(why) => format!("0 ({})", why),
                None => integral_text(&c.integral)?,
            };
            let _ = writeln!(
                w,
                "| {} | ({}, {}, {}, {}, {}) | {} | {} | {} | {} |",
                c.label,
                c.r,
                c.l,
                c.k,
                c.j,
                c.alpha,
                c.form,
                value,
                optional_integral(c.reference.as_ref())?,
                match_text(c.matches),
            );
        }
        let _ = writeln!(w, "\n**Total:** {}", integral_text(&self.total)?);
        if let Some(r) = &self.reference_total {
            let _ = writeln!(w, "\n**Reference:** {} ({})", integral_text(r)?, match_text(self.matches));
        }
        for g in &self.groups {
            let _ = writeln!(
                w,
                "\n**{}:** {} against {} ({})",
                g.labels.join(" + "),
                integral_text(&g.value)?,
                integral_text(&g.reference)?,
                match_text(Some(g.matches))
            );
        }
        if let Some(g) = &self.gravity {
            let _ = writeln!(w, "\n## Gravitational form\n");
            let _ = writeln!(w, "- K = {}", scalar_from_terms(&g.extrinsic_curvature)?);
            if let Some(c) = &g.coefficient_against_k {
                let _ = writeln!(w, "- Phi = {} * pi * Omega * K", GaussianRational::try_from(c)?);
            }
            let _ = writeln!(w, "- boundary constant: {}", scalar_from_terms(&g.boundary_constant)?);
            if let Some(r) = &g.reference_constant {
                let _ = writeln!(w, "- reference constant: {} ({})", scalar_from_terms(r)?, match_text(g.matches));
            }
            if let Some(i) = &g.interior {
                let _ = writeln!(
                    w,
                    "- interior: Wres = {} * Omega_{} * int s, constant {}",
                    GaussianRational::try_from(&i.wres_coefficient)?,
                    i.omega,
                    GaussianRational::try_from(&i.gravity_constant)?
                );
            }
        }
        if let Some(o) = &self.oracle {
            let _ = writeln!(
                w,
                "\n## Numeric check (kappa = {}, f0 = {}, f1 = {}, {} seeds x {} directions)\n",
                o.kappa,
                o.f0,
                o.f1,
                o.seeds.len(),
                o.directions
            );
            let _ = writeln!(w, "| case | exact | relative error | spread | pass |");
            let _ = writeln!(w, "|---|---|---|---|---|");
            for e in o.cases.iter().chain(std::iter::once(&o.total)) {
                let _ = writeln!(
                    w,
                    "| {} | {:.12} {:+.12}i | {:.2e} | {:.2e} | {} |",
                    e.label, e.exact[0], e.exact[1], e.relative_error, e.spread, e.pass
                );
            }
        }
        Ok(out)
    }
}

fn integral_text(i: &Integral) -> Result<String, ReportError> {
    let v = i.value()?;
    let pi = match i.pi {
        0 => String::new(),
        1 => " * pi".into(),
        k => format!(" * pi^{}", k),
    };
    Ok(format!("({}){} * Omega_{}", v, pi, i.omega))
}

fn optional_integral(i: Option<&Integral>) -> Result<String, ReportError> {
    i.map_or(Ok("-".into()), integral_text)
}

fn match_text(m: Option<bool>) -> &'static str {
    match m {
        Some(true) => "yes",
        Some(false) => "NO",
        None => "-",
    }
}
