//! Rewrites the boundary term against the extrinsic curvature and relates it
//! to the boundary part of the Einstein-Hilbert action `2 int K`.
//!
//! At the boundary point `K(x_0) = -((n-1)/2) kappa`. If `Phi = c * pi * Omega_{n-2}`
//! per unit boundary volume, the boundary action is recovered as
//! `I_b = (2K / c) / (pi Omega_{n-2}) * Wres_b`.

use alloc::format;

use crate::engine::{Perturbation, PhiReport};
use crate::error::{Error, Result};
use crate::scalars::{GaussianRational, ScalarPoly};

/// Interior constants that this crate does not compute; they are carried
/// as documented values so that reports can show the full action.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InteriorConstants {
    /// `Wres_i = wres_coefficient * Omega_{omega_index} * int s`.
    pub wres_coefficient: GaussianRational,
    pub omega_index: u32,
    /// `I_i = gravity_constant / (pi Omega_{omega_index}) * Wres_i`.
    pub gravity_constant: GaussianRational,
    /// `gravity_constant * wres_coefficient = 1/16`, the normalisation of `(1/16 pi) int s`.
    pub consistent: bool,
}

impl InteriorConstants {
    fn six_dimensional() -> InteriorConstants {
        let wres = GaussianRational::ratio(-5, 3);
        let constant = GaussianRational::ratio(-3, 80);
        InteriorConstants {
            consistent: &wres * &constant == GaussianRational::ratio(1, 16),
            wres_coefficient: wres,
            omega_index: 5,
            gravity_constant: constant,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GravityReport {
    pub n: u32,
    /// `K(x_0)`.
    pub extrinsic_curvature: ScalarPoly,
    /// `Phi / (pi Omega_{n-2})` as computed.
    pub boundary_total: ScalarPoly,
    /// `Phi = coefficient * pi * Omega_{n-2} * K`, when `Phi` is proportional to `K`.
    pub coefficient_against_k: Option<GaussianRational>,
    /// `2K / (Phi / (pi Omega_{n-2}))`, from the computed total.
    pub boundary_constant: ScalarPoly,
    /// The same constant from the published total.
    pub reference_constant: Option<ScalarPoly>,
    /// `reference_constant * reference_total == 2K`, checked exactly.
    pub reference_identity_holds: Option<bool>,
    /// `reference_constant == boundary_constant`.
    pub matches: Option<bool>,
    pub interior: Option<InteriorConstants>,
}

/// `K(x_0) = -((n-1)/2) kappa`.
pub fn extrinsic_curvature(n: u32) -> ScalarPoly {
    ScalarPoly::kappa().scale(&GaussianRational::ratio(-(n as i64 - 1), 2))
}

fn reference_constant(n: u32) -> Option<ScalarPoly> {
    match n {
        // 16 / (7i - 3)
        6 => Some(ScalarPoly::constant(
            &GaussianRational::from_integer(16) / &GaussianRational::complex(-3, 1, 7, 1),
        )),
        // 16 i kappa / 3
        5 => Some(ScalarPoly::kappa().scale(&GaussianRational::complex(0, 1, 16, 3))),
        _ => None,
    }
}

pub fn gravity_report(report: &PhiReport) -> Result<GravityReport> {
    if (report.p1, report.p2) != (1, 3) || report.perturbation != Perturbation::None {
        return Err(Error::UnsupportedConfiguration(format!(
            "gravitational rewriting is defined for p = (1, 3) without perturbation, got p = ({}, {})",
            report.p1, report.p2
        )));
    }
    let n = report.n;
    let k = extrinsic_curvature(n);
    let two_k = k.scale(&GaussianRational::from_integer(2));
    let coefficient_against_k = report.total.div_by_monomial(&k).and_then(|q| q.as_constant());
    let boundary_constant = two_k.div_by_monomial(&report.total).ok_or_else(|| {
        Error::UnsupportedConfiguration(format!("boundary total {} is not a single term", report.total))
    })?;
    let reference = reference_constant(n);
    let reference_identity_holds = match (&reference, &report.reference_total) {
        (Some(c), Some(t)) => Some((c * t) == two_k),
        _ => None,
    };
    Ok(GravityReport {
        n,
        extrinsic_curvature: k,
        boundary_total: report.total.clone(),
        coefficient_against_k,
        matches: reference.as_ref().map(|c| *c == boundary_constant),
        boundary_constant,
        reference_constant: reference,
        reference_identity_holds,
        interior: (n == 6).then(InteriorConstants::six_dimensional),
    })
}
