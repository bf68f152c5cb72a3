//! Linkage of curves on `Q` by complete intersections, and fingerprints of
//! even liaison classes of ACM curves.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{ideal_quotient_by, saturate_irrelevant, Ideal};
use crate::hilbert::{acm_curve_check, degree_genus, quotient_polynomial, DEFAULT_WINDOW};
use crate::mcm::{decompose_acm, DecompositionReport};
use crate::poly::Polynomial;
use crate::resolution::etype_resolution;

#[derive(Debug, Clone, Serialize)]
pub struct LinkResult {
    #[serde(serialize_with = "ser_ideal")]
    pub linked_ideal: Ideal,
    pub ci_degrees: (u32, u32),
    pub degree: i64,
    pub linked_degree: i64,
    /// `2·deg f·deg g`, the degree of the complete intersection on `Q`.
    pub ci_degree: i64,
    pub additive: bool,
}

fn ser_ideal<S: serde::Serializer>(i: &Ideal, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(i.gens().iter().map(|g| g.to_string()))
}

/// `C' = ((f, g) + (q)) : I_C`, saturated, for `f, g ∈ I_C` forming a
/// regular sequence on `R`.
pub fn ci_link(ideal: &Ideal, f: &Polynomial, g: &Polynomial) -> Result<LinkResult> {
    let ring = ideal.ring().clone();
    for h in [f, g] {
        if h.is_zero() || !ideal.contains(h)? {
            return Err(Error::NotInIdeal(h.to_string()));
        }
    }
    let ci = Ideal::new(ring.clone(), vec![f.clone(), g.clone()])?;
    // (f, g, q) has codimension 3 in S exactly when its quotient is a curve
    match quotient_polynomial(&ci)?.degree() {
        Some(1) => {}
        _ => return Err(Error::NotRegularSequence(format!("({f}, {g})"))),
    }
    let (degree, _) = degree_genus(ideal)?;
    let linked = saturate_irrelevant(&ideal_quotient_by(&ci, ideal)?)?;
    let (linked_degree, _) = degree_genus(&linked)?;
    let (df, dg) = (f.degree().unwrap(), g.degree().unwrap());
    let ci_degree = 2 * df as i64 * dg as i64;
    Ok(LinkResult {
        linked_ideal: linked,
        ci_degrees: (df, dg),
        degree,
        linked_degree,
        ci_degree,
        additive: degree + linked_degree == ci_degree,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Degree of the curve modulo 2.
pub fn parity_invariant(ideal: &Ideal) -> Result<Parity> {
    let (d, _) = degree_genus(ideal)?;
    Ok(if d % 2 == 0 { Parity::Even } else { Parity::Odd })
}

/// The `E₀` part of the E-type kernel, up to a common shift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiaisonFingerprint {
    /// Shifts of the `E₀` summands, normalized so the smallest is 0; empty
    /// for the class of complete intersections.
    pub e0_shifts: Vec<i32>,
}

impl LiaisonFingerprint {
    pub fn is_ci_class(&self) -> bool {
        self.e0_shifts.is_empty()
    }

    /// Drops the free part of a decomposition and normalizes the `E₀` shifts.
    pub fn from_report(report: &DecompositionReport) -> Result<Self> {
        if let Some(r) = &report.residual {
            return Err(Error::Invariant(format!("E-type kernel does not split: {r}")));
        }
        let mut e0_shifts = report.e0_twists.clone();
        if let Some(&m) = e0_shifts.iter().min() {
            for a in e0_shifts.iter_mut() {
                *a -= m;
            }
        }
        e0_shifts.sort_unstable();
        Ok(LiaisonFingerprint { e0_shifts })
    }
}

/// Fingerprint of an ACM curve: decomposition of its E-type kernel with
/// free summands dropped and shifts normalized.
pub fn fingerprint(ideal: &Ideal) -> Result<LiaisonFingerprint> {
    if !acm_curve_check(ideal)?.acm {
        return Err(Error::NotMcm(format!("{ideal} is not an ACM curve")));
    }
    let et = etype_resolution(ideal)?;
    let (lo, hi) = DEFAULT_WINDOW;
    LiaisonFingerprint::from_report(&decompose_acm(&et.kernel, lo, hi)?)
}

/// Two ACM curves lie in the same even liaison class iff their fingerprints agree.
pub fn same_even_class(a: &Ideal, b: &Ideal) -> Result<bool> {
    Ok(fingerprint(a)? == fingerprint(b)?)
}
