//! The determinant law for replacing a crossing by a rational tangle, and
//! families built by stacking such tangles at a quasi-alternating crossing.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::diagram::goeritz::goeritz_determinant;
use crate::diagram::{build_diagram, LinkDeterminant, Tangle, TangleExpression};
use crate::error::{Error, Result};
use crate::montesinos::MontesinosPresentation;
use crate::qa::certify::{certify_at, CertNode, CertifyOutcome};
use crate::qa::symbolic::{grammar_text, link_form, LinkForm};
use crate::ratcf::t_sequences;
use crate::ContinuedFraction;

/// Budget for certifying the base at the chosen crossing.
pub const FAMILY_BUDGET: u64 = 100_000;

/// Determinant after replacing a crossing of sign `crossing_sign` by the
/// rational tangle of `cf`, from the determinants of its two smoothings.
/// `det0` and `det1` belong to the L0 and L1 smoothings.
pub fn replacement_det(det0: &BigInt, det1: &BigInt, cf: &ContinuedFraction, crossing_sign: i8) -> Result<BigInt> {
    if crossing_sign.abs() != 1 || cf.sign() != crossing_sign {
        return Err(Error::RegimeMismatch(crossing_sign));
    }
    if *det0 < BigInt::one() || *det1 < BigInt::one() {
        return Err(Error::DeterminantTooSmall);
    }
    let seq = t_sequences(&cf.abs())?;
    let n = seq.n();
    let (t, t_bar) = (&seq.values[n], &seq.reversed[n - 1]);
    Ok(if crossing_sign < 0 {
        t * det0 + t_bar * det1
    } else {
        t * det1 + t_bar * det0
    })
}

/// Record of a replacement. `base` certifies the starting link at
/// `locator`; `det_steps[k]` is the determinant after stacking the first
/// `k + 1` tangles. `designated_crossing` is where the new link is claimed
/// quasi-alternating: the second crossing of the inserted product, or the
/// inserted crossing itself when there is only one.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyCertificate {
    pub rule: &'static str,
    pub locator: usize,
    pub sign: i8,
    pub replacement: Vec<String>,
    pub det_steps: Vec<LinkDeterminant>,
    pub designated_crossing: usize,
    pub base: CertNode,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyMember {
    /// Standard form of the result when it is again a Montesinos link.
    pub presentation: Option<String>,
    pub det: LinkDeterminant,
    pub certificate: FamilyCertificate,
    #[serde(skip)]
    pub expression: TangleExpression,
}

/// Replaces the crossing at `locator` (expression preorder of the drawing
/// of `base`) by the vertical product of the rational tangles of
/// `replacement`, top first. Each tangle is drawn so that a one-term
/// fraction `[s]` reproduces the crossing.
///
/// The determinant is accumulated through [`replacement_det`] and checked
/// against the result: by the Montesinos formula when the result reads back
/// as a Montesinos link, by its Goeritz matrix otherwise.
pub fn generate_family(
    base: &MontesinosPresentation,
    locator: usize,
    replacement: &[ContinuedFraction],
) -> Result<FamilyMember> {
    if replacement.is_empty() {
        return Err(Error::EmptyContinuedFraction);
    }
    let t = build_diagram(base)?;
    let sign = *t.crossing_signs()?.get(locator).ok_or(Error::InvalidLocator(locator))?;
    if replacement.iter().any(|cf| cf.sign() != sign) {
        return Err(Error::RegimeMismatch(sign));
    }
    let root = match certify_at(base, locator, FAMILY_BUDGET)? {
        CertifyOutcome::Certified { root, .. } => root,
        CertifyOutcome::Unknown { .. } => return Err(Error::BaseNotCertified(locator)),
    };
    let (det0, det1) = match (&root.det0, &root.det1) {
        (Some(a), Some(b)) => (a.value().clone(), b.value().clone()),
        _ => return Err(Error::BaseNotCertified(locator)),
    };
    // Smoothings as the zero and infinity tangle in the crossing's frame.
    let (d_zero, d_inf) = if sign < 0 { (det0, det1) } else { (det1, det0) };

    // Stacking X on top of R: the slot filled with X * 0 has determinant
    // num(X) * d_zero, and X * oo is X itself.
    let mut numerators = BigInt::one();
    let mut det = d_inf;
    let mut steps = Vec::with_capacity(replacement.len());
    for cf in replacement {
        let zero_part = &numerators * &d_zero;
        det = if sign < 0 {
            replacement_det(&zero_part, &det, cf, sign)?
        } else {
            replacement_det(&det, &zero_part, cf, sign)?
        };
        let seq = t_sequences(&cf.abs())?;
        numerators *= &seq.reversed[seq.n() - 1];
        steps.push(LinkDeterminant::new(det.clone()));
    }

    let pieces: Vec<Tangle> = replacement.iter().map(|cf| Tangle::Rational(cf.reversed())).collect();
    let inserted = match pieces.len() {
        1 => pieces.into_iter().next().expect("one piece"),
        _ => Tangle::Product(pieces),
    };
    let inserted_crossings = inserted.crossing_count();
    let expression = t.substitute(locator, inserted)?;
    let form = link_form(&expression);
    let check = match &form {
        Some(f) => f.determinant().into_inner(),
        None => goeritz_determinant(&expression.to_planar()?),
    };
    if check != det {
        return Err(Error::OracleDisagreement(format!(
            "replacement law gives {det}, the replaced link has {check}"
        )));
    }
    let presentation = match form {
        Some(LinkForm::Montesinos(p)) => Some(grammar_text(&p)),
        _ => None,
    };
    Ok(FamilyMember {
        presentation,
        det: LinkDeterminant::new(det),
        certificate: FamilyCertificate {
            rule: "PRODUCT_REPLACEMENT",
            locator,
            sign,
            replacement: replacement.iter().map(|cf| cf.to_string()).collect(),
            det_steps: steps,
            designated_crossing: if inserted_crossings >= 2 { locator + 1 } else { locator },
            base: root,
        },
        expression,
    })
}
