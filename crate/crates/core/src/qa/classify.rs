//! Verdicts for Montesinos links in standard form and for pretzel links.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::montesinos::{MontesinosPresentation, TanglePair};
use crate::qa::symbolic::normalise;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Qa,
    NotQa,
    Unknown,
    RationalLink,
    HypothesisViolated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rule {
    #[serde(rename = "CASE_1")]
    Case1,
    #[serde(rename = "CASE_2")]
    Case2,
    #[serde(rename = "CASE_3")]
    Case3,
    #[serde(rename = "CASE_4")]
    Case4,
    #[serde(rename = "OBSTRUCTION_E")]
    ObstructionE,
    #[serde(rename = "CERTIFICATE")]
    Certificate,
    #[serde(rename = "ALTERNATING")]
    Alternating,
}

impl Rule {
    /// The rule the mirror image is classified by.
    pub fn mirrored(self) -> Rule {
        match self {
            Rule::Case1 => Rule::Case2,
            Rule::Case2 => Rule::Case1,
            Rule::Case3 => Rule::Case4,
            Rule::Case4 => Rule::Case3,
            other => other,
        }
    }
}

/// `witness` is the 1-based position, in the standard form, of the tangle
/// singled out by the min-condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QAVerdict {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<Rule>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<usize>,
    pub conjecturally_not_qa: bool,
}

impl QAVerdict {
    fn new(status: Status, rule: Option<Rule>, witness: Option<usize>) -> Self {
        Self { status, rule, witness, conjecturally_not_qa: false }
    }

    fn qa(rule: Rule, witness: Option<usize>) -> Self {
        Self::new(Status::Qa, Some(rule), witness)
    }

    fn open() -> Self {
        Self { conjecturally_not_qa: true, ..Self::new(Status::Unknown, None, None) }
    }
}

fn ratio(num: &BigInt, den: &BigInt) -> BigRational {
    BigRational::new(num.clone(), den.clone())
}

/// Indices `i` with `a_i / (a_i - b_i) > min_{j != i} a_j / b_j`, paired
/// with the left-hand side. Comparisons are exact.
fn min_condition(tangles: &[TanglePair]) -> Option<usize> {
    let lhs = |t: &TanglePair| ratio(&t.alpha, &(&t.alpha - &t.beta));
    let rhs = |t: &TanglePair| ratio(&t.alpha, &t.beta);
    let mut best: Option<(usize, BigRational)> = None;
    for (i, ti) in tangles.iter().enumerate() {
        let min = tangles
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, tj)| rhs(tj))
            .min()
            .expect("at least three tangles");
        let l = lhs(ti);
        if l > min && best.as_ref().is_none_or(|(_, b)| l > *b) {
            best = Some((i, l));
        }
    }
    best.map(|(i, _)| i + 1)
}

fn mirrored_tangles(tangles: &[TanglePair]) -> Vec<TanglePair> {
    tangles
        .iter()
        .map(|t| TanglePair { alpha: t.alpha.clone(), beta: &t.alpha - &t.beta })
        .collect()
}

/// Classifies a Montesinos link from its standard form.
///
/// With `r >= 3` tangles the standard drawing is alternating for `e <= 0`,
/// and so is its mirror, `M(r - e; ...)`, for `e >= r`. At `e = 1` the
/// min-condition gives a certificate, and at `e = r - 1` the same condition
/// applied to the mirror does. Values strictly between are obstructed.
/// Anything left over is reported as open, flagged by the conjecture that
/// the conditions are sharp.
pub fn classify(p: &MontesinosPresentation) -> Result<QAVerdict> {
    let sf = normalise(p);
    let r = sf.r();
    if r < 3 {
        return Ok(QAVerdict::new(Status::RationalLink, Some(Rule::Alternating), None));
    }
    let inverse_sum = sf
        .tangles
        .iter()
        .fold(BigRational::zero(), |acc, t| acc + ratio(&BigInt::from(1), &t.alpha));
    if inverse_sum > BigRational::from_integer(BigInt::from(r - 2)) {
        return Ok(QAVerdict::new(Status::HypothesisViolated, None, None));
    }
    let e = &sf.e;
    let r_big = BigInt::from(r);
    if !e.is_positive() {
        return Ok(QAVerdict::qa(Rule::Case1, None));
    }
    if *e >= r_big {
        return Ok(QAVerdict::qa(Rule::Case2, None));
    }
    if *e == BigInt::from(1) {
        return Ok(match min_condition(&sf.tangles) {
            Some(i) => QAVerdict::qa(Rule::Case3, Some(i)),
            None => QAVerdict::open(),
        });
    }
    if *e == &r_big - 1 {
        return Ok(match min_condition(&mirrored_tangles(&sf.tangles)) {
            Some(i) => QAVerdict::qa(Rule::Case4, Some(i)),
            None => QAVerdict::open(),
        });
    }
    Ok(QAVerdict::new(Status::NotQa, Some(Rule::ObstructionE), None))
}

/// Sufficient condition for pretzel links `P(p1, ..., pn, -q)` (QA when
/// `q > min p_i`) and their mirrors `P(p, -q1, ..., -qm)` (QA when
/// `p > min q_j`). Exactly one parameter must carry the minority sign and
/// every magnitude must be at least 2. The witness is the 1-based position
/// of that parameter.
pub fn pretzel_qa(params: &[i64]) -> Result<QAVerdict> {
    if let Some(&s) = params.iter().find(|s| s.unsigned_abs() < 2) {
        return Err(Error::PretzelParameterTooSmall(s));
    }
    let negatives: Vec<usize> = (0..params.len()).filter(|&i| params[i] < 0).collect();
    let positives: Vec<usize> = (0..params.len()).filter(|&i| params[i] > 0).collect();
    let (odd, rest, rule) = match (negatives.as_slice(), positives.as_slice()) {
        ([i], rest) if rest.len() >= 2 => (*i, rest, Rule::Case3),
        (rest, [i]) if rest.len() >= 2 => (*i, rest, Rule::Case4),
        _ => {
            return Err(Error::PretzelShape(
                "need one parameter of one sign and at least two of the other".into(),
            ))
        }
    };
    let min = rest.iter().map(|&j| params[j].unsigned_abs()).min().expect("nonempty");
    Ok(if params[odd].unsigned_abs() > min {
        QAVerdict::qa(rule, Some(odd + 1))
    } else {
        QAVerdict::new(Status::Unknown, None, None)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montesinos::mirror_presentation;

    fn m(e: i64, pairs: &[(i64, i64)]) -> MontesinosPresentation {
        MontesinosPresentation::from_pairs(e, pairs).unwrap()
    }

    fn verdict(e: i64, pairs: &[(i64, i64)]) -> QAVerdict {
        classify(&m(e, pairs)).unwrap()
    }

    #[test]
    fn examples() {
        let v = verdict(1, &[(3, 1), (3, 1), (3, 2)]);
        assert_eq!((v.status, v.conjecturally_not_qa), (Status::Unknown, true));
        assert_eq!(verdict(1, &[(5, 3), (5, 2), (4, 1)]).status, Status::Unknown);
        assert_eq!(verdict(0, &[(3, 1), (5, 2), (7, 3)]).rule, Some(Rule::Case1));
        let v = verdict(1, &[(5, 2), (3, 1), (3, 2)]);
        assert_eq!((v.rule, v.witness), (Some(Rule::Case3), Some(3)));
        assert_eq!(verdict(4, &[(3, 1), (3, 1), (3, 2)]).rule, Some(Rule::Case2));
    }

    #[test]
    fn boundary_values_follow_the_mirror() {
        // M(3; ...) with r = 3 mirrors to M(0; ...), which is alternating.
        assert_eq!(verdict(3, &[(3, 1), (3, 1), (3, 2)]).rule, Some(Rule::Case2));
        // M(2; ...) with r = 3 mirrors to M(1; 3/2, 3/2, 3/1), case 3 at i = 1.
        let v = verdict(2, &[(3, 1), (3, 1), (3, 2)]);
        assert_eq!((v.rule, v.witness), (Some(Rule::Case4), Some(1)));
        let v = verdict(2, &[(3, 1), (3, 1), (3, 1), (3, 1)]);
        assert_eq!((v.status, v.rule), (Status::NotQa, Some(Rule::ObstructionE)));
    }

    #[test]
    fn ties_fail_the_strict_inequality() {
        // i = 3 compares 3/(3-2) = 3 with min{3, 3}.
        assert_eq!(min_condition(&m(1, &[(3, 1), (3, 1), (3, 2)]).tangles), None);
    }

    #[test]
    fn non_standard_input_is_normalised_first() {
        assert_eq!(verdict(0, &[(3, 4), (3, 1), (3, 1)]).rule, verdict(-1, &[(3, 1), (3, 1), (3, 1)]).rule);
    }

    #[test]
    fn rational_and_spherical_inputs() {
        assert_eq!(verdict(0, &[(3, 1), (5, 2)]).status, Status::RationalLink);
        assert_eq!(verdict(0, &[(2, 1), (1, 1), (3, 1)]).status, Status::RationalLink);
        assert_eq!(verdict(1, &[(2, 1), (2, 1), (5, 2)]).status, Status::HypothesisViolated);
    }

    #[test]
    fn mirror_exchanges_cases() {
        let v = verdict(1, &[(5, 2), (3, 1), (3, 2)]);
        let w = classify(&mirror_presentation(&m(1, &[(5, 2), (3, 1), (3, 2)]))).unwrap();
        assert_eq!(w.rule, v.rule.map(Rule::mirrored));
        assert_eq!(w.witness, v.witness);
    }

    #[test]
    fn pretzels() {
        assert_eq!(pretzel_qa(&[2, 3, -4]).unwrap().status, Status::Qa);
        assert_eq!(pretzel_qa(&[3, 3, -3]).unwrap().status, Status::Unknown);
        let v = pretzel_qa(&[5, -3, -4]).unwrap();
        assert_eq!((v.status, v.rule, v.witness), (Status::Qa, Some(Rule::Case4), Some(1)));
        assert!(matches!(pretzel_qa(&[2, 1, -3]), Err(Error::PretzelParameterTooSmall(1))));
        assert!(matches!(pretzel_qa(&[2, 3, 4]), Err(Error::PretzelShape(_))));
        assert!(matches!(pretzel_qa(&[2, -3]), Err(Error::PretzelShape(_))));
    }
}
