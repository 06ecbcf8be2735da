//! Command bodies behind the binary. Each returns the JSON it prints.

use clap::ValueEnum;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Value};

use crate::diagram::bracket::BRACKET_CAP;
use crate::diagram::{build_diagram, det_bracket_oracle, det_goeritz, det_montesinos};
use crate::error::{Error, Result};
use crate::montesinos::{classification_invariant, standard_form};
use crate::qa::{certify_at, certify_presentation, classify, verify_certificate, CertifyOutcome, Status};
use crate::ratcf::{cf_expand, t_sequences};
use crate::{ContinuedFraction, Slope};

use super::catalog::CatalogEntry;
use super::grammar::{parse_fraction, parse_presentation};
use crate::qa::symbolic::{grammar_text, normalise};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DetMethod {
    Formula,
    Goeritz,
    Bracket,
    All,
}

fn rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Integers print as JSON numbers when they fit in 64 bits, else as strings.
fn int(x: &BigInt) -> Value {
    x.to_i64().map_or_else(|| json!(x.to_string()), |v| json!(v))
}

fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn cmd_classify(text: &str) -> Result<Value> {
    let p = parse_presentation(text)?;
    let verdict = classify(&p)?;
    let invariant = classification_invariant(&p).ok().map(|inv| {
        json!({
            "e0": rational(&inv.e0),
            "fractions": inv.fractions.iter().map(rational).collect::<Vec<_>>(),
        })
    });
    let mut out = serde_json::to_value(&verdict).expect("verdict serialises");
    let obj = out.as_object_mut().expect("verdict is an object");
    obj.insert("input".into(), json!(text));
    obj.insert("standard_form".into(), json!(grammar_text(&normalise(&p))));
    obj.insert("e0".into(), json!(rational(&p.e0())));
    obj.insert("invariant".into(), invariant.unwrap_or(Value::Null));
    Ok(out)
}

/// With `All`, every method is run and must agree; the bracket is skipped
/// above its crossing cap.
pub fn cmd_det(text: &str, method: DetMethod) -> Result<Value> {
    let p = parse_presentation(text)?;
    let formula = det_montesinos(&p);
    let mut out = json!({ "input": text });
    match method {
        DetMethod::Formula => out["det"] = json!(formula),
        DetMethod::Goeritz => out["det"] = json!(det_goeritz(&build_diagram(&p)?)?),
        DetMethod::Bracket => out["det"] = json!(det_bracket_oracle(&build_diagram(&p)?)?),
        DetMethod::All => {
            let t = build_diagram(&p)?;
            let goeritz = det_goeritz(&t)?;
            let bracket = if t.crossing_count() <= BRACKET_CAP {
                Some(det_bracket_oracle(&t)?)
            } else {
                None
            };
            if goeritz != formula || bracket.as_ref().is_some_and(|b| *b != formula) {
                return Err(Error::OracleDisagreement(format!(
                    "{text}: formula {formula:?}, goeritz {goeritz:?}, bracket {bracket:?}"
                )));
            }
            out["det"] = json!(formula);
            out["formula"] = json!(formula);
            out["goeritz"] = json!(goeritz);
            out["bracket"] = bracket.map_or(Value::Null, |b| json!(b));
            out["crossings"] = json!(t.crossing_count());
        }
    }
    Ok(out)
}

/// Expansion of a slope `beta/alpha` with `0 < |beta/alpha| <= 1`; negative
/// slopes give the negated expansion with the same T-sequences.
pub fn cmd_cf(text: &str) -> Result<Value> {
    let (beta, alpha) = parse_fraction(text)?;
    let negative = beta.is_negative() != alpha.is_negative();
    let slope = Slope::new(beta.abs(), alpha.abs())?;
    let cf = cf_expand(&slope)?;
    let seq = t_sequences(&cf)?;
    let shown: ContinuedFraction = if negative { cf.negate() } else { cf };
    Ok(json!({
        "input": text,
        "terms": ints(shown.terms()),
        "T": ints(&seq.values),
        "T_rev": ints(&seq.reversed),
    }))
}

/// Emitted certificates are re-verified first; a certificate that fails its
/// own check is an internal error.
pub fn cmd_certify(text: &str, budget: u64, at: Option<usize>) -> Result<Value> {
    let p = parse_presentation(text)?;
    let outcome = match at {
        Some(loc) => certify_at(&p, loc, budget)?,
        None => certify_presentation(&p, budget)?,
    };
    Ok(match outcome {
        CertifyOutcome::Certified { root, explored } => {
            verify_certificate(&root).map_err(|e| Error::OracleDisagreement(e.to_string()))?;
            json!({
                "input": text,
                "status": "CERTIFIED",
                "explored": explored,
                "depth": root.depth(),
                "certificate": root,
            })
        }
        CertifyOutcome::Unknown { reason, explored } => json!({
            "input": text,
            "status": "UNKNOWN",
            "reason": reason,
            "explored": explored,
        }),
    })
}

/// One line per entry, then a summary line. With `check`, entries annotated
/// as not quasi-alternating must come out `UNKNOWN`, printed text must be
/// the standard form of the parsed text, and the determinant methods must
/// agree; any failure is reported and counted.
pub fn cmd_catalog(entries: &[CatalogEntry], check: bool) -> Result<Vec<Value>> {
    let mut lines = Vec::with_capacity(entries.len() + 1);
    let mut failures = 0usize;
    for entry in entries {
        let verdict = classify(&entry.presentation)?;
        let mut line = json!({
            "name": entry.name,
            "presentation": entry.text,
            "known_status": entry.known_status,
            "verdict": verdict,
        });
        if check {
            let mut problems = Vec::new();
            if entry.known_status.is_some_and(|k| k.expects_not_qa()) && verdict.status != Status::Unknown {
                problems.push(format!("expected UNKNOWN, got {:?}", verdict.status));
            }
            let reparsed = parse_presentation(&entry.presentation.to_string())?;
            if standard_form(&reparsed)? != standard_form(&entry.presentation)? {
                problems.push("grammar round trip changed the link".to_string());
            }
            cmd_det(&entry.text, DetMethod::All)?;
            failures += usize::from(!problems.is_empty());
            line["check"] = json!(if problems.is_empty() { "ok" } else { "failed" });
            if !problems.is_empty() {
                line["problems"] = json!(problems);
            }
        }
        lines.push(line);
    }
    let qa = lines.iter().filter(|l| l["verdict"]["status"] == "QA").count();
    let mut summary = json!({ "entries": entries.len(), "qa": qa });
    if check {
        summary["failures"] = json!(failures);
    }
    lines.push(summary);
    Ok(lines)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::catalog::bundled_catalog;

    #[test]
    fn classify_examples() {
        let v = cmd_classify("M(1; 3/1, 3/1, 3/2)").unwrap();
        assert_eq!(v["status"], "UNKNOWN");
        assert_eq!(v["conjecturally_not_qa"], true);
        assert_eq!(cmd_classify("M(0; 3/1, 5/2)").unwrap()["status"], "RATIONAL_LINK");
        let v = cmd_classify("M(1; 5/2, 3/1, 3/2)").unwrap();
        assert_eq!((v["status"].as_str(), v["rule"].as_str(), v["witness"].as_u64()), (Some("QA"), Some("CASE_3"), Some(3)));
        assert_eq!(v["e0"], "-2/5");
    }

    #[test]
    fn det_examples() {
        assert_eq!(cmd_det("M(0; 3/1, 1/1, 3/-2)", DetMethod::All).unwrap()["det"], 6);
        assert_eq!(cmd_det("M(1; 3/1, 3/1, 3/2)", DetMethod::Formula).unwrap()["det"], 9);
        assert_eq!(cmd_det("M(1; 3/1, 3/1, 3/2)", DetMethod::Bracket).unwrap()["det"], 9);
        // one tangle closes to the two-bridge link of slope e - beta/alpha
        assert_eq!(cmd_det("M(0; 2/1)", DetMethod::All).unwrap()["det"], 1);
        assert_eq!(cmd_det("M(1; 2/1)", DetMethod::All).unwrap()["det"], 1);
        assert_eq!(cmd_det("M(0; 1/2)", DetMethod::All).unwrap()["det"], 2);
    }

    #[test]
    fn cf_examples() {
        let v = cmd_cf("9/31").unwrap();
        assert_eq!(v["terms"], json!([4, 2, 3]));
        assert_eq!(v["T"], json!([1, 4, 9, 31]));
        assert_eq!(v["T_rev"], json!([1, 3, 7, 31]));
        assert_eq!(cmd_cf("1/2").unwrap()["terms"], json!([2]));
        assert_eq!(cmd_cf("7/31").unwrap()["terms"], json!([3, 2, 4]));
        assert_eq!(cmd_cf("-1/2").unwrap()["terms"], json!([-2]));
        assert!(matches!(cmd_cf("x"), Err(Error::Parse { .. })));
    }

    #[test]
    fn certify_examples() {
        assert_eq!(cmd_certify("M(0; 3/1)", 10, None).unwrap()["status"], "CERTIFIED");
        let v = cmd_certify("P(2, 1, -3)", 1000, None).unwrap();
        assert_eq!((v["status"].as_str(), v["depth"].as_u64()), (Some("CERTIFIED"), Some(1)));
        assert_eq!(v["certificate"]["det"], 7);
        let v = cmd_certify("P(2, 1, -3)", 1000, Some(2)).unwrap();
        assert_eq!((v["certificate"]["det0"].as_u64(), v["certificate"]["det1"].as_u64()), (Some(6), Some(1)));
        let v = cmd_certify("M(1; 5/2, 3/1, 3/2)", 1, None).unwrap();
        assert_eq!(v["status"], "UNKNOWN");
    }

    #[test]
    fn catalog_check_passes() {
        let lines = cmd_catalog(&bundled_catalog(), true).unwrap();
        let summary = lines.last().unwrap();
        assert_eq!(summary["failures"], 0);
        assert_eq!(summary["qa"], 1);
    }
}
