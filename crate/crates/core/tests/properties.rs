//! Property tests across modules, with the bracket and Goeritz routes as
//! oracles for the formula-level code.

use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

use qalink::cli::parse_presentation;
use qalink::diagram::{build_diagram, det_bracket_oracle, det_goeritz, det_montesinos, mirror_diagram, Smoothing};
use qalink::montesinos::{classification_invariant, mirror_presentation, standard_form, MontesinosPresentation, TanglePair};
use qalink::qa::symbolic::{grammar_text, link_form, normalise};
use qalink::qa::{certify_presentation, classify, replacement_det, verify_certificate, CertifyOutcome, Status};
use qalink::ratcf::{cf_eval, cf_expand, t_sequences};
use qalink::{ContinuedFraction, Slope};

fn tangle() -> impl Strategy<Value = (i64, i64)> {
    (2i64..=7, -9i64..=9).prop_filter_map("coprime", |(a, b)| (b != 0 && a.gcd(&b) == 1).then_some((a, b)))
}

fn presentation(max_r: usize) -> impl Strategy<Value = MontesinosPresentation> {
    (-3i64..=3, prop::collection::vec(tangle(), 1..=max_r))
        .prop_map(|(e, pairs)| MontesinosPresentation::from_pairs(e, &pairs).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn slope_round_trip(alpha in 1i64..5000, beta in 1i64..5000) {
        prop_assume!(beta <= alpha && alpha.gcd(&beta) == 1);
        let s = Slope::new(BigInt::from(beta), BigInt::from(alpha)).unwrap();
        let cf = cf_expand(&s).unwrap();
        prop_assert_eq!(cf_eval(&cf), s);
        let seq = t_sequences(&cf).unwrap();
        prop_assert_eq!(seq.last(), &BigInt::from(alpha));
        prop_assert_eq!(seq.reversed.last().unwrap(), &BigInt::from(alpha));
    }

    #[test]
    fn grammar_prints_what_it_parses(p in presentation(4)) {
        let text = p.to_string();
        prop_assert_eq!(parse_presentation(&text).unwrap(), p);
    }

    #[test]
    fn determinant_routes_agree(p in presentation(4)) {
        let t = build_diagram(&p).unwrap();
        prop_assume!(t.crossing_count() <= 20);
        let formula = det_montesinos(&p);
        prop_assert_eq!(&det_goeritz(&t).unwrap(), &formula);
        prop_assert_eq!(&det_bracket_oracle(&t).unwrap(), &formula);
        prop_assert_eq!(&det_goeritz(&mirror_diagram(&t)).unwrap(), &formula);
    }

    #[test]
    fn standard_form_keeps_the_link(p in presentation(4)) {
        let sf = standard_form(&p).unwrap();
        prop_assert!(sf.tangles.iter().all(TanglePair::is_standard));
        prop_assert_eq!(sf.e0(), p.e0());
        prop_assert_eq!(det_montesinos(&sf), det_montesinos(&p));
    }

    #[test]
    fn invariant_ignores_rotation_and_reversal(p in presentation(5), k in 0usize..5) {
        // the invariant is only defined under the classification hypothesis
        prop_assume!(classification_invariant(&p).is_ok());
        let mut rotated = p.clone();
        let n = rotated.tangles.len();
        rotated.tangles.rotate_left(k % n);
        let mut reversed = p.clone();
        reversed.tangles.reverse();
        let inv = classification_invariant(&p).unwrap();
        prop_assert_eq!(&classification_invariant(&rotated).unwrap(), &inv);
        prop_assert_eq!(&classification_invariant(&reversed).unwrap(), &inv);
    }

    #[test]
    fn mirror_negates_e0(p in presentation(4)) {
        prop_assert_eq!(mirror_presentation(&p).e0(), -p.e0());
        prop_assert_eq!(det_montesinos(&mirror_presentation(&p)), det_montesinos(&p));
    }

    #[test]
    fn drawings_read_back(p in presentation(4)) {
        let form = link_form(&build_diagram(&p).unwrap()).unwrap();
        prop_assert_eq!(form.determinant(), det_montesinos(&p));
        let text = grammar_text(&normalise(&p));
        prop_assert_eq!(normalise(&parse_presentation(&text).unwrap()), normalise(&p));
    }

    #[test]
    fn replacement_law_on_additive_crossings(p in presentation(3), pick in any::<prop::sample::Index>(), terms in prop::collection::vec(1i64..=3, 1..=3)) {
        let t = build_diagram(&p).unwrap();
        prop_assume!(t.crossing_count() > 0 && t.crossing_count() <= 10);
        let loc = pick.index(t.crossing_count());
        let sign = t.crossing_signs().unwrap()[loc];
        let det = det_goeritz(&t).unwrap().into_inner();
        let d0 = det_goeritz(&t.smooth(loc, Smoothing::L0).unwrap()).unwrap().into_inner();
        let d1 = det_goeritz(&t.smooth(loc, Smoothing::L1).unwrap()).unwrap().into_inner();
        prop_assume!(d0 > BigInt::from(0) && d1 > BigInt::from(0) && det == &d0 + &d1);
        let cf = ContinuedFraction::new(terms.iter().map(|&a| BigInt::from(a * i64::from(sign))).collect()).unwrap();
        let replaced = t.replace_crossing(loc, &cf).unwrap();
        prop_assert_eq!(replacement_det(&d0, &d1, &cf, sign).unwrap(), det_goeritz(&replaced).unwrap().into_inner());
    }
}

/// Verdicts and certificate search must never contradict each other.
#[test]
fn verdicts_and_certificates_cohere() {
    let tangles: Vec<(i64, i64)> = (2..=5).flat_map(|a| (1..a).filter(move |b| a.gcd(b) == 1).map(move |b| (a, b))).collect();
    let mut certified = 0;
    for (i, &x) in tangles.iter().enumerate() {
        for (j, &y) in tangles.iter().enumerate().skip(i) {
            for &z in &tangles[j..] {
                for e in -1..=4 {
                    let p = MontesinosPresentation::from_pairs(e, &[x, y, z]).unwrap();
                    let v = classify(&p).unwrap();
                    if v.status != Status::Qa {
                        continue;
                    }
                    match certify_presentation(&p, 100_000).unwrap() {
                        CertifyOutcome::Certified { root, .. } => {
                            verify_certificate(&root).unwrap();
                            certified += 1;
                        }
                        other => panic!("{p} classified {v:?} but search gave {other:?}"),
                    }
                }
            }
        }
    }
    assert!(certified > 100);
    for pairs in [[(3, 1), (3, 1), (3, 1), (3, 1)], [(3, 1), (5, 2), (3, 2), (5, 3)]] {
        let p = MontesinosPresentation::from_pairs(2, &pairs).unwrap();
        assert_eq!(classify(&p).unwrap().status, Status::NotQa);
        let outcome = certify_presentation(&p, 20_000).unwrap();
        assert!(outcome.certificate().is_none(), "{p} is obstructed but was certified");
    }
}
