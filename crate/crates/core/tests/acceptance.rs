//! Acceptance suite, run without the test harness so its output is never
//! captured. Each criterion prints one PASS or FAIL line; the run fails if a
//! criterion outside `KNOWN_FAILING` fails, or if a known failure starts
//! passing (so the list cannot go stale).

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qalink::cli::catalog::bundled_catalog;
use qalink::cli::{cmd_catalog, parse_presentation, KnownStatus};
use qalink::diagram::bracket::bracket_determinant;
use qalink::diagram::{
    build_diagram, det_bracket_oracle, det_goeritz, det_montesinos, PdCode, PlanarDiagram, Resolution,
    Smoothing, TangleExpression,
};
use qalink::montesinos::{mirror_presentation, pretzel_to_montesinos, MontesinosPresentation};
use qalink::qa::{
    certify_at, certify_presentation, classify, replacement_det, verify_certificate, CertNode, CertRule,
    CertifyOutcome, Rule, Status,
};
use qalink::ratcf::{cf_eval, cf_expand, decrement_identity_check, t_sequences};
use qalink::{ContinuedFraction, Slope};

/// Criteria whose stated outcome this implementation does not reproduce.
const KNOWN_FAILING: &[u32] = &[3];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn within(pass: bool, elapsed: Duration, limit: Duration, detail: String) -> Outcome {
    let ok = pass && elapsed < limit;
    outcome(ok, format!("{detail}; {:.3}s (limit {}s)", elapsed.as_secs_f64(), limit.as_secs()))
}

fn pres(e: i64, pairs: &[(i64, i64)]) -> MontesinosPresentation {
    MontesinosPresentation::from_pairs(e, pairs).unwrap()
}

/// Standard tangles `(alpha, beta)` with `2 <= alpha <= max_alpha`.
fn standard_tangles(max_alpha: i64) -> Vec<(i64, i64)> {
    (2..=max_alpha)
        .flat_map(|a| (1..a).filter(move |b| a.gcd(b) == 1).map(move |b| (a, b)))
        .collect()
}

fn tuples(items: &[(i64, i64)], r: usize) -> Vec<Vec<(i64, i64)>> {
    (0..r).fold(vec![vec![]], |acc, _| {
        acc.into_iter()
            .flat_map(|prefix| {
                items.iter().map(move |&t| {
                    let mut v = prefix.clone();
                    v.push(t);
                    v
                })
            })
            .collect()
    })
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut bad = Vec::new();
    for p1 in 2..=7i64 {
        for q in p1 + 1..=7 {
            let t = build_diagram(&pretzel_to_montesinos(&[p1, 1, -q]).unwrap()).unwrap();
            let det = det_goeritz(&t).unwrap();
            checked += 1;
            if det.value() != &BigInt::from(p1 * q + q - p1) {
                bad.push(format!("P({p1},1,-{q}) = {det:?}"));
            }
        }
    }
    within(bad.is_empty(), start.elapsed(), Duration::from_secs(1), format!("{checked} pretzels, mismatches {bad:?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let catalog = bundled_catalog();
    let lines = cmd_catalog(&catalog, true).unwrap();
    let mut six = 0;
    let mut bad = Vec::new();
    for (entry, line) in catalog.iter().zip(&lines) {
        if !entry.known_status.is_some_and(KnownStatus::expects_not_qa) {
            continue;
        }
        six += 1;
        let verdict = &line["verdict"];
        if verdict["status"] != "UNKNOWN" || verdict["conjecturally_not_qa"] != true || line["check"] != "ok" {
            bad.push(format!("{}: {verdict}", entry.name));
        }
    }
    let pass = six == 6 && bad.is_empty();
    within(pass, start.elapsed(), Duration::from_secs(1), format!("{six} annotated knots, wrong {bad:?}"))
}

type Expected = (&'static str, MontesinosPresentation, Status, Option<Rule>, Option<usize>);

fn criterion_3() -> Outcome {
    let cases: [Expected; 5] = [
        ("M(0;...) standard", pres(0, &[(3, 1), (5, 2), (7, 3)]), Status::Qa, Some(Rule::Case1), None),
        ("M(r+1;...)", pres(4, &[(3, 1), (5, 2), (7, 3)]), Status::Qa, Some(Rule::Case2), None),
        ("M(1;(5,2),(3,1),(3,2))", pres(1, &[(5, 2), (3, 1), (3, 2)]), Status::Qa, Some(Rule::Case3), Some(3)),
        ("M(3;(3,1),(3,1),(3,2))", pres(3, &[(3, 1), (3, 1), (3, 2)]), Status::Qa, Some(Rule::Case4), None),
        ("M(2;(3,1),(3,1),(3,2))", pres(2, &[(3, 1), (3, 1), (3, 2)]), Status::NotQa, None, None),
    ];
    let mut bad = Vec::new();
    for (name, p, status, rule, witness) in cases {
        let v = classify(&p).unwrap();
        let ok = v.status == status && (rule.is_none() || v.rule == rule) && (witness.is_none() || v.witness == witness);
        if !ok {
            bad.push(format!("{name}: expected {status:?} {rule:?}, got {:?} {:?} witness {:?}", v.status, v.rule, v.witness));
        }
    }
    outcome(bad.is_empty(), format!("5 verdicts, wrong {bad:?}"))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let tangles = standard_tangles(7);
    let mut checked = 0u64;
    let mut bad = Vec::new();
    for r in 1..=4 {
        for list in tuples(&tangles, r) {
            for e in -3..=3 {
                let p = pres(e, &list);
                let t = build_diagram(&p).unwrap();
                if t.crossing_count() > 20 {
                    continue;
                }
                let formula = det_montesinos(&p);
                let goeritz = det_goeritz(&t).unwrap();
                let bracket = det_bracket_oracle(&t).unwrap();
                checked += 1;
                if formula != goeritz || formula != bracket {
                    bad.push(format!("{p}: {formula:?} {goeritz:?} {bracket:?}"));
                }
            }
        }
    }
    let detail = format!("{checked} presentations, {} disagreements {:?}", bad.len(), bad.iter().take(3).collect::<Vec<_>>());
    within(bad.is_empty(), start.elapsed(), Duration::from_secs(300), detail)
}

fn random_cf(rng: &mut ChaCha8Rng, sign: i8) -> ContinuedFraction {
    let n = rng.gen_range(1..=3);
    let terms = (0..n).map(|_| BigInt::from(i64::from(sign) * rng.gen_range(1..=3))).collect();
    ContinuedFraction::new(terms).unwrap()
}

fn bracket(t: &TangleExpression) -> BigInt {
    bracket_determinant(&t.to_planar().unwrap()).unwrap()
}

/// Random bases are kept when the chosen crossing is determinant-additive,
/// the hypothesis under which the replacement law is stated.
fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let tangles = standard_tangles(5);
    let (mut checked, mut tried) = (0, 0);
    let mut bad = Vec::new();
    while checked < 200 && tried < 100_000 {
        tried += 1;
        let r = rng.gen_range(2..=4);
        let list: Vec<_> = (0..r).map(|_| tangles[rng.gen_range(0..tangles.len())]).collect();
        let p = pres(rng.gen_range(-2..=3), &list);
        let t = build_diagram(&p).unwrap();
        if t.crossing_count() > 12 {
            continue;
        }
        let loc = rng.gen_range(0..t.crossing_count());
        let sign = t.crossing_signs().unwrap()[loc];
        let det = bracket(&t);
        let d0 = bracket(&t.smooth(loc, Smoothing::L0).unwrap());
        let d1 = bracket(&t.smooth(loc, Smoothing::L1).unwrap());
        if d0 < BigInt::one() || d1 < BigInt::one() || det != &d0 + &d1 {
            continue;
        }
        let cf = random_cf(&mut rng, sign);
        let replaced = t.replace_crossing(loc, &cf).unwrap();
        if replaced.crossing_count() > 20 {
            continue;
        }
        let law = replacement_det(&d0, &d1, &cf, sign).unwrap();
        let physical = bracket(&replaced);
        checked += 1;
        if law != physical {
            bad.push(format!("{p} at {loc} by {cf}: law {law}, drawn {physical}"));
        }
    }
    outcome(checked == 200 && bad.is_empty(), format!("{checked} instances ({tried} drawn), mismatches {bad:?}"))
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let mut pairs = 0u64;
    for alpha in 1..=1000i64 {
        for beta in (1..=alpha).filter(|b| b.gcd(&alpha) == 1) {
            let s = Slope::new(BigInt::from(beta), BigInt::from(alpha)).unwrap();
            pairs += 1;
            if cf_eval(&cf_expand(&s).unwrap()) != s {
                failures.push(format!("{beta}/{alpha}"));
            }
        }
    }
    let mut sequences = 0u64;
    for n in 1..=5 {
        for terms in tuples(&(1..=5).map(|a| (a, 0)).collect::<Vec<_>>(), n) {
            let cf = ContinuedFraction::new(terms.iter().map(|&(a, _)| BigInt::from(a)).collect()).unwrap();
            let seq = t_sequences(&cf).unwrap();
            sequences += 1;
            if !seq.values[n].gcd(&seq.values[n - 1]).is_one() {
                failures.push(format!("gcd {cf}"));
            }
            for m in 1..=n {
                if terms[m - 1].0 >= 2 && !decrement_identity_check(&cf, m).unwrap() {
                    failures.push(format!("decrement {cf} at {m}"));
                }
            }
        }
    }
    outcome(failures.is_empty(), format!("{pairs} slopes, {sequences} sequences, failures {failures:?}"))
}

fn criterion_7() -> Outcome {
    let tangles = standard_tangles(5);
    let mut checked = 0;
    let mut bad = Vec::new();
    for list in tuples(&tangles, 3) {
        for e in -4..=4 {
            let p = pres(e, &list);
            let (v, m) = (classify(&p).unwrap(), classify(&mirror_presentation(&p)).unwrap());
            checked += 1;
            if m.status != v.status || m.rule != v.rule.map(Rule::mirrored) {
                bad.push(format!("{p}: {v:?} vs mirror {m:?}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("{checked} presentations, exceptions {:?}", bad.iter().take(3).collect::<Vec<_>>()))
}

/// Independent determinant pass over a certificate: every node, smoothing
/// and child is recomputed with the bracket on its own drawing.
struct BracketPass {
    nodes: usize,
    skipped: usize,
}

const PASS_CAP: usize = 16;

enum Drawn {
    Pd(PlanarDiagram),
    Factors(Vec<TangleExpression>),
}

impl BracketPass {
    fn det(&mut self, d: &PlanarDiagram) -> Option<BigInt> {
        if d.crossing_count() > PASS_CAP {
            self.skipped += 1;
            return None;
        }
        Some(bracket_determinant(d).unwrap())
    }

    fn check(&mut self, node: &CertNode) -> Result<(), String> {
        self.nodes += 1;
        let drawn = if node.presentation.starts_with("PD[") {
            Drawn::Pd(PdCode::parse(&node.presentation).map_err(|e| e.to_string())?.to_diagram().unwrap())
        } else {
            let factors = node.presentation.split(" # ").map(|f| parse_presentation(f).map(|p| build_diagram(&p).unwrap()));
            Drawn::Factors(factors.collect::<Result<_, _>>().map_err(|e| e.to_string())?)
        };
        let planar: Vec<PlanarDiagram> = match &drawn {
            Drawn::Pd(d) => vec![d.clone()],
            Drawn::Factors(fs) => fs.iter().map(|t| t.to_planar().unwrap()).collect(),
        };
        let mut product = Some(BigInt::one());
        for d in &planar {
            product = match (product, self.det(d)) {
                (Some(acc), Some(x)) => Some(acc * x),
                _ => None,
            };
        }
        if let Some(det) = product {
            if &det != node.det.value() {
                return Err(format!("{}: bracket {det}, recorded {:?}", node.presentation, node.det));
            }
        }
        if node.rule == CertRule::Resolution {
            let (d0, d1) = (node.det0.clone().ok_or("missing det0")?, node.det1.clone().ok_or("missing det1")?);
            if d0.value() + d1.value() != *node.det.value() || node.children.len() != 2 {
                return Err(format!("{}: not additive", node.presentation));
            }
            if node.children[0].det != d0 || node.children[1].det != d1 {
                return Err(format!("{}: children do not match", node.presentation));
            }
            let c = node.crossing.ok_or("missing crossing")?;
            let smoothings = match &drawn {
                Drawn::Pd(d) => [Resolution::A, Resolution::B].map(|r| d.smooth(c, r).unwrap()),
                Drawn::Factors(fs) if fs.len() == 1 => {
                    [Smoothing::L0, Smoothing::L1].map(|s| fs[0].smooth(c, s).unwrap().to_planar().unwrap())
                }
                Drawn::Factors(_) => return Err("resolution on a connected sum".into()),
            };
            for (s, want) in smoothings.iter().zip([&d0, &d1]) {
                if let Some(got) = self.det(s) {
                    if &got != want.value() {
                        return Err(format!("{} at {c}: smoothing {got}, recorded {want:?}", node.presentation));
                    }
                }
            }
        }
        node.children.iter().try_for_each(|child| self.check(child))
    }
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let mut inputs: Vec<MontesinosPresentation> = vec![
        pres(1, &[(5, 2), (3, 1), (3, 2)]),
        pres(2, &[(3, 1), (3, 1), (3, 2)]),
        pretzel_to_montesinos(&[2, 1, -3]).unwrap(),
        pretzel_to_montesinos(&[-2, 3, 5]).unwrap(),
    ];
    let tangles = standard_tangles(5);
    while inputs.len() < 60 {
        let list: Vec<_> = (0..3).map(|_| tangles[rng.gen_range(0..tangles.len())]).collect();
        let p = pres(rng.gen_range(-2..=3), &list);
        if build_diagram(&p).unwrap().crossing_count() <= PASS_CAP {
            inputs.push(p);
        }
    }
    let mut certificates = Vec::new();
    for p in &inputs {
        if let CertifyOutcome::Certified { root, .. } = certify_presentation(p, 100_000).unwrap() {
            certificates.push(root);
        }
    }
    if let CertifyOutcome::Certified { root, .. } = certify_at(&inputs[2], 2, 1000).unwrap() {
        certificates.push(root);
    }
    let mut pass = BracketPass { nodes: 0, skipped: 0 };
    let mut bad = Vec::new();
    for root in &certificates {
        if let Err(e) = pass.check(root).and_then(|()| verify_certificate(root).map_err(|e| e.to_string())) {
            bad.push(e);
        }
    }
    let widmer = certify_presentation(&inputs[0], 100_000).unwrap();
    let widmer_ok = matches!(widmer, CertifyOutcome::Certified { .. });
    let detail = format!(
        "{} certificates from {} inputs, {} nodes, {} above {PASS_CAP} crossings, widmer certified {widmer_ok}, rejected {bad:?}",
        certificates.len(),
        inputs.len(),
        pass.nodes,
        pass.skipped
    );
    within(bad.is_empty() && widmer_ok && pass.skipped == 0, start.elapsed(), Duration::from_secs(300), detail)
}

fn main() {
    type Criterion = (u32, &'static str, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        (1, "pretzel determinant identity", criterion_1),
        (2, "catalog knots stay UNKNOWN", criterion_2),
        (3, "case witnesses", criterion_3),
        (4, "oracle triple agreement", criterion_4),
        (5, "replacement determinant law", criterion_5),
        (6, "continued fraction identities", criterion_6),
        (7, "mirror case exchange", criterion_7),
        (8, "certificate soundness", criterion_8),
    ];
    let mut unexpected = Vec::new();
    for (n, name, run) in criteria {
        let o = run();
        println!("{} criterion {n} ({name}): {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if o.pass == KNOWN_FAILING.contains(&n) {
            unexpected.push(n);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("criteria with unexpected outcome: {unexpected:?}");
        std::process::exit(1);
    }
}
