//! Depth-first search for quasi-alternating certificates, on recognised
//! Montesinos links or on bare planar diagrams, and an independent verifier
//! for the emitted trees.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::bracket::{bracket_determinant, BRACKET_CAP};
use crate::diagram::goeritz::goeritz_determinant;
use crate::diagram::{
    build_diagram, LinkDeterminant, PdCode, PlanarDiagram, Resolution, Smoothing, Tangle,
    TangleExpression,
};
use crate::error::{Error, Result};
use crate::cli::grammar::parse_presentation;
use crate::montesinos::{mirror_presentation, MontesinosPresentation, TanglePair};
use crate::qa::symbolic::{grammar_text, link_form, normalise, tangle_fraction, LinkForm};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Justification attached to a certificate node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CertRule {
    /// Both smoothings at `crossing` are certified and the determinant adds.
    Resolution,
    /// Connected alternating diagram, or a Montesinos presentation with one.
    Alternating,
    /// Two-bridge link; these are alternating.
    Rational,
    /// Crossingless single circle.
    Unknot,
    /// Nontrivial connected sum; both factors certified.
    ConnectedSum,
    /// Nugatory crossings and removable bigons were cleared.
    Reduction,
}

/// One node of a certificate tree.
///
/// `presentation` is either presentation text (`M(...)`, factors joined by
/// ` # `) or a `PD[...]` code. For presentation text, `crossing` is the
/// crossing index in expression preorder of the standard drawing and
/// `det0`/`det1` belong to the L0/L1 smoothings. For PD codes, `crossing`
/// indexes the `X` entries and `det0` belongs to the smoothing joining
/// slot pairs 0-1 and 2-3.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertNode {
    pub presentation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crossing: Option<usize>,
    pub det: LinkDeterminant,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub det0: Option<LinkDeterminant>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub det1: Option<LinkDeterminant>,
    pub rule: CertRule,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<CertNode>,
}

impl CertNode {
    /// Number of `Resolution` nodes on the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        let below = self.children.iter().map(CertNode::depth).max().unwrap_or(0);
        below + usize::from(self.rule == CertRule::Resolution)
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(CertNode::node_count).sum::<usize>()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidCertificate(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertifyOutcome {
    Certified { root: CertNode, explored: u64 },
    Unknown { reason: UnknownReason, explored: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UnknownReason {
    BudgetExhausted,
    SearchFailed,
    SplitDiagram,
}

impl CertifyOutcome {
    pub fn certificate(&self) -> Option<&CertNode> {
        match self {
            CertifyOutcome::Certified { root, .. } => Some(root),
            CertifyOutcome::Unknown { .. } => None,
        }
    }
}

struct Exhausted;

#[derive(Default)]
struct Search {
    budget: u64,
    explored: u64,
    memo: HashMap<Vec<u32>, Option<CertNode>>,
    forms: HashMap<String, Option<CertNode>>,
}

impl Search {
    fn tick(&mut self) -> std::result::Result<(), Exhausted> {
        self.explored += 1;
        if self.explored > self.budget {
            return Err(Exhausted);
        }
        Ok(())
    }

    fn visit_form(&mut self, form: &LinkForm) -> std::result::Result<Option<CertNode>, Exhausted> {
        self.tick()?;
        let presentation = form.to_string();
        let det = form.determinant();
        if det.is_zero() {
            return Ok(None);
        }
        let p = match form {
            LinkForm::Split => return Ok(None),
            LinkForm::ConnectedSum(factors) => {
                let mut children = Vec::with_capacity(factors.len());
                for f in factors {
                    match self.visit_form(&LinkForm::Montesinos(f.clone()))? {
                        Some(c) => children.push(c),
                        None => return Ok(None),
                    }
                }
                return Ok(Some(CertNode {
                    children,
                    ..leaf(presentation, det.into_inner(), CertRule::ConnectedSum)
                }));
            }
            LinkForm::Montesinos(p) => p,
        };
        let r = BigInt::from(p.r());
        if p.r() <= 2 {
            return Ok(Some(leaf(presentation, det.into_inner(), CertRule::Rational)));
        }
        if !p.e.is_positive() || p.e >= r {
            return Ok(Some(leaf(presentation, det.into_inner(), CertRule::Alternating)));
        }
        let key = form.key();
        if let Some(hit) = self.forms.get(&key) {
            return Ok(hit.clone());
        }
        let found = self.expand_form(p, presentation, det)?;
        self.forms.insert(key, found.clone());
        Ok(found)
    }

    fn expand_form(
        &mut self,
        p: &MontesinosPresentation,
        presentation: String,
        det: LinkDeterminant,
    ) -> std::result::Result<Option<CertNode>, Exhausted> {
        let t = build_diagram(p).expect("presentations draw");
        self.resolve(&t, 0..t.crossing_count(), presentation, det)
    }

    fn resolve(
        &mut self,
        t: &TangleExpression,
        locators: std::ops::Range<usize>,
        presentation: String,
        det: LinkDeterminant,
    ) -> std::result::Result<Option<CertNode>, Exhausted> {
        let mut tried = HashSet::new();
        for loc in locators {
            let smooth = |which| link_form(&t.smooth(loc, which).expect("locator in range"));
            let (Some(f0), Some(f1)) = (smooth(Smoothing::L0), smooth(Smoothing::L1)) else {
                continue;
            };
            if !tried.insert((f0.key(), f1.key())) {
                continue;
            }
            let (d0, d1) = (f0.determinant(), f1.determinant());
            if d0.is_zero() || d1.is_zero() || d0.value() + d1.value() != *det.value() {
                continue;
            }
            let Some(c0) = self.visit_form(&f0)? else { continue };
            let Some(c1) = self.visit_form(&f1)? else { continue };
            return Ok(Some(CertNode {
                presentation,
                crossing: Some(loc),
                det,
                det0: Some(d0),
                det1: Some(d1),
                rule: CertRule::Resolution,
                children: vec![c0, c1],
            }));
        }
        Ok(None)
    }

    fn visit(&mut self, input: &PlanarDiagram) -> std::result::Result<Option<CertNode>, Exhausted> {
        self.tick()?;
        // Work on the diagram the verifier will rebuild from the text.
        let code = input.pd_code();
        let presentation = code.to_string();
        let d = code.to_diagram().expect("own pd code parses");

        if d.crossing_count() == 0 {
            return Ok((d.free_loops() == 1).then(|| leaf(presentation, BigInt::one(), CertRule::Unknot)));
        }
        if !d.is_connected() {
            return Ok(None);
        }
        let key = d.canonical_key();
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let found = self.expand(&d, presentation)?;
        self.memo.insert(key, found.clone());
        Ok(found)
    }

    fn expand(&mut self, d: &PlanarDiagram, presentation: String) -> std::result::Result<Option<CertNode>, Exhausted> {
        let reduced = d.reduce();
        if reduced.crossing_count() < d.crossing_count() {
            let Some(child) = self.visit(&reduced)? else {
                return Ok(None);
            };
            return Ok(Some(CertNode {
                presentation,
                crossing: None,
                det: child.det.clone(),
                det0: None,
                det1: None,
                rule: CertRule::Reduction,
                children: vec![child],
            }));
        }
        let det = goeritz_determinant(d);
        if det.is_zero() {
            return Ok(None);
        }
        if d.is_alternating() {
            return Ok(Some(leaf(presentation, det, CertRule::Alternating)));
        }
        if let Some((a, b)) = d.split_connected_sum() {
            if let Some(ca) = self.visit(&a)? {
                if let Some(cb) = self.visit(&b)? {
                    return Ok(Some(CertNode {
                        presentation,
                        crossing: None,
                        det: LinkDeterminant::new(det),
                        det0: None,
                        det1: None,
                        rule: CertRule::ConnectedSum,
                        children: vec![ca, cb],
                    }));
                }
            }
        }
        for c in 0..d.crossing_count() {
            let s0 = d.smooth(c, Resolution::A).expect("crossing in range");
            let s1 = d.smooth(c, Resolution::B).expect("crossing in range");
            let g0 = goeritz_determinant(&s0);
            let g1 = goeritz_determinant(&s1);
            if g0.is_zero() || g1.is_zero() || &g0 + &g1 != det {
                continue;
            }
            let Some(c0) = self.visit(&s0)? else { continue };
            let Some(c1) = self.visit(&s1)? else { continue };
            return Ok(Some(CertNode {
                presentation,
                crossing: Some(c),
                det: LinkDeterminant::new(det),
                det0: Some(LinkDeterminant::new(g0)),
                det1: Some(LinkDeterminant::new(g1)),
                rule: CertRule::Resolution,
                children: vec![c0, c1],
            }));
        }
        Ok(None)
    }
}

fn leaf(presentation: String, det: BigInt, rule: CertRule) -> CertNode {
    CertNode {
        presentation,
        crossing: None,
        det: LinkDeterminant::new(det),
        det0: None,
        det1: None,
        rule,
        children: Vec::new(),
    }
}

fn finish(search: &Search, outcome: std::result::Result<Option<CertNode>, Exhausted>) -> CertifyOutcome {
    let explored = search.explored.min(search.budget);
    match outcome {
        Ok(Some(root)) => CertifyOutcome::Certified { root, explored },
        Ok(None) => CertifyOutcome::Unknown { reason: UnknownReason::SearchFailed, explored },
        Err(Exhausted) => CertifyOutcome::Unknown { reason: UnknownReason::BudgetExhausted, explored },
    }
}

fn check_budget(budget: u64) -> Result<()> {
    if budget == 0 {
        return Err(Error::InvalidBudget);
    }
    Ok(())
}

/// Search on a concrete diagram, simplifying only by nugatory and bigon
/// moves. Crossings are tried in diagram order.
pub fn certify_diagram(d: &PlanarDiagram, budget: u64) -> Result<CertifyOutcome> {
    check_budget(budget)?;
    if d.crossing_count() > 0 && !d.is_connected() || d.crossing_count() == 0 && d.free_loops() > 1 {
        return Ok(CertifyOutcome::Unknown { reason: UnknownReason::SplitDiagram, explored: 0 });
    }
    let mut search = Search { budget, ..Search::default() };
    let outcome = search.visit(d);
    Ok(finish(&search, outcome))
}

/// Search on a recognised link. Every smoothing is read back as a standard
/// Montesinos presentation or a connected sum of them, which absorbs the
/// flypes a fixed drawing cannot see. Crossings are tried in expression
/// preorder of the standard drawing.
pub fn certify_form(form: &LinkForm, budget: u64) -> Result<CertifyOutcome> {
    check_budget(budget)?;
    if *form == LinkForm::Split {
        return Ok(CertifyOutcome::Unknown { reason: UnknownReason::SplitDiagram, explored: 0 });
    }
    let mut search = Search { budget, ..Search::default() };
    let outcome = search.visit_form(form);
    Ok(finish(&search, outcome))
}

/// A standard presentation is searched as its link. Any other presentation
/// is first resolved at the crossings of its own drawing, so the root of the
/// certificate sits on the diagram the caller wrote down.
pub fn certify_presentation(p: &MontesinosPresentation, budget: u64) -> Result<CertifyOutcome> {
    check_budget(budget)?;
    let form = LinkForm::Montesinos(normalise(p));
    if p.is_standard() || form.determinant().is_zero() {
        return certify_form(&form, budget);
    }
    let mut search = Search { budget, ..Search::default() };
    let outcome = match search.tick() {
        Ok(()) => search.expand_form(p, grammar_text(p), form.determinant()),
        Err(e) => Err(e),
    };
    let outcome = match outcome {
        Ok(None) => search.visit_form(&form),
        other => other,
    };
    Ok(finish(&search, outcome))
}

/// Like [`certify_presentation`] with the root pinned to one crossing of the
/// drawing of `p`, in expression preorder.
pub fn certify_at(p: &MontesinosPresentation, locator: usize, budget: u64) -> Result<CertifyOutcome> {
    check_budget(budget)?;
    let t = build_diagram(p)?;
    if locator >= t.crossing_count() {
        return Err(Error::InvalidLocator(locator));
    }
    let det = LinkForm::Montesinos(normalise(p)).determinant();
    let mut search = Search { budget, ..Search::default() };
    let outcome = match search.tick() {
        Ok(()) => search.resolve(&t, locator..locator + 1, grammar_text(p), det),
        Err(e) => Err(e),
    };
    Ok(finish(&search, outcome))
}

/// The presentation whose standard drawing is exactly `t`, if there is one.
fn drawn_presentation(t: &TangleExpression) -> Option<MontesinosPresentation> {
    let parts: Vec<&Tangle> = match &t.root {
        Tangle::Sum(v) => v.iter().collect(),
        other => vec![other],
    };
    let tangles = parts
        .into_iter()
        .map(|x| {
            let f = tangle_fraction(x)?;
            (!f.is_infinite()).then_some(TanglePair { alpha: f.den, beta: f.num })
        })
        .collect::<Option<Vec<_>>>()?;
    let p = MontesinosPresentation::new(0, tangles).ok()?;
    let drawn = build_diagram(&p).ok()?;
    (drawn.closure == t.closure && drawn.root.expand().ok()? == t.root.expand().ok()?).then_some(p)
}

/// Certifies the link drawn by `t`. Drawings of Montesinos presentations go
/// through [`certify_presentation`]; other recognised links through
/// [`certify_form`]; anything else is searched as a bare diagram.
pub fn certify(t: &TangleExpression, budget: u64) -> Result<CertifyOutcome> {
    if let Some(p) = drawn_presentation(t) {
        return certify_presentation(&p, budget);
    }
    match link_form(t) {
        Some(form) => certify_form(&form, budget),
        None => certify_diagram(&t.to_planar()?, budget),
    }
}

/// Determinant used by the verifier: the bracket where it is within its cap,
/// the Goeritz matrix beyond.
fn recompute(d: &PlanarDiagram) -> Result<BigInt> {
    if d.crossing_count() <= BRACKET_CAP {
        bracket_determinant(d)
    } else {
        Ok(goeritz_determinant(d))
    }
}

fn drawn_det(p: &MontesinosPresentation) -> Result<BigInt> {
    recompute(&build_diagram(p)?.to_planar()?)
}

fn reject(msg: impl Into<String>) -> Error {
    Error::InvalidCertificate(msg.into())
}

/// What a node's text describes.
enum Parsed {
    Diagram(PlanarDiagram),
    Factors(Vec<MontesinosPresentation>),
}

fn parse_text(text: &str) -> Result<Parsed> {
    if text.trim_start().starts_with("PD[") {
        return Ok(Parsed::Diagram(PdCode::parse(text)?.to_diagram()?));
    }
    text.split(" # ")
        .map(parse_presentation)
        .collect::<Result<Vec<_>>>()
        .map(Parsed::Factors)
}

/// Key of the link named by a node, comparable with `LinkForm::key` for
/// presentation text and with `canonical_key` for PD codes.
fn node_key(node: &CertNode) -> Result<NodeKey> {
    Ok(match parse_text(&node.presentation)? {
        Parsed::Diagram(d) => NodeKey::Diagram(d.canonical_key()),
        Parsed::Factors(fs) => NodeKey::Form(form_of(&fs).key()),
    })
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
enum NodeKey {
    Diagram(Vec<u32>),
    Form(String),
}

fn form_of(factors: &[MontesinosPresentation]) -> LinkForm {
    match factors {
        [p] => LinkForm::Montesinos(normalise(p)),
        _ => {
            let mut fs: Vec<MontesinosPresentation> = factors.iter().map(normalise).collect();
            fs.sort_by_key(|f| LinkForm::Montesinos(f.clone()).key());
            LinkForm::ConnectedSum(fs)
        }
    }
}

/// Re-check a certificate from its text alone. Every determinant is
/// recomputed from a drawing and every structural step is replayed.
pub fn verify_certificate(node: &CertNode) -> Result<()> {
    let det = match parse_text(&node.presentation)? {
        Parsed::Diagram(d) => {
            let det = recompute(&d)?;
            check_det(node, &det)?;
            verify_diagram_node(node, &d, &det)?;
            det
        }
        Parsed::Factors(fs) => {
            let det = fs.iter().try_fold(BigInt::one(), |acc, f| Ok::<_, Error>(acc * drawn_det(f)?))?;
            check_det(node, &det)?;
            verify_form_node(node, &fs, &det)?;
            det
        }
    };
    if det.is_zero() {
        return Err(reject(format!("determinant zero at {}", node.presentation)));
    }
    node.children.iter().try_for_each(verify_certificate)
}

fn check_det(node: &CertNode, det: &BigInt) -> Result<()> {
    if det != node.det.value() {
        return Err(reject(format!("det mismatch at {}: {} recomputed as {det}", node.presentation, node.det)));
    }
    Ok(())
}

fn check_leaf(node: &CertNode) -> Result<()> {
    if node.children.is_empty() {
        Ok(())
    } else {
        Err(reject("leaf with children"))
    }
}

fn check_additivity(node: &CertNode, det: &BigInt) -> Result<(LinkDeterminant, LinkDeterminant)> {
    let (Some(d0), Some(d1)) = (&node.det0, &node.det1) else {
        return Err(reject("resolution without child determinants"));
    };
    if d0.is_zero() || d1.is_zero() || &(d0.value() + d1.value()) != det {
        return Err(reject(format!("additivity fails at {}", node.presentation)));
    }
    if node.children.len() != 2 || node.children[0].det != *d0 || node.children[1].det != *d1 {
        return Err(reject("children disagree with the node"));
    }
    Ok((d0.clone(), d1.clone()))
}

fn verify_form_node(node: &CertNode, factors: &[MontesinosPresentation], det: &BigInt) -> Result<()> {
    let single = match factors {
        [p] => Some(normalise(p)),
        _ => None,
    };
    match (node.rule, single) {
        (CertRule::Rational, Some(p)) if p.r() <= 2 => check_leaf(node),
        (CertRule::Alternating, Some(p)) => {
            check_leaf(node)?;
            // An alternating drawing of the same link: the standard one when
            // e <= 0, the mirror of the mirror's standard one when e >= r.
            let drawn = if !p.e.is_positive() {
                build_diagram(&p)?.to_planar()?
            } else if p.e >= BigInt::from(p.r()) {
                let q = normalise(&mirror_presentation(&p));
                if normalise(&mirror_presentation(&q)) != p {
                    return Err(reject("mirror does not round-trip"));
                }
                build_diagram(&q)?.to_planar()?.mirror()
            } else {
                return Err(reject(format!("{} has no alternating standard drawing", node.presentation)));
            };
            if !drawn.is_connected() || !drawn.is_alternating() {
                return Err(reject(format!("drawing of {} is not alternating", node.presentation)));
            }
            Ok(())
        }
        (CertRule::ConnectedSum, None) => {
            if node.children.len() != factors.len() {
                return Err(reject("connected sum needs one child per factor"));
            }
            let mut want: Vec<String> = factors.iter().map(|f| form_of(std::slice::from_ref(f)).key()).collect();
            let mut got = Vec::with_capacity(want.len());
            for c in &node.children {
                match node_key(c)? {
                    NodeKey::Form(k) => got.push(k),
                    NodeKey::Diagram(_) => return Err(reject("connected-sum factor is not a presentation")),
                }
            }
            want.sort();
            got.sort();
            if want != got {
                return Err(reject("connected-sum factors do not match"));
            }
            Ok(())
        }
        (CertRule::Resolution, Some(_)) => {
            let (d0, d1) = check_additivity(node, det)?;
            let p = &factors[0];
            let t = build_diagram(p)?;
            let loc = node.crossing.ok_or_else(|| reject("resolution without crossing"))?;
            for (which, want, child) in [(Smoothing::L0, d0, &node.children[0]), (Smoothing::L1, d1, &node.children[1])] {
                let s = t.smooth(loc, which)?;
                if &recompute(&s.to_planar()?)? != want.value() {
                    return Err(reject(format!("smoothing {which:?} at {loc} of {p} has another determinant")));
                }
                let form = link_form(&s).ok_or_else(|| reject("smoothing is not a recognised link"))?;
                if node_key(child)? != NodeKey::Form(form.key()) {
                    return Err(reject(format!("child {} is not the smoothing {form}", child.presentation)));
                }
            }
            Ok(())
        }
        (rule, _) => Err(reject(format!("rule {rule:?} does not apply to {}", node.presentation))),
    }
}

fn verify_diagram_node(node: &CertNode, d: &PlanarDiagram, det: &BigInt) -> Result<()> {
    let keys = |children: &[CertNode]| -> Result<Vec<NodeKey>> { children.iter().map(node_key).collect() };
    match node.rule {
        CertRule::Unknot => {
            check_leaf(node)?;
            if d.crossing_count() != 0 || d.free_loops() != 1 {
                return Err(reject("unknot leaf is not a single crossingless circle"));
            }
        }
        CertRule::Alternating => {
            check_leaf(node)?;
            if !d.is_connected() || !d.is_alternating() {
                return Err(reject("alternating leaf is not connected and alternating"));
            }
        }
        CertRule::Reduction => {
            if node.children.len() != 1 || keys(&node.children)?[0] != NodeKey::Diagram(d.reduce().canonical_key()) {
                return Err(reject("reduction child does not match"));
            }
        }
        CertRule::ConnectedSum => {
            let (a, b) = d.split_connected_sum().ok_or_else(|| reject("not a connected sum"))?;
            if node.children.len() != 2 {
                return Err(reject("connected sum needs two children"));
            }
            let mut want = vec![NodeKey::Diagram(a.canonical_key()), NodeKey::Diagram(b.canonical_key())];
            let mut got = keys(&node.children)?;
            want.sort();
            got.sort();
            if want != got {
                return Err(reject("connected-sum factors do not match"));
            }
        }
        CertRule::Resolution => {
            check_additivity(node, det)?;
            let c = node.crossing.ok_or_else(|| reject("resolution without crossing"))?;
            if c >= d.crossing_count() {
                return Err(reject("crossing out of range"));
            }
            let got = keys(&node.children)?;
            let want = [
                NodeKey::Diagram(d.smooth(c, Resolution::A)?.canonical_key()),
                NodeKey::Diagram(d.smooth(c, Resolution::B)?.canonical_key()),
            ];
            if got[..] != want[..] {
                return Err(reject("children are not the smoothings"));
            }
        }
        CertRule::Rational => return Err(reject("rational leaves need presentation text")),
    }
    Ok(())
}
