//! Reading a numerator closure of rational pieces back as a link: a
//! Montesinos presentation, a connected sum of two-bridge links, or a split
//! link.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::diagram::{det_montesinos, Closure, LinkDeterminant, Tangle, TangleExpression};
use crate::montesinos::{least_dihedral, mirror_presentation, standard_form, MontesinosPresentation, TanglePair};
use crate::ratcf::cf_eval;

/// Projective fraction `num/den` with `den >= 0`; `1/0` is the infinity tangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction {
    pub num: BigInt,
    pub den: BigInt,
}

impl Fraction {
    fn new(num: BigInt, den: BigInt) -> Self {
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / &g, den / &g);
        if den.is_negative() || den.is_zero() && num.is_negative() {
            num = -num;
            den = -den;
        }
        Self { num, den }
    }

    fn integer(k: impl Into<BigInt>) -> Self {
        Self { num: k.into(), den: BigInt::one() }
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    fn reciprocal(&self) -> Self {
        Self::new(self.den.clone(), self.num.clone())
    }
}

/// Value of a tangle built from rational pieces: a fraction together with
/// local links tied into its strands. Each local link is a connected
/// summand of any closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangleValue {
    pub fraction: Fraction,
    pub summands: Vec<MontesinosPresentation>,
}

impl TangleValue {
    fn plain(fraction: Fraction) -> Self {
        Self { fraction, summands: Vec::new() }
    }

    fn mirror_summands(mut self) -> Self {
        for p in &mut self.summands {
            *p = normalise(&mirror_presentation(p));
        }
        self
    }
}

/// `D(p/q)`, the two-bridge link `N(-q/p)`. `D(oo)` is the two-component
/// unlink `M(0; 1/0)`.
fn denominator_closure(f: &Fraction) -> MontesinosPresentation {
    let r = Fraction::new(-f.den.clone(), f.num.clone());
    standard(BigInt::zero(), vec![pair(&r)])
}

/// Value of a tangle tree, or `None` when the tree is not visibly rational
/// (a sum of two non-integral tangles, say).
pub fn tangle_value(t: &Tangle) -> Option<TangleValue> {
    let recip = |v: TangleValue| TangleValue { fraction: v.fraction.reciprocal(), summands: v.summands };
    match t {
        Tangle::Crossing(s) => Some(TangleValue::plain(Fraction::integer(*s))),
        Tangle::Zero => Some(TangleValue::plain(Fraction::integer(0))),
        Tangle::Infinity => Some(TangleValue::plain(Fraction::new(BigInt::one(), BigInt::zero()))),
        Tangle::Rational(cf) => {
            let s = cf_eval(cf);
            Some(TangleValue::plain(Fraction::new(s.beta().clone(), s.alpha().clone())))
        }
        Tangle::Invert(x) => tangle_value(x).map(recip),
        Tangle::Sum(v) => fold_sum(v.iter().map(tangle_value).collect::<Option<_>>()?),
        // Vertical stacking adds reciprocals. The caps it creates are
        // numerator closures, which the rotated frame sees mirrored.
        Tangle::Product(v) => {
            let parts = v.iter().map(|x| tangle_value(x).map(recip)).collect::<Option<_>>()?;
            fold_sum(parts).map(|v| recip(v).mirror_summands())
        }
    }
}

/// Fraction of a rational tangle tree with no local links.
pub fn tangle_fraction(t: &Tangle) -> Option<Fraction> {
    let v = tangle_value(t)?;
    v.summands.is_empty().then_some(v.fraction)
}

fn fold_sum(parts: Vec<TangleValue>) -> Option<TangleValue> {
    let mut summands = Vec::new();
    let mut shift = BigInt::zero();
    let mut bodies = Vec::new();
    for v in parts {
        summands.extend(v.summands);
        if v.fraction.is_integer() {
            shift += v.fraction.num;
        } else {
            bodies.push(v.fraction);
        }
    }
    let Some(first_infinite) = bodies.iter().position(Fraction::is_infinite) else {
        let fraction = match bodies.len() {
            0 => Fraction::integer(shift),
            1 => {
                let f = &bodies[0];
                Fraction::new(&f.num + shift * &f.den, f.den.clone())
            }
            _ => return None,
        };
        return Some(TangleValue { fraction, summands });
    };
    // Beside an infinity tangle every other summand has two ends capped,
    // leaving its denominator closure tied into the through strand.
    for (i, f) in bodies.iter().enumerate() {
        if i != first_infinite {
            summands.push(denominator_closure(f));
        }
    }
    Some(TangleValue { fraction: Fraction::new(BigInt::one(), BigInt::zero()), summands })
}

/// A link recognised from its drawing. Presentations are in standard form;
/// connected-sum factors have at least two members and none is a
/// two-bridge unknot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinkForm {
    Montesinos(MontesinosPresentation),
    ConnectedSum(Vec<MontesinosPresentation>),
    Split,
}

impl LinkForm {
    pub fn determinant(&self) -> LinkDeterminant {
        match self {
            LinkForm::Montesinos(p) => det_montesinos(p),
            LinkForm::ConnectedSum(fs) => fs
                .iter()
                .fold(LinkDeterminant::from(1u64), |acc, f| {
                    LinkDeterminant::new(acc.into_inner() * det_montesinos(f).into_inner())
                }),
            LinkForm::Split => LinkDeterminant::from(0u64),
        }
    }

    /// Key equal for presentations related by rotating or reversing the
    /// tangle sequence.
    pub fn key(&self) -> String {
        match self {
            LinkForm::Montesinos(p) => montesinos_key(p),
            LinkForm::ConnectedSum(fs) => {
                let mut keys: Vec<String> = fs.iter().map(montesinos_key).collect();
                keys.sort();
                keys.join(" # ")
            }
            LinkForm::Split => "split".into(),
        }
    }
}

impl fmt::Display for LinkForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinkForm::Montesinos(p) => write!(f, "{}", grammar_text(p)),
            LinkForm::ConnectedSum(fs) => {
                let parts: Vec<String> = fs.iter().map(grammar_text).collect();
                write!(f, "{}", parts.join(" # "))
            }
            LinkForm::Split => write!(f, "split"),
        }
    }
}

/// Text accepted by the presentation grammar, which needs one tangle.
pub fn grammar_text(p: &MontesinosPresentation) -> String {
    if p.tangles.is_empty() {
        format!("M(0; 1/{})", -&p.e)
    } else {
        p.to_string()
    }
}

fn montesinos_key(p: &MontesinosPresentation) -> String {
    let pairs: Vec<(BigInt, BigInt)> = p.tangles.iter().map(|t| (t.alpha.clone(), t.beta.clone())).collect();
    format!("{}:{:?}", p.e, least_dihedral(&pairs))
}

fn standard(e: BigInt, tangles: Vec<TanglePair>) -> MontesinosPresentation {
    if tangles.is_empty() {
        return MontesinosPresentation { e, tangles };
    }
    standard_form(&MontesinosPresentation { e, tangles }).expect("coprime pairs")
}

fn pair(f: &Fraction) -> TanglePair {
    TanglePair { alpha: f.den.clone(), beta: f.num.clone() }
}

/// Standard form of an arbitrary presentation, allowing an empty list.
pub fn normalise(p: &MontesinosPresentation) -> MontesinosPresentation {
    standard(p.e.clone(), p.tangles.clone())
}

/// Reads the numerator closure of a sum of rational pieces.
pub fn link_form(t: &TangleExpression) -> Option<LinkForm> {
    if t.closure != Closure::Numerator {
        return None;
    }
    let parts: Vec<TangleValue> = match &t.root {
        Tangle::Sum(v) => v.iter().map(tangle_value).collect::<Option<_>>()?,
        other => vec![tangle_value(other)?],
    };
    let mut factors = Vec::new();
    if parts.iter().any(|v| v.fraction.is_infinite()) {
        // N(oo) is an unknot; only the local links survive.
        factors = fold_sum(parts)?.summands;
    } else {
        let mut tangles = Vec::with_capacity(parts.len());
        for v in parts {
            tangles.push(pair(&v.fraction));
            factors.extend(v.summands);
        }
        factors.push(standard(BigInt::zero(), tangles));
    }
    Some(connected_sum(factors))
}

/// Drops two-bridge unknots; a two-bridge factor of determinant zero is the
/// two-component unlink, which splits the whole link.
fn connected_sum(factors: Vec<MontesinosPresentation>) -> LinkForm {
    let mut kept = Vec::with_capacity(factors.len());
    for f in factors {
        if f.r() <= 2 {
            let det = det_montesinos(&f);
            if det.is_zero() {
                return LinkForm::Split;
            }
            if det.value().is_one() {
                continue;
            }
        }
        kept.push(f);
    }
    kept.sort_by_key(montesinos_key);
    match kept.len() {
        0 => LinkForm::Montesinos(unknot()),
        1 => LinkForm::Montesinos(kept.pop().expect("one factor")),
        _ => LinkForm::ConnectedSum(kept),
    }
}

pub fn unknot() -> MontesinosPresentation {
    MontesinosPresentation { e: -BigInt::one(), tangles: Vec::new() }
}
