//! Tangle expressions and their lowering to planar diagrams.
//!
//! Conventions follow the usual tangle calculus: `Sum` is horizontal
//! addition, `Product` vertical stacking (top first), `Invert` turns a
//! tangle of fraction `F` into one of fraction `1/F`. `Crossing(s)` is the
//! integer tangle `[s]` in the frame of its parent.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::planar::PlanarDiagram;
use crate::error::{Error, Result};
use crate::montesinos::{MontesinosPresentation, TanglePair};
use crate::ratcf::{cf_expand, Slope};
use crate::ContinuedFraction;

/// Largest twist count `build_diagram` will draw.
pub const MAX_TWISTS: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tangle {
    Crossing(i8),
    Zero,
    Infinity,
    Sum(Vec<Tangle>),
    Product(Vec<Tangle>),
    Invert(Box<Tangle>),
    /// Rational tangle of fraction `cf_eval(cf)`, drawn lazily.
    Rational(ContinuedFraction),
}

impl Tangle {
    /// Integer tangle `[k]`: `|k|` horizontal half-twists.
    pub fn integer(k: i64) -> Tangle {
        match k {
            0 => Tangle::Zero,
            1 | -1 => Tangle::Crossing(k as i8),
            _ => Tangle::Sum(vec![Tangle::Crossing(k.signum() as i8); k.unsigned_abs() as usize]),
        }
    }

    /// Explicit drawing of a rational tangle: `y1 = 1/[a1]`,
    /// `yk = 1/([ak] + y(k-1))`, so `a1` is innermost.
    pub fn rational(cf: &ContinuedFraction) -> Result<Tangle> {
        let mut terms = cf.terms().iter().map(twist_count);
        let first = terms.next().expect("continued fractions are nonempty")?;
        let mut y = Tangle::Invert(Box::new(Tangle::integer(first)));
        for a in terms {
            y = Tangle::Invert(Box::new(Tangle::Sum(vec![Tangle::integer(a?), y])));
        }
        Ok(y)
    }

    /// Replaces every `Rational` node by its drawing.
    pub fn expand(&self) -> Result<Tangle> {
        Ok(match self {
            Tangle::Rational(cf) => Tangle::rational(cf)?,
            Tangle::Sum(v) => Tangle::Sum(v.iter().map(Tangle::expand).collect::<Result<_>>()?),
            Tangle::Product(v) => {
                Tangle::Product(v.iter().map(Tangle::expand).collect::<Result<_>>()?)
            }
            Tangle::Invert(x) => Tangle::Invert(Box::new(x.expand()?)),
            leaf => leaf.clone(),
        })
    }

    pub fn crossing_count(&self) -> usize {
        match self {
            Tangle::Crossing(_) => 1,
            Tangle::Zero | Tangle::Infinity => 0,
            Tangle::Sum(v) | Tangle::Product(v) => v.iter().map(Tangle::crossing_count).sum(),
            Tangle::Invert(x) => x.crossing_count(),
            Tangle::Rational(cf) => cf
                .crossing_count()
                .to_usize()
                .unwrap_or(usize::MAX),
        }
    }

    pub fn mirror(&self) -> Tangle {
        match self {
            Tangle::Crossing(s) => Tangle::Crossing(-s),
            Tangle::Sum(v) => Tangle::Sum(v.iter().map(Tangle::mirror).collect()),
            Tangle::Product(v) => Tangle::Product(v.iter().map(Tangle::mirror).collect()),
            Tangle::Invert(x) => Tangle::Invert(Box::new(x.mirror())),
            Tangle::Rational(cf) => Tangle::Rational(cf.negate()),
            leaf => leaf.clone(),
        }
    }

    /// Signs of the crossing leaves in preorder (explicit trees only).
    fn collect_signs(&self, out: &mut Vec<i8>) {
        match self {
            Tangle::Crossing(s) => out.push(*s),
            Tangle::Sum(v) | Tangle::Product(v) => v.iter().for_each(|x| x.collect_signs(out)),
            Tangle::Invert(x) => x.collect_signs(out),
            _ => {}
        }
    }

    /// Replaces the `index`-th crossing leaf (preorder) of an explicit tree.
    fn replace_leaf(&self, index: &mut usize, with: &dyn Fn(i8) -> Tangle) -> Tangle {
        match self {
            Tangle::Crossing(s) => {
                if *index == 0 {
                    *index = usize::MAX;
                    return with(*s);
                }
                if *index != usize::MAX {
                    *index -= 1;
                }
                self.clone()
            }
            Tangle::Sum(v) => Tangle::Sum(v.iter().map(|x| x.replace_leaf(index, with)).collect()),
            Tangle::Product(v) => {
                Tangle::Product(v.iter().map(|x| x.replace_leaf(index, with)).collect())
            }
            Tangle::Invert(x) => Tangle::Invert(Box::new(x.replace_leaf(index, with))),
            leaf => leaf.clone(),
        }
    }
}

fn twist_count(a: &BigInt) -> Result<i64> {
    match a.to_i64() {
        Some(k) if k.unsigned_abs() <= MAX_TWISTS => Ok(k),
        _ => Err(Error::TooManyCrossings(a.to_string())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Closure {
    /// Joins NW to NE and SW to SE.
    Numerator,
    /// Joins NW to SW and NE to SE.
    Denominator,
}

/// A closed link diagram given as the closure of a tangle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TangleExpression {
    pub root: Tangle,
    pub closure: Closure,
}

/// Which smoothing of a crossing. For a crossing `[-1]` in its own frame,
/// `L0` is the `[0]` smoothing; for `[+1]` it is the `[inf]` smoothing.
/// With this labelling the replacement law reads
/// `T(n) det(L0) + Trev(n-1) det(L1)` for sign `-1` and the mirrored
/// formula for sign `+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Smoothing {
    L0,
    L1,
}

impl TangleExpression {
    pub fn numerator(root: Tangle) -> Self {
        Self {
            root,
            closure: Closure::Numerator,
        }
    }

    pub fn denominator(root: Tangle) -> Self {
        Self {
            root,
            closure: Closure::Denominator,
        }
    }

    pub fn expand(&self) -> Result<Self> {
        Ok(Self {
            root: self.root.expand()?,
            closure: self.closure,
        })
    }

    pub fn crossing_count(&self) -> usize {
        self.root.crossing_count()
    }

    /// Crossing signs in locator order.
    pub fn crossing_signs(&self) -> Result<Vec<i8>> {
        let mut out = Vec::new();
        self.root.expand()?.collect_signs(&mut out);
        Ok(out)
    }

    fn replace(&self, locator: usize, with: &dyn Fn(i8) -> Tangle) -> Result<Self> {
        let expanded = self.root.expand()?;
        let mut index = locator;
        let root = expanded.replace_leaf(&mut index, with);
        if index != usize::MAX {
            return Err(Error::InvalidLocator(locator));
        }
        Ok(Self {
            root,
            closure: self.closure,
        })
    }

    pub fn smooth(&self, locator: usize, which: Smoothing) -> Result<Self> {
        self.replace(locator, &|sign| match (sign < 0, which) {
            (true, Smoothing::L0) | (false, Smoothing::L1) => Tangle::Zero,
            _ => Tangle::Infinity,
        })
    }

    /// Substitutes a rational tangle for one crossing. The tangle is drawn
    /// from the reversed term list, so its last term sits innermost at the
    /// crossing, and `[s]` reproduces a crossing of sign `s`.
    pub fn replace_crossing(&self, locator: usize, cf: &ContinuedFraction) -> Result<Self> {
        let signs = self.crossing_signs()?;
        let sign = *signs.get(locator).ok_or(Error::InvalidLocator(locator))?;
        if cf.sign() != sign {
            return Err(Error::RegimeMismatch(sign));
        }
        let reversed = cf.reversed();
        self.replace(locator, &|_| Tangle::Rational(reversed.clone()))
    }

    /// Substitutes an arbitrary tangle for one crossing.
    pub fn substitute(&self, locator: usize, tangle: Tangle) -> Result<Self> {
        self.replace(locator, &|_| tangle.clone())
    }

    pub fn mirror(&self) -> Self {
        Self {
            root: self.root.mirror(),
            closure: self.closure,
        }
    }

    pub fn to_planar(&self) -> Result<PlanarDiagram> {
        let mut low = Lowering::default();
        let ends = low.lower(&self.root, false)?;
        let [nw, ne, sw, se] = ends;
        match self.closure {
            Closure::Numerator => {
                low.glue(nw, ne);
                low.glue(sw, se);
            }
            Closure::Denominator => {
                low.glue(nw, sw);
                low.glue(ne, se);
            }
        }
        let crossings: Vec<[u64; 4]> = low
            .crossings
            .clone()
            .iter()
            .map(|x| x.map(|l| low.find(l) as u64))
            .collect();
        PlanarDiagram::from_labels(&crossings, low.loops)
    }
}

/// Union-find over arc labels while gluing tangle endpoints together.
#[derive(Default)]
struct Lowering {
    parent: Vec<usize>,
    crossings: Vec<[usize; 4]>,
    loops: usize,
}

impl Lowering {
    fn fresh(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Identifies two tangle ends. If they already belong to one arc, that
    /// arc has no other ends and becomes a free loop.
    fn glue(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            self.loops += 1;
        } else {
            self.parent[ra] = rb;
        }
    }

    /// Returns the ends `[NW, NE, SW, SE]`.
    fn lower(&mut self, t: &Tangle, mirrored: bool) -> Result<[usize; 4]> {
        Ok(match t {
            Tangle::Crossing(s) => {
                let [nw, ne, sw, se] = [(); 4].map(|_| self.fresh());
                let positive = (*s > 0) != mirrored;
                // counterclockwise from an under-strand end
                self.crossings.push(if positive {
                    [nw, sw, se, ne]
                } else {
                    [sw, se, ne, nw]
                });
                [nw, ne, sw, se]
            }
            Tangle::Zero => {
                let (a, b) = (self.fresh(), self.fresh());
                [a, a, b, b]
            }
            Tangle::Infinity => {
                let (a, b) = (self.fresh(), self.fresh());
                [a, b, a, b]
            }
            Tangle::Sum(v) => {
                let mut acc: Option<[usize; 4]> = None;
                for x in v {
                    let r = self.lower(x, mirrored)?;
                    acc = Some(match acc {
                        None => r,
                        Some(l) => {
                            self.glue(l[1], r[0]);
                            self.glue(l[3], r[2]);
                            [l[0], r[1], l[2], r[3]]
                        }
                    });
                }
                match acc {
                    Some(ends) => ends,
                    None => self.lower(&Tangle::Zero, mirrored)?,
                }
            }
            Tangle::Product(v) => {
                let mut acc: Option<[usize; 4]> = None;
                for x in v {
                    let b = self.lower(x, mirrored)?;
                    acc = Some(match acc {
                        None => b,
                        Some(t) => {
                            self.glue(t[2], b[0]);
                            self.glue(t[3], b[1]);
                            [t[0], t[1], b[2], b[3]]
                        }
                    });
                }
                match acc {
                    Some(ends) => ends,
                    None => self.lower(&Tangle::Infinity, mirrored)?,
                }
            }
            Tangle::Invert(x) => {
                // quarter turn plus mirror
                let [nw, ne, sw, se] = self.lower(x, !mirrored)?;
                [ne, se, nw, sw]
            }
            Tangle::Rational(cf) => {
                let drawn = Tangle::rational(cf)?;
                self.lower(&drawn, mirrored)?
            }
        })
    }
}

/// Tangle realising the slope `beta/alpha` of one Montesinos tangle.
pub fn tangle_for_pair(t: &TanglePair) -> Result<Tangle> {
    if t.alpha.is_one() {
        return Ok(Tangle::integer(twist_count(&t.beta)?));
    }
    let (q, r) = t.beta.div_rem(&t.alpha);
    let cf = cf_expand(&Slope::new(r.abs(), t.alpha.clone())?)?;
    let cf = if r.is_negative() { cf.negate() } else { cf };
    let rational = Tangle::Rational(cf);
    if q.is_zero() {
        Ok(rational)
    } else {
        Ok(Tangle::Sum(vec![Tangle::integer(twist_count(&q)?), rational]))
    }
}

/// Draws `M(e; ...)` as the numerator closure of `[-e] + T1 + ... + Tr`.
pub fn build_diagram(p: &MontesinosPresentation) -> Result<TangleExpression> {
    let mut parts = Vec::with_capacity(p.tangles.len() + 1);
    if !p.e.is_zero() {
        parts.push(Tangle::integer(-twist_count(&p.e)?));
    }
    for t in &p.tangles {
        parts.push(tangle_for_pair(t)?);
    }
    Ok(TangleExpression::numerator(Tangle::Sum(parts)))
}
