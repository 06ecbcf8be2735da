//! Exact slopes, finite continued fractions and the `T` / reversed-`T`
//! determinant sequences.
//!
//! A continued fraction `[a1, ..., an]` evaluates bottom-up:
//! `beta/alpha = 1/(an + 1/(a(n-1) + ... + 1/a1))`, so the last term is the
//! outermost quotient. With this reading `T(n) = alpha` and `T(n-1) = beta`.

use std::fmt;

use crate::error::{Error, Result};
use crate::Int;

/// A rational number `beta/alpha` in lowest terms with `alpha >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Slope<I> {
    beta: I,
    alpha: I,
}

impl<I: Int> Slope<I> {
    /// Reduces `beta/alpha` to lowest terms with a positive denominator.
    pub fn new(beta: I, alpha: I) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let g = beta.gcd(&alpha);
        let (mut beta, mut alpha) = (beta / g.clone(), alpha / g);
        if alpha.is_negative() {
            beta = -beta;
            alpha = -alpha;
        }
        Ok(Self { beta, alpha })
    }

    pub fn beta(&self) -> &I {
        &self.beta
    }

    pub fn alpha(&self) -> &I {
        &self.alpha
    }

    pub fn neg(&self) -> Self {
        Self {
            beta: -self.beta.clone(),
            alpha: self.alpha.clone(),
        }
    }
}

impl<I: Int> fmt::Display for Slope<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.beta, self.alpha)
    }
}

/// Nonempty list of nonzero integers that all share one sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContinuedFraction<I> {
    terms: Vec<I>,
}

impl<I: Int> ContinuedFraction<I> {
    pub fn new(terms: Vec<I>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyContinuedFraction);
        }
        let positive = terms[0].is_positive();
        let ok = terms
            .iter()
            .all(|a| !a.is_zero() && a.is_positive() == positive);
        if !ok {
            return Err(Error::MixedSignRegime(format_terms(&terms)));
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[I] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// True when every term is at least 1.
    pub fn is_positive(&self) -> bool {
        self.terms[0].is_positive()
    }

    /// Sign of the regime: `1` or `-1`.
    pub fn sign(&self) -> i8 {
        if self.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn negate(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|a| -a.clone()).collect(),
        }
    }

    pub fn reversed(&self) -> Self {
        let mut terms = self.terms.clone();
        terms.reverse();
        Self { terms }
    }

    /// Term magnitudes, always in the positive regime.
    pub fn abs(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|a| a.abs()).collect(),
        }
    }

    /// Sum of `|a_i|`, which is the crossing count of the tangle it draws.
    pub fn crossing_count(&self) -> I {
        self.terms.iter().fold(I::zero(), |acc, a| acc + a.abs())
    }
}

impl<I: Int> fmt::Display for ContinuedFraction<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(&self.terms))
    }
}

fn format_terms<I: fmt::Display>(terms: &[I]) -> String {
    let inner: Vec<String> = terms.iter().map(|a| a.to_string()).collect();
    format!("[{}]", inner.join(","))
}

/// Forward and reversed determinant sequences of a positive continued fraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TSequence<I> {
    pub values: Vec<I>,
    pub reversed: Vec<I>,
}

impl<I: Int> TSequence<I> {
    /// `T(n)`, equal to the denominator `alpha` of the slope.
    pub fn last(&self) -> &I {
        self.values.last().expect("sequence has n + 1 >= 2 entries")
    }

    pub fn n(&self) -> usize {
        self.values.len() - 1
    }
}

fn recurrence<'a, I: Int + 'a>(terms: impl Iterator<Item = &'a I>) -> Vec<I> {
    let mut out = vec![I::one()];
    let mut prev2 = I::zero();
    for a in terms {
        let prev = out.last().unwrap().clone();
        let next = a.clone() * prev.clone() + prev2;
        prev2 = prev;
        out.push(next);
    }
    out
}

/// Canonical all-positive expansion of a slope in `(0, 1]`.
///
/// Runs Euclid on `alpha/beta` and reverses the quotients, so the final
/// quotient (at least 2 whenever there is more than one) becomes `a1`.
pub fn cf_expand<I: Int>(s: &Slope<I>) -> Result<ContinuedFraction<I>> {
    if !s.beta.is_positive() {
        return Err(Error::NonPositiveSlope(s.to_string()));
    }
    if s.beta > s.alpha {
        return Err(Error::SlopeAboveOne(s.to_string()));
    }
    let (mut a, mut b) = (s.alpha.clone(), s.beta.clone());
    let mut quotients = Vec::new();
    while !b.is_zero() {
        let (q, r) = a.div_rem(&b);
        quotients.push(q);
        a = b;
        b = r;
    }
    quotients.reverse();
    ContinuedFraction::new(quotients)
}

/// Exact value `T(n-1)/T(n)`, negated for the negative regime.
pub fn cf_eval<I: Int>(cf: &ContinuedFraction<I>) -> Slope<I> {
    let t = recurrence(cf.terms.iter().map(|a| a.abs()).collect::<Vec<_>>().iter());
    let n = t.len() - 1;
    let beta = if cf.is_positive() {
        t[n - 1].clone()
    } else {
        -t[n - 1].clone()
    };
    // consecutive T values are coprime, so this is already reduced
    Slope {
        beta,
        alpha: t[n].clone(),
    }
}

pub fn t_sequences<I: Int>(cf: &ContinuedFraction<I>) -> Result<TSequence<I>> {
    if !cf.is_positive() {
        return Err(Error::NegativeRegime);
    }
    Ok(TSequence {
        values: recurrence(cf.terms.iter()),
        reversed: recurrence(cf.terms.iter().rev()),
    })
}

/// Checks `T(m-1) + T1(m) = T(m)` and its reversed counterpart, where `T1`
/// comes from the sequence with `a_m` lowered by one. `m` is 1-based.
pub fn decrement_identity_check<I: Int>(cf: &ContinuedFraction<I>, m: usize) -> Result<bool> {
    let seq = t_sequences(cf)?;
    let n = cf.len();
    let two = I::one() + I::one();
    if m == 0 || m > n || cf.terms[m - 1] < two {
        return Err(Error::InvalidDecrement { index: m, len: n });
    }
    let mut lowered = cf.terms.clone();
    lowered[m - 1] = lowered[m - 1].clone() - I::one();
    let lowered = ContinuedFraction::new(lowered)?;
    let seq1 = t_sequences(&lowered)?;

    let forward = seq.values[m - 1].clone() + seq1.values[m].clone() == seq.values[m];
    // in the reversed recursion a_m sits at step n - m + 1
    let k = n - m + 1;
    let backward = seq.reversed[k - 1].clone() + seq1.reversed[k].clone() == seq.reversed[k];
    Ok(forward && backward)
}

pub fn negate_cf<I: Int>(cf: &ContinuedFraction<I>) -> ContinuedFraction<I> {
    cf.negate()
}
