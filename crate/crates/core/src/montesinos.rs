//! Montesinos presentations `M(e; (a1,b1), ..., (ar,br))`.
//!
//! The classifying rational is `e0 = e - sum(b_j / a_j)`; every rewrite in
//! this module preserves it exactly.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One rational tangle `(alpha, beta)` of slope `beta/alpha`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TanglePair {
    pub alpha: BigInt,
    pub beta: BigInt,
}

impl TanglePair {
    pub fn new(alpha: impl Into<BigInt>, beta: impl Into<BigInt>) -> Result<Self> {
        let (alpha, beta) = (alpha.into(), beta.into());
        if alpha < BigInt::one() || !alpha.gcd(&beta).is_one() {
            return Err(Error::InvalidTangle {
                alpha: alpha.to_string(),
                beta: beta.to_string(),
            });
        }
        Ok(Self { alpha, beta })
    }

    pub fn slope(&self) -> BigRational {
        BigRational::new(self.beta.clone(), self.alpha.clone())
    }

    /// `0 < beta/alpha < 1`.
    pub fn is_standard(&self) -> bool {
        self.beta.is_positive() && self.beta < self.alpha
    }

    pub fn is_integral(&self) -> bool {
        self.alpha.is_one()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MontesinosPresentation {
    pub e: BigInt,
    pub tangles: Vec<TanglePair>,
}

impl MontesinosPresentation {
    pub fn new(e: impl Into<BigInt>, tangles: Vec<TanglePair>) -> Result<Self> {
        if tangles.is_empty() {
            return Err(Error::EmptyPresentation);
        }
        Ok(Self {
            e: e.into(),
            tangles,
        })
    }

    /// Shorthand for tests and tables: `from_pairs(e, &[(alpha, beta), ...])`.
    pub fn from_pairs(e: i64, pairs: &[(i64, i64)]) -> Result<Self> {
        let tangles = pairs
            .iter()
            .map(|&(a, b)| TanglePair::new(a, b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(e, tangles)
    }

    pub fn r(&self) -> usize {
        self.tangles.len()
    }

    pub fn is_standard(&self) -> bool {
        self.tangles.iter().all(TanglePair::is_standard)
    }

    pub fn e0(&self) -> BigRational {
        self.tangles
            .iter()
            .fold(BigRational::from_integer(self.e.clone()), |acc, t| {
                acc - t.slope()
            })
    }
}

impl fmt::Display for MontesinosPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({};", self.e)?;
        for (i, t) in self.tangles.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{}/{}", t.alpha, t.beta)?;
        }
        if self.tangles.is_empty() {
            write!(f, " ")?;
        }
        write!(f, ")")
    }
}

/// Moves every tangle into `0 < beta/alpha < 1`, absorbing integer parts
/// (and whole integer tangles) into `e`. Tangle order is preserved.
///
/// The output may have an empty tangle list when every input tangle was
/// integral; it then describes the closure of the `e` twist region alone.
pub fn standard_form(p: &MontesinosPresentation) -> Result<MontesinosPresentation> {
    if p.tangles.is_empty() {
        return Err(Error::EmptyPresentation);
    }
    let mut e = p.e.clone();
    let mut tangles = Vec::with_capacity(p.tangles.len());
    for t in &p.tangles {
        let (q, rem) = t.beta.div_mod_floor(&t.alpha);
        e -= &q;
        if t.alpha.is_one() {
            continue;
        }
        if rem.is_zero() {
            return Err(Error::InvalidTangle {
                alpha: t.alpha.to_string(),
                beta: t.beta.to_string(),
            });
        }
        tangles.push(TanglePair {
            alpha: t.alpha.clone(),
            beta: rem,
        });
    }
    Ok(MontesinosPresentation { e, tangles })
}

/// Classifying data: `e0` and the residue sequence up to rotation and reversal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ClassInvariant {
    pub e0: BigRational,
    pub fractions: Vec<BigRational>,
}

pub fn classification_invariant(p: &MontesinosPresentation) -> Result<ClassInvariant> {
    let sf = standard_form(p)?;
    let r = sf.r();
    if r < 3 {
        return Err(Error::HypothesisViolated(format!(
            "{r} non-integral tangles, need at least 3"
        )));
    }
    let inverse_sum = sf
        .tangles
        .iter()
        .fold(BigRational::zero(), |acc, t| {
            acc + BigRational::new(BigInt::one(), t.alpha.clone())
        });
    if inverse_sum > BigRational::from_integer(BigInt::from(r - 2)) {
        return Err(Error::HypothesisViolated(format!(
            "sum of 1/alpha is {inverse_sum}, exceeds r - 2 = {}",
            r - 2
        )));
    }
    let residues: Vec<BigRational> = sf.tangles.iter().map(TanglePair::slope).collect();
    Ok(ClassInvariant {
        e0: sf.e0(),
        fractions: least_dihedral(&residues),
    })
}

/// Lexicographically least sequence among all rotations of `seq` and of
/// its reversal.
pub fn least_dihedral<T: Ord + Clone>(seq: &[T]) -> Vec<T> {
    let mut reversed = seq.to_vec();
    reversed.reverse();
    let a = least_rotation(seq);
    let b = least_rotation(&reversed);
    a.min(b)
}

pub fn least_rotation<T: Ord + Clone>(seq: &[T]) -> Vec<T> {
    (0..seq.len().max(1))
        .map(|k| {
            let mut v = seq[k.min(seq.len())..].to_vec();
            v.extend_from_slice(&seq[..k.min(seq.len())]);
            v
        })
        .min()
        .unwrap_or_default()
}

pub fn mirror_presentation(p: &MontesinosPresentation) -> MontesinosPresentation {
    MontesinosPresentation {
        e: -p.e.clone(),
        tangles: p
            .tangles
            .iter()
            .map(|t| TanglePair {
                alpha: t.alpha.clone(),
                beta: -t.beta.clone(),
            })
            .collect(),
    }
}

/// `P(s1, ..., sk)` as `M(0; (|s1|, sign s1), ...)`.
pub fn pretzel_to_montesinos(params: &[i64]) -> Result<MontesinosPresentation> {
    if params.is_empty() {
        return Err(Error::EmptyPresentation);
    }
    let tangles = params
        .iter()
        .map(|&s| {
            if s == 0 {
                return Err(Error::ZeroPretzelParameter);
            }
            TanglePair::new(s.unsigned_abs(), s.signum())
        })
        .collect::<Result<Vec<_>>>()?;
    MontesinosPresentation::new(0, tangles)
}

/// Standard-form presentations of Widmer's four families.
///
/// Parameters, in order: family 1 `a1 a2 n`; family 2 `a1 a2 c1 c2`;
/// family 3 `a1 a2 a3 n`; family 4 `a1 a2 a3 c1 c2 c3`. `rest` is the
/// positive rational tangle placed in the middle.
pub fn widmer_form(
    family: u8,
    params: &[i64],
    rest: &TanglePair,
) -> Result<MontesinosPresentation> {
    let expected = match family {
        1 => 3,
        2 => 4,
        3 => 4,
        4 => 6,
        _ => return Err(Error::UnknownFamily(family)),
    };
    if params.len() != expected {
        return Err(Error::FamilyArity {
            family,
            expected,
            got: params.len(),
        });
    }
    let v: Vec<BigInt> = params.iter().map(|&x| BigInt::from(x)).collect();
    let one = BigInt::one();
    // (a1 a2 + 1, a1) and its three-term analogue
    let two_term = |x: &BigInt, y: &BigInt| (x * y + &one, x.clone());
    let three_term = |x: &BigInt, y: &BigInt, z: &BigInt| (x * y * z + x + z, x * y + &one);

    let (left, right) = match family {
        1 => (two_term(&v[0], &v[1]), (v[2].clone(), &v[2] - &one)),
        2 => {
            let (c, c1) = two_term(&v[2], &v[3]);
            (two_term(&v[0], &v[1]), (c.clone(), c - c1))
        }
        3 => (
            three_term(&v[0], &v[1], &v[2]),
            (v[3].clone(), &v[3] - &one),
        ),
        _ => {
            let (c, c12) = three_term(&v[3], &v[4], &v[5]);
            (three_term(&v[0], &v[1], &v[2]), (c.clone(), c - c12))
        }
    };
    MontesinosPresentation::new(
        1,
        vec![
            TanglePair::new(left.0, left.1)?,
            TanglePair::new(rest.alpha.clone(), rest.beta.clone())?,
            TanglePair::new(right.0, right.1)?,
        ],
    )
}
