//! Concrete diagrams and three independent determinant routes: the
//! closed-form Montesinos formula, the reduced Goeritz matrix and the
//! Kauffman bracket at an eighth root of unity.

pub mod bracket;
pub mod goeritz;
pub mod planar;
pub mod tangle;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use planar::{PdCode, PlanarDiagram, Resolution};
pub use tangle::{build_diagram, Closure, Smoothing, Tangle, TangleExpression};

use crate::error::Result;
use crate::montesinos::MontesinosPresentation;
use crate::Slope;

/// Nonnegative link determinant; zero for split links.
///
/// Serialises as a JSON number when it fits in 64 bits, otherwise as a
/// decimal string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinkDeterminant(BigInt);

impl Serialize for LinkDeterminant {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(v) => s.serialize_u64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for LinkDeterminant {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Small(u64),
            Big(String),
        }
        match Repr::deserialize(d)? {
            Repr::Small(v) => Ok(Self(BigInt::from(v))),
            Repr::Big(text) => text
                .parse::<BigInt>()
                .map(Self::new)
                .map_err(serde::de::Error::custom),
        }
    }
}

impl LinkDeterminant {
    pub fn new(value: BigInt) -> Self {
        Self(value.abs())
    }

    pub fn value(&self) -> &BigInt {
        &self.0
    }

    pub fn into_inner(self) -> BigInt {
        self.0
    }
}

impl From<u64> for LinkDeterminant {
    fn from(v: u64) -> Self {
        Self(BigInt::from(v))
    }
}

impl fmt::Display for LinkDeterminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn mirror_diagram(t: &TangleExpression) -> TangleExpression {
    t.mirror()
}

pub fn det_goeritz(t: &TangleExpression) -> Result<LinkDeterminant> {
    Ok(LinkDeterminant(goeritz::goeritz_determinant(&t.to_planar()?)))
}

pub fn det_bracket_oracle(t: &TangleExpression) -> Result<LinkDeterminant> {
    Ok(LinkDeterminant(bracket::bracket_determinant(&t.to_planar()?)?))
}

/// The two-bridge link of slope `beta/alpha` has determinant `alpha`.
pub fn det_rational(s: &Slope) -> LinkDeterminant {
    LinkDeterminant(s.alpha().clone())
}

/// `|e * prod(alpha) - sum_j beta_j * prod_{k != j} alpha_k|`.
pub fn det_montesinos(p: &MontesinosPresentation) -> LinkDeterminant {
    let product = p
        .tangles
        .iter()
        .fold(BigInt::one(), |acc, t| acc * &t.alpha);
    let mut total = &p.e * &product;
    for (j, tj) in p.tangles.iter().enumerate() {
        let others = p
            .tangles
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != j)
            .fold(BigInt::one(), |acc, (_, t)| acc * &t.alpha);
        total -= &tj.beta * others;
    }
    LinkDeterminant::new(total)
}

pub fn det_connected_sum(a: &LinkDeterminant, b: &LinkDeterminant) -> LinkDeterminant {
    LinkDeterminant(&a.0 * &b.0)
}

/// Planar-diagram code of the drawn diagram.
pub fn pd_code(t: &TangleExpression) -> Result<PdCode> {
    Ok(t.to_planar()?.pd_code())
}

impl LinkDeterminant {
    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}
