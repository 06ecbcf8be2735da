//! Exact computation with rational tangles and Montesinos links: continued
//! fractions, link determinants by three independent routes, the
//! quasi-alternating classifier and certificate search.

pub mod cli;
pub mod diagram;
pub mod error;
pub mod montesinos;
pub mod qa;
pub mod ratcf;

use std::fmt::{Debug, Display};

use num_bigint::BigInt;

pub use error::{Error, Result};

/// Integer types the slope and elimination code is generic over.
pub trait Int: num_integer::Integer + num_traits::Signed + Clone + Debug + Display {}

impl<T> Int for T where T: num_integer::Integer + num_traits::Signed + Clone + Debug + Display {}

pub type Slope = ratcf::Slope<BigInt>;
pub type ContinuedFraction = ratcf::ContinuedFraction<BigInt>;
pub type TSequence = ratcf::TSequence<BigInt>;

/// Machine-word variants for callers that know their values stay small.
pub type Slope64 = ratcf::Slope<i64>;
pub type ContinuedFraction64 = ratcf::ContinuedFraction<i64>;
