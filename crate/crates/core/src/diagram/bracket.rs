//! Kauffman bracket state sum evaluated at `A = exp(i*pi/4)`.
//!
//! At this point `A^-4 = -1`, so `|<D>|` is the link determinant, and the
//! loop value `-A^2 - A^-2` vanishes: only states with a single loop
//! contribute. The sum is taken crossing by crossing, keeping the partial
//! pairing of open arc ends, so diagrams with a narrow frontier stay cheap
//! even near the crossing cap.

use std::collections::HashMap;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_integer::Roots;

use super::planar::PlanarDiagram;
use crate::error::{Error, Result};

/// Largest diagram the oracle accepts. With at most `2^20` states every
/// coefficient stays far inside `i64`.
pub const BRACKET_CAP: usize = 20;

/// `c0 + c1 z + c2 z^2 + c3 z^3` with `z^4 = -1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Cyclotomic8(pub [i64; 4]);

impl Cyclotomic8 {
    pub const ONE: Self = Self([1, 0, 0, 0]);

    /// `z^k` for any integer `k`.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut c = [0; 4];
        if k < 4 {
            c[k] = 1;
        } else {
            c[k - 4] = -1;
        }
        Self(c)
    }

    pub fn conj(self) -> Self {
        let [a0, a1, a2, a3] = self.0;
        Self([a0, -a3, -a2, -a1])
    }

    /// `|x|` when `|x|^2` is a perfect square integer.
    pub fn magnitude(self) -> Option<i64> {
        let n = (self * self.conj()).0;
        if n[1] != 0 || n[2] != 0 || n[3] != 0 || n[0] < 0 {
            return None;
        }
        let root = n[0].sqrt();
        (root * root == n[0]).then_some(root)
    }
}

impl Add for Cyclotomic8 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self([0, 1, 2, 3].map(|i| self.0[i] + o.0[i]))
    }
}

impl Mul for Cyclotomic8 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut c = [0i64; 4];
        for i in 0..4 {
            for j in 0..4 {
                let v = self.0[i] * o.0[j];
                if i + j < 4 {
                    c[i + j] += v;
                } else {
                    c[i + j - 4] -= v;
                }
            }
        }
        Self(c)
    }
}

/// Pairing of open arc ends; pairs stored as `(min, max)` and sorted.
type Frontier = Vec<(u32, u32)>;

/// Links `x` and `y` through a smoothing. Returns `false` when this closes
/// a loop.
fn join(state: &mut Frontier, x: u32, y: u32) -> bool {
    if x == y {
        return false;
    }
    let take = |state: &mut Frontier, v: u32| -> Option<u32> {
        let i = state.iter().position(|&(a, b)| a == v || b == v)?;
        let (a, b) = state.swap_remove(i);
        Some(if a == v { b } else { a })
    };
    let px = take(state, x);
    if px == Some(y) {
        return false;
    }
    let py = take(state, y);
    let (ex, ey) = (px.unwrap_or(x), py.unwrap_or(y));
    state.push((ex.min(ey), ex.max(ey)));
    true
}

fn processing_order(d: &PlanarDiagram) -> Vec<usize> {
    let n = d.crossing_count();
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        // prefer the crossing with most slots already attached to the frontier
        let best = (0..n)
            .filter(|&c| !done[c])
            .max_by_key(|&c| {
                let attached = (0..4).filter(|&k| done[d.partner(4 * c + k) / 4]).count();
                (attached, std::cmp::Reverse(c))
            })
            .unwrap();
        done[best] = true;
        order.push(best);
    }
    order
}

/// Bracket value `<D>` at `A = z`.
pub fn bracket_at_zeta8(d: &PlanarDiagram) -> Result<Cyclotomic8> {
    let n = d.crossing_count();
    if n > BRACKET_CAP {
        return Err(Error::BracketCap {
            cap: BRACKET_CAP,
            got: n,
        });
    }
    if n == 0 {
        let v = if d.free_loops() == 1 {
            Cyclotomic8::ONE
        } else {
            Cyclotomic8::default()
        };
        return Ok(v);
    }
    if d.free_loops() > 0 {
        return Ok(Cyclotomic8::default());
    }
    let arc = |s: usize| s.min(d.partner(s)) as u32;
    let mut states: HashMap<(Frontier, bool), Cyclotomic8> = HashMap::new();
    states.insert((Vec::new(), false), Cyclotomic8::ONE);
    for c in processing_order(d) {
        let labels = [0, 1, 2, 3].map(|k| arc(4 * c + k));
        let mut next: HashMap<(Frontier, bool), Cyclotomic8> = HashMap::new();
        for ((frontier, closed), weight) in states {
            for (pairs, power) in [([(0, 1), (2, 3)], 1), ([(0, 3), (1, 2)], -1)] {
                let mut f = frontier.clone();
                let mut closed = closed;
                let mut alive = true;
                for (i, j) in pairs {
                    if !join(&mut f, labels[i], labels[j]) {
                        // a second loop carries the vanishing loop value
                        if closed {
                            alive = false;
                            break;
                        }
                        closed = true;
                    }
                }
                if !alive || (closed && !f.is_empty()) {
                    continue;
                }
                f.sort_unstable();
                let entry = next.entry((f, closed)).or_default();
                *entry = *entry + weight * Cyclotomic8::zeta_pow(power);
            }
        }
        states = next;
    }
    Ok(states
        .into_iter()
        .filter(|((f, closed), _)| f.is_empty() && *closed)
        .fold(Cyclotomic8::default(), |acc, (_, w)| acc + w))
}

/// Determinant as the magnitude of the bracket at `z`.
pub fn bracket_determinant(d: &PlanarDiagram) -> Result<BigInt> {
    let v = bracket_at_zeta8(d)?;
    v.magnitude()
        .map(BigInt::from)
        .ok_or_else(|| Error::OracleDisagreement(format!("bracket value {v:?} has no integer magnitude")))
}
