use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rationals used for reciprocal sums and defects.
pub type Rational = Ratio<i128>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TripleKind {
    Spherical,
    Euclidean,
    Hyperbolic,
}

/// `(p,q,r)` with `p ≤ q ≤ r`.
///
/// `Ord` is the enumeration order: decreasing `1/p + 1/q + 1/r`, ties broken
/// lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[u64; 3]", into = "[u64; 3]")]
pub struct TripleSignature {
    p: u64,
    q: u64,
    r: u64,
}

impl TripleSignature {
    /// Sorts the entries. Zero entries are rejected.
    pub fn new(a: u64, b: u64, c: u64) -> Result<Self> {
        if a == 0 || b == 0 || c == 0 {
            return Err(Error::Precondition(format!("triple ({a},{b},{c}) has a zero entry")));
        }
        let mut v = [a, b, c];
        v.sort_unstable();
        Ok(TripleSignature {
            p: v[0],
            q: v[1],
            r: v[2],
        })
    }

    pub(crate) fn from_sorted(p: u64, q: u64, r: u64) -> Self {
        debug_assert!(0 < p && p <= q && q <= r);
        TripleSignature { p, q, r }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn entries(&self) -> [u64; 3] {
        [self.p, self.q, self.r]
    }

    pub fn reciprocal_sum(&self) -> Rational {
        self.entries()
            .iter()
            .map(|&k| Rational::new(1, k as i128))
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// `1 − 1/p − 1/q − 1/r`.
    pub fn defect(&self) -> Rational {
        Rational::one() - self.reciprocal_sum()
    }

    pub fn kind(&self) -> TripleKind {
        let d = self.defect();
        if d < Rational::zero() {
            TripleKind::Spherical
        } else if d.is_zero() {
            TripleKind::Euclidean
        } else {
            TripleKind::Hyperbolic
        }
    }

    pub fn odd_entries(&self) -> usize {
        self.entries().iter().filter(|&&k| k % 2 == 1).count()
    }

    pub fn passes_parity_prune(&self) -> bool {
        self.odd_entries() <= 1
    }

    /// Order of the spherical triangle group `2/(1/p + 1/q + 1/r − 1)`, the
    /// largest possible order of a group with a pair of this type.
    pub fn spherical_order_bound(&self) -> Option<Rational> {
        match self.kind() {
            TripleKind::Spherical => Some(Rational::from_integer(2) / -self.defect()),
            _ => None,
        }
    }

    /// Riemann–Hurwitz value: `1 + |G|/2 · defect` for hyperbolic triples,
    /// `1` for euclidean and `0` for spherical ones.
    pub fn genus(&self, order: &BigUint) -> Result<BigUint> {
        match self.kind() {
            TripleKind::Spherical => Ok(BigUint::zero()),
            TripleKind::Euclidean => Ok(BigUint::one()),
            TripleKind::Hyperbolic => {
                let d = self.defect();
                let numer = order * BigUint::from(*d.numer() as u128);
                let denom = BigUint::from(2 * *d.denom() as u128);
                let (quot, rem) = numer.div_rem(&denom);
                if !rem.is_zero() {
                    return Err(Error::Invariant(format!(
                        "genus for order {order} and triple {self} is not an integer"
                    )));
                }
                Ok(quot + 1u32)
            }
        }
    }

    /// Defect small enough that the Singerman bound pins the genus.
    pub fn defect_pins_genus(&self) -> bool {
        match self.kind() {
            TripleKind::Spherical => true,
            TripleKind::Euclidean => false,
            TripleKind::Hyperbolic => self.defect() <= Rational::new(1, 6),
        }
    }
}

/// `|G| > 12(σ − 1)`, the hypothesis under which the minimal pair attains
/// the strong symmetric genus.
pub fn singerman_hypothesis(order: &BigUint, genus: &BigUint) -> bool {
    BigInt::from(order.clone()) > BigInt::from(12) * (BigInt::from(genus.clone()) - 1)
}

/// `σ(G/N) − 1 ≤ (σ(G) − 1)/|N|`, cross-multiplied to stay integral.
pub fn quotient_genus_bound_holds(genus_g: &BigUint, genus_q: &BigUint, kernel_order: &BigUint) -> bool {
    let lhs = (BigInt::from(genus_q.clone()) - 1) * BigInt::from(kernel_order.clone());
    lhs < BigInt::from(genus_g.clone())
}

impl Ord for TripleSignature {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .reciprocal_sum()
            .cmp(&self.reciprocal_sum())
            .then_with(|| self.entries().cmp(&other.entries()))
    }
}

impl PartialOrd for TripleSignature {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TripleSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.p, self.q, self.r)
    }
}

impl FromStr for TripleSignature {
    type Err = Error;

    /// Accepts `(2,3,7)`, `2,3,7` or `2 3 7`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected three entries in {s:?}")));
        }
        let mut v = [0u64; 3];
        for (slot, t) in v.iter_mut().zip(&parts) {
            *slot = t.parse().map_err(|_| Error::Parse(format!("bad triple entry {t:?}")))?;
        }
        TripleSignature::new(v[0], v[1], v[2]).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl TryFrom<[u64; 3]> for TripleSignature {
    type Error = Error;

    fn try_from(v: [u64; 3]) -> Result<Self> {
        let t = TripleSignature::new(v[0], v[1], v[2])?;
        if t.entries() != v {
            return Err(Error::Parse(format!("triple {v:?} is not sorted")));
        }
        Ok(t)
    }
}

impl From<TripleSignature> for [u64; 3] {
    fn from(t: TripleSignature) -> Self {
        t.entries()
    }
}
