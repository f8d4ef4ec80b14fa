//! Minimal `(p,q,r)` generating pairs and the strong symmetric genus.

mod heuristic;
mod sandwich;
mod search;
mod triple;

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

pub use heuristic::{heuristic_pair, local_search, local_search_pair, HEURISTIC_CHUNK, WALK_LENGTH};
pub use sandwich::{sandwich_bound, SandwichBound};
pub(crate) use search::with_jobs;
pub use search::{enumerate_triples, minimal_pair, search_triple, SearchOptions};
pub use triple::{quotient_genus_bound_holds, singerman_hypothesis, Rational, TripleKind, TripleSignature};

use crate::catalog::GroupSpec;
use crate::error::{Error, Result};
use crate::group::GroupHandle;
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Exhaustive,
    Heuristic,
    Lifted,
    SandwichBound,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Exhaustive => "exhaustive",
            Provenance::Heuristic => "heuristic",
            Provenance::Lifted => "lifted",
            Provenance::SandwichBound => "sandwich-bound",
        })
    }
}

/// `x`, `y` with `order(x) = p`, `order(y) = q`, `order(xy) = r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairWitness {
    pub triple: TripleSignature,
    pub x: Permutation,
    pub y: Permutation,
    pub provenance: Provenance,
}

impl PairWitness {
    /// Rearranges a generating pair of any orders into one whose orders are
    /// sorted. Uses `(x, y) → (y⁻¹, x⁻¹)` and `(x, y) → (y, (xy)⁻¹)`, which
    /// keep the generated subgroup.
    pub fn canonical(x: Permutation, y: Permutation, provenance: Provenance) -> Result<Self> {
        let triple = TripleSignature::new(x.order(), y.order(), x.then(&y).order())?;
        let rotate = |(a, b): (Permutation, Permutation)| {
            let prod = a.then(&b);
            (b, prod.inverse())
        };
        let p0 = (x, y);
        let p1 = rotate(p0.clone());
        let p2 = rotate(p1.clone());
        for (a, b) in [p0, p1, p2] {
            let swapped = (b.inverse(), a.inverse());
            for cand in [(a, b), swapped] {
                let orders = [cand.0.order(), cand.1.order(), cand.0.then(&cand.1).order()];
                if orders == triple.entries() {
                    return Ok(PairWitness {
                        triple,
                        x: cand.0,
                        y: cand.1,
                        provenance,
                    });
                }
            }
        }
        Err(Error::Invariant("no rearrangement sorts the pair orders".into()))
    }

    pub fn product(&self) -> Permutation {
        self.x.then(&self.y)
    }

    /// Re-checks membership, the three orders and generation.
    pub fn verify(&self, g: &GroupHandle) -> Result<()> {
        let fail = |m: String| Err(Error::Verification(m));
        if self.x.degree() != g.degree() || self.y.degree() != g.degree() {
            return fail(format!("witness degree differs from the group degree {}", g.degree()));
        }
        let orders = [self.x.order(), self.y.order(), self.product().order()];
        if orders != self.triple.entries() {
            return fail(format!(
                "orders ({},{},{}) do not match the claimed triple {}",
                orders[0], orders[1], orders[2], self.triple
            ));
        }
        if !g
            .is_generating_pair(&self.x, &self.y)
            .map_err(|e| Error::Verification(e.to_string()))?
        {
            return fail("the pair does not generate the group".into());
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    Exact,
    UpperBound,
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Exactness::Exact => "exact",
            Exactness::UpperBound => "upper-bound",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusResult {
    pub spec: GroupSpec,
    pub order: BigUint,
    pub triple: TripleSignature,
    pub genus: BigUint,
    pub exactness: Exactness,
    pub witness: PairWitness,
}

impl GenusResult {
    /// `minimal_proven` says that no earlier triple admits a pair.
    pub fn from_witness(spec: GroupSpec, order: BigUint, witness: PairWitness, minimal_proven: bool) -> Result<Self> {
        let triple = witness.triple;
        let genus = triple.genus(&order)?;
        let exactness = if minimal_proven && triple.defect_pins_genus() {
            Exactness::Exact
        } else {
            Exactness::UpperBound
        };
        Ok(GenusResult {
            spec,
            order,
            triple,
            genus,
            exactness,
            witness,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_sorts_orders() {
        let x = Permutation::parse(4, "(1 2 3 4)").unwrap();
        let y = Permutation::parse(4, "(1 2)").unwrap();
        // orders (4, 2, 3)
        let w = PairWitness::canonical(x, y, Provenance::Exhaustive).unwrap();
        assert_eq!(w.triple.entries(), [2, 3, 4]);
        assert_eq!([w.x.order(), w.y.order(), w.product().order()], [2, 3, 4]);
        let s4 = GroupHandle::build(vec![w.x.clone(), w.y.clone()]).unwrap();
        assert_eq!(s4.order(), &BigUint::from(24u32));
        w.verify(&s4).unwrap();
    }

    #[test]
    fn tampered_witness_fails() {
        let s4 = GroupHandle::build(vec![
            Permutation::parse(4, "(1 2)").unwrap(),
            Permutation::parse(4, "(1 2 3 4)").unwrap(),
        ])
        .unwrap();
        let mut w = PairWitness::canonical(
            Permutation::parse(4, "(1 2)").unwrap(),
            Permutation::parse(4, "(2 3 4)").unwrap(),
            Provenance::Exhaustive,
        )
        .unwrap();
        w.verify(&s4).unwrap();
        w.y = Permutation::parse(4, "(1 2 3)").unwrap();
        assert!(matches!(w.verify(&s4), Err(Error::Verification(_))));
    }
}
