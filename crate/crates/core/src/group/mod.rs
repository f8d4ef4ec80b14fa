//! Finite permutation groups: order, membership, element enumeration,
//! conjugacy classes and the two-element generation test.

mod chain;
mod classes;
pub(crate) mod enumerate;
pub mod gf2;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::Rng;

pub use chain::{Chain, ChainElement, Level};
pub use classes::{ClassShortcut, ConjugacyClass, GENERIC_CLASS_LIMIT};
pub use enumerate::Elements;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default cap on `|G|` for operations that touch every element.
pub const DEFAULT_ENUMERATION_THRESHOLD: u64 = 5_000_000;

/// A realized finite permutation group.
#[derive(Debug)]
pub struct GroupHandle {
    generators: Vec<Permutation>,
    chain: Chain<Permutation>,
    order: BigUint,
    /// orbit label per point
    orbit_labels: Vec<u32>,
    shortcut: Option<ClassShortcut>,
    threshold: u64,
    classes: OnceLock<Vec<ConjugacyClass>>,
}

impl GroupHandle {
    pub fn build(generators: Vec<Permutation>) -> Result<Self> {
        let first = generators
            .first()
            .ok_or_else(|| Error::Structural("empty generator list".into()))?;
        let degree = first.degree();
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::Structural(format!(
                "generator degrees differ: {} vs {}",
                degree,
                bad.degree()
            )));
        }
        let chain = Chain::build(&generators);
        let order = chain.order();
        let orbit_labels = orbit_labels(degree, &generators);
        Ok(GroupHandle {
            generators,
            chain,
            order,
            orbit_labels,
            shortcut: None,
            threshold: DEFAULT_ENUMERATION_THRESHOLD,
            classes: OnceLock::new(),
        })
    }

    /// Declares the family so classes can be indexed by cycle types.
    pub fn with_shortcut(mut self, shortcut: ClassShortcut) -> Self {
        self.shortcut = Some(shortcut);
        self.classes = OnceLock::new();
        self
    }

    pub fn with_threshold(mut self, threshold: u64) -> Self {
        self.threshold = threshold;
        self
    }

    pub fn set_threshold(&mut self, threshold: u64) {
        self.threshold = threshold;
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn shortcut(&self) -> Option<ClassShortcut> {
        self.shortcut
    }

    pub fn degree(&self) -> usize {
        self.chain.degree()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &Chain<Permutation> {
        &self.chain
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// `|G|` if it fits in 64 bits.
    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn within_threshold(&self) -> bool {
        self.order_u64().is_some_and(|o| o <= self.threshold)
    }

    fn require_enumerable(&self, what: &str) -> Result<()> {
        if self.within_threshold() {
            Ok(())
        } else {
            Err(Error::Capability(format!(
                "{what} needs to enumerate {} elements, above the threshold {}",
                self.order, self.threshold
            )))
        }
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        self.chain.contains(x)
    }

    /// `⟨x, y⟩ = G`. Both elements must lie in `G`.
    pub fn is_generating_pair(&self, x: &Permutation, y: &Permutation) -> Result<bool> {
        for (name, e) in [("x", x), ("y", y)] {
            if !self.contains(e) {
                return Err(Error::Precondition(format!(
                    "{name} = {e} is not an element of the group"
                )));
            }
        }
        Ok(self.generates(x, y))
    }

    /// Generation test without the membership precondition check.
    pub(crate) fn generates(&self, x: &Permutation, y: &Permutation) -> bool {
        // ⟨x, y⟩ must have the same orbits as G
        if orbit_labels(self.degree(), &[x.clone(), y.clone()]) != self.orbit_labels {
            return false;
        }
        Chain::reaches_order(&[x.clone(), y.clone()], &self.order)
    }

    pub fn orbit_labels(&self) -> &[u32] {
        &self.orbit_labels
    }

    /// Conjugacy classes, one canonical representative each, sorted by
    /// `(element order, representative)`.
    pub fn class_representatives(&self) -> Result<&[ConjugacyClass]> {
        if let Some(c) = self.classes.get() {
            return Ok(c);
        }
        let computed = match self.shortcut {
            Some(s) => classes::shortcut_classes(s)?,
            None => {
                if self
                    .order_u64()
                    .is_none_or(|o| o > GENERIC_CLASS_LIMIT.min(self.threshold))
                {
                    return Err(Error::Capability(format!(
                        "conjugacy classes of a group of order {} need enumeration above the limit",
                        self.order
                    )));
                }
                classes::generic_classes(self)
            }
        };
        Ok(self.classes.get_or_init(|| computed))
    }

    /// All elements in deterministic stabilizer-chain order.
    pub fn elements(&self) -> Result<Elements<'_>> {
        self.require_enumerable("element enumeration")?;
        Ok(Elements::new(&self.chain))
    }

    pub fn elements_of_order(&self, q: u64) -> Result<impl Iterator<Item = Permutation> + '_> {
        Ok(self.elements()?.filter(move |x| x.order() == q))
    }

    /// The exact set of element orders.
    pub fn order_spectrum(&self) -> Result<BTreeSet<u64>> {
        Ok(self.class_representatives()?.iter().map(|c| c.order).collect())
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        self.chain.random_element(rng)
    }
}

/// Union-find orbit labels: each point gets the smallest point in its orbit.
pub(crate) fn orbit_labels(degree: usize, gens: &[Permutation]) -> Vec<u32> {
    let mut parent: Vec<u32> = (0..degree as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    for g in gens {
        for i in 0..degree {
            let a = find(&mut parent, i as u32);
            let b = find(&mut parent, g.apply(i) as u32);
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi as usize] = lo;
            }
        }
    }
    (0..degree as u32).map(|i| find(&mut parent, i)).collect()
}
