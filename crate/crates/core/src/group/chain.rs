//! Deterministic Schreier–Sims over any element type that acts on points.
//!
//! Elements whose action is trivial but which are not the identity (signed
//! permutations acting through `π`) are absorbed into a `GF(2)` kernel span,
//! so the same construction yields `|π(H)|` and `H ∩ ker π` in one pass.

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

use super::gf2::Gf2Span;
use crate::perm::Permutation;
use crate::signed::SignedPermutation;

pub trait ChainElement: Clone {
    fn action_degree(&self) -> usize;
    fn image(&self, point: usize) -> usize;
    /// Left-to-right product.
    fn then(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn identity_like(&self) -> Self;
    fn first_moved_point(&self) -> Option<usize>;
    /// Sign bits of an element that acts trivially; zero for a faithful action.
    fn kernel_bits(&self) -> u128;
}

impl ChainElement for Permutation {
    fn action_degree(&self) -> usize {
        self.degree()
    }
    #[inline]
    fn image(&self, point: usize) -> usize {
        self.apply(point)
    }
    fn then(&self, other: &Self) -> Self {
        Permutation::then(self, other)
    }
    fn inverse(&self) -> Self {
        Permutation::inverse(self)
    }
    fn identity_like(&self) -> Self {
        Permutation::identity(self.degree())
    }
    fn first_moved_point(&self) -> Option<usize> {
        self.smallest_moved_point()
    }
    fn kernel_bits(&self) -> u128 {
        0
    }
}

/// Signed permutations acting on `{1..n}` through `π`.
impl ChainElement for SignedPermutation {
    fn action_degree(&self) -> usize {
        self.rank()
    }
    #[inline]
    fn image(&self, point: usize) -> usize {
        self.perm().apply(point)
    }
    fn then(&self, other: &Self) -> Self {
        SignedPermutation::then(self, other)
    }
    fn inverse(&self) -> Self {
        SignedPermutation::inverse(self)
    }
    fn identity_like(&self) -> Self {
        SignedPermutation::identity(self.rank())
    }
    fn first_moved_point(&self) -> Option<usize> {
        self.perm().smallest_moved_point()
    }
    fn kernel_bits(&self) -> u128 {
        self.signs().bits()
    }
}

const ABSENT: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct Level<E> {
    pub(crate) base: usize,
    gens: Vec<E>,
    orbit: Vec<usize>,
    /// point -> index into `reps`
    slot: Vec<u32>,
    /// `reps[k]` maps `base` to `orbit[k]`
    reps: Vec<E>,
    inv_reps: Vec<E>,
    /// Schreier pairs (orbit index < .0, generator index < .1) already sifted.
    done: (usize, usize),
}

impl<E: ChainElement> Level<E> {
    fn new(base: usize, identity: E, degree: usize) -> Self {
        let mut slot = vec![ABSENT; degree];
        slot[base] = 0;
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            slot,
            reps: vec![identity.clone()],
            inv_reps: vec![identity],
            done: (0, 0),
        }
    }

    fn extend_orbit(&mut self) {
        let mut k = 0;
        while k < self.orbit.len() {
            let p = self.orbit[k];
            for g in &self.gens {
                let q = g.image(p);
                if self.slot[q] == ABSENT {
                    let rep = self.reps[k].then(g);
                    self.slot[q] = self.reps.len() as u32;
                    self.inv_reps.push(rep.inverse());
                    self.reps.push(rep);
                    self.orbit.push(q);
                }
            }
            k += 1;
        }
    }

    pub fn orbit(&self) -> &[usize] {
        &self.orbit
    }

    pub fn reps(&self) -> &[E] {
        &self.reps
    }

    pub fn rep_for(&self, point: usize) -> Option<&E> {
        match self.slot[point] {
            ABSENT => None,
            k => Some(&self.reps[k as usize]),
        }
    }
}

/// Stabilizer chain: base points, transversals and the kernel span.
#[derive(Clone, Debug)]
pub struct Chain<E> {
    degree: usize,
    identity: E,
    levels: Vec<Level<E>>,
    kernel: Gf2Span,
}

enum Outcome {
    Complete,
    ReachedTarget,
}

impl<E: ChainElement> Chain<E> {
    /// Complete chain for `⟨generators⟩`.
    pub fn build(generators: &[E]) -> Self {
        let mut chain = Self::seed(generators);
        chain.run(None);
        chain
    }

    /// Returns `true` iff `⟨generators⟩` has order at least `target`. Stops
    /// as soon as the partial chain certifies that bound.
    pub fn reaches_order(generators: &[E], target: &BigUint) -> bool {
        let mut chain = Self::seed(generators);
        if &chain.order() >= target {
            return true;
        }
        match chain.run(Some(target)) {
            Outcome::ReachedTarget => true,
            Outcome::Complete => &chain.order() >= target,
        }
    }

    fn seed(generators: &[E]) -> Self {
        let first = generators.first().expect("at least one generator");
        let degree = first.action_degree();
        let mut chain = Chain {
            degree,
            identity: first.identity_like(),
            levels: Vec::new(),
            kernel: Gf2Span::new(),
        };
        for g in generators {
            assert_eq!(g.action_degree(), degree, "degree mismatch");
            match chain.levels.iter().position(|l| g.image(l.base) != l.base) {
                Some(_) => {}
                None => match g.first_moved_point() {
                    Some(p) => chain.push_level(p),
                    None => {
                        chain.kernel.insert(g.kernel_bits());
                        continue;
                    }
                },
            }
        }
        for g in generators {
            if g.first_moved_point().is_none() {
                if g.kernel_bits() != 0 {
                    for level in &mut chain.levels {
                        level.gens.push(g.clone());
                    }
                }
                continue;
            }
            for l in 0..chain.levels.len() {
                chain.levels[l].gens.push(g.clone());
                if g.image(chain.levels[l].base) != chain.levels[l].base {
                    break;
                }
            }
        }
        for level in &mut chain.levels {
            level.extend_orbit();
        }
        chain
    }

    fn push_level(&mut self, base: usize) {
        self.levels.push(Level::new(base, self.identity.clone(), self.degree));
    }

    /// Sifts `g` through levels `from..`; returns the residue and the level
    /// where sifting stopped (`levels.len()` if it went all the way).
    fn strip(&self, mut g: E, from: usize) -> (E, usize) {
        for l in from..self.levels.len() {
            let level = &self.levels[l];
            let q = g.image(level.base);
            match level.slot[q] {
                ABSENT => return (g, l),
                0 => {}
                k => g = g.then(&level.inv_reps[k as usize]),
            }
        }
        (g, self.levels.len())
    }

    fn run(&mut self, target: Option<&BigUint>) -> Outcome {
        if self.levels.is_empty() {
            return Outcome::Complete;
        }
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            let mut jumped = None;
            'pairs: {
                let (orbit_len, gen_len) = (self.levels[lvl].orbit.len(), self.levels[lvl].gens.len());
                let (done_o, done_g) = self.levels[lvl].done;
                for k in 0..orbit_len {
                    for s in 0..gen_len {
                        if k < done_o && s < done_g {
                            continue;
                        }
                        let level = &self.levels[lvl];
                        let gen = &level.gens[s];
                        let q = gen.image(level.orbit[k]);
                        let slot = level.slot[q] as usize;
                        let schreier = level.reps[k].then(gen).then(&level.inv_reps[slot]);
                        let (h, j) = self.strip(schreier, lvl + 1);
                        if j == self.levels.len() {
                            if h.first_moved_point().is_none() {
                                let bits = h.kernel_bits();
                                if self.kernel.contains(bits) {
                                    continue;
                                }
                                self.kernel.insert(bits);
                                for l in lvl + 1..self.levels.len() {
                                    self.levels[l].gens.push(h.clone());
                                }
                                jumped = Some(self.levels.len() - 1);
                                break 'pairs;
                            }
                            let p = h.first_moved_point().expect("moved point");
                            self.push_level(p);
                        }
                        for l in lvl + 1..=j {
                            self.levels[l].gens.push(h.clone());
                            self.levels[l].extend_orbit();
                        }
                        jumped = Some(j);
                        break 'pairs;
                    }
                }
                self.levels[lvl].done = (orbit_len, gen_len);
            }
            match jumped {
                Some(j) => {
                    if let Some(t) = target {
                        if &self.order() >= t {
                            return Outcome::ReachedTarget;
                        }
                    }
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
        Outcome::Complete
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[Level<E>] {
        &self.levels
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn kernel(&self) -> &Gf2Span {
        &self.kernel
    }

    pub fn orbit_product(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn order(&self) -> BigUint {
        self.orbit_product() << self.kernel.dim()
    }

    pub fn contains(&self, g: &E) -> bool {
        if g.action_degree() != self.degree {
            return false;
        }
        let (h, j) = self.strip(g.clone(), 0);
        j == self.levels.len() && h.first_moved_point().is_none() && self.kernel.contains(h.kernel_bits())
    }

    /// Uniform random element of the action image (kernel part ignored).
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> E {
        let mut g = self.identity.clone();
        for level in self.levels.iter().rev() {
            let k = rng.gen_range(0..level.reps.len());
            g = g.then(&level.reps[k]);
        }
        g
    }
}
