//! Permutations of a finite domain.
//!
//! Points are stored 0-based; cycle notation (parsing and printing) is
//! 1-based. Composition is left-to-right: `a.then(&b)` maps `i` to
//! `b(a(i))`, and `&a * &b` means the same thing.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Largest supported degree.
pub const MAX_DEGREE: usize = u16::MAX as usize;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u16]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!((1..=MAX_DEGREE).contains(&degree), "degree {degree} out of range");
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from 0-based images, validating bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::Structural(format!("degree {n} out of range")));
        }
        let mut seen = vec![false; n];
        for &p in &images {
            if p >= n || seen[p] {
                return Err(Error::Structural(format!("images are not a bijection of {{1..{n}}}")));
            }
            seen[p] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|p| p as u16).collect(),
        })
    }

    pub(crate) fn from_raw(images: Box<[u16]>) -> Self {
        debug_assert!(is_bijection(&images));
        Permutation { images }
    }

    /// Builds a permutation of the given degree from 0-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::Structural(format!("degree {degree} out of range")));
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(Error::Structural(format!("point {} exceeds degree {degree}", p + 1)));
                }
                if touched[p] {
                    return Err(Error::Parse(format!("point {} repeated in cycles", p + 1)));
                }
                touched[p] = true;
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    /// Parses 1-based cycle notation such as `"(1 2)(3 4 5)"` or `"()"`.
    pub fn parse(degree: usize, text: &str) -> Result<Self> {
        Self::from_cycles(degree, &parse_cycles(text)?)
    }

    /// Parses cycle notation, taking the degree to be the largest point named.
    pub fn parse_minimal(text: &str) -> Result<Self> {
        let cycles = parse_cycles(text)?;
        let degree = cycles.iter().flatten().max().map_or(1, |&p| p + 1);
        Self::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    #[inline]
    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    /// Left-to-right product: apply `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        let mut out = vec![0u16; self.degree()].into_boxed_slice();
        compose_into(&self.images, &other.images, &mut out);
        Permutation { images: out }
    }

    /// Checked form of [`Permutation::then`].
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::Structural(format!(
                "degree mismatch: {} vs {}",
                self.degree(),
                other.degree()
            )));
        }
        Ok(self.then(other))
    }

    pub fn inverse(&self) -> Permutation {
        let mut out = vec![0u16; self.degree()].into_boxed_slice();
        for (i, &p) in self.images.iter().enumerate() {
            out[p as usize] = i as u16;
        }
        Permutation { images: out }
    }

    pub fn pow(&self, exp: u64) -> Permutation {
        let mut result = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        result
    }

    /// `g^-1 · self · g`, the image of `self` under relabelling by `g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().then(self).then(g)
    }

    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        order_of(&self.images, &mut seen)
    }

    /// Cycles in increasing order of their smallest point, each starting there.
    /// Fixed points are included as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_lengths(self.cycles().iter().map(Vec::len))
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.apply(i) == i).collect()
    }

    /// The cycle of `self` containing `point`.
    pub fn cycle_of(&self, point: usize) -> Vec<usize> {
        let mut cycle = vec![point];
        let mut p = self.apply(point);
        while p != point {
            cycle.push(p);
            p = self.apply(p);
        }
        cycle
    }

    pub fn is_even(&self) -> bool {
        let cycles = self.cycles().len();
        (self.degree() - cycles).is_multiple_of(2)
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(&self) -> i8 {
        if self.is_even() {
            1
        } else {
            -1
        }
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &p)| i != p as usize)
            .map(|(i, _)| i)
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles() {
            if cycle.len() < 2 {
                continue;
            }
            any = true;
            write!(f, "(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

/// Multiset of cycle lengths, fixed points included.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    /// length -> multiplicity
    counts: BTreeMap<usize, usize>,
}

impl CycleType {
    pub fn from_lengths(lengths: impl IntoIterator<Item = usize>) -> Self {
        let mut counts = BTreeMap::new();
        for len in lengths {
            *counts.entry(len).or_insert(0) += 1;
        }
        CycleType { counts }
    }

    pub fn degree(&self) -> usize {
        self.counts.iter().map(|(l, m)| l * m).sum()
    }

    pub fn num_cycles(&self) -> usize {
        self.counts.values().sum()
    }

    /// Lengths in non-increasing order.
    pub fn lengths(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (&len, &mult) in self.counts.iter().rev() {
            out.extend(std::iter::repeat_n(len, mult));
        }
        out
    }

    pub fn multiplicity(&self, len: usize) -> usize {
        self.counts.get(&len).copied().unwrap_or(0)
    }

    pub fn order(&self) -> u64 {
        self.counts.keys().fold(1u64, |acc, &l| acc.lcm(&(l as u64)))
    }

    pub fn is_even(&self) -> bool {
        (self.degree() - self.num_cycles()).is_multiple_of(2)
    }
}

/// Writes `b ∘ a` (apply `a`, then `b`) into `out`.
#[inline]
pub(crate) fn compose_into(a: &[u16], b: &[u16], out: &mut [u16]) {
    for (o, &p) in out.iter_mut().zip(a) {
        *o = b[p as usize];
    }
}

/// Order of the permutation given by `images`; `seen` is scratch of the same length.
#[inline]
pub(crate) fn order_of(images: &[u16], seen: &mut [bool]) -> u64 {
    seen.iter_mut().for_each(|s| *s = false);
    let mut order = 1u64;
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut p = start;
        while !seen[p] {
            seen[p] = true;
            p = images[p] as usize;
            len += 1;
        }
        if len > 1 {
            order = order.lcm(&len);
        }
    }
    order
}

fn is_bijection(images: &[u16]) -> bool {
    let mut seen = vec![false; images.len()];
    images.iter().all(|&p| {
        let p = p as usize;
        p < images.len() && !std::mem::replace(&mut seen[p], true)
    })
}

/// Parses 1-based cycle notation into 0-based cycles.
pub fn parse_cycles(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut cycles = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' in cycle notation {text:?}")))?;
        let close = body
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
        let mut cycle = Vec::new();
        for tok in body[..close].split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let p: usize = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad point {tok:?} in {text:?}")))?;
            if p == 0 {
                return Err(Error::Parse("points are 1-based".into()));
            }
            cycle.push(p - 1);
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(cycles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_perm(n: usize, rng: &mut ChaCha8Rng) -> Permutation {
        let mut v: Vec<usize> = (0..n).collect();
        v.shuffle(rng);
        Permutation::from_images(v).unwrap()
    }

    #[test]
    fn identity_and_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = random_perm(7, &mut rng);
        let e = Permutation::identity(7);
        assert_eq!(e.then(&x), x);
        assert!(x.then(&x.inverse()).is_identity());
        assert_eq!(e.inverse(), e);
        let t = Permutation::parse(4, "(1 2)").unwrap();
        assert_eq!(t.inverse(), t);
    }

    #[test]
    fn left_to_right_convention() {
        // (1 2) then (2 3): 1 -> 2 -> 3, 3 -> 3 -> 2, 2 -> 1 -> 1
        let a = Permutation::parse(3, "(1 2)").unwrap();
        let b = Permutation::parse(3, "(2 3)").unwrap();
        assert_eq!((&a * &b).to_string(), "(1 3 2)");
    }

    #[test]
    fn inverse_brute_force_degree_nine() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let c = random_perm(9, &mut rng);
        let d = c.inverse();
        for i in 0..9 {
            assert_eq!(d.apply(c.apply(i)), i);
        }
        assert!(c.then(&d).is_identity());
    }

    #[test]
    fn orders() {
        assert_eq!(Permutation::identity(5).order(), 1);
        assert_eq!(Permutation::parse(5, "(1 2)(3 4 5)").unwrap().order(), 6);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..50 {
            let x = random_perm(12, &mut rng);
            let mut k = 1;
            let mut acc = x.clone();
            while !acc.is_identity() {
                acc = acc.then(&x);
                k += 1;
            }
            assert_eq!(x.order(), k);
        }
    }

    #[test]
    fn cycle_structure_and_fixed_points() {
        let e = Permutation::identity(4);
        assert_eq!(e.fixed_points(), vec![0, 1, 2, 3]);
        let c = Permutation::parse(5, "(1 2 3)").unwrap();
        assert_eq!(c.cycle_type().lengths(), vec![3, 1, 1]);
        assert_eq!(c.fixed_points(), vec![3, 4]);
        assert_eq!(c.cycle_type().order(), 3);
    }

    #[test]
    fn sigma5_has_seven_cycle_types() {
        let mut types = std::collections::BTreeSet::new();
        let mut v: Vec<usize> = (0..5).collect();
        let mut count = 0;
        permute_all(&mut v, 0, &mut |p| {
            let x = Permutation::from_images(p.to_vec()).unwrap();
            types.insert(x.cycle_type());
            count += 1;
        });
        assert_eq!(count, 120);
        assert_eq!(types.len(), 7);
    }

    fn permute_all(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permute_all(v, k + 1, f);
            v.swap(k, i);
        }
    }

    #[test]
    fn parse_and_print() {
        let x = Permutation::parse(6, " ( 1 2 )( 3  4 5 ) ").unwrap();
        assert_eq!(x.to_string(), "(1 2)(3 4 5)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert_eq!(Permutation::parse(3, "()").unwrap(), Permutation::identity(3));
        assert!(Permutation::parse(3, "(1 4)").is_err());
        assert!(Permutation::parse(3, "(1 2)(2 3)").is_err());
        assert!(Permutation::parse(3, "(0 1)").is_err());
        assert!(Permutation::parse(3, "1 2").is_err());
        assert_eq!(Permutation::parse_minimal("(2 5)").unwrap().degree(), 5);
    }

    #[test]
    fn degree_mismatch_is_structural_error() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(matches!(a.compose(&b), Err(Error::Structural(_))));
        assert!(Permutation::from_images(vec![0, 0]).is_err());
    }

    fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn sign_is_a_homomorphism(a in perm_strategy(8), b in perm_strategy(8)) {
            prop_assert_eq!((&a * &b).sign(), a.sign() * b.sign());
        }

        #[test]
        fn order_symmetries(a in perm_strategy(9), b in perm_strategy(9)) {
            prop_assert_eq!(a.order(), a.inverse().order());
            prop_assert_eq!((&a * &b).order(), (&b * &a).order());
        }

        #[test]
        fn associativity(a in perm_strategy(7), b in perm_strategy(7), c in perm_strategy(7)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn display_parse_round_trip(a in perm_strategy(10)) {
            prop_assert_eq!(Permutation::parse(10, &a.to_string()).unwrap(), a);
        }
    }
}
