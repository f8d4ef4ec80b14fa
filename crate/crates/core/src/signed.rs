//! The hyperoctahedral group `B_n = Z2 wr S_n` as pairs `[σ, b]`.
//!
//! Multiplication follows `[σ, b]·[τ, c] = [σ·τ, τ⁻¹(b) + c]`, where `·` on
//! the permutation part is the crate-wide left-to-right product and
//! `τ⁻¹(b)` moves the digit at position `i` to position `τ(i)`. That pairing
//! is the one that makes the action on `{±1..±n}` a homomorphism; the test
//! suite checks the rejected alternative fails.

use std::fmt;
use std::ops::Add;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest rank for signed permutations (sign vectors live in one `u128`).
pub const MAX_RANK: usize = 128;

/// `n` binary digits, stored as a bitset.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    bits: u128,
    len: u8,
}

impl SignVector {
    pub fn zeros(len: usize) -> Self {
        assert!((1..=MAX_RANK).contains(&len), "rank {len} out of range");
        SignVector {
            bits: 0,
            len: len as u8,
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        v.bits = mask(len);
        v
    }

    /// `e_i` (0-based position).
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits(len: usize, bits: u128) -> Self {
        let mut v = Self::zeros(len);
        v.bits = bits & mask(len);
        v
    }

    pub fn from_positions(len: usize, positions: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in positions {
            v.set(i, !v.get(i));
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn bits(&self) -> u128 {
        self.bits
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len());
        self.bits >> i & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len(), "position {i} out of range");
        if value {
            self.bits |= 1 << i;
        } else {
            self.bits &= !(1 << i);
        }
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_even(&self) -> bool {
        self.weight().is_multiple_of(2)
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// The digit at position `i` moves to position `perm(i)`; this is the
    /// `τ⁻¹(b)` of the multiplication rule when `perm = τ`.
    pub fn pushed_forward(&self, perm: &Permutation) -> SignVector {
        assert_eq!(perm.degree(), self.len(), "degree mismatch");
        let mut out = 0u128;
        let mut rest = self.bits;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= 1 << perm.apply(i);
        }
        SignVector {
            bits: out,
            len: self.len,
        }
    }

    /// Parses a digit string such as `"1100"`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text.len() > MAX_RANK {
            return Err(Error::Parse(format!("bad sign vector length in {text:?}")));
        }
        let mut v = Self::zeros(text.len());
        for (i, c) in text.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => return Err(Error::Parse(format!("bad digit {c:?} in sign vector"))),
            }
        }
        Ok(v)
    }
}

impl Add for SignVector {
    type Output = SignVector;

    fn add(self, rhs: SignVector) -> SignVector {
        assert_eq!(self.len, rhs.len, "length mismatch");
        SignVector {
            bits: self.bits ^ rhs.bits,
            len: self.len,
        }
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignVector({self})")
    }
}

fn mask(len: usize) -> u128 {
    if len == 128 {
        u128::MAX
    } else {
        (1u128 << len) - 1
    }
}

/// An element `[σ, b]` of `B_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    perm: Permutation,
    signs: SignVector,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            perm: Permutation::identity(n),
            signs: SignVector::zeros(n),
        }
    }

    pub fn new(perm: Permutation, signs: SignVector) -> Result<Self> {
        if perm.degree() != signs.len() {
            return Err(Error::Structural(format!(
                "permutation degree {} but {} sign digits",
                perm.degree(),
                signs.len()
            )));
        }
        if perm.degree() > MAX_RANK {
            return Err(Error::Capability(format!("rank above {MAX_RANK}")));
        }
        Ok(SignedPermutation { perm, signs })
    }

    /// `[σ, 0]`.
    pub fn unsigned(perm: Permutation) -> Self {
        let n = perm.degree();
        SignedPermutation {
            perm,
            signs: SignVector::zeros(n),
        }
    }

    /// `[1, b]`.
    pub fn flip(signs: SignVector) -> Self {
        SignedPermutation {
            perm: Permutation::identity(signs.len()),
            signs,
        }
    }

    pub fn rank(&self) -> usize {
        self.perm.degree()
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn signs(&self) -> SignVector {
        self.signs
    }

    /// The quotient map `π([σ, b]) = σ`.
    pub fn pi(&self) -> &Permutation {
        &self.perm
    }

    pub fn multiply(&self, other: &SignedPermutation) -> Result<SignedPermutation> {
        if self.rank() != other.rank() {
            return Err(Error::Structural(format!(
                "rank mismatch: {} vs {}",
                self.rank(),
                other.rank()
            )));
        }
        Ok(self.then(other))
    }

    /// Unchecked product; panics on rank mismatch.
    pub fn then(&self, other: &SignedPermutation) -> SignedPermutation {
        SignedPermutation {
            perm: self.perm.then(&other.perm),
            signs: self.signs.pushed_forward(&other.perm) + other.signs,
        }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let inv = self.perm.inverse();
        SignedPermutation {
            signs: self.signs.pushed_forward(&inv),
            perm: inv,
        }
    }

    pub fn pow(&self, exp: u64) -> SignedPermutation {
        let mut result = SignedPermutation::identity(self.rank());
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

    pub fn is_identity(&self) -> bool {
        self.signs.is_zero() && self.perm.is_identity()
    }

    pub fn order(&self) -> u64 {
        let m = self.perm.order();
        if self.pow(m).signs.is_zero() {
            m
        } else {
            2 * m
        }
    }

    /// Membership in `D_n`: the sign vector has even weight.
    pub fn is_in_dn(&self) -> bool {
        self.signs.is_even()
    }

    /// Faithful action on `{±1..±n}`: point `i` stands for `+(i+1)` and
    /// `n + i` for `-(i+1)`. `[σ, b]` sends `±i` to `±σ(i)`, flipping the sign
    /// when digit `σ(i)` of `b` is set.
    pub fn to_degree_2n(&self) -> Permutation {
        let n = self.rank();
        let mut images = vec![0u16; 2 * n].into_boxed_slice();
        for i in 0..n {
            let t = self.perm.apply(i);
            let flip = self.signs.get(t);
            let (plus, minus) = if flip { (n + t, t) } else { (t, n + t) };
            images[i] = plus as u16;
            images[n + i] = minus as u16;
        }
        Permutation::from_raw(images)
    }

    /// Inverse of [`SignedPermutation::to_degree_2n`]; fails if `x` does not
    /// commute with negation.
    pub fn from_degree_2n(x: &Permutation) -> Result<SignedPermutation> {
        if !x.degree().is_multiple_of(2) || x.degree() / 2 > MAX_RANK {
            return Err(Error::Structural(format!(
                "degree {} is not 2n for a supported rank",
                x.degree()
            )));
        }
        let n = x.degree() / 2;
        let mut images = Vec::with_capacity(n);
        let mut signs = SignVector::zeros(n);
        for i in 0..n {
            let plus = x.apply(i);
            let minus = x.apply(n + i);
            let t = plus % n;
            if minus != (plus + n) % (2 * n) {
                return Err(Error::Structural("permutation does not commute with negation".into()));
            }
            if plus >= n {
                signs.set(t, true);
            }
            images.push(t);
        }
        SignedPermutation::new(Permutation::from_images(images)?, signs)
    }

    /// Parses `"[(1 2) | 1100]"`; the rank is the number of digits.
    pub fn parse(text: &str) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [cycles | digits] in {text:?}")))?;
        let (cycles, digits) = inner
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("missing '|' in {text:?}")))?;
        let signs = SignVector::parse(digits)?;
        let perm = Permutation::parse(signs.len(), cycles)?;
        SignedPermutation::new(perm, signs)
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} | {}]", self.perm, self.signs)
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn signed_strategy(n: usize) -> impl Strategy<Value = SignedPermutation> {
        (Just((0..n).collect::<Vec<_>>()).prop_shuffle(), any::<u128>()).prop_map(move |(v, bits)| {
            SignedPermutation::new(Permutation::from_images(v).unwrap(), SignVector::from_bits(n, bits)).unwrap()
        })
    }

    fn all_of_bn(n: usize) -> Vec<SignedPermutation> {
        let mut perms = vec![];
        let mut v: Vec<usize> = (0..n).collect();
        heap_permutations(&mut v, n, &mut perms);
        let mut out = vec![];
        for p in perms {
            for bits in 0..(1u128 << n) {
                out.push(
                    SignedPermutation::new(
                        Permutation::from_images(p.clone()).unwrap(),
                        SignVector::from_bits(n, bits),
                    )
                    .unwrap(),
                );
            }
        }
        out
    }

    fn heap_permutations(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(v.clone());
            return;
        }
        for i in 0..k {
            heap_permutations(v, k - 1, out);
            if k.is_multiple_of(2) {
                v.swap(i, k - 1);
            } else {
                v.swap(0, k - 1);
            }
        }
    }

    #[test]
    fn identity_cases() {
        let x = SignedPermutation::parse("[(1 3 2) | 101]").unwrap();
        let e = SignedPermutation::identity(3);
        assert_eq!(e.multiply(&x).unwrap(), x);
        assert!(x.multiply(&x.inverse()).unwrap().is_identity());
        assert_eq!(e.order(), 1);
        assert!(e.to_degree_2n().is_identity());
        assert_eq!(e.pi(), &Permutation::identity(3));
    }

    #[test]
    fn pure_flips() {
        let x = SignedPermutation::flip(SignVector::from_positions(5, &[1, 3]));
        assert_eq!(x.order(), 2);
        assert!(x.is_in_dn());
        let e1 = SignedPermutation::flip(SignVector::unit(2, 0));
        assert!(!e1.is_in_dn());
        // +1 <-> -1, i.e. points 0 and 2 with n = 2
        assert_eq!(e1.to_degree_2n(), Permutation::parse(4, "(1 3)").unwrap());
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let a = SignedPermutation::identity(3);
        let b = SignedPermutation::identity(4);
        assert!(matches!(a.multiply(&b), Err(Error::Structural(_))));
        assert!(SignedPermutation::new(Permutation::identity(3), SignVector::zeros(2)).is_err());
    }

    #[test]
    fn b3_embedding_is_injective_and_dn_is_half() {
        for n in 2..=4 {
            let all = all_of_bn(n);
            let images: HashSet<_> = all.iter().map(|x| x.to_degree_2n()).collect();
            assert_eq!(images.len(), all.len());
            let dn = all.iter().filter(|x| x.is_in_dn()).count();
            assert_eq!(dn * 2, all.len());
            if n == 3 {
                assert_eq!(all.len(), 48);
            }
        }
    }

    #[test]
    fn homomorphism_on_exhaustive_b3() {
        let all = all_of_bn(3);
        for x in &all {
            for y in &all {
                let lhs = x.then(y).to_degree_2n();
                let rhs = x.to_degree_2n().then(&y.to_degree_2n());
                assert_eq!(lhs, rhs, "x = {x}, y = {y}");
            }
        }
    }

    /// The other coordinate convention, `(τ⁻¹(b))_i = b_{τ(i)}`, is not even
    /// associative under left-to-right composition.
    #[test]
    fn rejected_coordinate_action_breaks_the_oracle() {
        fn pulled_back(b: SignVector, tau: &Permutation) -> SignVector {
            let mut out = SignVector::zeros(b.len());
            for i in 0..b.len() {
                out.set(i, b.get(tau.apply(i)));
            }
            out
        }
        fn alt_mul(x: &SignedPermutation, y: &SignedPermutation) -> SignedPermutation {
            SignedPermutation::new(x.perm().then(y.perm()), pulled_back(x.signs(), y.perm()) + y.signs()).unwrap()
        }
        let all = all_of_bn(3);
        let violations = all
            .iter()
            .flat_map(|x| all.iter().map(move |y| (x, y)))
            .filter(|(x, y)| {
                // compare against the faithful action via the unique decoding
                let prod = x.to_degree_2n().then(&y.to_degree_2n());
                SignedPermutation::from_degree_2n(&prod).unwrap() != alt_mul(x, y)
            })
            .count();
        assert!(violations > 0);
    }

    #[test]
    fn degree_2n_round_trip_and_rejection() {
        let x = SignedPermutation::parse("[(1 2 4) | 0110]").unwrap();
        assert_eq!(SignedPermutation::from_degree_2n(&x.to_degree_2n()).unwrap(), x);
        assert!(SignedPermutation::from_degree_2n(&Permutation::parse(4, "(1 2)").unwrap()).is_err());
    }

    #[test]
    fn text_form() {
        let x = SignedPermutation::parse("[(1 2) | 1100]").unwrap();
        assert_eq!(x.to_string(), "[(1 2) | 1100]");
        assert_eq!(x.rank(), 4);
        assert!(SignedPermutation::parse("(1 2) | 11").is_err());
        assert!(SignedPermutation::parse("[(1 2) | 1a]").is_err());
        assert!(SignedPermutation::parse("[(1 5) | 1100]").is_err());
    }

    #[test]
    fn pushed_forward_moves_digits() {
        let tau = Permutation::parse(4, "(1 2 3)").unwrap();
        let b = SignVector::unit(4, 0);
        assert_eq!(b.pushed_forward(&tau), SignVector::unit(4, 1));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        #[test]
        fn multiply_matches_degree_2n_oracle(x in signed_strategy(7), y in signed_strategy(7)) {
            prop_assert_eq!(x.then(&y).to_degree_2n(), x.to_degree_2n().then(&y.to_degree_2n()));
        }

        #[test]
        fn associativity(x in signed_strategy(6), y in signed_strategy(6), z in signed_strategy(6)) {
            prop_assert_eq!(x.then(&y).then(&z), x.then(&y.then(&z)));
        }

        #[test]
        fn pi_and_parity_are_multiplicative(x in signed_strategy(6), y in signed_strategy(6)) {
            let xy = x.then(&y);
            prop_assert_eq!(xy.pi(), &x.pi().then(y.pi()));
            prop_assert_eq!(xy.is_in_dn(), x.is_in_dn() == y.is_in_dn());
            prop_assert_eq!(
                (x.signs() + y.signs()).is_even(),
                x.signs().is_even() == y.signs().is_even()
            );
        }

        #[test]
        fn signed_order_matches_image(x in signed_strategy(8)) {
            prop_assert_eq!(x.order(), x.to_degree_2n().order());
            prop_assert!(x.pow(x.order()).is_identity());
        }
    }
}
