//! Subspaces of `GF(2)^n`, `n ≤ 128`, spanned incrementally.

/// Echelon basis keyed by leading bit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Gf2Span {
    basis: Vec<u128>,
}

impl Gf2Span {
    pub fn new() -> Self {
        Self::default()
    }

    fn reduce(&self, mut v: u128) -> u128 {
        for &b in &self.basis {
            let lead = 127 - b.leading_zeros();
            if v >> lead & 1 == 1 {
                v ^= b;
            }
        }
        v
    }

    pub fn contains(&self, v: u128) -> bool {
        self.reduce(v) == 0
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: u128) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        let lead = 127 - r.leading_zeros();
        for b in &mut self.basis {
            if *b >> lead & 1 == 1 {
                *b ^= r;
            }
        }
        self.basis.push(r);
        self.basis.sort_unstable_by(|a, b| b.cmp(a));
        true
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[u128] {
        &self.basis
    }

    /// Every vector in the span has even weight.
    pub fn is_even_weight(&self) -> bool {
        self.basis.iter().all(|b| b.count_ones() % 2 == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_of_double_flips_is_even_subspace() {
        let n = 6;
        let mut span = Gf2Span::new();
        for i in 0..n - 1 {
            assert!(span.insert(0b11 << i));
        }
        assert_eq!(span.dim(), n - 1);
        assert!(span.is_even_weight());
        assert!(span.contains(0b100001));
        assert!(!span.contains(0b1));
        assert!(!span.insert(0b101));
        assert!(span.insert(0b1));
        assert_eq!(span.dim(), n);
    }

    #[test]
    fn brute_force_span_sizes() {
        // span size is 2^dim: compare with closure by XOR
        let vecs = [0b1011u128, 0b0110, 0b1101, 0b0001];
        let mut span = Gf2Span::new();
        let mut closure = std::collections::BTreeSet::from([0u128]);
        for &v in &vecs {
            span.insert(v);
            let snapshot: Vec<_> = closure.iter().copied().collect();
            for s in snapshot {
                closure.insert(s ^ v);
            }
            assert_eq!(closure.len(), 1 << span.dim());
            for &c in &closure {
                assert!(span.contains(c));
            }
        }
    }
}
