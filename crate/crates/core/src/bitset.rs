//! Fixed-size bitset over element encodings. Cap checks perform millions of
//! membership probes, so subgroups and candidate unions are materialized as
//! explicit bitsets rather than tested through exponent arithmetic.

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Bitset {
    words: Vec<u64>,
    len: usize,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Bitset {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_indices(len: usize, indices: &[u32]) -> Self {
        let mut b = Bitset::new(len);
        for &i in indices {
            b.set(i as usize);
        }
        b
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] |= 1u64 << (i & 63);
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i >> 6] & (1u64 << (i & 63)) != 0
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// True if no bit is set in both sets.
    pub fn is_disjoint(&self, other: &Bitset) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & b == 0)
    }

    pub fn union_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_count() {
        let mut b = Bitset::new(100);
        assert!(!b.get(63));
        b.set(63);
        b.set(64);
        b.set(0);
        assert!(b.get(63) && b.get(64) && b.get(0));
        assert_eq!(b.count_ones(), 3);
    }

    #[test]
    fn disjoint_and_union() {
        let a = Bitset::from_indices(80, &[1, 5, 9]);
        let b = Bitset::from_indices(80, &[2, 6, 10]);
        assert!(a.is_disjoint(&b));
        let mut u = a.clone();
        u.union_with(&b);
        assert_eq!(u.count_ones(), 6);
        assert!(!u.is_disjoint(&a));
    }
}
