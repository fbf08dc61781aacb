//! Fixed-width bit sets over `u64` words, sized for vertex sets.

/// Number of 64-bit words needed to hold `nbits` bits.
#[inline]
pub(crate) const fn words_for(nbits: usize) -> usize {
    nbits.div_ceil(64)
}

/// A set of vertex indices backed by a `Vec<u64>`.
///
/// All sets touching the same graph share one width, so binary
/// operations assume equal word counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn empty(nbits: usize) -> Self {
        BitSet {
            words: vec![0; words_for(nbits)],
        }
    }

    pub fn full(nbits: usize) -> Self {
        let mut s = Self::empty(nbits);
        for i in 0..nbits {
            s.insert(i);
        }
        s
    }

    pub fn from_words(words: &[u64]) -> Self {
        BitSet {
            words: words.to_vec(),
        }
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1u64 << (i % 64));
    }

    #[inline]
    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Writes `self & other` into `out` without allocating.
    #[inline]
    pub fn intersect_into(&self, other: &[u64], out: &mut BitSet) {
        for ((o, a), b) in out.words.iter_mut().zip(&self.words).zip(other) {
            *o = a & b;
        }
    }

    /// `self &= !other`, in place.
    #[inline]
    pub fn subtract(&mut self, other: &[u64]) {
        for (a, b) in self.words.iter_mut().zip(other) {
            *a &= !b;
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Index of the lowest set bit, if any.
    pub fn first(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter(&self) -> BitIter<'_> {
        BitIter {
            words: &self.words,
            wi: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }
}

pub(crate) struct BitIter<'a> {
    words: &'a [u64],
    wi: usize,
    current: u64,
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.wi += 1;
            if self.wi >= self.words.len() {
                return None;
            }
            self.current = self.words[self.wi];
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.wi * 64 + bit)
    }
}
