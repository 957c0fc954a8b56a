use std::fmt;

/// A set of valuation indices over a table of `width` symbols, stored as a
/// bitset of 2^width bits.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthSet {
    width: usize,
    words: Vec<u64>,
}

impl TruthSet {
    fn word_count(width: usize) -> usize {
        ((1usize << width) + 63) / 64
    }

    fn tail_mask(width: usize) -> u64 {
        let bits = 1usize << width;
        if bits % 64 == 0 {
            u64::MAX
        } else {
            (1u64 << (bits % 64)) - 1
        }
    }

    pub fn empty(width: usize) -> Self {
        Self { width, words: vec![0; Self::word_count(width)] }
    }

    pub fn full(width: usize) -> Self {
        let mut set = Self { width, words: vec![u64::MAX; Self::word_count(width)] };
        set.trim();
        set
    }

    /// Valuations in which symbol `i` is true.
    pub fn atom(width: usize, i: usize) -> Self {
        let shift = width - 1 - i;
        let mut set = Self::empty(width);
        for index in 0..(1usize << width) {
            if (index >> shift) & 1 == 1 {
                set.insert(index);
            }
        }
        set
    }

    pub fn from_indices(width: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(width);
        for i in indices {
            set.insert(i);
        }
        set
    }

    fn trim(&mut self) {
        if let Some(last) = self.words.last_mut() {
            *last &= Self::tail_mask(self.width);
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn insert(&mut self, index: usize) {
        assert!(index < (1usize << self.width), "valuation index {index} out of range");
        self.words[index / 64] |= 1 << (index % 64);
    }

    pub fn contains(&self, index: usize) -> bool {
        index < (1usize << self.width) && self.words[index / 64] >> (index % 64) & 1 == 1
    }

    pub fn complement(&self) -> Self {
        let mut out = Self { width: self.width, words: self.words.iter().map(|w| !w).collect() };
        out.trim();
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        debug_assert_eq!(self.width, other.width);
        Self { width: self.width, words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }

    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.width, other.width);
        Self { width: self.width, words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect() }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Member indices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + bit)
            })
        })
    }
}

impl fmt::Debug for TruthSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
