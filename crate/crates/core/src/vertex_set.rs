//! Fixed-width vertex bitsets.
//!
//! A [`VertexSet`] holds a subset of `0..width`. Sets of width at most 64
//! live inline without allocation, which covers every graph the exact
//! engines accept.

use std::fmt;

use smallvec::SmallVec;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    width: usize,
    words: SmallVec<[u64; 1]>,
}

/// The black set of a colored graph. A colored graph on a fixed labeled
/// graph is identified with its set of black vertices.
pub type ColorState = VertexSet;

fn word_count(width: usize) -> usize {
    width.div_ceil(WORD).max(1)
}

impl VertexSet {
    pub fn empty(width: usize) -> Self {
        VertexSet {
            width,
            words: SmallVec::from_elem(0, word_count(width)),
        }
    }

    pub fn full(width: usize) -> Self {
        let mut s = Self::empty(width);
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * WORD;
            let bits = width.saturating_sub(lo).min(WORD);
            *w = if bits == WORD {
                u64::MAX
            } else {
                (1u64 << bits) - 1
            };
        }
        s
    }

    pub fn singleton(width: usize, v: usize) -> Self {
        let mut s = Self::empty(width);
        s.insert(v);
        s
    }

    /// Panics if any index is `>= width`.
    pub fn from_indices<I: IntoIterator<Item = usize>>(width: usize, it: I) -> Self {
        let mut s = Self::empty(width);
        for v in it {
            s.insert(v);
        }
        s
    }

    /// Builds a set from the low `width` bits of `bits`.
    pub fn from_bits(width: usize, bits: u64) -> Self {
        let mut s = Self::empty(width);
        s.words[0] = bits;
        s.mask_tail();
        s
    }

    /// The set as a single word; `None` when `width > 64`.
    pub fn as_u64(&self) -> Option<u64> {
        (self.words.len() == 1).then(|| self.words[0])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.width && self.words[v / WORD] >> (v % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) -> bool {
        assert!(
            v < self.width,
            "vertex {v} out of range for width {}",
            self.width
        );
        let (w, b) = (v / WORD, v % WORD);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !was
    }

    #[inline]
    pub fn remove(&mut self, v: usize) -> bool {
        if v >= self.width {
            return false;
        }
        let (w, b) = (v / WORD, v % WORD);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] &= !(1 << b);
        was
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.width
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn complement(&self) -> VertexSet {
        let mut out = VertexSet {
            width: self.width,
            words: self.words.iter().map(|w| !w).collect(),
        };
        out.mask_tail();
        out
    }

    /// `|self ∩ other|` without materializing the intersection.
    #[inline]
    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// `|self \ other|` without materializing the difference.
    #[inline]
    pub fn difference_len(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & !b).count_ones() as usize)
            .sum()
    }

    /// Smallest element of `self \ other`.
    pub fn first_not_in(&self, other: &VertexSet) -> Option<usize> {
        self.words
            .iter()
            .zip(&other.words)
            .enumerate()
            .find_map(|(i, (a, b))| {
                let d = a & !b;
                (d != 0).then(|| i * WORD + d.trailing_zeros() as usize)
            })
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            idx: 0,
            cur: self.words[0],
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Lowercase hex of the set read as an integer with bit `i` = vertex `i`,
    /// zero-padded to `ceil(width / 4)` digits.
    pub fn to_hex(&self) -> String {
        let digits = self.width.div_ceil(4).max(1);
        let mut s = String::with_capacity(self.words.len() * 16);
        for w in self.words.iter().rev() {
            s.push_str(&format!("{w:016x}"));
        }
        s[s.len() - digits..].to_string()
    }

    /// Compares two sets as ascending vertex lists.
    pub fn lex_cmp(&self, other: &VertexSet) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }

    fn zip_with(&self, other: &VertexSet, f: impl Fn(u64, u64) -> u64) -> VertexSet {
        debug_assert_eq!(self.width, other.width);
        VertexSet {
            width: self.width,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    fn mask_tail(&mut self) {
        let rem = self.width % WORD;
        let last = word_count(self.width) - 1;
        if self.width == 0 {
            self.words[0] = 0;
        } else if rem != 0 {
            self.words[last] &= (1u64 << rem) - 1;
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD + b);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}
