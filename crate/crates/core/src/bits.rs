//! Fixed-capacity vertex bitsets used by every search kernel.

use std::fmt;

const WORD: usize = 64;

/// A set of vertex ids in `0..capacity`, stored one bit per vertex.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    words: Vec<u64>,
    capacity: usize,
}

impl VertexSet {
    pub fn new(capacity: usize) -> Self {
        Self {
            words: vec![0; capacity.div_ceil(WORD)],
            capacity,
        }
    }

    /// The set `{0, .., capacity - 1}`.
    pub fn full(capacity: usize) -> Self {
        let mut set = Self::new(capacity);
        for w in set.words.iter_mut() {
            *w = u64::MAX;
        }
        set.trim();
        set
    }

    pub fn from_iter_with_capacity<I: IntoIterator<Item = usize>>(capacity: usize, it: I) -> Self {
        let mut set = Self::new(capacity);
        for v in it {
            set.insert(v);
        }
        set
    }

    fn trim(&mut self) {
        let rem = self.capacity % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn capacity(&self) -> usize {
        self.capacity
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.capacity && self.words[v / WORD] >> (v % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        assert!(
            v < self.capacity,
            "vertex {v} out of range {}",
            self.capacity
        );
        self.words[v / WORD] |= 1 << (v % WORD);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        if v < self.capacity {
            self.words[v / WORD] &= !(1 << (v % WORD));
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !*b;
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Elements in increasing order.
    pub fn iter(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Elements strictly greater than `v`.
    pub fn above(&self, v: usize) -> VertexSet {
        let mut out = self.clone();
        let cut = v + 1;
        for (i, w) in out.words.iter_mut().enumerate() {
            let lo = i * WORD;
            if lo + WORD <= cut {
                *w = 0;
            } else if lo < cut {
                *w &= u64::MAX << (cut - lo);
            }
        }
        out
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let tz = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD + tz);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_respects_capacity() {
        let s = VertexSet::full(70);
        assert_eq!(s.len(), 70);
        assert!(s.contains(69));
        assert!(!s.contains(70));
    }

    #[test]
    fn above_cuts_across_words() {
        let s = VertexSet::full(130);
        let a = s.above(64);
        assert_eq!(a.first(), Some(65));
        assert_eq!(a.len(), 130 - 65);
        assert!(s.above(129).is_empty());
        assert_eq!(s.above(3).first(), Some(4));
    }

    #[test]
    fn iteration_is_sorted() {
        let s = VertexSet::from_iter_with_capacity(200, [150, 3, 64, 63, 199]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![3, 63, 64, 150, 199]);
    }
}
