//! Dense bitsets and binary relations over `0..n`.

use std::fmt;

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A subset of `0..len`, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    len: usize,
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(len: usize) -> Self {
        Self { len, words: vec![0; words_for(len)] }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn singleton(len: usize, i: usize) -> Self {
        let mut s = Self::empty(len);
        s.insert(i);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, it: I) -> Self {
        let mut s = Self::empty(len);
        for i in it {
            s.insert(i);
        }
        s
    }

    /// Builds the set whose members are the set bits of `mask` (requires `len <= 64`).
    pub fn from_mask(len: usize, mask: u64) -> Self {
        debug_assert!(len <= WORD);
        let mut s = Self::empty(len);
        if len > 0 {
            let keep = if len == WORD { u64::MAX } else { (1u64 << len) - 1 };
            s.words[0] = mask & keep;
        }
        s
    }

    /// Universe size.
    pub fn universe(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    /// Inserts `i`, returning true if it was absent.
    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.len, "element {i} out of range 0..{}", self.len);
        let w = &mut self.words[i / WORD];
        let bit = 1u64 << (i % WORD);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        if i < self.len {
            self.words[i / WORD] &= !(1u64 << (i % WORD));
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD + t)
                }
            })
        })
    }

    /// In-place union; returns true if `self` grew.
    pub fn union_with(&mut self, other: &ElementSet) -> bool {
        let mut grew = false;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            let next = *a | *b;
            grew |= next != *a;
            *a = next;
        }
        grew
    }

    pub fn intersect_with(&mut self, other: &ElementSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn difference_with(&mut self, other: &ElementSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !*b;
        }
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn complement(&self) -> ElementSet {
        let mut s = ElementSet::full(self.len);
        s.difference_with(self);
        s
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// The set as a bitmask (requires `len <= 64`).
    pub fn mask(&self) -> u64 {
        debug_assert!(self.len <= WORD);
        self.words.first().copied().unwrap_or(0)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A binary relation on `0..n`, stored row-wise: row `a` is `{b : (a, b) ∈ R}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    rows: Vec<ElementSet>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Self { n, rows: vec![ElementSet::empty(n); n] }
    }

    pub fn full(n: usize) -> Self {
        Self { n, rows: vec![ElementSet::full(n); n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Self::empty(n);
        for i in 0..n {
            r.insert(i, i);
        }
        r
    }

    /// Builds a relation from pairs; `None` if some index is out of range.
    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(n: usize, pairs: I) -> Option<Self> {
        let mut r = Self::empty(n);
        for (a, b) in pairs {
            if a >= n || b >= n {
                return None;
            }
            r.insert(a, b);
        }
        Some(r)
    }

    /// Relation encoded by the low `n*n` bits of `code`, bit `a*n + b` meaning `(a, b)`.
    pub fn from_code(n: usize, code: u64) -> Self {
        assert!(n * n <= 64);
        let mut r = Self::empty(n);
        for a in 0..n {
            for b in 0..n {
                if code >> (a * n + b) & 1 == 1 {
                    r.insert(a, b);
                }
            }
        }
        r
    }

    /// Inverse of [`Relation::from_code`].
    pub fn code(&self) -> u64 {
        assert!(self.n * self.n <= 64);
        let mut c = 0u64;
        for (a, b) in self.pairs() {
            c |= 1 << (a * self.n + b);
        }
        c
    }

    pub fn from_matrix(m: &[Vec<bool>]) -> Self {
        let n = m.len();
        let mut r = Self::empty(n);
        for (a, row) in m.iter().enumerate() {
            for (b, &v) in row.iter().enumerate() {
                if v {
                    r.insert(a, b);
                }
            }
        }
        r
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    #[inline]
    pub fn insert(&mut self, a: usize, b: usize) -> bool {
        self.rows[a].insert(b)
    }

    pub fn remove(&mut self, a: usize, b: usize) {
        self.rows[a].remove(b)
    }

    /// `R[a] = {b : a R b}`.
    #[inline]
    pub fn row(&self, a: usize) -> &ElementSet {
        &self.rows[a]
    }

    pub fn row_mut(&mut self, a: usize) -> &mut ElementSet {
        &mut self.rows[a]
    }

    /// Number of pairs.
    pub fn count(&self) -> usize {
        self.rows.iter().map(ElementSet::count).sum()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.iter().map(move |b| (a, b)))
    }

    pub fn transpose(&self) -> Relation {
        let mut t = Relation::empty(self.n);
        for (a, b) in self.pairs() {
            t.insert(b, a);
        }
        t
    }

    /// `{(a, c) : ∃b. a R b ∧ b S c}`.
    pub fn compose(&self, other: &Relation) -> Relation {
        let mut out = Relation::empty(self.n);
        for a in 0..self.n {
            let mut acc = ElementSet::empty(self.n);
            for b in self.rows[a].iter() {
                acc.union_with(&other.rows[b]);
            }
            out.rows[a] = acc;
        }
        out
    }

    /// `R[D] = ⋃_{d ∈ D} R[d]`.
    pub fn image(&self, d: &ElementSet) -> ElementSet {
        let mut acc = ElementSet::empty(self.n);
        for a in d.iter() {
            acc.union_with(&self.rows[a]);
        }
        acc
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    pub fn union_with(&mut self, other: &Relation) -> bool {
        let mut grew = false;
        for (a, b) in self.rows.iter_mut().zip(&other.rows) {
            grew |= a.union_with(b);
        }
        grew
    }

    pub fn intersect_with(&mut self, other: &Relation) {
        for (a, b) in self.rows.iter_mut().zip(&other.rows) {
            a.intersect_with(b);
        }
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

/// Searches for a bijection `f` on `0..n` with `a R_k b ⇔ f(a) S_k f(b)` for every paired
/// relation `(R_k, S_k)`. Returns the first such bijection in lexicographic order.
pub fn find_isomorphism(n: usize, pairs: &[(&Relation, &Relation)]) -> Option<Vec<usize>> {
    if pairs.iter().any(|(r, s)| r.size() != n || s.size() != n) {
        return None;
    }
    // Cheap invariant: per-element out/in degree signature must match.
    let sig = |rels: &mut dyn Iterator<Item = &Relation>, i: usize| -> Vec<(usize, usize, bool)> {
        rels.map(|r| {
            let out = r.row(i).count();
            let inn = (0..n).filter(|&j| r.contains(j, i)).count();
            (out, inn, r.contains(i, i))
        })
        .collect()
    };
    let sig_a: Vec<_> = (0..n).map(|i| sig(&mut pairs.iter().map(|p| p.0), i)).collect();
    let sig_b: Vec<_> = (0..n).map(|i| sig(&mut pairs.iter().map(|p| p.1), i)).collect();
    let mut f = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        i: usize,
        n: usize,
        pairs: &[(&Relation, &Relation)],
        sig_a: &[Vec<(usize, usize, bool)>],
        sig_b: &[Vec<(usize, usize, bool)>],
        f: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if i == n {
            return true;
        }
        for c in 0..n {
            if used[c] || sig_a[i] != sig_b[c] {
                continue;
            }
            let ok = (0..i).all(|j| {
                pairs.iter().all(|(r, s)| {
                    r.contains(i, j) == s.contains(c, f[j]) && r.contains(j, i) == s.contains(f[j], c)
                })
            });
            if !ok {
                continue;
            }
            f[i] = c;
            used[c] = true;
            if go(i + 1, n, pairs, sig_a, sig_b, f, used) {
                return true;
            }
            used[c] = false;
        }
        false
    }
    if go(0, n, pairs, &sig_a, &sig_b, &mut f, &mut used) {
        Some(f)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_basics() {
        let mut s = ElementSet::empty(130);
        assert!(s.insert(0));
        assert!(s.insert(129));
        assert!(!s.insert(129));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 129]);
        assert_eq!(s.count(), 2);
        let c = s.complement();
        assert_eq!(c.count(), 128);
        assert!(!c.intersects(&s));
    }

    #[test]
    fn code_roundtrip() {
        for code in [0u64, 1, 0xffff, 0x1234] {
            assert_eq!(Relation::from_code(4, code).code(), code);
        }
    }

    #[test]
    fn compose_and_transpose() {
        let r = Relation::from_pairs(3, [(0, 1), (1, 2)]).unwrap();
        let rr = r.compose(&r);
        assert_eq!(rr.pairs().collect::<Vec<_>>(), vec![(0, 2)]);
        assert_eq!(r.transpose().pairs().collect::<Vec<_>>(), vec![(1, 0), (2, 1)]);
    }

    #[test]
    fn iso_search() {
        let r = Relation::from_pairs(3, [(0, 1), (1, 2)]).unwrap();
        let s = Relation::from_pairs(3, [(2, 0), (0, 1)]).unwrap();
        let f = find_isomorphism(3, &[(&r, &s)]).unwrap();
        assert_eq!(f, vec![2, 0, 1]);
        let t = Relation::from_pairs(3, [(0, 1), (0, 2)]).unwrap();
        assert!(find_isomorphism(3, &[(&r, &t)]).is_none());
    }
}
