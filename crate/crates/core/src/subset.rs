//! Subsets of a small point set, stored as 64-bit masks.
//!
//! Every point set in this crate has at most [`MAX_POINTS`] points, which
//! covers every code length reachable under the enumeration cap. Subsets
//! order lexicographically by their sorted element tuples, so sorting a
//! collection of equal-size [`PointSet`]s yields the usual lex order.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported number of points (coordinates).
pub const MAX_POINTS: usize = 64;

/// A subset of `{0, …, 63}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PointSet(u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub const fn from_mask(mask: u64) -> Self {
        PointSet(mask)
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    /// Builds a set from points, rejecting points `>= v` and repeats.
    pub fn from_points(v: usize, points: &[usize]) -> Result<Self> {
        check_points(v)?;
        let mut mask = 0u64;
        for &x in points {
            if x >= v {
                return Err(Error::invalid(format!("point {x} outside 0..{v}")));
            }
            let bit = 1u64 << x;
            if mask & bit != 0 {
                return Err(Error::invalid(format!("point {x} repeated")));
            }
            mask |= bit;
        }
        Ok(PointSet(mask))
    }

    /// All of `{0, …, v-1}`.
    pub fn full(v: usize) -> Self {
        debug_assert!(v <= MAX_POINTS);
        if v == MAX_POINTS {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << v) - 1)
        }
    }

    pub fn singleton(x: usize) -> Self {
        PointSet(1u64 << x)
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, x: usize) -> bool {
        x < MAX_POINTS && self.0 >> x & 1 == 1
    }

    pub const fn is_subset_of(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn intersection(self, other: PointSet) -> PointSet {
        PointSet(self.0 & other.0)
    }

    pub const fn union(self, other: PointSet) -> PointSet {
        PointSet(self.0 | other.0)
    }

    pub const fn intersection_len(self, other: PointSet) -> usize {
        (self.0 & other.0).count_ones() as usize
    }

    pub fn insert(&mut self, x: usize) {
        self.0 |= 1u64 << x;
    }

    pub fn remove(&mut self, x: usize) {
        self.0 &= !(1u64 << x);
    }

    /// Largest element plus one, or 0 for the empty set.
    pub const fn bound(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> Points {
        Points(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Image of the set under a point map given as a lookup table.
    pub fn map(self, images: &[u32]) -> PointSet {
        let mut out = 0u64;
        for x in self.iter() {
            out |= 1u64 << images[x];
        }
        PointSet(out)
    }
}

impl Ord for PointSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // First position where the sorted tuples disagree is the lowest
        // differing bit d. The set holding d is smaller unless the other set
        // has nothing beyond d, in which case the other is a proper prefix.
        let d = diff.trailing_zeros();
        let self_holds = self.0 >> d & 1 == 1;
        let rest = if self_holds { other.0 } else { self.0 };
        let rest_continues = d < 63 && rest >> (d + 1) != 0;
        if self_holds == rest_continues {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for PointSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = PointSet::EMPTY;
        for x in iter {
            s.insert(x);
        }
        s
    }
}

/// Ascending iterator over the elements of a [`PointSet`].
#[derive(Clone)]
pub struct Points(u64);

impl Iterator for Points {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Points {}

pub(crate) fn check_points(v: usize) -> Result<()> {
    if v > MAX_POINTS {
        return Err(Error::invalid(format!(
            "{v} points exceed the supported maximum of {MAX_POINTS}"
        )));
    }
    Ok(())
}

/// Binomial coefficient, exact in `u128` for every argument used here.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// All `k`-subsets of `{0, …, v-1}` in lexicographic order.
#[derive(Clone)]
pub struct KSubsets {
    v: usize,
    idx: Vec<usize>,
    done: bool,
}

impl KSubsets {
    pub fn new(v: usize, k: usize) -> Self {
        debug_assert!(v <= MAX_POINTS);
        KSubsets {
            v,
            idx: (0..k).collect(),
            done: k > v,
        }
    }
}

impl Iterator for KSubsets {
    type Item = PointSet;

    fn next(&mut self) -> Option<PointSet> {
        if self.done {
            return None;
        }
        let current = self.idx.iter().copied().collect();
        let k = self.idx.len();
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.v - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(current)
    }
}

/// Bijection between the `k`-subsets of `{0, …, v-1}` and `0..C(v, k)`
/// (colexicographic rank).
#[derive(Clone, Debug)]
pub struct SubsetIndexer {
    v: usize,
    k: usize,
    // binom[n][j] = C(n, j) for j <= k
    binom: Vec<Vec<u64>>,
}

impl SubsetIndexer {
    pub fn new(v: usize, k: usize) -> Result<Self> {
        check_points(v)?;
        let count = binomial(v, k);
        if count > u64::MAX as u128 {
            return Err(Error::TooManySubsets {
                count,
                limit: u64::MAX as u128,
            });
        }
        let binom = (0..=v)
            .map(|n| (0..=k).map(|j| binomial(n, j) as u64).collect())
            .collect();
        Ok(SubsetIndexer { v, k, binom })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn count(&self) -> usize {
        self.binom[self.v][self.k] as usize
    }

    pub fn rank(&self, s: PointSet) -> usize {
        debug_assert_eq!(s.len(), self.k);
        let mut r = 0u64;
        for (j, x) in s.iter().enumerate() {
            r += self.binom[x][j + 1];
        }
        r as usize
    }

    pub fn unrank(&self, mut r: usize) -> PointSet {
        let mut s = PointSet::EMPTY;
        let mut x = self.v;
        for j in (1..=self.k).rev() {
            // largest x with C(x, j) <= r
            x -= 1;
            while self.binom[x][j] as usize > r {
                x -= 1;
            }
            s.insert(x);
            r -= self.binom[x][j] as usize;
        }
        s
    }
}

/// Calls `f` on every `k`-subset of `set`.
pub fn for_each_subset_of(set: PointSet, k: usize, mut f: impl FnMut(PointSet)) {
    let pts: Vec<usize> = set.iter().collect();
    if k > pts.len() {
        return;
    }
    if k == 0 {
        f(PointSet::EMPTY);
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(idx.iter().map(|&i| pts[i]).collect());
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < pts.len() - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ksubsets_are_lex_ordered_and_complete() {
        let all: Vec<PointSet> = KSubsets::new(6, 3).collect();
        assert_eq!(all.len(), 20);
        let tuples: Vec<Vec<usize>> = all.iter().map(|s| s.to_vec()).collect();
        let mut sorted = tuples.clone();
        sorted.sort();
        assert_eq!(tuples, sorted);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn ksubset_edge_sizes() {
        assert_eq!(KSubsets::new(4, 0).collect::<Vec<_>>(), vec![PointSet::EMPTY]);
        assert_eq!(KSubsets::new(3, 4).count(), 0);
        assert_eq!(KSubsets::new(3, 3).count(), 1);
    }

    #[test]
    fn indexer_is_a_bijection() {
        let ix = SubsetIndexer::new(9, 4).unwrap();
        let mut seen = vec![false; ix.count()];
        for s in KSubsets::new(9, 4) {
            let r = ix.rank(s);
            assert!(!seen[r]);
            seen[r] = true;
            assert_eq!(ix.unrank(r), s);
        }
        assert!(seen.into_iter().all(|b| b));
    }

    #[test]
    fn subsets_of_a_set() {
        let s = PointSet::from_points(10, &[1, 4, 7, 9]).unwrap();
        let mut got = Vec::new();
        for_each_subset_of(s, 2, |z| got.push(z.to_vec()));
        assert_eq!(
            got,
            vec![
                vec![1, 4],
                vec![1, 7],
                vec![1, 9],
                vec![4, 7],
                vec![4, 9],
                vec![7, 9]
            ]
        );
    }

    #[test]
    fn from_points_rejects_bad_input() {
        assert!(PointSet::from_points(5, &[5]).is_err());
        assert!(PointSet::from_points(5, &[1, 1]).is_err());
        assert!(PointSet::from_points(65, &[]).is_err());
    }

    proptest! {
        #[test]
        fn ord_matches_sorted_tuple_order(a in any::<u64>(), b in any::<u64>()) {
            let (x, y) = (PointSet::from_mask(a), PointSet::from_mask(b));
            prop_assert_eq!(x.cmp(&y), x.to_vec().cmp(&y.to_vec()));
        }
    }
}
