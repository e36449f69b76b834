//! Codeword enumeration over the message space.
//!
//! Messages are visited in odometer order (digit 0 fastest). Moving to the
//! next message adds one generator row per touched digit, so the walk never
//! materializes more than the current codeword. The message space splits
//! into disjoint index ranges that rayon workers consume independently;
//! every reduction built on top is an exact sum, so results do not depend
//! on the worker count.

use std::ops::Range;

use rayon::prelude::*;

use super::LinearCode;
use crate::designs::BlockMultiset;
use crate::error::Result;
use crate::subset::PointSet;

/// Messages per parallel work item (at least).
const MIN_CHUNK: u64 = 1 << 13;
const MAX_CHUNKS: u64 = 512;

/// A codeword with its support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codeword {
    pub entries: Vec<u32>,
    pub support: PointSet,
}

impl Codeword {
    pub fn weight(&self) -> usize {
        self.support.len()
    }
}

/// Odometer state for one range of the message space.
struct Walker<'a> {
    code: &'a LinearCode,
    digits: Vec<u32>,
    // Unused for binary codes, where the support mask is the codeword.
    entries: Vec<u32>,
    support: u64,
    binary: bool,
}

impl<'a> Walker<'a> {
    fn at(code: &'a LinearCode, index: u64) -> Self {
        let q = code.field().order();
        let k = code.dimension();
        let mut digits = vec![0u32; k];
        let mut r = index;
        for d in &mut digits {
            *d = (r % q as u64) as u32;
            r /= q as u64;
        }
        let binary = q == 2;
        let mut w = Walker {
            code,
            digits: vec![0; k],
            entries: if binary { Vec::new() } else { vec![0; code.len()] },
            support: 0,
            binary,
        };
        for (j, &d) in digits.iter().enumerate() {
            for _ in 0..d {
                w.add_row(j);
            }
        }
        w.digits = digits;
        w
    }

    #[inline]
    fn add_row(&mut self, j: usize) {
        if self.binary {
            self.support ^= self.code.row_masks[j];
            return;
        }
        let f = self.code.field();
        let row = &self.code.rows[j];
        for &c in &self.code.row_positions[j] {
            let e = f.add(self.entries[c], row[c]);
            self.entries[c] = e;
            if e == 0 {
                self.support &= !(1u64 << c);
            } else {
                self.support |= 1u64 << c;
            }
        }
    }

    /// Steps to the next message. Must not be called on the last one.
    #[inline]
    fn advance(&mut self) {
        let q = self.code.field().order();
        let mut j = 0;
        loop {
            self.add_row(j);
            self.digits[j] += 1;
            if self.digits[j] < q {
                return;
            }
            // q additions of row j cancel, carry into the next digit
            self.digits[j] = 0;
            j += 1;
        }
    }

    fn codeword(&self) -> Codeword {
        let entries = if self.binary {
            (0..self.code.len())
                .map(|i| (self.support >> i & 1) as u32)
                .collect()
        } else {
            self.entries.clone()
        };
        Codeword {
            entries,
            support: PointSet::from_mask(self.support),
        }
    }
}

/// Iterator over the codewords of one message range, in odometer order.
pub struct CodewordIter<'a> {
    walker: Walker<'a>,
    remaining: u64,
    fresh: bool,
}

impl Iterator for CodewordIter<'_> {
    type Item = Codeword;

    fn next(&mut self) -> Option<Codeword> {
        if self.remaining == 0 {
            return None;
        }
        if self.fresh {
            self.fresh = false;
        } else {
            self.walker.advance();
        }
        self.remaining -= 1;
        Some(self.walker.codeword())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining as usize, Some(self.remaining as usize))
    }
}

impl LinearCode {
    /// Every codeword, once each; fails with `CapExceeded` above the cap.
    pub fn codewords(&self) -> Result<CodewordIter<'_>> {
        let total = self.check_cap()?;
        Ok(self.codewords_in(0..total))
    }

    /// Codewords of the messages with index in `range` (clamped to `q^k`).
    pub fn codewords_in(&self, range: Range<u64>) -> CodewordIter<'_> {
        let total = u64::try_from(self.size()).unwrap_or(u64::MAX);
        let end = range.end.min(total);
        let start = range.start.min(end);
        CodewordIter {
            walker: Walker::at(self, start),
            remaining: end - start,
            fresh: true,
        }
    }

    /// Calls `f` with the support of every codeword of the messages in
    /// `range`, without building codeword vectors.
    pub fn for_each_support_in(&self, range: Range<u64>, mut f: impl FnMut(PointSet)) {
        let total = u64::try_from(self.size()).unwrap_or(u64::MAX);
        let end = range.end.min(total);
        let start = range.start.min(end);
        if start == end {
            return;
        }
        let mut w = Walker::at(self, start);
        f(PointSet::from_mask(w.support));
        for _ in start + 1..end {
            w.advance();
            f(PointSet::from_mask(w.support));
        }
    }

    /// Disjoint message ranges covering the whole space.
    pub fn partition(&self) -> Result<Vec<Range<u64>>> {
        let total = self.check_cap()?;
        let chunk = (total / MAX_CHUNKS).max(MIN_CHUNK);
        Ok((0..total)
            .step_by(chunk as usize)
            .map(|s| s..(s + chunk).min(total))
            .collect())
    }

    /// Parallel fold over all codeword supports. `merge` must be associative
    /// and commutative for the result to be deterministic.
    pub fn fold_supports<T, I, F, M>(&self, identity: I, fold: F, merge: M) -> Result<T>
    where
        T: Send,
        I: Fn() -> T + Sync + Send,
        F: Fn(&mut T, PointSet) + Sync + Send,
        M: Fn(T, T) -> T + Sync + Send,
    {
        let ranges = self.partition()?;
        Ok(ranges
            .into_par_iter()
            .map(|r| {
                let mut acc = identity();
                self.for_each_support_in(r, |s| fold(&mut acc, s));
                acc
            })
            .reduce(&identity, &merge))
    }

    /// `A_w` for `w = 0..=n`.
    pub fn weight_distribution(&self) -> Result<Vec<u64>> {
        let n = self.len();
        self.fold_supports(
            || vec![0u64; n + 1],
            |acc, s| acc[s.len()] += 1,
            add_vectors,
        )
    }

    /// Supports of all weight-`ell` codewords, with multiplicity.
    pub fn shell(&self, ell: usize) -> Result<BlockMultiset> {
        let blocks = self.fold_supports(
            Vec::new,
            |acc, s| {
                if s.len() == ell {
                    acc.push(s)
                }
            },
            |mut a, mut b| {
                a.append(&mut b);
                a
            },
        )?;
        Ok(BlockMultiset::from_blocks(self.len(), ell, blocks))
    }

    /// All supports, bucketed by weight, from a single enumeration.
    pub fn shell_index(&self) -> Result<ShellIndex> {
        let n = self.len();
        let buckets = self.fold_supports(
            || vec![Vec::new(); n + 1],
            |acc: &mut Vec<Vec<PointSet>>, s| acc[s.len()].push(s),
            |mut a, b| {
                for (x, mut y) in a.iter_mut().zip(b) {
                    x.append(&mut y);
                }
                a
            },
        )?;
        Ok(ShellIndex { n, buckets })
    }
}

pub(crate) fn add_vectors(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// Every codeword support of a code, grouped by weight.
#[derive(Clone, Debug)]
pub struct ShellIndex {
    n: usize,
    buckets: Vec<Vec<PointSet>>,
}

impl ShellIndex {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Supports of weight `ell` (unsorted, with multiplicity).
    pub fn supports(&self, ell: usize) -> &[PointSet] {
        self.buckets.get(ell).map_or(&[], |b| b.as_slice())
    }

    pub fn weight_distribution(&self) -> Vec<u64> {
        self.buckets.iter().map(|b| b.len() as u64).collect()
    }

    pub fn shell(&self, ell: usize) -> BlockMultiset {
        BlockMultiset::from_blocks(self.n, ell, self.supports(ell).to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::super::build_code;
    use super::*;
    use crate::groups::Permutation;
    use std::collections::HashSet;

    #[test]
    fn enumeration_visits_every_codeword_once() {
        let c = build_code(13, 3, 5).unwrap();
        let words: Vec<Codeword> = c.codewords().unwrap().collect();
        assert_eq!(words.len(), 1_953_125);
        assert_eq!(words[0].weight(), 0);
        assert!(words[0].entries.iter().all(|&x| x == 0));
        let distinct: HashSet<&Vec<u32>> = words.iter().map(|w| &w.entries).collect();
        assert_eq!(distinct.len(), words.len());
        for w in words.iter().step_by(9973) {
            assert!(c.contains(&w.entries));
            assert_eq!(w.support.len(), w.entries.iter().filter(|&&x| x != 0).count());
        }
    }

    #[test]
    fn ranges_concatenate_to_the_full_stream() {
        let c = build_code(7, 2, 2).unwrap();
        let all: Vec<Codeword> = c.codewords().unwrap().collect();
        assert_eq!(all.len(), 16);
        let mut pieces = Vec::new();
        for r in [0..5, 5..11, 11..16] {
            pieces.extend(c.codewords_in(r));
        }
        assert_eq!(all, pieces);
        // message i encodes to the i-th codeword
        for (i, w) in all.iter().enumerate() {
            let msg: Vec<u32> = (0..4).map(|j| (i >> j & 1) as u32).collect();
            assert_eq!(w.entries, c.encode(&msg));
        }
    }

    #[test]
    fn range_start_mid_carry_matches_encoding() {
        let c = build_code(13, 3, 5).unwrap();
        let start = 5u64.pow(4) * 3 + 124;
        for (offset, w) in c.codewords_in(start..start + 40).enumerate() {
            let mut r = start + offset as u64;
            let msg: Vec<u32> = (0..9)
                .map(|_| {
                    let d = (r % 5) as u32;
                    r /= 5;
                    d
                })
                .collect();
            assert_eq!(w.entries, c.encode(&msg));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let c = build_code(31, 3, 2).unwrap().with_cap(1 << 20);
        let err = c.weight_distribution().unwrap_err();
        assert_eq!(
            err,
            crate::Error::CapExceeded {
                required: 1 << 21,
                cap: 1 << 20
            }
        );
        assert!(c.codewords().is_err());
    }

    #[test]
    fn weight_distribution_sums_to_size() {
        for (p, m, q) in [(7, 2, 2), (31, 3, 2), (13, 3, 5)] {
            let c = build_code(p, m, q).unwrap();
            let a = c.weight_distribution().unwrap();
            assert_eq!(a[0], 1);
            assert_eq!(a.iter().sum::<u64>() as u128, c.size());
        }
        // Hamming [7,4]: 1 + 7y^3 + 7y^4 + y^7
        let a = build_code(7, 2, 2).unwrap().weight_distribution().unwrap();
        assert_eq!(a, vec![1, 0, 0, 7, 7, 0, 0, 1]);
    }

    #[test]
    fn weight_distribution_is_permutation_invariant() {
        let c = build_code(13, 3, 5).unwrap();
        let perm = Permutation::new(vec![3, 1, 4, 0, 5, 9, 2, 6, 8, 7, 12, 10, 11]).unwrap();
        assert_eq!(
            c.weight_distribution().unwrap(),
            c.permute(&perm).weight_distribution().unwrap()
        );
    }

    #[test]
    fn shells() {
        let c = build_code(13, 3, 5).unwrap();
        let s = c.shell(4).unwrap();
        assert_eq!(s.block_count(), 364);
        assert!(s.blocks().iter().all(|&(_, mult)| mult % 4 == 0));
        let s0 = c.shell(0).unwrap();
        assert_eq!(s0.blocks(), &[(PointSet::EMPTY, 1)]);
        let index = c.shell_index().unwrap();
        assert_eq!(index.weight_distribution(), c.weight_distribution().unwrap());
        assert_eq!(index.shell(4), s);
    }

    #[test]
    fn cyclic_closure_on_sampled_codewords() {
        let c = build_code(31, 3, 2).unwrap();
        let shift = Permutation::shift(31, 1);
        for w in c.codewords().unwrap().step_by(2097) {
            let mut shifted = vec![0u32; 31];
            for (i, &x) in w.entries.iter().enumerate() {
                shifted[shift.apply(i)] = x;
            }
            assert!(c.contains(&shifted));
        }
    }
}
