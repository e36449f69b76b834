//! Block multisets and `t`-design verification by direct incidence counting.
//!
//! Repeated blocks are kept with their multiplicity throughout: a shell of
//! an `F_q` code with `q > 2` repeats every support `q - 1` times (scalar
//! multiples), and the design parameters count those repeats.

mod format;

use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groups::{conjugating_permutation, Permutation};
use crate::prcode::{build_code, ShellIndex};
use crate::subset::{binomial, check_points, for_each_subset_of, KSubsets, PointSet, SubsetIndexer};

pub use format::{parse_table_csv, table_to_csv, TABLE_CSV_HEADER};

const BLOCK_CHUNK: usize = 1 << 12;

/// A multiset of blocks on the points `0..v`, kept sorted with merged
/// multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMultiset {
    v: usize,
    block_size: Option<usize>,
    uniform: bool,
    blocks: Vec<(PointSet, u64)>,
}

impl BlockMultiset {
    /// Blocks that all have size `h`, each counted once per occurrence.
    pub fn from_blocks(v: usize, h: usize, mut blocks: Vec<PointSet>) -> Self {
        debug_assert!(blocks.iter().all(|b| b.len() == h && b.bound() <= v));
        blocks.sort_unstable();
        let mut merged: Vec<(PointSet, u64)> = Vec::new();
        for b in blocks {
            match merged.last_mut() {
                Some((last, mult)) if *last == b => *mult += 1,
                _ => merged.push((b, 1)),
            }
        }
        BlockMultiset {
            v,
            block_size: Some(h),
            uniform: true,
            blocks: merged,
        }
    }

    /// General constructor; validates points and multiplicities.
    pub fn from_weighted(
        v: usize,
        declared_size: Option<usize>,
        blocks: impl IntoIterator<Item = (PointSet, u64)>,
    ) -> Result<Self> {
        check_points(v)?;
        let mut all: Vec<(PointSet, u64)> = Vec::new();
        for (b, mult) in blocks {
            if b.bound() > v {
                return Err(Error::invalid(format!("block {b} has points outside 0..{v}")));
            }
            if mult == 0 {
                return Err(Error::invalid("block multiplicity must be positive"));
            }
            all.push((b, mult));
        }
        all.sort_unstable_by_key(|&(b, _)| b);
        let mut merged: Vec<(PointSet, u64)> = Vec::with_capacity(all.len());
        for (b, mult) in all {
            match merged.last_mut() {
                Some((last, m)) if *last == b => {
                    *m = m
                        .checked_add(mult)
                        .ok_or_else(|| Error::invalid("multiplicity overflow"))?
                }
                _ => merged.push((b, mult)),
            }
        }
        let first = merged.first().map(|(b, _)| b.len());
        let uniform = merged.iter().all(|(b, _)| Some(b.len()) == first);
        let block_size = match (first, declared_size) {
            (Some(h), Some(d)) if h != d => {
                return Err(Error::invalid(format!("blocks have size {h}, declared {d}")))
            }
            (Some(h), _) if uniform => Some(h),
            (Some(_), _) => None,
            (None, d) => d,
        };
        Ok(BlockMultiset {
            v,
            block_size,
            uniform,
            blocks: merged,
        })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    /// Common block size; `None` for mixed sizes or an empty multiset with
    /// no declared size.
    pub fn block_size(&self) -> Option<usize> {
        self.block_size
    }

    pub fn is_uniform(&self) -> bool {
        self.uniform
    }

    /// Distinct blocks with multiplicities, sorted.
    pub fn blocks(&self) -> &[(PointSet, u64)] {
        &self.blocks
    }

    /// Number of blocks counted with multiplicity.
    pub fn block_count(&self) -> u64 {
        self.blocks.iter().map(|&(_, m)| m).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn multiplicity(&self, b: PointSet) -> u64 {
        self.blocks
            .binary_search_by_key(&b, |&(x, _)| x)
            .map_or(0, |i| self.blocks[i].1)
    }

    /// Multiset sum.
    pub fn union(&self, other: &BlockMultiset) -> Result<BlockMultiset> {
        if self.v != other.v {
            return Err(Error::invalid("point sets differ"));
        }
        let declared = self.block_size.or(other.block_size);
        BlockMultiset::from_weighted(
            self.v,
            declared,
            self.blocks.iter().chain(&other.blocks).copied(),
        )
    }

    /// `B^π = {π(b) : b ∈ B}`.
    pub fn permute(&self, perm: &Permutation) -> BlockMultiset {
        assert_eq!(perm.degree(), self.v);
        let mut blocks: Vec<(PointSet, u64)> = self
            .blocks
            .iter()
            .map(|&(b, m)| (perm.apply_set(b), m))
            .collect();
        blocks.sort_unstable_by_key(|&(b, _)| b);
        BlockMultiset {
            v: self.v,
            block_size: self.block_size,
            uniform: self.uniform,
            blocks,
        }
    }

    /// For every `t`-subset (addressed by [`SubsetIndexer::rank`]), the total
    /// multiplicity of blocks containing it.
    pub fn incidence_counts(&self, indexer: &SubsetIndexer) -> Vec<u64> {
        let t = indexer.k();
        let n = indexer.count();
        self.blocks
            .par_chunks(BLOCK_CHUNK)
            .map(|chunk| {
                let mut counts = vec![0u64; n];
                for &(b, mult) in chunk {
                    add_incidences(&mut counts, indexer, t, b, mult);
                }
                counts
            })
            .reduce(|| vec![0u64; n], crate::prcode::add_vectors)
    }
}

fn add_incidences(counts: &mut [u64], indexer: &SubsetIndexer, t: usize, b: PointSet, mult: u64) {
    match t {
        0 => counts[0] += mult,
        1 => {
            for x in b.iter() {
                counts[x] += mult;
            }
        }
        2 => {
            // colex rank of {i < j} is i + j(j-1)/2
            let mut pts = [0usize; 64];
            let mut len = 0;
            for x in b.iter() {
                pts[len] = x;
                len += 1;
            }
            for jj in 1..len {
                let j = pts[jj];
                let base = j * (j - 1) / 2;
                for &i in &pts[..jj] {
                    counts[base + i] += mult;
                }
            }
        }
        _ => for_each_subset_of(b, t, |z| counts[indexer.rank(z)] += mult),
    }
}

/// Outcome of a `t`-design check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignReport {
    pub t: usize,
    pub v: usize,
    pub block_size: Option<usize>,
    pub is_design: bool,
    pub lambda: Option<u64>,
    /// Blocks counted with multiplicity.
    pub block_count: u64,
    pub min_count: u64,
    pub max_count: u64,
    /// Lexicographically first `t`-subset achieving `min_count`, when the
    /// counts are not constant.
    pub witness: Option<PointSet>,
}

impl DesignReport {
    pub fn non_empty(&self) -> bool {
        self.block_count > 0
    }
}

/// Counts, for every `t`-subset, the blocks containing it.
pub fn check_design(blocks: &BlockMultiset, t: usize) -> Result<DesignReport> {
    if !blocks.is_uniform() {
        return Err(Error::NonUniformBlocks);
    }
    if let Some(h) = blocks.block_size() {
        if h < t && !blocks.is_empty() {
            return Err(Error::BlockSmallerThanT { size: h, t });
        }
    }
    let v = blocks.v();
    if t > v {
        return Err(Error::invalid(format!("t = {t} exceeds v = {v}")));
    }
    let indexer = SubsetIndexer::new(v, t)?;
    let counts = blocks.incidence_counts(&indexer);
    let min_count = counts.iter().copied().min().unwrap_or(0);
    let max_count = counts.iter().copied().max().unwrap_or(0);
    let is_design = min_count == max_count;
    let witness = if is_design {
        None
    } else {
        KSubsets::new(v, t).find(|&z| counts[indexer.rank(z)] == min_count)
    };
    Ok(DesignReport {
        t,
        v,
        block_size: blocks.block_size(),
        is_design,
        lambda: is_design.then_some(min_count),
        block_count: blocks.block_count(),
        min_count,
        max_count,
        witness,
    })
}

/// Multiset union of `σ^i(B)` for `i < s`, `B` the given supports.
pub fn conjugate_union(
    v: usize,
    ell: usize,
    supports: &[PointSet],
    sigma: &Permutation,
    s: usize,
) -> BlockMultiset {
    let mut all = Vec::with_capacity(supports.len() * s);
    let mut power = Permutation::identity(v);
    for _ in 0..s {
        all.extend(supports.iter().map(|&b| power.apply_set(b)));
        power = sigma.compose(&power);
    }
    BlockMultiset::from_blocks(v, ell, all)
}

/// `C_ℓ ∪ C_ℓ^σ ∪ … ∪ C_ℓ^{σ^{m-1}}` for `C = PR_q^m(p)` and `σ = τ_g`.
pub fn shells_union(p: u32, m: u32, q: u32, ell: usize) -> Result<BlockMultiset> {
    let code = build_code(p, m, q)?;
    let sigma = conjugating_permutation(p, m)?;
    let shell = code.shell(ell)?;
    let supports: Vec<PointSet> = shell
        .blocks()
        .iter()
        .flat_map(|&(b, mult)| std::iter::repeat(b).take(mult as usize))
        .collect();
    Ok(conjugate_union(p as usize, ell, &supports, &sigma, m as usize))
}

/// One row of a design table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub ell: usize,
    pub lambda: Option<u64>,
    pub block_count: u64,
    pub is_design: bool,
}

impl TableRow {
    pub fn non_empty(&self) -> bool {
        self.block_count > 0
    }
}

/// Shell-union design parameters of `PR_q^m(p)` for every `ℓ` in range,
/// from one enumeration of the code.
pub fn reproduce_table(
    p: u32,
    m: u32,
    q: u32,
    ells: RangeInclusive<usize>,
    t: usize,
) -> Result<Vec<TableRow>> {
    let code = build_code(p, m, q)?;
    let sigma = conjugating_permutation(p, m)?;
    let index = code.shell_index()?;
    table_from_index(&index, &sigma, m as usize, ells, t)
}

/// Same as [`reproduce_table`] on an existing support index.
pub fn table_from_index(
    index: &ShellIndex,
    sigma: &Permutation,
    s: usize,
    ells: RangeInclusive<usize>,
    t: usize,
) -> Result<Vec<TableRow>> {
    let v = index.len();
    ells.map(|ell| {
        let union = conjugate_union(v, ell, index.supports(ell), sigma, s);
        if union.is_empty() {
            return Ok(TableRow {
                ell,
                lambda: None,
                block_count: 0,
                is_design: true,
            });
        }
        let report = check_design(&union, t)?;
        Ok(TableRow {
            ell,
            lambda: report.lambda,
            block_count: report.block_count,
            is_design: report.is_design,
        })
    })
    .collect()
}

/// `b · C(h, t) = λ · C(v, t)`.
pub fn double_counting_holds(report: &DesignReport) -> bool {
    match (report.lambda, report.block_size) {
        (Some(lambda), Some(h)) => {
            report.block_count as u128 * binomial(h, report.t)
                == lambda as u128 * binomial(report.v, report.t)
        }
        (Some(0), None) => report.block_count == 0,
        _ => false,
    }
}
