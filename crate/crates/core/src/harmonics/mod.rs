//! Harmonic analysis on the `k`-subsets of a point set.
//!
//! Functions on `X_k` are sparse maps to exact rationals. `γ` sends a
//! subset to the sum of its `(k-1)`-subsets, harmonic functions are its
//! kernel, and `f̃(u)` sums `f` over the `k`-subsets of `u`. A multiset of
//! blocks is a `t`-design exactly when `Σ_b f̃(b)` vanishes for every
//! harmonic `f` of degree `1..=t`; when a group acts by automorphisms the
//! group-invariant harmonics suffice.

mod enumerator;
mod format;
mod linalg;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::designs::BlockMultiset;
use crate::error::{Error, Result};
use crate::groups::{orbits_on_ksubsets, PermGroup, Permutation, MAX_ORBIT_SUBSETS};
use crate::subset::{binomial, check_points, for_each_subset_of, KSubsets, PointSet, SubsetIndexer};

pub use enumerator::{
    conjugate_vanishing_check, harmonic_weight_enumerator, harmonic_weight_enumerators, in_span,
    span_rank, VanishingReport, WeightEnumeratorVector,
};
pub use format::{format_rational, parse_rational};

/// Largest `C(v, k-1)` for which the projection onto `Harm_k` is built.
pub const MAX_PROJECTION_ROWS: u128 = 2048;

/// A function on the `k`-subsets of `{0, …, v-1}`; absent subsets map to 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetFunction {
    v: usize,
    k: usize,
    values: BTreeMap<PointSet, BigRational>,
}

impl SubsetFunction {
    pub fn zero(v: usize, k: usize) -> Result<Self> {
        check_points(v)?;
        if k > v {
            return Err(Error::invalid(format!("degree {k} exceeds {v} points")));
        }
        Ok(SubsetFunction {
            v,
            k,
            values: BTreeMap::new(),
        })
    }

    /// `1_z`.
    pub fn indicator(v: usize, z: PointSet) -> Result<Self> {
        let mut f = SubsetFunction::zero(v, z.len())?;
        f.set(z, BigRational::one())?;
        Ok(f)
    }

    /// The constant function 1 on `X_k`.
    pub fn uniform(v: usize, k: usize) -> Result<Self> {
        let mut f = SubsetFunction::zero(v, k)?;
        let count = binomial(v, k);
        if count > MAX_ORBIT_SUBSETS {
            return Err(Error::TooManySubsets {
                count,
                limit: MAX_ORBIT_SUBSETS,
            });
        }
        f.values = KSubsets::new(v, k).map(|z| (z, BigRational::one())).collect();
        Ok(f)
    }

    pub fn v(&self) -> usize {
        self.v
    }

    /// Degree (subset size).
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, z: PointSet) -> BigRational {
        self.values.get(&z).cloned().unwrap_or_else(BigRational::zero)
    }

    fn check_subset(&self, z: PointSet) -> Result<()> {
        if z.len() != self.k || z.bound() > self.v {
            return Err(Error::invalid(format!(
                "{z} is not a {}-subset of 0..{}",
                self.k, self.v
            )));
        }
        Ok(())
    }

    pub fn set(&mut self, z: PointSet, value: BigRational) -> Result<()> {
        self.check_subset(z)?;
        if value.is_zero() {
            self.values.remove(&z);
        } else {
            self.values.insert(z, value);
        }
        Ok(())
    }

    pub fn add_at(&mut self, z: PointSet, value: &BigRational) -> Result<()> {
        let sum = self.get(z) + value;
        self.set(z, sum)
    }

    /// Nonzero values in lexicographic subset order.
    pub fn iter(&self) -> impl Iterator<Item = (PointSet, &BigRational)> {
        self.values.iter().map(|(&z, x)| (z, x))
    }

    pub fn support_len(&self) -> usize {
        self.values.len()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    fn same_shape(&self, other: &SubsetFunction) -> Result<()> {
        if (self.v, self.k) != (other.v, other.k) {
            return Err(Error::invalid("functions on different subset spaces"));
        }
        Ok(())
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: &BigRational, other: &SubsetFunction, b: &BigRational) -> Result<Self> {
        self.same_shape(other)?;
        let mut out = self.scale(a);
        for (z, x) in other.iter() {
            out.add_at(z, &(x * b))?;
        }
        Ok(out)
    }

    pub fn add(&self, other: &SubsetFunction) -> Result<Self> {
        self.combine(&BigRational::one(), other, &BigRational::one())
    }

    pub fn sub(&self, other: &SubsetFunction) -> Result<Self> {
        self.combine(&BigRational::one(), other, &-BigRational::one())
    }

    pub fn scale(&self, a: &BigRational) -> Self {
        let values = if a.is_zero() {
            BTreeMap::new()
        } else {
            self.values.iter().map(|(&z, x)| (z, x * a)).collect()
        };
        SubsetFunction {
            v: self.v,
            k: self.k,
            values,
        }
    }

    /// `f^π` with `f^π(π(z)) = f(z)`.
    pub fn permute(&self, perm: &Permutation) -> Self {
        assert_eq!(perm.degree(), self.v, "permutation degree");
        SubsetFunction {
            v: self.v,
            k: self.k,
            values: self
                .values
                .iter()
                .map(|(&z, x)| (perm.apply_set(z), x.clone()))
                .collect(),
        }
    }

    pub fn is_invariant_under(&self, perm: &Permutation) -> bool {
        self.permute(perm) == *self
    }

    /// `⟨f, u⟩` for `u` given densely by subset rank.
    fn pair_with(&self, indexer: &SubsetIndexer, u: &[u64]) -> BigRational {
        self.iter()
            .map(|(z, x)| x * BigInt::from(u[indexer.rank(z)]))
            .sum()
    }
}

/// `γ(f)(y) = Σ_{z ⊃ y} f(z)`, a function of degree `k - 1`.
pub fn gamma(f: &SubsetFunction) -> Result<SubsetFunction> {
    if f.k == 0 {
        return Err(Error::DegreeZero);
    }
    let mut out = SubsetFunction::zero(f.v, f.k - 1)?;
    for (z, x) in f.iter() {
        for p in z.iter() {
            let mut y = z;
            y.remove(p);
            out.add_at(y, x)?;
        }
    }
    Ok(out)
}

/// `f̃(u) = Σ_{z ⊆ u, |z| = k} f(z)`; zero when `|u| < k`.
pub fn tilde_extend(f: &SubsetFunction, u: PointSet) -> BigRational {
    if u.len() < f.k {
        return BigRational::zero();
    }
    if (f.support_len() as u128) < binomial(u.len(), f.k) {
        f.iter()
            .filter(|(z, _)| z.is_subset_of(u))
            .map(|(_, x)| x.clone())
            .sum()
    } else {
        let mut acc = BigRational::zero();
        for_each_subset_of(u, f.k, |z| {
            if let Some(x) = f.values.get(&z) {
                acc += x;
            }
        });
        acc
    }
}

/// `R(T) = (1/|G|) Σ_{σ ∈ G} T^σ`, summed over the group elements.
pub fn reynolds_average(group: &PermGroup, t: PointSet) -> Result<SubsetFunction> {
    let mut counts: BTreeMap<PointSet, u64> = BTreeMap::new();
    let mut f = SubsetFunction::zero(group.degree(), t.len())?;
    f.check_subset(t)?;
    for e in group.elements() {
        *counts.entry(e.apply_set(t)).or_insert(0) += 1;
    }
    let order = BigInt::from(group.order());
    for (z, c) in counts {
        f.set(z, BigRational::new(c.into(), order.clone()))?;
    }
    Ok(f)
}

/// The symmetry a basis is invariant under.
#[derive(Clone, Copy, Debug)]
pub enum Symmetry<'a> {
    Group(&'a PermGroup),
    /// The full symmetric group on `v` points.
    Full(usize),
}

impl Symmetry<'_> {
    pub fn degree(&self) -> usize {
        match self {
            Symmetry::Group(g) => g.degree(),
            Symmetry::Full(v) => *v,
        }
    }
}

/// Basis of the invariant harmonic functions of one degree.
#[derive(Clone, Debug)]
pub struct HarmonicBasis {
    pub k: usize,
    pub v: usize,
    /// Order of the group, or `None` for the full symmetric group.
    pub group_order: Option<usize>,
    /// Lexicographically smallest member of each orbit on `X_k`.
    pub representatives: Vec<PointSet>,
    /// Per basis function, its (integer) value on each orbit.
    pub orbit_values: Vec<Vec<BigInt>>,
    pub functions: Vec<SubsetFunction>,
}

impl HarmonicBasis {
    pub fn dimension(&self) -> usize {
        self.functions.len()
    }
}

/// Basis of `{Σ a_i R(T_i) : γ(Σ a_i R(T_i)) = 0}`, the `R(T_i)` being the
/// orbit averages of the symmetry on `X_k`.
///
/// An invariant function is constant on orbits, so it is `Σ c_i 1_{O_i}`,
/// and `γ` of it vanishes iff `N c = 0` where `N[y][i]` counts the members
/// of `O_i` containing the `(k-1)`-subset `y`. Each basis function takes
/// the entries of a primitive integer kernel vector as its orbit values,
/// first nonzero value positive.
pub fn invariant_harmonic_basis(symmetry: Symmetry<'_>, k: usize) -> Result<HarmonicBasis> {
    let v = symmetry.degree();
    check_points(v)?;
    if k > v {
        return Err(Error::invalid(format!("degree {k} exceeds {v} points")));
    }
    let (orbits, group_order): (Vec<Vec<PointSet>>, Option<usize>) = match symmetry {
        Symmetry::Group(g) => (orbits_on_ksubsets(g, k)?.orbits().to_vec(), Some(g.order())),
        Symmetry::Full(_) => {
            let all = SubsetFunction::uniform(v, k)?;
            (vec![all.iter().map(|(z, _)| z).collect()], None)
        }
    };
    let rows: Vec<Vec<BigRational>> = if k == 0 {
        Vec::new()
    } else {
        let lower = SubsetIndexer::new(v, k - 1)?;
        let mut n = vec![vec![0u64; orbits.len()]; lower.count()];
        for (i, orbit) in orbits.iter().enumerate() {
            for &z in orbit {
                for p in z.iter() {
                    let mut y = z;
                    y.remove(p);
                    n[lower.rank(y)][i] += 1;
                }
            }
        }
        n.sort_unstable();
        n.dedup();
        n.into_iter()
            .map(|row| row.into_iter().map(|x| BigRational::from_integer(x.into())).collect())
            .collect()
    };
    let kernel = linalg::kernel(&rows, orbits.len());
    let functions = kernel
        .iter()
        .map(|c| {
            let mut f = SubsetFunction::zero(v, k)?;
            for (orbit, ci) in orbits.iter().zip(c) {
                if !ci.is_zero() {
                    for &z in orbit {
                        f.values.insert(z, BigRational::from_integer(ci.clone()));
                    }
                }
            }
            Ok(f)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HarmonicBasis {
        k,
        v,
        group_order,
        representatives: orbits.iter().map(|o| o[0]).collect(),
        orbit_values: kernel,
        functions,
    })
}

/// Orthogonal projection of `R^{X_k}` onto `Harm_k = ker γ`:
/// `P = I - Γ^T (Γ Γ^T)^{-1} Γ`.
struct Projector {
    upper: SubsetIndexer,
    lower: Option<SubsetIndexer>,
    /// `(Γ Γ^T)^{-1}`; `None` when `Harm_k` is `{0}` or `k = 0`.
    inverse: Option<Vec<Vec<BigRational>>>,
    trivial: bool,
}

impl Projector {
    fn new(v: usize, k: usize) -> Result<Self> {
        check_points(v)?;
        if k > v {
            return Err(Error::invalid(format!("degree {k} exceeds {v} points")));
        }
        let upper_count = binomial(v, k);
        if upper_count > MAX_ORBIT_SUBSETS {
            return Err(Error::TooManySubsets {
                count: upper_count,
                limit: MAX_ORBIT_SUBSETS,
            });
        }
        let upper = SubsetIndexer::new(v, k)?;
        if k == 0 {
            return Ok(Projector {
                upper,
                lower: None,
                inverse: None,
                trivial: false,
            });
        }
        // γ is injective on X_k once 2k > v + 1, leaving no harmonics.
        if 2 * k > v + 1 {
            return Ok(Projector {
                upper,
                lower: None,
                inverse: None,
                trivial: true,
            });
        }
        let lower_count = binomial(v, k - 1);
        if lower_count > MAX_PROJECTION_ROWS {
            return Err(Error::TooManySubsets {
                count: lower_count,
                limit: MAX_PROJECTION_ROWS,
            });
        }
        let lower = SubsetIndexer::new(v, k - 1)?;
        let n = lower.count();
        let gram: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let y = lower.unrank(i);
                (0..n)
                    .map(|j| {
                        let y2 = lower.unrank(j);
                        let entry = if i == j {
                            v - (k - 1)
                        } else if y.union(y2).len() == k {
                            1
                        } else {
                            0
                        };
                        BigRational::from_integer(entry.into())
                    })
                    .collect()
            })
            .collect();
        let inverse = linalg::inverse(&gram)
            .ok_or_else(|| Error::invalid("γγ^T is singular below the middle layer"))?;
        Ok(Projector {
            upper,
            lower: Some(lower),
            inverse: Some(inverse),
            trivial: false,
        })
    }

    /// `P u` for `u` dense over subset ranks.
    fn project(&self, u: &[BigRational]) -> Vec<BigRational> {
        if self.trivial {
            return vec![BigRational::zero(); u.len()];
        }
        let (Some(lower), Some(inverse)) = (&self.lower, &self.inverse) else {
            return u.to_vec();
        };
        let k = self.upper.k();
        let mut gu = vec![BigRational::zero(); lower.count()];
        for (r, x) in u.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for_each_subset_of(self.upper.unrank(r), k - 1, |y| gu[lower.rank(y)] += x);
        }
        let x: Vec<BigRational> = inverse
            .iter()
            .map(|row| row.iter().zip(&gu).map(|(a, b)| a * b).sum())
            .collect();
        u.iter()
            .enumerate()
            .map(|(r, ur)| {
                let mut back = BigRational::zero();
                for_each_subset_of(self.upper.unrank(r), k - 1, |y| back += &x[lower.rank(y)]);
                ur - back
            })
            .collect()
    }

    fn to_function(&self, v: usize, dense: &[BigRational]) -> SubsetFunction {
        SubsetFunction {
            v,
            k: self.upper.k(),
            values: dense
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(r, x)| (self.upper.unrank(r), x.clone()))
                .collect(),
        }
    }
}

/// Spanning set `{P(1_z - 1_{z_0}) : z ≠ z_0}` of `Harm_k`, where `P` is
/// the orthogonal projection onto `ker γ` and `z_0 = {0, …, k-1}`.
/// Projections that vanish are dropped.
pub fn harmonic_spanning_set(v: usize, k: usize) -> Result<Vec<SubsetFunction>> {
    let proj = Projector::new(v, k)?;
    let n = proj.upper.count();
    let mut out = Vec::new();
    for r in 1..n {
        let mut u = vec![BigRational::zero(); n];
        u[r] = BigRational::one();
        u[0] = -BigRational::one();
        let f = proj.to_function(v, &proj.project(&u));
        if !f.is_zero() {
            out.push(f);
        }
    }
    Ok(out)
}

/// A nonvanishing harmonic sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelsarteFailure {
    pub degree: usize,
    /// Basis function index (group variant) or subset rank (full variant).
    pub index: usize,
    pub value: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelsarteReport {
    pub is_design: bool,
    /// Harmonic functions tested at each degree `1..=t`.
    pub tested: Vec<usize>,
    pub failure: Option<DelsarteFailure>,
}

/// Tests `Σ_b mult(b)·f̃(b) = 0` for harmonic `f` of every degree `1..=t`.
///
/// The sum equals `⟨f, u⟩` where `u(z)` counts the blocks containing `z`.
/// With a group, `f` runs over the invariant basis, after checking that
/// every generator maps the blocks onto themselves. With the full symmetric
/// group, `f` runs over [`harmonic_spanning_set`]; since
/// `⟨P(1_z - 1_{z_0}), u⟩ = (Pu)(z) - (Pu)(z_0)` and a nonzero constant is
/// never harmonic, this is the same as `Pu = 0`, which is what gets
/// computed.
pub fn delsarte_design_check(
    blocks: &BlockMultiset,
    t: usize,
    symmetry: Symmetry<'_>,
) -> Result<DelsarteReport> {
    let v = blocks.v();
    if symmetry.degree() != v {
        return Err(Error::invalid("symmetry degree differs from the number of points"));
    }
    if !blocks.is_uniform() {
        return Err(Error::NonUniformBlocks);
    }
    if let Some(h) = blocks.block_size() {
        if h < t && !blocks.is_empty() {
            return Err(Error::BlockSmallerThanT { size: h, t });
        }
    }
    if let Symmetry::Group(g) = symmetry {
        if let Some(index) = g.generators().iter().position(|h| blocks.permute(h) != *blocks) {
            return Err(Error::GroupNotAutomorphism { index });
        }
    }
    let mut tested = Vec::with_capacity(t);
    for k in 1..=t {
        let indexer = SubsetIndexer::new(v, k)?;
        let u = blocks.incidence_counts(&indexer);
        let failure = match symmetry {
            Symmetry::Group(_) => {
                let basis = invariant_harmonic_basis(symmetry, k)?;
                tested.push(basis.dimension());
                basis
                    .functions
                    .iter()
                    .map(|f| f.pair_with(&indexer, &u))
                    .enumerate()
                    .find(|(_, s)| !s.is_zero())
            }
            Symmetry::Full(_) => {
                let proj = Projector::new(v, k)?;
                let dense: Vec<BigRational> =
                    u.iter().map(|&x| BigRational::from_integer(x.into())).collect();
                tested.push(if proj.trivial { 0 } else { proj.upper.count() - 1 });
                proj.project(&dense)
                    .into_iter()
                    .enumerate()
                    .find(|(_, s)| !s.is_zero())
            }
        };
        if let Some((index, value)) = failure {
            return Ok(DelsarteReport {
                is_design: false,
                tested,
                failure: Some(DelsarteFailure {
                    degree: k,
                    index,
                    value,
                }),
            });
        }
    }
    Ok(DelsarteReport {
        is_design: true,
        tested,
        failure: None,
    })
}
