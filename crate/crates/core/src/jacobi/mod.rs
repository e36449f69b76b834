//! Jacobi polynomials of a code with respect to a coordinate set `T`.
//!
//! `J_{C,T} = Σ_c w^{m0} z^{m1} x^{n0} y^{n1}` where `m1 = |T ∩ supp(c)|`,
//! `m0 = |T| - m1`, `n1 = wt(c) - m1` and `n0 = n - |T| - n1`. Entries are
//! classified as zero or nonzero, so the same definition covers every `q`.

mod format;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::groups::{orbits_on_ksubsets, PermGroup, Permutation};
use crate::prcode::LinearCode;
use crate::subset::{binomial, KSubsets, PointSet};

pub use format::JacobiTerm;

/// Largest number of `T` sets [`independence_check`] will visit.
pub const MAX_INDEPENDENCE_SUBSETS: u128 = 1_000_000;

/// Exact Jacobi polynomial; coefficients keyed by `(m1, n1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiPolynomial {
    n: usize,
    t: usize,
    coeffs: BTreeMap<(usize, usize), u64>,
}

impl JacobiPolynomial {
    pub fn zero(n: usize, t: usize) -> Self {
        assert!(t <= n);
        JacobiPolynomial {
            n,
            t,
            coeffs: BTreeMap::new(),
        }
    }

    /// Code length.
    pub fn n(&self) -> usize {
        self.n
    }

    /// `|T|`.
    pub fn t(&self) -> usize {
        self.t
    }

    /// Coefficient of `z^{m1} y^{n1}` (the `w` and `x` exponents follow).
    pub fn coeff(&self, m1: usize, n1: usize) -> u64 {
        self.coeffs.get(&(m1, n1)).copied().unwrap_or(0)
    }

    /// Coefficient of `w^{m0} z^{m1} x^{n0} y^{n1}`; zero for exponent
    /// tuples of the wrong shape.
    pub fn coefficient(&self, m0: usize, m1: usize, n0: usize, n1: usize) -> u64 {
        if m0 + m1 != self.t || n0 + n1 != self.n - self.t {
            return 0;
        }
        self.coeff(m1, n1)
    }

    /// Adds `c` to the coefficient of `z^{m1} y^{n1}`.
    pub fn add_term(&mut self, m1: usize, n1: usize, c: u64) {
        assert!(m1 <= self.t && n1 <= self.n - self.t);
        if c > 0 {
            *self.coeffs.entry((m1, n1)).or_insert(0) += c;
        }
    }

    /// Nonzero terms sorted by `(m1, n1)`.
    pub fn terms(&self) -> impl Iterator<Item = JacobiTerm> + '_ {
        self.coeffs.iter().map(|(&(m1, n1), &coeff)| JacobiTerm {
            m0: self.t - m1,
            m1,
            n0: self.n - self.t - n1,
            n1,
            coeff,
        })
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Value at `w = z = x = y = 1`.
    pub fn evaluate_at_ones(&self) -> u128 {
        self.coeffs.values().map(|&c| c as u128).sum()
    }

    /// Sum of coefficients by total weight `m1 + n1`.
    pub fn weight_sums(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.n + 1];
        for (&(m1, n1), &c) in &self.coeffs {
            out[m1 + n1] += c;
        }
        out
    }

    /// Coefficient-wise sum.
    pub fn add(&self, other: &JacobiPolynomial) -> Result<JacobiPolynomial> {
        if (self.n, self.t) != (other.n, other.t) {
            return Err(Error::invalid("Jacobi polynomials of different shapes"));
        }
        let mut out = self.clone();
        for (&(m1, n1), &c) in &other.coeffs {
            out.add_term(m1, n1, c);
        }
        Ok(out)
    }
}

/// Dense `(t+1) × (n-t+1)` counting table for one `T`.
fn cell(n: usize, t: usize, m1: usize, n1: usize) -> usize {
    m1 * (n - t + 1) + n1
}

fn from_table(n: usize, t: usize, table: &[u64]) -> JacobiPolynomial {
    let mut j = JacobiPolynomial::zero(n, t);
    for m1 in 0..=t {
        for n1 in 0..=n - t {
            j.add_term(m1, n1, table[cell(n, t, m1, n1)]);
        }
    }
    j
}

fn check_sets(code: &LinearCode, sets: &[PointSet]) -> Result<usize> {
    let n = code.len();
    let t = sets.first().map_or(0, |s| s.len());
    for s in sets {
        if s.bound() > n {
            return Err(Error::invalid(format!("coordinate set {s} exceeds length {n}")));
        }
        if s.len() != t {
            return Err(Error::invalid("coordinate sets of different sizes"));
        }
    }
    Ok(t)
}

/// `J_{C,T}` from one pass over the codewords.
pub fn jacobi(code: &LinearCode, set: PointSet) -> Result<JacobiPolynomial> {
    Ok(jacobi_many(code, &[set])?.pop().expect("one set"))
}

/// `J_{C,T}` for several equal-size `T` from a single enumeration.
pub fn jacobi_many(code: &LinearCode, sets: &[PointSet]) -> Result<Vec<JacobiPolynomial>> {
    let t = check_sets(code, sets)?;
    let n = code.len();
    let stride = (t + 1) * (n - t + 1);
    let total = code.fold_supports(
        || vec![0u64; stride * sets.len()],
        |acc, s| {
            let w = s.len();
            for (i, &set) in sets.iter().enumerate() {
                let m1 = s.intersection_len(set);
                acc[i * stride + cell(n, t, m1, w - m1)] += 1;
            }
        },
        crate::prcode::add_vectors,
    )?;
    Ok(total
        .chunks(stride.max(1))
        .take(sets.len())
        .map(|table| from_table(n, t, table))
        .collect())
}

/// How to evaluate the sum over conjugate codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SumRoute {
    /// `J_{C^{σ^i},T} = J_{C,σ^{-i}(T)}`: one enumeration of `C`.
    #[default]
    Translated,
    /// Build each `C^{σ^i}` and enumerate it.
    Direct,
}

/// `σ^{-i}(T)` for `i < s`.
fn translates(sigma: &Permutation, s: usize, set: PointSet) -> Vec<PointSet> {
    let inv = sigma.inverse();
    let mut out = Vec::with_capacity(s);
    let mut cur = set;
    for _ in 0..s {
        out.push(cur);
        cur = inv.apply_set(cur);
    }
    out
}

/// `J_{C,T} + J_{C^σ,T} + … + J_{C^{σ^{s-1}},T}`.
pub fn jacobi_conjugate_sum(
    code: &LinearCode,
    sigma: &Permutation,
    s: usize,
    set: PointSet,
    route: SumRoute,
) -> Result<JacobiPolynomial> {
    if sigma.degree() != code.len() {
        return Err(Error::invalid("permutation degree differs from code length"));
    }
    check_sets(code, &[set])?;
    let parts = match route {
        SumRoute::Translated => jacobi_many(code, &translates(sigma, s, set))?,
        SumRoute::Direct => {
            let mut parts = Vec::with_capacity(s);
            let mut power = Permutation::identity(code.len());
            for _ in 0..s {
                parts.push(jacobi(&code.permute(&power), set)?);
                power = sigma.compose(&power);
            }
            parts
        }
    };
    sum_all(code.len(), set.len(), &parts)
}

fn sum_all(n: usize, t: usize, parts: &[JacobiPolynomial]) -> Result<JacobiPolynomial> {
    parts
        .iter()
        .try_fold(JacobiPolynomial::zero(n, t), |acc, j| acc.add(j))
}

/// Which `T` sets [`independence_check`] visits.
#[derive(Clone, Copy, Debug)]
pub enum TSelection<'a> {
    /// Every `t`-subset.
    All,
    /// One `T` per orbit of the group. The group's generators are first
    /// checked to be automorphisms of the code, which makes `J_{C,T}`
    /// constant on each orbit.
    OrbitRepresentatives(&'a PermGroup),
}

/// Outcome of [`independence_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceReport {
    pub t: usize,
    pub independent: bool,
    /// Number of `T` sets whose conjugate sums were computed.
    pub checked: usize,
    /// Conjugate sum at the first visited `T`.
    pub reference: JacobiPolynomial,
    /// Two sets whose sums differ, when not independent.
    pub witness: Option<(PointSet, PointSet)>,
    /// Result of the automorphism check in orbit mode.
    pub orbit_constancy: Option<bool>,
}

/// Checks that the conjugate Jacobi sum does not depend on `T`, `|T| = t`.
pub fn independence_check(
    code: &LinearCode,
    sigma: &Permutation,
    s: usize,
    t: usize,
    selection: TSelection<'_>,
) -> Result<IndependenceReport> {
    let n = code.len();
    if t > n {
        return Err(Error::invalid(format!("t = {t} exceeds length {n}")));
    }
    if sigma.degree() != n {
        return Err(Error::invalid("permutation degree differs from code length"));
    }
    let (sets, orbit_constancy) = match selection {
        TSelection::All => {
            let count = binomial(n, t);
            if count > MAX_INDEPENDENCE_SUBSETS {
                return Err(Error::TooManySubsets {
                    count,
                    limit: MAX_INDEPENDENCE_SUBSETS,
                });
            }
            (KSubsets::new(n, t).collect::<Vec<_>>(), None)
        }
        TSelection::OrbitRepresentatives(group) => {
            if group.degree() != n {
                return Err(Error::invalid("group degree differs from code length"));
            }
            let preserved = group
                .generators()
                .iter()
                .all(|h| code.permute(h).same_codewords(code));
            let orbits = orbits_on_ksubsets(group, t)?;
            (orbits.representatives(), Some(preserved))
        }
    };

    // Every translate of every visited set, enumerated once.
    let mut all: Vec<PointSet> = sets.iter().flat_map(|&z| translates(sigma, s, z)).collect();
    all.sort_unstable();
    all.dedup();
    let polys = jacobi_many(code, &all)?;
    let lookup = |z: PointSet| &polys[all.binary_search(&z).expect("translate enumerated")];

    let mut reference: Option<(PointSet, JacobiPolynomial)> = None;
    let mut witness = None;
    for &z in &sets {
        let parts: Vec<JacobiPolynomial> =
            translates(sigma, s, z).into_iter().map(|x| lookup(x).clone()).collect();
        let sum = sum_all(n, t, &parts)?;
        match &reference {
            None => reference = Some((z, sum)),
            Some((z0, r)) => {
                if *r != sum && witness.is_none() {
                    witness = Some((*z0, z));
                }
            }
        }
    }
    let (_, reference) = reference.expect("at least one subset");
    let independent = witness.is_none() && orbit_constancy != Some(false);
    Ok(IndependenceReport {
        t,
        independent,
        checked: sets.len(),
        reference,
        witness,
        orbit_constancy,
    })
}

/// Coefficient of `z^t x^{n-ℓ} y^{ℓ-t}` in a `T`-independent conjugate sum:
/// the number of blocks of size `ℓ` through any `t` points.
pub fn lambda_from_jacobi(
    sum: &JacobiPolynomial,
    ell: usize,
    t: usize,
    independence: &IndependenceReport,
) -> Result<u64> {
    if !independence.independent || independence.t != t || independence.reference != *sum {
        return Err(Error::NotIndependent);
    }
    if ell < t {
        return Err(Error::BlockSmallerThanT { size: ell, t });
    }
    if ell > sum.n() {
        return Ok(0);
    }
    Ok(sum.coeff(t, ell - t))
}
