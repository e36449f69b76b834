//! Harmonic weight enumerators `w_{C,f} = Σ_c f̃(supp(c)) x^{n-wt(c)} y^{wt(c)}`.
//!
//! Each function is scaled to integers by the lcm of its denominators.
//! Codewords are then summed in `i128`, spilling into a `BigInt` when a
//! running total would overflow, so the result is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{linalg, SubsetFunction};
use crate::error::{Error, Result};
use crate::groups::Permutation;
use crate::jacobi::SumRoute;
use crate::prcode::LinearCode;
use crate::subset::{binomial, for_each_subset_of, PointSet, SubsetIndexer};

/// Above this many table entries the enumerator walks each function's
/// support instead of a dense table.
const DENSE_LIMIT: u128 = 1 << 24;

/// Coefficients of `x^{n-w} y^w` for `w = 0..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightEnumeratorVector {
    coeffs: Vec<BigRational>,
}

impl WeightEnumeratorVector {
    pub fn zero(n: usize) -> Self {
        WeightEnumeratorVector {
            coeffs: vec![BigRational::zero(); n + 1],
        }
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::invalid("an enumerator has at least the weight-0 entry"));
        }
        Ok(WeightEnumeratorVector { coeffs })
    }

    /// Code length.
    pub fn n(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn get(&self, w: usize) -> BigRational {
        self.coeffs.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// First weight with a nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|x| !x.is_zero())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::invalid("enumerators of different lengths"));
        }
        Ok(WeightEnumeratorVector {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, a: &BigRational) -> Self {
        WeightEnumeratorVector {
            coeffs: self.coeffs.iter().map(|x| x * a).collect(),
        }
    }
}

/// Functions scaled to `i64` numerators over a common per-function
/// denominator.
struct ScaledFunctions {
    k: usize,
    count: usize,
    denoms: Vec<BigInt>,
    table: Table,
}

enum Table {
    /// `values[rank * count + j]`.
    Dense { indexer: SubsetIndexer, values: Vec<i64> },
    /// Nonzero values of each function.
    Sparse(Vec<Vec<(PointSet, i64)>>),
}

impl ScaledFunctions {
    fn new(v: usize, functions: &[SubsetFunction]) -> Result<Self> {
        let k = functions.first().map_or(0, |f| f.k());
        if functions.iter().any(|f| f.v() != v || f.k() != k) {
            return Err(Error::invalid("functions must share the code length and degree"));
        }
        let count = functions.len();
        let mut denoms = Vec::with_capacity(count);
        let mut scaled = Vec::with_capacity(count);
        for f in functions {
            let d = f.iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
            let vals = f
                .iter()
                .map(|(z, x)| {
                    (x.numer() * (&d / x.denom()))
                        .to_i64()
                        .map(|n| (z, n))
                        .ok_or_else(|| Error::invalid("function values too large to enumerate"))
                })
                .collect::<Result<Vec<_>>>()?;
            denoms.push(d);
            scaled.push(vals);
        }
        let table = if binomial(v, k) * count.max(1) as u128 <= DENSE_LIMIT {
            let indexer = SubsetIndexer::new(v, k)?;
            let mut values = vec![0i64; indexer.count() * count];
            for (j, vals) in scaled.iter().enumerate() {
                for &(z, n) in vals {
                    values[indexer.rank(z) * count + j] = n;
                }
            }
            Table::Dense { indexer, values }
        } else {
            Table::Sparse(scaled)
        };
        Ok(ScaledFunctions {
            k,
            count,
            denoms,
            table,
        })
    }

    /// Adds `f̃_j(s)` (scaled) into `out[j]`.
    fn evaluate(&self, s: PointSet, out: &mut [i128]) {
        out.iter_mut().for_each(|x| *x = 0);
        if s.len() < self.k {
            return;
        }
        match &self.table {
            Table::Dense { indexer, values } => {
                let c = self.count;
                let mut add = |rank: usize| {
                    for (o, &x) in out.iter_mut().zip(&values[rank * c..rank * c + c]) {
                        *o += x as i128;
                    }
                };
                if self.k == 2 {
                    // colex rank of {i < j} is i + j(j-1)/2
                    let mut pts = [0usize; 64];
                    let mut len = 0;
                    for x in s.iter() {
                        pts[len] = x;
                        len += 1;
                    }
                    for b in 1..len {
                        let base = pts[b] * (pts[b] - 1) / 2;
                        for &a in &pts[..b] {
                            add(base + a);
                        }
                    }
                } else {
                    for_each_subset_of(s, self.k, |z| add(indexer.rank(z)));
                }
            }
            Table::Sparse(scaled) => {
                for (o, vals) in out.iter_mut().zip(scaled) {
                    *o = vals
                        .iter()
                        .filter(|(z, _)| z.is_subset_of(s))
                        .map(|&(_, n)| n as i128)
                        .sum();
                }
            }
        }
    }
}

/// Per-weight totals with overflow spill.
#[derive(Clone)]
struct Totals {
    fast: Vec<i128>,
    spill: Vec<BigInt>,
}

impl Totals {
    fn new(len: usize) -> Self {
        Totals {
            fast: vec![0; len],
            spill: vec![BigInt::zero(); len],
        }
    }

    fn add(&mut self, i: usize, x: i128) {
        match self.fast[i].checked_add(x) {
            Some(y) => self.fast[i] = y,
            None => {
                self.spill[i] += self.fast[i];
                self.fast[i] = x;
            }
        }
    }

    fn merge(mut self, other: Totals) -> Totals {
        for i in 0..self.fast.len() {
            self.spill[i] += &other.spill[i];
            self.add(i, other.fast[i]);
        }
        self
    }

    fn value(&self, i: usize) -> BigInt {
        &self.spill[i] + self.fast[i]
    }
}

/// `w_{C,f}` for several functions of the same degree, from a single
/// enumeration of `C`.
pub fn harmonic_weight_enumerators(
    code: &LinearCode,
    functions: &[SubsetFunction],
) -> Result<Vec<WeightEnumeratorVector>> {
    let n = code.len();
    let scaled = ScaledFunctions::new(n, functions)?;
    let count = scaled.count;
    if count == 0 {
        code.check_cap()?;
        return Ok(Vec::new());
    }
    let totals = code.fold_supports(
        || (Totals::new((n + 1) * count), vec![0i128; count]),
        |(acc, buf), s| {
            scaled.evaluate(s, buf);
            let w = s.len();
            for (j, &x) in buf.iter().enumerate() {
                if x != 0 {
                    acc.add(j * (n + 1) + w, x);
                }
            }
        },
        |(a, buf), (b, _)| (a.merge(b), buf),
    )?;
    let totals = totals.0;
    Ok((0..count)
        .map(|j| WeightEnumeratorVector {
            coeffs: (0..=n)
                .map(|w| BigRational::new(totals.value(j * (n + 1) + w), scaled.denoms[j].clone()))
                .collect(),
        })
        .collect())
}

/// `w_{C,f}`.
pub fn harmonic_weight_enumerator(
    code: &LinearCode,
    f: &SubsetFunction,
) -> Result<WeightEnumeratorVector> {
    Ok(harmonic_weight_enumerators(code, std::slice::from_ref(f))?
        .pop()
        .expect("one function"))
}

/// Outcome of [`conjugate_vanishing_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingReport {
    pub vanishes: bool,
    /// `Σ_i w_{C^{σ^i}, f}` for each function.
    pub sums: Vec<WeightEnumeratorVector>,
    /// First nonzero coefficient: function index, weight, value.
    pub residual: Option<(usize, usize, BigRational)>,
}

/// Sums `w_{C,f} + w_{C^σ,f} + … + w_{C^{σ^{s-1}},f}` for each `f` and
/// checks that every sum is zero.
pub fn conjugate_vanishing_check(
    code: &LinearCode,
    sigma: &Permutation,
    s: usize,
    functions: &[SubsetFunction],
    route: SumRoute,
) -> Result<VanishingReport> {
    let n = code.len();
    if sigma.degree() != n {
        return Err(Error::invalid("permutation degree differs from code length"));
    }
    let mut sums = vec![WeightEnumeratorVector::zero(n); functions.len()];
    match route {
        SumRoute::Translated => {
            // w_{C^{σ^i}, f} = w_{C, f^{σ^{-i}}}
            let inv = sigma.inverse();
            let mut translated = Vec::with_capacity(functions.len() * s);
            for f in functions {
                let mut cur = f.clone();
                for _ in 0..s {
                    let next = cur.permute(&inv);
                    translated.push(cur);
                    cur = next;
                }
            }
            let all = harmonic_weight_enumerators(code, &translated)?;
            for (j, chunk) in all.chunks(s.max(1)).enumerate().take(functions.len()) {
                for e in chunk {
                    sums[j] = sums[j].add(e)?;
                }
            }
        }
        SumRoute::Direct => {
            let mut power = Permutation::identity(n);
            for _ in 0..s {
                let conj = code.permute(&power);
                for (j, e) in harmonic_weight_enumerators(&conj, functions)?.iter().enumerate() {
                    sums[j] = sums[j].add(e)?;
                }
                power = sigma.compose(&power);
            }
        }
    }
    let residual = sums.iter().enumerate().find_map(|(j, e)| {
        e.first_nonzero().map(|w| (j, w, e.get(w)))
    });
    Ok(VanishingReport {
        vanishes: residual.is_none(),
        sums,
        residual,
    })
}

fn columns(vectors: &[WeightEnumeratorVector], n: usize) -> Vec<Vec<BigRational>> {
    (0..=n).map(|w| vectors.iter().map(|e| e.get(w)).collect()).collect()
}

/// Coefficients expressing `target` in terms of `vectors`, if it lies in
/// their span.
pub fn in_span(
    vectors: &[WeightEnumeratorVector],
    target: &WeightEnumeratorVector,
) -> Option<Vec<BigRational>> {
    let n = target.n();
    if vectors.iter().any(|e| e.n() != n) {
        return None;
    }
    if vectors.is_empty() {
        return target.is_zero().then(Vec::new);
    }
    linalg::solve(&columns(vectors, n), target.coeffs())
}

/// Dimension of the span of the vectors.
pub fn span_rank(vectors: &[WeightEnumeratorVector]) -> usize {
    let rows: Vec<Vec<BigRational>> = vectors.iter().map(|e| e.coeffs.clone()).collect();
    let width = vectors.first().map_or(0, |e| e.coeffs.len());
    linalg::rank(&rows, width)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{affine_group, conjugating_permutation};
    use crate::harmonics::{invariant_harmonic_basis, tilde_extend, Symmetry};
    use crate::prcode::build_code;
    use crate::subset::KSubsets;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Sums `f̃` over every codeword one at a time.
    fn brute_force(code: &LinearCode, f: &SubsetFunction) -> WeightEnumeratorVector {
        let mut e = WeightEnumeratorVector::zero(code.len());
        for c in code.codewords().unwrap() {
            e.coeffs[c.weight()] += tilde_extend(f, c.support);
        }
        e
    }

    #[test]
    fn matches_brute_force() {
        let code = build_code(13, 3, 5).unwrap().into_code();
        let small = build_code(7, 2, 2).unwrap().into_code();
        let mut f = SubsetFunction::zero(13, 2).unwrap();
        for (i, z) in KSubsets::new(13, 2).enumerate().step_by(7) {
            f.set(z, q(i as i64 - 20, 1 + i as i64 % 5)).unwrap();
        }
        let g = SubsetFunction::indicator(7, PointSet::from_mask(0b1011)).unwrap();
        assert_eq!(harmonic_weight_enumerator(&small, &g).unwrap(), brute_force(&small, &g));
        let fast = harmonic_weight_enumerator(&code.clone().with_cap(1 << 21), &f).unwrap();
        assert_eq!(fast, brute_force(&code, &f));
    }

    #[test]
    fn sparse_path_agrees() {
        let small = build_code(7, 2, 2).unwrap().into_code();
        let f = SubsetFunction::indicator(7, PointSet::from_mask(0b1011)).unwrap();
        let scaled = ScaledFunctions::new(7, std::slice::from_ref(&f)).unwrap();
        let sparse = ScaledFunctions {
            table: Table::Sparse(vec![vec![(PointSet::from_mask(0b1011), 1)]]),
            ..scaled
        };
        let mut a = [0i128];
        for c in small.codewords().unwrap() {
            sparse.evaluate(c.support, &mut a);
            assert_eq!(BigRational::from_integer(a[0].into()), tilde_extend(&f, c.support));
        }
    }

    #[test]
    fn zero_function_and_degree_one() {
        let code = build_code(31, 3, 2).unwrap().into_code();
        let zero = SubsetFunction::zero(31, 2).unwrap();
        assert!(harmonic_weight_enumerator(&code, &zero).unwrap().is_zero());
        // 1_{0} - 1_{1} is harmonic of degree 1; every shell of a cyclic
        // code is a 1-design, so the enumerator vanishes.
        let f = SubsetFunction::indicator(31, PointSet::singleton(0))
            .unwrap()
            .sub(&SubsetFunction::indicator(31, PointSet::singleton(1)).unwrap())
            .unwrap();
        assert!(harmonic_weight_enumerator(&code, &f).unwrap().is_zero());
    }

    #[test]
    fn spill_keeps_totals_exact() {
        let mut t = Totals::new(1);
        for _ in 0..4 {
            t.add(0, i128::MAX / 2);
        }
        let expected = BigInt::from(i128::MAX / 2) * 4;
        assert_eq!(t.value(0), expected);
        let merged = t.clone().merge(t);
        assert_eq!(merged.value(0), expected * 2);
    }

    #[test]
    fn vanishing_routes_agree() {
        let code = build_code(13, 3, 5).unwrap().into_code();
        let sigma = conjugating_permutation(13, 3).unwrap();
        let (h, _) = affine_group(13, 3).unwrap();
        let basis = invariant_harmonic_basis(Symmetry::Group(&h), 2).unwrap();
        let a = conjugate_vanishing_check(&code, &sigma, 3, &basis.functions, SumRoute::Translated).unwrap();
        let b = conjugate_vanishing_check(&code, &sigma, 3, &basis.functions, SumRoute::Direct).unwrap();
        assert_eq!(a, b);
        assert!(a.vanishes);
        let single = conjugate_vanishing_check(&code, &sigma, 1, &basis.functions, SumRoute::Translated).unwrap();
        assert!(!single.vanishes);
        let (_, w, value) = single.residual.unwrap();
        assert!(w > 0 && !value.is_zero());
    }

    #[test]
    fn span_membership() {
        let e1 = WeightEnumeratorVector::from_coeffs(vec![q(1, 1), q(0, 1), q(2, 1)]).unwrap();
        let e2 = WeightEnumeratorVector::from_coeffs(vec![q(0, 1), q(1, 1), q(1, 1)]).unwrap();
        let t = e1.scale(&q(3, 2)).add(&e2.scale(&q(-1, 1))).unwrap();
        assert_eq!(in_span(&[e1.clone(), e2.clone()], &t), Some(vec![q(3, 2), q(-1, 1)]));
        let off = WeightEnumeratorVector::from_coeffs(vec![q(0, 1), q(0, 1), q(1, 1)]).unwrap();
        assert_eq!(in_span(&[e1.clone(), e2.clone()], &off), None);
        assert_eq!(span_rank(&[e1.clone(), e2, e1]), 2);
        assert_eq!(in_span(&[], &WeightEnumeratorVector::zero(2)), Some(vec![]));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn enumerator_is_linear(a in (-6i64..6, 1i64..5), b in (-6i64..6, 1i64..5), seed in 0usize..50) {
            let code = build_code(7, 2, 2).unwrap().into_code();
            let mut f = SubsetFunction::zero(7, 2).unwrap();
            let mut g = SubsetFunction::zero(7, 2).unwrap();
            for (i, z) in KSubsets::new(7, 2).enumerate() {
                f.set(z, q(((i * 7 + seed) % 11) as i64 - 5, 1 + (i % 3) as i64)).unwrap();
                g.set(z, q(((i * 3 + seed) % 5) as i64 - 2, 1)).unwrap();
            }
            let (a, b) = (q(a.0, a.1), q(b.0, b.1));
            let lhs = harmonic_weight_enumerator(&code, &f.combine(&a, &g, &b).unwrap()).unwrap();
            let rhs = harmonic_weight_enumerator(&code, &f).unwrap().scale(&a)
                .add(&harmonic_weight_enumerator(&code, &g).unwrap().scale(&b)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
