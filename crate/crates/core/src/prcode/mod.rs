//! Power residue codes `PR_q^m(p)` and general linear code handles.
//!
//! Coordinates are the residues `0..p`, coordinate `i` corresponding to the
//! monomial `x^i`. A code permuted by `π` has the codeword `c'` with
//! `c'_{π(i)} = c_i`, so supports map as `supp(c') = π(supp(c))`.

mod enumerate;
pub(crate) mod format;

use std::fmt;

use crate::arith::{
    primitive_pth_root, smallest_primitive_root, Echelon, ExtFieldElement, Polynomial,
    PrimeField,
};
use crate::error::{Error, Result};
use crate::groups::{check_modulus, Permutation};
use crate::subset::{check_points, PointSet};

pub use enumerate::{Codeword, CodewordIter, ShellIndex};
pub(crate) use enumerate::add_vectors;

/// Default ceiling on the number of codewords any enumeration may visit.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 26;

/// The cosets `A_i = g^i A_0` of the `m`-th power residues in `F_p^*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueCosets {
    p: u32,
    m: u32,
    primitive_root: u32,
    cosets: Vec<Vec<u32>>,
    coset_of: Vec<u32>,
}

impl ResidueCosets {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn primitive_root(&self) -> u32 {
        self.primitive_root
    }

    /// `A_i`, sorted ascending.
    pub fn coset(&self, i: usize) -> &[u32] {
        &self.cosets[i]
    }

    pub fn cosets(&self) -> &[Vec<u32>] {
        &self.cosets
    }

    /// Index `i` with `a ∈ A_i`, or `None` for `a ≡ 0`.
    pub fn coset_of(&self, a: u64) -> Option<usize> {
        let a = (a % self.p as u64) as usize;
        (a != 0).then(|| self.coset_of[a] as usize)
    }
}

pub fn residue_cosets(p: u32, m: u32) -> Result<ResidueCosets> {
    check_modulus(p, m)?;
    let g = smallest_primitive_root(p)?;
    let mut coset_of = vec![u32::MAX; p as usize];
    let mut cosets = vec![Vec::new(); m as usize];
    // g^e lies in A_{e mod m}
    let mut x = 1u64;
    for e in 0..(p - 1) {
        let i = e % m;
        cosets[i as usize].push(x as u32);
        coset_of[x as usize] = i;
        x = x * g as u64 % p as u64;
    }
    for c in &mut cosets {
        c.sort_unstable();
    }
    Ok(ResidueCosets {
        p,
        m,
        primitive_root: g,
        cosets,
        coset_of,
    })
}

/// `∏_{a ∈ A_0} (x - α^a)` over `F_q`.
pub fn generator_polynomial(p: u32, m: u32, q: u32) -> Result<Polynomial> {
    coset_generator_polynomial(p, m, q, 0)
}

/// `∏_{a ∈ A_i} (x - α^a)` over `F_q`, the generator of the `i`-th
/// conjugate code.
pub fn coset_generator_polynomial(p: u32, m: u32, q: u32, coset: usize) -> Result<Polynomial> {
    let cosets = residue_cosets(p, m)?;
    let field = PrimeField::new(q)?;
    if coset >= m as usize {
        return Err(Error::invalid(format!("coset index {coset} out of range 0..{m}")));
    }
    if cosets.coset_of(q as u64) != Some(0) {
        return Err(Error::NotResidue { p, m, q });
    }
    let root = primitive_pth_root(q, p)?;
    let ext = &root.field;

    // coefficients in F_{q^d}, lowest first
    let mut prod: Vec<ExtFieldElement> = vec![ext.one()];
    for &a in cosets.coset(coset) {
        let r = ext.pow(&root.alpha, a as u128);
        let mut next = vec![ext.zero(); prod.len() + 1];
        for (i, c) in prod.iter().enumerate() {
            next[i + 1] = ext.add(&next[i + 1], c);
            next[i] = ext.sub(&next[i], &ext.mul(&r, c));
        }
        prod = next;
    }
    let coeffs = prod
        .iter()
        .enumerate()
        .map(|(degree, c)| c.as_base().ok_or(Error::CoefficientOutsideBaseField { degree }))
        .collect::<Result<Vec<u32>>>()?;
    let g = Polynomial::new(field, coeffs);
    debug_assert!(g.divides(&Polynomial::cyclotomic_binomial(field, p as usize))?);
    Ok(g)
}

/// A linear code given by a generator matrix over a prime field.
#[derive(Clone)]
pub struct LinearCode {
    field: PrimeField,
    length: usize,
    rows: Vec<Vec<u32>>,
    row_masks: Vec<u64>,
    row_positions: Vec<Vec<usize>>,
    echelon: Echelon,
    cap: u64,
}

impl LinearCode {
    /// Builds a code from generator rows. Rows must be linearly independent.
    pub fn new(field: PrimeField, length: usize, rows: Vec<Vec<u32>>) -> Result<Self> {
        check_points(length)?;
        let q = field.order();
        if rows.iter().any(|r| r.len() != length || r.iter().any(|&x| x >= q)) {
            return Err(Error::invalid("generator rows must have the code length with entries in [0, q)"));
        }
        let echelon = Echelon::new(field, length, &rows);
        if echelon.rank() != rows.len() {
            return Err(Error::invalid("generator rows are linearly dependent"));
        }
        let row_positions: Vec<Vec<usize>> = rows
            .iter()
            .map(|r| (0..length).filter(|&i| r[i] != 0).collect())
            .collect();
        let row_masks = row_positions
            .iter()
            .map(|pos| pos.iter().copied().collect::<PointSet>().mask())
            .collect();
        Ok(LinearCode {
            field,
            length,
            rows,
            row_masks,
            row_positions,
            echelon,
            cap: DEFAULT_ENUMERATION_CAP,
        })
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn len(&self) -> usize {
        self.length
    }

    pub fn is_empty(&self) -> bool {
        self.length == 0
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn generator_matrix(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// `q^k`.
    pub fn size(&self) -> u128 {
        (self.field.order() as u128)
            .checked_pow(self.dimension() as u32)
            .unwrap_or(u128::MAX)
    }

    pub fn check_cap(&self) -> Result<u64> {
        let required = self.size();
        if required > self.cap as u128 {
            return Err(Error::CapExceeded {
                required,
                cap: self.cap,
            });
        }
        Ok(required as u64)
    }

    /// Membership by reduction against the row echelon form.
    pub fn contains(&self, word: &[u32]) -> bool {
        word.len() == self.length && self.echelon.contains(word)
    }

    /// Whether both codes have the same set of codewords.
    pub fn same_codewords(&self, other: &LinearCode) -> bool {
        self.field == other.field
            && self.length == other.length
            && self.dimension() == other.dimension()
            && other.rows.iter().all(|r| self.contains(r))
    }

    /// `C^π`: codeword `c` becomes `c'` with `c'_{π(i)} = c_i`.
    pub fn permute(&self, perm: &Permutation) -> LinearCode {
        assert_eq!(perm.degree(), self.length, "permutation degree must match code length");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out = vec![0u32; self.length];
                for (i, &x) in r.iter().enumerate() {
                    out[perm.apply(i)] = x;
                }
                out
            })
            .collect();
        LinearCode::new(self.field, self.length, rows)
            .expect("permuting columns preserves rank")
            .with_cap(self.cap)
    }

    /// `C^⊥` under the standard inner product `Σ x_i y_i`.
    pub fn dual(&self) -> LinearCode {
        LinearCode::new(self.field, self.length, self.echelon.null_space())
            .expect("null space basis is independent")
            .with_cap(self.cap)
    }

    /// Encodes a message of `k` symbols.
    pub fn encode(&self, message: &[u32]) -> Vec<u32> {
        assert_eq!(message.len(), self.dimension());
        let f = self.field;
        let mut out = vec![0u32; self.length];
        for (row, &m) in self.rows.iter().zip(message) {
            if m == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(row) {
                *o = f.add(*o, f.mul(m, x));
            }
        }
        out
    }

    pub fn inner_product(&self, a: &[u32], b: &[u32]) -> u32 {
        let f = self.field;
        a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
    }
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LinearCode[n={}, k={}, q={}]",
            self.length,
            self.dimension(),
            self.field.order()
        )
    }
}

/// A cyclic code of prime length `p` with generator polynomial `g(x)`; the
/// generator matrix rows are `x^i g(x)` for `i < k`.
#[derive(Clone, Debug)]
pub struct CyclicCode {
    m: u32,
    generator_poly: Polynomial,
    code: LinearCode,
}

impl CyclicCode {
    /// Cyclic code from a generator polynomial dividing `x^p - 1`.
    pub fn from_generator(p: u32, m: u32, generator_poly: Polynomial) -> Result<Self> {
        check_modulus(p, m)?;
        let field = generator_poly.field();
        if !generator_poly.is_monic() {
            return Err(Error::invalid("generator polynomial must be monic"));
        }
        let deg = generator_poly.degree().expect("monic is nonzero");
        let n = p as usize;
        if deg > n || !generator_poly.divides(&Polynomial::cyclotomic_binomial(field, n))? {
            return Err(Error::invalid(format!(
                "generator polynomial does not divide x^{p} - 1"
            )));
        }
        let k = n - deg;
        let rows = (0..k)
            .map(|i| {
                let mut r = vec![0u32; n];
                r[i..i + deg + 1].copy_from_slice(generator_poly.coeffs());
                r
            })
            .collect();
        Ok(CyclicCode {
            m,
            generator_poly,
            code: LinearCode::new(field, n, rows)?,
        })
    }

    pub fn p(&self) -> u32 {
        self.code.len() as u32
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.code.field().order()
    }

    pub fn dimension(&self) -> usize {
        self.code.dimension()
    }

    pub fn generator_poly(&self) -> &Polynomial {
        &self.generator_poly
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn into_code(self) -> LinearCode {
        self.code
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.code = self.code.with_cap(cap);
        self
    }

    /// Membership via `g(x) | c(x)`.
    pub fn contains_poly(&self, word: &[u32]) -> bool {
        let c = Polynomial::new(self.code.field(), word.to_vec());
        self.generator_poly.divides(&c).expect("monic divisor")
    }
}

impl std::ops::Deref for CyclicCode {
    type Target = LinearCode;

    fn deref(&self) -> &LinearCode {
        &self.code
    }
}

/// `PR_q^m(p)`.
pub fn build_code(p: u32, m: u32, q: u32) -> Result<CyclicCode> {
    build_conjugate_code(p, m, q, 0)
}

/// The power residue code whose zeros are `α^a` for `a ∈ A_i`.
pub fn build_conjugate_code(p: u32, m: u32, q: u32, coset: usize) -> Result<CyclicCode> {
    let g = coset_generator_polynomial(p, m, q, coset)?;
    CyclicCode::from_generator(p, m, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::mod_pow;
    use std::collections::BTreeSet;

    /// Exhaustive `m`-th powers mod `p`.
    fn power_residues(p: u32, m: u32) -> BTreeSet<u32> {
        (1..p)
            .map(|x| mod_pow(x as u64, m as u64, p as u64) as u32)
            .collect()
    }

    #[test]
    fn cosets_match_enumerated_powers() {
        let c = residue_cosets(7, 2).unwrap();
        assert_eq!(c.coset(0), &[1, 2, 4]);
        let c = residue_cosets(13, 3).unwrap();
        assert_eq!(c.coset(0), &[1, 5, 8, 12]);
        let c = residue_cosets(31, 3).unwrap();
        assert_eq!(c.coset(0).len(), 10);
        assert!(c.coset(0).contains(&2) && !c.coset(0).contains(&3));
        for (p, m) in [(7, 2), (13, 3), (31, 3), (31, 5), (13, 4), (37, 6)] {
            let c = residue_cosets(p, m).unwrap();
            let a0: BTreeSet<u32> = c.coset(0).iter().copied().collect();
            assert_eq!(a0, power_residues(p, m));
            let g = c.primitive_root();
            let mut union = BTreeSet::new();
            for i in 0..m as usize {
                assert_eq!(c.coset(i).len() as u32, (p - 1) / m);
                let gi = mod_pow(g as u64, i as u64, p as u64);
                let shifted: BTreeSet<u32> =
                    a0.iter().map(|&a| (a as u64 * gi % p as u64) as u32).collect();
                assert_eq!(shifted, c.coset(i).iter().copied().collect());
                union.extend(c.coset(i).iter().copied());
            }
            assert_eq!(union, (1..p).collect());
        }
        assert_eq!(residue_cosets(13, 5).unwrap_err(), Error::NotDivisor { p: 13, m: 5 });
    }

    #[test]
    fn generator_polynomials_divide() {
        for (p, m, q, deg) in [(7u32, 2u32, 2u32, 3usize), (31, 3, 2, 10), (13, 3, 5, 4)] {
            let g = generator_polynomial(p, m, q).unwrap();
            assert!(g.is_monic());
            assert_eq!(g.degree(), Some(deg));
            let f = g.field();
            assert!(g.divides(&Polynomial::cyclotomic_binomial(f, p as usize)).unwrap());
        }
        let g = generator_polynomial(7, 2, 2).unwrap();
        assert!(g.coeffs() == [1, 1, 0, 1] || g.coeffs() == [1, 0, 1, 1]);
    }

    #[test]
    fn non_residue_rejected() {
        // 3 is not a cube mod 31
        assert_eq!(generator_polynomial(31, 3, 3).unwrap_err(), Error::NotResidue { p: 31, m: 3, q: 3 });
    }

    #[test]
    fn dimensions() {
        assert_eq!(build_code(31, 3, 2).unwrap().dimension(), 21);
        assert_eq!(build_code(13, 3, 5).unwrap().dimension(), 9);
        assert_eq!(build_code(7, 2, 2).unwrap().dimension(), 4);
        assert_eq!(build_code(31, 3, 2).unwrap().size(), 2_097_152);
        assert_eq!(build_code(13, 3, 5).unwrap().size(), 1_953_125);
        // m = 1: one coset, generator (x^7 - 1)/(x - 1), the repetition code
        assert_eq!(residue_cosets(7, 1).unwrap().coset(0), &[1, 2, 3, 4, 5, 6]);
        assert_eq!(generator_polynomial(7, 1, 2).unwrap().coeffs(), &[1; 7]);
        assert_eq!(build_code(7, 1, 2).unwrap().weight_distribution().unwrap(), [1, 0, 0, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn conjugate_codes_are_distinct_and_permutation_equivalent() {
        for (p, m, q, g) in [(31u32, 3u32, 2u32, 3u64), (13, 3, 5, 2)] {
            let codes: Vec<CyclicCode> =
                (0..m as usize).map(|j| build_conjugate_code(p, m, q, j).unwrap()).collect();
            for i in 0..codes.len() {
                for j in i + 1..codes.len() {
                    assert!(!codes[i].same_codewords(&codes[j]));
                }
            }
            // supports map by τ_g, zeros by g^{-1}: C^τ is the code of A_{m-1}
            let tau = Permutation::multiplier(p, g).unwrap();
            let image = codes[0].permute(&tau);
            assert!(image.same_codewords(&codes[m as usize - 1]));
        }
    }

    #[test]
    fn permutation_behaviour() {
        let c = build_code(31, 3, 2).unwrap();
        assert!(c.permute(&Permutation::identity(31)).same_codewords(&c));
        assert!(c.permute(&Permutation::shift(31, 1)).same_codewords(&c));
        let conj = c.permute(&Permutation::multiplier(31, 3).unwrap());
        assert!(!conj.same_codewords(&c));
        // τ_{cube} is an automorphism
        assert!(c.permute(&Permutation::multiplier(31, 8).unwrap()).same_codewords(&c));
    }

    #[test]
    fn dual_code() {
        let c = build_code(31, 3, 2).unwrap();
        let d = c.dual();
        assert_eq!(d.dimension(), 10);
        for a in c.generator_matrix() {
            for b in d.generator_matrix() {
                assert_eq!(c.inner_product(a, b), 0);
            }
        }
        assert!(d.dual().same_codewords(&c));

        let c = build_code(13, 3, 5).unwrap();
        assert!(c.dual().dual().same_codewords(&c));
    }

    #[test]
    fn cyclic_membership_agrees_with_echelon() {
        let c = build_code(13, 3, 5).unwrap();
        let w = c.encode(&[1, 2, 3, 4, 0, 1, 2, 3, 4]);
        assert!(c.contains(&w) && c.contains_poly(&w));
        let mut bad = w.clone();
        bad[0] = (bad[0] + 1) % 5;
        assert!(!c.contains(&bad) && !c.contains_poly(&bad));
    }
}
