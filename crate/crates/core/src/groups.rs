//! Permutations of `Z/pZ`, the affine groups `H <= G`, and orbits on
//! `k`-subsets.
//!
//! `G` is generated by the shift `σ: i -> i + 1` and the multiplier `τ_g`
//! for a primitive root `g`; `H` by `σ` and `τ_{g^m}`. Groups are
//! materialized by explicit closure, which is cheap at these sizes
//! (`|G| = p(p-1)`).

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use crate::arith::{is_prime, smallest_primitive_root};
use crate::error::{Error, Result};
use crate::subset::{binomial, check_points, KSubsets, PointSet, SubsetIndexer};

/// Largest number of `k`-subsets an orbit partition will enumerate.
pub const MAX_ORBIT_SUBSETS: u128 = 10_000_000;

/// A bijection of `{0, …, n-1}`; `images[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::invalid("images do not form a bijection"));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    /// `σ^i : x -> x + i (mod p)`.
    pub fn shift(p: u32, i: u64) -> Self {
        let i = (i % p as u64) as u32;
        Permutation {
            images: (0..p).map(|x| (x + i) % p).collect(),
        }
    }

    /// `τ_a : x -> a x (mod p)`; `a` must be a unit.
    pub fn multiplier(p: u32, a: u64) -> Result<Self> {
        let a = a % p as u64;
        if a == 0 {
            return Err(Error::invalid("multiplier must be nonzero mod p"));
        }
        Ok(Permutation {
            images: (0..p as u64).map(|x| (a * x % p as u64) as u32).collect(),
        })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn apply_set(&self, s: PointSet) -> PointSet {
        s.map(&self.images)
    }

    /// `self ∘ rhs`: apply `rhs` first.
    pub fn compose(&self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree());
        Permutation {
            images: rhs.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, e: i64) -> Permutation {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Permutation::identity(self.degree());
        for _ in 0..e.unsigned_abs() {
            acc = base.compose(&acc);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Order as a group element.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut acc = 1u64;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            acc = num_integer::lcm(acc, len);
        }
        acc
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}

/// A permutation group given by generators, closed lazily.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: OnceLock<Vec<Permutation>>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(Error::invalid("generator degree mismatch"));
        }
        Ok(PermGroup {
            degree,
            generators,
            elements: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("no generators")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Every element, sorted. Computed by breadth-first closure on first use.
    pub fn elements(&self) -> &[Permutation] {
        self.elements.get_or_init(|| {
            let id = Permutation::identity(self.degree);
            let mut seen = BTreeSet::from([id.clone()]);
            let mut frontier = vec![id];
            while let Some(e) = frontier.pop() {
                for g in &self.generators {
                    let next = g.compose(&e);
                    if seen.insert(next.clone()) {
                        frontier.push(next);
                    }
                }
            }
            seen.into_iter().collect()
        })
    }

    pub fn order(&self) -> usize {
        self.elements().len()
    }

    pub fn contains(&self, perm: &Permutation) -> bool {
        self.elements().binary_search(perm).is_ok()
    }
}

/// The groups `H = <σ, τ_{g^m}>` and `G = <σ, τ_g>` for the smallest
/// primitive root `g` mod `p`.
pub fn affine_group(p: u32, m: u32) -> Result<(PermGroup, PermGroup)> {
    check_modulus(p, m)?;
    let g = smallest_primitive_root(p)? as u64;
    let a0 = crate::arith::mod_pow(g, m as u64, p as u64);
    let sigma = Permutation::shift(p, 1);
    let h = PermGroup::new(
        p as usize,
        vec![sigma.clone(), Permutation::multiplier(p, a0)?],
    )?;
    let full = PermGroup::new(p as usize, vec![sigma, Permutation::multiplier(p, g)?])?;
    Ok((h, full))
}

pub(crate) fn check_modulus(p: u32, m: u32) -> Result<()> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    check_points(p as usize)?;
    if m == 0 || (p - 1) % m != 0 {
        return Err(Error::NotDivisor { p, m });
    }
    Ok(())
}

/// Partition of all `k`-subsets of the points into orbits of a group.
#[derive(Clone, Debug)]
pub struct OrbitPartition {
    k: usize,
    indexer: SubsetIndexer,
    orbit_of: Vec<u32>,
    orbits: Vec<Vec<PointSet>>,
}

impl OrbitPartition {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn v(&self) -> usize {
        self.indexer.v()
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// Orbits sorted by representative, members sorted lexicographically.
    pub fn orbits(&self) -> &[Vec<PointSet>] {
        &self.orbits
    }

    /// Lexicographically smallest member of each orbit.
    pub fn representatives(&self) -> Vec<PointSet> {
        self.orbits.iter().map(|o| o[0]).collect()
    }

    pub fn orbit_index(&self, s: PointSet) -> Option<usize> {
        if s.len() != self.k || s.bound() > self.v() {
            return None;
        }
        Some(self.orbit_of[self.indexer.rank(s)] as usize)
    }

    pub fn indexer(&self) -> &SubsetIndexer {
        &self.indexer
    }

    /// Orbit index for every subset, addressed by [`SubsetIndexer::rank`].
    pub fn orbit_table(&self) -> &[u32] {
        &self.orbit_of
    }

    /// If `perm` maps every orbit onto a single orbit, the induced map on
    /// orbit indices.
    pub fn induced_permutation(&self, perm: &Permutation) -> Option<Vec<usize>> {
        let mut out = Vec::with_capacity(self.orbits.len());
        for orbit in &self.orbits {
            let target = self.orbit_index(perm.apply_set(orbit[0]))?;
            if orbit
                .iter()
                .any(|&s| self.orbit_index(perm.apply_set(s)) != Some(target))
            {
                return None;
            }
            out.push(target);
        }
        Some(out)
    }
}

/// Orbits of `group` on the `k`-subsets of its points.
pub fn orbits_on_ksubsets(group: &PermGroup, k: usize) -> Result<OrbitPartition> {
    let v = group.degree();
    let count = binomial(v, k);
    if count > MAX_ORBIT_SUBSETS {
        return Err(Error::TooManySubsets {
            count,
            limit: MAX_ORBIT_SUBSETS,
        });
    }
    let indexer = SubsetIndexer::new(v, k)?;
    let mut orbit_of = vec![u32::MAX; indexer.count()];
    let mut orbits = Vec::new();
    for start in KSubsets::new(v, k) {
        if orbit_of[indexer.rank(start)] != u32::MAX {
            continue;
        }
        let id = orbits.len() as u32;
        orbit_of[indexer.rank(start)] = id;
        let mut members = vec![start];
        let mut frontier = vec![start];
        while let Some(s) = frontier.pop() {
            for g in group.generators() {
                let t = g.apply_set(s);
                let r = indexer.rank(t);
                if orbit_of[r] == u32::MAX {
                    orbit_of[r] = id;
                    members.push(t);
                    frontier.push(t);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    Ok(OrbitPartition {
        k,
        indexer,
        orbit_of,
        orbits,
    })
}

/// Whether `h` is normalized by every generator of `g`.
pub fn is_normal(h: &PermGroup, g: &PermGroup) -> Result<bool> {
    if h.degree() != g.degree() || !h.elements().iter().all(|e| g.contains(e)) {
        return Err(Error::NotSubgroup);
    }
    Ok(g.generators().iter().all(|x| {
        let x_inv = x.inverse();
        h.elements()
            .iter()
            .all(|e| h.contains(&x.compose(e).compose(&x_inv)))
    }))
}

/// Number of elements fixing `s` setwise.
pub fn stabilizer_order(group: &PermGroup, s: PointSet) -> usize {
    group
        .elements()
        .iter()
        .filter(|e| e.apply_set(s) == s)
        .count()
}

/// The multiplier `τ_g` (`g` the smallest primitive root), verified to cycle
/// the `m` orbits of `H` on pairs with period `m` and to rotate the residue
/// cosets `A_i -> A_{i-1}` that define the conjugate codes.
pub fn conjugating_permutation(p: u32, m: u32) -> Result<Permutation> {
    check_modulus(p, m)?;
    let g = smallest_primitive_root(p)?;
    let tau = Permutation::multiplier(p, g as u64)?;

    let (h, _) = affine_group(p, m)?;
    let orbits = orbits_on_ksubsets(&h, 2)?;
    if orbits.len() != m as usize {
        return Err(Error::CyclicActionFailed(format!(
            "H has {} orbits on pairs, expected {m}",
            orbits.len()
        )));
    }
    let induced = orbits
        .induced_permutation(&tau)
        .ok_or_else(|| Error::CyclicActionFailed("τ_g does not permute the H-orbits".into()))?;
    let mut i = 0;
    for step in 1..=m as usize {
        i = induced[i];
        if i == 0 && step < m as usize {
            return Err(Error::CyclicActionFailed(format!(
                "orbit cycle has length {step} < {m}"
            )));
        }
    }
    if i != 0 {
        return Err(Error::CyclicActionFailed("orbit cycle does not close".into()));
    }

    // Zeros of C^τ are g^{-1} times the zeros of C.
    let cosets = crate::prcode::residue_cosets(p, m)?;
    let g_inv = crate::arith::mod_pow(g as u64, p as u64 - 2, p as u64);
    for j in 0..m as usize {
        let image: BTreeSet<u32> = cosets.coset(j).iter().map(|&a| (a as u64 * g_inv % p as u64) as u32).collect();
        let expected: BTreeSet<u32> = cosets.coset((j + m as usize - 1) % m as usize).iter().copied().collect();
        if image != expected {
            return Err(Error::CyclicActionFailed(format!(
                "τ_g does not rotate residue coset {j}"
            )));
        }
    }
    Ok(tau)
}

/// One named item of [`structure_checks`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl StructureCheck {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        StructureCheck { name, passed, detail }
    }
}

/// Message indices spread over `0..total` by a fixed multiplicative stride.
fn sample_indices(total: u64, samples: usize) -> Vec<u64> {
    const STRIDE: u128 = 0x9E37_79B9_7F4A_7C15;
    let mut out: Vec<u64> = (0..samples as u128)
        .map(|j| ((j * STRIDE) % total as u128) as u64)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// The orbit facts the design construction rests on, for a code invariant
/// under `H`:
///
/// * `automorphisms`: each generator of `H` maps a basis of `C` into `C`
/// * `normality`: `H` is normal in `G`
/// * `transitive-pairs`: `G` has one orbit on pairs
/// * `h-orbits`: `H` has exactly `m` orbits on pairs
/// * `equal-orbits`: those orbits all have `C(p,2)/m` pairs
/// * `orders`: `|G| = p(p-1)` and `|H| = p(p-1)/m`
/// * `index`: `[G:H] = m`
/// * `conjugator`: `τ_g` cycles the `H`-orbits with period `m`
pub fn structure_checks(
    code: &crate::prcode::LinearCode,
    p: u32,
    m: u32,
    samples: usize,
) -> Result<Vec<StructureCheck>> {
    let (h, g) = affine_group(p, m)?;
    if code.len() != p as usize {
        return Err(Error::invalid("code length differs from p"));
    }
    let mut out = Vec::new();

    // Permutations act linearly, so the basis rows decide membership; the
    // sampled codewords are a cross-check of encoding.
    let total = u64::try_from(code.size()).unwrap_or(u64::MAX);
    let indices = sample_indices(total, samples);
    let words = code
        .generator_matrix()
        .iter()
        .cloned()
        .chain(indices.iter().map(|&i| code.codewords_in(i..i + 1).next().expect("index below q^k").entries));
    let mut failure = None;
    'outer: for (wi, word) in words.enumerate() {
        for (gi, gen) in h.generators().iter().enumerate() {
            let mut image = vec![0u32; word.len()];
            for (j, &x) in word.iter().enumerate() {
                image[gen.apply(j)] = x;
            }
            if !code.contains(&image) {
                failure = Some((wi, gi));
                break 'outer;
            }
        }
    }
    let detail = match failure {
        None => format!(
            "{} basis rows and {} sampled codewords x {} generators of H",
            code.dimension(),
            indices.len(),
            h.generators().len()
        ),
        Some((wi, gi)) => format!("generator {gi} maps test word {wi} outside the code"),
    };
    out.push(StructureCheck::new("automorphisms", failure.is_none(), detail));

    let normal = is_normal(&h, &g)?;
    out.push(StructureCheck::new("normality", normal, format!("H normal in G: {normal}")));

    let g_orbits = orbits_on_ksubsets(&g, 2)?;
    out.push(StructureCheck::new(
        "transitive-pairs",
        g_orbits.len() == 1,
        format!("G has {} orbit(s) on pairs", g_orbits.len()),
    ));

    let h_orbits = orbits_on_ksubsets(&h, 2)?;
    out.push(StructureCheck::new(
        "h-orbits",
        h_orbits.len() == m as usize,
        format!("H has {} orbits on pairs, expected {m}", h_orbits.len()),
    ));

    let sizes: Vec<usize> = h_orbits.orbits().iter().map(Vec::len).collect();
    let expected = binomial(p as usize, 2) / m as u128;
    out.push(StructureCheck::new(
        "equal-orbits",
        sizes.iter().all(|&s| s as u128 == expected),
        format!("orbit sizes {sizes:?}, expected {expected} each"),
    ));

    let full = p as usize * (p as usize - 1);
    let orders_ok = g.order() == full && h.order() * m as usize == full;
    out.push(StructureCheck::new(
        "orders",
        orders_ok,
        format!("|G| = {}, |H| = {}", g.order(), h.order()),
    ));

    let index_ok = g.order() % h.order() == 0 && g.order() / h.order() == m as usize;
    out.push(StructureCheck::new(
        "index",
        index_ok,
        format!("[G:H] = {}/{}", g.order(), h.order()),
    ));

    let conj = conjugating_permutation(p, m);
    out.push(StructureCheck::new(
        "conjugator",
        conj.is_ok(),
        match conj {
            Ok(_) => format!("τ_g cycles the H-orbits with period {m}"),
            Err(e) => e.to_string(),
        },
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn group_orders() {
        let (h, g) = affine_group(31, 3).unwrap();
        assert_eq!((h.order(), g.order()), (310, 930));
        let (h, g) = affine_group(13, 3).unwrap();
        assert_eq!((h.order(), g.order()), (52, 156));
        let (h, g) = affine_group(13, 1).unwrap();
        assert_eq!(h.elements(), g.elements());
        assert_eq!(affine_group(13, 5).unwrap_err(), Error::NotDivisor { p: 13, m: 5 });
        assert_eq!(affine_group(15, 2).unwrap_err(), Error::NotPrime(15));
    }

    #[test]
    fn closure_is_closed_under_composition_and_inverse() {
        let (h, _) = affine_group(13, 3).unwrap();
        for a in h.elements() {
            assert!(h.contains(&a.inverse()));
            for b in h.elements().iter().step_by(7) {
                assert!(h.contains(&a.compose(b)));
            }
        }
    }

    #[test]
    fn pair_orbits() {
        let (h, g) = affine_group(31, 3).unwrap();
        let o = orbits_on_ksubsets(&h, 2).unwrap();
        assert_eq!(o.len(), 3);
        assert!(o.orbits().iter().all(|x| x.len() == 155));
        assert_eq!(orbits_on_ksubsets(&g, 2).unwrap().len(), 1);

        let (h, _) = affine_group(13, 3).unwrap();
        let o = orbits_on_ksubsets(&h, 2).unwrap();
        assert!(o.orbits().iter().all(|x| x.len() == 26));
        let ids: BTreeSet<usize> = [[6, 12], [4, 7], [2, 10]]
            .iter()
            .map(|pair| o.orbit_index(PointSet::from_points(13, pair).unwrap()).unwrap())
            .collect();
        assert_eq!(ids.len(), 3);
    }

    #[test]
    fn representatives_are_lex_smallest() {
        let (h, _) = affine_group(13, 3).unwrap();
        let o = orbits_on_ksubsets(&h, 2).unwrap();
        let reps = o.representatives();
        assert!(reps.windows(2).all(|w| w[0] < w[1]));
        for (rep, orbit) in reps.iter().zip(o.orbits()) {
            assert!(orbit.iter().all(|s| rep <= s));
        }
    }

    #[test]
    fn too_many_subsets() {
        let (h, _) = affine_group(61, 3).unwrap();
        assert!(matches!(
            orbits_on_ksubsets(&h, 10),
            Err(Error::TooManySubsets { .. })
        ));
    }

    #[test]
    fn normality() {
        for (p, m) in [(31, 3), (13, 3), (13, 2)] {
            let (h, g) = affine_group(p, m).unwrap();
            assert!(is_normal(&h, &g).unwrap());
            assert!(is_normal(&PermGroup::trivial(p as usize), &g).unwrap());
            assert_eq!(is_normal(&g, &h).unwrap_err(), Error::NotSubgroup);
        }
        // <τ_2> in S_13 is not normalized by σ
        let (_, g) = affine_group(13, 3).unwrap();
        let k = PermGroup::new(13, vec![Permutation::multiplier(13, 2).unwrap()]).unwrap();
        assert!(!is_normal(&k, &g).unwrap());
    }

    #[test]
    fn stabilizers_and_orbit_stabilizer() {
        for (p, m) in [(31u32, 3u32), (13, 3)] {
            let (h, g) = affine_group(p, m).unwrap();
            let o = orbits_on_ksubsets(&h, 2).unwrap();
            let pair = o.representatives()[0];
            assert_eq!(stabilizer_order(&h, pair), 2);
            for grp in [&h, &g] {
                for k in 1..=3 {
                    let part = orbits_on_ksubsets(grp, k).unwrap();
                    for orbit in part.orbits().iter().take(7) {
                        assert_eq!(orbit.len() * stabilizer_order(grp, orbit[0]), grp.order());
                    }
                }
            }
        }
    }

    #[test]
    fn conjugating_permutations() {
        assert_eq!(
            conjugating_permutation(31, 3).unwrap(),
            Permutation::multiplier(31, 3).unwrap()
        );
        assert_eq!(
            conjugating_permutation(13, 3).unwrap(),
            Permutation::multiplier(13, 2).unwrap()
        );
        for (p, m) in [(31u32, 3u32), (13, 3)] {
            let tau = conjugating_permutation(p, m).unwrap();
            let (h, _) = affine_group(p, m).unwrap();
            let o = orbits_on_ksubsets(&h, 2).unwrap();
            let induced = o.induced_permutation(&tau.pow(m as i64)).unwrap();
            assert_eq!(induced, (0..m as usize).collect::<Vec<_>>());
            assert!(h.contains(&tau.pow(m as i64)));
        }
    }

    #[test]
    fn g_permutes_h_orbits() {
        let (h, g) = affine_group(31, 3).unwrap();
        let o = orbits_on_ksubsets(&h, 2).unwrap();
        for x in g.generators() {
            let induced = o.induced_permutation(x).unwrap();
            let distinct: BTreeSet<_> = induced.iter().collect();
            assert_eq!(distinct.len(), 3);
        }
    }

    proptest! {
        #[test]
        fn conjugation_identities(a in 1u64..31, b_root in 1u64..31, i in 0u64..31) {
            let p = 31u32;
            let sigma = Permutation::shift(p, 1);
            let tau_a = Permutation::multiplier(p, a).unwrap();
            // τ_a σ^i τ_a^{-1} = σ^{ai}
            let lhs = tau_a.compose(&sigma.pow(i as i64)).compose(&tau_a.inverse());
            prop_assert_eq!(lhs, Permutation::shift(p, a * i));
            // σ^i τ_b σ^{-i} = σ^{(1-b)i} τ_b with b a cube
            let b = b_root.pow(3) % 31;
            let tau_b = Permutation::multiplier(p, b).unwrap();
            let lhs = sigma.pow(i as i64).compose(&tau_b).compose(&sigma.pow(-(i as i64)));
            let shift = ((1 + 31 - b) % 31) * i;
            prop_assert_eq!(lhs, Permutation::shift(p, shift).compose(&tau_b));
        }

        #[test]
        fn permutation_inverse(a in 1u64..13, i in 0u64..13) {
            let x = Permutation::multiplier(13, a).unwrap().compose(&Permutation::shift(13, i));
            prop_assert!(x.compose(&x.inverse()).is_identity());
            prop_assert_eq!(x.pow(x.order() as i64), Permutation::identity(13));
        }
    }

    #[test]
    fn structure_suite() {
        for (p, q, sizes) in [(31, 2, 155), (13, 5, 26)] {
            let c = crate::prcode::build_code(p, 3, q).unwrap();
            let checks = structure_checks(&c, p, 3, 200).unwrap();
            assert_eq!(checks.len(), 8);
            assert!(checks.iter().all(|c| c.passed), "{checks:?}");
            assert!(checks[4].detail.contains(&format!("[{sizes}, {sizes}, {sizes}]")));
        }
        // A code that H does not preserve.
        let f = crate::arith::PrimeField::new(2).unwrap();
        let mut row = vec![0u32; 13];
        row[0] = 1;
        let c = crate::prcode::LinearCode::new(f, 13, vec![row]).unwrap();
        let checks = structure_checks(&c, 13, 3, 10).unwrap();
        assert!(!checks[0].passed);
        assert!(checks[1..].iter().all(|c| c.passed));
    }
}
