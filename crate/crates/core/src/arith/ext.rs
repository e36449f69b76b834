use super::poly::Polynomial;
use super::prime::{is_prime, multiplicative_order, PrimeField};
use crate::error::{Error, Result};

/// Coefficients of the `index`-th polynomial of degree `< d` in the order
/// "compare `(c_{d-1}, …, c_0)` lexicographically", i.e. base-`q` digits of
/// `index`, lowest first.
fn digits(index: u128, q: u32, d: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(d);
    let mut r = index;
    for _ in 0..d {
        out.push((r % q as u128) as u32);
        r /= q as u128;
    }
    out
}

fn checked_pow(q: u32, d: usize) -> Result<u128> {
    (q as u128)
        .checked_pow(d as u32)
        .ok_or_else(|| Error::invalid(format!("{q}^{d} overflows")))
}

/// Irreducibility of a monic polynomial by the distinct-degree criterion:
/// `f` of degree `d` is irreducible iff `gcd(x^{q^i} - x, f) = 1` for
/// every `1 <= i <= d/2`.
pub fn is_irreducible(f: &Polynomial) -> bool {
    let Some(d) = f.degree() else { return false };
    if d == 0 {
        return false;
    }
    let field = f.field();
    let q = field.order() as u64;
    let x = Polynomial::monomial(field, 1);
    let mut h = x.clone();
    for _ in 1..=d / 2 {
        h = h.pow_mod(q, f).expect("nonzero modulus");
        if h.sub(&x).gcd(f).degree() != Some(0) {
            return false;
        }
    }
    true
}

/// Smallest monic irreducible polynomial of degree `d` over `F_q`, under
/// lexicographic order of `(c_{d-1}, …, c_0)`.
pub fn find_irreducible(q: u32, d: usize) -> Result<Polynomial> {
    let field = PrimeField::new(q)?;
    if d == 0 {
        return Err(Error::invalid("degree must be positive"));
    }
    let count = checked_pow(q, d)?;
    for index in 0..count {
        let mut c = digits(index, q, d);
        c.push(1);
        let f = Polynomial::new(field, c);
        if is_irreducible(&f) {
            return Ok(f);
        }
    }
    unreachable!("an irreducible polynomial exists in every degree")
}

/// `F_{q^d}` as `F_q[x] / (modulus)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    base: PrimeField,
    modulus: Polynomial,
}

/// Element of an [`ExtField`]: exactly `d` coefficients, lowest first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtFieldElement(Vec<u32>);

impl ExtFieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    /// Coefficient of `x^0` if the element lies in the prime subfield.
    pub fn as_base(&self) -> Option<u32> {
        if self.0[1..].iter().all(|&c| c == 0) {
            Some(self.0[0])
        } else {
            None
        }
    }
}

impl ExtField {
    /// Requires a monic irreducible modulus.
    pub fn new(modulus: Polynomial) -> Result<Self> {
        if !modulus.is_monic() || !is_irreducible(&modulus) {
            return Err(Error::invalid(format!(
                "modulus {modulus} is not monic irreducible"
            )));
        }
        Ok(ExtField {
            base: modulus.field(),
            modulus,
        })
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn modulus(&self) -> &Polynomial {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("modulus is nonzero")
    }

    /// Number of elements, `q^d`.
    pub fn size(&self) -> Result<u128> {
        checked_pow(self.base.order(), self.degree())
    }

    pub fn zero(&self) -> ExtFieldElement {
        ExtFieldElement(vec![0; self.degree()])
    }

    pub fn one(&self) -> ExtFieldElement {
        self.from_base(1)
    }

    pub fn from_base(&self, c: u32) -> ExtFieldElement {
        let mut v = vec![0; self.degree()];
        v[0] = c % self.base.order();
        ExtFieldElement(v)
    }

    /// The `index`-th element in coefficient-tuple order.
    pub fn element_at(&self, index: u128) -> ExtFieldElement {
        ExtFieldElement(digits(index, self.base.order(), self.degree()))
    }

    fn from_poly(&self, p: &Polynomial) -> ExtFieldElement {
        let r = p.rem(&self.modulus).expect("nonzero modulus");
        let mut v = r.coeffs().to_vec();
        v.resize(self.degree(), 0);
        ExtFieldElement(v)
    }

    fn to_poly(&self, a: &ExtFieldElement) -> Polynomial {
        Polynomial::new(self.base, a.0.clone())
    }

    pub fn add(&self, a: &ExtFieldElement, b: &ExtFieldElement) -> ExtFieldElement {
        ExtFieldElement(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| self.base.add(x, y))
                .collect(),
        )
    }

    pub fn neg(&self, a: &ExtFieldElement) -> ExtFieldElement {
        ExtFieldElement(a.0.iter().map(|&x| self.base.neg(x)).collect())
    }

    pub fn sub(&self, a: &ExtFieldElement, b: &ExtFieldElement) -> ExtFieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &ExtFieldElement, b: &ExtFieldElement) -> ExtFieldElement {
        self.from_poly(&self.to_poly(a).mul(&self.to_poly(b)))
    }

    pub fn pow(&self, a: &ExtFieldElement, mut e: u128) -> ExtFieldElement {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// A primitive `p`-th root of unity together with the field it lives in.
#[derive(Clone, Debug)]
pub struct PthRoot {
    pub field: ExtField,
    pub alpha: ExtFieldElement,
}

impl PthRoot {
    /// Degree `d` of the extension, the multiplicative order of `q` mod `p`.
    pub fn degree(&self) -> usize {
        self.field.degree()
    }
}

/// Deterministic primitive `p`-th root of unity over `F_q`.
///
/// The extension degree is the order of `q` modulo `p` and the modulus is
/// [`find_irreducible`]'s choice. Nonzero elements `β` are tried in
/// coefficient-tuple order and the first `β^{(q^d-1)/p} != 1` is returned.
pub fn primitive_pth_root(q: u32, p: u32) -> Result<PthRoot> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    let base = PrimeField::new(q)?;
    if p == q {
        return Err(Error::invalid("p must differ from the field characteristic"));
    }
    let d = multiplicative_order(q as u64, p as u64).expect("p, q distinct primes") as usize;
    let field = ExtField::new(find_irreducible(base.order(), d)?)?;
    let size = field.size()?;
    let exponent = (size - 1) / p as u128;
    let one = field.one();
    for index in 1..size {
        let beta = field.element_at(index);
        let candidate = field.pow(&beta, exponent);
        if candidate != one {
            return Ok(PthRoot {
                field,
                alpha: candidate,
            });
        }
    }
    unreachable!("the multiplicative group of F_(q^d) is cyclic of order divisible by p")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Irreducibility by trial division against every monic polynomial of
    /// degree 1..=d/2, independent of the gcd criterion.
    fn irreducible_by_trial_division(f: &Polynomial) -> bool {
        let field = f.field();
        let q = field.order();
        let d = f.degree().unwrap();
        for e in 1..=d / 2 {
            for index in 0..(q as u128).pow(e as u32) {
                let mut c = digits(index, q, e);
                c.push(1);
                let g = Polynomial::new(field, c);
                if g.divides(f).unwrap() {
                    return false;
                }
            }
        }
        true
    }

    fn oracle_smallest(q: u32, d: usize) -> Polynomial {
        let field = PrimeField::new(q).unwrap();
        (0..(q as u128).pow(d as u32))
            .map(|i| {
                let mut c = digits(i, q, d);
                c.push(1);
                Polynomial::new(field, c)
            })
            .find(irreducible_by_trial_division)
            .unwrap()
    }

    #[test]
    fn degree_one_over_f2_is_x() {
        let f = find_irreducible(2, 1).unwrap();
        assert_eq!(f.coeffs(), &[0, 1]);
    }

    #[test]
    fn matches_exhaustive_oracle() {
        for (q, d) in [(2, 2), (2, 3), (2, 5), (2, 8), (3, 4), (5, 2), (5, 4), (7, 3)] {
            assert_eq!(find_irreducible(q, d).unwrap(), oracle_smallest(q, d), "q={q} d={d}");
        }
        // frozen from the oracle
        assert_eq!(find_irreducible(2, 5).unwrap().coeffs(), &[1, 0, 1, 0, 0, 1]);
        assert_eq!(find_irreducible(5, 4).unwrap().coeffs(), &[2, 0, 0, 0, 1]);
    }

    #[test]
    fn irreducible_output_has_no_small_factors() {
        for (q, d) in [(2, 6), (3, 5), (5, 4), (13, 3)] {
            let f = find_irreducible(q, d).unwrap();
            for a in 0..q {
                assert_ne!(f.eval(a), 0);
            }
            assert!(irreducible_by_trial_division(&f));
        }
    }

    #[test]
    fn pth_root_degrees() {
        assert_eq!(primitive_pth_root(2, 31).unwrap().degree(), 5);
        assert_eq!(primitive_pth_root(5, 13).unwrap().degree(), 4);
        assert_eq!(primitive_pth_root(2, 7).unwrap().degree(), 3);
        assert!(primitive_pth_root(5, 5).is_err());
        assert!(primitive_pth_root(2, 9).is_err());
    }

    #[test]
    fn pth_root_has_exact_order_p() {
        for (q, p) in [(2u32, 31u32), (5, 13), (2, 7), (3, 11), (2, 17)] {
            let r = primitive_pth_root(q, p).unwrap();
            let one = r.field.one();
            assert_eq!(r.field.pow(&r.alpha, p as u128), one);
            let mut x = r.alpha.clone();
            for _ in 1..p {
                assert_ne!(x, one);
                x = r.field.mul(&x, &r.alpha);
            }
        }
    }

    #[test]
    fn ext_field_rejects_reducible_modulus() {
        let f2 = PrimeField::new(2).unwrap();
        // x^2 + 1 = (x + 1)^2 over F_2
        assert!(ExtField::new(Polynomial::new(f2, vec![1, 0, 1])).is_err());
    }
}
