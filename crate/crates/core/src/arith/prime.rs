use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Deterministic Miller–Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in SMALL {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    acc
}

/// Smallest `d >= 1` with `a^d = 1 (mod n)`, or `None` when `gcd(a, n) != 1`.
pub fn multiplicative_order(a: u64, n: u64) -> Option<u64> {
    if n < 2 || num_integer::gcd(a % n, n) != 1 {
        return None;
    }
    let mut x = a % n;
    let mut d = 1;
    while x != 1 {
        x = mul_mod(x, a, n);
        d += 1;
    }
    Some(d)
}

/// Smallest primitive root modulo the prime `p`.
pub fn smallest_primitive_root(p: u32) -> Result<u32> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if p == 2 {
        return Ok(1);
    }
    let order = (p - 1) as u64;
    let factors = prime_factors(order);
    (2..p)
        .find(|&g| {
            factors
                .iter()
                .all(|&f| mod_pow(g as u64, order / f, p as u64) != 1)
        })
        .ok_or(Error::NotPrime(p as u64))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            out.push(f);
            while n % f == 0 {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The prime field `F_q`. Elements of hot loops are plain `u32` residues;
/// [`PrimeFieldElement`] is the checked public form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    q: u32,
}

impl PrimeField {
    pub fn new(q: u32) -> Result<Self> {
        if !is_prime(q as u64) {
            return Err(Error::NotPrime(q as u64));
        }
        Ok(PrimeField { q })
    }

    pub const fn order(self) -> u32 {
        self.q
    }

    pub fn element(self, value: u64) -> PrimeFieldElement {
        PrimeFieldElement {
            value: (value % self.q as u64) as u32,
            q: self.q,
        }
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.q as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        self.add(a, self.q - b % self.q)
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a as u64 * b as u64 % self.q as u64) as u32
    }

    pub fn inv(self, a: u32) -> Result<u32> {
        if a % self.q == 0 {
            return Err(Error::ZeroInverse);
        }
        // a^(q-2) by Fermat
        Ok(mod_pow(a as u64, self.q as u64 - 2, self.q as u64) as u32)
    }
}

/// An element of `F_q` that carries its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeFieldElement {
    value: u32,
    q: u32,
}

impl PrimeFieldElement {
    pub fn new(value: u64, q: u32) -> Result<Self> {
        Ok(PrimeField::new(q)?.element(value))
    }

    pub const fn value(self) -> u32 {
        self.value
    }

    pub const fn modulus(self) -> u32 {
        self.q
    }

    pub fn field(self) -> PrimeField {
        PrimeField { q: self.q }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inverse(self) -> Result<Self> {
        Ok(PrimeFieldElement {
            value: self.field().inv(self.value)?,
            q: self.q,
        })
    }
}

/// `a^{-1}` in `F_q`.
pub fn field_inverse(a: PrimeFieldElement) -> Result<PrimeFieldElement> {
    a.inverse()
}

impl fmt::Display for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident) => {
        impl $tr for PrimeFieldElement {
            type Output = PrimeFieldElement;
            fn $method(self, rhs: Self) -> Self {
                assert_eq!(self.q, rhs.q, "mixed moduli");
                PrimeFieldElement {
                    value: self.field().$method(self.value, rhs.value),
                    q: self.q,
                }
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Neg for PrimeFieldElement {
    type Output = PrimeFieldElement;
    fn neg(self) -> Self {
        PrimeFieldElement {
            value: self.field().neg(self.value),
            q: self.q,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn el(a: u64, q: u32) -> PrimeFieldElement {
        PrimeFieldElement::new(a, q).unwrap()
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(field_inverse(el(1, 5)).unwrap().value(), 1);
        assert_eq!(field_inverse(el(2, 5)).unwrap().value(), 3);
        assert_eq!(field_inverse(el(4, 13)).unwrap().value(), 10);
        assert_eq!(field_inverse(el(0, 13)), Err(Error::ZeroInverse));
    }

    #[test]
    fn primality_against_sieve() {
        let n = 5000;
        let mut sieve = vec![true; n];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..n {
            if sieve[i] {
                for j in (i * i..n).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (i, &p) in sieve.iter().enumerate() {
            assert_eq!(is_prime(i as u64), p, "{i}");
        }
        assert!(is_prime(18446744073709551557));
        assert!(!is_prime(3215031751));
    }

    #[test]
    fn orders_and_roots() {
        assert_eq!(multiplicative_order(2, 31), Some(5));
        assert_eq!(multiplicative_order(5, 13), Some(4));
        assert_eq!(multiplicative_order(3, 6), None);
        assert_eq!(smallest_primitive_root(31).unwrap(), 3);
        assert_eq!(smallest_primitive_root(13).unwrap(), 2);
        assert_eq!(smallest_primitive_root(7).unwrap(), 3);
        assert!(smallest_primitive_root(15).is_err());
    }

    #[test]
    fn non_prime_modulus_rejected() {
        assert_eq!(PrimeField::new(12), Err(Error::NotPrime(12)));
    }

    proptest! {
        #[test]
        fn inverse_is_an_involution(a in 1u64..1000, qi in 0usize..5) {
            let q = [2u32, 3, 5, 13, 997][qi];
            let x = el(a, q);
            prop_assume!(!x.is_zero());
            let inv = field_inverse(x).unwrap();
            prop_assert_eq!((x * inv).value(), 1);
            prop_assert_eq!(field_inverse(inv).unwrap(), x);
        }
    }
}
