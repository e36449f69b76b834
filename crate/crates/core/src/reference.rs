//! Published reference values for the two worked instances:
//! `PR_2^3(31)` and `PR_5^3(13)`.
//!
//! The Jacobi polynomials and harmonic enumerators are stored as data files
//! in the crate's `data/` directory, in the same text formats the library
//! writes.

use crate::error::Result;
use crate::harmonics::WeightEnumeratorVector;
use crate::jacobi::JacobiPolynomial;

/// An instance with published design parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Instance {
    pub p: u32,
    pub m: u32,
    pub q: u32,
    /// Published `(ℓ, λ)` rows for `t = 2`.
    pub lambdas: &'static [(usize, u64)],
    /// Published orbit representatives on pairs, in printed order.
    pub representatives: [[usize; 2]; 3],
}

pub const BINARY_31: Instance = Instance {
    p: 31,
    m: 3,
    q: 2,
    lambdas: &[
        (5, 14),
        (6, 81),
        (7, 315),
        (8, 1372),
        (9, 4716),
        (10, 12474),
        (11, 28985),
        (12, 59070),
        (13, 101478),
        (14, 151060),
        (15, 199122),
        (16, 227568),
        (17, 225760),
        (18, 199053),
        (19, 153045),
        (20, 100130),
        (21, 58212),
        (22, 30261),
        (23, 12397),
        (24, 4140),
        (25, 1620),
        (26, 455),
    ],
    representatives: [[13, 18], [5, 9], [5, 17]],
};

pub const QUINARY_13: Instance = Instance {
    p: 13,
    m: 3,
    q: 5,
    lambdas: &[
        (4, 84),
        (5, 820),
        (6, 6360),
        (7, 36540),
        (8, 144368),
        (9, 416376),
        (10, 826560),
        (11, 1107480),
        (12, 883740),
    ],
    representatives: [[6, 12], [4, 7], [2, 10]],
};

impl Instance {
    pub fn by_prime(p: u32) -> Option<Instance> {
        [BINARY_31, QUINARY_13].into_iter().find(|i| i.p == p)
    }

    pub fn ell_range(&self) -> std::ops::RangeInclusive<usize> {
        let first = self.lambdas.first().map_or(0, |r| r.0);
        let last = self.lambdas.last().map_or(0, |r| r.0);
        first..=last
    }

    pub fn lambda(&self, ell: usize) -> Option<u64> {
        self.lambdas.iter().find(|r| r.0 == ell).map(|r| r.1)
    }

    /// Published Jacobi polynomials for the three orbit representatives.
    pub fn jacobi_polynomials(&self) -> Result<Vec<JacobiPolynomial>> {
        let texts: [&str; 3] = match self.p {
            31 => [
                include_str!("../data/example51_i.txt"),
                include_str!("../data/example51_ii.txt"),
                include_str!("../data/example51_iii.txt"),
            ],
            _ => [
                include_str!("../data/example52_i.txt"),
                include_str!("../data/example52_ii.txt"),
                include_str!("../data/example52_iii.txt"),
            ],
        };
        texts.iter().map(|t| JacobiPolynomial::from_text(t)).collect()
    }

    /// Published harmonic weight enumerators, each known only up to an
    /// unspecified scalar.
    pub fn harmonic_enumerators(&self) -> Result<Vec<WeightEnumeratorVector>> {
        let texts: [&str; 3] = match self.p {
            31 => [
                include_str!("../data/hwe51_f1.txt"),
                include_str!("../data/hwe51_f2.txt"),
                include_str!("../data/hwe51_f3.txt"),
            ],
            _ => [
                include_str!("../data/hwe52_f1.txt"),
                include_str!("../data/hwe52_f2.txt"),
                include_str!("../data/hwe52_f3.txt"),
            ],
        };
        texts.iter().map(|t| WeightEnumeratorVector::from_text(t)).collect()
    }

    /// Dimension of the invariant harmonic space as printed alongside the
    /// enumerators.
    pub const fn stated_invariant_dimension(&self) -> usize {
        3
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::binomial;

    #[test]
    fn data_files_parse() {
        for inst in [BINARY_31, QUINARY_13] {
            let size = (inst.q as u128).pow(inst.p - (inst.p - 1) / inst.m);
            for j in inst.jacobi_polynomials().unwrap() {
                assert_eq!((j.n(), j.t()), (inst.p as usize, 2));
                assert_eq!(j.evaluate_at_ones(), size);
            }
            for e in inst.harmonic_enumerators().unwrap() {
                assert_eq!(e.n(), inst.p as usize);
            }
        }
    }

    #[test]
    fn published_rows_satisfy_divisibility() {
        // b = λ·C(p,2)/C(ℓ,2) must be an integer
        for inst in [BINARY_31, QUINARY_13] {
            for &(ell, lambda) in inst.lambdas {
                let num = lambda as u128 * binomial(inst.p as usize, 2);
                assert_eq!(num % binomial(ell, 2), 0, "ℓ = {ell}");
            }
        }
    }
}
