//! Text forms of subset functions and weight enumerators.
//!
//! Rationals are written `num/den` in lowest terms with `den ≥ 1` (so `0/1`,
//! `-155/1`). A subset function starts with a `v k` header, then one line
//! per nonzero value: the subset's points ascending, then the value. Lines
//! are in lexicographic subset order. A weight enumerator has one line
//! `w num/den` for each weight `0..=n`.
//!
//! Parsers accept only these canonical forms, so accepted input writes back
//! unchanged.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{SubsetFunction, WeightEnumeratorVector};
use crate::error::{Error, Result};
use crate::prcode::format::{canonical_fields, canonical_uint, lines};
use crate::subset::{PointSet, MAX_POINTS};

pub fn format_rational(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn canonical_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) && (s == "0" || !s.starts_with('0'))
}

/// Parses `num/den` in canonical form.
pub fn parse_rational(token: &str) -> Result<BigRational> {
    let bad = || Error::parse(0, format!("expected a reduced fraction num/den, got {token:?}"));
    let (num, den) = token.split_once('/').ok_or_else(bad)?;
    let digits = num.strip_prefix('-').unwrap_or(num);
    if !canonical_digits(digits) || !canonical_digits(den) || num == "-0" {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() || !num.gcd(&den).is_one() {
        return Err(bad());
    }
    Ok(BigRational::new_raw(num, den))
}

fn rational_at(token: &str, line: usize) -> Result<BigRational> {
    parse_rational(token).map_err(|e| match e {
        Error::Parse { message, .. } => Error::parse(line, message),
        other => other,
    })
}

impl SubsetFunction {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.v, self.k);
        for (z, x) in self.iter() {
            for p in z.iter() {
                let _ = write!(s, "{p} ");
            }
            let _ = writeln!(s, "{}", format_rational(x));
        }
        s
    }

    pub fn from_text(input: &str) -> Result<SubsetFunction> {
        let lines = lines(input)?;
        let header = canonical_fields(lines[0], 1)?;
        let [v, k] = header[..] else {
            return Err(Error::parse(1, "header must be `v k`"));
        };
        if v > MAX_POINTS as u64 || k > v {
            return Err(Error::parse(1, format!("need k <= v <= {MAX_POINTS}")));
        }
        let mut f = SubsetFunction::zero(v as usize, k as usize)
            .map_err(|e| Error::parse(1, e.to_string()))?;
        let mut prev: Option<PointSet> = None;
        for (i, line) in lines.iter().enumerate().skip(1) {
            let n = i + 1;
            let (points, value) = match line.rsplit_once(' ') {
                _ if k == 0 => ("", *line),
                Some((points, value)) => (points, value),
                None => return Err(Error::parse(n, "missing points")),
            };
            let value = rational_at(value, n)?;
            if value.is_zero() {
                return Err(Error::parse(n, "zero values are omitted"));
            }
            let pts = if k == 0 { Vec::new() } else { canonical_fields(points, n)? };
            if pts.len() as u64 != k {
                return Err(Error::parse(n, format!("expected {k} points")));
            }
            if pts.windows(2).any(|w| w[0] >= w[1]) || pts.iter().any(|&p| p >= v) {
                return Err(Error::parse(n, "points must be increasing and below v"));
            }
            let z: PointSet = pts.iter().map(|&p| p as usize).collect();
            if prev.is_some_and(|p| p >= z) {
                return Err(Error::parse(n, "subsets must be strictly increasing"));
            }
            prev = Some(z);
            f.set(z, value).map_err(|e| Error::parse(n, e.to_string()))?;
        }
        Ok(f)
    }
}

impl WeightEnumeratorVector {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (w, x) in self.coeffs().iter().enumerate() {
            let _ = writeln!(s, "{w} {}", format_rational(x));
        }
        s
    }

    pub fn from_text(input: &str) -> Result<WeightEnumeratorVector> {
        let lines = lines(input)?;
        let coeffs = lines
            .iter()
            .enumerate()
            .map(|(i, line)| {
                let n = i + 1;
                let (w, x) = line
                    .split_once(' ')
                    .ok_or_else(|| Error::parse(n, "expected `w num/den`"))?;
                if canonical_uint(w, n)? != i as u64 {
                    return Err(Error::parse(n, format!("expected weight {i}")));
                }
                rational_at(x, n)
            })
            .collect::<Result<Vec<_>>>()?;
        WeightEnumeratorVector::from_coeffs(coeffs)
    }

    /// Multiplies by the lcm of the denominators and divides by the gcd of
    /// the numerators, making the leading nonzero coefficient positive.
    pub fn primitive(&self) -> WeightEnumeratorVector {
        let mut ints = super::linalg::integer_row(self.coeffs());
        super::linalg::normalize_sign(&mut ints);
        WeightEnumeratorVector::from_coeffs(ints.into_iter().map(BigRational::from_integer).collect())
            .expect("nonempty")
    }

    /// Whether the two vectors agree up to a nonzero scalar.
    pub fn proportional_to(&self, other: &WeightEnumeratorVector) -> bool {
        self.n() == other.n() && self.is_zero() == other.is_zero() && self.primitive() == other.primitive()
    }

    pub fn has_negative(&self) -> bool {
        self.coeffs().iter().any(Signed::is_negative)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rationals() {
        for (s, x) in [("0/1", q(0, 1)), ("-155/1", q(-155, 1)), ("3/7", q(3, 7))] {
            assert_eq!(parse_rational(s).unwrap(), x);
            assert_eq!(format_rational(&x), s);
        }
        for bad in ["1", "2/4", "1/0", "-0/1", "01/2", "1/-2", "+1/2", "", "/", "1/2/3", " 1/2"] {
            assert!(parse_rational(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn function_round_trip() {
        let mut f = SubsetFunction::zero(6, 2).unwrap();
        f.set(PointSet::from_mask(0b11), q(-1, 3)).unwrap();
        f.set(PointSet::from_mask(0b110000), q(5, 1)).unwrap();
        let text = f.to_text();
        assert_eq!(text, "6 2\n0 1 -1/3\n4 5 5/1\n");
        assert_eq!(SubsetFunction::from_text(&text).unwrap(), f);

        let mut e = SubsetFunction::zero(4, 0).unwrap();
        e.set(PointSet::EMPTY, q(2, 1)).unwrap();
        assert_eq!(e.to_text(), "4 0\n2/1\n");
        assert_eq!(SubsetFunction::from_text("4 0\n2/1\n").unwrap(), e);
    }

    #[test]
    fn rejects_malformed_functions() {
        for bad in [
            "6 2\n4 5 5/1\n0 1 1/1\n",
            "6 2\n0 1 0/1\n",
            "6 2\n1 0 1/1\n",
            "6 2\n0 6 1/1\n",
            "6 2\n0 1/1\n",
            "6 2\n1/1\n",
            "6 7\n",
            "65 1\n",
            "6 2\n0 1 1/1\n0 1 1/1\n",
            "6 2",
            "4 0\n0 1 1/2\n",
            "4 0\n 1/2\n",
        ] {
            assert!(SubsetFunction::from_text(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn enumerator_round_trip() {
        let e = WeightEnumeratorVector::from_coeffs(vec![q(0, 1), q(-155, 1), q(1, 2)]).unwrap();
        let text = e.to_text();
        assert_eq!(text, "0 0/1\n1 -155/1\n2 1/2\n");
        assert_eq!(WeightEnumeratorVector::from_text(&text).unwrap(), e);
        for bad in ["0 0/1\n2 1/1\n", "1 0/1\n", "0 0/1", "0  0/1\n", "0 0\n"] {
            assert!(WeightEnumeratorVector::from_text(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn proportionality() {
        let a = WeightEnumeratorVector::from_coeffs(vec![q(0, 1), q(-2, 3), q(4, 3)]).unwrap();
        let b = WeightEnumeratorVector::from_coeffs(vec![q(0, 1), q(3, 1), q(-6, 1)]).unwrap();
        assert!(a.proportional_to(&b));
        assert_eq!(b.primitive().coeffs(), &[q(0, 1), q(1, 1), q(-2, 1)]);
        assert!(!a.proportional_to(&WeightEnumeratorVector::zero(2)));
    }
}
