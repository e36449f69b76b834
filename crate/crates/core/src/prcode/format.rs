//! Text export of a cyclic code.
//!
//! ```text
//! p m q k
//! g_0 g_1 … g_deg
//! <k generator-matrix rows, p entries each>
//! ```
//!
//! Fields are separated by single spaces and every line ends in `\n`. The
//! parser only accepts this canonical form, so any accepted input writes
//! back byte for byte.

use std::fmt::Write as _;

use super::CyclicCode;
use crate::arith::{Polynomial, PrimeField};
use crate::error::{Error, Result};

/// Parses an unsigned decimal with no sign, padding or leading zeros.
pub(crate) fn canonical_uint(token: &str, line: usize) -> Result<u64> {
    let ok = !token.is_empty()
        && token.bytes().all(|b| b.is_ascii_digit())
        && (token == "0" || !token.starts_with('0'));
    if !ok {
        return Err(Error::parse(line, format!("expected an unsigned integer, got {token:?}")));
    }
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("integer {token:?} out of range")))
}

pub(crate) fn canonical_fields(text: &str, line: usize) -> Result<Vec<u64>> {
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(' ').map(|t| canonical_uint(t, line)).collect()
}

/// Splits into lines, requiring a final newline.
pub(crate) fn lines(input: &str) -> Result<Vec<&str>> {
    let body = input
        .strip_suffix('\n')
        .ok_or_else(|| Error::parse(input.lines().count().max(1), "missing final newline"))?;
    Ok(body.split('\n').collect())
}

impl CyclicCode {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let join = |v: &[u32]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        let _ = writeln!(s, "{} {} {} {}", self.p(), self.m(), self.q(), self.dimension());
        let _ = writeln!(s, "{}", join(self.generator_poly().coeffs()));
        for row in self.generator_matrix() {
            let _ = writeln!(s, "{}", join(row));
        }
        s
    }

    pub fn from_text(input: &str) -> Result<CyclicCode> {
        let lines = lines(input)?;
        if lines.len() < 2 {
            return Err(Error::parse(1, "expected a header and a generator polynomial"));
        }
        let header = canonical_fields(lines[0], 1)?;
        let [p, m, q, k] = header[..] else {
            return Err(Error::parse(1, "header must be `p m q k`"));
        };
        let small = |x: u64, what: &str| {
            u32::try_from(x).map_err(|_| Error::parse(1, format!("{what} out of range")))
        };
        let (p, m, q) = (small(p, "p")?, small(m, "m")?, small(q, "q")?);
        let field = PrimeField::new(q).map_err(|e| Error::parse(1, e.to_string()))?;
        if k > p as u64 || lines.len() as u64 != 2 + k {
            return Err(Error::parse(1, format!("expected {} lines after the header", 1 + k.min(p as u64))));
        }

        let g_coeffs = canonical_fields(lines[1], 2)?;
        if g_coeffs.iter().any(|&c| c >= q as u64) {
            return Err(Error::parse(2, "coefficient not reduced mod q"));
        }
        let g = Polynomial::new(field, g_coeffs.iter().map(|&c| c as u32).collect());
        if g.coeffs().len() != g_coeffs.len() {
            return Err(Error::parse(2, "generator polynomial has a zero leading coefficient"));
        }
        let code = CyclicCode::from_generator(p, m, g).map_err(|e| Error::parse(2, e.to_string()))?;
        if code.dimension() as u64 != k {
            return Err(Error::parse(1, format!("k = {k} but the generator gives {}", code.dimension())));
        }
        for (i, (line, expected)) in lines[2..].iter().zip(code.generator_matrix()).enumerate() {
            let row = canonical_fields(line, i + 3)?;
            if row.len() != expected.len() || row.iter().zip(expected).any(|(&a, &b)| a != b as u64) {
                return Err(Error::parse(i + 3, format!("row {i} is not x^{i} g(x)")));
            }
        }
        Ok(code)
    }
}
