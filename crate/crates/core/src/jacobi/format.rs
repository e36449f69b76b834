//! Text and JSON forms of a Jacobi polynomial.
//!
//! Text: one monomial per line, `coeff w^a z^b x^c y^d`, sorted by the `z`
//! then `y` exponent. Exponent 1 is written as the bare variable and zero
//! exponents are omitted. JSON: an array of `{m0, m1, n0, n1, coeff}`.
//!
//! Neither form can express the zero polynomial, which never arises as the
//! Jacobi polynomial of a code (the zero word always contributes).

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::JacobiPolynomial;
use crate::error::{Error, Result};
use crate::prcode::format::{canonical_uint, lines};

/// One monomial `coeff · w^{m0} z^{m1} x^{n0} y^{n1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiTerm {
    pub m0: usize,
    pub m1: usize,
    pub n0: usize,
    pub n1: usize,
    pub coeff: u64,
}

const VARS: [char; 4] = ['w', 'z', 'x', 'y'];

impl JacobiTerm {
    fn exponents(&self) -> [usize; 4] {
        [self.m0, self.m1, self.n0, self.n1]
    }

    fn render(&self, out: &mut String) {
        let _ = write!(out, "{}", self.coeff);
        for (var, e) in VARS.iter().zip(self.exponents()) {
            match e {
                0 => {}
                1 => {
                    let _ = write!(out, " {var}");
                }
                _ => {
                    let _ = write!(out, " {var}^{e}");
                }
            }
        }
    }

    fn parse(line: &str, n: usize) -> Result<JacobiTerm> {
        let mut tokens = line.split(' ');
        let coeff = canonical_uint(tokens.next().unwrap_or(""), n)?;
        let mut exps = [0usize; 4];
        let mut next_var = 0;
        for tok in tokens {
            let mut chars = tok.chars();
            let var = chars.next().unwrap_or(' ');
            let Some(pos) = VARS.iter().position(|&v| v == var) else {
                return Err(Error::parse(n, format!("unknown variable in {tok:?}")));
            };
            if pos < next_var {
                return Err(Error::parse(n, "variables must appear once, in the order w z x y"));
            }
            next_var = pos + 1;
            let rest = chars.as_str();
            exps[pos] = if rest.is_empty() {
                1
            } else {
                let e = rest
                    .strip_prefix('^')
                    .ok_or_else(|| Error::parse(n, format!("malformed factor {tok:?}")))?;
                let e = canonical_uint(e, n)?;
                if e < 2 {
                    return Err(Error::parse(n, "exponents 0 and 1 are not written"));
                }
                usize::try_from(e).map_err(|_| Error::parse(n, "exponent out of range"))?
            };
        }
        Ok(JacobiTerm {
            m0: exps[0],
            m1: exps[1],
            n0: exps[2],
            n1: exps[3],
            coeff,
        })
    }
}

/// Validates terms and assembles the polynomial. With `strict`, terms must
/// already be in canonical order.
fn assemble(terms: &[JacobiTerm], strict: bool, line_of: impl Fn(usize) -> usize) -> Result<JacobiPolynomial> {
    let first = terms
        .first()
        .ok_or_else(|| Error::parse(1, "no terms"))?;
    let t = first.m0.checked_add(first.m1).ok_or_else(|| Error::parse(1, "exponent overflow"))?;
    let n = first
        .n0
        .checked_add(first.n1)
        .and_then(|x| x.checked_add(t))
        .ok_or_else(|| Error::parse(1, "exponent overflow"))?;
    if n > crate::subset::MAX_POINTS {
        return Err(Error::parse(1, "code length too large"));
    }
    let mut poly = JacobiPolynomial::zero(n, t);
    let mut prev: Option<(usize, usize)> = None;
    for (i, term) in terms.iter().enumerate() {
        let line = line_of(i);
        if term.coeff == 0 {
            return Err(Error::parse(line, "zero coefficient"));
        }
        let shape_ok = term.m0.checked_add(term.m1) == Some(t)
            && term.n0.checked_add(term.n1) == Some(n - t);
        if !shape_ok {
            return Err(Error::parse(line, format!("exponents do not match n = {n}, t = {t}")));
        }
        let key = (term.m1, term.n1);
        if strict && prev.is_some_and(|p| p >= key) {
            return Err(Error::parse(line, "terms must be strictly sorted by (z, y) exponents"));
        }
        if !strict && poly.coeff(key.0, key.1) > 0 {
            return Err(Error::parse(line, "repeated monomial"));
        }
        prev = Some(key);
        poly.add_term(key.0, key.1, term.coeff);
    }
    Ok(poly)
}

impl JacobiPolynomial {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for term in self.terms() {
            term.render(&mut s);
            s.push('\n');
        }
        s
    }

    /// Accepts only the canonical text form, so accepted input writes back
    /// unchanged.
    pub fn from_text(input: &str) -> Result<JacobiPolynomial> {
        let lines = lines(input)?;
        let terms = lines
            .iter()
            .enumerate()
            .map(|(i, line)| JacobiTerm::parse(line, i + 1))
            .collect::<Result<Vec<_>>>()?;
        assemble(&terms, true, |i| i + 1)
    }

    pub fn to_json(&self) -> String {
        let terms: Vec<JacobiTerm> = self.terms().collect();
        serde_json::to_string_pretty(&terms).expect("plain data serializes")
    }

    /// Terms may come in any order; repeated monomials are rejected.
    pub fn from_json(input: &str) -> Result<JacobiPolynomial> {
        let terms: Vec<JacobiTerm> =
            serde_json::from_str(input).map_err(|e| Error::parse(e.line(), e.to_string()))?;
        assemble(&terms, false, |_| 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> JacobiPolynomial {
        let mut j = JacobiPolynomial::zero(31, 2);
        j.add_term(0, 0, 1);
        j.add_term(0, 5, 152);
        j.add_term(1, 4, 60);
        j.add_term(2, 3, 5);
        j.add_term(1, 28, 1);
        j
    }

    #[test]
    fn text_layout() {
        let text = sample().to_text();
        assert_eq!(
            text,
            "1 w^2 x^29\n152 w^2 x^24 y^5\n60 w z x^25 y^4\n1 w z x y^28\n5 z^2 x^26 y^3\n"
        );
    }

    #[test]
    fn round_trips() {
        let j = sample();
        assert_eq!(JacobiPolynomial::from_text(&j.to_text()).unwrap(), j);
        assert_eq!(JacobiPolynomial::from_json(&j.to_json()).unwrap(), j);
    }

    #[test]
    fn json_order_is_free() {
        let json = r#"[{"m0":0,"m1":1,"n0":1,"n1":0,"coeff":2},{"m0":1,"m1":0,"n0":1,"n1":0,"coeff":1}]"#;
        let j = JacobiPolynomial::from_json(json).unwrap();
        assert_eq!((j.n(), j.t()), (2, 1));
        assert_eq!(j.coeff(1, 0), 2);
        let dup = r#"[{"m0":1,"m1":0,"n0":1,"n1":0,"coeff":1},{"m0":1,"m1":0,"n0":1,"n1":0,"coeff":1}]"#;
        assert!(JacobiPolynomial::from_json(dup).is_err());
    }

    #[test]
    fn rejects_malformed_text() {
        for bad in [
            "",
            "\n",
            "1 w^2 x^29",
            "0 w^2 x^29\n",
            "1 x^29 w^2\n",
            "1 w^1 x^30\n",
            "1 w^2 x^29\n1 w^2 x^29\n",
            "5 z^2 x^26 y^3\n1 w^2 x^29\n",
            "1 w^2 x^29\n1 w^3 x^28\n",
            "1 q^2\n",
            "1 w^2 w\n",
            "1 w^02 x^29\n",
            "1  w^2 x^29\n",
            "1 w^99999999999999999999\n",
        ] {
            assert!(JacobiPolynomial::from_text(bad).is_err(), "{bad:?}");
        }
    }
}
