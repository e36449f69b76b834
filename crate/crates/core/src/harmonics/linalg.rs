//! Exact linear algebra over `Q`, done on integer rows.
//!
//! Rows are scaled to integers, then reduced with fraction-free row
//! operations (`r <- a·r - b·s`) followed by division by the row content,
//! which keeps entries small. The result is a reduced echelon form up to a
//! positive scalar per row.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Scales a rational row to a primitive integer row with the same kernel.
pub(crate) fn integer_row(row: &[BigRational]) -> Vec<BigInt> {
    let denom = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = row.iter().map(|x| x.numer() * (&denom / x.denom())).collect();
    make_primitive(&mut out);
    out
}

/// Divides by the gcd of the entries (no-op for the zero row).
fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Makes the first nonzero entry positive.
pub(crate) fn normalize_sign(row: &mut [BigInt]) {
    if row.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in row.iter_mut() {
            *x = -&*x;
        }
    }
}

/// Reduced integer echelon form: pivot rows with positive pivots, zeros in
/// every other row's pivot column.
pub(crate) struct Reduced {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Reduced {
    pub fn new(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Self {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(found) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, found);
            if rows[r][c].is_negative() {
                for x in rows[r].iter_mut() {
                    *x = -&*x;
                }
            }
            make_primitive(&mut rows[r]);
            let (head, tail) = rows.split_at_mut(r);
            let (pivot_row, rest) = tail.split_first_mut().expect("row r exists");
            for other in head.iter_mut().chain(rest.iter_mut()) {
                if other[c].is_zero() {
                    continue;
                }
                let a = pivot_row[c].clone();
                let b = other[c].clone();
                for (x, y) in other.iter_mut().zip(pivot_row.iter()) {
                    *x = &a * &*x - &b * y;
                }
                make_primitive(other);
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        Reduced {
            rows,
            pivots,
            ncols,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Kernel basis: one primitive integer vector per free column, first
    /// nonzero entry positive.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        let lcm = self
            .rows
            .iter()
            .zip(&self.pivots)
            .fold(BigInt::one(), |acc, (row, &c)| acc.lcm(&row[c]));
        (0..self.ncols)
            .filter(|c| !self.pivots.contains(c))
            .map(|free| {
                let mut v = vec![BigInt::zero(); self.ncols];
                v[free] = lcm.clone();
                for (row, &c) in self.rows.iter().zip(&self.pivots) {
                    v[c] = -(&row[free] * &lcm) / &row[c];
                }
                make_primitive(&mut v);
                normalize_sign(&mut v);
                v
            })
            .collect()
    }
}

/// Kernel of a rational matrix given by rows.
pub(crate) fn kernel(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigInt>> {
    Reduced::new(rows.iter().map(|r| integer_row(r)).collect(), ncols).kernel()
}

pub(crate) fn rank(rows: &[Vec<BigRational>], ncols: usize) -> usize {
    Reduced::new(rows.iter().map(|r| integer_row(r)).collect(), ncols).rank()
}

/// Some solution of `A x = b` (free variables set to zero), or `None` if
/// the system is inconsistent.
pub(crate) fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let ncols = a.first().map_or(0, |r| r.len());
    let rows: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut aug = row.clone();
            aug.push(rhs.clone());
            integer_row(&aug)
        })
        .collect();
    let red = Reduced::new(rows, ncols + 1);
    if red.pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (row, &c) in red.rows.iter().zip(&red.pivots) {
        x[c] = BigRational::new(row[ncols].clone(), row[c].clone());
    }
    Some(x)
}

/// Inverse of a square matrix, if nonsingular.
pub(crate) fn inverse(a: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let rows: Vec<Vec<BigInt>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut aug = row.clone();
            aug.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            integer_row(&aug)
        })
        .collect();
    let red = Reduced::new(rows, 2 * n);
    if red.rank() < n || red.pivots[n - 1] != n - 1 {
        return None;
    }
    Some(
        red.rows
            .iter()
            .zip(&red.pivots)
            .map(|(row, &c)| {
                (n..2 * n)
                    .map(|j| BigRational::new(row[j].clone(), row[c].clone()))
                    .collect()
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn kernel_of_small_matrices() {
        // x + y + z = 0
        let k = kernel(&[vec![q(1, 1), q(1, 1), q(1, 1)]], 3);
        assert_eq!(k, vec![ints(&[1, -1, 0]), ints(&[1, 0, -1])]);
        let k = kernel(&[vec![q(1, 2), q(1, 3)], vec![q(1, 1), q(2, 3)]], 2);
        assert_eq!(k, vec![ints(&[2, -3])]);
        assert!(kernel(&[vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(3, 1)]], 2).is_empty());
        assert_eq!(kernel(&[], 2).len(), 2);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let rows = vec![
            vec![q(2, 1), q(-1, 3), q(5, 1), q(0, 1)],
            vec![q(4, 1), q(-2, 3), q(10, 1), q(1, 7)],
        ];
        let k = kernel(&rows, 4);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &rows {
                let dot: BigRational = row
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * BigRational::from_integer(b.clone()))
                    .sum();
                assert!(dot.is_zero());
            }
        }
        assert_eq!(rank(&rows, 4), 2);
    }

    #[test]
    fn solve_and_inverse() {
        let a = vec![vec![q(2, 1), q(1, 1)], vec![q(1, 1), q(3, 1)]];
        let x = solve(&a, &[q(3, 1), q(5, 2)]).unwrap();
        assert_eq!(x, vec![q(13, 10), q(2, 5)]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv, vec![vec![q(3, 5), q(-1, 5)], vec![q(-1, 5), q(2, 5)]]);
        let singular = vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]];
        assert!(inverse(&singular).is_none());
        assert!(solve(&singular, &[q(1, 1), q(3, 1)]).is_none());
        let x = solve(&singular, &[q(1, 1), q(2, 1)]).unwrap();
        assert_eq!(x, vec![q(1, 1), q(0, 1)]);
    }
}
