//! Dense row reduction over a prime field.

use super::prime::PrimeField;

/// Reduced row echelon form of a set of row vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    field: PrimeField,
    width: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: PrimeField, width: usize, rows: &[Vec<u32>]) -> Self {
        let mut m: Vec<Vec<u32>> = rows.to_vec();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..width {
            let Some(i) = (r..m.len()).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(r, i);
            let inv = field.inv(m[r][c]).expect("nonzero pivot");
            for x in m[r].iter_mut() {
                *x = field.mul(*x, inv);
            }
            let pivot_row = m[r].clone();
            for (j, row) in m.iter_mut().enumerate() {
                if j == r || row[c] == 0 {
                    continue;
                }
                let factor = row[c];
                for (x, &p) in row.iter_mut().zip(&pivot_row) {
                    *x = field.sub(*x, field.mul(factor, p));
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.len() {
                break;
            }
        }
        m.truncate(r);
        Echelon {
            field,
            width,
            rows: m,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Whether `v` lies in the row space.
    pub fn contains(&self, v: &[u32]) -> bool {
        debug_assert_eq!(v.len(), self.width);
        let f = self.field;
        let mut w = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let factor = w[c];
            if factor == 0 {
                continue;
            }
            for (x, &p) in w.iter_mut().zip(row) {
                *x = f.sub(*x, f.mul(factor, p));
            }
        }
        w.iter().all(|&x| x == 0)
    }

    /// Basis of `{x : <x, row> = 0 for every row}`, one vector per free column.
    pub fn null_space(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let mut is_pivot = vec![false; self.width];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.width)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = vec![0u32; self.width];
                x[free] = 1;
                for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                    x[pc] = f.neg(row[free]);
                }
                x
            })
            .collect()
    }
}
