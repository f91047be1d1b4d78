use std::fmt;

use super::CycloNumber;

/// Small dense matrix over ℚ(ζ_m), row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct CycloMatrix {
    order: u32,
    rows: usize,
    cols: usize,
    data: Vec<CycloNumber>,
}

impl CycloMatrix {
    pub fn zeros(order: u32, rows: usize, cols: usize) -> Self {
        CycloMatrix {
            order,
            rows,
            cols,
            data: vec![CycloNumber::zero(order); rows * cols],
        }
    }

    pub fn identity(order: u32, n: usize) -> Self {
        let mut m = Self::zeros(order, n, n);
        for i in 0..n {
            m.set(i, i, CycloNumber::one(order));
        }
        m
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloNumber {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycloNumber) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.order, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.order, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CycloMatrix {
            order: self.order,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn trace(&self) -> CycloNumber {
        let mut t = CycloNumber::zero(self.order);
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    /// Row echelon form by Gaussian elimination; returns (echelon matrix, pivot columns, sign of row swaps).
    fn echelon(&self) -> (Self, Vec<usize>, bool) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut negated = false;
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(pr) = (row..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            if pr != row {
                for j in 0..a.cols {
                    a.data.swap(pr * a.cols + j, row * a.cols + j);
                }
                negated = !negated;
            }
            let inv = a.get(row, col).inverse().expect("pivot is nonzero");
            for r in row + 1..a.rows {
                let f = a.get(r, col) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in col..a.cols {
                    let v = a.get(r, j) - &(&f * a.get(row, j));
                    a.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots, negated)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    pub fn det(&self) -> CycloNumber {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let (a, pivots, negated) = self.echelon();
        if pivots.len() < self.rows {
            return CycloNumber::zero(self.order);
        }
        let mut d = CycloNumber::one(self.order);
        for i in 0..self.rows {
            d = &d * a.get(i, i);
        }
        if negated {
            -d
        } else {
            d
        }
    }

    /// Inverse by Gauss-Jordan elimination, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::zeros(self.order, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, CycloNumber::one(self.order));
        }
        for col in 0..n {
            let pr = (col..n).find(|&r| !aug.get(r, col).is_zero())?;
            for j in 0..2 * n {
                aug.data.swap(pr * 2 * n + j, col * 2 * n + j);
            }
            let inv = aug.get(col, col).inverse().ok()?;
            for j in 0..2 * n {
                let v = aug.get(col, j) * &inv;
                aug.set(col, j, v);
            }
            for r in 0..n {
                if r == col || aug.get(r, col).is_zero() {
                    continue;
                }
                let f = aug.get(r, col).clone();
                for j in 0..2 * n {
                    let v = aug.get(r, j) - &(&f * aug.get(col, j));
                    aug.set(r, j, v);
                }
            }
        }
        let mut out = Self::zeros(self.order, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(out)
    }

    /// Submatrix on the given rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.order, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }
}

impl fmt::Debug for CycloMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CycloMatrix {}x{} over Q(zeta_{})", self.rows, self.cols, self.order)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::{rat, zeta_pow};

    fn from_ints(order: u32, rows: &[&[i64]]) -> CycloMatrix {
        let mut m = CycloMatrix::zeros(order, rows.len(), rows[0].len());
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, CycloNumber::from_int(order, v));
            }
        }
        m
    }

    #[test]
    fn rank_and_det_of_integer_matrices() {
        let a = from_ints(1, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(a.rank(), 2);
        assert!(a.det().is_zero());
        let b = from_ints(1, &[&[0, 1], &[1, 0]]);
        assert_eq!(b.det(), CycloNumber::from_int(1, -1));
        let c = from_ints(1, &[&[2, 1, 0], &[0, 3, 1], &[1, 0, 4]]);
        // 2*12 - 1*(0-1) = 25
        assert_eq!(c.det(), CycloNumber::from_int(1, 25));
    }

    #[test]
    fn inverse_round_trip() {
        let mut a = CycloMatrix::zeros(4, 2, 2);
        a.set(0, 0, zeta_pow(4, 1));
        a.set(0, 1, CycloNumber::from_rational(4, rat(1, 2)));
        a.set(1, 1, zeta_pow(4, 3));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), CycloMatrix::identity(4, 2));
        assert!(from_ints(1, &[&[1, 1], &[1, 1]]).inverse().is_none());
    }
}
