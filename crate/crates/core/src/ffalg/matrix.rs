use std::fmt;

use super::field::PrimeField;
use crate::error::{Error, Result};

/// Dense row-major matrix over a prime field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FieldMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.modulus();
        }
        m
    }

    /// Builds a matrix from rows, reducing every entry mod p.
    pub fn from_rows<R: AsRef<[u32]>>(field: PrimeField, rows: &[R], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::InvalidInput(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row.iter().map(|&x| x % field.modulus()));
        }
        Ok(FieldMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_fn(
        field: PrimeField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u32,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j) % field.modulus());
            }
        }
        FieldMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x % self.field.modulus();
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u32]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.row_iter().map(|r| r.to_vec()).collect()
    }

    pub fn push_row(&mut self, row: &[u32]) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::InvalidInput(format!(
                "cannot append a row of length {} to a matrix with {} columns",
                row.len(),
                self.cols
            )));
        }
        self.data
            .extend(row.iter().map(|&x| x % self.field.modulus()));
        self.rows += 1;
        Ok(())
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.cols != other.cols || self.field != other.field {
            return Err(Error::InvalidInput(format!(
                "cannot stack {}x{} over {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FieldMatrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn select_columns(&self, cols: &[usize]) -> FieldMatrix {
        FieldMatrix::from_fn(self.field, self.rows, cols.len(), |i, j| {
            self.get(i, cols[j])
        })
    }

    pub fn transpose(&self) -> FieldMatrix {
        FieldMatrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.cols != other.rows {
            return Err(Error::InvalidInput(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let p = f.modulus() as u64;
        let mut out = FieldMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0u64;
                for k in 0..self.cols {
                    acc = (acc + self.get(i, k) as u64 * other.get(k, j) as u64) % p;
                }
                out.data[i * other.cols + j] = acc as u32;
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[u32]) -> Vec<u32> {
        let f = self.field;
        let p = f.modulus() as u64;
        (0..self.cols)
            .map(|j| {
                let mut acc = 0u64;
                for (i, &x) in v.iter().enumerate() {
                    acc = (acc + x as u64 * self.get(i, j) as u64) % p;
                }
                acc as u32
            })
            .collect()
    }

    /// Reduced row-echelon form with zero rows removed, plus pivot columns.
    pub fn rref(&self) -> (FieldMatrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| m[i * cols + c] != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..cols {
                    m.swap(piv * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(m[r * cols + c]).expect("pivot is nonzero");
            for j in c..cols {
                m[r * cols + j] = f.mul(m[r * cols + j], inv);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = m[i * cols + c];
                if factor == 0 {
                    continue;
                }
                for j in c..cols {
                    let t = f.mul(factor, m[r * cols + j]);
                    m[i * cols + j] = f.sub(m[i * cols + j], t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.truncate(r * cols);
        (
            FieldMatrix {
                field: f,
                rows: r,
                cols,
                data: m,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        if self.rows <= 4 && self.cols <= 8 {
            let mut buf = [0u32; 32];
            buf[..self.data.len()].copy_from_slice(&self.data);
            return rank_in_place(
                self.field,
                &mut buf[..self.data.len()],
                self.rows,
                self.cols,
            );
        }
        let mut m = self.data.clone();
        rank_in_place(self.field, &mut m, self.rows, self.cols)
    }

    pub fn det(&self) -> Result<u32> {
        if self.rows != self.cols {
            return Err(Error::InvalidInput(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut m = self.data.clone();
        Ok(det_in_place(self.field, &mut m, self.rows))
    }

    /// Determinant of the square submatrix on all rows and the given columns.
    pub fn minor(&self, cols: &[usize]) -> u32 {
        debug_assert_eq!(cols.len(), self.rows);
        let k = self.rows;
        if k <= 6 {
            let mut buf = [0u32; 36];
            for i in 0..k {
                for (j, &c) in cols.iter().enumerate() {
                    buf[i * k + j] = self.get(i, c);
                }
            }
            det_in_place(self.field, &mut buf[..k * k], k)
        } else {
            let mut m = self.select_columns(cols).data;
            det_in_place(self.field, &mut m, k)
        }
    }

    /// Basis (as rows) of the right null space `{x : M x = 0}`.
    pub fn kernel(&self) -> FieldMatrix {
        let f = self.field;
        let (red, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = FieldMatrix::zeros(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.data[k * self.cols + fc] = 1 % f.modulus();
            for (i, &pc) in pivots.iter().enumerate() {
                out.data[k * self.cols + pc] = f.neg(red.get(i, fc));
            }
        }
        out
    }

    /// Solves `M x = b`, returning one solution and a kernel basis, or `None`
    /// when the system is inconsistent.
    pub fn solve_affine(&self, b: &[u32]) -> Option<(Vec<u32>, FieldMatrix)> {
        let f = self.field;
        let mut aug = FieldMatrix::zeros(f, self.rows, self.cols + 1);
        for (i, &bi) in b.iter().enumerate().take(self.rows) {
            for j in 0..self.cols {
                aug.data[i * (self.cols + 1) + j] = self.get(i, j);
            }
            aug.data[i * (self.cols + 1) + self.cols] = bi % f.modulus();
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = red.get(i, self.cols);
        }
        Some((x, self.kernel()))
    }
}

fn rank_in_place(f: PrimeField, m: &mut [u32], rows: usize, cols: usize) -> usize {
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| m[i * cols + c] != 0) else {
            continue;
        };
        if piv != r {
            for j in 0..cols {
                m.swap(piv * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(m[r * cols + c]).expect("pivot is nonzero");
        for i in r + 1..rows {
            let factor = f.mul(m[i * cols + c], inv);
            if factor == 0 {
                continue;
            }
            for j in c..cols {
                let t = f.mul(factor, m[r * cols + j]);
                m[i * cols + j] = f.sub(m[i * cols + j], t);
            }
        }
        r += 1;
    }
    r
}

pub(crate) fn det_in_place(f: PrimeField, m: &mut [u32], n: usize) -> u32 {
    let mut det = 1 % f.modulus();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| m[i * n + c] != 0) else {
            return 0;
        };
        if piv != c {
            for j in 0..n {
                m.swap(piv * n + j, c * n + j);
            }
            det = f.neg(det);
        }
        let d = m[c * n + c];
        det = f.mul(det, d);
        let inv = f.inv(d).expect("pivot is nonzero");
        for i in c + 1..n {
            let factor = f.mul(m[i * n + c], inv);
            if factor == 0 {
                continue;
            }
            for j in c..n {
                let t = f.mul(factor, m[c * n + j]);
                m[i * n + j] = f.sub(m[i * n + j], t);
            }
        }
    }
    det
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldMatrix[{}]{:?}", self.field, self.to_rows())
    }
}
