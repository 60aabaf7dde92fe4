use std::cmp::Ordering;
use std::fmt;

use super::field::PrimeField;
use super::matrix::FieldMatrix;
use crate::error::{Error, Result};

/// A linear subspace of F_p^n, stored by its reduced row-echelon basis.
///
/// The RREF basis is canonical, so structural equality is subspace equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: FieldMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Row space of `m`. Dependent rows are discarded.
    pub fn span(m: &FieldMatrix) -> Subspace {
        let (basis, pivots) = m.rref();
        Subspace { basis, pivots }
    }

    /// Row space of the given rows, which must be linearly independent.
    pub fn from_rows<R: AsRef<[u32]>>(field: PrimeField, n: usize, rows: &[R]) -> Result<Subspace> {
        let m = FieldMatrix::from_rows(field, rows, n)?;
        let s = Subspace::span(&m);
        if s.dim() != rows.len() {
            return Err(Error::InvalidInput(format!(
                "{} rows span only a {}-dimensional subspace",
                rows.len(),
                s.dim()
            )));
        }
        Ok(s)
    }

    /// Coordinate subspace spanned by `e_i` for the given 0-based indices.
    pub fn coordinate(field: PrimeField, n: usize, indices: &[usize]) -> Subspace {
        let m = FieldMatrix::from_fn(field, indices.len(), n, |i, j| u32::from(indices[i] == j));
        Subspace::span(&m)
    }

    pub fn zero(field: PrimeField, n: usize) -> Subspace {
        Subspace::span(&FieldMatrix::zeros(field, 0, n))
    }

    pub(crate) fn from_rref_parts(basis: FieldMatrix, pivots: Vec<usize>) -> Subspace {
        debug_assert_eq!(basis.rows(), pivots.len());
        Subspace { basis, pivots }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    #[inline]
    pub fn basis(&self) -> &FieldMatrix {
        &self.basis
    }

    #[inline]
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn nonpivots(&self) -> Vec<usize> {
        (0..self.ambient())
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v` is not in the subspace.
    pub fn coordinates_of(&self, v: &[u32]) -> Option<Vec<u32>> {
        let f = self.field();
        let c: Vec<u32> = self.pivots.iter().map(|&p| v[p] % f.modulus()).collect();
        let recon = self.basis.left_apply(&c);
        if recon.iter().zip(v).all(|(a, b)| *a == b % f.modulus()) {
            Some(c)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.coordinates_of(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.row_iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(Subspace::span(&self.basis.vstack(&other.basis)?))
    }

    /// `dim(self ∩ other)` via `dim U + dim W - dim(U + W)`.
    pub fn intersection_dim(&self, other: &Subspace) -> Result<usize> {
        self.check_compatible(other)?;
        let rank = self.basis.vstack(&other.basis)?.rank();
        Ok(self.dim() + other.dim() - rank)
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        // x in U ∩ W iff x = aU = bW; solve [U; -W]^T-style via the kernel of the stacked rows
        let f = self.field();
        let stacked = self.basis.vstack(&other.basis)?;
        let relations = stacked.transpose().kernel();
        let mut rows = Vec::with_capacity(relations.rows());
        for rel in relations.row_iter() {
            rows.push(self.basis.left_apply(&rel[..self.dim()]));
        }
        let m = FieldMatrix::from_rows(f, &rows, self.ambient())?;
        Ok(Subspace::span(&m))
    }

    /// The annihilator `{x : <x, h> = 0 for all h}` under the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        Subspace::span(&self.basis.kernel())
    }

    /// Image of this subspace under right multiplication by `m` (n x k).
    pub fn image(&self, m: &FieldMatrix) -> Result<Subspace> {
        Ok(Subspace::span(&self.basis.mul(m)?))
    }

    /// Flat encoding used for deterministic ordering.
    pub fn canonical_key(&self) -> Vec<u32> {
        let mut key = Vec::with_capacity(1 + self.basis.data().len());
        key.push(self.dim() as u32);
        key.extend_from_slice(self.basis.data());
        key
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() || self.ambient() != other.ambient() {
            return Err(Error::ParameterMismatch(format!(
                "subspaces of {}^{} and {}^{}",
                self.field(),
                self.ambient(),
                other.field(),
                other.ambient()
            )));
        }
        Ok(())
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_key().cmp(&other.canonical_key())
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace{:?}", self.basis.to_rows())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rref_is_canonical() {
        let field = f(5);
        let a = Subspace::from_rows(field, 3, &[vec![1, 2, 3], vec![0, 1, 1]]).unwrap();
        let b = Subspace::from_rows(field, 3, &[vec![1, 3, 4], vec![2, 4, 1]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.pivots(), &[0, 1]);
    }

    #[test]
    fn dependent_rows_rejected() {
        let field = f(5);
        assert!(Subspace::from_rows(field, 2, &[vec![1, 2], vec![2, 4]]).is_err());
    }

    #[test]
    fn intersection_of_coordinate_planes() {
        let field = f(7);
        let h = Subspace::coordinate(field, 4, &[0, 1]);
        let k = Subspace::coordinate(field, 4, &[1, 2]);
        let meet = h.intersection(&k).unwrap();
        assert_eq!(meet, Subspace::coordinate(field, 4, &[1]));
        assert_eq!(h.intersection_dim(&k).unwrap(), 1);
        assert_eq!(h.sum(&k).unwrap().dim(), 3);
    }

    #[test]
    fn annihilator_pairs_to_zero() {
        let field = f(3);
        let h = Subspace::from_rows(field, 4, &[vec![1, 0, 1, 1], vec![0, 1, 1, 2]]).unwrap();
        let ann = h.annihilator();
        assert_eq!(ann.dim(), 2);
        for a in ann.basis().row_iter() {
            for b in h.basis().row_iter() {
                let dot = a
                    .iter()
                    .zip(b)
                    .fold(0, |acc, (x, y)| field.add(acc, field.mul(*x, *y)));
                assert_eq!(dot, 0);
            }
        }
    }
}
