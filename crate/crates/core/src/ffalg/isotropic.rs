//! The split symmetric form on F_p^{2r+1} and enumeration of its maximal
//! isotropic subspaces.

use num_bigint::BigUint;
use num_traits::One;

use super::field::PrimeField;
use super::matrix::FieldMatrix;
use super::subspace::Subspace;
use crate::error::{check_capacity, Error, Result};

/// `<e_i, e_j> = 1` iff `i + j = n + 1` (1-based), on F_p^n with n = 2r + 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    field: PrimeField,
    n: usize,
}

impl BilinearForm {
    pub fn split(field: PrimeField, r: usize) -> BilinearForm {
        BilinearForm {
            field,
            n: 2 * r + 1,
        }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn rank_of_grassmannian(&self) -> usize {
        (self.n - 1) / 2
    }

    pub fn gram(&self) -> FieldMatrix {
        let n = self.n;
        FieldMatrix::from_fn(self.field, n, n, |i, j| u32::from(i + j == n - 1))
    }

    pub fn pair(&self, u: &[u32], v: &[u32]) -> u32 {
        let f = self.field;
        let n = self.n;
        let mut acc = 0u64;
        for i in 0..n {
            acc += u[i] as u64 * v[n - 1 - i] as u64;
        }
        f.reduce(acc)
    }

    /// `q(x) = <x, x>`.
    pub fn quadratic(&self, v: &[u32]) -> u32 {
        self.pair(v, v)
    }

    pub fn is_isotropic(&self, s: &Subspace) -> bool {
        let b = s.basis();
        (0..b.rows()).all(|i| (i..b.rows()).all(|j| self.pair(b.row(i), b.row(j)) == 0))
    }

    /// `S^⊥ = {x : <x, s> = 0 for all s in S}`.
    pub fn orthogonal(&self, s: &Subspace) -> Subspace {
        // <x, s> = x · (G s); G reverses coordinates
        let n = self.n;
        let rev = FieldMatrix::from_fn(self.field, s.dim(), n, |i, j| s.basis().get(i, n - 1 - j));
        Subspace::span(&rev.kernel())
    }
}

/// `Π_{i=1}^{r} (p^i + 1)`, the number of maximal isotropic subspaces.
pub fn isotropic_count(p: u32, r: usize) -> BigUint {
    let p = BigUint::from(p);
    (1..=r).fold(BigUint::one(), |acc, i| acc * (p.pow(i as u32) + 1u32))
}

/// Pivot patterns that a maximal isotropic subspace can have: exactly one
/// of each pair `{j, n-1-j}` and never the middle coordinate.
pub fn isotropic_pivot_patterns(r: usize) -> Vec<Vec<usize>> {
    let n = 2 * r + 1;
    let mut out = Vec::with_capacity(1 << r);
    for mask in 0..(1usize << r) {
        let mut piv: Vec<usize> = (0..r)
            .map(|j| if mask >> j & 1 == 1 { n - 1 - j } else { j })
            .collect();
        piv.sort_unstable();
        out.push(piv);
    }
    out
}

/// The isotropic points sharing one RREF pivot pattern.
#[derive(Clone, Debug)]
pub struct IsotropicCell {
    field: PrimeField,
    r: usize,
    pivots: Vec<usize>,
}

impl IsotropicCell {
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn points(&self) -> Vec<Subspace> {
        let n = 2 * self.r + 1;
        let form = BilinearForm::split(self.field, self.r);
        let mut rows: Vec<Vec<u32>> = vec![Vec::new(); self.r];
        let mut out = Vec::new();
        self.fill(self.r, &form, n, &mut rows, &mut out);
        out
    }

    // Fills rows `i-1, i-2, ..., 0` given that rows `i..r` are fixed.
    fn fill(
        &self,
        i: usize,
        form: &BilinearForm,
        n: usize,
        rows: &mut Vec<Vec<u32>>,
        out: &mut Vec<Subspace>,
    ) {
        let f = self.field;
        if i == 0 {
            let m = FieldMatrix::from_rows(f, rows, n).expect("rows have length n");
            out.push(Subspace::from_rref_parts(m, self.pivots.clone()));
            return;
        }
        let row = i - 1;
        let pc = self.pivots[row];
        let free: Vec<usize> = (pc + 1..n).filter(|c| !self.pivots.contains(c)).collect();
        // <h_row, h_k> = 0 for fixed rows k > row is linear in the free entries
        let later = &rows[i..];
        let a = FieldMatrix::from_fn(f, later.len(), free.len(), |k, j| later[k][n - 1 - free[j]]);
        let b: Vec<u32> = later.iter().map(|h| f.neg(h[n - 1 - pc])).collect();
        let Some((x0, kernel)) = a.solve_affine(&b) else {
            return;
        };
        let p = f.modulus();
        let mut t = vec![0u32; kernel.rows()];
        loop {
            let mut h = vec![0u32; n];
            h[pc] = 1;
            for (j, &c) in free.iter().enumerate() {
                let mut x = x0[j];
                for (k, &tk) in t.iter().enumerate() {
                    x = f.add(x, f.mul(tk, kernel.get(k, j)));
                }
                h[c] = x;
            }
            if form.quadratic(&h) == 0 {
                rows[row] = h;
                self.fill(row, form, n, rows, out);
            }
            // odometer over the kernel coefficients
            let mut k = t.len();
            loop {
                if k == 0 {
                    return;
                }
                k -= 1;
                t[k] += 1;
                if t[k] < p {
                    break;
                }
                t[k] = 0;
            }
        }
    }
}

fn check_orthogonal(field: PrimeField, r: usize) -> Result<()> {
    if !field.characteristic_is_odd() {
        return Err(Error::Characteristic(field.modulus()));
    }
    if r == 0 {
        return Err(Error::InvalidInput("OG(r) needs r >= 1".into()));
    }
    check_capacity(
        format!("OG({r}) over {field}"),
        &isotropic_count(field.modulus(), r),
    )
}

pub fn isotropic_cells(field: PrimeField, r: usize) -> Result<Vec<IsotropicCell>> {
    check_orthogonal(field, r)?;
    Ok(isotropic_pivot_patterns(r)
        .into_iter()
        .map(|pivots| IsotropicCell { field, r, pivots })
        .collect())
}

/// Every maximal isotropic r-plane of F_p^{2r+1} exactly once.
pub fn enumerate_isotropic(field: PrimeField, r: usize) -> Result<impl Iterator<Item = Subspace>> {
    let cells = isotropic_cells(field, r)?;
    Ok(cells.into_iter().flat_map(|c| c.points()))
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn og2_over_f3_has_40_points() {
        let pts: Vec<Subspace> = enumerate_isotropic(f(3), 2).unwrap().collect();
        assert_eq!(pts.len(), 40);
        let form = BilinearForm::split(f(3), 2);
        assert!(pts.iter().all(|h| form.is_isotropic(h) && h.dim() == 2));
        assert_eq!(pts.iter().collect::<HashSet<_>>().len(), 40);
    }

    #[test]
    fn og3_over_f5_count() {
        assert_eq!(enumerate_isotropic(f(5), 3).unwrap().count(), 19656);
    }

    #[test]
    fn characteristic_two_rejected() {
        assert!(matches!(
            enumerate_isotropic(f(2), 3).err(),
            Some(Error::Characteristic(2))
        ));
    }

    #[test]
    fn brute_force_agrees_for_og1() {
        // every isotropic line of F_p^3, found by scanning all lines
        for p in [3, 5, 7] {
            let field = f(p);
            let form = BilinearForm::split(field, 1);
            let brute = crate::ffalg::enumerate_grassmannian(field, 1, 3)
                .unwrap()
                .filter(|l| form.is_isotropic(l))
                .count();
            assert_eq!(brute, p as usize + 1);
            assert_eq!(enumerate_isotropic(field, 1).unwrap().count(), brute);
        }
    }

    #[test]
    fn orthogonal_complement() {
        let field = f(5);
        let form = BilinearForm::split(field, 2);
        for h in enumerate_isotropic(field, 2).unwrap().take(50) {
            let perp = form.orthogonal(&h);
            assert_eq!(perp.dim(), 3);
            assert!(perp.contains_subspace(&h));
        }
    }
}
