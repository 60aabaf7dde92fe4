//! Tangent hyperplanes of simple Schubert conditions.
//!
//! At an r-plane `H` with RREF pivots `π`, the chart of `G(r, n)` around `H`
//! identifies `Hom(H, V/H)` with `r x (n - r)` matrices: `φ(h_i) = Σ_j x_ij e_j`
//! over the non-pivot columns `j`. Covectors are stored row-major in that basis.

use crate::error::{Error, Result};
use crate::ffalg::{BilinearForm, Subspace};

/// Coordinates `(row, non-pivot column)` of the chart around a plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomChart {
    pivots: Vec<usize>,
    nonpivots: Vec<usize>,
}

impl HomChart {
    pub fn at(h: &Subspace) -> HomChart {
        HomChart {
            pivots: h.pivots().to_vec(),
            nonpivots: h.nonpivots(),
        }
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn nonpivots(&self) -> &[usize] {
        &self.nonpivots
    }

    pub fn dim(&self) -> usize {
        self.pivots.len() * self.nonpivots.len()
    }

    /// Flat position of coordinate `(row, column)`; `column` must be a non-pivot.
    pub fn position(&self, row: usize, column: usize) -> Option<usize> {
        let j = self.nonpivots.iter().position(|&c| c == column)?;
        Some(row * self.nonpivots.len() + j)
    }

    pub fn coordinates(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.pivots.len()).flat_map(move |i| self.nonpivots.iter().map(move |&c| (i, c)))
    }
}

/// The linear form on `Hom(H, V/H)` whose kernel is the tangent space of a
/// simple Schubert condition at `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionFunctional {
    /// Generator of `H ∩ K`.
    pub v: Vec<u32>,
    /// Covector in the chart basis.
    pub covector: Vec<u32>,
}

impl ConditionFunctional {
    pub fn apply(&self, phi: &[u32], p: u32) -> u32 {
        let mut acc = 0u64;
        for (&a, &b) in self.covector.iter().zip(phi) {
            acc = (acc + a as u64 * b as u64) % p as u64;
        }
        acc as u32
    }
}

fn intersection_line(h: &Subspace, k: &Subspace) -> Result<Vec<u32>> {
    let meet = h.intersection(k)?;
    if meet.dim() != 1 {
        return Err(Error::SingularPoint { dim: meet.dim() });
    }
    Ok(meet.basis().row(0).to_vec())
}

/// Tangent functional of `Ω(K) = {H : H ∩ K ≠ 0}` at `H`, for
/// `dim H + dim K = n`: with `v` spanning `H ∩ K` and `λ` cutting out the
/// hyperplane `H + K`, it is `φ ↦ λ(φ(v))`.
pub fn tangent_functional(h: &Subspace, k: &Subspace) -> Result<ConditionFunctional> {
    if h.ambient() != k.ambient() || h.dim() + k.dim() != h.ambient() {
        return Err(Error::ParameterMismatch(format!(
            "condition plane of dimension {} for an {}-plane in dimension {}",
            k.dim(),
            h.dim(),
            h.ambient()
        )));
    }
    let f = h.field();
    let v = intersection_line(h, k)?;
    let lambda_space = h.sum(k)?.annihilator();
    debug_assert_eq!(lambda_space.dim(), 1);
    let lambda = lambda_space.basis().row(0);
    let chart = HomChart::at(h);
    let coeffs: Vec<u32> = chart.pivots().iter().map(|&pc| v[pc]).collect();
    let covector = chart
        .coordinates()
        .map(|(i, c)| f.mul(coeffs[i], lambda[c]))
        .collect();
    Ok(ConditionFunctional { v, covector })
}

/// Tangent functional of `Ψ(K) = {H ∈ OG(r) : H ∩ K ≠ 0}` at an isotropic
/// `H`, for isotropic `K` of the same dimension. With `v` spanning `H ∩ K`
/// and `u` completing `v` to a basis of `(H + K)^⊥`, it is `φ ↦ <φ(v), u>`.
/// Only its restriction to the tangent space of OG(r) is meaningful.
pub fn isotropic_tangent_functional(
    h: &Subspace,
    k: &Subspace,
    form: &BilinearForm,
) -> Result<ConditionFunctional> {
    let n = form.dimension();
    if h.ambient() != n || k.ambient() != n || h.dim() != k.dim() || 2 * h.dim() + 1 != n {
        return Err(Error::ParameterMismatch(format!(
            "isotropic condition needs two {}-planes in dimension {n}",
            form.rank_of_grassmannian()
        )));
    }
    let f = h.field();
    let v = intersection_line(h, k)?;
    let perp = form.orthogonal(&h.sum(k)?);
    let line = Subspace::from_rows(f, n, std::slice::from_ref(&v))?;
    let u = perp
        .basis()
        .row_iter()
        .find(|row| !line.contains(row))
        .ok_or(Error::SingularPoint { dim: 1 })?
        .to_vec();
    let chart = HomChart::at(h);
    let coeffs: Vec<u32> = chart.pivots().iter().map(|&pc| v[pc]).collect();
    let covector = chart
        .coordinates()
        .map(|(i, c)| f.mul(coeffs[i], u[n - 1 - c]))
        .collect();
    Ok(ConditionFunctional { v, covector })
}
