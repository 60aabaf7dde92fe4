use crate::combinat::{combinations, GrassIndex};
use crate::error::{Error, Result};
use crate::ffalg::{FieldMatrix, PrimeField, Subspace};

/// Position of an increasing 0-based subset in the lexicographic list of
/// r-subsets of `0..n`.
pub(crate) fn subset_rank(n: usize, subset: &[usize]) -> usize {
    let r = subset.len();
    let mut rank = 0;
    let mut prev = 0;
    for (i, &s) in subset.iter().enumerate() {
        for skipped in prev..s {
            rank += binom(n - skipped - 1, r - i - 1);
        }
        prev = s + 1;
    }
    rank
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Plücker coordinates `p_α`, α in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PluckerVector {
    field: PrimeField,
    r: usize,
    n: usize,
    coords: Vec<u32>,
}

impl PluckerVector {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    /// `p_α` for a 1-based index.
    pub fn get(&self, alpha: &GrassIndex) -> u32 {
        self.coords[subset_rank(self.n, &alpha.zero_based())]
    }

    pub fn iter(&self) -> impl Iterator<Item = (GrassIndex, u32)> + '_ {
        GrassIndex::all(self.r, self.n)
            .into_iter()
            .zip(self.coords.iter().copied())
    }

    /// No coordinate vanishes.
    pub fn is_general(&self) -> bool {
        self.coords.iter().all(|&c| c != 0)
    }

    /// Equality as points of projective space.
    pub fn projectively_equal(&self, other: &PluckerVector) -> bool {
        if self.coords.len() != other.coords.len() || self.field != other.field {
            return false;
        }
        let f = self.field;
        let Some(i) = self.coords.iter().position(|&c| c != 0) else {
            return other.coords.iter().all(|&c| c == 0);
        };
        if other.coords[i] == 0 {
            return false;
        }
        let scale = f.mul(other.coords[i], f.inv(self.coords[i]).expect("nonzero"));
        self.coords
            .iter()
            .zip(&other.coords)
            .all(|(&a, &b)| f.mul(a, scale) == b)
    }
}

/// Maximal minors of the RREF basis.
pub fn plucker_coordinates(s: &Subspace) -> PluckerVector {
    let n = s.ambient();
    let r = s.dim();
    let coords = plucker_of_matrix(s.basis(), n);
    PluckerVector {
        field: s.field(),
        r,
        n,
        coords,
    }
}

pub(crate) fn plucker_of_matrix(m: &FieldMatrix, n: usize) -> Vec<u32> {
    let r = m.rows();
    if r == 2 {
        // 2x2 minors directly
        let f = m.field();
        let (a, b) = (m.row(0), m.row(1));
        let mut out = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                out.push(f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i])));
            }
        }
        return out;
    }
    combinations(n, r)
        .iter()
        .map(|cols| m.minor(cols))
        .collect()
}

/// Coefficients `k_β` with `det[K; H] = Σ_β p_β(H) k_β` for every r-plane H.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaplaceCoefficients {
    field: PrimeField,
    r: usize,
    n: usize,
    coeffs: Vec<u32>,
}

impl LaplaceCoefficients {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn get(&self, beta: &GrassIndex) -> u32 {
        self.coeffs[subset_rank(self.n, &beta.zero_based())]
    }

    /// `Σ_β p_β k_β`.
    pub fn evaluate(&self, p: &PluckerVector) -> u32 {
        self.evaluate_coords(p.coords())
    }

    pub(crate) fn evaluate_coords(&self, coords: &[u32]) -> u32 {
        let pm = self.field.modulus() as u64;
        let mut acc = 0u64;
        for (&a, &b) in coords.iter().zip(&self.coeffs) {
            acc = (acc + a as u64 * b as u64) % pm;
        }
        acc as u32
    }

    /// The r of the planes this condition applies to.
    pub fn plane_dim(&self) -> usize {
        self.r
    }
}

/// Laplace expansion of `det[K; H]` along the rows of H. `K` has dimension
/// `n - r`; `k_β` is the signed minor of K on the columns complementary to β.
pub fn laplace_coefficients(k: &Subspace) -> LaplaceCoefficients {
    let n = k.ambient();
    let r = n - k.dim();
    let f = k.field();
    // rows of H occupy positions n-r+1..=n; sign (-1)^(Σ rows + Σ cols), 1-based
    let row_sum: usize = (n - r + 1..=n).sum();
    let coeffs = combinations(n, r)
        .into_iter()
        .map(|beta| {
            let comp: Vec<usize> = (0..n).filter(|c| !beta.contains(c)).collect();
            let minor = if comp.is_empty() {
                1 % f.modulus()
            } else {
                k.basis().minor(&comp)
            };
            let col_sum: usize = beta.iter().map(|b| b + 1).sum();
            if (row_sum + col_sum).is_multiple_of(2) {
                minor
            } else {
                f.neg(minor)
            }
        })
        .collect();
    LaplaceCoefficients {
        field: f,
        r,
        n,
        coeffs,
    }
}

/// `H ∩ K ≠ 0`, decided by the vanishing of `det[K; H]`.
pub fn incidence(h: &Subspace, k: &Subspace) -> Result<bool> {
    if h.ambient() != k.ambient() || h.dim() + k.dim() != h.ambient() {
        return Err(Error::ParameterMismatch(format!(
            "incidence needs complementary dimensions, got {} + {} in dimension {}",
            h.dim(),
            k.dim(),
            h.ambient()
        )));
    }
    Ok(k.basis().vstack(h.basis())?.det()? == 0)
}
