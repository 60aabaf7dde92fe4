//! Exhaustive enumeration of the F_p-points of Grassmannians and partial
//! flag manifolds.
//!
//! Points are produced cell by cell. A cell is a pivot pattern of the
//! reduced row-echelon form; its free entries range over F_p, so a cell with
//! `d` free entries contains exactly `p^d` points. Cells come in decreasing
//! order of dimension (ties broken lexicographically on the pivots) and the
//! points of a cell in lexicographic order of their free entries.

use num_bigint::BigUint;
use num_traits::One;

use super::field::PrimeField;
use super::matrix::FieldMatrix;
use super::subspace::Subspace;
use crate::combinat::combinations;
use crate::error::{check_capacity, Error, Result};

/// Number of r-dimensional subspaces of F_p^n.
pub fn gaussian_binomial(p: u32, n: usize, r: usize) -> BigUint {
    if r > n {
        return BigUint::from(0u32);
    }
    let p = BigUint::from(p);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..r {
        num *= p.pow((n - i) as u32) - 1u32;
        den *= p.pow((i + 1) as u32) - 1u32;
    }
    num / den
}

/// Number of flags `E_1 ⊂ ... ⊂ E_m` in F_p^n with the given dimensions.
pub fn flag_count(p: u32, steps: &[usize], n: usize) -> BigUint {
    let mut total = BigUint::one();
    let mut upper = n;
    for &r in steps.iter().rev() {
        total *= gaussian_binomial(p, upper, r);
        upper = r;
    }
    total
}

/// One Schubert cell of the RREF stratification of G(r, n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannCell {
    field: PrimeField,
    n: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
}

impl GrassmannCell {
    pub fn new(field: PrimeField, n: usize, pivots: Vec<usize>) -> GrassmannCell {
        let mut free = Vec::new();
        for (i, &pc) in pivots.iter().enumerate() {
            for c in pc + 1..n {
                if !pivots.contains(&c) {
                    free.push((i, c));
                }
            }
        }
        GrassmannCell {
            field,
            n,
            pivots,
            free,
        }
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Number of free entries; the cell has `p^dimension` points.
    pub fn dimension(&self) -> usize {
        self.free.len()
    }

    pub fn points(&self) -> CellPoints {
        self.clone().into_points()
    }

    pub fn into_points(self) -> CellPoints {
        CellPoints {
            digits: vec![0; self.free.len()],
            cell: self,
            done: false,
        }
    }

    /// Points whose last basis row is annihilated by every vector that
    /// `tests` returns for the first `r - 1` rows. Exhaustive over the cell,
    /// but each test costs one dot product per point.
    pub(crate) fn points_with_last_row_tests(
        &self,
        tests: impl Fn(&FieldMatrix) -> Vec<Vec<u32>>,
    ) -> Vec<Subspace> {
        let f = self.field;
        let p = f.modulus();
        let r = self.pivots.len();
        let split = self
            .free
            .iter()
            .position(|&(i, _)| i + 1 == r)
            .unwrap_or(self.free.len());
        let (head, tail) = self.free.split_at(split);
        let last_pivot = self.pivots[r - 1];
        let mut out = Vec::new();
        let mut prefix = FieldMatrix::zeros(f, r - 1, self.n);
        for (i, &pc) in self.pivots[..r - 1].iter().enumerate() {
            prefix.set(i, pc, 1);
        }
        let mut head_digits = vec![0u32; head.len()];
        loop {
            for (&(i, c), &d) in head.iter().zip(&head_digits) {
                prefix.set(i, c, d);
            }
            let lambdas = tests(&prefix);
            // λ(h) = λ[pivot] + Σ x_t λ[c_t]
            let mut tail_digits = vec![0u32; tail.len()];
            loop {
                let ok = lambdas.iter().all(|lam| {
                    let mut acc = lam[last_pivot] as u64;
                    for (&(_, c), &x) in tail.iter().zip(&tail_digits) {
                        acc += lam[c] as u64 * x as u64;
                    }
                    acc.is_multiple_of(p as u64)
                });
                if ok {
                    let mut digits = head_digits.clone();
                    digits.extend_from_slice(&tail_digits);
                    out.push(self.point_from(&digits));
                }
                if !odometer(&mut tail_digits, p) {
                    break;
                }
            }
            if !odometer(&mut head_digits, p) {
                break;
            }
        }
        out
    }

    fn point_from(&self, digits: &[u32]) -> Subspace {
        let r = self.pivots.len();
        let mut m = FieldMatrix::zeros(self.field, r, self.n);
        for (i, &pc) in self.pivots.iter().enumerate() {
            m.set(i, pc, 1);
        }
        for (&(i, c), &d) in self.free.iter().zip(digits) {
            m.set(i, c, d);
        }
        Subspace::from_rref_parts(m, self.pivots.clone())
    }
}

/// Iterator over the points of a [`GrassmannCell`].
pub struct CellPoints {
    cell: GrassmannCell,
    digits: Vec<u32>,
    done: bool,
}

impl Iterator for CellPoints {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let out = self.cell.point_from(&self.digits);
        let p = self.cell.field.modulus();
        let mut k = self.digits.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.digits[k] += 1;
            if self.digits[k] < p {
                break;
            }
            self.digits[k] = 0;
        }
        Some(out)
    }
}

// Advance base-p digits, last fastest; false after wrapping around.
fn odometer(digits: &mut [u32], p: u32) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < p {
            return true;
        }
        *d = 0;
    }
    false
}

/// All RREF cells of G(r, n), in enumeration order.
pub fn grassmannian_cells(field: PrimeField, r: usize, n: usize) -> Vec<GrassmannCell> {
    let mut cells: Vec<GrassmannCell> = combinations(n, r)
        .into_iter()
        .map(|pivots| GrassmannCell::new(field, n, pivots))
        .collect();
    cells.sort_by(|a, b| {
        b.dimension()
            .cmp(&a.dimension())
            .then_with(|| a.pivots.cmp(&b.pivots))
    });
    cells
}

fn check_grassmannian(field: PrimeField, r: usize, n: usize) -> Result<()> {
    if r > n {
        return Err(Error::InvalidInput(format!(
            "no {r}-planes in a {n}-dimensional space"
        )));
    }
    check_capacity(
        format!("G({r},{n}) over {field}"),
        &gaussian_binomial(field.modulus(), n, r),
    )
}

/// Every r-plane of F_p^n exactly once.
pub fn enumerate_grassmannian(
    field: PrimeField,
    r: usize,
    n: usize,
) -> Result<impl Iterator<Item = Subspace>> {
    check_grassmannian(field, r, n)?;
    let cells = grassmannian_cells(field, r, n);
    Ok(cells.into_iter().flat_map(GrassmannCell::into_points))
}

/// A point of the partial flag manifold: nested subspaces of the given dimensions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FlagPoint {
    components: Vec<Subspace>,
}

impl FlagPoint {
    pub fn new(components: Vec<Subspace>) -> Result<FlagPoint> {
        for w in components.windows(2) {
            if w[0].dim() >= w[1].dim() || !w[1].contains_subspace(&w[0]) {
                return Err(Error::InvalidInput(
                    "flag components must be strictly nested".into(),
                ));
            }
        }
        Ok(FlagPoint { components })
    }

    pub fn components(&self) -> &[Subspace] {
        &self.components
    }

    pub fn steps(&self) -> Vec<usize> {
        self.components.iter().map(Subspace::dim).collect()
    }

    pub fn ambient(&self) -> usize {
        self.components.first().map_or(0, Subspace::ambient)
    }

    pub fn canonical_key(&self) -> Vec<u32> {
        self.components
            .iter()
            .flat_map(|c| c.canonical_key())
            .collect()
    }

    /// Basis whose first `r_i` rows span `E_i`.
    pub fn adapted_basis(&self) -> FieldMatrix {
        let Some(first) = self.components.first() else {
            return FieldMatrix::zeros(PrimeField::new(2).expect("2 is prime"), 0, 0);
        };
        let mut m = first.basis().clone();
        for comp in &self.components[1..] {
            for row in comp.basis().row_iter() {
                let mut candidate = m.clone();
                candidate.push_row(row).expect("same width");
                if candidate.rank() == candidate.rows() {
                    m = candidate;
                }
            }
        }
        m
    }
}

/// Flag cells: one sub-stream per RREF cell of the largest component.
pub struct FlagCell {
    field: PrimeField,
    steps: Vec<usize>,
    top: GrassmannCell,
}

impl FlagCell {
    pub fn points(&self) -> impl Iterator<Item = FlagPoint> + '_ {
        let inner = &self.steps[..self.steps.len() - 1];
        self.top.points().flat_map(move |top| {
            subflags(self.field, inner, &top)
                .into_iter()
                .map(move |mut comps| {
                    comps.push(top.clone());
                    FlagPoint { components: comps }
                })
        })
    }
}

// All chains of subspaces of `outer` with the given dimensions.
fn subflags(field: PrimeField, steps: &[usize], outer: &Subspace) -> Vec<Vec<Subspace>> {
    let Some((&last, rest)) = steps.split_last() else {
        return vec![Vec::new()];
    };
    let d = outer.dim();
    let mut out = Vec::new();
    for cell in grassmannian_cells(field, last, d) {
        for coeffs in cell.points() {
            let sub = coeffs.image(outer.basis()).expect("dimensions agree");
            for mut chain in subflags(field, rest, &sub) {
                chain.push(sub.clone());
                out.push(chain);
            }
        }
    }
    out
}

fn validate_steps(steps: &[usize], n: usize) -> Result<()> {
    if steps.is_empty()
        || steps[0] == 0
        || steps.windows(2).any(|w| w[0] >= w[1])
        || *steps.last().unwrap() >= n
    {
        return Err(Error::InvalidInput(format!(
            "flag steps {steps:?} must satisfy 0 < r_1 < ... < r_m < {n}"
        )));
    }
    Ok(())
}

pub fn flag_cells(field: PrimeField, steps: &[usize], n: usize) -> Result<Vec<FlagCell>> {
    validate_steps(steps, n)?;
    check_capacity(
        format!("flag manifold {steps:?} in F_{}^{n}", field.modulus()),
        &flag_count(field.modulus(), steps, n),
    )?;
    Ok(grassmannian_cells(field, *steps.last().unwrap(), n)
        .into_iter()
        .map(|top| FlagCell {
            field,
            steps: steps.to_vec(),
            top,
        })
        .collect())
}

/// Every flag with the given dimension vector exactly once.
pub fn enumerate_flags(
    field: PrimeField,
    steps: &[usize],
    n: usize,
) -> Result<impl Iterator<Item = FlagPoint>> {
    let cells = flag_cells(field, steps, n)?;
    Ok(cells
        .into_iter()
        .flat_map(|c| c.points().collect::<Vec<_>>()))
}
