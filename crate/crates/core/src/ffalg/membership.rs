use super::enumerate::FlagPoint;
use super::subspace::Subspace;
use crate::combinat::{FlagIndex, GrassIndex, SchubertIndex, StrictPartition};
use crate::error::{Error, Result};

/// A rational point of one of the solvable spaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point {
    Plane(Subspace),
    Flag(FlagPoint),
}

impl Point {
    pub fn canonical_key(&self) -> Vec<u32> {
        match self {
            Point::Plane(h) => h.canonical_key(),
            Point::Flag(f) => f.canonical_key(),
        }
    }
}

/// `dim(H ∩ F_k)` for `k = 0..=n`, where `F_k = span(e_1, ..., e_k)`.
pub fn standard_flag_dims(h: &Subspace) -> Vec<usize> {
    let n = h.ambient();
    let r = h.dim();
    (0..=n)
        .map(|k| {
            let tail: Vec<usize> = (k..n).collect();
            r - h.basis().select_columns(&tail).rank()
        })
        .collect()
}

/// The Schubert cell of G(r, n) containing `h`, relative to the standard flag.
pub fn schubert_cell_of(h: &Subspace) -> GrassIndex {
    let dims = standard_flag_dims(h);
    let jumps: Vec<usize> = (1..dims.len()).filter(|&k| dims[k] > dims[k - 1]).collect();
    GrassIndex::new(h.ambient(), jumps).expect("jump set of a nonzero subspace is a valid index")
}

/// The Schubert cell of a flag manifold containing `flag`.
pub fn flag_cell_of(flag: &FlagPoint) -> FlagIndex {
    let n = flag.ambient();
    let steps = flag.steps();
    let mut w = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    for comp in flag.components() {
        let mut block: Vec<usize> = schubert_cell_of(comp)
            .alpha()
            .iter()
            .copied()
            .filter(|&a| !used[a])
            .collect();
        block.sort_unstable();
        for &a in &block {
            used[a] = true;
        }
        w.extend(block);
    }
    w.extend((1..=n).filter(|&a| !used[a]));
    FlagIndex::new(steps, w).expect("cells of nested subspaces give a valid index")
}

fn grass_member(h: &Subspace, alpha: &GrassIndex) -> bool {
    let dims = standard_flag_dims(h);
    alpha.alpha().iter().enumerate().all(|(j, &a)| dims[a] > j)
}

/// Whether `point` lies in the closed Schubert variety `X_index` of the
/// standard flag `F_i = span(e_1..e_i)`.
pub fn schubert_membership(point: &Point, index: &SchubertIndex) -> Result<bool> {
    match (point, index) {
        (Point::Plane(h), SchubertIndex::Grass(alpha)) => {
            if h.ambient() != alpha.n() || h.dim() != alpha.r() {
                return Err(mismatch(point, index));
            }
            Ok(grass_member(h, alpha))
        }
        (Point::Plane(h), SchubertIndex::Orthogonal(lambda)) => {
            if h.ambient() != 2 * lambda.r() + 1 || h.dim() != lambda.r() {
                return Err(mismatch(point, index));
            }
            Ok(grass_member(h, &lambda.grass_index()))
        }
        (Point::Flag(flag), SchubertIndex::Flag(w)) => {
            if flag.ambient() != w.n() || flag.steps() != w.steps() {
                return Err(mismatch(point, index));
            }
            Ok(flag
                .components()
                .iter()
                .enumerate()
                .all(|(i, comp)| grass_member(comp, &w.projection(i))))
        }
        _ => Err(mismatch(point, index)),
    }
}

/// Strict partition of the OG(r) cell containing an isotropic plane.
pub fn orthogonal_cell_of(h: &Subspace) -> Result<StrictPartition> {
    StrictPartition::from_grass_index(&schubert_cell_of(h))
}

fn mismatch(point: &Point, index: &SchubertIndex) -> Error {
    Error::ParameterMismatch(format!(
        "point {point:?} and index {index} belong to different spaces"
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffalg::PrimeField;

    #[test]
    fn membership_examples() {
        let f = PrimeField::new(5).unwrap();
        let h12 = Point::Plane(Subspace::coordinate(f, 4, &[0, 1]));
        let h34 = Point::Plane(Subspace::coordinate(f, 4, &[2, 3]));
        let a12 = SchubertIndex::Grass(GrassIndex::new(4, vec![1, 2]).unwrap());
        let a24 = SchubertIndex::Grass(GrassIndex::new(4, vec![2, 4]).unwrap());
        let top = SchubertIndex::Grass(GrassIndex::top(2, 4));
        assert!(schubert_membership(&h12, &a12).unwrap());
        assert!(!schubert_membership(&h34, &a24).unwrap());
        assert!(schubert_membership(&h34, &top).unwrap());
    }

    #[test]
    fn mismatch_rejected() {
        let f = PrimeField::new(5).unwrap();
        let h = Point::Plane(Subspace::coordinate(f, 4, &[0, 1]));
        let a = SchubertIndex::Grass(GrassIndex::new(5, vec![1, 2]).unwrap());
        assert!(schubert_membership(&h, &a).is_err());
    }

    #[test]
    fn cell_of_coordinate_plane() {
        let f = PrimeField::new(3).unwrap();
        let h = Subspace::coordinate(f, 5, &[1, 4]);
        assert_eq!(schubert_cell_of(&h).alpha(), &[2, 5]);
    }
}
