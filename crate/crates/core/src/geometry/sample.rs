use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::plucker::plucker_coordinates;
use crate::error::{Error, Result};
use crate::ffalg::{
    enumerate_grassmannian, enumerate_isotropic, gaussian_binomial, isotropic_count, BilinearForm,
    FieldMatrix, PrimeField, Subspace,
};

/// Random trials before falling back to an exhaustive scan.
pub const RANDOM_TRIALS: usize = 1000;

fn pick_exhaustive<I: Iterator<Item = Subspace>>(
    make: impl Fn() -> I,
    rng: &mut ChaCha8Rng,
) -> Option<Subspace> {
    let total = make()
        .filter(|s| plucker_coordinates(s).is_general())
        .count();
    if total == 0 {
        return None;
    }
    let k = rng.gen_range(0..total);
    make()
        .filter(|s| plucker_coordinates(s).is_general())
        .nth(k)
}

/// An (n-r)-plane of F_p^n none of whose Plücker coordinates vanish,
/// deterministic in `seed`.
pub fn sample_general_subspace(
    field: PrimeField,
    r: usize,
    n: usize,
    seed: u64,
) -> Result<Subspace> {
    if r == 0 || r >= n {
        return Err(Error::InvalidInput(format!(
            "need 0 < r < n, got r = {r}, n = {n}"
        )));
    }
    let d = n - r;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = field.modulus();
    for _ in 0..RANDOM_TRIALS {
        let m = FieldMatrix::from_fn(field, d, n, |_, _| rng.gen_range(0..p));
        let s = Subspace::span(&m);
        if s.dim() == d && plucker_coordinates(&s).is_general() {
            return Ok(s);
        }
    }
    let none = |exhaustive| Error::NoGeneralSubspace {
        prime: p,
        dim: d,
        n,
        exhaustive,
    };
    if gaussian_binomial(p, n, d) > crate::error::CAPACITY_LIMIT.into() {
        return Err(none(false));
    }
    pick_exhaustive(
        || enumerate_grassmannian(field, d, n).expect("size checked"),
        &mut rng,
    )
    .ok_or(none(true))
}

fn random_isotropic(
    field: PrimeField,
    form: &BilinearForm,
    r: usize,
    rng: &mut ChaCha8Rng,
) -> Option<Subspace> {
    let n = form.dimension();
    let p = field.modulus();
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(r);
    for _ in 0..r {
        // candidates orthogonal to the rows chosen so far
        let perp = if rows.is_empty() {
            FieldMatrix::identity(field, n)
        } else {
            let chosen = Subspace::from_rows(field, n, &rows).ok()?;
            form.orthogonal(&chosen).basis().clone()
        };
        let mut found = None;
        for _ in 0..64 * p as usize {
            let coeffs: Vec<u32> = (0..perp.rows()).map(|_| rng.gen_range(0..p)).collect();
            let v = perp.left_apply(&coeffs);
            if form.quadratic(&v) != 0 {
                continue;
            }
            let mut cand = rows.clone();
            cand.push(v.clone());
            if FieldMatrix::from_rows(field, &cand, n).ok()?.rank() == cand.len() {
                found = Some(v);
                break;
            }
        }
        rows.push(found?);
    }
    Subspace::from_rows(field, n, &rows).ok()
}

/// A maximal isotropic r-plane of (F_p^{2r+1}, split form) none of whose
/// Plücker coordinates vanish.
pub fn sample_general_isotropic(field: PrimeField, r: usize, seed: u64) -> Result<Subspace> {
    if !field.characteristic_is_odd() {
        return Err(Error::Characteristic(field.modulus()));
    }
    let n = 2 * r + 1;
    let form = BilinearForm::split(field, r);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIALS {
        if let Some(s) = random_isotropic(field, &form, r, &mut rng) {
            if plucker_coordinates(&s).is_general() {
                return Ok(s);
            }
        }
    }
    let none = |exhaustive| Error::NoGeneralSubspace {
        prime: field.modulus(),
        dim: r,
        n,
        exhaustive,
    };
    if isotropic_count(field.modulus(), r) > crate::error::CAPACITY_LIMIT.into() {
        return Err(none(false));
    }
    pick_exhaustive(
        || enumerate_isotropic(field, r).expect("size checked"),
        &mut rng,
    )
    .ok_or(none(true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::laplace_coefficients;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn none_over_f2() {
        let err = sample_general_subspace(f(2), 2, 4, 0).unwrap_err();
        assert!(matches!(
            err,
            Error::NoGeneralSubspace {
                prime: 2,
                exhaustive: true,
                ..
            }
        ));
    }

    #[test]
    fn exists_over_f3_and_is_deterministic() {
        let a = sample_general_subspace(f(3), 2, 4, 11).unwrap();
        let b = sample_general_subspace(f(3), 2, 4, 11).unwrap();
        assert_eq!(a, b);
        assert!(plucker_coordinates(&a).is_general());
        assert!(laplace_coefficients(&a).coeffs().iter().all(|&c| c != 0));
    }

    #[test]
    fn isotropic_samples() {
        let field = f(7);
        let form = BilinearForm::split(field, 2);
        for seed in 0..5 {
            let k = sample_general_isotropic(field, 2, seed).unwrap();
            assert!(form.is_isotropic(&k));
            assert!(plucker_coordinates(&k).is_general());
        }
        assert!(matches!(
            sample_general_isotropic(f(2), 2, 0),
            Err(Error::Characteristic(2))
        ));
    }
}
