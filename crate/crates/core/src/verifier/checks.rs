use rayon::prelude::*;

use crate::combinat::{GrassIndex, SchubertIndex, Space};
use crate::error::{check_capacity, Error, Result};
use crate::ffalg::{
    enumerate_grassmannian, gaussian_binomial, isotropic_cells, schubert_membership, BilinearForm,
    Point, PrimeField, Subspace,
};
use crate::geometry::{
    laplace_coefficients, plucker_of_matrix, torus_act, LaplaceCoefficients, TorusWeights,
};

/// Whether `{H ∈ Ω_α : p_α(H) = 0}` equals the union of the `Ω_β` over the
/// lower covers `β` of `α`, on the F_p-points of G(r, n).
pub fn pieri_limit_check(
    r: usize,
    n: usize,
    alpha: &GrassIndex,
    field: PrimeField,
) -> Result<bool> {
    if alpha.r() != r || alpha.n() != n {
        return Err(Error::ParameterMismatch(format!(
            "index {alpha:?} is not in G({r},{n})"
        )));
    }
    let covers: Vec<SchubertIndex> = alpha
        .covers_down()
        .into_iter()
        .map(SchubertIndex::Grass)
        .collect();
    let target = SchubertIndex::Grass(alpha.clone());
    let cols = alpha.zero_based();
    for h in enumerate_grassmannian(field, r, n)? {
        let point = Point::Plane(h);
        if !schubert_membership(&point, &target)? {
            continue;
        }
        let Point::Plane(h) = &point else {
            unreachable!()
        };
        let on_hyperplane = h.basis().minor(&cols) == 0;
        let mut in_union = false;
        for b in &covers {
            if schubert_membership(&point, b)? {
                in_union = true;
                break;
            }
        }
        if on_hyperplane != in_union {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether no point of `space` meets `s.K` for every unit `s` of the field.
/// Supported for Grassmannians and orthogonal Grassmannians.
pub fn empty_common_intersection_check(
    space: &Space,
    k: &Subspace,
    weights: &TorusWeights,
) -> Result<bool> {
    space.validate()?;
    let field = k.field();
    let translates = |k: &Subspace| -> Result<Vec<Subspace>> {
        field.units().map(|s| torus_act(s, k, weights)).collect()
    };
    match space {
        Space::Grassmannian { r, n } => {
            if k.ambient() != *n || k.dim() != n - r {
                return Err(Error::ParameterMismatch(format!(
                    "K of dimension {} in G({r},{n})",
                    k.dim()
                )));
            }
            check_capacity(
                format!("G({r},{n}) over F_{}", field.modulus()),
                &gaussian_binomial(field.modulus(), *n, *r),
            )?;
            let forms: Vec<LaplaceCoefficients> =
                translates(k)?.iter().map(laplace_coefficients).collect();
            let points: Vec<Subspace> = enumerate_grassmannian(field, *r, *n)?.collect();
            Ok(!points.par_iter().any(|h| meets_all(h, &forms)))
        }
        Space::Orthogonal { r } => {
            let form = BilinearForm::split(field, *r);
            if !field.characteristic_is_odd() {
                return Err(Error::Characteristic(field.modulus()));
            }
            if k.ambient() != 2 * r + 1 || k.dim() != *r || !form.is_isotropic(k) {
                return Err(Error::ParameterMismatch(
                    "K must be a maximal isotropic subspace".into(),
                ));
            }
            if !weights.preserves_split_form() {
                return Err(Error::InvalidInput(
                    "torus weights do not preserve the form".into(),
                ));
            }
            let forms: Vec<LaplaceCoefficients> = translates(k)?
                .iter()
                .map(|ks| laplace_coefficients(&form.orthogonal(ks)))
                .collect();
            let cells = isotropic_cells(field, *r)?;
            Ok(!cells
                .par_iter()
                .any(|cell| cell.points().iter().any(|h| meets_all(h, &forms))))
        }
        other => Err(Error::InvalidInput(format!(
            "the common-intersection check is not available for {other}"
        ))),
    }
}

fn meets_all(h: &Subspace, forms: &[LaplaceCoefficients]) -> bool {
    let coords = plucker_of_matrix(h.basis(), h.ambient());
    forms.iter().all(|f| f.evaluate_coords(&coords) == 0)
}
