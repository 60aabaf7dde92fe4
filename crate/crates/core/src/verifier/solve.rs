use std::sync::OnceLock;

use rayon::prelude::*;

use super::instance::Instance;
use crate::combinat::Space;
use crate::error::{check_capacity, Result};
use crate::ffalg::{
    flag_cells, gaussian_binomial, grassmannian_cells, isotropic_cells, schubert_membership,
    BilinearForm, FieldMatrix, FlagPoint, Point, Subspace,
};
use crate::geometry::{laplace_coefficients, plucker_of_matrix, LaplaceCoefficients};

/// Environment variable capping the number of solver threads.
pub const THREADS_ENV: &str = "SCHUBERT_THREADS";

fn pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(k) = std::env::var(THREADS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            builder = builder.num_threads(k.max(1));
        }
        builder.build().expect("thread pool")
    })
}

// Each condition as (component index, linear form in the Plücker coordinates).
struct Tester {
    forms: Vec<(usize, LaplaceCoefficients)>,
    components: usize,
}

impl Tester {
    fn new(instance: &Instance) -> Tester {
        let space = instance.space();
        let forms = instance
            .conditions
            .iter()
            .map(|c| match space {
                // H ∩ K ≠ 0 iff H ∩ K^⊥ ≠ 0 for maximal isotropic H and K
                Space::Orthogonal { r } => {
                    let form = BilinearForm::split(instance.field, *r);
                    (0, laplace_coefficients(&form.orthogonal(&c.subspace)))
                }
                Space::Flag { .. } => (c.family - 1, laplace_coefficients(&c.subspace)),
                _ => (0, laplace_coefficients(&c.subspace)),
            })
            .collect();
        let components = match space {
            Space::Flag { steps, .. } => steps.len(),
            _ => 1,
        };
        Tester { forms, components }
    }

    fn accepts(&self, components: &[&Subspace]) -> bool {
        let mut cache: Vec<Option<Vec<u32>>> = vec![None; self.components];
        self.forms.iter().all(|(i, form)| {
            let coords = cache[*i].get_or_insert_with(|| {
                let c = components[*i];
                plucker_of_matrix(c.basis(), c.ambient())
            });
            form.evaluate_coords(coords) == 0
        })
    }
}

// For fixed rows h_1..h_{r-1}, det[K; h_1; ...; h_{r-1}; x] is a multiple of
// λ·x with λ spanning the kernel of the stacked matrix (zero if that kernel
// is larger). Vanishing λ are dropped: those conditions always hold.
fn last_row_functionals(conditions: &[&FieldMatrix], prefix: &FieldMatrix) -> Vec<Vec<u32>> {
    let mut out = Vec::with_capacity(conditions.len());
    for k in conditions {
        let stacked = k.vstack(prefix).expect("same width");
        let kernel = stacked.kernel();
        if kernel.rows() == 1 {
            out.push(kernel.row(0).to_vec());
        }
    }
    out
}

/// Every rational point of the (restricted) space satisfying all conditions,
/// sorted by canonical encoding.
pub fn solve(instance: &Instance) -> Result<Vec<Point>> {
    let field = instance.field;
    let mut points: Vec<Point> = match instance.space() {
        Space::Grassmannian { r, n } => {
            check_capacity(
                format!("G({r},{n}) over F_{}", field.modulus()),
                &gaussian_binomial(field.modulus(), *n, *r),
            )?;
            let cells = grassmannian_cells(field, *r, *n);
            let conditions: Vec<&FieldMatrix> = instance
                .conditions
                .iter()
                .map(|c| c.subspace.basis())
                .collect();
            pool().install(|| {
                cells
                    .into_par_iter()
                    .flat_map_iter(|cell| {
                        cell.points_with_last_row_tests(|prefix| {
                            last_row_functionals(&conditions, prefix)
                        })
                        .into_iter()
                        .map(Point::Plane)
                    })
                    .collect()
            })
        }
        Space::Orthogonal { r } => {
            let tester = Tester::new(instance);
            let cells = isotropic_cells(field, *r)?;
            pool().install(|| {
                cells
                    .into_par_iter()
                    .flat_map_iter(|cell| {
                        cell.points()
                            .into_iter()
                            .filter(|h| tester.accepts(&[h]))
                            .map(Point::Plane)
                            .collect::<Vec<_>>()
                    })
                    .collect()
            })
        }
        Space::Flag { steps, n } => {
            let tester = Tester::new(instance);
            let cells = flag_cells(field, steps, *n)?;
            pool().install(|| {
                cells
                    .into_par_iter()
                    .flat_map_iter(|cell| {
                        cell.points()
                            .filter(|fl: &FlagPoint| {
                                let comps: Vec<&Subspace> = fl.components().iter().collect();
                                tester.accepts(&comps)
                            })
                            .map(Point::Flag)
                            .collect::<Vec<_>>()
                    })
                    .collect()
            })
        }
        Space::Quantum { .. } => {
            instance.spec.validate()?;
            unreachable!("quantum instances are rejected by validation")
        }
    };
    if let Some(w) = instance.restriction() {
        let mut kept = Vec::with_capacity(points.len());
        for p in points {
            if schubert_membership(&p, w)? {
                kept.push(p);
            }
        }
        points = kept;
    }
    points.sort_by_cached_key(Point::canonical_key);
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffalg::{enumerate_grassmannian, PrimeField};
    use crate::geometry::incidence;
    use crate::verifier::{build_instance, Mode, ProblemSpec};

    #[test]
    fn solutions_are_exactly_the_incident_planes() {
        let f = PrimeField::new(5).unwrap();
        for (r, n, seed) in [(2, 4, 5), (1, 3, 1), (3, 5, 2), (2, 5, 7)] {
            let spec = ProblemSpec::new(Space::Grassmannian { r, n }, Mode::Independent);
            let mut inst = build_instance(&spec, f, seed).unwrap();
            // fewer conditions than the dimension, so the solution set is large
            inst.conditions.truncate(2);
            let sols = solve(&inst).unwrap();
            let brute: Vec<Point> = enumerate_grassmannian(f, r, n)
                .unwrap()
                .filter(|h| {
                    inst.conditions
                        .iter()
                        .all(|c| incidence(h, &c.subspace).unwrap())
                })
                .map(Point::Plane)
                .collect();
            assert_eq!(sols.len(), brute.len(), "G({r},{n})");
            assert!(brute.iter().all(|h| sols.contains(h)));
            let keys: Vec<_> = sols.iter().map(Point::canonical_key).collect();
            let mut sorted = keys.clone();
            sorted.sort();
            assert_eq!(keys, sorted);
        }
    }

    #[test]
    fn isotropic_incidence_through_the_complement() {
        let f = PrimeField::new(7).unwrap();
        let spec = ProblemSpec::new(Space::Orthogonal { r: 2 }, Mode::Independent);
        let inst = build_instance(&spec, f, 2).unwrap();
        for p in solve(&inst).unwrap() {
            let Point::Plane(h) = p else { panic!() };
            for c in &inst.conditions {
                assert!(h.intersection_dim(&c.subspace).unwrap() >= 1);
            }
        }
    }
}
