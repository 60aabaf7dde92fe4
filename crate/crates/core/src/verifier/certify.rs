use serde::{Deserialize, Serialize};

use super::instance::Instance;
use crate::combinat::{combinations, GrassIndex, SchubertIndex, Space};
use crate::error::{Error, Result};
use crate::ffalg::{BilinearForm, FieldMatrix, Point, PrimeField, Subspace};
use crate::geometry::{isotropic_tangent_functional, tangent_functional, HomChart};

/// Outcome of the transversality test at one solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateVerdict {
    Transverse,
    Nontransverse,
    /// Some condition meets the point in dimension at least 2.
    SingularPoint,
    /// The point is a singular point of the restricting Schubert variety.
    SingularOnZ,
}

/// Ranks of the stacked condition covectors from both tests.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub tangent_rank: usize,
    pub jacobian_rank: usize,
    pub verdict: CertificateVerdict,
    /// Each tangent covector is a nonzero multiple of the matching gradient.
    pub proportional: bool,
}

// Product of pivot charts, one block per component.
struct Chart<'a> {
    field: PrimeField,
    blocks: Vec<(&'a Subspace, HomChart, usize)>,
    dim: usize,
}

impl<'a> Chart<'a> {
    fn new(components: &[&'a Subspace]) -> Chart<'a> {
        let mut blocks = Vec::with_capacity(components.len());
        let mut offset = 0;
        for &c in components {
            let chart = HomChart::at(c);
            let d = chart.dim();
            blocks.push((c, chart, offset));
            offset += d;
        }
        Chart {
            field: components[0].field(),
            blocks,
            dim: offset,
        }
    }

    fn pos(&self, block: usize, row: usize, column: usize) -> usize {
        let (_, chart, offset) = &self.blocks[block];
        offset + chart.position(row, column).expect("non-pivot column")
    }

    fn embed(&self, block: usize, local: &[u32]) -> Vec<u32> {
        let mut v = vec![0; self.dim];
        let offset = self.blocks[block].2;
        v[offset..offset + local.len()].copy_from_slice(local);
        v
    }

    // Partial derivatives of det[fixed; H(x)] (columns restricted to `cols`)
    // in block `block`, by replacing one row of H at a time.
    fn det_gradient(&self, block: usize, fixed: &[Vec<u32>], cols: Option<&[usize]>) -> Vec<u32> {
        let (h, chart, _) = &self.blocks[block];
        let n = h.ambient();
        let local: Vec<u32> = chart
            .coordinates()
            .map(|(i, c)| {
                let mut rows: Vec<Vec<u32>> = fixed.to_vec();
                for (a, row) in h.basis().row_iter().enumerate() {
                    if a == i {
                        let mut e = vec![0; n];
                        e[c] = 1;
                        rows.push(e);
                    } else {
                        rows.push(row.to_vec());
                    }
                }
                let m = FieldMatrix::from_rows(self.field, &rows, n).expect("uniform rows");
                match cols {
                    Some(cols) => m.minor(cols),
                    None => m.det().expect("square"),
                }
            })
            .collect();
        self.embed(block, &local)
    }

    // Linearized incidence E_i ⊂ E_{i+1} for consecutive blocks.
    fn nesting_constraints(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let mut out = Vec::new();
        for i in 0..self.blocks.len().saturating_sub(1) {
            let (e, chart, _) = &self.blocks[i];
            let (g, gchart, _) = &self.blocks[i + 1];
            for (a, h_a) in e.basis().row_iter().enumerate() {
                for &c in gchart.nonpivots() {
                    let mut row = vec![0u32; self.dim];
                    for &j in chart.nonpivots() {
                        let coeff = if j == c {
                            1
                        } else if let Some(b) = g.pivots().iter().position(|&pc| pc == j) {
                            f.neg(g.basis().get(b, c))
                        } else {
                            0
                        };
                        row[self.pos(i, a, j)] = coeff;
                    }
                    for (b, &pc) in g.pivots().iter().enumerate() {
                        let idx = self.pos(i + 1, b, c);
                        row[idx] = f.sub(row[idx], h_a[pc]);
                    }
                    out.push(row);
                }
            }
        }
        out
    }

    // Linearized isotropy <φ(h_a), h_b> + <h_a, φ(h_b)> = 0 for a <= b.
    fn isotropy_constraints(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let (h, chart, _) = &self.blocks[0];
        let n = h.ambient();
        let r = h.dim();
        let mut out = Vec::new();
        for a in 0..r {
            for b in a..r {
                let mut row = vec![0u32; self.dim];
                for &j in chart.nonpivots() {
                    let pa = self.pos(0, a, j);
                    row[pa] = f.add(row[pa], h.basis().get(b, n - 1 - j));
                    let pb = self.pos(0, b, j);
                    row[pb] = f.add(row[pb], h.basis().get(a, n - 1 - j));
                }
                out.push(row);
            }
        }
        out
    }
}

fn restrict(field: PrimeField, rows: &[Vec<u32>], basis: &FieldMatrix, dim: usize) -> FieldMatrix {
    let m = FieldMatrix::from_rows(field, rows, dim).expect("uniform rows");
    m.mul(&basis.transpose()).expect("conformable")
}

// Rows spanning `{t ∈ span(basis) : g(t) = 0 for every row g}`.
fn cut(field: PrimeField, basis: &FieldMatrix, equations: &[Vec<u32>], dim: usize) -> FieldMatrix {
    if equations.is_empty() {
        return basis.clone();
    }
    let coeffs = restrict(field, equations, basis, dim).kernel();
    coeffs.mul(basis).expect("conformable")
}

// Plücker coordinates p_β, β not below α, vanish on X_α.
fn schubert_equations(chart: &Chart, block: usize, alpha: &GrassIndex) -> Vec<Vec<u32>> {
    combinations(alpha.n(), alpha.r())
        .into_iter()
        .filter_map(|b| {
            let beta = GrassIndex::new(alpha.n(), b.iter().map(|x| x + 1).collect())
                .expect("valid subset");
            (!beta.leq(alpha)).then(|| chart.det_gradient(block, &[], Some(&b)))
        })
        .collect()
}

fn is_zero(v: &[u32]) -> bool {
    v.iter().all(|&x| x == 0)
}

fn proportional(field: PrimeField, a: &[u32], b: &[u32]) -> bool {
    if is_zero(a) || is_zero(b) {
        return false;
    }
    FieldMatrix::from_rows(field, &[a, b], a.len())
        .expect("same length")
        .rank()
        == 1
}

/// Certify that the conditions of `instance` meet transversally at `point`,
/// by the tangent-functional test and the chart-Jacobian test.
pub fn certify_transverse(point: &Point, instance: &Instance) -> Result<Certificate> {
    let field = instance.field;
    let space = instance.space();
    let components: Vec<&Subspace> = match (point, space) {
        (Point::Plane(h), Space::Grassmannian { .. } | Space::Orthogonal { .. }) => vec![h],
        (Point::Flag(fl), Space::Flag { .. }) => fl.components().iter().collect(),
        _ => {
            return Err(Error::ParameterMismatch(format!(
                "point {point:?} is not a point of {space}"
            )))
        }
    };
    let chart = Chart::new(&components);
    let d = chart.dim;
    let form = match space {
        Space::Orthogonal { r } => Some(BilinearForm::split(field, *r)),
        _ => None,
    };

    // tangent space of the ambient space, then of X_w
    let ambient = FieldMatrix::identity(field, d);
    let mut tangent = match space {
        Space::Orthogonal { .. } => cut(field, &ambient, &chart.isotropy_constraints(), d),
        Space::Flag { .. } => cut(field, &ambient, &chart.nesting_constraints(), d),
        _ => ambient,
    };
    debug_assert_eq!(tangent.rows(), space.dimension());
    if let Some(w) = instance.restriction() {
        let equations: Vec<Vec<u32>> = match w {
            SchubertIndex::Grass(alpha) => schubert_equations(&chart, 0, alpha),
            SchubertIndex::Orthogonal(lambda) => {
                schubert_equations(&chart, 0, &lambda.grass_index())
            }
            SchubertIndex::Flag(fw) => (0..components.len())
                .flat_map(|i| schubert_equations(&chart, i, &fw.projection(i)))
                .collect(),
            SchubertIndex::Quantum(_) => Vec::new(),
        };
        tangent = cut(field, &tangent, &equations, d);
    }
    let l = instance.conditions.len();

    let mut covectors = Vec::with_capacity(l);
    let mut gradients = Vec::with_capacity(l);
    for c in &instance.conditions {
        let block = if matches!(space, Space::Flag { .. }) {
            c.family - 1
        } else {
            0
        };
        let h = components[block];
        let functional = match &form {
            Some(form) => isotropic_tangent_functional(h, &c.subspace, form),
            None => tangent_functional(h, &c.subspace),
        };
        let functional = match functional {
            Ok(t) => t,
            Err(Error::SingularPoint { .. }) => {
                return Ok(Certificate {
                    tangent_rank: 0,
                    jacobian_rank: 0,
                    verdict: CertificateVerdict::SingularPoint,
                    proportional: false,
                })
            }
            Err(e) => return Err(e),
        };
        covectors.push(chart.embed(block, &functional.covector));
        gradients.push(jacobian_row(&chart, block, h, &c.subspace, form.as_ref())?);
    }

    let t = restrict(field, &covectors, &tangent, d);
    let j = restrict(field, &gradients, &tangent, d);
    let tangent_rank = t.rank();
    let jacobian_rank = j.rank();
    let proportional = (0..l).all(|i| proportional(field, t.row(i), j.row(i)));
    let verdict = if tangent.rows() != l {
        CertificateVerdict::SingularOnZ
    } else if tangent_rank == l && jacobian_rank == l {
        CertificateVerdict::Transverse
    } else {
        CertificateVerdict::Nontransverse
    };
    Ok(Certificate {
        tangent_rank,
        jacobian_rank,
        verdict,
        proportional,
    })
}

// Gradient of the local equation of the condition at the point.
fn jacobian_row(
    chart: &Chart,
    block: usize,
    h: &Subspace,
    k: &Subspace,
    form: Option<&BilinearForm>,
) -> Result<Vec<u32>> {
    let fixed = k.basis().to_rows();
    match form {
        None => Ok(chart.det_gradient(block, &fixed, None)),
        Some(_) => {
            // det[K; H] vanishes to second order along the condition on OG;
            // det[K; e_j; H] with <e_j, v> ≠ 0 cuts it out simply.
            let n = h.ambient();
            let meet = h.intersection(k)?;
            let v = meet.basis().row(0);
            let j = (0..n).find(|&j| v[n - 1 - j] != 0).expect("v is nonzero");
            let mut rows = fixed;
            let mut e = vec![0; n];
            e[j] = 1;
            rows.push(e);
            Ok(chart.det_gradient(block, &rows, None))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifier::{build_instance, solve, Condition, Mode, ProblemSpec};

    #[test]
    fn repeated_condition_is_not_transverse() {
        let f = PrimeField::new(7).unwrap();
        let spec = ProblemSpec::new(Space::Grassmannian { r: 2, n: 4 }, Mode::Independent);
        let mut inst = build_instance(&spec, f, 4).unwrap();
        let first: Condition = inst.conditions[0].clone();
        inst.conditions[1] = first;
        let sols = solve(&inst).unwrap();
        assert!(sols.len() > 2);
        for p in &sols {
            let c = certify_transverse(p, &inst).unwrap();
            assert_ne!(c.verdict, CertificateVerdict::Transverse);
            assert!(c.tangent_rank < 4 || c.verdict == CertificateVerdict::SingularPoint);
        }
    }
}
