use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combinat::{CoverLabel, SchubertIndex, Space};
use crate::error::{Error, Result};
use crate::ffalg::{BilinearForm, PrimeField, Subspace};
use crate::geometry::{sample_general_isotropic, sample_general_subspace, torus_act, TorusWeights};

/// How the simple conditions of an instance are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// One general `K` translated by distinct torus parameters `s_1, ..., s_l`.
    Family,
    /// Independently sampled general `K_1, ..., K_l`.
    Independent,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Family => "family",
            Mode::Independent => "independent",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "family" => Ok(Mode::Family),
            "independent" => Ok(Mode::Independent),
            _ => Err(Error::InvalidInput(format!(
                "unknown mode {s:?} (expected family or independent)"
            ))),
        }
    }
}

/// Everything about an enumerative problem except the field and the seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    pub space: Space,
    pub mode: Mode,
    /// Family of each condition; defaults to family 1 throughout.
    pub labels: Option<Vec<CoverLabel>>,
    /// Solve inside the Schubert variety `X_w` instead of the whole space.
    pub restriction: Option<SchubertIndex>,
    /// Torus characters for family mode.
    pub weights: Option<TorusWeights>,
}

impl ProblemSpec {
    pub fn new(space: Space, mode: Mode) -> ProblemSpec {
        ProblemSpec {
            space,
            mode,
            labels: None,
            restriction: None,
            weights: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<CoverLabel>) -> Self {
        self.labels = Some(labels);
        self
    }

    pub fn with_restriction(mut self, w: SchubertIndex) -> Self {
        self.restriction = Some(w);
        self
    }

    pub fn with_weights(mut self, weights: TorusWeights) -> Self {
        self.weights = Some(weights);
        self
    }

    /// The index whose chains are counted: `w` if restricted, else the top.
    pub fn target(&self) -> SchubertIndex {
        self.restriction.clone().unwrap_or_else(|| self.space.top())
    }

    /// Number of conditions.
    pub fn condition_count(&self) -> usize {
        self.target().rank()
    }

    pub fn resolved_labels(&self) -> Vec<CoverLabel> {
        self.labels
            .clone()
            .unwrap_or_else(|| vec![CoverLabel(1); self.condition_count()])
    }

    pub fn validate(&self) -> Result<()> {
        self.space.validate()?;
        if matches!(self.space, Space::Quantum { .. }) {
            return Err(Error::InvalidInput(
                "quantum instances are counted, not solved over finite fields".into(),
            ));
        }
        if let Some(w) = &self.restriction {
            if w.space() != self.space {
                return Err(Error::ParameterMismatch(format!(
                    "index {w} does not belong to {}",
                    self.space
                )));
            }
        }
        let labels = self.resolved_labels();
        if labels.len() != self.condition_count() {
            return Err(Error::InvalidInput(format!(
                "{} labels for {} conditions",
                labels.len(),
                self.condition_count()
            )));
        }
        let m = self.space.families();
        if let Some(bad) = labels.iter().find(|l| l.0 == 0 || l.0 > m) {
            return Err(Error::InvalidInput(format!(
                "label {} outside 1..={m}",
                bad.0
            )));
        }
        if let Some(w) = &self.weights {
            if w.len() != self.space.ambient() {
                return Err(Error::ParameterMismatch(format!(
                    "{} torus weights for ambient dimension {}",
                    w.len(),
                    self.space.ambient()
                )));
            }
            if matches!(self.space, Space::Orthogonal { .. }) && !w.preserves_split_form() {
                return Err(Error::InvalidInput(format!(
                    "torus weights {:?} do not preserve the symmetric form",
                    w.weights()
                )));
            }
        }
        Ok(())
    }

    /// Weights used in family mode: `j` for `j = 1..n`, or `j - r - 1` on
    /// OG(r) so that the torus preserves the form.
    pub fn resolved_weights(&self) -> TorusWeights {
        if let Some(w) = &self.weights {
            return w.clone();
        }
        match self.space {
            Space::Orthogonal { r } => {
                let n = 2 * r as i64 + 1;
                TorusWeights::new((1..=n).map(|j| j - r as i64 - 1).collect()).expect("increasing")
            }
            _ => TorusWeights::standard(self.space.ambient()),
        }
    }
}

/// One simple Schubert condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    /// Family label (1-based); on flags, the component it constrains.
    pub family: usize,
    pub subspace: Subspace,
    /// Torus parameter in family mode.
    pub parameter: Option<u32>,
}

/// A fully specified problem over a prime field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub spec: ProblemSpec,
    pub field: PrimeField,
    pub seed: u64,
    pub conditions: Vec<Condition>,
}

impl Instance {
    pub fn space(&self) -> &Space {
        &self.spec.space
    }

    pub fn restriction(&self) -> Option<&SchubertIndex> {
        self.spec.restriction.as_ref()
    }
}

/// Dimension of the condition subspace for a family, and whether it must be isotropic.
fn condition_shape(space: &Space, family: usize) -> (usize, usize) {
    match space {
        Space::Grassmannian { r, n } => (*n - *r, *n),
        Space::Flag { steps, n } => (*n - steps[family - 1], *n),
        Space::Orthogonal { r } => (*r, 2 * r + 1),
        Space::Quantum { .. } => unreachable!("rejected by validate"),
    }
}

fn sample(space: &Space, field: PrimeField, family: usize, seed: u64) -> Result<Subspace> {
    match space {
        Space::Orthogonal { r } => sample_general_isotropic(field, *r, seed),
        _ => {
            let (d, n) = condition_shape(space, family);
            sample_general_subspace(field, n - d, n, seed)
        }
    }
}

/// Draw the conditions of `spec` over `field`, deterministically in `seed`.
pub fn build_instance(spec: &ProblemSpec, field: PrimeField, seed: u64) -> Result<Instance> {
    spec.validate()?;
    if matches!(spec.space, Space::Orthogonal { .. }) && !field.characteristic_is_odd() {
        return Err(Error::Characteristic(field.modulus()));
    }
    let labels = spec.resolved_labels();
    let l = labels.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let conditions = match spec.mode {
        Mode::Independent => labels
            .iter()
            .map(|lab| {
                Ok(Condition {
                    family: lab.0,
                    subspace: sample(&spec.space, field, lab.0, rng.gen())?,
                    parameter: None,
                })
            })
            .collect::<Result<Vec<_>>>()?,
        Mode::Family => {
            let available = field.unit_count();
            if available < l {
                return Err(Error::NotEnoughUnits {
                    prime: field.modulus(),
                    needed: l,
                    available,
                });
            }
            let weights = spec.resolved_weights();
            let mut base: Vec<Option<Subspace>> = vec![None; spec.space.families()];
            for lab in &labels {
                if base[lab.0 - 1].is_none() {
                    base[lab.0 - 1] = Some(sample(&spec.space, field, lab.0, rng.gen())?);
                }
            }
            let mut units: Vec<u32> = field.units().collect();
            units.shuffle(&mut rng);
            labels
                .iter()
                .zip(units)
                .map(|(lab, s)| {
                    let k = base[lab.0 - 1].as_ref().expect("sampled above");
                    Ok(Condition {
                        family: lab.0,
                        subspace: torus_act(s, k, &weights)?,
                        parameter: Some(s),
                    })
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    if let Space::Orthogonal { r } = spec.space {
        let form = BilinearForm::split(field, r);
        debug_assert!(conditions.iter().all(|c| form.is_isotropic(&c.subspace)));
    }
    Ok(Instance {
        spec: spec.clone(),
        field,
        seed,
        conditions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn family_instance_uses_distinct_units() {
        let spec = ProblemSpec::new(Space::Grassmannian { r: 2, n: 4 }, Mode::Family);
        let inst = build_instance(&spec, f(7), 1).unwrap();
        assert_eq!(inst.conditions.len(), 4);
        let mut s: Vec<u32> = inst
            .conditions
            .iter()
            .map(|c| c.parameter.unwrap())
            .collect();
        s.sort_unstable();
        s.dedup();
        assert_eq!(s.len(), 4);
    }

    #[test]
    fn not_enough_units() {
        let spec = ProblemSpec::new(Space::Grassmannian { r: 2, n: 4 }, Mode::Family);
        assert_eq!(
            build_instance(&spec, f(3), 0).unwrap_err(),
            Error::NotEnoughUnits {
                prime: 3,
                needed: 4,
                available: 2
            }
        );
    }

    #[test]
    fn orthogonal_family_is_isotropic() {
        let spec = ProblemSpec::new(Space::Orthogonal { r: 2 }, Mode::Family);
        let inst = build_instance(&spec, f(7), 3).unwrap();
        let form = BilinearForm::split(f(7), 2);
        assert_eq!(inst.conditions.len(), 3);
        assert!(inst
            .conditions
            .iter()
            .all(|c| form.is_isotropic(&c.subspace)));
    }

    #[test]
    fn rejects_quantum_and_bad_weights() {
        let q = ProblemSpec::new(Space::Quantum { r: 2, n: 4, q: 1 }, Mode::Independent);
        assert!(build_instance(&q, f(7), 0).is_err());
        let og = ProblemSpec::new(Space::Orthogonal { r: 2 }, Mode::Family)
            .with_weights(TorusWeights::new(vec![1, 2, 3, 4, 6]).unwrap());
        assert!(build_instance(&og, f(7), 0).is_err());
    }

    #[test]
    fn flag_conditions_have_family_dimensions() {
        let spec = ProblemSpec::new(
            Space::Flag {
                steps: vec![1, 2],
                n: 3,
            },
            Mode::Independent,
        )
        .with_labels(vec![CoverLabel(1), CoverLabel(1), CoverLabel(2)]);
        let inst = build_instance(&spec, f(5), 9).unwrap();
        let dims: Vec<usize> = inst.conditions.iter().map(|c| c.subspace.dim()).collect();
        assert_eq!(dims, vec![2, 2, 1]);
    }
}
