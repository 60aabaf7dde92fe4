use crate::combinat::GrassIndex;
use crate::error::{Error, Result};
use crate::ffalg::{FieldMatrix, Subspace};

/// Characters `i_1 < ... < i_n` of a one-dimensional torus acting
/// diagonally by `s.e_j = s^{i_j} e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusWeights(Vec<i64>);

impl TorusWeights {
    pub fn new(weights: Vec<i64>) -> Result<TorusWeights> {
        if weights.is_empty() || weights.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(format!(
                "torus weights {weights:?} must be strictly increasing"
            )));
        }
        Ok(TorusWeights(weights))
    }

    /// `i_j = j`.
    pub fn standard(n: usize) -> TorusWeights {
        TorusWeights((1..=n as i64).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weights(&self) -> &[i64] {
        &self.0
    }

    /// `Σ_j i_{α_j}`, the weight of the Plücker coordinate `p_α`.
    pub fn exponent(&self, alpha: &GrassIndex) -> i64 {
        alpha.alpha().iter().map(|&a| self.0[a - 1]).sum()
    }

    /// Whether the split form `<e_i, e_{n+1-i}> = 1` scales by a character,
    /// i.e. `i_j + i_{n+1-j}` is constant.
    pub fn preserves_split_form(&self) -> bool {
        let n = self.0.len();
        let c = self.0[0] + self.0[n - 1];
        (0..n).all(|j| self.0[j] + self.0[n - 1 - j] == c)
    }
}

/// `s.K`: column j of the basis scaled by `s^{i_j}`, then re-normalized.
pub fn torus_act(s: u32, k: &Subspace, weights: &TorusWeights) -> Result<Subspace> {
    let f = k.field();
    if s.is_multiple_of(f.modulus()) {
        return Err(Error::InvalidInput(
            "torus parameter must be nonzero".into(),
        ));
    }
    if weights.len() != k.ambient() {
        return Err(Error::ParameterMismatch(format!(
            "{} weights for ambient dimension {}",
            weights.len(),
            k.ambient()
        )));
    }
    let scale: Vec<u32> = weights
        .weights()
        .iter()
        .map(|&w| f.pow_signed(s, w).expect("s is a unit"))
        .collect();
    let m = FieldMatrix::from_fn(f, k.dim(), k.ambient(), |i, j| {
        f.mul(k.basis().get(i, j), scale[j])
    });
    Ok(Subspace::span(&m))
}
