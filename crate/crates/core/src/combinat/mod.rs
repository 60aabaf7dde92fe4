//! Schubert index sets, their Bruhat-type orders, and saturated-chain counts.

mod index;

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub use index::{
    combinations, CoverLabel, FlagIndex, GrassIndex, QuantumIndex, SchubertIndex, Space,
    StrictPartition,
};

use crate::error::{check_capacity, Error, Result};

fn check_label(space: &Space, label: CoverLabel) -> Result<usize> {
    let m = space.families();
    if label.0 == 0 || label.0 > m {
        return Err(Error::InvalidInput(format!(
            "cover label {} is not a family of {space} (expected 1..={m})",
            label.0
        )));
    }
    Ok(label.0 - 1)
}

/// Lower covers of `v` for the given family.
pub fn covers_down(v: &SchubertIndex, label: CoverLabel) -> Result<Vec<SchubertIndex>> {
    let family = check_label(&v.space(), label)?;
    Ok(match v {
        SchubertIndex::Grass(g) => g
            .covers_down()
            .into_iter()
            .map(SchubertIndex::Grass)
            .collect(),
        SchubertIndex::Flag(w) => w
            .covers_down(family)
            .into_iter()
            .map(SchubertIndex::Flag)
            .collect(),
        SchubertIndex::Orthogonal(l) => l
            .covers_down()
            .into_iter()
            .map(SchubertIndex::Orthogonal)
            .collect(),
        SchubertIndex::Quantum(z) => z
            .covers_down()
            .into_iter()
            .map(SchubertIndex::Quantum)
            .collect(),
    })
}

/// Number of saturated chains `0̂ ≺_1 w_1 ≺_2 ... ≺_k w_k = top`, where
/// `labels[j]` names the relation of step `j + 1`.
pub fn count_chains(top: &SchubertIndex, labels: &[CoverLabel]) -> Result<BigUint> {
    let space = top.space();
    space.validate()?;
    if labels.len() != top.rank() {
        return Err(Error::InvalidInput(format!(
            "{} labels given for an index of rank {}",
            labels.len(),
            top.rank()
        )));
    }
    for &l in labels {
        check_label(&space, l)?;
    }
    let mut memo: HashMap<SchubertIndex, BigUint> = HashMap::new();
    chains_to(top, labels, &mut memo)
}

fn chains_to(
    v: &SchubertIndex,
    labels: &[CoverLabel],
    memo: &mut HashMap<SchubertIndex, BigUint>,
) -> Result<BigUint> {
    let k = v.rank();
    if k == 0 {
        return Ok(BigUint::one());
    }
    if let Some(c) = memo.get(v) {
        return Ok(c.clone());
    }
    let mut total = BigUint::zero();
    for u in covers_down(v, labels[k - 1])? {
        total += chains_to(&u, labels, memo)?;
    }
    memo.insert(v.clone(), total.clone());
    Ok(total)
}

/// `count_chains` with every step using the first family.
pub fn degree(top: &SchubertIndex) -> Result<BigUint> {
    count_chains(top, &vec![CoverLabel(1); top.rank()])
}

/// Number of standard Young tableaux of the `r x c` rectangle, by the hook
/// length formula. Independent of the poset machinery.
pub fn syt_rectangle_oracle(r: usize, c: usize) -> BigUint {
    let cells = r * c;
    let mut num = BigUint::one();
    for k in 2..=cells {
        num *= k;
    }
    let mut den = BigUint::one();
    for i in 0..r {
        for j in 0..c {
            den *= (r - 1 - i) + (c - 1 - j) + 1;
        }
    }
    num / den
}

/// A materialized Schubert index poset with precomputed covers.
pub struct Poset {
    space: Space,
    elements: Vec<SchubertIndex>,
    lookup: HashMap<SchubertIndex, usize>,
    // covers[family][element] = lower covers
    covers: Vec<Vec<Vec<usize>>>,
    bottom: usize,
    downsets: Vec<OnceLock<Vec<bool>>>,
}

impl Poset {
    pub fn new(space: &Space) -> Result<Poset> {
        space.validate()?;
        check_capacity(format!("index set of {space}"), &space.element_count())?;
        let elements: Vec<SchubertIndex> = match space {
            Space::Grassmannian { r, n } => GrassIndex::all(*r, *n)
                .into_iter()
                .map(SchubertIndex::Grass)
                .collect(),
            Space::Flag { steps, n } => FlagIndex::all(steps, *n)
                .into_iter()
                .map(SchubertIndex::Flag)
                .collect(),
            Space::Orthogonal { r } => StrictPartition::all(*r)
                .into_iter()
                .map(SchubertIndex::Orthogonal)
                .collect(),
            Space::Quantum { r, n, q } => (0..=*q)
                .flat_map(|a| {
                    GrassIndex::all(*r, *n).into_iter().map(move |g| {
                        SchubertIndex::Quantum(QuantumIndex::new(*q, g, a).expect("a <= q"))
                    })
                })
                .collect(),
        };
        let lookup: HashMap<SchubertIndex, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        let mut covers = Vec::with_capacity(space.families());
        for fam in 1..=space.families() {
            let per: Result<Vec<Vec<usize>>> = elements
                .iter()
                .map(|e| {
                    Ok(covers_down(e, CoverLabel(fam))?
                        .iter()
                        .map(|u| lookup[u])
                        .collect())
                })
                .collect();
            covers.push(per?);
        }
        let bottom = lookup[&space.bottom()];
        let downsets = (0..elements.len()).map(|_| OnceLock::new()).collect();
        Ok(Poset {
            space: space.clone(),
            elements,
            lookup,
            covers,
            bottom,
            downsets,
        })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn elements(&self) -> &[SchubertIndex] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn bottom(&self) -> &SchubertIndex {
        &self.elements[self.bottom]
    }

    pub fn position(&self, v: &SchubertIndex) -> Result<usize> {
        self.lookup.get(v).copied().ok_or_else(|| {
            Error::ParameterMismatch(format!("{v} is not an index of {}", self.space))
        })
    }

    /// Lower covers of `v` in the union of all families.
    pub fn all_covers_down(&self, v: &SchubertIndex) -> Result<Vec<SchubertIndex>> {
        let i = self.position(v)?;
        let mut out: Vec<usize> = self
            .covers
            .iter()
            .flat_map(|fam| fam[i].iter().copied())
            .collect();
        out.sort_unstable();
        out.dedup();
        Ok(out.into_iter().map(|j| self.elements[j].clone()).collect())
    }

    pub fn covers_down(&self, v: &SchubertIndex, label: CoverLabel) -> Result<Vec<SchubertIndex>> {
        let fam = check_label(&self.space, label)?;
        let i = self.position(v)?;
        Ok(self.covers[fam][i]
            .iter()
            .map(|&j| self.elements[j].clone())
            .collect())
    }

    /// Bruhat order. Grassmannian and quantum indices compare by formula;
    /// flag and orthogonal indices by reachability along covers.
    pub fn leq(&self, u: &SchubertIndex, v: &SchubertIndex) -> Result<bool> {
        let iu = self.position(u)?;
        let iv = self.position(v)?;
        Ok(match (u, v) {
            (SchubertIndex::Grass(a), SchubertIndex::Grass(b)) => a.leq(b),
            (SchubertIndex::Quantum(a), SchubertIndex::Quantum(b)) => a.leq(b),
            _ => self.downset(iv)[iu],
        })
    }

    fn downset(&self, v: usize) -> &Vec<bool> {
        self.downsets[v].get_or_init(|| {
            let mut seen = vec![false; self.elements.len()];
            let mut stack = vec![v];
            seen[v] = true;
            while let Some(x) = stack.pop() {
                for fam in &self.covers {
                    for &y in &fam[x] {
                        if !seen[y] {
                            seen[y] = true;
                            stack.push(y);
                        }
                    }
                }
            }
            seen
        })
    }

    /// Chain count by a bottom-up sweep over the precomputed covers.
    pub fn count_chains(&self, top: &SchubertIndex, labels: &[CoverLabel]) -> Result<BigUint> {
        let it = self.position(top)?;
        if labels.len() != top.rank() {
            return Err(Error::InvalidInput(format!(
                "{} labels given for an index of rank {}",
                labels.len(),
                top.rank()
            )));
        }
        let fams: Vec<usize> = labels
            .iter()
            .map(|&l| check_label(&self.space, l))
            .collect::<Result<_>>()?;
        let mut memo: Vec<Option<BigUint>> = vec![None; self.elements.len()];
        memo[self.bottom] = Some(BigUint::one());
        Ok(self.sweep(it, &fams, &mut memo))
    }

    fn sweep(&self, v: usize, fams: &[usize], memo: &mut Vec<Option<BigUint>>) -> BigUint {
        if let Some(c) = &memo[v] {
            return c.clone();
        }
        let k = self.elements[v].rank();
        let total = if k == 0 {
            BigUint::zero()
        } else {
            let mut t = BigUint::zero();
            for &u in &self.covers[fams[k - 1]][v] {
                t += self.sweep(u, fams, memo);
            }
            t
        };
        memo[v] = Some(total.clone());
        total
    }
}

/// All indices of a space, with the bottom element first.
pub fn poset_elements(space: &Space) -> Result<Vec<SchubertIndex>> {
    let poset = Poset::new(space)?;
    let bottom = poset.bottom().clone();
    let mut out = vec![bottom.clone()];
    out.extend(poset.elements.into_iter().filter(|e| *e != bottom));
    Ok(out)
}
