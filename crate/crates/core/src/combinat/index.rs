use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// All r-subsets of `0..n` as increasing vectors, in lexicographic order.
pub fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..r).collect();
    loop {
        out.push(cur.clone());
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - r + i {
                cur[i] += 1;
                for j in i + 1..r {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Schubert index of G(r, n): `1 <= alpha_1 < ... < alpha_r <= n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrassIndex {
    n: usize,
    alpha: Vec<usize>,
}

impl GrassIndex {
    pub fn new(n: usize, alpha: Vec<usize>) -> Result<GrassIndex> {
        if alpha.is_empty() || alpha.len() > n {
            return Err(Error::InvalidInput(format!(
                "index {alpha:?} must have between 1 and {n} entries"
            )));
        }
        if alpha[0] < 1 || *alpha.last().unwrap() > n || alpha.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(format!(
                "index {alpha:?} must be strictly increasing in [1, {n}]"
            )));
        }
        Ok(GrassIndex { n, alpha })
    }

    pub(crate) fn from_zero_based(n: usize, cols: &[usize]) -> GrassIndex {
        GrassIndex {
            n,
            alpha: cols.iter().map(|c| c + 1).collect(),
        }
    }

    pub fn bottom(r: usize, n: usize) -> GrassIndex {
        GrassIndex {
            n,
            alpha: (1..=r).collect(),
        }
    }

    pub fn top(r: usize, n: usize) -> GrassIndex {
        GrassIndex {
            n,
            alpha: (n - r + 1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn zero_based(&self) -> Vec<usize> {
        self.alpha.iter().map(|a| a - 1).collect()
    }

    /// `|alpha| = Σ (alpha_i - i)`.
    pub fn rank(&self) -> usize {
        self.alpha
            .iter()
            .enumerate()
            .map(|(i, a)| a - (i + 1))
            .sum()
    }

    /// Componentwise order.
    pub fn leq(&self, other: &GrassIndex) -> bool {
        self.n == other.n
            && self.alpha.len() == other.alpha.len()
            && self.alpha.iter().zip(&other.alpha).all(|(a, b)| a <= b)
    }

    /// Indices covered by this one: lower a single entry by one.
    pub fn covers_down(&self) -> Vec<GrassIndex> {
        let mut out = Vec::new();
        for i in 0..self.alpha.len() {
            let floor = if i == 0 { 1 } else { self.alpha[i - 1] + 1 };
            if self.alpha[i] > floor {
                let mut a = self.alpha.clone();
                a[i] -= 1;
                out.push(GrassIndex {
                    n: self.n,
                    alpha: a,
                });
            }
        }
        out
    }

    pub fn all(r: usize, n: usize) -> Vec<GrassIndex> {
        combinations(n, r)
            .iter()
            .map(|c| GrassIndex::from_zero_based(n, c))
            .collect()
    }
}

/// Schubert index of a partial flag manifold: a permutation of `1..=n`
/// (one-line notation) whose descents all lie in `steps`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlagIndex {
    steps: Vec<usize>,
    w: Vec<usize>,
}

impl FlagIndex {
    pub fn new(steps: Vec<usize>, w: Vec<usize>) -> Result<FlagIndex> {
        let n = w.len();
        validate_steps(&steps, n)?;
        let mut seen = vec![false; n + 1];
        for &x in &w {
            if x == 0 || x > n || seen[x] {
                return Err(Error::InvalidInput(format!(
                    "{w:?} is not a permutation of 1..={n}"
                )));
            }
            seen[x] = true;
        }
        for i in 1..n {
            if w[i - 1] > w[i] && !steps.contains(&i) {
                return Err(Error::InvalidInput(format!(
                    "{w:?} has a descent at {i}, outside the steps {steps:?}"
                )));
            }
        }
        Ok(FlagIndex { steps, w })
    }

    pub fn identity(steps: &[usize], n: usize) -> FlagIndex {
        FlagIndex {
            steps: steps.to_vec(),
            w: (1..=n).collect(),
        }
    }

    /// The longest permutation with descents in `steps`.
    pub fn top(steps: &[usize], n: usize) -> FlagIndex {
        let mut bounds = vec![0];
        bounds.extend_from_slice(steps);
        bounds.push(n);
        let mut w = Vec::with_capacity(n);
        let mut hi = n;
        for b in bounds.windows(2) {
            let size = b[1] - b[0];
            w.extend(hi - size + 1..=hi);
            hi -= size;
        }
        FlagIndex {
            steps: steps.to_vec(),
            w,
        }
    }

    pub fn n(&self) -> usize {
        self.w.len()
    }

    pub fn steps(&self) -> &[usize] {
        &self.steps
    }

    pub fn permutation(&self) -> &[usize] {
        &self.w
    }

    /// Inversion count.
    pub fn rank(&self) -> usize {
        let w = &self.w;
        let mut inv = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// `sorted(w_1..w_{r_i})` as a Grassmannian index of G(r_i, n).
    pub fn projection(&self, family: usize) -> GrassIndex {
        let r = self.steps[family];
        let mut a = self.w[..r].to_vec();
        a.sort_unstable();
        GrassIndex {
            n: self.n(),
            alpha: a,
        }
    }

    /// Monk covers for family `i` (0-based): swap positions `a < b` with
    /// `a <= r_i < b` (1-based) when the inversion count drops by one and the
    /// result is still a valid index.
    pub fn covers_down(&self, family: usize) -> Vec<FlagIndex> {
        let r = self.steps[family];
        let n = self.n();
        let len = self.rank();
        let mut out = Vec::new();
        for a in 0..r {
            for b in r..n {
                if self.w[a] < self.w[b] {
                    continue;
                }
                let mut u = self.w.clone();
                u.swap(a, b);
                let candidate = FlagIndex {
                    steps: self.steps.clone(),
                    w: u,
                };
                if candidate.rank() + 1 == len && candidate.descents_ok() {
                    out.push(candidate);
                }
            }
        }
        out.sort();
        out
    }

    fn descents_ok(&self) -> bool {
        (1..self.w.len()).all(|i| self.w[i - 1] < self.w[i] || self.steps.contains(&i))
    }

    pub fn all(steps: &[usize], n: usize) -> Vec<FlagIndex> {
        let mut bounds = vec![0];
        bounds.extend_from_slice(steps);
        bounds.push(n);
        let sizes: Vec<usize> = bounds.windows(2).map(|b| b[1] - b[0]).collect();
        let mut out = Vec::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        fill_blocks(&sizes, &(1..=n).collect::<Vec<_>>(), &mut blocks, &mut out);
        out.into_iter()
            .map(|w| FlagIndex {
                steps: steps.to_vec(),
                w,
            })
            .collect()
    }
}

fn fill_blocks(
    sizes: &[usize],
    remaining: &[usize],
    blocks: &mut Vec<Vec<usize>>,
    out: &mut Vec<Vec<usize>>,
) {
    if blocks.len() == sizes.len() {
        out.push(blocks.concat());
        return;
    }
    let k = sizes[blocks.len()];
    for pick in combinations(remaining.len(), k) {
        let chosen: Vec<usize> = pick.iter().map(|&i| remaining[i]).collect();
        let rest: Vec<usize> = remaining
            .iter()
            .enumerate()
            .filter(|(i, _)| !pick.contains(i))
            .map(|(_, &x)| x)
            .collect();
        blocks.push(chosen);
        fill_blocks(sizes, &rest, blocks, out);
        blocks.pop();
    }
}

pub(crate) fn validate_steps(steps: &[usize], n: usize) -> Result<()> {
    if steps.is_empty()
        || steps[0] == 0
        || steps.windows(2).any(|w| w[0] >= w[1])
        || *steps.last().unwrap() >= n
    {
        return Err(Error::InvalidInput(format!(
            "flag steps {steps:?} must satisfy 0 < r_1 < ... < r_m < n = {n}"
        )));
    }
    Ok(())
}

/// Schubert index of OG(r): a strict partition with parts at most r.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrictPartition {
    r: usize,
    parts: Vec<usize>,
}

impl StrictPartition {
    pub fn new(r: usize, parts: Vec<usize>) -> Result<StrictPartition> {
        if parts.first().is_some_and(|&l| l > r)
            || parts.windows(2).any(|w| w[0] <= w[1])
            || parts.last() == Some(&0)
        {
            return Err(Error::InvalidInput(format!(
                "{parts:?} is not a strictly decreasing sequence of positive parts at most {r}"
            )));
        }
        Ok(StrictPartition { r, parts })
    }

    pub fn empty(r: usize) -> StrictPartition {
        StrictPartition {
            r,
            parts: Vec::new(),
        }
    }

    pub fn staircase(r: usize) -> StrictPartition {
        StrictPartition {
            r,
            parts: (1..=r).rev().collect(),
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn rank(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Remove one box, keeping the parts strictly decreasing.
    pub fn covers_down(&self) -> Vec<StrictPartition> {
        let mut out = Vec::new();
        for i in 0..self.parts.len() {
            let lowered = self.parts[i] - 1;
            let next = self.parts.get(i + 1).copied().unwrap_or(0);
            if lowered > next || (lowered == 0 && next == 0) {
                let mut p = self.parts.clone();
                if lowered == 0 {
                    p.pop();
                } else {
                    p[i] = lowered;
                }
                out.push(StrictPartition {
                    r: self.r,
                    parts: p,
                });
            }
        }
        out
    }

    /// The coordinate r-plane of F^{2r+1} in the same Schubert cell, as a
    /// Grassmannian index: parts `λ` give the entries `r + 1 + λ_k`, the
    /// rest are the `j <= r` whose partner `2r + 2 - j` was not taken.
    pub fn grass_index(&self) -> GrassIndex {
        let r = self.r;
        let n = 2 * r + 1;
        let big: Vec<usize> = self.parts.iter().map(|l| r + 1 + l).collect();
        let mut alpha: Vec<usize> = (1..=r).filter(|j| !big.contains(&(n + 1 - j))).collect();
        alpha.extend(big.iter().rev());
        alpha.sort_unstable();
        GrassIndex { n, alpha }
    }

    /// Inverse of [`StrictPartition::grass_index`] on admissible indices.
    pub fn from_grass_index(alpha: &GrassIndex) -> Result<StrictPartition> {
        let n = alpha.n();
        if n.is_multiple_of(2) || alpha.r() != (n - 1) / 2 {
            return Err(Error::ParameterMismatch(format!(
                "{alpha:?} is not an index of G(r, 2r+1)"
            )));
        }
        let r = alpha.r();
        let mut parts: Vec<usize> = alpha
            .alpha()
            .iter()
            .filter(|&&a| a > r + 1)
            .map(|a| a - r - 1)
            .collect();
        parts.reverse();
        let sp = StrictPartition { r, parts };
        if sp.grass_index() != *alpha {
            return Err(Error::InvalidInput(format!(
                "{alpha:?} does not index an isotropic coordinate plane"
            )));
        }
        Ok(sp)
    }

    pub fn all(r: usize) -> Vec<StrictPartition> {
        (0..(1usize << r))
            .map(|mask| StrictPartition {
                r,
                parts: (1..=r).rev().filter(|k| mask >> (k - 1) & 1 == 1).collect(),
            })
            .collect()
    }
}

/// Index of the quantum grassmannian: `alpha^(a)` with `0 <= a <= q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuantumIndex {
    q: usize,
    a: usize,
    alpha: GrassIndex,
}

impl QuantumIndex {
    pub fn new(q: usize, alpha: GrassIndex, a: usize) -> Result<QuantumIndex> {
        if a > q {
            return Err(Error::InvalidInput(format!(
                "degree index {a} exceeds q = {q}"
            )));
        }
        Ok(QuantumIndex { q, a, alpha })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn alpha(&self) -> &GrassIndex {
        &self.alpha
    }

    /// `a·n + |alpha|`.
    pub fn rank(&self) -> usize {
        self.a * self.alpha.n() + self.alpha.rank()
    }

    /// `alpha^(a) <= beta^(b)` iff `a <= b` and `alpha_i <= beta_{b-a+i}`
    /// for `i = 1..r-b+a`.
    pub fn leq(&self, other: &QuantumIndex) -> bool {
        if self.q != other.q
            || self.alpha.n() != other.alpha.n()
            || self.alpha.r() != other.alpha.r()
        {
            return false;
        }
        if self.a > other.a {
            return false;
        }
        let d = other.a - self.a;
        let r = self.alpha.r();
        if d >= r {
            return true;
        }
        (0..r - d).all(|i| self.alpha.alpha[i] <= other.alpha.alpha[d + i])
    }

    /// Elements of rank one less that lie below this one.
    pub fn covers_down(&self) -> Vec<QuantumIndex> {
        let mut out: Vec<QuantumIndex> = self
            .alpha
            .covers_down()
            .into_iter()
            .map(|b| QuantumIndex {
                q: self.q,
                a: self.a,
                alpha: b,
            })
            .collect();
        if self.a > 0 {
            let n = self.alpha.n();
            let target = self.rank() - 1;
            for beta in GrassIndex::all(self.alpha.r(), n) {
                let cand = QuantumIndex {
                    q: self.q,
                    a: self.a - 1,
                    alpha: beta,
                };
                if cand.rank() == target && cand.leq(self) {
                    out.push(cand);
                }
            }
        }
        out.sort();
        out
    }
}

/// The four kinds of spaces whose Schubert indices are handled here.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    Grassmannian { r: usize, n: usize },
    Flag { steps: Vec<usize>, n: usize },
    Orthogonal { r: usize },
    Quantum { r: usize, n: usize, q: usize },
}

impl Space {
    pub fn validate(&self) -> Result<()> {
        match self {
            Space::Grassmannian { r, n } | Space::Quantum { r, n, .. } => {
                if *r == 0 || r >= n {
                    return Err(Error::InvalidInput(format!(
                        "need 0 < r < n, got r = {r}, n = {n}"
                    )));
                }
                Ok(())
            }
            Space::Flag { steps, n } => validate_steps(steps, *n),
            Space::Orthogonal { r } => {
                if *r == 0 {
                    return Err(Error::InvalidInput("OG(r) needs r >= 1".into()));
                }
                Ok(())
            }
        }
    }

    /// Ambient vector-space dimension.
    pub fn ambient(&self) -> usize {
        match self {
            Space::Grassmannian { n, .. } | Space::Flag { n, .. } | Space::Quantum { n, .. } => *n,
            Space::Orthogonal { r } => 2 * r + 1,
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Space::Grassmannian { r, n } => r * (n - r),
            Space::Flag { steps, n } => {
                let mut d = 0;
                for (i, &ri) in steps.iter().enumerate() {
                    let next = steps.get(i + 1).copied().unwrap_or(*n);
                    d += ri * (next - ri);
                }
                d
            }
            Space::Orthogonal { r } => r * (r + 1) / 2,
            Space::Quantum { r, n, q } => q * n + r * (n - r),
        }
    }

    /// Number of simple-condition families (cover labels).
    pub fn families(&self) -> usize {
        match self {
            Space::Flag { steps, .. } => steps.len(),
            _ => 1,
        }
    }

    pub fn element_count(&self) -> BigUint {
        match self {
            Space::Grassmannian { r, n } => binomial(*n, *r),
            Space::Quantum { r, n, q } => binomial(*n, *r) * (q + 1),
            Space::Orthogonal { r } => BigUint::one() << *r,
            Space::Flag { steps, n } => {
                let mut total = BigUint::one();
                let mut remaining = *n;
                let mut prev = 0;
                for &s in steps.iter().chain(std::iter::once(n)) {
                    total *= binomial(remaining, s - prev);
                    remaining -= s - prev;
                    prev = s;
                }
                total
            }
        }
    }

    pub fn bottom(&self) -> SchubertIndex {
        match self {
            Space::Grassmannian { r, n } => SchubertIndex::Grass(GrassIndex::bottom(*r, *n)),
            Space::Flag { steps, n } => SchubertIndex::Flag(FlagIndex::identity(steps, *n)),
            Space::Orthogonal { r } => SchubertIndex::Orthogonal(StrictPartition::empty(*r)),
            Space::Quantum { r, n, q } => SchubertIndex::Quantum(QuantumIndex {
                q: *q,
                a: 0,
                alpha: GrassIndex::bottom(*r, *n),
            }),
        }
    }

    pub fn top(&self) -> SchubertIndex {
        match self {
            Space::Grassmannian { r, n } => SchubertIndex::Grass(GrassIndex::top(*r, *n)),
            Space::Flag { steps, n } => SchubertIndex::Flag(FlagIndex::top(steps, *n)),
            Space::Orthogonal { r } => SchubertIndex::Orthogonal(StrictPartition::staircase(*r)),
            Space::Quantum { r, n, q } => SchubertIndex::Quantum(QuantumIndex {
                q: *q,
                a: *q,
                alpha: GrassIndex::top(*r, *n),
            }),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Grassmannian { r, n } => write!(f, "G({r},{n})"),
            Space::Flag { steps, n } => {
                let s: Vec<String> = steps.iter().map(|x| x.to_string()).collect();
                write!(f, "Fl({};{n})", s.join(","))
            }
            Space::Orthogonal { r } => write!(f, "OG({r})"),
            Space::Quantum { r, n, q } => write!(f, "M^{q}({r},{n})"),
        }
    }
}

/// A Schubert index of any of the four spaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchubertIndex {
    Grass(GrassIndex),
    Flag(FlagIndex),
    Orthogonal(StrictPartition),
    Quantum(QuantumIndex),
}

impl SchubertIndex {
    pub fn rank(&self) -> usize {
        match self {
            SchubertIndex::Grass(g) => g.rank(),
            SchubertIndex::Flag(w) => w.rank(),
            SchubertIndex::Orthogonal(l) => l.rank(),
            SchubertIndex::Quantum(z) => z.rank(),
        }
    }

    pub fn space(&self) -> Space {
        match self {
            SchubertIndex::Grass(g) => Space::Grassmannian { r: g.r(), n: g.n() },
            SchubertIndex::Flag(w) => Space::Flag {
                steps: w.steps.clone(),
                n: w.n(),
            },
            SchubertIndex::Orthogonal(l) => Space::Orthogonal { r: l.r },
            SchubertIndex::Quantum(z) => Space::Quantum {
                r: z.alpha.r(),
                n: z.alpha.n(),
                q: z.q,
            },
        }
    }
}

impl fmt::Display for SchubertIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join(v: &[usize]) -> String {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
        match self {
            SchubertIndex::Grass(g) => write!(f, "({})", join(g.alpha())),
            SchubertIndex::Flag(w) => write!(f, "[{}]", join(w.permutation())),
            SchubertIndex::Orthogonal(l) => write!(f, "<{}>", join(l.parts())),
            SchubertIndex::Quantum(z) => write!(f, "({})^({})", join(z.alpha.alpha()), z.a),
        }
    }
}

/// Which simple-condition family a cover step uses (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoverLabel(pub usize);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_lex() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(4, 2)[0], vec![0, 1]);
        assert_eq!(combinations(4, 2)[5], vec![2, 3]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn grass_index_validation() {
        assert!(GrassIndex::new(4, vec![2, 2]).is_err());
        assert!(GrassIndex::new(4, vec![0, 2]).is_err());
        assert!(GrassIndex::new(4, vec![3, 5]).is_err());
        assert_eq!(GrassIndex::new(4, vec![2, 4]).unwrap().rank(), 3);
    }

    #[test]
    fn flag_index_validation() {
        assert!(FlagIndex::new(vec![2], vec![2, 1, 3]).is_err());
        assert!(FlagIndex::new(vec![1, 2], vec![2, 1, 3]).is_ok());
        assert_eq!(FlagIndex::top(&[1, 2], 3).permutation(), &[3, 2, 1]);
        assert_eq!(FlagIndex::top(&[2], 4).permutation(), &[3, 4, 1, 2]);
    }

    #[test]
    fn strict_partition_validation() {
        assert!(StrictPartition::new(3, vec![2, 2]).is_err());
        assert!(StrictPartition::new(3, vec![4]).is_err());
        assert!(StrictPartition::new(3, vec![3, 1]).is_ok());
        assert_eq!(StrictPartition::all(3).len(), 8);
    }

    #[test]
    fn og_grass_index_round_trip() {
        for r in 1..=4 {
            for l in StrictPartition::all(r) {
                let a = l.grass_index();
                assert_eq!(StrictPartition::from_grass_index(&a).unwrap(), l);
            }
        }
        assert_eq!(StrictPartition::staircase(2).grass_index().alpha(), &[4, 5]);
        assert_eq!(StrictPartition::empty(2).grass_index().alpha(), &[1, 2]);
    }

    #[test]
    fn dimensions() {
        assert_eq!(
            Space::Flag {
                steps: vec![1, 2],
                n: 3
            }
            .dimension(),
            3
        );
        assert_eq!(Space::Orthogonal { r: 3 }.dimension(), 6);
        assert_eq!(Space::Quantum { r: 2, n: 5, q: 1 }.dimension(), 11);
        assert_eq!(
            Space::Flag {
                steps: vec![1, 2],
                n: 4
            }
            .element_count(),
            BigUint::from(12u32)
        );
    }
}
