use std::ops::RangeInclusive;

use clap::ValueEnum;
use schubert_core::combinat::{
    FlagIndex, GrassIndex, QuantumIndex, SchubertIndex, Space, StrictPartition,
};
use schubert_core::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpaceKind {
    Grass,
    Flag,
    Og,
    Quantum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Comma-separated integers; the empty string is the empty list.
pub fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("cannot parse {t:?} in list {s:?}")))
        })
        .collect()
}

/// `a..b` (inclusive) or a single value.
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>> {
    let bad = || Error::InvalidInput(format!("cannot parse range {s:?} (expected N or A..B)"));
    match s.split_once("..") {
        Some((a, b)) => {
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b
                .trim()
                .trim_start_matches('=')
                .parse()
                .map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            Ok(a..=b)
        }
        None => {
            let a: usize = s.trim().parse().map_err(|_| bad())?;
            Ok(a..=a)
        }
    }
}

fn need(v: Option<usize>, flag: &str, kind: SpaceKind) -> Result<usize> {
    v.ok_or_else(|| {
        Error::InvalidInput(format!("--{flag} is required for --space {kind:?}").to_lowercase())
    })
}

pub fn build_space(
    kind: SpaceKind,
    r: Option<usize>,
    n: Option<usize>,
    q: Option<usize>,
    steps: Option<&str>,
) -> Result<Space> {
    let space = match kind {
        SpaceKind::Grass => Space::Grassmannian {
            r: need(r, "r", kind)?,
            n: need(n, "n", kind)?,
        },
        SpaceKind::Quantum => Space::Quantum {
            r: need(r, "r", kind)?,
            n: need(n, "n", kind)?,
            q: q.unwrap_or(0),
        },
        SpaceKind::Og => Space::Orthogonal {
            r: need(r, "r", kind)?,
        },
        SpaceKind::Flag => {
            let steps = steps.ok_or_else(|| {
                Error::InvalidInput("--steps is required for --space flag".into())
            })?;
            Space::Flag {
                steps: parse_list(steps)?,
                n: need(n, "n", kind)?,
            }
        }
    };
    space.validate()?;
    Ok(space)
}

/// Index syntax: `2,4` (Grassmannian), `3,1,2` (flag permutation),
/// `2,1` (strict partition, possibly empty), `3,5:1` (quantum `α:a`).
pub fn parse_index(space: &Space, s: &str) -> Result<SchubertIndex> {
    Ok(match space {
        Space::Grassmannian { n, .. } => SchubertIndex::Grass(GrassIndex::new(*n, parse_list(s)?)?),
        Space::Flag { steps, .. } => {
            SchubertIndex::Flag(FlagIndex::new(steps.clone(), parse_list(s)?)?)
        }
        Space::Orthogonal { r } => {
            SchubertIndex::Orthogonal(StrictPartition::new(*r, parse_list(s)?)?)
        }
        Space::Quantum { n, q, .. } => {
            let (alpha, a) = s.split_once(':').ok_or_else(|| {
                Error::InvalidInput(format!("quantum index {s:?} must look like 3,5:1"))
            })?;
            let a: usize = a
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad degree in {s:?}")))?;
            SchubertIndex::Quantum(QuantumIndex::new(
                *q,
                GrassIndex::new(*n, parse_list(alpha)?)?,
                a,
            )?)
        }
    })
    .and_then(|w| {
        if &w.space() != space {
            return Err(Error::ParameterMismatch(format!(
                "index {w} does not belong to {space}"
            )));
        }
        Ok(w)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_and_ranges() {
        assert_eq!(parse_list::<usize>("1, 2,3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_list::<usize>("").unwrap(), Vec::<usize>::new());
        assert!(parse_list::<usize>("1,x").is_err());
        assert_eq!(parse_range("4..8").unwrap(), 4..=8);
        assert_eq!(parse_range("4..=8").unwrap(), 4..=8);
        assert_eq!(parse_range("3").unwrap(), 3..=3);
        assert!(parse_range("8..4").is_err());
    }

    #[test]
    fn indices() {
        let g = Space::Grassmannian { r: 2, n: 4 };
        assert_eq!(parse_index(&g, "2,4").unwrap().rank(), 3);
        let q = Space::Quantum { r: 2, n: 4, q: 1 };
        assert_eq!(parse_index(&q, "3,4:1").unwrap().rank(), 8);
        assert!(parse_index(&q, "3,4").is_err());
        let og = Space::Orthogonal { r: 3 };
        assert_eq!(parse_index(&og, "").unwrap().rank(), 0);
    }
}
