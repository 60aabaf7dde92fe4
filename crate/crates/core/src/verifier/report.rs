use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::certify::{certify_transverse, Certificate, CertificateVerdict};
use super::instance::{build_instance, Instance, Mode, ProblemSpec};
use super::solve::solve;
use crate::combinat::count_chains;
use crate::error::{Error, Result};
use crate::ffalg::{Point, PrimeField};

/// Multiplier applied to the attempt number when deriving attempt seeds.
const SEED_STRIDE: u64 = 0x9E37_79B9_7F4A_7C15;

/// Solution sets larger than this multiple of the expected count are
/// treated as positive-dimensional.
pub const EXCESS_FACTOR: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Confirmed,
    CountMismatch,
    NontransverseFound,
    NoGenericConfig,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AttemptOutcome {
    Confirmed,
    CountMismatch,
    /// More than `EXCESS_FACTOR` times the expected number of solutions.
    Degenerate,
    NontransverseFound,
    SingularPoint,
    SingularOnZ,
    NoGeneralSubspace,
    NotEnoughUnits,
}

impl AttemptOutcome {
    fn verdict(self) -> Verdict {
        match self {
            AttemptOutcome::Confirmed => Verdict::Confirmed,
            AttemptOutcome::NontransverseFound => Verdict::NontransverseFound,
            AttemptOutcome::CountMismatch | AttemptOutcome::Degenerate => Verdict::CountMismatch,
            _ => Verdict::NoGenericConfig,
        }
    }
}

fn severity(v: Verdict) -> u8 {
    match v {
        Verdict::Confirmed => 3,
        Verdict::NontransverseFound => 2,
        Verdict::CountMismatch => 1,
        Verdict::NoGenericConfig => 0,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attempt {
    pub prime: String,
    pub seed: String,
    pub outcome: AttemptOutcome,
    /// Number of solutions found, when the instance could be built.
    pub solutions: Option<String>,
}

/// Result of a verification run. Integers that may be large are decimal
/// strings; matrices are row-major lists of field elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub space: String,
    pub prime: String,
    pub mode: Mode,
    pub seed: String,
    pub labels: Vec<usize>,
    pub restriction: Option<String>,
    pub conditions: Vec<Vec<Vec<u32>>>,
    pub expected: String,
    pub solutions: Vec<Vec<Vec<u32>>>,
    pub certificates: Vec<Certificate>,
    pub attempts: Vec<Attempt>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<VerificationReport> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("malformed report: {e}")))
    }

    pub fn solution_count(&self) -> usize {
        self.solutions.len()
    }

    pub fn all_transverse(&self) -> bool {
        self.certificates
            .iter()
            .all(|c| c.verdict == CertificateVerdict::Transverse)
    }
}

/// Matrix rows of a point: the basis of a plane, or an adapted basis of a flag.
pub fn point_rows(p: &Point) -> Vec<Vec<u32>> {
    match p {
        Point::Plane(h) => h.basis().to_rows(),
        Point::Flag(f) => f.adapted_basis().to_rows(),
    }
}

/// One solved instance with its certificates.
#[derive(Clone, Debug)]
pub struct Solved {
    pub instance: Instance,
    pub solutions: Vec<Point>,
    pub certificates: Vec<Certificate>,
    pub outcome: AttemptOutcome,
}

/// Solve and certify one instance against the expected count.
pub fn run_instance(instance: Instance, expected: &BigUint) -> Result<Solved> {
    let solutions = solve(&instance)?;
    let n = BigUint::from(solutions.len());
    if n > expected * EXCESS_FACTOR as u32 {
        return Ok(Solved {
            instance,
            solutions,
            certificates: Vec::new(),
            outcome: AttemptOutcome::Degenerate,
        });
    }
    let certificates = solutions
        .iter()
        .map(|p| certify_transverse(p, &instance))
        .collect::<Result<Vec<_>>>()?;
    let has = |v: CertificateVerdict| certificates.iter().any(|c| c.verdict == v);
    let outcome = if has(CertificateVerdict::SingularPoint) {
        AttemptOutcome::SingularPoint
    } else if has(CertificateVerdict::SingularOnZ) {
        AttemptOutcome::SingularOnZ
    } else if has(CertificateVerdict::Nontransverse) {
        AttemptOutcome::NontransverseFound
    } else if &n != expected {
        AttemptOutcome::CountMismatch
    } else {
        AttemptOutcome::Confirmed
    };
    Ok(Solved {
        instance,
        solutions,
        certificates,
        outcome,
    })
}

/// Seed of attempt `k` at any prime.
pub fn attempt_seed(seed: u64, k: usize) -> u64 {
    seed ^ (k as u64).wrapping_mul(SEED_STRIDE)
}

/// Retry fresh instances up to `max_attempts` times per prime, moving up the
/// ladder until one is confirmed. Genericity failures are recorded as
/// attempts; invalid parameters, capacity and characteristic violations are
/// errors.
pub fn verify(
    spec: &ProblemSpec,
    primes: &[u32],
    seed: u64,
    max_attempts: usize,
) -> Result<VerificationReport> {
    spec.validate()?;
    if primes.is_empty() {
        return Err(Error::InvalidInput("empty prime ladder".into()));
    }
    if max_attempts == 0 {
        return Err(Error::InvalidInput("max attempts must be positive".into()));
    }
    let fields = primes
        .iter()
        .map(|&p| PrimeField::new(p))
        .collect::<Result<Vec<_>>>()?;
    if matches!(spec.space, crate::combinat::Space::Orthogonal { .. }) {
        if let Some(f) = fields.iter().find(|f| !f.characteristic_is_odd()) {
            return Err(Error::Characteristic(f.modulus()));
        }
    }
    let labels = spec.resolved_labels();
    let expected = count_chains(&spec.target(), &labels)?;

    let mut attempts = Vec::new();
    let mut best: Option<Solved> = None;
    'ladder: for &field in &fields {
        for k in 0..max_attempts {
            let s = attempt_seed(seed, k);
            let record = |outcome, solutions: Option<usize>| Attempt {
                prime: field.modulus().to_string(),
                seed: s.to_string(),
                outcome,
                solutions: solutions.map(|n| n.to_string()),
            };
            let instance = match build_instance(spec, field, s) {
                Ok(i) => i,
                Err(Error::NoGeneralSubspace { exhaustive, .. }) => {
                    attempts.push(record(AttemptOutcome::NoGeneralSubspace, None));
                    if exhaustive {
                        // every candidate was examined: none exists at this prime
                        continue 'ladder;
                    }
                    continue;
                }
                Err(Error::NotEnoughUnits { .. }) => {
                    // no other seed can help at this prime
                    attempts.push(record(AttemptOutcome::NotEnoughUnits, None));
                    continue 'ladder;
                }
                Err(e) => return Err(e),
            };
            let solved = run_instance(instance, &expected)?;
            attempts.push(record(solved.outcome, Some(solved.solutions.len())));
            let done = solved.outcome == AttemptOutcome::Confirmed;
            let better = best
                .as_ref()
                .is_none_or(|b| severity(solved.outcome.verdict()) > severity(b.outcome.verdict()));
            if better {
                best = Some(solved);
            }
            if done {
                break 'ladder;
            }
        }
    }

    let labels: Vec<usize> = labels.iter().map(|l| l.0).collect();
    let restriction = spec.restriction.as_ref().map(|w| w.to_string());
    Ok(match best {
        Some(b) => VerificationReport {
            space: spec.space.to_string(),
            prime: b.instance.field.modulus().to_string(),
            mode: spec.mode,
            seed: b.instance.seed.to_string(),
            labels,
            restriction,
            conditions: b
                .instance
                .conditions
                .iter()
                .map(|c| c.subspace.basis().to_rows())
                .collect(),
            expected: expected.to_string(),
            solutions: b.solutions.iter().map(point_rows).collect(),
            certificates: b.certificates,
            attempts,
            verdict: b.outcome.verdict(),
        },
        None => VerificationReport {
            space: spec.space.to_string(),
            prime: fields.last().expect("nonempty").modulus().to_string(),
            mode: spec.mode,
            seed: seed.to_string(),
            labels,
            restriction,
            conditions: Vec::new(),
            expected: expected.to_string(),
            solutions: Vec::new(),
            certificates: Vec::new(),
            attempts,
            verdict: Verdict::NoGenericConfig,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::Space;

    #[test]
    fn grassmannian_2_4_is_confirmed() {
        let spec = ProblemSpec::new(Space::Grassmannian { r: 2, n: 4 }, Mode::Independent);
        let report = verify(&spec, &[5, 7], 42, 30).unwrap();
        assert_eq!(report.verdict, Verdict::Confirmed);
        assert_eq!(report.solution_count(), 2);
        assert!(report.all_transverse());
        assert!(report.certificates.iter().all(|c| c.proportional));
    }

    #[test]
    fn not_enough_units_escalates() {
        let spec = ProblemSpec::new(Space::Grassmannian { r: 2, n: 4 }, Mode::Family);
        let report = verify(&spec, &[3, 7], 1, 30).unwrap();
        assert_eq!(report.attempts[0].outcome, AttemptOutcome::NotEnoughUnits);
        assert_eq!(report.attempts[0].prime, "3");
        assert_eq!(report.verdict, Verdict::Confirmed);
    }

    #[test]
    fn characteristic_two_is_an_error() {
        let spec = ProblemSpec::new(Space::Orthogonal { r: 3 }, Mode::Independent);
        assert_eq!(
            verify(&spec, &[2], 0, 1).unwrap_err(),
            Error::Characteristic(2)
        );
    }

    #[test]
    fn json_round_trip() {
        let spec = ProblemSpec::new(Space::Grassmannian { r: 2, n: 4 }, Mode::Independent);
        let report = verify(&spec, &[7], 3, 20).unwrap();
        let text = report.to_json();
        assert_eq!(VerificationReport::from_json(&text).unwrap(), report);
        assert!(text.contains("\"expected\": \"2\""));
    }
}
