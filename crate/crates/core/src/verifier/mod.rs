//! Enumerative instances over prime fields: construction, exhaustive
//! solving, transversality certificates, and reports.

mod certify;
mod checks;
mod instance;
mod report;
mod solve;

pub use certify::{certify_transverse, Certificate, CertificateVerdict};
pub use checks::{empty_common_intersection_check, pieri_limit_check};
pub use instance::{build_instance, Condition, Instance, Mode, ProblemSpec};
pub use report::{
    attempt_seed, point_rows, run_instance, verify, Attempt, AttemptOutcome, Solved, Verdict,
    VerificationReport, EXCESS_FACTOR,
};
pub use solve::{solve, THREADS_ENV};
