//! Exact computations for rank-two Nichols algebras of diagonal type.

pub mod cyclo;

pub use cyclo::{CycloError, CyclotomicNumber, Rational, RootOfUnity};
pub mod scalar;
pub use scalar::{ModP, PrimeField, Scalar};
pub mod qcomb;
pub use qcomb::{q_binom, q_fact, q_int, QValue, QcombError};
pub mod braiding;
pub use braiding::{BraidingError, DiagonalBraiding, GroupDegree, MultiDegree, TwistClass};
pub mod linalg;
pub mod tensor;
pub use tensor::{HilbertReport, NicholsTables, Precision, TensorElement, TensorError, Word};
pub mod root_vectors;
pub use root_vectors::{Coefficients, RootVectorContext, RootVectorError, ScalarOracle, ScalarRecord};
pub mod conditions;
pub use conditions::{
    a_invariant, evaluate_conditions, normalize_A3, Condition, ConditionError, ConditionReport, Limits, Status,
};
pub mod classifier;
pub use classifier::{
    classify_pipeline, classify_theorem, classify_theorem_roots, items_holding, six_families, CaseLabel, Outcome, SixFamily, Verdict,
};
pub mod subquotients;
pub use subquotients::{
    descent_chain, subquotient_braiding, validate_subquotient, DescentFamily, DescentOutcome, DescentVerdict,
    SubquotientError, SubquotientStep,
};
pub mod jobs;
pub use jobs::{enumerate_triples, parse_scalar_literal, EnumerationReport, JobConfig, JobError, ReportDocument};
pub mod verify;
pub use verify::{run_verify, CheckResult, VerifyReport};
