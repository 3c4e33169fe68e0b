//! Exact-arithmetic workbench for free-algebra combinatorics over the six
//! generators `x1, x2, x3, y1, y2, y3`: the two-letter collapse map and its
//! graded spans, multidegree components and their convolution identity,
//! sparse reduced bases and kernel-specified projections over the rationals
//! and prime fields, block right ideals and degree-truncated two-sided
//! ideals, the recursive block tower of linear maps with its vanishing and
//! certificate searches, and an end-to-end pipeline that certifies
//! degree-by-degree freeness of the substituted series in a polynomial
//! extension by six commuting indeterminates.
//!
//! Everything is exact; there are no tolerances anywhere. All types are
//! immutable values, safe to share across threads.

pub mod checks;
pub mod extension;
pub mod ideal;
pub mod linalg;
pub mod pipeline;
pub mod poly;
pub mod report;
pub mod rng;
pub mod scalar;
pub mod tower;
pub mod word;

pub use extension::{xy_expand, CommMono, ExtElement};
pub use ideal::{
    homogeneous_components, power, search_f, BlockIdeal, CoverSearch, IdealError, IdealTruncation,
};
pub use linalg::{
    projection_with_kernel, rref, tensor_check_factor, GradedSubspace, LinMap, LinalgError,
    Projection, RrefBuilder, SpanCheck,
};
pub use pipeline::{
    build_construction, enumerate_algebra_elements, freeness_certificate, nil_witness,
    oracle_rank_check, run_construct, ExponentRule, ExponentRuleName, PipelineError, RunConfig,
};
pub use poly::{
    component, component_of_word, convolution_sides, poly_from_json, poly_to_json, q_basis,
    s_basis, Poly, PolyError, TermJson,
};
pub use report::{CertificateEntry, RankEntry, Report, SCHEMA};
pub use scalar::{
    enumerate_scalars, is_prime_u64, scalar_arith, ArithOp, FieldSpec, Scalar, ScalarEnumeration,
    ScalarError,
};
pub use tower::{
    build_tower, counting_bound_check, synthetic_strict_schedule, CertificateOutcome, RTower,
    Schedule, ScheduleMode, ScheduleReport, TowerError,
};
pub use word::{
    beta, enumerate_binwords, enumerate_words, feasible_multidegrees, BinLetter, BinWord, Gen,
    GenClass, MultiDegree, Word, WordError,
};
