//! Boundary combinatorics of `M̄_{0,S}`, the algebraic Stasheff polytope, the
//! singular divisor of the multiple-polylogarithm form, numerical multiple
//! polylogarithms and the dilogarithm period matrix.

pub mod cyclic;
pub mod divisor;
pub mod error;
pub mod itint;
pub mod period;
pub mod stasheff;

pub use cyclic::{is_good, Contraction, GoodFamily, Mark, MarkedSet, StablePartition, MAX_MARKS};
pub use divisor::{
    alpha_sets, build_a, check_avoidance, classify_intersection, random_convergent_avector, AVector, AlphaType,
    AvoidanceReport, BoundaryComponent, FiberComponent, Intersection, SingularLocus, Violation, ViolationSource,
};
pub use error::{Error, Result};
pub use itint::{
    avector_from_index, homotopy_check, iterated_integral, mzv, polylog_series, HomotopyReport, PathSpec, PolylogIndex,
    QuadOptions, QuadValue, SeriesValue,
};
pub use period::{
    dimension_jump_report, pairing_b1, pairing_b2, pairing_b3, period_matrix, B1Pairings, DimensionJumpReport,
    PeriodMatrix, RANK_AT_ONE, RANK_GENERIC,
};
pub use stasheff::{
    contract_face, faces, facets, vertex_graph_dot, vertex_image, vertices, ContractedFace, Face, VertexImage,
};
