//! Finite-dimensional operational algebra of quantum transformations.
//!
//! Faithful bipartite states, the Jordan decomposition of the bilinear form
//! they induce on effects, the state-dependent transposition and adjoint,
//! and the GNS scalar product and representation they define.
//!
//! All types are generic over the real scalar ([`Real`], implemented for
//! `f32` and `f64`); the aliases below fix `f64`.

pub mod error;
pub mod faithfulness;
pub mod gns;
pub mod identities;
pub mod infocomplete;
pub mod jordan;
pub mod linalg;
pub mod operators;
pub mod random;
pub mod scalar;

pub use error::{Error, Result};
pub use faithfulness::{
    classify, extract_f, is_dynamically_faithful, is_preparationally_faithful, is_symmetric,
    joint_probability, local_state, maximally_entangled, random_symmetric_faithful,
    BipartiteState, FaithfulnessReport, Subsystem,
};
pub use gns::{
    adjoint_wrt, born_rule, cstar_norm, find_preparation, gns_vector, representation_matrix,
    scalar_product, scalar_product_explicit, transpose_wrt, BornPairing, GnsSpace, StateCalculus,
};
pub use identities::{identity_suite, IdentityCheck, IDENTITY_NAMES};
pub use infocomplete::{
    binary_coarse_grainings, build_infocomplete, dimension_check, is_infocomplete, is_minimal,
    span_rank, DimensionReport, InfoCompleteBuild, Observable,
};
pub use jordan::{
    abs_form, bilinear_form, gram_matrix, jordan_decompose, varsigma, z_map, z_wrt_basis,
    JordanData,
};
pub use linalg::{CMat, CVec};
pub use operators::{
    adjoint_map, add, apply_map, canonical_hs_basis, choi_to_map, compose, effect_norm,
    effect_of_map, heisenberg_apply, map_norm_lower, map_to_choi, scale, superop, transpose_map,
    ChoiMatrix, Effect, HermitianBasis, HermitianOperator, KrausTerm, QuantumMap, Sign, SuperOp,
};
pub use scalar::{Real, Tolerances, C};

pub type HermitianOperatorF64 = HermitianOperator<f64>;
pub type EffectF64 = Effect<f64>;
pub type QuantumMapF64 = QuantumMap<f64>;
pub type ChoiMatrixF64 = ChoiMatrix<f64>;
pub type SuperOpF64 = SuperOp<f64>;
pub type HermitianBasisF64 = HermitianBasis<f64>;
pub type BipartiteStateF64 = BipartiteState<f64>;
pub type JordanDataF64 = JordanData<f64>;
pub type GnsSpaceF64 = GnsSpace<f64>;
pub type ObservableF64 = Observable<f64>;
pub type QuantumMapF32 = QuantumMap<f32>;
pub type BipartiteStateF32 = BipartiteState<f32>;
