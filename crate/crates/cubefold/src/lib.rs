//! Finite foldable cell complexes and the cubical complexes dual to their
//! mirror stratifications.
//!
//! The pipeline implemented here starts from finite abstract simplicial or
//! cubical complexes, computes foldings onto the model simplex/cube, derives
//! the stratification into cells, tiles and mirrors, builds the dual cubical
//! complex with its height function, and then certifies combinatorial
//! non-positive curvature (flag links) and simple connectivity (loop
//! contraction certificates).  Finite covers, branched covers at cone points,
//! and finite group actions with stabilizer queries round out the toolkit.
//!
//! Everything is exact and deterministic: complexes are immutable after
//! construction, all collections iterate in a canonical order, and every
//! certificate can be re-checked by an independent validator.

pub mod complex;
pub mod covers;
pub mod curvature;
pub mod dual;
pub mod fixtures;
pub mod folding;
pub mod homotopy;
pub mod strata;

pub use complex::{
    admissibility_check, cubify, relative_cone, AdmissibilityReport, BarycentricSubdivision,
    ComplexError, CubeId, CubicalComplex, Link, MarkedComplex, SimplexId, SimplicialComplex,
    VertexId,
};
pub use covers::{
    branched_cover, branched_cover_of, build_cover, deck_transformations, induce_dual_action,
    perm_from_cycles, pi1_presentation, verify_stabilizer_lemmas, Abelianization, BranchPoint,
    CellComplex, CheckStatus, CoverError, CoverProjection, GroupAction, GroupPresentation,
    PermRep, Stabilizer, StabilizerReport,
};
pub use curvature::{
    is_flag, is_simplicial_covering, npc_certificate, vertex_link, FlagVerdict, LinkComplex,
    NpcReport,
};
pub use dual::{
    branched_dual_consistency, dualize, DualComplex, DualConsistencyReport, DualError,
};
pub use folding::{
    compute_folding, simplicial_folding, verify_folding, verify_simplicial_folding,
    CubicalFolding, FoldingError, FoldingVerdict, ModelFace, NotFoldable, SimplicialFolding,
};
pub use homotopy::{
    contract_in_tile, contract_loop, crossings, find_minimal_bridge, project_bridge,
    verify_certificate, Bridge, CertificateViolation, ContractOptions, ContractionCertificate,
    EdgePath, HomotopyError, Move, Step,
};
pub use strata::{
    stratify, CellId, Mirror, MirrorFamily, MirrorId, SeparationReport, StratCell, StrataError,
    Stratification,
};
