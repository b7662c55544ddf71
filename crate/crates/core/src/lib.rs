//! Exact circuit counting, structure analysis, isomorph-free enumeration and
//! exhaustive statement checking for tournaments.
//!
//! Every tournament is a [`Tournament`]: one 64-bit out-neighbour row per
//! vertex, `n <= 62`. All values are immutable after construction.

pub mod analysis;
pub mod bits;
pub mod counting;
pub mod error;
pub mod extremal;
pub mod families;
pub mod iso;
pub mod tournament;
pub mod trn;
pub mod verify;

pub use analysis::{analyze, diameter, distance, is_strong, strong_components, Distance, StructureReport};
pub use bits::{VertexSet, MAX_ORDER};
pub use counting::{
    census_with_strong, cycle_counts, cycle_counts_through, hamiltonian_path_count,
    is_vertex_pancyclic, strong_sub_counts, CycleCensus,
};
pub use error::{Error, Result};
pub use extremal::{
    build_douglas, enumerate_h_family, formula_c, formula_c_through, h_family_size_nminus3,
    DouglasParams, FormulaValue,
};
pub use families::{
    build_extremal, build_extremal_minus, build_hatted, build_path_extremal, build_transitive,
    cyclic_triple, HatKind,
};
pub use iso::{are_isomorphic, canonical_form, count_classes, enumerate_tournaments, CanonicalForm, Filter};
pub use tournament::{Tournament, VertexLabeling};
pub use trn::{parse_trn, to_trn};
pub use verify::{check, check_all, CheckReport, Outcome};
