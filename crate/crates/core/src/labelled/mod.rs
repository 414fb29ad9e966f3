//! Finite labelled graphs, relative ranges, accommodating families and the
//! Boolean algebras B(α) they induce.

mod bitset;
mod family;
mod graph;
mod space;
mod word;

pub use bitset::{VertexSet, MAX_VERTICES};
pub use family::{generate_family, is_weakly_left_resolving, SetFamily, POWER_SET_LIMIT};
pub use graph::{Edge, EdgeSpec, LabelledGraph, VertexKind};
pub use space::{
    brute_force_filters, is_ultrafilter_oracle, oracle_agreement, BaFilter, LabelledSpace, OracleAgreement,
    RestrictedAlgebra,
};
pub use word::{Letter, Word};
