//! Instance generators for the two hardness reductions, with maps between
//! source solutions and matchings.

pub mod three_partition;
pub mod vertex_cover;

pub use three_partition::{from_three_partition, matching_to_three_partition, ThreePartitionInstance};
pub use vertex_cover::{
    edge_gadget_matchings, from_vertex_cover, matching_to_vc, prohibited_pairs, vc_solution_to_matching, EdgeGadget,
    GadgetLayout, GadgetMatchings, GadgetRule, ProhibitedPair, RoleMap, ScaleMode, VcGadgetSpec,
};
