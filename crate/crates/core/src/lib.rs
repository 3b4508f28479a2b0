//! Generalized 3-connectivity of small graphs: an exact tree-packing
//! oracle, explicit packings for near-complete graphs, and a classifier
//! that predicts the value from the edges missing from `K_n`.
pub mod classifier;
pub mod constructions;
pub mod graph;
pub mod oracle;

pub use classifier::{
    classify, cross_validate, random_connected_graph, ClassifierReport, Kappa3Verdict, Mismatch, Rule, SweepConfig,
    SweepError, ValidationReport,
};
pub use constructions::{negative_instances, ConstructionError, DeletedShape, DeletedShapeSpec, NegativeInstance};
pub use graph::{
    emit_edge_list, emit_graph6, parse_edge_list, parse_graph6, profile_deleted_set, ComplementProfile, Edge, EdgeSet,
    GraphError, Shape, SimpleGraph,
};
pub use oracle::{
    enumerate_s_trees, kappa3, kappa_k_complete, max_internally_disjoint, upper_bound, verify_packing, Kappa3,
    OracleError, SteinerTree, TreePacking, Violation, MAX_ORACLE_ORDER,
};
