//! Exact homomorphism counting of odd cycles and paths, `(ε, d)`-density
//! certificates, and exact verification of the odd-cycle lower bound
//! `C_r(G) ≥ (d^r − ε)·n^r` on concrete graphs.
//!
//! All certified quantities are exact: counts are arbitrary-precision
//! integers and parameters are rationals.

pub mod cli;
pub mod density;
pub mod error;
pub mod generate;
pub mod graph;
pub mod hom;
pub mod io;
pub mod rational;
pub mod report;
pub mod verify;

pub use density::{
    auto_density, check_density_exact, check_density_heuristic, check_density_heuristic_from,
    lemma_f_verify, weighted_min_exact, weighted_min_grid_oracle, weighted_objective,
    DensityCertificate, DensityParams, DensityStatus, Limits, MinimizerResult, WeightFunction,
};
pub use error::{Error, Result};
pub use generate::{complete, gen_family, gen_random, FamilySpec};
pub use graph::{Graph, VertexSet};
pub use hom::{
    blakley_roy_check, brute_force_cycle_homs, count_cycle_homs, count_path_homs,
    cycle_homs_via_decomposition, walk_table, HomCountReport, WalkTable,
};
pub use io::{from_edge_list, to_edge_list};
pub use rational::Rational;
pub use verify::{
    audit_proof_chain, scan_family, verify_main_theorem, ChainReport, ScanSpec, VerificationReport,
};
