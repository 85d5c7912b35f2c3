//! Clustered, defective and fractional colourings of strong graph products.
//!
//! The crate is organised around a small number of building blocks:
//!
//! * [`graph`]: compact undirected graphs with labelled vertices, the three
//!   standard products (strong, cartesian, direct) and generators for the
//!   instance families used throughout (paths, cycles, cliques, stars,
//!   hexagonal-style grids, tree closures, random bounded-degree trees).
//! * [`coloring`]: fractional `(p:q)`-colourings, consistent colourings
//!   (per-vertex orderings with a cross-edge distinctness guarantee),
//!   edge partitions of trees, and a verifier that measures properness,
//!   clustering and defect in one pass.
//! * [`constructions`]: the constructive colouring toolbox — path/cycle
//!   consistent colourings, tensor combinations, blow-ups, pigeonhole and
//!   consistent combinations, path/tree multipliers, grid colourings, a
//!   randomized palette reduction and a star-to-path transfer.
//! * [`oracle`]: exact brute-force references (chromatic, independence and
//!   clique numbers, clustered feasibility, side-to-side path checks on 2-D
//!   grids, fractional bounds, Shannon-style lower bounds) with explicit
//!   budgets so they fail loudly instead of running away.
//! * [`percolation`]: seeded Bernoulli site percolation with coupled
//!   monotone sampling and density sweeps.
//! * [`io`]: versioned JSON documents for graphs, colourings and reports,
//!   plus DOT export.

pub mod coloring;
pub mod constructions;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod percolation;
mod seeding;

pub use coloring::{
    check_consistency, monochromatic_components, verify_coloring, verify_consistent_coloring,
    ConsistentColoring, DefectParameter, EdgePartition, FractionalColoring, ParamValue,
    VerificationReport,
};
pub use constructions::{
    blow_up, bounded_degree_tree_partition, consistent_combine, consistent_cycle_coloring,
    consistent_path_coloring, decode_product_color, edge_partition_to_consistent,
    hex_grid_coloring, multiply_path, multiply_tree, pigeonhole_combine,
    randomized_palette_reduction, star_to_path_transfer, tensor_coloring,
    tree_partition_clustering_bound, tree_product_coloring, ConstructionError, PaletteReduction,
};
pub use graph::{
    cartesian_product, direct_product, generate_basic, generate_hex_grid, generate_tree_closure,
    grid_product, random_bounded_degree_tree, strong_power, strong_product, BasicKind, Graph,
    RootedTree,
};
pub use io::{
    export_dot, read_coloring_json, read_consistent_json, read_graph_json, report_to_json,
    sweep_to_csv, sweep_to_json, write_coloring_json, write_consistent_json, write_graph_json,
    IoError,
};
pub use oracle::{
    chromatic_number, clique_number, clustered_feasibility, enumerate_connected_graphs,
    fractional_bounds, hex_lemma_check, independence_number, shannon_lower_bound, Feasibility,
    FractionalBounds, HexCheck, OracleBudget, OracleError,
};
pub use percolation::{
    cluster_statistics, percolation_sweep, sample_percolation, ClusterStatistics, PercolationError,
    SweepConfig, SweepReport,
};
