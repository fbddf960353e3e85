//! QAOA on small instances: exact statevector simulation, the published
//! depth-p angle sets, and the power-law extrapolation of infinite-tree
//! performance to logarithmic depth.

mod angles;
mod fit;
mod statevector;

pub use angles::{angle_table, AngleSet, Convention, CANONICAL_MAX_DEPTH, TABLE_MAX_DEPTH};
pub use fit::{powerlaw_fit, ratio_from_tree_value, tree_value_from_ratio, FitResult, TreeValueTable, TREE_RATIOS};
pub use statevector::{expectation, Simulator, StateVector, DEFAULT_MAX_QUBITS};
