//! Finitely presented groups and the algorithms run on them.

pub mod coset;
pub mod finite;
pub mod fp;
pub mod homs;
pub mod tietze;
pub mod triality;

pub use coset::{group_order, todd_coxeter, CosetTable, Overflow};
pub use finite::{named_group, su2_targets, Elem, FiniteGroup};
pub use fp::{is_perfect, pi, FpGroup, Peripheral};
pub use homs::{apply_hom, find_hom, find_nontrivial_hom, find_surjection, hom_count, BudgetExceeded, HomCounts, DEFAULT_NODE_CAP};
pub use tietze::{tietze_simplify, tietze_simplify_with_map, Simplified};
pub use triality::{triality_check, Triality};
