//! Edge ideals of finite simple graphs: ordinary powers, symbolic powers,
//! integral closures, and their Castelnuovo-Mumford regularity.

pub mod betti;
pub mod budget;
pub mod error;
pub mod graph;
pub mod harness;
pub mod ideals;
pub mod lp;
pub mod polyhedron;
pub mod monomial;
mod packed;

pub use budget::Budget;
pub use error::{Error, Result};
pub use monomial::{canonical_cmp, minimalize, parse_ideal, Monomial, MonomialIdeal, RingContext};
pub use graph::{parse_graph, Bow, Cycle, Graph, TContext, VertexSet};
pub use polyhedron::{closure_of_power, closure_oracle, newton_membership, ClosureSearch, NewtonPolyhedron};
pub use betti::{graded_betti, graded_betti_multi, regularity, regularity_multi, BettiTable, FieldChar, Regularity};
pub use ideals::{closure_formula, edge_ideal, symbolic_power_formula, symbolic_power_oracle};
