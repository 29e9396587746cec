//! Combinatorial engine for division systems on finite graph models.
//!
//! The pipeline: a finite connected graph with a permutation-group action
//! and a family of cut sets yields *divisions* (two-sided splittings), each
//! division induces a majority-rule *wall* on triples of off-the-wall
//! vertices, the walls dualize to a cube complex, and when no two walls
//! cross the complex is a tree that — after subdividing the edges coming
//! from valence-two cut sets — is equivariantly isomorphic to the cut
//! point tree of the quotient obtained by pinching each cut set to a point.

#![forbid(unsafe_code)]

pub mod complex;
pub mod cutpoint;
pub mod division;
pub mod error;
pub mod export;
pub mod graph;
pub mod group;
pub mod input;
pub mod instances;
pub mod pipeline;
pub mod random;
pub mod tree;
pub mod validate;
pub mod wallspace;

pub use crate::complex::{ComplexAction, CubeComplex, Hyperplane};
pub use crate::cutpoint::{CutPointTree, PinchedSpace, TreeComparison};
pub use crate::division::{Division, DivisionFamily, SmallSide};
pub use crate::error::{ModelError, Result};
pub use crate::graph::{CutSetCheck, SpaceGraph, VertexId, VertexSet};
pub use crate::group::{Group, Perm, Subgroup};
pub use crate::input::Model;
pub use crate::pipeline::{Built, Caps};
pub use crate::tree::{SubdividedTree, TypedTree, VertexType};
pub use crate::wallspace::{Halfspace, Sign, Wall, Wallspace};
