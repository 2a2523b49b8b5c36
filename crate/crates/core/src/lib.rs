//! Lower and stable bounds on the higher topological complexity `TC_r` of
//! unordered configuration spaces of graphs, together with machine checks of
//! the free-group and local-graph facts those bounds rest on.

pub mod bounds;
pub mod checks;
pub mod config_space;
pub mod corpus;
pub mod free_group;
pub mod graph;
pub mod local;
pub mod relation;

pub use graph::{Graph, GraphError, VertexClassification};
pub use relation::EquivRelation;
