//! Short 3-cycle covers of bridgeless cubic graphs.
//!
//! The pipeline picks a 2-factor, builds a constrained Z2×Z2 flow on the
//! quotient by that 2-factor, and reads two cycle covers off the flow; the
//! shorter one is returned together with per-circuit charge audits.

pub mod chain;
pub mod contraction;
pub mod cover;
pub mod cuts;
pub mod error;
pub mod five;
pub mod gf4;
pub mod good_flow;
pub mod graph;
pub mod named;
pub mod oracle;
pub mod pipeline;
pub mod search;
pub mod tables;
pub mod toolbox;
pub mod trace;

pub use error::{Error, Result};
pub use gf4::{BoundaryString, ColourPerm, Gf4};
pub use graph::{Circuit, EdgeId, Graph, VertexId};
