//! Explicit recolouring sequences between colourings of planar and
//! degenerate graphs.
//!
//! The crate builds single-vertex recolouring sequences between any two
//! proper 7-colourings of a planar graph, through a chain of reductions:
//!
//! * [`mad::reduce_one_colour_mad`] removes colour 7,
//! * [`planar::reduce_planar_6_to_5`] removes colour 6 using 7 as a buffer,
//! * [`partition::corollary_partition`] splits off two independent sets,
//! * [`connect::connect_colourings`] joins the two 5-colourings on the
//!   2-degenerate rest.
//!
//! [`pipeline::seven_colour_path`] composes them. Every sequence is checked
//! by [`moves::verify_sequence`] and small instances can be compared against
//! the breadth-first search in [`oracle`].

pub mod connect;
pub mod degenerate;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod mad;
pub mod moves;
pub mod oracle;
pub mod partition;
pub mod pipeline;
pub mod planar;

pub use error::{Error, Result};
pub use graph::{Colour, Colouring, DegeneracyOrder, Graph, MergeMap, Vertex, VertexPartition, VertexSet};
pub use moves::{Move, Sequence};
