use thiserror::Error;

use crate::graph::{Colour, Vertex};

/// Errors raised by graph operations, the reduction algorithms and the
/// text formats.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("vertices {0} and {1} are adjacent and cannot be identified")]
    AdjacentPair(Vertex, Vertex),
    #[error("cannot identify vertex {0} with itself")]
    SelfIdentification(Vertex),
    #[error("seed vertex {vertex} has colour {colour}, expected one of {i} or {j}")]
    BadSeedColour {
        vertex: Vertex,
        colour: Colour,
        i: Colour,
        j: Colour,
    },
    #[error("colour {colour} of vertex {vertex} is outside the palette 1..={palette}")]
    ColourOutOfRange {
        vertex: Vertex,
        colour: Colour,
        palette: Colour,
    },
    #[error("colouring does not assign a colour to vertex {0}")]
    Uncoloured(Vertex),
    #[error("colouring is not proper: edge {0}-{1} is monochromatic")]
    NotProper(Vertex, Vertex),
    #[error("move on vertex {0} does not change its colour")]
    NoOpMove(Vertex),
    #[error("move on vertex {vertex} expects colour {expected}, found {found}")]
    StaleFromColour {
        vertex: Vertex,
        expected: Colour,
        found: Colour,
    },
    #[error("recolouring {vertex} to {colour} conflicts with neighbour {neighbour}")]
    ImproperResult {
        vertex: Vertex,
        neighbour: Vertex,
        colour: Colour,
    },
    #[error("sequence endpoints do not line up")]
    EndpointMismatch,
    #[error("ordering has back-degree {width}, more than the allowed {k}")]
    WidthExceeded { width: usize, k: usize },
    #[error("palette parameter {k} is too small (need at least {min})")]
    PaletteTooSmall { k: usize, min: usize },
    #[error("graph has degeneracy {width}, more than {k}")]
    NotDegenerateEnough { width: usize, k: usize },
    #[error("certificate failure: {0}")]
    Certificate(String),
    #[error("no free colour for vertex {0}")]
    NoFreeColour(Vertex),
    #[error("no Kempe swap frees a colour at vertex {0}")]
    KempeExhausted(Vertex),
    #[error("partition search exhausted after {explored} nodes")]
    SearchExhausted { explored: u64 },
    #[error("connect aborted: {moves} moves exceed the hard cap {cap} ({placed} of {n} vertices placed)")]
    HardCapExceeded {
        moves: usize,
        cap: usize,
        placed: usize,
        n: usize,
    },
    #[error("state space bound {bound} exceeds the cap {cap}")]
    TooLarge { bound: f64, cap: u64 },
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures that indicate a violated certificate or a rejected
    /// sequence, as opposed to bad input or usage.
    pub fn is_certificate_failure(&self) -> bool {
        matches!(
            self,
            Error::Certificate(_)
                | Error::KempeExhausted(_)
                | Error::NoFreeColour(_)
                | Error::SearchExhausted { .. }
                | Error::HardCapExceeded { .. }
                | Error::WidthExceeded { .. }
                | Error::NotDegenerateEnough { .. }
                | Error::ImproperResult { .. }
                | Error::StaleFromColour { .. }
                | Error::EndpointMismatch
                | Error::Internal(_)
        )
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
