use thiserror::Error;

/// Errors raised while reading, validating or operating on triangulations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("face ({tet},{face}) is glued to ({target},{target_face}) but the reverse gluing does not match")]
    Involution {
        tet: usize,
        face: usize,
        target: usize,
        target_face: usize,
    },
    #[error("face ({tet},{face}) is glued to itself")]
    SelfGluing { tet: usize, face: usize },
    #[error("gluing of ({tet},{face}) refers to tetrahedron {target} outside 0..{count}")]
    TetOutOfRange {
        tet: usize,
        face: usize,
        target: usize,
        count: usize,
    },
    #[error("an edge of tetrahedron {tet} is identified with itself in reverse")]
    ReversedEdge { tet: usize },
    #[error("edge class {0} is not on the boundary")]
    NotBoundaryEdge(usize),
    #[error("degenerate boundary adjacency at edge class {0}")]
    DegenerateAdjacency(usize),
    #[error("boundary is not a one-vertex torus")]
    BoundaryNotTorus,
    #[error("vector has {got} tetrahedra, triangulation has {expected}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("normal vector is not admissible or does not satisfy the matching equations")]
    NotNormal,
    #[error("curve is null-homotopic on the boundary torus")]
    TrivialCurve,
    #[error("curve is disconnected ({0} components)")]
    DisconnectedCurve(usize),
    #[error("slope {0} is not in the triple")]
    SlopeNotInTriple(String),
    #[error("malformed curve: {0}")]
    MalformedCurve(String),
    #[error("curve is not transverse to the surface: {0}")]
    NotTransverse(String),
    #[error("input is not a meridian disc: {0}")]
    NotMeridianDisc(String),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
