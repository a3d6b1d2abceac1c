use thiserror::Error;

/// Errors raised while building or transforming clutters, posets and bounds.
///
/// Vertex numbers carried in variants are 0-based; the `Display` output uses
/// 1-based labels to match the external formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a clutter needs at least one edge")]
    NoEdges,
    #[error("edge #{0} is empty")]
    EmptyEdge(usize),
    #[error("edge {} is contained in edge {}", fmt_set(*.inner), fmt_set(*.outer))]
    ContainedEdge { inner: u32, outer: u32 },
    #[error("vertex {} belongs to no edge", .0 + 1)]
    IsolatedVertex(usize),
    #[error("vertex label {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: i64, n: usize },
    #[error("{n} vertices exceed the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("degree {d} exceeds the number of parts {k}")]
    DegreeExceedsParts { d: usize, k: usize },
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("part sizes must all be at least 1")]
    ZeroPartSize,
    #[error("deletion removed every edge (zero ideal)")]
    EmptyResult,
    #[error("contraction produced the unit ideal")]
    UnitIdeal,
    #[error("partition blocks do not cover the vertex set exactly")]
    PartitionMismatch,
    #[error("clutter is not uniform")]
    NotUniform,
    #[error("clutter is not the complete clutter on the given partition")]
    NotComplete,
    #[error("edge count {count} is outside 1..={max}")]
    EdgeCountOutOfRange { count: u64, max: u64 },
    #[error("bound needs at least 4 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("target depth {k} outside {min}..={max}")]
    DepthOutOfRange { k: usize, min: usize, max: usize },
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

fn fmt_set(mask: u32) -> String {
    let labels: Vec<String> = crate::subset::members(mask)
        .map(|v| (v + 1).to_string())
        .collect();
    format!("{{{}}}", labels.join(","))
}
