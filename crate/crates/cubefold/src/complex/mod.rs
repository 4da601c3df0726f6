//! Finite abstract simplicial and cubical complexes.
//!
//! Cells are abstract vertex tuples, never geometric.  Complexes are
//! immutable after construction; every operation returns a new value.

mod cubical;
mod marked;
mod simplicial;
mod subdivide;

pub use cubical::{CubeId, CubicalComplex};
pub use marked::{admissibility_check, relative_cone, AdmissibilityReport, MarkedComplex};
pub use simplicial::{Link, SimplexId, SimplicialComplex};
pub use subdivide::{cubify, BarycentricSubdivision};

use std::fmt;

use thiserror::Error;

/// Index into a complex's vertex table.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("cell {cell:?} repeats a vertex")]
    DuplicateVertexInCell { cell: Vec<u32> },
    #[error("cubes {a:?} and {b:?} overlap in a non-face")]
    NotACellComplex { a: Vec<u32>, b: Vec<u32> },
    #[error("unknown cell")]
    UnknownCell,
    #[error("unknown vertex {0}")]
    UnknownVertex(u32),
    #[error("not a subcomplex: {cell:?} is missing from the ambient complex")]
    NotASubcomplex { cell: Vec<u32> },
    #[error("cube tuple has length {0}, which is not a power of two")]
    NotAPowerOfTwo(usize),
    #[error("vertex id {0} is outside the vertex table")]
    VertexOutOfRange(u32),
    #[error("cone point {0} has an invalid star: {1}")]
    BadConePoint(u32, String),
}

/// Names `0..n` used when a caller builds a complex from bare ids.
pub(crate) fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Alternating sum over a cell census.
pub(crate) fn euler_from_dims<I: Iterator<Item = usize>>(dims: I) -> i64 {
    dims.map(|d| if d % 2 == 0 { 1 } else { -1 }).sum()
}
