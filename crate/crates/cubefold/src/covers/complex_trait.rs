use crate::complex::{ComplexError, CubicalComplex, SimplicialComplex, VertexId};

/// The cell structure the covering machinery needs: cells as vertex tuples,
/// edges within a cell, boundary cycles of 2-cells, and reassembly from
/// lifted tuples.  Implemented by both complex kinds, so covers of graphs,
/// simplicial complexes and cubical complexes share one code path.
pub trait CellComplex: Sized + Clone {
    fn vertex_names(&self) -> &[String];
    fn present_vertices(&self) -> Vec<VertexId>;
    fn cell_count(&self) -> usize;
    fn cell_dim(&self, c: usize) -> usize;
    fn cell_tuple(&self, c: usize) -> &[VertexId];
    /// Pairs of tuple positions joined by an edge of the cell.
    fn cell_edge_indices(&self, c: usize) -> Vec<(usize, usize)>;
    /// Tuple positions around the boundary of a 2-cell, in cyclic order.
    fn boundary_cycle(&self, c: usize) -> Vec<usize>;
    fn find_cell(&self, tuple: &[VertexId]) -> Option<usize>;
    fn cells_at_vertex(&self, v: VertexId) -> Vec<usize>;
    fn from_cells(names: Vec<String>, cells: Vec<Vec<VertexId>>) -> Result<Self, ComplexError>;
    fn euler(&self) -> i64;
    fn describe_cell(&self, c: usize) -> String;
}

impl CellComplex for SimplicialComplex {
    fn vertex_names(&self) -> &[String] {
        self.vertex_names()
    }

    fn present_vertices(&self) -> Vec<VertexId> {
        self.vertices()
    }

    fn cell_count(&self) -> usize {
        self.simplex_count()
    }

    fn cell_dim(&self, c: usize) -> usize {
        self.simplex_dim(crate::complex::SimplexId(c))
    }

    fn cell_tuple(&self, c: usize) -> &[VertexId] {
        self.simplex(crate::complex::SimplexId(c))
    }

    fn cell_edge_indices(&self, c: usize) -> Vec<(usize, usize)> {
        let n = self.cell_tuple(c).len();
        (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .collect()
    }

    fn boundary_cycle(&self, c: usize) -> Vec<usize> {
        debug_assert_eq!(self.cell_dim(c), 2);
        vec![0, 1, 2]
    }

    fn find_cell(&self, tuple: &[VertexId]) -> Option<usize> {
        self.id_of(tuple).map(|s| s.idx())
    }

    fn cells_at_vertex(&self, v: VertexId) -> Vec<usize> {
        self.simplices()
            .filter(|(_, s)| s.contains(&v))
            .map(|(id, _)| id.idx())
            .collect()
    }

    fn from_cells(names: Vec<String>, cells: Vec<Vec<VertexId>>) -> Result<Self, ComplexError> {
        SimplicialComplex::from_simplices(names, cells)
    }

    fn euler(&self) -> i64 {
        self.euler_characteristic()
    }

    fn describe_cell(&self, c: usize) -> String {
        self.describe(crate::complex::SimplexId(c))
    }
}

impl CellComplex for CubicalComplex {
    fn vertex_names(&self) -> &[String] {
        self.vertex_names()
    }

    fn present_vertices(&self) -> Vec<VertexId> {
        self.vertices()
    }

    fn cell_count(&self) -> usize {
        self.cube_count()
    }

    fn cell_dim(&self, c: usize) -> usize {
        self.cube_dim(crate::complex::CubeId(c))
    }

    fn cell_tuple(&self, c: usize) -> &[VertexId] {
        self.cube(crate::complex::CubeId(c))
    }

    fn cell_edge_indices(&self, c: usize) -> Vec<(usize, usize)> {
        let k = self.cell_dim(c);
        let size = 1usize << k;
        let mut out = Vec::new();
        for a in 0..size {
            for j in 0..k {
                let b = a | 1 << j;
                if b != a {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn boundary_cycle(&self, c: usize) -> Vec<usize> {
        debug_assert_eq!(self.cell_dim(c), 2);
        vec![0, 1, 3, 2]
    }

    fn find_cell(&self, tuple: &[VertexId]) -> Option<usize> {
        self.id_of(tuple).map(|s| s.idx())
    }

    fn cells_at_vertex(&self, v: VertexId) -> Vec<usize> {
        self.cubes()
            .filter(|(_, t)| t.contains(&v))
            .map(|(id, _)| id.idx())
            .collect()
    }

    fn from_cells(names: Vec<String>, cells: Vec<Vec<VertexId>>) -> Result<Self, ComplexError> {
        CubicalComplex::from_cubes(names, cells)
    }

    fn euler(&self) -> i64 {
        self.euler_characteristic()
    }

    fn describe_cell(&self, c: usize) -> String {
        self.describe(crate::complex::CubeId(c))
    }
}
