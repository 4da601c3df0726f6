//! Small standard complexes used throughout the tests, benchmarks and docs.

use std::collections::BTreeMap;

use crate::complex::{CubicalComplex, MarkedComplex, SimplicialComplex, VertexId};
use crate::folding::CubicalFolding;

/// A `w x h` grid of squares; vertex `(i, j)` has id `i + (w + 1) * j`.
pub fn grid(w: u32, h: u32) -> CubicalComplex {
    let v = |i: u32, j: u32| i + (w + 1) * j;
    let mut cubes = Vec::new();
    for j in 0..h {
        for i in 0..w {
            cubes.push(vec![v(i, j), v(i + 1, j), v(i, j + 1), v(i + 1, j + 1)]);
        }
    }
    CubicalComplex::from_vertex_tuples(&cubes).unwrap()
}

/// Parity labels `(i mod 2, j mod 2)` for a grid built by [`grid`].
pub fn grid_folding(w: u32, h: u32) -> CubicalFolding {
    let mut labels = BTreeMap::new();
    for j in 0..=h {
        for i in 0..=w {
            labels.insert(VertexId(i + (w + 1) * j), (i % 2) | ((j % 2) << 1));
        }
    }
    CubicalFolding::new(2, labels).unwrap()
}

pub fn folded_grid(w: u32, h: u32) -> (CubicalComplex, CubicalFolding) {
    (grid(w, h), grid_folding(w, h))
}

/// A `w x h` grid with wraparound identifications.  Valid as a cell complex
/// for `w, h >= 3`; foldable only when both sides are even.
pub fn torus(w: u32, h: u32) -> CubicalComplex {
    let v = |i: u32, j: u32| (i % w) + w * (j % h);
    let mut cubes = Vec::new();
    for j in 0..h {
        for i in 0..w {
            cubes.push(vec![v(i, j), v(i + 1, j), v(i, j + 1), v(i + 1, j + 1)]);
        }
    }
    CubicalComplex::from_vertex_tuples(&cubes).unwrap()
}

pub fn torus_folding(w: u32, h: u32) -> CubicalFolding {
    assert!(w % 2 == 0 && h % 2 == 0, "only even tori fold");
    let mut labels = BTreeMap::new();
    for j in 0..h {
        for i in 0..w {
            labels.insert(VertexId(i + w * j), (i % 2) | ((j % 2) << 1));
        }
    }
    CubicalFolding::new(2, labels).unwrap()
}

pub fn folded_torus(w: u32, h: u32) -> (CubicalComplex, CubicalFolding) {
    (torus(w, h), torus_folding(w, h))
}

/// A cylinder: `w` squares around, `h` squares tall, wrapped in `x` only.
pub fn cylinder(w: u32, h: u32) -> CubicalComplex {
    let v = |i: u32, j: u32| (i % w) + w * j;
    let mut cubes = Vec::new();
    for j in 0..h {
        for i in 0..w {
            cubes.push(vec![v(i, j), v(i + 1, j), v(i, j + 1), v(i + 1, j + 1)]);
        }
    }
    CubicalComplex::from_vertex_tuples(&cubes).unwrap()
}

/// An `a x b x c` block of solid 3-cubes.
pub fn cuboid(a: u32, b: u32, c: u32) -> CubicalComplex {
    let v = |i: u32, j: u32, k: u32| i + (a + 1) * (j + (b + 1) * k);
    let mut cubes = Vec::new();
    for k in 0..c {
        for j in 0..b {
            for i in 0..a {
                let mut tuple = Vec::with_capacity(8);
                for corner in 0..8u32 {
                    tuple.push(v(i + (corner & 1), j + (corner >> 1 & 1), k + (corner >> 2 & 1)));
                }
                cubes.push(tuple);
            }
        }
    }
    CubicalComplex::from_vertex_tuples(&cubes).unwrap()
}

pub fn cuboid_folding(a: u32, b: u32, c: u32) -> CubicalFolding {
    let mut labels = BTreeMap::new();
    for k in 0..=c {
        for j in 0..=b {
            for i in 0..=a {
                labels.insert(
                    VertexId(i + (a + 1) * (j + (b + 1) * k)),
                    (i % 2) | ((j % 2) << 1) | ((k % 2) << 2),
                );
            }
        }
    }
    CubicalFolding::new(3, labels).unwrap()
}

/// The cycle graph on `n >= 3` vertices, as a 1-dimensional cubical complex.
pub fn cubical_cycle(n: u32) -> CubicalComplex {
    let cubes: Vec<Vec<u32>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    CubicalComplex::from_vertex_tuples(&cubes).unwrap()
}

/// The boundary of the solid 3-cube: six squares, empty inside.  Its vertex
/// links are 3-cycles, the minimal failure of Gromov's link condition.
pub fn boundary_3_cube() -> CubicalComplex {
    let mut cubes = Vec::new();
    for fixed in 0..3usize {
        for val in 0..2usize {
            let free: Vec<usize> = (0..3).filter(|&i| i != fixed).collect();
            let tuple: Vec<u32> = (0..4usize)
                .map(|c| {
                    let mut b = val << fixed;
                    for (j, &f) in free.iter().enumerate() {
                        b |= (c >> j & 1) << f;
                    }
                    b as u32
                })
                .collect();
            cubes.push(tuple);
        }
    }
    CubicalComplex::from_vertex_tuples(&cubes).unwrap()
}

/// Cubical cone over an even cycle of length `l`: `l` squares fanned around a
/// central apex, whose link is the `l`-cycle.  Vertex 0 is the apex, `1..=l`
/// the spoke endpoints, `l+1..=2l` the outer corners.
pub fn cubical_cone_over_cycle(l: u32) -> CubicalComplex {
    assert!(l >= 4 && l % 2 == 0);
    let apex = 0u32;
    let spoke = |i: u32| 1 + (i % l);
    let outer = |i: u32| 1 + l + (i % l);
    let cubes: Vec<Vec<u32>> = (0..l)
        .map(|i| vec![apex, spoke(i), spoke(i + 1), outer(i)])
        .collect();
    CubicalComplex::from_vertex_tuples(&cubes).unwrap()
}

/// The simplicial cycle graph on `n` vertices.
pub fn simplicial_cycle(n: u32) -> SimplicialComplex {
    let cells: Vec<Vec<u32>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    SimplicialComplex::from_vertex_sets(&cells).unwrap()
}

/// Simplicial cone over the `n`-cycle, marked at the apex (vertex `n`).
pub fn cone_over_cycle(n: u32) -> MarkedComplex {
    let cells: Vec<Vec<u32>> = (0..n).map(|i| vec![i, (i + 1) % n, n]).collect();
    let base = SimplicialComplex::from_vertex_sets(&cells).unwrap();
    MarkedComplex::mark(base, vec![VertexId(n)]).unwrap()
}

/// Suspension of the `n`-cycle: two apexes (`n` and `n + 1`), both marked.
pub fn suspension_of_cycle(n: u32) -> MarkedComplex {
    let mut cells: Vec<Vec<u32>> = (0..n).map(|i| vec![i, (i + 1) % n, n]).collect();
    cells.extend((0..n).map(|i| vec![i, (i + 1) % n, n + 1]));
    let base = SimplicialComplex::from_vertex_sets(&cells).unwrap();
    MarkedComplex::mark(base, vec![VertexId(n), VertexId(n + 1)]).unwrap()
}

/// Triangulated annulus: inner cycle `0,1,2`, outer cycle `3,4,5`.
pub fn annulus() -> SimplicialComplex {
    let mut cells = Vec::new();
    for i in 0..3u32 {
        let j = (i + 1) % 3;
        cells.push(vec![i, j, i + 3]);
        cells.push(vec![j, i + 3, j + 3]);
    }
    SimplicialComplex::from_vertex_sets(&cells).unwrap()
}

/// Both boundary circles of [`annulus`].
pub fn annulus_boundary() -> SimplicialComplex {
    SimplicialComplex::from_vertex_sets(&[
        vec![0, 1],
        vec![1, 2],
        vec![2, 0],
        vec![3, 4],
        vec![4, 5],
        vec![5, 3],
    ])
    .unwrap()
}

/// Boundary of the octahedron with antipodal pairs `(0,1)`, `(2,3)`, `(4,5)`.
pub fn octahedron() -> SimplicialComplex {
    let mut cells = Vec::new();
    for a in 0..2u32 {
        for b in 2..4u32 {
            for c in 4..6u32 {
                cells.push(vec![a, b, c]);
            }
        }
    }
    SimplicialComplex::from_vertex_sets(&cells).unwrap()
}

/// Two 4-cycles sharing the single vertex `0`, a graph with free fundamental
/// group of rank 2.
pub fn wedge_of_two_cycles() -> CubicalComplex {
    CubicalComplex::from_vertex_tuples(&[
        vec![0, 1],
        vec![1, 2],
        vec![2, 3],
        vec![3, 0],
        vec![0, 4],
        vec![4, 5],
        vec![5, 6],
        vec![6, 0],
    ])
    .unwrap()
}
