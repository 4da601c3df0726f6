//! Gromov's link condition: vertex links in cubical complexes and flagness.
//!
//! A cubical complex is non-positively curved exactly when the link of every
//! vertex is a flag simplicial complex; the condition is purely combinatorial
//! (all-right piecewise spherical structure implied, never stored).

use std::collections::BTreeSet;

use crate::complex::{ComplexError, CubeId, CubicalComplex, SimplicialComplex, VertexId};

/// The link of a vertex: link vertices are the edges at the base vertex and
/// `m`-simplices are the `(m+1)`-cubes at that vertex.
#[derive(Clone, Debug)]
pub struct LinkComplex {
    pub complex: SimplicialComplex,
    /// Edge cube behind each link vertex.
    pub vertex_edges: Vec<CubeId>,
}

pub fn vertex_link(x: &CubicalComplex, v: VertexId) -> Result<LinkComplex, ComplexError> {
    let cube = x.vertex_cube(v).ok_or(ComplexError::UnknownVertex(v.0))?;
    let link = x.cell_link(cube)?;
    Ok(LinkComplex {
        complex: link.complex,
        vertex_edges: link.link_vertex_cells,
    })
}

/// Outcome of the flag test; on failure, the witness is a minimal clique of
/// the 1-skeleton that spans no simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagVerdict {
    pub flag: bool,
    pub witness: Option<Vec<VertexId>>,
}

/// True iff every clique of the 1-skeleton spans a simplex.  Cliques are
/// enumerated by size, so the first failure is minimal: all its proper
/// subcliques span.
pub fn is_flag(l: &SimplicialComplex) -> FlagVerdict {
    let verts = l.vertices();
    let adjacent = |a: VertexId, b: VertexId| l.contains(&[a, b]);
    // level s: all s-cliques, grown by vertices above the current maximum
    let mut level: Vec<Vec<VertexId>> = l
        .simplices_of_dim(1)
        .into_iter()
        .map(|e| l.simplex(e).to_vec())
        .collect();
    while !level.is_empty() {
        let mut next = Vec::new();
        for clique in &level {
            let last = *clique.last().unwrap();
            for &v in verts.iter().filter(|v| **v > last) {
                if clique.iter().all(|&u| adjacent(u, v)) {
                    let mut bigger = clique.clone();
                    bigger.push(v);
                    next.push(bigger);
                }
            }
        }
        for clique in &next {
            if !l.contains(clique) {
                return FlagVerdict {
                    flag: false,
                    witness: Some(clique.clone()),
                };
            }
        }
        level = next;
    }
    FlagVerdict {
        flag: true,
        witness: None,
    }
}

/// Per-vertex outcome of the link condition.
#[derive(Clone, Debug)]
pub struct LinkSummary {
    pub vertex: VertexId,
    pub link_vertices: usize,
    pub link_simplices: usize,
    pub flag: bool,
    /// Edges at the base vertex forming a minimal non-flag clique.
    pub witness: Option<Vec<CubeId>>,
}

/// Report of the non-positive-curvature certificate.
#[derive(Clone, Debug)]
pub struct NpcReport {
    pub pass: bool,
    pub links: Vec<LinkSummary>,
}

impl NpcReport {
    pub fn failures(&self) -> impl Iterator<Item = &LinkSummary> {
        self.links.iter().filter(|l| !l.flag)
    }
}

/// Runs the flag test at every vertex of a cubical complex.
pub fn npc_certificate(x: &CubicalComplex) -> NpcReport {
    let mut links = Vec::new();
    for v in x.vertices() {
        let link = vertex_link(x, v).expect("vertex exists");
        let verdict = is_flag(&link.complex);
        links.push(LinkSummary {
            vertex: v,
            link_vertices: link.complex.vertices().len(),
            link_simplices: link.complex.simplex_count(),
            flag: verdict.flag,
            witness: verdict
                .witness
                .map(|ws| ws.iter().map(|w| link.vertex_edges[w.idx()]).collect()),
        });
    }
    NpcReport {
        pass: links.iter().all(|l| l.flag),
        links,
    }
}

/// Whether `vertex_map` defines a simplicial covering `total -> base`:
/// simplices map isomorphically onto simplices, the map is vertex-surjective,
/// and every star maps bijectively.
pub fn is_simplicial_covering(
    total: &SimplicialComplex,
    base: &SimplicialComplex,
    vertex_map: &[VertexId],
) -> bool {
    let image = |s: &[VertexId]| -> Vec<VertexId> {
        s.iter().map(|v| vertex_map[v.idx()]).collect()
    };
    for (_, s) in total.simplices() {
        let img = image(s);
        let mut sorted = img.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != s.len() || !base.contains(&img) {
            return false;
        }
    }
    let covered: BTreeSet<VertexId> = total
        .vertices()
        .iter()
        .map(|v| vertex_map[v.idx()])
        .collect();
    if covered != base.vertices().into_iter().collect() {
        return false;
    }
    for w in total.vertices() {
        let star: Vec<Vec<VertexId>> = total
            .simplices()
            .filter(|(_, s)| s.contains(&w))
            .map(|(_, s)| {
                let mut img = image(s);
                img.sort();
                img
            })
            .collect();
        let distinct: BTreeSet<&Vec<VertexId>> = star.iter().collect();
        let base_star = base
            .simplices()
            .filter(|(_, s)| s.contains(&vertex_map[w.idx()]))
            .count();
        if distinct.len() != star.len() || star.len() != base_star {
            return false;
        }
    }
    true
}

/// The full subcomplex of `l` on a vertex subset.
pub fn full_subcomplex(l: &SimplicialComplex, keep: &BTreeSet<VertexId>) -> SimplicialComplex {
    let cells: Vec<Vec<VertexId>> = l
        .simplices()
        .filter(|(_, s)| s.iter().all(|v| keep.contains(v)))
        .map(|(_, s)| s.to_vec())
        .collect();
    SimplicialComplex::from_simplices(l.vertex_names().to_vec(), cells)
        .expect("subfamily of a valid complex")
}
