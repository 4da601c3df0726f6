use std::collections::BTreeMap;

use super::{ComplexError, CubicalComplex, SimplicialComplex, VertexId};

/// Barycentric subdivision: one vertex per cell, one simplex per chain in the
/// face poset.  Vertices are numbered by (dimension, cell id), so the
/// dimension colouring is the identity-friendly folding.
pub trait BarycentricSubdivision {
    fn barycentric_subdivision(&self) -> SimplicialComplex;
    /// Dimension of the original cell behind each subdivision vertex.
    fn barycentric_vertex_dims(&self) -> Vec<usize>;
}

impl BarycentricSubdivision for SimplicialComplex {
    fn barycentric_subdivision(&self) -> SimplicialComplex {
        let names: Vec<String> = self.simplices().map(|(id, _)| self.describe(id)).collect();
        let dims: Vec<usize> = self.simplices().map(|(id, _)| self.simplex_dim(id)).collect();
        let facets: Vec<Vec<usize>> = self
            .simplices()
            .map(|(id, _)| self.facets(id).iter().map(|f| f.idx()).collect())
            .collect();
        bary_from_poset(names, &dims, &facets)
    }

    fn barycentric_vertex_dims(&self) -> Vec<usize> {
        self.simplices().map(|(id, _)| self.simplex_dim(id)).collect()
    }
}

impl BarycentricSubdivision for CubicalComplex {
    fn barycentric_subdivision(&self) -> SimplicialComplex {
        let names: Vec<String> = self.cubes().map(|(id, _)| self.describe(id)).collect();
        let dims: Vec<usize> = self.cubes().map(|(id, _)| self.cube_dim(id)).collect();
        let facets: Vec<Vec<usize>> = self
            .cubes()
            .map(|(id, _)| self.facets(id).iter().map(|f| f.idx()).collect())
            .collect();
        bary_from_poset(names, &dims, &facets)
    }

    fn barycentric_vertex_dims(&self) -> Vec<usize> {
        self.cubes().map(|(id, _)| self.cube_dim(id)).collect()
    }
}

/// Cells are assumed sorted by dimension (both complex types store them so),
/// hence subdivision vertex ids are ordered by original cell dimension.
fn bary_from_poset(names: Vec<String>, dims: &[usize], facets: &[Vec<usize>]) -> SimplicialComplex {
    let n = names.len();
    let mut cofacets: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, fs) in facets.iter().enumerate() {
        for &f in fs {
            cofacets[f].push(i);
        }
    }
    // maximal chains: saturated descending chains from cells with no coface
    let mut chains: Vec<Vec<VertexId>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n).filter(|&i| cofacets[i].is_empty()).map(|i| vec![i]).collect();
    while let Some(chain) = stack.pop() {
        let last = *chain.last().unwrap();
        if dims[last] == 0 {
            chains.push(chain.iter().map(|&c| VertexId(c as u32)).collect());
            continue;
        }
        for &f in &facets[last] {
            let mut next = chain.clone();
            next.push(f);
            stack.push(next);
        }
    }
    SimplicialComplex::from_simplices(names, chains).expect("chains are duplicate-free")
}

/// Standard cubification: each `n`-simplex of a homogeneous complex is
/// replaced by `n + 1` cubes glued along the barycentric pattern.  The cube
/// for a pair (vertex `v`, simplex `s`) has one corner per face between them.
pub fn cubify(k: &SimplicialComplex) -> Result<CubicalComplex, ComplexError> {
    let names: Vec<String> = k.simplices().map(|(id, _)| k.describe(id)).collect();
    let bary_id: BTreeMap<Vec<VertexId>, u32> = k
        .simplices()
        .enumerate()
        .map(|(i, (_, s))| (s.to_vec(), i as u32))
        .collect();
    let mut cubes: Vec<Vec<VertexId>> = Vec::new();
    for (id, s) in k.simplices() {
        if !k.cofacets(id).is_empty() {
            continue; // only maximal simplices seed cubes
        }
        for &v in s {
            let others: Vec<VertexId> = s.iter().copied().filter(|&w| w != v).collect();
            let tuple: Vec<VertexId> = (0..1usize << others.len())
                .map(|mask| {
                    let mut face = vec![v];
                    for (j, &w) in others.iter().enumerate() {
                        if mask >> j & 1 == 1 {
                            face.push(w);
                        }
                    }
                    face.sort();
                    VertexId(bary_id[&face])
                })
                .collect();
            cubes.push(tuple);
        }
    }
    CubicalComplex::from_cubes(names, cubes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subdividing_an_edge_gives_a_path() {
        let x = SimplicialComplex::from_vertex_sets(&[vec![0, 1]]).unwrap();
        let b = x.barycentric_subdivision();
        assert_eq!(b.simplices_of_dim(0).len(), 3);
        assert_eq!(b.simplices_of_dim(1).len(), 2);
    }

    #[test]
    fn subdividing_a_triangle() {
        let x = SimplicialComplex::from_vertex_sets(&[vec![0, 1, 2]]).unwrap();
        let b = x.barycentric_subdivision();
        assert_eq!(b.simplices_of_dim(0).len(), 7);
        assert_eq!(b.simplices_of_dim(1).len(), 12);
        assert_eq!(b.simplices_of_dim(2).len(), 6);
        assert_eq!(b.euler_characteristic(), x.euler_characteristic());
    }

    #[test]
    fn subdividing_a_square() {
        let x = CubicalComplex::from_vertex_tuples(&[vec![0, 1, 2, 3]]).unwrap();
        let b = x.barycentric_subdivision();
        assert_eq!(b.simplices_of_dim(0).len(), 9);
        assert_eq!(b.simplices_of_dim(1).len(), 16);
        assert_eq!(b.simplices_of_dim(2).len(), 8);
    }

    #[test]
    fn cubifying_an_edge_doubles_it() {
        let x = SimplicialComplex::from_vertex_sets(&[vec![0, 1]]).unwrap();
        let c = cubify(&x).unwrap();
        assert_eq!(c.cubes_of_dim(1).len(), 2);
        assert_eq!(c.cubes_of_dim(0).len(), 3);
    }

    #[test]
    fn cubifying_a_triangle_gives_three_squares() {
        let x = SimplicialComplex::from_vertex_sets(&[vec![0, 1, 2]]).unwrap();
        let c = cubify(&x).unwrap();
        assert_eq!(c.cubes_of_dim(2).len(), 3);
        assert_eq!(c.cubes_of_dim(1).len(), 9);
        assert_eq!(c.cubes_of_dim(0).len(), 7);
        assert_eq!(c.euler_characteristic(), 1);
    }

    #[test]
    fn cubifying_a_tetrahedron_gives_four_cubes() {
        let x = SimplicialComplex::from_vertex_sets(&[vec![0, 1, 2, 3]]).unwrap();
        let c = cubify(&x).unwrap();
        assert_eq!(c.cubes_of_dim(3).len(), 4);
        assert_eq!(c.euler_characteristic(), 1);
    }
}
