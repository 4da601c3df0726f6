use std::collections::BTreeMap;

use super::{default_names, euler_from_dims, ComplexError, VertexId};

/// Index into [`SimplicialComplex::simplices`], ordered by (dimension, vertex tuple).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SimplexId(pub usize);

impl SimplexId {
    pub fn idx(self) -> usize {
        self.0
    }
}

/// A finite abstract simplicial complex: a set of vertex subsets closed under
/// taking subsets.  Simplices are stored sorted, first by dimension and then
/// lexicographically, so ids are stable across rebuilds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_names: Vec<String>,
    simplices: Vec<Vec<VertexId>>,
    index: BTreeMap<Vec<VertexId>, SimplexId>,
    facets: Vec<Vec<SimplexId>>,
    cofacets: Vec<Vec<SimplexId>>,
}

impl SimplicialComplex {
    /// Builds the downward closure of the given simplices.  Vertex ids must
    /// index into `vertex_names`.
    pub fn from_simplices(
        vertex_names: Vec<String>,
        maximal: Vec<Vec<VertexId>>,
    ) -> Result<Self, ComplexError> {
        let nv = vertex_names.len() as u32;
        let mut closure: BTreeMap<Vec<VertexId>, ()> = BTreeMap::new();
        for cell in &maximal {
            for &v in cell {
                if v.0 >= nv {
                    return Err(ComplexError::VertexOutOfRange(v.0));
                }
            }
            let mut sorted: Vec<VertexId> = cell.clone();
            sorted.sort();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(ComplexError::DuplicateVertexInCell {
                    cell: cell.iter().map(|v| v.0).collect(),
                });
            }
            // every subset of a listed simplex is listed
            let n = sorted.len();
            for mask in 1u64..(1 << n) {
                let sub: Vec<VertexId> = (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| sorted[i])
                    .collect();
                closure.insert(sub, ());
            }
        }
        let mut simplices: Vec<Vec<VertexId>> = closure.into_keys().collect();
        simplices.sort_by_key(|s| (s.len(), s.clone()));
        let index: BTreeMap<Vec<VertexId>, SimplexId> = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), SimplexId(i)))
            .collect();
        let mut facets = vec![Vec::new(); simplices.len()];
        let mut cofacets = vec![Vec::new(); simplices.len()];
        for (i, s) in simplices.iter().enumerate() {
            if s.len() == 1 {
                continue;
            }
            for drop in 0..s.len() {
                let mut f = s.clone();
                f.remove(drop);
                let fid = index[&f];
                facets[i].push(fid);
                cofacets[fid.idx()].push(SimplexId(i));
            }
            facets[i].sort();
        }
        for c in &mut cofacets {
            c.sort();
        }
        Ok(Self {
            vertex_names,
            simplices,
            index,
            facets,
            cofacets,
        })
    }

    /// Convenience builder from bare vertex ids; names default to `0..n`.
    pub fn from_vertex_sets(maximal: &[Vec<u32>]) -> Result<Self, ComplexError> {
        let nv = maximal
            .iter()
            .flat_map(|c| c.iter())
            .map(|&v| v as usize + 1)
            .max()
            .unwrap_or(0);
        let cells = maximal
            .iter()
            .map(|c| c.iter().map(|&v| VertexId(v)).collect())
            .collect();
        Self::from_simplices(default_names(nv), cells)
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.idx()]
    }

    pub fn simplex_count(&self) -> usize {
        self.simplices.len()
    }

    pub fn simplices(&self) -> impl Iterator<Item = (SimplexId, &[VertexId])> {
        self.simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (SimplexId(i), s.as_slice()))
    }

    pub fn simplex(&self, id: SimplexId) -> &[VertexId] {
        &self.simplices[id.idx()]
    }

    pub fn simplex_dim(&self, id: SimplexId) -> usize {
        self.simplices[id.idx()].len() - 1
    }

    pub fn id_of(&self, verts: &[VertexId]) -> Option<SimplexId> {
        let mut sorted = verts.to_vec();
        sorted.sort();
        self.index.get(&sorted).copied()
    }

    pub fn contains(&self, verts: &[VertexId]) -> bool {
        self.id_of(verts).is_some()
    }

    pub fn facets(&self, id: SimplexId) -> &[SimplexId] {
        &self.facets[id.idx()]
    }

    pub fn cofacets(&self, id: SimplexId) -> &[SimplexId] {
        &self.cofacets[id.idx()]
    }

    /// Dimension of the complex, `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.last().map(|s| s.len() - 1)
    }

    /// The 0-cells actually present (a vertex id may be unused).
    pub fn vertices(&self) -> Vec<VertexId> {
        self.simplices
            .iter()
            .take_while(|s| s.len() == 1)
            .map(|s| s[0])
            .collect()
    }

    pub fn simplices_of_dim(&self, d: usize) -> Vec<SimplexId> {
        self.simplices
            .iter()
            .enumerate()
            .filter(|(_, s)| s.len() == d + 1)
            .map(|(i, _)| SimplexId(i))
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        euler_from_dims(self.simplices.iter().map(|s| s.len() - 1))
    }

    /// All simplices of `sub` must be simplices of `self`.
    pub fn is_subcomplex(&self, sub: &SimplicialComplex) -> bool {
        sub.simplices.iter().all(|s| self.index.contains_key(s))
    }

    /// Abstract link of a simplex: vertices are the codimension-1 cofaces,
    /// and `m + 1` of them span an `m`-simplex exactly when the corresponding
    /// cells lie in a common cell of dimension `dim + m + 1`.  For simplicial
    /// complexes this is the classical link, re-coordinatized: link vertex `i`
    /// is the coface listed in `link_vertex_cells[i]`.
    pub fn link(&self, cell: SimplexId) -> Result<Link<SimplexId>, ComplexError> {
        if cell.idx() >= self.simplices.len() {
            return Err(ComplexError::UnknownCell);
        }
        let verts: Vec<SimplexId> = self.cofacets(cell).to_vec();
        let pos: BTreeMap<SimplexId, usize> =
            verts.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let base = &self.simplices[cell.idx()];
        let mut maximal: Vec<Vec<VertexId>> = Vec::new();
        // every coface mu of `cell` contributes the simplex of its codim-1
        // subcells above `cell`
        for (i, s) in self.simplices.iter().enumerate() {
            if s.len() <= base.len() || !is_subset(base, s) {
                continue;
            }
            let mu = SimplexId(i);
            let span: Vec<VertexId> = self
                .facets_above(cell, mu)
                .into_iter()
                .map(|g| VertexId(pos[&g] as u32))
                .collect();
            maximal.push(span);
        }
        let names = verts
            .iter()
            .map(|&c| self.describe(c))
            .collect::<Vec<String>>();
        let complex = SimplicialComplex::from_simplices(names, maximal)?;
        Ok(Link {
            complex,
            link_vertex_cells: verts,
        })
    }

    /// Codim-1 cofaces of `cell` that are contained in `mu`.
    fn facets_above(&self, cell: SimplexId, mu: SimplexId) -> Vec<SimplexId> {
        let base = &self.simplices[cell.idx()];
        let top = &self.simplices[mu.idx()];
        let mut out = Vec::new();
        for &v in top.iter() {
            if base.contains(&v) {
                continue;
            }
            let mut g = base.clone();
            g.push(v);
            g.sort();
            out.push(self.index[&g]);
        }
        out
    }

    /// Human-readable cell label: vertex names joined by `.`.
    pub fn describe(&self, id: SimplexId) -> String {
        self.simplices[id.idx()]
            .iter()
            .map(|&v| self.vertex_name(v))
            .collect::<Vec<_>>()
            .join(".")
    }

    /// Every cell is contained in a top-dimensional cell.
    pub fn is_homogeneous(&self) -> bool {
        self.homogeneity_witness().is_none()
    }

    /// A cell of non-maximal dimension with no coface, if any.
    pub fn homogeneity_witness(&self) -> Option<SimplexId> {
        let n = self.dim()?;
        self.simplices.iter().enumerate().find_map(|(i, s)| {
            (s.len() - 1 < n && self.cofacets[i].is_empty()).then_some(SimplexId(i))
        })
    }

    /// Every `(n-1)`-cell lies in at least two `n`-cells.
    pub fn is_without_boundary(&self) -> bool {
        self.boundary_witness().is_none()
    }

    pub fn boundary_witness(&self) -> Option<SimplexId> {
        let n = self.dim()?;
        if n == 0 {
            return None;
        }
        self.simplices.iter().enumerate().find_map(|(i, s)| {
            let top_cofaces = self.cofacets[i]
                .iter()
                .filter(|c| self.simplex_dim(**c) == n)
                .count();
            (s.len() == n && top_cofaces < 2).then_some(SimplexId(i))
        })
    }

    /// Restriction to the simplices avoiding all of `banned`; ids are rebuilt
    /// but the vertex table is kept, so vertex ids stay stable.
    pub fn delete_open_stars(&self, banned: &[VertexId]) -> SimplicialComplex {
        let keep: Vec<Vec<VertexId>> = self
            .simplices
            .iter()
            .filter(|s| !s.iter().any(|v| banned.contains(v)))
            .cloned()
            .collect();
        SimplicialComplex::from_simplices(self.vertex_names.clone(), keep)
            .expect("restriction of a valid complex is valid")
    }

    /// Equality of the underlying cell sets (names ignored).
    pub fn same_cells(&self, other: &SimplicialComplex) -> bool {
        self.simplices == other.simplices
    }
}

/// A link together with the map from its vertices back to the ambient cells.
#[derive(Clone, Debug)]
pub struct Link<C> {
    pub complex: SimplicialComplex,
    pub link_vertex_cells: Vec<C>,
}

fn is_subset(small: &[VertexId], big: &[VertexId]) -> bool {
    small.iter().all(|v| big.contains(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> SimplicialComplex {
        SimplicialComplex::from_vertex_sets(&[vec![0, 1, 2]]).unwrap()
    }

    #[test]
    fn single_simplex_closure() {
        let x = triangle();
        assert_eq!(x.simplices_of_dim(0).len(), 3);
        assert_eq!(x.simplices_of_dim(1).len(), 3);
        assert_eq!(x.simplices_of_dim(2).len(), 1);
        assert_eq!(x.dim(), Some(2));
        assert_eq!(x.euler_characteristic(), 1);
    }

    #[test]
    fn three_cycle_graph() {
        let x =
            SimplicialComplex::from_vertex_sets(&[vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap();
        assert_eq!(x.dim(), Some(1));
        assert_eq!(x.simplices_of_dim(1).len(), 3);
        assert_eq!(x.euler_characteristic(), 0);
    }

    #[test]
    fn duplicate_vertex_rejected() {
        let err = SimplicialComplex::from_vertex_sets(&[vec![0, 1, 1]]).unwrap_err();
        assert!(matches!(err, ComplexError::DuplicateVertexInCell { .. }));
    }

    #[test]
    fn link_of_wheel_apex_is_cycle() {
        // cone over a 4-cycle: apex 4
        let x = SimplicialComplex::from_vertex_sets(&[
            vec![0, 1, 4],
            vec![1, 2, 4],
            vec![2, 3, 4],
            vec![3, 0, 4],
        ])
        .unwrap();
        let apex = x.id_of(&[VertexId(4)]).unwrap();
        let link = x.link(apex).unwrap();
        assert_eq!(link.complex.simplices_of_dim(0).len(), 4);
        assert_eq!(link.complex.simplices_of_dim(1).len(), 4);
        assert_eq!(link.complex.dim(), Some(1));
        // a 4-cycle: every vertex has exactly two neighbours
        for v in link.complex.simplices_of_dim(0) {
            assert_eq!(link.complex.cofacets(v).len(), 2);
        }
    }

    #[test]
    fn link_dimension_bookkeeping() {
        // boundary of a tetrahedron is homogeneous of dim 2
        let x = SimplicialComplex::from_vertex_sets(&[
            vec![0, 1, 2],
            vec![0, 1, 3],
            vec![0, 2, 3],
            vec![1, 2, 3],
        ])
        .unwrap();
        let n = x.dim().unwrap();
        for (id, _) in x.simplices() {
            let d = x.simplex_dim(id);
            if d == n {
                continue;
            }
            let link = x.link(id).unwrap();
            assert_eq!(link.complex.dim(), Some(n - d - 1), "cell {}", x.describe(id));
        }
    }

    #[test]
    fn homogeneity_and_boundary_checks() {
        let tri = triangle();
        assert!(tri.is_homogeneous());
        assert!(!tri.is_without_boundary());
        // two triangles sharing a vertex: homogeneous but not without boundary
        let x = SimplicialComplex::from_vertex_sets(&[vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        assert!(x.is_homogeneous());
        assert!(!x.is_without_boundary());
        // edge dangling off a triangle: not homogeneous
        let y = SimplicialComplex::from_vertex_sets(&[vec![0, 1, 2], vec![2, 3]]).unwrap();
        assert!(!y.is_homogeneous());
        let w = y.homogeneity_witness().unwrap();
        assert_eq!(y.simplex(w), &[VertexId(2), VertexId(3)]);
    }

    #[test]
    fn degenerate_inputs_are_legal() {
        let empty = SimplicialComplex::from_vertex_sets(&[]).unwrap();
        assert_eq!(empty.dim(), None);
        assert_eq!(empty.euler_characteristic(), 0);
        assert!(empty.is_homogeneous());
        assert!(empty.is_without_boundary());

        let points = SimplicialComplex::from_vertex_sets(&[vec![0], vec![1]]).unwrap();
        assert_eq!(points.dim(), Some(0));
        assert_eq!(points.euler_characteristic(), 2);
        assert!(points.is_homogeneous());
        assert!(points.is_without_boundary());
    }

    #[test]
    fn euler_self_consistency() {
        let x = SimplicialComplex::from_vertex_sets(&[
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![4, 5],
        ])
        .unwrap();
        let by_census: i64 = (0..=x.dim().unwrap())
            .map(|d| {
                let cnt = x.simplices_of_dim(d).len() as i64;
                if d % 2 == 0 {
                    cnt
                } else {
                    -cnt
                }
            })
            .sum();
        assert_eq!(by_census, x.euler_characteristic());
    }
}
