use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use super::simplicial::Link;
use super::{default_names, euler_from_dims, ComplexError, SimplicialComplex, VertexId};

/// Index into [`CubicalComplex::cubes`], ordered by (dimension, canonical tuple).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CubeId(pub usize);

impl CubeId {
    pub fn idx(self) -> usize {
        self.0
    }
}

/// A finite abstract cubical complex.  A `k`-cube is a tuple of `2^k` distinct
/// vertices indexed by binary corner strings (bit `i` of the position is
/// coordinate `i`), stored in a canonical form: the lexicographically minimal
/// tuple over the symmetry group of the model cube.  This makes cube equality
/// decidable and lets the face poset be hash-consed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicalComplex {
    vertex_names: Vec<String>,
    cubes: Vec<Vec<VertexId>>,
    index: BTreeMap<Vec<VertexId>, CubeId>,
    set_index: BTreeMap<Vec<VertexId>, CubeId>,
    facets: Vec<Vec<CubeId>>,
    cofacets: Vec<Vec<CubeId>>,
    faces_all: Vec<BTreeSet<CubeId>>,
}

/// Lexicographically minimal re-indexing of a cube tuple over the model cube
/// symmetries (coordinate permutations and flips).
pub(crate) fn canonical_cube_tuple(tuple: &[VertexId]) -> Vec<VertexId> {
    let k = tuple.len().trailing_zeros() as usize;
    if k == 0 {
        return tuple.to_vec();
    }
    let coords: Vec<usize> = (0..k).collect();
    let mut best: Option<Vec<VertexId>> = None;
    for perm in coords.iter().copied().permutations(k) {
        for flip in 0..tuple.len() {
            let candidate: Vec<VertexId> = (0..tuple.len())
                .map(|c| tuple[permute_bits(c, &perm) ^ flip])
                .collect();
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate);
            }
        }
    }
    best.unwrap()
}

/// Bit `perm[i]` of the result is bit `i` of `b`.
fn permute_bits(b: usize, perm: &[usize]) -> usize {
    let mut out = 0;
    for (i, &p) in perm.iter().enumerate() {
        out |= (b >> i & 1) << p;
    }
    out
}

/// Positions the bits of `packed` at the coordinates listed in `at`.
fn spread_bits(packed: usize, at: &[usize]) -> usize {
    let mut out = 0;
    for (i, &p) in at.iter().enumerate() {
        out |= (packed >> i & 1) << p;
    }
    out
}

impl CubicalComplex {
    /// Builds the face closure of the given cubes and checks the cell-complex
    /// condition: the vertex sets of two cubes intersect in the vertex set of
    /// a common face or not at all.
    pub fn from_cubes(
        vertex_names: Vec<String>,
        cubes: Vec<Vec<VertexId>>,
    ) -> Result<Self, ComplexError> {
        let nv = vertex_names.len() as u32;
        let mut closure: BTreeSet<Vec<VertexId>> = BTreeSet::new();
        let mut work: Vec<Vec<VertexId>> = Vec::new();
        for tuple in &cubes {
            if !tuple.len().is_power_of_two() {
                return Err(ComplexError::NotAPowerOfTwo(tuple.len()));
            }
            for &v in tuple {
                if v.0 >= nv {
                    return Err(ComplexError::VertexOutOfRange(v.0));
                }
            }
            let mut sorted = tuple.clone();
            sorted.sort();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(ComplexError::DuplicateVertexInCell {
                    cell: tuple.iter().map(|v| v.0).collect(),
                });
            }
            work.push(canonical_cube_tuple(tuple));
        }
        while let Some(tuple) = work.pop() {
            if !closure.insert(tuple.clone()) {
                continue;
            }
            let k = tuple.len().trailing_zeros() as usize;
            for coord in 0..k {
                for side in 0..2 {
                    let face = face_of_tuple(&tuple, 1 << coord, side << coord);
                    work.push(canonical_cube_tuple(&face));
                }
            }
        }

        let cubes: Vec<Vec<VertexId>> = {
            let mut v: Vec<Vec<VertexId>> = closure.into_iter().collect();
            v.sort_by_key(|t| (t.len(), t.clone()));
            v
        };
        let index: BTreeMap<Vec<VertexId>, CubeId> = cubes
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), CubeId(i)))
            .collect();

        // two distinct cubes may not share their vertex set
        let mut set_index: BTreeMap<Vec<VertexId>, CubeId> = BTreeMap::new();
        for (i, t) in cubes.iter().enumerate() {
            let mut set = t.clone();
            set.sort();
            if let Some(prev) = set_index.insert(set, CubeId(i)) {
                return Err(ComplexError::NotACellComplex {
                    a: cubes[prev.idx()].iter().map(|v| v.0).collect(),
                    b: t.iter().map(|v| v.0).collect(),
                });
            }
        }

        let mut facets = vec![Vec::new(); cubes.len()];
        let mut cofacets = vec![Vec::new(); cubes.len()];
        for (i, t) in cubes.iter().enumerate() {
            let k = t.len().trailing_zeros() as usize;
            for coord in 0..k {
                for side in 0..2 {
                    let face = canonical_cube_tuple(&face_of_tuple(t, 1 << coord, side << coord));
                    let fid = index[&face];
                    facets[i].push(fid);
                    cofacets[fid.idx()].push(CubeId(i));
                }
            }
            facets[i].sort();
            facets[i].dedup();
        }
        for c in &mut cofacets {
            c.sort();
            c.dedup();
        }

        let mut faces_all: Vec<BTreeSet<CubeId>> = vec![BTreeSet::new(); cubes.len()];
        for i in 0..cubes.len() {
            // cubes are sorted by dimension, so facets are already resolved
            let mut set = BTreeSet::new();
            set.insert(CubeId(i));
            for f in &facets[i] {
                set.extend(faces_all[f.idx()].iter().copied());
            }
            faces_all[i] = set;
        }

        let complex = Self {
            vertex_names,
            cubes,
            index,
            set_index,
            facets,
            cofacets,
            faces_all,
        };
        complex.check_cell_condition()?;
        Ok(complex)
    }

    /// Convenience builder from bare vertex ids; names default to `0..n`.
    pub fn from_vertex_tuples(cubes: &[Vec<u32>]) -> Result<Self, ComplexError> {
        let nv = cubes
            .iter()
            .flat_map(|c| c.iter())
            .map(|&v| v as usize + 1)
            .max()
            .unwrap_or(0);
        let tuples = cubes
            .iter()
            .map(|c| c.iter().map(|&v| VertexId(v)).collect())
            .collect();
        Self::from_cubes(default_names(nv), tuples)
    }

    fn check_cell_condition(&self) -> Result<(), ComplexError> {
        let sets: Vec<BTreeSet<VertexId>> = self
            .cubes
            .iter()
            .map(|t| t.iter().copied().collect())
            .collect();
        for i in 0..self.cubes.len() {
            for j in (i + 1)..self.cubes.len() {
                let inter: Vec<VertexId> = sets[i].intersection(&sets[j]).copied().collect();
                if inter.is_empty() {
                    continue;
                }
                let ok = self.set_index.get(&inter).is_some_and(|&g| {
                    self.faces_all[i].contains(&g) && self.faces_all[j].contains(&g)
                });
                if !ok {
                    return Err(ComplexError::NotACellComplex {
                        a: self.cubes[i].iter().map(|v| v.0).collect(),
                        b: self.cubes[j].iter().map(|v| v.0).collect(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.idx()]
    }

    pub fn cube_count(&self) -> usize {
        self.cubes.len()
    }

    pub fn cubes(&self) -> impl Iterator<Item = (CubeId, &[VertexId])> {
        self.cubes
            .iter()
            .enumerate()
            .map(|(i, t)| (CubeId(i), t.as_slice()))
    }

    pub fn cube(&self, id: CubeId) -> &[VertexId] {
        &self.cubes[id.idx()]
    }

    pub fn cube_dim(&self, id: CubeId) -> usize {
        self.cubes[id.idx()].len().trailing_zeros() as usize
    }

    pub fn id_of(&self, tuple: &[VertexId]) -> Option<CubeId> {
        self.index.get(&canonical_cube_tuple(tuple)).copied()
    }

    /// Cube with the given vertex set, regardless of corner structure.
    pub fn id_of_set(&self, verts: &[VertexId]) -> Option<CubeId> {
        let mut sorted = verts.to_vec();
        sorted.sort();
        sorted.dedup();
        self.set_index.get(&sorted).copied()
    }

    pub fn vertex_cube(&self, v: VertexId) -> Option<CubeId> {
        self.index.get(&vec![v][..].to_vec()).copied()
    }

    pub fn edge_cube(&self, u: VertexId, v: VertexId) -> Option<CubeId> {
        self.id_of(&[u, v])
    }

    pub fn facets(&self, id: CubeId) -> &[CubeId] {
        &self.facets[id.idx()]
    }

    pub fn cofacets(&self, id: CubeId) -> &[CubeId] {
        &self.cofacets[id.idx()]
    }

    /// All faces of `id`, including itself.
    pub fn faces(&self, id: CubeId) -> &BTreeSet<CubeId> {
        &self.faces_all[id.idx()]
    }

    pub fn dim(&self) -> Option<usize> {
        self.cubes
            .last()
            .map(|t| t.len().trailing_zeros() as usize)
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        self.cubes
            .iter()
            .take_while(|t| t.len() == 1)
            .map(|t| t[0])
            .collect()
    }

    pub fn cubes_of_dim(&self, d: usize) -> Vec<CubeId> {
        self.cubes
            .iter()
            .enumerate()
            .filter(|(_, t)| t.len() == 1 << d)
            .map(|(i, _)| CubeId(i))
            .collect()
    }

    pub fn maximal_cubes(&self) -> Vec<CubeId> {
        (0..self.cubes.len())
            .filter(|&i| self.cofacets[i].is_empty())
            .map(CubeId)
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        euler_from_dims(
            self.cubes
                .iter()
                .map(|t| t.len().trailing_zeros() as usize),
        )
    }

    /// The face of `id` fixing the coordinates in `fixed_mask` at the bits of
    /// `fixed_vals`, as a (non-canonical) tuple over the remaining coordinates
    /// in ascending order.
    pub fn face_tuple(&self, id: CubeId, fixed_mask: u32, fixed_vals: u32) -> Vec<VertexId> {
        face_of_tuple(&self.cubes[id.idx()], fixed_mask as usize, fixed_vals as usize)
    }

    pub fn face_id(&self, id: CubeId, fixed_mask: u32, fixed_vals: u32) -> CubeId {
        self.id_of(&self.face_tuple(id, fixed_mask, fixed_vals))
            .expect("faces of a stored cube are stored")
    }

    /// Expresses `face` as a fixed-coordinate pattern of `big`: returns
    /// `(fixed_mask, fixed_vals)` with `face = big | {x_i = vals_i, i in mask}`.
    /// `None` when `face` is not a face of `big`.
    pub fn embed_face(&self, face: CubeId, big: CubeId) -> Option<(u32, u32)> {
        if !self.faces_all[big.idx()].contains(&face) {
            return None;
        }
        let k = self.cube_dim(big);
        let codim = k - self.cube_dim(face);
        let target = &self.cubes[face.idx()];
        for fixed in (0u32..1 << k).filter(|m| m.count_ones() as usize == codim) {
            let mut vals = fixed;
            loop {
                let tuple = canonical_cube_tuple(&self.face_tuple(big, fixed, vals));
                if tuple == *target {
                    return Some((fixed, vals));
                }
                if vals == 0 {
                    break;
                }
                vals = (vals - 1) & fixed;
            }
        }
        None
    }

    /// Every cube is contained in a top-dimensional cube.
    pub fn is_homogeneous(&self) -> bool {
        self.homogeneity_witness().is_none()
    }

    pub fn homogeneity_witness(&self) -> Option<CubeId> {
        let n = self.dim()?;
        (0..self.cubes.len()).find_map(|i| {
            (self.cube_dim(CubeId(i)) < n && self.cofacets[i].is_empty()).then_some(CubeId(i))
        })
    }

    pub fn is_without_boundary(&self) -> bool {
        self.boundary_witness().is_none()
    }

    pub fn boundary_witness(&self) -> Option<CubeId> {
        let n = self.dim()?;
        if n == 0 {
            return None;
        }
        (0..self.cubes.len()).find_map(|i| {
            let id = CubeId(i);
            if self.cube_dim(id) != n - 1 {
                return None;
            }
            let tops = self.cofacets[i]
                .iter()
                .filter(|c| self.cube_dim(**c) == n)
                .count();
            (tops < 2).then_some(id)
        })
    }

    /// Abstract link of a cube, as in the simplicial case: vertices are the
    /// codimension-1 cofaces, simplices come from higher cofaces.
    pub fn cell_link(&self, cell: CubeId) -> Result<Link<CubeId>, ComplexError> {
        if cell.idx() >= self.cubes.len() {
            return Err(ComplexError::UnknownCell);
        }
        let verts: Vec<CubeId> = self.cofacets(cell).to_vec();
        let mut maximal = Vec::new();
        for (i, _) in self.cubes.iter().enumerate() {
            let mu = CubeId(i);
            if mu == cell || !self.faces_all[i].contains(&cell) {
                continue;
            }
            // the cells one dimension above `cell` inside `mu`
            let span: Vec<VertexId> = verts
                .iter()
                .enumerate()
                .filter(|(_, g)| self.faces_all[i].contains(g))
                .map(|(idx, _)| VertexId(idx as u32))
                .collect();
            maximal.push(span);
        }
        let names = verts.iter().map(|&c| self.describe(c)).collect();
        let complex = SimplicialComplex::from_simplices(names, maximal)?;
        Ok(Link {
            complex,
            link_vertex_cells: verts,
        })
    }

    pub fn describe(&self, id: CubeId) -> String {
        let mut names: Vec<&str> = self.cubes[id.idx()]
            .iter()
            .map(|&v| self.vertex_name(v))
            .collect();
        names.sort_unstable();
        names.join(".")
    }

    pub fn same_cells(&self, other: &CubicalComplex) -> bool {
        self.cubes == other.cubes
    }
}

fn face_of_tuple(tuple: &[VertexId], fixed_mask: usize, fixed_vals: usize) -> Vec<VertexId> {
    let k = tuple.len().trailing_zeros() as usize;
    let free: Vec<usize> = (0..k).filter(|i| fixed_mask >> i & 1 == 0).collect();
    (0..1usize << free.len())
        .map(|c| tuple[fixed_vals | spread_bits(c, &free)])
        .collect()
}
