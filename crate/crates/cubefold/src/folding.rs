//! Foldings: combinatorial maps onto the model cube or simplex that are
//! injective on every cell.
//!
//! A cubical folding is stored purely as a vertex labelling by corners of the
//! model cube; edge directions and orientations are derived, never stored.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::complex::{CubeId, CubicalComplex, SimplexId, SimplicialComplex, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FoldingError {
    #[error("vertex {0} has no label")]
    MissingLabel(u32),
    #[error("label {label:#b} for vertex {vertex} does not fit in {dim} coordinates")]
    LabelOutOfRange { vertex: u32, label: u32, dim: usize },
}

/// Verification outcome: valid, or a witness cube/simplex that fails the
/// isomorphism condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FoldingVerdict<W> {
    Valid,
    Invalid { witness: W },
}

impl<W> FoldingVerdict<W> {
    pub fn is_valid(&self) -> bool {
        matches!(self, FoldingVerdict::Valid)
    }
}

/// Returned when no folding exists; the obstruction is a set of cells that
/// cannot be labelled consistently (for graphs, an odd cycle).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("complex is not foldable; obstruction through {} cells", obstruction.len())]
pub struct NotFoldable {
    pub obstruction: Vec<CubeId>,
}

/// The open face of the model cube that a cube folds onto: a mask of free
/// coordinates plus the values of the fixed ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ModelFace {
    pub free: u32,
    pub fixed: u32,
}

impl ModelFace {
    pub fn dim(&self) -> usize {
        self.free.count_ones() as usize
    }

    /// Whether this face lies inside the closed face `{x_coord = side}`.
    pub fn within_closed_face(&self, coord: u32, side: u8) -> bool {
        self.free >> coord & 1 == 0 && (self.fixed >> coord & 1) as u8 == side
    }
}

/// A folding of a cubical complex onto the model cube, given by a corner
/// label per vertex (bit `i` of a label is model coordinate `i`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicalFolding {
    pub target_dim: usize,
    labels: BTreeMap<VertexId, u32>,
}

impl CubicalFolding {
    pub fn new(target_dim: usize, labels: BTreeMap<VertexId, u32>) -> Result<Self, FoldingError> {
        for (&v, &l) in &labels {
            if target_dim < 32 && l >= 1 << target_dim {
                return Err(FoldingError::LabelOutOfRange {
                    vertex: v.0,
                    label: l,
                    dim: target_dim,
                });
            }
        }
        Ok(Self { target_dim, labels })
    }

    /// Builds labels from `(vertex, label)` pairs given as bare ids.
    pub fn from_pairs(target_dim: usize, pairs: &[(u32, u32)]) -> Result<Self, FoldingError> {
        Self::new(
            target_dim,
            pairs.iter().map(|&(v, l)| (VertexId(v), l)).collect(),
        )
    }

    pub fn label(&self, v: VertexId) -> Result<u32, FoldingError> {
        self.labels
            .get(&v)
            .copied()
            .ok_or(FoldingError::MissingLabel(v.0))
    }

    pub fn labels(&self) -> &BTreeMap<VertexId, u32> {
        &self.labels
    }

    pub fn label_string(&self, v: VertexId) -> String {
        let l = self.labels.get(&v).copied().unwrap_or(0);
        (0..self.target_dim)
            .map(|i| if l >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    /// Restriction to the vertices of a subcomplex.
    pub fn restrict_to(&self, x: &CubicalComplex) -> Self {
        let labels = x
            .vertices()
            .iter()
            .filter_map(|v| self.labels.get(v).map(|&l| (*v, l)))
            .collect();
        Self {
            target_dim: self.target_dim,
            labels,
        }
    }

    /// The open model face carrying the image of `cube`.  Only meaningful on
    /// a verified folding.
    pub fn model_face(&self, x: &CubicalComplex, cube: CubeId) -> Result<ModelFace, FoldingError> {
        let t = x.cube(cube);
        let base = self.label(t[0])?;
        let k = x.cube_dim(cube);
        let mut free = 0u32;
        for j in 0..k {
            free |= base ^ self.label(t[1 << j])?;
        }
        Ok(ModelFace {
            free,
            fixed: base & !free,
        })
    }
}

impl fmt::Display for CubicalFolding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (&v, _) in &self.labels {
            writeln!(f, "{v} -> {}", self.label_string(v))?;
        }
        Ok(())
    }
}

/// True iff every cube maps isomorphically onto a face of the model cube:
/// over each cube the labels agree outside `k` coordinates, realize all
/// combinations inside them, and respect the corner structure.
pub fn verify_folding(
    x: &CubicalComplex,
    f: &CubicalFolding,
) -> Result<FoldingVerdict<CubeId>, FoldingError> {
    for &v in &x.vertices() {
        f.label(v)?;
    }
    // top-down so the witness is a maximal offending cube
    let mut ids: Vec<CubeId> = (0..x.cube_count()).map(CubeId).collect();
    ids.sort_by_key(|&c| (std::cmp::Reverse(x.cube_dim(c)), c));
    for id in ids {
        if !cube_maps_isomorphically(x, f, id)? {
            return Ok(FoldingVerdict::Invalid { witness: id });
        }
    }
    Ok(FoldingVerdict::Valid)
}

fn cube_maps_isomorphically(
    x: &CubicalComplex,
    f: &CubicalFolding,
    id: CubeId,
) -> Result<bool, FoldingError> {
    let t = x.cube(id);
    let k = x.cube_dim(id);
    let base = f.label(t[0])?;
    let mut dirs = Vec::with_capacity(k);
    for j in 0..k {
        let d = f.label(t[1 << j])? ^ base;
        if d.count_ones() != 1 || dirs.contains(&d) {
            return Ok(false);
        }
        dirs.push(d);
    }
    for c in 0..t.len() {
        let mut expect = base;
        for (j, d) in dirs.iter().enumerate() {
            if c >> j & 1 == 1 {
                expect ^= d;
            }
        }
        if f.label(t[c])? != expect {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Computes a folding of a homogeneous cubical complex by backtracking over
/// cube placements.  The first top cube (in canonical order) is pinned to the
/// identity labelling to kill the model-cube symmetry group; remaining cubes
/// are visited in BFS order and candidate placements are tried smallest
/// labels first, so the result is deterministic.
pub fn compute_folding(x: &CubicalComplex) -> Result<CubicalFolding, NotFoldable> {
    let Some(n) = x.dim() else {
        return Ok(CubicalFolding {
            target_dim: 0,
            labels: BTreeMap::new(),
        });
    };

    // BFS over maximal cubes through shared vertices
    let maximal = x.maximal_cubes();
    let mut vertex_to_max: BTreeMap<VertexId, Vec<CubeId>> = BTreeMap::new();
    for &m in &maximal {
        for &v in x.cube(m) {
            vertex_to_max.entry(v).or_default().push(m);
        }
    }
    let mut order: Vec<CubeId> = Vec::new();
    let mut seen: BTreeSet<CubeId> = BTreeSet::new();
    let mut parent: BTreeMap<CubeId, CubeId> = BTreeMap::new();
    for &root in &maximal {
        if seen.contains(&root) {
            continue;
        }
        let mut queue = VecDeque::from([root]);
        seen.insert(root);
        while let Some(c) = queue.pop_front() {
            order.push(c);
            for &v in x.cube(c) {
                for &m in &vertex_to_max[&v] {
                    if seen.insert(m) {
                        parent.insert(m, c);
                        queue.push_back(m);
                    }
                }
            }
        }
    }

    let mut labels: BTreeMap<VertexId, u32> = BTreeMap::new();
    let mut labelled_by: BTreeMap<VertexId, CubeId> = BTreeMap::new();
    let mut deepest_fail: Option<usize> = None;
    if search(x, n, &order, 0, &mut labels, &mut labelled_by, &mut deepest_fail) {
        return Ok(CubicalFolding {
            target_dim: n,
            labels,
        });
    }
    // reconstruct an obstruction: the failing cube plus the BFS ancestry of
    // the cubes that pinned its vertices (for graphs this is an odd cycle)
    let fail_at = deepest_fail.unwrap_or(0);
    let fail_cube = order[fail_at];
    let mut labels = BTreeMap::new();
    let mut labelled_by = BTreeMap::new();
    greedy_prefix(x, n, &order, fail_at, &mut labels, &mut labelled_by);
    let mut obstruction: BTreeSet<CubeId> = BTreeSet::from([fail_cube]);
    let climb = |mut c: CubeId, obstruction: &mut BTreeSet<CubeId>| {
        obstruction.insert(c);
        while let Some(&p) = parent.get(&c) {
            obstruction.insert(p);
            c = p;
        }
    };
    climb(fail_cube, &mut obstruction);
    for &v in x.cube(fail_cube) {
        if let Some(&src) = labelled_by.get(&v) {
            climb(src, &mut obstruction);
        }
    }
    Err(NotFoldable {
        obstruction: obstruction.into_iter().collect(),
    })
}

fn search(
    x: &CubicalComplex,
    n: usize,
    order: &[CubeId],
    at: usize,
    labels: &mut BTreeMap<VertexId, u32>,
    labelled_by: &mut BTreeMap<VertexId, CubeId>,
    deepest_fail: &mut Option<usize>,
) -> bool {
    if at == order.len() {
        return true;
    }
    let cube = order[at];
    let mut any = false;
    for placement in placements(x, n, cube, labels, at == 0) {
        any = true;
        let mut added = Vec::new();
        for (v, l) in placement {
            if labels.insert(v, l).is_none() {
                labelled_by.insert(v, cube);
                added.push(v);
            }
        }
        if search(x, n, order, at + 1, labels, labelled_by, deepest_fail) {
            return true;
        }
        for v in added {
            labels.remove(&v);
            labelled_by.remove(&v);
        }
    }
    if !any && deepest_fail.map_or(true, |d| at > d) {
        *deepest_fail = Some(at);
    }
    false
}

fn greedy_prefix(
    x: &CubicalComplex,
    n: usize,
    order: &[CubeId],
    upto: usize,
    labels: &mut BTreeMap<VertexId, u32>,
    labelled_by: &mut BTreeMap<VertexId, CubeId>,
) {
    for (at, &cube) in order.iter().take(upto).enumerate() {
        if let Some(placement) = placements(x, n, cube, labels, at == 0).into_iter().next() {
            for (v, l) in placement {
                if labels.insert(v, l).is_none() {
                    labelled_by.insert(v, cube);
                }
            }
        }
    }
}

/// All ways to label `cube`'s vertices as an isomorphism onto a model face,
/// consistent with the labels already assigned.  Pinning restricts the first
/// cube to the identity placement.
fn placements(
    x: &CubicalComplex,
    n: usize,
    cube: CubeId,
    labels: &BTreeMap<VertexId, u32>,
    pin_identity: bool,
) -> Vec<Vec<(VertexId, u32)>> {
    let t = x.cube(cube);
    let k = x.cube_dim(cube);
    let mut out: Vec<(Vec<u32>, Vec<(VertexId, u32)>)> = Vec::new();

    // choose the image directions (one model coordinate per cube coordinate),
    // a flip per direction, and values for the fixed model coordinates
    let coords: Vec<u32> = (0..n as u32).collect();
    for dirs in permutations_of_subsets(&coords, k) {
        for flip in 0..1u32 << k {
            for fixed_vals in 0..1u32 << (n - k) {
                if pin_identity && (dirs != (0..k as u32).collect::<Vec<_>>() || flip != 0 || fixed_vals != 0)
                {
                    continue;
                }
                let free_mask: u32 = dirs.iter().map(|&d| 1 << d).sum();
                let fixed = spread_into_mask(fixed_vals, !free_mask & ((1u32 << n) - 1));
                let mut assignment = Vec::with_capacity(t.len());
                let mut ok = true;
                for (c, &v) in t.iter().enumerate() {
                    let mut l = fixed;
                    for (j, &d) in dirs.iter().enumerate() {
                        if (c >> j & 1) as u32 ^ (flip >> j & 1) == 1 {
                            l |= 1 << d;
                        }
                    }
                    if let Some(&prev) = labels.get(&v) {
                        if prev != l {
                            ok = false;
                            break;
                        }
                    }
                    assignment.push((v, l));
                }
                if ok {
                    // sort key: labels of the new vertices in vertex-id order
                    let mut key: Vec<(VertexId, u32)> = assignment
                        .iter()
                        .filter(|(v, _)| !labels.contains_key(v))
                        .copied()
                        .collect();
                    key.sort();
                    out.push((key.iter().map(|&(_, l)| l).collect(), assignment));
                }
            }
        }
    }
    out.sort();
    out.dedup_by(|a, b| a.1 == b.1);
    out.into_iter().map(|(_, a)| a).collect()
}

fn permutations_of_subsets(coords: &[u32], k: usize) -> Vec<Vec<u32>> {
    use itertools::Itertools;
    coords.iter().copied().permutations(k).collect()
}

fn spread_into_mask(packed: u32, mask: u32) -> u32 {
    let mut out = 0;
    let mut j = 0;
    for i in 0..32 {
        if mask >> i & 1 == 1 {
            out |= (packed >> j & 1) << i;
            j += 1;
        }
    }
    out
}

/// A folding of a simplicial complex onto the model simplex: a colouring of
/// the vertices that is injective on every simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialFolding {
    pub target_dim: usize,
    colors: BTreeMap<VertexId, u32>,
}

impl SimplicialFolding {
    pub fn new(target_dim: usize, colors: BTreeMap<VertexId, u32>) -> Self {
        Self { target_dim, colors }
    }

    pub fn color(&self, v: VertexId) -> Result<u32, FoldingError> {
        self.colors
            .get(&v)
            .copied()
            .ok_or(FoldingError::MissingLabel(v.0))
    }

    pub fn colors(&self) -> &BTreeMap<VertexId, u32> {
        &self.colors
    }
}

pub fn verify_simplicial_folding(
    k: &SimplicialComplex,
    f: &SimplicialFolding,
) -> Result<FoldingVerdict<SimplexId>, FoldingError> {
    for &v in &k.vertices() {
        let c = f.color(v)?;
        if c as usize > f.target_dim {
            return Ok(FoldingVerdict::Invalid {
                witness: k.id_of(&[v]).expect("vertex exists"),
            });
        }
    }
    for (id, s) in k.simplices() {
        let mut seen = BTreeSet::new();
        for &v in s {
            if !seen.insert(f.color(v)?) {
                return Ok(FoldingVerdict::Invalid { witness: id });
            }
        }
    }
    Ok(FoldingVerdict::Valid)
}

/// Rainbow colouring of a homogeneous simplicial complex with `dim + 1`
/// colours: backtracking over vertices in id order, smallest colour first,
/// which returns the lexicographically smallest colouring.  On barycentric
/// subdivisions this is exactly the dimension colouring.
pub fn simplicial_folding(k: &SimplicialComplex) -> Result<SimplicialFolding, NotFoldable> {
    let Some(n) = k.dim() else {
        return Ok(SimplicialFolding::new(0, BTreeMap::new()));
    };
    let verts = k.vertices();
    // adjacency in the 1-skeleton
    let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
    for id in k.simplices_of_dim(1) {
        let e = k.simplex(id);
        adj.entry(e[0]).or_default().insert(e[1]);
        adj.entry(e[1]).or_default().insert(e[0]);
    }
    let mut colors: BTreeMap<VertexId, u32> = BTreeMap::new();
    if color_search(&verts, &adj, n as u32 + 1, 0, &mut colors) {
        return Ok(SimplicialFolding::new(n, colors));
    }
    // obstruction: the first vertex at which the greedy colouring runs out,
    // together with its already-coloured neighbourhood
    let mut colors = BTreeMap::new();
    let mut blocked = verts[0];
    for &v in &verts {
        let used: BTreeSet<u32> = adj
            .get(&v)
            .map(|ns| ns.iter().filter_map(|u| colors.get(u).copied()).collect())
            .unwrap_or_default();
        match (0..=n as u32).find(|c| !used.contains(c)) {
            Some(c) => {
                colors.insert(v, c);
            }
            None => {
                blocked = v;
                break;
            }
        }
    }
    let mut cells: Vec<CubeId> = Vec::new();
    if let Some(ns) = adj.get(&blocked) {
        for (i, &v) in verts.iter().enumerate() {
            if v == blocked || ns.contains(&v) {
                cells.push(CubeId(i));
            }
        }
    }
    Err(NotFoldable { obstruction: cells })
}

fn color_search(
    verts: &[VertexId],
    adj: &BTreeMap<VertexId, BTreeSet<VertexId>>,
    n_colors: u32,
    at: usize,
    colors: &mut BTreeMap<VertexId, u32>,
) -> bool {
    if at == verts.len() {
        return true;
    }
    let v = verts[at];
    let used: BTreeSet<u32> = adj
        .get(&v)
        .map(|ns| ns.iter().filter_map(|u| colors.get(u).copied()).collect())
        .unwrap_or_default();
    for c in 0..n_colors {
        if used.contains(&c) {
            continue;
        }
        colors.insert(v, c);
        if color_search(verts, adj, n_colors, at + 1, colors) {
            return true;
        }
        colors.remove(&v);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::BarycentricSubdivision;
    use crate::fixtures;

    #[test]
    fn identity_square_folding_verifies() {
        let x = CubicalComplex::from_vertex_tuples(&[vec![0, 1, 2, 3]]).unwrap();
        let f = CubicalFolding::from_pairs(2, &[(0, 0b00), (1, 0b01), (2, 0b10), (3, 0b11)])
            .unwrap();
        assert!(verify_folding(&x, &f).unwrap().is_valid());
    }

    #[test]
    fn repeated_label_fails_with_witness() {
        let x = CubicalComplex::from_vertex_tuples(&[vec![0, 1, 2, 3]]).unwrap();
        let f = CubicalFolding::from_pairs(2, &[(0, 0b00), (1, 0b01), (2, 0b10), (3, 0b01)])
            .unwrap();
        match verify_folding(&x, &f).unwrap() {
            FoldingVerdict::Invalid { witness } => assert_eq!(x.cube_dim(witness), 2),
            FoldingVerdict::Valid => panic!("expected failure"),
        }
    }

    #[test]
    fn missing_label_is_an_error() {
        let x = CubicalComplex::from_vertex_tuples(&[vec![0, 1, 2, 3]]).unwrap();
        let f = CubicalFolding::from_pairs(2, &[(0, 0), (1, 1)]).unwrap();
        assert!(matches!(
            verify_folding(&x, &f),
            Err(FoldingError::MissingLabel(_))
        ));
    }

    #[test]
    fn grid_mod_two_labels_verify() {
        let (x, f) = fixtures::folded_grid(2, 2);
        assert!(verify_folding(&x, &f).unwrap().is_valid());
    }

    #[test]
    fn three_cycle_is_not_foldable() {
        let x = fixtures::cubical_cycle(3);
        let err = compute_folding(&x).unwrap_err();
        // the obstruction is the whole odd cycle
        assert_eq!(err.obstruction.len(), 3);
        for c in err.obstruction {
            assert_eq!(x.cube_dim(c), 1);
        }
    }

    #[test]
    fn four_cycle_folds_alternating() {
        let x = fixtures::cubical_cycle(4);
        let f = compute_folding(&x).unwrap();
        assert!(verify_folding(&x, &f).unwrap().is_valid());
        let l: Vec<u32> = (0..4).map(|v| f.label(VertexId(v)).unwrap()).collect();
        assert_eq!(l, vec![0, 1, 0, 1]);
    }

    #[test]
    fn strip_folds_deterministically_to_parity_labels() {
        let (x, _) = fixtures::folded_grid(2, 1);
        let f = compute_folding(&x).unwrap();
        assert!(verify_folding(&x, &f).unwrap().is_valid());
        let again = compute_folding(&x).unwrap();
        assert_eq!(f, again);
        // the pinned search lands on the (i mod 2, j) labelling
        let labels: Vec<String> = (0..6).map(|v| f.label_string(VertexId(v))).collect();
        assert_eq!(labels, ["00", "10", "00", "01", "11", "01"]);
    }

    #[test]
    fn computed_foldings_round_trip_on_fixtures() {
        for x in [
            fixtures::grid(2, 2),
            fixtures::grid(3, 3),
            fixtures::grid(2, 1),
            fixtures::torus(4, 4),
            fixtures::cubical_cone_over_cycle(6),
            fixtures::cuboid(2, 2, 1),
        ] {
            let f = compute_folding(&x).unwrap();
            assert!(verify_folding(&x, &f).unwrap().is_valid());
        }
    }

    #[test]
    fn model_face_assignment_consistent_across_facets() {
        let (x, f) = fixtures::folded_grid(3, 2);
        for (id, _) in x.cubes() {
            let face = f.model_face(&x, id).unwrap();
            for &g in x.facets(id) {
                let sub = f.model_face(&x, g).unwrap();
                assert_eq!(sub.free & !face.free, 0);
                assert_eq!(sub.free.count_ones() + 1, face.free.count_ones());
                assert_eq!(sub.fixed & !face.free, face.fixed);
            }
        }
    }

    #[test]
    fn folding_restricts_to_subcomplexes() {
        let (x, f) = fixtures::folded_grid(3, 3);
        // the left 1x3 column of squares is a subcomplex
        let sub = CubicalComplex::from_cubes(
            x.vertex_names().to_vec(),
            x.cubes_of_dim(2)
                .into_iter()
                .filter(|&c| x.cube(c).iter().all(|v| v.0 % 4 <= 1))
                .map(|c| x.cube(c).to_vec())
                .collect(),
        )
        .unwrap();
        let g = f.restrict_to(&sub);
        assert!(verify_folding(&sub, &g).unwrap().is_valid());
    }

    #[test]
    fn dimension_coloring_of_barycentric_subdivision() {
        let tri = SimplicialComplex::from_vertex_sets(&[vec![0, 1, 2]]).unwrap();
        let b = tri.barycentric_subdivision();
        let f = simplicial_folding(&b).unwrap();
        let dims = tri.barycentric_vertex_dims();
        for (i, &d) in dims.iter().enumerate() {
            assert_eq!(f.color(VertexId(i as u32)).unwrap(), d as u32);
        }
        assert!(verify_simplicial_folding(&b, &f).unwrap().is_valid());
    }

    #[test]
    fn tetrahedron_boundary_is_not_rainbow_colorable() {
        let x = SimplicialComplex::from_vertex_sets(&[
            vec![0, 1, 2],
            vec![0, 1, 3],
            vec![0, 2, 3],
            vec![1, 2, 3],
        ])
        .unwrap();
        assert!(simplicial_folding(&x).is_err());
    }

    #[test]
    fn octahedron_folds_by_antipodal_pairs() {
        let x = fixtures::octahedron();
        let f = simplicial_folding(&x).unwrap();
        assert!(verify_simplicial_folding(&x, &f).unwrap().is_valid());
        // each colour class is an antipodal pair
        for c in 0..3 {
            let class: Vec<u32> = (0..6)
                .filter(|&v| f.color(VertexId(v)).unwrap() == c)
                .collect();
            assert_eq!(class.len(), 2);
            assert_eq!(class[0] ^ 1, class[1]);
        }
    }
}
