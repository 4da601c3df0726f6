//! The cubical complex dual to a stratification.
//!
//! Vertices are the stratification's cells, edges its codimension-1
//! inclusions, and a `k`-cube is filled over every poset interval of
//! codimension `k` that is Boolean of rank `k`.  The constructive rule is the
//! interval criterion; the 1-skeleton criterion ("a cube is glued in whenever
//! its 1-skeleton appears") is verified afterwards, and a discrepancy is a
//! hard failure.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use thiserror::Error;

use crate::complex::{ComplexError, CubeId, CubicalComplex, VertexId};
use crate::strata::{CellId, Mirror, Stratification};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualError {
    #[error("branch cell {0:?} is not a 0-cell of the stratification")]
    BranchCellNotVertex(CellId),
    #[error("interval [{0:?}, {1:?}] is not Boolean")]
    IntervalNotBoolean(CellId, CellId),
    #[error("mirror does not belong to this stratification")]
    ForeignMirror,
    #[error("cell {0:?} is not a tile")]
    NotATile(CellId),
    #[error("dual carrier failed to assemble: {0}")]
    Carrier(#[from] ComplexError),
    #[error("height rule violated on cube {0:?}")]
    HeightRule(CubeId),
    #[error("induced cube skeleton on {0:?} bounds no filled cube")]
    SkeletonUnfilled(Vec<VertexId>),
    #[error("not a cover of these duals: {0}")]
    NotACover(String),
}

/// Cube complex dual to a stratification.  Dual vertex ids are the
/// stratification's cell ids, with no renumbering.
#[derive(Clone, Debug)]
pub struct DualComplex {
    pub carrier: CubicalComplex,
    /// `height[v]` is the dimension of the cell dual to vertex `v`.
    pub height: Vec<usize>,
    /// Dual vertices marked as branch vertices; always of height 0.
    pub branch: BTreeSet<VertexId>,
    pub strat: Arc<Stratification>,
    /// Intervals that failed the Boolean test and were left unfilled.
    pub non_boolean_intervals: Vec<(CellId, CellId)>,
    tile_vertex_sets: Vec<(CellId, BTreeSet<VertexId>)>,
    mirror_vertex_sets: Vec<BTreeSet<VertexId>>,
}

/// Builds the dual complex.  Branch cells must be 0-cells; they only set
/// vertex flags, the carrier does not depend on them.
pub fn dualize(
    strat: &Arc<Stratification>,
    branch_cells: &BTreeSet<CellId>,
) -> Result<DualComplex, DualError> {
    for &b in branch_cells {
        if strat.cell(b).dim != 0 {
            return Err(DualError::BranchCellNotVertex(b));
        }
    }
    let base = strat.base();
    let n_cells = strat.cell_count();

    // upward reachability in the cell poset, by descending dimension
    let mut above: Vec<BTreeSet<CellId>> = vec![BTreeSet::new(); n_cells];
    let mut order: Vec<CellId> = (0..n_cells).map(CellId).collect();
    order.sort_by_key(|&c| std::cmp::Reverse(strat.cell(c).dim));
    for &c in &order {
        let mut set = BTreeSet::from([c]);
        for &u in strat.up(c) {
            set.extend(above[u.idx()].iter().copied());
        }
        above[c.idx()] = set;
    }

    let names: Vec<String> = (0..n_cells)
        .map(|i| base.describe(strat.cube_of_cell(CellId(i))))
        .collect();
    let mut cubes: Vec<Vec<VertexId>> = (0..n_cells).map(|i| vec![VertexId(i as u32)]).collect();
    let mut non_boolean = Vec::new();
    for lo in (0..n_cells).map(CellId) {
        for &hi in above[lo.idx()].iter() {
            if hi == lo {
                continue;
            }
            let interval: BTreeSet<CellId> = above[lo.idx()]
                .iter()
                .copied()
                .filter(|g| above[g.idx()].contains(&hi))
                .collect();
            match interval_cube(strat, lo, hi, &interval) {
                Some(tuple) => cubes.push(tuple),
                None => non_boolean.push((lo, hi)),
            }
        }
    }
    let carrier = CubicalComplex::from_cubes(names, cubes)?;
    let height: Vec<usize> = (0..n_cells).map(|i| strat.cell(CellId(i)).dim).collect();
    let branch: BTreeSet<VertexId> = branch_cells
        .iter()
        .map(|c| VertexId(c.idx() as u32))
        .collect();
    let vertex_of_cell = |c: CellId| VertexId(c.idx() as u32);
    let tile_vertex_sets: Vec<(CellId, BTreeSet<VertexId>)> = strat
        .tiles()
        .iter()
        .map(|&tile| {
            let set = base
                .faces(strat.cube_of_cell(tile))
                .iter()
                .map(|&c| vertex_of_cell(strat.cell_of_cube(c)))
                .collect();
            (tile, set)
        })
        .collect();
    let mirror_vertex_sets: Vec<BTreeSet<VertexId>> = strat
        .mirrors()
        .iter()
        .map(|m| {
            m.carrier
                .iter()
                .map(|&c| vertex_of_cell(strat.cell_of_cube(c)))
                .collect()
        })
        .collect();
    let dual = DualComplex {
        carrier,
        height,
        branch,
        strat: Arc::clone(strat),
        non_boolean_intervals: non_boolean,
        tile_vertex_sets,
        mirror_vertex_sets,
    };
    dual.verify_heights()?;
    dual.verify_skeleton_filling()?;
    Ok(dual)
}

/// Corner tuple of the dual cube over the interval `[lo, hi]`, or `None` when
/// the interval is not Boolean of the right rank.
fn interval_cube(
    strat: &Stratification,
    lo: CellId,
    hi: CellId,
    interval: &BTreeSet<CellId>,
) -> Option<Vec<VertexId>> {
    let base = strat.base();
    let k = strat.cell(hi).dim - strat.cell(lo).dim;
    if interval.len() != 1 << k {
        return None;
    }
    let lo_cube = strat.cube_of_cell(lo);
    let hi_cube = strat.cube_of_cell(hi);
    let (fixed_mask, fixed_vals) = base.embed_face(lo_cube, hi_cube)?;
    // dual coordinates are the fixed coordinates of `lo` inside `hi`, in
    // ascending order; corner `c` frees the coordinates selected by `c`
    let dirs: Vec<u32> = (0..32).filter(|i| fixed_mask >> i & 1 == 1).collect();
    let mut tuple = Vec::with_capacity(1 << k);
    for c in 0..1usize << k {
        let freed: u32 = dirs
            .iter()
            .enumerate()
            .filter(|(j, _)| c >> j & 1 == 1)
            .map(|(_, &d)| 1 << d)
            .sum();
        let mask = fixed_mask & !freed;
        let face = base.face_id(hi_cube, mask, fixed_vals & mask);
        let cell = strat.cell_of_cube(face);
        if !interval.contains(&cell) {
            return None;
        }
        tuple.push(VertexId(cell.idx() as u32));
    }
    let corner_set: BTreeSet<VertexId> = tuple.iter().copied().collect();
    if corner_set.len() != interval.len() {
        return None;
    }
    Some(tuple)
}

impl DualComplex {
    pub fn vertex_count(&self) -> usize {
        self.height.len()
    }

    pub fn cell_of_vertex(&self, v: VertexId) -> CellId {
        CellId(v.idx())
    }

    pub fn vertex_of_cell(&self, c: CellId) -> VertexId {
        VertexId(c.idx() as u32)
    }

    pub fn is_branch(&self, v: VertexId) -> bool {
        self.branch.contains(&v)
    }

    /// Dual vertices of the cells lying in a mirror.
    pub fn dual_mirror_vertices(&self, mirror: &Mirror) -> Result<BTreeSet<VertexId>, DualError> {
        let id = self
            .strat
            .mirror_id_of(mirror)
            .ok_or(DualError::ForeignMirror)?;
        Ok(self.mirror_vertex_sets[id.idx()].clone())
    }

    /// Precomputed dual vertex set of a mirror, by id.
    pub fn mirror_vertices(&self, id: crate::strata::MirrorId) -> &BTreeSet<VertexId> {
        &self.mirror_vertex_sets[id.idx()]
    }

    /// Precomputed dual vertex sets of every tile's 1-neighbourhood.
    pub fn tile_vertex_sets(&self) -> &[(CellId, BTreeSet<VertexId>)] {
        &self.tile_vertex_sets
    }

    /// Full subcomplex of the carrier on the vertices dual to a mirror.
    pub fn dual_mirror(&self, mirror: &Mirror) -> Result<CubicalComplex, DualError> {
        let keep = self.dual_mirror_vertices(mirror)?;
        Ok(self.full_subcomplex(&keep))
    }

    /// Vertex set of the cubical 1-neighborhood of a tile's dual vertex: the
    /// cells contained in the closure of the tile.
    pub fn dual_tile_vertices(&self, tile: CellId) -> Result<BTreeSet<VertexId>, DualError> {
        if !self.strat.tiles().contains(&tile) {
            return Err(DualError::NotATile(tile));
        }
        let tile_cube = self.strat.cube_of_cell(tile);
        Ok(self
            .strat
            .base()
            .faces(tile_cube)
            .iter()
            .map(|&c| self.vertex_of_cell(self.strat.cell_of_cube(c)))
            .collect())
    }

    /// Union of all carrier cubes containing the tile's dual vertex.
    pub fn dual_tile(&self, tile: CellId) -> Result<CubicalComplex, DualError> {
        if !self.strat.tiles().contains(&tile) {
            return Err(DualError::NotATile(tile));
        }
        let v = self.vertex_of_cell(tile);
        let cubes: Vec<Vec<VertexId>> = self
            .carrier
            .cubes()
            .filter(|(_, t)| t.contains(&v))
            .map(|(_, t)| t.to_vec())
            .collect();
        Ok(
            CubicalComplex::from_cubes(self.carrier.vertex_names().to_vec(), cubes)
                .expect("subfamily of a valid complex"),
        )
    }

    pub fn full_subcomplex(&self, keep: &BTreeSet<VertexId>) -> CubicalComplex {
        let cubes: Vec<Vec<VertexId>> = self
            .carrier
            .cubes()
            .filter(|(_, t)| t.iter().all(|v| keep.contains(v)))
            .map(|(_, t)| t.to_vec())
            .collect();
        CubicalComplex::from_cubes(self.carrier.vertex_names().to_vec(), cubes)
            .expect("subfamily of a valid complex")
    }

    /// Every edge joins consecutive heights and every cube has unique extremal
    /// vertices whose heights differ by its dimension.
    pub fn verify_heights(&self) -> Result<(), DualError> {
        for (id, t) in self.carrier.cubes() {
            let k = self.carrier.cube_dim(id);
            if k == 0 {
                continue;
            }
            let hs: Vec<usize> = t.iter().map(|v| self.height[v.idx()]).collect();
            if k == 1 && hs[0].abs_diff(hs[1]) != 1 {
                return Err(DualError::HeightRule(id));
            }
            let min = *hs.iter().min().unwrap();
            let max = *hs.iter().max().unwrap();
            let mins = hs.iter().filter(|&&h| h == min).count();
            let maxes = hs.iter().filter(|&&h| h == max).count();
            if mins != 1 || maxes != 1 || max - min != k {
                return Err(DualError::HeightRule(id));
            }
        }
        Ok(())
    }

    /// The vertex of minimal height of a carrier cube.
    pub fn min_vertex(&self, cube: CubeId) -> VertexId {
        *self
            .carrier
            .cube(cube)
            .iter()
            .min_by_key(|v| self.height[v.idx()])
            .unwrap()
    }

    pub fn max_vertex(&self, cube: CubeId) -> VertexId {
        *self
            .carrier
            .cube(cube)
            .iter()
            .max_by_key(|v| self.height[v.idx()])
            .unwrap()
    }

    /// Checks that the interval filling coincides with the paper-style
    /// 1-skeleton criterion: every induced subgraph of the carrier 1-skeleton
    /// isomorphic to the 1-skeleton of a `k`-cube bounds a filled `k`-cube.
    pub fn verify_skeleton_filling(&self) -> Result<(), DualError> {
        let x = &self.carrier;
        let verts = x.vertices();
        let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> =
            verts.iter().map(|&v| (v, BTreeSet::new())).collect();
        for e in x.cubes_of_dim(1) {
            let t = x.cube(e);
            adj.get_mut(&t[0]).unwrap().insert(t[1]);
            adj.get_mut(&t[1]).unwrap().insert(t[0]);
        }
        let edge_count_within = |set: &BTreeSet<VertexId>| -> usize {
            set.iter()
                .map(|v| adj[v].iter().filter(|u| set.contains(u)).count())
                .sum::<usize>()
                / 2
        };

        let max_dim = x.dim().unwrap_or(0);
        // grow cube skeleta dimension by dimension
        let mut level: Vec<Vec<VertexId>> = Vec::new();
        for e in x.cubes_of_dim(1) {
            let t = x.cube(e);
            level.push(vec![t[0], t[1]]);
            level.push(vec![t[1], t[0]]);
        }
        for k in 2..=max_dim {
            let mut found: BTreeMap<Vec<VertexId>, Vec<VertexId>> = BTreeMap::new();
            for s in &level {
                let used: BTreeSet<VertexId> = s.iter().copied().collect();
                for &v in &adj[&s[0]] {
                    if used.contains(&v) {
                        continue;
                    }
                    let mut t = vec![VertexId(u32::MAX); s.len()];
                    t[0] = v;
                    extend_opposite_face(&adj, s, &mut t, 1, &mut |t: &[VertexId]| {
                        let mut tuple = s.clone();
                        tuple.extend_from_slice(t);
                        let mut key: Vec<VertexId> = tuple.clone();
                        key.sort();
                        if key.windows(2).all(|w| w[0] != w[1]) {
                            found.entry(key).or_insert(tuple);
                        }
                    });
                }
            }
            for (key, _) in &found {
                let set: BTreeSet<VertexId> = key.iter().copied().collect();
                if edge_count_within(&set) != k * (1 << (k - 1)) {
                    continue; // extra chords: not an induced cube skeleton
                }
                let filled = x.id_of_set(key).is_some_and(|c| x.cube_dim(c) == k);
                if !filled {
                    return Err(DualError::SkeletonUnfilled(key.clone()));
                }
            }
            level = found.into_values().collect();
        }
        Ok(())
    }
}

/// Per-check outcome of [`branched_dual_consistency`].
#[derive(Clone, Debug)]
pub struct DualConsistencyReport {
    /// Every carrier cube of the total dual maps to a cube of the base dual.
    pub combinatorial: bool,
    /// Links at non-branch vertices map isomorphically.
    pub links_bijective_away_from_branch: bool,
    /// Links at branch vertices are coverings of the base cone links, with
    /// constant fiber equal to the local degree.
    pub branch_links_cover: bool,
    pub branch_link_degrees: Vec<(VertexId, usize)>,
}

impl DualConsistencyReport {
    pub fn pass(&self) -> bool {
        self.combinatorial && self.links_bijective_away_from_branch && self.branch_links_cover
    }
}

/// Verifies that a (branched) cover of stratified complexes induces a
/// combinatorial map of dual complexes which is bijective on links away from
/// the branch vertices and a finite-degree covering of links at them.
pub fn branched_dual_consistency(
    d_total: &DualComplex,
    d_base: &DualComplex,
    cover: &crate::covers::CoverProjection<CubicalComplex>,
) -> Result<DualConsistencyReport, DualError> {
    if !cover.total.same_cells(d_total.strat.base()) || !cover.base.same_cells(d_base.strat.base())
    {
        return Err(DualError::NotACover(
            "cover endpoints do not match the stratified complexes".into(),
        ));
    }
    cover
        .verify()
        .map_err(|e| DualError::NotACover(e.to_string()))?;
    // induced map on dual vertices: cells are cubes, so push cubes forward
    let m: Vec<VertexId> = (0..d_total.vertex_count())
        .map(|i| {
            let cube = d_total.strat.cube_of_cell(CellId(i));
            let image = cover.cell_map[cube.idx()];
            d_base.vertex_of_cell(d_base.strat.cell_of_cube(CubeId(image)))
        })
        .collect();
    for &b in &d_total.branch {
        if !d_base.is_branch(m[b.idx()]) {
            return Err(DualError::NotACover(format!(
                "branch vertex {b} maps to a non-branch vertex"
            )));
        }
    }

    let mut combinatorial = true;
    for (id, tuple) in d_total.carrier.cubes() {
        let image: Vec<VertexId> = tuple.iter().map(|v| m[v.idx()]).collect();
        let ok = d_base
            .carrier
            .id_of(&image)
            .is_some_and(|c| d_base.carrier.cube_dim(c) == d_total.carrier.cube_dim(id));
        if !ok {
            combinatorial = false;
        }
    }

    let mut links_ok = true;
    let mut branch_ok = true;
    let mut branch_link_degrees = Vec::new();
    for v in d_total.carrier.vertices() {
        let w = m[v.idx()];
        let lv = crate::curvature::vertex_link(&d_total.carrier, v).expect("vertex exists");
        let lw = crate::curvature::vertex_link(&d_base.carrier, w).expect("vertex exists");
        // link vertices are dual edges; map one to the other through m
        let mut link_map: Vec<VertexId> = Vec::with_capacity(lv.vertex_edges.len());
        let mut total_ok = true;
        for &e in &lv.vertex_edges {
            let other = *d_total
                .carrier
                .cube(e)
                .iter()
                .find(|u| **u != v)
                .expect("edge has two endpoints");
            let image_edge = d_base.carrier.edge_cube(w, m[other.idx()]);
            match image_edge.and_then(|ie| lw.vertex_edges.iter().position(|&c| c == ie)) {
                Some(j) => link_map.push(VertexId(j as u32)),
                None => {
                    total_ok = false;
                    break;
                }
            }
        }
        if !total_ok {
            if d_total.is_branch(v) {
                branch_ok = false;
            } else {
                links_ok = false;
            }
            continue;
        }
        if d_total.is_branch(v) {
            if !crate::curvature::is_simplicial_covering(&lv.complex, &lw.complex, &link_map) {
                branch_ok = false;
                continue;
            }
            // constant fiber size over the base link
            let mut fibers: BTreeMap<VertexId, usize> = BTreeMap::new();
            for &img in &link_map {
                *fibers.entry(img).or_insert(0) += 1;
            }
            let sizes: BTreeSet<usize> = fibers.values().copied().collect();
            if sizes.len() != 1 {
                branch_ok = false;
                continue;
            }
            branch_link_degrees.push((v, *sizes.iter().next().unwrap()));
        } else {
            let distinct: BTreeSet<VertexId> = link_map.iter().copied().collect();
            let bijective = distinct.len() == link_map.len()
                && link_map.len() == lw.vertex_edges.len()
                && lv.complex.simplex_count() == lw.complex.simplex_count()
                && lv.complex.simplices().all(|(_, s)| {
                    let img: Vec<VertexId> = s.iter().map(|u| link_map[u.idx()]).collect();
                    lw.complex.contains(&img)
                });
            if !bijective {
                links_ok = false;
            }
        }
    }
    Ok(DualConsistencyReport {
        combinatorial,
        links_bijective_away_from_branch: links_ok,
        branch_links_cover: branch_ok,
        branch_link_degrees,
    })
}

/// Completes the opposite face `t` of a grown cube skeleton: corner `c` must
/// be adjacent to every already-placed corner one bit below and to `s[c]`.
fn extend_opposite_face(
    adj: &BTreeMap<VertexId, BTreeSet<VertexId>>,
    s: &[VertexId],
    t: &mut Vec<VertexId>,
    c: usize,
    emit: &mut impl FnMut(&[VertexId]),
) {
    if c == s.len() {
        emit(t);
        return;
    }
    let below: Vec<VertexId> = (0..usize::BITS as usize)
        .filter(|&j| c >> j & 1 == 1)
        .map(|j| t[c ^ (1 << j)])
        .filter(|v| v.0 != u32::MAX)
        .collect();
    let mut candidates: Vec<VertexId> = adj[&s[c]]
        .iter()
        .copied()
        .filter(|v| below.iter().all(|b| adj[b].contains(v)))
        .collect();
    candidates.retain(|v| !t[..c].contains(v) && !s.contains(v));
    for v in candidates {
        t[c] = v;
        extend_opposite_face(adj, s, t, c + 1, emit);
    }
    t[c] = VertexId(u32::MAX);
}
