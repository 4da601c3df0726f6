//! Stratification of a folded cubical complex into cells, tiles and mirrors.
//!
//! A cell is the closure of a connected component of the preimage of an open
//! model face; a mirror is a connected component of the full preimage of a
//! closed codimension-1 face, grouped into `2n` coordinate families.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use thiserror::Error;

use crate::complex::{CubeId, CubicalComplex, VertexId};
use crate::folding::{verify_folding, CubicalFolding, FoldingError, ModelFace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrataError {
    #[error("the supplied labelling is not a folding: witness cube {0:?}")]
    InvalidFolding(Option<CubeId>),
    #[error(transparent)]
    Labels(#[from] FoldingError),
    #[error("unknown vertex {0}")]
    UnknownVertex(u32),
    #[error("mirror does not belong to this stratification")]
    ForeignMirror,
}

/// Index into [`Stratification::cells`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CellId(pub usize);

impl CellId {
    pub fn idx(self) -> usize {
        self.0
    }
}

/// Index into [`Stratification::mirrors`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MirrorId(pub usize);

impl MirrorId {
    pub fn idx(self) -> usize {
        self.0
    }
}

/// One of the `2n` codimension-1 faces of the model cube.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct MirrorFamily {
    pub coord: u32,
    pub side: u8,
}

/// Closure of a connected component of the preimage of an open model face.
/// The carrier lists the cubes whose folding image is exactly that face.
#[derive(Clone, Debug)]
pub struct StratCell {
    pub dim: usize,
    pub carrier: Vec<CubeId>,
    pub model_face: ModelFace,
}

/// Connected component of the full preimage of a closed codimension-1 model
/// face; the carrier is a subcomplex, stored as a cube set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mirror {
    pub family: MirrorFamily,
    pub carrier: BTreeSet<CubeId>,
}

#[derive(Clone, Debug)]
pub struct Stratification {
    base: Arc<CubicalComplex>,
    folding: CubicalFolding,
    cells: Vec<StratCell>,
    cell_of_cube: Vec<CellId>,
    up: Vec<Vec<CellId>>,
    down: Vec<Vec<CellId>>,
    tiles: Vec<CellId>,
    mirrors: Vec<Mirror>,
    by_family: BTreeMap<MirrorFamily, Vec<MirrorId>>,
}

/// Computes the stratification of a folded complex.  Fails when the labels do
/// not verify as a folding.
pub fn stratify(
    base: Arc<CubicalComplex>,
    folding: CubicalFolding,
) -> Result<Stratification, StrataError> {
    match verify_folding(&base, &folding)? {
        crate::folding::FoldingVerdict::Valid => {}
        crate::folding::FoldingVerdict::Invalid { witness } => {
            return Err(StrataError::InvalidFolding(Some(witness)))
        }
    }
    let n_cubes = base.cube_count();
    let faces: Vec<ModelFace> = (0..n_cubes)
        .map(|i| folding.model_face(&base, CubeId(i)))
        .collect::<Result<_, _>>()?;

    // group cubes by open model face, then split each group into connected
    // components through shared faces mapping into the same open face; in an
    // embedded complex the shared-face test never merges, so cells come out
    // one per cube, but the search is the definition
    let mut groups: BTreeMap<ModelFace, Vec<CubeId>> = BTreeMap::new();
    for i in 0..n_cubes {
        groups.entry(faces[i]).or_default().push(CubeId(i));
    }
    let mut cell_of_cube: Vec<Option<CellId>> = vec![None; n_cubes];
    let mut cells: Vec<StratCell> = Vec::new();
    let mut proto: Vec<(usize, CubeId, Vec<CubeId>)> = Vec::new();
    for (face, members) in &groups {
        let mut uf = UnionFind::new(members.len());
        let pos: BTreeMap<CubeId, usize> = members.iter().enumerate().map(|(p, &c)| (c, p)).collect();
        for (p, &c) in members.iter().enumerate() {
            for (q, &d) in members.iter().enumerate().skip(p + 1) {
                if let Some(shared) = common_face(&base, c, d) {
                    if faces[shared.idx()] == *face {
                        uf.union(p, q);
                    }
                }
            }
        }
        let mut comps: BTreeMap<usize, Vec<CubeId>> = BTreeMap::new();
        for &c in members {
            comps.entry(uf.find(pos[&c])).or_default().push(c);
        }
        for comp in comps.into_values() {
            proto.push((face.dim(), comp[0], comp));
        }
    }
    proto.sort_by_key(|(d, first, _)| (*d, *first));
    for (dim, _, carrier) in proto {
        let id = CellId(cells.len());
        for &c in &carrier {
            cell_of_cube[c.idx()] = Some(id);
        }
        let model_face = faces[carrier[0].idx()];
        cells.push(StratCell {
            dim,
            carrier,
            model_face,
        });
    }
    let cell_of_cube: Vec<CellId> = cell_of_cube.into_iter().map(|c| c.unwrap()).collect();

    // codimension-1 poset relations from the facet relation of the base
    let mut up: Vec<BTreeSet<CellId>> = vec![BTreeSet::new(); cells.len()];
    let mut down: Vec<BTreeSet<CellId>> = vec![BTreeSet::new(); cells.len()];
    for i in 0..n_cubes {
        let upper = cell_of_cube[i];
        for f in base.facets(CubeId(i)) {
            let lower = cell_of_cube[f.idx()];
            up[lower.idx()].insert(upper);
            down[upper.idx()].insert(lower);
        }
    }

    let n = base.dim().unwrap_or(0);
    let tiles: Vec<CellId> = cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.dim == n)
        .map(|(i, _)| CellId(i))
        .collect();

    // mirrors: components of the preimages of the closed codim-1 faces
    let mut mirrors = Vec::new();
    let mut by_family: BTreeMap<MirrorFamily, Vec<MirrorId>> = BTreeMap::new();
    for coord in 0..n as u32 {
        for side in 0..2u8 {
            let family = MirrorFamily { coord, side };
            let members: Vec<CubeId> = (0..n_cubes)
                .map(CubeId)
                .filter(|c| faces[c.idx()].within_closed_face(coord, side))
                .collect();
            let pos: BTreeMap<CubeId, usize> =
                members.iter().enumerate().map(|(p, &c)| (c, p)).collect();
            let mut uf = UnionFind::new(members.len());
            for (p, &c) in members.iter().enumerate() {
                for &f in base.facets(c) {
                    if let Some(&q) = pos.get(&f) {
                        uf.union(p, q);
                    }
                }
            }
            let mut comps: BTreeMap<usize, BTreeSet<CubeId>> = BTreeMap::new();
            for &c in &members {
                comps.entry(uf.find(pos[&c])).or_default().insert(c);
            }
            for carrier in comps.into_values() {
                let id = MirrorId(mirrors.len());
                mirrors.push(Mirror { family, carrier });
                by_family.entry(family).or_default().push(id);
            }
        }
    }

    Ok(Stratification {
        base,
        folding,
        cells,
        cell_of_cube,
        up: up.into_iter().map(|s| s.into_iter().collect()).collect(),
        down: down.into_iter().map(|s| s.into_iter().collect()).collect(),
        tiles,
        mirrors,
        by_family,
    })
}

/// The cube realizing the intersection of two cubes, when non-empty.
fn common_face(x: &CubicalComplex, a: CubeId, b: CubeId) -> Option<CubeId> {
    let sa: BTreeSet<VertexId> = x.cube(a).iter().copied().collect();
    let inter: Vec<VertexId> = x
        .cube(b)
        .iter()
        .copied()
        .filter(|v| sa.contains(v))
        .collect();
    if inter.is_empty() {
        None
    } else {
        x.id_of_set(&inter)
    }
}

impl Stratification {
    pub fn base(&self) -> &Arc<CubicalComplex> {
        &self.base
    }

    pub fn folding(&self) -> &CubicalFolding {
        &self.folding
    }

    pub fn dim(&self) -> usize {
        self.base.dim().unwrap_or(0)
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[StratCell] {
        &self.cells
    }

    pub fn cell(&self, id: CellId) -> &StratCell {
        &self.cells[id.idx()]
    }

    pub fn cell_of_cube(&self, cube: CubeId) -> CellId {
        self.cell_of_cube[cube.idx()]
    }

    /// The unique carrier cube of a cell (cells of embedded complexes are
    /// single cubes).
    pub fn cube_of_cell(&self, id: CellId) -> CubeId {
        self.cells[id.idx()].carrier[0]
    }

    pub fn up(&self, id: CellId) -> &[CellId] {
        &self.up[id.idx()]
    }

    pub fn down(&self, id: CellId) -> &[CellId] {
        &self.down[id.idx()]
    }

    pub fn tiles(&self) -> &[CellId] {
        &self.tiles
    }

    pub fn cells_of_dim(&self, d: usize) -> Vec<CellId> {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.dim == d)
            .map(|(i, _)| CellId(i))
            .collect()
    }

    pub fn mirrors(&self) -> &[Mirror] {
        &self.mirrors
    }

    pub fn mirror(&self, id: MirrorId) -> &Mirror {
        &self.mirrors[id.idx()]
    }

    pub fn mirror_ids(&self) -> impl Iterator<Item = MirrorId> {
        (0..self.mirrors.len()).map(MirrorId)
    }

    pub fn mirrors_of_family(&self, family: MirrorFamily) -> &[MirrorId] {
        self.by_family.get(&family).map_or(&[], |v| v.as_slice())
    }

    /// Tiles whose closure contains the cell.
    pub fn tiles_above(&self, cell: CellId) -> Vec<CellId> {
        let n = self.dim();
        if self.cell(cell).dim == n {
            return vec![cell];
        }
        let mut seen = BTreeSet::from([cell]);
        let mut stack = vec![cell];
        let mut out = BTreeSet::new();
        while let Some(c) = stack.pop() {
            for &u in self.up(c) {
                if seen.insert(u) {
                    if self.cell(u).dim == n {
                        out.insert(u);
                    }
                    stack.push(u);
                }
            }
        }
        out.into_iter().collect()
    }

    /// Looks a mirror value up by content; `None` marks a foreign mirror.
    pub fn mirror_id_of(&self, mirror: &Mirror) -> Option<MirrorId> {
        self.mirrors
            .iter()
            .position(|m| m == mirror)
            .map(MirrorId)
    }

    /// Number of mirrors whose carrier contains the vertex `p`; at most the
    /// dimension of the base.
    pub fn local_mirror_count(&self, p: VertexId) -> Result<usize, StrataError> {
        let cube = self
            .base
            .vertex_cube(p)
            .ok_or(StrataError::UnknownVertex(p.0))?;
        Ok(self
            .mirrors
            .iter()
            .filter(|m| m.carrier.contains(&cube))
            .count())
    }

    /// Tiles grouped by connectivity avoiding every mirror of coordinate
    /// family `coord`: two tiles are adjacent when they share a codim-1 cell
    /// not contained in any of those mirrors.
    pub fn complement_components(&self, coord: u32) -> Vec<Vec<CellId>> {
        let banned: BTreeSet<CubeId> = self
            .mirrors
            .iter()
            .filter(|m| m.family.coord == coord)
            .flat_map(|m| m.carrier.iter().copied())
            .collect();
        self.tile_components(&banned)
    }

    /// Components of the complement of a single mirror.
    pub fn complement_of_mirror(&self, id: MirrorId) -> Vec<Vec<CellId>> {
        self.tile_components(&self.mirrors[id.idx()].carrier)
    }

    fn tile_components(&self, banned_cubes: &BTreeSet<CubeId>) -> Vec<Vec<CellId>> {
        let n = self.dim();
        let pos: BTreeMap<CellId, usize> =
            self.tiles.iter().enumerate().map(|(p, &t)| (t, p)).collect();
        let mut uf = UnionFind::new(self.tiles.len());
        for (i, cell) in self.cells.iter().enumerate() {
            if n == 0 || cell.dim != n - 1 || banned_cubes.contains(&cell.carrier[0]) {
                continue;
            }
            let tiles_above = &self.up[i];
            for w in tiles_above.windows(2) {
                uf.union(pos[&w[0]], pos[&w[1]]);
            }
        }
        let mut comps: BTreeMap<usize, Vec<CellId>> = BTreeMap::new();
        for &t in &self.tiles {
            comps.entry(uf.find(pos[&t])).or_default().push(t);
        }
        let mut out: Vec<Vec<CellId>> = comps.into_values().collect();
        out.sort_by_key(|c| c[0]);
        out
    }

    /// For every codim-1 cell of the mirror and every framing (two tiles
    /// meeting exactly in that cell inside the mirror), reports whether the
    /// two tiles land in distinct components of the complement of the mirror.
    pub fn separation_check(&self, id: MirrorId) -> Result<SeparationReport, StrataError> {
        if id.idx() >= self.mirrors.len() {
            return Err(StrataError::ForeignMirror);
        }
        let mirror = &self.mirrors[id.idx()];
        let comps = self.complement_of_mirror(id);
        let comp_of: BTreeMap<CellId, usize> = comps
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.iter().map(move |&t| (t, i)))
            .collect();
        let n = self.dim();
        let mut framings = Vec::new();
        for (i, cell) in self.cells.iter().enumerate() {
            if n == 0 || cell.dim != n - 1 || !mirror.carrier.contains(&cell.carrier[0]) {
                continue;
            }
            let tiles = &self.up[i];
            for a in 0..tiles.len() {
                for b in (a + 1)..tiles.len() {
                    framings.push(Framing {
                        cell: CellId(i),
                        tiles: (tiles[a], tiles[b]),
                        separated: comp_of[&tiles[a]] != comp_of[&tiles[b]],
                    });
                }
            }
        }
        let separates = framings.iter().all(|f| f.separated);
        Ok(SeparationReport {
            mirror: id,
            component_count: comps.len(),
            framings,
            separates,
        })
    }
}

/// One framing of a codim-1 cell on a mirror.
#[derive(Clone, Debug)]
pub struct Framing {
    pub cell: CellId,
    pub tiles: (CellId, CellId),
    pub separated: bool,
}

#[derive(Clone, Debug)]
pub struct SeparationReport {
    pub mirror: MirrorId,
    pub component_count: usize,
    pub framings: Vec<Framing>,
    /// True when every framing straddles two distinct components (vacuously
    /// true without framings).
    pub separates: bool,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let root = self.find(self.parent[i]);
            self.parent[i] = root;
        }
        self.parent[i]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn strat(w: u32, h: u32) -> Stratification {
        let (x, f) = fixtures::folded_grid(w, h);
        stratify(Arc::new(x), f).unwrap()
    }

    #[test]
    fn single_square_stratifies_into_nine_cells() {
        let s = strat(1, 1);
        assert_eq!(s.cell_count(), 9);
        assert_eq!(s.cells_of_dim(0).len(), 4);
        assert_eq!(s.cells_of_dim(1).len(), 4);
        assert_eq!(s.tiles().len(), 1);
    }

    #[test]
    fn grid_points_and_strip_counts() {
        let s = strat(2, 2);
        assert_eq!(s.cell_count(), 25);
        assert_eq!(s.cells_of_dim(0).len(), 9);
        assert_eq!(s.cells_of_dim(1).len(), 12);
        assert_eq!(s.tiles().len(), 4);

        let t = strat(2, 1);
        assert_eq!(t.cell_count(), 15);
        assert_eq!(t.cells_of_dim(0).len(), 6);
        assert_eq!(t.cells_of_dim(1).len(), 7);
        assert_eq!(t.tiles().len(), 2);
    }

    #[test]
    fn every_cube_lies_in_exactly_one_cell_of_its_dimension() {
        let s = strat(3, 2);
        for (cube, _) in s.base().clone().cubes() {
            let cell = s.cell_of_cube(cube);
            assert_eq!(s.cell(cell).dim, s.base().cube_dim(cube));
            assert_eq!(
                s.cells()
                    .iter()
                    .filter(|c| c.carrier.contains(&cube))
                    .count(),
                1
            );
        }
    }

    #[test]
    fn poset_joins_consecutive_dimensions_only() {
        let s = strat(2, 2);
        for (i, cell) in s.cells().iter().enumerate() {
            for &u in s.up(CellId(i)) {
                assert_eq!(s.cell(u).dim, cell.dim + 1);
            }
        }
    }

    #[test]
    fn single_square_has_four_mirrors() {
        let s = strat(1, 1);
        assert_eq!(s.mirrors().len(), 4);
        for m in s.mirrors() {
            assert_eq!(m.carrier.len(), 3); // an edge and its two endpoints
        }
    }

    #[test]
    fn strip_has_five_mirrors() {
        let s = strat(2, 1);
        assert_eq!(s.mirrors().len(), 5);
        assert_eq!(
            s.mirrors_of_family(MirrorFamily { coord: 0, side: 0 }).len(),
            2
        );
        assert_eq!(
            s.mirrors_of_family(MirrorFamily { coord: 0, side: 1 }).len(),
            1
        );
        assert_eq!(
            s.mirrors_of_family(MirrorFamily { coord: 1, side: 0 }).len(),
            1
        );
        assert_eq!(
            s.mirrors_of_family(MirrorFamily { coord: 1, side: 1 }).len(),
            1
        );
    }

    #[test]
    fn grid_has_six_mirrors_and_same_family_disjoint() {
        let s = strat(2, 2);
        assert_eq!(s.mirrors().len(), 6);
        for coord in 0..2 {
            for side in 0..2u8 {
                let fam = MirrorFamily { coord, side };
                let ids = s.mirrors_of_family(fam);
                for a in 0..ids.len() {
                    for b in (a + 1)..ids.len() {
                        let ma = &s.mirror(ids[a]).carrier;
                        let mb = &s.mirror(ids[b]).carrier;
                        assert!(ma.is_disjoint(mb));
                    }
                }
            }
        }
        // both sides of one coordinate are pairwise disjoint as well
        for coord in 0..2 {
            let all: Vec<&Mirror> = s
                .mirrors()
                .iter()
                .filter(|m| m.family.coord == coord)
                .collect();
            for a in 0..all.len() {
                for b in (a + 1)..all.len() {
                    assert!(all[a].carrier.is_disjoint(&all[b].carrier));
                }
            }
        }
    }

    #[test]
    fn local_mirror_counts_on_the_grid() {
        let s = strat(2, 2);
        // corner, centre and side-midpoint all meet exactly two mirrors
        for v in [0u32, 4, 1] {
            assert_eq!(s.local_mirror_count(VertexId(v)).unwrap(), 2);
        }
        let n = s.dim();
        for v in s.base().vertices() {
            assert!(s.local_mirror_count(v).unwrap() <= n);
        }
    }

    #[test]
    fn complement_components_of_the_grid() {
        let s = strat(2, 2);
        let x_comps = s.complement_components(0);
        assert_eq!(x_comps.len(), 2);
        assert_eq!(x_comps[0].len(), 2);

        let single = strat(1, 1);
        assert_eq!(single.complement_components(0).len(), 1);

        let strip = strat(2, 1);
        assert_eq!(strip.complement_components(1).len(), 1);
    }

    #[test]
    fn middle_column_mirror_separates_the_grid() {
        let s = strat(2, 2);
        // the (x, 1) family has one mirror: the middle column
        let &mid = s
            .mirrors_of_family(MirrorFamily { coord: 0, side: 1 })
            .first()
            .unwrap();
        let report = s.separation_check(mid).unwrap();
        assert!(report.separates);
        assert_eq!(report.component_count, 2);
        assert_eq!(report.framings.len(), 2);
    }

    #[test]
    fn boundary_mirror_separates_vacuously() {
        let s = strat(1, 1);
        for id in s.mirror_ids() {
            let report = s.separation_check(id).unwrap();
            assert!(report.separates);
            assert!(report.framings.is_empty());
        }
    }

    #[test]
    fn torus_mirrors_do_not_separate() {
        let (x, f) = fixtures::folded_torus(4, 4);
        let s = stratify(Arc::new(x), f).unwrap();
        let mut saw_failure = false;
        for id in s.mirror_ids() {
            let report = s.separation_check(id).unwrap();
            if !report.separates {
                saw_failure = true;
            }
        }
        assert!(saw_failure);
    }

    #[test]
    fn mirror_meets_tile_in_one_face_or_not_at_all() {
        let s = strat(3, 3);
        for m in s.mirrors() {
            for &tile in s.tiles() {
                let tile_cube = s.cube_of_cell(tile);
                let faces_in: Vec<CubeId> = s
                    .base()
                    .faces(tile_cube)
                    .iter()
                    .copied()
                    .filter(|c| m.carrier.contains(c))
                    .collect();
                if faces_in.is_empty() {
                    continue;
                }
                // the intersection is the face poset of a single face: it has
                // a unique maximal element
                let maxes: Vec<CubeId> = faces_in
                    .iter()
                    .copied()
                    .filter(|&c| {
                        !faces_in
                            .iter()
                            .any(|&d| d != c && s.base().faces(d).contains(&c))
                    })
                    .collect();
                assert_eq!(maxes.len(), 1);
            }
        }
    }

    #[test]
    fn invalid_folding_is_rejected() {
        let x = fixtures::grid(2, 1);
        let bad = CubicalFolding::from_pairs(
            2,
            &(0..6).map(|v| (v, 0)).collect::<Vec<_>>(),
        )
        .unwrap();
        assert!(matches!(
            stratify(Arc::new(x), bad),
            Err(StrataError::InvalidFolding(_))
        ));
    }
}
