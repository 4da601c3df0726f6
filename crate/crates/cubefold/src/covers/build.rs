use std::collections::{BTreeMap, BTreeSet};

use super::{pi1_presentation, CellComplex, CoverError, GroupPresentation, PermRep};
use crate::complex::{MarkedComplex, VertexId};

/// A finite (possibly branched) covering projection between complexes of the
/// same kind.  Away from branch points the map is locally bijective on
/// stars and every fiber has `degree` elements.
#[derive(Clone, Debug)]
pub struct CoverProjection<C: CellComplex> {
    pub total: C,
    pub base: C,
    pub degree: usize,
    /// Base vertex under each total vertex id.
    pub vertex_map: Vec<VertexId>,
    /// Base cell under each total cell.
    pub cell_map: Vec<usize>,
    pub branch_points: Vec<BranchPoint>,
}

/// A point where fibers merge: the cone vertex over one connected component
/// of the lifted cone link.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchPoint {
    pub total_vertex: VertexId,
    pub base_vertex: VertexId,
    pub local_degree: usize,
}

/// Sheet-transition data along the edges of a complex, trivialized over a
/// spanning tree.
struct Transitions<'a> {
    pres: &'a GroupPresentation,
    rep: &'a PermRep,
}

impl Transitions<'_> {
    fn across(&self, from: VertexId, to: VertexId, sheet: u32) -> u32 {
        if self.pres.is_tree_edge(from, to) {
            return sheet;
        }
        let g = self
            .pres
            .generator_of_edge(from, to)
            .expect("edge is tree or generator");
        let letter = if self.pres.generators[g] == (from, to) {
            g as i32 + 1
        } else {
            -(g as i32 + 1)
        };
        self.rep.transport(&[letter], sheet)
    }
}

fn lifted_names<C: CellComplex>(x: &C, degree: usize) -> Vec<String> {
    let mut names = Vec::with_capacity(x.vertex_names().len() * degree);
    for s in 0..degree {
        for n in x.vertex_names() {
            names.push(format!("{n}.{s}"));
        }
    }
    names
}

/// Lifts one cell: propagates sheets through the cell's edges from an anchor
/// sheet at the first participating position.
fn lift_cell<C: CellComplex>(
    x: &C,
    trans: &Transitions,
    cell: usize,
    skip_pos: Option<usize>,
    anchor: u32,
) -> Result<Vec<Option<u32>>, CoverError> {
    let tuple = x.cell_tuple(cell);
    let mut sheets: Vec<Option<u32>> = vec![None; tuple.len()];
    let start = (0..tuple.len())
        .find(|p| Some(*p) != skip_pos)
        .expect("cell has a vertex");
    sheets[start] = Some(anchor);
    let edges = x.cell_edge_indices(cell);
    let mut changed = true;
    while changed {
        changed = false;
        for &(i, j) in &edges {
            if Some(i) == skip_pos || Some(j) == skip_pos {
                continue;
            }
            for (a, b) in [(i, j), (j, i)] {
                if let (Some(s), None) = (sheets[a], sheets[b]) {
                    sheets[b] = Some(trans.across(tuple[a], tuple[b], s));
                    changed = true;
                }
            }
        }
    }
    for &(i, j) in &edges {
        if Some(i) == skip_pos || Some(j) == skip_pos {
            continue;
        }
        let (Some(si), Some(sj)) = (sheets[i], sheets[j]) else {
            return Err(CoverError::NotACover(format!(
                "cell {} has a disconnected lift",
                x.describe_cell(cell)
            )));
        };
        if trans.across(tuple[i], tuple[j], si) != sj {
            return Err(CoverError::NotACover(format!(
                "inconsistent sheets on cell {}",
                x.describe_cell(cell)
            )));
        }
    }
    Ok(sheets)
}

/// Builds the degree-`d` cover of a connected complex defined by a validated
/// permutation representation of its edge-path group.
pub fn build_cover<C: CellComplex>(
    x: &C,
    pres: &GroupPresentation,
    rep: &PermRep,
) -> Result<CoverProjection<C>, CoverError> {
    rep.validate(pres)?;
    let d = rep.degree;
    let nv = x.vertex_names().len();
    let lift = |v: VertexId, s: u32| VertexId(v.0 + s * nv as u32);
    let trans = Transitions { pres, rep };

    let mut cells = Vec::new();
    for c in 0..x.cell_count() {
        let tuple = x.cell_tuple(c);
        for anchor in 0..d as u32 {
            let sheets = lift_cell(x, &trans, c, None, anchor)?;
            cells.push(
                tuple
                    .iter()
                    .zip(&sheets)
                    .map(|(&v, s)| lift(v, s.unwrap()))
                    .collect::<Vec<_>>(),
            );
        }
    }
    let total = C::from_cells(lifted_names(x, d), cells)?;
    let vertex_map: Vec<VertexId> = (0..nv * d).map(|i| VertexId((i % nv) as u32)).collect();
    let cell_map = project_cells(&total, x, &vertex_map)?;
    let proj = CoverProjection {
        total,
        base: x.clone(),
        degree: d,
        vertex_map,
        cell_map,
        branch_points: Vec::new(),
    };
    proj.verify()?;
    Ok(proj)
}

fn project_cells<C: CellComplex>(
    total: &C,
    base: &C,
    vertex_map: &[VertexId],
) -> Result<Vec<usize>, CoverError> {
    (0..total.cell_count())
        .map(|c| {
            let image: Vec<VertexId> = total
                .cell_tuple(c)
                .iter()
                .map(|v| vertex_map[v.idx()])
                .collect();
            base.find_cell(&image).ok_or_else(|| {
                CoverError::NotACover(format!(
                    "cell {} projects to no cell",
                    total.describe_cell(c)
                ))
            })
        })
        .collect()
}

/// Branched cover of a complex with designated cone vertices: the cover of
/// the cone-punctured complex defined by `rep`, with one new cone vertex
/// glued per connected component of each cone link's preimage.
pub fn branched_cover_of<C: CellComplex>(
    x: &C,
    cone_points: &[VertexId],
    rep: &PermRep,
) -> Result<CoverProjection<C>, CoverError> {
    let nv = x.vertex_names().len();
    for c in 0..x.cell_count() {
        let marked = x
            .cell_tuple(c)
            .iter()
            .filter(|v| cone_points.contains(v))
            .count();
        if marked > 1 {
            return Err(CoverError::NotACover(
                "a cell contains two cone points".into(),
            ));
        }
    }
    // the punctured complex: cells avoiding every cone point
    let punctured_cells: Vec<usize> = (0..x.cell_count())
        .filter(|&c| {
            x.cell_tuple(c)
                .iter()
                .all(|v| !cone_points.contains(v))
        })
        .collect();
    let punctured = C::from_cells(
        x.vertex_names().to_vec(),
        punctured_cells
            .iter()
            .map(|&c| x.cell_tuple(c).to_vec())
            .collect(),
    )?;
    let basepoint = *punctured
        .present_vertices()
        .first()
        .ok_or_else(|| CoverError::NotACover("punctured complex is empty".into()))?;
    let pres = pi1_presentation(&punctured, basepoint)?;
    rep.validate(&pres)?;
    let d = rep.degree;
    let lift = |v: VertexId, s: u32| VertexId(v.0 + s * nv as u32);
    let trans = Transitions {
        pres: &pres,
        rep,
    };

    // lift the punctured cells
    let mut cells: Vec<Vec<VertexId>> = Vec::new();
    for c in 0..punctured.cell_count() {
        let tuple = punctured.cell_tuple(c);
        for anchor in 0..d as u32 {
            let sheets = lift_cell(&punctured, &trans, c, None, anchor)?;
            cells.push(
                tuple
                    .iter()
                    .zip(&sheets)
                    .map(|(&v, s)| lift(v, s.unwrap()))
                    .collect(),
            );
        }
    }

    // per cone point: components of the lifted link, then apexes
    let mut names = lifted_names(x, d);
    let mut branch_points = Vec::new();
    let mut apex_of: BTreeMap<(VertexId, VertexId), VertexId> = BTreeMap::new(); // (cone, lifted link vertex) -> apex
    for &y in cone_points {
        // cells of the link: avoid y, contained in a cell at y
        let star: Vec<usize> = (0..x.cell_count())
            .filter(|&c| x.cell_tuple(c).contains(&y))
            .collect();
        let link_cells: Vec<usize> = (0..punctured.cell_count())
            .filter(|&c| {
                let tuple = punctured.cell_tuple(c);
                star.iter().any(|&s| {
                    let big = x.cell_tuple(s);
                    tuple.iter().all(|v| big.contains(v))
                })
            })
            .collect();
        // components of the lifted link through shared lifted vertices
        let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        fn find(parent: &mut BTreeMap<VertexId, VertexId>, v: VertexId) -> VertexId {
            let p = *parent.entry(v).or_insert(v);
            if p == v {
                v
            } else {
                let root = find(parent, p);
                parent.insert(v, root);
                root
            }
        }
        for &c in &link_cells {
            let tuple = punctured.cell_tuple(c);
            for anchor in 0..d as u32 {
                let sheets = lift_cell(&punctured, &trans, c, None, anchor)?;
                let lifted: Vec<VertexId> = tuple
                    .iter()
                    .zip(&sheets)
                    .map(|(&v, s)| lift(v, s.unwrap()))
                    .collect();
                let root = find(&mut parent, lifted[0]);
                for &w in &lifted[1..] {
                    let r = find(&mut parent, w);
                    let lo = root.min(r);
                    parent.insert(root.max(r), lo);
                }
            }
        }
        let members: Vec<VertexId> = parent.keys().copied().collect();
        let mut components: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
        for v in members {
            let r = find(&mut parent, v);
            components.entry(r).or_default().push(v);
        }
        for (j, (_, comp)) in components.iter().enumerate() {
            let apex = VertexId(names.len() as u32);
            names.push(format!("{}.c{}", x.vertex_names()[y.idx()], j));
            // local degree: lifts of a fixed base vertex inside the component
            let probe = vertex_base(comp[0], nv);
            let local_degree = comp
                .iter()
                .filter(|v| vertex_base(**v, nv) == probe)
                .count();
            for &v in comp {
                apex_of.insert((y, v), apex);
            }
            branch_points.push(BranchPoint {
                total_vertex: apex,
                base_vertex: y,
                local_degree,
            });
        }
        // lift the cells at y, attaching them to the right apex
        for &c in &star {
            let tuple = x.cell_tuple(c);
            if tuple.len() == 1 {
                continue; // the cone vertex itself: replaced by the apexes
            }
            let y_pos = tuple.iter().position(|&v| v == y).unwrap();
            for anchor in 0..d as u32 {
                let sheets = lift_cell(x, &trans, c, Some(y_pos), anchor)?;
                let first = (0..tuple.len()).find(|&p| p != y_pos).unwrap();
                let key = lift(tuple[first], sheets[first].unwrap());
                let apex = *apex_of.get(&(y, key)).ok_or_else(|| {
                    CoverError::NotACover("lifted star leaves the lifted link".into())
                })?;
                let lifted: Vec<VertexId> = tuple
                    .iter()
                    .enumerate()
                    .map(|(p, &v)| {
                        if p == y_pos {
                            apex
                        } else {
                            lift(v, sheets[p].unwrap())
                        }
                    })
                    .collect();
                cells.push(lifted);
            }
        }
    }

    let total = C::from_cells(names.clone(), cells)?;
    let mut vertex_map: Vec<VertexId> = (0..nv * d).map(|i| VertexId((i % nv) as u32)).collect();
    for bp in &branch_points {
        debug_assert_eq!(bp.total_vertex.idx(), vertex_map.len());
        vertex_map.push(bp.base_vertex);
    }
    let cell_map = project_cells(&total, x, &vertex_map)?;
    let proj = CoverProjection {
        total,
        base: x.clone(),
        degree: d,
        vertex_map,
        cell_map,
        branch_points,
    };
    proj.verify()?;
    Ok(proj)
}

fn vertex_base(v: VertexId, nv: usize) -> u32 {
    v.0 % nv as u32
}

/// Branched cover of a marked complex at its cone points.
pub fn branched_cover(
    m: &MarkedComplex,
    rep: &PermRep,
) -> Result<CoverProjection<crate::complex::SimplicialComplex>, CoverError> {
    branched_cover_of(&m.base, &m.cone_points, rep)
}

impl<C: CellComplex> CoverProjection<C> {
    pub fn vertex_image(&self, v: VertexId) -> VertexId {
        self.vertex_map[v.idx()]
    }

    pub fn is_branch_vertex(&self, v: VertexId) -> bool {
        self.branch_points.iter().any(|b| b.total_vertex == v)
    }

    /// Verifies the covering conditions: stars map bijectively away from the
    /// branch vertices, fibers have full cardinality over cells avoiding the
    /// cone points, and each branch vertex covers its cone star with its
    /// local degree.
    pub fn verify(&self) -> Result<(), CoverError> {
        let branch_bases: BTreeSet<VertexId> =
            self.branch_points.iter().map(|b| b.base_vertex).collect();
        for tv in self.total.present_vertices() {
            let bv = self.vertex_image(tv);
            let star: Vec<usize> = self.total.cells_at_vertex(tv);
            let image: Vec<usize> = star.iter().map(|&c| self.cell_map[c]).collect();
            let base_star = self.base.cells_at_vertex(bv);
            if self.is_branch_vertex(tv) {
                let local = self
                    .branch_points
                    .iter()
                    .find(|b| b.total_vertex == tv)
                    .unwrap()
                    .local_degree;
                for &bc in &base_star {
                    let got = image.iter().filter(|&&c| c == bc).count();
                    // the cone vertex cell itself is covered once per apex
                    let want = if self.base.cell_tuple(bc).len() == 1 {
                        1
                    } else {
                        local
                    };
                    if got != want {
                        return Err(CoverError::NotACover(format!(
                            "branch vertex covers cell {} {got} times, expected {want}",
                            self.base.describe_cell(bc)
                        )));
                    }
                }
                continue;
            }
            let distinct: BTreeSet<usize> = image.iter().copied().collect();
            if distinct.len() != star.len() || distinct.len() != base_star.len() {
                return Err(CoverError::NotACover(format!(
                    "star of {} does not map bijectively",
                    self.total.vertex_names()[tv.idx()]
                )));
            }
        }
        for bc in 0..self.base.cell_count() {
            if self
                .base
                .cell_tuple(bc)
                .iter()
                .any(|v| branch_bases.contains(v))
            {
                continue;
            }
            let fiber = self.cell_map.iter().filter(|&&c| c == bc).count();
            if fiber != self.degree {
                return Err(CoverError::NotACover(format!(
                    "fiber over {} has {fiber} cells, expected {}",
                    self.base.describe_cell(bc),
                    self.degree
                )));
            }
        }
        // local bijectivity at every non-branch cell, not just vertices: the
        // cells containing a lift map one to one onto the cells containing
        // its image
        let contains = |big: &[VertexId], small: &[VertexId]| small.iter().all(|v| big.contains(v));
        let branch_apexes: BTreeSet<VertexId> =
            self.branch_points.iter().map(|b| b.total_vertex).collect();
        for tc in 0..self.total.cell_count() {
            let tuple = self.total.cell_tuple(tc);
            if tuple.iter().any(|v| branch_apexes.contains(v)) {
                continue;
            }
            let star_images: Vec<usize> = (0..self.total.cell_count())
                .filter(|&c| contains(self.total.cell_tuple(c), tuple))
                .map(|c| self.cell_map[c])
                .collect();
            let distinct: BTreeSet<usize> = star_images.iter().copied().collect();
            let base_tuple = self.base.cell_tuple(self.cell_map[tc]);
            let base_star = (0..self.base.cell_count())
                .filter(|&c| contains(self.base.cell_tuple(c), base_tuple))
                .count();
            if distinct.len() != star_images.len() || star_images.len() != base_star {
                return Err(CoverError::NotACover(format!(
                    "star of cell {} does not map bijectively",
                    self.total.describe_cell(tc)
                )));
            }
        }
        Ok(())
    }
}

impl CoverProjection<crate::complex::CubicalComplex> {
    /// Pulls a folding of the base back to the total complex: every vertex
    /// takes the label of its image.
    pub fn lift_folding(
        &self,
        f: &crate::folding::CubicalFolding,
    ) -> Result<crate::folding::CubicalFolding, crate::folding::FoldingError> {
        let mut labels = std::collections::BTreeMap::new();
        for v in self.total.present_vertices() {
            labels.insert(v, f.label(self.vertex_image(v))?);
        }
        crate::folding::CubicalFolding::new(f.target_dim, labels)
    }
}

/// Enumerates the deck transformations of a cover: automorphisms of the total
/// complex commuting with the projection, as vertex permutations.  For a
/// degree-`d` connected cover the group order divides `d`, with equality
/// exactly for regular representations.
pub fn deck_transformations<C: CellComplex>(proj: &CoverProjection<C>) -> Vec<Vec<u32>> {
    let total = &proj.total;
    let verts = total.present_vertices();
    let apexes: BTreeSet<VertexId> = proj
        .branch_points
        .iter()
        .map(|b| b.total_vertex)
        .collect();
    let mut adj: BTreeMap<VertexId, Vec<VertexId>> =
        verts.iter().map(|&v| (v, Vec::new())).collect();
    for c in 0..total.cell_count() {
        if total.cell_dim(c) != 1 {
            continue;
        }
        let t = total.cell_tuple(c);
        adj.get_mut(&t[0]).unwrap().push(t[1]);
        adj.get_mut(&t[1]).unwrap().push(t[0]);
    }
    let Some(&start) = verts.iter().find(|v| !apexes.contains(v)) else {
        return vec![];
    };
    let fiber: Vec<VertexId> = verts
        .iter()
        .copied()
        .filter(|&v| !apexes.contains(&v) && proj.vertex_image(v) == proj.vertex_image(start))
        .collect();

    let mut out = Vec::new();
    'candidates: for &target in &fiber {
        let mut map: BTreeMap<VertexId, VertexId> = BTreeMap::from([(start, target)]);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            let mu = map[&u];
            for &w in &adj[&u] {
                if apexes.contains(&w) {
                    continue;
                }
                // the unique neighbour of mu over the same base vertex
                let bw = proj.vertex_image(w);
                let candidates: Vec<VertexId> = adj[&mu]
                    .iter()
                    .copied()
                    .filter(|&n| !apexes.contains(&n) && proj.vertex_image(n) == bw)
                    .collect();
                let [mw] = candidates[..] else {
                    continue 'candidates;
                };
                match map.get(&w) {
                    Some(&prev) if prev != mw => continue 'candidates,
                    Some(_) => {}
                    None => {
                        map.insert(w, mw);
                        stack.push(w);
                    }
                }
            }
        }
        // extend over apexes: an apex goes to the apex over the same cone
        // vertex adjacent to the image of its neighbours
        for &a in &apexes {
            let image_nbrs: Vec<VertexId> = adj[&a]
                .iter()
                .filter_map(|n| map.get(n).copied())
                .collect();
            let candidates: Vec<VertexId> = apexes
                .iter()
                .copied()
                .filter(|&b| {
                    proj.vertex_image(b) == proj.vertex_image(a)
                        && image_nbrs.iter().all(|n| adj[&b].contains(n))
                })
                .collect();
            let [b] = candidates[..] else {
                continue 'candidates;
            };
            map.insert(a, b);
        }
        if map.len() != verts.len() {
            continue;
        }
        let images: BTreeSet<VertexId> = map.values().copied().collect();
        if images.len() != map.len() {
            continue;
        }
        // every cell must map to a cell
        let nv = total.vertex_names().len();
        let mut perm: Vec<u32> = (0..nv as u32).collect();
        for (&v, &w) in &map {
            perm[v.idx()] = w.0;
        }
        let mut ok = true;
        for c in 0..total.cell_count() {
            let image: Vec<VertexId> = total
                .cell_tuple(c)
                .iter()
                .map(|v| VertexId(perm[v.idx()]))
                .collect();
            match total.find_cell(&image) {
                Some(ic) if proj.cell_map[ic] == proj.cell_map[c] => {}
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            out.push(perm);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::perm_from_cycles;
    use crate::fixtures;

    #[test]
    fn cyclic_cover_of_the_four_cycle_is_a_twelve_cycle() {
        let x = fixtures::cubical_cycle(4);
        let pres = pi1_presentation(&x, VertexId(0)).unwrap();
        let rep = PermRep::new(3, vec![perm_from_cycles(3, &[vec![1, 2, 3]]).unwrap()]).unwrap();
        let proj = build_cover(&x, &pres, &rep).unwrap();
        assert_eq!(proj.total.present_vertices().len(), 12);
        assert_eq!(
            (0..proj.total.cell_count())
                .filter(|&c| proj.total.cell_dim(c) == 1)
                .count(),
            12
        );
        assert_eq!(proj.total.euler(), 0);
        // a 12-cycle is connected with every vertex of valence 2
        pi1_presentation(&proj.total, proj.total.present_vertices()[0]).unwrap();
    }

    #[test]
    fn identity_cover_of_the_square() {
        let x = fixtures::grid(1, 1);
        let pres = pi1_presentation(&x, VertexId(0)).unwrap();
        let rep = PermRep::identity(1, pres.generator_count());
        let proj = build_cover(&x, &pres, &rep).unwrap();
        assert_eq!(proj.total.cell_count(), x.cell_count());
        assert_eq!(proj.total.euler(), x.euler());
    }

    #[test]
    fn sign_cover_of_the_torus_doubles_everything() {
        let x = fixtures::torus(3, 3);
        let pres = pi1_presentation(&x, VertexId(0)).unwrap();
        // sign representation through the x-winding parity of each generator
        let perms: Vec<Vec<u32>> = (0..pres.generator_count())
            .map(|g| {
                let l = pres.generator_loop(g);
                let wraps = l
                    .windows(2)
                    .filter(|w| {
                        let (a, b) = (w[0].0 % 3, w[1].0 % 3);
                        (a == 2 && b == 0) || (a == 0 && b == 2)
                    })
                    .count();
                if wraps % 2 == 1 {
                    perm_from_cycles(2, &[vec![1, 2]]).unwrap()
                } else {
                    perm_from_cycles(2, &[]).unwrap()
                }
            })
            .collect();
        let rep = PermRep::new(2, perms).unwrap();
        let proj = build_cover(&x, &pres, &rep).unwrap();
        assert_eq!(proj.total.euler(), 0);
        assert_eq!(
            (0..proj.total.cell_count())
                .filter(|&c| proj.total.cell_dim(c) == 2)
                .count(),
            18
        );
        pi1_presentation(&proj.total, proj.total.present_vertices()[0]).unwrap();
    }

    #[test]
    fn branched_double_cover_of_the_cone() {
        let m = fixtures::cone_over_cycle(6);
        let rep = PermRep::new(2, vec![perm_from_cycles(2, &[vec![1, 2]]).unwrap()]).unwrap();
        let proj = branched_cover(&m, &rep).unwrap();
        assert_eq!(proj.branch_points.len(), 1);
        assert_eq!(proj.branch_points[0].local_degree, 2);
        // cone over the 12-cycle
        assert_eq!(proj.total.present_vertices().len(), 13);
        assert_eq!(
            (0..proj.total.cell_count())
                .filter(|&c| proj.total.cell_dim(c) == 2)
                .count(),
            12
        );
        // chi(total) = d * chi(punctured base) + branch components
        let punctured_chi = m.punctured().euler_characteristic();
        assert_eq!(
            proj.total.euler(),
            2 * punctured_chi + proj.branch_points.len() as i64
        );
        assert_eq!(proj.total.euler(), 1);
    }

    #[test]
    fn trivial_branched_cover_is_the_identity() {
        let m = fixtures::cone_over_cycle(4);
        let rep = PermRep::new(1, vec![perm_from_cycles(1, &[]).unwrap()]).unwrap();
        let proj = branched_cover(&m, &rep).unwrap();
        assert_eq!(proj.total.cell_count(), m.base.simplex_count());
        assert_eq!(proj.branch_points.len(), 1);
        assert_eq!(proj.branch_points[0].local_degree, 1);
    }

    #[test]
    fn suspension_cover_branches_at_both_poles() {
        let m = fixtures::suspension_of_cycle(4);
        let rep = PermRep::new(2, vec![perm_from_cycles(2, &[vec![1, 2]]).unwrap()]).unwrap();
        let proj = branched_cover(&m, &rep).unwrap();
        assert_eq!(proj.branch_points.len(), 2);
        // chi(total) = d * chi(punctured) + number of branch components
        let punctured_chi = m.punctured().euler_characteristic();
        assert_eq!(
            proj.total.euler(),
            2 * punctured_chi + proj.branch_points.len() as i64
        );
        assert_eq!(proj.total.euler(), 2);
    }

    #[test]
    fn deck_group_of_a_regular_cover_has_full_order() {
        let x = fixtures::cubical_cycle(4);
        let pres = pi1_presentation(&x, VertexId(0)).unwrap();
        let rep = PermRep::new(3, vec![perm_from_cycles(3, &[vec![1, 2, 3]]).unwrap()]).unwrap();
        let proj = build_cover(&x, &pres, &rep).unwrap();
        assert_eq!(deck_transformations(&proj).len(), 3);
    }

    #[test]
    fn deck_group_of_an_irregular_cover_is_smaller() {
        let x = fixtures::wedge_of_two_cycles();
        let pres = pi1_presentation(&x, VertexId(0)).unwrap();
        assert_eq!(pres.generator_count(), 2);
        let rep = PermRep::new(
            3,
            vec![
                perm_from_cycles(3, &[vec![1, 2]]).unwrap(),
                perm_from_cycles(3, &[vec![1, 2, 3]]).unwrap(),
            ],
        )
        .unwrap();
        rep.validate(&pres).unwrap();
        let proj = build_cover(&x, &pres, &rep).unwrap();
        let deck = deck_transformations(&proj);
        assert_eq!(deck.len(), 1);
        assert_eq!(3 % deck.len(), 0);
    }
}
