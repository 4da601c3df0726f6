use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::CoverError;
use crate::complex::{CubeId, CubicalComplex, VertexId};
use crate::dual::DualComplex;

/// A finite group of automorphisms of a cubical complex, stored as vertex
/// permutations.  Cell preservation is verified at construction, never
/// trusted; element 0 is the identity.
#[derive(Clone, Debug)]
pub struct GroupAction {
    complex: Arc<CubicalComplex>,
    elements: Vec<Vec<u32>>,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
}

impl GroupAction {
    /// Closes the generators under composition and verifies every element
    /// maps cubes to cubes.
    pub fn from_generators(
        complex: Arc<CubicalComplex>,
        generators: Vec<Vec<u32>>,
    ) -> Result<Self, CoverError> {
        let n = complex.vertex_names().len();
        let identity: Vec<u32> = (0..n as u32).collect();
        for g in &generators {
            check_element(&complex, g)?;
        }
        let mut elements = vec![identity.clone()];
        let mut index: BTreeMap<Vec<u32>, usize> = BTreeMap::from([(identity, 0)]);
        let mut frontier: Vec<usize> = vec![0];
        while let Some(at) = frontier.pop() {
            for g in &generators {
                let composed: Vec<u32> = (0..n).map(|v| g[elements[at][v] as usize]).collect();
                if !index.contains_key(&composed) {
                    index.insert(composed.clone(), elements.len());
                    elements.push(composed);
                    frontier.push(elements.len() - 1);
                }
            }
        }
        let table: Vec<Vec<usize>> = elements
            .iter()
            .map(|a| {
                elements
                    .iter()
                    .map(|b| {
                        let composed: Vec<u32> = (0..n).map(|v| a[b[v] as usize]).collect();
                        index[&composed]
                    })
                    .collect()
            })
            .collect();
        let inverses: Vec<usize> = (0..elements.len())
            .map(|i| (0..elements.len()).find(|&j| table[i][j] == 0).unwrap())
            .collect();
        Ok(Self {
            complex,
            elements,
            table,
            inverses,
        })
    }

    pub fn identity_only(complex: Arc<CubicalComplex>) -> Self {
        Self::from_generators(complex, Vec::new()).expect("identity preserves cells")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn complex(&self) -> &Arc<CubicalComplex> {
        &self.complex
    }

    pub fn element(&self, e: usize) -> &[u32] {
        &self.elements[e]
    }

    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, e: usize) -> usize {
        self.inverses[e]
    }

    pub fn apply_vertex(&self, e: usize, v: VertexId) -> VertexId {
        VertexId(self.elements[e][v.idx()])
    }

    pub fn apply_cube(&self, e: usize, cube: CubeId) -> CubeId {
        let image: Vec<VertexId> = self
            .complex
            .cube(cube)
            .iter()
            .map(|&v| self.apply_vertex(e, v))
            .collect();
        self.complex
            .id_of(&image)
            .expect("elements preserve cubes")
    }

    /// Elements fixing the cube setwise and pointwise.
    pub fn stabilizer(&self, cube: CubeId) -> Result<Stabilizer, CoverError> {
        if cube.idx() >= self.complex.cube_count() {
            return Err(CoverError::UnknownCell);
        }
        let mut setwise = Vec::new();
        let mut pointwise = Vec::new();
        for e in 0..self.order() {
            if self.apply_cube(e, cube) == cube {
                setwise.push(e);
                if self
                    .complex
                    .cube(cube)
                    .iter()
                    .all(|&v| self.apply_vertex(e, v) == v)
                {
                    pointwise.push(e);
                }
            }
        }
        Ok(Stabilizer { setwise, pointwise })
    }

    /// Verifies the action preserves a dual complex: heights per vertex and
    /// the branch designation.
    pub fn validate_on_dual(&self, d: &DualComplex) -> Result<(), CoverError> {
        if !self.complex.same_cells(&d.carrier) {
            return Err(CoverError::ActionNotStructurePreserving(
                "action lives on a different complex".into(),
            ));
        }
        for e in 0..self.order() {
            for v in self.complex.vertices() {
                let w = self.apply_vertex(e, v);
                if d.height[v.idx()] != d.height[w.idx()] {
                    return Err(CoverError::ActionNotStructurePreserving(format!(
                        "element {e} changes the height of {v}"
                    )));
                }
            }
            let image: BTreeSet<VertexId> =
                d.branch.iter().map(|&v| self.apply_vertex(e, v)).collect();
            if image != d.branch {
                return Err(CoverError::ActionNotStructurePreserving(format!(
                    "element {e} moves the branch set"
                )));
            }
        }
        Ok(())
    }
}

fn check_element(complex: &CubicalComplex, perm: &[u32]) -> Result<(), CoverError> {
    let n = complex.vertex_names().len();
    if perm.len() != n {
        return Err(CoverError::ActionNotStructurePreserving(format!(
            "permutation over {} vertices, complex has {n}",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &i in perm {
        if i as usize >= n || seen[i as usize] {
            return Err(CoverError::ActionNotStructurePreserving(
                "not a vertex permutation".into(),
            ));
        }
        seen[i as usize] = true;
    }
    for (id, tuple) in complex.cubes() {
        let image: Vec<VertexId> = tuple.iter().map(|v| VertexId(perm[v.idx()])).collect();
        match complex.id_of(&image) {
            Some(c) if complex.cube_dim(c) == complex.cube_dim(id) => {}
            _ => {
                return Err(CoverError::ActionNotStructurePreserving(format!(
                    "cube {} maps to no cube",
                    complex.describe(id)
                )))
            }
        }
    }
    Ok(())
}

/// Setwise and pointwise stabilizer of a cube, as element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stabilizer {
    pub setwise: Vec<usize>,
    pub pointwise: Vec<usize>,
}

impl Stabilizer {
    pub fn is_trivial(&self) -> bool {
        self.setwise == [0]
    }
}

/// Pushes a vertex permutation of the stratified base complex down to the
/// dual vertices (cells map to cells of the same dimension).
pub fn induce_dual_action(d: &DualComplex, base_perm: &[u32]) -> Result<Vec<u32>, CoverError> {
    let strat = &d.strat;
    let base = strat.base();
    if base_perm.len() != base.vertex_names().len() {
        return Err(CoverError::ActionNotStructurePreserving(
            "permutation does not cover the base vertices".into(),
        ));
    }
    let mut out = vec![0u32; strat.cell_count()];
    for cell in 0..strat.cell_count() {
        let cube = strat.cube_of_cell(crate::strata::CellId(cell));
        let image: Vec<VertexId> = base
            .cube(cube)
            .iter()
            .map(|v| VertexId(base_perm[v.idx()]))
            .collect();
        let target = base.id_of(&image).ok_or_else(|| {
            CoverError::ActionNotStructurePreserving(format!(
                "base cube {} maps to no cube",
                base.describe(cube)
            ))
        })?;
        out[cell] = strat.cell_of_cube(target).idx() as u32;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

/// Outcome of the cube-stabilizer lemma checks on a dual complex.
#[derive(Clone, Debug)]
pub struct StabilizerReport {
    /// Whether every non-identity element moves every non-branch vertex.
    pub action_free_away_from_branch: bool,
    /// (a) `Stab(C)` is contained in the stabilizer of the minimal vertex.
    pub containment: CheckStatus,
    pub containment_witnesses: Vec<CubeId>,
    /// (b) equality when the minimal vertex is not a branch vertex.
    pub equality_at_nonbranch: CheckStatus,
    pub equality_witnesses: Vec<CubeId>,
    /// (c) trivial stabilizer for cubes strictly containing a branch vertex.
    pub branch_cube_trivial: CheckStatus,
    pub branch_cube_witnesses: Vec<CubeId>,
    /// (d) `Stab(cell) inter Stab(branch vertex)` trivial for non-branch cells.
    pub trivial_intersections: CheckStatus,
    pub intersection_witnesses: Vec<(VertexId, VertexId)>,
}

impl StabilizerReport {
    pub fn all_pass(&self) -> bool {
        [
            self.containment,
            self.equality_at_nonbranch,
            self.branch_cube_trivial,
            self.trivial_intersections,
        ]
        .iter()
        .all(|s| !matches!(s, CheckStatus::Fail))
    }
}

/// Checks the cube-stabilizer trichotomy on a dual complex: containment in
/// the minimal-vertex stabilizer always; equality at non-branch minima,
/// triviality above branch vertices and trivial intersections with branch
/// stabilizers under the freeness precondition.  When the action is not free
/// away from the branch vertices, the conditional checks are reported as
/// not-applicable rather than failed.
pub fn verify_stabilizer_lemmas(
    d: &DualComplex,
    action: &GroupAction,
) -> Result<StabilizerReport, CoverError> {
    action.validate_on_dual(d)?;
    let carrier = &d.carrier;

    let free = (1..action.order()).all(|e| {
        carrier
            .vertices()
            .iter()
            .all(|&v| d.is_branch(v) || action.apply_vertex(e, v) != v)
    });

    let vertex_stab = |v: VertexId| -> Vec<usize> {
        let cube = carrier.vertex_cube(v).expect("vertex exists");
        action.stabilizer(cube).expect("cube exists").setwise
    };

    let mut containment_witnesses = Vec::new();
    let mut equality_witnesses = Vec::new();
    let mut branch_cube_witnesses = Vec::new();
    for (id, _) in carrier.cubes() {
        let stab = action.stabilizer(id)?.setwise;
        let min = d.min_vertex(id);
        let min_stab = vertex_stab(min);
        if !stab.iter().all(|e| min_stab.contains(e)) {
            containment_witnesses.push(id);
        }
        if free {
            if d.is_branch(min) {
                if carrier.cube_dim(id) > 0 && stab != [0] {
                    branch_cube_witnesses.push(id);
                }
            } else if stab != min_stab {
                equality_witnesses.push(id);
            }
        }
    }

    let mut intersection_witnesses = Vec::new();
    if free {
        for &b in &d.branch {
            let bs = vertex_stab(b);
            for v in carrier.vertices() {
                if d.is_branch(v) {
                    continue;
                }
                let vs = vertex_stab(v);
                let inter: Vec<usize> =
                    vs.iter().copied().filter(|e| bs.contains(e)).collect();
                if inter != [0] {
                    intersection_witnesses.push((v, b));
                }
            }
        }
    }

    let status = |witnesses_empty: bool| {
        if witnesses_empty {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    };
    let conditional = |witnesses_empty: bool| {
        if !free {
            CheckStatus::NotApplicable
        } else {
            status(witnesses_empty)
        }
    };
    Ok(StabilizerReport {
        action_free_away_from_branch: free,
        containment: status(containment_witnesses.is_empty()),
        containment_witnesses,
        equality_at_nonbranch: conditional(equality_witnesses.is_empty()),
        equality_witnesses,
        branch_cube_trivial: conditional(branch_cube_witnesses.is_empty()),
        branch_cube_witnesses,
        trivial_intersections: conditional(intersection_witnesses.is_empty()),
        intersection_witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::dualize;
    use crate::fixtures;
    use crate::strata::stratify;

    /// Quarter rotation of the 2x2 grid: (i, j) -> (j, 2 - i).
    fn rotation_perm() -> Vec<u32> {
        (0..9u32)
            .map(|id| {
                let (i, j) = (id % 3, id / 3);
                j + 3 * (2 - i)
            })
            .collect()
    }

    fn rotated_dual() -> (DualComplex, GroupAction) {
        let (x, f) = fixtures::folded_grid(2, 2);
        let strat = Arc::new(stratify(Arc::new(x), f).unwrap());
        let centre = strat.cell_of_cube(strat.base().vertex_cube(VertexId(4)).unwrap());
        let d = dualize(&strat, &BTreeSet::from([centre])).unwrap();
        let dual_rot = induce_dual_action(&d, &rotation_perm()).unwrap();
        let action = GroupAction::from_generators(Arc::new(d.carrier.clone()), vec![dual_rot]).unwrap();
        (d, action)
    }

    #[test]
    fn rotation_generates_z4_on_the_dual() {
        let (d, action) = rotated_dual();
        assert_eq!(action.order(), 4);
        action.validate_on_dual(&d).unwrap();
    }

    #[test]
    fn centre_vertex_has_full_stabilizer_and_tiles_are_moved() {
        let (d, action) = rotated_dual();
        let centre = d
            .carrier
            .vertex_cube(*d.branch.iter().next().unwrap())
            .unwrap();
        assert_eq!(action.stabilizer(centre).unwrap().setwise.len(), 4);
        for &tile in d.strat.tiles() {
            let tv = d.carrier.vertex_cube(d.vertex_of_cell(tile)).unwrap();
            assert!(action.stabilizer(tv).unwrap().is_trivial());
        }
    }

    #[test]
    fn identity_action_passes_vacuously() {
        let (d, _) = rotated_dual();
        let action = GroupAction::identity_only(Arc::new(d.carrier.clone()));
        let report = verify_stabilizer_lemmas(&d, &action).unwrap();
        assert!(report.all_pass());
        assert!(report.action_free_away_from_branch);
    }

    #[test]
    fn stabilizer_trichotomy_on_the_rotated_grid() {
        let (d, action) = rotated_dual();
        let report = verify_stabilizer_lemmas(&d, &action).unwrap();
        assert!(report.action_free_away_from_branch);
        assert_eq!(report.containment, CheckStatus::Pass);
        assert_eq!(report.equality_at_nonbranch, CheckStatus::Pass);
        assert_eq!(report.branch_cube_trivial, CheckStatus::Pass);
        assert_eq!(report.trivial_intersections, CheckStatus::Pass);
    }

    #[test]
    fn reflection_on_the_strip_is_not_free() {
        let (x, f) = fixtures::folded_grid(2, 1);
        let strat = Arc::new(stratify(Arc::new(x), f).unwrap());
        let d = dualize(&strat, &BTreeSet::new()).unwrap();
        // (i, j) -> (2 - i, j) on vertex ids i + 3j
        let reflect: Vec<u32> = (0..6u32).map(|id| (2 - id % 3) + 3 * (id / 3)).collect();
        let dual_perm = induce_dual_action(&d, &reflect).unwrap();
        let action =
            GroupAction::from_generators(Arc::new(d.carrier.clone()), vec![dual_perm]).unwrap();
        assert_eq!(action.order(), 2);
        let report = verify_stabilizer_lemmas(&d, &action).unwrap();
        assert!(!report.action_free_away_from_branch);
        assert_eq!(report.containment, CheckStatus::Pass);
        assert_eq!(report.equality_at_nonbranch, CheckStatus::NotApplicable);
        assert_eq!(report.branch_cube_trivial, CheckStatus::NotApplicable);
        assert_eq!(report.trivial_intersections, CheckStatus::NotApplicable);
    }

    #[test]
    fn height_is_invariant_under_structure_preserving_actions() {
        let (d, action) = rotated_dual();
        for e in 0..action.order() {
            for v in d.carrier.vertices() {
                let w = action.apply_vertex(e, v);
                assert_eq!(d.height[v.idx()], d.height[w.idx()]);
            }
        }
    }

    #[test]
    fn foreign_actions_are_rejected() {
        let (d, _) = rotated_dual();
        let other = Arc::new(fixtures::grid(1, 1));
        let action = GroupAction::identity_only(other);
        assert!(matches!(
            verify_stabilizer_lemmas(&d, &action),
            Err(CoverError::ActionNotStructurePreserving(_))
        ));
    }
}
