use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{CellComplex, CoverError};
use crate::complex::VertexId;

/// Edge-path group presentation from a spanning tree: generators are the
/// edges outside the tree, relators come from the boundaries of 2-cells.
#[derive(Clone, Debug)]
pub struct GroupPresentation {
    pub basepoint: VertexId,
    /// Oriented non-tree edges, in the stored tuple order of the edge cell.
    pub generators: Vec<(VertexId, VertexId)>,
    /// Words in generator letters: `+ (i + 1)` and `- (i + 1)`.
    pub relators: Vec<Vec<i32>>,
    tree_parent: BTreeMap<VertexId, VertexId>,
    gen_of_edge: BTreeMap<(VertexId, VertexId), usize>,
}

/// Spanning-tree presentation of the edge-path group.  The tree is built by
/// BFS from the basepoint with sorted neighbour order, so the presentation is
/// reproducible.
pub fn pi1_presentation<C: CellComplex>(
    x: &C,
    basepoint: VertexId,
) -> Result<GroupPresentation, CoverError> {
    let verts = x.present_vertices();
    if !verts.contains(&basepoint) {
        return Err(CoverError::Disconnected(basepoint.0));
    }
    let edges: Vec<(VertexId, VertexId)> = (0..x.cell_count())
        .filter(|&c| x.cell_dim(c) == 1)
        .map(|c| {
            let t = x.cell_tuple(c);
            (t[0], t[1])
        })
        .collect();
    let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> =
        verts.iter().map(|&v| (v, BTreeSet::new())).collect();
    for &(u, v) in &edges {
        adj.get_mut(&u).unwrap().insert(v);
        adj.get_mut(&v).unwrap().insert(u);
    }
    let mut tree_parent = BTreeMap::new();
    let mut seen = BTreeSet::from([basepoint]);
    let mut queue = VecDeque::from([basepoint]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[&u] {
            if seen.insert(v) {
                tree_parent.insert(v, u);
                queue.push_back(v);
            }
        }
    }
    if let Some(v) = verts.iter().find(|v| !seen.contains(v)) {
        return Err(CoverError::Disconnected(v.0));
    }
    let tree_edge = |u: VertexId, v: VertexId| {
        tree_parent.get(&u) == Some(&v) || tree_parent.get(&v) == Some(&u)
    };
    let generators: Vec<(VertexId, VertexId)> = edges
        .iter()
        .copied()
        .filter(|&(u, v)| !tree_edge(u, v))
        .collect();
    let gen_of_edge: BTreeMap<(VertexId, VertexId), usize> = generators
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| ((u.min(v), u.max(v)), i))
        .collect();

    let mut relators = Vec::new();
    for c in 0..x.cell_count() {
        if x.cell_dim(c) != 2 {
            continue;
        }
        let cycle = x.boundary_cycle(c);
        let tuple = x.cell_tuple(c);
        let mut word = Vec::new();
        for i in 0..cycle.len() {
            let a = tuple[cycle[i]];
            let b = tuple[cycle[(i + 1) % cycle.len()]];
            if tree_edge(a, b) {
                continue;
            }
            let g = gen_of_edge[&(a.min(b), a.max(b))];
            let sign = if (a, b) == generators[g] { 1 } else { -1 };
            word.push(sign * (g as i32 + 1));
        }
        relators.push(word);
    }
    Ok(GroupPresentation {
        basepoint,
        generators,
        relators,
        tree_parent,
        gen_of_edge,
    })
}

impl GroupPresentation {
    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// Path from the basepoint to `v` along the spanning tree.
    pub fn tree_path(&self, v: VertexId) -> Vec<VertexId> {
        let mut back = vec![v];
        let mut at = v;
        while let Some(&p) = self.tree_parent.get(&at) {
            back.push(p);
            at = p;
        }
        back.reverse();
        back
    }

    /// The closed loop realizing a generator: tree path to the edge, the
    /// edge, and the tree path back.
    pub fn generator_loop(&self, g: usize) -> Vec<VertexId> {
        let (u, v) = self.generators[g];
        let mut out = self.tree_path(u);
        let mut ret = self.tree_path(v);
        ret.reverse();
        out.extend(ret);
        out
    }

    /// Whether an edge lies on the spanning tree.
    pub fn is_tree_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.tree_parent.get(&u) == Some(&v) || self.tree_parent.get(&v) == Some(&u)
    }

    pub fn generator_of_edge(&self, u: VertexId, v: VertexId) -> Option<usize> {
        self.gen_of_edge.get(&(u.min(v), u.max(v))).copied()
    }

    /// Integer abelianization via elementary divisors of the relator matrix.
    pub fn abelianization(&self) -> Abelianization {
        let rows = self.relators.len();
        let cols = self.generators.len();
        let mut m = vec![vec![0i64; cols]; rows];
        for (r, word) in self.relators.iter().enumerate() {
            for &letter in word {
                let g = letter.unsigned_abs() as usize - 1;
                m[r][g] += letter.signum() as i64;
            }
        }
        let divisors = smith_diagonal(m, rows, cols);
        let nonzero: Vec<u64> = divisors
            .iter()
            .filter(|&&d| d != 0)
            .map(|&d| d.unsigned_abs())
            .collect();
        Abelianization {
            free_rank: cols - nonzero.len(),
            torsion: nonzero.into_iter().filter(|&d| d > 1).collect(),
        }
    }
}

/// First homology data: a free part and the torsion divisors greater than 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abelianization {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

/// Diagonal of the Smith normal form.
fn smith_diagonal(mut m: Vec<Vec<i64>>, rows: usize, cols: usize) -> Vec<i64> {
    let mut out = Vec::new();
    let mut top = 0;
    while top < rows.min(cols) {
        // find the smallest non-zero entry in the remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for r in top..rows {
            for c in top..cols {
                if m[r][c] != 0
                    && pivot.is_none_or(|(pr, pc)| m[r][c].abs() < m[pr][pc].abs())
                {
                    pivot = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        m.swap(top, pr);
        for row in m.iter_mut() {
            row.swap(top, pc);
        }
        let mut dirty = false;
        for r in (top + 1)..rows {
            let q = m[r][top] / m[top][top];
            if q != 0 {
                for c in top..cols {
                    m[r][c] -= q * m[top][c];
                }
            }
            if m[r][top] != 0 {
                dirty = true;
            }
        }
        for c in (top + 1)..cols {
            let q = m[top][c] / m[top][top];
            if q != 0 {
                for r in top..rows {
                    m[r][c] -= q * m[r][top];
                }
            }
            if m[top][c] != 0 {
                dirty = true;
            }
        }
        if dirty {
            continue; // repeat with a smaller pivot
        }
        out.push(m[top][top].abs());
        top += 1;
    }
    // enforce the divisibility chain
    let mut i = 0;
    while i + 1 < out.len() {
        if out[i] != 0 && out[i + 1] % out[i] != 0 {
            let a = out[i];
            let b = out[i + 1];
            let g = gcd(a, b);
            out[i] = g;
            out[i + 1] = a / g * b;
            i = i.saturating_sub(1);
        } else {
            i += 1;
        }
    }
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// A permutation of `{0..degree-1}` per generator; relators must act as the
/// identity and the image must be transitive (a connected cover).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermRep {
    pub degree: usize,
    pub perms: Vec<Vec<u32>>,
}

impl PermRep {
    pub fn new(degree: usize, perms: Vec<Vec<u32>>) -> Result<Self, CoverError> {
        if degree == 0 {
            return Err(CoverError::BadPermutation("degree must be positive".into()));
        }
        for p in &perms {
            if p.len() != degree {
                return Err(CoverError::BadPermutation(format!(
                    "permutation has {} entries, degree is {degree}",
                    p.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &i in p {
                if i as usize >= degree || seen[i as usize] {
                    return Err(CoverError::BadPermutation("not a bijection".into()));
                }
                seen[i as usize] = true;
            }
        }
        Ok(Self { degree, perms })
    }

    pub fn identity(degree: usize, generators: usize) -> Self {
        Self {
            degree,
            perms: vec![(0..degree as u32).collect(); generators],
        }
    }

    fn apply(&self, letter: i32, sheet: u32) -> u32 {
        let g = letter.unsigned_abs() as usize - 1;
        if letter > 0 {
            self.perms[g][sheet as usize]
        } else {
            self.perms[g]
                .iter()
                .position(|&t| t == sheet)
                .map(|i| i as u32)
                .expect("validated permutation")
        }
    }

    pub fn transport(&self, word: &[i32], sheet: u32) -> u32 {
        word.iter().fold(sheet, |s, &l| self.apply(l, s))
    }

    /// Checks that the representation kills every relator and acts
    /// transitively; degree-1 representations are vacuously transitive.
    pub fn validate(&self, pres: &GroupPresentation) -> Result<(), CoverError> {
        if self.perms.len() != pres.generator_count() {
            return Err(CoverError::GeneratorCountMismatch {
                got: self.perms.len(),
                want: pres.generator_count(),
            });
        }
        for (i, relator) in pres.relators.iter().enumerate() {
            for s in 0..self.degree as u32 {
                if self.transport(relator, s) != s {
                    return Err(CoverError::RelatorNotKilled { relator: i });
                }
            }
        }
        let mut reached = BTreeSet::from([0u32]);
        let mut stack = vec![0u32];
        while let Some(s) = stack.pop() {
            for g in 0..self.perms.len() {
                for letter in [g as i32 + 1, -(g as i32 + 1)] {
                    let t = self.apply(letter, s);
                    if reached.insert(t) {
                        stack.push(t);
                    }
                }
            }
        }
        if reached.len() != self.degree {
            return Err(CoverError::NotTransitive);
        }
        Ok(())
    }
}

/// Builds a permutation from disjoint cycles in 1-based sheet labels, e.g.
/// `[[1, 2, 3]]` for a 3-cycle; unlisted sheets stay fixed.
pub fn perm_from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Vec<u32>, CoverError> {
    let mut perm: Vec<u32> = (0..degree as u32).collect();
    let mut moved = vec![false; degree];
    for cycle in cycles {
        for w in 0..cycle.len() {
            let from = cycle[w];
            let to = cycle[(w + 1) % cycle.len()];
            if from == 0 || from as usize > degree || to == 0 || to as usize > degree {
                return Err(CoverError::BadPermutation(format!(
                    "sheet {from} out of range 1..{degree}"
                )));
            }
            if moved[from as usize - 1] {
                return Err(CoverError::BadPermutation(format!(
                    "sheet {from} appears twice"
                )));
            }
            moved[from as usize - 1] = true;
            perm[from as usize - 1] = to - 1;
        }
    }
    Ok(perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn four_cycle_is_infinite_cyclic() {
        let x = fixtures::cubical_cycle(4);
        let p = pi1_presentation(&x, VertexId(0)).unwrap();
        assert_eq!(p.generator_count(), 1);
        assert!(p.relators.is_empty());
        assert_eq!(
            p.abelianization(),
            Abelianization {
                free_rank: 1,
                torsion: vec![]
            }
        );
    }

    #[test]
    fn single_square_is_simply_connected() {
        let x = fixtures::grid(1, 1);
        let p = pi1_presentation(&x, VertexId(0)).unwrap();
        assert_eq!(p.generator_count(), 1);
        assert_eq!(p.relators.len(), 1);
        assert_eq!(
            p.abelianization(),
            Abelianization {
                free_rank: 0,
                torsion: vec![]
            }
        );
    }

    #[test]
    fn three_by_three_torus_has_rank_two_homology() {
        let x = fixtures::torus(3, 3);
        let p = pi1_presentation(&x, VertexId(0)).unwrap();
        assert_eq!(p.generator_count(), 10);
        assert_eq!(p.relators.len(), 9);
        assert_eq!(
            p.abelianization(),
            Abelianization {
                free_rank: 2,
                torsion: vec![]
            }
        );
    }

    #[test]
    fn disconnected_complex_is_rejected() {
        let x = crate::complex::SimplicialComplex::from_vertex_sets(&[vec![0, 1], vec![2, 3]])
            .unwrap();
        assert!(matches!(
            pi1_presentation(&x, VertexId(0)),
            Err(CoverError::Disconnected(_))
        ));
    }

    #[test]
    fn generator_loops_are_closed_paths() {
        let x = fixtures::torus(3, 3);
        let p = pi1_presentation(&x, VertexId(0)).unwrap();
        for g in 0..p.generator_count() {
            let l = p.generator_loop(g);
            assert_eq!(l.first(), l.last());
            assert!(l.len() >= 2);
        }
    }

    #[test]
    fn relators_are_killed_by_valid_reps() {
        let x = fixtures::cubical_cycle(4);
        let p = pi1_presentation(&x, VertexId(0)).unwrap();
        let rep = PermRep::new(3, vec![perm_from_cycles(3, &[vec![1, 2, 3]]).unwrap()]).unwrap();
        rep.validate(&p).unwrap();

        let not_transitive =
            PermRep::new(3, vec![perm_from_cycles(3, &[vec![1, 2]]).unwrap()]).unwrap();
        assert!(matches!(
            not_transitive.validate(&p),
            Err(CoverError::NotTransitive)
        ));
    }

    #[test]
    fn relator_violations_are_reported() {
        let x = fixtures::grid(1, 1);
        let p = pi1_presentation(&x, VertexId(0)).unwrap();
        // the square's relator is the single generator; a swap does not kill it
        let rep = PermRep::new(2, vec![perm_from_cycles(2, &[vec![1, 2]]).unwrap()]).unwrap();
        assert!(matches!(
            rep.validate(&p),
            Err(CoverError::RelatorNotKilled { .. })
        ));
    }

    #[test]
    fn smith_form_handles_torsion() {
        // Z^2 / <(2,0),(0,3)> = Z/2 + Z/3 = Z/6 after the divisibility chain
        let divisors = smith_diagonal(vec![vec![2, 0], vec![0, 3]], 2, 2);
        assert_eq!(divisors, vec![1, 6]);
    }

    #[test]
    fn cycle_notation_round_trip() {
        let p = perm_from_cycles(4, &[vec![1, 3], vec![2, 4]]).unwrap();
        assert_eq!(p, vec![2, 3, 0, 1]);
        assert!(perm_from_cycles(2, &[vec![1, 1]]).is_err());
        assert!(perm_from_cycles(2, &[vec![5]]).is_err());
    }
}
