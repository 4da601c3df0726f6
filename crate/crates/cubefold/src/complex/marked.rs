use std::collections::{BTreeMap, BTreeSet};

use super::{ComplexError, SimplexId, SimplicialComplex, VertexId};

/// A simplicial complex together with its cone points and the subcomplexes
/// they cone off.  Produced by [`relative_cone`] and consumed by the branched
/// cover machinery.
#[derive(Clone, Debug)]
pub struct MarkedComplex {
    pub base: SimplicialComplex,
    pub cone_points: Vec<VertexId>,
    /// For each cone point, the simplices of its recorded link.
    pub cone_links: Vec<Vec<SimplexId>>,
}

impl MarkedComplex {
    /// Marks the given vertices of an existing complex as cone points; their
    /// links are recorded from the complex itself.  Fails when a cone point's
    /// star is not a cone (some cell contains two cone points) or the link is
    /// disconnected.
    pub fn mark(base: SimplicialComplex, cone_points: Vec<VertexId>) -> Result<Self, ComplexError> {
        for (_, s) in base.simplices() {
            let marked = s.iter().filter(|v| cone_points.contains(v)).count();
            if marked > 1 {
                return Err(ComplexError::BadConePoint(
                    s[0].0,
                    "a cell contains two cone points".into(),
                ));
            }
        }
        let mut cone_links = Vec::new();
        for &y in &cone_points {
            if base.id_of(&[y]).is_none() {
                return Err(ComplexError::UnknownVertex(y.0));
            }
            let link = link_simplices(&base, y);
            if link.is_empty() {
                return Err(ComplexError::BadConePoint(y.0, "isolated cone point".into()));
            }
            if !link_connected(&base, &link) {
                return Err(ComplexError::BadConePoint(
                    y.0,
                    "cone link is disconnected".into(),
                ));
            }
            cone_links.push(link);
        }
        Ok(Self {
            base,
            cone_points,
            cone_links,
        })
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.base.euler_characteristic()
    }

    /// The complex with the open stars of all cone points removed.
    pub fn punctured(&self) -> SimplicialComplex {
        self.base.delete_open_stars(&self.cone_points)
    }
}

/// Simplices not containing `y` that span a cell together with `y`.
fn link_simplices(x: &SimplicialComplex, y: VertexId) -> Vec<SimplexId> {
    x.simplices()
        .filter(|(_, s)| s.contains(&y))
        .filter_map(|(_, s)| {
            let rest: Vec<VertexId> = s.iter().copied().filter(|&v| v != y).collect();
            if rest.is_empty() {
                None
            } else {
                x.id_of(&rest)
            }
        })
        .collect()
}

fn link_connected(x: &SimplicialComplex, link: &[SimplexId]) -> bool {
    let verts: BTreeSet<VertexId> = link
        .iter()
        .flat_map(|&s| x.simplex(s).iter().copied())
        .collect();
    let Some(&start) = verts.iter().next() else {
        return true;
    };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &s in link {
            let cell = x.simplex(s);
            if cell.contains(&v) {
                for &w in cell {
                    if verts.contains(&w) && seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
        }
    }
    seen.len() == verts.len()
}

/// Attaches a cone over every connected component of the subcomplex `l` of
/// `k`, one new cone vertex per component.
pub fn relative_cone(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
) -> Result<MarkedComplex, ComplexError> {
    for (_, s) in l.simplices() {
        if !k.contains(s) {
            return Err(ComplexError::NotASubcomplex {
                cell: s.iter().map(|v| v.0).collect(),
            });
        }
    }
    // components of L through shared vertices
    let mut comp: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut n_comp = 0;
    for v in l.vertices() {
        if comp.contains_key(&v) {
            continue;
        }
        let mut stack = vec![v];
        comp.insert(v, n_comp);
        while let Some(u) = stack.pop() {
            for (_, s) in l.simplices() {
                if s.contains(&u) {
                    for &w in s {
                        if comp.insert(w, n_comp).is_none() {
                            stack.push(w);
                        }
                    }
                }
            }
        }
        n_comp += 1;
    }

    let mut names = k.vertex_names().to_vec();
    let mut cone_points = Vec::new();
    for i in 0..n_comp {
        cone_points.push(VertexId(names.len() as u32));
        names.push(format!("cone{i}"));
    }
    let mut cells: Vec<Vec<VertexId>> = k.simplices().map(|(_, s)| s.to_vec()).collect();
    for (_, s) in l.simplices() {
        let c = comp[&s[0]];
        let mut coned = s.to_vec();
        coned.push(cone_points[c]);
        cells.push(coned);
    }
    let base = SimplicialComplex::from_simplices(names, cells)?;
    MarkedComplex::mark(base, cone_points)
}

/// Result of the admissibility check on a pair `(K, L)`: the coned complex
/// must be homogeneous and without boundary.
#[derive(Clone, Debug)]
pub struct AdmissibilityReport {
    pub coned_dim: Option<usize>,
    pub homogeneous: bool,
    pub homogeneity_witness: Option<String>,
    pub without_boundary: bool,
    pub boundary_witness: Option<String>,
}

impl AdmissibilityReport {
    pub fn admissible(&self) -> bool {
        self.homogeneous && self.without_boundary
    }

    pub fn of(x: &SimplicialComplex) -> Self {
        AdmissibilityReport {
            coned_dim: x.dim(),
            homogeneous: x.is_homogeneous(),
            homogeneity_witness: x.homogeneity_witness().map(|w| x.describe(w)),
            without_boundary: x.is_without_boundary(),
            boundary_witness: x.boundary_witness().map(|w| x.describe(w)),
        }
    }
}

/// Builds `relative_cone(k, l)` and reports whether the result is homogeneous
/// and every codimension-1 cell lies in at least two top cells.
pub fn admissibility_check(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
) -> Result<(MarkedComplex, AdmissibilityReport), ComplexError> {
    let coned = relative_cone(k, l)?;
    let report = AdmissibilityReport::of(&coned.base);
    Ok((coned, report))
}
