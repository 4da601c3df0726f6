//! Edge paths and loops in the dual complex: mirror crossings, bridges, the
//! length-decreasing projection onto a dual mirror, and loop-contraction
//! certificates.
//!
//! A contraction certificate is a move sequence (bridge projections, square
//! moves, backtrack removals) driving a closed loop to a constant.  Every
//! move is locally re-checkable, and [`verify_certificate`] replays a
//! certificate against the dual complex with no access to the search.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::complex::VertexId;
use crate::dual::DualComplex;
use crate::strata::{CellId, MirrorId};

/// A sequence of pairwise adjacent vertices in the dual complex; closed when
/// the first and last agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePath {
    pub verts: Vec<VertexId>,
}

impl EdgePath {
    pub fn new(verts: Vec<VertexId>) -> Self {
        assert!(!verts.is_empty(), "a path visits at least one vertex");
        Self { verts }
    }

    pub fn from_ids(ids: &[u32]) -> Self {
        Self::new(ids.iter().map(|&v| VertexId(v)).collect())
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.verts.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_closed(&self) -> bool {
        self.verts.first() == self.verts.last()
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (*self.verts.first().unwrap(), *self.verts.last().unwrap())
    }

    /// Checks adjacency of consecutive vertices in the carrier of `d`.
    pub fn validate(&self, d: &DualComplex) -> Result<(), HomotopyError> {
        for w in self.verts.windows(2) {
            if d.carrier.edge_cube(w[0], w[1]).is_none() {
                return Err(HomotopyError::InvalidPath(format!(
                    "{} and {} are not adjacent",
                    w[0], w[1]
                )));
            }
        }
        Ok(())
    }

    /// Cyclic form of a closed path: the vertex list without the final
    /// repeat.  A constant loop becomes the empty cycle.
    fn cycle(&self) -> Vec<VertexId> {
        self.verts[..self.verts.len() - 1].to_vec()
    }

    fn from_cycle(cycle: &[VertexId], basepoint: VertexId) -> Self {
        if cycle.is_empty() {
            return Self::new(vec![basepoint]);
        }
        let mut verts = cycle.to_vec();
        verts.push(cycle[0]);
        Self::new(verts)
    }
}

/// An edge path whose endpoints lie in a dual mirror without the whole path
/// doing so; `start` records where it sits in the ambient loop.
#[derive(Clone, Debug)]
pub struct Bridge {
    pub path: EdgePath,
    pub mirror: MirrorId,
    pub start: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomotopyError {
    #[error("invalid edge path: {0}")]
    InvalidPath(String),
    #[error("path is not contained in any dual tile")]
    NotInDualTile,
    #[error("projection undefined at {vertex}: {reason}")]
    ProjectionUndefined { vertex: VertexId, reason: String },
    #[error("search exhausted on a loop of length {}", path.len())]
    SearchExhausted { path: EdgePath },
    #[error("mirror does not belong to this dual complex")]
    ForeignMirror,
}

/// Number of maximal subpaths of `p` inside the dual mirror that are entered
/// and exited transversally: the neighbouring vertices on the two sides lie
/// in disjoint sets of complement components.  Touching the dual mirror and
/// retreating to the same side counts as zero.
pub fn crossings(d: &DualComplex, p: &EdgePath, mirror: MirrorId) -> Result<usize, HomotopyError> {
    if mirror.idx() >= d.strat.mirrors().len() {
        return Err(HomotopyError::ForeignMirror);
    }
    let w = d.mirror_vertices(mirror);
    let comps = d.strat.complement_of_mirror(mirror);
    let comp_of: BTreeMap<CellId, usize> = comps
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.iter().map(move |&t| (t, i)))
        .collect();
    let sides = |v: VertexId| -> BTreeSet<usize> {
        d.strat
            .tiles_above(d.cell_of_vertex(v))
            .into_iter()
            .map(|t| comp_of[&t])
            .collect()
    };

    let closed = p.is_closed();
    let verts: Vec<VertexId> = if closed { p.cycle() } else { p.verts.clone() };
    let s = verts.len();
    if s == 0 || verts.iter().all(|v| w.contains(v)) {
        return Ok(0);
    }
    let inside: Vec<bool> = verts.iter().map(|v| w.contains(v)).collect();
    let mut count = 0;
    let mut i = 0;
    while i < s {
        if !inside[i] {
            i += 1;
            continue;
        }
        // maximal run starting at i; for closed paths runs may wrap, so skip
        // a run that wraps into the start unless we began outside
        if closed && i == 0 && inside[s - 1] {
            i += 1;
            continue;
        }
        let mut j = i;
        while j + 1 < s && inside[j + 1] {
            j += 1;
        }
        let (before, after) = if closed {
            let wrapped_j = if j == s - 1 && inside[0] {
                // run wraps around the seam
                let mut k = 0;
                while inside[k] {
                    k += 1;
                }
                k - 1
            } else {
                j
            };
            (
                Some(verts[(i + s - 1) % s]),
                Some(verts[(wrapped_j + 1) % s]),
            )
        } else {
            (
                (i > 0).then(|| verts[i - 1]),
                (j + 1 < s).then(|| verts[j + 1]),
            )
        };
        if let (Some(u), Some(x)) = (before, after) {
            let (su, sx) = (sides(u), sides(x));
            if !su.is_empty() && !sx.is_empty() && su.is_disjoint(&sx) {
                count += 1;
            }
        }
        if closed && j == s - 1 {
            break;
        }
        i = j + 1;
    }
    Ok(count)
}

/// Dual-mirror vertex sets for every mirror, plus the map cell -> mirrors.
fn mirror_membership(d: &DualComplex) -> (Vec<&BTreeSet<VertexId>>, BTreeMap<VertexId, Vec<MirrorId>>) {
    let mut sets = Vec::new();
    let mut of_vertex: BTreeMap<VertexId, Vec<MirrorId>> = BTreeMap::new();
    for i in 0..d.strat.mirrors().len() {
        let set = d.mirror_vertices(MirrorId(i));
        for &v in set {
            of_vertex.entry(v).or_default().push(MirrorId(i));
        }
        sets.push(set);
    }
    (sets, of_vertex)
}

/// Finds a bridge none of whose proper subpaths is a bridge, or `None` when
/// the loop has no bridge at all (for instance when it lies in a dual tile).
/// Tie-break: earliest starting position in the loop, then shortest.
pub fn find_minimal_bridge(d: &DualComplex, p: &EdgePath) -> Result<Option<Bridge>, HomotopyError> {
    if !p.is_closed() {
        return Err(HomotopyError::InvalidPath("loop is not closed".into()));
    }
    p.validate(d)?;
    let cyc = p.cycle();
    let s = cyc.len();
    if s == 0 {
        return Ok(None);
    }
    let (sets, of_vertex) = mirror_membership(d);
    let empty = Vec::new();
    let is_bridge = |start: usize, len: usize| -> Option<MirrorId> {
        let a = cyc[start % s];
        let b = cyc[(start + len) % s];
        let ma = of_vertex.get(&a).unwrap_or(&empty);
        let mb = of_vertex.get(&b).unwrap_or(&empty);
        for m in ma {
            if !mb.contains(m) {
                continue;
            }
            let contained = (0..=len).all(|i| sets[m.idx()].contains(&cyc[(start + i) % s]));
            if !contained {
                return Some(*m);
            }
        }
        None
    };
    // only proper arcs: the whole loop re-read as a path from any basepoint
    // is a degenerate bridge whose split makes no progress
    let max_len = s - 1;
    if max_len < 2 {
        return Ok(None);
    }
    let bridge_cache: BTreeMap<(usize, usize), Option<MirrorId>> = (0..s)
        .flat_map(|st| (2..=max_len).map(move |len| (st, len)))
        .map(|(st, len)| ((st, len), is_bridge(st, len)))
        .collect();
    for start in 0..s {
        for len in 2..=max_len {
            let Some(m) = bridge_cache[&(start, len)] else {
                continue;
            };
            // minimal: no proper contiguous subpath is a bridge
            let minimal = (0..=len).all(|off| {
                (2..len).all(|sub_len| {
                    off + sub_len > len
                        || bridge_cache[&((start + off) % s, sub_len)].is_none()
                })
            });
            if minimal {
                let verts: Vec<VertexId> = (0..=len).map(|i| cyc[(start + i) % s]).collect();
                return Ok(Some(Bridge {
                    path: EdgePath::new(verts),
                    mirror: m,
                    start,
                }));
            }
        }
    }
    Ok(None)
}

/// Projects a minimal bridge onto its supporting dual mirror: each dual cell
/// drops to its face in the mirror, or through a neighbouring tile meeting
/// the mirror in a facet.  The result has the same endpoints and is shorter
/// by at least two; anything else reports `ProjectionUndefined`, which
/// signals that the bridge was not minimal.
pub fn project_bridge(d: &DualComplex, b: &Bridge) -> Result<EdgePath, HomotopyError> {
    let strat = &d.strat;
    if b.mirror.idx() >= strat.mirrors().len() {
        return Err(HomotopyError::ForeignMirror);
    }
    let mirror = strat.mirror(b.mirror);
    let base = strat.base();
    let n = strat.dim();
    let in_mirror =
        |cell: CellId| -> bool { mirror.carrier.contains(&strat.cube_of_cell(cell)) };
    let (p0, p1) = b.path.endpoints();
    for v in [p0, p1] {
        if !in_mirror(d.cell_of_vertex(v)) {
            return Err(HomotopyError::ProjectionUndefined {
                vertex: v,
                reason: "endpoint is not on the supporting mirror".into(),
            });
        }
    }

    let project_cell = |v: VertexId| -> Result<CellId, HomotopyError> {
        let cell = d.cell_of_vertex(v);
        let cube = strat.cube_of_cell(cell);
        if mirror.carrier.contains(&cube) {
            return Ok(cell);
        }
        let faces_in: Vec<_> = base
            .faces(cube)
            .iter()
            .copied()
            .filter(|c| mirror.carrier.contains(c))
            .collect();
        if !faces_in.is_empty() {
            let maxes: Vec<_> = faces_in
                .iter()
                .copied()
                .filter(|&c| !faces_in.iter().any(|&e| e != c && base.faces(e).contains(&c)))
                .collect();
            if maxes.len() != 1 {
                return Err(HomotopyError::ProjectionUndefined {
                    vertex: v,
                    reason: "cell meets the mirror in more than one face".into(),
                });
            }
            return Ok(strat.cell_of_cube(maxes[0]));
        }
        // drop through a tile that meets the mirror in a facet
        let mut candidates: BTreeSet<CellId> = BTreeSet::new();
        for tile in strat.tiles_above(cell) {
            let tile_cube = strat.cube_of_cell(tile);
            let wall: Vec<_> = base
                .faces(tile_cube)
                .iter()
                .copied()
                .filter(|c| mirror.carrier.contains(c) && base.cube_dim(*c) == n - 1)
                .collect();
            let [wall_cube] = wall[..] else { continue };
            let (sigma_mask, sigma_vals) = base
                .embed_face(cube, tile_cube)
                .expect("cell is a face of its tile");
            let (wall_mask, wall_vals) = base
                .embed_face(wall_cube, tile_cube)
                .expect("wall is a face of the tile");
            let mask = sigma_mask | wall_mask;
            let vals = (sigma_vals & !wall_mask) | wall_vals;
            candidates.insert(strat.cell_of_cube(base.face_id(tile_cube, mask, vals)));
        }
        match candidates.len() {
            1 => Ok(candidates.into_iter().next().unwrap()),
            0 => Err(HomotopyError::ProjectionUndefined {
                vertex: v,
                reason: "no face in the mirror and no tile meeting it in a facet".into(),
            }),
            _ => Err(HomotopyError::ProjectionUndefined {
                vertex: v,
                reason: "tiles project the cell to different faces".into(),
            }),
        }
    };

    let mut projected: Vec<VertexId> = Vec::new();
    for &v in &b.path.verts {
        let pv = d.vertex_of_cell(project_cell(v)?);
        if projected.last() != Some(&pv) {
            projected.push(pv);
        }
    }
    let out = EdgePath::new(projected);
    out.validate(d)?;
    let ok = out.endpoints() == b.path.endpoints()
        && out
            .verts
            .iter()
            .all(|&v| in_mirror(d.cell_of_vertex(v)))
        && out.len() + 2 <= b.path.len();
    if !ok {
        return Err(HomotopyError::ProjectionUndefined {
            vertex: p0,
            reason: "projection does not shorten by two inside the mirror".into(),
        });
    }
    Ok(out)
}

/// A single certificate move, recorded against the loop state it applies to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    /// Requires `loop[pos] == loop[pos + 2]`; removes the excursion.
    Backtrack { pos: usize },
    /// Replaces `loop[pos + 1]` by the opposite corner of a filled square.
    Square { pos: usize, new_vertex: VertexId },
    /// Replaces the subpath of `len` edges starting at `pos` by its mirror
    /// projection; the excised sub-loop carries its own certificate.
    Project {
        pos: usize,
        len: usize,
        mirror: MirrorId,
        replacement: Vec<VertexId>,
        excised: Box<ContractionCertificate>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub mv: Move,
    pub len_after: usize,
}

/// A verifiable contraction of a closed loop to a constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionCertificate {
    pub initial: EdgePath,
    pub steps: Vec<Step>,
}

impl ContractionCertificate {
    pub fn move_count(&self) -> usize {
        self.steps
            .iter()
            .map(|s| match &s.mv {
                Move::Project { excised, .. } => 1 + excised.move_count(),
                _ => 1,
            })
            .sum()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateViolation {
    #[error("initial path invalid: {0}")]
    BadInitial(String),
    #[error("step {step}: {reason}")]
    BadMove { step: usize, reason: String },
    #[error("step {step}: recorded length {recorded} differs from actual {actual}")]
    LengthMismatch {
        step: usize,
        recorded: usize,
        actual: usize,
    },
    #[error("terminal state is not the constant loop")]
    NotConstant,
}

fn cyc_get(cycle: &[VertexId], i: usize) -> VertexId {
    cycle[i % cycle.len()]
}

fn apply_backtrack(cycle: &[VertexId], pos: usize) -> Result<Vec<VertexId>, String> {
    let s = cycle.len();
    if s < 2 {
        return Err("loop too short for a backtrack".into());
    }
    if cyc_get(cycle, pos) != cyc_get(cycle, pos + 2) {
        return Err("no backtrack at this position".into());
    }
    let drop = [(pos + 1) % s, (pos + 2) % s];
    Ok((0..s)
        .filter(|i| !drop.contains(i))
        .map(|i| cycle[i])
        .collect())
}

fn apply_square(
    d: &DualComplex,
    cycle: &[VertexId],
    pos: usize,
    new_vertex: VertexId,
) -> Result<Vec<VertexId>, String> {
    let s = cycle.len();
    if s < 2 {
        return Err("loop too short for a square move".into());
    }
    let (a, b, c) = (
        cyc_get(cycle, pos),
        cyc_get(cycle, pos + 1),
        cyc_get(cycle, pos + 2),
    );
    let corners = vec![a, b, c, new_vertex];
    let square = d
        .carrier
        .id_of_set(&corners)
        .filter(|&q| d.carrier.cube_dim(q) == 2)
        .ok_or("the four corners span no filled square")?;
    let tuple = d.carrier.cube(square);
    let at = |v: VertexId| tuple.iter().position(|&u| u == v).unwrap();
    if at(b) ^ at(new_vertex) != 3 {
        return Err("replacement corner is not opposite the replaced one".into());
    }
    let mut out = cycle.to_vec();
    out[(pos + 1) % s] = new_vertex;
    Ok(out)
}

/// Splices `replacement` over the `len`-edge subpath starting at `pos`.
fn apply_project(
    d: &DualComplex,
    cycle: &[VertexId],
    pos: usize,
    len: usize,
    mirror: MirrorId,
    replacement: &[VertexId],
) -> Result<Vec<VertexId>, String> {
    let s = cycle.len();
    if len < 2 || len > s {
        return Err("bridge length out of range".into());
    }
    if mirror.idx() >= d.strat.mirrors().len() {
        return Err("foreign mirror".into());
    }
    let mset = d.mirror_vertices(mirror);
    let sub: Vec<VertexId> = (0..=len).map(|i| cyc_get(cycle, pos + i)).collect();
    if replacement.is_empty() {
        return Err("empty replacement".into());
    }
    if replacement.first() != sub.first() || replacement.last() != sub.last() {
        return Err("projection must preserve endpoints".into());
    }
    if !mset.contains(&sub[0]) || !mset.contains(&sub[len]) {
        return Err("endpoints are not on the supporting mirror".into());
    }
    if sub.iter().all(|v| mset.contains(v)) {
        return Err("subpath lies inside the dual mirror: not a bridge".into());
    }
    if !replacement.iter().all(|v| mset.contains(v)) {
        return Err("replacement leaves the dual mirror".into());
    }
    for w in replacement.windows(2) {
        if d.carrier.edge_cube(w[0], w[1]).is_none() {
            return Err("replacement is not an edge path".into());
        }
    }
    let r = replacement.len() - 1;
    if r + 2 > len {
        return Err("projection does not shorten by two".into());
    }
    let mut out: Vec<VertexId> = replacement[..r].to_vec();
    if len < s {
        out.push(replacement[r]);
        out.extend((len + 1..s).map(|i| cyc_get(cycle, pos + i)));
    }
    Ok(out)
}

/// Vertices of all dual tiles meeting the dual mirror: the neighbourhood the
/// length-decreasing projection is supported on.
fn mirror_neighborhood(d: &DualComplex, mirror: MirrorId) -> BTreeSet<VertexId> {
    let mset = d.mirror_vertices(mirror);
    let mut out = BTreeSet::new();
    for (_, verts) in d.tile_vertex_sets() {
        if verts.iter().any(|v| mset.contains(v)) {
            out.extend(verts.iter().copied());
        }
    }
    out
}

/// The sub-loop excised by a projection: the bridge followed by the reversed
/// replacement.
fn excised_cycle(sub: &[VertexId], replacement: &[VertexId]) -> Vec<VertexId> {
    let mut out = sub.to_vec();
    if replacement.len() == 1 {
        out.pop(); // constant replacement: the bridge endpoints coincide
    } else {
        out.extend(replacement[1..replacement.len() - 1].iter().rev().copied());
    }
    out
}

/// Replays a certificate against the dual complex, checking every move.
pub fn verify_certificate(
    d: &DualComplex,
    cert: &ContractionCertificate,
) -> Result<(), CertificateViolation> {
    if !cert.initial.is_closed() {
        return Err(CertificateViolation::BadInitial("not closed".into()));
    }
    cert.initial
        .validate(d)
        .map_err(|e| CertificateViolation::BadInitial(e.to_string()))?;
    let mut cur = cert.initial.cycle();
    for (i, step) in cert.steps.iter().enumerate() {
        let bad = |reason: String| CertificateViolation::BadMove { step: i, reason };
        cur = match &step.mv {
            Move::Backtrack { pos } => apply_backtrack(&cur, *pos).map_err(bad)?,
            Move::Square { pos, new_vertex } => {
                apply_square(d, &cur, *pos, *new_vertex).map_err(bad)?
            }
            Move::Project {
                pos,
                len,
                mirror,
                replacement,
                excised,
            } => {
                let sub: Vec<VertexId> = (0..=*len).map(|j| cyc_get(&cur, pos + j)).collect();
                let next =
                    apply_project(d, &cur, *pos, *len, *mirror, replacement).map_err(bad)?;
                let want = excised_cycle(&sub, replacement);
                if excised.initial.cycle() != want {
                    return Err(bad("excised certificate contracts a different loop".into()));
                }
                verify_certificate(d, excised)?;
                next
            }
        };
        if cur.len() != step.len_after {
            return Err(CertificateViolation::LengthMismatch {
                step: i,
                recorded: step.len_after,
                actual: cur.len(),
            });
        }
    }
    if cur.is_empty() {
        Ok(())
    } else {
        Err(CertificateViolation::NotConstant)
    }
}

/// Options for the contraction search.
#[derive(Clone, Copy, Debug, Default)]
pub struct ContractOptions {
    /// Move bound for the in-tile search; default `4 * length`.
    pub in_tile_bound: Option<usize>,
    /// Recursion bound on bridge steps; default `4 * length + 8`.
    pub max_depth: Option<usize>,
}

/// Contracts a loop contained in a single dual tile by bounded breadth-first
/// search over square moves and backtrack removals.  Exhaustion is an
/// explicit failure, never silent.
pub fn contract_in_tile(
    d: &DualComplex,
    p: &EdgePath,
    opts: ContractOptions,
) -> Result<ContractionCertificate, HomotopyError> {
    if !p.is_closed() {
        return Err(HomotopyError::InvalidPath("loop is not closed".into()));
    }
    p.validate(d)?;
    let keep = d
        .tile_vertex_sets()
        .iter()
        .find(|(_, keep)| p.verts.iter().all(|v| keep.contains(v)))
        .map(|(_, keep)| keep)
        .ok_or(HomotopyError::NotInDualTile)?;
    search_contraction(d, p, Some(keep), opts.in_tile_bound)
}

const SEARCH_STATE_CAP: usize = 500_000;

/// Square-move table: the loop corner `(a, b, c)` rewrites to the opposite
/// corner of the unique filled square through those three vertices.
fn square_completions(d: &DualComplex) -> BTreeMap<(VertexId, VertexId, VertexId), VertexId> {
    let mut map = BTreeMap::new();
    for q in d.carrier.cubes_of_dim(2) {
        let t = d.carrier.cube(q);
        // corner index pairs along the sides: positions b and d are diagonal
        for (a, b, c) in [(0, 1, 3), (1, 3, 2), (3, 2, 0), (2, 0, 1)] {
            let opp = 3 ^ b;
            map.insert((t[a], t[b], t[c]), t[opp]);
            map.insert((t[c], t[b], t[a]), t[opp]);
        }
    }
    map
}

/// Index of the lexicographically smallest rotation of a cyclic word.
fn min_rotation_start(c: &[VertexId]) -> usize {
    let s = c.len();
    let mut best = 0;
    for cand in 1..s {
        for k in 0..s {
            let x = c[(cand + k) % s];
            let y = c[(best + k) % s];
            if x < y {
                best = cand;
                break;
            }
            if x > y {
                break;
            }
        }
    }
    best
}

fn canonical_rotation(c: &[VertexId]) -> Vec<VertexId> {
    if c.is_empty() {
        return Vec::new();
    }
    let r = min_rotation_start(c);
    let mut out = c[r..].to_vec();
    out.extend_from_slice(&c[..r]);
    out
}

fn search_contraction(
    d: &DualComplex,
    p: &EdgePath,
    keep: Option<&BTreeSet<VertexId>>,
    bound: Option<usize>,
) -> Result<ContractionCertificate, HomotopyError> {
    let start = p.cycle();
    let bound = bound.unwrap_or(4 * start.len()).max(4);
    let completions = square_completions(d);

    struct Node {
        cycle: Vec<VertexId>,
        parent: Option<(usize, Move)>,
        depth: usize,
    }
    let mut nodes = vec![Node {
        cycle: start.clone(),
        parent: None,
        depth: 0,
    }];
    let mut visited: BTreeSet<Vec<VertexId>> = BTreeSet::from([canonical_rotation(&start)]);
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    let mut goal: Option<usize> = None;
    'bfs: while let Some(ni) = queue.pop_front() {
        if nodes[ni].cycle.is_empty() {
            goal = Some(ni);
            break;
        }
        if nodes[ni].depth >= bound {
            continue;
        }
        let cur = nodes[ni].cycle.clone();
        let s = cur.len();
        let mut moves: Vec<(Move, Vec<VertexId>)> = Vec::new();
        for pos in 0..s {
            if cyc_get(&cur, pos) == cyc_get(&cur, pos + 2) {
                let drop = [(pos + 1) % s, (pos + 2) % s];
                let next = (0..s).filter(|i| !drop.contains(i)).map(|i| cur[i]).collect();
                moves.push((Move::Backtrack { pos }, next));
            }
        }
        for pos in 0..s {
            let key = (
                cyc_get(&cur, pos),
                cyc_get(&cur, pos + 1),
                cyc_get(&cur, pos + 2),
            );
            if key.0 == key.2 {
                continue;
            }
            let Some(&v) = completions.get(&key) else {
                continue;
            };
            if keep.is_some_and(|k| !k.contains(&v)) {
                continue;
            }
            let mut next = cur.clone();
            next[(pos + 1) % s] = v;
            moves.push((Move::Square { pos, new_vertex: v }, next));
        }
        for (mv, next) in moves {
            let key = canonical_rotation(&next);
            if visited.insert(key) {
                let empty = next.is_empty();
                nodes.push(Node {
                    cycle: next,
                    parent: Some((ni, mv)),
                    depth: nodes[ni].depth + 1,
                });
                queue.push_back(nodes.len() - 1);
                if empty {
                    // first constant reached wins; finish this expansion
                    goal = Some(nodes.len() - 1);
                    break 'bfs;
                }
            }
        }
        if visited.len() > SEARCH_STATE_CAP {
            break;
        }
    }
    let Some(mut at) = goal else {
        return Err(HomotopyError::SearchExhausted { path: p.clone() });
    };
    let mut steps_rev: Vec<Step> = Vec::new();
    while let Some((parent, mv)) = nodes[at].parent.clone() {
        steps_rev.push(Step {
            mv,
            len_after: nodes[at].cycle.len(),
        });
        at = parent;
    }
    steps_rev.reverse();
    Ok(ContractionCertificate {
        initial: p.clone(),
        steps: steps_rev,
    })
}

/// Contracts an arbitrary closed loop: loops inside a dual tile go to the
/// bounded in-tile search; otherwise a minimal bridge is projected, the loop
/// splits into two strictly shorter loops, and both recurse.  Loops that
/// admit no strictly shortening split (essential loops) end in
/// `SearchExhausted`.
pub fn contract_loop(
    d: &DualComplex,
    p: &EdgePath,
    opts: ContractOptions,
) -> Result<ContractionCertificate, HomotopyError> {
    if !p.is_closed() {
        return Err(HomotopyError::InvalidPath("loop is not closed".into()));
    }
    p.validate(d)?;
    let depth_bound = opts.max_depth.unwrap_or(4 * p.len() + 8);
    contract_rec(d, p, opts, depth_bound)
}

fn contract_rec(
    d: &DualComplex,
    p: &EdgePath,
    opts: ContractOptions,
    depth: usize,
) -> Result<ContractionCertificate, HomotopyError> {
    let cyc = p.cycle();
    if cyc.is_empty() {
        return Ok(ContractionCertificate {
            initial: p.clone(),
            steps: Vec::new(),
        });
    }
    match contract_in_tile(d, p, opts) {
        Ok(cert) => return Ok(cert),
        Err(HomotopyError::NotInDualTile) => {}
        Err(other) => return Err(other),
    }
    if depth == 0 {
        return Err(HomotopyError::SearchExhausted { path: p.clone() });
    }
    let Some(bridge) = find_minimal_bridge(d, p)? else {
        return Err(HomotopyError::SearchExhausted { path: p.clone() });
    };
    let projected = match project_bridge(d, &bridge) {
        Ok(path) => path,
        Err(HomotopyError::ProjectionUndefined { .. }) => {
            return Err(HomotopyError::SearchExhausted { path: p.clone() })
        }
        Err(e) => return Err(e),
    };
    let s = cyc.len();
    let len = bridge.path.len();
    let main_cycle = apply_project(
        d,
        &cyc,
        bridge.start,
        len,
        bridge.mirror,
        &projected.verts,
    )
    .map_err(|reason| HomotopyError::ProjectionUndefined {
        vertex: bridge.path.verts[0],
        reason,
    })?;
    // the main loop is shorter by at least two; the excised loop (bridge
    // followed by the reversed projection) is a strip inside the dual tiles
    // meeting the supporting dual mirror and is filled by bounded search
    if main_cycle.len() + 2 > s {
        return Err(HomotopyError::SearchExhausted { path: p.clone() });
    }
    let excised = excised_cycle(&bridge.path.verts, &projected.verts);
    let excised_path = EdgePath::from_cycle(&excised, bridge.path.verts[0]);
    let region = mirror_neighborhood(d, bridge.mirror);
    let excised_cert = search_contraction(d, &excised_path, Some(&region), opts.in_tile_bound)?;
    let main_path = EdgePath::from_cycle(&main_cycle, projected.verts[0]);
    let main_cert = contract_rec(d, &main_path, opts, depth - 1)?;
    let mut steps = vec![Step {
        mv: Move::Project {
            pos: bridge.start,
            len,
            mirror: bridge.mirror,
            replacement: projected.verts.clone(),
            excised: Box::new(excised_cert),
        },
        len_after: main_cycle.len(),
    }];
    steps.extend(main_cert.steps);
    Ok(ContractionCertificate {
        initial: p.clone(),
        steps,
    })
}
