//! The complex file format and the permutation-representation file format.
//!
//! Complex files are plain text and line oriented.  Recognized fields:
//!
//! ```text
//! kind simplicial|cubical|marked
//! dim <n>
//! vertices <name> ...
//! cell <name> ...          # repeated; cubical cells in binary-index order
//! cone_points <name> ...   # marked complexes only
//! label <vertex> <value>   # folding labels: bitstring (cubical) or colour
//! branch_cells <name> ...  # vertices whose dual 0-cells are branch vertices
//! ```
//!
//! Blank lines and `#` comments are allowed; unknown fields are rejected
//! with a position.  Emission is canonical, so emitted files are byte-stable
//! under re-parsing.

use std::collections::BTreeMap;
use std::fmt;

use cubefold::complex::{CubicalComplex, MarkedComplex, SimplicialComplex, VertexId};
use cubefold::folding::{CubicalFolding, SimplicialFolding};

#[derive(Debug, Clone)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.msg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileKind {
    Simplicial,
    Cubical,
    Marked,
}

/// A parsed complex document, before resolution against the core types.
#[derive(Debug, Clone)]
pub struct ComplexFile {
    pub kind: FileKind,
    pub dim: usize,
    pub vertex_names: Vec<String>,
    pub cells: Vec<Vec<String>>,
    pub cone_points: Vec<String>,
    pub labels: Vec<(String, String)>,
    pub branch_cells: Vec<String>,
}

/// A complex resolved from a file, with optional folding data.
pub enum LoadedComplex {
    Simplicial(SimplicialComplex),
    Cubical(CubicalComplex),
    Marked(MarkedComplex),
}

pub struct Loaded {
    pub complex: LoadedComplex,
    pub cubical_folding: Option<CubicalFolding>,
    pub simplicial_folding: Option<SimplicialFolding>,
    pub branch_vertices: Vec<VertexId>,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        col,
        msg: msg.into(),
    }
}

pub fn parse_complex_file(text: &str) -> Result<ComplexFile, ParseError> {
    let mut kind = None;
    let mut dim = None;
    let mut vertex_names: Vec<String> = Vec::new();
    let mut cells = Vec::new();
    let mut cone_points = Vec::new();
    let mut labels = Vec::new();
    let mut branch_cells = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut words = line.split_whitespace();
        let field = words.next().unwrap();
        let rest: Vec<String> = words.map(|w| w.to_string()).collect();
        match field {
            "kind" => {
                let k = match rest.first().map(|s| s.as_str()) {
                    Some("simplicial") => FileKind::Simplicial,
                    Some("cubical") => FileKind::Cubical,
                    Some("marked") => FileKind::Marked,
                    other => {
                        return Err(err(
                            lineno,
                            6,
                            format!("unknown kind {:?}", other.unwrap_or("")),
                        ))
                    }
                };
                kind = Some(k);
            }
            "dim" => {
                let d = rest
                    .first()
                    .and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| err(lineno, 5, "dim expects a number"))?;
                dim = Some(d);
            }
            "vertices" => vertex_names.extend(rest),
            "cell" => {
                if rest.is_empty() {
                    return Err(err(lineno, 5, "cell expects vertex names"));
                }
                cells.push(rest);
            }
            "cone_points" => cone_points.extend(rest),
            "label" => {
                if rest.len() != 2 {
                    return Err(err(lineno, 6, "label expects a vertex and a value"));
                }
                labels.push((rest[0].clone(), rest[1].clone()));
            }
            "branch_cells" => branch_cells.extend(rest),
            other => return Err(err(lineno, 1, format!("unknown field {other:?}"))),
        }
    }
    let kind = kind.ok_or_else(|| err(text.lines().count() + 1, 1, "missing kind"))?;
    let dim = dim.ok_or_else(|| err(text.lines().count() + 1, 1, "missing dim"))?;
    if vertex_names.is_empty() {
        return Err(err(text.lines().count() + 1, 1, "missing vertices"));
    }
    Ok(ComplexFile {
        kind,
        dim,
        vertex_names,
        cells,
        cone_points,
        labels,
        branch_cells,
    })
}

pub fn load_complex(file: &ComplexFile) -> Result<Loaded, String> {
    let ids: BTreeMap<&str, VertexId> = file
        .vertex_names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), VertexId(i as u32)))
        .collect();
    if ids.len() != file.vertex_names.len() {
        return Err("duplicate vertex names".into());
    }
    let resolve = |name: &str| -> Result<VertexId, String> {
        ids.get(name)
            .copied()
            .ok_or_else(|| format!("unknown vertex {name:?}"))
    };
    let cells: Vec<Vec<VertexId>> = file
        .cells
        .iter()
        .map(|c| c.iter().map(|n| resolve(n)).collect())
        .collect::<Result<_, _>>()?;

    let complex = match file.kind {
        FileKind::Simplicial | FileKind::Marked => {
            let x = SimplicialComplex::from_simplices(file.vertex_names.clone(), cells)
                .map_err(|e| e.to_string())?;
            if x.dim() != Some(file.dim) {
                return Err(format!(
                    "declared dim {} but the complex has dim {:?}",
                    file.dim,
                    x.dim()
                ));
            }
            if file.kind == FileKind::Marked {
                let cone: Vec<VertexId> = file
                    .cone_points
                    .iter()
                    .map(|n| resolve(n))
                    .collect::<Result<_, _>>()?;
                if cone.is_empty() {
                    return Err("marked complexes need cone_points".into());
                }
                LoadedComplex::Marked(MarkedComplex::mark(x, cone).map_err(|e| e.to_string())?)
            } else {
                if !file.cone_points.is_empty() {
                    return Err("cone_points require kind marked".into());
                }
                LoadedComplex::Simplicial(x)
            }
        }
        FileKind::Cubical => {
            if !file.cone_points.is_empty() {
                return Err("cone_points require kind marked".into());
            }
            let x = CubicalComplex::from_cubes(file.vertex_names.clone(), cells)
                .map_err(|e| e.to_string())?;
            if x.dim() != Some(file.dim) {
                return Err(format!(
                    "declared dim {} but the complex has dim {:?}",
                    file.dim,
                    x.dim()
                ));
            }
            LoadedComplex::Cubical(x)
        }
    };

    let mut cubical_folding = None;
    let mut simplicial_folding = None;
    if !file.labels.is_empty() {
        match file.kind {
            FileKind::Cubical => {
                let mut labels = BTreeMap::new();
                for (name, value) in &file.labels {
                    let v = resolve(name)?;
                    if value.chars().any(|c| c != '0' && c != '1') {
                        return Err(format!("label {value:?} is not a bitstring"));
                    }
                    if value.len() != file.dim {
                        return Err(format!(
                            "label {value:?} has {} bits, dim is {}",
                            value.len(),
                            file.dim
                        ));
                    }
                    let mut bits = 0u32;
                    for (i, ch) in value.chars().enumerate() {
                        if ch == '1' {
                            bits |= 1 << i;
                        }
                    }
                    labels.insert(v, bits);
                }
                cubical_folding =
                    Some(CubicalFolding::new(file.dim, labels).map_err(|e| e.to_string())?);
            }
            _ => {
                let mut colors = BTreeMap::new();
                for (name, value) in &file.labels {
                    let v = resolve(name)?;
                    let c: u32 = value
                        .parse()
                        .map_err(|_| format!("label {value:?} is not a colour"))?;
                    colors.insert(v, c);
                }
                simplicial_folding = Some(SimplicialFolding::new(file.dim, colors));
            }
        }
    }
    let branch_vertices = file
        .branch_cells
        .iter()
        .map(|n| resolve(n))
        .collect::<Result<_, _>>()?;
    Ok(Loaded {
        complex,
        cubical_folding,
        simplicial_folding,
        branch_vertices,
    })
}

/// Canonical emission of a cubical complex; parses back to the same bytes.
pub fn emit_cubical(
    x: &CubicalComplex,
    folding: Option<&CubicalFolding>,
    branch: &[VertexId],
) -> String {
    let mut out = String::new();
    out.push_str("kind cubical\n");
    out.push_str(&format!("dim {}\n", x.dim().unwrap_or(0)));
    let used: Vec<VertexId> = x.vertices();
    out.push_str("vertices");
    for v in &used {
        out.push(' ');
        out.push_str(x.vertex_name(*v));
    }
    out.push('\n');
    for m in x.maximal_cubes() {
        out.push_str("cell");
        for &v in x.cube(m) {
            out.push(' ');
            out.push_str(x.vertex_name(v));
        }
        out.push('\n');
    }
    if let Some(f) = folding {
        for v in &used {
            out.push_str(&format!("label {} {}\n", x.vertex_name(*v), f.label_string(*v)));
        }
    }
    if !branch.is_empty() {
        out.push_str("branch_cells");
        for v in branch {
            out.push(' ');
            out.push_str(x.vertex_name(*v));
        }
        out.push('\n');
    }
    out
}

pub fn emit_simplicial(x: &SimplicialComplex, cone_points: &[VertexId]) -> String {
    let mut out = String::new();
    out.push_str(if cone_points.is_empty() {
        "kind simplicial\n"
    } else {
        "kind marked\n"
    });
    out.push_str(&format!("dim {}\n", x.dim().unwrap_or(0)));
    out.push_str("vertices");
    for v in x.vertices() {
        out.push(' ');
        out.push_str(x.vertex_name(v));
    }
    out.push('\n');
    for (id, s) in x.simplices() {
        if !x.cofacets(id).is_empty() {
            continue;
        }
        out.push_str("cell");
        for &v in s {
            out.push(' ');
            out.push_str(x.vertex_name(v));
        }
        out.push('\n');
    }
    if !cone_points.is_empty() {
        out.push_str("cone_points");
        for v in cone_points {
            out.push(' ');
            out.push_str(x.vertex_name(*v));
        }
        out.push('\n');
    }
    out
}


/// Permutation-representation files: `degree <d>` then one `perm` line per
/// generator, in cycle notation over 1-based sheets (`id` for the identity).
pub fn parse_rep_file(text: &str) -> Result<(usize, Vec<Vec<Vec<u32>>>), ParseError> {
    let mut degree = None;
    let mut perms = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("degree") {
            degree = Some(
                rest.trim()
                    .parse::<usize>()
                    .map_err(|_| err(lineno, 8, "degree expects a number"))?,
            );
        } else if let Some(rest) = line.strip_prefix("perm") {
            let body = rest.trim();
            if body == "id" {
                perms.push(Vec::new());
                continue;
            }
            let mut cycles = Vec::new();
            for chunk in body.split(')') {
                let chunk = chunk.trim();
                if chunk.is_empty() {
                    continue;
                }
                let Some(inner) = chunk.strip_prefix('(') else {
                    return Err(err(lineno, 6, "cycles look like (1 2 3)"));
                };
                let cycle: Vec<u32> = inner
                    .split_whitespace()
                    .map(|w| {
                        w.parse::<u32>()
                            .map_err(|_| err(lineno, 6, format!("bad sheet {w:?}")))
                    })
                    .collect::<Result<_, _>>()?;
                cycles.push(cycle);
            }
            perms.push(cycles);
        } else {
            return Err(err(lineno, 1, format!("unknown field {:?}", line.split_whitespace().next().unwrap())));
        }
    }
    let degree = degree.ok_or_else(|| err(text.lines().count() + 1, 1, "missing degree"))?;
    Ok((degree, perms))
}
