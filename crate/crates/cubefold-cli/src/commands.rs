use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use cubefold::complex::{cubify, CubicalComplex, SimplicialComplex, VertexId};
use cubefold::covers::{
    branched_cover_of, build_cover, perm_from_cycles, pi1_presentation, CellComplex,
    CoverProjection, GroupPresentation, PermRep,
};
use cubefold::curvature::npc_certificate;
use cubefold::dual::{dualize, DualComplex};
use cubefold::folding::{
    compute_folding, simplicial_folding, verify_folding, verify_simplicial_folding,
    CubicalFolding,
};
use cubefold::homotopy::{
    contract_loop, verify_certificate, ContractOptions, ContractionCertificate, EdgePath,
    HomotopyError, Move,
};
use cubefold::strata::{stratify, CellId, Stratification};

use crate::format::{
    emit_cubical, emit_simplicial, load_complex, parse_complex_file, parse_rep_file, Loaded,
    LoadedComplex,
};
use crate::report::{Report, Status};

/// Input errors exit with code 2; failed checks exit with code 1.
pub struct InputError(pub String);

type CmdResult = Result<bool, InputError>;

fn read_file(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn parse_loaded(path: &Path) -> Result<Loaded, InputError> {
    let text = read_file(path)?;
    let file = parse_complex_file(&text)
        .map_err(|e| InputError(format!("{}:{e}", path.display())))?;
    load_complex(&file).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn emit_to(dir: &Option<PathBuf>, name: &str, content: &str) -> Result<(), InputError> {
    let Some(dir) = dir else { return Ok(()) };
    fs::create_dir_all(dir).map_err(|e| InputError(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, content).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

/// Resolves the input to a folded cubical complex, cubifying simplicial
/// input on request.  Returns the complex, an optional folding from the
/// file, and the designated branch vertices.
fn as_cubical(
    loaded: Loaded,
    cubify_flag: bool,
) -> Result<(CubicalComplex, Option<CubicalFolding>, Vec<VertexId>), InputError> {
    let simplicial = match loaded.complex {
        LoadedComplex::Cubical(x) => {
            return Ok((x, loaded.cubical_folding, loaded.branch_vertices))
        }
        LoadedComplex::Simplicial(s) => s,
        LoadedComplex::Marked(m) => m.base,
    };
    if !cubify_flag {
        return Err(InputError(
            "cubical input required; pass --cubify for simplicial input".into(),
        ));
    }
    let names: Vec<String> = loaded
        .branch_vertices
        .iter()
        .map(|&v| simplicial.vertex_name(v).to_string())
        .collect();
    let c = cubify(&simplicial).map_err(|e| InputError(e.to_string()))?;
    // cubification names the barycenter of a vertex after the vertex itself
    let branch: Vec<VertexId> = names
        .iter()
        .map(|n| {
            c.vertex_names()
                .iter()
                .position(|m| m == n)
                .map(|i| VertexId(i as u32))
                .ok_or_else(|| InputError(format!("lost branch vertex {n}")))
        })
        .collect::<Result<_, _>>()?;
    Ok((c, None, branch))
}

fn folded(
    x: Arc<CubicalComplex>,
    from_file: Option<CubicalFolding>,
    report: &mut Report,
) -> Result<Option<CubicalFolding>, InputError> {
    if let Some(f) = from_file {
        match verify_folding(&x, &f) {
            Ok(v) if v.is_valid() => {
                report.check("folding-from-file", Status::Pass);
                return Ok(Some(f));
            }
            Ok(_) => {
                report.check("folding-from-file", Status::Fail);
                report.witness("supplied labels are not a folding");
                return Ok(None);
            }
            Err(e) => return Err(InputError(e.to_string())),
        }
    }
    match compute_folding(&x) {
        Ok(f) => {
            report.check("folding-computed", Status::Pass);
            Ok(Some(f))
        }
        Err(nf) => {
            report.check("folding-computed", Status::Fail);
            let cells: Vec<String> = nf.obstruction.iter().map(|&c| x.describe(c)).collect();
            report.witness(&format!("not foldable; obstruction {}", cells.join(" ")));
            Ok(None)
        }
    }
}

pub fn cmd_check(path: &Path) -> CmdResult {
    let text = read_file(path)?;
    let file = parse_complex_file(&text)
        .map_err(|e| InputError(format!("{}:{e}", path.display())))?;
    let mut report = Report::new("check", &path.display().to_string());
    let loaded = match load_complex(&file) {
        Ok(l) => l,
        Err(e) => {
            report.check("validity", Status::Fail);
            report.witness(&e);
            let (text, _) = report.finish();
            print!("{text}");
            return Ok(true);
        }
    };
    report.check("validity", Status::Pass);
    match &loaded.complex {
        LoadedComplex::Simplicial(x) => {
            simplicial_checks(&mut report, x);
        }
        LoadedComplex::Marked(m) => {
            simplicial_checks(&mut report, &m.base);
            report.count("cone-points", m.cone_points.len());
            let admissible = m.base.is_homogeneous() && m.base.is_without_boundary();
            report.check("admissibility", Status::from_bool(admissible));
        }
        LoadedComplex::Cubical(x) => {
            report.count("cells", x.cube_count());
            report.count("euler-characteristic", x.euler_characteristic());
            let hom = x.homogeneity_witness();
            report.check("homogeneous", Status::from_bool(hom.is_none()));
            if let Some(w) = hom {
                report.witness(&format!("cell {} has no top coface", x.describe(w)));
            }
            let bd = x.boundary_witness();
            report.check("without-boundary", Status::from_bool(bd.is_none()));
            if let Some(w) = bd {
                report.witness(&format!("cell {} lies in fewer than two top cells", x.describe(w)));
            }
        }
    }
    let (text, failed) = report.finish();
    print!("{text}");
    Ok(failed)
}

fn simplicial_checks(report: &mut Report, x: &SimplicialComplex) {
    report.count("cells", x.simplex_count());
    report.count("euler-characteristic", x.euler_characteristic());
    let hom = x.homogeneity_witness();
    report.check("homogeneous", Status::from_bool(hom.is_none()));
    if let Some(w) = hom {
        report.witness(&format!("cell {} has no top coface", x.describe(w)));
    }
    let bd = x.boundary_witness();
    report.check("without-boundary", Status::from_bool(bd.is_none()));
    if let Some(w) = bd {
        report.witness(&format!(
            "cell {} lies in fewer than two top cells",
            x.describe(w)
        ));
    }
}

pub fn cmd_fold(path: &Path, cubify_flag: bool) -> CmdResult {
    let loaded = parse_loaded(path)?;
    let mut report = Report::new("fold", &path.display().to_string());
    if let (LoadedComplex::Simplicial(x), false) = (&loaded.complex, cubify_flag) {
        if let Some(f) = &loaded.simplicial_folding {
            let ok = verify_simplicial_folding(x, f)
                .map_err(|e| InputError(e.to_string()))?
                .is_valid();
            report.check("folding-from-file", Status::from_bool(ok));
            let (text, failed) = report.finish();
            print!("{text}");
            return Ok(failed);
        }
        // rainbow colouring of a simplicial complex
        match simplicial_folding(x) {
            Ok(f) => {
                report.check("folding", Status::Pass);
                debug_assert!(verify_simplicial_folding(x, &f).unwrap().is_valid());
                for v in x.vertices() {
                    report.info("label", format!("{} {}", x.vertex_name(v), f.color(v).unwrap()));
                }
            }
            Err(nf) => {
                report.check("folding", Status::Fail);
                let names: Vec<&str> = nf
                    .obstruction
                    .iter()
                    .map(|c| x.vertex_names()[c.idx()].as_str())
                    .collect();
                report.witness(&format!("no rainbow colouring; blocked at {}", names.join(" ")));
            }
        }
        let (text, failed) = report.finish();
        print!("{text}");
        return Ok(failed);
    }
    let (x, from_file, _) = as_cubical(loaded, cubify_flag)?;
    let x = Arc::new(x);
    let f = folded(Arc::clone(&x), from_file, &mut report)?;
    if let Some(f) = f {
        for v in x.vertices() {
            report.info("label", format!("{} {}", x.vertex_name(v), f.label_string(v)));
        }
    }
    let (text, failed) = report.finish();
    print!("{text}");
    Ok(failed)
}

fn stratified(
    path: &Path,
    cubify_flag: bool,
    report: &mut Report,
) -> Result<Option<(Arc<Stratification>, Vec<VertexId>)>, InputError> {
    let loaded = parse_loaded(path)?;
    let (x, from_file, branch) = as_cubical(loaded, cubify_flag)?;
    let x = Arc::new(x);
    let Some(f) = folded(Arc::clone(&x), from_file, report)? else {
        return Ok(None);
    };
    let s = stratify(Arc::clone(&x), f).map_err(|e| InputError(e.to_string()))?;
    Ok(Some((Arc::new(s), branch)))
}

fn report_stratification(report: &mut Report, s: &Stratification) {
    let n = s.dim();
    for d in 0..=n {
        report.count(&format!("cells-dim-{d}"), s.cells_of_dim(d).len());
    }
    report.count("tiles", s.tiles().len());
    report.count("mirrors", s.mirrors().len());
    for (i, m) in s.mirrors().iter().enumerate() {
        report.info(
            "mirror",
            format!(
                "m{i} family=x{}:{} cells={}",
                m.family.coord,
                m.family.side,
                m.carrier.len()
            ),
        );
    }
}

pub fn cmd_stratify(path: &Path, cubify_flag: bool) -> CmdResult {
    let mut report = Report::new("stratify", &path.display().to_string());
    if let Some((s, _)) = stratified(path, cubify_flag, &mut report)? {
        report_stratification(&mut report, &s);
        let max_local = s
            .base()
            .vertices()
            .iter()
            .map(|&v| s.local_mirror_count(v).unwrap())
            .max()
            .unwrap_or(0);
        report.count("max-mirrors-through-a-vertex", max_local);
        report.check(
            "local-mirror-bound",
            Status::from_bool(max_local <= s.dim()),
        );
    }
    let (text, failed) = report.finish();
    print!("{text}");
    Ok(failed)
}

fn branch_cells(s: &Stratification, branch: &[VertexId]) -> Result<BTreeSet<CellId>, InputError> {
    branch
        .iter()
        .map(|&v| {
            s.base()
                .vertex_cube(v)
                .map(|c| s.cell_of_cube(c))
                .ok_or_else(|| InputError(format!("branch vertex {v} is not in the complex")))
        })
        .collect()
}

fn build_dual(
    report: &mut Report,
    s: &Arc<Stratification>,
    branch: &[VertexId],
) -> Result<DualComplex, InputError> {
    let cells = branch_cells(s, branch)?;
    let d = dualize(s, &cells).map_err(|e| InputError(e.to_string()))?;
    for k in 0..=s.dim() {
        report.count(&format!("dual-cubes-dim-{k}"), d.carrier.cubes_of_dim(k).len());
    }
    report.count("branch-vertices", d.branch.len());
    report.check(
        "dual-euler-matches-base",
        Status::from_bool(d.carrier.euler_characteristic() == s.base().euler_characteristic()),
    );
    Ok(d)
}

pub fn cmd_dualize(path: &Path, cubify_flag: bool, emit_dir: &Option<PathBuf>) -> CmdResult {
    let mut report = Report::new("dualize", &path.display().to_string());
    if let Some((s, branch)) = stratified(path, cubify_flag, &mut report)? {
        let d = build_dual(&mut report, &s, &branch)?;
        let branch_verts: Vec<VertexId> = d.branch.iter().copied().collect();
        emit_to(emit_dir, "dual.txt", &emit_cubical(&d.carrier, None, &branch_verts))?;
    }
    let (text, failed) = report.finish();
    print!("{text}");
    Ok(failed)
}

pub fn cmd_npc(path: &Path, cubify_flag: bool) -> CmdResult {
    let loaded = parse_loaded(path)?;
    let (x, _, _) = as_cubical(loaded, cubify_flag)?;
    let mut report = Report::new("npc", &path.display().to_string());
    let cert = npc_certificate(&x);
    report.count("vertices", cert.links.len());
    report.check("gromov-link-condition", Status::from_bool(cert.pass));
    for failure in cert.failures() {
        let clique: Vec<String> = failure
            .witness
            .as_ref()
            .unwrap()
            .iter()
            .map(|&e| x.describe(e))
            .collect();
        report.witness(&format!(
            "vertex {} has non-flag link; clique {}",
            x.vertex_name(failure.vertex),
            clique.join(" ")
        ));
    }
    let (text, failed) = report.finish();
    print!("{text}");
    Ok(failed)
}

fn certificate_text(d: &DualComplex, cert: &ContractionCertificate) -> String {
    let mut out = String::new();
    let name = |v: VertexId| d.carrier.vertex_name(v).to_string();
    let _ = write!(out, "certificate");
    for &v in &cert.initial.verts {
        let _ = write!(out, " {}", name(v));
    }
    let _ = writeln!(out);
    for step in &cert.steps {
        match &step.mv {
            Move::Backtrack { pos } => {
                let _ = writeln!(out, "move backtrack pos {pos} len_after {}", step.len_after);
            }
            Move::Square { pos, new_vertex } => {
                let _ = writeln!(
                    out,
                    "move square pos {pos} new {} len_after {}",
                    name(*new_vertex),
                    step.len_after
                );
            }
            Move::Project {
                pos,
                len,
                mirror,
                replacement,
                excised,
            } => {
                let repl: Vec<String> = replacement.iter().map(|&v| name(v)).collect();
                let _ = writeln!(
                    out,
                    "move project pos {pos} len {len} mirror m{} replacement {} len_after {}",
                    mirror.idx(),
                    repl.join(" "),
                    step.len_after
                );
                let _ = writeln!(out, "begin_excised");
                out.push_str(&certificate_text(d, excised));
                let _ = writeln!(out, "end_excised");
            }
        }
    }
    out
}

pub fn cmd_pipeline(
    path: &Path,
    cubify_flag: bool,
    contract: bool,
    bound: Option<usize>,
    emit_dir: &Option<PathBuf>,
) -> CmdResult {
    let mut report = Report::new("pipeline", &path.display().to_string());
    let Some((s, branch)) = stratified(path, cubify_flag, &mut report)? else {
        let (text, _) = report.finish();
        print!("{text}");
        return Ok(true);
    };
    report_stratification(&mut report, &s);
    emit_to(
        emit_dir,
        "folded.txt",
        &emit_cubical(s.base(), Some(s.folding()), &branch),
    )?;
    let d = build_dual(&mut report, &s, &branch)?;
    let branch_verts: Vec<VertexId> = d.branch.iter().copied().collect();
    emit_to(emit_dir, "dual.txt", &emit_cubical(&d.carrier, None, &branch_verts))?;

    let npc = npc_certificate(&d.carrier);
    report.check("npc", Status::from_bool(npc.pass));
    for failure in npc.failures() {
        report.witness(&format!(
            "dual vertex {} has non-flag link",
            d.carrier.vertex_name(failure.vertex)
        ));
    }

    if contract {
        let basepoint = d.carrier.vertices()[0];
        let pres =
            pi1_presentation(&d.carrier, basepoint).map_err(|e| InputError(e.to_string()))?;
        report.count("generator-loops", pres.generator_count());
        let opts = ContractOptions {
            in_tile_bound: bound,
            max_depth: None,
        };
        let mut certificates = String::new();
        for g in 0..pres.generator_count() {
            let verts = pres.generator_loop(g);
            let p = EdgePath::new(verts);
            match contract_loop(&d, &p, opts) {
                Ok(cert) => {
                    verify_certificate(&d, &cert)
                        .map_err(|e| InputError(format!("produced certificate invalid: {e}")))?;
                    report.check_with(
                        &format!("contract-generator-{g}"),
                        Status::Pass,
                        &format!("length={} moves={}", p.len(), cert.move_count()),
                    );
                    certificates.push_str(&certificate_text(&d, &cert));
                }
                Err(HomotopyError::SearchExhausted { path }) => {
                    report.check_with(
                        &format!("contract-generator-{g}"),
                        Status::Fail,
                        &format!("search exhausted at length {}", path.len()),
                    );
                }
                Err(e) => return Err(InputError(e.to_string())),
            }
        }
        emit_to(emit_dir, "certificates.txt", &certificates)?;
    }

    let (text, failed) = report.finish();
    print!("{text}");
    Ok(failed)
}

pub fn cmd_cover(
    path: &Path,
    rep_path: &Path,
    branched: bool,
    emit_dir: &Option<PathBuf>,
) -> CmdResult {
    let loaded = parse_loaded(path)?;
    let rep_text = read_file(rep_path)?;
    let (degree, cycles) = parse_rep_file(&rep_text)
        .map_err(|e| InputError(format!("{}:{e}", rep_path.display())))?;
    let mut report = Report::new("cover", &path.display().to_string());
    report.count("degree", degree);

    match (&loaded.complex, branched) {
        (LoadedComplex::Marked(m), true) => {
            let punctured = m.punctured();
            run_cover(
                &mut report,
                emit_dir,
                &m.base,
                &punctured,
                &m.cone_points,
                degree,
                &cycles,
                |x| emit_simplicial(x, &[]),
            )?;
        }
        (LoadedComplex::Simplicial(x), false) => {
            run_cover(&mut report, emit_dir, x, x, &[], degree, &cycles, |x| {
                emit_simplicial(x, &[])
            })?;
        }
        (LoadedComplex::Cubical(x), false) => {
            run_cover(&mut report, emit_dir, x, x, &[], degree, &cycles, |x| {
                emit_cubical(x, None, &[])
            })?;
        }
        (LoadedComplex::Marked(_), false) => {
            return Err(InputError(
                "marked complexes take branched covers; pass --branched".into(),
            ))
        }
        (_, true) => {
            return Err(InputError(
                "--branched requires a marked complex with cone points".into(),
            ))
        }
    }
    let (text, failed) = report.finish();
    print!("{text}");
    Ok(failed)
}

/// Shared cover driver: presents the (punctured) complex, validates the
/// representation, builds the cover and reports the Euler characteristics.
#[allow(clippy::too_many_arguments)]
fn run_cover<C: CellComplex>(
    report: &mut Report,
    emit_dir: &Option<PathBuf>,
    base: &C,
    presented: &C,
    cone_points: &[VertexId],
    degree: usize,
    cycles: &[Vec<Vec<u32>>],
    emit: impl Fn(&C) -> String,
) -> Result<bool, InputError> {
    let basepoint = presented.present_vertices()[0];
    let pres: GroupPresentation =
        pi1_presentation(presented, basepoint).map_err(|e| InputError(e.to_string()))?;
    report.count("generators", pres.generator_count());
    for (g, (u, v)) in pres.generators.iter().enumerate() {
        report.info(
            "generator",
            format!(
                "g{g} edge {} {}",
                presented.vertex_names()[u.idx()],
                presented.vertex_names()[v.idx()]
            ),
        );
    }
    if cycles.len() != pres.generator_count() {
        return Err(InputError(format!(
            "representation has {} perm lines, presentation has {} generators",
            cycles.len(),
            pres.generator_count()
        )));
    }
    let perms: Vec<Vec<u32>> = cycles
        .iter()
        .map(|c| perm_from_cycles(degree, c))
        .collect::<Result<_, _>>()
        .map_err(|e| InputError(e.to_string()))?;
    let rep = PermRep::new(degree, perms).map_err(|e| InputError(e.to_string()))?;
    if let Err(e) = rep.validate(&pres) {
        report.check("representation", Status::Fail);
        report.witness(&e.to_string());
        return Ok(true);
    }
    report.check("representation", Status::Pass);

    let proj: CoverProjection<C> = if cone_points.is_empty() {
        build_cover(base, &pres, &rep).map_err(|e| InputError(e.to_string()))?
    } else {
        branched_cover_of(base, cone_points, &rep).map_err(|e| InputError(e.to_string()))?
    };
    report.check("cover-verified", Status::Pass);
    report.count("euler-base", base.euler());
    report.count("euler-total", proj.total.euler());
    if cone_points.is_empty() {
        report.check(
            "euler-multiplicative",
            Status::from_bool(proj.total.euler() == degree as i64 * base.euler()),
        );
    } else {
        for bp in &proj.branch_points {
            report.info(
                "branch-point",
                format!(
                    "{} over {} local-degree {}",
                    proj.total.vertex_names()[bp.total_vertex.idx()],
                    base.vertex_names()[bp.base_vertex.idx()],
                    bp.local_degree
                ),
            );
        }
        let punctured_chi = presented.euler();
        report.check(
            "euler-branched-formula",
            Status::from_bool(
                proj.total.euler()
                    == degree as i64 * punctured_chi + proj.branch_points.len() as i64,
            ),
        );
    }
    emit_to(emit_dir, "cover.txt", &emit(&proj.total))?;
    Ok(report.failed())
}
