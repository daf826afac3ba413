//! Command-line front end: file ingestion, subcommands over the library
//! operations, JSON and DOT emission, and a fixture-corpus runner.
//!
//! Exit codes: 0 on success, 1 when a requested check fails (e.g. the
//! semigroup condition), 2 on input or usage errors.

mod output;
mod report;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use orbsplice_core::graphs::{parse_graph, serialize, validate, DecoratedGraph};
use orbsplice_core::homology::{discriminant_group, linking_matrix, orbifold_homology};
use orbsplice_core::reps::{diagonal_rep, orbifold_diagonal_rep};
use orbsplice_core::splice::{
    congruence_check, generate_equations, semigroup_check, splice_diagram, substitute_powers,
    verify_equivariance, SpliceError,
};

use output::*;

#[derive(Parser)]
#[command(name = "orbsplice", version, about = "Exact invariants of plumbing graphs")]
struct Cli {
    /// Emit JSON instead of plain text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check tree shape, negative definiteness and quasi-minimality
    Validate { file: PathBuf },
    /// Invariant factors of the homology group of the link
    Homology {
        file: PathBuf,
        /// Use the orbifold group of the decorated graph
        #[arg(long)]
        orbifold: bool,
    },
    /// Linking numbers of the meridian knots (minus the inverse intersection matrix)
    Linking { file: PathBuf },
    /// Diagonal representation on the leaf coordinates
    Rep {
        file: PathBuf,
        /// Use the orbifold group and weight-divided coordinates
        #[arg(long)]
        orbifold: bool,
    },
    /// Splice diagram with edge weights; optional condition checks
    Splice {
        file: PathBuf,
        #[arg(long)]
        check_semigroup: bool,
        #[arg(long)]
        check_congruence: bool,
    },
    /// Splice equations for the universal abelian cover
    Equations {
        file: PathBuf,
        /// Substitute leaf powers (log cover equations, z-variables)
        #[arg(long)]
        substitute: bool,
        /// Cap on admissible-monomial enumeration per edge
        #[arg(long, default_value_t = orbsplice_core::splice::DEFAULT_MONOMIAL_CAP)]
        cap: usize,
    },
    /// Blow up a free point (--free V) or an edge intersection (--edge V W)
    Blowup {
        file: PathBuf,
        #[arg(long, value_name = "V", conflicts_with = "edge")]
        free: Option<String>,
        #[arg(long, num_args = 2, value_names = ["V", "W"])]
        edge: Option<Vec<String>>,
    },
    /// Blow down a -1 vertex of valence at most two
    Blowdown { file: PathBuf, vertex: String },
    /// Render the graph (or its splice diagram) as DOT text
    Render {
        file: PathBuf,
        #[arg(long)]
        splice: bool,
        #[arg(long, default_value = "dot")]
        format: String,
    },
    /// Full invariant report
    Report { file: PathBuf },
    /// Run reports over every .graph file in a directory
    Corpus { dir: PathBuf },
}

/// Entry point; returns the process exit code.
pub fn run<I>(argv: I) -> i32
where
    I: IntoIterator,
    I::Item: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(
        std::iter::once(std::ffi::OsString::from("orbsplice"))
            .chain(argv.into_iter().map(Into::into)),
    ) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/version on stdout with code 0
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn load(path: &Path) -> Result<DecoratedGraph, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_graph(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn dispatch(cli: &Cli) -> Result<i32, String> {
    match &cli.command {
        Command::Validate { file } => cmd_validate(&load(file)?, cli.json),
        Command::Homology { file, orbifold } => cmd_homology(&load(file)?, *orbifold, cli.json),
        Command::Linking { file } => cmd_linking(&load(file)?, cli.json),
        Command::Rep { file, orbifold } => cmd_rep(&load(file)?, *orbifold, cli.json),
        Command::Splice {
            file,
            check_semigroup,
            check_congruence,
        } => cmd_splice(&load(file)?, *check_semigroup, *check_congruence, cli.json),
        Command::Equations {
            file,
            substitute,
            cap,
        } => cmd_equations(&load(file)?, *substitute, *cap, cli.json),
        Command::Blowup { file, free, edge } => {
            let d = load(file)?;
            let out = match (free, edge) {
                (Some(v), None) => d.blow_up_free(v).map_err(|e| e.to_string())?,
                (None, Some(vw)) => d.blow_up_edge(&vw[0], &vw[1]).map_err(|e| e.to_string())?,
                _ => return Err("blowup needs exactly one of --free V or --edge V W".into()),
            };
            emit_graph(&out, cli.json);
            Ok(0)
        }
        Command::Blowdown { file, vertex } => {
            let out = load(file)?.blow_down(vertex).map_err(|e| e.to_string())?;
            emit_graph(&out, cli.json);
            Ok(0)
        }
        Command::Render {
            file,
            splice,
            format,
        } => {
            if format != "dot" {
                return Err(format!("unsupported render format `{format}`"));
            }
            let d = load(file)?;
            let text = if *splice {
                let sd = splice_diagram(&d).map_err(|e| e.to_string())?;
                render_splice_dot(&sd)
            } else {
                render_graph_dot(&d)
            };
            print!("{text}");
            Ok(0)
        }
        Command::Report { file } => {
            let name = file
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| file.display().to_string());
            let r = report::build(&name, &load(file)?)?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&r.to_json()).unwrap());
            } else {
                print!("{}", r.to_text());
            }
            Ok(if r.all_pass() { 0 } else { 1 })
        }
        Command::Corpus { dir } => cmd_corpus(dir, cli.json),
    }
}

fn cmd_validate(d: &DecoratedGraph, as_json: bool) -> Result<i32, String> {
    let r = validate(d);
    if as_json {
        let v = json!({
            "determinant": r.determinant.to_string(),
            "checks": {
                "tree": check_json(r.is_tree, &[]),
                "negative_definite": check_json(r.is_negative_definite, &[]),
                "quasi_minimal": check_json(r.is_quasi_minimal, &[]),
            },
            "violations": r.violations,
        });
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        println!("determinant: {}", r.determinant);
        println!("tree: {}", pass(r.is_tree));
        println!("negative definite: {}", pass(r.is_negative_definite));
        println!("quasi-minimal: {}", pass(r.is_quasi_minimal));
        for v in &r.violations {
            println!("  - {v}");
        }
    }
    Ok(if r.all_ok() { 0 } else { 1 })
}

fn cmd_homology(d: &DecoratedGraph, orbifold: bool, as_json: bool) -> Result<i32, String> {
    let g = if orbifold {
        orbifold_homology(d).map_err(|e| e.to_string())?
    } else {
        discriminant_group(d.graph()).map_err(|e| e.to_string())?
    };
    if as_json {
        let mut v = group_json(&g);
        v["vertex_order"] = json!(d.graph().vertex_ids());
        v["generator_images"] = json!(g
            .generator_images()
            .iter()
            .map(element_json)
            .collect::<Vec<_>>());
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        println!("invariant factors: {}", factors_text(&g));
        match g.order() {
            Some(o) => println!("order: {o}"),
            None => println!("order: infinite (free rank {})", g.free_rank()),
        }
    }
    Ok(0)
}

fn cmd_linking(d: &DecoratedGraph, as_json: bool) -> Result<i32, String> {
    let l = linking_matrix(d.graph()).map_err(|e| e.to_string())?;
    let ids = d.graph().vertex_ids();
    if as_json {
        let rows: Vec<Vec<String>> = (0..l.rows())
            .map(|i| (0..l.cols()).map(|j| l.get(i, j).to_string()).collect())
            .collect();
        let v = json!({ "vertex_order": ids, "matrix": rows });
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        for (i, id) in ids.iter().enumerate() {
            let row: Vec<String> = (0..l.cols()).map(|j| l.get(i, j).to_string()).collect();
            println!("{id}: {}", row.join(" "));
        }
    }
    Ok(0)
}

fn cmd_rep(d: &DecoratedGraph, orbifold: bool, as_json: bool) -> Result<i32, String> {
    let rep = if orbifold {
        orbifold_diagonal_rep(d).map_err(|e| e.to_string())?
    } else {
        diagonal_rep(d).map_err(|e| e.to_string())?
    };
    let ids = d.graph().vertex_ids();
    if as_json {
        let images: serde_json::Map<String, Value> = ids
            .iter()
            .map(|id| {
                let img = rep.image_of_vertex(id).unwrap();
                (id.clone(), qmodz_json(img))
            })
            .collect();
        let v = json!({
            "leaf_order": rep.leaf_order,
            "group": group_json(&rep.group),
            "images": images,
        });
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        println!("leaf order: {}", rep.leaf_order.join(" "));
        println!("group: {}", factors_text(&rep.group));
        for id in &ids {
            println!("{id} -> {}", rep.image_of_vertex(id).unwrap());
        }
    }
    Ok(0)
}

fn cmd_splice(
    d: &DecoratedGraph,
    check_semigroup: bool,
    check_congruence: bool,
    as_json: bool,
) -> Result<i32, String> {
    let sd = splice_diagram(d).map_err(|e| e.to_string())?;
    let semi = check_semigroup.then(|| semigroup_check(&sd));
    let congr = if check_congruence {
        Some(congruence_check(d, &sd, orbsplice_core::splice::DEFAULT_MONOMIAL_CAP)
            .map_err(|e| e.to_string())?)
    } else {
        None
    };
    let mut failed = false;
    if as_json {
        let mut checks = serde_json::Map::new();
        if let Some(s) = &semi {
            failed |= !s.pass;
            let witnesses: Vec<String> = s
                .checks
                .iter()
                .filter(|c| !c.pass)
                .map(|c| format!("{} -> {}: {} not in <{}>", c.node, c.toward, c.target, join_bigints(&c.generators)))
                .collect();
            checks.insert("semigroup".into(), check_json(s.pass, &witnesses));
        }
        if let Some(c) = &congr {
            failed |= !c.pass;
            let witnesses: Vec<String> = c
                .nodes
                .iter()
                .filter(|n| !n.pass)
                .map(|n| format!("no common character at node {}", n.node))
                .collect();
            checks.insert("congruence".into(), check_json(c.pass, &witnesses));
        }
        let v = json!({
            "nodes": sd.node_ids(),
            "leaves": sd.leaf_ids(),
            "edges": splice_edges_json(&sd),
            "checks": checks,
        });
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        println!("nodes: {}", sd.node_ids().join(" "));
        println!("leaves: {}", sd.leaf_ids().join(" "));
        for (a, b, wa, wb) in splice_edges(&sd) {
            let mut line = format!("edge {a} -- {b}");
            if let Some(w) = wa {
                line.push_str(&format!("  weight({a}) = {w}"));
            }
            if let Some(w) = wb {
                line.push_str(&format!("  weight({b}) = {w}"));
            }
            println!("{line}");
        }
        if let Some(s) = &semi {
            failed |= !s.pass;
            println!("semigroup: {}", pass(s.pass));
            for c in s.checks.iter().filter(|c| !c.pass) {
                println!(
                    "  - {} -> {}: {} is not a combination of <{}>",
                    c.node, c.toward, c.target, join_bigints(&c.generators)
                );
            }
        }
        if let Some(c) = &congr {
            failed |= !c.pass;
            println!("congruence: {}", pass(c.pass));
            for n in c.nodes.iter().filter(|n| !n.pass) {
                println!("  - no common character at node {}", n.node);
            }
        }
    }
    Ok(if failed { 1 } else { 0 })
}

fn cmd_equations(
    d: &DecoratedGraph,
    substitute: bool,
    cap: usize,
    as_json: bool,
) -> Result<i32, String> {
    let sd = splice_diagram(d).map_err(|e| e.to_string())?;
    let semi = semigroup_check(&sd);
    let congr = congruence_check(d, &sd, cap).map_err(|e| e.to_string())?;
    if !(semi.pass && congr.pass) {
        let which = if semi.pass { "congruence" } else { "semigroup" };
        if as_json {
            let v = json!({
                "checks": {
                    "semigroup": check_json(semi.pass, &[]),
                    "congruence": check_json(congr.pass, &[]),
                },
            });
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
        } else {
            println!("{which} condition fails; no equations generated");
        }
        return Ok(1);
    }
    let mut eqs = generate_equations(d, &sd, cap).map_err(|e| match e {
        SpliceError::NoAdmissibleMonomial { node, toward } => {
            format!("no admissible monomial at {node} toward {toward}")
        }
        other => other.to_string(),
    })?;
    if substitute {
        eqs = substitute_powers(&eqs, d).map_err(|e| e.to_string())?;
    }
    let equivariant = verify_equivariance(d, &eqs).map_err(|e| e.to_string())?;
    if as_json {
        let v = json!({
            "variable_prefix": eqs.variable_prefix,
            "equations": equations_json(&eqs),
            "equivariant": equivariant,
        });
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        print!("{}", eqs.to_text());
        println!("equivariant: {}", pass(equivariant));
    }
    Ok(if equivariant { 0 } else { 1 })
}

fn emit_graph(d: &DecoratedGraph, as_json: bool) {
    if as_json {
        println!("{}", serde_json::to_string_pretty(&graph_json(d)).unwrap());
    } else {
        print!("{}", serialize(d));
    }
}

fn cmd_corpus(dir: &Path, as_json: bool) -> Result<i32, String> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| format!("cannot read {}: {e}", dir.display()))?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "graph"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(format!("no .graph files in {}", dir.display()));
    }
    let mut any_fail = false;
    let mut entries = Vec::new();
    for f in &files {
        let name = f.file_stem().unwrap().to_string_lossy().into_owned();
        let r = report::build(&name, &load(f)?)?;
        any_fail |= !r.all_pass();
        if as_json {
            entries.push(r.to_json());
        } else {
            println!("{}: {}", name, r.summary_line());
        }
    }
    if as_json {
        println!("{}", serde_json::to_string_pretty(&Value::Array(entries)).unwrap());
    }
    Ok(if any_fail { 1 } else { 0 })
}

#[allow(clippy::type_complexity)]
fn splice_edges(
    sd: &orbsplice_core::SpliceDiagram,
) -> Vec<(String, String, Option<BigInt>, Option<BigInt>)> {
    let mut out = Vec::new();
    let mut all: Vec<String> = sd.node_ids().to_vec();
    all.extend(sd.leaf_ids().iter().cloned());
    all.sort();
    for a in &all {
        for b in sd.neighbors(a) {
            if *a < b {
                out.push((
                    a.clone(),
                    b.clone(),
                    sd.edge_weight(a, &b).cloned(),
                    sd.edge_weight(&b, a).cloned(),
                ));
            }
        }
    }
    out
}

fn splice_edges_json(sd: &orbsplice_core::SpliceDiagram) -> Value {
    Value::Array(
        splice_edges(sd)
            .into_iter()
            .map(|(a, b, wa, wb)| {
                json!({
                    "a": a,
                    "b": b,
                    "weight_a": wa.map(|w| w.to_string()),
                    "weight_b": wb.map(|w| w.to_string()),
                })
            })
            .collect(),
    )
}

/// DOT text for a decorated graph: one circle node per vertex (labelled with
/// its Euler number), and for each decorated leaf an extra arrow node
/// `n=<weight>`.
pub fn render_graph_dot(d: &DecoratedGraph) -> String {
    use std::fmt::Write as _;
    let g = d.graph();
    let mut out = String::from("graph plumbing {\n  node [shape=circle];\n");
    for id in g.vertex_ids() {
        writeln!(out, "  \"{id}\" [label=\"{id}\\n{}\"];", g.euler(&id).unwrap()).unwrap();
    }
    for id in d.special_vertices() {
        writeln!(
            out,
            "  \"arrow_{id}\" [shape=rarrow, label=\"n={}\"];",
            d.weight(&id)
        )
        .unwrap();
        writeln!(out, "  \"{id}\" -- \"arrow_{id}\" [style=dashed];").unwrap();
    }
    for (a, b) in g.edges() {
        writeln!(out, "  \"{a}\" -- \"{b}\";").unwrap();
    }
    out.push_str("}\n");
    out
}

/// DOT text for a splice diagram: edge weights rendered as edge-end labels.
pub fn render_splice_dot(sd: &orbsplice_core::SpliceDiagram) -> String {
    use std::fmt::Write as _;
    let mut out = String::from("graph splice {\n  node [shape=point];\n");
    for id in sd.leaf_ids() {
        writeln!(out, "  \"{id}\" [shape=circle, label=\"{id}\"];").unwrap();
    }
    for id in sd.node_ids() {
        writeln!(out, "  \"{id}\" [shape=point, xlabel=\"{id}\"];").unwrap();
    }
    for (a, b, wa, wb) in splice_edges(sd) {
        let mut attrs = Vec::new();
        if let Some(w) = wa {
            attrs.push(format!("taillabel=\"{w}\""));
        }
        if let Some(w) = wb {
            attrs.push(format!("headlabel=\"{w}\""));
        }
        if attrs.is_empty() {
            writeln!(out, "  \"{a}\" -- \"{b}\";").unwrap();
        } else {
            writeln!(out, "  \"{a}\" -- \"{b}\" [{}];", attrs.join(", ")).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
