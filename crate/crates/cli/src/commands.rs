use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, ValueEnum};
use rclg::coloring::{
    color_iterated, color_iterated_cubic, color_thm31, color_thm32, pendent_two_paths,
};
use rclg::line_graph::{clique_graph, iterated_line_graph, DEFAULT_CLIQUE_CAP};
use rclg::triangles::{pack_edge_disjoint, TriangleError, DEFAULT_EXACT_CAP};
use rclg::verify::{exact_rc, is_rainbow_connected_with, OracleLimits, VerifyError};
use rclg::{io, ColoringCertificate, Execution, Graph, PackingMode, TrianglePacking};
use serde::Serialize;

use crate::error::CliError;
use crate::source::{Source, SourceArgs};

/// Report envelope shared by every single-instance command.
#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    schema: u32,
    command: &'a str,
    instance: &'a Source,
    #[serde(flatten)]
    body: T,
}

pub fn write_json(path: &Path, value: &impl Serialize) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write_report<T: Serialize>(
    path: Option<&PathBuf>,
    command: &str,
    instance: &Source,
    body: T,
) -> Result<(), CliError> {
    match path {
        Some(p) => write_json(
            p,
            &Report {
                schema: 1,
                command,
                instance,
                body,
            },
        ),
        None => Ok(()),
    }
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn exec_for(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

/// `L^k(g)`, with `L^0(g) = g`.
fn iterate(g: &Graph, k: usize) -> Result<Graph, CliError> {
    if k == 0 {
        return Ok(g.clone());
    }
    Ok(iterated_line_graph(g, k)?.pop().expect("k >= 1").graph)
}

fn level_name(k: usize) -> String {
    match k {
        0 => "G".into(),
        1 => "L".into(),
        _ => format!("L{k}"),
    }
}

#[derive(Serialize)]
struct GraphSummary {
    vertices: usize,
    edges: usize,
}

impl From<&Graph> for GraphSummary {
    fn from(g: &Graph) -> Self {
        GraphSummary {
            vertices: g.vertex_count(),
            edges: g.edge_count(),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write a DOT rendering here
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Write the JSON report here
    #[arg(long)]
    pub json: Option<PathBuf>,
}

// ---------------------------------------------------------------- gen

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Write the edge list here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Serialize)]
struct GraphBody<'a> {
    line_level: usize,
    vertices: usize,
    edges: usize,
    diameter: Option<usize>,
    edge_list: &'a [(usize, usize)],
    #[serde(skip_serializing_if = "Option::is_none")]
    clique_graph: Option<CliqueSummary>,
}

#[derive(Serialize)]
struct CliqueSummary {
    maximal_cliques: Vec<Vec<usize>>,
    k_graph_edges: Vec<(usize, usize)>,
}

fn emit_graph(
    command: &str,
    g: &Graph,
    level: usize,
    source: &Source,
    out: Option<&PathBuf>,
    output: &OutputArgs,
    cliques: Option<CliqueSummary>,
) -> Result<(), CliError> {
    let text = io::render_edge_list(g);
    match out {
        Some(p) => write_text(p, &text)?,
        None => print!("{text}"),
    }
    eprintln!(
        "{}: {} vertices, {} edges, diameter {}",
        level_name(level),
        g.vertex_count(),
        g.edge_count(),
        g.diameter().map_or("inf".to_string(), |d| d.to_string())
    );
    if let Some(p) = &output.dot {
        write_text(p, &io::to_dot(g, None, &level_name(level)))?;
    }
    let body = GraphBody {
        line_level: level,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        diameter: g.diameter(),
        edge_list: g.edges(),
        clique_graph: cliques,
    };
    write_report(output.json.as_ref(), command, source, body)
}

pub fn gen(args: &GenArgs) -> Result<bool, CliError> {
    let (g, source) = args.source.load()?;
    emit_graph("gen", &g, 0, &source, args.out.as_ref(), &args.output, None)?;
    Ok(true)
}

// ---------------------------------------------------------------- linegraph

#[derive(Debug, Args)]
pub struct LineGraphArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Number of line-graph iterations
    #[arg(long, default_value_t = 1)]
    pub line: usize,
    /// Also enumerate the maximal cliques of the input and its clique graph
    #[arg(long)]
    pub cliques: bool,
    /// Write the edge list here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn linegraph(args: &LineGraphArgs) -> Result<bool, CliError> {
    let (g, source) = args.source.load()?;
    let target = iterate(&g, args.line)?;
    let cliques = if args.cliques {
        let k = clique_graph(&g, DEFAULT_CLIQUE_CAP)?;
        eprintln!(
            "K(G): {} maximal cliques, {} edges",
            k.maximal_cliques.len(),
            k.k_graph.edge_count()
        );
        Some(CliqueSummary {
            k_graph_edges: k.k_graph.edges().to_vec(),
            maximal_cliques: k.maximal_cliques,
        })
    } else {
        None
    };
    emit_graph(
        "linegraph",
        &target,
        args.line,
        &source,
        args.out.as_ref(),
        &args.output,
        cliques,
    )?;
    Ok(true)
}

// ---------------------------------------------------------------- color

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Theorem {
    /// n2 - t colours on L(G), triangle-forest packing
    #[value(name = "31")]
    #[serde(rename = "31")]
    Forest,
    /// t + n2' + c colours on L(G), any packing
    #[value(name = "32")]
    #[serde(rename = "32")]
    Any,
    /// n + 1 colours on L²(G), G connected cubic
    #[value(name = "cubic")]
    #[serde(rename = "cubic")]
    Cubic,
    /// m - m1 colours on L²(G)
    #[value(name = "iterated")]
    #[serde(rename = "iterated")]
    Iterated,
}

fn parse_mode(s: &str) -> Result<PackingMode, String> {
    s.parse()
}

#[derive(Debug, Args)]
pub struct ColorArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, value_enum, default_value = "32")]
    pub theorem: Theorem,
    /// greedy, exact, forest_greedy or forest_exact [default: forest_exact for 31,
    /// exact for 32, falling back to greedy above the triangle cap]
    #[arg(long, value_parser = parse_mode)]
    pub pack: Option<PackingMode>,
    /// Largest triangle count the exact packing modes accept
    #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
    pub exact_cap: usize,
    /// Write the colouring (one colour per line, edge-id order) here
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Serialize)]
pub struct PackingSummary {
    pub mode: PackingMode,
    pub t: usize,
    pub c: usize,
    pub n2_prime: usize,
    pub op: usize,
    pub covered_vertices: usize,
    pub component_sizes: Vec<usize>,
    pub triangles: Vec<[usize; 3]>,
}

impl PackingSummary {
    pub fn new(mode: PackingMode, p: &TrianglePacking) -> Self {
        PackingSummary {
            mode,
            t: p.t,
            c: p.c,
            n2_prime: p.n2_prime,
            op: p.op,
            covered_vertices: p.covered_vertices.len(),
            component_sizes: p.sizes(),
            triangles: p.triangles.iter().map(|t| t.vertices).collect(),
        }
    }
}

/// Packs with `mode`; an implicit exact mode falls back to greedy above the cap.
pub fn pack(
    g: &Graph,
    mode: PackingMode,
    explicit: bool,
    cap: usize,
) -> Result<(PackingMode, TrianglePacking), CliError> {
    match pack_edge_disjoint(g, mode, cap) {
        Err(TriangleError::TooManyTriangles { .. }) if !explicit => {
            let fallback = if mode.is_forest() {
                PackingMode::ForestGreedy
            } else {
                PackingMode::Greedy
            };
            Ok((fallback, pack_edge_disjoint(g, fallback, cap)?))
        }
        r => Ok((mode, r?)),
    }
}

#[derive(Serialize)]
struct ColorBody<'a> {
    theorem: Theorem,
    line_level: usize,
    target: GraphSummary,
    packing: Option<PackingSummary>,
    #[serde(flatten)]
    certificate: &'a ColoringCertificate,
    coloring: &'a [usize],
}

pub fn color(args: &ColorArgs) -> Result<bool, CliError> {
    let (g, source) = args.source.load()?;
    let (level, packing, coloring, cert) = match args.theorem {
        Theorem::Forest | Theorem::Any => {
            let default = if args.theorem == Theorem::Forest {
                PackingMode::ForestExact
            } else {
                PackingMode::Exact
            };
            let (mode, p) = pack(
                &g,
                args.pack.unwrap_or(default),
                args.pack.is_some(),
                args.exact_cap,
            )?;
            let (c, cert) = if args.theorem == Theorem::Forest {
                color_thm31(&g, &p)?
            } else {
                color_thm32(&g, &p)?
            };
            (1, Some(PackingSummary::new(mode, &p)), c, cert)
        }
        Theorem::Cubic => {
            let (c, cert) = color_iterated_cubic(&g)?;
            (2, None, c, cert)
        }
        Theorem::Iterated => {
            let (c, cert) = color_iterated(&g)?;
            (2, None, c, cert)
        }
    };
    let target = iterate(&g, level)?;

    println!("G: {} vertices, {} edges", g.vertex_count(), g.edge_count());
    println!(
        "{}: {} vertices, {} edges",
        level_name(level),
        target.vertex_count(),
        target.edge_count()
    );
    if let Some(p) = &packing {
        println!(
            "packing {}: t={} c={} n2'={} op={}",
            p.mode, p.t, p.c, p.n2_prime, p.op
        );
    }
    println!("bound {} = {}", cert.bound_name, cert.bound_value);
    println!("colors used: {}", cert.colors_used);
    println!("verified: {}", cert.verified);
    if let Some((s, t)) = cert.witness_failure {
        println!("no rainbow path between {s} and {t}");
    }

    if let Some(p) = &args.out {
        write_text(p, &io::render_coloring(&coloring))?;
    }
    if let Some(p) = &args.output.dot {
        write_text(p, &io::to_dot(&target, Some(&coloring), &level_name(level)))?;
    }
    let body = ColorBody {
        theorem: args.theorem,
        line_level: level,
        target: (&target).into(),
        packing,
        certificate: &cert,
        coloring: coloring.colors(),
    };
    write_report(args.output.json.as_ref(), "color", &source, body)?;
    Ok(cert.verified)
}

// ---------------------------------------------------------------- verify

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Colouring file for the edges of L^line(G)
    #[arg(long)]
    pub coloring: PathBuf,
    /// Number of line-graph iterations applied before checking (0 = G itself)
    #[arg(long, default_value_t = 1)]
    pub line: usize,
    /// Run the per-source searches on one thread
    #[arg(long)]
    pub sequential: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Serialize)]
struct VerifyBody {
    line_level: usize,
    target: GraphSummary,
    colors_used: usize,
    verified: bool,
    failing_pair: Option<(usize, usize)>,
}

pub fn verify(args: &VerifyArgs) -> Result<bool, CliError> {
    let (g, source) = args.source.load()?;
    let target = iterate(&g, args.line)?;
    let text = std::fs::read_to_string(&args.coloring)
        .map_err(|e| CliError::Input(format!("{}: {e}", args.coloring.display())))?;
    let coloring = io::parse_coloring(&text, target.edge_count())
        .map_err(|e| CliError::Input(format!("{}: {e}", args.coloring.display())))?;
    let check = is_rainbow_connected_with(&target, &coloring, exec_for(args.sequential))?;
    println!(
        "{}: {} vertices, {} edges, {} colors",
        level_name(args.line),
        target.vertex_count(),
        target.edge_count(),
        coloring.colors_used()
    );
    println!("verified: {}", check.connected);
    if let Some((s, t)) = check.failing_pair {
        println!("no rainbow path between {s} and {t}");
    }
    if let Some(p) = &args.output.dot {
        write_text(
            p,
            &io::to_dot(&target, Some(&coloring), &level_name(args.line)),
        )?;
    }
    let body = VerifyBody {
        line_level: args.line,
        target: (&target).into(),
        colors_used: coloring.colors_used(),
        verified: check.connected,
        failing_pair: check.failing_pair,
    };
    write_report(args.output.json.as_ref(), "verify", &source, body)?;
    Ok(check.connected)
}

// ---------------------------------------------------------------- exact

#[derive(Debug, Clone, Args)]
pub struct LimitArgs {
    /// Largest edge count the exact rc search accepts
    #[arg(long, default_value_t = 12)]
    pub max_edges: usize,
    /// Wall-clock budget for the exact search in seconds (0 = unlimited)
    #[arg(long, default_value_t = 60)]
    pub time_budget: u64,
    /// Run searches on one thread
    #[arg(long)]
    pub sequential: bool,
}

impl LimitArgs {
    pub fn limits(&self) -> OracleLimits {
        OracleLimits {
            max_edges: self.max_edges,
            time_budget: (self.time_budget > 0).then(|| Duration::from_secs(self.time_budget)),
            exec: exec_for(self.sequential),
        }
    }
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Number of line-graph iterations applied first (0 = G itself)
    #[arg(long, default_value_t = 1)]
    pub line: usize,
    #[command(flatten)]
    pub limits: LimitArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Serialize)]
struct ExactBody {
    line_level: usize,
    target: GraphSummary,
    diameter: Option<usize>,
    exact_rc: Option<usize>,
    lower: usize,
    upper: usize,
    witness: Option<Vec<usize>>,
}

pub fn exact(args: &ExactArgs) -> Result<bool, CliError> {
    let (g, source) = args.source.load()?;
    let target = iterate(&g, args.line)?;
    let name = level_name(args.line);
    let result = exact_rc(&target, &args.limits.limits());
    let (body, outcome) = match result {
        Ok(r) => {
            println!("rc({name}) = {}", r.rc);
            if let Some(p) = &args.output.dot {
                write_text(p, &io::to_dot(&target, Some(&r.witness), &name))?;
            }
            let body = ExactBody {
                line_level: args.line,
                target: (&target).into(),
                diameter: target.diameter(),
                exact_rc: Some(r.rc),
                lower: r.rc,
                upper: r.rc,
                witness: Some(r.witness.colors().to_vec()),
            };
            (body, Ok(true))
        }
        Err(VerifyError::LimitExceeded { lower, upper }) => {
            println!("rc({name}) in [{lower}, {upper}]: search limit reached");
            let body = ExactBody {
                line_level: args.line,
                target: (&target).into(),
                diameter: target.diameter(),
                exact_rc: None,
                lower,
                upper,
                witness: None,
            };
            let e = VerifyError::LimitExceeded { lower, upper };
            (body, Err(e.into()))
        }
        Err(e) => return Err(e.into()),
    };
    write_report(args.output.json.as_ref(), "exact", &source, body)?;
    outcome
}

// ---------------------------------------------------------------- bound

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
    pub exact_cap: usize,
    /// Also run the exact rc search on L(G)
    #[arg(long)]
    pub exact: bool,
    #[command(flatten)]
    pub limits: LimitArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Serialize)]
struct BoundBody {
    n1: usize,
    n2: usize,
    line_graph: GraphSummary,
    /// Lower bound `diam(L(G)) ≤ rc(L(G))`.
    diameter_l: Option<usize>,
    packings: BTreeMap<String, Option<PackingSummary>>,
    /// Upper bounds on `rc(L(G))` and `rc(L²(G))`.
    bounds: BTreeMap<String, usize>,
    exact_rc_l: Option<usize>,
}

pub fn bound(args: &BoundArgs) -> Result<bool, CliError> {
    let (g, source) = args.source.load()?;
    if !g.is_connected() {
        return Err(CliError::Input("graph is disconnected".into()));
    }
    let profile = g.degree_profile();
    let l = iterate(&g, 1)?;
    let mut packings = BTreeMap::new();
    let mut forest_t = None;
    let mut any_bound: Option<usize> = None;
    for mode in PackingMode::ALL {
        let p = match pack_edge_disjoint(&g, mode, args.exact_cap) {
            Ok(p) => p,
            Err(TriangleError::TooManyTriangles { .. }) => {
                packings.insert(mode.to_string(), None);
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        if mode.is_forest() {
            forest_t = forest_t.max(Some(p.t));
        }
        let b = p.t + p.n2_prime + p.c;
        any_bound = Some(any_bound.map_or(b, |x| x.min(b)));
        packings.insert(mode.to_string(), Some(PackingSummary::new(mode, &p)));
    }
    let mut bounds = BTreeMap::new();
    if g.edge_count() >= 2 {
        if let Some(t) = forest_t {
            bounds.insert("L: n2 - t".to_string(), profile.n2 - t);
        }
        if let Some(b) = any_bound {
            bounds.insert("L: t + n2' + c".to_string(), b);
        }
    }
    let cubic = (0..g.vertex_count()).all(|v| g.degree(v) == 3);
    if cubic && g.vertex_count() > 0 {
        bounds.insert("L2: n + 1".to_string(), g.vertex_count() + 1);
    }
    if l.edge_count() >= 2 {
        bounds.insert(
            "L2: m - m1".to_string(),
            g.edge_count() - pendent_two_paths(&g),
        );
    }
    let exact_rc_l = if args.exact {
        match exact_rc(&l, &args.limits.limits()) {
            Ok(r) => Some(r.rc),
            Err(VerifyError::LimitExceeded { .. }) => None,
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };

    println!(
        "G: {} vertices, {} edges, n1={}, n2={}",
        g.vertex_count(),
        g.edge_count(),
        profile.n1,
        profile.n2
    );
    println!(
        "L: {} vertices, {} edges, diameter {}",
        l.vertex_count(),
        l.edge_count(),
        l.diameter().map_or("-".to_string(), |d| d.to_string())
    );
    for (mode, p) in &packings {
        match p {
            Some(p) => println!(
                "packing {mode}: t={} c={} n2'={} op={}",
                p.t, p.c, p.n2_prime, p.op
            ),
            None => println!("packing {mode}: skipped, over the triangle cap"),
        }
    }
    for (name, value) in &bounds {
        println!("bound {name} = {value}");
    }
    if let Some(rc) = exact_rc_l {
        println!("exact rc(L) = {rc}");
    } else if args.exact {
        println!("exact rc(L): search limit reached");
    }
    let body = BoundBody {
        n1: profile.n1,
        n2: profile.n2,
        line_graph: (&l).into(),
        diameter_l: l.diameter(),
        packings,
        bounds,
        exact_rc_l,
    };
    write_report(args.output.json.as_ref(), "bound", &source, body)?;
    Ok(true)
}
