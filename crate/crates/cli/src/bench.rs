//! `rclg bench`: one row of bounds and verified colour counts per random instance.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use rclg::coloring::{color_iterated_cubic, color_thm31, color_thm32};
use rclg::line_graph::line_graph;
use rclg::random::seeded;
use rclg::triangles::pack_edge_disjoint;
use rclg::verify::{exact_rc, OracleLimits, VerifyError};
use rclg::{exec, Graph, PackingMode};
use serde::Serialize;

use crate::commands::{pack, write_json, LimitArgs};
use crate::error::CliError;
use crate::source::{sample, Model};

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub model: Model,
    #[arg(long)]
    pub n: usize,
    /// Edge probability for gnp
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, default_value_t = 20)]
    pub count: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = rclg::triangles::DEFAULT_EXACT_CAP)]
    pub exact_cap: usize,
    #[command(flatten)]
    pub limits: LimitArgs,
    /// Write the CSV table here instead of stdout
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Write the JSON report here
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub index: usize,
    pub vertices: usize,
    pub edges: usize,
    pub n2: usize,
    pub t_greedy: usize,
    pub t_exact: Option<usize>,
    pub t_forest_greedy: usize,
    pub t_forest_exact: Option<usize>,
    pub c: usize,
    pub n2_prime: usize,
    pub op: usize,
    pub bound_n2_minus_t: usize,
    pub colors_31: usize,
    pub bound_t_n2p_c: usize,
    pub colors_32: usize,
    pub bound_n_plus_1: Option<usize>,
    pub colors_cubic: Option<usize>,
    pub diameter_l: Option<usize>,
    pub exact_rc_l: Option<usize>,
    pub verified: bool,
}

const HEADER: &str = "index,vertices,edges,n2,t_greedy,t_exact,t_forest_greedy,t_forest_exact,\
c,n2_prime,op,bound_n2_minus_t,colors_31,bound_t_n2p_c,colors_32,bound_n_plus_1,colors_cubic,\
diameter_l,exact_rc_l,verified";

fn opt(x: Option<usize>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn csv(rows: &[Row]) -> String {
    let mut s = String::from(HEADER);
    s.push('\n');
    for r in rows {
        writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.index,
            r.vertices,
            r.edges,
            r.n2,
            r.t_greedy,
            opt(r.t_exact),
            r.t_forest_greedy,
            opt(r.t_forest_exact),
            r.c,
            r.n2_prime,
            r.op,
            r.bound_n2_minus_t,
            r.colors_31,
            r.bound_t_n2p_c,
            r.colors_32,
            opt(r.bound_n_plus_1),
            opt(r.colors_cubic),
            opt(r.diameter_l),
            opt(r.exact_rc_l),
            r.verified
        )
        .unwrap();
    }
    s
}

fn t_of(g: &Graph, mode: PackingMode, cap: usize) -> Result<Option<usize>, CliError> {
    match pack_edge_disjoint(g, mode, cap) {
        Ok(p) => Ok(Some(p.t)),
        Err(rclg::triangles::TriangleError::TooManyTriangles { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

pub fn row(
    index: usize,
    g: &Graph,
    model: Model,
    cap: usize,
    limits: &OracleLimits,
) -> Result<Row, CliError> {
    let n2 = g.degree_profile().n2;
    let (_, forest) = pack(g, PackingMode::ForestExact, false, cap)?;
    let (_, any) = pack(g, PackingMode::Exact, false, cap)?;
    let (_, cert31) = color_thm31(g, &forest)?;
    let (_, cert32) = color_thm32(g, &any)?;
    let cubic = match model {
        Model::RandomCubic => Some(color_iterated_cubic(g)?.1),
        Model::Gnp => None,
    };
    let l = line_graph(g).graph;
    let exact_rc_l = match exact_rc(&l, limits) {
        Ok(r) => Some(r.rc),
        Err(VerifyError::LimitExceeded { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let verified = cert31.verified && cert32.verified && cubic.as_ref().is_none_or(|c| c.verified);
    Ok(Row {
        index,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        n2,
        t_greedy: pack_edge_disjoint(g, PackingMode::Greedy, cap)?.t,
        t_exact: t_of(g, PackingMode::Exact, cap)?,
        t_forest_greedy: pack_edge_disjoint(g, PackingMode::ForestGreedy, cap)?.t,
        t_forest_exact: t_of(g, PackingMode::ForestExact, cap)?,
        c: any.c,
        n2_prime: any.n2_prime,
        op: any.op,
        bound_n2_minus_t: cert31.bound_value,
        colors_31: cert31.colors_used,
        bound_t_n2p_c: cert32.bound_value,
        colors_32: cert32.colors_used,
        bound_n_plus_1: cubic.as_ref().map(|c| c.bound_value),
        colors_cubic: cubic.as_ref().map(|c| c.colors_used),
        diameter_l: l.diameter(),
        exact_rc_l,
        verified,
    })
}

#[derive(Serialize)]
struct BenchReport<'a> {
    schema: u32,
    command: &'static str,
    model: Model,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<f64>,
    count: usize,
    seed: u64,
    max_edges: usize,
    all_verified: bool,
    rows: &'a [Row],
}

pub fn bench(args: &BenchArgs) -> Result<bool, CliError> {
    if args.model == Model::Gnp && args.n < 3 {
        return Err(CliError::Input("bench gnp needs --n >= 3".into()));
    }
    // instances are drawn sequentially so the stream does not depend on threading
    let mut rng = seeded(args.seed);
    let graphs = (0..args.count)
        .map(|_| sample(args.model, args.n, args.p, &mut rng))
        .collect::<Result<Vec<_>, _>>()?;
    let limits = args.limits.limits();
    let indexed: Vec<(usize, Graph)> = graphs.into_iter().enumerate().collect();
    let rows = exec::map(limits.exec, &indexed, |(i, g)| {
        row(*i, g, args.model, args.exact_cap, &limits)
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;

    let table = csv(&rows);
    match &args.csv {
        Some(p) => std::fs::write(p, &table)
            .map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?,
        None => print!("{table}"),
    }
    let all_verified = rows.iter().all(|r| r.verified);
    if let Some(p) = &args.json {
        let report = BenchReport {
            schema: 1,
            command: "bench",
            model: args.model,
            n: args.n,
            p: (args.model == Model::Gnp).then_some(args.p).flatten(),
            count: args.count,
            seed: args.seed,
            max_edges: args.limits.max_edges,
            all_verified,
            rows: &rows,
        };
        write_json(p, &report)?;
    }
    for r in rows.iter().filter(|r| !r.verified) {
        eprintln!("instance {} failed verification", r.index);
    }
    Ok(all_verified)
}
