//! Instance specifications: an edge-list file, a named family, or a seeded
//! random model.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{ArgGroup, Args, ValueEnum};
use rclg::random::{gnp_connected, random_cubic, seeded, SeededRng};
use rclg::{families, io, Graph};
use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Gnp,
    #[value(name = "random_cubic")]
    RandomCubic,
}

#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["file", "family", "model"])))]
pub struct SourceArgs {
    /// Edge-list file (`n m` header, then `u v` per line)
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// example31, example32, path, cycle, complete, complete_bipartite, star,
    /// spider, petersen, triangle_ring, friendship
    #[arg(long)]
    pub family: Option<String>,
    /// Random model; requires --seed
    #[arg(long, value_enum)]
    pub model: Option<Model>,
    #[command(flatten)]
    pub params: Params,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Params {
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub f: Option<usize>,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long)]
    pub legs: Option<usize>,
    #[arg(long)]
    pub len: Option<usize>,
    /// Edge probability for gnp
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

/// Where an instance came from, as recorded in reports.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Source {
    File {
        path: String,
    },
    Family {
        name: String,
        params: BTreeMap<String, usize>,
    },
    Random {
        model: Model,
        n: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        p: Option<f64>,
        seed: u64,
    },
}

fn need(value: Option<usize>, flag: &str, min: usize, family: &str) -> Result<usize, CliError> {
    match value {
        Some(v) if v >= min => Ok(v),
        Some(v) => Err(CliError::Input(format!(
            "{family} needs --{flag} >= {min}, got {v}"
        ))),
        None => Err(CliError::Input(format!("{family} needs --{flag}"))),
    }
}

pub fn family(name: &str, a: &Params) -> Result<(Graph, BTreeMap<String, usize>), CliError> {
    let mut params = BTreeMap::new();
    let mut take = |flag: &str, value: Option<usize>, min: usize| -> Result<usize, CliError> {
        let v = need(value, flag, min, name)?;
        params.insert(flag.to_string(), v);
        Ok(v)
    };
    let g = match name {
        "example31" => families::example31(take("t", a.t, 1)?),
        "example32" => families::example32(take("k", a.k, 2)?),
        "path" => families::path(take("n", a.n, 1)?),
        "cycle" => families::cycle(take("n", a.n, 3)?),
        "complete" => families::complete(take("n", a.n, 1)?),
        "complete_bipartite" => {
            let x = take("a", a.a, 1)?;
            families::complete_bipartite(x, take("b", a.b, 1)?)
        }
        "star" => families::star(take("k", a.k, 1)?),
        "spider" => {
            let legs = take("legs", a.legs, 1)?;
            families::spider(legs, take("len", a.len, 1)?)
        }
        "petersen" => families::petersen(),
        "triangle_ring" => families::triangle_ring(take("r", a.r, 3)?),
        "friendship" => families::friendship(take("f", a.f, 1)?),
        other => return Err(CliError::Input(format!("unknown family `{other}`"))),
    };
    Ok((g, params))
}

/// One sample of `model`; both models resample until connected.
pub fn sample(
    model: Model,
    n: usize,
    p: Option<f64>,
    rng: &mut SeededRng,
) -> Result<Graph, CliError> {
    match model {
        Model::Gnp => {
            let p = p.ok_or_else(|| CliError::Input("gnp needs --p".into()))?;
            if n < 2 || !(p > 0.0 && p <= 1.0) {
                return Err(CliError::Input(format!(
                    "gnp needs --n >= 2 and 0 < --p <= 1, got n={n}, p={p}"
                )));
            }
            Ok(gnp_connected(n, p, rng))
        }
        Model::RandomCubic => {
            if n < 4 || n % 2 == 1 {
                return Err(CliError::Input(format!(
                    "random_cubic needs an even --n >= 4, got {n}"
                )));
            }
            Ok(random_cubic(n, rng))
        }
    }
}

impl SourceArgs {
    pub fn load(&self) -> Result<(Graph, Source), CliError> {
        if let Some(path) = &self.file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            let g = io::parse_edge_list(&text)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            let source = Source::File {
                path: path.display().to_string(),
            };
            return Ok((g, source));
        }
        if let Some(name) = &self.family {
            let (g, params) = family(name, &self.params)?;
            let source = Source::Family {
                name: name.clone(),
                params,
            };
            return Ok((g, source));
        }
        let model = self.model.expect("clap enforces exactly one source");
        let seed = self
            .params
            .seed
            .ok_or_else(|| CliError::Input("random models need --seed".into()))?;
        let n = self
            .params
            .n
            .ok_or_else(|| CliError::Input("random models need --n".into()))?;
        let g = sample(model, n, self.params.p, &mut seeded(seed))?;
        let p = (model == Model::Gnp).then_some(self.params.p).flatten();
        Ok((g, Source::Random { model, n, p, seed }))
    }
}
