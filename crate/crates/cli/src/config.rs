//! Optional TOML config file. Values fill in flags that were not given on
//! the command line; an explicit flag always wins. Worker count falls back
//! further to `TRIGAUGE_WORKERS`.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::args::GenSpecArgs;
use crate::error::CliError;

pub const WORKERS_ENV: &str = "TRIGAUGE_WORKERS";

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub workers: Option<usize>,
    pub algo: Option<String>,
    pub reps: Option<u32>,
    pub oracle_limit: Option<usize>,
    pub min_edges: Option<f64>,
    pub breakpoint: Option<f64>,
    pub group_by: Option<String>,
    #[serde(default)]
    pub gen: GenFileConfig,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenFileConfig {
    pub model: Option<String>,
    pub n: Option<usize>,
    pub p: Option<f64>,
    pub seed_graph: Option<PathBuf>,
    pub k: Option<u32>,
    pub scale: Option<u32>,
    pub edge_factor: Option<u64>,
    pub initiator: Option<Vec<f64>>,
    pub rng_seed: Option<u64>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::InvalidInput(format!("config {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| CliError::InvalidInput(format!("config {}: {e}", path.display())))
    }

    /// Flag, then file, then environment, then 0 (rayon default).
    pub fn workers(&self, flag: Option<usize>) -> Result<usize, CliError> {
        if let Some(w) = flag.or(self.workers) {
            return Ok(w);
        }
        match std::env::var(WORKERS_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| {
                CliError::InvalidInput(format!("{WORKERS_ENV}=`{v}` is not a worker count"))
            }),
            Err(_) => Ok(0),
        }
    }

    /// Fills generator flags left unset from the `[gen]` table.
    pub fn merge_gen(&self, flags: &GenSpecArgs) -> Result<GenSpecArgs, CliError> {
        let file = &self.gen;
        let model = match (flags.model, &file.model) {
            (Some(m), _) => Some(m),
            (None, Some(name)) => Some(
                <crate::args::ModelArg as clap::ValueEnum>::from_str(name, true).map_err(|_| {
                    CliError::InvalidInput(format!("config: unknown model `{name}`"))
                })?,
            ),
            (None, None) => None,
        };
        Ok(GenSpecArgs {
            model,
            n: flags.n.or(file.n),
            p: flags.p.or(file.p),
            seed_graph: flags.seed_graph.clone().or_else(|| file.seed_graph.clone()),
            k: flags.k.or(file.k),
            scale: flags.scale.or(file.scale),
            edge_factor: flags.edge_factor.or(file.edge_factor),
            initiator: flags.initiator.clone().or_else(|| file.initiator.clone()),
            rng_seed: flags.rng_seed.or(file.rng_seed),
        })
    }
}
