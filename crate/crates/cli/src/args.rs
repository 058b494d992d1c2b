//! Command-line arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use normdec_core::category::DEFAULT_SIMPLEX_BUDGET;
use normdec_core::subdivision::DEFAULT_SUBDIVISION_BUDGET;

use crate::run::{CollectionSpec, EabSpec, RunConfig, SelftestConfig, Theorem, DEFAULT_CORPUS};

#[derive(Parser, Debug)]
#[command(name = "normdec", version, about = "Normaliser decompositions of p-local finite groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Structure of the p-local finite group: S, collections, chain classes.
    Info(Common),
    /// Build a normaliser decomposition and verify it on mod-p homology.
    Decompose {
        #[arg(long, value_enum)]
        theorem: TheoremArg,
        #[command(flatten)]
        common: Common,
    },
    /// Run the invariant suites on the built-in corpus.
    Selftest {
        /// Comma-separated corpus entries; empty for none.
        #[arg(long, default_value_t = DEFAULT_CORPUS.join(","))]
        corpus: String,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        /// Break one fusion morphism set and one composite per system.
        #[arg(long)]
        inject_mutation: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TheoremArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

#[derive(Args, Debug)]
pub struct Common {
    #[arg(long, default_value_t = 2)]
    pub p: u32,
    /// Group file (`cayley` or `perm` block).
    #[arg(long)]
    pub group: PathBuf,
    /// `centric`, `centric-radical` or `@file` (subgroup list).
    #[arg(long, default_value = "centric")]
    pub collection: String,
    /// Elementary abelian collection for Theorem B: `all`, `omega` or `@file`.
    #[arg(long, default_value = "all")]
    pub eab: String,
    /// Truncation: nerves up to dimension d, homology exact in degrees 0 to d-1.
    #[arg(long, default_value_t = 4)]
    pub dim: usize,
    /// Write the full JSON report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Full associativity check of Cayley tables and all structural checks.
    #[arg(long)]
    pub strict: bool,
    /// Compare group homology of Aut_T and Aut_L on chains.
    #[arg(long)]
    pub dwyer_homology: bool,
    /// Cross-check homotopy colimit homology by the simplicial replacement.
    #[arg(long)]
    pub thomason: bool,
    #[arg(long, default_value_t = DEFAULT_SIMPLEX_BUDGET)]
    pub simplex_budget: usize,
    #[arg(long, default_value_t = DEFAULT_SUBDIVISION_BUDGET)]
    pub subdivision_budget: usize,
    /// Cache directory for structural data; off when absent.
    #[arg(long, env = "NORMDEC_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
}

impl From<TheoremArg> for Theorem {
    fn from(t: TheoremArg) -> Theorem {
        match t {
            TheoremArg::A => Theorem::A,
            TheoremArg::B => Theorem::B,
        }
    }
}

impl Common {
    pub fn config(&self) -> Result<RunConfig, String> {
        let collection = match self.collection.as_str() {
            "centric" => CollectionSpec::Centric,
            "centric-radical" => CollectionSpec::CentricRadical,
            s => match s.strip_prefix('@') {
                Some(path) => CollectionSpec::File(path.into()),
                None => return Err(format!("--collection: expected centric, centric-radical or @file, got `{s}`")),
            },
        };
        let eab = match self.eab.as_str() {
            "all" => EabSpec::All,
            "omega" => EabSpec::Omega,
            s => match s.strip_prefix('@') {
                Some(path) => EabSpec::File(path.into()),
                None => return Err(format!("--eab: expected all, omega or @file, got `{s}`")),
            },
        };
        Ok(RunConfig {
            p: self.p,
            group: Some(self.group.clone()),
            collection,
            eab,
            dim: self.dim,
            simplex_budget: self.simplex_budget,
            subdivision_budget: self.subdivision_budget,
            strict: self.strict,
            dwyer_homology: self.dwyer_homology,
            thomason: self.thomason,
            thomason_seed: 0,
            cache_dir: self.cache_dir.clone(),
        })
    }
}

pub fn selftest_config(corpus: &str, dim: usize, inject_mutation: bool, seed: u64) -> SelftestConfig {
    SelftestConfig {
        corpus: corpus.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect(),
        dim,
        inject_mutation,
        seed,
    }
}
