//! The JSON run configuration.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use gcover_calculus::{seed_parameterization, Bounds, Parameterization, TargetCover};
use gcover_complex::{BuildOptions, DEFAULT_COSET_BUDGET};
use gcover_group::{Elem, GroupSpec, GroupTable};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub group: String,
    pub target: RawTarget,
    #[serde(default)]
    pub bounds: RawBounds,
    #[serde(default)]
    pub seed: Option<String>,
    #[serde(default)]
    pub sampling_seed: u64,
}

/// Either one boundary list (a connected target) or a list of components.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum RawTarget {
    Connected(Vec<RawElem>),
    Components(Vec<Vec<RawElem>>),
}

/// An element given by its index or by its printed name.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum RawElem {
    Index(usize),
    Name(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RawBounds {
    pub max_cuts: usize,
    pub max_block_size: usize,
    pub vertex_budget: usize,
    pub coset_budget: usize,
    pub slack: usize,
}

impl Default for RawBounds {
    fn default() -> Self {
        RawBounds {
            max_cuts: 1,
            max_block_size: 4,
            vertex_budget: 1_000_000,
            coset_budget: DEFAULT_COSET_BUDGET,
            slack: 3,
        }
    }
}

/// A loaded and checked configuration.
pub struct RunConfig {
    pub group: GroupTable,
    pub target: TargetCover,
    pub bounds: Bounds,
    pub vertex_budget: usize,
    pub coset_budget: usize,
    pub slack: usize,
    pub sampling_seed: u64,
    /// The explicit seed from the config, or the canonical seed of the target.
    pub start: Parameterization,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        let raw: RawConfig =
            serde_json::from_str(&text).with_context(|| format!("{}: invalid configuration", path.display()))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::from_raw(raw, base)
    }

    pub fn from_raw(raw: RawConfig, base_dir: &Path) -> Result<Self> {
        let mut spec: GroupSpec = raw.group.parse().context("group")?;
        if let GroupSpec::File(p) = &spec {
            if p.is_relative() {
                spec = GroupSpec::File(base_dir.join(p));
            }
        }
        let group = spec.load().with_context(|| format!("loading group {spec}"))?;
        let elem = |r: &RawElem| -> Result<Elem> {
            match r {
                RawElem::Index(i) => Ok(group.elem(*i)?),
                RawElem::Name(s) => Ok(group.parse_elem(s)?),
            }
        };
        let components = match &raw.target {
            RawTarget::Connected(c) => vec![c.iter().map(elem).collect::<Result<Vec<_>>>()?],
            RawTarget::Components(cs) => {
                cs.iter().map(|c| c.iter().map(elem).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?
            }
        };
        let target = TargetCover::new(&group, components).context("target")?;
        let b = &raw.bounds;
        if b.max_block_size == 0 || b.vertex_budget == 0 || b.coset_budget == 0 {
            bail!("bounds: max_block_size, vertex_budget and coset_budget must be positive");
        }
        let start = match &raw.seed {
            Some(text) => Parameterization::parse_text(&group, text).context("seed")?,
            None => seed_parameterization(&group, &target).context("target")?,
        };
        Ok(RunConfig {
            group,
            target,
            bounds: Bounds { max_cuts: b.max_cuts, max_block_size: b.max_block_size },
            vertex_budget: b.vertex_budget,
            coset_budget: b.coset_budget,
            slack: b.slack,
            sampling_seed: raw.sampling_seed,
            start,
        })
    }

    pub fn build_options(&self) -> BuildOptions {
        let mut o = BuildOptions::new(self.bounds);
        o.slack = self.slack;
        o.vertex_budget = self.vertex_budget;
        o.sampling_seed = self.sampling_seed;
        o
    }
}

/// Resolve an output path argument; `-` means standard output.
pub fn output_path(arg: &Option<PathBuf>) -> Option<&Path> {
    arg.as_deref().filter(|p| p.as_os_str() != "-")
}
