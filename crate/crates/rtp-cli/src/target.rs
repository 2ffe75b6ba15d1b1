//! Resolving the tree or quiver a command acts on.

use crate::error::CliError;
use clap::Args;
use rtp_core::cycle::laufer_artin_cycle;
use rtp_core::quiver::{quasi_example_quiver, DimensionVector, Quiver, QuiverJson};
use rtp_core::tree::{catalog_tree, Family, TreeJson, WeightedTree};
use std::path::PathBuf;

#[derive(Debug, Args)]
pub struct TargetArgs {
    /// Catalog family, e.g. H, B_mn, E82, quasi-example.
    pub family: Option<String>,
    /// Family parameters.
    #[arg(allow_negative_numbers = true)]
    pub params: Vec<i64>,
    /// Read a tree or quiver JSON file instead of a catalog entry.
    #[arg(long, conflicts_with = "family")]
    pub file: Option<PathBuf>,
}

/// Orientation and dimension vector for quiver commands.
#[derive(Debug, Args)]
pub struct QuiverArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    /// Orientation bits: bit e set reverses canonical edge e.
    #[arg(long)]
    pub bits: Option<u64>,
    /// Dimension vector, comma separated (default: the Artin cycle).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub dims: Option<Vec<i64>>,
}

pub enum Loaded {
    Tree(WeightedTree),
    Quiver(Quiver),
}

impl TargetArgs {
    fn family(&self) -> Result<Option<Family>, CliError> {
        self.family
            .as_deref()
            .map(|s| s.parse::<Family>().map_err(|e| CliError::usage(e.to_string())))
            .transpose()
    }

    pub fn load(&self) -> Result<Loaded, CliError> {
        if let Some(path) = &self.file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
            let value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
            if value.get("arrows").is_some() {
                let j: QuiverJson =
                    serde_json::from_value(value).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
                return Ok(Loaded::Quiver(Quiver::try_from(&j)?));
            }
            let j: TreeJson =
                serde_json::from_value(value).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
            return Ok(Loaded::Tree(WeightedTree::try_from(&j)?));
        }
        let family = self
            .family()?
            .ok_or_else(|| CliError::usage("give a catalog family with parameters, or --file"))?;
        if family == Family::QuasiExample {
            return Ok(Loaded::Quiver(quasi_example_quiver(&self.params)?.quiver));
        }
        let tree = catalog_tree(family, &self.params).map_err(|e| CliError::usage(e.to_string()))?;
        Ok(Loaded::Tree(tree))
    }

    pub fn tree(&self) -> Result<WeightedTree, CliError> {
        Ok(match self.load()? {
            Loaded::Tree(t) => t,
            Loaded::Quiver(q) => q.tree().clone(),
        })
    }

    pub fn is_example(&self) -> bool {
        self.file.is_none() && matches!(self.family(), Ok(Some(Family::QuasiExample)))
    }
}

impl QuiverArgs {
    /// The quiver plus its dimension vector.
    pub fn load(&self) -> Result<(Quiver, DimensionVector), CliError> {
        let q = match (self.target.load()?, self.bits) {
            (Loaded::Tree(t), bits) => {
                let mask = (1u64 << t.edges().len().min(63)) - 1;
                Quiver::from_bits(t, bits.unwrap_or(0) & mask)
            }
            (Loaded::Quiver(q), None) => q,
            (Loaded::Quiver(q), Some(bits)) => {
                let mask = (1u64 << q.tree().edges().len().min(63)) - 1;
                Quiver::from_bits(q.tree().clone(), bits & mask)
            }
        };
        let a = match &self.dims {
            Some(d) => DimensionVector::new(d.clone())?,
            None => DimensionVector::from_divisor(&laufer_artin_cycle(q.tree())?),
        };
        Ok((q, a))
    }

    /// Reflection prefix stored with the example quiver.
    pub fn example_seed(&self) -> Result<Vec<usize>, CliError> {
        Ok(quasi_example_quiver(&self.target.params)?.seed)
    }
}
