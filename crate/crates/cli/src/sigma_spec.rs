//! Resolution of the `--sigma FILE` / `--builtin NAME` argument pair into a
//! concrete multi-index permutation.

use std::fs;
use std::path::PathBuf;

use branchlaw::sigma_io::{self, SigmaFormat};
use branchlaw::{builtin, MultiIndexPermutation};

use crate::Failure;

/// A resolved σ together with a human-readable description of where it came
/// from.  `format` is `None` for built-in tables, which never touch the disk.
pub struct SigmaSpec {
    pub source: String,
    pub format: Option<SigmaFormat>,
    pub sigma: MultiIndexPermutation,
}

impl SigmaSpec {
    /// One line of provenance for stderr diagnostics.
    pub fn describe(&self) -> String {
        let format = match self.format {
            Some(SigmaFormat::Json) => "json",
            Some(SigmaFormat::Compact) => "compact",
            None => "builtin",
        };
        format!(
            "{} ({format}, n={}, l={})",
            self.source,
            self.sigma.alphabet_size(),
            self.sigma.block_length()
        )
    }

    /// Reads and parses a σ file in either supported format.
    pub fn from_file(path: &PathBuf) -> Result<Self, Failure> {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))?;
        let (sigma, format) = sigma_io::parse(&text)
            .map_err(|e| Failure::parse(format!("cannot parse {}: {e}", path.display())))?;
        let spec = SigmaSpec {
            source: path.display().to_string(),
            format: Some(format),
            sigma,
        };
        eprintln!("sigma: {}", spec.describe());
        Ok(spec)
    }

    /// Looks up a named built-in σ, including the `canonical:<N>` family.
    pub fn from_builtin(name: &str) -> Result<Self, Failure> {
        let sigma = builtin::by_name(name).map_err(|e| Failure::parse(e.to_string()))?;
        Ok(SigmaSpec {
            source: format!("builtin:{name}"),
            format: None,
            sigma,
        })
    }

    /// Resolves the clap argument pair.  Exactly one of the two options is
    /// present; clap enforces that before we are called.
    pub fn load(sigma: Option<&PathBuf>, builtin: Option<&str>) -> Result<Self, Failure> {
        match (sigma, builtin) {
            (Some(path), None) => Self::from_file(path),
            (None, Some(name)) => Self::from_builtin(name),
            _ => unreachable!("clap enforces exactly one σ source"),
        }
    }
}
