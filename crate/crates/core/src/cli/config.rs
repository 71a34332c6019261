//! Run configuration: defaults, then a TOML file, then command-line flags.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::benchmark::{GeneratorConfig, DEFAULT_SEED};
use crate::card::SCHEMA_VERSION;
use crate::error::{Error, Result};
use crate::kernel::KernelConfig;
use crate::obstruction::ObstructionWeights;
use crate::stress::{RobustnessGrid, StressConfig};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SensitivityConfig {
    /// Must include 1.0.
    pub multipliers: Vec<f64>,
    /// Also sweep each term on its own.
    pub per_term: bool,
}

impl Default for SensitivityConfig {
    fn default() -> Self {
        Self {
            multipliers: vec![0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 4.0, 8.0, 16.0],
            per_term: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Master seed. Overrides the seeds of the generator, stress and
    /// robustness sections.
    pub seed: u64,
    pub benchmark: PathBuf,
    pub out: PathBuf,
    /// Worker threads; 0 uses every core.
    pub jobs: usize,
    pub weights: ObstructionWeights,
    pub generator: GeneratorConfig,
    pub stress: StressConfig,
    pub sensitivity: SensitivityConfig,
    pub robustness: RobustnessGrid,
    pub kernel: KernelConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            benchmark: PathBuf::from("benchmark"),
            out: PathBuf::from("results"),
            jobs: 0,
            weights: ObstructionWeights::default(),
            generator: GeneratorConfig::default(),
            stress: StressConfig::default(),
            sensitivity: SensitivityConfig::default(),
            robustness: RobustnessGrid::default(),
            kernel: KernelConfig::default(),
        }
    }
}

impl RunConfig {
    /// Parses a TOML config file over the defaults.
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(format!("config file: {e}")))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Replaces the weights with those in a TOML or JSON file; missing
    /// weights keep their defaults.
    pub fn load_weights(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read weights {}: {e}", path.display())))?;
        self.weights = if path.extension().is_some_and(|e| e == "json") {
            serde_json::from_str(&text).map_err(|e| Error::Config(format!("weights file: {e}")))?
        } else {
            toml::from_str(&text).map_err(|e| Error::Config(format!("weights file: {e}")))?
        };
        Ok(())
    }

    /// Pushes the master seed into every seeded section and checks all
    /// sections.
    pub fn finalize(mut self) -> Result<Self> {
        self.generator.master_seed = self.seed;
        self.stress.seed = self.seed;
        self.robustness.seed = self.seed;
        self.weights.validate().map_err(as_config)?;
        self.stress.validate()?;
        self.robustness.validate()?;
        self.kernel.validate()?;
        if self.generator.variants == 0 {
            return Err(Error::Config("generator needs at least one variant".into()));
        }
        if !(self.generator.noise_sigma.is_finite() && self.generator.noise_sigma >= 0.0) {
            return Err(Error::Config("generator noise_sigma must be nonnegative".into()));
        }
        Ok(self)
    }

    /// Short digest of every setting that can change results. Paths and
    /// thread count are excluded.
    pub fn hash(&self) -> String {
        let mut v = serde_json::to_value(self).expect("config serializes");
        if let Some(m) = v.as_object_mut() {
            for k in ["benchmark", "out", "jobs"] {
                m.remove(k);
            }
        }
        let digest = Sha256::digest(v.to_string().as_bytes());
        hex::encode(&digest[..8])
    }
}

fn as_config(e: Error) -> Error {
    match e {
        Error::Config(m) => Error::Config(m),
        other => Error::Config(other.to_string()),
    }
}

/// Reproducibility block embedded in every artifact.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub schema_version: u32,
    pub seed: u64,
    /// Master seed recorded in the benchmark manifest, when there is one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub benchmark_seed: Option<u64>,
    pub config_hash: String,
    /// Unix seconds; the only field that differs between identical runs.
    pub generated_at: u64,
}

impl Meta {
    pub fn new(command: &str, cfg: &RunConfig, benchmark_seed: Option<u64>) -> Self {
        let generated_at = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        Self {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            schema_version: SCHEMA_VERSION,
            seed: cfg.seed,
            benchmark_seed,
            config_hash: cfg.hash(),
            generated_at,
        }
    }

    /// Comment line heading every TSV; carries no timestamp.
    pub fn tsv_header(&self) -> String {
        let mut s = format!(
            "# {} {} command={} schema_version={} seed={} config_hash={}",
            self.tool, self.version, self.command, self.schema_version, self.seed, self.config_hash
        );
        if let Some(b) = self.benchmark_seed {
            s += &format!(" benchmark_seed={b}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_overrides_defaults_and_seed_propagates() {
        let cfg = RunConfig::from_toml("seed = 7\n[weights]\nw_t = 3.0\n[robustness]\nrepeats = 2\n")
            .unwrap()
            .finalize()
            .unwrap();
        assert_eq!(cfg.weights.w_t, 3.0);
        assert_eq!(cfg.weights.w_s, 1.0);
        assert_eq!(cfg.robustness.repeats, 2);
        assert_eq!(cfg.generator.master_seed, 7);
        assert_eq!(cfg.stress.seed, 7);
    }

    #[test]
    fn unknown_keys_are_config_errors() {
        assert!(matches!(RunConfig::from_toml("sed = 7"), Err(Error::Config(_))));
        assert!(matches!(RunConfig::from_toml("[weights]\nw_x = 1.0"), Err(Error::Config(_))));
    }

    #[test]
    fn hash_ignores_paths_but_not_weights() {
        let a = RunConfig::default();
        let b = RunConfig {
            out: "elsewhere".into(),
            jobs: 3,
            ..RunConfig::default()
        };
        assert_eq!(a.hash(), b.hash());
        let mut c = RunConfig::default();
        c.weights.w_g = 2.0;
        assert_ne!(a.hash(), c.hash());
    }
}
