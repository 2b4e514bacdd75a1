//! Lattice and reference class, from a JSON file or compiled-in defaults.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{GramSpec, NumClass, RANK};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Table,
    Svg,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliConfig {
    pub gram: GramSpec,
    pub reference_ample: NumClass,
    pub output_format: Format,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig { gram: GramSpec::enriques(), reference_ample: NumClass::from_slice(&[1, 1]), output_format: Format::Json }
    }
}

/// On-disk form; every field is optional.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    name: Option<String>,
    gram: Option<[[i64; RANK]; RANK]>,
    reference_ample: Option<NumClass>,
    output_format: Option<Format>,
}

impl CliConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ConfigFile = serde_json::from_str(text).map_err(|e| Error::config(format!("config: {e}")))?;
        let mut cfg = CliConfig::default();
        if let Some(g) = file.gram {
            let name = file.name.unwrap_or_else(|| "custom".into());
            cfg.gram = GramSpec::new(name, g).map_err(|e| Error::config(e.to_string()))?;
        }
        if let Some(h0) = file.reference_ample {
            cfg.reference_ample = h0;
        }
        if let Some(f) = file.output_format {
            cfg.output_format = f;
        }
        if cfg.gram.square(&cfg.reference_ample) <= 0 {
            return Err(Error::config(format!("reference class {} has H0² ≤ 0", cfg.reference_ample)));
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::config(format!("{}: {e}", path.display())))?;
        CliConfig::from_json(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_overrides() {
        let cfg = CliConfig::from_json("{}").unwrap();
        assert_eq!(cfg, CliConfig::default());
        let cfg = CliConfig::from_json(r#"{"reference_ample": [1,2,0,0,0,0,0,0,0,0], "output_format": "csv"}"#).unwrap();
        assert_eq!(cfg.reference_ample, NumClass::from_slice(&[1, 2]));
        assert_eq!(cfg.output_format, Format::Csv);
    }

    #[test]
    fn rejections() {
        assert!(matches!(CliConfig::from_json("not json"), Err(Error::Config(_))));
        assert!(matches!(CliConfig::from_json(r#"{"reference_ample": [1,0,0,0,0,0,0,0,0,0]}"#), Err(Error::Config(_))));
        let mut g = [[0i64; RANK]; RANK];
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = 1;
        }
        let text = serde_json::json!({ "gram": g }).to_string();
        assert!(matches!(CliConfig::from_json(&text), Err(Error::Config(_))));
        assert!(matches!(CliConfig::from_json(r#"{"colour": 1}"#), Err(Error::Config(_))));
    }
}
