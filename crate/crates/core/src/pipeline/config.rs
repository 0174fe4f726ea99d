use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::rules::{parse_fraction, RuleFilter};
use crate::table::Code;
use crate::Rational;

/// Everything one run needs. Relative paths in a config file are resolved
/// against the directory holding that file.
///
/// ```toml
/// [input]
/// table = "patients.csv"
/// schema = "schema.toml"            # optional
/// discretization = "bins.toml"      # optional, table holds raw numbers
/// classes = [1, 2]                  # optional, default every class
///
/// [split]                           # optional, default: train = test = all
/// ratio = 0.55
/// seed = 7
///
/// [filter]
/// min_support = 2
///
/// [validation]
/// threshold = 0.6                   # or "60%" or "3/5"
///
/// [output]
/// dir = "out"
/// ```
#[derive(Clone, Debug, PartialEq)]
pub struct PipelineConfig {
    pub input: InputConfig,
    pub split: SplitConfig,
    pub filter: RuleFilter,
    pub threshold: Rational,
    pub output_dir: PathBuf,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputConfig {
    pub table: PathBuf,
    pub schema: Option<PathBuf>,
    pub discretization: Option<PathBuf>,
    pub classes: Option<Vec<Code>>,
}

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SplitConfig {
    /// Share of objects used for training. Without it the whole table is
    /// used for both induction and validation.
    pub ratio: Option<f64>,
    pub seed: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    input: InputConfig,
    #[serde(default)]
    split: SplitConfig,
    #[serde(default)]
    filter: RuleFilter,
    validation: RawValidation,
    output: RawOutput,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawValidation {
    threshold: FractionValue,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    dir: PathBuf,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FractionValue {
    Number(f64),
    Text(String),
}

/// Parses a threshold given as a decimal, a percentage or a fraction and
/// checks it lies in `[0, 1]`.
pub fn parse_threshold(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidThreshold(s.trim().trim_end_matches('%').parse().unwrap_or(f64::NAN));
    let r = parse_fraction(s).ok_or_else(bad)?;
    if r > Rational::from_integer(1) {
        return Err(bad());
    }
    Ok(r)
}

impl PipelineConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path.parent().unwrap_or(Path::new("")))
    }

    /// Parses config text, resolving relative paths against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let threshold = match raw.validation.threshold {
            FractionValue::Number(x) => parse_threshold(&x.to_string())?,
            FractionValue::Text(s) => parse_threshold(&s)?,
        };
        let resolve = |p: PathBuf| if p.is_relative() { base.join(p) } else { p };
        let input = InputConfig {
            table: resolve(raw.input.table),
            schema: raw.input.schema.map(resolve),
            discretization: raw.input.discretization.map(resolve),
            classes: raw.input.classes,
        };
        let config = PipelineConfig {
            input,
            split: raw.split,
            filter: raw.filter,
            threshold,
            output_dir: resolve(raw.output.dir),
        };
        config.check_ranges()?;
        Ok(config)
    }

    fn check_ranges(&self) -> Result<()> {
        if let Some(r) = self.split.ratio {
            if !(r > 0.0 && r < 1.0) {
                return Err(Error::InvalidRatio(r));
            }
        }
        if self.threshold > Rational::from_integer(1) {
            return Err(Error::InvalidThreshold(
                *self.threshold.numer() as f64 / *self.threshold.denom() as f64,
            ));
        }
        Ok(())
    }

    /// Range checks plus existence of every input file.
    pub fn validate(&self) -> Result<()> {
        self.check_ranges()?;
        let inputs = std::iter::once(&self.input.table)
            .chain(&self.input.schema)
            .chain(&self.input.discretization);
        for p in inputs {
            if !p.is_file() {
                return Err(Error::Config(format!("input file {} does not exist", p.display())));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "[input]\ntable = \"t.csv\"\n[validation]\nthreshold = 0.6\n[output]\ndir = \"out\"\n";

    #[test]
    fn minimal_config() {
        let c = PipelineConfig::parse(MINIMAL, Path::new("/data")).unwrap();
        assert_eq!(c.input.table, PathBuf::from("/data/t.csv"));
        assert_eq!(c.output_dir, PathBuf::from("/data/out"));
        assert_eq!(c.threshold, Rational::new(3, 5));
        assert_eq!(c.split, SplitConfig::default());
        assert_eq!(c.filter, RuleFilter::default());
        assert!(c.validate().is_err());
    }

    #[test]
    fn threshold_forms() {
        for t in ["\"60%\"", "\"3/5\"", "0.6"] {
            let text = MINIMAL.replace("0.6", t);
            assert_eq!(
                PipelineConfig::parse(&text, Path::new("")).unwrap().threshold,
                Rational::new(3, 5)
            );
        }
        let text = MINIMAL.replace("0.6", "1");
        assert_eq!(
            PipelineConfig::parse(&text, Path::new("")).unwrap().threshold,
            Rational::from_integer(1)
        );
        for bad in ["1.5", "-0.2", "\"lots\""] {
            let text = MINIMAL.replace("0.6", bad);
            assert!(matches!(
                PipelineConfig::parse(&text, Path::new("")),
                Err(Error::InvalidThreshold(_))
            ));
        }
    }

    #[test]
    fn split_and_filter_sections() {
        let text = format!("{MINIMAL}[split]\nratio = 0.55\nseed = 9\n[filter]\nmin_support = 2\n");
        let c = PipelineConfig::parse(&text, Path::new("")).unwrap();
        assert_eq!(c.split.ratio, Some(0.55));
        assert_eq!(c.split.seed, 9);
        assert_eq!(c.filter.min_support, 2);

        let text = format!("{MINIMAL}[split]\nratio = 1.0\n");
        assert!(matches!(
            PipelineConfig::parse(&text, Path::new("")),
            Err(Error::InvalidRatio(_))
        ));
        let text = format!("{MINIMAL}[extra]\nx = 1\n");
        assert!(matches!(
            PipelineConfig::parse(&text, Path::new("")),
            Err(Error::Config(_))
        ));
    }
}
