//! Experiment configuration and its validation.

use serde::{Deserialize, Serialize};

use crate::signal::{SignalFamily, SignalFamilySpec};

pub const DEFAULT_PREDICTION_TRIALS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepAxis {
    #[serde(rename = "M", alias = "m")]
    M,
    #[serde(rename = "d")]
    D,
    #[serde(rename = "beta")]
    Beta,
    #[serde(rename = "pad-ratio")]
    PadRatio,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub values: Vec<f64>,
}

fn default_sigma() -> f64 {
    1.0
}

fn default_prediction_trials() -> usize {
    DEFAULT_PREDICTION_TRIALS
}

/// Everything needed to reproduce an experiment bit-for-bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub template: SignalFamilySpec,
    #[serde(alias = "M")]
    pub m: u64,
    pub trials: usize,
    #[serde(default = "default_sigma")]
    pub sigma: f64,
    #[serde(default, alias = "seed")]
    pub master_seed: u64,
    /// Frequencies at which phase and magnitude statistics are reported.
    #[serde(default)]
    pub frequencies: Vec<usize>,
    #[serde(default)]
    pub sweep: Option<SweepSpec>,
    /// Draws for the fixed-`d` predictions; zero skips them.
    #[serde(default = "default_prediction_trials")]
    pub prediction_trials: usize,
}

/// A validation failure tied to a dotted field path such as `template.d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldError {
    pub field: String,
    pub message: String,
}

impl std::fmt::Display for FieldError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

/// A config error positioned in the source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub line: usize,
    pub column: usize,
    pub field: Option<String>,
    pub message: String,
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.field {
            Some(field) => write!(f, "{}:{}: {}: {}", self.line, self.column, field, self.message),
            None => write!(f, "{}:{}: {}", self.line, self.column, self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

fn field_err(field: &str, message: impl Into<String>) -> FieldError {
    FieldError { field: field.to_string(), message: message.into() }
}

impl ExperimentConfig {
    pub fn new(template: SignalFamilySpec, m: u64, trials: usize, master_seed: u64) -> Self {
        Self {
            template,
            m,
            trials,
            sigma: 1.0,
            master_seed,
            frequencies: Vec::new(),
            sweep: None,
            prediction_trials: DEFAULT_PREDICTION_TRIALS,
        }
    }

    pub fn with_frequencies(mut self, ks: Vec<usize>) -> Self {
        self.frequencies = ks;
        self
    }

    pub fn with_sigma(mut self, sigma: f64) -> Self {
        self.sigma = sigma;
        self
    }

    pub fn with_prediction_trials(mut self, n: usize) -> Self {
        self.prediction_trials = n;
        self
    }

    pub fn d(&self) -> usize {
        self.template.len()
    }

    pub fn validate(&self) -> Result<(), FieldError> {
        self.template.check().map_err(|(f, msg)| field_err(&format!("template.{f}"), msg))?;
        if self.m < 1 {
            return Err(field_err("m", "must be at least 1"));
        }
        if self.trials < 1 {
            return Err(field_err("trials", "must be at least 1"));
        }
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return Err(field_err("sigma", format!("must be positive and finite, got {}", self.sigma)));
        }
        let d = self.d();
        if let Some(k) = self.frequencies.iter().find(|&&k| k >= d) {
            return Err(field_err("frequencies", format!("frequency {k} out of range for d = {d}")));
        }
        if self.prediction_trials != 0 && self.prediction_trials < crate::theory::MIN_MOMENT_TRIALS {
            return Err(field_err(
                "prediction_trials",
                format!("must be 0 or at least {}", crate::theory::MIN_MOMENT_TRIALS),
            ));
        }
        if let Some(sweep) = &self.sweep {
            self.validate_sweep(sweep)?;
        }
        Ok(())
    }

    fn validate_sweep(&self, sweep: &SweepSpec) -> Result<(), FieldError> {
        if sweep.values.is_empty() {
            return Err(field_err("sweep.values", "must not be empty"));
        }
        if sweep.values.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(field_err("sweep.values", "must be strictly increasing"));
        }
        let integral = |v: f64| v.fract() == 0.0 && v >= 1.0;
        match sweep.axis {
            SweepAxis::M if !sweep.values.iter().all(|&v| integral(v)) => {
                Err(field_err("sweep.values", "M values must be positive integers"))
            }
            SweepAxis::D if !sweep.values.iter().all(|&v| integral(v) && (v as usize).is_multiple_of(2)) => {
                Err(field_err("sweep.values", "d values must be even positive integers"))
            }
            SweepAxis::D if self.template.family == SignalFamily::ExplicitSamples => {
                Err(field_err("sweep.axis", "cannot sweep d with explicit samples"))
            }
            SweepAxis::Beta | SweepAxis::PadRatio if sweep.values.iter().any(|v| !v.is_finite() || *v < 0.0) => {
                Err(field_err("sweep.values", "values must be finite and nonnegative"))
            }
            _ => {
                for &v in &sweep.values {
                    self.at_sweep_value(sweep.axis, v).validate_point()?;
                }
                Ok(())
            }
        }
    }

    fn validate_point(&self) -> Result<(), FieldError> {
        let mut c = self.clone();
        c.sweep = None;
        c.validate()
    }

    /// The config at one point of a sweep; the sweep itself is dropped.
    pub fn at_sweep_value(&self, axis: SweepAxis, value: f64) -> Self {
        let mut c = self.clone();
        c.sweep = None;
        match axis {
            SweepAxis::M => c.m = value as u64,
            SweepAxis::D => c.template.d = value as usize,
            SweepAxis::Beta => c.template.beta = value,
            SweepAxis::PadRatio => c.template.pad_ratio = value,
        }
        c
    }

    /// Parse and validate, positioning any error in `text`.
    pub fn from_json_str(text: &str) -> Result<Self, ConfigError> {
        let config: Self = serde_json::from_str(text).map_err(|e| ConfigError {
            line: e.line().max(1),
            column: e.column().max(1),
            field: None,
            message: e.to_string().split(" at line ").next().unwrap_or_default().to_string(),
        })?;
        config.validate().map_err(|e| {
            let (line, column) = locate_field(text, &e.field);
            ConfigError { line, column, field: Some(e.field), message: e.message }
        })?;
        Ok(config)
    }
}

/// Line and column of the key for a dotted path, falling back to the parent key, then `1:1`.
pub fn locate_field(text: &str, path: &str) -> (usize, usize) {
    let mut start = 0;
    let mut found = None;
    for part in path.split('.') {
        let aliases = match part {
            "m" => vec!["m", "M"],
            "master_seed" => vec!["master_seed", "seed"],
            other => vec![other],
        };
        let hit = aliases.iter().filter_map(|a| find_key(&text[start..], a).map(|p| p + start)).min();
        match hit {
            Some(pos) => {
                found = Some(pos);
                start = pos;
            }
            None => break,
        }
    }
    match found {
        Some(pos) => {
            let before = &text[..pos];
            let line = before.matches('\n').count() + 1;
            let column = pos - before.rfind('\n').map(|i| i + 1).unwrap_or(0) + 1;
            (line, column)
        }
        None => (1, 1),
    }
}

fn find_key(text: &str, key: &str) -> Option<usize> {
    let quoted = format!("\"{key}\"");
    let mut from = 0;
    while let Some(i) = text[from..].find(&quoted) {
        let at = from + i;
        let rest = text[at + quoted.len()..].trim_start();
        if rest.starts_with(':') {
            return Some(at);
        }
        from = at + quoted.len();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
  "template": {"family": "delta", "d": 64},
  "m": 100,
  "trials": 10,
  "master_seed": 1
}"#;

    #[test]
    fn parses_minimal() {
        let c = ExperimentConfig::from_json_str(MINIMAL).unwrap();
        assert_eq!(c.d(), 64);
        assert_eq!(c.sigma, 1.0);
        assert!(c.frequencies.is_empty());
    }

    #[test]
    fn odd_d_is_anchored() {
        let text = MINIMAL.replace("\"d\": 64", "\"d\": 63");
        let e = ExperimentConfig::from_json_str(&text).unwrap_err();
        assert_eq!(e.field.as_deref(), Some("template.d"));
        assert_eq!(e.line, 2);
        assert!(e.to_string().starts_with("2:"));
    }

    #[test]
    fn syntax_error_has_position() {
        let e = ExperimentConfig::from_json_str("{\n  \"m\": ,\n}").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.field.is_none());
    }

    #[test]
    fn unknown_field_is_rejected() {
        let text = MINIMAL.replace("\"trials\"", "\"trails\"");
        assert!(ExperimentConfig::from_json_str(&text).is_err());
    }

    #[test]
    fn sweep_must_increase() {
        let mut c = ExperimentConfig::from_json_str(MINIMAL).unwrap();
        c.sweep = Some(SweepSpec { axis: SweepAxis::M, values: vec![10.0, 5.0] });
        assert_eq!(c.validate().unwrap_err().field, "sweep.values");
        c.sweep = Some(SweepSpec { axis: SweepAxis::D, values: vec![16.0, 33.0] });
        assert!(c.validate().is_err());
        c.sweep = Some(SweepSpec { axis: SweepAxis::D, values: vec![16.0, 32.0] });
        assert!(c.validate().is_ok());
        assert_eq!(c.at_sweep_value(SweepAxis::D, 32.0).d(), 32);
    }

    #[test]
    fn frequency_range() {
        let c = ExperimentConfig::from_json_str(MINIMAL).unwrap().with_frequencies(vec![64]);
        assert_eq!(c.validate().unwrap_err().field, "frequencies");
    }
}
