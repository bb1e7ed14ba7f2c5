use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::lattice::{default_delta, Scaling};
use crate::smooth::FactorBudget;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(Error::Parse(format!("unknown report format {other:?}"))),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Json => "json",
            ReportFormat::Csv => "csv",
        })
    }
}

/// Decay constant `c4` used for the small-`k` linear form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Tau1Decay {
    /// `c4 = log(8/5)`, valid for every `k` because `alpha(k) > 8/5`.
    #[default]
    Uniform,
    /// `c4 = log alpha(k)`.
    LogAlpha,
}

impl FromStr for Tau1Decay {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "uniform" => Ok(Tau1Decay::Uniform),
            "log-alpha" => Ok(Tau1Decay::LogAlpha),
            other => Err(Error::Parse(format!("unknown tau1 decay {other:?}"))),
        }
    }
}

impl fmt::Display for Tau1Decay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tau1Decay::Uniform => "uniform",
            Tau1Decay::LogAlpha => "log-alpha",
        })
    }
}

/// Settings shared by every pipeline stage.
#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub k_min: u32,
    pub k_max: u32,
    pub n_max: i64,
    /// `C = 10^c_exponent` for the small-`k` reductions.
    pub c_exponent: u32,
    /// Extra decimal digits carried beyond what `floor(C eta)` needs.
    pub precision_guard: u32,
    pub worker_count: usize,
    pub budget: FactorBudget,
    pub output_path: Option<PathBuf>,
    pub format: ReportFormat,
    /// One completed `k` per line; results go to the same path plus `.jsonl`.
    pub checkpoint_path: Option<PathBuf>,
    /// On a failed reduction the exponent of `C` is multiplied by this.
    pub escalation_factor: f64,
    pub escalation_tries: u32,
    pub tau1_decay: Tau1Decay,
    /// Orders reduced by `reduce-tau1`; the whole `k` range when empty.
    pub tau1_sample: Vec<u32>,
    pub tau2_rounds: Vec<Scaling>,
    /// Boundary between the small-`k` and large-`k` regimes.
    pub case_split: u32,
    pub lll_delta: BigRational,
    /// Record wall-clock time in reports (breaks byte-identical output).
    pub timing: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            k_min: 2,
            k_max: 100,
            n_max: 300,
            c_exponent: 299,
            precision_guard: 15,
            worker_count: 1,
            budget: FactorBudget::default(),
            output_path: None,
            format: ReportFormat::Json,
            checkpoint_path: None,
            escalation_factor: 1.01,
            escalation_tries: 12,
            tau1_decay: Tau1Decay::Uniform,
            tau1_sample: Vec::new(),
            tau2_rounds: vec![
                Scaling::pow10(1356),
                Scaling { mult: 13, exp: 326 },
                Scaling::pow10(300),
            ],
            case_split: 2500,
            lll_delta: default_delta(),
            timing: false,
        }
    }
}

fn parse<T: FromStr>(key: &str, v: &str) -> Result<T>
where
    T::Err: fmt::Display,
{
    v.trim()
        .parse()
        .map_err(|e| Error::Parse(format!("{key} = {v:?}: {e}")))
}

fn parse_list<T: FromStr>(key: &str, v: &str) -> Result<Vec<T>>
where
    T::Err: fmt::Display,
{
    v.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse(key, s))
        .collect()
}

impl PipelineConfig {
    /// Applies one `key = value` setting. Keys use the long CLI flag names,
    /// with `-` or `_` as separator.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim().trim_start_matches("--").replace('-', "_");
        let v = value.trim();
        match key.as_str() {
            "k_min" => self.k_min = parse(&key, v)?,
            "k_max" => self.k_max = parse(&key, v)?,
            "n_max" => self.n_max = parse(&key, v)?,
            "c_exp" | "c_exponent" => self.c_exponent = parse(&key, v)?,
            "guard" | "precision_guard" => self.precision_guard = parse(&key, v)?,
            "workers" | "worker_count" => self.worker_count = parse(&key, v)?,
            "budget" => self.budget.rho_iterations = parse(&key, v)?,
            "trial_bound" => self.budget.trial_bound = parse(&key, v)?,
            "out" | "output_path" => self.output_path = Some(PathBuf::from(v)),
            "format" => self.format = parse(&key, v)?,
            "checkpoint" => self.checkpoint_path = Some(PathBuf::from(v)),
            "escalation_factor" => self.escalation_factor = parse(&key, v)?,
            "escalation_tries" => self.escalation_tries = parse(&key, v)?,
            "tau1_decay" => self.tau1_decay = parse(&key, v)?,
            "tau1_sample" => self.tau1_sample = parse_list(&key, v)?,
            "tau2_c" | "tau2_rounds" => self.tau2_rounds = parse_list(&key, v)?,
            "case_split" => self.case_split = parse(&key, v)?,
            "lll_delta" => self.lll_delta = parse(&key, v)?,
            "timing" => self.timing = parse(&key, v)?,
            other => return Err(Error::Parse(format!("unknown configuration key {other:?}"))),
        }
        Ok(())
    }

    /// Reads flat `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", i + 1)))?;
            self.set(k, v)
                .map_err(|e| Error::Parse(format!("line {}: {e}", i + 1)))?;
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = PipelineConfig::default();
        cfg.apply_text(&text)?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k_min < 2 {
            return Err(Error::Parameter(format!("k_min must be at least 2, got {}", self.k_min)));
        }
        if self.worker_count == 0 {
            return Err(Error::Parameter("workers must be at least 1".into()));
        }
        if self.escalation_factor.is_nan() || self.escalation_factor <= 1.0 {
            return Err(Error::Parameter("escalation_factor must exceed 1".into()));
        }
        if self.tau2_rounds.is_empty() {
            return Err(Error::Parameter("tau2_c needs at least one round".into()));
        }
        let quarter = BigRational::new(1.into(), 4.into());
        if self.lll_delta <= quarter || self.lll_delta >= BigRational::from_integer(1.into()) {
            return Err(Error::Parameter("lll_delta must lie in (1/4, 1)".into()));
        }
        Ok(())
    }

    /// `k_min..=k_max`.
    pub fn k_range(&self) -> std::ops::RangeInclusive<u32> {
        self.k_min..=self.k_max
    }

    /// The settings as ordered key/value pairs, for report headers.
    pub fn describe(&self) -> Vec<(String, String)> {
        let list = |v: &[String]| v.join(",");
        vec![
            ("k_min".into(), self.k_min.to_string()),
            ("k_max".into(), self.k_max.to_string()),
            ("n_max".into(), self.n_max.to_string()),
            ("c_exp".into(), self.c_exponent.to_string()),
            ("guard".into(), self.precision_guard.to_string()),
            ("trial_bound".into(), self.budget.trial_bound.to_string()),
            ("budget".into(), self.budget.rho_iterations.to_string()),
            ("escalation_factor".into(), self.escalation_factor.to_string()),
            ("escalation_tries".into(), self.escalation_tries.to_string()),
            ("tau1_decay".into(), self.tau1_decay.to_string()),
            (
                "tau1_sample".into(),
                list(&self.tau1_sample.iter().map(u32::to_string).collect::<Vec<_>>()),
            ),
            (
                "tau2_c".into(),
                list(&self.tau2_rounds.iter().map(Scaling::to_string).collect::<Vec<_>>()),
            ),
            ("case_split".into(), self.case_split.to_string()),
            ("lll_delta".into(), self.lll_delta.to_string()),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_config() {
        let mut cfg = PipelineConfig::default();
        cfg.apply_text(
            "# desk run\nk-min = 3\nk_max=40\n n_max = 120 \nformat = csv\nworkers = 4\n\
             tau1_sample = 2, 3, 5\ntau2_c = 1e1356, 1.3e327\nlll_delta = 99/100\n",
        )
        .unwrap();
        assert_eq!((cfg.k_min, cfg.k_max, cfg.n_max), (3, 40, 120));
        assert_eq!(cfg.format, ReportFormat::Csv);
        assert_eq!(cfg.worker_count, 4);
        assert_eq!(cfg.tau1_sample, vec![2, 3, 5]);
        assert_eq!(cfg.tau2_rounds[1], Scaling { mult: 13, exp: 326 });
        cfg.validate().unwrap();
    }

    #[test]
    fn rejects_bad_input() {
        let mut cfg = PipelineConfig::default();
        assert!(cfg.apply_text("k_min 3").is_err());
        assert!(cfg.apply_text("colour = blue").is_err());
        assert!(cfg.apply_text("k_min = two").is_err());
        cfg.k_min = 1;
        assert!(cfg.validate().is_err());
        let cfg = PipelineConfig {
            escalation_factor: 1.0,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
    }
}
