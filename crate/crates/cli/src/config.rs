use std::fs;
use std::path::Path;
use std::str::FromStr;

use sylow_core::FactorConfig;

use crate::args::Format;
use crate::commands::CliError;

/// Settings read from a `key = value` file. Command-line flags win.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub factor: FactorConfig,
    pub jobs: Option<usize>,
    pub format: Option<Format>,
    pub n_max: Option<u32>,
    pub q_max: Option<u64>,
    pub alt_n_max: Option<u32>,
}

fn parse<T: FromStr>(key: &str, value: &str, line: usize) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Usage(format!("config line {line}: bad value {value:?} for {key}")))
}

impl Settings {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut s = Settings::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap().trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {line}: expected `key = value`")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "trial_bound" => s.factor.trial_bound = parse(key, value, line)?,
                "rho_iterations" => s.factor.rho_iterations = parse(key, value, line)?,
                "jobs" => s.jobs = Some(parse(key, value, line)?),
                "n_max" => s.n_max = Some(parse(key, value, line)?),
                "q_max" => s.q_max = Some(parse(key, value, line)?),
                "alt_n_max" => s.alt_n_max = Some(parse(key, value, line)?),
                "format" => {
                    s.format = Some(match value {
                        "jsonl" => Format::Jsonl,
                        "csv" => Format::Csv,
                        _ => return Err(CliError::Usage(format!("config line {line}: unknown format {value:?}"))),
                    })
                }
                _ => return Err(CliError::Usage(format!("config line {line}: unknown key {key:?}"))),
            }
        }
        Ok(s)
    }
}
