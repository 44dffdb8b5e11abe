use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::charp::DEFAULT_TERM_BUDGET;
use crate::error::{Error, Result};
use crate::thresholds::{PrimeSpec, ScanOptions};

pub const MIN_TERM_BUDGET: u64 = 10_000;

/// Where the scanned polynomial comes from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PolySource {
    Inline(String),
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanConfig {
    pub input: PolySource,
    #[serde(serialize_with = "as_display")]
    pub primes: PrimeSpec,
    pub e_max: u32,
    pub term_budget: u64,
    pub e_cap: u32,
    pub preserve_support: bool,
    pub jobs: usize,
    pub csv: Option<PathBuf>,
    pub json: Option<PathBuf>,
    pub stdout: bool,
}

fn as_display<S: serde::Serializer>(spec: &PrimeSpec, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(spec)
}

/// Raw `key = value` settings, from a file, flags, or both.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConfigEntries(BTreeMap<String, String>);

const KEYS: &[&str] = &[
    "input",
    "input_file",
    "primes",
    "e_max",
    "budget",
    "e_cap",
    "preserve_support",
    "jobs",
    "csv",
    "json",
    "stdout",
];

impl ConfigEntries {
    /// Parses a flat `key = value` file; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(i + 1, 1, "expected `key = value`"))?;
            let key = key.trim().replace('-', "_");
            if !KEYS.contains(&key.as_str()) {
                return Err(Error::parse(i + 1, 1, format!("unknown key `{key}`")));
            }
            entries.insert(key, value.trim().to_string());
        }
        Ok(ConfigEntries(entries))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.0.insert(key.to_string(), value.into());
    }

    /// Values in `other` win.
    pub fn merge(mut self, other: ConfigEntries) -> Self {
        self.0.extend(other.0);
        self
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    fn number<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.get(key)
            .map(|v| {
                v.parse()
                    .map_err(|_| Error::InvalidInput(format!("`{key}` expects a non-negative integer, got `{v}`")))
            })
            .transpose()
    }

    fn flag(&self, key: &str) -> Result<Option<bool>> {
        self.get(key)
            .map(|v| match v {
                "true" | "yes" | "1" => Ok(true),
                "false" | "no" | "0" => Ok(false),
                _ => Err(Error::InvalidInput(format!("`{key}` expects true or false, got `{v}`"))),
            })
            .transpose()
    }

    pub fn resolve(&self) -> Result<ScanConfig> {
        let input = match (self.get("input"), self.get("input_file")) {
            (Some(_), Some(_)) => {
                return Err(Error::InvalidInput("give either `input` or `input_file`, not both".into()))
            }
            (Some(text), None) => PolySource::Inline(text.to_string()),
            (None, Some(path)) => PolySource::File(PathBuf::from(path)),
            (None, None) => return Err(Error::InvalidInput("no input polynomial".into())),
        };
        let primes = PrimeSpec::parse(
            self.get("primes")
                .ok_or_else(|| Error::InvalidInput("no prime specification".into()))?,
        )?;
        let defaults = ScanOptions::default();
        let config = ScanConfig {
            input,
            primes,
            e_max: self.number("e_max")?.unwrap_or(defaults.e_max),
            term_budget: self.number("budget")?.unwrap_or(DEFAULT_TERM_BUDGET),
            e_cap: self.number("e_cap")?.unwrap_or(defaults.e_cap),
            preserve_support: self.flag("preserve_support")?.unwrap_or(defaults.preserve_support),
            jobs: self.number("jobs")?.unwrap_or(defaults.jobs),
            csv: self.get("csv").map(PathBuf::from),
            json: self.get("json").map(PathBuf::from),
            stdout: self.flag("stdout")?.unwrap_or(false),
        };
        config.validate()?;
        Ok(config)
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        if self.e_max < 1 {
            return Err(Error::InvalidInput("e_max must be at least 1".into()));
        }
        if self.term_budget < MIN_TERM_BUDGET {
            return Err(Error::InvalidInput(format!(
                "term budget must be at least {MIN_TERM_BUDGET}, got {}",
                self.term_budget
            )));
        }
        if self.jobs == 0 {
            return Err(Error::InvalidInput("jobs must be at least 1".into()));
        }
        if self.csv.is_none() && self.json.is_none() && !self.stdout {
            return Err(Error::InvalidInput("no output: set csv, json, or stdout".into()));
        }
        Ok(())
    }

    pub fn options(&self) -> ScanOptions {
        ScanOptions {
            e_max: self.e_max,
            term_budget: self.term_budget,
            preserve_support: self.preserve_support,
            e_cap: self.e_cap,
            jobs: self.jobs,
        }
    }

    pub fn input_text(&self) -> Result<String> {
        match &self.input {
            PolySource::Inline(text) => Ok(text.clone()),
            PolySource::File(path) => std::fs::read_to_string(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        }
    }
}
