//! Command-line configuration for generated programs: one `--name=value`
//! flag per `config const`, plus `--threads=<n>` for the worker count.

use std::collections::BTreeMap;

#[derive(Debug, Clone, Default)]
pub struct Config {
    values: BTreeMap<String, String>,
    threads: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfigError {
    UnknownFlag(String),
    BadValue { name: String, value: String },
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConfigError::UnknownFlag(flag) => write!(f, "unknown flag `{flag}`"),
            ConfigError::BadValue { name, value } => {
                write!(f, "bad value `{value}` for --{name}")
            }
        }
    }
}

impl std::error::Error for ConfigError {}

impl Config {
    /// Parses process arguments; exits with status 2 on an unknown flag.
    pub fn from_args(known: &[&str]) -> Config {
        let args: Vec<String> = std::env::args().skip(1).collect();
        match Config::from_arg_list(&args, known) {
            Ok(cfg) => cfg,
            Err(e) => {
                eprintln!("error: {e}");
                std::process::exit(2);
            }
        }
    }

    pub fn from_arg_list(args: &[String], known: &[&str]) -> Result<Config, ConfigError> {
        let mut cfg = Config::default();
        for arg in args {
            let body = arg
                .strip_prefix("--")
                .ok_or_else(|| ConfigError::UnknownFlag(arg.clone()))?;
            let (name, value) = body
                .split_once('=')
                .ok_or_else(|| ConfigError::UnknownFlag(arg.clone()))?;
            if name == "threads" {
                cfg.threads = value.parse().map_err(|_| ConfigError::BadValue {
                    name: name.to_string(),
                    value: value.to_string(),
                })?;
            } else if known.contains(&name) {
                cfg.values.insert(name.to_string(), value.to_string());
            } else {
                return Err(ConfigError::UnknownFlag(arg.clone()));
            }
        }
        Ok(cfg)
    }

    /// Worker count; 0 means the hardware default.
    pub fn threads(&self) -> usize {
        self.threads
    }

    fn parsed<T: std::str::FromStr>(&self, name: &str, default: T) -> T {
        match self.values.get(name) {
            None => default,
            Some(raw) => raw.parse().unwrap_or_else(|_| {
                eprintln!("error: bad value `{raw}` for --{name}");
                std::process::exit(2);
            }),
        }
    }

    pub fn get_i64(&self, name: &str, default: i64) -> i64 {
        self.parsed(name, default)
    }

    pub fn get_f64(&self, name: &str, default: f64) -> f64 {
        self.parsed(name, default)
    }

    pub fn get_bool(&self, name: &str, default: bool) -> bool {
        self.parsed(name, default)
    }

    pub fn get_str(&self, name: &str, default: &str) -> String {
        self.values
            .get(name)
            .cloned()
            .unwrap_or_else(|| default.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_known_flags_and_threads() {
        let cfg = Config::from_arg_list(&args(&["--nx=64", "--threads=4"]), &["nx"]).unwrap();
        assert_eq!(cfg.get_i64("nx", 10), 64);
        assert_eq!(cfg.get_i64("nt", 7), 7);
        assert_eq!(cfg.threads(), 4);
    }

    #[test]
    fn unknown_flag_is_an_error() {
        let err = Config::from_arg_list(&args(&["--bogus=1"]), &["nx"]).unwrap_err();
        assert_eq!(err, ConfigError::UnknownFlag("--bogus=1".to_string()));
    }
}
