//! Run settings assembled from defaults, an optional `key=value` file and
//! command-line flags, in that order of precedence.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use graphstar::characters::default_normalization;
use graphstar::graph::{catalog, parse_graph, CanonicalGraph, Restriction};
use graphstar::rational::{self, Rational};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format {s:?} (expected text or json)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Json => "json",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Config {
    pub max_order: usize,
    pub restriction: Restriction,
    pub normalization: Vec<(CanonicalGraph, Rational)>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub suite: Option<String>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_order: 3,
            restriction: Restriction::Forest,
            normalization: default_normalization(),
            out: None,
            format: Format::Text,
            suite: None,
        }
    }
}

/// Graph given as text (`m=2;n=1;v1:B1,B2`) or by catalog name (`b2L`).
pub fn graph_arg(text: &str) -> Result<CanonicalGraph, CliError> {
    if let Some(g) = catalog::by_name(text) {
        return Ok(g);
    }
    Ok(parse_graph(text)?.canonicalize())
}

/// `graph=value`; the graph part may itself contain `=`.
pub fn normalization_pair(text: &str) -> Result<(CanonicalGraph, Rational), CliError> {
    let (g, v) = text
        .rsplit_once('=')
        .ok_or_else(|| CliError::Usage(format!("normalization {text:?} is not of the form graph=value")))?;
    Ok((graph_arg(g.trim())?, rational::parse(v)?))
}

fn set_normalization(list: &mut Vec<(CanonicalGraph, Rational)>, pair: (CanonicalGraph, Rational)) {
    list.retain(|(g, _)| *g != pair.0);
    list.push(pair);
}

impl Config {
    pub fn apply(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let bad = |e: String| CliError::Usage(format!("{key}: {e}"));
        match key {
            "max_order" | "max-order" => self.max_order = value.parse().map_err(|e| bad(format!("{e}")))?,
            "restrict" | "restriction" => self.restriction = value.parse::<Restriction>()?,
            "normalize" | "normalization" => {
                for part in value.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                    set_normalization(&mut self.normalization, normalization_pair(part)?);
                }
            }
            "out" => self.out = Some(PathBuf::from(value)),
            "format" => self.format = value.parse().map_err(bad)?,
            "suite" => self.suite = Some(value.to_string()),
            _ => return Err(CliError::Usage(format!("unknown config key {key:?}"))),
        }
        Ok(())
    }

    /// Reads `key = value` lines; `#` starts a comment.
    pub fn load_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("{}:{}: expected key=value", path.display(), i + 1))
            })?;
            self.apply(k.trim(), v.trim())?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.max_order > 6 {
            return Err(CliError::Usage(format!("max order {} is beyond the supported range 0..=6", self.max_order)));
        }
        if !self.normalization.iter().any(|(g, _)| *g == catalog::b0()) {
            return Err(CliError::Usage("normalization must fix W(b0)".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use graphstar::rational::int;

    #[test]
    fn file_and_overrides() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        std::fs::write(&path, "# run\nmax_order = 2\nrestrict = full\nnormalize = b1=2, b2L=1/2\nformat=json\n").unwrap();
        let mut c = Config::default();
        c.load_file(&path).unwrap();
        assert_eq!(c.max_order, 2);
        assert_eq!(c.restriction, Restriction::Full);
        assert_eq!(c.format, Format::Json);
        assert!(c.normalization.contains(&(catalog::b1(), int(2))));
        assert!(c.normalization.contains(&(catalog::bn_left(2), rational::ratio(1, 2))));
        assert_eq!(c.normalization.len(), 3);
        c.apply("max-order", "4").unwrap();
        assert_eq!(c.max_order, 4);
        assert!(c.apply("colour", "red").is_err());
        assert!(c.validate().is_ok());
    }

    #[test]
    fn graph_arguments() {
        assert_eq!(graph_arg("b1").unwrap(), catalog::b1());
        assert_eq!(graph_arg("m=2;n=1;v1:B2,B1").unwrap(), catalog::b1());
        assert!(graph_arg("m=2;n=1;v1:B2,B2").is_err());
        assert_eq!(normalization_pair("m=2;n=1;v1:B1,B2=3").unwrap(), (catalog::b1(), int(3)));
    }
}
