//! Sweep configuration: angle and grid syntax, the flat key=value config
//! file, and the merge rule (command-line flags override file values).

use std::collections::BTreeMap;
use std::path::Path;

use tjc_core::{Family, ThermalSpec};

use crate::CliError;

/// Parse an angle in radians; a trailing `pi` multiplies by pi
/// (`0.75pi`, `pi`, `-pi`).
pub fn parse_angle(s: &str) -> Result<f64, CliError> {
    let t = s.trim();
    if let Some(head) = t.strip_suffix("pi") {
        let head = head.trim();
        let factor: f64 = match head {
            "" | "+" => 1.0,
            "-" => -1.0,
            _ => head
                .parse()
                .map_err(|_| CliError::Usage(format!("cannot parse angle '{s}'")))?,
        };
        Ok(factor * std::f64::consts::PI)
    } else {
        t.parse()
            .map_err(|_| CliError::Usage(format!("cannot parse angle '{s}'")))
    }
}

/// A uniform grid `start:stop:steps` (steps = number of points, >= 1).
/// Start and stop accept the angle syntax.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Grid {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(CliError::Usage(format!(
                "grid '{s}' must have the form start:stop:steps"
            )));
        }
        let start = parse_angle(parts[0])?;
        let stop = parse_angle(parts[1])?;
        let steps: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad step count in grid '{s}'")))?;
        if steps < 1 {
            return Err(CliError::Usage(format!("grid '{s}' needs steps >= 1")));
        }
        if steps == 1 && (start - stop).abs() > 0.0 {
            return Err(CliError::Usage(format!(
                "grid '{s}' has one point but start != stop"
            )));
        }
        Ok(Grid { start, stop, steps })
    }

    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let h = (self.stop - self.start) / (self.steps - 1) as f64;
        (0..self.steps).map(|k| self.start + k as f64 * h).collect()
    }

    pub fn spec_string(&self) -> String {
        format!("{}:{}:{}", self.start, self.stop, self.steps)
    }
}

/// Flat `key=value` file; `#` starts a comment, blank lines ignored.
pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Usage(format!(
                "{}:{}: expected key=value, got '{raw}'",
                path.display(),
                lineno + 1
            )));
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

const KNOWN_KEYS: [&str; 14] = [
    "family",
    "beta",
    "beta_grid",
    "gt",
    "gt_grid",
    "nbar",
    "kappa",
    "epsilon_tail",
    "omega_over_g",
    "format",
    "output",
    "threads",
    "window",
    "samples",
];

/// Output formats for datasets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(CliError::Usage(format!("unknown format '{other}'"))),
        }
    }
}

impl std::fmt::Display for Format {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Format::Csv => write!(f, "csv"),
            Format::Json => write!(f, "json"),
        }
    }
}

/// Raw option bag: config-file values overlaid with command-line values.
/// All entries are still strings; [`SweepConfig::resolve`] does the typed
/// parsing and applies defaults.
#[derive(Clone, Debug, Default)]
pub struct OptionBag {
    map: BTreeMap<String, String>,
}

impl OptionBag {
    pub fn from_file(path: Option<&Path>) -> Result<Self, CliError> {
        let mut bag = OptionBag::default();
        if let Some(p) = path {
            let map = read_config_file(p)?;
            for key in map.keys() {
                if !KNOWN_KEYS.contains(&key.as_str()) {
                    return Err(CliError::Usage(format!(
                        "unknown config key '{key}' in {}",
                        p.display()
                    )));
                }
            }
            bag.map = map;
        }
        Ok(bag)
    }

    /// Command-line value wins over the file value.
    pub fn set_cli(&mut self, key: &str, value: Option<String>) {
        if let Some(v) = value {
            self.map.insert(key.to_string(), v);
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(|s| s.as_str())
    }
}

/// Fully resolved sweep parameters shared by the dataset commands.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub family: Option<Family>,
    pub beta: Option<f64>,
    pub beta_grid: Option<Grid>,
    pub gt: Option<f64>,
    pub gt_grid: Option<Grid>,
    pub nbar: f64,
    pub kappa_given: bool,
    pub epsilon_tail: f64,
    pub omega_over_g: f64,
    pub format: Format,
    pub output: Option<String>,
    pub threads: usize,
    pub window: Option<f64>,
    pub samples: usize,
}

impl SweepConfig {
    /// Parse and validate an option bag. `require_field` selects which
    /// field (nbar or kappa) must be present; when `false` a missing field
    /// defaults to the vacuum.
    pub fn resolve(bag: &OptionBag, require_field: bool) -> Result<Self, CliError> {
        let family = match bag.get("family") {
            None => None,
            Some(s) => Some(match s.to_ascii_lowercase().as_str() {
                "phi" => Family::Phi,
                "psi" => Family::Psi,
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown family '{other}' (expected phi or psi)"
                    )))
                }
            }),
        };
        let beta = bag.get("beta").map(parse_angle).transpose()?;
        let beta_grid = bag.get("beta_grid").map(Grid::parse).transpose()?;
        let gt = bag.get("gt").map(parse_angle).transpose()?;
        let gt_grid = bag.get("gt_grid").map(Grid::parse).transpose()?;

        let nbar_opt: Option<f64> = bag
            .get("nbar")
            .map(|s| {
                s.parse()
                    .map_err(|_| CliError::Usage(format!("cannot parse nbar '{s}'")))
            })
            .transpose()?;
        let kappa_opt: Option<f64> = bag
            .get("kappa")
            .map(|s| {
                s.parse()
                    .map_err(|_| CliError::Usage(format!("cannot parse kappa '{s}'")))
            })
            .transpose()?;
        let (nbar, kappa_given) = match (nbar_opt, kappa_opt) {
            (Some(_), Some(_)) => {
                return Err(CliError::Usage(
                    "give exactly one of nbar and kappa, not both".into(),
                ))
            }
            (Some(n), None) => (n, false),
            (None, Some(k)) => {
                if k.is_nan() || k <= 0.0 {
                    return Err(CliError::Usage(format!("kappa must be positive, got {k}")));
                }
                (tjc_core::kappa_to_nbar(k), true)
            }
            (None, None) => {
                if require_field {
                    return Err(CliError::Usage(
                        "exactly one of nbar and kappa is required".into(),
                    ));
                }
                (0.0, false)
            }
        };

        let epsilon_tail = bag
            .get("epsilon_tail")
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|_| CliError::Usage(format!("cannot parse epsilon_tail '{s}'")))
            })
            .transpose()?
            .unwrap_or(tjc_core::DEFAULT_EPSILON_TAIL);
        let omega_over_g = bag
            .get("omega_over_g")
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|_| CliError::Usage(format!("cannot parse omega_over_g '{s}'")))
            })
            .transpose()?
            .unwrap_or(0.0);
        let format = bag
            .get("format")
            .map(Format::parse)
            .transpose()?
            .unwrap_or(Format::Csv);
        let output = bag.get("output").map(|s| s.to_string());
        let threads = bag
            .get("threads")
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| CliError::Usage(format!("cannot parse threads '{s}'")))
            })
            .transpose()?
            .unwrap_or(1)
            .max(1);
        let window = bag.get("window").map(parse_angle).transpose()?;
        let samples = bag
            .get("samples")
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| CliError::Usage(format!("cannot parse samples '{s}'")))
            })
            .transpose()?
            .unwrap_or(20_001);

        Ok(SweepConfig {
            family,
            beta,
            beta_grid,
            gt,
            gt_grid,
            nbar,
            kappa_given,
            epsilon_tail,
            omega_over_g,
            format,
            output,
            threads,
            window,
            samples,
        })
    }

    pub fn thermal_spec(&self) -> Result<ThermalSpec, CliError> {
        Ok(ThermalSpec::new(self.nbar, self.epsilon_tail)?)
    }

    pub fn require_family(&self) -> Result<Family, CliError> {
        self.family
            .ok_or_else(|| CliError::Usage("--family is required".into()))
    }

    pub fn require_beta_grid(&self) -> Result<Grid, CliError> {
        if let Some(g) = self.beta_grid {
            return Ok(g);
        }
        if let Some(b) = self.beta {
            return Ok(Grid {
                start: b,
                stop: b,
                steps: 1,
            });
        }
        Err(CliError::Usage(
            "--beta-grid (or --beta) is required".into(),
        ))
    }

    pub fn require_gt_grid(&self) -> Result<Grid, CliError> {
        if let Some(g) = self.gt_grid {
            return Ok(g);
        }
        if let Some(t) = self.gt {
            return Ok(Grid {
                start: t,
                stop: t,
                steps: 1,
            });
        }
        Err(CliError::Usage("--gt-grid (or --gt) is required".into()))
    }
}
