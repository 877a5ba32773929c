//! Run settings from a `key = value` file, overridden by command-line flags.

use std::path::PathBuf;

use qcg::coulomb::QuadratureSpec;

/// Output encoding for tables and reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Every setting is optional here; [`Settings::merge`] layers sources.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Settings {
    pub kappa: Option<f64>,
    pub dims: Option<Vec<usize>>,
    pub vector: Option<String>,
    pub points: Option<Vec<Vec<f64>>>,
    pub x0: Option<f64>,
    pub quad_order: Option<usize>,
    pub max_subdiv: Option<usize>,
    pub rel_tol: Option<f64>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub d: Option<usize>,
}

pub const KEYS: [&str; 12] =
    ["kappa", "dims", "vector", "x", "x0", "quad-order", "max-subdiv", "rel-tol", "seed", "out", "format", "d"];

fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, String> {
    v.trim().parse().map_err(|_| format!("key '{key}': cannot parse '{v}'"))
}

/// `2,2,3`.
pub fn parse_list<T: std::str::FromStr>(key: &str, v: &str) -> Result<Vec<T>, String> {
    v.split(',').map(|s| num(key, s)).collect()
}

/// `0,1;1,3`: one or more points separated by `;`.
pub fn parse_points(v: &str) -> Result<Vec<Vec<f64>>, String> {
    v.split(';').filter(|s| !s.trim().is_empty()).map(|p| parse_list("x", p)).collect()
}

impl Settings {
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let v = value.trim();
        match key {
            "kappa" => self.kappa = Some(num(key, v)?),
            "dims" => self.dims = Some(parse_list(key, v)?),
            "vector" => self.vector = Some(v.to_string()),
            "x" => self.points = Some(parse_points(v)?),
            "x0" => self.x0 = Some(num(key, v)?),
            "quad-order" => self.quad_order = Some(num(key, v)?),
            "max-subdiv" => self.max_subdiv = Some(num(key, v)?),
            "rel-tol" => self.rel_tol = Some(num(key, v)?),
            "seed" => self.seed = Some(num(key, v)?),
            "out" => self.out = Some(PathBuf::from(v)),
            "format" => {
                self.format = Some(match v {
                    "csv" => Format::Csv,
                    "json" => Format::Json,
                    _ => return Err(format!("key 'format': expected csv or json, got '{v}'")),
                })
            }
            "d" => self.d = Some(num(key, v)?),
            _ => return Err(format!("unknown key '{key}'")),
        }
        Ok(())
    }

    /// Parses UTF-8 `key = value` lines; `#` starts a comment.
    pub fn parse_file(text: &str) -> Result<Self, String> {
        let mut s = Settings::default();
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| format!("line {}: expected key = value", no + 1))?;
            s.set(k.trim(), v).map_err(|e| format!("line {}: {e}", no + 1))?;
        }
        Ok(s)
    }

    /// Values from `over` win.
    pub fn merge(self, over: Settings) -> Settings {
        Settings {
            kappa: over.kappa.or(self.kappa),
            dims: over.dims.or(self.dims),
            vector: over.vector.or(self.vector),
            points: over.points.or(self.points),
            x0: over.x0.or(self.x0),
            quad_order: over.quad_order.or(self.quad_order),
            max_subdiv: over.max_subdiv.or(self.max_subdiv),
            rel_tol: over.rel_tol.or(self.rel_tol),
            seed: over.seed.or(self.seed),
            out: over.out.or(self.out),
            format: over.format.or(self.format),
            d: over.d.or(self.d),
        }
    }

    pub fn kappa(&self) -> f64 {
        self.kappa.unwrap_or(10.0)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(1)
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    pub fn quad(&self) -> Result<QuadratureSpec, String> {
        let d = QuadratureSpec::default();
        let q = QuadratureSpec {
            nodes_per_panel: self.quad_order.unwrap_or(d.nodes_per_panel),
            max_subdivisions: self.max_subdiv.unwrap_or(d.max_subdivisions),
            rel_tol: self.rel_tol.unwrap_or(d.rel_tol),
        };
        q.validate().map_err(|e| e.to_string())?;
        Ok(q)
    }

    pub fn dims(&self) -> Result<&[usize], String> {
        self.dims.as_deref().ok_or_else(|| "missing 'dims'".to_string())
    }
}
