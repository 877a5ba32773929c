//! Evaluation tables as CSV or JSON.
//!
//! CSV columns: `kappa, dims, vector, x0, x_1, ..., x_n, re, im, err_est`,
//! with `dims` written as `2;2;3`. Floats use the shortest representation
//! that parses back to the same value.

use serde::{Deserialize, Serialize};

use crate::config::Format;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub kappa: f64,
    pub dims: Vec<usize>,
    pub vector: String,
    /// Empty when the anchor integrals were dropped.
    pub x0: Option<f64>,
    pub x: Vec<f64>,
    pub re: f64,
    pub im: f64,
    pub err_est: f64,
}

fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

pub fn write_rows(rows: &[Row], format: Format) -> Result<String, String> {
    match format {
        Format::Json => serde_json::to_string_pretty(rows).map(|s| s + "\n").map_err(|e| e.to_string()),
        Format::Csv => {
            let n = rows.first().map_or(0, |r| r.x.len());
            if rows.iter().any(|r| r.x.len() != n) {
                return Err("rows have different numbers of points".into());
            }
            let mut w = csv::Writer::from_writer(vec![]);
            let mut header = vec!["kappa".to_string(), "dims".into(), "vector".into(), "x0".into()];
            header.extend((1..=n).map(|i| format!("x_{i}")));
            header.extend(["re".into(), "im".into(), "err_est".into()]);
            w.write_record(&header).map_err(|e| e.to_string())?;
            for r in rows {
                let mut rec = vec![r.kappa.to_string(), join(&r.dims, ";"), r.vector.clone(), r.x0.map_or(String::new(), |v| v.to_string())];
                rec.extend(r.x.iter().map(f64::to_string));
                rec.extend([r.re.to_string(), r.im.to_string(), r.err_est.to_string()]);
                w.write_record(&rec).map_err(|e| e.to_string())?;
            }
            String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
        }
    }
}

pub fn read_rows(text: &str, format: Format) -> Result<Vec<Row>, String> {
    match format {
        Format::Json => serde_json::from_str(text).map_err(|e| e.to_string()),
        Format::Csv => {
            let mut rd = csv::Reader::from_reader(text.as_bytes());
            let n = rd.headers().map_err(|e| e.to_string())?.len().checked_sub(7).ok_or("too few columns")?;
            let f = |s: &str| s.parse::<f64>().map_err(|e| format!("{s}: {e}"));
            rd.records()
                .map(|rec| {
                    let rec = rec.map_err(|e| e.to_string())?;
                    let dims = rec[1].split(';').map(|s| s.parse().map_err(|_| format!("bad dims '{s}'"))).collect::<Result<_, String>>()?;
                    Ok(Row {
                        kappa: f(&rec[0])?,
                        dims,
                        vector: rec[2].to_string(),
                        x0: if rec[3].is_empty() { None } else { Some(f(&rec[3])?) },
                        x: (0..n).map(|i| f(&rec[4 + i])).collect::<Result<_, _>>()?,
                        re: f(&rec[4 + n])?,
                        im: f(&rec[5 + n])?,
                        err_est: f(&rec[6 + n])?,
                    })
                })
                .collect()
        }
    }
}
