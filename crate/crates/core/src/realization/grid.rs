use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::RealizationMap;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridFormat {
    Csv,
    Pgm,
    Json,
}

/// `values[i][j] = U(x_i, y_j)` with `x_i = i/(n-1)`, rounded to 1e-12.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSample {
    pub term: String,
    pub resolution: usize,
    pub values: Vec<Vec<f64>>,
}

fn round12(v: f64) -> f64 {
    let r = (v * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn sample_grid(map: &RealizationMap, resolution: usize) -> Result<GridSample> {
    if resolution < 2 {
        return Err(Error::DomainError(format!("grid resolution must be at least 2, got {}", resolution)));
    }
    let step = (resolution - 1) as f64;
    let values = (0..resolution)
        .into_par_iter()
        .map(|i| {
            let x = i as f64 / step;
            (0..resolution)
                .map(|j| map.eval(x, j as f64 / step).map(round12))
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<Vec<f64>>>>()?;
    Ok(GridSample {
        term: map.term().to_string(),
        resolution,
        values,
    })
}

/// C's `%.<precision>g`.
pub fn format_g(v: f64, precision: usize) -> String {
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !v.is_finite() {
        return if v.is_nan() {
            "nan".into()
        } else if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let p = precision.max(1);
    let sci = format!("{:.*e}", p - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p as i32 {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", mantissa, sign, exp.abs())
    } else {
        let decimals = (p as i32 - 1 - exp).max(0) as usize;
        strip_zeros(&format!("{:.*}", decimals, v)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

impl GridSample {
    pub fn to_csv(&self) -> String {
        let mut out = format!("# term={} resolution={}\n", self.term, self.resolution);
        for row in &self.values {
            let cells: Vec<String> = row.iter().map(|&v| format_g(v, 12)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_pgm(&self) -> String {
        let mut out = format!("P2\n{} {}\n255\n", self.resolution, self.resolution);
        for row in &self.values {
            let cells: Vec<String> = row
                .iter()
                .map(|&v| ((255.0 * v).round().clamp(0.0, 255.0) as u8).to_string())
                .collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("grid values are finite")
    }

    pub fn render(&self, format: GridFormat) -> String {
        match format {
            GridFormat::Csv => self.to_csv(),
            GridFormat::Pgm => self.to_pgm(),
            GridFormat::Json => self.to_json(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.resolution;
        (0..n).all(|i| (0..n).all(|j| self.values[i][j] == self.values[j][i]))
    }

    /// Rows and columns non-decreasing.
    pub fn is_monotone(&self) -> bool {
        let n = self.resolution;
        (0..n).all(|i| {
            (1..n).all(|j| self.values[i][j - 1] <= self.values[i][j] && self.values[j - 1][i] <= self.values[j][i])
        })
    }
}
