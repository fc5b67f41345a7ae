use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use mirec::base::ParameterSet;
use mirec::multi::IndexSet;
use mirec::rational::format_rational;
use mirec::report::Check;
use mirec::{Poly, Rational};
use serde::Serialize;

pub const SCHEMA: &str = "mirec/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub fn rat(r: &Rational) -> String {
    format_rational(r)
}

pub fn coeffs(p: &Poly) -> Vec<String> {
    let deg = p.degree().unwrap_or(-1);
    (0..=deg).map(|k| rat(&p.coeff(k))).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Instance {
    pub family: String,
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub size: Option<u32>,
    #[serde(rename = "D")]
    pub set: Vec<usize>,
    #[serde(rename = "X", skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<String>>,
}

impl Instance {
    pub fn new(lam: &ParameterSet, set: &IndexSet, x: Option<&Poly>) -> Self {
        Instance {
            family: lam.family().to_string(),
            a: rat(lam.a()),
            b: rat(lam.b()),
            c: rat(lam.c()),
            d: rat(lam.d()),
            q: lam.is_q().then(|| rat(lam.q())),
            size: lam.size(),
            set: set.as_slice().to_vec(),
            x: x.map(coeffs),
        }
    }
}

#[derive(Serialize)]
pub struct PolyRow {
    pub n: usize,
    pub coeffs: Vec<String>,
}

#[derive(Serialize)]
pub struct GenOutput {
    pub schema: &'static str,
    pub family: String,
    pub parameters: Instance,
    #[serde(rename = "D")]
    pub set: Vec<usize>,
    pub polynomials: Vec<PolyRow>,
}

#[derive(Serialize)]
pub struct VerifyOutput {
    pub schema: &'static str,
    pub command: &'static str,
    pub suite: String,
    pub instance: Instance,
    pub passed: bool,
    pub checks: Vec<Check>,
}

pub fn write_out(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut s = std::io::stdout().lock();
            s.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

pub fn json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

/// Minimal CSV: header plus rows; fields never contain commas or quotes
/// except witnesses, which are quoted.
pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for r in rows {
        let fields: Vec<String> = r
            .iter()
            .map(|f| if f.contains([',', '"', '\n']) { format!("\"{}\"", f.replace('"', "\"\"")) } else { f.clone() })
            .collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}
