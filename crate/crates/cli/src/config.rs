use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use mirec::base::{Family, ParameterSet};
use mirec::multi::IndexSet;
use mirec::rational::{frac, parse_rational};
use mirec::{Poly, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::Cli;

/// Contents of a `--config` TOML file. Every key can be overridden by the
/// flag of the same name.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub family: Option<String>,
    pub params: Option<Vec<String>>,
    pub q: Option<String>,
    /// Integer size or the string `"indeterminate"`.
    #[serde(rename = "N")]
    pub size: Option<toml::Value>,
    pub indeterminate: Option<bool>,
    #[serde(rename = "D")]
    pub d: Option<Vec<usize>>,
    #[serde(rename = "Y")]
    pub y: Option<Vec<String>>,
    #[serde(rename = "X")]
    pub x: Option<Vec<String>>,
    pub nmax: Option<usize>,
    pub suite: Option<String>,
    pub seed: Option<u64>,
    /// Sweep axes: parameter name to list of values.
    pub grid: Option<BTreeMap<String, Vec<String>>>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

/// A fully resolved job.
#[derive(Clone, Debug)]
pub struct JobConfig {
    pub family: Family,
    pub params: Vec<Rational>,
    pub q: Rational,
    pub size: Option<u32>,
    pub set: IndexSet,
    pub y: Poly,
    pub x: Option<Poly>,
    pub nmax: usize,
    pub seed: u64,
    pub grid: BTreeMap<String, Vec<Rational>>,
}

fn rationals(items: &[String]) -> Result<Vec<Rational>> {
    items.iter().map(|s| parse_rational(s).map_err(|e| anyhow!("{e}"))).collect()
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',').map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect()
}

impl JobConfig {
    pub fn resolve(cli: &Cli) -> Result<Self> {
        let file = match &cli.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        let family_text = cli.family.clone().or(file.family).ok_or_else(|| anyhow!("--family is required"))?;
        let family: Family = family_text.parse().map_err(|e| anyhow!("{e}"))?;

        let params = match &cli.params {
            Some(p) => split_list(p),
            None => file.params.unwrap_or_default(),
        };
        let params = rationals(&params)?;

        let q = match (cli.q.clone().or(file.q), family) {
            (Some(q), _) => parse_rational(&q).map_err(|e| anyhow!("{e}"))?,
            (None, Family::R) => Rational::from_integer(1.into()),
            (None, Family::QR) => bail!("--q is required for the qR family"),
        };

        let file_size = match file.size {
            None => None,
            Some(toml::Value::Integer(n)) if n >= 0 => Some(Some(n as u32)),
            Some(toml::Value::String(s)) if s == "indeterminate" => Some(None),
            Some(v) => bail!("N must be a non-negative integer or \"indeterminate\", got {v}"),
        };
        let size = if cli.indeterminate {
            None
        } else if let Some(n) = cli.size {
            Some(n)
        } else if file.indeterminate == Some(true) {
            None
        } else {
            file_size.flatten()
        };

        let d = match &cli.d {
            Some(s) => split_list(s).iter().map(|t| t.parse::<usize>()).collect::<std::result::Result<Vec<_>, _>>()?,
            None => file.d.unwrap_or_default(),
        };
        let set = IndexSet::new(d).map_err(|e| anyhow!("{e}"))?;

        let y = match &cli.y {
            Some(s) => split_list(s),
            None => file.y.unwrap_or_else(|| vec!["1".into()]),
        };
        let y = Poly::new(rationals(&y)?);
        let x = match &cli.x {
            Some(s) => Some(split_list(s)),
            None => file.x,
        };
        let x = x.map(|v| rationals(&v).map(Poly::new)).transpose()?;

        let mut grid = BTreeMap::new();
        for (k, v) in file.grid.unwrap_or_default() {
            grid.insert(k, rationals(&v)?);
        }
        for g in &cli.grid {
            let (k, v) = g.split_once('=').ok_or_else(|| anyhow!("--grid expects name=v1,v2,…, got {g:?}"))?;
            grid.insert(k.trim().to_string(), rationals(&split_list(v))?);
        }
        for k in grid.keys() {
            if !["a", "b", "c", "d", "q"].contains(&k.as_str()) {
                bail!("unknown sweep axis {k:?}; expected one of a, b, c, d, q");
            }
        }

        Ok(JobConfig {
            family,
            params,
            q,
            size,
            set,
            y,
            x,
            nmax: cli.nmax.or(file.nmax).unwrap_or(6),
            seed: cli.seed.or(file.seed).unwrap_or(0),
            grid,
        })
    }

    /// The parameter set. Finite mode accepts `b,c,d` (or `a,b,c,d` with `a`
    /// matching `N`); indeterminate mode accepts `a,b,c,d`, or `b,c,d` with a
    /// seeded random generic `a`.
    pub fn lambda(&self) -> Result<ParameterSet> {
        let p = &self.params;
        let lam = match (self.size, p.len()) {
            (Some(n), 3) => ParameterSet::finite(self.family, n, p[0].clone(), p[1].clone(), p[2].clone(), self.q.clone()),
            (Some(n), 4) => {
                let lam = ParameterSet::finite(self.family, n, p[1].clone(), p[2].clone(), p[3].clone(), self.q.clone())
                    .map_err(|e| anyhow!("{e}"))?;
                if lam.a() != &p[0] {
                    bail!("a = {} does not match N = {n} (expected {})", p[0], lam.a());
                }
                Ok(lam)
            }
            (None, 4) => ParameterSet::new(self.family, p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone(), self.q.clone()),
            (None, 3) => return self.random_generic(),
            (_, k) => bail!("expected 3 or 4 parameters, got {k}"),
        };
        lam.map_err(|e| anyhow!("{e}"))
    }

    fn random_generic(&self) -> Result<ParameterSet> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let p = &self.params;
        for _ in 0..1000 {
            let num: i64 = rng.gen_range(-97..=97);
            let den: i64 = rng.gen_range(2..=29);
            let a = frac(num, den);
            if a.is_integer() {
                continue;
            }
            let a = match self.family {
                Family::R => a,
                Family::QR if num > 0 => a,
                Family::QR => continue,
            };
            let Ok(lam) = ParameterSet::new(self.family, a, p[0].clone(), p[1].clone(), p[2].clone(), self.q.clone())
            else {
                continue;
            };
            if lam.genericity_issues(self.nmax + 2 * self.set.ell() + 4).is_empty() {
                return Ok(lam);
            }
        }
        bail!("no generic value of a found for seed {}", self.seed)
    }
}
