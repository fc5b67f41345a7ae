use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Multi-index set `D = {d_1 < … < d_M}` of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet {
    d: Vec<usize>,
}

impl IndexSet {
    pub fn new(d: Vec<usize>) -> Result<Self> {
        if d.first() == Some(&0) {
            return Err(Error::InvalidInput("multi-indices must be positive".into()));
        }
        if d.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(format!("multi-index {d:?} is not strictly increasing")));
        }
        Ok(IndexSet { d })
    }

    pub fn empty() -> Self {
        IndexSet { d: Vec::new() }
    }

    pub fn m(&self) -> usize {
        self.d.len()
    }

    /// `ℓ_D = Σ d_j − M(M−1)/2`.
    pub fn ell(&self) -> usize {
        let m = self.m();
        self.d.iter().sum::<usize>() - m * m.saturating_sub(1) / 2
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.d
    }

    pub fn max_index(&self) -> usize {
        self.d.last().copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.d.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl FromStr for IndexSet {
    type Err = Error;
    /// Accepts `"1,3"`, `"{1,3}"`, `"[1, 3]"` and the empty forms `""`, `"{}"`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches(['{', '[']).trim_end_matches(['}', ']']);
        let d = inner
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad multi-index entry {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        IndexSet::new(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ell_and_parse() {
        assert_eq!(IndexSet::empty().ell(), 0);
        assert_eq!("{1,2}".parse::<IndexSet>().unwrap().ell(), 2);
        assert_eq!("2,3".parse::<IndexSet>().unwrap().ell(), 4);
        assert_eq!("[]".parse::<IndexSet>().unwrap(), IndexSet::empty());
        assert!("2,1".parse::<IndexSet>().is_err());
        assert!("0".parse::<IndexSet>().is_err());
    }
}
