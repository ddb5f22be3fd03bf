use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    GL,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "GL" => Ok(Family::GL),
            other => Err(Error::InvalidType(format!("unknown family {other:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::GL => "GL",
        };
        f.write_str(s)
    }
}

/// A classical family with its rank `l`.
///
/// Matrix sizes: `l+1` for A (sl) and GL (gl of the same size), `2l+1` for
/// B, `2l` for C and D.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LieType {
    pub family: Family,
    pub rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidType("rank must be positive".into()));
        }
        if family == Family::D && rank < 2 {
            return Err(Error::InvalidType("type D requires rank >= 2".into()));
        }
        Ok(Self { family, rank })
    }

    pub fn matrix_size(&self) -> usize {
        match self.family {
            Family::A | Family::GL => self.rank + 1,
            Family::B => 2 * self.rank + 1,
            Family::C | Family::D => 2 * self.rank,
        }
    }

    pub fn dimension(&self) -> usize {
        let l = self.rank;
        match self.family {
            Family::A => l * l + 2 * l,
            Family::B | Family::C => l * (2 * l + 1),
            Family::D => l * (2 * l - 1),
            Family::GL => (l + 1) * (l + 1),
        }
    }

    /// Rank of `g` as a reductive algebra; equals the index of `g`.
    pub fn reductive_rank(&self) -> usize {
        match self.family {
            Family::GL => self.rank + 1,
            _ => self.rank,
        }
    }

    /// Degrees of the basic invariants, ascending.
    pub fn invariant_degrees(&self) -> Vec<usize> {
        let l = self.rank;
        let mut d: Vec<usize> = match self.family {
            Family::A => (2..=l + 1).collect(),
            Family::GL => (1..=l + 1).collect(),
            Family::B | Family::C => (1..=l).map(|i| 2 * i).collect(),
            Family::D => (1..l).map(|i| 2 * i).chain([l]).collect(),
        };
        d.sort_unstable();
        d
    }

    pub fn label(&self) -> String {
        let n = self.matrix_size();
        match self.family {
            Family::A => format!("sl{n}"),
            Family::GL => format!("gl{n}"),
            Family::B | Family::D => format!("so{n}"),
            Family::C => format!("sp{n}"),
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{} ({})", self.family, self.rank, self.label())
    }
}
