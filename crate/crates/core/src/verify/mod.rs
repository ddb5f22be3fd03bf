//! Verification suites over parabolic contractions and their invariants.
//!
//! Each suite runs a fixed pipeline of exact checks and returns a
//! [`SuiteReport`]. Randomness comes from one seed; every check draws from
//! its own stream `derive_seed(seed, stream)` with the stream ids listed in
//! [`streams`], so a check can be rerun alone.

mod report;
mod suites;

pub use report::{CheckRecord, ConfigRecord, Status, SuiteReport, Summary, SCHEMA_VERSION};
pub use suites::{
    run_suite, suite_adjoint, suite_coadjoint, suite_combinatorics, suite_counterexample, suite_subregular,
};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::liealg::{Family, LieType, ParabolicSpec};

/// Stream ids for [`crate::sampling::derive_seed`], one per check family.
pub mod streams {
    pub const INDEX: u64 = 1;
    pub const RICHARDSON: u64 = 2;
    pub const DEGREES: u64 = 3;
    pub const INVARIANCE: u64 = 4;
    pub const JACOBIAN: u64 = 5;
    pub const KOSTANT: u64 = 6;
    pub const SLICE: u64 = 7;
    pub const CENTRALISER: u64 = 8;
    pub const ADJOINT: u64 = 9;
    pub const LOWERED: u64 = 10;
    pub const BOREL: u64 = 11;
    pub const SWEEP_C: u64 = 12;
    pub const SWEEP_B: u64 = 13;
}

/// Points at which a zero test is repeated before a component is declared
/// identically zero.
pub const CERT_TRIALS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Coadjoint,
    Adjoint,
    Subregular,
    Counterexample,
    Combinatorics,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Coadjoint,
        Suite::Adjoint,
        Suite::Subregular,
        Suite::Counterexample,
        Suite::Combinatorics,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Coadjoint => "coadjoint",
            Suite::Adjoint => "adjoint",
            Suite::Subregular => "subregular",
            Suite::Counterexample => "counterexample",
            Suite::Combinatorics => "combinatorics",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub lie_type: Option<LieType>,
    pub spec: Option<ParabolicSpec>,
    pub trials: usize,
    pub seed: u64,
    /// Record wall-clock times in the report (off by default so reports are
    /// byte-for-byte reproducible).
    pub timing: bool,
}

impl SuiteConfig {
    pub fn new(suite: Suite, lie_type: Option<LieType>, spec: Option<ParabolicSpec>) -> Self {
        Self {
            suite,
            lie_type,
            spec,
            trials: 20,
            seed: 0,
            timing: false,
        }
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// The counterexample suite defaults to `so12` with blocks `(4,1,1;0)`.
    pub fn with_defaults(mut self) -> Self {
        if self.suite == Suite::Counterexample {
            let t = self.lie_type.get_or_insert(LieType { family: Family::D, rank: 6 });
            if self.spec.is_none() && t.family == Family::D && t.rank == 6 {
                self.spec = Some(ParabolicSpec::new(vec![4, 1, 1], 0));
            }
        }
        self
    }

    /// Rejects configurations a suite cannot run on, before any computation.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.suite == Suite::Combinatorics {
            return Ok(());
        }
        let Some(t) = self.lie_type else {
            return bad(format!("suite {} needs --type and --rank", self.suite));
        };
        let Some(spec) = &self.spec else {
            return bad(format!("suite {} needs --composition", self.suite));
        };
        spec.validate(t).map_err(|e| Error::Config(e.to_string()))?;
        match self.suite {
            Suite::Counterexample => {
                if t.family != Family::D || t.rank != 6 {
                    return bad(format!("counterexample runs on so12 (type D, rank 6), not {}", t.label()));
                }
            }
            Suite::Coadjoint | Suite::Subregular | Suite::Adjoint => {
                if !matches!(t.family, Family::A | Family::B | Family::C) {
                    return bad(format!("suite {} supports types A, B and C, not {}", self.suite, t.family));
                }
                if t.matrix_size() > 17 {
                    return bad(format!("matrix size {} exceeds the desk-scale cap of 17", t.matrix_size()));
                }
                if self.suite == Suite::Coadjoint && t.family == Family::B {
                    if let Some(k) = spec.composition.iter().find(|k| *k % 2 == 0) {
                        return bad(format!("type B coadjoint suite needs odd blocks, found {k}"));
                    }
                }
                if self.suite == Suite::Subregular {
                    if t.rank < 2 {
                        return bad("subregular suite needs rank at least 2".into());
                    }
                    let s = t.invariant_degrees().len();
                    let levi_dim: usize = spec.levi_blocks(t).iter().map(|b| b.dimension()).sum::<usize>()
                        - usize::from(t.family == Family::A);
                    if levi_dim != s + 2 {
                        return bad(format!("{} is not a minimal parabolic", spec.label(t)));
                    }
                }
            }
            Suite::Combinatorics => {}
        }
        Ok(())
    }
}
