//! Named verification suites and their reports.
//!
//! Every case carries an anchor: the formula it checks. Cases run in
//! parallel and are reported sorted by id, so a report depends only on the
//! parameters and the seed.

mod dmod;
mod finite;
mod realization;
mod weyl_core;

use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::check_prime;
use crate::dmodule::max_degree;
use crate::error::{Error, Result};

pub const SCHEMA: &str = "explab/1";

pub const SUITE_NAMES: [&str; 5] = ["finite-identities", "weyl-core", "dmod-core", "realization", "all"];

/// Largest table the finite suites will build, in cyclotomic entries.
const MAX_PAIR_TABLE: u64 = 1 << 21;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteParams {
    pub primes: Vec<u64>,
    pub ranks: Vec<usize>,
    pub seed: u64,
    /// Randomized cases per property (base change, projection formula, ...).
    pub random_cases: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            primes: vec![3, 5, 7],
            ranks: vec![1, 2],
            seed: 0,
            random_cases: 100,
        }
    }
}

impl SuiteParams {
    pub fn validate(&self) -> Result<()> {
        if self.primes.is_empty() || self.ranks.is_empty() {
            return Err(Error::InvalidParameter("need at least one prime and one rank".into()));
        }
        for &p in &self.primes {
            check_prime(p)?;
        }
        for &r in &self.ranks {
            if r == 0 {
                return Err(Error::InvalidParameter("rank must be >= 1".into()));
            }
            for &p in &self.primes {
                let size = (p as u128).checked_pow(2 * r as u32 + 1);
                if size.is_none_or(|s| s > MAX_PAIR_TABLE as u128) {
                    return Err(Error::InvalidParameter(format!(
                        "p = {p}, r = {r} needs a table of p^(2r+1) entries, above the limit {MAX_PAIR_TABLE}"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub details: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Bounds {
    pub max_degree: u32,
    pub random_cases: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Parameters {
    pub primes: Vec<u64>,
    pub ranks: Vec<usize>,
    pub seed: u64,
    pub bounds: Bounds,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema: &'static str,
    pub suite: String,
    pub cases: Vec<CaseReport>,
    pub parameters: Parameters,
}

impl SuiteReport {
    pub fn count(&self, status: Status) -> usize {
        self.cases.iter().filter(|c| c.status == status).count()
    }

    pub fn all_pass(&self) -> bool {
        self.count(Status::Pass) == self.cases.len()
    }

    pub fn has_errors(&self) -> bool {
        self.count(Status::Error) > 0
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }

    pub fn render_text(&self) -> String {
        let width = self.cases.iter().map(|c| c.id.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.cases {
            out.push_str(&format!("{:<5} {:<width$}  {}\n", c.status.label(), c.id, c.details));
        }
        out.push_str(&format!(
            "suite {}: {} passed, {} failed, {} errors\n",
            self.suite,
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Error)
        ));
        out
    }
}

/// Ok(details) passes, Err(details) fails; an outer Err is an error.
pub(crate) type Outcome = std::result::Result<String, String>;

type Check = Box<dyn Fn() -> Result<Outcome> + Send + Sync>;

pub(crate) struct Case {
    id: String,
    anchor: &'static str,
    run: Check,
}

impl Case {
    pub(crate) fn new(
        id: impl Into<String>,
        anchor: &'static str,
        run: impl Fn() -> Result<Outcome> + Send + Sync + 'static,
    ) -> Self {
        Case {
            id: id.into(),
            anchor,
            run: Box::new(run),
        }
    }

    fn execute(self) -> CaseReport {
        let (status, details) = match catch_unwind(AssertUnwindSafe(|| (self.run)())) {
            Ok(Ok(Ok(d))) => (Status::Pass, d),
            Ok(Ok(Err(d))) => (Status::Fail, d),
            Ok(Err(e)) => (Status::Error, e.to_string()),
            Err(_) => (Status::Error, "internal panic".to_string()),
        };
        CaseReport {
            id: self.id,
            anchor: self.anchor.to_string(),
            status,
            details,
        }
    }
}

pub(crate) fn verdict(ok: bool, pass: impl Into<String>, fail: impl Into<String>) -> Outcome {
    if ok {
        Ok(pass.into())
    } else {
        Err(fail.into())
    }
}

/// Per-case generator: the same (seed, id) always gives the same stream.
pub(crate) fn rng_for(seed: u64, id: &str) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

fn cases_for(name: &str, params: &SuiteParams) -> Result<Vec<Case>> {
    Ok(match name {
        "finite-identities" => finite::cases(params),
        "weyl-core" => weyl_core::cases(params),
        "dmod-core" => dmod::cases(params),
        "realization" => realization::cases(params),
        "all" => {
            let mut all = Vec::new();
            for n in &SUITE_NAMES[..4] {
                all.extend(cases_for(n, params)?);
            }
            all
        }
        other => return Err(Error::UnknownSuite(other.to_string())),
    })
}

pub fn run_suite(name: &str, params: &SuiteParams) -> Result<SuiteReport> {
    let cases = cases_for(name, params)?;
    params.validate()?;
    let mut reports: Vec<CaseReport> = cases.into_par_iter().map(Case::execute).collect();
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(SuiteReport {
        schema: SCHEMA,
        suite: name.to_string(),
        cases: reports,
        parameters: Parameters {
            primes: params.primes.clone(),
            ranks: params.ranks.clone(),
            seed: params.seed,
            bounds: Bounds {
                max_degree: max_degree(),
                random_cases: params.random_cases,
            },
        },
    })
}
