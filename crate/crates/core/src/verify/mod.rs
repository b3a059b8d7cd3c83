//! Scenario files, theorem checks and machine-readable reports.

mod checks;
mod context;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chevalg::{check_condition_star, StructureConstants};
use crate::grp::{Chevalley, DEFAULT_BUDGET};
use crate::nets::{net_close, Net, NetError};
use crate::ringkit::{Elem, FiniteRing, Ideal, RingError, RingSpec};
use crate::rootsys::{parse_root_system, ClosedRootSet, RootError, RootSystem, Subsystem};

pub use context::Context;

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed scenario: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Net(#[from] NetError),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("{0}")]
    Invalid(String),
}

/// One scenario as read from JSON.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub system: String,
    /// Root expressions spanning `Δ`, e.g. `["a1", "-a1"]`.
    pub delta: Vec<String>,
    pub ring: RingSpec,
    /// Root expression -> ideal generators. The key `"*"` stands for every
    /// root outside `Δ`.
    #[serde(default)]
    pub net: BTreeMap<String, Vec<String>>,
    /// Use `net` as given (unlisted roots outside `Δ` get `0`) instead of
    /// closing it.
    #[serde(default)]
    pub strict: bool,
    #[serde(default)]
    pub checks: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Generators of `I` for the relative checks; defaults to the radical.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relative_ideal: Option<Vec<String>>,
    /// The closed set `Δ'` for the field decomposition check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_prime: Option<Vec<String>>,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Scenario, ConfigError> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Reads a file holding one scenario object or an array of them.
pub fn load_scenarios(path: &Path) -> Result<Vec<Scenario>, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    if value.is_array() {
        Ok(serde_json::from_value(value)?)
    } else {
        Ok(vec![serde_json::from_value(value)?])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckKind {
    Jacobson,
    Local,
    Normal,
    FiniteIndex,
    SemilocalG,
    StandardCommutator,
    NilpotentByAbelian,
    DecomposeField,
    RelativeGenerators,
    GaussRewrite,
}

impl CheckKind {
    /// In execution order.
    pub const ALL: [CheckKind; 10] = [
        CheckKind::Jacobson,
        CheckKind::Local,
        CheckKind::Normal,
        CheckKind::FiniteIndex,
        CheckKind::SemilocalG,
        CheckKind::StandardCommutator,
        CheckKind::NilpotentByAbelian,
        CheckKind::DecomposeField,
        CheckKind::RelativeGenerators,
        CheckKind::GaussRewrite,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::Jacobson => "jacobson",
            CheckKind::Local => "local",
            CheckKind::Normal => "normal",
            CheckKind::FiniteIndex => "finite_index",
            CheckKind::SemilocalG => "semilocal_g",
            CheckKind::StandardCommutator => "standard_commutator",
            CheckKind::NilpotentByAbelian => "nilpotent_by_abelian",
            CheckKind::DecomposeField => "decompose_field",
            CheckKind::RelativeGenerators => "relative_generators",
            CheckKind::GaussRewrite => "gauss_rewrite",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckKind {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| ConfigError::UnknownCheck(s.to_string()))
    }
}

/// A scenario with every reference resolved.
#[derive(Clone, Debug)]
pub struct Setup {
    pub name: String,
    pub rs: Arc<RootSystem>,
    pub sc: Arc<StructureConstants>,
    pub ring: Arc<FiniteRing>,
    pub delta: Subsystem,
    pub net: Net,
    pub group: Arc<Chevalley>,
    pub checks: Vec<CheckKind>,
    pub budget: usize,
    pub seed: u64,
    pub relative: Ideal,
    pub delta_prime: Option<ClosedRootSet>,
}

/// Overrides taken from the command line.
#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub budget: Option<usize>,
}

fn parse_elems(ring: &FiniteRing, items: &[String]) -> Result<Vec<Elem>, ConfigError> {
    items.iter().map(|s| Ok(ring.parse_elem(s)?)).collect()
}

impl Setup {
    pub fn resolve(s: &Scenario, opts: RunOptions) -> Result<Setup, ConfigError> {
        let rs = parse_root_system(&s.system)?;
        let sc = Arc::new(StructureConstants::new(&rs));
        let ring = FiniteRing::new(&s.ring)?;
        let delta = rs.parse_subsystem(&s.delta)?;
        let mut assignment: BTreeMap<usize, Vec<Elem>> = BTreeMap::new();
        for (key, gens) in &s.net {
            let gens = parse_elems(&ring, gens)?;
            let roots: Vec<usize> = if key == "*" {
                rs.roots().filter(|&a| !delta.contains(a)).collect()
            } else {
                vec![rs.parse_root(key)?]
            };
            for a in roots {
                assignment.entry(a).or_default().extend(gens.iter().copied());
            }
        }
        let net = if s.strict {
            let sigma = rs
                .roots()
                .map(|a| {
                    if delta.contains(a) && !assignment.contains_key(&a) {
                        Ideal::whole(&ring)
                    } else {
                        Ideal::generated(&ring, assignment.get(&a).map_or(&[][..], |g| &g[..]))
                    }
                })
                .collect();
            Net::strict(&delta, &ring, sigma)?
        } else {
            net_close(&delta, &ring, &assignment)
        };
        let mut seen = BTreeSet::new();
        for c in &s.checks {
            seen.insert(c.parse::<CheckKind>()?);
        }
        let relative = match &s.relative_ideal {
            Some(gens) => Ideal::generated(&ring, &parse_elems(&ring, gens)?),
            None => ring.jacobson_radical(),
        };
        let delta_prime = s.delta_prime.as_ref().map(|d| ClosedRootSet::parse(&rs, d)).transpose()?;
        let group = Chevalley::new(&sc, &ring);
        Ok(Setup {
            name: s.name.clone(),
            rs,
            sc,
            ring,
            delta,
            net,
            group,
            checks: seen.into_iter().collect(),
            budget: opts.budget.or(s.budget).unwrap_or(DEFAULT_BUDGET),
            seed: opts.seed.or(s.seed).unwrap_or(0),
            relative,
            delta_prime,
        })
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// An offending element, reproducible from the scenario and seed.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Witness {
    pub description: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckEntry {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// `exhaustive`, `generators` or `sampled(n)`.
    pub coverage: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub millis: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Gate {
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Report {
    pub version: u32,
    pub scenario: String,
    pub seed: u64,
    pub budget: usize,
    pub net: String,
    pub condition_star: Gate,
    pub checks: Vec<CheckEntry>,
    pub sizes: BTreeMap<String, usize>,
}

impl Report {
    pub fn has_failures(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn entry(&self, name: &str) -> Option<&CheckEntry> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// The report with timing fields zeroed.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.millis = 0;
        }
        r
    }
}

/// Result of one check before timing is attached.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub reason: Option<String>,
    pub coverage: String,
    pub witness: Option<Witness>,
}

impl Outcome {
    pub fn pass(coverage: impl Into<String>) -> Outcome {
        Outcome { status: Status::Pass, reason: None, coverage: coverage.into(), witness: None }
    }

    pub fn fail(coverage: impl Into<String>, witness: Witness) -> Outcome {
        Outcome { status: Status::Fail, reason: None, coverage: coverage.into(), witness: Some(witness) }
    }

    pub fn skipped(reason: impl Into<String>) -> Outcome {
        Outcome { status: Status::Skipped, reason: Some(reason.into()), coverage: "none".into(), witness: None }
    }

    pub fn with_reason(mut self, reason: impl Into<String>) -> Outcome {
        self.reason = Some(reason.into());
        self
    }
}

/// Runs the requested checks of one scenario, condition (*) first.
pub fn run_scenario(scenario: &Scenario, opts: RunOptions) -> Result<Report, ConfigError> {
    let setup = Setup::resolve(scenario, opts)?;
    Ok(run_setup(setup))
}

pub fn run_setup(setup: Setup) -> Report {
    let gate = match check_condition_star(&setup.sc, &setup.delta, &setup.ring) {
        Ok(_) => Gate { holds: true, detail: "holds".into() },
        Err(gamma) => Gate {
            holds: false,
            detail: format!("no root of Δ reaches {} with a unit constant", setup.rs.root_name(gamma)),
        },
    };
    let ctx = Context::new(setup);
    let mut checks = Vec::new();
    for &kind in &ctx.setup.checks {
        let start = Instant::now();
        let outcome = if gate.holds { checks::run(&ctx, kind) } else { Outcome::skipped("(*) fails") };
        checks.push(CheckEntry {
            name: kind.as_str().into(),
            status: outcome.status,
            reason: outcome.reason,
            coverage: outcome.coverage,
            witness: outcome.witness,
            millis: start.elapsed().as_millis() as u64,
        });
    }
    Report {
        version: REPORT_VERSION,
        scenario: ctx.setup.name.clone(),
        seed: ctx.setup.seed,
        budget: ctx.setup.budget,
        net: ctx.setup.net.describe(),
        condition_star: gate,
        checks,
        sizes: ctx.sizes(),
    }
}

/// Runs every scenario of a file, in parallel across scenarios.
pub fn run_file(path: &Path, opts: RunOptions) -> Result<Vec<Report>, ConfigError> {
    let scenarios = load_scenarios(path)?;
    let setups = scenarios.iter().map(|s| Setup::resolve(s, opts)).collect::<Result<Vec<_>, _>>()?;
    Ok(setups.into_par_iter().map(run_setup).collect())
}

/// Process exit status for a batch of reports.
pub fn exit_code(reports: &[Report]) -> i32 {
    if reports.iter().any(Report::has_failures) {
        1
    } else {
        0
    }
}
