#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use chevnet::chevalg::StructureConstants;
use chevnet::grp::Chevalley;
use chevnet::ringkit::{FiniteRing, RingSpec};
use chevnet::rootsys::parse_root_system;
use chevnet::verify::{load_scenarios, Scenario};

pub fn scenario_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(format!("{name}.json"))
}

pub fn scenario(name: &str) -> Scenario {
    load_scenarios(&scenario_path(name)).unwrap().remove(0)
}

/// The scenario restricted to the given checks.
pub fn with_checks(name: &str, checks: &[&str]) -> Scenario {
    let mut s = scenario(name);
    s.checks = checks.iter().map(|c| c.to_string()).collect();
    s
}

pub fn all_scenario_paths() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios");
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
}

pub fn group(system: &str, spec: RingSpec) -> Arc<Chevalley> {
    let rs = parse_root_system(system).unwrap();
    let sc = Arc::new(StructureConstants::new(&rs));
    Chevalley::new(&sc, &FiniteRing::new(&spec).unwrap())
}

pub fn zmod(n: u32) -> RingSpec {
    RingSpec::Zmod { n }
}
