macro_rules! example_test {
    ($name:ident) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
        }
    };
}

example_test!(root_systems);
example_test!(structure_constants);
example_test!(finite_rings);
example_test!(nets);
example_test!(subgroups);
example_test!(gauss_decomposition);
example_test!(verify_scenario);

#[test]
fn root_systems_example_runs() {
    root_systems::run_example().expect("root_systems example should run");
}

#[test]
fn structure_constants_example_runs() {
    structure_constants::run_example().expect("structure_constants example should run");
}

#[test]
fn finite_rings_example_runs() {
    finite_rings::run_example().expect("finite_rings example should run");
}

#[test]
fn nets_example_runs() {
    nets::run_example().expect("nets example should run");
}

#[test]
fn subgroups_example_runs() {
    subgroups::run_example().expect("subgroups example should run");
}

#[test]
fn gauss_decomposition_example_runs() {
    gauss_decomposition::run_example().expect("gauss_decomposition example should run");
}

#[test]
fn verify_scenario_example_runs() {
    verify_scenario::run_example().expect("verify_scenario example should run");
}
