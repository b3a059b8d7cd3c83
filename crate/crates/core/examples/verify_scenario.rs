// Running a scenario file through the theorem checkers.

use std::error::Error;
use std::path::Path;

use chevnet::verify::{exit_code, run_file, RunOptions};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios/s1.json");
    let reports = run_file(&path, RunOptions::default())?;
    for r in &reports {
        println!("{} (condition (*): {})", r.scenario, r.condition_star.holds);
        for c in &r.checks {
            println!("  {:<22} {:?} [{}]", c.name, c.status, c.coverage);
        }
        for (name, size) in &r.sizes {
            println!("  |{name}| = {size}");
        }
    }
    assert_eq!(exit_code(&reports), 0);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
